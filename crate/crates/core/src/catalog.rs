//! Built-in curves.

use crate::curve::{CurveSpec, DEFAULT_SAMPLES};
use crate::error::{Error, Result};

pub const BUILTIN_NAMES: [&str; 6] = ["example1", "example2", "helix3d", "cubic", "helix4d", "circle4d"];

/// One-line description of a built-in.
pub fn describe(name: &str) -> Option<&'static str> {
    Some(match name {
        "example1" => "generalized helix with curvature 1/cos s and torsion -1/(4 cos s)",
        "example2" => "Euler spiral with curvature 6s/5 and torsion -8s/5",
        "helix3d" => "unit-speed circular helix about e3",
        "cubic" => "twisted cubic (t, t^2, t^3), not a helix",
        "helix4d" => "inclined curve in E4 about e4 with angle pi/3",
        "circle4d" => "great circle of the unit sphere in E4",
        _ => return None,
    })
}

pub fn builtin(name: &str) -> Result<CurveSpec> {
    let n = DEFAULT_SAMPLES;
    let spec = match name {
        "example1" => CurveSpec::new(
            name,
            &[
                "cos(s)*cos(sqrt(17)*s) + (1/sqrt(17))*sin(s)*sin(sqrt(17)*s)",
                "-cos(s)*sin(sqrt(17)*s) + (1/sqrt(17))*sin(s)*cos(sqrt(17)*s)",
                "(4/sqrt(17))*sin(s)",
            ],
            (-1.2, 1.2),
            n,
        )?
        .with_anchor(0.0),
        "example2" => CurveSpec::new(
            name,
            &[
                "(3/5)*integral(sin(u^2+1), 0, s)",
                "(3/5)*integral(cos(u^2+1), 0, s)",
                "(4/5)*s",
            ],
            (0.2, 2.0),
            n,
        )?
        .with_anchor(0.0),
        "helix3d" => CurveSpec::new(
            name,
            &["cos(s/sqrt(2))", "sin(s/sqrt(2))", "s/sqrt(2)"],
            (0.0, 8.0),
            n,
        )?,
        "cubic" => CurveSpec::new(name, &["s", "s^2", "s^3"], (0.1, 1.0), n)?,
        "helix4d" => CurveSpec::new(
            name,
            &[
                "(sqrt(3)/2)*integral(cos(0.3*sin(u))*cos(u), 0, s)",
                "(sqrt(3)/2)*integral(cos(0.3*sin(u))*sin(u), 0, s)",
                "(sqrt(3)/2)*integral(sin(0.3*sin(u)), 0, s)",
                "s/2",
            ],
            (0.0, 4.0),
            n,
        )?
        .with_metadata("varphi0", std::f64::consts::FRAC_PI_3),
        "circle4d" => CurveSpec::new(
            name,
            &["cos(s)", "0.6*sin(s)", "0", "0.8*sin(s)"],
            (0.0, 5.0),
            n,
        )?,
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    };
    Ok(spec)
}

pub fn builtins() -> Vec<CurveSpec> {
    BUILTIN_NAMES
        .iter()
        .map(|n| builtin(n).expect("built-in specs are valid"))
        .collect()
}
