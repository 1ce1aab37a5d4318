//! Curve generators shared by the integration tests.
#![allow(dead_code)]

use inclined_core::curve::{realize_curve, CurveSpec, SampledCurve};
use inclined_core::frames::{compute_frenet, FrameField};
use inclined_core::numerics::ToleranceConfig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lit(x: f64) -> String {
    if x < 0.0 {
        format!("({x:?})")
    } else {
        format!("{x:?}")
    }
}

/// `c s + Σ_m a_m cos(m w s) + b_m sin(m w s)` for `m = 1..=3`.
pub fn trig_component(coeffs: &[f64; 7], w: f64) -> String {
    let mut terms = vec![format!("{}*s", lit(coeffs[0]))];
    for m in 1..=3 {
        let f = m as f64 * w;
        terms.push(format!("{}*cos({}*s)", lit(coeffs[2 * m - 1]), lit(f)));
        terms.push(format!("{}*sin({}*s)", lit(coeffs[2 * m]), lit(f)));
    }
    terms.join(" + ")
}

pub fn trig_spec(name: &str, components: &[[f64; 7]], w: f64, samples: usize) -> CurveSpec {
    let texts: Vec<String> = components.iter().map(|c| trig_component(c, w)).collect();
    let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
    CurveSpec::new(name, &refs, (0.0, 2.0), samples).unwrap()
}

/// A random trigonometric-polynomial curve whose Frenet frame exists with
/// curvature comfortably away from zero and no bend sharper than the grid
/// resolves; other draws are rejected.
pub fn random_regular_curve(seed: u64, dim: usize, samples: usize) -> (CurveSpec, SampledCurve, FrameField) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = ToleranceConfig::default();
    loop {
        let components: Vec<[f64; 7]> = (0..dim)
            .map(|_| std::array::from_fn(|_| rng.gen_range(-1.0..1.0)))
            .collect();
        let w = rng.gen_range(0.6..1.4);
        let spec = trig_spec(&format!("trig{dim}-{seed}"), &components, w, samples);
        let Ok(curve) = realize_curve(&spec, &tol) else { continue };
        let Ok(frenet) = compute_frenet(&curve) else { continue };
        let kappa_min = frenet.curvature(1).iter().fold(f64::INFINITY, |m, k| m.min(*k));
        let kappa_max = frenet
            .curvatures
            .iter()
            .flatten()
            .fold(0.0f64, |m, k| m.max(k.abs()));
        let speed_min = curve.speed.iter().fold(f64::INFINITY, |m, v| m.min(*v));
        let torsion_ok = frenet.curvatures[1..]
            .iter()
            .all(|k| k.iter().fold(f64::INFINITY, |m, x| m.min(x.abs())) > 1e-3 || dim == 3);
        if kappa_min > 0.05 && kappa_max < 8.0 && speed_min > 0.2 && torsion_ok {
            return (spec, curve, frenet);
        }
    }
}

/// Unit-speed E3 curve with `T = (sin φ cos w, sin φ sin w, cos φ)`,
/// `w(u) = a u + b u^2`: inclined about e3 at angle φ.
pub fn inclined_e3(phi: f64, a: f64, b: f64, samples: usize) -> CurveSpec {
    let w = format!("({}*u + {}*u^2)", lit(a), lit(b));
    let (sp, cp) = phi.sin_cos();
    CurveSpec::new(
        "inclined3",
        &[
            &format!("{}*integral(cos{w}, 0, s)", lit(sp)),
            &format!("{}*integral(sin{w}, 0, s)", lit(sp)),
            &format!("{}*s", lit(cp)),
        ],
        (0.1, 2.0),
        samples,
    )
    .unwrap()
}

/// Unit-speed E4 curve inclined about e4 at angle φ: the tangent's first
/// three coordinates trace a wobbling path on a sphere of radius `sin φ`.
pub fn inclined_e4(phi: f64, wobble: f64, rate: f64, samples: usize) -> CurveSpec {
    let (sp, cp) = phi.sin_cos();
    let lat = format!("({}*sin({}*u))", lit(wobble), lit(rate));
    CurveSpec::new(
        "inclined4",
        &[
            &format!("{}*integral(cos{lat}*cos(u), 0, s)", lit(sp)),
            &format!("{}*integral(cos{lat}*sin(u), 0, s)", lit(sp)),
            &format!("{}*integral(sin{lat}, 0, s)", lit(sp)),
            &format!("{}*s", lit(cp)),
        ],
        (0.0, 3.0),
        samples,
    )
    .unwrap()
}
