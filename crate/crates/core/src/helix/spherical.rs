use crate::curve::{reparametrize_by_arclength, SampledCurve};
use crate::error::{Error, Result};
use crate::frames::FrameField;
use crate::numerics::{least_squares_min_norm, ToleranceConfig};

/// Smallest `|k_i|` along which the spherical image is regular.
pub const IMAGE_SPEED_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct SphericalVerdict {
    pub is_spherical: bool,
    /// Fitted `c_1..c_{d-1}` in `Σ c_i k_i + 1 = 0`.
    pub constants: Vec<f64>,
    /// RMS of `Σ c_i k_i + 1` over interior nodes.
    pub residual: f64,
}

/// Least-squares test of `Σ c_i k_i + 1 = 0` with constant `c_i`.
pub fn detect_spherical(pt: &FrameField, tol: &ToleranceConfig) -> Result<SphericalVerdict> {
    let rows: Vec<Vec<f64>> = pt
        .grid
        .interior()
        .map(|i| pt.curvatures.iter().map(|k| k[i]).collect())
        .collect();
    let target = vec![-1.0; rows.len()];
    let fit = least_squares_min_norm(&rows, &target)?;
    Ok(SphericalVerdict {
        is_spherical: fit.residual_rms <= tol.residual_tol,
        constants: fit.coefficients,
        residual: fit.residual_rms,
    })
}

/// The curve traced by the transported normal `M_which`, by arc length.
pub fn spherical_image(pt: &FrameField, which: usize) -> Result<SampledCurve> {
    if which == 0 || which >= pt.dimension() {
        return Err(Error::InvalidSpec(format!(
            "spherical image index {which} outside 1..={}",
            pt.dimension() - 1
        )));
    }
    if let Some(i) = pt.curvature(which).iter().position(|k| k.abs() <= IMAGE_SPEED_TOL) {
        return Err(Error::VanishingCurvature {
            index: which,
            s: pt.grid.s(i),
        });
    }
    let name = format!("M{which} image");
    let image = SampledCurve::from_samples(&name, pt.grid, pt.normal(which).to_vec())?;
    reparametrize_by_arclength(&image)
}
