use crate::error::{Error, Result};

/// Numerical thresholds used across the pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    pub derivative_tol: f64,
    pub constancy_tol: f64,
    pub residual_tol: f64,
    pub quadrature_abs_tol: f64,
    pub frame_ortho_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            derivative_tol: 1e-6,
            constancy_tol: 1e-4,
            residual_tol: 1e-4,
            quadrature_abs_tol: 1e-10,
            frame_ortho_tol: 1e-8,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("derivative_tol", self.derivative_tol),
            ("constancy_tol", self.constancy_tol),
            ("residual_tol", self.residual_tol),
            ("quadrature_abs_tol", self.quadrature_abs_tol),
            ("frame_ortho_tol", self.frame_ortho_tol),
        ];
        for (name, value) in fields {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidTolerance { name, value });
            }
        }
        Ok(())
    }
}
