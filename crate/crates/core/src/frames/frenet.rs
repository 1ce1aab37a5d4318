use crate::curve::SampledCurve;
use crate::error::{Error, Result};
use crate::vector::{generalized_cross, EuclideanVector};

use super::{FrameField, FrameKind};

/// Smallest Gram determinant of the normalised derivatives
/// `α', ..., α^(d-1)` accepted as linearly independent.
pub const GRAM_TOL: f64 = 1e-10;

/// Frenet frame by Gram-Schmidt on successive derivatives, completed to a
/// positively oriented basis, with curvatures per unit arc length.
pub fn compute_frenet(curve: &SampledCurve) -> Result<FrameField> {
    curve.check_regular()?;
    let d = curve.dimension();
    let n = curve.len();
    let mut vectors = vec![Vec::with_capacity(n); d];
    for i in 0..n {
        let mut basis: Vec<EuclideanVector> = Vec::with_capacity(d);
        let mut gram = 1.0;
        for k in 1..d {
            let v = curve.derivative(k)[i];
            let r = v.reject_from(&basis);
            let scale = v.norm();
            gram *= if scale > 0.0 { (r.norm() / scale).powi(2) } else { 0.0 };
            if !(gram > GRAM_TOL) {
                let s = curve.parameter[i];
                return Err(match k {
                    2 => Error::DegenerateCurvature { s },
                    _ => Error::DegenerateFrame { order: k, s },
                });
            }
            basis.push(r.normalized());
        }
        basis.push(generalized_cross(&basis).normalized());
        for (field, v) in vectors.iter_mut().zip(basis) {
            field.push(v);
        }
    }
    let mut frame = FrameField {
        kind: FrameKind::Frenet,
        grid: curve.grid,
        vectors,
        curvatures: Vec::new(),
        speed: curve.speed.clone(),
    };
    frame.curvatures = if curve.exact_derivatives {
        exact_curvatures(curve, &frame)
    } else {
        differenced_curvatures(&frame)?
    };
    Ok(frame)
}

/// `⟨α^(k+1), F_k⟩ = v^(k+1) κ̄_1 ... κ̄_k` read off the exact derivatives.
fn exact_curvatures(curve: &SampledCurve, frame: &FrameField) -> Vec<Vec<f64>> {
    let d = frame.dimension();
    let mut out = vec![Vec::with_capacity(frame.len()); d - 1];
    for i in 0..frame.len() {
        let v = curve.speed[i];
        let mut product = 1.0;
        for k in 1..d {
            let a = curve.derivative(k + 1)[i].dot(&frame.vectors[k][i]);
            let kappa = a / (v.powi(k as i32 + 1) * product);
            out[k - 1].push(kappa);
            product *= kappa;
        }
    }
    out
}

/// `κ̄_k = ⟨F_{k-1}', F_k⟩` with frame derivatives by finite differences.
fn differenced_curvatures(frame: &FrameField) -> Result<Vec<Vec<f64>>> {
    let derivs = frame.derivatives()?;
    Ok((1..frame.dimension())
        .map(|k| {
            (0..frame.len())
                .map(|i| derivs[k - 1][i].dot(&frame.vectors[k][i]))
                .collect()
        })
        .collect())
}
