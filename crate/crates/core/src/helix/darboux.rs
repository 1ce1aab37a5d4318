use crate::error::{Error, Result};
use crate::frames::FrameField;
use crate::numerics::{constancy_score, mean, smallest_eigenvector_symmetric, std_dev};
use crate::vector::EuclideanVector;

use super::HarmonicCurvatures;

/// `D(s) = T(s) + Σ H_i(s) M_i(s)` with constancy statistics over the
/// interior, unmasked nodes.
#[derive(Debug, Clone)]
pub struct DarbouxField {
    pub vectors: Vec<EuclideanVector>,
    pub mean: EuclideanVector,
    /// Constancy score of each ambient coordinate.
    pub component_constancy: Vec<f64>,
    /// `sqrt(Σ_j var(D_j)) / |D̄|`: spread of the vector relative to its size.
    pub constancy: f64,
    /// Nodes the statistics were taken over.
    pub retained: Vec<usize>,
}

pub fn darboux_vector_field(pt: &FrameField, h: &HarmonicCurvatures) -> DarbouxField {
    let d = pt.dimension();
    let vectors: Vec<EuclideanVector> = (0..pt.len())
        .map(|i| {
            let mut v = pt.tangent()[i];
            for (a, hv) in h.values.iter().enumerate() {
                v += pt.normal(a + 1)[i] * hv[i];
            }
            v
        })
        .collect();
    let retained: Vec<usize> = pt.grid.interior().filter(|&i| vectors[i].is_finite()).collect();
    let coords: Vec<Vec<f64>> = (0..d)
        .map(|j| retained.iter().map(|&i| vectors[i][j]).collect())
        .collect();
    let mean_vec = EuclideanVector::from_slice(&coords.iter().map(|c| mean(c)).collect::<Vec<_>>());
    let component_constancy = coords.iter().map(|c| constancy_score(c)).collect();
    let spread: f64 = coords.iter().map(|c| std_dev(c).powi(2)).sum::<f64>().sqrt();
    DarbouxField {
        constancy: spread / (mean_vec.norm() + 1e-300),
        mean: mean_vec,
        component_constancy,
        vectors,
        retained,
    }
}

/// Axis and angle of an inclined curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisEstimate {
    pub axis: EuclideanVector,
    pub varphi: f64,
}

/// `X = D̄ / |D̄|` oriented so that `⟨T(s0), X⟩ > 0`; `cos varphi = 1 / |D̄|`.
pub fn axis_from_darboux(darboux: &DarbouxField, pt: &FrameField) -> AxisEstimate {
    let norm = darboux.mean.norm();
    let mut axis = darboux.mean * (1.0 / norm);
    let s0 = darboux.retained.first().copied().unwrap_or(0);
    if pt.tangent()[s0].dot(&axis) < 0.0 {
        axis = -axis;
    }
    AxisEstimate {
        axis,
        varphi: (1.0 / norm).clamp(-1.0, 1.0).acos(),
    }
}

/// [`axis_from_darboux`] for a field that passes the constancy tolerance.
pub fn compute_axis(darboux: &DarbouxField, pt: &FrameField, constancy_tol: f64) -> Result<AxisEstimate> {
    if !(darboux.constancy <= constancy_tol) {
        return Err(Error::NotInclined);
    }
    Ok(axis_from_darboux(darboux, pt))
}

/// Normal of the best-fit hyperplane through the tangent indicatrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentOracle {
    pub axis: EuclideanVector,
    /// Constancy score of `⟨T, axis⟩`.
    pub constancy: f64,
    pub mean_projection: f64,
    pub max_projection: f64,
}

pub fn tangent_oracle(pt: &FrameField, nodes: &[usize]) -> Result<TangentOracle> {
    let d = pt.dimension();
    let t = pt.tangent();
    let centre: Vec<f64> = (0..d)
        .map(|j| nodes.iter().map(|&i| t[i][j]).sum::<f64>() / nodes.len() as f64)
        .collect();
    let mut cov = vec![vec![0.0; d]; d];
    for &i in nodes {
        for a in 0..d {
            for b in 0..d {
                cov[a][b] += (t[i][a] - centre[a]) * (t[i][b] - centre[b]);
            }
        }
    }
    for row in cov.iter_mut() {
        for x in row.iter_mut() {
            *x /= nodes.len() as f64;
        }
    }
    // Exact symmetry; accumulated round-off may differ between triangles.
    for a in 0..d {
        for b in 0..a {
            let m = 0.5 * (cov[a][b] + cov[b][a]);
            cov[a][b] = m;
            cov[b][a] = m;
        }
    }
    let (_, v) = smallest_eigenvector_symmetric(&cov)?;
    let mut axis = EuclideanVector::from_slice(&v);
    let proj: Vec<f64> = nodes.iter().map(|&i| t[i].dot(&axis)).collect();
    let mut mean_projection = mean(&proj);
    if mean_projection < 0.0 {
        axis = -axis;
        mean_projection = -mean_projection;
    }
    Ok(TangentOracle {
        axis,
        constancy: constancy_score(&proj),
        mean_projection,
        max_projection: proj.iter().fold(0.0f64, |m, p| m.max(p.abs())),
    })
}
