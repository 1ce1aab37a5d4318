use std::f64::consts::{PI, TAU};

use crate::curve::SampledCurve;
use crate::error::{Error, Result};
use crate::numerics::interp::interpolate;
use crate::numerics::{cumulative_antiderivative, BOUNDARY_NODES};

use super::{FrameField, FrameKind};

/// Nodes with `|cos θ|` below this have undefined φ and ψ.
pub const GIMBAL_TOL: f64 = 1e-6;
/// Stencil half-width kept clear of gimbal nodes in derivative checks.
const STENCIL_GUARD: usize = 3;

/// Angles relating the Frenet and parallel-transport frames.
///
/// In E3 only `theta` (the Bishop rotation angle) is present. In E4 all three
/// are, and nodes listed in `gimbal_nodes` hold NaN for every angle.
#[derive(Debug, Clone)]
pub struct EulerAngles {
    pub theta: Vec<f64>,
    pub phi: Option<Vec<f64>>,
    pub psi: Option<Vec<f64>>,
    pub gimbal_nodes: Vec<usize>,
}

impl EulerAngles {
    /// Interior nodes at least a stencil away from every gimbal node.
    pub fn usable_nodes(&self) -> Vec<usize> {
        let n = self.theta.len();
        let mut ok = vec![true; n];
        for &g in &self.gimbal_nodes {
            for j in g.saturating_sub(STENCIL_GUARD)..=(g + STENCIL_GUARD).min(n - 1) {
                ok[j] = false;
            }
        }
        (BOUNDARY_NODES..n - BOUNDARY_NODES).filter(|&i| ok[i]).collect()
    }
}

/// Rows N, B1, B2 of the Frenet-to-transport rotation in (M1, M2, M3) coordinates.
pub fn rotation_rows(theta: f64, phi: f64, psi: f64) -> [[f64; 3]; 3] {
    let (st, ct) = theta.sin_cos();
    let (sf, cf) = phi.sin_cos();
    let (sp, cp) = psi.sin_cos();
    [
        [ct * cp, -cf * sp + sf * st * cp, sf * sp + cf * st * cp],
        [ct * sp, cf * cp + sf * st * sp, -sf * cp + cf * st * sp],
        [-st, sf * ct, cf * ct],
    ]
}

/// E3 Bishop frame from the rotation angle `θ = -∫ κ̄2` taken along the grid
/// parameter, zero at the curve's anchor (or the anchor's angle when the
/// anchor lies outside the domain). The normals are parallel only when the
/// grid parameter is arc length.
///
/// `M1 = cos θ N + sin θ B`, `M2 = -sin θ N + cos θ B`, so
/// `k1 = κ̄1 cos θ` and `k2 = ⟨T', M2⟩ = -κ̄1 sin θ`.
pub fn bishop_via_rotation_angle(
    curve: &SampledCurve,
    frenet: &FrameField,
) -> Result<(FrameField, EulerAngles)> {
    if curve.dimension() != 3 {
        return Err(Error::Dimension {
            expected: 3,
            got: curve.dimension(),
        });
    }
    let grid = frenet.grid;
    let neg_torsion: Vec<f64> = frenet.curvature(2).iter().map(|t| -t).collect();
    let raw = cumulative_antiderivative(&neg_torsion, &grid, 0.0);
    let offset = curve.anchor.angle - interpolate(&raw, curve.anchor.position);
    let theta: Vec<f64> = raw.iter().map(|t| t + offset).collect();
    let (n_vec, b_vec) = (frenet.normal(1), frenet.normal(2));
    let mut m1 = Vec::with_capacity(grid.len());
    let mut m2 = Vec::with_capacity(grid.len());
    let mut k1 = Vec::with_capacity(grid.len());
    let mut k2 = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        let (s, c) = theta[i].sin_cos();
        m1.push(n_vec[i] * c + b_vec[i] * s);
        m2.push(n_vec[i] * -s + b_vec[i] * c);
        let kappa = frenet.curvature(1)[i];
        k1.push(kappa * c);
        k2.push(-kappa * s);
    }
    let frame = FrameField {
        kind: FrameKind::ParallelTransport,
        grid,
        vectors: vec![frenet.tangent().to_vec(), m1, m2],
        curvatures: vec![k1, k2],
        speed: frenet.speed.clone(),
    };
    let angles = EulerAngles {
        theta,
        phi: None,
        psi: None,
        gimbal_nodes: Vec::new(),
    };
    Ok((frame, angles))
}

fn near(value: f64, previous: f64) -> f64 {
    value - TAU * ((value - previous) / TAU).round()
}

/// Extracts θ, φ, ψ of the E4 Frenet/transport rotation at every node.
///
/// Of the two angle triples giving the same matrix, each node takes the one
/// closest to its predecessor; angles are unwrapped to continuity.
pub fn angles_between_frames(frenet: &FrameField, pt: &FrameField) -> Result<EulerAngles> {
    if frenet.dimension() != 4 || pt.dimension() != 4 {
        return Err(Error::Dimension {
            expected: 4,
            got: frenet.dimension().min(pt.dimension()),
        });
    }
    if frenet.len() != pt.len() {
        return Err(Error::InvalidGrid("frame fields on different grids".into()));
    }
    let n = frenet.len();
    let (mut theta, mut phi, mut psi) = (vec![f64::NAN; n], vec![f64::NAN; n], vec![f64::NAN; n]);
    let mut gimbal_nodes = Vec::new();
    let mut previous: Option<(f64, f64, f64)> = None;
    for i in 0..n {
        let nv = frenet.normal(1)[i];
        let b1 = frenet.normal(2)[i];
        let b2 = frenet.normal(3)[i];
        let (m1, m2, m3) = (pt.normal(1)[i], pt.normal(2)[i], pt.normal(3)[i]);
        let sin_theta = (-b2.dot(&m1)).clamp(-1.0, 1.0);
        let t0 = sin_theta.asin();
        if t0.cos() < GIMBAL_TOL {
            gimbal_nodes.push(i);
            continue;
        }
        let f0 = b2.dot(&m2).atan2(b2.dot(&m3));
        let p0 = b1.dot(&m1).atan2(nv.dot(&m1));
        let chosen = match previous {
            None => (t0, f0, p0),
            Some((tp, fp, pp)) => {
                let candidates = [(t0, f0, p0), (PI - t0, f0 + PI, p0 + PI)];
                candidates
                    .iter()
                    .map(|&(t, f, p)| (near(t, tp), near(f, fp), near(p, pp)))
                    .min_by(|a, b| {
                        let da = (a.0 - tp).powi(2) + (a.1 - fp).powi(2) + (a.2 - pp).powi(2);
                        let db = (b.0 - tp).powi(2) + (b.1 - fp).powi(2) + (b.2 - pp).powi(2);
                        da.total_cmp(&db)
                    })
                    .unwrap()
            }
        };
        theta[i] = chosen.0;
        phi[i] = chosen.1;
        psi[i] = chosen.2;
        previous = Some(chosen);
    }
    Ok(EulerAngles {
        theta,
        phi: Some(phi),
        psi: Some(psi),
        gimbal_nodes,
    })
}
