use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::SampledCurve;
use crate::error::{Error, Result};
use crate::numerics::interp::interpolate_vector;
use crate::numerics::integrate_linear_ode_projected;
use crate::vector::{determinant, EuclideanVector};

use super::{FrameField, FrameKind};

/// Reference normals the transported frame is tied to at the anchor.
#[derive(Debug, Clone, Copy)]
pub enum PtInit<'a> {
    /// The Frenet normals (N, B1, B2).
    Frenet(&'a FrameField),
    /// Gram-Schmidt of the standard basis against the tangent; for curves
    /// whose Frenet frame is undefined.
    Canonical,
}

#[derive(Debug, Clone)]
pub struct PtOptions<'a> {
    pub init: PtInit<'a>,
    /// Constant rotation of the normal space applied after anchoring:
    /// `M_a <- Σ_b R[a][b] M_b`.
    pub rotation: Option<Vec<Vec<f64>>>,
}

/// Parallel-transport frame anchored to the Frenet frame.
pub fn compute_pt_frame(curve: &SampledCurve, frenet: &FrameField) -> Result<FrameField> {
    compute_pt_frame_with(
        curve,
        &PtOptions {
            init: PtInit::Frenet(frenet),
            rotation: None,
        },
    )
}

fn orthonormalize(vectors: &mut [EuclideanVector], against: &[EuclideanVector]) {
    let mut basis: Vec<EuclideanVector> = against.to_vec();
    for v in vectors.iter_mut() {
        *v = v.reject_from(&basis).normalized();
        basis.push(*v);
    }
}

fn canonical_normals(t: EuclideanVector) -> Vec<EuclideanVector> {
    let d = t.dim();
    let mut basis = vec![t];
    let mut order: Vec<usize> = (0..d).collect();
    // Least aligned axes first keeps the rejection well conditioned.
    order.sort_by(|&a, &b| t[a].abs().total_cmp(&t[b].abs()));
    for j in order.into_iter().take(d - 1) {
        let v = EuclideanVector::basis(d, j).reject_from(&basis).normalized();
        basis.push(v);
    }
    if determinant(&basis) < 0.0 {
        let last = basis.len() - 1;
        basis[last] = -basis[last];
    }
    basis.split_off(1)
}

fn reference_normals(init: &PtInit<'_>, tangent: EuclideanVector, pos: f64) -> Vec<EuclideanVector> {
    match init {
        PtInit::Frenet(frenet) => {
            let mut normals: Vec<EuclideanVector> = frenet.vectors[1..]
                .iter()
                .map(|field| interpolate_vector(field, pos))
                .collect();
            orthonormalize(&mut normals, &[tangent]);
            normals
        }
        PtInit::Canonical => canonical_normals(tangent),
    }
}

/// Parallel-transport frame by RK4 integration of `M' = -⟨T', M⟩ T`.
///
/// The frame is transported from the first node, re-orthonormalised at every
/// node, then rotated by a constant so that it matches the reference normals
/// at the curve's anchor (rotated further by the anchor's Bishop angle in E3
/// and by `options.rotation` if given).
pub fn compute_pt_frame_with(curve: &SampledCurve, options: &PtOptions<'_>) -> Result<FrameField> {
    curve.check_regular()?;
    let d = curve.dimension();
    let m = d - 1;
    let n = curve.len();
    let grid = curve.grid;
    if let PtInit::Frenet(f) = options.init {
        if f.len() != n || f.dimension() != d {
            return Err(Error::InvalidGrid("Frenet frame does not match the curve".into()));
        }
    }
    if let Some(r) = &options.rotation {
        if r.len() != m || r.iter().any(|row| row.len() != m) {
            return Err(Error::Dimension { expected: m, got: r.len() });
        }
    }
    let tangent = curve.tangents();
    // dT/ds along the grid parameter.
    let tangent_rate: Vec<EuclideanVector> = (0..n)
        .map(|i| {
            let a2 = curve.derivative(2)[i];
            (a2 - tangent[i] * a2.dot(&tangent[i])) * (1.0 / curve.speed[i])
        })
        .collect();

    let start = reference_normals(&options.init, tangent[0], 0.0);
    let initial: Vec<f64> = start.iter().flat_map(|v| v.as_slice().to_vec()).collect();
    let unpack = |y: &[f64]| -> Vec<EuclideanVector> {
        (0..m).map(|b| EuclideanVector::from_slice(&y[b * d..(b + 1) * d])).collect()
    };
    let rhs = |s: f64, y: &[f64]| -> Vec<f64> {
        let pos = (s - grid.start()) / grid.step();
        let t = interpolate_vector(&tangent, pos);
        let t_rate = interpolate_vector(&tangent_rate, pos);
        let mut out = Vec::with_capacity(y.len());
        for mv in unpack(y) {
            out.extend_from_slice((t * -t_rate.dot(&mv)).as_slice());
        }
        out
    };
    let project = |i: usize, y: &mut [f64]| {
        let mut normals = unpack(y);
        orthonormalize(&mut normals, &[tangent[i]]);
        for (b, v) in normals.iter().enumerate() {
            y[b * d..(b + 1) * d].copy_from_slice(v.as_slice());
        }
    };
    let states = integrate_linear_ode_projected(rhs, &initial, &grid, project)?;
    let transported: Vec<Vec<EuclideanVector>> = states.iter().map(|y| unpack(y)).collect();

    // Constant rotation matching the reference at the anchor.
    let pos = curve.anchor.position;
    let t_anchor = interpolate_vector(&tangent, pos).normalized();
    let reference = reference_normals(&options.init, t_anchor, pos);
    let mut at_anchor: Vec<EuclideanVector> = (0..m)
        .map(|b| {
            let field: Vec<EuclideanVector> = transported.iter().map(|f| f[b]).collect();
            interpolate_vector(&field, pos)
        })
        .collect();
    orthonormalize(&mut at_anchor, &[t_anchor]);
    let mut q: Vec<EuclideanVector> = reference
        .iter()
        .map(|f| EuclideanVector::from_slice(&at_anchor.iter().map(|mb| f.dot(mb)).collect::<Vec<_>>()))
        .collect();
    orthonormalize(&mut q, &[]);
    let mut rotation = identity(m);
    if d == 3 && curve.anchor.angle != 0.0 {
        rotation = rotation_by_angle(curve.anchor.angle);
    }
    if let Some(r) = &options.rotation {
        rotation = matmul(r, &rotation);
    }
    let q_rows: Vec<Vec<f64>> = q.iter().map(|r| r.as_slice().to_vec()).collect();
    let combined = matmul(&rotation, &q_rows);

    let mut vectors = vec![tangent.clone()];
    vectors.extend((0..m).map(|_| Vec::with_capacity(n)));
    for (i, frame) in transported.iter().enumerate() {
        let mut normals: Vec<EuclideanVector> = (0..m)
            .map(|a| {
                let mut v = EuclideanVector::zeros(d);
                for (b, mb) in frame.iter().enumerate() {
                    v += *mb * combined[a][b];
                }
                v
            })
            .collect();
        orthonormalize(&mut normals, &[tangent[i]]);
        for (a, v) in normals.into_iter().enumerate() {
            vectors[a + 1].push(v);
        }
    }
    let curvatures = (0..m)
        .map(|a| {
            (0..n)
                .map(|i| tangent_rate[i].dot(&vectors[a + 1][i]) / curve.speed[i])
                .collect()
        })
        .collect();
    Ok(FrameField {
        kind: FrameKind::ParallelTransport,
        grid,
        vectors,
        curvatures,
        speed: curve.speed.clone(),
    })
}

fn identity(m: usize) -> Vec<Vec<f64>> {
    (0..m)
        .map(|i| (0..m).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = a.len();
    (0..m)
        .map(|i| (0..m).map(|j| (0..m).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// Rotation of the (M1, M2) plane by `theta`:
/// `M1 = cos θ N + sin θ B`, `M2 = -sin θ N + cos θ B`.
pub fn rotation_by_angle(theta: f64) -> Vec<Vec<f64>> {
    let (s, c) = theta.sin_cos();
    vec![vec![c, s], vec![-s, c]]
}

/// A reproducible random rotation of an `m`-dimensional normal space.
pub fn random_normal_rotation(m: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut rows: Vec<EuclideanVector> = (0..m)
            .map(|_| {
                let v: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
                EuclideanVector::from_slice(&v)
            })
            .collect();
        if rows.iter().any(|r| r.norm() < 1e-3) {
            continue;
        }
        orthonormalize(&mut rows, &[]);
        if rows.iter().any(|r| !r.is_finite()) {
            continue;
        }
        if determinant(&rows) < 0.0 {
            rows[m - 1] = -rows[m - 1];
        }
        return rows.iter().map(|r| r.as_slice().to_vec()).collect();
    }
}
