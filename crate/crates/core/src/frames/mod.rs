//! Frenet and parallel-transport frames along sampled curves, and the
//! angles that relate them.

mod angles;
mod frenet;
mod transport;

pub use angles::{
    angles_between_frames, bishop_via_rotation_angle, rotation_rows, EulerAngles, GIMBAL_TOL,
};
pub use frenet::{compute_frenet, GRAM_TOL};
pub use transport::{
    compute_pt_frame, compute_pt_frame_with, random_normal_rotation, rotation_by_angle, PtInit,
    PtOptions,
};

use crate::numerics::{finite_difference_vectors, SampleGrid};
use crate::vector::{determinant, EuclideanVector};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameKind {
    Frenet,
    ParallelTransport,
}

/// An orthonormal frame at every node with its curvature functions.
///
/// `vectors[0]` is the unit tangent; `vectors[1..]` are the normals
/// (N, B1, B2 for Frenet; M1, M2, M3 for parallel transport). `curvatures[j]`
/// holds the (j+1)-th curvature, always per unit arc length.
#[derive(Debug, Clone)]
pub struct FrameField {
    pub kind: FrameKind,
    pub grid: SampleGrid,
    pub vectors: Vec<Vec<EuclideanVector>>,
    pub curvatures: Vec<Vec<f64>>,
    /// Speed of the underlying parametrisation at each node.
    pub speed: Vec<f64>,
}

pub type FrenetFrameField = FrameField;
pub type PTFrameField = FrameField;

impl FrameField {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn tangent(&self) -> &[EuclideanVector] {
        &self.vectors[0]
    }

    /// Normal `i`, counted from 1.
    pub fn normal(&self, i: usize) -> &[EuclideanVector] {
        &self.vectors[i]
    }

    pub fn curvature(&self, i: usize) -> &[f64] {
        &self.curvatures[i - 1]
    }

    /// Frame vectors at node `i`, tangent first.
    pub fn at(&self, i: usize) -> Vec<EuclideanVector> {
        self.vectors.iter().map(|v| v[i]).collect()
    }

    /// Largest deviation of the Gram matrix from the identity over all nodes.
    pub fn orthonormality_error(&self) -> f64 {
        let d = self.dimension();
        let mut worst = 0.0f64;
        for i in 0..self.len() {
            for a in 0..d {
                for b in 0..d {
                    let target = if a == b { 1.0 } else { 0.0 };
                    worst = worst.max((self.vectors[a][i].dot(&self.vectors[b][i]) - target).abs());
                }
            }
        }
        worst
    }

    /// Determinant of the frame matrix at every node.
    pub fn determinants(&self) -> Vec<f64> {
        (0..self.len()).map(|i| determinant(&self.at(i))).collect()
    }

    /// Arc-length derivative of every frame vector field by finite differences.
    pub fn derivatives(&self) -> Result<Vec<Vec<EuclideanVector>>> {
        self.vectors
            .iter()
            .map(|field| {
                let d = finite_difference_vectors(field, &self.grid, 1)?;
                Ok(d.into_iter()
                    .zip(&self.speed)
                    .map(|(v, &sp)| v * (1.0 / sp))
                    .collect())
            })
            .collect()
    }

    /// Largest RMS over interior nodes of the defect in the structure
    /// equations: `V_i' = -κ_i V_{i-1} + κ_{i+1} V_{i+1}` for Frenet frames,
    /// `T' = Σ k_i M_i`, `M_i' = -k_i T` for parallel transport.
    pub fn equation_residual(&self) -> Result<f64> {
        let d = self.dimension();
        let derivs = self.derivatives()?;
        let mut worst = 0.0f64;
        for (a, da) in derivs.iter().enumerate() {
            let mut sq = 0.0;
            let mut count = 0usize;
            for i in self.grid.interior() {
                let mut expected = EuclideanVector::zeros(d);
                match self.kind {
                    FrameKind::Frenet => {
                        if a > 0 {
                            expected += self.vectors[a - 1][i] * -self.curvatures[a - 1][i];
                        }
                        if a + 1 < d {
                            expected += self.vectors[a + 1][i] * self.curvatures[a][i];
                        }
                    }
                    FrameKind::ParallelTransport => {
                        if a == 0 {
                            for (m, k) in self.vectors[1..].iter().zip(&self.curvatures) {
                                expected += m[i] * k[i];
                            }
                        } else {
                            expected += self.vectors[0][i] * -self.curvatures[a - 1][i];
                        }
                    }
                }
                sq += (da[i] - expected).norm_squared();
                count += 1;
            }
            worst = worst.max((sq / count as f64).sqrt());
        }
        Ok(worst)
    }
}
