use crate::error::{Error, Result};

use super::symmetric_eigen;

/// Eigenvalues of the normal matrix below this fraction of the largest
/// count as a rank deficiency.
const RANK_RATIO: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct LeastSquaresFit {
    pub coefficients: Vec<f64>,
    pub residual_rms: f64,
    /// Numerical rank of the design.
    pub rank: usize,
}

struct NormalSystem {
    eigen: super::SymmetricEigen,
    rhs: Vec<f64>,
}

fn normal_system(design: &[Vec<f64>], target: &[f64]) -> Result<NormalSystem> {
    let rows = design.len();
    let m = design.first().map(Vec::len).unwrap_or(0);
    if rows != target.len() || m == 0 || rows < m {
        return Err(Error::InvalidGrid(format!(
            "least squares needs N >= m > 0 (N = {rows}, m = {m}, targets = {})",
            target.len()
        )));
    }
    let mut ata = vec![vec![0.0; m]; m];
    let mut atb = vec![0.0; m];
    for (row, &b) in design.iter().zip(target) {
        for i in 0..m {
            atb[i] += row[i] * b;
            for j in 0..m {
                ata[i][j] += row[i] * row[j];
            }
        }
    }
    Ok(NormalSystem {
        eigen: symmetric_eigen(&ata)?,
        rhs: atb,
    })
}

fn solve(sys: &NormalSystem, design: &[Vec<f64>], target: &[f64], cutoff: f64) -> LeastSquaresFit {
    let m = sys.rhs.len();
    let mut x = vec![0.0; m];
    let mut rank = 0;
    for (lambda, v) in sys.eigen.values.iter().zip(&sys.eigen.vectors) {
        if *lambda <= cutoff {
            continue;
        }
        rank += 1;
        let proj: f64 = v.iter().zip(&sys.rhs).map(|(a, b)| a * b).sum::<f64>() / lambda;
        for i in 0..m {
            x[i] += proj * v[i];
        }
    }
    let ss: f64 = design
        .iter()
        .zip(target)
        .map(|(row, b)| {
            let r: f64 = row.iter().zip(&x).map(|(a, c)| a * c).sum::<f64>() - b;
            r * r
        })
        .sum();
    LeastSquaresFit {
        coefficients: x,
        residual_rms: (ss / target.len() as f64).sqrt(),
        rank,
    }
}

/// Minimiser of `|design * x - target|` through the normal equations.
/// Fails on a rank-deficient design.
pub fn linear_least_squares(design: &[Vec<f64>], target: &[f64]) -> Result<LeastSquaresFit> {
    let sys = normal_system(design, target)?;
    let top = sys.eigen.values.last().copied().unwrap_or(0.0);
    let low = sys.eigen.values[0];
    if !(top > 0.0) || low < RANK_RATIO * top {
        return Err(Error::RankDeficient {
            ratio: if top > 0.0 { low / top } else { 0.0 },
        });
    }
    Ok(solve(&sys, design, target, 0.0))
}

/// Minimum-norm least-squares solution; eigen-directions of the normal
/// matrix below the rank threshold are dropped instead of rejected.
/// Fails only when every column vanishes.
pub fn least_squares_min_norm(design: &[Vec<f64>], target: &[f64]) -> Result<LeastSquaresFit> {
    let sys = normal_system(design, target)?;
    let top = sys.eigen.values.last().copied().unwrap_or(0.0);
    if !(top > 0.0) {
        return Err(Error::RankDeficient { ratio: 0.0 });
    }
    Ok(solve(&sys, design, target, RANK_RATIO * top))
}
