use crate::error::{Error, Result};

/// Eigen-decomposition of a symmetric matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

fn check_symmetric(a: &[Vec<f64>]) -> Result<usize> {
    let n = a.len();
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(1.0);
    let mut deviation = 0.0f64;
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidGrid(format!("matrix row {i} has length {}", row.len())));
        }
        for j in 0..i {
            deviation = deviation.max((a[i][j] - a[j][i]).abs());
        }
    }
    if deviation > 1e-10 * scale {
        return Err(Error::NotSymmetric { deviation });
    }
    Ok(n)
}

/// Cyclic Jacobi rotations until the off-diagonal mass vanishes.
pub fn symmetric_eigen(a: &[Vec<f64>]) -> Result<SymmetricEigen> {
    let n = check_symmetric(a)?;
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum();
        let diag: f64 = (0..n).map(|i| m[i][i] * m[i][i]).sum();
        if off <= 1e-32 * diag.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q] == 0.0 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i][i].total_cmp(&m[j][j]));
    Ok(SymmetricEigen {
        values: order.iter().map(|&k| m[k][k]).collect(),
        vectors: order
            .iter()
            .map(|&k| v.iter().map(|row| row[k]).collect())
            .collect(),
    })
}

/// Minimal eigenpair of a small symmetric matrix. The eigenvector is
/// unit-norm with its largest-magnitude component positive; for repeated
/// eigenvalues any vector of the eigenspace may come back.
pub fn smallest_eigenvector_symmetric(a: &[Vec<f64>]) -> Result<(f64, Vec<f64>)> {
    let eig = symmetric_eigen(a)?;
    let mut v = eig.vectors[0].clone();
    let big = v
        .iter()
        .copied()
        .max_by(|x, y| x.abs().total_cmp(&y.abs()))
        .unwrap_or(1.0);
    if big < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    Ok((eig.values[0], v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix() {
        let a = vec![vec![3.0, 0.0, 0.0], vec![0.0, 2.0, 0.0], vec![0.0, 0.0, 1.0]];
        let (l, v) = smallest_eigenvector_symmetric(&a).unwrap();
        assert_eq!(l, 1.0);
        assert_eq!(v, vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn identity_returns_some_unit_vector() {
        let a: Vec<Vec<f64>> = (0..4)
            .map(|i| (0..4).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        let (l, v) = smallest_eigenvector_symmetric(&a).unwrap();
        assert_eq!(l, 1.0);
        assert!((v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn residual_is_small_for_dense_matrix() {
        let a = vec![
            vec![4.0, 1.0, -2.0, 0.5],
            vec![1.0, 3.0, 0.3, -1.0],
            vec![-2.0, 0.3, 5.0, 0.7],
            vec![0.5, -1.0, 0.7, 2.0],
        ];
        let (l, v) = smallest_eigenvector_symmetric(&a).unwrap();
        let norm_a = 8.0;
        for i in 0..4 {
            let av: f64 = (0..4).map(|j| a[i][j] * v[j]).sum();
            assert!((av - l * v[i]).abs() <= 1e-9 * norm_a);
        }
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let a = vec![vec![1.0, 2.0], vec![0.0, 1.0]];
        assert!(matches!(symmetric_eigen(&a), Err(Error::NotSymmetric { .. })));
    }
}
