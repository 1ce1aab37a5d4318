//! Fixed-capacity vectors in E³ and E⁴.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

pub const MAX_DIM: usize = 4;

/// A vector of E³ or E⁴. Components beyond `dim` are always zero.
#[derive(Clone, Copy, PartialEq)]
pub struct EuclideanVector {
    dim: usize,
    c: [f64; MAX_DIM],
}

impl EuclideanVector {
    pub fn zeros(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "dimension {dim} unsupported");
        Self {
            dim,
            c: [0.0; MAX_DIM],
        }
    }

    pub fn from_slice(values: &[f64]) -> Self {
        let mut v = Self::zeros(values.len());
        v.c[..values.len()].copy_from_slice(values);
        v
    }

    /// The `i`-th standard basis vector.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.c[i] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.c[..self.dim]
    }

    pub fn dot(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn normalized(&self) -> Self {
        *self * (1.0 / self.norm())
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|x| x.is_finite())
    }

    /// Removes the components along each of the (orthonormal) `basis` vectors.
    pub fn reject_from(&self, basis: &[EuclideanVector]) -> Self {
        // Two passes of modified Gram-Schmidt.
        let mut v = *self;
        for _ in 0..2 {
            for b in basis {
                let p = v.dot(b);
                v -= *b * p;
            }
        }
        v
    }
}

impl fmt::Debug for EuclideanVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

impl fmt::Display for EuclideanVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.as_slice().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            match f.precision() {
                Some(p) => write!(f, "{x:.p$}")?,
                None => write!(f, "{x}")?,
            }
        }
        write!(f, ")")
    }
}

impl Index<usize> for EuclideanVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.as_slice()[i]
    }
}

impl IndexMut<usize> for EuclideanVector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.c[..self.dim][i]
    }
}

impl Add for EuclideanVector {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for EuclideanVector {
    fn add_assign(&mut self, rhs: Self) {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..MAX_DIM {
            self.c[i] += rhs.c[i];
        }
    }
}

impl Sub for EuclideanVector {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl SubAssign for EuclideanVector {
    fn sub_assign(&mut self, rhs: Self) {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..MAX_DIM {
            self.c[i] -= rhs.c[i];
        }
    }
}

impl Mul<f64> for EuclideanVector {
    type Output = Self;
    fn mul(mut self, k: f64) -> Self {
        for x in &mut self.c {
            *x *= k;
        }
        self
    }
}

impl Neg for EuclideanVector {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

/// Determinant of the square matrix whose rows are `rows`.
pub fn determinant(rows: &[EuclideanVector]) -> f64 {
    let n = rows.len();
    let mut m: Vec<Vec<f64>> = rows.iter().map(|r| r.as_slice().to_vec()).collect();
    assert!(m.iter().all(|r| r.len() == n), "determinant needs a square matrix");
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                m[r][c] -= f * m[col][c];
            }
        }
    }
    det
}

/// The vector `w` orthogonal to the `d - 1` given vectors with
/// `det(v_1, ..., v_{d-1}, w) = |w|^2`, i.e. the generalized cross product.
pub fn generalized_cross(vectors: &[EuclideanVector]) -> EuclideanVector {
    let d = vectors.len() + 1;
    let mut w = EuclideanVector::zeros(d);
    let mut rows: Vec<EuclideanVector> = vectors.to_vec();
    rows.push(EuclideanVector::zeros(d));
    for j in 0..d {
        rows[d - 1] = EuclideanVector::basis(d, j);
        w[j] = determinant(&rows);
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_product_matches_three_dimensional_formula() {
        let a = EuclideanVector::from_slice(&[1.0, 2.0, 3.0]);
        let b = EuclideanVector::from_slice(&[-1.0, 0.5, 2.0]);
        let w = generalized_cross(&[a, b]);
        let expected = [2.0 * 2.0 - 3.0 * 0.5, -3.0 - 1.0 * 2.0, 1.0 * 0.5 - -2.0];
        for i in 0..3 {
            assert!((w[i] - expected[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn completion_is_positively_oriented_in_four_dimensions() {
        let e = |i| EuclideanVector::basis(4, i);
        let w = generalized_cross(&[e(0), e(1), e(2)]);
        assert_eq!(w.as_slice(), &[0.0, 0.0, 0.0, 1.0]);
        assert!((determinant(&[e(0), e(1), e(2), w]) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn determinant_of_permutation() {
        let e = |i| EuclideanVector::basis(3, i);
        assert_eq!(determinant(&[e(1), e(0), e(2)]), -1.0);
    }
}
