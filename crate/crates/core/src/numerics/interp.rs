//! Local polynomial interpolation on uniform grids.

use crate::vector::EuclideanVector;

const WINDOW: usize = 6;

/// Window start and Lagrange weights for fractional node position `pos`.
pub fn lagrange_weights(pos: f64, len: usize) -> (usize, [f64; WINDOW]) {
    let w = WINDOW.min(len);
    let base = pos.floor() as i64 - (w as i64 / 2 - 1);
    let start = base.clamp(0, (len - w) as i64) as usize;
    let mut weights = [0.0; WINDOW];
    for j in 0..w {
        let xj = (start + j) as f64;
        let mut l = 1.0;
        for m in 0..w {
            if m != j {
                let xm = (start + m) as f64;
                l *= (pos - xm) / (xj - xm);
            }
        }
        weights[j] = l;
    }
    (start, weights)
}

/// Value of sampled data at fractional node position `pos`.
pub fn interpolate(values: &[f64], pos: f64) -> f64 {
    let (start, w) = lagrange_weights(pos, values.len());
    w.iter()
        .zip(&values[start..])
        .map(|(a, b)| a * b)
        .sum()
}

pub fn interpolate_vector(values: &[EuclideanVector], pos: f64) -> EuclideanVector {
    let (start, w) = lagrange_weights(pos, values.len());
    let mut out = EuclideanVector::zeros(values[0].dim());
    for (a, v) in w.iter().zip(&values[start..]) {
        out += *v * *a;
    }
    out
}

/// Cubic Hermite interpolation on `[x0, x1]` from values and slopes.
pub fn cubic_hermite(x0: f64, x1: f64, y0: f64, y1: f64, d0: f64, d1: f64, x: f64) -> f64 {
    let h = x1 - x0;
    let t = (x - x0) / h;
    let t2 = t * t;
    let t3 = t2 * t;
    (2.0 * t3 - 3.0 * t2 + 1.0) * y0
        + (t3 - 2.0 * t2 + t) * h * d0
        + (-2.0 * t3 + 3.0 * t2) * y1
        + (t3 - t2) * h * d1
}

/// Quintic Hermite interpolation from values, first and second derivatives.
#[allow(clippy::too_many_arguments)]
pub fn quintic_hermite(
    x0: f64,
    x1: f64,
    y: [f64; 2],
    d1: [f64; 2],
    d2: [f64; 2],
    x: f64,
) -> f64 {
    let h = x1 - x0;
    let t = (x - x0) / h;
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t3 * t;
    let t5 = t4 * t;
    let h00 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
    let h10 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
    let h20 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
    let h01 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
    let h11 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
    let h21 = 0.5 * t3 - t4 + 0.5 * t5;
    h00 * y[0]
        + h10 * h * d1[0]
        + h20 * h * h * d2[0]
        + h01 * y[1]
        + h11 * h * d1[1]
        + h21 * h * h * d2[1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lagrange_reproduces_quintics() {
        let f = |x: f64| 1.0 - x + 0.3 * x.powi(3) - 0.01 * x.powi(5);
        let v: Vec<f64> = (0..20).map(|i| f(i as f64)).collect();
        for pos in [0.0, 0.3, 2.5, 9.75, 18.2, 19.0] {
            assert!((interpolate(&v, pos) - f(pos)).abs() < 1e-9 * (1.0 + f(pos).abs()));
        }
    }

    #[test]
    fn quintic_hermite_is_exact_for_quintics() {
        let f = |x: f64| 2.0 + x - x * x + 0.5 * x.powi(4) - 0.2 * x.powi(5);
        let d = |x: f64| 1.0 - 2.0 * x + 2.0 * x.powi(3) - x.powi(4);
        let dd = |x: f64| -2.0 + 6.0 * x * x - 4.0 * x.powi(3);
        let (a, b) = (0.2, 0.9);
        for x in [0.2, 0.35, 0.6, 0.9] {
            let y = quintic_hermite(a, b, [f(a), f(b)], [d(a), d(b)], [dd(a), dd(b)], x);
            assert!((y - f(x)).abs() < 1e-14);
        }
    }

    #[test]
    fn cubic_hermite_end_points() {
        assert_eq!(cubic_hermite(0.0, 1.0, 2.0, 5.0, 0.0, 0.0, 0.0), 2.0);
        assert!((cubic_hermite(0.0, 1.0, 2.0, 5.0, 0.0, 0.0, 1.0) - 5.0).abs() < 1e-15);
    }
}
