use crate::error::{Error, Result};
use crate::vector::EuclideanVector;

use super::SampleGrid;

/// Finite-difference weights (Fornberg) for the `order`-th derivative at
/// `x0` from samples at `xs`.
fn fornberg(x0: f64, xs: &[f64], order: usize) -> Vec<f64> {
    let n = xs.len();
    let mut c = vec![vec![0.0; n]; order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c.swap_remove(order)
}

/// Stencils for one derivative order: a window start and weights per node.
struct Stencils {
    order: usize,
    central_radius: usize,
    central: Vec<f64>,
    boundary_width: usize,
}

impl Stencils {
    fn new(order: usize) -> Self {
        // Fourth-order accurate everywhere.
        let central_radius = order.div_ceil(2) + 1;
        let offsets: Vec<f64> = (-(central_radius as i64)..=central_radius as i64)
            .map(|o| o as f64)
            .collect();
        Self {
            order,
            central_radius,
            central: fornberg(0.0, &offsets, order),
            boundary_width: order + 4,
        }
    }

    fn min_len(&self) -> usize {
        (2 * self.central_radius + 1).max(self.boundary_width)
    }

    /// (window start, weights) for node `i` of an `n`-node grid.
    fn at(&self, i: usize, n: usize) -> (usize, Vec<f64>) {
        let r = self.central_radius;
        if i >= r && i + r < n {
            return (i - r, self.central.clone());
        }
        let w = self.boundary_width;
        let start = if i < r { 0 } else { n - w };
        let offsets: Vec<f64> = (start..start + w).map(|j| j as f64 - i as f64).collect();
        (start, fornberg(0.0, &offsets, self.order))
    }
}

fn check_order(order: usize, n: usize) -> Result<Stencils> {
    if !(1..=4).contains(&order) {
        return Err(Error::InvalidGrid(format!(
            "finite-difference order {order} outside 1..=4"
        )));
    }
    let st = Stencils::new(order);
    let need = (order + 5).max(st.min_len());
    if n < need {
        return Err(Error::GridTooShort { got: n, need });
    }
    Ok(st)
}

/// Derivative of the requested order of samples on a uniform grid.
///
/// Interior nodes use central stencils and the first/last few nodes use
/// one-sided windows; all are fourth-order accurate.
pub fn finite_difference(values: &[f64], grid: &SampleGrid, order: usize) -> Result<Vec<f64>> {
    let n = values.len();
    if n != grid.len() {
        return Err(Error::InvalidGrid(format!(
            "{n} values on a grid of {} nodes",
            grid.len()
        )));
    }
    let st = check_order(order, n)?;
    let scale = grid.step().powi(order as i32).recip();
    let boundary: Vec<(usize, Vec<f64>)> = (0..st.central_radius)
        .chain(n - st.central_radius..n)
        .map(|i| st.at(i, n))
        .collect();
    let r = st.central_radius;
    let out = (0..n)
        .map(|i| {
            let (start, w): (usize, &[f64]) = if i >= r && i + r < n {
                (i - r, &st.central)
            } else {
                let k = if i < r { i } else { r + (i - (n - r)) };
                (boundary[k].0, &boundary[k].1)
            };
            w.iter()
                .zip(&values[start..start + w.len()])
                .map(|(a, b)| a * b)
                .sum::<f64>()
                * scale
        })
        .collect();
    Ok(out)
}

/// Component-wise [`finite_difference`] of a vector-valued sample array.
pub fn finite_difference_vectors(
    values: &[EuclideanVector],
    grid: &SampleGrid,
    order: usize,
) -> Result<Vec<EuclideanVector>> {
    let dim = values.first().map(|v| v.dim()).unwrap_or(1);
    let mut out = vec![EuclideanVector::zeros(dim); values.len()];
    for j in 0..dim {
        let comp: Vec<f64> = values.iter().map(|v| v[j]).collect();
        for (o, d) in out.iter_mut().zip(finite_difference(&comp, grid, order)?) {
            o[j] = d;
        }
    }
    Ok(out)
}
