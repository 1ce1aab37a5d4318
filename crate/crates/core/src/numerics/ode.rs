use crate::error::{Error, Result};

use super::SampleGrid;

/// Classical fixed-step RK4 over the grid nodes; returns the state at every node.
pub fn integrate_linear_ode<F>(rhs: F, initial: &[f64], grid: &SampleGrid) -> Result<Vec<Vec<f64>>>
where
    F: FnMut(f64, &[f64]) -> Vec<f64>,
{
    integrate_linear_ode_projected(rhs, initial, grid, |_, _| {})
}

/// [`integrate_linear_ode`] with a projection applied to the state after
/// every accepted step (e.g. re-orthonormalisation of a frame).
pub fn integrate_linear_ode_projected<F, P>(
    mut rhs: F,
    initial: &[f64],
    grid: &SampleGrid,
    mut project: P,
) -> Result<Vec<Vec<f64>>>
where
    F: FnMut(f64, &[f64]) -> Vec<f64>,
    P: FnMut(usize, &mut [f64]),
{
    let h = grid.step();
    let n = initial.len();
    let mut states = Vec::with_capacity(grid.len());
    let mut y = initial.to_vec();
    project(0, &mut y);
    states.push(y.clone());
    let mut tmp = vec![0.0; n];
    for i in 0..grid.len() - 1 {
        let s = grid.s(i);
        let k1 = rhs(s, &y);
        for j in 0..n {
            tmp[j] = y[j] + 0.5 * h * k1[j];
        }
        let k2 = rhs(s + 0.5 * h, &tmp);
        for j in 0..n {
            tmp[j] = y[j] + 0.5 * h * k2[j];
        }
        let k3 = rhs(s + 0.5 * h, &tmp);
        for j in 0..n {
            tmp[j] = y[j] + h * k3[j];
        }
        let k4 = rhs(s + h, &tmp);
        for j in 0..n {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        if y.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteState { s: grid.s(i + 1) });
        }
        project(i + 1, &mut y);
        states.push(y.clone());
    }
    Ok(states)
}
