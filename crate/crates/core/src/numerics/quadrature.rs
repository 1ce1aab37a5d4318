use crate::error::Result;

use super::SampleGrid;

const MAX_DEPTH: u32 = 48;
const MIN_DEPTH: u32 = 3;

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&mut f, a, b, fa, fm, fb, whole, tol, 0)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F>(
    f: &mut F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth >= MAX_DEPTH || (depth >= MIN_DEPTH && delta.abs() <= 15.0 * tol) {
        return Ok(left + right + delta / 15.0);
    }
    Ok(simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)?
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)?)
}

/// Running integral of grid samples from the first node, plus `constant`.
///
/// Each panel uses the four-point rule that is exact for cubics (centred in
/// the interior, one-sided on the first and last panel); the running total
/// is compensated against round-off.
pub fn cumulative_antiderivative(values: &[f64], grid: &SampleGrid, constant: f64) -> Vec<f64> {
    let n = values.len();
    assert_eq!(n, grid.len(), "values and grid disagree in length");
    let h = grid.step();
    let f = values;
    let mut out = Vec::with_capacity(n);
    out.push(constant);
    let mut sum = constant;
    let mut comp = 0.0;
    for i in 0..n - 1 {
        let panel = if i == 0 {
            h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3])
        } else if i == n - 2 {
            h / 24.0 * (9.0 * f[n - 1] + 19.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4])
        } else {
            h / 24.0 * (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2])
        };
        // Neumaier summation.
        let t = sum + panel;
        if sum.abs() >= panel.abs() {
            comp += (sum - t) + panel;
        } else {
            comp += (panel - t) + sum;
        }
        sum = t;
        out.push(sum + comp);
    }
    out
}

/// Gauss-Legendre nodes and weights on [-1, 1].
fn legendre_rule(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule
}

/// Composite Gauss-Legendre quadrature: `panels` panels of `points` nodes.
///
/// Never evaluates `f` at the interval end points.
pub fn gauss_legendre<F>(mut f: F, a: f64, b: f64, panels: usize, points: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let rule = legendre_rule(points);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        for &(x, w) in &rule {
            total += 0.5 * h * w * f(mid + 0.5 * h * x)?;
        }
    }
    Ok(total)
}
