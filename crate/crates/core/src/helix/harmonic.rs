use crate::error::{Error, Result};
use crate::frames::FrameField;
use crate::numerics::{cumulative_antiderivative, finite_difference, least_squares_min_norm, median};

/// Magnitude below which a closed-form denominator masks the node.
pub const DENOMINATOR_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HarmonicMethod {
    ClosedForm,
    IntegralFit,
}

impl HarmonicMethod {
    pub fn tag(self) -> &'static str {
        match self {
            HarmonicMethod::ClosedForm => "closed_form",
            HarmonicMethod::IntegralFit => "integral_fit",
        }
    }
}

/// Harmonic curvature functions `H_1..H_{d-1}` at every node.
#[derive(Debug, Clone)]
pub struct HarmonicCurvatures {
    pub method: HarmonicMethod,
    /// `values[i]` holds `H_{i+1}`; NaN at masked nodes.
    pub values: Vec<Vec<f64>>,
    /// Integration constants of the fit (empty for closed forms).
    pub constants: Vec<f64>,
    pub masked: Vec<usize>,
    /// Median over unmasked nodes of the change in `H` when `k1 A'` in the
    /// last quotient of the E4 formulas is replaced by `k1 A`.
    pub variant_deviation: Option<f64>,
}

impl HarmonicCurvatures {
    pub fn len(&self) -> usize {
        self.values[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.values[0].is_empty()
    }

    pub fn is_masked(&self, i: usize) -> bool {
        self.values.iter().any(|h| !h[i].is_finite())
    }

    /// `Σ H_i^2` at every node.
    pub fn squared_sum(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| self.values.iter().map(|h| h[i] * h[i]).sum())
            .collect()
    }
}

/// `Σ k_i H_i` at every node.
pub fn criterion_terms(pt: &FrameField, h: &HarmonicCurvatures) -> Vec<f64> {
    (0..pt.len())
        .map(|i| {
            pt.curvatures
                .iter()
                .zip(&h.values)
                .map(|(k, hv)| k[i] * hv[i])
                .sum()
        })
        .collect()
}

/// `H_i = -∫ k_i ds + c_i`, with the constants chosen to minimise the RMS of
/// `Σ k_i H_i` over the interior nodes.
pub fn harmonic_by_integration(pt: &FrameField) -> Result<HarmonicCurvatures> {
    let grid = pt.grid;
    let antiderivatives: Vec<Vec<f64>> = pt
        .curvatures
        .iter()
        .map(|k| {
            let per_grid: Vec<f64> = k.iter().zip(&pt.speed).map(|(a, v)| a * v).collect();
            cumulative_antiderivative(&per_grid, &grid, 0.0)
        })
        .collect();
    let rows: Vec<usize> = grid.interior().collect();
    let design: Vec<Vec<f64>> = rows
        .iter()
        .map(|&i| pt.curvatures.iter().map(|k| k[i]).collect())
        .collect();
    let target: Vec<f64> = rows
        .iter()
        .map(|&i| {
            pt.curvatures
                .iter()
                .zip(&antiderivatives)
                .map(|(k, big_k)| k[i] * big_k[i])
                .sum()
        })
        .collect();
    let fit = least_squares_min_norm(&design, &target).map_err(|e| match e {
        Error::RankDeficient { .. } => Error::AllCurvaturesZero,
        other => other,
    })?;
    let values = antiderivatives
        .iter()
        .zip(&fit.coefficients)
        .map(|(big_k, c)| big_k.iter().map(|x| c - x).collect())
        .collect();
    Ok(HarmonicCurvatures {
        method: HarmonicMethod::IntegralFit,
        values,
        constants: fit.coefficients,
        masked: Vec::new(),
        variant_deviation: None,
    })
}

/// Arc-length derivative by finite differences.
fn rate(values: &[f64], pt: &FrameField) -> Result<Vec<f64>> {
    Ok(finite_difference(values, &pt.grid, 1)?
        .into_iter()
        .zip(&pt.speed)
        .map(|(d, v)| d / v)
        .collect())
}

fn finite_or_nan(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else {
        f64::NAN
    }
}

/// Closed-form harmonic curvatures from the transport curvatures alone.
///
/// E3 uses `H1 = k2 (1 + f^2) / f'`, `H2 = -k1 (1 + f^2) / f'` with
/// `f = k1 / k2`, evaluated as `H1 = k2 (k1^2 + k2^2) / W`,
/// `H2 = -k1 (k1^2 + k2^2) / W`, `W = k1' k2 - k1 k2'`, which avoids the pole
/// of `f` where `k2` vanishes. E4 eliminates `⟨M_i, X⟩` as in the
/// derivation, with `A = k2/k1`, `B = k3/k1`, `C = B'/A'` and
/// `E = (k1^2 + k2^2 + k3^2) / (k1 A')`:
/// `H3 = (k2 + C k3 + E') / C'`, `H2 = -C H3 + E`, `H1 = -(A H2 + B H3)`.
pub fn harmonic_closed_form(pt: &FrameField) -> Result<HarmonicCurvatures> {
    let n = pt.len();
    let k = &pt.curvatures;
    let (values, variant_deviation) = match pt.dimension() {
        3 => {
            let d1 = rate(&k[0], pt)?;
            let d2 = rate(&k[1], pt)?;
            let mut h1 = vec![f64::NAN; n];
            let mut h2 = vec![f64::NAN; n];
            for i in 0..n {
                let sq = k[0][i] * k[0][i] + k[1][i] * k[1][i];
                let w = d1[i] * k[1][i] - k[0][i] * d2[i];
                if sq > 0.0 && (w / sq).abs() >= DENOMINATOR_TOL {
                    h1[i] = k[1][i] * sq / w;
                    h2[i] = -k[0][i] * sq / w;
                }
            }
            (vec![h1, h2], None)
        }
        4 => {
            let sq: Vec<f64> = (0..n).map(|i| k.iter().map(|c| c[i] * c[i]).sum()).collect();
            let a: Vec<f64> = (0..n).map(|i| finite_or_nan(k[1][i] / k[0][i])).collect();
            let b: Vec<f64> = (0..n).map(|i| finite_or_nan(k[2][i] / k[0][i])).collect();
            let da = rate(&a, pt)?;
            let db = rate(&b, pt)?;
            let c: Vec<f64> = (0..n).map(|i| finite_or_nan(db[i] / da[i])).collect();
            let dc = rate(&c, pt)?;
            let e: Vec<f64> = (0..n).map(|i| finite_or_nan(sq[i] / (k[0][i] * da[i]))).collect();
            let de = rate(&e, pt)?;
            let e_variant: Vec<f64> = (0..n).map(|i| finite_or_nan(sq[i] / (k[0][i] * a[i]))).collect();
            let de_variant = rate(&e_variant, pt)?;
            let mut h = vec![vec![f64::NAN; n]; 3];
            let mut deviation = Vec::new();
            for i in 0..n {
                let ok = k[0][i].abs() >= DENOMINATOR_TOL
                    && da[i].abs() >= DENOMINATOR_TOL
                    && dc[i].abs() >= DENOMINATOR_TOL;
                if !ok {
                    continue;
                }
                let h3 = (k[1][i] + c[i] * k[2][i] + de[i]) / dc[i];
                let h2 = -c[i] * h3 + e[i];
                let h1 = -(a[i] * h2 + b[i] * h3);
                if [h1, h2, h3].iter().all(|x| x.is_finite()) {
                    h[0][i] = h1;
                    h[1][i] = h2;
                    h[2][i] = h3;
                    let p3 = (k[1][i] + c[i] * k[2][i] + de_variant[i]) / dc[i];
                    let p2 = -c[i] * p3 + e_variant[i];
                    let p1 = -(a[i] * p2 + b[i] * p3);
                    let dev = ((p1 - h1).powi(2) + (p2 - h2).powi(2) + (p3 - h3).powi(2)).sqrt();
                    if dev.is_finite() {
                        deviation.push(dev);
                    }
                }
            }
            let deviation = (!deviation.is_empty()).then(|| median(&deviation));
            (h, deviation)
        }
        d => return Err(Error::Dimension { expected: 4, got: d }),
    };
    let masked: Vec<usize> = (0..n)
        .filter(|&i| values.iter().any(|h| !h[i].is_finite()))
        .collect();
    if pt.grid.interior().all(|i| masked.binary_search(&i).is_ok()) {
        return Err(Error::NonzeroCurvatureRequired);
    }
    Ok(HarmonicCurvatures {
        method: HarmonicMethod::ClosedForm,
        values,
        constants: Vec::new(),
        masked,
        variant_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::curve::realize_curve;
    use crate::frames::{compute_frenet, compute_pt_frame};
    use crate::numerics::{rms, ToleranceConfig};

    fn pt_of(spec: &crate::curve::CurveSpec) -> FrameField {
        let curve = realize_curve(spec, &ToleranceConfig::default()).unwrap();
        let frenet = compute_frenet(&curve).unwrap();
        compute_pt_frame(&curve, &frenet).unwrap()
    }

    #[test]
    fn euler_spiral_fit_recovers_analytic_antiderivatives() {
        let pt = pt_of(&builtin("example2").unwrap());
        let h = harmonic_by_integration(&pt).unwrap();
        let grid = pt.grid.values();
        let phase = |s: f64| 0.8 * s * s;
        let c1 = h.values[0][0] + 0.75 * phase(grid[0]).sin();
        let c2 = h.values[1][0] + 0.75 * phase(grid[0]).cos();
        assert!(c1.abs() < 1e-6 && c2.abs() < 1e-6, "constants {c1} {c2}");
        for (i, s) in grid.iter().enumerate().step_by(50) {
            assert!((h.values[0][i] + 0.75 * phase(*s).sin()).abs() < 1e-6);
            assert!((h.values[1][i] + 0.75 * phase(*s).cos()).abs() < 1e-6);
        }
        assert!(rms(&criterion_terms(&pt, &h)) < 1e-8);
    }

    #[test]
    fn closed_form_agrees_with_the_fit_on_a_helix() {
        let pt = pt_of(&builtin("example2").unwrap());
        let fit = harmonic_by_integration(&pt).unwrap();
        let cf = harmonic_closed_form(&pt).unwrap();
        for i in pt.grid.interior().step_by(40) {
            for j in 0..2 {
                assert!((fit.values[j][i] - cf.values[j][i]).abs() < 1e-5, "node {i}");
            }
        }
    }

    #[test]
    fn closed_form_on_a_planar_curve_is_an_error() {
        let spec = crate::curve::CurveSpec::new("circle", &["cos(s)", "sin(s)", "0"], (0.0, 3.0), 401)
            .unwrap();
        let pt = pt_of(&spec);
        assert!(matches!(harmonic_closed_form(&pt), Err(Error::NonzeroCurvatureRequired)));
    }

    #[test]
    fn closed_form_in_e4_matches_the_fit_away_from_singular_nodes() {
        let curve = realize_curve(&builtin("helix4d").unwrap(), &ToleranceConfig::default()).unwrap();
        let frenet = compute_frenet(&curve).unwrap();
        let pt = compute_pt_frame(&curve, &frenet).unwrap();
        let fit = harmonic_by_integration(&pt).unwrap();
        let cf = harmonic_closed_form(&pt).unwrap();
        let mut diffs = Vec::new();
        for i in pt.grid.interior() {
            if !cf.is_masked(i) {
                diffs.push((0..3).map(|j| (fit.values[j][i] - cf.values[j][i]).abs()).fold(0.0, f64::max));
            }
        }
        assert!(median(&diffs) < 1e-6);
        assert!(cf.variant_deviation.unwrap() > 1e-3);
    }
}
