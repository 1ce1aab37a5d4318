use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{evaluate_jets, Expr};
use crate::numerics::interp::{cubic_hermite, interpolate, interpolate_vector, quintic_hermite};
use crate::numerics::{
    cumulative_antiderivative, finite_difference_vectors, gauss_legendre, Jet, SampleGrid,
    ToleranceConfig, BOUNDARY_NODES,
};
use crate::vector::{determinant, EuclideanVector};

use super::CurveSpec;

/// Largest `| |α'| - 1 |` over interior nodes for a curve to count as unit speed.
pub const UNIT_SPEED_TOL: f64 = 1e-4;
/// Speeds at or below this are treated as a singular parametrisation.
pub const MIN_SPEED: f64 = 1e-8;
const MAX_ORDER: usize = 4;

/// Where the parallel-transport frame is tied to the Frenet frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Anchor {
    /// Fractional node index.
    pub position: f64,
    /// Bishop rotation angle at `position`, nonzero only when the requested
    /// anchor parameter lies outside the sampled domain.
    pub angle: f64,
}

/// Expressions behind a sampled curve, kept so exact Taylor jets can be
/// re-evaluated at arbitrary parameters.
#[derive(Debug)]
struct JetSource {
    exprs: Vec<Expr>,
    tol: ToleranceConfig,
    native_grid: SampleGrid,
    anchor: Option<f64>,
}

impl JetSource {
    /// `out[node][component]`.
    fn jets(&self, points: &[f64]) -> Result<Vec<Vec<Jet>>> {
        let per_component = self
            .exprs
            .iter()
            .map(|e| evaluate_jets(e, points, &self.tol))
            .collect::<Result<Vec<_>>>()?;
        Ok((0..points.len())
            .map(|i| per_component.iter().map(|c| c[i]).collect())
            .collect())
    }

    /// Torsion of the curve at native parameter `t`.
    fn torsion(&self, t: f64) -> Result<(f64, f64)> {
        let jets = self.jets(&[t])?;
        let d = |k: usize| {
            EuclideanVector::from_slice(&jets[0].iter().map(|j| j.derivative(k)).collect::<Vec<_>>())
        };
        let (d1, d2, d3) = (d(1), d(2), d(3));
        let cross_sq = d1.norm_squared() * d2.norm_squared() - d1.dot(&d2).powi(2);
        if cross_sq <= 0.0 {
            return Err(Error::DegenerateCurvature { s: t });
        }
        Ok((determinant(&[d1, d2, d3]) / cross_sq, d1.norm()))
    }

    /// Bishop angle at native parameter `at` when it is zero at the anchor:
    /// `-∫ τ` from the anchor, against `dt` or arc length.
    fn anchor_angle(&self, anchor: f64, at: f64, arc_length: bool) -> Result<f64> {
        let (lo, hi, sign) = if anchor < at {
            (anchor, at, -1.0)
        } else {
            (at, anchor, 1.0)
        };
        let integral = gauss_legendre(
            |t| {
                let (tau, speed) = self.torsion(t)?;
                Ok(if arc_length { tau * speed } else { tau })
            },
            lo,
            hi,
            16,
            8,
        )?;
        Ok(sign * integral)
    }
}

/// A curve sampled on a uniform grid with derivative fields.
#[derive(Debug, Clone)]
pub struct SampledCurve {
    pub name: String,
    pub grid: SampleGrid,
    pub positions: Vec<EuclideanVector>,
    /// `derivatives[k - 1]` holds the `k`-th derivative, `k = 1..=4`.
    pub derivatives: Vec<Vec<EuclideanVector>>,
    pub speed: Vec<f64>,
    pub unit_speed: bool,
    /// True when the grid parameter is arc length obtained by resampling.
    pub reparametrized: bool,
    /// Original curve parameter at each node.
    pub parameter: Vec<f64>,
    pub anchor: Anchor,
    /// Derivatives came from Taylor jets rather than finite differences.
    pub exact_derivatives: bool,
    source: Option<Arc<JetSource>>,
}

fn unit_speed_check(speed: &[f64], grid: &SampleGrid) -> bool {
    grid.interior().all(|i| (speed[i] - 1.0).abs() <= UNIT_SPEED_TOL)
}

fn default_anchor() -> Anchor {
    Anchor {
        position: BOUNDARY_NODES as f64,
        angle: 0.0,
    }
}

impl SampledCurve {
    pub fn dimension(&self) -> usize {
        self.positions[0].dim()
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// `order`-th derivative field, `1..=4`.
    pub fn derivative(&self, order: usize) -> &[EuclideanVector] {
        &self.derivatives[order - 1]
    }

    pub fn tangents(&self) -> Vec<EuclideanVector> {
        self.derivative(1).iter().map(|v| v.normalized()).collect()
    }

    /// Builds a curve from positions alone; derivatives by finite differences.
    pub fn from_samples(name: &str, grid: SampleGrid, positions: Vec<EuclideanVector>) -> Result<Self> {
        if positions.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "{} positions on a grid of {} nodes",
                positions.len(),
                grid.len()
            )));
        }
        let dim = positions[0].dim();
        if !(3..=4).contains(&dim) || positions.iter().any(|p| p.dim() != dim) {
            return Err(Error::Dimension { expected: 3, got: dim });
        }
        if let Some(i) = positions.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFiniteState { s: grid.s(i) });
        }
        let derivatives = (1..=MAX_ORDER)
            .map(|k| finite_difference_vectors(&positions, &grid, k))
            .collect::<Result<Vec<_>>>()?;
        let speed: Vec<f64> = derivatives[0].iter().map(|v| v.norm()).collect();
        Ok(Self {
            name: name.to_string(),
            grid,
            unit_speed: unit_speed_check(&speed, &grid),
            speed,
            positions,
            derivatives,
            reparametrized: false,
            parameter: grid.values(),
            anchor: default_anchor(),
            exact_derivatives: false,
            source: None,
        })
    }

    fn from_jets(
        name: &str,
        grid: SampleGrid,
        jets: &[Vec<Jet>],
        parameter: Vec<f64>,
        source: Arc<JetSource>,
    ) -> Result<Self> {
        let field = |k: usize| -> Vec<EuclideanVector> {
            jets.iter()
                .map(|node| {
                    EuclideanVector::from_slice(&node.iter().map(|j| j.derivative(k)).collect::<Vec<_>>())
                })
                .collect()
        };
        let positions = field(0);
        let derivatives: Vec<_> = (1..=MAX_ORDER).map(field).collect();
        for field in &derivatives {
            if let Some(i) = field.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFiniteState { s: parameter[i] });
            }
        }
        let speed: Vec<f64> = derivatives[0].iter().map(|v| v.norm()).collect();
        Ok(Self {
            name: name.to_string(),
            grid,
            unit_speed: unit_speed_check(&speed, &grid),
            speed,
            positions,
            derivatives,
            reparametrized: false,
            parameter,
            anchor: default_anchor(),
            exact_derivatives: true,
            source: Some(source),
        })
    }

    /// Fails with the first node whose speed is too small.
    pub fn check_regular(&self) -> Result<()> {
        match self.speed.iter().position(|&v| !(v > MIN_SPEED)) {
            Some(i) => Err(Error::VanishingSpeed { s: self.parameter[i] }),
            None => Ok(()),
        }
    }
}

/// Samples a spec on its grid with exact derivatives up to fourth order.
pub fn realize_curve(spec: &CurveSpec, tol: &ToleranceConfig) -> Result<SampledCurve> {
    spec.validate()?;
    tol.validate()?;
    let grid = SampleGrid::new(spec.domain.0, spec.domain.1, spec.samples)?;
    let source = Arc::new(JetSource {
        exprs: spec.expressions().to_vec(),
        tol: *tol,
        native_grid: grid,
        anchor: spec.anchor,
    });
    let t = grid.values();
    let jets = source.jets(&t)?;
    let mut curve = SampledCurve::from_jets(&spec.name, grid, &jets, t, source.clone())?;
    if let Some(a) = spec.anchor {
        curve.anchor = match grid.position_of(a) {
            Some(position) => Anchor { position, angle: 0.0 },
            None => {
                let end = if a < grid.start() { 0 } else { grid.len() - 1 };
                let angle = if curve.dimension() == 3 {
                    source.anchor_angle(a, grid.s(end), false)?
                } else {
                    0.0
                };
                Anchor {
                    position: end as f64,
                    angle,
                }
            }
        };
    }
    Ok(curve)
}

/// Resamples a curve so that its grid parameter is arc length from the
/// first node. Expression curves are resampled through exact Taylor jets;
/// curves known only by samples use interpolation.
pub fn reparametrize_by_arclength(curve: &SampledCurve) -> Result<SampledCurve> {
    curve.check_regular()?;
    match &curve.source {
        Some(src) => reparametrize_jets(curve, src),
        None => reparametrize_samples(curve),
    }
}

fn speed_jet(node: &[Jet]) -> Jet {
    let mut sq = Jet::constant(0.0);
    for c in node {
        let v = c.differentiate();
        sq = sq + v * v;
    }
    sq.sqrt()
}

fn reparametrize_jets(curve: &SampledCurve, src: &Arc<JetSource>) -> Result<SampledCurve> {
    let g = src.native_grid;
    let t = g.values();
    let jets = src.jets(&t)?;
    let speed: Vec<Jet> = jets.iter().map(|n| speed_jet(n)).collect();
    if let Some(i) = speed.iter().position(|v| !(v.value() > MIN_SPEED)) {
        return Err(Error::VanishingSpeed { s: t[i] });
    }
    let f = |i: usize, k: usize| speed[i].derivative(k);
    let h = g.step();
    // Two-point Hermite rule, exact for quintics.
    let mut sigma = vec![0.0; g.len()];
    for i in 0..g.len() - 1 {
        sigma[i + 1] = sigma[i]
            + h / 2.0 * (f(i, 0) + f(i + 1, 0))
            + h * h / 10.0 * (f(i, 1) - f(i + 1, 1))
            + h * h * h / 120.0 * (f(i, 2) + f(i + 1, 2));
    }
    let length = sigma[g.len() - 1];
    let n = g.len();
    let new_grid = SampleGrid::new(0.0, length, n)?;
    // t as a function of arc length inside native panel i.
    let inverse = |i: usize, x: f64| {
        let slope = |i: usize| 1.0 / f(i, 0);
        let curv = |i: usize| -f(i, 1) / f(i, 0).powi(3);
        quintic_hermite(
            sigma[i],
            sigma[i + 1],
            [t[i], t[i + 1]],
            [slope(i), slope(i + 1)],
            [curv(i), curv(i + 1)],
            x,
        )
    };
    let panel_of = |x: f64, from: usize| {
        let mut i = from;
        while i + 2 < n && sigma[i + 1] < x {
            i += 1;
        }
        i
    };
    let mut new_t = Vec::with_capacity(n);
    let mut panel = 0;
    for j in 0..n {
        let value = if j == 0 {
            t[0]
        } else if j == n - 1 {
            t[n - 1]
        } else {
            let x = new_grid.s(j);
            panel = panel_of(x, panel);
            inverse(panel, x).clamp(t[0], t[n - 1])
        };
        new_t.push(value);
    }
    let at_new = src.jets(&new_t)?;
    let in_sigma: Vec<Vec<Jet>> = at_new
        .iter()
        .enumerate()
        .map(|(j, node)| {
            let sigma_of_t = speed_jet(node).integrate(new_grid.s(j));
            let t_of_sigma = sigma_of_t.invert(new_t[j]);
            node.iter().map(|c| c.compose(&t_of_sigma)).collect()
        })
        .collect();
    let mut out = SampledCurve::from_jets(&curve.name, new_grid, &in_sigma, new_t, src.clone())?;
    out.reparametrized = true;
    if let Some(a) = src.anchor {
        out.anchor = match g.position_of(a) {
            Some(p) => {
                let i = (p.floor() as usize).min(n - 2);
                let s_a = quintic_hermite(
                    t[i],
                    t[i + 1],
                    [sigma[i], sigma[i + 1]],
                    [f(i, 0), f(i + 1, 0)],
                    [f(i, 1), f(i + 1, 1)],
                    a,
                );
                Anchor {
                    position: new_grid.position_of(s_a).unwrap_or(p),
                    angle: 0.0,
                }
            }
            None => {
                let end = if a < g.start() { 0 } else { n - 1 };
                let angle = if out.dimension() == 3 {
                    src.anchor_angle(a, t[end], true)?
                } else {
                    0.0
                };
                Anchor {
                    position: end as f64,
                    angle,
                }
            }
        };
    }
    Ok(out)
}

fn reparametrize_samples(curve: &SampledCurve) -> Result<SampledCurve> {
    let g = curve.grid;
    let n = g.len();
    let h = g.step();
    let speed = &curve.speed;
    let sigma = cumulative_antiderivative(speed, &g, 0.0);
    if let Some(i) = sigma.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::VanishingSpeed { s: g.s(i) });
    }
    let length = sigma[n - 1];
    let new_grid = SampleGrid::new(0.0, length, n)?;
    let mut panel = 0;
    let mut positions = Vec::with_capacity(n);
    let mut parameter = Vec::with_capacity(n);
    let mut anchor_position = None;
    for j in 0..n {
        let x = new_grid.s(j);
        while panel + 2 < n && sigma[panel + 1] < x {
            panel += 1;
        }
        let i = panel;
        let frac = cubic_hermite(
            sigma[i],
            sigma[i + 1],
            0.0,
            1.0,
            1.0 / (speed[i] * h),
            1.0 / (speed[i + 1] * h),
            x,
        );
        let pos = (i as f64 + frac).clamp(0.0, (n - 1) as f64);
        positions.push(interpolate_vector(&curve.positions, pos));
        parameter.push(interpolate(&curve.parameter, pos));
        if anchor_position.is_none() && pos >= curve.anchor.position {
            anchor_position = Some(j as f64);
        }
    }
    let mut out = SampledCurve::from_samples(&curve.name, new_grid, positions)?;
    out.parameter = parameter;
    out.reparametrized = true;
    if curve.anchor != default_anchor() {
        out.anchor = Anchor {
            position: anchor_position.unwrap_or((n - 1) as f64),
            angle: curve.anchor.angle,
        };
    }
    Ok(out)
}
