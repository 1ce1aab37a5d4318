//! Human-readable and key-value analysis reports.

use std::fmt::Write as _;

use inclined_core::helix::{HelixAnalysis, InclinedVerdict, SphericalVerdict};
use inclined_core::numerics::{constancy_score, mean, ToleranceConfig};
use inclined_core::EuclideanVector;

/// Smallest and largest value of a curvature function over interior nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
}

impl Range {
    fn of(values: impl Iterator<Item = f64>) -> Self {
        values.fold(
            Range {
                min: f64::INFINITY,
                max: f64::NEG_INFINITY,
            },
            |r, v| Range {
                min: r.min.min(v),
                max: r.max.max(v),
            },
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub name: String,
    pub dimension: usize,
    pub domain: (f64, f64),
    pub samples: usize,
    pub unit_speed: bool,
    pub reparametrized: bool,
    pub arc_length: f64,
    /// Range of each Frenet curvature, or why the frame is unavailable.
    pub frenet: Result<Vec<Range>, String>,
    /// Mean and constancy score of `κ̄2 / κ̄1` (E3).
    pub torsion_ratio: Option<(f64, f64)>,
    pub transport: Vec<Range>,
    pub rotation_seed: Option<u64>,
    pub verdict: InclinedVerdict,
    pub harmonic_constants: Vec<f64>,
    pub retained_nodes: usize,
    pub closed_form_masked: Result<usize, String>,
    pub closed_form_derivative_mismatch: Option<f64>,
    pub variant_deviation: Option<f64>,
    pub spherical: Option<Result<SphericalVerdict, String>>,
    pub tolerances: ToleranceConfig,
}

impl AnalysisReport {
    /// `native` is the curve as sampled before any reparametrization.
    pub fn new(
        native_domain: (f64, f64),
        native_unit_speed: bool,
        analysis: &HelixAnalysis,
        rotation_seed: Option<u64>,
        tolerances: ToleranceConfig,
    ) -> Self {
        let pt = &analysis.pt;
        let interior = pt.grid.interior();
        let frenet = match (&analysis.frenet, &analysis.frenet_error) {
            (Some(f), _) => Ok(f
                .curvatures
                .iter()
                .map(|k| Range::of(interior.clone().map(|i| k[i])))
                .collect()),
            (None, Some(e)) => Err(e.to_string()),
            (None, None) => Err("unavailable".into()),
        };
        let torsion_ratio = analysis.frenet.as_ref().filter(|f| f.dimension() == 3).map(|f| {
            let ratio: Vec<f64> = interior
                .clone()
                .map(|i| f.curvature(2)[i] / f.curvature(1)[i])
                .collect();
            (mean(&ratio), constancy_score(&ratio))
        });
        let closed_form = analysis.closed_form.as_ref();
        Self {
            name: analysis.curve.name.clone(),
            dimension: pt.dimension(),
            domain: native_domain,
            samples: pt.len(),
            unit_speed: native_unit_speed,
            reparametrized: analysis.reparametrized,
            arc_length: pt.grid.end() - pt.grid.start(),
            frenet,
            torsion_ratio,
            transport: pt
                .curvatures
                .iter()
                .map(|k| Range::of(interior.clone().map(|i| k[i])))
                .collect(),
            rotation_seed,
            verdict: analysis.verdict.clone(),
            harmonic_constants: analysis.harmonic.constants.clone(),
            retained_nodes: analysis.darboux.retained.len(),
            closed_form_masked: closed_form.map(|h| h.masked.len()).map_err(|e| e.to_string()),
            closed_form_derivative_mismatch: analysis.closed_form_derivative_mismatch,
            variant_deviation: closed_form.ok().and_then(|h| h.variant_deviation),
            spherical: analysis
                .spherical
                .as_ref()
                .map(|r| r.clone().map_err(|e| e.to_string())),
            tolerances,
        }
    }

    /// `key = value` lines, one per field, in a fixed order.
    pub fn fields(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = Vec::new();
        let mut put = |k: &str, v: String| out.push((k.to_string(), v));
        let v = &self.verdict;
        put("name", self.name.clone());
        put("dimension", self.dimension.to_string());
        put("domain", format!("{}, {}", num(self.domain.0), num(self.domain.1)));
        put("samples", self.samples.to_string());
        put("unit_speed", self.unit_speed.to_string());
        put("reparametrized", self.reparametrized.to_string());
        put("arc_length", num(self.arc_length));
        match &self.frenet {
            Ok(ranges) => {
                for (i, r) in ranges.iter().enumerate() {
                    put(&format!("frenet.kappa{}.min", i + 1), num(r.min));
                    put(&format!("frenet.kappa{}.max", i + 1), num(r.max));
                }
            }
            Err(e) => put("frenet.unavailable", e.clone()),
        }
        if let Some((m, c)) = self.torsion_ratio {
            put("frenet.kappa2_over_kappa1.mean", num(m));
            put("frenet.kappa2_over_kappa1.constancy", num(c));
        }
        for (i, r) in self.transport.iter().enumerate() {
            put(&format!("pt.k{}.min", i + 1), num(r.min));
            put(&format!("pt.k{}.max", i + 1), num(r.max));
        }
        put(
            "pt.rotation_seed",
            self.rotation_seed.map_or("none".into(), |s| s.to_string()),
        );
        put("verdict.status", v.status.tag().to_string());
        put("verdict.is_inclined", v.is_inclined.to_string());
        put("verdict.criterion_residual", num(v.criterion_residual));
        put("verdict.absolute_residual", num(v.absolute_residual));
        put("verdict.darboux_constancy", num(v.darboux_constancy));
        put("verdict.axis", vector(&v.axis));
        put("verdict.varphi", num(v.varphi));
        put("verdict.oracle_axis", vector(&v.oracle_axis));
        put("verdict.oracle_constancy", num(v.oracle_constancy));
        put("verdict.oracle_inclined", v.oracle_inclined.to_string());
        put("verdict.axis_agreement", num(v.axis_agreement));
        put("verdict.degenerate_planar", v.degenerate_planar.to_string());
        put("verdict.harmonic_sum_constancy", num(v.harmonic_sum_constancy));
        put("verdict.harmonic_sum_mean", num(v.harmonic_sum_mean));
        put("harmonic.constants", list(&self.harmonic_constants));
        put("harmonic.retained_nodes", self.retained_nodes.to_string());
        match &self.closed_form_masked {
            Ok(n) => put("closed_form.masked_nodes", n.to_string()),
            Err(e) => put("closed_form.unavailable", e.clone()),
        }
        if let Some(x) = self.closed_form_derivative_mismatch {
            put("closed_form.derivative_mismatch", num(x));
        }
        if let Some(x) = self.variant_deviation {
            put("closed_form.variant_deviation", num(x));
        }
        match &self.spherical {
            Some(Ok(s)) => {
                put("spherical.is_spherical", s.is_spherical.to_string());
                put("spherical.residual", num(s.residual));
                put("spherical.constants", list(&s.constants));
            }
            Some(Err(e)) => put("spherical.unavailable", e.clone()),
            None => {}
        }
        let t = &self.tolerances;
        put("tol.derivative", num(t.derivative_tol));
        put("tol.constancy", num(t.constancy_tol));
        put("tol.residual", num(t.residual_tol));
        put("tol.quadrature_abs", num(t.quadrature_abs_tol));
        put("tol.frame_ortho", num(t.frame_ortho_tol));
        out
    }

    pub fn to_structured(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.fields() {
            let _ = writeln!(s, "{k} = {v}");
        }
        s
    }

    pub fn to_text(&self) -> String {
        let v = &self.verdict;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "curve {} in E{} on [{}, {}]",
            self.name, self.dimension, self.domain.0, self.domain.1
        );
        let _ = writeln!(
            s,
            "  samples {}, unit speed {}, arc length {:.6}{}",
            self.samples,
            yes_no(self.unit_speed),
            self.arc_length,
            if self.reparametrized { " (reparametrized)" } else { "" }
        );
        match &self.frenet {
            Ok(ranges) => {
                for (i, r) in ranges.iter().enumerate() {
                    let _ = writeln!(s, "  frenet kappa{}  [{:.6}, {:.6}]", i + 1, r.min, r.max);
                }
            }
            Err(e) => {
                let _ = writeln!(s, "  frenet frame unavailable: {e}");
            }
        }
        if let Some((m, c)) = self.torsion_ratio {
            let _ = writeln!(s, "  kappa2/kappa1 mean {m:.6}, constancy {c:.2e}");
        }
        for (i, r) in self.transport.iter().enumerate() {
            let _ = writeln!(s, "  pt k{}  [{:.6}, {:.6}]", i + 1, r.min, r.max);
        }
        let _ = writeln!(s, "verdict: {}", v.status.tag());
        let _ = writeln!(s, "  inclined {}", yes_no(v.is_inclined));
        let _ = writeln!(
            s,
            "  criterion residual {:.3e} (absolute {:.3e}), darboux constancy {:.3e}",
            v.criterion_residual, v.absolute_residual, v.darboux_constancy
        );
        let _ = writeln!(s, "  axis {}  varphi {:.6}", vector(&v.axis), v.varphi);
        let _ = writeln!(
            s,
            "  oracle axis {}  constancy {:.3e}  agreement {:.9}",
            vector(&v.oracle_axis),
            v.oracle_constancy,
            v.axis_agreement
        );
        if v.degenerate_planar {
            let _ = writeln!(s, "  curve is planar: the axis is undetermined");
        }
        let _ = writeln!(
            s,
            "  sum of H_i^2: mean {:.6}, constancy {:.3e}",
            v.harmonic_sum_mean, v.harmonic_sum_constancy
        );
        match &self.closed_form_masked {
            Ok(n) => {
                let _ = writeln!(s, "  closed-form harmonic curvatures: {n} masked nodes");
            }
            Err(e) => {
                let _ = writeln!(s, "  closed-form harmonic curvatures unavailable: {e}");
            }
        }
        match &self.spherical {
            Some(Ok(sp)) => {
                let _ = writeln!(
                    s,
                    "spherical: {} (residual {:.3e})",
                    yes_no(sp.is_spherical),
                    sp.residual
                );
            }
            Some(Err(e)) => {
                let _ = writeln!(s, "spherical: unavailable ({e})");
            }
            None => {}
        }
        let t = &self.tolerances;
        let _ = writeln!(
            s,
            "tolerances: residual {:e}, constancy {:e}, derivative {:e}",
            t.residual_tol, t.constancy_tol, t.derivative_tol
        );
        s
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

fn list(xs: &[f64]) -> String {
    xs.iter().map(|x| num(*x)).collect::<Vec<_>>().join(", ")
}

/// Six decimals, without a sign on values that round to zero.
pub fn fixed(x: f64) -> String {
    let text = format!("{x:.6}");
    match text.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => text,
    }
}

pub fn vector(v: &EuclideanVector) -> String {
    format!(
        "({})",
        v.as_slice().iter().map(|x| fixed(*x)).collect::<Vec<_>>().join(", ")
    )
}
