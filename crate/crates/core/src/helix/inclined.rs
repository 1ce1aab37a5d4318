use crate::curve::{reparametrize_by_arclength, SampledCurve};
use crate::error::{Error, Result};
use crate::frames::{
    compute_frenet, compute_pt_frame_with, random_normal_rotation, FrameField, PtInit, PtOptions,
};
use crate::numerics::{constancy_score, finite_difference, mean, median, rms, ToleranceConfig};
use crate::vector::EuclideanVector;

use super::darboux::{axis_from_darboux, darboux_vector_field, tangent_oracle, DarbouxField};
use super::harmonic::{criterion_terms, harmonic_by_integration, harmonic_closed_form};
use super::spherical::{detect_spherical, SphericalVerdict};
use super::HarmonicCurvatures;

/// Minimum `|⟨X, oracle axis⟩|` for the two detection routes to agree.
pub const AXIS_AGREEMENT_TOL: f64 = 1e-3;
const PLANAR_MEAN_TOL: f64 = 1e-8;
const PLANAR_MAX_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InclinedStatus {
    Inclined,
    NotInclined,
    /// The Darboux route and the tangent-covariance route disagree.
    Inconclusive,
}

impl InclinedStatus {
    pub fn tag(self) -> &'static str {
        match self {
            InclinedStatus::Inclined => "inclined",
            InclinedStatus::NotInclined => "not_inclined",
            InclinedStatus::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InclinedVerdict {
    pub status: InclinedStatus,
    /// Decision of the integral criterion and Darboux constancy.
    pub is_inclined: bool,
    /// RMS of `Σ k_i H_i` relative to `RMS(κ̄1) · RMS(|D|)`.
    pub criterion_residual: f64,
    /// RMS of `Σ k_i H_i`.
    pub absolute_residual: f64,
    pub darboux_constancy: f64,
    pub axis: EuclideanVector,
    pub varphi: f64,
    pub oracle_axis: EuclideanVector,
    /// Constancy score of `⟨T, oracle axis⟩`.
    pub oracle_constancy: f64,
    pub oracle_inclined: bool,
    pub axis_agreement: f64,
    pub degenerate_planar: bool,
    /// Constancy score and mean of `Σ H_i^2`.
    pub harmonic_sum_constancy: f64,
    pub harmonic_sum_mean: f64,
}

#[derive(Debug, Clone, Default)]
pub struct AnalysisOptions {
    /// Rotate the initial normal frame by a random rotation from this seed.
    pub rotation_seed: Option<u64>,
    /// Also run the spherical-curve fit.
    pub spherical: bool,
}

/// Everything computed on the way to an [`InclinedVerdict`].
#[derive(Debug, Clone)]
pub struct HelixAnalysis {
    /// The unit-speed curve the frames were computed on.
    pub curve: SampledCurve,
    pub reparametrized: bool,
    pub frenet: Option<FrameField>,
    /// Why the Frenet frame was unavailable (E4 curves with dependent
    /// third derivative are transported from a canonical frame instead).
    pub frenet_error: Option<Error>,
    pub pt: FrameField,
    pub harmonic: HarmonicCurvatures,
    pub closed_form: std::result::Result<HarmonicCurvatures, Error>,
    pub darboux: DarbouxField,
    pub verdict: InclinedVerdict,
    pub spherical: Option<std::result::Result<SphericalVerdict, Error>>,
    /// Constancy of `κ̄2 / κ̄1` (E3 only).
    pub lancret_constancy: Option<f64>,
    /// `max_i median |H_i' + k_i|` for the closed-form `H` on unmasked nodes.
    pub closed_form_derivative_mismatch: Option<f64>,
}

/// Full detection pipeline on any regular curve.
pub fn detect_inclined(curve: &SampledCurve, tol: &ToleranceConfig) -> Result<InclinedVerdict> {
    Ok(analyze_inclined(curve, tol, &AnalysisOptions::default())?.verdict)
}

pub fn analyze_inclined(
    curve: &SampledCurve,
    tol: &ToleranceConfig,
    options: &AnalysisOptions,
) -> Result<HelixAnalysis> {
    tol.validate()?;
    let reparametrized = !curve.unit_speed;
    let unit = if reparametrized {
        reparametrize_by_arclength(curve)?
    } else {
        curve.clone()
    };
    let d = unit.dimension();
    let (frenet, frenet_error) = match compute_frenet(&unit) {
        Ok(f) => (Some(f), None),
        Err(e @ Error::DegenerateFrame { order, .. }) if order >= 3 => (None, Some(e)),
        Err(e) => return Err(e),
    };
    let init = match &frenet {
        Some(f) => PtInit::Frenet(f),
        None => PtInit::Canonical,
    };
    let pt = compute_pt_frame_with(
        &unit,
        &PtOptions {
            init,
            rotation: options.rotation_seed.map(|seed| random_normal_rotation(d - 1, seed)),
        },
    )?;
    let harmonic = harmonic_by_integration(&pt)?;
    let darboux = darboux_vector_field(&pt, &harmonic);
    let verdict = build_verdict(&pt, &harmonic, &darboux, tol)?;
    let closed_form = harmonic_closed_form(&pt);
    let closed_form_derivative_mismatch = closed_form
        .as_ref()
        .ok()
        .and_then(|h| derivative_mismatch(&pt, h));
    let lancret_constancy = frenet.as_ref().filter(|_| d == 3).map(|f| {
        let ratio: Vec<f64> = pt
            .grid
            .interior()
            .map(|i| f.curvature(2)[i] / f.curvature(1)[i])
            .collect();
        constancy_score(&ratio)
    });
    let spherical = options.spherical.then(|| detect_spherical(&pt, tol));
    Ok(HelixAnalysis {
        curve: unit,
        reparametrized,
        frenet,
        frenet_error,
        pt,
        harmonic,
        closed_form,
        darboux,
        verdict,
        spherical,
        lancret_constancy,
        closed_form_derivative_mismatch,
    })
}

fn build_verdict(
    pt: &FrameField,
    harmonic: &HarmonicCurvatures,
    darboux: &DarbouxField,
    tol: &ToleranceConfig,
) -> Result<InclinedVerdict> {
    let nodes = &darboux.retained;
    let terms = criterion_terms(pt, harmonic);
    let terms: Vec<f64> = nodes.iter().map(|&i| terms[i]).collect();
    let kappa: Vec<f64> = nodes
        .iter()
        .map(|&i| pt.curvatures.iter().map(|k| k[i] * k[i]).sum::<f64>().sqrt())
        .collect();
    let d_norm: Vec<f64> = nodes.iter().map(|&i| darboux.vectors[i].norm()).collect();
    let absolute_residual = rms(&terms);
    let scale = rms(&kappa) * rms(&d_norm);
    let criterion_residual = if scale > 0.0 {
        absolute_residual / scale
    } else {
        f64::INFINITY
    };
    let estimate = axis_from_darboux(darboux, pt);
    let oracle = tangent_oracle(pt, nodes)?;
    let degenerate_planar =
        oracle.mean_projection <= PLANAR_MEAN_TOL && oracle.max_projection <= PLANAR_MAX_TOL;
    let is_inclined = !degenerate_planar
        && criterion_residual <= tol.residual_tol
        && darboux.constancy <= tol.constancy_tol;
    let oracle_inclined = !degenerate_planar && oracle.constancy <= tol.constancy_tol;
    let axis_agreement = estimate.axis.dot(&oracle.axis).abs();
    let status = match (is_inclined, oracle_inclined) {
        (true, true) if axis_agreement >= 1.0 - AXIS_AGREEMENT_TOL => InclinedStatus::Inclined,
        (false, false) => InclinedStatus::NotInclined,
        _ => InclinedStatus::Inconclusive,
    };
    let sum_sq = harmonic.squared_sum();
    let sum_sq: Vec<f64> = nodes.iter().map(|&i| sum_sq[i]).collect();
    Ok(InclinedVerdict {
        status,
        is_inclined,
        criterion_residual,
        absolute_residual,
        darboux_constancy: darboux.constancy,
        axis: estimate.axis,
        varphi: estimate.varphi,
        oracle_axis: if oracle.axis.dot(&estimate.axis) < 0.0 {
            -oracle.axis
        } else {
            oracle.axis
        },
        oracle_constancy: oracle.constancy,
        oracle_inclined,
        axis_agreement,
        degenerate_planar,
        harmonic_sum_constancy: constancy_score(&sum_sq),
        harmonic_sum_mean: mean(&sum_sq),
    })
}

/// `max_i median |H_i' + k_i|` over interior nodes where `H` and its stencil are unmasked.
pub fn derivative_mismatch(pt: &FrameField, h: &HarmonicCurvatures) -> Option<f64> {
    let mut worst: Option<f64> = None;
    for (hv, k) in h.values.iter().zip(&pt.curvatures) {
        let d = finite_difference(hv, &pt.grid, 1).ok()?;
        let res: Vec<f64> = pt
            .grid
            .interior()
            .filter(|&i| d[i].is_finite())
            .map(|i| (d[i] / pt.speed[i] + k[i]).abs())
            .collect();
        if res.is_empty() {
            return None;
        }
        let r = median(&res);
        worst = Some(worst.map_or(r, |w: f64| w.max(r)));
    }
    worst
}
