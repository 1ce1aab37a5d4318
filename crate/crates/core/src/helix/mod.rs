//! Harmonic curvatures, Darboux vector fields and inclined-curve detection.

mod darboux;
mod harmonic;
mod inclined;
mod spherical;

pub use darboux::{
    axis_from_darboux, compute_axis, darboux_vector_field, tangent_oracle, AxisEstimate,
    DarbouxField, TangentOracle,
};
pub use harmonic::{
    criterion_terms, harmonic_by_integration, harmonic_closed_form, HarmonicCurvatures,
    HarmonicMethod, DENOMINATOR_TOL,
};
pub use inclined::{
    analyze_inclined, derivative_mismatch, detect_inclined, AnalysisOptions, HelixAnalysis,
    InclinedStatus, InclinedVerdict, AXIS_AGREEMENT_TOL,
};
pub use spherical::{detect_spherical, spherical_image, SphericalVerdict, IMAGE_SPEED_TOL};
