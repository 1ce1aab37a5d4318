//! Curve specifications and their sampled realisations.

mod sampled;
mod spec;

pub use sampled::{
    realize_curve, reparametrize_by_arclength, Anchor, SampledCurve, MIN_SPEED, UNIT_SPEED_TOL,
};
pub use spec::{parse_domain, CurveSpec, DEFAULT_SAMPLES, MIN_SAMPLES};
