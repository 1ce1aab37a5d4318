//! Frames, harmonic curvatures and inclined-curve detection for parametric
//! curves in E3 and E4.

pub mod catalog;
pub mod curve;
pub mod error;
pub mod export;
pub mod expr;
pub mod frames;
pub mod helix;
pub mod numerics;
pub mod vector;

pub use error::{Error, Result};
pub use vector::EuclideanVector;
