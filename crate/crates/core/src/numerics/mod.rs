//! Numerical kernels shared by the curve, frame and helix modules.

mod eigen;
mod fd;
mod grid;
pub mod interp;
mod jet;
mod lsq;
mod ode;
mod quadrature;
mod stats;
mod tolerance;

pub use eigen::{smallest_eigenvector_symmetric, symmetric_eigen, SymmetricEigen};
pub use fd::{finite_difference, finite_difference_vectors};
pub use grid::{SampleGrid, BOUNDARY_NODES, MIN_GRID_LEN};
pub use jet::{Jet, JET_ORDER};
pub use lsq::{least_squares_min_norm, linear_least_squares, LeastSquaresFit};
pub use ode::{integrate_linear_ode, integrate_linear_ode_projected};
pub use quadrature::{adaptive_simpson, cumulative_antiderivative, gauss_legendre};
pub use stats::{constancy_score, mean, median, rms, std_dev};
pub use tolerance::ToleranceConfig;
