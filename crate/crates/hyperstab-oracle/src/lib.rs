//! Floating-point, derivation-free verification of the exact stability
//! engine. All numerics live here: spectral differentiation on periodic
//! grids, the discretized circle inside the 2-sphere, the
//! latitude-longitude grid on the 2-sphere inside the 3-sphere, and the
//! adjudication of the contested symbolic coefficients.

pub mod adjudicate;
pub mod circle;
pub mod error;
pub mod fourier;
pub mod report;
pub mod sphere;

pub use adjudicate::{
    adjudicate_m1, adjudicated_report, build_default_circle, AdjudicationOutcome, OracleConfig,
    LINEAR_TOL, SECOND_DIFF_TOL,
};
pub use circle::{build_circle, BundleNormValues, CircleImmersion, SecondVariation, Vec3};
pub use error::{Error, Result};
pub use fourier::{trapezoid_periodic, DiffMode, Differentiator};
pub use report::{relative_error, OracleResult, OracleRow, RefComparison};
pub use sphere::{CurvatureTermIntegrals, SphereGrid, SphereMode};
