//! Numeric exterior calculus on coordinate charts: wedge products, exterior derivatives
//! (closed form or central differences), Reeb and Liouville solves, pullbacks, and check
//! suites sweeping the closed-form identities over seeded low-discrepancy samples.

mod algebra;
pub mod catalog;
mod field;
mod ops;
mod sampling;
mod suite;

pub use algebra::{det, subset_index, subsets, FormValue};
pub use field::{wrap_angle, Chart, ChartMap, Derivative, FormField, VectorField, DEFAULT_STEP};
pub use ops::{
    form_residual, geiges_values, solve_liouville, solve_reeb, symplectic_frame, volume_coefficient, FrameReport,
    GeigesValues,
};
pub use sampling::halton_points;
pub use suite::{
    check_geiges, check_nondegenerate, fd_convergence_ratio, pullback_check, run_suite, sample_chart, GeigesReport,
    SuiteConfig, SuiteReport, SUITES,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormsError {
    #[error("linear system is singular (smallest singular value {0:e})")]
    SingularSystem(f64),
    #[error("expected a {expected}-dimensional chart, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown suite `{0}` (expected one of torus-bundle, mcduff-fermi, mcduff-halfplane, covers)")]
    UnknownSuite(String),
    #[error("sample count must be positive")]
    NoSamples,
}
