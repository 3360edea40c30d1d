//! Closed surface groups: Dehn's algorithm, conjugacy class keys, the regular-polygon
//! Fuchsian representation and generator counts for chord complexes between closed
//! geodesics.

mod fuchsian;
mod geometry;
mod words;

pub use fuchsian::FuchsianRep;
pub use geometry::*;
pub use words::{cyclic_reduce, free_reduce, Letter, SurfacePresentation, Word};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SurfaceError {
    #[error("genus {0} is outside the supported range 2..=16")]
    GenusOutOfRange(u32),
    #[error("cannot parse word {0:?}")]
    Parse(String),
    #[error("generator index {index} exceeds genus {genus}")]
    GeneratorOutOfRange { index: u32, genus: u32 },
    #[error("element with |trace| = {0} is not hyperbolic")]
    NotHyperbolicElement(f64),
    #[error("the class is trivial")]
    TrivialClass,
    #[error("fiber power must be nonzero")]
    ZeroFiberPower,
    #[error("search radius {0:.2} exceeds the supported window")]
    WindowTooLarge(f64),
}
