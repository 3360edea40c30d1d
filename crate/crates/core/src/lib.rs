//! Exact and numerical tools for hyperbolic toral automorphisms, chord lattices,
//! contact and Liouville forms, hyperbolic surface geometry and rank tables of
//! Floer-type invariants.

pub mod exact;
pub mod toral;
pub mod chords;
pub mod homology;
pub mod forms;
pub mod hyperbolic;
pub mod report;
pub mod surface;
pub mod lagrangian;
pub mod oracle;
pub mod acceptance;
