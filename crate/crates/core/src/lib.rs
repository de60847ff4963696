//! Same-colour monochromatic path covers of 2-edge-coloured complete graphs.
//!
//! Every 2-edge-colouring of `K_n` can be covered by few monochromatic paths
//! that all share one colour. This crate builds such covers, checks them,
//! and computes the exact minimum for small `n`.
//!
//! - [`model`]: colourings, paths, covers and the cover validator.
//! - [`bipartite`]: one-colour bipartite views and the alternating path
//!   constructions used inside them.
//! - [`construct`]: the two-path cover, rotations, and the long-path
//!   structure search.
//! - [`solver`]: the cover pipelines and the [`solve`] entry point.
//! - [`oracle`]: exact subset dynamic programming for small `n`.
//! - [`gen`]: extremal, random and adversarial instances.
//! - [`format`], [`sweep`]: text formats and CSV experiment sweeps.

pub mod bipartite;
pub mod construct;
pub mod format;
pub mod gen;
pub mod model;
pub mod oracle;
mod rotation;
pub mod solver;
pub mod sweep;

pub use model::{validate_cover, Colour, Colouring, CoverReport, Detail, FailureKind, Path, PathCover, Vertex};
pub use oracle::{exact_f, Oracle, OracleResult};
pub use solver::{solve, Guarantee, SolveResult, SolverConfig};
