//! Gallai-Edmonds compression tools for multicoloured graphs, with exact and
//! sampled checks of monochromatic matching arrows in s-connectors.
//!
//! Vertices are `0..n`. Colours are `1..=q`; layer `0` of a
//! [`ColouredGraph`] holds uncoloured edges.

pub mod coloured;
pub mod compression;
pub mod connector;
pub mod error;
pub mod graph;
pub mod ramsey;
pub mod suite;

pub use coloured::ColouredGraph;
pub use connector::TVector;
pub use error::{Error, Result};
pub use graph::{ge_decompose, max_matching, nu, GeDecomposition, Graph, Matching};
pub use ramsey::{arrows, rho};
