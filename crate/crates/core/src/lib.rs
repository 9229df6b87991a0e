//! Finite CAT(0) cube complexes in the edge-path metric.
//!
//! The crate covers the hyperplane combinatorics of a complex, the rank
//! stratification and the two-colouring with bounded monochromatic inward
//! geodesics, the contractive retraction of the cube `[0,1]^H` onto the
//! embedded complex, and the contraction pipeline that iterates
//! `phi = P ∘ psi` into quotient complexes of no larger dimension.

mod clique;

pub mod complex;
pub mod error;
pub mod generate;
pub mod rank;
pub mod audit;
pub mod colouring;
pub mod contraction;
pub mod geometry;
pub mod io;
pub mod rational;

pub use complex::{CubeComplex, HyperplaneId, Relation, Vertex};
pub use error::{Error, Result};
