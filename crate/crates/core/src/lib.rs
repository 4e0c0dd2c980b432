//! Minimum vertex sets whose removal leaves a graph without a K4 minor.
//!
//! The crate bundles a simple-graph type with stable vertex ids, the three
//! degree-at-most-2 reductions, exact and greedy transversal solvers,
//! degree potentials, structural predicates, a Max-2-CSP solver that
//! branches on a transversal of the constraint graph, and verification
//! campaigns over generated graph families.

pub mod csp;
mod dense;
pub mod error;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod potential;
pub mod reduction;
pub mod structure;

pub type Rational = num_rational::Ratio<i64>;

pub use error::{Error, Result};
pub use graph::{Graph, Separation, VertexId, VertexSet};
