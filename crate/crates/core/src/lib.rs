//! Exact enumeration of *assembly trees* of graphs.
//!
//! An assembly tree records one way a connected graph can be put together
//! from its vertices: leaves are single vertices, the root is the whole
//! vertex set and every internal node merges the subsets of its children.
//! Under the edge gluing rule every merge joins exactly two connected pieces
//! that share at least one edge.
//!
//! The crate is organised around the computations needed to count these
//! trees and to study the resulting sequences:
//!
//! - [`graph`]: simple graphs on bitsets, named families and (H, φ)-graphs.
//! - [`enumerator`]: subset dynamic programming, explicit enumeration,
//!   gluing-sequence enumeration, the connected gluing rule and closed forms.
//! - [`series`]: exact truncated multivariate power series, the exponential
//!   generating functions of (H, φ)-graphs and their diagonals.
//! - [`recurrence`]: P-recurrences (evaluate, verify, guess).
//! - [`asymptotics`]: growth-rate extraction from recurrences.
//! - [`table`]: the complete bipartite count table with a cross-check report.
//!
//! ```
//! use asmtree::{enumerator, graph::{family, Family}};
//!
//! let p4 = family(Family::Path, &[4]).unwrap();
//! assert_eq!(enumerator::count_edge_rule(&p4).unwrap(), 5u32.into());
//! ```

pub mod asymptotics;
pub mod enumerator;
mod error;
pub mod graph;
pub mod rational;
pub mod recurrence;
pub mod series;
pub mod table;

pub use error::{Error, Result};
pub use rational::Rational;
