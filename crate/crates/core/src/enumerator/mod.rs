//! Counting and enumerating assembly trees.
//!
//! Two independent routes count edge-rule trees: the subset recursion in
//! [`count_edge_rule`] and explicit enumeration ([`enumerate_edge_rule`],
//! [`trees_from_gluing_sequences`]). Both are exact. The connected gluing
//! rule has its own counter and enumerator, and [`closed_form`] evaluates
//! the known formulas for paths, cycles, stars and complete graphs.

mod closed_form;
mod connected;
mod count;
mod explicit;
mod gluing;
mod tree;

pub use closed_form::closed_form;
pub use connected::{count_connected_rule, count_connected_rule_with, enumerate_connected_rule};
pub use count::{count_edge_rule, count_edge_rule_with, edge_rule_table};
pub use explicit::{enumerate_edge_rule, enumerate_edge_rule_with};
pub use gluing::{spanning_trees, trees_from_gluing_sequences, GluingEnumeration};
pub use tree::{AssemblyTree, CanonicalCode, GluingRule};

use crate::graph::Graph;
use crate::{Error, Result};

/// Environment variable overriding [`Limits::subset_bits`].
pub const SUBSET_BITS_ENV: &str = "ASMTREE_MAX_SUBSET_BITS";

/// Size caps for the exponential-time routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest graph accepted by the subset recursion (memory is 2^n counts).
    pub subset_bits: usize,
    /// Largest graph accepted by explicit tree enumeration.
    pub explicit: usize,
    /// Upper bound on spanning trees × orderings walked by the gluing route.
    pub gluing_sequences: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            subset_bits: 24,
            explicit: 9,
            gluing_sequences: 100_000_000,
        }
    }
}

impl Limits {
    /// Defaults, with `subset_bits` taken from `ASMTREE_MAX_SUBSET_BITS`
    /// when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(SUBSET_BITS_ENV) {
            let bits: usize = raw
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{SUBSET_BITS_ENV}={raw} is not an integer")))?;
            if bits > 32 {
                return Err(Error::Parse(format!("{SUBSET_BITS_ENV}={bits} exceeds 32")));
            }
            limits.subset_bits = bits;
        }
        Ok(limits)
    }
}

/// Rejects empty, oversized and disconnected graphs.
fn check_countable(g: &Graph, cap: usize) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.n() > cap {
        return Err(Error::OverCap { n: g.n(), cap });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}
