//! The connected gluing rule: every node's label induces a connected
//! subgraph, internal nodes may have more than two children, and the
//! children of a node partition its label.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{check_countable, CanonicalCode, Limits};
use crate::graph::{Graph, VertexSet};
use crate::Result;

pub fn count_connected_rule(g: &Graph) -> Result<BigUint> {
    count_connected_rule_with(g, &Limits::default())
}

/// Counts connected-rule trees by a subset recursion.
///
/// With `c(U)` the tree count on a connected `U` and `p(W)` the weighted
/// number of partitions of `W` into connected blocks (`p(∅) = 1`):
///
/// ```text
/// p(W) = Σ_{B ∋ min W, B ⊆ W, G[B] connected} c(B) p(W \ B)
/// c(U) = p(U) - c(U)        (drop the one-block partition {U})
/// ```
pub fn count_connected_rule_with(g: &Graph, limits: &Limits) -> Result<BigUint> {
    check_countable(g, limits.explicit)?;
    let size = 1usize << g.n();
    let mut trees = vec![BigUint::zero(); size];
    let mut partitions = vec![BigUint::zero(); size];
    partitions[0] = BigUint::one();
    for mask in 1..size {
        let set = VertexSet(mask as u64);
        let low = set.0 & set.0.wrapping_neg();
        let rest = set.0 ^ low;
        // Blocks B = {min} ∪ sub with sub ⊊ rest, i.e. B ≠ U.
        let mut proper = BigUint::zero();
        let mut sub = rest;
        loop {
            if sub != rest {
                let block = sub | low;
                let c = &trees[block as usize];
                if !c.is_zero() {
                    proper += c * &partitions[(set.0 ^ block) as usize];
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        if set.len() == 1 {
            trees[mask] = BigUint::one();
        } else if g.is_connected_subset(set) {
            trees[mask] = proper.clone();
        }
        partitions[mask] = proper + &trees[mask];
    }
    Ok(std::mem::take(&mut trees[size - 1]))
}

/// Every distinct connected-rule tree of `g`, as canonical codes.
pub fn enumerate_connected_rule(g: &Graph) -> Result<BTreeSet<CanonicalCode>> {
    check_countable(g, Limits::default().explicit)?;
    let mut memo = HashMap::new();
    let codes = trees_on(g, g.vertices(), &mut memo);
    Ok(codes
        .iter()
        .cloned()
        .map(CanonicalCode::from_string)
        .collect())
}

fn trees_on(g: &Graph, set: VertexSet, memo: &mut HashMap<u64, Rc<Vec<String>>>) -> Rc<Vec<String>> {
    if let Some(hit) = memo.get(&set.0) {
        return Rc::clone(hit);
    }
    let out = if set.len() == 1 {
        vec![set.min().unwrap().to_string()]
    } else {
        let mut partitions = Vec::new();
        connected_partitions(g, set, set, &mut Vec::new(), &mut partitions);
        let mut out = Vec::new();
        for blocks in partitions {
            let child_codes: Vec<Rc<Vec<String>>> =
                blocks.iter().map(|&b| trees_on(g, b, memo)).collect();
            // Blocks are in increasing order of their smallest vertex, which
            // is the canonical child order.
            let mut prefix = vec![String::new()];
            for codes in &child_codes {
                prefix = prefix
                    .iter()
                    .flat_map(|p| {
                        codes.iter().map(move |c| {
                            if p.is_empty() {
                                c.clone()
                            } else {
                                format!("{p} {c}")
                            }
                        })
                    })
                    .collect();
            }
            out.extend(prefix.into_iter().map(|body| format!("({body})")));
        }
        out
    };
    let out = Rc::new(out);
    memo.insert(set.0, Rc::clone(&out));
    out
}

/// Partitions of `rest` into connected blocks, excluding the single block
/// equal to `whole`.
fn connected_partitions(
    g: &Graph,
    whole: VertexSet,
    rest: VertexSet,
    blocks: &mut Vec<VertexSet>,
    out: &mut Vec<Vec<VertexSet>>,
) {
    let Some(min) = rest.min() else {
        out.push(blocks.clone());
        return;
    };
    let low = VertexSet::singleton(min);
    let others = rest.difference(low);
    let mut sub = others.0;
    loop {
        let block = VertexSet(sub).union(low);
        if block != whole && g.is_connected_subset(block) {
            blocks.push(block);
            connected_partitions(g, whole, rest.difference(block), blocks, out);
            blocks.pop();
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & others.0;
    }
}
