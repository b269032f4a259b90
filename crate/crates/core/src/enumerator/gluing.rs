use std::collections::BTreeSet;

use super::{check_countable, CanonicalCode, Limits};
use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

/// Result of walking every gluing sequence of a graph.
#[derive(Clone, Debug)]
pub struct GluingEnumeration {
    /// Distinct assembly trees produced.
    pub trees: BTreeSet<CanonicalCode>,
    pub spanning_trees: usize,
    /// Gluing sequences walked (spanning trees × orderings).
    pub sequences: u64,
}

/// All spanning trees of `g`, each as its edge list in increasing order.
pub fn spanning_trees(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let edges = g.edges();
    let mut out = Vec::new();
    if g.n() == 0 {
        return out;
    }
    let mut chosen = Vec::with_capacity(g.n().saturating_sub(1));
    let parent: Vec<usize> = (0..g.n()).collect();
    grow(&edges, 0, g.n() - 1, parent, &mut chosen, &mut out);
    out
}

fn find(parent: &[usize], mut v: usize) -> usize {
    while parent[v] != v {
        v = parent[v];
    }
    v
}

fn grow(
    edges: &[(usize, usize)],
    next: usize,
    needed: usize,
    parent: Vec<usize>,
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if chosen.len() == needed {
        out.push(chosen.clone());
        return;
    }
    if edges.len() - next < needed - chosen.len() {
        return;
    }
    let (u, v) = edges[next];
    let (ru, rv) = (find(&parent, u), find(&parent, v));
    if ru != rv {
        let mut joined = parent.clone();
        joined[ru] = rv;
        chosen.push((u, v));
        grow(edges, next + 1, needed, joined, chosen, out);
        chosen.pop();
    }
    grow(edges, next + 1, needed, parent, chosen, out);
}

/// Builds the assembly tree of every ordering of every spanning tree and
/// returns the distinct results.
///
/// Each ordering is replayed bottom-up: gluing along edge `{u, v}` creates
/// a node whose two children are the current pieces containing `u` and `v`.
/// Shares no code with the subset recursion or [`super::enumerate_edge_rule`].
pub fn trees_from_gluing_sequences(g: &Graph) -> Result<GluingEnumeration> {
    let limits = Limits::default();
    check_countable(g, limits.explicit)?;
    let orderings: u64 = (1..g.n() as u64).product();
    let estimate = kirchhoff_estimate(g) * orderings as f64;
    if estimate > limits.gluing_sequences as f64 {
        return Err(Error::WorkLimit(format!(
            "about {estimate:.3e} gluing sequences exceed the limit of {}",
            limits.gluing_sequences
        )));
    }
    let trees = spanning_trees(g);
    let sequences = trees.len() as u64 * orderings;
    let mut found = BTreeSet::new();
    let pieces: Vec<Piece> = (0..g.n())
        .map(|v| Piece {
            members: VertexSet::singleton(v),
            code: v.to_string(),
        })
        .collect();
    for tree in &trees {
        replay_orderings(tree, 0, &pieces, &mut found);
    }
    Ok(GluingEnumeration {
        trees: found.into_iter().map(CanonicalCode::from_string).collect(),
        spanning_trees: trees.len(),
        sequences,
    })
}

/// Spanning-tree count from the matrix-tree theorem, in floating point.
fn kirchhoff_estimate(g: &Graph) -> f64 {
    let m = g.n() - 1;
    let mut lap: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| match (i == j, g.has_edge(i, j)) {
                    (true, _) => g.degree(i) as f64,
                    (false, true) => -1.0,
                    (false, false) => 0.0,
                })
                .collect()
        })
        .collect();
    let mut det = 1.0;
    for c in 0..m {
        let Some(p) = (c..m).max_by(|&a, &b| lap[a][c].abs().total_cmp(&lap[b][c].abs())) else {
            break;
        };
        if lap[p][c].abs() < 1e-12 {
            return 0.0;
        }
        lap.swap(c, p);
        if p != c {
            det = -det;
        }
        det *= lap[c][c];
        for r in c + 1..m {
            let f = lap[r][c] / lap[c][c];
            for k in c..m {
                lap[r][k] -= f * lap[c][k];
            }
        }
    }
    det.abs()
}

#[derive(Clone)]
struct Piece {
    members: VertexSet,
    code: String,
}

/// Depth-first over all orderings of the edges not yet in `used`.
fn replay_orderings(edges: &[(usize, usize)], used: u32, pieces: &[Piece], found: &mut BTreeSet<String>) {
    if pieces.len() == 1 {
        found.insert(pieces[0].code.clone());
        return;
    }
    for (i, &(u, v)) in edges.iter().enumerate() {
        if used >> i & 1 == 1 {
            continue;
        }
        let pu = pieces.iter().position(|p| p.members.contains(u)).unwrap();
        let pv = pieces.iter().position(|p| p.members.contains(v)).unwrap();
        let (first, second) = if pieces[pu].members.min() < pieces[pv].members.min() {
            (pu, pv)
        } else {
            (pv, pu)
        };
        let merged = Piece {
            members: pieces[pu].members.union(pieces[pv].members),
            code: format!("({} {})", pieces[first].code, pieces[second].code),
        };
        let next: Vec<Piece> = pieces
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != pu && j != pv)
            .map(|(_, p)| p.clone())
            .chain(std::iter::once(merged))
            .collect();
        replay_orderings(edges, used | 1 << i, &next, found);
    }
}
