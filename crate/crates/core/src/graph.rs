//! Simple undirected graphs stored as per-vertex neighbour bitsets, the named
//! families used throughout the crate, and (H, φ)-graphs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest vertex count a [`Graph`] can hold (one machine word per bitset).
pub const MAX_VERTICES: usize = 64;

/// A set of vertices of a graph with at most [`MAX_VERTICES`] vertices.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph {
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse to one.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| {
                self.adj[u]
                    .iter()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Whether at least one edge runs between `a` and `b`.
    pub fn has_crossing_edge(&self, a: VertexSet, b: VertexSet) -> bool {
        a.iter().any(|v| !self.adj[v].intersection(b).is_empty())
    }

    /// True iff the subgraph induced on `subset` is connected. The empty set
    /// is not connected; a singleton is.
    pub fn is_connected_subset(&self, subset: VertexSet) -> bool {
        let Some(start) = subset.min() else {
            return false;
        };
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while let Some(v) = frontier.min() {
            frontier.0 &= frontier.0 - 1;
            let fresh = self.adj[v].intersection(subset).difference(seen);
            seen = seen.union(fresh);
            frontier = frontier.union(fresh);
        }
        seen == subset
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_subset(self.vertices())
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length");
        let mut adj = vec![VertexSet::EMPTY; self.n()];
        for (u, v) in self.edges() {
            adj[perm[u]].insert(perm[v]);
            adj[perm[v]].insert(perm[u]);
        }
        Graph { adj }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges())
            .finish()
    }
}

/// The template of an (H, φ)-graph: a base graph H on N vertices, a 0/1
/// label per vertex (1 = clique, 0 = independent set) and a multiplicity
/// per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSpec {
    pub base: Graph,
    pub phi: Vec<bool>,
    pub mult: Vec<usize>,
}

impl HSpec {
    pub fn new(base: Graph, phi: Vec<bool>, mult: Vec<usize>) -> Result<Self> {
        let spec = HSpec { base, phi, mult };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.base.n();
        if n == 0 {
            return Err(Error::InvalidHSpec("H has no vertices".into()));
        }
        if self.phi.len() != n || self.mult.len() != n {
            return Err(Error::InvalidHSpec(format!(
                "H has {n} vertices but phi has {} entries and mult has {}",
                self.phi.len(),
                self.mult.len()
            )));
        }
        Ok(())
    }

    /// N, the number of vertices of H.
    pub fn template_size(&self) -> usize {
        self.base.n()
    }

    /// M, the number of edges of H.
    pub fn template_edges(&self) -> usize {
        self.base.edge_count()
    }

    /// J, the number of independent-set blocks.
    pub fn independent_blocks(&self) -> usize {
        self.phi.iter().filter(|&&p| !p).count()
    }

    /// Linear index of vertex `(block, offset)` of the blown-up graph:
    /// blocks are laid out contiguously in order.
    pub fn vertex_index(&self, block: usize, offset: usize) -> usize {
        debug_assert!(offset < self.mult[block]);
        self.mult[..block].iter().sum::<usize>() + offset
    }
}

/// Blows H up into G_(H,φ)(n): vertex `(i, j)` gets index
/// [`HSpec::vertex_index`]`(i, j)`. Two vertices in the same block are
/// adjacent iff the block is a clique; vertices in different blocks are
/// adjacent iff the blocks are adjacent in H.
pub fn build_h_graph(spec: &HSpec) -> Result<Graph> {
    spec.validate()?;
    let total: usize = spec.mult.iter().sum();
    let mut g = Graph::empty(total)?;
    let block_of: Vec<usize> = spec
        .mult
        .iter()
        .enumerate()
        .flat_map(|(i, &m)| std::iter::repeat_n(i, m))
        .collect();
    for u in 0..total {
        for v in u + 1..total {
            let (bu, bv) = (block_of[u], block_of[v]);
            let adjacent = if bu == bv {
                spec.phi[bu]
            } else {
                spec.base.has_edge(bu, bv)
            };
            if adjacent {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Named graph families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// P_n: `n` vertices in a line.
    Path,
    /// C_n, `n >= 3`.
    Cycle,
    /// S_n = K_{1,n}: centre 0, leaves `1..=n`.
    Star,
    /// S²_n: centre 0, middle vertices `1..=n` and tips `n+1..=2n`, with
    /// edges `0 - i` and `i - (n + i)`.
    Star2,
    /// K_n.
    Complete,
    /// K_{n_1, ..., n_N}, parts laid out contiguously.
    CompleteMultipartite,
    /// D_n: spine `0..n` with a pendant leaf `n + i` on each spine vertex.
    Caterpillar,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Path,
        Family::Cycle,
        Family::Star,
        Family::Star2,
        Family::Complete,
        Family::CompleteMultipartite,
        Family::Caterpillar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Star => "star",
            Family::Star2 => "star2",
            Family::Complete => "complete",
            Family::CompleteMultipartite => "complete_multipartite",
            Family::Caterpillar => "caterpillar",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn family(name: Family, params: &[usize]) -> Result<Graph> {
    let invalid = |reason: &str| Error::InvalidParams {
        family: name.to_string(),
        reason: reason.to_string(),
    };
    let single = || match params {
        [n] => Ok(*n),
        _ => Err(invalid("expected exactly one parameter")),
    };
    match name {
        Family::Path => {
            let n = single()?;
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Graph::from_edge_list(n, &edges)
        }
        Family::Cycle => {
            let n = single()?;
            if n < 3 {
                return Err(invalid("a simple cycle needs at least 3 vertices"));
            }
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::from_edge_list(n, &edges)
        }
        Family::Star => {
            let n = single()?;
            let edges: Vec<_> = (1..=n).map(|i| (0, i)).collect();
            Graph::from_edge_list(n + 1, &edges)
        }
        Family::Star2 => {
            let n = single()?;
            let edges: Vec<_> = (1..=n).flat_map(|i| [(0, i), (i, n + i)]).collect();
            Graph::from_edge_list(2 * n + 1, &edges)
        }
        Family::Complete => {
            let n = single()?;
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            Graph::from_edge_list(n, &edges)
        }
        Family::CompleteMultipartite => {
            if params.is_empty() {
                return Err(invalid("expected at least one part size"));
            }
            let parts = params.len();
            let base_edges: Vec<_> = (0..parts)
                .flat_map(|u| (u + 1..parts).map(move |v| (u, v)))
                .collect();
            let spec = HSpec::new(
                Graph::from_edge_list(parts, &base_edges)?,
                vec![false; parts],
                params.to_vec(),
            )?;
            build_h_graph(&spec)
        }
        Family::Caterpillar => {
            let n = single()?;
            let spine = (1..n).map(|i| (i - 1, i));
            let legs = (0..n).map(|i| (i, n + i));
            let edges: Vec<_> = spine.chain(legs).collect();
            Graph::from_edge_list(2 * n, &edges)
        }
    }
}

/// JSON description of a graph. Exactly one of three shapes:
///
/// - `{"n": 4, "edges": [[0, 1], [1, 2]]}`
/// - `{"family": "cycle", "params": [5]}`
/// - `{"hgraph": {"H_edges": [[0, 1]], "phi": [0, 1], "mult": [2, 3]}}`
///
/// Unknown keys are rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphSpec {
    Explicit(ExplicitSpec),
    Family(FamilySpec),
    HGraph(HGraphWrapper),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitSpec {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub family: Family,
    pub params: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HGraphWrapper {
    pub hgraph: HGraphJson,
}

/// The H-graph object. `mult` may be omitted where only the template is
/// needed (generating functions, diagonals).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HGraphJson {
    #[serde(rename = "H_edges")]
    pub h_edges: Vec<[usize; 2]>,
    pub phi: Vec<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<Vec<usize>>,
}

impl HGraphJson {
    /// Parses either a bare H-graph object or one wrapped as `{"hgraph": ...}`.
    pub fn parse(text: &str) -> Result<Self> {
        if let Ok(w) = serde_json::from_str::<HGraphWrapper>(text) {
            return Ok(w.hgraph);
        }
        Ok(serde_json::from_str(text)?)
    }

    /// The template with the given multiplicities (or `mult`, or all ones).
    pub fn to_spec(&self, mult: Option<Vec<usize>>) -> Result<HSpec> {
        let n = self.phi.len();
        let phi = self
            .phi
            .iter()
            .map(|&p| match p {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::InvalidHSpec(format!("phi entry {other} is not 0 or 1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let edges: Vec<_> = self.h_edges.iter().map(|&[u, v]| (u, v)).collect();
        let base = Graph::from_edge_list(n, &edges)?;
        let mult = mult.or_else(|| self.mult.clone()).unwrap_or(vec![1; n]);
        HSpec::new(base, phi, mult)
    }
}

impl GraphSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!(
                "graph JSON must be {{\"n\", \"edges\"}}, {{\"family\", \"params\"}} or {{\"hgraph\": ...}}: {e}"
            ))
        })
    }

    pub fn build(&self) -> Result<Graph> {
        match self {
            GraphSpec::Explicit(e) => {
                let edges: Vec<_> = e.edges.iter().map(|&[u, v]| (u, v)).collect();
                Graph::from_edge_list(e.n, &edges)
            }
            GraphSpec::Family(f) => family(f.family, &f.params),
            GraphSpec::HGraph(h) => {
                if h.hgraph.mult.is_none() {
                    return Err(Error::InvalidHSpec("`mult` is required to build a graph".into()));
                }
                build_h_graph(&h.hgraph.to_spec(None)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> Graph {
        Graph::from_edge_list(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn edge_list_construction() {
        let k3 = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(k3, family(Family::Complete, &[3]).unwrap());

        let single = Graph::from_edge_list(1, &[]).unwrap();
        assert_eq!((single.n(), single.edge_count()), (1, 0));

        let c4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4, family(Family::Cycle, &[4]).unwrap());
        assert_eq!(c4.degree_sequence(), vec![2; 4]);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(matches!(
            Graph::from_edge_list(3, &[(1, 1)]),
            Err(Error::LoopEdge(1))
        ));
        assert!(matches!(Graph::empty(65), Err(Error::TooManyVertices(65))));
    }

    #[test]
    fn h_graphs() {
        let single = Graph::empty(1).unwrap();
        let k4 = build_h_graph(&HSpec::new(single, vec![true], vec![4]).unwrap()).unwrap();
        assert_eq!(k4, family(Family::Complete, &[4]).unwrap());

        let k23 = build_h_graph(&HSpec::new(k2(), vec![false, false], vec![2, 3]).unwrap()).unwrap();
        assert_eq!(k23.edge_count(), 6);
        assert_eq!(k23, family(Family::CompleteMultipartite, &[2, 3]).unwrap());

        let spec = HSpec::new(k2(), vec![false, true], vec![2, 2]).unwrap();
        let g = build_h_graph(&spec).unwrap();
        assert_eq!((g.n(), g.edge_count()), (4, 5));
        // Block 0 (independent) is vertices 0 and 1, block 1 (clique) is 2 and 3.
        assert_eq!(spec.vertex_index(1, 0), 2);
        assert!(!g.has_edge(0, 1));
        assert!(g.has_edge(2, 3));
        assert!(g.has_edge(0, 3));
    }

    #[test]
    fn h_spec_validation() {
        assert!(HSpec::new(k2(), vec![true], vec![1, 1]).is_err());
        assert!(HSpec::new(Graph::empty(0).unwrap(), vec![], vec![]).is_err());
    }

    #[test]
    fn families() {
        let s = family(Family::Star2, &[8]).unwrap();
        assert_eq!((s.n(), s.edge_count()), (17, 16));
        let p1 = family(Family::Path, &[1]).unwrap();
        assert_eq!((p1.n(), p1.edge_count()), (1, 0));
        let d7 = family(Family::Caterpillar, &[7]).unwrap();
        assert_eq!((d7.n(), d7.edge_count()), (14, 13));
        assert!(d7.is_connected());
        let s3 = family(Family::Star, &[3]).unwrap();
        assert_eq!(s3.degree_sequence(), vec![1, 1, 1, 3]);
        assert!(matches!(
            family(Family::Cycle, &[2]),
            Err(Error::InvalidParams { .. })
        ));
        assert!(family(Family::Path, &[1, 2]).is_err());
        assert!(family(Family::CompleteMultipartite, &[]).is_err());
    }

    #[test]
    fn star2_of_one_is_p3() {
        let s = family(Family::Star2, &[1]).unwrap();
        let p3 = family(Family::Path, &[3]).unwrap();
        // Edges 0-1 (spoke) and 1-2 (arm): already the path 0 - 1 - 2.
        assert_eq!(s, p3);
        assert_eq!(s.relabel(&[2, 1, 0]), p3);
    }

    #[test]
    fn connected_subsets() {
        let p4 = family(Family::Path, &[4]).unwrap();
        assert!(p4.is_connected_subset(VertexSet(0b0011)));
        assert!(!p4.is_connected_subset(VertexSet(0b0101)));
        assert!(!p4.is_connected_subset(VertexSet::EMPTY));
        assert!(p4.is_connected_subset(VertexSet::singleton(2)));
        let c4 = family(Family::Cycle, &[4]).unwrap();
        assert!(c4.is_connected_subset(VertexSet(0b1111)));
        assert!(c4.is_connected_subset(VertexSet(0b1001)));
    }

    #[test]
    fn graph_json_shapes() {
        let g = GraphSpec::parse(r#"{"n": 3, "edges": [[0,1],[1,2]]}"#).unwrap().build().unwrap();
        assert_eq!(g, family(Family::Path, &[3]).unwrap());
        let g = GraphSpec::parse(r#"{"family": "cycle", "params": [5]}"#).unwrap().build().unwrap();
        assert_eq!(g, family(Family::Cycle, &[5]).unwrap());
        let g = GraphSpec::parse(r#"{"hgraph": {"H_edges": [[0,1]], "phi": [0,0], "mult": [2,2]}}"#)
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(g, family(Family::CompleteMultipartite, &[2, 2]).unwrap());
    }

    #[test]
    fn graph_json_rejects_unknown_keys() {
        assert!(GraphSpec::parse(r#"{"n": 3, "edges": [], "weights": []}"#).is_err());
        assert!(GraphSpec::parse(r#"{"family": "path", "params": [3], "x": 1}"#).is_err());
        assert!(GraphSpec::parse(r#"{"hgraph": {"H_edges": [], "phi": [1], "colour": 2}}"#).is_err());
        assert!(GraphSpec::parse(r#"{"family": "petersen", "params": []}"#).is_err());
    }
}
