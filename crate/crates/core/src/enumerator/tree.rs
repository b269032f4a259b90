use std::fmt;

use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GluingRule {
    /// Binary merges joined by at least one edge.
    Edge,
    /// Every label induces a connected subgraph; children partition the
    /// parent label and there are at least two of them.
    Connected,
}

/// An assembly tree: a rooted tree whose nodes carry vertex subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssemblyTree {
    label: VertexSet,
    children: Vec<AssemblyTree>,
}

/// Order-independent serialisation of an [`AssemblyTree`].
///
/// A leaf is its vertex number; an internal node is `(` followed by its
/// children's codes separated by single spaces and `)`. Children are sorted
/// by (smallest vertex, label bitset, code), so two trees get the same code
/// exactly when they are equal up to reordering children.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub(crate) fn from_string(s: String) -> Self {
        CanonicalCode(s)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.0)
    }
}

impl AssemblyTree {
    pub fn leaf(v: usize) -> Self {
        AssemblyTree {
            label: VertexSet::singleton(v),
            children: Vec::new(),
        }
    }

    /// An internal node labelled with the union of its children's labels.
    pub fn node(children: Vec<AssemblyTree>) -> Self {
        let label = children
            .iter()
            .fold(VertexSet::EMPTY, |acc, c| acc.union(c.label));
        AssemblyTree { label, children }
    }

    pub fn label(&self) -> VertexSet {
        self.label
    }

    pub fn children(&self) -> &[AssemblyTree] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn internal_nodes(&self) -> usize {
        if self.is_leaf() {
            0
        } else {
            1 + self.children.iter().map(|c| c.internal_nodes()).sum::<usize>()
        }
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        CanonicalCode(self.code_string())
    }

    fn code_string(&self) -> String {
        if self.is_leaf() {
            return match self.label.min() {
                Some(v) if self.label.len() == 1 => v.to_string(),
                // Not a valid assembly tree leaf; keep the code injective anyway.
                _ => format!("{{{:x}}}", self.label.0),
            };
        }
        let mut keyed: Vec<(usize, u64, String)> = self
            .children
            .iter()
            .map(|c| (c.label.min().unwrap_or(usize::MAX), c.label.0, c.code_string()))
            .collect();
        keyed.sort();
        let inner: Vec<String> = keyed.into_iter().map(|(_, _, code)| code).collect();
        format!("({})", inner.join(" "))
    }

    /// Parses the text form produced by [`AssemblyTree::canonical_code`].
    /// Children need not be in canonical order.
    pub fn parse(code: &str) -> Result<Self> {
        let mut parser = CodeParser {
            bytes: code.as_bytes(),
            pos: 0,
        };
        let tree = parser.tree()?;
        if parser.pos != parser.bytes.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(tree)
    }

    /// Checks the tree against the definition for `g` under `rule`.
    /// Returns a description of the first violation found.
    pub fn check(&self, g: &Graph, rule: GluingRule) -> std::result::Result<(), String> {
        if self.label != g.vertices() {
            return Err(format!("root label {:?} is not the vertex set", self.label));
        }
        self.check_node(g, rule)
    }

    fn check_node(&self, g: &Graph, rule: GluingRule) -> std::result::Result<(), String> {
        if rule == GluingRule::Connected && !g.is_connected_subset(self.label) {
            return Err(format!("label {:?} does not induce a connected subgraph", self.label));
        }
        if self.is_leaf() {
            return if self.label.len() == 1 {
                Ok(())
            } else {
                Err(format!("leaf {:?} is not a single vertex", self.label))
            };
        }
        match rule {
            GluingRule::Edge if self.children.len() != 2 => {
                return Err(format!("node {:?} has {} children", self.label, self.children.len()))
            }
            GluingRule::Connected if self.children.len() < 2 => {
                return Err(format!("node {:?} has a single child", self.label))
            }
            _ => {}
        }
        let mut seen = VertexSet::EMPTY;
        for c in &self.children {
            if !seen.intersection(c.label).is_empty() {
                return Err(format!("children of {:?} overlap", self.label));
            }
            seen = seen.union(c.label);
        }
        if seen != self.label {
            return Err(format!("children of {:?} do not cover it", self.label));
        }
        if rule == GluingRule::Edge
            && !g.has_crossing_edge(self.children[0].label, self.children[1].label)
        {
            return Err(format!("no gluing edge at {:?}", self.label));
        }
        self.children.iter().try_for_each(|c| c.check_node(g, rule))
    }

    /// One gluing edge per internal node of an edge-rule tree, in preorder,
    /// or `None` if some node has no crossing edge.
    pub fn gluing_edges(&self, g: &Graph) -> Option<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        self.collect_gluing_edges(g, &mut out)?;
        Some(out)
    }

    fn collect_gluing_edges(&self, g: &Graph, out: &mut Vec<(usize, usize)>) -> Option<()> {
        if let [a, b] = self.children.as_slice() {
            let edge = a.label.iter().find_map(|u| {
                g.neighbors(u)
                    .intersection(b.label)
                    .min()
                    .map(|v| (u.min(v), u.max(v)))
            })?;
            out.push(edge);
        }
        for c in &self.children {
            c.collect_gluing_edges(g, out)?;
        }
        Some(())
    }
}

struct CodeParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl CodeParser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("tree code, byte {}: {what}", self.pos))
    }

    fn tree(&mut self) -> Result<AssemblyTree> {
        match self.bytes.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let mut children = vec![self.tree()?];
                loop {
                    match self.bytes.get(self.pos) {
                        Some(b' ') => {
                            self.pos += 1;
                            children.push(self.tree()?);
                        }
                        Some(b')') => {
                            self.pos += 1;
                            return Ok(AssemblyTree::node(children));
                        }
                        _ => return Err(self.error("expected ' ' or ')'")),
                    }
                }
            }
            Some(b) if b.is_ascii_digit() => {
                let start = self.pos;
                while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
                    self.pos += 1;
                }
                let v: usize = std::str::from_utf8(&self.bytes[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.error("bad vertex number"))?;
                if v >= crate::graph::MAX_VERTICES {
                    return Err(self.error("vertex number too large"));
                }
                Ok(AssemblyTree::leaf(v))
            }
            _ => Err(self.error("expected '(' or a vertex number")),
        }
    }
}
