use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use super::{check_countable, CanonicalCode, Limits};
use crate::graph::{Graph, VertexSet};
use crate::Result;

/// Every distinct edge-rule assembly tree of `g`, as canonical codes.
pub fn enumerate_edge_rule(g: &Graph) -> Result<BTreeSet<CanonicalCode>> {
    enumerate_edge_rule_with(g, &Limits::default())
}

/// Recursive composition: the trees on a connected `U` are all pairs of a
/// tree on `S` and a tree on `U \ S`, over splits where both sides are
/// connected and `S` holds the smallest vertex of `U`.
pub fn enumerate_edge_rule_with(g: &Graph, limits: &Limits) -> Result<BTreeSet<CanonicalCode>> {
    check_countable(g, limits.explicit)?;
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
    let mut out = Vec::new();
    if set.len() == 1 {
        out.push(set.min().unwrap().to_string());
    } else {
        let low = VertexSet::singleton(set.min().unwrap());
        let rest = set.difference(low);
        // Sub-masks of `rest`, each joined with the lowest vertex.
        let mut sub = rest.0;
        loop {
            let left = VertexSet(sub).union(low);
            let right = set.difference(left);
            if !right.is_empty() && g.is_connected_subset(left) && g.is_connected_subset(right) {
                let lt = trees_on(g, left, memo);
                let rt = trees_on(g, right, memo);
                for a in lt.iter() {
                    for b in rt.iter() {
                        out.push(format!("({a} {b})"));
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest.0;
        }
    }
    let out = Rc::new(out);
    memo.insert(set.0, Rc::clone(&out));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::{count_edge_rule, AssemblyTree, GluingRule};
    use crate::graph::{family, Family};
    use crate::Error;

    fn size(f: Family, p: &[usize]) -> usize {
        enumerate_edge_rule(&family(f, p).unwrap()).unwrap().len()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(size(Family::Path, &[3]), 2);
        assert_eq!(size(Family::Cycle, &[4]), 10);
        assert_eq!(size(Family::Star, &[3]), 6);
        assert_eq!(size(Family::Path, &[1]), 1);
    }

    #[test]
    fn p3_trees_are_the_two_binary_shapes() {
        let codes = enumerate_edge_rule(&family(Family::Path, &[3]).unwrap()).unwrap();
        let text: Vec<&str> = codes.iter().map(|c| c.as_str()).collect();
        assert_eq!(text, vec!["((0 1) 2)", "(0 (1 2))"]);
    }

    #[test]
    fn codes_are_canonical_and_valid() {
        let g = family(Family::CompleteMultipartite, &[2, 3]).unwrap();
        let codes = enumerate_edge_rule(&g).unwrap();
        assert_eq!(codes.len() as u64, u64::try_from(count_edge_rule(&g).unwrap()).unwrap());
        for code in &codes {
            let tree = AssemblyTree::parse(code.as_str()).unwrap();
            assert_eq!(&tree.canonical_code(), code);
            tree.check(&g, GluingRule::Edge).unwrap();
        }
    }

    #[test]
    fn cap_is_enforced() {
        let p10 = family(Family::Path, &[10]).unwrap();
        assert!(matches!(enumerate_edge_rule(&p10), Err(Error::OverCap { n: 10, cap: 9 })));
    }
}
