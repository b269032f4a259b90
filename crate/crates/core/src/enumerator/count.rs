use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{check_countable, Limits};
use crate::graph::{Graph, VertexSet};
use crate::Result;

/// Number of edge-rule assembly trees of `g`, with the default [`Limits`].
pub fn count_edge_rule(g: &Graph) -> Result<BigUint> {
    count_edge_rule_with(g, &Limits::default())
}

pub fn count_edge_rule_with(g: &Graph, limits: &Limits) -> Result<BigUint> {
    check_countable(g, limits.subset_bits)?;
    let mut table = edge_rule_table(g);
    Ok(std::mem::take(&mut table[(1usize << g.n()) - 1]))
}

/// `a(U)` for every vertex subset `U` of `g`, indexed by bitmask.
///
/// `a(U) = 1` for singletons, `0` when `G[U]` is disconnected, and otherwise
/// half the sum over ordered splits `U = S ⊔ T` of `a(S) a(T)`. A split with
/// both halves connected inside a connected `G[U]` always has a crossing
/// edge, so no edge test is needed.
///
/// Subsets are processed one popcount level at a time; a level only reads
/// lower levels, so its entries are computed in parallel and written back
/// afterwards.
pub fn edge_rule_table(g: &Graph) -> Vec<BigUint> {
    let n = g.n();
    assert!(n <= 32, "subset table needs n <= 32");
    let mut table = vec![BigUint::zero(); 1usize << n];
    for v in 0..n {
        table[1 << v] = BigUint::one();
    }
    for k in 2..=n {
        let level: Vec<(usize, BigUint)> = masks_of_popcount(n, k)
            .into_par_iter()
            .filter(|&m| g.is_connected_subset(VertexSet(m as u64)))
            .map(|m| (m, split_sum(&table, m)))
            .collect();
        for (m, value) in level {
            table[m] = value;
        }
    }
    table
}

fn split_sum(table: &[BigUint], mask: usize) -> BigUint {
    let mut total = BigUint::zero();
    let mut s = (mask - 1) & mask;
    while s != 0 {
        let (left, right) = (&table[s], &table[mask ^ s]);
        if !left.is_zero() && !right.is_zero() {
            total += left * right;
        }
        s = (s - 1) & mask;
    }
    // Ordered splits come in swapped pairs.
    assert!(total.is_even(), "odd ordered-split sum for subset {mask:#b}");
    total >> 1
}

/// All `n`-bit masks with exactly `k` bits set, increasing.
fn masks_of_popcount(n: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let limit = 1usize << n;
    let mut m = (1usize << k) - 1;
    while m < limit {
        out.push(m);
        // Gosper's hack: next larger integer with the same popcount.
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{family, Family};
    use crate::Error;

    fn count(f: Family, p: &[usize]) -> u64 {
        let n = count_edge_rule(&family(f, p).unwrap()).unwrap();
        n.try_into().unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(Family::Path, &[4]), 5);
        assert_eq!(count(Family::Complete, &[2]), 1);
        assert_eq!(count(Family::Cycle, &[4]), 10);
        assert_eq!(count(Family::CompleteMultipartite, &[2, 2]), 10);
        assert_eq!(count(Family::Complete, &[3]), 3);
        assert_eq!(count(Family::Complete, &[4]), 15);
        assert_eq!(count(Family::Path, &[1]), 1);
    }

    #[test]
    fn refusals() {
        let disconnected = Graph::from_edge_list(3, &[(0, 1)]).unwrap();
        assert!(matches!(count_edge_rule(&disconnected), Err(Error::Disconnected)));
        assert!(matches!(count_edge_rule(&Graph::empty(0).unwrap()), Err(Error::EmptyGraph)));
        let limits = Limits {
            subset_bits: 5,
            ..Limits::default()
        };
        let p6 = family(Family::Path, &[6]).unwrap();
        assert!(matches!(
            count_edge_rule_with(&p6, &limits),
            Err(Error::OverCap { n: 6, cap: 5 })
        ));
    }

    #[test]
    fn gosper_enumeration() {
        assert_eq!(masks_of_popcount(4, 2), vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(masks_of_popcount(3, 3), vec![0b111]);
        assert!(masks_of_popcount(3, 4).is_empty());
        for n in 1..10 {
            let total: usize = (0..=n).map(|k| masks_of_popcount(n, k).len()).sum();
            assert_eq!(total, (1 << n) - 1);
        }
    }

    #[test]
    fn path_catalan_convolution() {
        // a(P_n) = sum_{k=1}^{n-1} a(P_k) a(P_{n-k})
        let a: Vec<BigUint> = (1..=12)
            .map(|n| count_edge_rule(&family(Family::Path, &[n]).unwrap()).unwrap())
            .collect();
        for n in 2..=12 {
            let conv: BigUint = (1..n).map(|k| &a[k - 1] * &a[n - k - 1]).sum();
            assert_eq!(a[n - 1], conv, "n = {n}");
        }
    }
}
