//! Exponential generating functions of (H, φ)-graph assembly trees.

use num_bigint::BigUint;

use super::{Series1, TruncatedSeries};
use crate::graph::{Graph, HSpec};
use crate::rational::{self, factorial, int, Rational};
use crate::{Error, Result};

/// `1 - 2Σ x_i + Σ_{φ(i)=0} x_i² + 2Σ_{ij ∉ E(H)} x_i x_j` on the given caps.
pub fn radicand(spec: &HSpec, caps: &[usize]) -> Result<TruncatedSeries> {
    let n = spec.template_size();
    if caps.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "H has {n} vertices but {} caps were given",
            caps.len()
        )));
    }
    let mut f = TruncatedSeries::one(caps);
    let mut exp = vec![0; n];
    let mut bump = |exp: &[usize], c: i64| -> Result<()> {
        if exp.iter().zip(caps).all(|(e, c)| e <= c) {
            let old = f.coeff(exp)?.clone();
            f.set_coeff(exp, old + int(c))?;
        }
        Ok(())
    };
    for i in 0..n {
        exp[i] = 1;
        bump(&exp, -2)?;
        if !spec.phi[i] {
            exp[i] = 2;
            bump(&exp, 1)?;
        }
        exp[i] = 0;
        for j in i + 1..n {
            if !spec.base.has_edge(i, j) {
                exp[i] = 1;
                exp[j] = 1;
                bump(&exp, 2)?;
                exp[i] = 0;
                exp[j] = 0;
            }
        }
    }
    Ok(f)
}

/// The EGF `1 - √(radicand)` in one variable per vertex of H. The
/// multiplicities in `spec` are ignored.
pub fn hgraph_egf(spec: &HSpec, caps: &[usize]) -> Result<TruncatedSeries> {
    if !spec.base.is_connected() {
        return Err(Error::Disconnected);
    }
    let root = radicand(spec, caps)?.sqrt1()?;
    TruncatedSeries::one(caps).sub(&root)
}

/// Coefficient at `x^n` times `n!`.
pub fn count_from_egf(series: &TruncatedSeries, n: &[usize]) -> Result<BigUint> {
    let weight: BigUint = n.iter().map(|&k| factorial(k)).product();
    let weighted = series.coeff(n)? * Rational::from_integer(weight.into());
    rational::to_natural(&weighted).ok_or_else(|| Error::NonIntegral(rational::format(&weighted)))
}

/// `1 - √(1 - 2Nx + (2·C(N,2) - 2M + J)x²)`: the EGF summing assembly
/// trees over every way of splitting `n` labelled vertices among the blocks.
pub fn b_egf(n_vertices: usize, edges: usize, independent: usize, cap: usize) -> Result<Series1> {
    let pairs = n_vertices * n_vertices.saturating_sub(1) / 2;
    let bad = |reason: String| Error::InvalidParams {
        family: "b_egf".into(),
        reason,
    };
    if n_vertices == 0 {
        return Err(bad("N must be at least 1".into()));
    }
    if edges > pairs {
        return Err(bad(format!("M = {edges} exceeds C(N, 2) = {pairs}")));
    }
    if independent > n_vertices {
        return Err(bad(format!("J = {independent} exceeds N = {n_vertices}")));
    }
    let caps = [cap];
    let mut f = TruncatedSeries::one(&caps);
    if cap >= 1 {
        f.set_coeff(&[1], int(-2 * n_vertices as i64))?;
    }
    if cap >= 2 {
        let quadratic = 2 * pairs as i64 - 2 * edges as i64 + independent as i64;
        f.set_coeff(&[2], int(quadratic))?;
    }
    let g = TruncatedSeries::one(&caps).sub(&f.sqrt1()?)?;
    Ok(Option::<Series1>::from(&g).expect("univariate"))
}

/// H = K₂ with the first vertex a clique block and the second an
/// independent block: the radicand is `1 - 2x - 2y + y²`.
pub fn clique_independent_join() -> HSpec {
    let base = Graph::from_edge_list(2, &[(0, 1)]).expect("valid edge");
    HSpec::new(base, vec![true, false], vec![1, 1]).expect("valid template")
}

/// H = K_parts with every block independent, so that the blown-up graphs
/// are complete multipartite.
pub fn complete_multipartite_template(parts: usize) -> Result<HSpec> {
    let edges: Vec<_> = (0..parts)
        .flat_map(|i| (i + 1..parts).map(move |j| (i, j)))
        .collect();
    let base = Graph::from_edge_list(parts, &edges)?;
    HSpec::new(base, vec![false; parts], vec![1; parts])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::count_edge_rule;
    use crate::graph::build_h_graph;
    use crate::rational::{binomial, frac};
    use num_traits::{One, Zero};

    fn bipartite() -> HSpec {
        complete_multipartite_template(2).unwrap()
    }

    #[test]
    fn bipartite_coefficients() {
        let a = hgraph_egf(&bipartite(), &[5, 5]).unwrap();
        assert_eq!(a.coeff(&[2, 2]).unwrap(), &frac(5, 2));
        assert_eq!(a.coeff(&[3, 3]).unwrap(), &frac(25, 2));
        assert_eq!(a.coeff(&[4, 4]).unwrap(), &frac(645, 8));
        assert_eq!(a.coeff(&[5, 4]).unwrap(), &frac(1575, 8));
        assert_eq!(a.coeff(&[4, 5]).unwrap(), &frac(1575, 8));
        assert_eq!(count_from_egf(&a, &[2, 2]).unwrap(), BigUint::from(10u32));
        assert_eq!(count_from_egf(&a, &[3, 3]).unwrap(), BigUint::from(450u32));
    }

    #[test]
    fn clique_independent_radicand() {
        let f = radicand(&clique_independent_join(), &[2, 2]).unwrap();
        let terms: Vec<_> = f.terms().map(|(e, c)| (e, c.clone())).collect();
        assert_eq!(
            terms,
            vec![
                (vec![0, 0], int(1)),
                (vec![0, 1], int(-2)),
                (vec![0, 2], int(1)),
                (vec![1, 0], int(-2)),
            ]
        );
    }

    #[test]
    fn base_cases() {
        let path = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        for bits in 0..8u32 {
            let phi: Vec<bool> = (0..3).map(|i| bits >> i & 1 == 1).collect();
            let spec = HSpec::new(path.clone(), phi.clone(), vec![1; 3]).unwrap();
            let a = hgraph_egf(&spec, &[2, 2, 2]).unwrap();
            assert!(a.coeff(&[0, 0, 0]).unwrap().is_zero());
            for i in 0..3 {
                let mut e = [0; 3];
                e[i] = 1;
                assert!(a.coeff(&e).unwrap().is_one());
                e[i] = 2;
                assert_eq!(a.coeff(&e).unwrap().is_zero(), !phi[i]);
                for j in i + 1..3 {
                    let mut e = [0; 3];
                    e[i] = 1;
                    e[j] = 1;
                    assert_eq!(a.coeff(&e).unwrap().is_one(), path.has_edge(i, j));
                }
            }
        }
    }

    #[test]
    fn complete_templates_match_the_subset_count() {
        for parts in 1..=3 {
            let edges: Vec<_> = (0..parts)
                .flat_map(|i| (i + 1..parts).map(move |j| (i, j)))
                .collect();
            let base = Graph::from_edge_list(parts, &edges).unwrap();
            for bits in 0..1u32 << parts {
                let phi: Vec<bool> = (0..parts).map(|i| bits >> i & 1 == 1).collect();
                let caps = vec![3; parts];
                let a = hgraph_egf(&HSpec::new(base.clone(), phi.clone(), vec![1; parts]).unwrap(), &caps)
                    .unwrap();
                for exp in (1..a.coeffs.len()).map(|i| a.exponent(i)) {
                    let spec = HSpec::new(base.clone(), phi.clone(), exp.clone()).unwrap();
                    let g = build_h_graph(&spec).unwrap();
                    let expected = if g.is_connected() {
                        count_edge_rule(&g).unwrap()
                    } else {
                        BigUint::zero()
                    };
                    assert_eq!(count_from_egf(&a, &exp).unwrap(), expected, "{phi:?} {exp:?}");
                }
            }
        }
    }

    #[test]
    fn disconnected_template_refused() {
        let base = Graph::empty(2).unwrap();
        let spec = HSpec::new(base, vec![true, true], vec![1, 1]).unwrap();
        assert!(matches!(hgraph_egf(&spec, &[2, 2]), Err(Error::Disconnected)));
    }

    #[test]
    fn b_egf_cases() {
        let complete = b_egf(1, 0, 0, 6).unwrap();
        let counts = complete.counts().unwrap();
        for n in 1..=6 {
            let expected = factorial(2 * n - 2) / (BigUint::one() << (n - 1)) / factorial(n - 1);
            assert_eq!(counts[n], expected);
        }

        let single = b_egf(1, 0, 1, 5).unwrap();
        assert_eq!(single.coeffs(), &[int(0), int(1), int(0), int(0), int(0), int(0)]);

        let splits = b_egf(2, 1, 2, 6).unwrap().counts().unwrap();
        let a = hgraph_egf(&bipartite(), &[6, 6]).unwrap();
        for n in 1..=6usize {
            let mut total = BigUint::zero();
            for k in 0..=n {
                total += binomial(n, k) * count_from_egf(&a, &[k, n - k]).unwrap();
            }
            assert_eq!(splits[n], total);
        }

        assert!(b_egf(2, 2, 0, 3).is_err());
        assert!(b_egf(2, 1, 3, 3).is_err());
        assert!(b_egf(0, 0, 0, 3).is_err());
    }

    #[test]
    fn b_egf_is_the_collapsed_multivariate_egf() {
        let path = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        for bits in 0..8u32 {
            let phi: Vec<bool> = (0..3).map(|i| bits >> i & 1 == 1).collect();
            let j = phi.iter().filter(|p| !**p).count();
            let spec = HSpec::new(path.clone(), phi, vec![1; 3]).unwrap();
            let collapsed = hgraph_egf(&spec, &[5, 5, 5]).unwrap().collapse(5).unwrap();
            assert_eq!(collapsed, b_egf(3, 2, j, 5).unwrap());
        }
    }
}
