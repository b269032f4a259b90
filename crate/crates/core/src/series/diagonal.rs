//! Closed-form coefficient extraction for complete templates.
//!
//! When H is complete the radicand separates as `1 - Σ p_i(x_i)` with
//! `p_i = 2x` for a clique block and `p_i = 2x - x²` for an independent
//! one. Expanding `√(1 - u) = Σ_m C(1/2, m) (-u)^m` with the multinomial
//! theorem gives
//!
//! ```text
//! [x^n] √(1 - u) = Σ_m (-1)^m C(1/2, m) m! (h_1 * ⋯ * h_k)(m),
//! h_i(a) = [x^{n_i}] p_i^a / a!
//! ```
//!
//! where `*` is convolution. This costs `O(k n²)` per coefficient instead of
//! a full expansion of the window.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Series1;
use crate::graph::HSpec;
use crate::rational::{binomial, factorial, half_binomial, Rational};
use crate::{Error, Result};

fn is_complete(spec: &HSpec) -> bool {
    let n = spec.template_size();
    spec.template_edges() == n * (n - 1) / 2
}

/// `h(a) = [x^n] p^a / a!` for `a = 0..=n`.
fn block_terms(clique: bool, n: usize) -> Vec<Rational> {
    let mut h = vec![Rational::zero(); n + 1];
    if clique {
        h[n] = Rational::new(BigInt::one() << n, factorial(n).into());
        return h;
    }
    // (2x - x²)^a = x^a (2 - x)^a: the x^n term picks x^{n-a} from (2 - x)^a.
    for (a, slot) in h.iter_mut().enumerate() {
        if a > n || 2 * a < n {
            continue;
        }
        let k = n - a;
        let mut value = BigInt::from(binomial(a, k)) << (a - k);
        if k % 2 == 1 {
            value = -value;
        }
        *slot = Rational::new(value, factorial(a).into());
    }
    h
}

fn convolve(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(-1)^m C(1/2, m) m! = Π_{i<m} (i - 1/2)` for `m = 0..=top`.
fn root_weights(top: usize) -> Vec<Rational> {
    let mut w = Vec::with_capacity(top + 1);
    let mut acc = Rational::one();
    for i in 0..=top {
        w.push(acc.clone());
        acc *= Rational::new(BigInt::from(2 * i as i64 - 1), BigInt::from(2));
    }
    w
}

fn check_separable(spec: &HSpec, len: usize) -> Result<()> {
    if !is_complete(spec) {
        return Err(Error::InvalidHSpec(
            "the separable route needs H complete".into(),
        ));
    }
    if len != spec.template_size() {
        return Err(Error::ShapeMismatch(format!(
            "H has {} vertices but the exponent has {len} entries",
            spec.template_size(),
        )));
    }
    Ok(())
}

fn coefficient_with(spec: &HSpec, exps: &[usize], weights: &[Rational]) -> Rational {
    let mut conv = vec![Rational::one()];
    for (&clique, &n) in spec.phi.iter().zip(exps) {
        conv = convolve(&conv, &block_terms(clique, n));
    }
    let root: Rational = conv
        .iter()
        .zip(weights)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, w)| c * w)
        .sum();
    let constant = if exps.iter().all(|&e| e == 0) {
        Rational::one()
    } else {
        Rational::zero()
    };
    constant - root
}

/// The coefficient at `x^exps` of the EGF of a complete template, without
/// expanding the series.
pub fn separable_coefficient(spec: &HSpec, exps: &[usize]) -> Result<Rational> {
    check_separable(spec, exps.len())?;
    let weights = root_weights(exps.iter().sum());
    Ok(coefficient_with(spec, exps, &weights))
}

/// The diagonal of the EGF of a complete template, coefficients `0..=upto`.
pub fn separable_diagonal(spec: &HSpec, upto: usize) -> Result<Series1> {
    let k = spec.template_size();
    check_separable(spec, k)?;
    let weights = root_weights(k * upto);
    let coeffs = (0..=upto)
        .map(|n| coefficient_with(spec, &vec![n; k], &weights))
        .collect();
    Ok(Series1::new(coeffs))
}

/// The diagonal coefficient `a_{n,n}` of `1 - √(1 - 2x - 2y + y²)` from the
/// single-sum formula
///
/// ```text
/// Σ_{m=⌈3n/2⌉}^{2n} C(1/2, m) C(m, n) C(m-n, 2m-3n) 4^{m-n}
/// ```
///
/// which is the coefficient of `x^n y^n` in the square root itself; the
/// alternating signs of the binomial expansion cancel in pairs there. The
/// EGF coefficient is its negative, and the number of assembly trees of the
/// corresponding graph is `(n!)² a_{n,n}`.
pub fn diag_formula_easyex(n: usize) -> Result<Rational> {
    if n < 1 {
        return Err(Error::InvalidParams {
            family: "diag_formula_easyex".into(),
            reason: "n must be at least 1".into(),
        });
    }
    let mut sum = Rational::zero();
    for m in (3 * n).div_ceil(2)..=2 * n {
        let ints = binomial(m, n) * binomial(m - n, 2 * m - 3 * n);
        let power = BigInt::one() << (2 * (m - n));
        sum += half_binomial(m) * Rational::from_integer(BigInt::from(ints) * power);
    }
    Ok(-sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::rational::{frac, int};
    use crate::series::{clique_independent_join, complete_multipartite_template, hgraph_egf};

    #[test]
    fn matches_dense_expansion_on_complete_templates() {
        for parts in 1..=3 {
            let edges: Vec<_> = (0..parts)
                .flat_map(|i| (i + 1..parts).map(move |j| (i, j)))
                .collect();
            let base = Graph::from_edge_list(parts, &edges).unwrap();
            for bits in 0..1u32 << parts {
                let phi: Vec<bool> = (0..parts).map(|i| bits >> i & 1 == 1).collect();
                let spec = HSpec::new(base.clone(), phi, vec![1; parts]).unwrap();
                let caps = vec![4; parts];
                let dense = hgraph_egf(&spec, &caps).unwrap();
                for (i, c) in dense.coeffs.iter().enumerate() {
                    let exp = dense.exponent(i);
                    assert_eq!(&separable_coefficient(&spec, &exp).unwrap(), c, "{exp:?}");
                }
            }
        }
    }

    #[test]
    fn known_diagonals() {
        let a = separable_diagonal(&clique_independent_join(), 5).unwrap();
        assert_eq!(
            a.coeffs(),
            &[int(0), int(1), int(3), frac(35, 2), frac(525, 4), frac(9009, 8)]
        );
        let b = separable_diagonal(&complete_multipartite_template(2).unwrap(), 5).unwrap();
        assert_eq!(
            b.coeffs(),
            &[int(0), int(1), frac(5, 2), frac(25, 2), frac(645, 8), frac(4767, 8)]
        );
        let c = separable_diagonal(&complete_multipartite_template(3).unwrap(), 3).unwrap();
        assert_eq!(c.coeffs(), &[int(0), int(3), int(84), int(4935)]);
    }

    #[test]
    fn dense_diagonal_agrees() {
        let spec = clique_independent_join();
        let dense = hgraph_egf(&spec, &[8, 8]).unwrap().diagonal().unwrap();
        assert_eq!(dense, separable_diagonal(&spec, 8).unwrap());
    }

    #[test]
    fn easy_formula() {
        let a = separable_diagonal(&clique_independent_join(), 12).unwrap();
        for n in 1..=12 {
            assert_eq!(&diag_formula_easyex(n).unwrap(), a.coeff(n).unwrap(), "n = {n}");
        }
        assert_eq!(diag_formula_easyex(1).unwrap(), int(1));
        assert_eq!(diag_formula_easyex(2).unwrap(), int(3));
        assert!(diag_formula_easyex(0).is_err());
    }

    #[test]
    fn non_complete_refused() {
        let path = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        let spec = HSpec::new(path, vec![false; 3], vec![1; 3]).unwrap();
        assert!(separable_coefficient(&spec, &[1, 1, 1]).is_err());
    }
}
