//! Exact truncated power series.
//!
//! [`TruncatedSeries`] stores every coefficient of a `k`-variable series
//! inside a box of per-variable degree caps, densely, in mixed-radix order
//! with the first variable most significant. Products and square roots are
//! exact on that box: each retained coefficient equals the coefficient of
//! the untruncated result.

mod diagonal;
mod egf;

pub use diagonal::{diag_formula_easyex, separable_coefficient, separable_diagonal};
pub use egf::{
    b_egf, clique_independent_join, complete_multipartite_template, count_from_egf, hgraph_egf,
    radicand,
};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, factorial, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    caps: Vec<usize>,
    strides: Vec<usize>,
    coeffs: Vec<Rational>,
}

/// One entry of the JSON series dump.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub exp: Vec<usize>,
    pub coeff: String,
}

impl TruncatedSeries {
    pub fn zero(caps: &[usize]) -> Self {
        let mut strides = vec![1; caps.len()];
        for i in (0..caps.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (caps[i + 1] + 1);
        }
        let len = caps.iter().map(|c| c + 1).product();
        TruncatedSeries {
            caps: caps.to_vec(),
            strides,
            coeffs: vec![Rational::zero(); len],
        }
    }

    pub fn one(caps: &[usize]) -> Self {
        Self::constant(caps, Rational::one())
    }

    pub fn constant(caps: &[usize], c: Rational) -> Self {
        let mut s = Self::zero(caps);
        s.coeffs[0] = c;
        s
    }

    /// `c · x^exp`, or zero when `exp` lies outside the caps.
    pub fn monomial(caps: &[usize], exp: &[usize], c: Rational) -> Self {
        let mut s = Self::zero(caps);
        if let Some(i) = s.index(exp) {
            s.coeffs[i] = c;
        }
        s
    }

    /// The `i`-th variable.
    pub fn var(caps: &[usize], i: usize) -> Self {
        let mut exp = vec![0; caps.len()];
        exp[i] = 1;
        Self::monomial(caps, &exp, Rational::one())
    }

    pub fn nvars(&self) -> usize {
        self.caps.len()
    }

    pub fn caps(&self) -> &[usize] {
        &self.caps
    }

    fn index(&self, exp: &[usize]) -> Option<usize> {
        if exp.len() != self.caps.len() || exp.iter().zip(&self.caps).any(|(e, c)| e > c) {
            return None;
        }
        Some(exp.iter().zip(&self.strides).map(|(e, s)| e * s).sum())
    }

    fn exponent(&self, mut index: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|s| {
                let e = index / s;
                index %= s;
                e
            })
            .collect()
    }

    pub fn coeff(&self, exp: &[usize]) -> Result<&Rational> {
        self.index(exp)
            .map(|i| &self.coeffs[i])
            .ok_or_else(|| Error::ExponentOutOfRange(exp.to_vec()))
    }

    pub fn set_coeff(&mut self, exp: &[usize], c: Rational) -> Result<()> {
        let i = self
            .index(exp)
            .ok_or_else(|| Error::ExponentOutOfRange(exp.to_vec()))?;
        self.coeffs[i] = c;
        Ok(())
    }

    /// Nonzero terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.exponent(i), c))
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.caps != other.caps {
            return Err(Error::ShapeMismatch(format!(
                "caps {:?} vs {:?}",
                self.caps, other.caps
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        for a in &mut out.coeffs {
            *a *= c;
        }
        out
    }

    /// Indices of all exponents `d <= exp` componentwise, increasing.
    fn sub_indices(&self, exp: &[usize]) -> Vec<usize> {
        let mut out = vec![0usize];
        for (e, s) in exp.iter().zip(&self.strides) {
            out = out
                .iter()
                .flat_map(|&base| (0..=*e).map(move |d| base + d * s))
                .collect();
        }
        out.sort_unstable();
        out
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = Self::zero(&self.caps);
        for e in 0..self.coeffs.len() {
            let exp = self.exponent(e);
            let mut acc = Rational::zero();
            for d in self.sub_indices(&exp) {
                let (a, b) = (&self.coeffs[d], &other.coeffs[e - d]);
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
            out.coeffs[e] = acc;
        }
        Ok(out)
    }

    /// The square root with constant term 1 of a series with constant
    /// term 1.
    ///
    /// Comparing coefficients in `g² = f` gives, for every exponent `e ≠ 0`,
    /// `2 g_e = f_e - Σ_{0 < d < e} g_d g_{e-d}`; all the `g_d` on the right
    /// precede `e` in storage order, so one pass suffices.
    pub fn sqrt1(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne(rational::format(&self.coeffs[0])));
        }
        let mut g = Self::one(&self.caps);
        let half = rational::frac(1, 2);
        for e in 1..self.coeffs.len() {
            let exp = self.exponent(e);
            let mut cross = Rational::zero();
            let mut square = Rational::zero();
            for d in self.sub_indices(&exp) {
                let rest = e - d;
                if d == 0 || d > rest {
                    continue;
                }
                let (a, b) = (&g.coeffs[d], &g.coeffs[rest]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                if d == rest {
                    square += a * b;
                } else {
                    cross += a * b;
                }
            }
            let convolution = cross * rational::int(2) + square;
            g.coeffs[e] = (&self.coeffs[e] - convolution) * &half;
        }
        Ok(g)
    }

    /// The coefficients at `x_1^n ⋯ x_k^n`, for `n` up to the common cap.
    pub fn diagonal(&self) -> Result<Series1> {
        let cap = *self
            .caps
            .first()
            .ok_or_else(|| Error::ShapeMismatch("series has no variables".into()))?;
        if self.caps.iter().any(|&c| c != cap) {
            return Err(Error::ShapeMismatch(format!(
                "diagonal needs equal caps, found {:?}",
                self.caps
            )));
        }
        let step: usize = self.strides.iter().sum();
        Ok(Series1::new(
            (0..=cap).map(|n| self.coeffs[n * step].clone()).collect(),
        ))
    }

    /// Sets every variable equal to a single `x`: coefficient `d` of the
    /// result sums all coefficients of total degree `d`. Only degrees up to
    /// the smallest cap are complete, so `cap` may not exceed it.
    pub fn collapse(&self, cap: usize) -> Result<Series1> {
        let limit = self.caps.iter().copied().min().unwrap_or(0);
        if cap > limit {
            return Err(Error::ShapeMismatch(format!(
                "collapsed cap {cap} exceeds smallest variable cap {limit}"
            )));
        }
        let mut out = vec![Rational::zero(); cap + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            let degree: usize = self.exponent(i).iter().sum();
            if degree <= cap {
                out[degree] += c;
            }
        }
        Ok(Series1::new(out))
    }

    /// The JSON dump: nonzero terms, lexicographic by exponent.
    pub fn to_terms(&self) -> Vec<Term> {
        self.terms()
            .map(|(exp, c)| Term {
                exp,
                coeff: rational::format(c),
            })
            .collect()
    }

    /// Rebuilds a series from a dump. Terms outside `caps` are an error.
    pub fn from_terms(caps: &[usize], terms: &[Term]) -> Result<Self> {
        let mut s = Self::zero(caps);
        for t in terms {
            s.set_coeff(&t.exp, rational::parse(&t.coeff)?)?;
        }
        Ok(s)
    }
}

/// A univariate truncated series `Σ_{n <= cap} c_n x^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series1 {
    coeffs: Vec<Rational>,
}

impl Series1 {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least the constant term");
        Series1 { coeffs }
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// `n! · c_n` for every `n`, which must all be non-negative integers.
    pub fn counts(&self) -> Result<Vec<BigUint>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                let weighted = c * Rational::from_integer(factorial(n).into());
                rational::to_natural(&weighted)
                    .ok_or_else(|| Error::NonIntegral(rational::format(&weighted)))
            })
            .collect()
    }
}

impl From<&TruncatedSeries> for Option<Series1> {
    fn from(s: &TruncatedSeries) -> Self {
        (s.nvars() == 1).then(|| Series1::new(s.coeffs.clone()))
    }
}
