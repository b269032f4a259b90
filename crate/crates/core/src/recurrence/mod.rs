//! P-recursive sequences.
//!
//! A [`PRecurrence`] of order `L` is a list of polynomials `P_0, …, P_L`
//! with `Σ_i P_i(n + i) f(n + i) = 0` for every `n >= offset`.

mod builtin;
mod guess;

pub use builtin::{builtin, builtin_a, builtin_b, builtin_c, catalan};
pub use guess::{guess, required_terms};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};
use crate::{Error, Result};

/// A polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_at(&self, n: usize) -> Rational {
        self.eval(&Rational::from_integer(n.into()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let coeffs: Vec<f64> = self.coeffs.iter().map(rational::to_f64).collect();
        coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PRecurrence {
    order: usize,
    offset: usize,
    polys: Vec<Poly>,
}

/// Outcome of checking a recurrence against data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub ok: bool,
    /// Number of indices `n` at which the relation was tested.
    pub checked: usize,
    pub first_failure: Option<usize>,
    /// Set when the data was too short to test anything.
    pub degenerate: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RecurrenceJson {
    order: usize,
    offset: usize,
    polys: Vec<Vec<serde_json::Value>>,
}

impl PRecurrence {
    /// `polys[i]` is `P_i`; there must be at least two and the last may not
    /// be zero.
    pub fn new(polys: Vec<Poly>, offset: usize) -> Result<Self> {
        if polys.len() < 2 {
            return Err(Error::InvalidRecurrence("order must be at least 1".into()));
        }
        if polys.last().is_some_and(Poly::is_zero) {
            return Err(Error::InvalidRecurrence("leading polynomial is zero".into()));
        }
        Ok(PRecurrence {
            order: polys.len() - 1,
            offset,
            polys,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    /// Largest degree among the `P_i`.
    pub fn degree(&self) -> usize {
        self.polys.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    /// `Σ_i P_i(n + i) f(n + i)`; `seq` must reach index `n + order`.
    pub fn residual(&self, seq: &[Rational], n: usize) -> Rational {
        self.polys
            .iter()
            .enumerate()
            .filter(|(i, _)| !seq[n + i].is_zero())
            .map(|(i, p)| p.eval_at(n + i) * &seq[n + i])
            .sum()
    }

    /// Extends `initial` to indices `0..=upto` by solving for the last term
    /// of each instance of the relation.
    pub fn extend(&self, initial: &[Rational], upto: usize) -> Result<Vec<Rational>> {
        let need = self.order + self.offset;
        if initial.len() < need {
            return Err(Error::InsufficientTerms {
                need,
                have: initial.len(),
            });
        }
        let mut seq = initial.to_vec();
        seq.truncate(upto + 1);
        while seq.len() <= upto {
            let t = seq.len();
            let n = t - self.order;
            let lead = self.polys[self.order].eval_at(t);
            if lead.is_zero() {
                return Err(Error::LeadingVanishes(t));
            }
            let rest: Rational = (0..self.order)
                .filter(|&i| !seq[n + i].is_zero())
                .map(|i| self.polys[i].eval_at(n + i) * &seq[n + i])
                .sum();
            seq.push(-rest / lead);
        }
        Ok(seq)
    }

    pub fn verify(&self, seq: &[Rational]) -> Verification {
        let mut checked = 0;
        let mut n = self.offset;
        while n + self.order < seq.len() {
            if !self.residual(seq, n).is_zero() {
                return Verification {
                    ok: false,
                    checked: checked + 1,
                    first_failure: Some(n),
                    degenerate: false,
                };
            }
            checked += 1;
            n += 1;
        }
        Verification {
            ok: true,
            checked,
            first_failure: None,
            degenerate: checked == 0,
        }
    }

    /// Whether both recurrences extend `initial` to the same terms up to
    /// `upto`. Only as many initial terms as each recurrence needs are used.
    pub fn equivalent_on(&self, other: &Self, initial: &[Rational], upto: usize) -> Result<bool> {
        let a = self.extend(&initial[..initial.len().min(self.order + self.offset)], upto)?;
        let b = other.extend(&initial[..initial.len().min(other.order + other.offset)], upto)?;
        Ok(a == b)
    }

    /// `{"order": L, "offset": s, "polys": [[c0, c1, …], …]}` with each
    /// coefficient a rational string, lowest degree first.
    pub fn to_json(&self) -> String {
        let polys = self
            .polys
            .iter()
            .map(|p| {
                p.coeffs
                    .iter()
                    .map(|c| serde_json::Value::String(rational::format(c)))
                    .collect()
            })
            .collect();
        serde_json::to_string(&RecurrenceJson {
            order: self.order,
            offset: self.offset,
            polys,
        })
        .expect("plain data")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RecurrenceJson = serde_json::from_str(text)?;
        let polys = raw
            .polys
            .iter()
            .map(|p| {
                p.iter()
                    .map(rational::from_json)
                    .collect::<Result<Vec<_>>>()
                    .map(Poly::new)
            })
            .collect::<Result<Vec<_>>>()?;
        let rec = PRecurrence::new(polys, raw.offset)?;
        if rec.order != raw.order {
            return Err(Error::InvalidRecurrence(format!(
                "order {} but {} polynomials",
                raw.order,
                rec.polys.len()
            )));
        }
        Ok(rec)
    }

    /// Divides out the content of the integer-cleared coefficients and makes
    /// the top coefficient of `P_L` positive.
    fn normalized(mut self) -> Self {
        let all = self.polys.iter().flat_map(|p| p.coeffs.iter());
        let denominator = Rational::from_integer(rational::common_denominator(all.clone()));
        let numerators: Vec<_> = all.map(|c| (c * &denominator).to_integer()).collect();
        let content = numerators
            .iter()
            .fold(num_bigint::BigInt::zero(), |g, c| num_integer::Integer::gcd(&g, c));
        let mut scale = denominator / Rational::from_integer(content);
        let top = self.polys[self.order].coeffs.last().expect("nonzero leading polynomial");
        if top.is_negative() {
            scale = -scale;
        }
        for p in &mut self.polys {
            for c in &mut p.coeffs {
                *c *= &scale;
            }
        }
        debug_assert!(self.polys[self.order].coeffs.last().unwrap() > &Rational::zero());
        self
    }
}

/// A sequence as a JSON array of rationals (strings `"p/q"` or integers).
pub fn sequence_from_json(text: &str) -> Result<Vec<Rational>> {
    let values: Vec<serde_json::Value> = serde_json::from_str(text)?;
    values.iter().map(rational::from_json).collect()
}

pub fn sequence_to_json(seq: &[Rational]) -> serde_json::Value {
    seq.iter()
        .map(|c| serde_json::Value::String(rational::format(c)))
        .collect()
}
