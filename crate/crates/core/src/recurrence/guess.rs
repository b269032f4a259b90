//! Guessing P-recurrences from sequence terms.
//!
//! For each order `L` and degree `D`, in that lexicographic order, the
//! unknown coefficients of `P_0, …, P_L` satisfy one linear equation per
//! index `n`. All but the last `surplus` equations are solved exactly; the
//! held-out ones must then hold as well. A cheap rank computation modulo a
//! prime rules out most cells before any big-integer work: the rank over
//! the rationals is never smaller than the rank modulo `p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{PRecurrence, Poly};
use crate::rational::{self, Rational};
use crate::{Error, Result};

const PRIME: u64 = (1 << 61) - 1;

/// Terms held out of the fit for a search up to order `max_order`.
fn surplus(max_order: usize) -> usize {
    max_order + 2
}

/// Minimum sequence length for [`guess`] with these bounds, counting the
/// leading zeros before the first nonzero term (`offset` of them).
pub fn required_terms(offset: usize, max_order: usize, max_degree: usize) -> usize {
    offset + (max_order + 1) * (max_degree + 1) + max_order + surplus(max_order)
}

/// Finds the recurrence of least order, then least degree, that fits `seq`
/// and holds on the held-out terms. The recurrence applies from the first
/// nonzero term on. Returns `None` when no cell within the bounds works.
pub fn guess(seq: &[Rational], max_order: usize, max_degree: usize) -> Result<Option<PRecurrence>> {
    let Some(offset) = seq.iter().position(|c| !c.is_zero()) else {
        return Ok(None);
    };
    let need = required_terms(offset, max_order, max_degree);
    if seq.len() < need {
        return Err(Error::InsufficientTerms {
            need,
            have: seq.len(),
        });
    }
    let held_out = surplus(max_order);
    for order in 1..=max_order {
        for degree in 0..=max_degree {
            let rows = seq.len() - offset - order - held_out;
            let matrix = system(seq, offset, order, degree, rows);
            let unknowns = (order + 1) * (degree + 1);
            if rank_mod_p(&matrix, unknowns) == unknowns {
                continue;
            }
            for solution in nullspace(matrix, unknowns) {
                let polys: Vec<Poly> = solution
                    .chunks(degree + 1)
                    .map(|c| Poly::new(c.to_vec()))
                    .collect();
                let Ok(rec) = PRecurrence::new(polys, offset) else {
                    continue;
                };
                if rec.verify(seq).ok {
                    return Ok(Some(rec.normalized()));
                }
            }
        }
    }
    Ok(None)
}

/// Row `r` is the equation at `n = offset + r`, scaled to integers; column
/// `i(D+1) + j` multiplies the coefficient of `m^j` in `P_i`.
fn system(seq: &[Rational], offset: usize, order: usize, degree: usize, rows: usize) -> Vec<Vec<BigInt>> {
    (0..rows)
        .map(|r| {
            let n = offset + r;
            let window = &seq[n..=n + order];
            let scale = rational::common_denominator(window);
            let mut row = Vec::with_capacity((order + 1) * (degree + 1));
            for (i, f) in window.iter().enumerate() {
                let value = (f * Rational::from_integer(scale.clone())).to_integer();
                let m = BigInt::from(n + i);
                let mut power = BigInt::one();
                for _ in 0..=degree {
                    row.push(&value * &power);
                    power *= &m;
                }
            }
            row
        })
        .collect()
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

fn rank_mod_p(matrix: &[Vec<BigInt>], cols: usize) -> usize {
    let p = BigInt::from(PRIME);
    let mut m: Vec<Vec<u64>> = matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.mod_floor(&p).to_u64().expect("reduced"))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = pow_mod(m[rank][c], PRIME - 2);
        for r in rank + 1..m.len() {
            if m[r][c] == 0 {
                continue;
            }
            let factor = mul_mod(m[r][c], inv);
            for j in c..cols {
                let sub = mul_mod(factor, m[rank][j]);
                m[r][j] = (m[r][j] + PRIME - sub) % PRIME;
            }
        }
        rank += 1;
    }
    rank
}

/// A basis of the rational nullspace, via fraction-free (Bareiss)
/// elimination to echelon form and back-substitution.
fn nullspace(mut m: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<Rational>> {
    let mut previous = BigInt::one();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let (top, below) = m.split_at_mut(rank + 1);
        let top = &top[rank];
        for row in below.iter_mut() {
            for j in c + 1..cols {
                let value = &top[c] * &row[j] - &row[c] * &top[j];
                let (q, r) = value.div_rem(&previous);
                debug_assert!(r.is_zero());
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        previous = m[rank][c].clone();
        pivots.push(c);
        rank += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate().rev() {
                let sum: Rational = (p + 1..cols)
                    .filter(|&j| !x[j].is_zero() && !m[r][j].is_zero())
                    .map(|j| Rational::from_integer(m[r][j].clone()) * &x[j])
                    .sum();
                x[p] = -sum / Rational::from_integer(m[r][p].clone());
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{binomial, int};
    use crate::recurrence::{builtin_a, builtin_b, catalan};
    use crate::series::{clique_independent_join, separable_diagonal};
    use proptest::prelude::*;

    fn catalan_terms(count: usize) -> Vec<Rational> {
        (0..count)
            .map(|n| Rational::from_integer((binomial(2 * n, n) / (n + 1)).into()))
            .collect()
    }

    #[test]
    fn catalan_numbers() {
        let rec = guess(&catalan_terms(20), 2, 2).unwrap().unwrap();
        assert_eq!(rec, catalan());
    }

    #[test]
    fn example_diagonal_recovers_the_known_recurrence() {
        let a = separable_diagonal(&clique_independent_join(), 25).unwrap();
        let rec = guess(a.coeffs(), 2, 3).unwrap().unwrap();
        assert_eq!(rec, builtin_a());
    }

    #[test]
    fn bipartite_diagonal() {
        let seq = builtin_b()
            .extend(&[int(0), int(1), rational::frac(5, 2)], 40)
            .unwrap();
        let rec = guess(&seq, 2, 3).unwrap().unwrap();
        assert_eq!(rec.order(), 2);
        assert!(rec.equivalent_on(&builtin_b(), &seq, 60).unwrap());
    }

    #[test]
    fn not_enough_terms() {
        let err = guess(&catalan_terms(10), 2, 2).unwrap_err();
        assert!(matches!(err, Error::InsufficientTerms { need: 15, have: 10 }));
    }

    #[test]
    fn nothing_fits() {
        // 2^(n²) grows too fast for any P-recurrence.
        let seq: Vec<Rational> = (0..30).map(|n| Rational::from_integer(BigInt::one() << (n * n))).collect();
        assert_eq!(guess(&seq, 2, 2).unwrap(), None);
        assert_eq!(guess(&vec![int(0); 30], 2, 2).unwrap(), None);
    }

    #[test]
    fn bareiss_nullspace() {
        let m = vec![
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)],
            vec![BigInt::from(2), BigInt::from(4), BigInt::from(6)],
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)],
        ];
        assert_eq!(rank_mod_p(&m, 3), 2);
        let basis = nullspace(m, 3);
        assert_eq!(basis.len(), 1);
        let x = &basis[0];
        assert_eq!(x[0], int(-1));
        assert_eq!(x[1], int(-1));
        assert_eq!(x[2], int(1));
    }

    fn arb_recurrence() -> impl Strategy<Value = PRecurrence> {
        (1usize..=2, 0usize..=2).prop_flat_map(|(order, degree)| {
            proptest::collection::vec(proptest::collection::vec(-5i64..=5, degree + 1), order + 1)
                .prop_map(|rows| {
                    let mut polys: Vec<Poly> = rows.iter().map(|r| Poly::from_ints(r)).collect();
                    // A leading polynomial with no root at positive integers.
                    let last = polys.len() - 1;
                    let mut top = rows[last].clone();
                    top[0] = 6;
                    for c in top.iter_mut().skip(1) {
                        *c = c.abs();
                    }
                    polys[last] = Poly::from_ints(&top);
                    PRecurrence::new(polys, 0).unwrap()
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn guessing_generated_data_recovers_its_solutions(rec in arb_recurrence(), seed in 1i64..=5) {
            let initial: Vec<Rational> = (0..rec.order()).map(|i| int(seed + i as i64)).collect();
            let seq = rec.extend(&initial, 40).unwrap();
            let found = guess(&seq, 2, 2).unwrap().expect("the generating recurrence fits");
            prop_assert!(found.order() <= rec.order());
            prop_assert!(found.verify(&seq).ok);
            // The fit used terms up to 40; the relation must persist beyond.
            let longer = rec.extend(&initial, 80).unwrap();
            prop_assert!(found.verify(&longer).ok);
        }
    }
}
