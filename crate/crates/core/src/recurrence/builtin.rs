//! Recurrences for the diagonals of the worked examples, with denominators
//! cleared.

use std::sync::OnceLock;

use super::{PRecurrence, Poly};

/// `2(n+1)² a_{n+1} = 3(3n-1)(3n+1) a_n` for `n >= 1`, the diagonal of
/// `1 - √(1 - 2x - 2y + y²)`. At `n = 0` the relation would force `a_1 = 0`.
pub fn builtin_a() -> PRecurrence {
    PRecurrence::new(vec![Poly::from_ints(&[3, 0, -27]), Poly::from_ints(&[0, 0, 2])], 1)
        .expect("valid builtin")
}

/// `(n+2)²(n+1) b_{n+2} = 2(6n²+12n+5)(n+1) b_{n+1} - n(2n-1)(2n+3) b_n`,
/// the diagonal of the complete bipartite EGF.
pub fn builtin_b() -> PRecurrence {
    PRecurrence::new(
        vec![
            Poly::from_ints(&[0, -3, 4, 4]),
            Poly::from_ints(&[0, 2, 0, -12]),
            Poly::from_ints(&[0, 0, -1, 1]),
        ],
        1,
    )
    .expect("valid builtin")
}

/// An order-3 recurrence for the diagonal of the complete tripartite EGF.
///
/// Only its existence and degree bounds are published, so this one was
/// found by [`super::guess`] on 65 exact terms of the diagonal and frozen.
pub fn builtin_c() -> PRecurrence {
    static REC: OnceLock<PRecurrence> = OnceLock::new();
    REC.get_or_init(|| {
        PRecurrence::from_json(include_str!("../../resources/builtin_c.json"))
            .expect("valid builtin")
    })
    .clone()
}

/// `(n+2) C_{n+1} = (4n+2) C_n`.
pub fn catalan() -> PRecurrence {
    PRecurrence::new(vec![Poly::from_ints(&[-2, -4]), Poly::from_ints(&[1, 1])], 0)
        .expect("valid builtin")
}

/// Looks up `a`, `b`, `c` or `catalan`.
pub fn builtin(name: &str) -> Option<PRecurrence> {
    match name {
        "a" => Some(builtin_a()),
        "b" => Some(builtin_b()),
        "c" => Some(builtin_c()),
        "catalan" => Some(catalan()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{binomial, int, Rational};
    use crate::series::{clique_independent_join, complete_multipartite_template, separable_diagonal};

    #[test]
    fn builtins_verify_against_series_diagonals() {
        let a = separable_diagonal(&clique_independent_join(), 30).unwrap();
        let v = builtin_a().verify(a.coeffs());
        assert!(v.ok && v.checked == 29, "{v:?}");

        let b = separable_diagonal(&complete_multipartite_template(2).unwrap(), 30).unwrap();
        let v = builtin_b().verify(b.coeffs());
        assert!(v.ok && v.checked == 28, "{v:?}");
        let from_zero = PRecurrence::new(builtin_b().polys.clone(), 0).unwrap();
        assert!(from_zero.verify(b.coeffs()).ok);

        let c = separable_diagonal(&complete_multipartite_template(3).unwrap(), 80).unwrap();
        let rec = builtin_c();
        let v = rec.verify(c.coeffs());
        assert!(v.ok && v.checked >= 70, "{v:?}");
        assert_eq!(rec.order(), 3);
        assert!(rec.degree() <= 11);
    }

    #[test]
    fn catalan_matches_closed_form() {
        let seq = catalan().extend(&[int(1)], 40).unwrap();
        for (n, c) in seq.iter().enumerate() {
            let closed = Rational::from_integer((binomial(2 * n, n) / (n + 1)).into());
            assert_eq!(c, &closed);
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(builtin("a"), Some(builtin_a()));
        assert_eq!(builtin("catalan"), Some(catalan()));
        assert!(builtin("d").is_none());
    }
}

