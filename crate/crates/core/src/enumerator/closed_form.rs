use num_bigint::BigUint;

use crate::graph::Family;
use crate::rational::{binomial, factorial};
use crate::{Error, Result};

/// Known closed forms for edge-rule tree counts:
///
/// | family   | count                                     |
/// |----------|-------------------------------------------|
/// | star     | `n!`                                      |
/// | star2    | `Σ_{k=0}^{n} C(n,k) (2n-k)! / 2^(n-k)`    |
/// | path     | `C(2n-2, n-1) / n`                        |
/// | cycle    | `C(2n-2, n-1) / 2`                        |
/// | complete | `(2n-2)! / (2^(n-1) (n-1)!)`              |
///
/// `n` is the family parameter (number of arms for stars).
pub fn closed_form(family: Family, n: usize) -> Result<BigUint> {
    let invalid = |reason: &str| Error::InvalidParams {
        family: family.to_string(),
        reason: reason.to_string(),
    };
    match family {
        Family::Star => Ok(factorial(n)),
        Family::Star2 => Ok((0..=n)
            .map(|k| (binomial(n, k) * factorial(2 * n - k)) >> (n - k))
            .sum()),
        Family::Path if n >= 1 => Ok(binomial(2 * n - 2, n - 1) / n),
        Family::Cycle if n >= 3 => Ok(binomial(2 * n - 2, n - 1) >> 1),
        Family::Complete if n >= 1 => Ok((factorial(2 * n - 2) / factorial(n - 1)) >> (n - 1)),
        Family::Path | Family::Complete => Err(invalid("n must be at least 1")),
        Family::Cycle => Err(invalid("n must be at least 3")),
        Family::CompleteMultipartite | Family::Caterpillar => {
            Err(invalid("no closed form is known for this family"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(f: Family, n: usize) -> u64 {
        closed_form(f, n).unwrap().try_into().unwrap()
    }

    #[test]
    fn values() {
        assert_eq!(cf(Family::Path, 4), 5);
        assert_eq!(cf(Family::Star2, 1), 2);
        assert_eq!(cf(Family::Star2, 1), cf(Family::Path, 3));
        assert_eq!(cf(Family::Star2, 2), 14);
        assert_eq!(cf(Family::Complete, 4), 15);
        assert_eq!(cf(Family::Complete, 3), 3);
        assert_eq!(cf(Family::Cycle, 4), 10);
        assert_eq!(cf(Family::Star, 5), 120);
    }

    #[test]
    fn unsupported() {
        assert!(closed_form(Family::Caterpillar, 3).is_err());
        assert!(closed_form(Family::Cycle, 2).is_err());
        assert!(closed_form(Family::Path, 0).is_err());
    }
}
