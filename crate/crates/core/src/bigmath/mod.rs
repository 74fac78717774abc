//! Arbitrary-precision integer and rational kernel, plus certified
//! enclosures of `e^x`, `sin x`, `cos x` and `pi`.
//!
//! Integers and rationals are GMP-backed (`rug`); rationals are always kept
//! reduced with a positive denominator.

mod enclosure;
mod series;

pub use enclosure::Enclosure;
use rug::ops::Pow;
pub use rug::{Integer, Rational};
pub use series::{
    enclose_arctan_recip, enclose_cos, enclose_e, enclose_exp, enclose_pi, enclose_sin,
};

pub(crate) use enclosure::bits_for;
pub(crate) use series::{check_eps, hypergeometric_partial_sum};

fn small(n: u64) -> u32 {
    u32::try_from(n).expect("argument exceeds u32 range")
}

/// `n!`. Panics if `n` does not fit in a `u32`.
pub fn factorial(n: u64) -> Integer {
    Integer::from(Integer::factorial(small(n)))
}

/// Binomial coefficient `C(m, n)`, zero when `n > m`.
pub fn binomial(m: u64, n: u64) -> Integer {
    if n > m {
        return Integer::new();
    }
    Integer::from(Integer::binomial_u(small(m), small(n)))
}

/// `10^-k` as an exact rational.
pub fn ten_to_minus(k: u32) -> Rational {
    Rational::from((1, Integer::from(10).pow(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn product_oracle(n: u64) -> Integer {
        let mut acc = Integer::from(1);
        for k in 1..=n {
            acc *= k;
        }
        acc
    }

    fn pascal_row(m: usize) -> Vec<Integer> {
        let mut row = vec![Integer::from(1)];
        for _ in 0..m {
            let mut next = vec![Integer::from(1)];
            for w in row.windows(2) {
                next.push(Integer::from(&w[0] + &w[1]));
            }
            next.push(Integer::from(1));
            row = next;
        }
        row
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(factorial(0), 1);
        assert_eq!(factorial(5), 120);
        assert_eq!(factorial(20), product_oracle(20));
        assert_eq!(
            factorial(20),
            "2432902008176640000".parse::<Integer>().unwrap()
        );
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), 6);
        for m in 0..20 {
            assert_eq!(binomial(m, 0), 1);
        }
        assert_eq!(binomial(10, 5), pascal_row(10)[5]);
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(3, 7), 0);
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        for m in 0..30usize {
            let row = pascal_row(m);
            for (n, v) in row.iter().enumerate() {
                assert_eq!(&binomial(m as u64, n as u64), v);
            }
        }
    }

    proptest! {
        #[test]
        fn factorial_recurrence(n in 0u64..300) {
            prop_assert_eq!(factorial(n + 1), factorial(n) * (n + 1));
        }

        #[test]
        fn pascal_rule(m in 1u64..200, n in 1u64..200) {
            prop_assert_eq!(binomial(m, n), binomial(m - 1, n - 1) + binomial(m - 1, n));
        }
    }
}
