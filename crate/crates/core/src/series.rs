//! CHA series terms and partial sums.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Parameters `(p, q)` of the series `sum_k (-1)^k / (pk + q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeriesParams {
    p: u64,
    q: u64,
}

impl SeriesParams {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidParams { p, q });
        }
        Ok(Self { p, q })
    }

    /// Series step.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Series offset.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Denominator `pk + q` of the k-th term.
    pub fn denominator(&self, k: u64) -> BigInt {
        BigInt::from(self.p) * k + self.q
    }
}

impl fmt::Display for SeriesParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.p, self.q)
    }
}

/// Partial denominator `2pn + p + 2q` of the remainder continued fraction.
pub fn alpha(params: SeriesParams, n: u64) -> BigInt {
    let p = BigInt::from(params.p);
    BigInt::from(2u32) * &p * n + p + 2 * params.q
}

/// `(-1)^k / (pk + q)`.
pub fn term(params: SeriesParams, k: u64) -> ExactRational {
    let num = if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    ExactRational::new(num, params.denominator(k))
}

/// `S^(n) = sum_{k=0..=n} (-1)^k / (pk + q)`.
///
/// Summed by binary splitting over unreduced fractions, with a single gcd
/// reduction at the end.
pub fn partial_sum(params: SeriesParams, n: u64) -> ExactRational {
    let (num, den) = split_sum(params, 0, n + 1);
    ExactRational::new(num, den)
}

// Sum over k in [lo, hi) as an unreduced num/den pair.
fn split_sum(params: SeriesParams, lo: u64, hi: u64) -> (BigInt, BigInt) {
    match hi - lo {
        0 => (BigInt::zero(), BigInt::one()),
        1 => {
            let sign = if lo.is_multiple_of(2) { 1 } else { -1 };
            (BigInt::from(sign), params.denominator(lo))
        }
        len => {
            let mid = lo + len / 2;
            let (ln, ld) = split_sum(params, lo, mid);
            let (rn, rd) = split_sum(params, mid, hi);
            (ln * &rd + rn * &ld, ld * rd)
        }
    }
}

/// Streams `(n, S^(n))` for `n = start, start+1, ...`, adding one term per step.
#[derive(Debug, Clone)]
pub struct PartialSums {
    params: SeriesParams,
    next: u64,
    current: ExactRational,
}

impl PartialSums {
    pub fn starting_at(params: SeriesParams, start: u64) -> Self {
        Self {
            params,
            next: start,
            current: partial_sum(params, start) - term(params, start),
        }
    }
}

impl Iterator for PartialSums {
    type Item = (u64, ExactRational);

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.next;
        self.current += term(self.params, n);
        self.next += 1;
        Some((n, self.current.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse_decimal, ten_pow};
    use num_traits::Signed;
    use proptest::prelude::*;

    fn params(p: u64, q: u64) -> SeriesParams {
        SeriesParams::new(p, q).unwrap()
    }

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    #[test]
    fn rejects_zero_params() {
        assert_eq!(
            SeriesParams::new(0, 1),
            Err(Error::InvalidParams { p: 0, q: 1 })
        );
        assert!(SeriesParams::new(1, 0).is_err());
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(params(2, 1), 0), 4.into());
        assert_eq!(alpha(params(2, 1), 1), 8.into());
        assert_eq!(alpha(params(1, 2), 3), 11.into());
    }

    #[test]
    fn term_examples() {
        assert_eq!(term(params(2, 1), 0), q(1, 1));
        assert_eq!(term(params(2, 1), 1), q(-1, 3));
        assert_eq!(term(params(1, 2), 2), q(1, 4));
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(partial_sum(params(2, 1), 0), q(1, 1));
        assert_eq!(partial_sum(params(2, 1), 1), q(2, 3));
        assert_eq!(partial_sum(params(2, 1), 2), q(13, 15));
        let tol = ten_pow(-6);
        let s = partial_sum(params(2, 1), 100);
        assert!((s - parse_decimal("0.787873").unwrap()).abs() <= tol);
        let s = partial_sum(params(1, 2), 1000);
        assert!((s - parse_decimal("0.307351").unwrap()).abs() <= tol);
    }

    #[test]
    fn stream_matches_direct() {
        let p = params(3, 5);
        for (n, s) in PartialSums::starting_at(p, 4).take(20) {
            assert_eq!(s, partial_sum(p, n));
        }
    }

    proptest! {
        #[test]
        fn consecutive_sums_differ_by_a_term(p in 1u64..20, qq in 1u64..20, n in 0u64..200) {
            let params = params(p, qq);
            prop_assert_eq!(partial_sum(params, n + 1) - partial_sum(params, n), term(params, n + 1));
        }

        #[test]
        fn alpha_steps_by_2p(p in 1u64..1000, qq in 1u64..1000, n in 0u64..1_000_000) {
            let params = params(p, qq);
            prop_assert_eq!(alpha(params, n + 1) - alpha(params, n), BigInt::from(2 * p));
        }

        #[test]
        fn binary_splitting_matches_naive(p in 1u64..10, qq in 1u64..10, n in 0u64..60) {
            let params = params(p, qq);
            let naive = (0..=n).fold(ExactRational::zero(), |acc, k| acc + term(params, k));
            prop_assert_eq!(partial_sum(params, n), naive);
        }
    }
}
