//! Convergents of the remainder continued fraction.
//!
//! For fixed `(p, q, n)` the remainder `R^(n) = |S - S^(n)|` expands as
//!
//! ```text
//!            1
//! R = ----------------------
//!     a + (1p)^2
//!         -----------------
//!         a + (2p)^2
//!             ------------
//!             a + ...
//! ```
//!
//! with `a = alpha(n) = 2pn + p + 2q`. The order-`m` truncation is
//! `A_m / B_m` where both sequences obey
//! `X_{m+2} = a X_{m+1} + p^2 (m+2)^2 X_m` with `A_0 = 1, A_1 = a` and
//! `B_0 = a, B_1 = a^2 + p^2`. `A` and `B` are kept unreduced.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::Result;
use crate::limits::Limits;
use crate::rational::ExactRational;
use crate::series::{alpha, partial_sum, SeriesParams};

/// Raw recurrence values at partial-sum order `n` and reduite order `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentPair {
    pub n: u64,
    pub m: u64,
    pub a: BigInt,
    pub b: BigInt,
}

impl ConvergentPair {
    /// `A_m / B_m` in lowest terms.
    pub fn reduite(&self) -> ExactRational {
        ExactRational::new(self.a.clone(), self.b.clone())
    }
}

/// Streaming iterator over `ConvergentPair`s for `m = 0, 1, ..., m_max`.
///
/// Keeps only the two latest pairs.
#[derive(Debug, Clone)]
pub struct Convergents {
    n: u64,
    alpha: BigInt,
    p_squared: BigInt,
    next_m: u64,
    m_max: u64,
    prev: Option<(BigInt, BigInt)>,
    cur: Option<(BigInt, BigInt)>,
}

impl Convergents {
    fn new(params: SeriesParams, n: u64, m_max: u64) -> Self {
        let p = BigInt::from(params.p());
        Self {
            n,
            alpha: alpha(params, n),
            p_squared: &p * &p,
            next_m: 0,
            m_max,
            prev: None,
            cur: None,
        }
    }
}

impl Iterator for Convergents {
    type Item = ConvergentPair;

    fn next(&mut self) -> Option<ConvergentPair> {
        let m = self.next_m;
        if m > self.m_max {
            return None;
        }
        let (a, b) = match (self.prev.take(), self.cur.take()) {
            (_, None) => (BigInt::one(), self.alpha.clone()),
            (None, Some(cur)) => {
                let b1 = &self.alpha * &self.alpha + &self.p_squared;
                self.prev = Some(cur);
                (self.alpha.clone(), b1)
            }
            (Some((pa, pb)), Some((ca, cb))) => {
                let coeff = &self.p_squared * (m * m);
                let a = &self.alpha * &ca + &coeff * pa;
                let b = &self.alpha * &cb + coeff * pb;
                self.prev = Some((ca, cb));
                (a, b)
            }
        };
        self.cur = Some((a.clone(), b.clone()));
        self.next_m += 1;
        Some(ConvergentPair { n: self.n, m, a, b })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.m_max + 1).saturating_sub(self.next_m) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Convergents {}

/// Convergents for `m = 0..=m_max`, guarded by `limits.max_order`.
pub fn convergents(
    params: SeriesParams,
    n: u64,
    m_max: u64,
    limits: &Limits,
) -> Result<Convergents> {
    limits.check_order("reduite order", m_max)?;
    Ok(Convergents::new(params, n, m_max))
}

// Last two pairs (orders m_max - 1 and m_max) of an unguarded stream.
fn last_two(params: SeriesParams, n: u64, m_max: u64) -> (ConvergentPair, ConvergentPair) {
    assert!(m_max >= 1);
    let mut it = Convergents::new(params, n, m_max).skip(m_max as usize - 1);
    let first = it.next().expect("stream has m_max + 1 items");
    let second = it.next().expect("stream has m_max + 1 items");
    (first, second)
}

pub(crate) fn convergent(params: SeriesParams, n: u64, m: u64) -> ConvergentPair {
    Convergents::new(params, n, m)
        .last()
        .expect("stream is never empty")
}

/// The order-`m` reduite `rho_m^(n) = A_m / B_m`.
pub fn reduite(params: SeriesParams, n: u64, m: u64, limits: &Limits) -> Result<ExactRational> {
    limits.check_order("reduite order", m)?;
    Ok(convergent(params, n, m).reduite())
}

/// `A_{m+1} B_m - A_m B_{m+1}`, computed from the recurrence values.
pub fn determinant(params: SeriesParams, n: u64, m: u64) -> BigInt {
    let (lo, hi) = last_two(params, n, m + 1);
    &hi.a * &lo.b - &lo.a * &hi.b
}

/// Closed form `(-1)^(m+1) p^(2m+2) ((m+1)!)^2` of [`determinant`].
pub fn determinant_closed_form(p: u64, m: u64) -> BigInt {
    let fact: BigInt = (1..=m + 1).map(BigInt::from).product();
    let magnitude = num_traits::pow(BigInt::from(p), 2 * m as usize + 2) * &fact * &fact;
    if m.is_multiple_of(2) {
        -magnitude
    } else {
        magnitude
    }
}

/// What an [`Enclosure`] is certified to contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnclosureTarget {
    /// The remainder `R^(n)` after rank `n`.
    Remainder { n: u64 },
    /// The series sum `S(p, q)`.
    Sum,
}

/// Closed rational interval `[lo, hi]` containing a target real.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: ExactRational,
    pub hi: ExactRational,
    pub target: EnclosureTarget,
}

impl Enclosure {
    pub fn width(&self) -> ExactRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> ExactRational {
        (&self.lo + &self.hi) / ExactRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &ExactRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_subset_of(&self, other: &Enclosure) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersects(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

fn ordered(x: ExactRational, y: ExactRational) -> (ExactRational, ExactRational) {
    match x.cmp(&y) {
        Ordering::Greater => (y, x),
        _ => (x, y),
    }
}

/// `[min(rho_m, rho_{m+1}), max(rho_m, rho_{m+1})]`, which contains `R^(n)`
/// because even and odd reduites approach it from opposite sides.
pub fn remainder_enclosure(params: SeriesParams, n: u64, m: u64) -> Enclosure {
    let (lo, hi) = last_two(params, n, m + 1);
    let (lo, hi) = ordered(lo.reduite(), hi.reduite());
    Enclosure {
        lo,
        hi,
        target: EnclosureTarget::Remainder { n },
    }
}

/// The remainder enclosure mapped through `x -> S^(n) + (-1)^(n+1) x`.
pub fn sum_enclosure(params: SeriesParams, n: u64, m: u64) -> Enclosure {
    let r = remainder_enclosure(params, n, m);
    let s = partial_sum(params, n);
    let (lo, hi) = if n.is_multiple_of(2) {
        (&s - r.hi, s - r.lo)
    } else {
        (&s + r.lo, s + r.hi)
    };
    Enclosure {
        lo,
        hi,
        target: EnclosureTarget::Sum,
    }
}

/// Integer bounds on `B_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BBounds {
    /// `alpha^(m+1)`.
    pub lower: BigInt,
    /// `alpha^(m+1) + m(m+1)(2m+1)/6 * p^2 * alpha^(m-1)`, defined for `m >= 1`.
    pub refined_lower: Option<BigInt>,
    /// `(alpha + pm)^(m+1)`.
    pub upper: BigInt,
}

impl BBounds {
    pub fn new(params: SeriesParams, n: u64, m: u64) -> Self {
        let a = alpha(params, n);
        let p = BigInt::from(params.p());
        let e = m as usize + 1;
        let lower = num_traits::pow(a.clone(), e);
        let refined_lower = (m >= 1).then(|| {
            let k = BigInt::from(m) * (m + 1) * (2 * m + 1) / 6;
            &lower + k * &p * &p * num_traits::pow(a.clone(), e - 2)
        });
        let upper = num_traits::pow(a + p * m, e);
        Self {
            lower,
            refined_lower,
            upper,
        }
    }

    pub fn admits(&self, b: &BigInt) -> bool {
        let lower = self.refined_lower.as_ref().unwrap_or(&self.lower);
        &self.lower <= b && lower <= b && b <= &self.upper
    }
}

/// Exact width `p^(2m+2) ((m+1)!)^2 / (B_m B_{m+1})` of the order-`m`
/// remainder enclosure.
pub fn enclosure_width_formula(params: SeriesParams, n: u64, m: u64) -> ExactRational {
    let (lo, hi) = last_two(params, n, m + 1);
    ExactRational::new(determinant_closed_form(params.p(), m).abs(), lo.b * hi.b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_decimal;

    fn params(p: u64, q: u64) -> SeriesParams {
        SeriesParams::new(p, q).unwrap()
    }

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    fn pairs(p: u64, qq: u64, n: u64, m_max: u64) -> Vec<(i64, i64)> {
        convergents(params(p, qq), n, m_max, &Limits::default())
            .unwrap()
            .map(|c| (c.a.try_into().unwrap(), c.b.try_into().unwrap()))
            .collect()
    }

    #[test]
    fn first_convergents() {
        assert_eq!(pairs(2, 1, 0, 2), vec![(1, 4), (4, 20), (32, 144)]);
        assert_eq!(pairs(1, 1, 0, 2), vec![(1, 3), (3, 10), (13, 42)]);
    }

    #[test]
    fn reduites_match_nested_fraction() {
        let l = Limits::default();
        assert_eq!(reduite(params(2, 1), 0, 0, &l).unwrap(), q(1, 4));
        assert_eq!(reduite(params(2, 1), 0, 1, &l).unwrap(), q(1, 5));
        // 1 / (4 + 4 / (4 + 16 / 4))
        assert_eq!(reduite(params(2, 1), 0, 2, &l).unwrap(), q(2, 9));
        for (p, qq, n) in [(1, 1, 0), (3, 7, 4), (5, 2, 11)] {
            let a = alpha(params(p, qq), n);
            assert_eq!(
                reduite(params(p, qq), n, 0, &l).unwrap(),
                ExactRational::new(1.into(), a)
            );
        }
    }

    // Direct bottom-up evaluation of the truncated fraction.
    fn nested(params: SeriesParams, n: u64, m: u64) -> ExactRational {
        let a = ExactRational::from_integer(alpha(params, n));
        let mut tail = a.clone();
        for k in (1..=m).rev() {
            let num = ExactRational::from_integer(BigInt::from(k * params.p()).pow(2));
            tail = &a + num / tail;
        }
        ExactRational::from_integer(1.into()) / tail
    }

    #[test]
    fn recurrence_agrees_with_nested_evaluation() {
        for (p, qq, n) in [(1, 1, 0), (2, 1, 3), (4, 9, 2), (7, 3, 10)] {
            for m in 0..15 {
                let c = convergent(params(p, qq), n, m);
                assert_eq!(c.reduite(), nested(params(p, qq), n, m), "{p} {qq} {n} {m}");
            }
        }
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(params(2, 1), 0, 0), BigInt::from(-4));
        assert_eq!(determinant(params(2, 1), 0, 1), BigInt::from(64));
        assert_eq!(determinant(params(1, 1), 2, 2), BigInt::from(-36));
        assert_eq!(determinant_closed_form(2, 1), BigInt::from(64));
    }

    #[test]
    fn enclosure_examples() {
        let r = remainder_enclosure(params(2, 1), 0, 0);
        assert_eq!((r.lo.clone(), r.hi.clone()), (q(1, 5), q(1, 4)));
        assert_eq!(r.width(), q(1, 20));
        assert_eq!(r.width(), enclosure_width_formula(params(2, 1), 0, 0));

        let r = remainder_enclosure(params(1, 1), 0, 1);
        assert_eq!((r.lo.clone(), r.hi.clone()), (q(3, 10), q(13, 42)));
        // 1 - ln 2 = 0.3068528...
        assert!(r.contains(&parse_decimal("0.3068528194").unwrap()));

        let s = sum_enclosure(params(2, 1), 0, 0);
        assert_eq!((s.lo.clone(), s.hi.clone()), (q(3, 4), q(4, 5)));
        assert_eq!(s.target, EnclosureTarget::Sum);
        assert!(s.contains(&parse_decimal("0.7853981634").unwrap()));

        let s = sum_enclosure(params(1, 1), 0, 5);
        assert!(s.contains(&parse_decimal("0.6931471806").unwrap()));
    }

    #[test]
    fn odd_n_enclosure_keeps_order() {
        let s = sum_enclosure(params(2, 1), 3, 4);
        assert!(s.lo < s.hi);
        assert!(s.contains(&parse_decimal("0.785398163397").unwrap()));
    }

    #[test]
    fn enclosures_nest_in_steps_of_two() {
        for n in [0, 1, 4] {
            for m in 0..12 {
                let outer = sum_enclosure(params(3, 2), n, m);
                let inner = sum_enclosure(params(3, 2), n, m + 2);
                assert!(inner.is_subset_of(&outer), "n={n} m={m}");
                assert_eq!(outer.width(), enclosure_width_formula(params(3, 2), n, m));
            }
        }
    }

    #[test]
    fn raw_pairs_may_share_factors() {
        // With p even, alpha is even and A_1 = alpha, B_1 = alpha^2 + p^2
        // share the factor 2.
        let found = (0..30).any(|m| {
            let c = convergent(params(2, 2), 1, m);
            num_integer::Integer::gcd(&c.a, &c.b) > BigInt::one()
        });
        assert!(found);
        for m in 0..30 {
            let c = convergent(params(2, 2), 1, m);
            assert_eq!(c.reduite(), ExactRational::new(c.a.clone(), c.b.clone()));
        }
    }

    #[test]
    fn guard_rejects_large_orders() {
        let limits = Limits {
            max_order: 10,
            ..Limits::default()
        };
        assert!(convergents(params(1, 1), 0, 11, &limits).is_err());
        assert!(reduite(params(1, 1), 0, 11, &limits).is_err());
        assert!(reduite(params(1, 1), 0, 10, &limits).is_ok());
    }

    #[test]
    fn b_bounds_small_orders() {
        for m in 0..40 {
            let c = convergent(params(2, 3), 5, m);
            assert!(BBounds::new(params(2, 3), 5, m).admits(&c.b), "m={m}");
        }
    }
}
