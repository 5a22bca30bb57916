//! The U, V, W and W-zeta acceleration schemes and Aitken's delta-squared.
//!
//! All four schemes evaluate the same two-argument kernel
//! `accel_value(m, n) = S^(n) + (-1)^(n+1) rho_m^(n)`; they only differ in
//! which index moves:
//!
//! | scheme  | reduite order `m` | partial-sum order |
//! |---------|-------------------|-------------------|
//! | U       | fixed             | `n`               |
//! | V       | `m`               | fixed             |
//! | W       | `n`               | `n`               |
//! | W-zeta  | `n`               | `zeta(n)`         |

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_traits::Zero;

use crate::contfrac::{convergent, convergents};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rational::ExactRational;
use crate::series::{partial_sum, PartialSums, SeriesParams};

/// A strictly increasing map `N -> N` selecting partial-sum orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extractor {
    Square,
    Cube,
    /// `n^e`, `e >= 2`.
    Power(u32),
    /// `base^n`, `base >= 2`.
    Geometric(u64),
    /// `c n`, `c >= 1`.
    Linear(u64),
    Identity,
}

impl Extractor {
    pub fn validate(self) -> Result<Self> {
        let ok = match self {
            Extractor::Power(e) => e >= 2,
            Extractor::Geometric(b) => b >= 2,
            Extractor::Linear(c) => c >= 1,
            _ => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidArgument(format!(
                "extractor {self} is not strictly increasing"
            )))
        }
    }

    /// `zeta(n)`; fails when the result does not fit in 64 bits.
    pub fn eval(self, n: u64) -> Result<u64> {
        let value = match self {
            Extractor::Square => n.checked_pow(2),
            Extractor::Cube => n.checked_pow(3),
            Extractor::Power(e) => n.checked_pow(e),
            Extractor::Geometric(b) => u32::try_from(n).ok().and_then(|n| b.checked_pow(n)),
            Extractor::Linear(c) => n.checked_mul(c),
            Extractor::Identity => Some(n),
        };
        value.ok_or(Error::ResourceGuard {
            what: "extracted partial-sum order",
            requested: u64::MAX,
            max: u64::MAX - 1,
        })
    }

    /// Whether `n = o(zeta(n))`, the condition for super-linear W-zeta.
    pub fn is_superlinear(self) -> bool {
        !matches!(self, Extractor::Linear(_) | Extractor::Identity)
    }
}

impl fmt::Display for Extractor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extractor::Square => f.write_str("square"),
            Extractor::Cube => f.write_str("cube"),
            Extractor::Power(e) => write!(f, "power:{e}"),
            Extractor::Geometric(b) => write!(f, "geometric:{b}"),
            Extractor::Linear(c) => write!(f, "linear:{c}"),
            Extractor::Identity => f.write_str("identity"),
        }
    }
}

impl FromStr for Extractor {
    type Err = Error;

    /// Accepts `square`, `cube`, `identity`, `power:E`, `geometric:B`, `linear:C`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown extractor {s:?}"));
        let (form, arg) = match s.split_once(':') {
            Some((form, arg)) => (form, Some(arg.parse::<u64>().map_err(|_| bad())?)),
            None => (s, None),
        };
        let parsed = match (form, arg) {
            ("square", None) => Extractor::Square,
            ("cube", None) => Extractor::Cube,
            ("identity", None) => Extractor::Identity,
            ("power", Some(e)) => Extractor::Power(u32::try_from(e).map_err(|_| bad())?),
            ("geometric", Some(b)) => Extractor::Geometric(b),
            ("linear", Some(c)) => Extractor::Linear(c),
            _ => return Err(bad()),
        };
        parsed.validate()
    }
}

/// One of the acceleration schemes, with its fixed index if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AccelKind {
    U { m: u64 },
    V { n: u64 },
    W,
    WZeta(Extractor),
}

impl AccelKind {
    /// The scheme's `index`-th term.
    pub fn value(self, params: SeriesParams, index: u64, limits: &Limits) -> Result<ExactRational> {
        match self {
            AccelKind::U { m } => accel_value(params, m, index, limits),
            AccelKind::V { n } => accel_value(params, index, n, limits),
            AccelKind::W => w_value(params, index, limits),
            AccelKind::WZeta(zeta) => w_zeta_value(params, zeta, index, limits),
        }
    }
}

impl fmt::Display for AccelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AccelKind::U { m } => write!(f, "U(m={m})"),
            AccelKind::V { n } => write!(f, "V(n={n})"),
            AccelKind::W => f.write_str("W"),
            AccelKind::WZeta(z) => write!(f, "W_zeta({z})"),
        }
    }
}

fn signed_remainder(n: u64, rho: ExactRational) -> ExactRational {
    // (-1)^(n+1) rho
    if n.is_multiple_of(2) {
        -rho
    } else {
        rho
    }
}

/// `S^(n) + (-1)^(n+1) rho_m^(n)`.
pub fn accel_value(params: SeriesParams, m: u64, n: u64, limits: &Limits) -> Result<ExactRational> {
    limits.check_order("reduite order", m)?;
    limits.check_order("partial-sum order", n)?;
    let rho = convergent(params, n, m).reduite();
    Ok(partial_sum(params, n) + signed_remainder(n, rho))
}

fn check_nonempty(range: &RangeInclusive<u64>) -> Result<()> {
    if range.is_empty() {
        Err(Error::InvalidArgument(format!(
            "empty index range {range:?}"
        )))
    } else {
        Ok(())
    }
}

/// U sequence of order `m`: `accel_value(m, n)` for `n` in `n_range`.
pub fn u_sequence(
    params: SeriesParams,
    m: u64,
    n_range: RangeInclusive<u64>,
    limits: &Limits,
) -> Result<Vec<ExactRational>> {
    check_nonempty(&n_range)?;
    limits.check_order("reduite order", m)?;
    limits.check_order("partial-sum order", *n_range.end())?;
    let len = (n_range.end() - n_range.start() + 1) as usize;
    Ok(PartialSums::starting_at(params, *n_range.start())
        .take(len)
        .map(|(n, s)| s + signed_remainder(n, convergent(params, n, m).reduite()))
        .collect())
}

/// V sequence of order `n`: `accel_value(m, n)` for `m` in `m_range`,
/// from a single convergent stream.
pub fn v_sequence(
    params: SeriesParams,
    n: u64,
    m_range: RangeInclusive<u64>,
    limits: &Limits,
) -> Result<Vec<ExactRational>> {
    check_nonempty(&m_range)?;
    limits.check_order("partial-sum order", n)?;
    let s = partial_sum(params, n);
    Ok(convergents(params, n, *m_range.end(), limits)?
        .skip(*m_range.start() as usize)
        .map(|c| &s + signed_remainder(n, c.reduite()))
        .collect())
}

/// `w^(n) = accel_value(n, n)`.
pub fn w_value(params: SeriesParams, n: u64, limits: &Limits) -> Result<ExactRational> {
    accel_value(params, n, n, limits)
}

/// `w_zeta^(n) = accel_value(n, zeta(n))`.
pub fn w_zeta_value(
    params: SeriesParams,
    zeta: Extractor,
    n: u64,
    limits: &Limits,
) -> Result<ExactRational> {
    let order = zeta.eval(n)?;
    accel_value(params, n, order, limits)
}

/// Aitken's delta-squared `(x2 x0 - x1^2) / ((x2 - x1) - (x1 - x0))`.
pub fn aitken_delta2(
    x0: &ExactRational,
    x1: &ExactRational,
    x2: &ExactRational,
) -> Result<ExactRational> {
    let second_difference = (x2 - x1) - (x1 - x0);
    if second_difference.is_zero() {
        return Err(Error::DegenerateDenominator);
    }
    Ok((x2 * x0 - x1 * x1) / second_difference)
}

/// Aitken's delta-squared applied to `(S^(n-2), S^(n-1), S^(n))` for each `n`.
pub fn aitken_sequence(
    params: SeriesParams,
    n_range: RangeInclusive<u64>,
    limits: &Limits,
) -> Result<Vec<ExactRational>> {
    check_nonempty(&n_range)?;
    let (start, end) = (*n_range.start(), *n_range.end());
    if start < 2 {
        return Err(Error::InvalidArgument(format!(
            "Aitken needs n >= 2, got {start}"
        )));
    }
    limits.check_order("partial-sum order", end)?;
    let sums: Vec<ExactRational> = PartialSums::starting_at(params, start - 2)
        .take((end - start + 3) as usize)
        .map(|(_, s)| s)
        .collect();
    sums.windows(3)
        .map(|w| aitken_delta2(&w[0], &w[1], &w[2]))
        .collect()
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

    const L: Limits = Limits {
        max_order: Limits::DEFAULT_MAX_ORDER,
        max_digits: Limits::DEFAULT_MAX_DIGITS,
        max_decimals: Limits::DEFAULT_MAX_DECIMALS,
    };

    #[test]
    fn kernel_examples() {
        assert_eq!(accel_value(params(2, 1), 0, 0, &L).unwrap(), q(3, 4));
        assert_eq!(accel_value(params(2, 1), 1, 1, &L).unwrap(), q(40, 51));
        let v = accel_value(params(2, 1), 4, 4, &L).unwrap();
        assert!((v - parse_decimal("0.785398135").unwrap()).abs() <= ten_pow(-9));
    }

    #[test]
    fn u_examples() {
        let u = u_sequence(params(2, 1), 0, 0..=2, &L).unwrap();
        assert_eq!(&u[..2], &[q(3, 4), q(19, 24)]);
        assert!((&u[2] - parse_decimal("0.78333").unwrap()).abs() <= ten_pow(-5));
        assert_eq!(
            u_sequence(params(2, 1), 3, 5..=5, &L).unwrap(),
            vec![accel_value(params(2, 1), 3, 5, &L).unwrap()]
        );
        assert_eq!(
            u_sequence(params(1, 2), 0, 0..=0, &L).unwrap(),
            vec![q(3, 10)]
        );
    }

    #[test]
    fn v_examples() {
        assert_eq!(
            v_sequence(params(1, 1), 0, 0..=1, &L).unwrap(),
            vec![q(2, 3), q(7, 10)]
        );
        let row = v_sequence(params(2, 1), 0, 0..=4, &L).unwrap();
        let expected = [
            "0.75000",
            "0.8000000",
            "0.77777778",
            "0.790123457",
            "0.782222222",
        ];
        for (value, shown) in row.iter().zip(expected) {
            let d = crate::rational::displayed_decimals(shown) as i64;
            assert!((value - parse_decimal(shown).unwrap()).abs() <= ten_pow(-d));
        }
        #[allow(clippy::reversed_empty_ranges)]
        let empty = v_sequence(params(1, 1), 0, 3..=2, &L);
        assert!(empty.is_err());
    }

    #[test]
    fn w_examples() {
        let w = w_value(params(1, 1), 5, &L).unwrap();
        assert!((w - parse_decimal("0.693147179886527").unwrap()).abs() <= ten_pow(-15));
        assert_eq!(w_value(params(1, 10), 0, &L).unwrap(), q(11, 210));
        let four_w = w_value(params(2, 1), 10, &L).unwrap() * q(4, 1);
        assert_eq!(four_w.to_string(), "3781715948011520/1203757572990973");
    }

    #[test]
    fn w_zeta_examples() {
        for n in 0..8 {
            assert_eq!(
                w_zeta_value(params(3, 2), Extractor::Identity, n, &L).unwrap(),
                w_value(params(3, 2), n, &L).unwrap()
            );
        }
        assert_eq!(
            w_zeta_value(params(2, 1), Extractor::Square, 1, &L).unwrap(),
            q(40, 51)
        );
        let small = Limits {
            max_order: 1000,
            ..L
        };
        assert!(matches!(
            w_zeta_value(params(2, 1), Extractor::Geometric(2), 20, &small),
            Err(Error::ResourceGuard { .. })
        ));
        assert!(Extractor::Geometric(10).eval(100).is_err());
    }

    #[test]
    fn extractor_parsing() {
        for z in [
            Extractor::Square,
            Extractor::Cube,
            Extractor::Power(4),
            Extractor::Geometric(2),
            Extractor::Linear(3),
            Extractor::Identity,
        ] {
            assert_eq!(z.to_string().parse::<Extractor>().unwrap(), z);
        }
        assert!("power:1".parse::<Extractor>().is_err());
        assert!("linear:0".parse::<Extractor>().is_err());
        assert!("geometric:1".parse::<Extractor>().is_err());
        assert!("triangle".parse::<Extractor>().is_err());
        assert!(Extractor::Square.is_superlinear());
        assert!(!Extractor::Linear(5).is_superlinear());
    }

    #[test]
    fn aitken_examples() {
        assert_eq!(
            aitken_delta2(&q(0, 1), &q(1, 2), &q(3, 4)).unwrap(),
            q(1, 1)
        );
        assert_eq!(
            aitken_delta2(&q(1, 1), &q(2, 3), &q(13, 15)).unwrap(),
            q(19, 24)
        );
        assert_eq!(
            aitken_delta2(&q(5, 7), &q(5, 7), &q(5, 7)),
            Err(Error::DegenerateDenominator)
        );
        assert_eq!(
            aitken_sequence(params(2, 1), 2..=2, &L).unwrap(),
            vec![q(19, 24)]
        );
        assert_eq!(
            aitken_sequence(params(1, 1), 2..=2, &L).unwrap(),
            vec![q(7, 10)]
        );
        assert_eq!(
            aitken_sequence(params(1, 2), 3..=3, &L).unwrap(),
            vec![accel_value(params(1, 2), 0, 2, &L).unwrap()]
        );
        assert!(aitken_sequence(params(1, 1), 1..=4, &L).is_err());
    }

    proptest! {
        #[test]
        fn u_and_v_read_the_same_kernel(p in 1u64..6, qq in 1u64..6, m in 0u64..12, n in 0u64..12) {
            let params = params(p, qq);
            let u = u_sequence(params, m, n..=n, &L).unwrap();
            let v = v_sequence(params, n, m..=m, &L).unwrap();
            prop_assert_eq!(&u, &v);
            prop_assert_eq!(&u[0], &accel_value(params, m, n, &L).unwrap());
        }

        #[test]
        fn w_is_the_diagonal(p in 1u64..6, qq in 1u64..6, n in 0u64..20) {
            let params = params(p, qq);
            prop_assert_eq!(w_value(params, n, &L).unwrap(), accel_value(params, n, n, &L).unwrap());
        }

        #[test]
        fn aitken_equals_u_of_order_zero(p in 1u64..8, qq in 1u64..8, n in 2u64..40) {
            let params = params(p, qq);
            let aitken = aitken_sequence(params, n..=n, &L).unwrap();
            prop_assert_eq!(&aitken[0], &accel_value(params, 0, n - 1, &L).unwrap());
        }
    }
}
