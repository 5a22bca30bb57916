//! Exact rationals and their decimal / logarithmic views.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type ExactRational = num_rational::BigRational;

const LOG10_2: f64 = std::f64::consts::LOG10_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rounding {
    /// Round to nearest, ties to the even last digit.
    HalfEven,
    /// Drop the excess digits (round toward zero).
    Truncate,
}

/// A fixed-point decimal: `(-1)^negative * digits * 10^exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecimalRendering {
    pub negative: bool,
    /// Unsigned integer mantissa, in base 10, without leading zeros.
    pub digits: String,
    /// Always `-decimals`.
    pub exponent: i64,
    pub mode: Rounding,
}

impl DecimalRendering {
    pub fn decimals(&self) -> usize {
        (-self.exponent) as usize
    }

    /// The exact rational value of the rendered string.
    pub fn to_rational(&self) -> ExactRational {
        let mantissa: BigInt = self.digits.parse().expect("mantissa is a base-10 integer");
        let value = ExactRational::new(mantissa, pow10(self.decimals() as u32));
        if self.negative {
            -value
        } else {
            value
        }
    }
}

impl fmt::Display for DecimalRendering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.decimals();
        let padded = format!("{:0>width$}", self.digits, width = d + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - d);
        if self.negative {
            f.write_str("-")?;
        }
        f.write_str(int_part)?;
        if d > 0 {
            write!(f, ".{frac_part}")?;
        }
        Ok(())
    }
}

pub fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), e as usize)
}

/// Renders `x` with exactly `decimals` digits after the point.
pub fn to_decimal(
    x: &ExactRational,
    decimals: u64,
    mode: Rounding,
    limits: &Limits,
) -> Result<DecimalRendering> {
    limits.check_decimals(decimals)?;
    let scaled = x.abs() * ExactRational::from_integer(pow10(decimals as u32));
    let (mut q, r) = scaled.numer().div_rem(scaled.denom());
    if mode == Rounding::HalfEven {
        let twice: BigInt = &r * 2u32;
        match twice.cmp(scaled.denom()) {
            std::cmp::Ordering::Greater => q += 1u32,
            std::cmp::Ordering::Equal if q.is_odd() => q += 1u32,
            _ => {}
        }
    }
    Ok(DecimalRendering {
        negative: x.is_negative() && !q.is_zero(),
        digits: q.to_string(),
        exponent: -(decimals as i64),
        mode,
    })
}

/// Parses a plain decimal such as `-0.785398`, `3`, or `0,75000` (a comma
/// is accepted as the decimal separator).
pub fn parse_decimal(s: &str) -> Result<ExactRational> {
    let bad = || Error::ParseDecimal(s.to_string());
    let t = s.trim();
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let body: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    let (int_part, frac_part) = match body.find(['.', ',']) {
        Some(i) => (&body[..i], &body[i + 1..]),
        None => (body.as_str(), ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let mantissa: BigInt = format!("0{int_part}{frac_part}")
        .parse()
        .map_err(|_| bad())?;
    let value = ExactRational::new(mantissa, pow10(frac_part.len() as u32));
    Ok(if negative { -value } else { value })
}

/// Number of digits after the decimal separator in a displayed value.
pub fn displayed_decimals(s: &str) -> usize {
    s.find(['.', ',']).map_or(0, |i| s.len() - i - 1)
}

fn log10_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_u64().expect("fits in 64 bits") as f64;
    top.log10() + shift as f64 * LOG10_2
}

/// `log10 |x|`; `-inf` for zero. Accurate to about 1e-15 relative.
pub fn log10_abs(x: &ExactRational) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    log10_biguint(x.numer().magnitude()) - log10_biguint(x.denom().magnitude())
}

/// Floating-point view of `x`, without overflow for huge numerators and
/// denominators (underflows to 0 below ~1e-308).
pub fn to_f64(x: &ExactRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let magnitude = 10f64.powf(log10_abs(x));
    if x.numer().sign() == Sign::Minus {
        -magnitude
    } else {
        magnitude
    }
}

/// `floor(-log10 x)` for `x > 0`, computed exactly.
pub fn floor_neg_log10(x: &ExactRational) -> i64 {
    assert!(x.is_positive(), "floor_neg_log10 needs a positive argument");
    let mut k = (-log10_abs(x)).floor() as i64;
    // k is the answer iff 10^-(k+1) < x <= 10^-k.
    loop {
        if x > &ten_pow(-k) {
            k -= 1;
        } else if x <= &ten_pow(-(k + 1)) {
            k += 1;
        } else {
            return k;
        }
    }
}

/// `10^e` as an exact rational, for any sign of `e`.
pub fn ten_pow(e: i64) -> ExactRational {
    let p = pow10(e.unsigned_abs() as u32);
    if e >= 0 {
        ExactRational::from_integer(p)
    } else {
        ExactRational::new(BigInt::one(), p)
    }
}

/// `|x|` rendered in scientific notation with `sig` significant digits.
/// Exact down to the last printed digit (truncated, not rounded).
pub fn to_scientific(x: &ExactRational, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let sig = sig.max(1);
    let a = x.abs();
    // a = m * 10^e with 1 <= m < 10
    let e = -floor_neg_log10(&a) - 1;
    let e = if a >= ten_pow(e + 1) { e + 1 } else { e };
    let scaled = &a * ten_pow(sig as i64 - 1 - e);
    let int = scaled.to_integer().to_string();
    let (lead, rest) = int.split_at(1);
    let sign = if x.is_negative() { "-" } else { "" };
    if rest.is_empty() {
        format!("{sign}{lead}e{e}")
    } else {
        format!("{sign}{lead}.{rest}e{e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    fn render(x: &ExactRational, d: u64, mode: Rounding) -> String {
        to_decimal(x, d, mode, &Limits::default())
            .unwrap()
            .to_string()
    }

    #[test]
    fn decimal_examples() {
        assert_eq!(render(&q(1, 4), 3, Rounding::HalfEven), "0.250");
        assert_eq!(render(&q(2, 3), 5, Rounding::HalfEven), "0.66667");
        assert_eq!(render(&q(19, 24), 6, Rounding::Truncate), "0.791666");
        assert_eq!(render(&q(19, 24), 6, Rounding::HalfEven), "0.791667");
    }

    #[test]
    fn decimal_ties_and_signs() {
        assert_eq!(render(&q(1, 8), 2, Rounding::HalfEven), "0.12");
        assert_eq!(render(&q(3, 8), 2, Rounding::HalfEven), "0.38");
        assert_eq!(render(&q(-2, 3), 3, Rounding::Truncate), "-0.666");
        assert_eq!(render(&q(-1, 1000), 2, Rounding::HalfEven), "0.00");
        assert_eq!(render(&q(7, 2), 0, Rounding::HalfEven), "4");
        assert_eq!(render(&q(123, 1), 1, Rounding::HalfEven), "123.0");
    }

    #[test]
    fn decimal_guard() {
        let limits = Limits {
            max_decimals: 10,
            ..Limits::default()
        };
        assert!(matches!(
            to_decimal(&q(1, 3), 11, Rounding::HalfEven, &limits),
            Err(Error::ResourceGuard { .. })
        ));
    }

    #[test]
    fn parse_accepts_comma() {
        assert_eq!(parse_decimal("0,75000").unwrap(), q(3, 4));
        assert_eq!(parse_decimal("-1.5").unwrap(), q(-3, 2));
        assert_eq!(parse_decimal("3").unwrap(), q(3, 1));
        assert_eq!(parse_decimal(".5").unwrap(), q(1, 2));
        assert!(parse_decimal("").is_err());
        assert!(parse_decimal("1.2.3").is_err());
        assert!(parse_decimal("abc").is_err());
        assert_eq!(displayed_decimals("0,787873"), 6);
        assert_eq!(displayed_decimals("12"), 0);
    }

    #[test]
    fn logs() {
        assert!((log10_abs(&q(1, 1000)) + 3.0).abs() < 1e-14);
        assert_eq!(floor_neg_log10(&q(1, 1000)), 3);
        assert_eq!(floor_neg_log10(&q(999, 1_000_000)), 3);
        assert_eq!(floor_neg_log10(&q(1001, 1_000_000)), 2);
        assert_eq!(floor_neg_log10(&q(5, 1)), -1);
        let huge = ExactRational::new(1.into(), pow10(2000) * 3);
        assert_eq!(floor_neg_log10(&huge), 2000);
        assert!((to_f64(&q(-3, 4)) + 0.75).abs() < 1e-15);
        assert_eq!(to_scientific(&q(1, 8), 3), "1.25e-1");
        assert_eq!(to_scientific(&q(-12345, 1), 2), "-1.2e4");
        assert_eq!(to_scientific(&q(1, 1000), 1), "1e-3");
    }

    proptest! {
        #[test]
        fn rendering_reparses_within_one_ulp(n in -10_000_000i64..10_000_000, d in 1i64..100_000, dec in 0u64..30) {
            let x = q(n, d);
            for mode in [Rounding::HalfEven, Rounding::Truncate] {
                let r = to_decimal(&x, dec, mode, &Limits::default()).unwrap();
                let back = parse_decimal(&r.to_string()).unwrap();
                prop_assert_eq!(&back, &r.to_rational());
                prop_assert!((back - &x).abs() < ten_pow(-(dec as i64)));
            }
        }
    }
}
