//! Certified reference values of `S(p, q)`.
//!
//! The reference is the diagonal sum enclosure at order `k`, whose width
//! shrinks by roughly `4e^2` (about 1.47 decimal digits) per step. No
//! floating point is involved in producing or using it.

use std::collections::HashMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{Signed, Zero};

use crate::contfrac::{sum_enclosure, Enclosure, EnclosureTarget};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rational::{floor_neg_log10, log10_abs, ten_pow, ExactRational};
use crate::series::SeriesParams;

/// An enclosure of `S(p, q)` of width below `10^-guaranteed_digits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceSum {
    pub params: SeriesParams,
    pub enclosure: Enclosure,
    pub guaranteed_digits: u64,
    /// The diagonal order `k` of the enclosure `sum_enclosure(k, k)`.
    pub order_used: u64,
}

/// First diagonal order tried for `digits` certified digits.
pub fn initial_order(digits: u64) -> u64 {
    (digits as f64 / 1.4).ceil() as u64 + 8
}

/// Computes a certified enclosure of `S(p, q)` narrower than
/// `10^-target_digits`, doubling the diagonal order until it is.
pub fn reference_sum(
    params: SeriesParams,
    target_digits: u64,
    limits: &Limits,
) -> Result<ReferenceSum> {
    if target_digits == 0 {
        return Err(Error::InvalidArgument(
            "target digits must be positive".into(),
        ));
    }
    limits.check_digits(target_digits)?;
    let bound = ten_pow(-(target_digits as i64));
    let mut k = initial_order(target_digits);
    loop {
        limits.check_order("oracle order", k + 1)?;
        let enclosure = sum_enclosure(params, k, k);
        if enclosure.width() < bound {
            return Ok(ReferenceSum {
                params,
                enclosure,
                guaranteed_digits: target_digits,
                order_used: k,
            });
        }
        k *= 2;
    }
}

type CacheMap = HashMap<(SeriesParams, u64), Arc<ReferenceSum>>;

fn cache() -> &'static RwLock<CacheMap> {
    static CACHE: OnceLock<RwLock<CacheMap>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// [`reference_sum`] memoized process-wide on `(params, digits)`.
pub fn cached_reference_sum(
    params: SeriesParams,
    target_digits: u64,
    limits: &Limits,
) -> Result<Arc<ReferenceSum>> {
    limits.check_digits(target_digits)?;
    if let Some(hit) = cache().read().unwrap().get(&(params, target_digits)) {
        return Ok(Arc::clone(hit));
    }
    let fresh = Arc::new(reference_sum(params, target_digits, limits)?);
    let mut map = cache().write().unwrap();
    Ok(Arc::clone(
        map.entry((params, target_digits)).or_insert(fresh),
    ))
}

/// Exact bounds on `|x - S|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorInterval {
    pub lo: ExactRational,
    pub hi: ExactRational,
}

impl ErrorInterval {
    /// `(hi - lo) / lo`, or infinity when `lo` is zero.
    pub fn relative_width(&self) -> f64 {
        if self.lo.is_zero() {
            return f64::INFINITY;
        }
        10f64.powf(log10_abs(&((&self.hi - &self.lo) / &self.lo)))
    }

    pub fn is_resolved(&self, rel_tol: f64) -> bool {
        !self.lo.is_zero() && self.relative_width() < rel_tol
    }

    pub fn log10_hi(&self) -> f64 {
        log10_abs(&self.hi)
    }

    pub fn log10_lo(&self) -> f64 {
        log10_abs(&self.lo)
    }
}

/// All possible values of `|x - S|` given `S` in the reference enclosure.
pub fn certified_error(x: &ExactRational, reference: &ReferenceSum) -> ErrorInterval {
    let Enclosure { lo, hi, .. } = &reference.enclosure;
    if x < lo {
        ErrorInterval {
            lo: lo - x,
            hi: hi - x,
        }
    } else if x > hi {
        ErrorInterval {
            lo: x - hi,
            hi: x - lo,
        }
    } else {
        ErrorInterval {
            lo: ExactRational::zero(),
            hi: (x - lo).max(hi - x),
        }
    }
}

/// Correct decimals `floor(-log10 |x - S|)`, when the oracle pins it down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DigitsCorrect {
    Exactly(i64),
    /// The error interval straddles a power of ten; a finer reference is needed.
    Indeterminate,
}

impl DigitsCorrect {
    pub fn value(self) -> Option<i64> {
        match self {
            DigitsCorrect::Exactly(d) => Some(d),
            DigitsCorrect::Indeterminate => None,
        }
    }
}

impl std::fmt::Display for DigitsCorrect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DigitsCorrect::Exactly(d) => write!(f, "{d}"),
            DigitsCorrect::Indeterminate => f.write_str("indeterminate"),
        }
    }
}

pub fn digits_from_error(err: &ErrorInterval) -> DigitsCorrect {
    if err.lo.is_zero() {
        return DigitsCorrect::Indeterminate;
    }
    let best = floor_neg_log10(&err.lo);
    let worst = floor_neg_log10(&err.hi);
    if best == worst {
        DigitsCorrect::Exactly(worst)
    } else {
        DigitsCorrect::Indeterminate
    }
}

pub fn digits_correct(x: &ExactRational, reference: &ReferenceSum) -> DigitsCorrect {
    digits_from_error(&certified_error(x, reference))
}

/// Errors of several approximants against one shared reference.
#[derive(Debug, Clone)]
pub struct ResolvedErrors {
    pub errors: Vec<ErrorInterval>,
    pub reference: Arc<ReferenceSum>,
}

/// Finds a reference precise enough that every error in `xs` is known to
/// relative width `rel_tol`, starting at `initial_digits` and raising the
/// precision as needed. Stops at `limits.max_digits`; callers check
/// [`ErrorInterval::is_resolved`] for points that are still too coarse.
pub fn resolve_errors(
    params: SeriesParams,
    xs: &[ExactRational],
    rel_tol: f64,
    initial_digits: u64,
    limits: &Limits,
) -> Result<ResolvedErrors> {
    let tol_digits = (-rel_tol.log10()).ceil().max(0.0) as u64;
    let mut digits = initial_digits.clamp(1, limits.max_digits.max(1));
    loop {
        let reference = cached_reference_sum(params, digits, limits)?;
        let errors: Vec<ErrorInterval> =
            xs.iter().map(|x| certified_error(x, &reference)).collect();
        let needed = errors
            .iter()
            .filter(|e| !e.is_resolved(rel_tol))
            .map(|e| {
                if e.lo.is_zero() {
                    digits * 2
                } else {
                    let scale = floor_neg_log10(&e.hi).max(0) as u64;
                    scale + tol_digits + 3
                }
            })
            .max();
        match needed {
            Some(want) if digits < limits.max_digits => {
                digits = want.max(digits + 1).min(limits.max_digits);
            }
            _ => return Ok(ResolvedErrors { errors, reference }),
        }
    }
}

const STORE_HEADER: &str = "cha-reference-sum 1";

fn store_path(dir: &Path, params: SeriesParams, digits: u64) -> PathBuf {
    dir.join(format!(
        "sum_p{}_q{}_d{}.ref",
        params.p(),
        params.q(),
        digits
    ))
}

/// Writes `reference` to `dir` as one versioned text file.
pub fn store_reference(dir: &Path, reference: &ReferenceSum) -> io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = store_path(dir, reference.params, reference.guaranteed_digits);
    let text = format!(
        "{STORE_HEADER}\np {}\nq {}\ndigits {}\norder {}\nlo {}\nhi {}\n",
        reference.params.p(),
        reference.params.q(),
        reference.guaranteed_digits,
        reference.order_used,
        reference.enclosure.lo,
        reference.enclosure.hi,
    );
    fs::write(&path, text)?;
    Ok(path)
}

/// Reads a reference written by [`store_reference`]; `Ok(None)` if absent.
///
/// The stored enclosure is re-checked against the requested width, and
/// rejected if it does not match what was asked for.
pub fn load_reference(
    dir: &Path,
    params: SeriesParams,
    digits: u64,
) -> io::Result<Option<ReferenceSum>> {
    let path = store_path(dir, params, digits);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e),
    };
    let invalid = |why: &str| {
        io::Error::new(
            io::ErrorKind::InvalidData,
            format!("{}: {why}", path.display()),
        )
    };
    let mut lines = text.lines();
    if lines.next() != Some(STORE_HEADER) {
        return Err(invalid("unsupported header"));
    }
    let mut field = |name: &str| -> io::Result<String> {
        let line = lines.next().ok_or_else(|| invalid("truncated file"))?;
        line.strip_prefix(name)
            .and_then(|rest| rest.strip_prefix(' '))
            .map(str::to_string)
            .ok_or_else(|| invalid(&format!("expected field {name:?}")))
    };
    let int = |s: String| s.parse::<u64>().map_err(|_| invalid("bad integer"));
    let (p, q, d, order) = (
        int(field("p")?)?,
        int(field("q")?)?,
        int(field("digits")?)?,
        int(field("order")?)?,
    );
    let frac = |s: String| {
        s.parse::<ExactRational>()
            .map_err(|_| invalid("bad fraction"))
    };
    let (lo, hi) = (frac(field("lo")?)?, frac(field("hi")?)?);
    if (p, q, d) != (params.p(), params.q(), digits) {
        return Err(invalid("parameters do not match file name"));
    }
    if lo > hi || (&hi - &lo).abs() >= ten_pow(-(digits as i64)) {
        return Err(invalid("enclosure is wider than its declared precision"));
    }
    Ok(Some(ReferenceSum {
        params,
        enclosure: Enclosure {
            lo,
            hi,
            target: EnclosureTarget::Sum,
        },
        guaranteed_digits: digits,
        order_used: order,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::accel::w_value;
    use crate::rational::parse_decimal;

    fn params(p: u64, q: u64) -> SeriesParams {
        SeriesParams::new(p, q).unwrap()
    }

    #[test]
    fn reference_meets_width() {
        for (p, q, d) in [(2, 1, 40), (1, 1, 40), (1, 2, 15), (7, 3, 100)] {
            let r = reference_sum(params(p, q), d, &Limits::default()).unwrap();
            assert!(r.enclosure.width() < ten_pow(-(d as i64)));
            assert_eq!(r.guaranteed_digits, d);
        }
    }

    #[test]
    fn reference_guards() {
        let l = Limits {
            max_digits: 100,
            ..Limits::default()
        };
        assert!(matches!(
            reference_sum(params(1, 1), 101, &l),
            Err(Error::ResourceGuard { .. })
        ));
        assert!(reference_sum(params(1, 1), 0, &l).is_err());
        let tight = Limits {
            max_order: 20,
            ..Limits::default()
        };
        assert!(matches!(
            reference_sum(params(1, 1), 60, &tight),
            Err(Error::ResourceGuard { .. })
        ));
    }

    #[test]
    fn error_geometry() {
        let r = reference_sum(params(2, 1), 30, &Limits::default()).unwrap();
        let half = r.enclosure.width() / ExactRational::from_integer(2.into());
        let mid = certified_error(&r.enclosure.midpoint(), &r);
        assert!(mid.lo.is_zero());
        assert!(mid.hi <= half);

        let far = parse_decimal("0.5").unwrap();
        let e = certified_error(&far, &r);
        assert_eq!(&e.hi - &e.lo, r.enclosure.width());
        assert!(e.lo > ExactRational::zero());

        let above = parse_decimal("0.9").unwrap();
        let e = certified_error(&above, &r);
        assert_eq!(&e.hi - &e.lo, r.enclosure.width());

        assert_eq!(
            digits_correct(&r.enclosure.lo, &r),
            DigitsCorrect::Indeterminate
        );
    }

    #[test]
    fn digits_of_small_w() {
        let r = reference_sum(params(1, 10), 20, &Limits::default()).unwrap();
        let w = w_value(params(1, 10), 0, &Limits::default()).unwrap();
        assert_eq!(digits_correct(&w, &r), DigitsCorrect::Exactly(3));
    }

    #[test]
    fn resolve_raises_precision() {
        let p = params(2, 1);
        let w = w_value(p, 30, &Limits::default()).unwrap();
        let resolved = resolve_errors(p, &[w], 1e-6, 5, &Limits::default()).unwrap();
        assert!(resolved.errors[0].is_resolved(1e-6));
        // The first 5-digit reference contains w itself, so it had to be raised.
        assert!(resolved.reference.guaranteed_digits > 5);
    }

    #[test]
    fn cache_is_transparent() {
        let a = cached_reference_sum(params(3, 4), 25, &Limits::default()).unwrap();
        let b = reference_sum(params(3, 4), 25, &Limits::default()).unwrap();
        assert_eq!(*a, b);
    }

    #[test]
    fn store_round_trip() {
        let dir = std::env::temp_dir().join(format!("cha-oracle-test-{}", std::process::id()));
        let r = reference_sum(params(2, 1), 30, &Limits::default()).unwrap();
        store_reference(&dir, &r).unwrap();
        assert_eq!(load_reference(&dir, params(2, 1), 30).unwrap(), Some(r));
        assert_eq!(load_reference(&dir, params(2, 1), 31).unwrap(), None);

        let path = store_path(&dir, params(1, 1), 50);
        fs::write(
            &path,
            "cha-reference-sum 1\np 1\nq 1\ndigits 50\norder 3\nlo 1/2\nhi 1/1\n",
        )
        .unwrap();
        assert!(load_reference(&dir, params(1, 1), 50).is_err());
        fs::remove_dir_all(&dir).unwrap();
    }
}
