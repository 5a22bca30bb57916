//! Empirical convergence-rate checks.
//!
//! Each check evaluates exact approximants, measures their errors against a
//! certified reference and reports floating-point summaries with error bars.
//! A point whose error is not pinned down to [`RATIO_REL_TOL`] is reported as
//! indeterminate rather than with a made-up value.
//!
//! Logarithms are base 10 throughout.

use std::collections::BTreeMap;
use std::f64::consts::{E, PI};
use std::fmt;

use rayon::prelude::*;

use crate::accel::{accel_value, v_sequence, AccelKind, Extractor};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::oracle::{digits_from_error, resolve_errors, DigitsCorrect, ErrorInterval};
use crate::rational::{log10_abs, ExactRational};
use crate::series::{partial_sum, SeriesParams};

/// Points whose error interval is wider than this (relatively) are
/// reported as indeterminate.
pub const RATIO_REL_TOL: f64 = 1e-3;

/// Relative precision requested from the oracle for ordinary reports.
const REQUEST_REL_TOL: f64 = 1e-6;

/// Relative precision required for [`chi_estimate`].
pub const CHI_REL_TOL: f64 = 1e-7;

/// `log10(1 / (9 e^2))`, lower end of the W rate bracket.
pub fn w_rate_lower_log10() -> f64 {
    -(9.0 * E * E).log10()
}

/// `log10(1 / (4 e^2))`, upper end of the W rate bracket.
pub fn w_rate_upper_log10() -> f64 {
    -(4.0 * E * E).log10()
}

/// A float estimate with certified lower and upper bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub lo: f64,
    pub value: f64,
    pub hi: f64,
}

impl Bounds {
    fn from_log10(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            value: 0.5 * (lo + hi),
            hi,
        }
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    pub fn exp10(&self) -> Self {
        Self {
            lo: 10f64.powf(self.lo),
            value: 10f64.powf(self.value),
            hi: 10f64.powf(self.hi),
        }
    }
}

/// The sequence a [`RateReport`] follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    PartialSums,
    Accel(AccelKind),
}

impl SequenceKind {
    pub fn value(self, params: SeriesParams, index: u64, limits: &Limits) -> Result<ExactRational> {
        match self {
            SequenceKind::PartialSums => {
                limits.check_order("partial-sum order", index)?;
                Ok(partial_sum(params, index))
            }
            SequenceKind::Accel(kind) => kind.value(params, index, limits),
        }
    }

    // Rough count of correct digits at `index`, used to seed the oracle.
    fn digits_hint(self, params: SeriesParams, index: u64) -> u64 {
        let n = index.max(1) as f64;
        let p = params.p() as f64;
        let digits = match self {
            SequenceKind::PartialSums => (2.0 * p * n).log10(),
            SequenceKind::Accel(AccelKind::U { m }) => (2 * m + 3) as f64 * (2.0 * n).log10(),
            SequenceKind::Accel(AccelKind::V { n: fixed }) => (2 * fixed + 3) as f64 * n.log10(),
            SequenceKind::Accel(AccelKind::W) => 1.48 * n,
            SequenceKind::Accel(AccelKind::WZeta(z)) => {
                let order = z.eval(index).unwrap_or(u64::MAX) as f64;
                1.48 * n + (2.0 * n + 3.0) * (order.max(n) / n).log10()
            }
        };
        digits.max(0.0) as u64 + 20
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceKind::PartialSums => f.write_str("partial sums"),
            SequenceKind::Accel(kind) => kind.fmt(f),
        }
    }
}

/// Error and one-step error ratio at one index.
#[derive(Debug, Clone)]
pub struct RatePoint {
    pub index: u64,
    pub error: ErrorInterval,
    /// `log10` of the upper error bound.
    pub log10_error: f64,
    /// `log10(|x_{n+1} - S| / |x_n - S|)`, `None` when indeterminate.
    pub log10_ratio: Option<Bounds>,
}

impl RatePoint {
    pub fn ratio(&self) -> Option<Bounds> {
        self.log10_ratio.map(|b| b.exp10())
    }
}

#[derive(Debug, Clone)]
pub struct RateReport {
    pub kind: SequenceKind,
    pub params: SeriesParams,
    pub points: Vec<RatePoint>,
    pub oracle_digits: u64,
}

fn evaluate_all(
    params: SeriesParams,
    kind: SequenceKind,
    indices: &[u64],
    limits: &Limits,
) -> Result<Vec<ExactRational>> {
    indices
        .par_iter()
        .map(|&i| kind.value(params, i, limits))
        .collect()
}

fn log10_ratio_bounds(next: &ErrorInterval, prev: &ErrorInterval) -> Option<Bounds> {
    if !next.is_resolved(RATIO_REL_TOL) || !prev.is_resolved(RATIO_REL_TOL) {
        return None;
    }
    let lo = log10_abs(&(&next.lo / &prev.hi));
    let hi = log10_abs(&(&next.hi / &prev.lo));
    Some(Bounds::from_log10(lo, hi))
}

/// Errors and one-step ratios of `kind` at each of `indices`.
pub fn rate_report(
    params: SeriesParams,
    kind: SequenceKind,
    indices: &[u64],
    limits: &Limits,
) -> Result<RateReport> {
    let all: Vec<u64> = indices
        .iter()
        .flat_map(|&i| [i, i + 1])
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let values = evaluate_all(params, kind, &all, limits)?;
    let hint = all.last().map_or(20, |&i| kind.digits_hint(params, i));
    let resolved = resolve_errors(params, &values, REQUEST_REL_TOL, hint, limits)?;
    let by_index: BTreeMap<u64, &ErrorInterval> =
        all.iter().copied().zip(resolved.errors.iter()).collect();
    let points = indices
        .iter()
        .map(|&i| {
            let error = by_index[&i].clone();
            RatePoint {
                index: i,
                log10_error: error.log10_hi(),
                log10_ratio: log10_ratio_bounds(by_index[&(i + 1)], &error),
                error,
            }
        })
        .collect();
    Ok(RateReport {
        kind,
        params,
        points,
        oracle_digits: resolved.reference.guaranteed_digits,
    })
}

/// Error divided by a predicted asymptotic equivalent, at one index.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedPoint {
    pub index: u64,
    pub error: ErrorInterval,
    /// `None` when the oracle could not resolve the error.
    pub normalized: Option<Bounds>,
}

/// Normalized errors that should approach `target`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalentCheck {
    /// Human-readable normalization, e.g. `2pn |S^(n) - S|`.
    pub formula: String,
    pub points: Vec<NormalizedPoint>,
    pub target: f64,
    pub oracle_digits: u64,
}

impl EquivalentCheck {
    pub fn value_at(&self, index: u64) -> Option<Bounds> {
        self.points
            .iter()
            .find(|p| p.index == index)
            .and_then(|p| p.normalized)
    }

    /// Whether every point is resolved and lies inside `[lo, hi]`
    /// with its whole error bar.
    pub fn within(&self, lo: f64, hi: f64) -> bool {
        self.points
            .iter()
            .all(|p| p.normalized.is_some_and(|b| lo <= b.lo && b.hi <= hi))
    }
}

fn check_increasing(list: &[u64], min: u64, what: &str) -> Result<()> {
    if list.is_empty() {
        return Err(Error::InvalidArgument(format!("{what} list is empty")));
    }
    if list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(format!(
            "{what} list must be increasing"
        )));
    }
    if list[0] < min {
        return Err(Error::InvalidArgument(format!(
            "{what} list must start at {min} or above"
        )));
    }
    Ok(())
}

/// Normalizes each resolved error by `10^log10_factor(index)`.
fn normalize(
    indices: &[u64],
    errors: &[ErrorInterval],
    log10_factor: impl Fn(u64) -> f64,
) -> Vec<NormalizedPoint> {
    indices
        .iter()
        .zip(errors)
        .map(|(&index, e)| {
            let normalized = e.is_resolved(RATIO_REL_TOL).then(|| {
                let f = log10_factor(index);
                Bounds::from_log10(e.log10_lo() + f, e.log10_hi() + f).exp10()
            });
            NormalizedPoint {
                index,
                error: e.clone(),
                normalized,
            }
        })
        .collect()
}

fn equivalent_check(
    params: SeriesParams,
    kind: SequenceKind,
    indices: &[u64],
    formula: String,
    limits: &Limits,
    log10_factor: impl Fn(u64) -> f64,
) -> Result<EquivalentCheck> {
    let values = evaluate_all(params, kind, indices, limits)?;
    let hint = kind.digits_hint(params, *indices.last().expect("nonempty"));
    let resolved = resolve_errors(params, &values, REQUEST_REL_TOL, hint, limits)?;
    Ok(EquivalentCheck {
        formula,
        points: normalize(indices, &resolved.errors, log10_factor),
        target: 1.0,
        oracle_digits: resolved.reference.guaranteed_digits,
    })
}

fn log10_factorial(n: u64) -> f64 {
    (2..=n).map(|k| (k as f64).log10()).sum()
}

/// `2pn |S^(n) - S|`, which tends to 1 (partial sums converge like `1/(2pn)`).
pub fn theorem1_check(
    params: SeriesParams,
    n_list: &[u64],
    limits: &Limits,
) -> Result<EquivalentCheck> {
    check_increasing(n_list, 1, "n")?;
    let p = params.p() as f64;
    equivalent_check(
        params,
        SequenceKind::PartialSums,
        n_list,
        "2pn |S^(n) - S|".into(),
        limits,
        |n| (2.0 * p * n as f64).log10(),
    )
}

/// `|u_m^(n) - S| (2n)^(2m+3) p / ((m+1)!)^2`, which tends to 1 as `n` grows.
pub fn theorem2_check(
    params: SeriesParams,
    m: u64,
    n_list: &[u64],
    limits: &Limits,
) -> Result<EquivalentCheck> {
    if m > 6 {
        return Err(Error::InvalidArgument(format!(
            "U order m = {m} must be <= 6"
        )));
    }
    check_increasing(n_list, m + 2, "n")?;
    let p = params.p() as f64;
    equivalent_check(
        params,
        SequenceKind::Accel(AccelKind::U { m }),
        n_list,
        format!("|u_{m}^(n) - S| (2n)^{} p / ({}!)^2", 2 * m + 3, m + 1),
        limits,
        |n| {
            (2 * m + 3) as f64 * (2.0 * n as f64).log10() + p.log10() - 2.0 * log10_factorial(m + 1)
        },
    )
}

/// Outcome of fitting `|v_m^(n) - S| ~ omega / m^(2n + 1 + 2q/p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Theorem3Fit {
    pub exponent: f64,
    /// Mean of the normalized values over the last third of the `m` list.
    pub omega_estimate: f64,
    /// `(max - min) / mean` over that tail.
    pub relative_spread: f64,
    pub plateau: bool,
    pub check: EquivalentCheck,
}

/// Relative spread (of the tail) below which the V plateau is accepted.
pub const PLATEAU_SPREAD: f64 = 0.10;

/// `2n + 1 + 2q/p`.
pub fn theorem3_exponent(params: SeriesParams, n: u64) -> f64 {
    (2 * n + 1) as f64 + 2.0 * params.q() as f64 / params.p() as f64
}

/// `|v_m^(n) - S| m^(2n + 1 + 2q/p)` per `m`, and its tail plateau `omega`.
pub fn theorem3_fit(
    params: SeriesParams,
    n: u64,
    m_list: &[u64],
    limits: &Limits,
) -> Result<Theorem3Fit> {
    check_increasing(m_list, 1, "m")?;
    let exponent = theorem3_exponent(params, n);
    let last = *m_list.last().expect("nonempty");
    let all = v_sequence(params, n, 0..=last, limits)?;
    let values: Vec<ExactRational> = m_list.iter().map(|&m| all[m as usize].clone()).collect();
    let hint = (exponent * (last as f64).log10()) as u64 + 30;
    let resolved = resolve_errors(params, &values, REQUEST_REL_TOL, hint, limits)?;
    let check = EquivalentCheck {
        formula: format!("|v_m^({n}) - S| m^{exponent}"),
        points: normalize(m_list, &resolved.errors, |m| exponent * (m as f64).log10()),
        target: f64::NAN,
        oracle_digits: resolved.reference.guaranteed_digits,
    };
    let tail_len = m_list.len().div_ceil(3).max(2).min(m_list.len());
    let tail: Vec<f64> = check.points[m_list.len() - tail_len..]
        .iter()
        .filter_map(|p| p.normalized.map(|b| b.value))
        .collect();
    let (omega_estimate, relative_spread) = if tail.len() == tail_len && !tail.is_empty() {
        let mean = tail.iter().sum::<f64>() / tail.len() as f64;
        let max = tail.iter().copied().fold(f64::MIN, f64::max);
        let min = tail.iter().copied().fold(f64::MAX, f64::min);
        (mean, (max - min) / mean)
    } else {
        (f64::NAN, f64::INFINITY)
    };
    Ok(Theorem3Fit {
        exponent,
        omega_estimate,
        relative_spread,
        plateau: relative_spread < PLATEAU_SPREAD,
        check,
    })
}

/// Tail behavior of the U/V error ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    /// U converges faster than V (expected when `p > q`).
    Decreasing,
    /// U converges slower than V (expected when `p < q`).
    Increasing,
    /// Same speed (expected when `p = q`).
    Bounded,
}

/// Fitted log-log slopes within this distance of zero count as [`Trend::Bounded`].
pub const TREND_SLOPE_EPS: f64 = 0.2;

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem4Report {
    pub m: u64,
    /// `(n, log10 r(n))` with `r(n) = |u_m^(n) - S| / |v_n^(m) - S|`.
    pub points: Vec<(u64, Option<Bounds>)>,
    /// Least-squares slope of `log10 r` against `log10 n` over the last half.
    pub fitted_slope: f64,
    /// `2 (q/p - 1)`.
    pub predicted_slope: f64,
    pub trend: Trend,
    pub oracle_digits: u64,
}

/// Slope of the least-squares line through `(x, y)`.
pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Compares U of order `m` (partial-sum order `n` moving) with V of order `m`
/// read along its reduite order `n`.
///
/// With `v_k^(j) = S^(j) + (-1)^(j+1) rho_k^(j)`, the ratio is
/// `|u_m^(n) - S| / |v_n^(m) - S|`: partial-sum order `n` and reduite order
/// `m` on top, partial-sum order `m` and reduite order `n` below.
pub fn theorem4_check(
    params: SeriesParams,
    m: u64,
    n_list: &[u64],
    limits: &Limits,
) -> Result<Theorem4Report> {
    if m > 6 {
        return Err(Error::InvalidArgument(format!(
            "U order m = {m} must be <= 6"
        )));
    }
    check_increasing(n_list, m + 2, "n")?;
    let last = *n_list.last().expect("nonempty");
    let u: Vec<ExactRational> = n_list
        .par_iter()
        .map(|&n| accel_value(params, m, n, limits))
        .collect::<Result<_>>()?;
    let v_all = v_sequence(params, m, 0..=last, limits)?;
    let mut values = u;
    values.extend(n_list.iter().map(|&n| v_all[n as usize].clone()));
    let hint = (2 * m + 3) as f64 * (2.0 * last as f64).log10() + 30.0;
    let resolved = resolve_errors(params, &values, REQUEST_REL_TOL, hint as u64, limits)?;
    let (u_err, v_err) = resolved.errors.split_at(n_list.len());
    let points: Vec<(u64, Option<Bounds>)> = n_list
        .iter()
        .zip(u_err.iter().zip(v_err))
        .map(|(&n, (ue, ve))| (n, log10_ratio_bounds(ue, ve)))
        .collect();
    let tail: Vec<(f64, f64)> = points[points.len() / 2..]
        .iter()
        .filter_map(|(n, b)| b.map(|b| ((*n as f64).log10(), b.value)))
        .collect();
    let fitted_slope = if tail.len() >= 2 {
        least_squares_slope(&tail)
    } else {
        f64::NAN
    };
    let trend = if fitted_slope < -TREND_SLOPE_EPS {
        Trend::Decreasing
    } else if fitted_slope > TREND_SLOPE_EPS {
        Trend::Increasing
    } else {
        Trend::Bounded
    };
    Ok(Theorem4Report {
        m,
        points,
        fitted_slope,
        predicted_slope: 2.0 * (params.q() as f64 / params.p() as f64 - 1.0),
        trend,
        oracle_digits: resolved.reference.guaranteed_digits,
    })
}

/// One-step W error ratio, `log10(|w^(n+1) - S| / |w^(n) - S|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiEstimate {
    pub n: u64,
    pub log10_ratio: f64,
    /// Half-width of the certified interval around `log10_ratio`.
    pub error_bar: f64,
    pub oracle_digits: u64,
}

impl ChiEstimate {
    pub fn ratio(&self) -> f64 {
        10f64.powf(self.log10_ratio)
    }
}

/// Estimates the linear rate of W at `n`, raising oracle precision until
/// both errors are known to relative width [`CHI_REL_TOL`].
pub fn chi_estimate(params: SeriesParams, n: u64, limits: &Limits) -> Result<ChiEstimate> {
    let kind = SequenceKind::Accel(AccelKind::W);
    let values = evaluate_all(params, kind, &[n, n + 1], limits)?;
    let hint = kind.digits_hint(params, n + 1) + 10;
    let resolved = resolve_errors(params, &values, CHI_REL_TOL / 10.0, hint, limits)?;
    let (e0, e1) = (&resolved.errors[0], &resolved.errors[1]);
    if !e0.is_resolved(CHI_REL_TOL) || !e1.is_resolved(CHI_REL_TOL) {
        return Err(Error::ResourceGuard {
            what: "oracle digits",
            requested: limits.max_digits + 1,
            max: limits.max_digits,
        });
    }
    let lo = log10_abs(&(&e1.lo / &e0.hi));
    let hi = log10_abs(&(&e1.hi / &e0.lo));
    let b = Bounds::from_log10(lo, hi);
    Ok(ChiEstimate {
        n,
        log10_ratio: b.value,
        error_bar: b.half_width(),
        oracle_digits: resolved.reference.guaranteed_digits,
    })
}

/// `log10` of `(pi / 4p) (1 / 4e^2)^n (n / zeta(n))^(2n+3)`.
pub fn theorem6_log10_equivalent(params: SeriesParams, n: u64, zeta_n: u64) -> f64 {
    (PI / (4.0 * params.p() as f64)).log10()
        + n as f64 * w_rate_upper_log10()
        + (2 * n + 3) as f64 * ((n as f64).log10() - (zeta_n as f64).log10())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem6Report {
    pub zeta: Extractor,
    /// Whether `n = o(zeta(n))`, the hypothesis for super-linear convergence.
    pub superlinear_hypothesis: bool,
    /// Error divided by the equivalent above.
    pub check: EquivalentCheck,
    /// `(n, |w_zeta^(n+1) - S| / |w_zeta^(n) - S|)` for consecutive list entries.
    pub ratios: Vec<(u64, Option<Bounds>)>,
    /// Certified: each ratio's upper bound is below the previous one's lower bound.
    pub strictly_decreasing: bool,
}

/// Normalized W-zeta errors and their consecutive ratios.
pub fn theorem6_check(
    params: SeriesParams,
    zeta: Extractor,
    n_list: &[u64],
    limits: &Limits,
) -> Result<Theorem6Report> {
    check_increasing(n_list, 1, "n")?;
    let zetas: Vec<u64> = n_list
        .iter()
        .map(|&n| zeta.eval(n))
        .collect::<Result<_>>()?;
    let kind = SequenceKind::Accel(AccelKind::WZeta(zeta));
    let values = evaluate_all(params, kind, n_list, limits)?;
    let hint = kind.digits_hint(params, *n_list.last().expect("nonempty"));
    let resolved = resolve_errors(params, &values, REQUEST_REL_TOL, hint, limits)?;
    let zeta_of: BTreeMap<u64, u64> = n_list.iter().copied().zip(zetas).collect();
    let check = EquivalentCheck {
        formula: format!(
            "|w_zeta^(n) - S| / ((pi/4p) (1/4e^2)^n (n/zeta(n))^(2n+3)), zeta = {zeta}"
        ),
        points: normalize(n_list, &resolved.errors, |n| {
            -theorem6_log10_equivalent(params, n, zeta_of[&n])
        }),
        target: 1.0,
        oracle_digits: resolved.reference.guaranteed_digits,
    };
    let ratios: Vec<(u64, Option<Bounds>)> = n_list
        .windows(2)
        .zip(resolved.errors.windows(2))
        .filter(|(n, _)| n[1] == n[0] + 1)
        .map(|(n, e)| (n[0], log10_ratio_bounds(&e[1], &e[0]).map(|b| b.exp10())))
        .collect();
    let strictly_decreasing = ratios.len() >= 2
        && ratios.windows(2).all(|w| match (w[0].1, w[1].1) {
            (Some(a), Some(b)) => b.hi < a.lo,
            _ => false,
        });
    Ok(Theorem6Report {
        zeta,
        superlinear_hypothesis: zeta.is_superlinear(),
        check,
        ratios,
        strictly_decreasing,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetPoint {
    /// Partial-sum order.
    pub n: u64,
    /// Reduite order, `total - n`.
    pub m: u64,
    pub digits: DigitsCorrect,
}

/// Digits of `S^(n) + (-1)^(n+1) rho_m^(n)` along the line `m + n = total`.
#[derive(Debug, Clone, PartialEq)]
pub struct BudgetScan {
    pub total: u64,
    pub points: Vec<BudgetPoint>,
    /// Every `n` attaining the maximal digit count.
    pub argmax: Vec<u64>,
    pub oracle_digits: u64,
}

impl BudgetScan {
    /// Whether the profile rises then falls, allowing a flat top at most
    /// `plateau` points wide and ignoring indeterminate points.
    pub fn is_unimodal(&self, plateau: usize) -> bool {
        let d: Vec<i64> = self
            .points
            .iter()
            .filter_map(|p| p.digits.value())
            .collect();
        let top = match d.iter().max() {
            Some(&t) => t,
            None => return false,
        };
        let first = d.iter().position(|&x| x == top).unwrap();
        let last = d.iter().rposition(|&x| x == top).unwrap();
        last - first < plateau.max(1)
            && d[..=first].windows(2).all(|w| w[0] <= w[1])
            && d[last..].windows(2).all(|w| w[0] >= w[1])
    }
}

/// Scans `n` in `1..=total` with `m = total - n`.
pub fn budget_scan(params: SeriesParams, total: u64, limits: &Limits) -> Result<BudgetScan> {
    if total == 0 || !total.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "budget N = {total} must be even and positive"
        )));
    }
    limits.check_order("budget N", total)?;
    let ns: Vec<u64> = (1..=total).collect();
    let values: Vec<ExactRational> = ns
        .par_iter()
        .map(|&n| accel_value(params, total - n, n, limits))
        .collect::<Result<_>>()?;
    let hint = (2.5 * total as f64).ceil() as u64 + 10;
    let resolved = resolve_errors(params, &values, REQUEST_REL_TOL, hint, limits)?;
    let points: Vec<BudgetPoint> = ns
        .iter()
        .zip(&resolved.errors)
        .map(|(&n, e)| BudgetPoint {
            n,
            m: total - n,
            digits: digits_from_error(e),
        })
        .collect();
    let best = points.iter().filter_map(|p| p.digits.value()).max();
    let argmax = points
        .iter()
        .filter(|p| best.is_some() && p.digits.value() == best)
        .map(|p| p.n)
        .collect();
    Ok(BudgetScan {
        total,
        points,
        argmax,
        oracle_digits: resolved.reference.guaranteed_digits,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractionComparison {
    pub zeta: Extractor,
    /// W-zeta index `n` (reduite order `n`, partial-sum order `zeta(n)`).
    pub semi_index: u64,
    pub semi_digits: DigitsCorrect,
    /// Diagonal order `zeta(k)` of the extracted W term.
    pub full_order: u64,
    pub full_digits: DigitsCorrect,
    pub oracle_digits: u64,
}

/// Digits of `w_zeta^(n)` next to those of the extracted term `w^(zeta(k))`.
pub fn semi_vs_full_extraction(
    params: SeriesParams,
    zeta: Extractor,
    n: u64,
    k: u64,
    limits: &Limits,
) -> Result<ExtractionComparison> {
    let full_order = zeta.eval(k)?;
    let semi = SequenceKind::Accel(AccelKind::WZeta(zeta));
    let full = SequenceKind::Accel(AccelKind::W);
    let values = vec![
        semi.value(params, n, limits)?,
        full.value(params, full_order, limits)?,
    ];
    let hint = semi
        .digits_hint(params, n)
        .max(full.digits_hint(params, full_order));
    let resolved = resolve_errors(params, &values, REQUEST_REL_TOL, hint, limits)?;
    Ok(ExtractionComparison {
        zeta,
        semi_index: n,
        semi_digits: digits_from_error(&resolved.errors[0]),
        full_order,
        full_digits: digits_from_error(&resolved.errors[1]),
        oracle_digits: resolved.reference.guaranteed_digits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, q: u64) -> SeriesParams {
        SeriesParams::new(p, q).unwrap()
    }

    const L: Limits = Limits {
        max_order: Limits::DEFAULT_MAX_ORDER,
        max_digits: Limits::DEFAULT_MAX_DIGITS,
        max_decimals: Limits::DEFAULT_MAX_DECIMALS,
    };

    #[test]
    fn bracket_constants() {
        assert!((w_rate_lower_log10() + 1.822_831).abs() < 1e-5);
        assert!((w_rate_upper_log10() + 1.470_649).abs() < 1e-5);
    }

    #[test]
    fn slope_of_a_line() {
        let pts: Vec<(f64, f64)> = (0..10).map(|i| (i as f64, 3.0 - 0.5 * i as f64)).collect();
        assert!((least_squares_slope(&pts) + 0.5).abs() < 1e-12);
    }

    #[test]
    fn exponent_spot_check() {
        assert_eq!(theorem3_exponent(params(2, 1), 0), 2.0);
        assert_eq!(theorem3_exponent(params(1, 1), 0), 3.0);
        assert_eq!(theorem3_exponent(params(2, 1), 1), 4.0);
    }

    #[test]
    fn argument_validation() {
        assert!(theorem1_check(params(1, 1), &[0, 1], &L).is_err());
        assert!(theorem1_check(params(1, 1), &[5, 3], &L).is_err());
        assert!(theorem2_check(params(1, 1), 7, &[100], &L).is_err());
        assert!(theorem2_check(params(1, 1), 2, &[3], &L).is_err());
        assert!(budget_scan(params(1, 1), 7, &L).is_err());
        assert!(budget_scan(params(1, 1), 0, &L).is_err());
        assert!(theorem6_check(params(1, 1), Extractor::Square, &[0, 1], &L).is_err());
    }

    #[test]
    fn theorem1_smoke_point() {
        let c = theorem1_check(params(1, 1), &[1], &L).unwrap();
        // 2 |1 - 1/2 - ln 2| = 0.386...
        let v = c.value_at(1).unwrap().value;
        assert!((v - 0.386_294_361).abs() < 1e-6);
    }

    #[test]
    fn theorem1_at_ten_thousand() {
        // S^(10^4) = 0.78542316...; error 2.5e-5 ~ 1/(2 * 2 * 10^4)
        let c = theorem1_check(params(2, 1), &[10_000], &L).unwrap();
        assert!((c.value_at(10_000).unwrap().value - 1.0).abs() < 1e-3);
        let c = theorem1_check(params(1, 2), &[1000], &L).unwrap();
        assert!((c.value_at(1000).unwrap().value - 1.0).abs() < 0.01);
    }

    #[test]
    fn rate_report_marks_partial_sums_infralinear() {
        let r = rate_report(params(2, 1), SequenceKind::PartialSums, &[100, 200], &L).unwrap();
        for p in &r.points {
            let ratio = p.ratio().unwrap().value;
            assert!(ratio > 0.98 && ratio < 1.0);
        }
    }

    #[test]
    fn chi_sanity_bracket() {
        for (p, q) in [(1, 1), (3, 2)] {
            let c = chi_estimate(params(p, q), 200, &L).unwrap();
            assert!(c.log10_ratio > w_rate_lower_log10());
            assert!(c.log10_ratio < w_rate_upper_log10());
            assert!(c.error_bar < 1e-6);
        }
    }

    #[test]
    fn theorem6_identity_is_linear() {
        let r = theorem6_check(params(2, 1), Extractor::Identity, &[20, 21, 22, 23], &L).unwrap();
        assert!(!r.superlinear_hypothesis);
        for (_, b) in &r.ratios {
            let b = b.unwrap();
            assert!(b.value > 0.01 && b.value < 0.05);
        }
    }

    #[test]
    fn smallest_budget() {
        let s = budget_scan(params(2, 1), 2, &L).unwrap();
        assert_eq!(s.points.len(), 2);
        assert!(!s.argmax.is_empty());
    }

    #[test]
    fn identity_extraction_coincides() {
        let c = semi_vs_full_extraction(params(2, 1), Extractor::Identity, 5, 5, &L).unwrap();
        assert_eq!(c.full_order, 5);
        assert_eq!(c.semi_digits, c.full_digits);
    }
}
