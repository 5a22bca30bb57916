//! Argument definitions and command execution.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cha_core::analysis::{self, Bounds, EquivalentCheck, SequenceKind};
use cha_core::contfrac::convergents;
use cha_core::oracle::{self, ReferenceSum};
use cha_core::rational::{ten_pow, to_decimal, to_scientific};
use cha_core::series::partial_sum;
use cha_core::tables::{self, TableId};
use cha_core::{accel, AccelKind, Error, ExactRational, Extractor, Limits, Rounding, SeriesParams};

use crate::indices::IndexList;
use crate::output::{Format, OutputRecord, ParamsRecord, Table};

/// `chi --n` above this needs `--heavy`.
pub const HEAVY_CHI_N: u64 = 500;
/// `oracle --digits` above this needs `--heavy`.
pub const HEAVY_ORACLE_DIGITS: u64 = 1500;

#[derive(Parser, Debug)]
#[command(
    name = "cha",
    version,
    about = "Exact acceleration of alternating series sum (-1)^k / (pk + q)"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Series step p.
    #[arg(long, global = true, default_value_t = 2)]
    pub p: u64,
    /// Series offset q.
    #[arg(long, global = true, default_value_t = 1)]
    pub q: u64,
    /// Decimals shown for values (rounded half to even).
    #[arg(long, global = true, default_value_t = 15)]
    pub decimals: u64,
    #[arg(long, global = true, default_value = "csv")]
    pub format: Format,
    /// Add an `exact` column holding each value as num/den.
    #[arg(long, global = true)]
    pub exact: bool,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest continued-fraction or partial-sum order.
    #[arg(long = "max-m", global = true, default_value_t = Limits::DEFAULT_MAX_ORDER)]
    pub max_m: u64,
    /// Largest oracle precision, in digits.
    #[arg(long = "max-digits", env = "CHA_MAX_DIGITS", global = true,
          default_value_t = Limits::DEFAULT_MAX_DIGITS)]
    pub max_digits: u64,
    /// Worker threads (output does not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Leave `timing_ms` out of JSON output.
    #[arg(long = "no-timing", global = true)]
    pub no_timing: bool,
    /// Allow long runs (`chi --n` above 500, `oracle --digits` above 1500).
    #[arg(long, global = true)]
    pub heavy: bool,
    /// Directory of stored reference sums, read and written by `oracle`.
    #[arg(long = "cache-dir", global = true)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    U,
    V,
    W,
    Wzeta,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Partial sums S^(n).
    Sum {
        #[arg(long)]
        n: IndexList,
    },
    /// Convergents A_m, B_m of the remainder after rank n, and their ratio.
    Reduite {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: IndexList,
    },
    /// Accelerated values: u (--m fixed, --n list), v (--n fixed, --m list),
    /// w (--n list), wzeta (--n list, --zeta).
    Accel {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        m: Option<IndexList>,
        #[arg(long)]
        n: Option<IndexList>,
        /// Extractor: square, cube, identity, power:E, geometric:B, linear:C.
        #[arg(long, default_value = "square")]
        zeta: Extractor,
    },
    /// Certified enclosure of S with the requested number of digits.
    Oracle {
        #[arg(long)]
        digits: u64,
    },
    /// Error rates measured against the oracle, for one of the convergence
    /// statements: 1 partial sums, 2 U, 3 V, 4 U/V ratio, 5 W, 6 W-zeta.
    Rates {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        theorem: u8,
        #[arg(long)]
        n: Option<IndexList>,
        #[arg(long)]
        m: Option<IndexList>,
        #[arg(long, default_value = "square")]
        zeta: Extractor,
    },
    /// log10 of the one-step W error ratio at n.
    Chi {
        #[arg(long)]
        n: u64,
    },
    /// Aitken delta-squared on three consecutive partial sums, next to u_0^(n-1).
    Aitken {
        #[arg(long)]
        n: IndexList,
    },
    /// Correct digits of S^(n) + (-1)^(n+1) rho_m^(n) along n + m = N.
    Scan {
        #[arg(long = "N")]
        total: u64,
    },
    /// Recompute a reference table and compare each cell.
    Table {
        #[arg(long)]
        id: TableId,
    },
    /// Digits of w_zeta^(n) next to those of w^(zeta(k)).
    Extract {
        #[arg(long, default_value = "square")]
        zeta: Extractor,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
}

/// Failure classes, each with its own exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad arguments (exit 1).
    Usage(String),
    /// Reference and recomputed values disagree (exit 2).
    Mismatch(Vec<String>),
    /// A resource guard refused the request (exit 3).
    Guard(String),
    /// Anything else, such as I/O (exit 1).
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Failure(_) => 1,
            CliError::Mismatch(_) => 2,
            CliError::Guard(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) | CliError::Guard(m) => f.write_str(m),
            CliError::Mismatch(cells) => write!(
                f,
                "{} cell(s) differ from the reference values",
                cells.len()
            ),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceGuard { .. } => CliError::Guard(e.to_string()),
            Error::DegenerateDenominator => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<String> for CliError {
    fn from(m: String) -> Self {
        CliError::Usage(m)
    }
}

/// The record to print, plus a mismatch report that still prints the record.
#[derive(Debug)]
pub struct Outcome {
    pub record: OutputRecord,
    pub mismatch: Option<CliError>,
}

struct Ctx<'a> {
    common: &'a Common,
    params: SeriesParams,
    limits: Limits,
}

impl Ctx<'_> {
    fn dec(&self, x: &ExactRational) -> Result<String, CliError> {
        Ok(to_decimal(x, self.common.decimals, Rounding::HalfEven, &self.limits)?.to_string())
    }

    fn value_columns(&self, lead: &[&str]) -> Table {
        let mut cols: Vec<&str> = lead.to_vec();
        cols.push("value");
        if self.common.exact {
            cols.push("exact");
        }
        Table::new(cols)
    }

    fn value_row(&self, mut lead: Vec<String>, x: &ExactRational) -> Result<Vec<String>, CliError> {
        lead.push(self.dec(x)?);
        if self.common.exact {
            lead.push(fraction(x));
        }
        Ok(lead)
    }
}

/// `num/den`, with the denominator written even when it is 1.
pub fn fraction(x: &ExactRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn float(x: f64) -> String {
    format!("{x:.9}")
}

fn error_sci(x: &ExactRational) -> String {
    to_scientific(x, 6)
}

fn bounds_cells(b: Option<Bounds>) -> [String; 3] {
    match b {
        Some(b) => [float(b.value), float(b.lo), float(b.hi)],
        None => [String::new(), String::new(), String::new()],
    }
}

/// Parses, executes and times a command, inside a dedicated pool if
/// `--threads` is given.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match cli.common.threads {
        Some(0) => Err(CliError::Usage("--threads must be positive".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Failure(e.to_string()))?
            .install(|| run_timed(cli)),
        None => run_timed(cli),
    }
}

fn run_timed(cli: &Cli) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let mut outcome = execute(cli)?;
    if !cli.common.no_timing {
        outcome.record.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(outcome)
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let common = &cli.common;
    let ctx = Ctx {
        common,
        params: SeriesParams::new(common.p, common.q)?,
        limits: Limits {
            max_order: common.max_m,
            max_digits: common.max_digits,
            ..Limits::default()
        },
    };
    let mut mismatch = None;
    let mut record = match &cli.command {
        Command::Sum { n } => sum(&ctx, n)?,
        Command::Reduite { n, m } => reduite(&ctx, *n, m)?,
        Command::Accel { kind, m, n, zeta } => {
            accel_cmd(&ctx, *kind, m.as_ref(), n.as_ref(), *zeta)?
        }
        Command::Oracle { digits } => oracle_cmd(&ctx, *digits)?,
        Command::Rates {
            theorem,
            n,
            m,
            zeta,
        } => rates(&ctx, *theorem, n.as_ref(), m.as_ref(), *zeta)?,
        Command::Chi { n } => chi(&ctx, *n)?,
        Command::Aitken { n } => aitken(&ctx, n)?,
        Command::Scan { total } => scan(&ctx, *total)?,
        Command::Table { id } => {
            let (record, bad) = table(&ctx, *id)?;
            if !bad.is_empty() {
                mismatch = Some(CliError::Mismatch(bad));
            }
            return Ok(Outcome { record, mismatch });
        }
        Command::Extract { zeta, n, k } => extract(&ctx, *zeta, *n, *k)?,
    };
    record.params = Some(ParamsRecord {
        p: common.p,
        q: common.q,
    });
    Ok(Outcome { record, mismatch })
}

fn sum(ctx: &Ctx, n: &IndexList) -> Result<OutputRecord, CliError> {
    let last = *n.as_slice().last().expect("nonempty");
    ctx.limits_order("partial-sum order", last)?;
    let mut t = ctx.value_columns(&["n"]);
    for &i in n.as_slice() {
        t.push(ctx.value_row(vec![i.to_string()], &partial_sum(ctx.params, i))?);
    }
    Ok(OutputRecord::new("sum", t))
}

impl Ctx<'_> {
    fn limits_order(&self, what: &'static str, requested: u64) -> Result<(), CliError> {
        if requested > self.limits.max_order {
            return Err(Error::ResourceGuard {
                what,
                requested,
                max: self.limits.max_order,
            }
            .into());
        }
        Ok(())
    }
}

fn reduite(ctx: &Ctx, n: u64, m: &IndexList) -> Result<OutputRecord, CliError> {
    let wanted = m.as_slice();
    let last = *wanted.last().expect("nonempty");
    let mut t = ctx.value_columns(&["m", "A", "B"]);
    let mut next = wanted.iter().peekable();
    for pair in convergents(ctx.params, n, last, &ctx.limits)? {
        if next.peek() == Some(&&pair.m) {
            next.next();
            let lead = vec![pair.m.to_string(), pair.a.to_string(), pair.b.to_string()];
            t.push(ctx.value_row(lead, &pair.reduite())?);
        }
    }
    let mut record = OutputRecord::new("reduite", t);
    record.summarize("n", n);
    Ok(record)
}

fn accel_cmd(
    ctx: &Ctx,
    kind: KindArg,
    m: Option<&IndexList>,
    n: Option<&IndexList>,
    zeta: Extractor,
) -> Result<OutputRecord, CliError> {
    let need = |v: Option<&IndexList>, flag: &str| {
        v.cloned().ok_or_else(|| {
            CliError::Usage(format!("--kind {kind:?} needs --{flag}").to_lowercase())
        })
    };
    let (column, indices, values, label) = match kind {
        KindArg::U => {
            let m = need(m, "m")?.single("m")?;
            let n = need(n, "n")?;
            let vals = map_indices(n.as_slice(), |i| {
                accel::accel_value(ctx.params, m, i, &ctx.limits)
            })?;
            ("n", n, vals, AccelKind::U { m }.to_string())
        }
        KindArg::V => {
            let n = need(n, "n")?.single("n")?;
            let m = need(m, "m")?;
            let last = *m.as_slice().last().expect("nonempty");
            let all = accel::v_sequence(ctx.params, n, 0..=last, &ctx.limits)?;
            let vals = m
                .as_slice()
                .iter()
                .map(|&i| all[i as usize].clone())
                .collect();
            ("m", m, vals, AccelKind::V { n }.to_string())
        }
        KindArg::W => {
            let n = need(n, "n")?;
            let vals = map_indices(n.as_slice(), |i| accel::w_value(ctx.params, i, &ctx.limits))?;
            ("n", n, vals, AccelKind::W.to_string())
        }
        KindArg::Wzeta => {
            let n = need(n, "n")?;
            let vals = map_indices(n.as_slice(), |i| {
                accel::w_zeta_value(ctx.params, zeta, i, &ctx.limits)
            })?;
            ("n", n, vals, AccelKind::WZeta(zeta).to_string())
        }
    };
    let mut t = ctx.value_columns(&[column]);
    for (i, x) in indices.as_slice().iter().zip(&values) {
        t.push(ctx.value_row(vec![i.to_string()], x)?);
    }
    let mut record = OutputRecord::new("accel", t);
    record.summarize("kind", label);
    Ok(record)
}

fn map_indices(
    indices: &[u64],
    f: impl Fn(u64) -> cha_core::Result<ExactRational> + Sync,
) -> Result<Vec<ExactRational>, CliError> {
    use rayon::prelude::*;
    Ok(indices
        .par_iter()
        .map(|&i| f(i))
        .collect::<cha_core::Result<_>>()?)
}

fn require_heavy(ctx: &Ctx, what: &str, requested: u64, threshold: u64) -> Result<(), CliError> {
    if requested > threshold && !ctx.common.heavy {
        return Err(CliError::Guard(format!(
            "{what} = {requested} is a long run (above {threshold}); pass --heavy to allow it"
        )));
    }
    Ok(())
}

fn oracle_reference(ctx: &Ctx, digits: u64) -> Result<ReferenceSum, CliError> {
    let io = |e: std::io::Error, dir: &std::path::Path| {
        CliError::Failure(format!("cache directory {}: {e}", dir.display()))
    };
    if let Some(dir) = &ctx.common.cache_dir {
        if let Some(hit) =
            oracle::load_reference(dir, ctx.params, digits).map_err(|e| io(e, dir))?
        {
            return Ok(hit);
        }
    }
    let fresh = oracle::reference_sum(ctx.params, digits, &ctx.limits)?;
    if let Some(dir) = &ctx.common.cache_dir {
        oracle::store_reference(dir, &fresh).map_err(|e| io(e, dir))?;
    }
    Ok(fresh)
}

fn oracle_cmd(ctx: &Ctx, digits: u64) -> Result<OutputRecord, CliError> {
    require_heavy(ctx, "oracle --digits", digits, HEAVY_ORACLE_DIGITS)?;
    let reference = oracle_reference(ctx, digits)?;
    let enc = &reference.enclosure;
    // Outward rounding at `digits` decimals keeps the printed bounds certified.
    let lo = to_decimal(&enc.lo, digits, Rounding::Truncate, &ctx.limits)?;
    let mut hi = to_decimal(&enc.hi, digits, Rounding::Truncate, &ctx.limits)?;
    if hi.to_rational() < enc.hi {
        let up = hi.to_rational() + ten_pow(-(digits as i64));
        hi = to_decimal(&up, digits, Rounding::Truncate, &ctx.limits)?;
    }
    let mut cols = vec!["digits", "order", "value", "lo", "hi", "width"];
    if ctx.common.exact {
        cols.extend(["lo_exact", "hi_exact"]);
    }
    let mut t = Table::new(cols);
    let mut row = vec![
        digits.to_string(),
        reference.order_used.to_string(),
        ctx.dec(&enc.midpoint())?,
        lo.to_string(),
        hi.to_string(),
        error_sci(&enc.width()),
    ];
    if ctx.common.exact {
        row.extend([fraction(&enc.lo), fraction(&enc.hi)]);
    }
    t.push(row);
    let mut record = OutputRecord::new("oracle", t);
    record.oracle_digits = Some(digits);
    Ok(record)
}

fn list_or(v: Option<&IndexList>, default: &str) -> IndexList {
    v.cloned()
        .unwrap_or_else(|| default.parse().expect("valid default"))
}

fn normalized_table(lead: &str, check: &EquivalentCheck) -> Table {
    let mut t = Table::new([
        lead,
        "error",
        "normalized",
        "normalized_lo",
        "normalized_hi",
    ]);
    for p in &check.points {
        let mut row = vec![p.index.to_string(), error_sci(&p.error.hi)];
        row.extend(bounds_cells(p.normalized));
        t.push(row);
    }
    t
}

fn equivalent_record(lead: &str, check: &EquivalentCheck) -> OutputRecord {
    let mut record = OutputRecord::new("rates", normalized_table(lead, check));
    record.oracle_digits = Some(check.oracle_digits);
    record.summarize("formula", &check.formula);
    record
}

fn rates(
    ctx: &Ctx,
    theorem: u8,
    n: Option<&IndexList>,
    m: Option<&IndexList>,
    zeta: Extractor,
) -> Result<OutputRecord, CliError> {
    let (params, limits) = (ctx.params, &ctx.limits);
    let mut record = match theorem {
        1 => {
            let n = list_or(n, "10..=100:10");
            let check = analysis::theorem1_check(params, n.as_slice(), limits)?;
            let mut r = equivalent_record("n", &check);
            r.summarize("target", float(check.target));
            r
        }
        2 => {
            let m = list_or(m, "0").single("m")?;
            let n = list_or(n, "50..=500:50");
            let check = analysis::theorem2_check(params, m, n.as_slice(), limits)?;
            let mut r = equivalent_record("n", &check);
            r.summarize("m", m);
            r.summarize("target", float(check.target));
            r
        }
        3 => {
            let n = list_or(n, "0").single("n")?;
            let m = list_or(m, "20..=400:20");
            let fit = analysis::theorem3_fit(params, n, m.as_slice(), limits)?;
            let mut r = equivalent_record("m", &fit.check);
            r.summarize("n", n);
            r.summarize("exponent", float(fit.exponent));
            r.summarize("omega_estimate", float(fit.omega_estimate));
            r.summarize("relative_spread", float(fit.relative_spread));
            r.summarize("plateau", fit.plateau);
            r
        }
        4 => {
            let m = list_or(m, "1").single("m")?;
            let n = list_or(n, "50..=300:10");
            let rep = analysis::theorem4_check(params, m, n.as_slice(), limits)?;
            let mut t = Table::new(["n", "log10_ratio", "log10_ratio_lo", "log10_ratio_hi"]);
            for (i, b) in &rep.points {
                let mut row = vec![i.to_string()];
                row.extend(bounds_cells(*b));
                t.push(row);
            }
            let mut r = OutputRecord::new("rates", t);
            r.oracle_digits = Some(rep.oracle_digits);
            r.summarize("m", m);
            r.summarize("fitted_slope", float(rep.fitted_slope));
            r.summarize("predicted_slope", float(rep.predicted_slope));
            r.summarize("trend", format!("{:?}", rep.trend).to_lowercase());
            r
        }
        5 => {
            let n = list_or(n, "100..=300:50");
            let kind = SequenceKind::Accel(AccelKind::W);
            let rep = analysis::rate_report(params, kind, n.as_slice(), limits)?;
            let mut t = Table::new([
                "n",
                "error",
                "log10_ratio",
                "log10_ratio_lo",
                "log10_ratio_hi",
            ]);
            for p in &rep.points {
                let mut row = vec![p.index.to_string(), error_sci(&p.error.hi)];
                row.extend(bounds_cells(p.log10_ratio));
                t.push(row);
            }
            let mut r = OutputRecord::new("rates", t);
            r.oracle_digits = Some(rep.oracle_digits);
            r.summarize(
                "log10_ratio_lower_bound",
                float(analysis::w_rate_lower_log10()),
            );
            r.summarize(
                "log10_ratio_upper_bound",
                float(analysis::w_rate_upper_log10()),
            );
            r
        }
        6 => {
            let n = list_or(n, "4..=12");
            let rep = analysis::theorem6_check(params, zeta, n.as_slice(), limits)?;
            let mut t = Table::new([
                "n",
                "zeta_n",
                "error",
                "normalized",
                "normalized_lo",
                "normalized_hi",
                "ratio",
            ]);
            for p in &rep.check.points {
                let mut row = vec![
                    p.index.to_string(),
                    zeta.eval(p.index)?.to_string(),
                    error_sci(&p.error.hi),
                ];
                row.extend(bounds_cells(p.normalized));
                let ratio = rep
                    .ratios
                    .iter()
                    .find(|(i, _)| *i == p.index)
                    .and_then(|(_, b)| *b);
                row.push(ratio.map(|b| float(b.value)).unwrap_or_default());
                t.push(row);
            }
            let mut r = OutputRecord::new("rates", t);
            r.oracle_digits = Some(rep.check.oracle_digits);
            r.summarize("formula", &rep.check.formula);
            r.summarize("zeta", zeta);
            r.summarize("superlinear_hypothesis", rep.superlinear_hypothesis);
            r.summarize("strictly_decreasing", rep.strictly_decreasing);
            r
        }
        _ => unreachable!("clap restricts --theorem to 1..=6"),
    };
    record
        .summary
        .insert(0, ("theorem".into(), theorem.to_string()));
    Ok(record)
}

fn chi(ctx: &Ctx, n: u64) -> Result<OutputRecord, CliError> {
    require_heavy(ctx, "chi --n", n, HEAVY_CHI_N)?;
    let est = analysis::chi_estimate(ctx.params, n, &ctx.limits)?;
    let mut t = Table::new(["n", "log10_ratio", "error_bar", "ratio"]);
    t.push(vec![
        n.to_string(),
        float(est.log10_ratio),
        format!("{:.3e}", est.error_bar),
        float(est.ratio()),
    ]);
    let mut record = OutputRecord::new("chi", t);
    record.oracle_digits = Some(est.oracle_digits);
    Ok(record)
}

fn aitken(ctx: &Ctx, n: &IndexList) -> Result<OutputRecord, CliError> {
    let values = map_indices(n.as_slice(), |i| {
        accel::aitken_sequence(ctx.params, i..=i, &ctx.limits).map(|mut v| v.remove(0))
    })?;
    let mut cols = vec!["n", "aitken", "u0", "equal"];
    if ctx.common.exact {
        cols.push("exact");
    }
    let mut t = Table::new(cols);
    for (&i, x) in n.as_slice().iter().zip(&values) {
        let u0 = accel::accel_value(ctx.params, 0, i - 1, &ctx.limits)?;
        let mut row = vec![
            i.to_string(),
            ctx.dec(x)?,
            ctx.dec(&u0)?,
            (*x == u0).to_string(),
        ];
        if ctx.common.exact {
            row.push(fraction(x));
        }
        t.push(row);
    }
    Ok(OutputRecord::new("aitken", t))
}

fn scan(ctx: &Ctx, total: u64) -> Result<OutputRecord, CliError> {
    let rep = analysis::budget_scan(ctx.params, total, &ctx.limits)?;
    let mut t = Table::new(["n", "m", "digits"]);
    for p in &rep.points {
        t.push(vec![p.n.to_string(), p.m.to_string(), p.digits.to_string()]);
    }
    let mut record = OutputRecord::new("scan", t);
    record.oracle_digits = Some(rep.oracle_digits);
    record.summarize("N", total);
    let argmax: Vec<String> = rep.argmax.iter().map(u64::to_string).collect();
    record.summarize("argmax", argmax.join(" "));
    record.summarize("unimodal", rep.is_unimodal(4));
    Ok(record)
}

fn table(ctx: &Ctx, id: TableId) -> Result<(OutputRecord, Vec<String>), CliError> {
    let cells = tables::reproduce(id, &ctx.limits)?;
    let mut t = Table::new([
        "row",
        "column",
        "expected",
        "computed",
        "deviation",
        "tolerance",
        "match",
    ]);
    let mut bad = Vec::new();
    for c in &cells {
        let shown = to_decimal(
            &c.computed,
            c.decimals() as u64 + 3,
            Rounding::HalfEven,
            &ctx.limits,
        )?;
        if !c.matches() {
            bad.push(format!(
                "row {} column {}: expected {}, computed {}, deviation {} > {}",
                c.row,
                c.column,
                c.expected,
                shown,
                error_sci(&c.deviation),
                error_sci(&c.tolerance)
            ));
        }
        t.push(vec![
            c.row.clone(),
            c.column.clone(),
            c.expected.to_string(),
            shown.to_string(),
            error_sci(&c.deviation),
            error_sci(&c.tolerance),
            c.matches().to_string(),
        ]);
    }
    let mut record = OutputRecord::new("table", t);
    record.summarize("id", id);
    record.summarize("cells", cells.len());
    record.summarize("mismatches", bad.len());
    Ok((record, bad))
}

fn extract(ctx: &Ctx, zeta: Extractor, n: u64, k: u64) -> Result<OutputRecord, CliError> {
    let cmp = analysis::semi_vs_full_extraction(ctx.params, zeta, n, k, &ctx.limits)?;
    let mut t = Table::new(["scheme", "order", "digits"]);
    t.push(vec![
        "semi".into(),
        cmp.semi_index.to_string(),
        cmp.semi_digits.to_string(),
    ]);
    t.push(vec![
        "full".into(),
        cmp.full_order.to_string(),
        cmp.full_digits.to_string(),
    ]);
    let mut record = OutputRecord::new("extract", t);
    record.oracle_digits = Some(cmp.oracle_digits);
    record.summarize("zeta", zeta);
    Ok(record)
}
