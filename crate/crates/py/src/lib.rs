//! Python bindings: a `Series(p, q)` class whose methods return exact
//! `fractions.Fraction` values, plus table reproduction and Aitken's process.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use cha_core::accel;
use cha_core::analysis;
use cha_core::contfrac;
use cha_core::oracle;
use cha_core::series;
use cha_core::tables::{self, TableId};
use cha_core::{Error, ExactRational, Extractor, Limits, SeriesParams};

create_exception!(
    cha,
    ResourceGuardError,
    PyRuntimeError,
    "A resource limit refused the request."
);

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::ResourceGuard { .. } => ResourceGuardError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, x: &ExactRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((x.numer().clone(), x.denom().clone()))
}

/// Accepts `int`, `Fraction`, or anything with integer `numerator` and `denominator`.
fn from_py(x: &Bound<'_, PyAny>) -> PyResult<ExactRational> {
    let num: BigInt = x.getattr("numerator")?.extract()?;
    let den: BigInt = x.getattr("denominator")?.extract()?;
    if den == BigInt::from(0) {
        return Err(PyValueError::new_err("zero denominator"));
    }
    Ok(ExactRational::new(num, den))
}

fn parse_extractor(zeta: &str) -> PyResult<Extractor> {
    zeta.parse().map_err(to_py_err)
}

/// The alternating series `sum_k (-1)^k / (pk + q)`.
#[pyclass(frozen, module = "cha")]
struct Series {
    params: SeriesParams,
    limits: Limits,
}

#[pymethods]
impl Series {
    #[new]
    #[pyo3(signature = (p, q, max_order = Limits::DEFAULT_MAX_ORDER, max_digits = Limits::DEFAULT_MAX_DIGITS))]
    fn new(p: u64, q: u64, max_order: u64, max_digits: u64) -> PyResult<Self> {
        Ok(Self {
            params: SeriesParams::new(p, q).map_err(to_py_err)?,
            limits: Limits {
                max_order,
                max_digits,
                ..Limits::default()
            },
        })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.params.p()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.params.q()
    }

    fn __repr__(&self) -> String {
        format!("Series(p={}, q={})", self.params.p(), self.params.q())
    }

    /// `S^(n)`, the sum of the first `n + 1` terms.
    fn partial_sum<'py>(&self, py: Python<'py>, n: u64) -> PyResult<Bound<'py, PyAny>> {
        if n > self.limits.max_order {
            return Err(to_py_err(Error::ResourceGuard {
                what: "partial-sum order",
                requested: n,
                max: self.limits.max_order,
            }));
        }
        fraction(py, &series::partial_sum(self.params, n))
    }

    /// `A_m / B_m` of the remainder after rank `n`.
    fn reduite<'py>(&self, py: Python<'py>, n: u64, m: u64) -> PyResult<Bound<'py, PyAny>> {
        fraction(
            py,
            &contfrac::reduite(self.params, n, m, &self.limits).map_err(to_py_err)?,
        )
    }

    /// Unreduced `(A_m, B_m)` for `m = 0..=m_max`.
    fn convergents(&self, n: u64, m_max: u64) -> PyResult<Vec<(BigInt, BigInt)>> {
        Ok(contfrac::convergents(self.params, n, m_max, &self.limits)
            .map_err(to_py_err)?
            .map(|c| (c.a, c.b))
            .collect())
    }

    /// `S^(n) + (-1)^(n+1) A_m / B_m`.
    fn accel<'py>(&self, py: Python<'py>, m: u64, n: u64) -> PyResult<Bound<'py, PyAny>> {
        fraction(
            py,
            &accel::accel_value(self.params, m, n, &self.limits).map_err(to_py_err)?,
        )
    }

    /// Diagonal value `accel(n, n)`.
    fn w<'py>(&self, py: Python<'py>, n: u64) -> PyResult<Bound<'py, PyAny>> {
        fraction(
            py,
            &accel::w_value(self.params, n, &self.limits).map_err(to_py_err)?,
        )
    }

    /// `accel(n, zeta(n))`; `zeta` is `square`, `cube`, `identity`,
    /// `power:E`, `geometric:B` or `linear:C`.
    #[pyo3(signature = (n, zeta = "square"))]
    fn w_zeta<'py>(&self, py: Python<'py>, n: u64, zeta: &str) -> PyResult<Bound<'py, PyAny>> {
        let z = parse_extractor(zeta)?;
        fraction(
            py,
            &accel::w_zeta_value(self.params, z, n, &self.limits).map_err(to_py_err)?,
        )
    }

    /// Certified `(lo, hi)` around `S` from reduites `m` and `m + 1` after rank `n`.
    fn sum_enclosure<'py>(
        &self,
        py: Python<'py>,
        n: u64,
        m: u64,
    ) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
        let e = contfrac::sum_enclosure(self.params, n, m);
        Ok((fraction(py, &e.lo)?, fraction(py, &e.hi)?))
    }

    /// Certified `(lo, hi)` around `S`, narrower than `10^-digits`.
    fn reference<'py>(
        &self,
        py: Python<'py>,
        digits: u64,
    ) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
        let r =
            oracle::cached_reference_sum(self.params, digits, &self.limits).map_err(to_py_err)?;
        Ok((
            fraction(py, &r.enclosure.lo)?,
            fraction(py, &r.enclosure.hi)?,
        ))
    }

    /// `floor(-log10 |x - S|)` against a `digits`-digit reference, or
    /// `None` when that reference cannot decide it.
    fn digits_correct(&self, x: &Bound<'_, PyAny>, digits: u64) -> PyResult<Option<i64>> {
        let r =
            oracle::cached_reference_sum(self.params, digits, &self.limits).map_err(to_py_err)?;
        Ok(oracle::digits_correct(&from_py(x)?, &r).value())
    }

    /// `(log10_ratio, error_bar)` of the one-step W error ratio at `n`.
    fn chi(&self, n: u64) -> PyResult<(f64, f64)> {
        let est = analysis::chi_estimate(self.params, n, &self.limits).map_err(to_py_err)?;
        Ok((est.log10_ratio, est.error_bar))
    }
}

/// Aitken's delta-squared of three values (ints or Fractions).
#[pyfunction]
fn aitken<'py>(
    py: Python<'py>,
    x0: &Bound<'py, PyAny>,
    x1: &Bound<'py, PyAny>,
    x2: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let value =
        accel::aitken_delta2(&from_py(x0)?, &from_py(x1)?, &from_py(x2)?).map_err(to_py_err)?;
    fraction(py, &value)
}

/// Recomputes table 1, 2 or 3; one dict per cell.
#[pyfunction]
fn reproduce_table<'py>(py: Python<'py>, id: u8) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let id: TableId = id.to_string().parse().map_err(to_py_err)?;
    tables::reproduce(id, &Limits::default())
        .map_err(to_py_err)?
        .iter()
        .map(|c| {
            let d = PyDict::new(py);
            d.set_item("row", &c.row)?;
            d.set_item("column", &c.column)?;
            d.set_item("expected", c.expected)?;
            d.set_item("computed", fraction(py, &c.computed)?)?;
            d.set_item("matches", c.matches())?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn cha(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Series>()?;
    m.add_function(wrap_pyfunction!(aitken, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce_table, m)?)?;
    m.add(
        "ResourceGuardError",
        m.py().get_type::<ResourceGuardError>(),
    )?;
    Ok(())
}
