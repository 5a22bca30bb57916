use crate::error::{Error, Result};

/// Resource guards applied before any potentially huge computation.
///
/// Convergent denominators grow like `(2pn)^(m+1)`, so an unchecked order or
/// precision request can easily ask for gigabytes of integer storage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest continued-fraction order `m`, and largest partial-sum order `n`.
    pub max_order: u64,
    /// Largest number of certified digits the oracle will aim for.
    pub max_digits: u64,
    /// Largest number of decimals [`crate::rational::to_decimal`] will render.
    pub max_decimals: u64,
}

impl Limits {
    pub const DEFAULT_MAX_ORDER: u64 = 100_000;
    pub const DEFAULT_MAX_DIGITS: u64 = 5_000;
    pub const DEFAULT_MAX_DECIMALS: u64 = 100_000;

    pub(crate) fn check_order(&self, what: &'static str, requested: u64) -> Result<()> {
        guard(what, requested, self.max_order)
    }

    pub(crate) fn check_digits(&self, requested: u64) -> Result<()> {
        guard("oracle digits", requested, self.max_digits)
    }

    pub(crate) fn check_decimals(&self, requested: u64) -> Result<()> {
        guard("decimals", requested, self.max_decimals)
    }
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_order: Self::DEFAULT_MAX_ORDER,
            max_digits: Self::DEFAULT_MAX_DIGITS,
            max_decimals: Self::DEFAULT_MAX_DECIMALS,
        }
    }
}

fn guard(what: &'static str, requested: u64, max: u64) -> Result<()> {
    if requested > max {
        Err(Error::ResourceGuard {
            what,
            requested,
            max,
        })
    } else {
        Ok(())
    }
}
