//! Reference tables of known values, stored as displayed strings.
//!
//! Display rounding conventions are unknown, so a cell matches when the
//! computed value is within `10^-d` of the displayed value, `d` being the
//! number of displayed decimals.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use crate::accel::{accel_value, w_value};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rational::{displayed_decimals, parse_decimal, ten_pow, ExactRational};
use crate::series::{partial_sum, SeriesParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableId {
    /// Partial sums of (2;1) and (1;2) at n = 100, 1000, 10000.
    PartialSums = 1,
    /// `S^(n) + (-1)^(n+1) rho_m^(n)` for (2;1), `(n, m)` in `[0, 4]^2`.
    Grid = 2,
    /// W values of (1;1), (10;1), (1;10) at n = 0, 3, 5, 7.
    Diagonal = 3,
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(TableId::PartialSums),
            "2" => Ok(TableId::Grid),
            "3" => Ok(TableId::Diagonal),
            _ => Err(Error::InvalidArgument(format!("unknown table id {s:?}"))),
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", *self as u8)
    }
}

const TABLE1: [((u64, u64), [&str; 3]); 2] = [
    ((2, 1), ["0,787873", "0,785647", "0,78542316"]),
    ((1, 2), ["0,311730", "0,307351", "0,30690280"]),
];
const TABLE1_N: [u64; 3] = [100, 1000, 10_000];

const TABLE2: [[&str; 5]; 5] = [
    [
        "0,75000",
        "0,8000000",
        "0,77777778",
        "0,790123457",
        "0,782222222",
    ],
    [
        "0,79167",
        "0,7843137",
        "0,78571429",
        "0,785276074",
        "0,785454545",
    ],
    [
        "0,78333",
        "0,7855856",
        "0,78536585",
        "0,785406302",
        "0,785395537",
    ],
    [
        "0,78631",
        "0,7853480",
        "0,78540373",
        "0,785397206",
        "0,785398385",
    ],
    [
        "0,78492",
        "0,7854157",
        "0,78539682",
        "0,785398328",
        "0,785398135",
    ],
];

const TABLE3: [((u64, u64), [&str; 4]); 3] = [
    (
        (1, 1),
        [
            "0,66667",
            "0,693146417445",
            "0,693147179886527",
            "0,693147180559356",
        ],
    ),
    (
        (10, 1),
        [
            "0,91667",
            "0,938093859970",
            "0,938094286672162",
            "0,938094287032576",
        ],
    ),
    (
        (1, 10),
        [
            "0,05238",
            "0,052487740006",
            "0,052487740074957",
            "0,052487740074975",
        ],
    ),
];
const TABLE3_N: [u64; 4] = [0, 3, 5, 7];

/// One compared cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellCheck {
    pub row: String,
    pub column: String,
    /// Displayed value, verbatim.
    pub expected: &'static str,
    pub computed: ExactRational,
    /// `|computed - expected|`.
    pub deviation: ExactRational,
    /// `10^-d`.
    pub tolerance: ExactRational,
}

impl CellCheck {
    fn new(row: String, column: String, expected: &'static str, computed: ExactRational) -> Self {
        let shown = parse_decimal(expected).expect("fixtures are valid decimals");
        let tolerance = ten_pow(-(displayed_decimals(expected) as i64));
        Self {
            row,
            column,
            expected,
            deviation: (&computed - shown).abs(),
            computed,
            tolerance,
        }
    }

    pub fn matches(&self) -> bool {
        self.deviation <= self.tolerance
    }

    pub fn decimals(&self) -> usize {
        displayed_decimals(self.expected)
    }
}

fn params(p: u64, q: u64) -> SeriesParams {
    SeriesParams::new(p, q).expect("fixture parameters are positive")
}

/// Recomputes every cell of a table.
pub fn reproduce(id: TableId, limits: &Limits) -> Result<Vec<CellCheck>> {
    let mut cells = Vec::new();
    match id {
        TableId::PartialSums => {
            for ((p, q), row) in TABLE1 {
                for (n, expected) in TABLE1_N.iter().zip(row) {
                    limits.check_order("partial-sum order", *n)?;
                    let value = partial_sum(params(p, q), *n);
                    cells.push(CellCheck::new(
                        format!("S({p};{q})"),
                        format!("n={n}"),
                        expected,
                        value,
                    ));
                }
            }
        }
        TableId::Grid => {
            for (n, row) in TABLE2.iter().enumerate() {
                for (m, expected) in row.iter().enumerate() {
                    let value = accel_value(params(2, 1), m as u64, n as u64, limits)?;
                    cells.push(CellCheck::new(
                        format!("n={n}"),
                        format!("m={m}"),
                        expected,
                        value,
                    ));
                }
            }
        }
        TableId::Diagonal => {
            for ((p, q), row) in TABLE3 {
                for (n, expected) in TABLE3_N.iter().zip(row) {
                    let value = w_value(params(p, q), *n, limits)?;
                    cells.push(CellCheck::new(
                        format!("w({p};{q})"),
                        format!("n={n}"),
                        expected,
                        value,
                    ));
                }
            }
        }
    }
    Ok(cells)
}
