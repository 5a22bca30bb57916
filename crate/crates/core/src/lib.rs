//! Exact-arithmetic convergence acceleration for alternating congruo-harmonic
//! (CHA) series `S(p, q) = sum_{k>=0} (-1)^k / (pk + q)`.
//!
//! The tail of a CHA series after rank `n` has an exact generalized continued
//! fraction expansion. Truncating it at order `m` and adding the truncation to
//! the partial sum gives a two-parameter family of rational approximants
//! `S^(n) + (-1)^(n+1) A_m / B_m`. Reading that family along different axes
//! yields the U (fixed `m`), V (fixed `n`), W (diagonal) and W-zeta
//! (semi-extracted diagonal) acceleration schemes.
//!
//! Every value in this crate is an exact rational. Floating point only shows
//! up in [`analysis`], where rate estimates are reported.
//!
//! ```
//! use cha_core::{accel, Limits, SeriesParams};
//!
//! let leibniz = SeriesParams::new(2, 1).unwrap();
//! let w = accel::w_value(leibniz, 10, &Limits::default()).unwrap();
//! let four_w = w * cha_core::ExactRational::from_integer(4.into());
//! assert_eq!(four_w.to_string(), "3781715948011520/1203757572990973");
//! ```

pub mod accel;
pub mod analysis;
pub mod contfrac;
mod error;
mod limits;
pub mod oracle;
pub mod rational;
pub mod series;
pub mod tables;

pub use accel::{AccelKind, Extractor};
pub use contfrac::{ConvergentPair, Enclosure, EnclosureTarget};
pub use error::{Error, Result};
pub use limits::Limits;
pub use oracle::{DigitsCorrect, ErrorInterval, ReferenceSum};
pub use rational::{DecimalRendering, ExactRational, Rounding};
pub use series::SeriesParams;
