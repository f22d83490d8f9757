//! Determine which standard JPEG quality factor, if any, produced a file's
//! quantization tables.
//!
//! Encoders in the lineage of the reference implementation derive their
//! quantization tables from two fixed base matrices and a quality factor
//! `F` in `1..=100`. That derivation is invertible in practice: each observed
//! step confines the internal scale value to a small rational interval, the
//! intersection over all 64 (or 128) steps usually pins down a single
//! candidate, and an exact step-by-step comparison confirms or rejects it.
//!
//! ```
//! use jpegqf::{identify, ChannelMask, IdentificationOutcome, TablePair};
//! use jpegqf::ijg::QualityFactor;
//!
//! let pair = TablePair::standard(QualityFactor::new(75)?);
//! let outcome = identify(&pair, ChannelMask::BOTH)?;
//! assert_eq!(outcome, IdentificationOutcome::Exact(QualityFactor::new(75)?));
//! # Ok::<(), jpegqf::Error>(())
//! ```
//!
//! [`jpeg::extract_tables`] pulls the table pair out of raw file bytes, and
//! the `jpegqf` binary wraps the whole pipeline with an exit-code protocol
//! (see [`cli`]).

pub mod cli;
pub mod corpus;
mod error;
pub mod identify;
pub mod ijg;
pub mod interval;
pub mod jpeg;

pub use error::{Error, Result};
pub use identify::{identify, ChannelMask, IdentificationOutcome, StepDiff, TablePair};
pub use ijg::{Channel, QualityFactor, QuantMatrix};

/// Exact scalar used for interval endpoints: scale values are ratios of
/// small integers, so identification never rounds.
pub type Rational = num_rational::Ratio<i64>;

/// The admissible-scale interval type the identification math works in.
pub type ScaleInterval = interval::Interval<Rational>;
