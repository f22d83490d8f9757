//! Quality-factor identification: narrow the admissible scale values from the
//! observed quantization steps, then verify each candidate exactly.
//!
//! Every observed step constrains the scale value `S` to a small rational
//! band. Intersecting the bands over all selected steps leaves an interval
//! that typically admits zero or one of the hundred standard scale values;
//! surviving candidates are then confirmed step by step against the tables
//! they would have produced.

use std::fmt;

use crate::error::{Error, Result};
use crate::ijg::{self, Channel, QualityFactor, QuantMatrix};
use crate::{Rational, ScaleInterval};

/// Which of the two quantization tables participate in identification.
///
/// Encoded on the command line as `1` (luminance), `2` (chrominance) or `3`
/// (both). At least one channel is always selected; the constructors enforce
/// that.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ChannelMask {
    luminance: bool,
    chrominance: bool,
}

impl ChannelMask {
    pub const LUMINANCE: Self = Self { luminance: true, chrominance: false };
    pub const CHROMINANCE: Self = Self { luminance: false, chrominance: true };
    pub const BOTH: Self = Self { luminance: true, chrominance: true };

    pub fn new(luminance: bool, chrominance: bool) -> Result<Self> {
        if !luminance && !chrominance {
            return Err(Error::InvalidArgument(
                "channel mask must select at least one channel".to_string(),
            ));
        }
        Ok(Self { luminance, chrominance })
    }

    /// Decode the command-line channel selector.
    pub fn from_arg(arg: u8) -> Result<Self> {
        match arg {
            1 => Ok(Self::LUMINANCE),
            2 => Ok(Self::CHROMINANCE),
            3 => Ok(Self::BOTH),
            other => Err(Error::InvalidArgument(format!(
                "channel selector {other} not in 1..=3"
            ))),
        }
    }

    /// The command-line encoding of this mask.
    pub fn arg(self) -> u8 {
        u8::from(self.luminance) | u8::from(self.chrominance) << 1
    }

    pub fn selects(self, channel: Channel) -> bool {
        match channel {
            Channel::Luminance => self.luminance,
            Channel::Chrominance => self.chrominance,
        }
    }

    /// Selected channels, luminance first.
    pub fn channels(self) -> impl Iterator<Item = Channel> {
        Channel::all().into_iter().filter(move |c| self.selects(*c))
    }
}

impl fmt::Display for ChannelMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.luminance, self.chrominance) {
            (true, false) => f.write_str("luminance"),
            (false, true) => f.write_str("chrominance"),
            _ => f.write_str("luminance+chrominance"),
        }
    }
}

/// The quantization tables extracted from one file. Either slot may be absent
/// (grayscale files usually define only table 0).
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct TablePair {
    pub luminance: Option<QuantMatrix>,
    pub chrominance: Option<QuantMatrix>,
}

impl TablePair {
    /// The pair a standard encoder writes at the given quality.
    pub fn standard(quality: QualityFactor) -> Self {
        Self {
            luminance: Some(ijg::synthesize_matrix(quality, Channel::Luminance)),
            chrominance: Some(ijg::synthesize_matrix(quality, Channel::Chrominance)),
        }
    }

    pub fn get(&self, channel: Channel) -> Option<&QuantMatrix> {
        match channel {
            Channel::Luminance => self.luminance.as_ref(),
            Channel::Chrominance => self.chrominance.as_ref(),
        }
    }

    pub fn set(&mut self, channel: Channel, matrix: QuantMatrix) {
        match channel {
            Channel::Luminance => self.luminance = Some(matrix),
            Channel::Chrominance => self.chrominance = Some(matrix),
        }
    }
}

/// One step that disagrees with the candidate's synthesized table.
/// Indices are zero-based.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct StepDiff {
    pub channel: Channel,
    pub row: usize,
    pub col: usize,
    pub observed: u16,
    pub expected: u16,
}

impl fmt::Display for StepDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{}][{}]: observed {}, expected {}",
            self.channel, self.row, self.col, self.observed, self.expected
        )
    }
}

/// What identification concluded about a table pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IdentificationOutcome {
    /// Exactly one standard quality reproduces every selected step.
    Exact(QualityFactor),
    /// The scale interval admitted at least one candidate, but none matched
    /// step for step. `quality` is the highest candidate tried and `diffs`
    /// its disagreements.
    CandidateMismatch {
        quality: QualityFactor,
        diffs: Vec<StepDiff>,
    },
    /// No standard scale value falls in the narrowed interval, which is kept
    /// for diagnostics (it is often empty).
    NoCandidate { interval: ScaleInterval },
}

/// Admissible scale values for one observed step.
///
/// Solving the synthesis formula for `S` at observed step `q` over base step
/// `d` gives the half-open band `[(100q - 150) / d, (100q + 50) / d)`. The
/// band is one rounding unit wider at the bottom than inversion alone would
/// give, which also absorbs the clamp of computed zeros up to 1, so observed
/// ones need no special handling.
///
/// An observed 255 does: an 8-bit encoder clamps every larger computed value
/// down to 255, so the observation only bounds `S` from below and the band is
/// the half-line `[(100*255 - 150) / d, +inf)`. Without this, the coarsest
/// qualities — whose tables saturate — could never be recovered from their
/// own output.
pub fn step_interval(step: u16, base: u16) -> Result<ScaleInterval> {
    if base == 0 {
        return Err(Error::InvalidArgument(
            "zero base quantization step".to_string(),
        ));
    }
    let q = i64::from(step);
    let d = i64::from(base);
    let lo = Rational::new(100 * q - 150, d);
    if step == 255 {
        Ok(ScaleInterval::unbounded_above(lo))
    } else {
        Ok(ScaleInterval::new(lo, Rational::new(100 * q + 50, d)))
    }
}

/// Intersect the step bands over every step the mask selects.
///
/// The result may be empty; that is a finding (no scale value explains the
/// table), not an error.
pub fn narrow(tables: &TablePair, mask: ChannelMask) -> Result<ScaleInterval> {
    let base = ijg::base_tables();
    let mut acc: Option<ScaleInterval> = None;
    for channel in mask.channels() {
        let observed = tables
            .get(channel)
            .ok_or(Error::MissingTable(channel))?;
        for (&q, &d) in observed.steps().iter().zip(base.channel(channel).steps()) {
            let band = step_interval(q, d)?;
            acc = Some(match acc {
                Some(prev) => prev.intersect(&band),
                None => band,
            });
        }
    }
    Ok(acc.expect("a channel mask always selects at least one channel"))
}

/// All standard quality factors whose scale value lies in the interval,
/// highest quality first.
pub fn candidates(interval: &ScaleInterval) -> Vec<QualityFactor> {
    QualityFactor::all()
        .rev()
        .filter(|&q| {
            let s = Rational::from_integer(i64::from(ijg::quality_scaling(q).get()));
            interval.contains(&s)
        })
        .collect()
}

/// Compare the selected observed tables against the candidate's synthesized
/// ones, reporting every disagreeing step (luminance first, row-major).
pub fn verify(
    quality: QualityFactor,
    tables: &TablePair,
    mask: ChannelMask,
) -> Result<Vec<StepDiff>> {
    let mut diffs = Vec::new();
    for channel in mask.channels() {
        let observed = tables
            .get(channel)
            .ok_or(Error::MissingTable(channel))?;
        let expected = ijg::synthesize_matrix(quality, channel);
        for row in 0..8 {
            for col in 0..8 {
                let (o, e) = (observed.get(row, col), expected.get(row, col));
                if o != e {
                    diffs.push(StepDiff {
                        channel,
                        row,
                        col,
                        observed: o,
                        expected: e,
                    });
                }
            }
        }
    }
    Ok(diffs)
}

/// The full pipeline: narrow, enumerate candidates in decreasing order, and
/// verify each until one matches exactly.
pub fn identify(tables: &TablePair, mask: ChannelMask) -> Result<IdentificationOutcome> {
    let interval = narrow(tables, mask)?;
    let found = candidates(&interval);
    let mut first_failure: Option<(QualityFactor, Vec<StepDiff>)> = None;
    for &quality in &found {
        let diffs = verify(quality, tables, mask)?;
        if diffs.is_empty() {
            return Ok(IdentificationOutcome::Exact(quality));
        }
        if first_failure.is_none() {
            first_failure = Some((quality, diffs));
        }
    }
    Ok(match first_failure {
        Some((quality, diffs)) => IdentificationOutcome::CandidateMismatch { quality, diffs },
        None => IdentificationOutcome::NoCandidate { interval },
    })
}
