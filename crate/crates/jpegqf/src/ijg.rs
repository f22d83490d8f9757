//! The standard quantization tables and the quality scaling scheme used by
//! virtually every baseline JPEG encoder derived from the reference
//! implementation.
//!
//! A quality factor `F` in `1..=100` is first mapped to a scale value `S`,
//! then each step of a fixed base matrix `D` is scaled as
//! `floor((D * S + 50) / 100)` and clamped into `1..=255`. Everything in this
//! crate ultimately reasons about that one formula.

use std::fmt;

use crate::error::{Error, Result};

/// Base luminance matrix, row-major natural order.
const BASE_LUMINANCE: [u16; 64] = [
    16, 11, 10, 16, 24, 40, 51, 61, //
    12, 12, 14, 19, 26, 58, 60, 55, //
    14, 13, 16, 24, 40, 57, 69, 56, //
    14, 17, 22, 29, 51, 87, 80, 62, //
    18, 22, 37, 56, 68, 109, 103, 77, //
    24, 35, 55, 64, 81, 104, 113, 92, //
    49, 64, 78, 87, 103, 121, 120, 101, //
    72, 92, 95, 98, 112, 100, 103, 99,
];

/// Base chrominance matrix, row-major natural order.
const BASE_CHROMINANCE: [u16; 64] = [
    17, 18, 24, 47, 99, 99, 99, 99, //
    18, 21, 26, 66, 99, 99, 99, 99, //
    24, 26, 56, 99, 99, 99, 99, 99, //
    47, 66, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99,
];

/// A validated quality factor in `1..=100`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct QualityFactor(u8);

impl QualityFactor {
    pub fn new(value: u8) -> Result<Self> {
        if (1..=100).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::QualityOutOfRange(u16::from(value)))
        }
    }

    pub const fn get(self) -> u8 {
        self.0
    }

    /// All hundred quality factors in ascending order.
    pub fn all() -> impl DoubleEndedIterator<Item = Self> {
        (1..=100).map(Self)
    }
}

impl TryFrom<u8> for QualityFactor {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        Self::new(value)
    }
}

impl fmt::Display for QualityFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The scale value `S` a quality factor maps to. Ranges from 0 (quality 100)
/// up to 5000 (quality 1).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ScaleValue(u16);

impl ScaleValue {
    pub const fn get(self) -> u16 {
        self.0
    }
}

impl fmt::Display for ScaleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The two table roles a baseline JPEG distinguishes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Channel {
    Luminance,
    Chrominance,
}

impl Channel {
    pub const fn all() -> [Self; 2] {
        [Self::Luminance, Self::Chrominance]
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Luminance => "luminance",
            Self::Chrominance => "chrominance",
        })
    }
}

/// An 8×8 quantization matrix in row-major natural order.
///
/// Steps are `u16` so the same type can hold 16-bit tables from extended DQT
/// segments; all-8-bit tables simply never exceed 255. A step of zero is
/// meaningless (quantization divides by it) and is rejected on construction.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantMatrix {
    steps: [u16; 64],
}

impl QuantMatrix {
    pub fn new(steps: [u16; 64]) -> Result<Self> {
        if let Some(i) = steps.iter().position(|&s| s == 0) {
            return Err(Error::InvalidArgument(format!(
                "zero quantization step at index {i}"
            )));
        }
        Ok(Self { steps })
    }

    /// Step at zero-based `(row, col)`.
    ///
    /// # Panics
    ///
    /// Panics if `row` or `col` is 8 or more.
    pub fn get(&self, row: usize, col: usize) -> u16 {
        assert!(row < 8 && col < 8, "matrix index ({row}, {col}) out of range");
        self.steps[row * 8 + col]
    }

    pub const fn steps(&self) -> &[u16; 64] {
        &self.steps
    }

    /// Copy with one step replaced. Used to build perturbed fixtures.
    pub fn with_step(&self, row: usize, col: usize, value: u16) -> Result<Self> {
        if row >= 8 || col >= 8 {
            return Err(Error::InvalidArgument(format!(
                "matrix index ({row}, {col}) out of range"
            )));
        }
        if value == 0 {
            return Err(Error::InvalidArgument(
                "zero quantization step".to_string(),
            ));
        }
        let mut steps = self.steps;
        steps[row * 8 + col] = value;
        Ok(Self { steps })
    }
}

impl fmt::Debug for QuantMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("QuantMatrix")?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QuantMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.steps.chunks_exact(8) {
            writeln!(
                f,
                "{:>5} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5} {:>5}",
                row[0], row[1], row[2], row[3], row[4], row[5], row[6], row[7]
            )?;
        }
        Ok(())
    }
}

/// The pair of base matrices the scaling scheme starts from.
#[derive(Clone, Copy, Debug)]
pub struct BaseTables {
    pub luminance: QuantMatrix,
    pub chrominance: QuantMatrix,
}

impl BaseTables {
    pub fn channel(&self, channel: Channel) -> &QuantMatrix {
        match channel {
            Channel::Luminance => &self.luminance,
            Channel::Chrominance => &self.chrominance,
        }
    }
}

/// The standard base tables (the quality-50 matrices).
pub fn base_tables() -> BaseTables {
    BaseTables {
        luminance: QuantMatrix { steps: BASE_LUMINANCE },
        chrominance: QuantMatrix { steps: BASE_CHROMINANCE },
    }
}

/// Map a quality factor to its scale value: `200 - 2F` from quality 50 up,
/// `floor(5000 / F)` below.
pub fn quality_scaling(quality: QualityFactor) -> ScaleValue {
    let f = u16::from(quality.get());
    ScaleValue(if f >= 50 { 200 - 2 * f } else { 5000 / f })
}

/// Synthesize the standard matrix for a quality factor and channel:
/// every base step `d` becomes `floor((d*S + 50) / 100)` clamped to `1..=255`.
pub fn synthesize_matrix(quality: QualityFactor, channel: Channel) -> QuantMatrix {
    let s = u32::from(quality_scaling(quality).get());
    let base = match channel {
        Channel::Luminance => &BASE_LUMINANCE,
        Channel::Chrominance => &BASE_CHROMINANCE,
    };
    let mut steps = [0u16; 64];
    for (out, &d) in steps.iter_mut().zip(base) {
        *out = ((u32::from(d) * s + 50) / 100).clamp(1, 255) as u16;
    }
    QuantMatrix { steps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn qf(v: u8) -> QualityFactor {
        QualityFactor::new(v).unwrap()
    }

    /// Synthesis recomputed with exact rational arithmetic, independent of
    /// the integer shortcut the implementation takes.
    fn rational_synthesize(quality: u8, channel: Channel) -> [u16; 64] {
        let f = i64::from(quality);
        let s = if f >= 50 {
            Ratio::from_integer(200 - 2 * f)
        } else {
            (Ratio::from_integer(5000i64) / f).floor()
        };
        let base = match channel {
            Channel::Luminance => &BASE_LUMINANCE,
            Channel::Chrominance => &BASE_CHROMINANCE,
        };
        let mut out = [0u16; 64];
        for (o, &d) in out.iter_mut().zip(base) {
            let q = ((Ratio::from_integer(i64::from(d)) * s + Ratio::from_integer(50))
                / Ratio::from_integer(100))
            .floor()
            .to_integer();
            *o = q.clamp(1, 255) as u16;
        }
        out
    }

    #[test]
    fn quality_factor_rejects_out_of_range() {
        assert!(QualityFactor::new(0).is_err());
        assert!(QualityFactor::new(101).is_err());
        assert!(QualityFactor::new(1).is_ok());
        assert!(QualityFactor::new(100).is_ok());
        assert_eq!(QualityFactor::all().count(), 100);
    }

    #[test]
    fn scaling_examples() {
        assert_eq!(quality_scaling(qf(50)).get(), 100);
        assert_eq!(quality_scaling(qf(75)).get(), 50);
        assert_eq!(quality_scaling(qf(100)).get(), 0);
        assert_eq!(quality_scaling(qf(1)).get(), 5000);
        assert_eq!(quality_scaling(qf(25)).get(), 200);
        assert_eq!(quality_scaling(qf(10)).get(), 500);
        assert_eq!(quality_scaling(qf(49)).get(), 102);
    }

    #[test]
    fn scale_values_are_all_distinct() {
        let mut seen = std::collections::HashSet::new();
        for q in QualityFactor::all() {
            assert!(seen.insert(quality_scaling(q).get()));
        }
    }

    #[test]
    fn base_table_corners() {
        let base = base_tables();
        assert_eq!(base.luminance.get(0, 0), 16);
        assert_eq!(base.luminance.get(0, 1), 11);
        assert_eq!(base.luminance.get(7, 7), 99);
        assert_eq!(base.luminance.get(6, 0), 49);
        assert_eq!(base.chrominance.get(0, 0), 17);
        assert_eq!(base.chrominance.get(0, 3), 47);
        assert_eq!(base.chrominance.get(7, 7), 99);
    }

    #[test]
    fn synthesize_at_75() {
        let lum = synthesize_matrix(qf(75), Channel::Luminance);
        assert_eq!(&lum.steps()[..8], &[8, 6, 5, 8, 12, 20, 26, 31]);
        assert_eq!(lum.get(7, 7), 50);
        let chrom = synthesize_matrix(qf(75), Channel::Chrominance);
        assert_eq!(chrom.get(0, 0), 9);
        for row in 4..8 {
            for col in 4..8 {
                assert_eq!(chrom.get(row, col), 50);
            }
        }
    }

    #[test]
    fn synthesize_at_98() {
        let lum = synthesize_matrix(qf(98), Channel::Luminance);
        assert_eq!(&lum.steps()[..8], &[1, 1, 1, 1, 1, 2, 2, 2]);
    }

    #[test]
    fn synthesize_extremes() {
        assert!(synthesize_matrix(qf(100), Channel::Luminance)
            .steps()
            .iter()
            .all(|&s| s == 1));
        assert!(synthesize_matrix(qf(1), Channel::Luminance)
            .steps()
            .iter()
            .all(|&s| s == 255));
        assert!(synthesize_matrix(qf(1), Channel::Chrominance)
            .steps()
            .iter()
            .all(|&s| s == 255));
    }

    #[test]
    fn quality_50_is_the_base_table() {
        for channel in Channel::all() {
            assert_eq!(
                synthesize_matrix(qf(50), channel).steps(),
                base_tables().channel(channel).steps()
            );
        }
    }

    #[test]
    fn synthesized_steps_stay_in_byte_range() {
        for q in QualityFactor::all() {
            for channel in Channel::all() {
                for &s in synthesize_matrix(q, channel).steps() {
                    assert!((1..=255).contains(&s), "quality {q}: step {s}");
                }
            }
        }
    }

    #[test]
    fn higher_quality_never_coarsens_a_step() {
        for v in 1..100u8 {
            for channel in Channel::all() {
                let low = synthesize_matrix(qf(v), channel);
                let high = synthesize_matrix(qf(v + 1), channel);
                for (a, b) in low.steps().iter().zip(high.steps()) {
                    assert!(b <= a, "quality {v}: {a} -> {b}");
                }
            }
        }
    }

    #[test]
    fn luminance_tables_are_injective_over_quality() {
        let mut seen = std::collections::HashMap::new();
        for q in QualityFactor::all() {
            let m = synthesize_matrix(q, Channel::Luminance);
            if let Some(prev) = seen.insert(*m.steps(), q) {
                panic!("quality {prev} and {q} share a luminance table");
            }
        }
    }

    #[test]
    fn chrominance_tables_collide_only_at_the_saturated_end() {
        // Qualities 1..=3 all clamp every chrominance step to 255; every
        // other quality yields a distinct table.
        let mut classes: std::collections::HashMap<[u16; 64], Vec<u8>> =
            std::collections::HashMap::new();
        for q in QualityFactor::all() {
            classes
                .entry(*synthesize_matrix(q, Channel::Chrominance).steps())
                .or_default()
                .push(q.get());
        }
        let mut colliding: Vec<Vec<u8>> = classes
            .into_values()
            .filter(|members| members.len() > 1)
            .collect();
        colliding.sort();
        assert_eq!(colliding, vec![vec![1, 2, 3]]);
    }

    #[test]
    fn integer_shortcut_matches_rational_synthesis() {
        for q in QualityFactor::all() {
            for channel in Channel::all() {
                assert_eq!(
                    synthesize_matrix(q, channel).steps(),
                    &rational_synthesize(q.get(), channel),
                    "quality {q} {channel}"
                );
            }
        }
    }

    #[test]
    fn zero_steps_are_rejected() {
        let mut steps = [1u16; 64];
        steps[10] = 0;
        assert!(QuantMatrix::new(steps).is_err());
        let m = QuantMatrix::new([1u16; 64]).unwrap();
        assert!(m.with_step(0, 0, 0).is_err());
        assert!(m.with_step(8, 0, 5).is_err());
        assert_eq!(m.with_step(0, 0, 7).unwrap().get(0, 0), 7);
    }
}
