//! Synthetic JPEG fixtures: minimal but well-formed files carrying chosen
//! quantization tables, for exercising the extraction and identification
//! pipeline end to end without any real image data.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::identify::TablePair;
use crate::ijg::{self, Channel, QualityFactor, QuantMatrix};
use crate::jpeg::{marker, rezigzag, DqtPrecision};

/// One table to be written into a fixture's DQT segment.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixtureTable {
    pub table_id: u8,
    pub precision: DqtPrecision,
    pub matrix: QuantMatrix,
}

/// A single-step edit applied to a fixture, kept for labelling and test
/// bookkeeping. `value` is the step's new value; indices are zero-based.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Perturbation {
    pub channel: Channel,
    pub row: usize,
    pub col: usize,
    pub value: u16,
}

/// A description of one fixture file: its tables plus the perturbations that
/// produced them. Construction validates the description, so rendering it to
/// bytes cannot fail.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixtureSpec {
    label: String,
    tables: Vec<FixtureTable>,
    perturbations: Vec<Perturbation>,
}

impl FixtureSpec {
    /// Validates that there is at least one table, at most four, that ids
    /// fit the DQT field, and that 8-bit tables hold only byte-sized steps.
    pub fn new(label: impl Into<String>, tables: Vec<FixtureTable>) -> Result<Self> {
        if tables.is_empty() {
            return Err(Error::InvalidArgument(
                "a fixture needs at least one table".to_string(),
            ));
        }
        if tables.len() > 4 {
            return Err(Error::InvalidArgument(format!(
                "{} tables will not fit a baseline frame",
                tables.len()
            )));
        }
        for table in &tables {
            if table.table_id > 3 {
                return Err(Error::InvalidArgument(format!(
                    "table id {} out of range 0..=3",
                    table.table_id
                )));
            }
            if table.precision == DqtPrecision::EightBit {
                if let Some(&step) = table.matrix.steps().iter().find(|&&s| s > 255) {
                    return Err(Error::InvalidArgument(format!(
                        "step {step} does not fit an 8-bit table"
                    )));
                }
            }
        }
        Ok(Self {
            label: label.into(),
            tables,
            perturbations: Vec::new(),
        })
    }

    /// The fixture a standard encoder would produce at this quality: 8-bit
    /// luminance and chrominance tables with ids 0 and 1.
    pub fn standard(quality: QualityFactor) -> Self {
        let table = |channel, table_id| FixtureTable {
            table_id,
            precision: DqtPrecision::EightBit,
            matrix: ijg::synthesize_matrix(quality, channel),
        };
        Self::new(
            format!("qf{:03}", quality.get()),
            vec![table(Channel::Luminance, 0), table(Channel::Chrominance, 1)],
        )
        .expect("standard tables are always a valid fixture")
    }

    /// Build a fixture from an extracted (or hand-made) table pair.
    pub fn from_pair(label: impl Into<String>, pair: &TablePair) -> Result<Self> {
        let mut tables = Vec::new();
        if let Some(m) = &pair.luminance {
            tables.push(FixtureTable {
                table_id: 0,
                precision: DqtPrecision::EightBit,
                matrix: *m,
            });
        }
        if let Some(m) = &pair.chrominance {
            tables.push(FixtureTable {
                table_id: 1,
                precision: DqtPrecision::EightBit,
                matrix: *m,
            });
        }
        Self::new(label, tables)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn tables(&self) -> &[FixtureTable] {
        &self.tables
    }

    pub fn perturbations(&self) -> &[Perturbation] {
        &self.perturbations
    }

    /// A copy with one step changed by `delta` (which may be zero). The new
    /// value must stay in range for the table's precision, and the channel's
    /// table (id 0 for luminance, 1 for chrominance) must exist.
    pub fn perturb(
        &self,
        channel: Channel,
        row: usize,
        col: usize,
        delta: i32,
    ) -> Result<Self> {
        let table_id = match channel {
            Channel::Luminance => 0,
            Channel::Chrominance => 1,
        };
        let index = self
            .tables
            .iter()
            .position(|t| t.table_id == table_id)
            .ok_or_else(|| {
                Error::InvalidArgument(format!("fixture has no {channel} table"))
            })?;
        if row >= 8 || col >= 8 {
            return Err(Error::InvalidArgument(format!(
                "matrix index ({row}, {col}) out of range"
            )));
        }
        let table = &self.tables[index];
        let old = i32::from(table.matrix.get(row, col));
        let max = match table.precision {
            DqtPrecision::EightBit => 255,
            DqtPrecision::SixteenBit => i32::from(u16::MAX),
        };
        let new = old + delta;
        if !(1..=max).contains(&new) {
            return Err(Error::InvalidArgument(format!(
                "step {old} {delta:+} leaves the valid range 1..={max}"
            )));
        }
        let mut spec = self.clone();
        spec.tables[index].matrix = table.matrix.with_step(row, col, new as u16)?;
        let tag = match channel {
            Channel::Luminance => "lum",
            Channel::Chrominance => "chr",
        };
        spec.label = format!("{}-{tag}-r{row}c{col}-v{new}", self.label);
        spec.perturbations.push(Perturbation {
            channel,
            row,
            col,
            value: new as u16,
        });
        Ok(spec)
    }

    /// The file name this fixture is written under.
    pub fn file_name(&self) -> String {
        format!("{}.jpg", self.label)
    }
}

/// Render a fixture to bytes: SOI, one DQT segment per table, a minimal
/// 8×8 SOF0 frame header referencing the tables, an SOS header, and EOI.
/// There is no entropy-coded data; the scan ends immediately.
pub fn write_minimal_jpeg(spec: &FixtureSpec) -> Vec<u8> {
    let mut out = vec![0xFF, marker::SOI];
    for table in spec.tables() {
        let (pq, step_size) = match table.precision {
            DqtPrecision::EightBit => (0u8, 1usize),
            DqtPrecision::SixteenBit => (1, 2),
        };
        out.extend([0xFF, marker::DQT]);
        out.extend((3 + 64 * step_size as u16).to_be_bytes());
        out.push(pq << 4 | table.table_id);
        for step in rezigzag(table.matrix.steps()) {
            match table.precision {
                DqtPrecision::EightBit => out.push(step as u8),
                DqtPrecision::SixteenBit => out.extend(step.to_be_bytes()),
            }
        }
    }
    let n = spec.tables().len() as u8;
    // SOF0: 8-bit precision, an 8x8 frame, one component per table.
    out.extend([0xFF, marker::SOF0]);
    out.extend((8 + 3 * u16::from(n)).to_be_bytes());
    out.extend([8, 0, 8, 0, 8, n]);
    for (i, table) in spec.tables().iter().enumerate() {
        out.extend([i as u8 + 1, 0x11, table.table_id]);
    }
    // SOS header for the same components.
    out.extend([0xFF, marker::SOS]);
    out.extend((6 + 2 * u16::from(n)).to_be_bytes());
    out.push(n);
    for i in 0..n {
        out.extend([i + 1, 0x00]);
    }
    out.extend([0, 63, 0]);
    out.extend([0xFF, marker::EOI]);
    out
}

/// The standard fixture bytes for each requested quality.
pub fn standard_corpus(qualities: &[QualityFactor]) -> Vec<(QualityFactor, Vec<u8>)> {
    qualities
        .iter()
        .map(|&q| (q, write_minimal_jpeg(&FixtureSpec::standard(q))))
        .collect()
}

/// Write each fixture into `dir` under its own file name, returning the
/// paths in the same order.
pub fn write_to_dir(dir: &Path, specs: &[FixtureSpec]) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::with_capacity(specs.len());
    for spec in specs {
        let path = dir.join(spec.file_name());
        std::fs::write(&path, write_minimal_jpeg(spec)).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        paths.push(path);
    }
    Ok(paths)
}
