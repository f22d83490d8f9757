//! Just enough JPEG surgery to get at the quantization tables: a marker
//! scanner for the header segments and a DQT payload parser.
//!
//! Nothing here decodes image data. The scanner walks marker segments from
//! SOI up to the first SOS header and stops — quantization tables must all be
//! declared before the scan starts, so the entropy-coded data (with its
//! stuffed `FF 00` bytes and restart markers) never needs to be touched.

use crate::error::{Error, Result};
use crate::identify::TablePair;
use crate::ijg::QuantMatrix;

/// The marker codes this crate cares about (the byte after `0xFF`).
pub mod marker {
    pub const TEM: u8 = 0x01;
    pub const SOF0: u8 = 0xC0;
    pub const RST0: u8 = 0xD0;
    pub const RST7: u8 = 0xD7;
    pub const SOI: u8 = 0xD8;
    pub const EOI: u8 = 0xD9;
    pub const SOS: u8 = 0xDA;
    pub const DQT: u8 = 0xDB;
}

/// Markers that stand alone, with no length field or payload.
pub fn is_standalone(code: u8) -> bool {
    matches!(code, marker::TEM | marker::SOI | marker::EOI)
        || (marker::RST0..=marker::RST7).contains(&code)
}

/// One marker segment as found in the stream. `offset` is the position of
/// the `0xFF` that introduced the marker; standalone markers carry no
/// payload.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Segment<'a> {
    pub code: u8,
    pub offset: usize,
    pub payload: Option<&'a [u8]>,
}

/// Walk the marker segments from just after SOI up to and including the
/// first SOS header (or a premature EOI). Fill bytes — runs of `0xFF` before
/// a marker code — are tolerated.
pub fn scan_segments(data: &[u8]) -> Result<Vec<Segment<'_>>> {
    if data.len() < 2 || data[0] != 0xFF || data[1] != marker::SOI {
        return Err(Error::NotAJpeg);
    }
    let mut segments = Vec::new();
    let mut pos = 2;
    loop {
        let intro = pos;
        if pos >= data.len() {
            return Err(Error::CorruptStream {
                offset: pos,
                reason: "stream ended before start of scan",
            });
        }
        if data[pos] != 0xFF {
            return Err(Error::CorruptStream {
                offset: pos,
                reason: "expected a marker byte",
            });
        }
        while pos < data.len() && data[pos] == 0xFF {
            pos += 1;
        }
        if pos >= data.len() {
            return Err(Error::CorruptStream {
                offset: intro,
                reason: "stream ended inside a marker",
            });
        }
        let code = data[pos];
        pos += 1;
        if code == 0x00 {
            return Err(Error::CorruptStream {
                offset: intro,
                reason: "stuffed byte outside entropy-coded data",
            });
        }
        if is_standalone(code) {
            segments.push(Segment { code, offset: intro, payload: None });
            if code == marker::EOI {
                break;
            }
            continue;
        }
        if pos + 2 > data.len() {
            return Err(Error::CorruptStream {
                offset: pos,
                reason: "truncated segment length",
            });
        }
        let declared = usize::from(u16::from_be_bytes([data[pos], data[pos + 1]]));
        if declared < 2 {
            return Err(Error::CorruptStream {
                offset: pos,
                reason: "segment length below minimum",
            });
        }
        if pos + declared > data.len() {
            return Err(Error::CorruptStream {
                offset: pos,
                reason: "segment length exceeds the stream",
            });
        }
        let payload = &data[pos + 2..pos + declared];
        segments.push(Segment { code, offset: intro, payload: Some(payload) });
        pos += declared;
        if code == marker::SOS {
            break;
        }
    }
    Ok(segments)
}

/// Step precision of one DQT table.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DqtPrecision {
    EightBit,
    SixteenBit,
}

/// One quantization table as declared in a DQT segment, already re-ordered
/// from zigzag to natural order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DqtTable {
    pub precision: DqtPrecision,
    pub table_id: u8,
    pub matrix: QuantMatrix,
}

/// Parse every table in one DQT payload. A single segment may declare
/// several tables back to back.
pub fn parse_dqt(payload: &[u8]) -> Result<Vec<DqtTable>> {
    if payload.is_empty() {
        return Err(Error::MalformedDqt("empty segment".to_string()));
    }
    let mut tables = Vec::new();
    let mut pos = 0;
    while pos < payload.len() {
        let pq_tq = payload[pos];
        let (pq, tq) = (pq_tq >> 4, pq_tq & 0x0F);
        pos += 1;
        if pq > 1 {
            return Err(Error::MalformedDqt(format!(
                "invalid precision {pq} at offset {}",
                pos - 1
            )));
        }
        if tq > 3 {
            return Err(Error::MalformedDqt(format!(
                "table id {tq} out of range at offset {}",
                pos - 1
            )));
        }
        let (precision, step_size) = match pq {
            0 => (DqtPrecision::EightBit, 1),
            _ => (DqtPrecision::SixteenBit, 2),
        };
        let need = 64 * step_size;
        if payload.len() - pos < need {
            return Err(Error::MalformedDqt(format!(
                "truncated table data at offset {pos}: need {need} bytes, have {}",
                payload.len() - pos
            )));
        }
        let mut zigzag = [0u16; 64];
        for (i, slot) in zigzag.iter_mut().enumerate() {
            *slot = match precision {
                DqtPrecision::EightBit => u16::from(payload[pos + i]),
                DqtPrecision::SixteenBit => {
                    u16::from_be_bytes([payload[pos + 2 * i], payload[pos + 2 * i + 1]])
                }
            };
        }
        pos += need;
        let matrix = QuantMatrix::new(dezigzag(&zigzag)).map_err(|_| {
            Error::MalformedDqt(format!("zero quantization step in table {tq}"))
        })?;
        tables.push(DqtTable { precision, table_id: tq, matrix });
    }
    Ok(tables)
}

/// For each zigzag position, the index of that step in row-major natural
/// order.
const ZIGZAG_TO_NATURAL: [usize; 64] = [
    0, 1, 8, 16, 9, 2, 3, 10, //
    17, 24, 32, 25, 18, 11, 4, 5, //
    12, 19, 26, 33, 40, 48, 41, 34, //
    27, 20, 13, 6, 7, 14, 21, 28, //
    35, 42, 49, 56, 57, 50, 43, 36, //
    29, 22, 15, 23, 30, 37, 44, 51, //
    58, 59, 52, 45, 38, 31, 39, 46, //
    53, 60, 61, 54, 47, 55, 62, 63,
];

/// Zigzag scan order (as stored in a DQT segment) to row-major natural order.
pub fn dezigzag(zigzag: &[u16; 64]) -> [u16; 64] {
    let mut natural = [0u16; 64];
    for (k, &step) in zigzag.iter().enumerate() {
        natural[ZIGZAG_TO_NATURAL[k]] = step;
    }
    natural
}

/// Row-major natural order back to zigzag scan order.
pub fn rezigzag(natural: &[u16; 64]) -> [u16; 64] {
    let mut zigzag = [0u16; 64];
    for (k, slot) in zigzag.iter_mut().enumerate() {
        *slot = natural[ZIGZAG_TO_NATURAL[k]];
    }
    zigzag
}

/// All quantization tables declared in the file's header, in declaration
/// order. Returns an empty vector when the header has no DQT segment.
pub fn dqt_tables(data: &[u8]) -> Result<Vec<DqtTable>> {
    let mut tables = Vec::new();
    for segment in scan_segments(data)? {
        if segment.code == marker::DQT {
            let payload = segment.payload.unwrap_or(&[]);
            tables.extend(parse_dqt(payload)?);
        }
    }
    Ok(tables)
}

/// Extract the luminance/chrominance table pair: table id 0 is the luminance
/// table, id 1 the chrominance table. A redefinition of an id replaces the
/// earlier table, as it would for a decoder; ids 2 and 3 are legal but
/// unused here and are ignored.
pub fn extract_tables(data: &[u8]) -> Result<TablePair> {
    let tables = dqt_tables(data)?;
    if tables.is_empty() {
        return Err(Error::NoTables);
    }
    let mut pair = TablePair::default();
    for table in tables {
        match table.table_id {
            0 => pair.luminance = Some(table.matrix),
            1 => pair.chrominance = Some(table.matrix),
            _ => {}
        }
    }
    Ok(pair)
}
