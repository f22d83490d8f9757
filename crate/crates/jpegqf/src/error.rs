use crate::ijg::Channel;

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All the ways extraction or identification can fail.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Quality factors live in `1..=100`; anything else is rejected up front.
    #[error("quality factor {0} out of range 1..=100")]
    QualityOutOfRange(u16),

    /// The input does not begin with the SOI marker, so it is not a JPEG
    /// stream at all.
    #[error("not a JPEG stream: missing SOI marker")]
    NotAJpeg,

    /// The stream starts like a JPEG but violates the segment grammar.
    #[error("corrupt JPEG stream at offset {offset}: {reason}")]
    CorruptStream { offset: usize, reason: &'static str },

    /// A DQT segment was found but its contents are invalid.
    #[error("malformed DQT segment: {0}")]
    MalformedDqt(String),

    /// The headers ended without a single quantization table definition.
    #[error("no quantization table defined before start of scan")]
    NoTables,

    /// The channel mask selects a table the file never defined.
    #[error("{0} table selected but not present in the file")]
    MissingTable(Channel),

    /// Catch-all for invalid caller-supplied values (masks, deltas, indices).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
