use thiserror::Error;

/// Errors produced while building, querying or loading an index.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty text")]
    EmptyText,
    #[error("text of {0} bytes exceeds the supported maximum")]
    TextTooLarge(usize),
    #[error("invalid source: phrase at {phrase_start} copies {len} bytes from {src}")]
    InvalidSource {
        phrase_start: usize,
        src: usize,
        len: usize,
    },
    #[error("not strictly increasing at rank {0}")]
    NotStrictlyIncreasing(usize),
    #[error("value {value} exceeds universe bound {universe}")]
    OutsideUniverse { value: u64, universe: u64 },
    #[error("invalid sampling parameters: g = {g}, b = {b}")]
    BadSampling { g: usize, b: usize },
    #[error("rank out of range: {rank} not in 1..={count}")]
    RankOutOfRange { rank: usize, count: usize },
    #[error("bad range: [{lo}, {hi}] over {len} positions")]
    BadRange { lo: usize, hi: usize, len: usize },
    #[error("separator collision: byte {0:#04x} occurs in the text")]
    SeparatorCollision(u8),
    #[error("no free separator byte: all 256 byte values occur in the text")]
    NoFreeSeparator,
    #[error("invalid filter parameters: {0}")]
    BadParams(String),
    #[error("not primary: kernel range [{0}, {1}]")]
    NotPrimary(usize, usize),
    #[error("empty kernel")]
    EmptyKernel,
    #[error("empty pattern")]
    EmptyPattern,
    #[error("query exceeds index bounds: pattern length {len} (max {max_len}), k = {k} (max {max_k})")]
    QueryExceedsBounds {
        len: usize,
        max_len: usize,
        k: usize,
        max_k: usize,
    },
    #[error("bad magic")]
    BadMagic,
    #[error("format version mismatch: found {found}, expected {expected}")]
    VersionMismatch { found: u16, expected: u16 },
    #[error("truncated section: {0}")]
    Truncated(&'static str),
    #[error("checksum failure: stored {stored:#010x}, computed {computed:#010x}")]
    ChecksumMismatch { stored: u32, computed: u32 },
    #[error("malformed index: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
