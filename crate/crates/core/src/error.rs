use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("input text is empty")]
    EmptyText,

    #[error("terminator byte {byte:#04x} occurs at position {position}, not only at the end")]
    InteriorTerminator { byte: u8, position: usize },

    #[error("last byte {byte:#04x} must occur exactly once and be smaller than every other byte")]
    BadTerminator { byte: u8 },

    #[error("alphabet has {sigma} non-terminator symbols; block compression supports at most 8")]
    AlphabetTooLarge { sigma: usize },

    #[error("text length {n} exceeds the supported maximum of 2^32 - 1")]
    TextTooLong { n: usize },

    #[error("index has no terminator symbol, so the text cannot be reconstructed")]
    NoTerminator,

    #[error("not an index file (bad magic)")]
    BadMagic,

    #[error("unsupported index version {0}")]
    UnsupportedVersion(u32),

    #[error("truncated index file while reading {0}")]
    Truncated(&'static str),

    #[error("corrupt index file: {0}")]
    Corrupt(String),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
