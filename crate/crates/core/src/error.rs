use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot open {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("malformed raster: {0}")]
    MalformedRaster(String),
    #[error("unsupported maxval {0} (expected 1..=255)")]
    UnsupportedMaxval(u32),
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("intensity {0} outside [0, 1]")]
    OutOfRange(f64),
    #[error("image {0}x{1} smaller than the {2}x{2} window")]
    ImageTooSmall(usize, usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
