use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("unsupported or corrupt image format: {0}")]
    Decode(String),
    #[error("image too small: {width}x{height} (minimum 8x8)")]
    ImageTooSmall { width: u32, height: u32 },
    #[error("empty pixel stream")]
    EmptyPixelStream,
    #[error("invalid bin count {0}: must be one of 16, 32, 64")]
    InvalidBins(u32),
    #[error("skin model has no training data")]
    UntrainedSkinModel,
    #[error("no skin region found")]
    NoSkinRegion,
    #[error("degenerate boundary: region too small or one pixel wide")]
    DegenerateBoundary,
    #[error("degenerate contour: first harmonic magnitude is zero")]
    DegenerateContour,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degenerate labels: need both classes present")]
    DegenerateLabels,
    #[error("empty data")]
    EmptyData,
    #[error("untrained grid")]
    UntrainedGrid,
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("model format error: {0}")]
    ModelFormat(String),
}
