use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{field} must be positive, got {value}")]
    NonPositiveSigma { field: &'static str, value: f64 },

    #[error("{field} must be at least 1, got {value}")]
    NonPositiveRadius { field: &'static str, value: usize },

    #[error("{field} must be at least 1, got {value}")]
    InvalidWindow { field: &'static str, value: usize },

    #[error("invalid parameter {field}: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("latency denominator beta + exp(-lambda^2 (x^2 + y^2)) = {denominator} at offset ({x}, {y})")]
    DegenerateLatency { x: i64, y: i64, denominator: f64 },

    #[error("dimension mismatch: expected {expected_width}x{expected_height}, got {width}x{height}")]
    DimensionMismatch {
        expected_width: usize,
        expected_height: usize,
        width: usize,
        height: usize,
    },

    #[error("kernel radius {radius} exceeds frame size {width}x{height}")]
    KernelTooLarge { radius: usize, width: usize, height: usize },

    #[error("detector history holds no photoreceptor frames")]
    EmptyHistory,

    #[error("denominator n_cell * m must be positive (n_cell = {n_cell}, m = {m})")]
    NonPositiveDenominator { n_cell: usize, m: f64 },

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("looming object reaches the camera at frame {frame}, before the sequence ends")]
    ContactBeforeEnd { frame: usize },

    #[error("object is entirely out of view at frame {frame}")]
    ObjectOutOfView { frame: usize },

    #[error("invalid scene: {0}")]
    InvalidScene(String),

    #[error("window {start}..={end} lies outside the trace of {len} frames")]
    WindowOutOfRange { start: i64, end: i64, len: usize },

    #[error("{path}: fewer than 2 frames found ({found})")]
    EmptyDirectory { path: PathBuf, found: usize },

    #[error("{path}: frame is {width}x{height}, earlier frames are {expected_width}x{expected_height}")]
    MixedDimensions {
        path: PathBuf,
        width: usize,
        height: usize,
        expected_width: usize,
        expected_height: usize,
    },

    #[error("{path}: unreadable frame: {reason}")]
    UnreadableFrame { path: PathBuf, reason: String },

    #[error("resize factor must lie in (0, 1], got {0}")]
    InvalidFactor(f64),

    #[error("config {origin}: {message}")]
    Config { origin: String, message: String },

    #[error("bench needs at least 3 repetitions, got {0}")]
    TooFewRepetitions(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by user input (bad files, bad config values),
    /// which the command line maps to exit code 2.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::Csv(_))
    }
}
