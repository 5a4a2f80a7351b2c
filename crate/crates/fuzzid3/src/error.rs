use std::path::PathBuf;

use thiserror::Error;

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read `{path}`")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// The CSV contained no data rows.
    #[error("{path}: no rows")]
    NoRows { path: PathBuf },

    /// A malformed CSV row; `line` is 1-based.
    #[error("{path}:{line}: {message}")]
    BadRow {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("unknown class `{0}`")]
    UnknownClass(String),

    #[error("class pair needs two distinct classes, got `{0}` twice")]
    DuplicateClassPair(String),

    #[error("dataset declares {0} classes, pairwise five-fold splitting needs exactly 2")]
    NotPairwise(usize),

    #[error("fold size must be at least 1")]
    BadFoldSize,

    #[error(
        "five-fold split needs exactly {expected} instances of class `{class}`, found {found}"
    )]
    UnbalancedClass {
        class: String,
        expected: usize,
        found: usize,
    },

    #[error("instance {position}: {message}")]
    InvalidInstance { position: usize, message: String },

    #[error("invalid class names: {0}")]
    InvalidClassNames(String),

    #[error("empty training set")]
    EmptyTrainingSet,

    #[error("terms per feature must be at least 2, got {0}")]
    BadTermCount(usize),

    #[error("no values given")]
    NoValues,

    #[error("empty class distribution")]
    EmptyDistribution,

    #[error("child totals sum to {children} but the parent holds {parent}")]
    SplitCountMismatch { parent: usize, children: usize },

    #[error("vector dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("distance must be finite and non-negative, got {0}")]
    BadDistance(f64),

    #[error("no prototype for class index {0}")]
    MissingPrototype(usize),

    #[error("unknown method `{name}`, expected one of: {known}")]
    UnknownMethod { name: String, known: String },

    #[error("prediction and truth lengths differ: {predicted} vs {truth}")]
    LengthMismatch { predicted: usize, truth: usize },

    #[error("label index {0} is outside the class pair")]
    ForeignLabel(usize),

    #[error("empty confusion record")]
    EmptyRecord,
}
