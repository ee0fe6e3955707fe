//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("no documents found under {root}")]
    NoDocuments { root: String },

    #[error("document {id} contains no tokens")]
    EmptyDocument { id: String },

    #[error("cannot build a vocabulary from an empty document list")]
    EmptyDocumentList,

    #[error("term {term:?} not found in document {document}")]
    TermNotFound { term: String, document: String },

    #[error("term {term:?} is not in the corpus vocabulary")]
    UnknownTerm { term: String },

    #[error("unknown weighting scheme {name:?} (known: {known})")]
    UnknownScheme { name: String, known: String },

    #[error("histogram needs at least one bin")]
    ZeroBins,

    #[error("training requires at least one labeled sample")]
    EmptySamples,

    #[error("sample {index} has an empty label")]
    EmptyLabel { index: usize },

    #[error("k={k} is out of range (must be between 1 and {max})")]
    KOutOfRange { k: usize, max: usize },

    #[error("cannot form {k} clusters from {points} points")]
    TooFewPoints { k: usize, points: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("split ratio {0} must lie strictly between 0 and 1")]
    InvalidRatio(f64),

    #[error("category {label:?} has only {size} document(s); need at least 2 to split")]
    CategoryTooSmall { label: String, size: usize },

    #[error("document {id} carries no category label")]
    UnlabeledDocument { id: String },

    #[error("cannot evaluate an empty prediction list")]
    EmptyPredictions,

    #[error("model file line {line}: {message}")]
    ModelFormat { line: usize, message: String },
}

impl Error {
    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
