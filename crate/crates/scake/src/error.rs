//! Error types shared across the extraction pipeline.

use thiserror::Error;

/// Errors produced by document processing, candidate selection, graph
/// construction, scoring, and corpus handling.
#[derive(Debug, Error)]
pub enum Error {
    /// Input text is empty or contains only whitespace.
    #[error("document is empty or whitespace-only")]
    EmptyDocument,

    /// No documents could be ingested from the corpus directory.
    #[error("no documents found in corpus directory {0}")]
    EmptyCorpus(String),

    /// A line in a POS annotation file did not match `<doc-id>\t<words...>`.
    #[error("malformed annotation at line {line}: {message}")]
    AnnotationFormat { line: usize, message: String },

    /// The selected candidate mode requires an annotation file.
    #[error("candidate mode 'pos' requires POS annotations (use --annotations PATH)")]
    MissingAnnotations,

    /// A decomposition was asked for a graph kind it does not support.
    #[error("unsupported graph for this operation: {0}")]
    UnsupportedGraph(&'static str),

    /// Teleport vector for biased PageRank has no positive mass.
    #[error("teleport vector must contain at least one positive entry")]
    InvalidTeleport,

    /// Configuration value could not be parsed or is inconsistent.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A module error annotated with the document it occurred in.
    #[error("document {id}: {source}")]
    Document {
        id: String,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
