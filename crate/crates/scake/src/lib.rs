//! Graph-based keyword extraction engine.
//!
//! The pipeline runs in three stages: candidate filtration (POS annotations,
//! a spatial-statistics filter, or all non-stopwords), text graph
//! construction (a parameterless sentence-pair graph or a configurable
//! sliding window), and word scoring (truss-based semantic connectivity,
//! PageRank variants, degree centrality, or top-core retention). An
//! evaluation harness matches extracted terms against gold-standard unigram
//! sets and macro-averages precision, recall, and F1 across a corpus.

pub mod candidates;
pub mod corpus;
pub mod decompose;
pub mod error;
pub mod eval;
pub mod graph;
pub mod pipeline;
pub mod scoring;
pub mod textproc;

pub use error::{Error, Result};
