//! Candidate keyword selection.
//!
//! Three routes into the graph: a spatial-statistics filter over term
//! occurrence gaps (the language-agnostic path), externally supplied POS
//! annotations (nouns and adjectives from any tagger), or simply every
//! non-stopword term.

use crate::error::{Error, Result};
use crate::textproc::{Document, StopwordList};
use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::path::Path;

/// Occurrence positions of one (stemmed) term, 1-based over the full token
/// stream, strictly increasing.
#[derive(Debug, Clone)]
pub struct TermOccurrences {
    pub term: String,
    pub positions: Vec<u32>,
}

impl TermOccurrences {
    pub fn count(&self) -> usize {
        self.positions.len()
    }

    pub fn first_position(&self) -> u32 {
        self.positions[0]
    }
}

/// How a candidate set was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateSource {
    Sigma,
    PosAnnotation,
    AllNonStop,
}

/// The term vocabulary admitted to the graph.
#[derive(Debug, Clone)]
pub struct CandidateSet {
    terms: BTreeMap<String, TermOccurrences>,
    source: CandidateSource,
}

impl CandidateSet {
    pub fn source(&self) -> CandidateSource {
        self.source
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, term: &str) -> bool {
        self.terms.contains_key(term)
    }

    pub fn get(&self, term: &str) -> Option<&TermOccurrences> {
        self.terms.get(term)
    }

    /// Terms in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &TermOccurrences> {
        self.terms.values()
    }
}

/// Merged occurrence lists for every non-stopword term of the document.
fn vocabulary(doc: &Document, stopwords: &StopwordList) -> BTreeMap<String, Vec<u32>> {
    let mut vocab: BTreeMap<String, Vec<u32>> = BTreeMap::new();
    for token in doc.tokens() {
        if stopwords.contains(&token.surface) || stopwords.contains(&token.stem) {
            continue;
        }
        vocab.entry(token.stem.clone()).or_default().push(token.position);
    }
    vocab
}

/// Clumping index of a term: standard deviation over mean of the gaps
/// between successive occurrences, with sentinel positions 0 and N+1.
/// Terms occurring once carry no clustering evidence and return 0.
pub fn sigma_index(occ: &TermOccurrences, doc_len: usize) -> f64 {
    let n = occ.positions.len();
    debug_assert!(n >= 1);
    debug_assert!(occ.positions.last().is_none_or(|&p| p as usize <= doc_len));
    if n < 2 {
        return 0.0;
    }
    let big_n = doc_len as f64;
    let mu = (big_n + 1.0) / (n as f64 + 1.0);
    let mut prev = 0.0f64;
    let mut sum_sq = 0.0f64;
    for &p in &occ.positions {
        let gap = p as f64 - prev;
        sum_sq += (gap - mu) * (gap - mu);
        prev = p as f64;
    }
    let last_gap = (big_n + 1.0) - prev;
    sum_sq += (last_gap - mu) * (last_gap - mu);
    let s = (sum_sq / (n as f64 - 1.0)).sqrt();
    s / mu
}

/// Rank all non-stopword terms by sigma index (descending) and retain the
/// top `ceil(fraction * vocabulary size)`. Ties break toward the earlier
/// first occurrence, then lexicographic order.
pub fn sigma_filter(
    doc: &Document,
    stopwords: &StopwordList,
    fraction: f64,
) -> Result<CandidateSet> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidConfig(format!(
            "sigma fraction must be in (0, 1], got {fraction}"
        )));
    }
    let vocab = vocabulary(doc, stopwords);
    let doc_len = doc.len();
    let mut ranked: Vec<(String, Vec<u32>, f64)> = vocab
        .into_iter()
        .map(|(term, positions)| {
            let occ = TermOccurrences {
                term: term.clone(),
                positions: positions.clone(),
            };
            let sigma = sigma_index(&occ, doc_len);
            (term, positions, sigma)
        })
        .collect();
    ranked.sort_by(|a, b| {
        b.2.partial_cmp(&a.2)
            .unwrap()
            .then_with(|| a.1[0].cmp(&b.1[0]))
            .then_with(|| a.0.cmp(&b.0))
    });
    let keep = (fraction * ranked.len() as f64).ceil() as usize;
    let terms = ranked
        .into_iter()
        .take(keep)
        .map(|(term, positions, _)| {
            (
                term.clone(),
                TermOccurrences { term, positions },
            )
        })
        .collect();
    Ok(CandidateSet {
        terms,
        source: CandidateSource::Sigma,
    })
}

/// Per-document candidate word sets parsed from a POS annotation file:
/// one line per document, `<doc-id>\t<word> <word> ...`.
#[derive(Debug, Clone, Default)]
pub struct Annotations {
    by_doc: BTreeMap<String, BTreeSet<String>>,
}

impl Annotations {
    pub fn get(&self, doc_id: &str) -> Option<&BTreeSet<String>> {
        self.by_doc.get(doc_id)
    }

    pub fn len(&self) -> usize {
        self.by_doc.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_doc.is_empty()
    }
}

pub fn load_pos_annotations(path: impl AsRef<Path>) -> Result<Annotations> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    parse_annotations(&text)
}

fn parse_annotations(text: &str) -> Result<Annotations> {
    let mut by_doc: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (id, words) = line.split_once('\t').ok_or(Error::AnnotationFormat {
            line: idx + 1,
            message: "expected <doc-id>\\t<word> <word> ...".to_string(),
        })?;
        let id = id.trim();
        if id.is_empty() {
            return Err(Error::AnnotationFormat {
                line: idx + 1,
                message: "empty document id".to_string(),
            });
        }
        let entry = by_doc.entry(id.to_string()).or_default();
        entry.extend(words.split_whitespace().map(|w| w.to_string()));
    }
    Ok(Annotations { by_doc })
}

/// Candidate selection mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateMode {
    Sigma,
    PosAnnotation,
    AllNonStop,
}

/// Assemble the candidate set for one document. `annotations` is the word
/// set for this document and is required for [`CandidateMode::PosAnnotation`].
pub fn assemble_candidates(
    doc: &Document,
    mode: CandidateMode,
    stopwords: &StopwordList,
    annotations: Option<&BTreeSet<String>>,
    sigma_fraction: f64,
) -> Result<CandidateSet> {
    match mode {
        CandidateMode::Sigma => sigma_filter(doc, stopwords, sigma_fraction),
        CandidateMode::AllNonStop => {
            let terms = vocabulary(doc, stopwords)
                .into_iter()
                .map(|(term, positions)| {
                    (term.clone(), TermOccurrences { term, positions })
                })
                .collect();
            Ok(CandidateSet {
                terms,
                source: CandidateSource::AllNonStop,
            })
        }
        CandidateMode::PosAnnotation => {
            let words = annotations.ok_or(Error::MissingAnnotations)?;
            // Map annotated surface words to the document's normalized
            // terms, then take every occurrence of those terms.
            let mut surface_to_term: BTreeMap<String, &str> = BTreeMap::new();
            for token in doc.tokens() {
                surface_to_term
                    .entry(token.surface.to_lowercase())
                    .or_insert(&token.stem);
            }
            let mut wanted: BTreeSet<&str> = BTreeSet::new();
            for word in words {
                let lowered = word.to_lowercase();
                if stopwords.contains(&lowered) {
                    continue;
                }
                if let Some(&term) = surface_to_term.get(&lowered) {
                    if !stopwords.contains(term) {
                        wanted.insert(term);
                    }
                }
            }
            let terms = vocabulary(doc, stopwords)
                .into_iter()
                .filter(|(term, _)| wanted.contains(term.as_str()))
                .map(|(term, positions)| {
                    (term.clone(), TermOccurrences { term, positions })
                })
                .collect();
            Ok(CandidateSet {
                terms,
                source: CandidateSource::PosAnnotation,
            })
        }
    }
}
