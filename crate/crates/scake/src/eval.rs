//! Gold-standard matching and corpus-level metrics.
//!
//! Gold keyphrases are exploded into unigrams, lowercased, optionally
//! stemmed, and deduplicated; extracted terms are matched against that set.
//! Corpus numbers are macro-averaged: per-document precision, recall, and
//! F1 are averaged directly (F1 is not recomputed from averaged P and R).

use crate::error::{Error, Result};
use crate::scoring::RankedKeywords;
use crate::textproc::{stem, tokenize, Document};
use serde::Serialize;
use std::collections::BTreeSet;
use std::path::Path;

/// Explode keyphrases (separated by newlines or semicolons) into a
/// normalized unigram set.
pub fn explode_gold(text: &str, stemming: bool) -> BTreeSet<String> {
    let mut unigrams = BTreeSet::new();
    for phrase in text.split([';', '\n']) {
        for word in tokenize(phrase) {
            let lowered = word.to_lowercase();
            unigrams.insert(if stemming { stem(&lowered) } else { lowered });
        }
    }
    unigrams
}

/// Load one document's gold file.
pub fn load_gold(path: impl AsRef<Path>, stemming: bool) -> Result<BTreeSet<String>> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    Ok(explode_gold(&text, stemming))
}

/// Precision, recall, and F1 of one document, as fractions in [0, 1].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DocScore {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub matched: usize,
}

pub fn score_document(extracted: &RankedKeywords, gold: &BTreeSet<String>) -> DocScore {
    let extracted_count = extracted.len();
    if extracted_count == 0 || gold.is_empty() {
        return DocScore {
            precision: 0.0,
            recall: 0.0,
            f1: 0.0,
            matched: 0,
        };
    }
    let matched = extracted
        .terms()
        .filter(|t| gold.contains(*t))
        .count();
    let precision = matched as f64 / extracted_count as f64;
    let recall = matched as f64 / gold.len() as f64;
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    DocScore {
        precision,
        recall,
        f1,
        matched,
    }
}

/// Jaccard index of two sets. Both empty -> 1 by convention.
pub fn jaccard<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    let intersection = a.intersection(b).count();
    let union = a.len() + b.len() - intersection;
    intersection as f64 / union as f64
}

/// Macro-averaged report for one (method, dataset, k) run. Percentages.
#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub method: String,
    pub dataset: String,
    pub k: usize,
    pub documents: usize,
    /// Macro-averaged precision x100.
    pub precision: f64,
    /// Macro-averaged recall x100.
    pub recall: f64,
    /// Macro-averaged F1 x100.
    pub f1: f64,
}

impl EvalReport {
    /// `method,dataset,k,P,R,F1` with 2-decimal percentages.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.2},{:.2},{:.2}",
            self.method, self.dataset, self.k, self.precision, self.recall, self.f1
        )
    }

    pub const CSV_HEADER: &'static str = "method,dataset,k,P,R,F1";
}

/// Average per-document scores into a percentage report.
pub fn macro_average(
    method: &str,
    dataset: &str,
    k: usize,
    scores: &[DocScore],
) -> EvalReport {
    let n = scores.len().max(1) as f64;
    let mean = |f: fn(&DocScore) -> f64| scores.iter().map(f).sum::<f64>() / n * 100.0;
    EvalReport {
        method: method.to_string(),
        dataset: dataset.to_string(),
        k,
        documents: scores.len(),
        precision: mean(|s| s.precision),
        recall: mean(|s| s.recall),
        f1: mean(|s| s.f1),
    }
}

/// Fraction of gold unigrams literally present in the document's token
/// stream, per document, macro-averaged, as a percentage. Gold sets must be
/// normalized consistently with how the documents were built.
pub fn coverage_bound<'a, I>(pairs: I) -> f64
where
    I: IntoIterator<Item = (&'a Document, &'a BTreeSet<String>)>,
{
    let mut total = 0.0;
    let mut count = 0usize;
    for (doc, gold) in pairs {
        if gold.is_empty() {
            continue;
        }
        let terms: BTreeSet<&str> = doc.tokens().iter().map(|t| t.stem.as_str()).collect();
        let present = gold.iter().filter(|g| terms.contains(g.as_str())).count();
        total += present as f64 / gold.len() as f64;
        count += 1;
    }
    if count == 0 {
        0.0
    } else {
        total / count as f64 * 100.0
    }
}

/// Per-document coverage of one gold set, as a fraction.
pub fn document_coverage(doc: &Document, gold: &BTreeSet<String>) -> f64 {
    if gold.is_empty() {
        return 0.0;
    }
    let terms: BTreeSet<&str> = doc.tokens().iter().map(|t| t.stem.as_str()).collect();
    gold.iter().filter(|g| terms.contains(g.as_str())).count() as f64 / gold.len() as f64
}
