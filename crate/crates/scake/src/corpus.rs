//! Corpus ingestion: paired text and gold files in a flat directory.

use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::path::Path;

/// One corpus entry: raw text plus, when paired, the raw gold keyphrases.
#[derive(Debug, Clone)]
pub struct CorpusDoc {
    pub text: String,
    pub gold: Option<String>,
}

/// Documents keyed by id, with ingest warnings for unpaired files.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub docs: BTreeMap<String, CorpusDoc>,
    pub warnings: Vec<String>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    /// Ids of documents that have gold annotations.
    pub fn evaluable_ids(&self) -> Vec<&str> {
        self.docs
            .iter()
            .filter(|(_, d)| d.gold.is_some())
            .map(|(id, _)| id.as_str())
            .collect()
    }
}

/// Read every `<id><text_suffix>` file under `dir` and pair it with
/// `<id><gold_suffix>` when present. Text files without gold are kept (they
/// can be extracted from) but excluded from evaluation; gold files without
/// text produce a warning.
pub fn ingest_corpus(dir: impl AsRef<Path>, text_suffix: &str, gold_suffix: &str) -> Result<Corpus> {
    let dir = dir.as_ref();
    let entries =
        std::fs::read_dir(dir).map_err(|e| Error::io(dir.display().to_string(), e))?;
    let mut texts: BTreeMap<String, String> = BTreeMap::new();
    let mut golds: BTreeMap<String, String> = BTreeMap::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir.display().to_string(), e))?;
        let path = entry.path();
        if !path.is_file() {
            continue;
        }
        let name = match path.file_name().and_then(|n| n.to_str()) {
            Some(n) => n.to_string(),
            None => continue,
        };
        if let Some(id) = name.strip_suffix(text_suffix) {
            if !id.is_empty() {
                let body = std::fs::read_to_string(&path)
                    .map_err(|e| Error::io(path.display().to_string(), e))?;
                texts.insert(id.to_string(), body);
                continue;
            }
        }
        if let Some(id) = name.strip_suffix(gold_suffix) {
            if !id.is_empty() {
                let body = std::fs::read_to_string(&path)
                    .map_err(|e| Error::io(path.display().to_string(), e))?;
                golds.insert(id.to_string(), body);
            }
        }
    }
    if texts.is_empty() {
        return Err(Error::EmptyCorpus(dir.display().to_string()));
    }
    let mut corpus = Corpus::default();
    for (id, text) in texts {
        let gold = golds.remove(&id);
        if gold.is_none() {
            corpus
                .warnings
                .push(format!("document {id} has no gold file; excluded from evaluation"));
        }
        corpus.docs.insert(id, CorpusDoc { text, gold });
    }
    for id in golds.keys() {
        corpus
            .warnings
            .push(format!("gold file {id}{gold_suffix} has no matching text file"));
    }
    Ok(corpus)
}
