//! Stopword handling.

use crate::error::{Error, Result};
use std::collections::HashSet;
use std::path::Path;

/// Common English function words, used when no stopword file is supplied.
/// Any list can be substituted via [`StopwordList::from_file`].
const DEFAULT_ENGLISH: &str = "\
a about above after again against all also am an and any are as at back be \
because been before being below between both but by can cannot could did do \
does doing down during each either few for from further had has have having \
he her here hers herself him himself his how however i if in into is it its \
itself just may me might more most must my myself neither no nor not now of \
off on once only onto or other our ours ourselves out over own per rather \
same shall she should since so some such than that the their theirs them \
themselves then there therefore these they this those through thus to too \
under until up upon us very was we were what when where whether which while \
who whom why will with within without would you your yours yourself \
yourselves";

/// Immutable, case-insensitive stopword membership set.
#[derive(Debug, Clone)]
pub struct StopwordList {
    entries: HashSet<String>,
}

impl StopwordList {
    /// The built-in English list.
    pub fn default_english() -> Self {
        Self::from_words(DEFAULT_ENGLISH.split_whitespace())
    }

    /// An empty list (nothing is a stopword).
    pub fn empty() -> Self {
        StopwordList {
            entries: HashSet::new(),
        }
    }

    pub fn from_words<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let entries = words
            .into_iter()
            .map(|w| w.as_ref().trim().to_lowercase())
            .filter(|w| !w.is_empty())
            .collect();
        StopwordList { entries }
    }

    /// Load from a UTF-8 file, one word per line. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::io(path.display().to_string(), e))?;
        Ok(Self::from_words(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        ))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
