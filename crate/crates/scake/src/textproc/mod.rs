//! Text pre-processing: sentence splitting, tokenization, stemming, and
//! position-indexed document construction.
//!
//! Positions are assigned over the full token stream before any filtering,
//! so positional weights and spatial statistics always see true in-text
//! positions. Stopword tokens stay in the stream with their positions; they
//! are only flagged.

mod porter;
mod sentences;
mod stopwords;

pub use porter::stem;
pub use sentences::split_sentences;
pub use stopwords::StopwordList;

use crate::error::{Error, Result};

/// One token of the document stream.
#[derive(Debug, Clone)]
pub struct Token {
    /// Original surface form (punctuation-stripped, case preserved).
    pub surface: String,
    /// Lowercased, Porter-stemmed form; just lowercased when stemming is off.
    pub stem: String,
    /// 1-based index into the full token stream.
    pub position: u32,
    /// 0-based sentence index.
    pub sentence_index: u32,
    /// Lowercased surface or stem is in the stopword list.
    pub is_stopword: bool,
    /// A sentence boundary or a standalone punctuation token immediately
    /// precedes this token.
    pub break_before: bool,
}

/// A tokenized, sentence-segmented document.
#[derive(Debug, Clone)]
pub struct Document {
    tokens: Vec<Token>,
    sentence_count: u32,
}

impl Document {
    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    /// Total token count N.
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Number of sentences S.
    pub fn sentence_count(&self) -> u32 {
        self.sentence_count
    }
}

/// Split one sentence into surface tokens: whitespace-separated chunks with
/// leading and trailing punctuation stripped. Hyphens and apostrophes inside
/// a word survive. Chunks without any letter (numbers, bare punctuation) are
/// dropped.
pub fn tokenize(sentence: &str) -> Vec<String> {
    sentence
        .split_whitespace()
        .filter_map(|chunk| match classify(chunk) {
            Chunk::Word(w) => Some(w),
            _ => None,
        })
        .collect()
}

enum Chunk {
    Word(String),
    Number,
    Punctuation,
}

fn classify(chunk: &str) -> Chunk {
    let trimmed = chunk.trim_matches(|c: char| !c.is_alphanumeric());
    if trimmed.is_empty() {
        return Chunk::Punctuation;
    }
    if !trimmed.chars().any(char::is_alphabetic) {
        return Chunk::Number;
    }
    Chunk::Word(trimmed.to_string())
}

/// Build a position-indexed document. Stopword tokens are retained with
/// their positions and flagged; sentences that contribute no tokens are
/// dropped from the sentence numbering.
pub fn build_document(text: &str, stopwords: &StopwordList, stemming: bool) -> Result<Document> {
    let sentences = split_sentences(text)?;
    let mut tokens: Vec<Token> = Vec::new();
    let mut position = 1u32;
    let mut sentence_index = 0u32;
    for (raw_idx, sentence) in sentences.iter().enumerate() {
        let mut pending_break = raw_idx > 0;
        let mut produced = false;
        for chunk in sentence.split_whitespace() {
            match classify(chunk) {
                Chunk::Word(surface) => {
                    let lowered = surface.to_lowercase();
                    let stemmed = if stemming { stem(&surface) } else { lowered.clone() };
                    let is_stopword = stopwords.contains(&lowered) || stopwords.contains(&stemmed);
                    tokens.push(Token {
                        surface,
                        stem: stemmed,
                        position,
                        sentence_index,
                        is_stopword,
                        break_before: std::mem::take(&mut pending_break),
                    });
                    position += 1;
                    produced = true;
                }
                Chunk::Punctuation => pending_break = true,
                Chunk::Number => {}
            }
        }
        if produced {
            sentence_index += 1;
        }
    }
    if tokens.is_empty() {
        return Err(Error::EmptyDocument);
    }
    Ok(Document {
        tokens,
        sentence_count: sentence_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenize_strips_edge_punctuation() {
        assert_eq!(
            tokenize("scale-invariant optical correlator."),
            vec!["scale-invariant", "optical", "correlator"]
        );
        assert_eq!(tokenize("(fringe) patterns,"), vec!["fringe", "patterns"]);
        assert_eq!(tokenize(""), Vec::<String>::new());
    }

    #[test]
    fn tokenize_drops_numbers_and_punctuation() {
        assert_eq!(tokenize("42 3.5 -- ..."), Vec::<String>::new());
        assert_eq!(tokenize("3d model v2"), vec!["3d", "model", "v2"]);
    }

    #[test]
    fn document_positions_cover_all_tokens() {
        let stop = StopwordList::from_words(["a", "the"]);
        let doc = build_document("A cat. The cat ran.", &stop, false).unwrap();
        assert_eq!(doc.len(), 5);
        assert_eq!(doc.sentence_count(), 2);
        let positions: Vec<u32> = doc.tokens().iter().map(|t| t.position).collect();
        assert_eq!(positions, vec![1, 2, 3, 4, 5]);
        let stops: Vec<bool> = doc.tokens().iter().map(|t| t.is_stopword).collect();
        assert_eq!(stops, vec![true, false, true, false, false]);
    }

    #[test]
    fn stemming_merges_surface_forms() {
        let stop = StopwordList::from_words(["a", "the"]);
        let doc = build_document("A cats. The cat ran.", &stop, true).unwrap();
        assert_eq!(doc.tokens()[1].stem, "cat");
        assert_eq!(doc.tokens()[3].stem, "cat");
        assert_eq!(doc.tokens()[1].surface, "cats");
    }

    #[test]
    fn sentence_indices_are_contiguous_and_nondecreasing() {
        let stop = StopwordList::empty();
        let doc = build_document("Alpha beta. !!! Gamma delta. Zeta.", &stop, false).unwrap();
        let idx: Vec<u32> = doc.tokens().iter().map(|t| t.sentence_index).collect();
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        assert_eq!(idx, sorted);
        let max = *idx.iter().max().unwrap();
        assert_eq!(max + 1, doc.sentence_count());
        for s in 0..=max {
            assert!(idx.contains(&s), "sentence {s} missing");
        }
    }

    #[test]
    fn breaks_mark_sentence_boundaries_and_bare_punctuation() {
        let stop = StopwordList::empty();
        let doc = build_document("alpha beta -- gamma. Delta epsilon.", &stop, false).unwrap();
        let breaks: Vec<bool> = doc.tokens().iter().map(|t| t.break_before).collect();
        // alpha=false, beta=false, gamma=true (standalone "--"), Delta=true
        // (sentence boundary), epsilon=false
        assert_eq!(breaks, vec![false, false, true, true, false]);
    }

    #[test]
    fn empty_and_wordless_documents_are_errors() {
        let stop = StopwordList::empty();
        assert!(matches!(
            build_document("", &stop, true),
            Err(Error::EmptyDocument)
        ));
        assert!(matches!(
            build_document("42 17 ...", &stop, true),
            Err(Error::EmptyDocument)
        ));
    }

    #[test]
    fn positions_survive_stopword_flagging() {
        // Flagging stopwords must not shift positions of surviving tokens.
        let none = StopwordList::empty();
        let some = StopwordList::from_words(["the", "of"]);
        let text = "The speed of light. The end.";
        let a = build_document(text, &none, true).unwrap();
        let b = build_document(text, &some, true).unwrap();
        assert_eq!(a.len(), b.len());
        for (ta, tb) in a.tokens().iter().zip(b.tokens()) {
            assert_eq!(ta.position, tb.position);
            assert_eq!(ta.surface, tb.surface);
        }
    }
}
