//! Rule-based sentence splitting.
//!
//! A sentence ends at a run of terminal punctuation (`.`, `!`, `?`),
//! optionally followed by closing quotes or brackets, when the next
//! non-whitespace character starts with an uppercase letter (possibly after
//! an opening quote or bracket) or the text ends. A single `.` does not end
//! a sentence when the word before it is a known abbreviation, an uppercase
//! initial, or a dotted-letter form like `e.g.`. Text without terminal
//! punctuation is a single sentence.

use crate::error::{Error, Result};

/// Abbreviations whose trailing period does not end a sentence.
const ABBREVIATIONS: &[&str] = &[
    "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "rev", "gen", "col", "sgt", "capt", "lt",
    "fig", "figs", "eq", "eqs", "sec", "secs", "vol", "vols", "al", "etc", "vs", "cf", "ca",
    "approx", "dept", "univ", "inc", "ltd", "corp", "pp",
];

pub fn split_sentences(text: &str) -> Result<Vec<String>> {
    if text.trim().is_empty() {
        return Err(Error::EmptyDocument);
    }
    let chars: Vec<char> = text.chars().collect();
    let mut sentences = Vec::new();
    let mut start = 0usize;
    let mut i = 0usize;
    while i < chars.len() {
        if !is_terminator(chars[i]) {
            i += 1;
            continue;
        }
        let mut end = i;
        while end + 1 < chars.len() && is_terminator(chars[end + 1]) {
            end += 1;
        }
        let mut close = end;
        while close + 1 < chars.len() && is_closing(chars[close + 1]) {
            close += 1;
        }
        let single_period = chars[i] == '.' && end == i;
        let boundary = follows_sentence_start(&chars, close)
            && !(single_period && is_abbreviation(&chars, i));
        if boundary {
            push_trimmed(&mut sentences, &chars[start..=close]);
            start = close + 1;
        }
        i = close + 1;
    }
    if start < chars.len() {
        push_trimmed(&mut sentences, &chars[start..]);
    }
    Ok(sentences)
}

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closing(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '}' | '\u{201d}' | '\u{2019}' | '\u{00bb}')
}

fn is_opening(c: char) -> bool {
    matches!(c, '"' | '\'' | '(' | '[' | '{' | '\u{201c}' | '\u{2018}' | '\u{00ab}')
}

/// True when position `close` is followed by end-of-text, or by whitespace
/// and then an uppercase letter (an opening quote or bracket may precede it).
fn follows_sentence_start(chars: &[char], close: usize) -> bool {
    let mut n = close + 1;
    if n >= chars.len() {
        return true;
    }
    if !chars[n].is_whitespace() {
        return false;
    }
    while n < chars.len() && chars[n].is_whitespace() {
        n += 1;
    }
    if n >= chars.len() {
        return true;
    }
    let mut next = chars[n];
    if is_opening(next) && n + 1 < chars.len() {
        next = chars[n + 1];
    }
    next.is_uppercase()
}

/// Inspect the word immediately before the period at `dot`.
fn is_abbreviation(chars: &[char], dot: usize) -> bool {
    let mut idx = dot;
    while idx > 0 && chars[idx - 1].is_alphabetic() {
        idx -= 1;
    }
    if idx == dot {
        return false;
    }
    let word: String = chars[idx..dot].iter().collect();
    if word.chars().count() == 1 {
        let c = word.chars().next().unwrap();
        // Uppercase initials ("J. Smith") and dotted forms ("e.g.").
        return c.is_uppercase() || (idx > 0 && chars[idx - 1] == '.');
    }
    ABBREVIATIONS.contains(&word.to_lowercase().as_str())
}

fn push_trimmed(sentences: &mut Vec<String>, span: &[char]) {
    let s: String = span.iter().collect();
    let t = s.trim();
    if !t.is_empty() {
        sentences.push(t.to_string());
    }
}

#[cfg(test)]
mod tests {
    use super::split_sentences;

    fn split(text: &str) -> Vec<String> {
        split_sentences(text).unwrap()
    }

    // The pinned 20-case suite for the splitting rule.
    #[test]
    fn case_suite() {
        let cases: &[(&str, &[&str])] = &[
            ("A b. C d.", &["A b.", "C d."]),
            ("no punctuation here", &["no punctuation here"]),
            ("Dr. Smith left. He ran.", &["Dr. Smith left.", "He ran."]),
            ("Mr. and Mrs. Jones arrived.", &["Mr. and Mrs. Jones arrived."]),
            ("It works! Really? Yes.", &["It works!", "Really?", "Yes."]),
            ("The value is 3.5 units.", &["The value is 3.5 units."]),
            ("See Fig. 3 for details.", &["See Fig. 3 for details."]),
            (
                "J. K. Rowling wrote it. It sold.",
                &["J. K. Rowling wrote it.", "It sold."],
            ),
            (
                "He said \"Stop.\" Then left.",
                &["He said \"Stop.\"", "Then left."],
            ),
            ("First sentence.Second glued", &["First sentence.Second glued"]),
            ("lowercase after. not split", &["lowercase after. not split"]),
            ("Ends abruptly", &["Ends abruptly"]),
            ("Trailing period.", &["Trailing period."]),
            ("One. two. Three.", &["One. two.", "Three."]),
            ("E.g. this is common.", &["E.g. this is common."]),
            ("Multiple   spaces. Next one.", &["Multiple   spaces.", "Next one."]),
            (
                "What?! Two terminators. Done.",
                &["What?!", "Two terminators.", "Done."],
            ),
            ("An ellipsis... And more.", &["An ellipsis...", "And more."]),
            ("\u{00c7}a marche. \u{00c7}a suffit.", &["\u{00c7}a marche.", "\u{00c7}a suffit."]),
            (
                "i.e. the answer is 42. The end.",
                &["i.e. the answer is 42.", "The end."],
            ),
        ];
        for (text, expected) in cases {
            assert_eq!(&split(text), expected, "input: {text:?}");
        }
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(split_sentences("").is_err());
        assert!(split_sentences("   \n\t ").is_err());
    }

    #[test]
    fn covers_all_nonwhitespace_input() {
        let text = "Alpha beta. Gamma delta! Epsilon?";
        let joined: String = split(text).concat();
        let squash = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        assert_eq!(squash(&joined), squash(text));
    }
}
