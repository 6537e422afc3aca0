//! Porter stemmer.
//!
//! Port of the classic five-step suffix stripper, matching the reference
//! implementation's behaviour including its two documented departures from
//! the original description (`bli` -> `ble` in place of `abli` -> `able`,
//! and the extra `logi` -> `log` rule) and the length <= 2 early exit.
//!
//! Input is lowercased first. Tokens containing non-ASCII characters are
//! returned lowercased but otherwise untouched; the rules below are defined
//! over ASCII letters only. Non-letter ASCII bytes (digits, hyphens) are
//! treated as consonants, as the reference implementation effectively does.

/// Stem a single word. Lowercases, then applies all five steps.
pub fn stem(word: &str) -> String {
    let lowered = word.to_lowercase();
    if !lowered.is_ascii() {
        return lowered;
    }
    let mut buf = lowered.into_bytes();
    if buf.len() <= 2 {
        return String::from_utf8(buf).expect("ascii");
    }
    let end = {
        let mut st = Stemmer {
            b: &mut buf,
            k: 0,
            j: 0,
        };
        st.run()
    };
    buf.truncate(end);
    String::from_utf8(buf).expect("ascii")
}

struct Stemmer<'a> {
    b: &'a mut [u8],
    /// Index of the last letter of the current stem.
    k: i32,
    /// Offset set by `ends`: index of the last letter before a matched suffix.
    j: i32,
}

impl<'a> Stemmer<'a> {
    fn run(&mut self) -> usize {
        self.k = self.b.len() as i32 - 1;
        self.step1ab();
        self.step1c();
        self.step2();
        self.step3();
        self.step4();
        self.step5();
        (self.k + 1) as usize
    }

    fn at(&self, i: i32) -> u8 {
        self.b[i as usize]
    }

    /// True when b[i] is a consonant. `y` counts as a vowel only when
    /// preceded by a consonant.
    fn cons(&self, i: i32) -> bool {
        match self.at(i) {
            b'a' | b'e' | b'i' | b'o' | b'u' => false,
            b'y' => {
                if i == 0 {
                    true
                } else {
                    !self.cons(i - 1)
                }
            }
            _ => true,
        }
    }

    /// Number of consonant-vowel sequences in b[0..=j]: the measure `m`
    /// in the pattern [C](VC)^m[V].
    fn measure(&self) -> i32 {
        let mut n = 0;
        let mut i = 0;
        loop {
            if i > self.j {
                return n;
            }
            if !self.cons(i) {
                break;
            }
            i += 1;
        }
        i += 1;
        loop {
            loop {
                if i > self.j {
                    return n;
                }
                if self.cons(i) {
                    break;
                }
                i += 1;
            }
            i += 1;
            n += 1;
            loop {
                if i > self.j {
                    return n;
                }
                if !self.cons(i) {
                    break;
                }
                i += 1;
            }
            i += 1;
        }
    }

    fn vowel_in_stem(&self) -> bool {
        (0..=self.j).any(|i| !self.cons(i))
    }

    /// b[i-1], b[i] form a double consonant.
    fn double_cons(&self, i: i32) -> bool {
        if i < 1 {
            return false;
        }
        self.at(i) == self.at(i - 1) && self.cons(i)
    }

    /// b[i-2..=i] is consonant-vowel-consonant and the final consonant is
    /// not w, x, or y. Signals a stem like "hop" or "fil" that takes an -e.
    fn cvc(&self, i: i32) -> bool {
        if i < 2 || !self.cons(i) || self.cons(i - 1) || !self.cons(i - 2) {
            return false;
        }
        !matches!(self.at(i), b'w' | b'x' | b'y')
    }

    /// True when the stem ends with `s`; sets `j` to just before the suffix.
    fn ends(&mut self, s: &[u8]) -> bool {
        let len = s.len() as i32;
        if len > self.k + 1 {
            return false;
        }
        let start = (self.k - len + 1) as usize;
        if &self.b[start..=(self.k as usize)] != s {
            return false;
        }
        self.j = self.k - len;
        true
    }

    /// Replace the suffix after `j` with `s`, adjusting `k`.
    fn set_to(&mut self, s: &[u8]) {
        let start = (self.j + 1) as usize;
        self.b[start..start + s.len()].copy_from_slice(s);
        self.k = self.j + s.len() as i32;
    }

    fn replace_if_measure(&mut self, s: &[u8]) {
        if self.measure() > 0 {
            self.set_to(s);
        }
    }

    /// Plurals and -ed / -ing.
    fn step1ab(&mut self) {
        if self.at(self.k) == b's' {
            if self.ends(b"sses") {
                self.k -= 2;
            } else if self.ends(b"ies") {
                self.set_to(b"i");
            } else if self.k >= 1 && self.at(self.k - 1) != b's' {
                self.k -= 1;
            }
        }
        if self.ends(b"eed") {
            if self.measure() > 0 {
                self.k -= 1;
            }
        } else if (self.ends(b"ed") || self.ends(b"ing")) && self.vowel_in_stem() {
            self.k = self.j;
            if self.ends(b"at") {
                self.set_to(b"ate");
            } else if self.ends(b"bl") {
                self.set_to(b"ble");
            } else if self.ends(b"iz") {
                self.set_to(b"ize");
            } else if self.double_cons(self.k) {
                self.k -= 1;
                if matches!(self.at(self.k), b'l' | b's' | b'z') {
                    self.k += 1;
                }
            } else if self.measure() == 1 && self.cvc(self.k) {
                self.set_to(b"e");
            }
        }
    }

    /// Terminal y -> i when the stem has another vowel.
    fn step1c(&mut self) {
        if self.ends(b"y") && self.vowel_in_stem() {
            self.b[self.k as usize] = b'i';
        }
    }

    /// Double suffixes -> single ones, e.g. -ization -> -ize.
    /// Branches mirror the published rule table one-to-one; `ends` sets `j`
    /// as a side effect, so seemingly identical arms are not mergeable.
    #[allow(clippy::if_same_then_else)]
    fn step2(&mut self) {
        if self.k < 1 {
            return;
        }
        match self.at(self.k - 1) {
            b'a' => {
                if self.ends(b"ational") {
                    self.replace_if_measure(b"ate");
                } else if self.ends(b"tional") {
                    self.replace_if_measure(b"tion");
                }
            }
            b'c' => {
                if self.ends(b"enci") {
                    self.replace_if_measure(b"ence");
                } else if self.ends(b"anci") {
                    self.replace_if_measure(b"ance");
                }
            }
            b'e' => {
                if self.ends(b"izer") {
                    self.replace_if_measure(b"ize");
                }
            }
            b'l' => {
                if self.ends(b"bli") {
                    self.replace_if_measure(b"ble");
                } else if self.ends(b"alli") {
                    self.replace_if_measure(b"al");
                } else if self.ends(b"entli") {
                    self.replace_if_measure(b"ent");
                } else if self.ends(b"eli") {
                    self.replace_if_measure(b"e");
                } else if self.ends(b"ousli") {
                    self.replace_if_measure(b"ous");
                }
            }
            b'o' => {
                if self.ends(b"ization") {
                    self.replace_if_measure(b"ize");
                } else if self.ends(b"ation") {
                    self.replace_if_measure(b"ate");
                } else if self.ends(b"ator") {
                    self.replace_if_measure(b"ate");
                }
            }
            b's' => {
                if self.ends(b"alism") {
                    self.replace_if_measure(b"al");
                } else if self.ends(b"iveness") {
                    self.replace_if_measure(b"ive");
                } else if self.ends(b"fulness") {
                    self.replace_if_measure(b"ful");
                } else if self.ends(b"ousness") {
                    self.replace_if_measure(b"ous");
                }
            }
            b't' => {
                if self.ends(b"aliti") {
                    self.replace_if_measure(b"al");
                } else if self.ends(b"iviti") {
                    self.replace_if_measure(b"ive");
                } else if self.ends(b"biliti") {
                    self.replace_if_measure(b"ble");
                }
            }
            b'g' => {
                if self.ends(b"logi") {
                    self.replace_if_measure(b"log");
                }
            }
            _ => {}
        }
    }

    /// -ic-, -full, -ness etc.
    fn step3(&mut self) {
        match self.at(self.k) {
            b'e' => {
                if self.ends(b"icate") {
                    self.replace_if_measure(b"ic");
                } else if self.ends(b"ative") {
                    self.replace_if_measure(b"");
                } else if self.ends(b"alize") {
                    self.replace_if_measure(b"al");
                }
            }
            b'i' => {
                if self.ends(b"iciti") {
                    self.replace_if_measure(b"ic");
                }
            }
            b'l' => {
                if self.ends(b"ical") {
                    self.replace_if_measure(b"ic");
                } else if self.ends(b"ful") {
                    self.replace_if_measure(b"");
                }
            }
            b's' => {
                if self.ends(b"ness") {
                    self.replace_if_measure(b"");
                }
            }
            _ => {}
        }
    }

    /// -ant, -ence etc. removed in the context <c>vcvc<v>.
    fn step4(&mut self) {
        if self.k < 1 {
            return;
        }
        let matched = match self.at(self.k - 1) {
            b'a' => self.ends(b"al"),
            b'c' => self.ends(b"ance") || self.ends(b"ence"),
            b'e' => self.ends(b"er"),
            b'i' => self.ends(b"ic"),
            b'l' => self.ends(b"able") || self.ends(b"ible"),
            b'n' => {
                self.ends(b"ant")
                    || self.ends(b"ement")
                    || self.ends(b"ment")
                    || self.ends(b"ent")
            }
            b'o' => {
                (self.ends(b"ion")
                    && self.j >= 0
                    && matches!(self.at(self.j), b's' | b't'))
                    || self.ends(b"ou")
            }
            b's' => self.ends(b"ism"),
            b't' => self.ends(b"ate") || self.ends(b"iti"),
            b'u' => self.ends(b"ous"),
            b'v' => self.ends(b"ive"),
            b'z' => self.ends(b"ize"),
            _ => false,
        };
        if matched && self.measure() > 1 {
            self.k = self.j;
        }
    }

    /// Final -e removal and -ll -> -l.
    fn step5(&mut self) {
        self.j = self.k;
        if self.at(self.k) == b'e' {
            let a = self.measure();
            if a > 1 || (a == 1 && !self.cvc(self.k - 1)) {
                self.k -= 1;
            }
        }
        if self.at(self.k) == b'l' && self.double_cons(self.k) && self.measure() > 1 {
            self.k -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::stem;

    /// Input/output pairs drawn from the algorithm's published rule
    /// examples, traced through the full five-step pipeline.
    const VOCABULARY: &[(&str, &str)] = &[
        // plurals
        ("caresses", "caress"),
        ("ponies", "poni"),
        ("ties", "ti"),
        ("caress", "caress"),
        ("cats", "cat"),
        // -ed / -ing
        ("feed", "feed"),
        ("agreed", "agre"),
        ("plastered", "plaster"),
        ("bled", "bled"),
        ("motoring", "motor"),
        ("sing", "sing"),
        ("conflated", "conflat"),
        ("troubled", "troubl"),
        ("sized", "size"),
        ("hopping", "hop"),
        ("tanned", "tan"),
        ("falling", "fall"),
        ("hissing", "hiss"),
        ("fizzed", "fizz"),
        ("failing", "fail"),
        ("filing", "file"),
        ("running", "run"),
        ("controlling", "control"),
        // terminal y
        ("happy", "happi"),
        ("sky", "sky"),
        // double suffixes
        ("relational", "relat"),
        ("conditional", "condit"),
        ("rational", "ration"),
        ("valenci", "valenc"),
        ("hesitanci", "hesit"),
        ("digitizer", "digit"),
        ("conformabli", "conform"),
        ("radicalli", "radic"),
        ("differentli", "differ"),
        ("vileli", "vile"),
        ("analogousli", "analog"),
        ("vietnamization", "vietnam"),
        ("predication", "predic"),
        ("operator", "oper"),
        ("feudalism", "feudal"),
        ("decisiveness", "decis"),
        ("hopefulness", "hope"),
        ("callousness", "callous"),
        ("formaliti", "formal"),
        ("sensitiviti", "sensit"),
        ("sensibiliti", "sensibl"),
        // -ic-, -full, -ness
        ("triplicate", "triplic"),
        ("formative", "form"),
        ("formalize", "formal"),
        ("electricity", "electr"),
        // step 4 deletions
        ("allowance", "allow"),
        ("inference", "infer"),
        ("airliner", "airlin"),
        ("gyroscopic", "gyroscop"),
        ("adjustable", "adjust"),
        ("defensible", "defens"),
        ("irritant", "irrit"),
        ("replacement", "replac"),
        ("adjustment", "adjust"),
        ("dependent", "depend"),
        ("adoption", "adopt"),
        ("homologou", "homolog"),
        ("homologous", "homolog"),
        ("communism", "commun"),
        ("activate", "activ"),
        ("angularity", "angular"),
        ("effective", "effect"),
        ("bowdlerize", "bowdler"),
        ("agreement", "agreement"),
        ("argument", "argument"),
        // final e and ll
        ("probate", "probat"),
        ("rate", "rate"),
        ("cease", "ceas"),
        ("roll", "roll"),
        // multi-step derivations
        ("generalizations", "gener"),
        ("oscillators", "oscil"),
        ("connection", "connect"),
        ("connections", "connect"),
        ("connective", "connect"),
        ("connected", "connect"),
        ("connecting", "connect"),
    ];

    #[test]
    fn rule_example_vocabulary() {
        for &(input, expected) in VOCABULARY {
            assert_eq!(stem(input), expected, "stem({input:?})");
        }
    }

    #[test]
    fn values_used_by_gold_matching() {
        assert_eq!(stem("invariance"), "invari");
        assert_eq!(stem("invariant"), "invari");
        assert_eq!(stem("recognition"), "recognit");
        assert_eq!(stem("a"), "a");
        assert_eq!(stem("at"), "at");
    }

    #[test]
    fn idempotence_holds_outside_known_restrip_classes() {
        // The reference algorithm is not strictly idempotent: outputs
        // ending in a bare -s re-enter the plural rule ("decis" -> "deci")
        // and a restored final -e can be stripped again ("agre" -> "agr").
        // Exact agreement with the published outputs takes precedence, so
        // pin idempotence outside those two classes and require every
        // unstable output to fall inside them.
        let restrip_class = |w: &str| {
            (w.ends_with('s') && !w.ends_with("ss")) || w.ends_with('e')
        };
        let mut stable = 0usize;
        for &(input, _) in VOCABULARY {
            let once = stem(input);
            let twice = stem(&once);
            if twice == once {
                stable += 1;
            } else {
                assert!(
                    restrip_class(&once),
                    "unexpected non-idempotence: {input:?} -> {once:?} -> {twice:?}"
                );
            }
        }
        assert!(stable as f64 / VOCABULARY.len() as f64 > 0.9);
    }

    #[test]
    fn lowercases_input() {
        assert_eq!(stem("Running"), "run");
        assert_eq!(stem("INVARIANCE"), "invari");
    }

    #[test]
    fn non_ascii_passes_through() {
        assert_eq!(stem("als\u{00e9}"), "als\u{00e9}");
    }

    #[test]
    fn shrinking_suffix_words_are_safe() {
        // Degenerate inputs that shrink to near-empty stems must not panic.
        for w in ["ies", "sses", "eed", "ees", "ing", "ed"] {
            let _ = stem(w);
        }
    }

    /// When the published 23k-word sample vocabulary is available
    /// (PORTER_VOC=/path/to/voc.txt, PORTER_OUT=/path/to/output.txt),
    /// require >= 99.5% exact agreement.
    #[test]
    fn published_sample_vocabulary_if_present() {
        let (voc, out) = match (std::env::var("PORTER_VOC"), std::env::var("PORTER_OUT")) {
            (Ok(v), Ok(o)) => (v, o),
            _ => {
                println!("PORTER_VOC/PORTER_OUT not set; skipping full-vocabulary check");
                return;
            }
        };
        let voc = std::fs::read_to_string(voc).expect("read voc");
        let out = std::fs::read_to_string(out).expect("read output");
        let pairs: Vec<(&str, &str)> = voc
            .lines()
            .zip(out.lines())
            .map(|(a, b)| (a.trim(), b.trim()))
            .filter(|(a, _)| !a.is_empty())
            .collect();
        assert!(!pairs.is_empty());
        let agree = pairs
            .iter()
            .filter(|(input, expected)| stem(input) == *expected)
            .count();
        let ratio = agree as f64 / pairs.len() as f64;
        assert!(
            ratio >= 0.995,
            "porter agreement {:.4} below 0.995 ({} / {})",
            ratio,
            agree,
            pairs.len()
        );
    }
}
