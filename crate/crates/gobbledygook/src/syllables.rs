//! Syllable counting and polysyllable detection.
//!
//! A word is polysyllabic when it has three or more syllables; the number of
//! polysyllabic token occurrences in a document is the φ statistic the SMOG
//! formulas run on. Counting uses a vowel-group heuristic (or a per-vowel
//! rule for Filipino words) with a user-extendable exception dictionary that
//! always wins over the heuristic.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::normalize::{NormalizedDoc, Sentence, WordToken};

/// How syllables are estimated for words not in the exception dictionary.
///
/// `EnglishHeuristic` counts maximal vowel groups (`a e i o u`, plus `y`
/// when not word-initial) and subtracts a silent terminal `e` unless the
/// word ends in consonant + `le`. `FilipinoVowel` counts the vowels
/// `a e i o u` individually, one syllable each. Both floor at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LanguageMode {
    #[default]
    EnglishHeuristic,
    FilipinoVowel,
}

/// Counts syllables per word. Immutable after construction; all operations
/// are pure.
#[derive(Debug, Clone, Default)]
pub struct SyllableCounter {
    exceptions: HashMap<String, u32>,
    mode: LanguageMode,
}

impl SyllableCounter {
    pub fn new(mode: LanguageMode) -> Self {
        Self {
            exceptions: HashMap::new(),
            mode,
        }
    }

    /// English heuristic with no exception overrides.
    pub fn english() -> Self {
        Self::new(LanguageMode::EnglishHeuristic)
    }

    pub fn with_exceptions(
        mode: LanguageMode,
        exceptions: HashMap<String, u32>,
    ) -> Result<Self, ExceptionsError> {
        for (word, &count) in &exceptions {
            if count == 0 {
                return Err(ExceptionsError::ZeroCount { word: word.clone() });
            }
        }
        let exceptions = exceptions
            .into_iter()
            .map(|(w, c)| (w.to_lowercase(), c))
            .collect();
        Ok(Self { exceptions, mode })
    }

    /// Loads an exception dictionary: TSV `word<TAB>count`, `#` comments.
    pub fn from_exceptions_path(
        path: impl AsRef<Path>,
        mode: LanguageMode,
    ) -> Result<Self, ExceptionsError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| ExceptionsError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse_exceptions(&text, mode)
    }

    pub fn parse_exceptions(text: &str, mode: LanguageMode) -> Result<Self, ExceptionsError> {
        let mut exceptions = HashMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, count) = line
                .split_once('\t')
                .ok_or(ExceptionsError::Malformed { line: line_no })?;
            let count: u32 = count
                .trim()
                .parse()
                .map_err(|_| ExceptionsError::Malformed { line: line_no })?;
            if count == 0 {
                return Err(ExceptionsError::ZeroCount {
                    word: word.to_string(),
                });
            }
            let word = word.trim().to_lowercase();
            if exceptions.insert(word.clone(), count).is_some() {
                return Err(ExceptionsError::Duplicate {
                    line: line_no,
                    word,
                });
            }
        }
        Ok(Self { exceptions, mode })
    }

    pub fn exception_count(&self) -> usize {
        self.exceptions.len()
    }

    /// Syllables in one word: the exception dictionary wins outright,
    /// otherwise the counter's language mode decides. Always ≥ 1.
    pub fn count_syllables(&self, word: &WordToken) -> u32 {
        self.count_surface(word.surface())
    }

    /// Same as [`count_syllables`](Self::count_syllables) for a bare string,
    /// for callers that have not tokenized.
    pub fn count_surface(&self, surface: &str) -> u32 {
        let key = surface.to_lowercase();
        if let Some(&count) = self.exceptions.get(&key) {
            return count;
        }
        match self.mode {
            LanguageMode::EnglishHeuristic => english_heuristic(&key),
            LanguageMode::FilipinoVowel => filipino_vowel(&key),
        }
    }

    /// A word with more than two syllables is polysyllabic.
    pub fn is_polysyllabic(&self, word: &WordToken) -> bool {
        self.count_syllables(word) >= 3
    }

    /// Polysyllabic token occurrences in one sentence.
    pub fn count_sentence_polysyllables(&self, sentence: &Sentence) -> u64 {
        sentence
            .tokens()
            .iter()
            .filter(|t| self.is_polysyllabic(t))
            .count() as u64
    }

    /// The φ statistic: polysyllabic token occurrences over the whole
    /// document. Occurrences count, not distinct words.
    pub fn count_polysyllables(&self, doc: &NormalizedDoc) -> u64 {
        doc.sentences()
            .iter()
            .map(|s| self.count_sentence_polysyllables(s))
            .sum()
    }
}

#[derive(Debug, Error)]
pub enum ExceptionsError {
    #[error("cannot read exception dictionary {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("exception dictionary line {line}: expected `word<TAB>count`")]
    Malformed { line: usize },
    #[error("exception dictionary: count for {word:?} must be at least 1")]
    ZeroCount { word: String },
    #[error("exception dictionary line {line}: duplicate word {word:?}")]
    Duplicate { line: usize, word: String },
}

/// `y` is a vowel except at the start of a word.
fn is_vowel(c: char, position: usize) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u') || (c == 'y' && position > 0)
}

/// Maximal vowel groups, minus a silent terminal `e` (kept when the word
/// ends in consonant + `le`, as in "table"), floored at 1. Apostrophes are
/// ignored.
fn english_heuristic(word: &str) -> u32 {
    let letters: Vec<char> = word.chars().filter(|&c| c != '\'').collect();
    if letters.is_empty() {
        return 1;
    }

    let mut groups: u32 = 0;
    let mut in_group = false;
    for (i, &c) in letters.iter().enumerate() {
        let vowel = is_vowel(c, i);
        if vowel && !in_group {
            groups += 1;
        }
        in_group = vowel;
    }

    let n = letters.len();
    if letters[n - 1] == 'e' {
        let consonant_le =
            n >= 3 && letters[n - 2] == 'l' && !is_vowel(letters[n - 3], n - 3);
        if !consonant_le {
            groups = groups.saturating_sub(1);
        }
    }

    groups.max(1)
}

/// One syllable per vowel letter, floored at 1.
fn filipino_vowel(word: &str) -> u32 {
    let vowels = word
        .chars()
        .filter(|c| matches!(c, 'a' | 'e' | 'i' | 'o' | 'u'))
        .count() as u32;
    vowels.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::{normalize, AbbrevTable, TokenOrigin};
    use proptest::prelude::*;

    fn token(surface: &str) -> WordToken {
        WordToken::new(surface, TokenOrigin::Plain).unwrap()
    }

    #[test]
    fn single_vowel_group() {
        assert_eq!(SyllableCounter::english().count_syllables(&token("cat")), 1);
    }

    #[test]
    fn dictionary_verified_counts() {
        // Counts match the CMU Pronouncing Dictionary.
        let c = SyllableCounter::english();
        assert_eq!(c.count_syllables(&token("banana")), 3);
        assert_eq!(c.count_syllables(&token("gobbledygook")), 4);
        assert_eq!(c.count_syllables(&token("senate")), 2);
        assert_eq!(c.count_syllables(&token("hello")), 2);
        assert_eq!(c.count_syllables(&token("beautiful")), 3);
    }

    #[test]
    fn silent_terminal_e() {
        let c = SyllableCounter::english();
        assert_eq!(c.count_surface("cake"), 1);
        assert_eq!(c.count_surface("pale"), 1);
        assert_eq!(c.count_surface("the"), 1); // floor
    }

    #[test]
    fn consonant_le_keeps_the_e_group() {
        let c = SyllableCounter::english();
        assert_eq!(c.count_surface("table"), 2);
        assert_eq!(c.count_surface("able"), 2);
        assert_eq!(c.count_surface("style"), 1); // y is the vowel before l
    }

    #[test]
    fn y_as_vowel_unless_word_initial() {
        let c = SyllableCounter::english();
        assert_eq!(c.count_surface("my"), 1);
        assert_eq!(c.count_surface("yes"), 1);
        assert_eq!(c.count_surface("yearly"), 2);
        assert_eq!(c.count_surface("rhythm"), 1);
    }

    #[test]
    fn apostrophes_ignored() {
        let c = SyllableCounter::english();
        assert_eq!(c.count_surface("don't"), 1);
        assert_eq!(c.count_surface("senator's"), 3);
    }

    #[test]
    fn filipino_mode_counts_each_vowel() {
        let c = SyllableCounter::new(LanguageMode::FilipinoVowel);
        assert_eq!(c.count_surface("mabuti"), 3);
        assert_eq!(c.count_surface("maganda"), 3);
        assert_eq!(c.count_surface("paa"), 2);
    }

    #[test]
    fn exception_override_wins() {
        let mut map = HashMap::new();
        map.insert("business".to_string(), 2);
        let c = SyllableCounter::with_exceptions(LanguageMode::EnglishHeuristic, map).unwrap();
        assert_eq!(c.count_surface("business"), 2);
        assert_eq!(c.count_surface("BUSINESS"), 2);
    }

    #[test]
    fn exceptions_file_parses() {
        let c = SyllableCounter::parse_exceptions(
            "# overrides\nbusiness\t2\narea\t3\n",
            LanguageMode::EnglishHeuristic,
        )
        .unwrap();
        assert_eq!(c.exception_count(), 2);
        assert_eq!(c.count_surface("area"), 3);
    }

    #[test]
    fn exceptions_file_errors() {
        assert!(matches!(
            SyllableCounter::parse_exceptions("word\t0\n", LanguageMode::EnglishHeuristic),
            Err(ExceptionsError::ZeroCount { .. })
        ));
        assert!(matches!(
            SyllableCounter::parse_exceptions("word only\n", LanguageMode::EnglishHeuristic),
            Err(ExceptionsError::Malformed { line: 1 })
        ));
        assert!(matches!(
            SyllableCounter::parse_exceptions(
                "word\t2\nWORD\t3\n",
                LanguageMode::EnglishHeuristic
            ),
            Err(ExceptionsError::Duplicate { line: 2, .. })
        ));
    }

    #[test]
    fn polysyllabic_threshold() {
        let c = SyllableCounter::english();
        assert!(!c.is_polysyllabic(&token("cat")));
        assert!(!c.is_polysyllabic(&token("senate")));
        assert!(c.is_polysyllabic(&token("readability")));
    }

    #[test]
    fn phi_counts_occurrences_not_distinct_words() {
        let c = SyllableCounter::english();
        let doc = normalize("readability readability.", &AbbrevTable::empty()).unwrap();
        assert_eq!(c.count_polysyllables(&doc), 2);
    }

    #[test]
    fn phi_zero_for_short_words() {
        let c = SyllableCounter::english();
        let doc = normalize("cat dog.", &AbbrevTable::empty()).unwrap();
        assert_eq!(c.count_polysyllables(&doc), 0);
    }

    #[test]
    fn phi_is_additive_over_sentences() {
        let c = SyllableCounter::english();
        let doc = normalize(
            "The appropriations committee convened. Nobody objected. Everyone applauded generously.",
            &AbbrevTable::empty(),
        )
        .unwrap();
        let per_sentence: u64 = doc
            .sentences()
            .iter()
            .map(|s| c.count_sentence_polysyllables(s))
            .sum();
        assert_eq!(c.count_polysyllables(&doc), per_sentence);
    }

    proptest! {
        #[test]
        fn count_is_at_least_one(word in "[a-z']{1,20}") {
            prop_assume!(word.chars().any(|c| c.is_alphabetic()));
            let t = token(&word);
            prop_assert!(SyllableCounter::english().count_syllables(&t) >= 1);
            prop_assert!(
                SyllableCounter::new(LanguageMode::FilipinoVowel).count_syllables(&t) >= 1
            );
        }

        #[test]
        fn override_always_wins(word in "[a-z]{1,12}", count in 1u32..9) {
            let mut map = HashMap::new();
            map.insert(word.clone(), count);
            let c = SyllableCounter::with_exceptions(LanguageMode::EnglishHeuristic, map).unwrap();
            prop_assert_eq!(c.count_surface(&word), count);
        }
    }
}
