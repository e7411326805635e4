//! Micropost text normalization.
//!
//! Turns raw micropost text into sentences of fully spelled-out word tokens:
//! URLs, mentions, and emoji are stripped; hashtags keep their body;
//! abbreviations are expanded from a lookup table; numerals are spelled out
//! as English cardinals. The sentence count of the result is the σ statistic
//! and its tokens are the units syllable counting runs over.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::LazyLock;

use regex::Regex;
use thiserror::Error;

static URL_RE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)\b(?:https?://|www\.)\S+").unwrap());

/// Punctuation and symbols allowed to survive artifact stripping. Everything
/// else that is not alphanumeric or whitespace (emoji, dingbats, box art)
/// is removed.
const KEPT_SYMBOLS: &str = ".,!?;:'\"()[]-_/%&$@#₱";

/// Where a token came from during normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenOrigin {
    Plain,
    AbbrevExpansion,
    NumeralExpansion,
    Hashtag,
}

/// A single lowercase word token. The surface contains only letters, plus
/// optional interior apostrophes which syllabification ignores.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordToken {
    surface: String,
    origin: TokenOrigin,
}

impl WordToken {
    pub fn new(surface: impl Into<String>, origin: TokenOrigin) -> Result<Self, InvalidToken> {
        let surface = surface.into();
        if !surface.chars().any(|c| c.is_alphabetic()) {
            return Err(InvalidToken(surface));
        }
        if !surface.chars().all(|c| c.is_alphabetic() || c == '\'') {
            return Err(InvalidToken(surface));
        }
        Ok(Self { surface, origin })
    }

    pub fn surface(&self) -> &str {
        &self.surface
    }

    pub fn origin(&self) -> TokenOrigin {
        self.origin
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid word token {0:?}: must contain a letter and only letters or apostrophes")]
pub struct InvalidToken(pub String);

/// A sentence is a non-empty list of word tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    tokens: Vec<WordToken>,
}

impl Sentence {
    pub fn new(tokens: Vec<WordToken>) -> Result<Self, EmptySentence> {
        if tokens.is_empty() {
            return Err(EmptySentence);
        }
        Ok(Self { tokens })
    }

    pub fn tokens(&self) -> &[WordToken] {
        &self.tokens
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("sentence has no surviving word tokens")]
pub struct EmptySentence;

/// A normalized document: one or more sentences of word tokens. The sentence
/// count is the σ statistic of the SMOG formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedDoc {
    sentences: Vec<Sentence>,
}

impl NormalizedDoc {
    pub fn from_sentences(sentences: Vec<Sentence>) -> Result<Self, UnsorableDocument> {
        if sentences.is_empty() {
            return Err(UnsorableDocument);
        }
        Ok(Self { sentences })
    }

    pub fn sentences(&self) -> &[Sentence] {
        &self.sentences
    }

    /// Number of sentences (σ). At least 1 by construction.
    pub fn sentence_count(&self) -> usize {
        self.sentences.len()
    }

    /// All tokens across all sentences, in order.
    pub fn tokens(&self) -> impl Iterator<Item = &WordToken> {
        self.sentences.iter().flat_map(|s| s.tokens().iter())
    }

    pub fn token_count(&self) -> usize {
        self.tokens().count()
    }
}

/// The document normalized to zero sentences and cannot be graded.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("document normalizes to zero sentences")]
pub struct UnsorableDocument;

/// Abbreviation expansion table. Keys match case-insensitively and ignore a
/// trailing period, so `Sen.`, `sen.` and `sen` all hit the same entry.
#[derive(Debug, Clone, Default)]
pub struct AbbrevTable {
    entries: HashMap<String, Vec<String>>,
}

impl AbbrevTable {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The small shipped default: titles, months, and a few contractions of
    /// bureaucratic vocabulary common in political microposts.
    pub fn builtin() -> Self {
        Self::parse(include_str!("../data/abbreviations.tsv"))
            .expect("builtin abbreviation table parses")
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, AbbrevError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| AbbrevError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Parses TSV content: `abbrev<TAB>expansion words`, `#` comments.
    pub fn parse(text: &str) -> Result<Self, AbbrevError> {
        let mut entries = HashMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, expansion) = line.split_once('\t').ok_or(AbbrevError::Malformed {
                line: line_no,
                reason: "expected `abbrev<TAB>expansion words`",
            })?;
            let key = normalize_lookup_key(key);
            if key.is_empty() {
                return Err(AbbrevError::Malformed {
                    line: line_no,
                    reason: "empty abbreviation",
                });
            }
            let words: Vec<String> = expansion
                .split_whitespace()
                .map(|w| w.to_lowercase())
                .collect();
            if words.is_empty() {
                return Err(AbbrevError::Malformed {
                    line: line_no,
                    reason: "empty expansion",
                });
            }
            for w in &words {
                if WordToken::new(w.clone(), TokenOrigin::AbbrevExpansion).is_err() {
                    return Err(AbbrevError::Malformed {
                        line: line_no,
                        reason: "expansion words must be letters (apostrophes allowed)",
                    });
                }
            }
            if entries.insert(key.clone(), words).is_some() {
                return Err(AbbrevError::Duplicate { line: line_no, key });
            }
        }
        Ok(Self { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn lookup(&self, token: &str) -> Option<&[String]> {
        self.entries
            .get(&normalize_lookup_key(token))
            .map(Vec::as_slice)
    }
}

#[derive(Debug, Error)]
pub enum AbbrevError {
    #[error("cannot read abbreviation table {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("abbreviation table line {line}: {reason}")]
    Malformed { line: usize, reason: &'static str },
    #[error("abbreviation table line {line}: duplicate key {key:?}")]
    Duplicate { line: usize, key: String },
}

/// Lowercases and trims surrounding punctuation so table keys and incoming
/// tokens normalize to the same form.
fn normalize_lookup_key(s: &str) -> String {
    s.to_lowercase()
        .trim_matches(|c: char| !c.is_alphanumeric())
        .to_string()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MalformedNumeral {
    #[error("numeral {0:?} contains non-digit characters")]
    NonDigit(String),
    #[error("numeral {0:?} exceeds 15 digits")]
    TooLong(String),
}

const UNITS: [&str; 20] = [
    "zero",
    "one",
    "two",
    "three",
    "four",
    "five",
    "six",
    "seven",
    "eight",
    "nine",
    "ten",
    "eleven",
    "twelve",
    "thirteen",
    "fourteen",
    "fifteen",
    "sixteen",
    "seventeen",
    "eighteen",
    "nineteen",
];

const TENS: [&str; 10] = [
    "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety",
];

const SCALES: [&str; 5] = ["", "thousand", "million", "billion", "trillion"];

/// Spells a non-negative integer (up to 15 digits) as English cardinal
/// words, one word per element, without "and". Compound tens split into
/// separate words: 45 → `["forty", "five"]`.
pub fn spell_out_number(numeral: &str) -> Result<Vec<String>, MalformedNumeral> {
    if numeral.is_empty() || !numeral.bytes().all(|b| b.is_ascii_digit()) {
        return Err(MalformedNumeral::NonDigit(numeral.to_string()));
    }
    if numeral.len() > 15 {
        return Err(MalformedNumeral::TooLong(numeral.to_string()));
    }
    let value: u64 = numeral.parse().expect("validated digit string fits u64");
    if value == 0 {
        return Ok(vec!["zero".to_string()]);
    }

    // Base-1000 groups, most significant first.
    let mut groups = Vec::new();
    let mut rest = value;
    while rest > 0 {
        groups.push((rest % 1000) as usize);
        rest /= 1000;
    }

    let mut words = Vec::new();
    for (scale, &group) in groups.iter().enumerate().rev() {
        if group == 0 {
            continue;
        }
        push_group_words(group, &mut words);
        if scale > 0 {
            words.push(SCALES[scale].to_string());
        }
    }
    Ok(words)
}

fn push_group_words(group: usize, words: &mut Vec<String>) {
    debug_assert!((1..1000).contains(&group));
    let hundreds = group / 100;
    let rest = group % 100;
    if hundreds > 0 {
        words.push(UNITS[hundreds].to_string());
        words.push("hundred".to_string());
    }
    if rest == 0 {
        return;
    }
    if rest < 20 {
        words.push(UNITS[rest].to_string());
    } else {
        words.push(TENS[rest / 10].to_string());
        if !rest.is_multiple_of(10) {
            words.push(UNITS[rest % 10].to_string());
        }
    }
}

/// Removes micropost artifacts: URLs and @mentions disappear, hashtags lose
/// their `#`, emoji and other non-text symbols are dropped, and whitespace
/// collapses to single spaces. Empty output is permitted.
pub fn strip_micropost_artifacts(raw: &str) -> String {
    let no_urls = URL_RE.replace_all(raw, " ");

    let cleaned: String = no_urls
        .chars()
        .map(|c| match c {
            '\u{2019}' | '\u{2018}' => '\'',
            '\u{201c}' | '\u{201d}' => '"',
            '\u{2026}' => '.',
            '\u{2013}' | '\u{2014}' => '-',
            _ => c,
        })
        .filter(|&c| c.is_alphanumeric() || c.is_whitespace() || KEPT_SYMBOLS.contains(c))
        .collect();

    let mut kept = Vec::new();
    for token in cleaned.split_whitespace() {
        if token.starts_with('@') {
            continue;
        }
        let token = token.trim_start_matches('#');
        if !token.is_empty() {
            kept.push(token);
        }
    }
    kept.join(" ")
}

/// Splits text into raw sentence strings on runs of terminal punctuation
/// (`.` `!` `?`) and newlines. Segments without a single letter are
/// discarded, so the result may be empty.
pub fn segment_sentences(raw: &str) -> Vec<String> {
    let mut segments = Vec::new();
    let mut current = String::new();
    for c in raw.chars() {
        if matches!(c, '.' | '!' | '?' | '\n') {
            flush_segment(&mut current, &mut segments);
        } else {
            current.push(c);
        }
    }
    flush_segment(&mut current, &mut segments);
    segments
}

fn flush_segment(current: &mut String, segments: &mut Vec<String>) {
    let trimmed = current.trim();
    if trimmed.chars().any(|c| c.is_alphabetic()) {
        segments.push(trimmed.to_string());
    }
    current.clear();
}

/// Tokenizes one raw sentence: whitespace chunks are matched against the
/// abbreviation table, digit runs are spelled out as cardinals, `%` reads as
/// "percent" and `&` as "and", currency signs are dropped, hyphenated words
/// split apart, and everything is lowercased. Digit-grouping commas inside a
/// number ("1,000") are removed before spelling. Digit runs longer than 15
/// are unreadable as numbers and are dropped.
pub fn tokenize(sentence: &str, abbrevs: &AbbrevTable) -> Result<Sentence, EmptySentence> {
    let mut tokens = Vec::new();
    for chunk in sentence.split_whitespace() {
        let is_hashtag = chunk.starts_with('#');
        let lower = chunk.to_lowercase();

        if let Some(expansion) = abbrevs.lookup(&lower) {
            for word in expansion {
                tokens.push(WordToken {
                    surface: word.clone(),
                    origin: TokenOrigin::AbbrevExpansion,
                });
            }
            continue;
        }

        let word_origin = if is_hashtag {
            TokenOrigin::Hashtag
        } else {
            TokenOrigin::Plain
        };
        scan_chunk(&strip_digit_group_commas(&lower), word_origin, &mut tokens);
    }
    Sentence::new(tokens)
}

/// Removes commas sitting between two digits so "1,000" spells as one number.
fn strip_digit_group_commas(chunk: &str) -> String {
    let chars: Vec<char> = chunk.chars().collect();
    let mut out = String::with_capacity(chunk.len());
    for (i, &c) in chars.iter().enumerate() {
        if c == ','
            && i > 0
            && i + 1 < chars.len()
            && chars[i - 1].is_ascii_digit()
            && chars[i + 1].is_ascii_digit()
        {
            continue;
        }
        out.push(c);
    }
    out
}

fn scan_chunk(chunk: &str, word_origin: TokenOrigin, tokens: &mut Vec<WordToken>) {
    let mut buf = String::new();
    let mut buf_is_digits = false;

    let flush = |buf: &mut String, is_digits: bool, tokens: &mut Vec<WordToken>| {
        if buf.is_empty() {
            return;
        }
        if is_digits {
            if let Ok(words) = spell_out_number(buf) {
                for w in words {
                    tokens.push(WordToken {
                        surface: w,
                        origin: TokenOrigin::NumeralExpansion,
                    });
                }
            }
        } else {
            let trimmed = buf.trim_matches('\'');
            if trimmed.chars().any(|c| c.is_alphabetic()) {
                tokens.push(WordToken {
                    surface: trimmed.to_string(),
                    origin: word_origin,
                });
            }
        }
        buf.clear();
    };

    for c in chunk.chars() {
        if c.is_ascii_digit() {
            if !buf_is_digits {
                flush(&mut buf, false, tokens);
                buf_is_digits = true;
            }
            buf.push(c);
        } else if c.is_alphabetic() || c == '\'' {
            if buf_is_digits {
                flush(&mut buf, true, tokens);
                buf_is_digits = false;
            }
            buf.push(c);
        } else {
            flush(&mut buf, buf_is_digits, tokens);
            buf_is_digits = false;
            match c {
                '%' => tokens.push(WordToken {
                    surface: "percent".to_string(),
                    origin: word_origin,
                }),
                '&' => tokens.push(WordToken {
                    surface: "and".to_string(),
                    origin: word_origin,
                }),
                _ => {}
            }
        }
    }
    flush(&mut buf, buf_is_digits, tokens);
}

/// The full normalization pipeline: strip → segment → tokenize. Sentences
/// that tokenize to nothing are dropped; a document with zero surviving
/// sentences is unsorable.
pub fn normalize(raw: &str, abbrevs: &AbbrevTable) -> Result<NormalizedDoc, UnsorableDocument> {
    let stripped = strip_micropost_artifacts(raw);
    let sentences: Vec<Sentence> = segment_sentences(&stripped)
        .iter()
        .filter_map(|seg| tokenize(seg, abbrevs).ok())
        .collect();
    NormalizedDoc::from_sentences(sentences)
}

impl fmt::Display for WordToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.surface)
    }
}
