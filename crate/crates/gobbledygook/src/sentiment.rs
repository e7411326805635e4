//! Three-class Naïve Bayes sentiment polarity.
//!
//! The classifier trains from a labeled word lexicon: every lexicon entry is
//! one single-word training example for its class. Classification is
//! bag-of-words in log space; tokens outside the lexicon vocabulary are
//! skipped entirely, so a document with no in-vocabulary tokens falls back
//! to neutral with uniform posteriors.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::normalize::NormalizedDoc;

/// Sentiment polarity label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Polarity {
    Positive,
    Negative,
    Neutral,
}

impl Polarity {
    pub const ALL: [Polarity; 3] = [Polarity::Positive, Polarity::Negative, Polarity::Neutral];

    pub fn as_str(&self) -> &'static str {
        match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
            Polarity::Neutral => "neutral",
        }
    }

    fn index(&self) -> usize {
        match self {
            Polarity::Positive => 0,
            Polarity::Negative => 1,
            Polarity::Neutral => 2,
        }
    }

    fn from_index(i: usize) -> Polarity {
        Polarity::ALL[i]
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Language tag of a lexicon entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Language {
    English,
    Filipino,
}

/// A labeled word lexicon: lowercase words mapped to a polarity and a
/// language tag. Every polarity class has at least one entry.
#[derive(Debug, Clone)]
pub struct Lexicon {
    entries: BTreeMap<String, (Polarity, Language)>,
}

impl Lexicon {
    /// Loads a lexicon file: TSV `word<TAB>polarity<TAB>language`,
    /// `#` comments. Words are lowercased; duplicates after lowercasing are
    /// errors, as is any polarity class left without entries.
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| LexiconError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut entries = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            let word = fields.next().unwrap_or_default().trim().to_lowercase();
            let polarity = fields.next().ok_or(LexiconError::Malformed {
                line: line_no,
                reason: "expected `word<TAB>polarity<TAB>language`",
            })?;
            let language = fields.next().ok_or(LexiconError::Malformed {
                line: line_no,
                reason: "missing language field",
            })?;
            if word.is_empty() {
                return Err(LexiconError::Malformed {
                    line: line_no,
                    reason: "empty word",
                });
            }
            let polarity = match polarity.trim() {
                "positive" => Polarity::Positive,
                "negative" => Polarity::Negative,
                "neutral" => Polarity::Neutral,
                _ => {
                    return Err(LexiconError::Malformed {
                        line: line_no,
                        reason: "polarity must be positive, negative, or neutral",
                    })
                }
            };
            let language = match language.trim() {
                "english" => Language::English,
                "filipino" => Language::Filipino,
                _ => {
                    return Err(LexiconError::Malformed {
                        line: line_no,
                        reason: "language must be english or filipino",
                    })
                }
            };
            if entries.insert(word.clone(), (polarity, language)).is_some() {
                return Err(LexiconError::Duplicate {
                    line: line_no,
                    word,
                });
            }
        }
        let lexicon = Self { entries };
        for class in Polarity::ALL {
            if lexicon.class_count(class) == 0 {
                return Err(LexiconError::EmptyClass { class });
            }
        }
        Ok(lexicon)
    }

    /// Builds a lexicon from `(word, polarity)` pairs, tagging everything
    /// English. Intended for tests and embedding.
    pub fn from_entries(
        pairs: impl IntoIterator<Item = (String, Polarity)>,
    ) -> Result<Self, LexiconError> {
        let mut entries = BTreeMap::new();
        for (word, polarity) in pairs {
            let word = word.to_lowercase();
            if entries
                .insert(word.clone(), (polarity, Language::English))
                .is_some()
            {
                return Err(LexiconError::Duplicate { line: 0, word });
            }
        }
        let lexicon = Self { entries };
        for class in Polarity::ALL {
            if lexicon.class_count(class) == 0 {
                return Err(LexiconError::EmptyClass { class });
            }
        }
        Ok(lexicon)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn class_count(&self, class: Polarity) -> usize {
        self.entries.values().filter(|(p, _)| *p == class).count()
    }

    pub fn polarity_of(&self, word: &str) -> Option<Polarity> {
        self.entries.get(word).map(|(p, _)| *p)
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read lexicon {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("lexicon line {line}: {reason}")]
    Malformed { line: usize, reason: &'static str },
    #[error("lexicon line {line}: duplicate word {word:?}")]
    Duplicate { line: usize, word: String },
    #[error("lexicon has no {class} entries")]
    EmptyClass { class: Polarity },
}

#[derive(Debug, Error, PartialEq)]
#[error("smoothing alpha must be positive, got {0}")]
pub struct NonPositiveAlpha(pub f64);

/// Posterior probability per polarity class. Sums to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassScores {
    pub positive: f64,
    pub negative: f64,
    pub neutral: f64,
}

impl ClassScores {
    fn from_array(p: [f64; 3]) -> Self {
        Self {
            positive: p[0],
            negative: p[1],
            neutral: p[2],
        }
    }

    pub fn get(&self, class: Polarity) -> f64 {
        match class {
            Polarity::Positive => self.positive,
            Polarity::Negative => self.negative,
            Polarity::Neutral => self.neutral,
        }
    }
}

/// A classification outcome: the label and the normalized posteriors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub label: Polarity,
    pub posteriors: ClassScores,
}

/// Trained Naïve Bayes parameters. Immutable after training; classification
/// is pure and safe to run from many threads.
#[derive(Debug, Clone)]
pub struct SentimentModel {
    priors: [f64; 3],
    /// Per vocabulary word, the smoothed likelihood under each class.
    likelihoods: BTreeMap<String, [f64; 3]>,
    /// Likelihood of the shared unseen pseudo-word under each class. Kept so
    /// per-class likelihoods normalize to one; never used in classification.
    unseen: [f64; 3],
    alpha: f64,
}

/// Trains from a lexicon: priors follow class entry counts, and word
/// likelihoods get Laplace smoothing with one shared unseen pseudo-word,
/// `P(w|c) = (count(w,c) + α) / (count(c) + α·(|V|+1))`.
pub fn train(lexicon: &Lexicon, alpha: f64) -> Result<SentimentModel, NonPositiveAlpha> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(NonPositiveAlpha(alpha));
    }
    let total = lexicon.len() as f64;
    let class_counts: [f64; 3] =
        Polarity::ALL.map(|class| lexicon.class_count(class) as f64);
    let priors = class_counts.map(|n| n / total);

    let vocab_size = lexicon.len() as f64;
    let denominators: [f64; 3] = class_counts.map(|n| n + alpha * (vocab_size + 1.0));

    let mut likelihoods = BTreeMap::new();
    for word in lexicon.words() {
        let class = lexicon.polarity_of(word).expect("word from lexicon");
        let mut per_class = [0.0; 3];
        for (i, d) in denominators.iter().enumerate() {
            let count = if class.index() == i { 1.0 } else { 0.0 };
            per_class[i] = (count + alpha) / d;
        }
        likelihoods.insert(word.to_string(), per_class);
    }
    let unseen: [f64; 3] = [
        alpha / denominators[0],
        alpha / denominators[1],
        alpha / denominators[2],
    ];

    Ok(SentimentModel {
        priors,
        likelihoods,
        unseen,
        alpha,
    })
}

/// Posterior spread below this is a tie, which resolves to neutral.
const TIE_EPSILON: f64 = 1e-12;

impl SentimentModel {
    pub fn prior(&self, class: Polarity) -> f64 {
        self.priors[class.index()]
    }

    /// Smoothed likelihood of a vocabulary word under a class.
    pub fn likelihood(&self, word: &str, class: Polarity) -> Option<f64> {
        self.likelihoods.get(word).map(|p| p[class.index()])
    }

    pub fn unseen_likelihood(&self, class: Polarity) -> f64 {
        self.unseen[class.index()]
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn vocabulary_size(&self) -> usize {
        self.likelihoods.len()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.likelihoods.contains_key(word)
    }

    /// Classifies a bag of words. Out-of-vocabulary words are skipped; if
    /// nothing remains the result is neutral with uniform posteriors. The
    /// label is the argmax of the normalized posteriors, with ties (within
    /// 1e-12 of the maximum) resolving to neutral.
    pub fn classify_words<'a>(
        &self,
        words: impl IntoIterator<Item = &'a str>,
    ) -> Classification {
        let mut log_posteriors = self.priors.map(f64::ln);
        let mut in_vocab = 0usize;
        for word in words {
            if let Some(per_class) = self.likelihoods.get(word) {
                in_vocab += 1;
                for (lp, l) in log_posteriors.iter_mut().zip(per_class) {
                    *lp += l.ln();
                }
            }
        }
        if in_vocab == 0 {
            return Classification {
                label: Polarity::Neutral,
                posteriors: ClassScores::from_array([1.0 / 3.0; 3]),
            };
        }

        let max = log_posteriors.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mut posteriors = log_posteriors.map(|lp| (lp - max).exp());
        let sum: f64 = posteriors.iter().sum();
        for p in &mut posteriors {
            *p /= sum;
        }

        let best = posteriors.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let at_max = posteriors.iter().filter(|&&p| best - p <= TIE_EPSILON).count();
        let label = if at_max > 1 {
            Polarity::Neutral
        } else {
            let idx = posteriors
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .map(|(i, _)| i)
                .expect("three classes");
            Polarity::from_index(idx)
        };
        Classification {
            label,
            posteriors: ClassScores::from_array(posteriors),
        }
    }

    /// Classifies a normalized document by its token bag.
    pub fn classify(&self, doc: &NormalizedDoc) -> Classification {
        self.classify_words(doc.tokens().map(|t| t.surface()))
    }
}
