//! Readability and mood analysis for micropost corpora.
//!
//! `gobbledygook` computes SMOG readability grades (precise, simplified, and
//! short-text variants) and lexicon-trained Naïve Bayes sentiment polarity
//! for collections of microposts, then aggregates the results into
//! per-account, per-month, and per-gender reports.
//!
//! The pipeline:
//!
//! 1. [`corpus`] ingests a JSON-lines micropost archive and a CSV account
//!    table, or serves documents through a pluggable [`corpus::Fetcher`].
//! 2. [`normalize`] turns raw micropost text into sentences of spelled-out
//!    word tokens: URLs, mentions and emoji are stripped, hashtags keep
//!    their body, abbreviations are expanded, and numerals are spelled out.
//! 3. [`syllables`] counts syllables per word and identifies polysyllabic
//!    words (three or more syllables).
//! 4. [`smog`] evaluates the SMOG formulas and picks the right one per
//!    document, sampling 30 sentences from long texts.
//! 5. [`sentiment`] trains a three-class Naïve Bayes classifier from a
//!    word lexicon and labels each document positive, negative, or neutral.
//! 6. [`aggregate`] folds per-document scores into mergeable per-account,
//!    per-month, and per-gender statistics.
//! 7. [`cli`] wires it all together behind the `gobbledygook` binary
//!    (`score`, `report`, `validate`) and writes deterministic CSV reports.
//!
//! ## Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run -p gobbledygook --example grade_micropost
//! cargo run -p gobbledygook --example smog_formulas
//! cargo run -p gobbledygook --example count_syllables
//! cargo run -p gobbledygook --example spell_out_numbers
//! cargo run -p gobbledygook --example classify_sentiment
//! cargo run -p gobbledygook --example corpus_pipeline
//! ```
//!
//! ## Quick start
//!
//! ```
//! use gobbledygook::normalize::{normalize, AbbrevTable};
//! use gobbledygook::smog::grade_document;
//! use gobbledygook::syllables::SyllableCounter;
//!
//! let abbrevs = AbbrevTable::builtin();
//! let counter = SyllableCounter::english();
//! let doc = normalize("We passed 3 appropriations bills today!", &abbrevs).unwrap();
//! let grade = grade_document(&doc, &counter);
//! assert!(grade.grade() >= 3.0);
//! ```

pub mod aggregate;
pub mod cli;
pub mod corpus;
pub mod normalize;
pub mod sentiment;
pub mod smog;
pub mod syllables;
