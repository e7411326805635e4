//! Syllable counting: the English heuristic, dictionary overrides, and the
//! Filipino per-vowel mode.
//!
//! ```bash
//! cargo run -p gobbledygook --example count_syllables
//! ```

use std::collections::HashMap;

use gobbledygook::syllables::{LanguageMode, SyllableCounter};

fn main() {
    let english = SyllableCounter::english();
    println!("english heuristic:");
    for word in ["cat", "senate", "banana", "readability", "gobbledygook", "table", "cake"] {
        let count = english.count_surface(word);
        let poly = if count >= 3 { " (polysyllabic)" } else { "" };
        println!("  {word:<14} {count}{poly}");
    }

    let mut overrides = HashMap::new();
    overrides.insert("business".to_string(), 2);
    overrides.insert("area".to_string(), 3);
    let with_overrides =
        SyllableCounter::with_exceptions(LanguageMode::EnglishHeuristic, overrides).unwrap();
    println!("\ndictionary overrides win: business -> {} (heuristic said {})",
        with_overrides.count_surface("business"),
        english.count_surface("business"));

    let filipino = SyllableCounter::new(LanguageMode::FilipinoVowel);
    println!("\nfilipino per-vowel mode:");
    for word in ["mabuti", "maganda", "tagumpay", "paa"] {
        println!("  {word:<14} {}", filipino.count_surface(word));
    }
}
