//! Normalize a raw micropost and compute its SMOG grade.
//!
//! ```bash
//! cargo run -p gobbledygook --example grade_micropost
//! ```

use gobbledygook::normalize::{normalize, AbbrevTable};
use gobbledygook::smog::{grade_document, SmogInputs};
use gobbledygook::syllables::SyllableCounter;

fn main() {
    let abbrevs = AbbrevTable::builtin();
    let counter = SyllableCounter::english();

    let posts = [
        "Sen. Reyes filed 3 appropriations bills today! #Budget2014",
        "Good morning! Vote wisely.",
        "Constitutional deliberations continue. Transparency is non-negotiable.",
        "http://only.a.link/x",
    ];

    for post in posts {
        println!("post: {post}");
        match normalize(post, &abbrevs) {
            Ok(doc) => {
                let tokens: Vec<&str> = doc.tokens().map(|t| t.surface()).collect();
                let stats = SmogInputs::of_document(&doc, &counter);
                let grade = grade_document(&doc, &counter);
                println!("  tokens: {tokens:?}");
                println!(
                    "  sigma={} phi={} grade={:.4} ({})",
                    stats.sigma(),
                    stats.phi(),
                    grade.grade(),
                    grade.formula().as_str()
                );
            }
            Err(_) => println!("  unsorable: nothing survives normalization"),
        }
        println!();
    }
}
