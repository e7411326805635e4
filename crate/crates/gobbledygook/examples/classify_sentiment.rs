//! Train the Naïve Bayes classifier from the starter lexicon and classify a
//! few microposts.
//!
//! ```bash
//! cargo run -p gobbledygook --example classify_sentiment
//! ```

use std::path::Path;

use gobbledygook::normalize::{normalize, AbbrevTable};
use gobbledygook::sentiment::{train, Lexicon, Polarity};

fn main() {
    let lexicon_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/lexicon.tsv");
    let lexicon = Lexicon::from_path(&lexicon_path).expect("starter lexicon loads");
    println!(
        "lexicon: {} words ({} positive, {} negative, {} neutral)",
        lexicon.len(),
        lexicon.class_count(Polarity::Positive),
        lexicon.class_count(Polarity::Negative),
        lexicon.class_count(Polarity::Neutral),
    );

    let model = train(&lexicon, 1.0).expect("alpha is positive");
    let abbrevs = AbbrevTable::builtin();

    let posts = [
        "Tagumpay! Our livelihood bill passed. Maraming salamat!",
        "Crisis talks over rice supply. Masama ang sitwasyon.",
        "Committee hearing on the budget starts at 9.",
        "Completely out-of-vocabulary words only.",
    ];

    for post in posts {
        let doc = normalize(post, &abbrevs).expect("post has words");
        let result = model.classify(&doc);
        println!(
            "\n{post}\n  -> {} (p_pos={:.3}, p_neg={:.3}, p_neu={:.3})",
            result.label,
            result.posteriors.positive,
            result.posteriors.negative,
            result.posteriors.neutral,
        );
    }
}
