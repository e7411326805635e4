//! The whole pipeline over the bundled synthetic corpus: fetch documents
//! per account through the file-backed fetcher, grade and classify each,
//! and print the per-account aggregates.
//!
//! ```bash
//! cargo run -p gobbledygook --example corpus_pipeline
//! ```

use std::path::Path;

use gobbledygook::aggregate::{AggregateReport, ScoredDoc, YearMonth};
use gobbledygook::corpus::{ingest_accounts, Fetcher, FileFetcher, TimeWindow};
use gobbledygook::normalize::{normalize, AbbrevTable};
use gobbledygook::sentiment::{train, Lexicon};
use gobbledygook::smog::grade_document;
use gobbledygook::syllables::SyllableCounter;

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let fixture = root.join("tests/fixtures/corpus");

    let accounts = ingest_accounts(fixture.join("accounts.csv"))
        .expect("accounts load")
        .accounts;
    let fetcher = FileFetcher::open(fixture.join("documents.jsonl")).expect("archive loads");
    let window = TimeWindow::new(
        "2013-11-01T00:00:00Z".parse().unwrap(),
        "2014-02-01T00:00:00Z".parse().unwrap(),
    )
    .unwrap();

    let abbrevs = AbbrevTable::builtin();
    let counter = SyllableCounter::english();
    let lexicon = Lexicon::from_path(root.join("data/lexicon.tsv")).expect("lexicon loads");
    let model = train(&lexicon, 1.0).expect("alpha is positive");

    let mut scored = Vec::new();
    for account in &accounts {
        // The fixture archive keys documents by account id.
        let documents = fetcher.fetch(&account.id, &window).expect("fetch");
        println!(
            "{} ({}, {}): {} documents in window",
            account.display_name,
            account.handle,
            account.gender,
            documents.len()
        );
        for doc in documents {
            let month = YearMonth::from_timestamp(doc.timestamp, 0);
            let (grade, polarity) = match normalize(&doc.text, &abbrevs) {
                Ok(normalized) => (
                    Some(grade_document(&normalized, &counter)),
                    model.classify(&normalized).label,
                ),
                Err(_) => (None, model.classify_words(std::iter::empty()).label),
            };
            scored.push(ScoredDoc {
                doc_id: doc.id,
                account_id: doc.account_id,
                month,
                grade,
                polarity,
            });
        }
    }

    let report = AggregateReport::build(&scored, &accounts);

    println!("\nmean SMOG grade per account:");
    for (account, mean) in &report.mean_grade_per_account {
        println!("  {account}: {mean:.4}");
    }

    println!("\npolarity counts per account (pos/neg/neu):");
    for (account, tally) in &report.polarity_counts {
        println!(
            "  {account}: {}/{}/{}",
            tally.positive, tally.negative, tally.neutral
        );
    }

    println!("\nmean counts by gender (pos/neg/neu):");
    for (gender, means) in &report.gender_mean_counts {
        println!(
            "  {gender}: {:.1}/{:.1}/{:.1}",
            means.positive, means.negative, means.neutral
        );
    }

    println!("\ndominant monthly polarity:");
    for ((account, month), polarity) in &report.dominant_monthly_polarity {
        println!("  {account} {month}: {polarity}");
    }
}
