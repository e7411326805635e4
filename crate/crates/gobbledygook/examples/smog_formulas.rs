//! The three SMOG formulas side by side.
//!
//! ```bash
//! cargo run -p gobbledygook --example smog_formulas
//! ```

use gobbledygook::smog::{smog_precise, smog_short, smog_simplified, SimplifiedVariant, SmogInputs};

fn main() {
    println!("precise grade 1.043·sqrt(30·phi/sigma) + 3.1291 over a 30-sentence sample:");
    for (phi, sigma) in [(0, 30), (30, 30), (60, 30), (25, 50)] {
        let grade = smog_precise(SmogInputs::new(phi, sigma).unwrap());
        println!("  phi={phi:>3} sigma={sigma:>3} -> {:.4}", grade.grade());
    }

    println!("\nshort-text grade 3 + sqrt((phi/sigma)·(30−sigma) + phi) for 1..=30 sentences:");
    for (phi, sigma) in [(0, 1), (1, 1), (5, 10), (25, 30)] {
        let grade = smog_short(SmogInputs::new(phi, sigma).unwrap()).unwrap();
        println!("  phi={phi:>3} sigma={sigma:>3} -> {:.4}", grade.grade());
    }

    println!("\nsimplified field formula, both constants:");
    for phi in [0, 25, 100] {
        let conventional = smog_simplified(phi, SimplifiedVariant::Conventional);
        let paper = smog_simplified(phi, SimplifiedVariant::Paper);
        println!(
            "  phi={phi:>3} -> conventional {:.1}, printed-constant variant {:.1}",
            conventional.grade(),
            paper.grade()
        );
    }
}
