//! Cardinal number spelling, as used when numerals are read out during
//! normalization.
//!
//! ```bash
//! cargo run -p gobbledygook --example spell_out_numbers
//! ```

use gobbledygook::normalize::spell_out_number;

fn main() {
    for numeral in ["0", "7", "45", "140", "2014", "1000000", "999999999999999"] {
        let words = spell_out_number(numeral).unwrap();
        println!("{numeral:>16} -> {}", words.join(" "));
    }

    for bad in ["12a", "1234567890123456"] {
        println!("{bad:>16} -> error: {}", spell_out_number(bad).unwrap_err());
    }
}
