//! Command-line front end: `gobbledygook score|report|validate`.
//!
//! Exit codes: 0 on success, 1 on validation or ingest failure, 2 on usage
//! errors.

use std::path::PathBuf;
use std::process::ExitCode;

use chrono::{DateTime, Utc};
use clap::{Args, Parser, Subcommand};

use gobbledygook::cli::{run_report, run_score, run_validate, GradingVariant, RunConfig};
use gobbledygook::corpus::TimeWindow;

#[derive(Parser)]
#[command(
    name = "gobbledygook",
    about = "SMOG readability and sentiment polarity reports for micropost corpora",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score every document and write scored.csv and rejects.csv.
    Score(CommonArgs),
    /// Write the aggregate report tables (mean and monthly SMOG, polarity
    /// counts, gender means, monthly dominant sentiment).
    Report(CommonArgs),
    /// Check every input file against its invariants and print a summary.
    Validate(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// JSON-lines micropost archive ({id, account_id, created_at, text}).
    #[arg(long)]
    documents: PathBuf,

    /// Accounts CSV with header id,handle,display_name,gender.
    #[arg(long)]
    accounts: PathBuf,

    /// Sentiment lexicon TSV: word<TAB>polarity<TAB>language.
    #[arg(long)]
    lexicon: PathBuf,

    /// Abbreviation table TSV: abbrev<TAB>expansion words. Defaults to the
    /// small builtin table (titles, months, govt, dept).
    #[arg(long)]
    abbrev: Option<PathBuf>,

    /// Syllable exception dictionary TSV: word<TAB>count.
    #[arg(long)]
    exceptions: Option<PathBuf>,

    /// Analysis window start (RFC 3339, inclusive).
    #[arg(long, default_value = "1970-01-01T00:00:00Z")]
    window_start: DateTime<Utc>,

    /// Analysis window end (RFC 3339, exclusive).
    #[arg(long, default_value = "2100-01-01T00:00:00Z")]
    window_end: DateTime<Utc>,

    /// Grading strategy: auto dispatches between the short-text and the
    /// sampled precise formula; the simplified variants force the field
    /// formula.
    #[arg(long, value_parser = parse_variant, default_value = "auto")]
    smog_variant: GradingVariant,

    /// Laplace smoothing strength for the sentiment classifier.
    #[arg(long, value_parser = parse_positive_f64, default_value = "1.0")]
    alpha: f64,

    /// Minute offset added to timestamps before month bucketing
    /// (e.g. 480 for UTC+8).
    #[arg(long, default_value = "0")]
    tz_offset: i32,

    /// Output directory for the CSV files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

fn parse_variant(s: &str) -> Result<GradingVariant, String> {
    match s {
        "auto" => Ok(GradingVariant::Auto),
        "simplified-conventional" => Ok(GradingVariant::SimplifiedConventional),
        "simplified-paper" => Ok(GradingVariant::SimplifiedPaper),
        other => Err(format!(
            "unknown variant {other:?}: expected auto, simplified-conventional, or simplified-paper"
        )),
    }
}

fn parse_positive_f64(s: &str) -> Result<f64, String> {
    let value: f64 = s.parse().map_err(|e| format!("not a number: {e}"))?;
    if value > 0.0 {
        Ok(value)
    } else {
        Err("must be positive".to_string())
    }
}

impl CommonArgs {
    fn into_config(self) -> Result<RunConfig, String> {
        let window = TimeWindow::new(self.window_start, self.window_end)
            .map_err(|e| e.to_string())?;
        Ok(RunConfig {
            documents_path: self.documents,
            accounts_path: self.accounts,
            lexicon_path: self.lexicon,
            abbrev_path: self.abbrev,
            exceptions_path: self.exceptions,
            window,
            grading: self.smog_variant,
            alpha: self.alpha,
            tz_offset_minutes: self.tz_offset,
            output_dir: self.out,
        })
    }
}

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, action): (CommonArgs, fn(&RunConfig) -> ExitCode) = match cli.command {
        Command::Score(args) => (args, do_score),
        Command::Report(args) => (args, do_report),
        Command::Validate(args) => (args, do_validate),
    };
    let config = match args.into_config() {
        Ok(config) => config,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    action(&config)
}

fn do_score(config: &RunConfig) -> ExitCode {
    match run_score(config) {
        Ok(summary) => {
            for warning in &summary.warnings {
                eprintln!("warning: {warning}");
            }
            println!(
                "scored {} documents ({} rejected) -> {}",
                summary.scored,
                summary.rejected,
                config.output_dir.display()
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

fn do_report(config: &RunConfig) -> ExitCode {
    match run_report(config) {
        Ok(summary) => {
            for warning in &summary.warnings {
                eprintln!("warning: {warning}");
            }
            println!(
                "aggregated {} documents ({} rejected) into {} report files -> {}",
                summary.scored,
                summary.rejected,
                summary.written.len(),
                config.output_dir.display()
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

fn do_validate(config: &RunConfig) -> ExitCode {
    let outcome = run_validate(config);
    print!("{}", outcome.render());
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    }
}
