//! End-to-end pipeline behind the `gobbledygook` binary: ingestion →
//! normalization → grading and classification → aggregation, with
//! deterministic CSV output.
//!
//! Identical inputs and configuration produce byte-identical output files:
//! scored rows follow archive order, report rows follow sorted map order,
//! grades print with four decimals and posteriors with six, and every file
//! uses RFC 4180 quoting with LF line endings. Every document in the input
//! archive lands in exactly one of `scored.csv` or `rejects.csv`.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::aggregate::{AggregateReport, ScoredDoc, YearMonth};
use crate::corpus::{
    self, Account, CorpusError, Document, Reject, TimeWindow,
};
use crate::normalize::{self, AbbrevError, AbbrevTable};
use crate::sentiment::{
    train, ClassScores, LexiconError, NonPositiveAlpha, Polarity, SentimentModel,
};
use crate::smog::{
    grade_document, sample_30_sentences, smog_simplified, SimplifiedVariant, SmogGrade,
    SmogInputs,
};
use crate::syllables::{ExceptionsError, LanguageMode, SyllableCounter};

/// How documents are graded by the pipeline.
///
/// `Auto` dispatches per document: the short-text formula below 30
/// sentences, otherwise the precise formula over a 30-sentence sample. The
/// simplified variants force the field formula instead, computed on the
/// sampled φ for long documents and the whole document otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GradingVariant {
    #[default]
    Auto,
    SimplifiedConventional,
    SimplifiedPaper,
}

/// Everything one pipeline run needs. Paths must resolve at run start;
/// `alpha` must be positive.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub documents_path: PathBuf,
    pub accounts_path: PathBuf,
    pub lexicon_path: PathBuf,
    pub abbrev_path: Option<PathBuf>,
    pub exceptions_path: Option<PathBuf>,
    pub window: TimeWindow,
    pub grading: GradingVariant,
    pub alpha: f64,
    pub tz_offset_minutes: i32,
    pub output_dir: PathBuf,
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Abbrev(#[from] AbbrevError),
    #[error(transparent)]
    Exceptions(#[from] ExceptionsError),
    #[error(transparent)]
    Train(#[from] NonPositiveAlpha),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Csv { path: String, source: csv::Error },
}

/// One line of `scored.csv`. Grade fields are absent for unsorable
/// documents; polarity and posteriors are always present.
#[derive(Debug, Clone)]
pub struct ScoredRow {
    pub doc_id: String,
    pub account_id: String,
    pub month: YearMonth,
    pub sigma: Option<u64>,
    pub phi: Option<u64>,
    pub grade: Option<SmogGrade>,
    pub polarity: Polarity,
    pub posteriors: ClassScores,
}

impl ScoredRow {
    pub fn to_scored_doc(&self) -> ScoredDoc {
        ScoredDoc {
            doc_id: self.doc_id.clone(),
            account_id: self.account_id.clone(),
            month: self.month,
            grade: self.grade,
            polarity: self.polarity,
        }
    }
}

/// A document excluded from scoring: either the record failed to parse
/// (carrying its archive line) or it parsed but was excluded later (unknown
/// account, outside the analysis window).
#[derive(Debug, Clone)]
pub struct RejectRow {
    pub line: Option<usize>,
    pub doc_id: Option<String>,
    pub reason: String,
}

impl From<Reject> for RejectRow {
    fn from(r: Reject) -> Self {
        Self {
            line: Some(r.line),
            doc_id: r.doc_id,
            reason: r.reason,
        }
    }
}

/// Output of a scoring pass, before serialization.
#[derive(Debug)]
pub struct ScoreOutput {
    pub rows: Vec<ScoredRow>,
    pub rejects: Vec<RejectRow>,
    pub accounts: Vec<Account>,
    pub warnings: Vec<String>,
}

struct LoadedInputs {
    abbrevs: AbbrevTable,
    counter: SyllableCounter,
    model: SentimentModel,
    accounts: Vec<Account>,
    warnings: Vec<String>,
}

fn load_inputs(cfg: &RunConfig) -> Result<LoadedInputs, PipelineError> {
    let abbrevs = match &cfg.abbrev_path {
        Some(path) => AbbrevTable::from_path(path)?,
        None => AbbrevTable::builtin(),
    };
    let counter = match &cfg.exceptions_path {
        Some(path) => {
            SyllableCounter::from_exceptions_path(path, LanguageMode::EnglishHeuristic)?
        }
        None => SyllableCounter::english(),
    };
    let lexicon = crate::sentiment::Lexicon::from_path(&cfg.lexicon_path)?;
    let model = train(&lexicon, cfg.alpha)?;
    let account_ingest = corpus::ingest_accounts(&cfg.accounts_path)?;
    Ok(LoadedInputs {
        abbrevs,
        counter,
        model,
        accounts: account_ingest.accounts,
        warnings: account_ingest.warnings,
    })
}

fn grade_with_variant(
    doc: &normalize::NormalizedDoc,
    counter: &SyllableCounter,
    grading: GradingVariant,
) -> SmogGrade {
    match grading {
        GradingVariant::Auto => grade_document(doc, counter),
        GradingVariant::SimplifiedConventional | GradingVariant::SimplifiedPaper => {
            let variant = if grading == GradingVariant::SimplifiedPaper {
                SimplifiedVariant::Paper
            } else {
                SimplifiedVariant::Conventional
            };
            let phi = match sample_30_sentences(doc) {
                Ok(sample) => counter.count_polysyllables(&sample),
                Err(_) => counter.count_polysyllables(doc),
            };
            smog_simplified(phi, variant)
        }
    }
}

/// Runs the scoring pipeline in memory: every archive record ends up as
/// exactly one scored row or one reject.
pub fn score_documents(cfg: &RunConfig) -> Result<ScoreOutput, PipelineError> {
    let inputs = load_inputs(cfg)?;
    let ingest = corpus::ingest_documents(&cfg.documents_path)?;
    let known_ids: HashSet<&str> = inputs.accounts.iter().map(|a| a.id.as_str()).collect();

    let mut rows = Vec::with_capacity(ingest.documents.len());
    let mut rejects: Vec<RejectRow> = ingest.rejects.into_iter().map(RejectRow::from).collect();

    for doc in &ingest.documents {
        if !known_ids.contains(doc.account_id.as_str()) {
            rejects.push(RejectRow {
                line: None,
                doc_id: Some(doc.id.clone()),
                reason: format!("unknown account_id {:?}", doc.account_id),
            });
            continue;
        }
        if !cfg.window.contains(doc.timestamp) {
            rejects.push(RejectRow {
                line: None,
                doc_id: Some(doc.id.clone()),
                reason: "timestamp outside analysis window".to_string(),
            });
            continue;
        }
        rows.push(score_one(doc, &inputs, cfg));
    }

    Ok(ScoreOutput {
        rows,
        rejects,
        accounts: inputs.accounts,
        warnings: inputs.warnings,
    })
}

fn score_one(doc: &Document, inputs: &LoadedInputs, cfg: &RunConfig) -> ScoredRow {
    let month = YearMonth::from_timestamp(doc.timestamp, cfg.tz_offset_minutes);
    match normalize::normalize(&doc.text, &inputs.abbrevs) {
        Ok(normalized) => {
            let stats = SmogInputs::of_document(&normalized, &inputs.counter);
            let grade = grade_with_variant(&normalized, &inputs.counter, cfg.grading);
            let classified = inputs.model.classify(&normalized);
            ScoredRow {
                doc_id: doc.id.clone(),
                account_id: doc.account_id.clone(),
                month,
                sigma: Some(stats.sigma()),
                phi: Some(stats.phi()),
                grade: Some(grade),
                polarity: classified.label,
                posteriors: classified.posteriors,
            }
        }
        Err(_) => {
            // Unsorable: no sentences survive. Sentiment still gets its
            // out-of-vocabulary fallback (neutral, uniform posteriors).
            let classified = inputs.model.classify_words(std::iter::empty());
            ScoredRow {
                doc_id: doc.id.clone(),
                account_id: doc.account_id.clone(),
                month,
                sigma: None,
                phi: None,
                grade: None,
                polarity: classified.label,
                posteriors: classified.posteriors,
            }
        }
    }
}

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>, PipelineError> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(|source| PipelineError::Csv {
            path: path.display().to_string(),
            source,
        })
}

fn finish_csv(path: &Path, mut writer: csv::Writer<fs::File>) -> Result<(), PipelineError> {
    writer.flush().map_err(|source| PipelineError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_row(
    path: &Path,
    writer: &mut csv::Writer<fs::File>,
    fields: &[String],
) -> Result<(), PipelineError> {
    writer
        .write_record(fields)
        .map_err(|source| PipelineError::Csv {
            path: path.display().to_string(),
            source,
        })
}

fn fmt_grade(grade: f64) -> String {
    format!("{grade:.4}")
}

fn fmt_posterior(p: f64) -> String {
    format!("{p:.6}")
}

fn opt_string<T: ToString>(value: &Option<T>) -> String {
    value.as_ref().map(T::to_string).unwrap_or_default()
}

pub const SCORED_HEADER: [&str; 11] = [
    "doc_id",
    "account_id",
    "month",
    "sigma",
    "phi",
    "smog_grade",
    "formula",
    "polarity",
    "p_pos",
    "p_neg",
    "p_neu",
];

fn write_scored_csv(path: &Path, rows: &[ScoredRow]) -> Result<(), PipelineError> {
    let mut writer = csv_writer(path)?;
    write_row(
        path,
        &mut writer,
        &SCORED_HEADER.map(str::to_string),
    )?;
    for row in rows {
        write_row(
            path,
            &mut writer,
            &[
                row.doc_id.clone(),
                row.account_id.clone(),
                row.month.to_string(),
                opt_string(&row.sigma),
                opt_string(&row.phi),
                row.grade.map(|g| fmt_grade(g.grade())).unwrap_or_default(),
                row.grade
                    .map(|g| g.formula().as_str().to_string())
                    .unwrap_or_default(),
                row.polarity.as_str().to_string(),
                fmt_posterior(row.posteriors.positive),
                fmt_posterior(row.posteriors.negative),
                fmt_posterior(row.posteriors.neutral),
            ],
        )?;
    }
    finish_csv(path, writer)
}

fn write_rejects_csv(path: &Path, rejects: &[RejectRow]) -> Result<(), PipelineError> {
    let mut writer = csv_writer(path)?;
    write_row(
        path,
        &mut writer,
        &["line", "doc_id", "reason"].map(str::to_string),
    )?;
    for reject in rejects {
        write_row(
            path,
            &mut writer,
            &[
                opt_string(&reject.line),
                reject.doc_id.clone().unwrap_or_default(),
                reject.reason.clone(),
            ],
        )?;
    }
    finish_csv(path, writer)
}

/// Serializes the five aggregate tables. Rows follow sorted key order.
pub fn write_report_csvs(
    dir: &Path,
    report: &AggregateReport,
) -> Result<Vec<PathBuf>, PipelineError> {
    let mut written = Vec::new();

    let path = dir.join("mean_smog.csv");
    let mut writer = csv_writer(&path)?;
    write_row(&path, &mut writer, &["account_id", "mean_smog"].map(str::to_string))?;
    for (account, mean) in &report.mean_grade_per_account {
        write_row(&path, &mut writer, &[account.clone(), fmt_grade(*mean)])?;
    }
    finish_csv(&path, writer)?;
    written.push(path);

    let path = dir.join("monthly_smog.csv");
    let mut writer = csv_writer(&path)?;
    write_row(
        &path,
        &mut writer,
        &["account_id", "month", "mean_smog"].map(str::to_string),
    )?;
    for ((account, month), mean) in &report.monthly_mean_grade {
        write_row(
            &path,
            &mut writer,
            &[account.clone(), month.to_string(), fmt_grade(*mean)],
        )?;
    }
    finish_csv(&path, writer)?;
    written.push(path);

    let path = dir.join("polarity_counts.csv");
    let mut writer = csv_writer(&path)?;
    write_row(
        &path,
        &mut writer,
        &["account_id", "n_pos", "n_neg", "n_neu"].map(str::to_string),
    )?;
    for (account, tally) in &report.polarity_counts {
        write_row(
            &path,
            &mut writer,
            &[
                account.clone(),
                tally.positive.to_string(),
                tally.negative.to_string(),
                tally.neutral.to_string(),
            ],
        )?;
    }
    finish_csv(&path, writer)?;
    written.push(path);

    let path = dir.join("gender_counts.csv");
    let mut writer = csv_writer(&path)?;
    write_row(
        &path,
        &mut writer,
        &["gender", "mean_pos", "mean_neg", "mean_neu"].map(str::to_string),
    )?;
    for (gender, means) in &report.gender_mean_counts {
        write_row(
            &path,
            &mut writer,
            &[
                gender.as_str().to_string(),
                fmt_grade(means.positive),
                fmt_grade(means.negative),
                fmt_grade(means.neutral),
            ],
        )?;
    }
    finish_csv(&path, writer)?;
    written.push(path);

    let path = dir.join("monthly_dominant.csv");
    let mut writer = csv_writer(&path)?;
    write_row(
        &path,
        &mut writer,
        &["account_id", "month", "polarity"].map(str::to_string),
    )?;
    for ((account, month), polarity) in &report.dominant_monthly_polarity {
        write_row(
            &path,
            &mut writer,
            &[account.clone(), month.to_string(), polarity.as_str().to_string()],
        )?;
    }
    finish_csv(&path, writer)?;
    written.push(path);

    Ok(written)
}

/// Summary of a completed `score` run.
#[derive(Debug)]
pub struct ScoreSummary {
    pub scored: usize,
    pub rejected: usize,
    pub warnings: Vec<String>,
    pub written: Vec<PathBuf>,
}

/// Scores every document and writes `scored.csv` and `rejects.csv` into the
/// output directory.
pub fn run_score(cfg: &RunConfig) -> Result<ScoreSummary, PipelineError> {
    let output = score_documents(cfg)?;
    ensure_output_dir(&cfg.output_dir)?;
    let scored_path = cfg.output_dir.join("scored.csv");
    write_scored_csv(&scored_path, &output.rows)?;
    let rejects_path = cfg.output_dir.join("rejects.csv");
    write_rejects_csv(&rejects_path, &output.rejects)?;
    Ok(ScoreSummary {
        scored: output.rows.len(),
        rejected: output.rejects.len(),
        warnings: output.warnings,
        written: vec![scored_path, rejects_path],
    })
}

/// Summary of a completed `report` run.
#[derive(Debug)]
pub struct ReportSummary {
    pub scored: usize,
    pub rejected: usize,
    pub warnings: Vec<String>,
    pub written: Vec<PathBuf>,
}

/// Runs the full pipeline and writes the five aggregate report files.
pub fn run_report(cfg: &RunConfig) -> Result<ReportSummary, PipelineError> {
    let output = score_documents(cfg)?;
    let scored_docs: Vec<ScoredDoc> = output.rows.iter().map(ScoredRow::to_scored_doc).collect();
    let report = AggregateReport::build(&scored_docs, &output.accounts);
    ensure_output_dir(&cfg.output_dir)?;
    let written = write_report_csvs(&cfg.output_dir, &report)?;
    let mut warnings = output.warnings;
    warnings.extend(report.warnings);
    Ok(ReportSummary {
        scored: output.rows.len(),
        rejected: output.rejects.len(),
        warnings,
        written,
    })
}

fn ensure_output_dir(dir: &Path) -> Result<(), PipelineError> {
    fs::create_dir_all(dir).map_err(|source| PipelineError::Io {
        path: dir.display().to_string(),
        source,
    })
}

/// Outcome of `validate`: one labeled check per input concern. `ok` is true
/// iff every check passed.
#[derive(Debug)]
pub struct ValidationOutcome {
    pub checks: Vec<(String, Result<String, String>)>,
    pub ok: bool,
}

impl ValidationOutcome {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (label, result) in &self.checks {
            match result {
                Ok(detail) => out.push_str(&format!("OK    {label}: {detail}\n")),
                Err(problem) => out.push_str(&format!("ERROR {label}: {problem}\n")),
            }
        }
        out
    }
}

/// Checks every input file against its invariants without writing anything.
pub fn run_validate(cfg: &RunConfig) -> ValidationOutcome {
    let mut checks: Vec<(String, Result<String, String>)> = Vec::new();

    let accounts = match corpus::ingest_accounts(&cfg.accounts_path) {
        Ok(ingest) => {
            let detail = if ingest.warnings.is_empty() {
                format!("{} accounts", ingest.accounts.len())
            } else {
                format!(
                    "{} accounts ({} warnings: {})",
                    ingest.accounts.len(),
                    ingest.warnings.len(),
                    ingest.warnings.join("; ")
                )
            };
            checks.push(("accounts".to_string(), Ok(detail)));
            Some(ingest.accounts)
        }
        Err(e) => {
            checks.push(("accounts".to_string(), Err(e.to_string())));
            None
        }
    };

    let documents = match corpus::ingest_documents(&cfg.documents_path) {
        Ok(ingest) => {
            if ingest.rejects.is_empty() {
                checks.push((
                    "documents".to_string(),
                    Ok(format!("{} documents", ingest.documents.len())),
                ));
            } else {
                let first = &ingest.rejects[0];
                checks.push((
                    "documents".to_string(),
                    Err(format!(
                        "{} of {} records rejected; first: line {}: {}",
                        ingest.rejects.len(),
                        ingest.documents.len() + ingest.rejects.len(),
                        first.line,
                        first.reason
                    )),
                ));
            }
            Some(ingest.documents)
        }
        Err(e) => {
            checks.push(("documents".to_string(), Err(e.to_string())));
            None
        }
    };

    if let (Some(accounts), Some(documents)) = (&accounts, &documents) {
        let known: HashSet<&str> = accounts.iter().map(|a| a.id.as_str()).collect();
        let unknown: Vec<&Document> = documents
            .iter()
            .filter(|d| !known.contains(d.account_id.as_str()))
            .collect();
        if unknown.is_empty() {
            checks.push((
                "cross-references".to_string(),
                Ok("every document references a known account".to_string()),
            ));
        } else {
            checks.push((
                "cross-references".to_string(),
                Err(format!(
                    "{} documents reference unknown accounts (first: {} -> {:?})",
                    unknown.len(),
                    unknown[0].id,
                    unknown[0].account_id
                )),
            ));
        }
    }

    match crate::sentiment::Lexicon::from_path(&cfg.lexicon_path) {
        Ok(lexicon) => checks.push((
            "lexicon".to_string(),
            Ok(format!(
                "{} entries ({} positive, {} negative, {} neutral)",
                lexicon.len(),
                lexicon.class_count(Polarity::Positive),
                lexicon.class_count(Polarity::Negative),
                lexicon.class_count(Polarity::Neutral),
            )),
        )),
        Err(e) => checks.push(("lexicon".to_string(), Err(e.to_string()))),
    }

    match &cfg.abbrev_path {
        Some(path) => match AbbrevTable::from_path(path) {
            Ok(table) => checks.push((
                "abbreviations".to_string(),
                Ok(format!("{} abbreviations", table.len())),
            )),
            Err(e) => checks.push(("abbreviations".to_string(), Err(e.to_string()))),
        },
        None => checks.push((
            "abbreviations".to_string(),
            Ok(format!("builtin table ({})", AbbrevTable::builtin().len())),
        )),
    }

    if let Some(path) = &cfg.exceptions_path {
        match SyllableCounter::from_exceptions_path(path, LanguageMode::EnglishHeuristic) {
            Ok(counter) => checks.push((
                "syllable-exceptions".to_string(),
                Ok(format!("{} overrides", counter.exception_count())),
            )),
            Err(e) => checks.push(("syllable-exceptions".to_string(), Err(e.to_string()))),
        }
    }

    let ok = checks.iter().all(|(_, r)| r.is_ok());
    ValidationOutcome { checks, ok }
}
