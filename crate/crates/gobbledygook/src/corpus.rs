//! Corpus ingestion and the pluggable document fetcher.
//!
//! Documents arrive as a JSON-lines archive (`{id, account_id, created_at,
//! text}`, RFC 3339 timestamps) and accounts as a CSV table
//! (`id,handle,display_name,gender`). Malformed document records become
//! reject entries instead of failures; the accounts table is small and
//! hand-curated, so it is strict. The [`Fetcher`] trait stands in for a live
//! micropost API client; a file-backed and an in-memory implementation ship
//! here.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use chrono::{DateTime, SecondsFormat, TimeZone, Timelike, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Account gender, as recorded in the accounts table. Unknown tokens fall
/// back to `Unspecified` with a warning rather than failing ingestion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Gender {
    Female,
    Male,
    Unspecified,
}

impl Gender {
    pub fn as_str(&self) -> &'static str {
        match self {
            Gender::Female => "female",
            Gender::Male => "male",
            Gender::Unspecified => "unspecified",
        }
    }
}

impl fmt::Display for Gender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A micropost account.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Account {
    pub id: String,
    pub handle: String,
    pub display_name: String,
    pub gender: Gender,
}

/// One micropost. Timestamps are UTC at seconds precision and fall within
/// [1970, 2100).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub account_id: String,
    pub timestamp: DateTime<Utc>,
    pub text: String,
}

/// Wire form of a document archive line.
#[derive(Debug, Serialize, Deserialize)]
struct DocumentRecord {
    id: String,
    account_id: String,
    created_at: String,
    text: String,
}

/// A document record that failed validation, with the 1-based line it came
/// from and why it was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reject {
    pub line: usize,
    pub doc_id: Option<String>,
    pub reason: String,
}

/// Result of ingesting a document archive: valid documents in input order
/// plus a reject entry per malformed record.
#[derive(Debug, Default)]
pub struct DocumentIngest {
    pub documents: Vec<Document>,
    pub rejects: Vec<Reject>,
}

/// Result of ingesting an accounts table: accounts in input order plus
/// non-fatal warnings (unknown gender tokens).
#[derive(Debug, Default)]
pub struct AccountIngest {
    pub accounts: Vec<Account>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("accounts file: {0}")]
    AccountsCsv(#[from] csv::Error),
    #[error("accounts file has wrong header: expected `id,handle,display_name,gender`")]
    AccountsHeader,
    #[error("accounts file record {record}: duplicate account id {id:?}")]
    DuplicateAccountId { record: usize, id: String },
    #[error("accounts file record {record}: {reason}")]
    InvalidAccount { record: usize, reason: &'static str },
}

fn earliest_valid() -> DateTime<Utc> {
    Utc.with_ymd_and_hms(1970, 1, 1, 0, 0, 0).unwrap()
}

fn latest_valid() -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2100, 1, 1, 0, 0, 0).unwrap()
}

fn validate_record(record: DocumentRecord) -> Result<Document, String> {
    if record.id.trim().is_empty() {
        return Err("empty id".to_string());
    }
    if record.account_id.trim().is_empty() {
        return Err("empty account_id".to_string());
    }
    let parsed = DateTime::parse_from_rfc3339(&record.created_at)
        .map_err(|e| format!("unparseable created_at {:?}: {e}", record.created_at))?;
    let timestamp = parsed
        .with_timezone(&Utc)
        .with_nanosecond(0)
        .expect("zero nanoseconds is valid");
    if timestamp < earliest_valid() || timestamp >= latest_valid() {
        return Err(format!(
            "timestamp {} outside [1970, 2100)",
            timestamp.to_rfc3339()
        ));
    }
    Ok(Document {
        id: record.id,
        account_id: record.account_id,
        timestamp,
        text: record.text,
    })
}

/// Ingests a JSON-lines document archive. Unreadable files are fatal;
/// per-record violations (bad JSON, missing fields, bad timestamps,
/// duplicate ids) become rejects.
pub fn ingest_documents(path: impl AsRef<Path>) -> Result<DocumentIngest, CorpusError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(ingest_documents_from_reader(BufReader::new(file)))
}

/// Reader-based variant of [`ingest_documents`].
pub fn ingest_documents_from_reader(reader: impl BufRead) -> DocumentIngest {
    let mut ingest = DocumentIngest::default();
    let mut seen_ids = std::collections::HashSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                ingest.rejects.push(Reject {
                    line: line_no,
                    doc_id: None,
                    reason: format!("unreadable line: {e}"),
                });
                continue;
            }
        };
        if line.trim().is_empty() {
            continue;
        }
        let record: DocumentRecord = match serde_json::from_str(&line) {
            Ok(r) => r,
            Err(e) => {
                ingest.rejects.push(Reject {
                    line: line_no,
                    doc_id: None,
                    reason: format!("invalid record: {e}"),
                });
                continue;
            }
        };
        let doc_id = record.id.clone();
        match validate_record(record) {
            Ok(doc) => {
                if !seen_ids.insert(doc.id.clone()) {
                    ingest.rejects.push(Reject {
                        line: line_no,
                        doc_id: Some(doc.id),
                        reason: "duplicate document id".to_string(),
                    });
                } else {
                    ingest.documents.push(doc);
                }
            }
            Err(reason) => ingest.rejects.push(Reject {
                line: line_no,
                doc_id: Some(doc_id),
                reason,
            }),
        }
    }
    ingest
}

/// Serializes documents back to the archive wire format, one JSON object per
/// line with an RFC 3339 `created_at`. Round-trips through
/// [`ingest_documents_from_reader`] to an identical document list.
pub fn write_documents(mut w: impl Write, docs: &[Document]) -> std::io::Result<()> {
    for doc in docs {
        let record = DocumentRecord {
            id: doc.id.clone(),
            account_id: doc.account_id.clone(),
            created_at: doc.timestamp.to_rfc3339_opts(SecondsFormat::Secs, true),
            text: doc.text.clone(),
        };
        serde_json::to_writer(&mut w, &record)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// Ingests the accounts CSV. The header must be exactly
/// `id,handle,display_name,gender`; duplicate ids and empty handles are
/// fatal; unrecognized gender tokens map to `unspecified` with a warning.
pub fn ingest_accounts(path: impl AsRef<Path>) -> Result<AccountIngest, CorpusError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    ingest_accounts_from_reader(file)
}

/// Reader-based variant of [`ingest_accounts`].
pub fn ingest_accounts_from_reader(reader: impl Read) -> Result<AccountIngest, CorpusError> {
    let mut csv_reader = csv::ReaderBuilder::new().from_reader(reader);
    let headers = csv_reader.headers()?.clone();
    let expected = ["id", "handle", "display_name", "gender"];
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(CorpusError::AccountsHeader);
    }

    let mut ingest = AccountIngest::default();
    let mut seen = std::collections::HashSet::new();
    for (idx, row) in csv_reader.records().enumerate() {
        let record_no = idx + 1;
        let row = row?;
        let field = |i: usize| row.get(i).unwrap_or("").trim().to_string();
        let id = field(0);
        let handle = field(1);
        let display_name = field(2);
        let gender_token = field(3);

        if id.is_empty() {
            return Err(CorpusError::InvalidAccount {
                record: record_no,
                reason: "empty id",
            });
        }
        if handle.is_empty() {
            return Err(CorpusError::InvalidAccount {
                record: record_no,
                reason: "empty handle",
            });
        }
        if !seen.insert(id.clone()) {
            return Err(CorpusError::DuplicateAccountId {
                record: record_no,
                id,
            });
        }
        let gender = match gender_token.to_lowercase().as_str() {
            "female" => Gender::Female,
            "male" => Gender::Male,
            "unspecified" | "" => Gender::Unspecified,
            other => {
                ingest.warnings.push(format!(
                    "account {id}: unknown gender {other:?}, using unspecified"
                ));
                Gender::Unspecified
            }
        };
        ingest.accounts.push(Account {
            id,
            handle,
            display_name,
            gender,
        });
    }
    Ok(ingest)
}

/// A half-open time window `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimeWindow {
    start: DateTime<Utc>,
    end: DateTime<Utc>,
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("window start must precede end")]
pub struct InvalidWindow;

impl TimeWindow {
    pub fn new(start: DateTime<Utc>, end: DateTime<Utc>) -> Result<Self, InvalidWindow> {
        if start < end {
            Ok(Self { start, end })
        } else {
            Err(InvalidWindow)
        }
    }

    /// The widest window any valid document can fall in: [1970, 2100).
    pub fn all_time() -> Self {
        Self {
            start: earliest_valid(),
            end: latest_valid(),
        }
    }

    pub fn start(&self) -> DateTime<Utc> {
        self.start
    }

    pub fn end(&self) -> DateTime<Utc> {
        self.end
    }

    pub fn contains(&self, ts: DateTime<Utc>) -> bool {
        self.start <= ts && ts < self.end
    }
}

/// Keeps documents with `start ≤ timestamp < end`, preserving input order.
pub fn filter_window(docs: &[Document], window: &TimeWindow) -> Vec<Document> {
    docs.iter()
        .filter(|d| window.contains(d.timestamp))
        .cloned()
        .collect()
}

#[derive(Debug, Error)]
pub enum FetchError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

/// Source of documents for an account handle over a time window. Stands in
/// for a live micropost API client; returned documents always satisfy the
/// document invariants and fall within the requested window.
pub trait Fetcher {
    fn fetch(&self, handle: &str, window: &TimeWindow) -> Result<Vec<Document>, FetchError>;
}

fn normalize_handle(handle: &str) -> String {
    handle.trim().trim_start_matches('@').to_lowercase()
}

/// File-backed fetcher over an already-ingested archive. A document matches
/// a requested handle when its `account_id` equals the handle, ignoring case
/// and a leading `@`.
#[derive(Debug)]
pub struct FileFetcher {
    documents: Vec<Document>,
    rejects: Vec<Reject>,
}

impl FileFetcher {
    pub fn open(path: impl AsRef<Path>) -> Result<Self, CorpusError> {
        let ingest = ingest_documents(path)?;
        Ok(Self {
            documents: ingest.documents,
            rejects: ingest.rejects,
        })
    }

    /// Records rejected while opening the archive.
    pub fn rejects(&self) -> &[Reject] {
        &self.rejects
    }
}

impl Fetcher for FileFetcher {
    fn fetch(&self, handle: &str, window: &TimeWindow) -> Result<Vec<Document>, FetchError> {
        let wanted = normalize_handle(handle);
        Ok(self
            .documents
            .iter()
            .filter(|d| normalize_handle(&d.account_id) == wanted)
            .filter(|d| window.contains(d.timestamp))
            .cloned()
            .collect())
    }
}

/// In-memory fixture fetcher for tests and embedding.
#[derive(Debug, Default)]
pub struct MemoryFetcher {
    documents: Vec<Document>,
}

impl MemoryFetcher {
    pub fn new(documents: Vec<Document>) -> Self {
        Self { documents }
    }
}

impl Fetcher for MemoryFetcher {
    fn fetch(&self, handle: &str, window: &TimeWindow) -> Result<Vec<Document>, FetchError> {
        let wanted = normalize_handle(handle);
        Ok(self
            .documents
            .iter()
            .filter(|d| normalize_handle(&d.account_id) == wanted)
            .filter(|d| window.contains(d.timestamp))
            .cloned()
            .collect())
    }
}
