//! Corpus statistics: per-account and per-month readability means, polarity
//! counts, gender-averaged counts, and monthly dominant sentiment.
//!
//! Aggregation folds scored documents into [`Aggregates`], which merge
//! associatively and commutatively, so partial results from parallel workers
//! combine into exactly the same report as a single pass. Means are carried
//! as (sum, count) pairs; unsorable documents stay out of grade means but
//! still count toward polarity tallies.

use std::collections::BTreeMap;
use std::fmt;

use chrono::{DateTime, Datelike, Duration, Utc};

use crate::corpus::{Account, Gender};
use crate::sentiment::Polarity;
use crate::smog::SmogGrade;

/// A UTC calendar month, serialized `YYYY-MM`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct YearMonth {
    pub year: i32,
    pub month: u32,
}

impl YearMonth {
    /// Buckets a timestamp, optionally shifting it by a fixed minute offset
    /// first (for corpora whose natural day boundary is not UTC).
    pub fn from_timestamp(ts: DateTime<Utc>, tz_offset_minutes: i32) -> Self {
        let shifted = ts + Duration::minutes(tz_offset_minutes as i64);
        Self {
            year: shifted.year(),
            month: shifted.month(),
        }
    }
}

impl fmt::Display for YearMonth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

/// A document after scoring: its month bucket, its grade (absent when the
/// document was unsorable), and its polarity label.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredDoc {
    pub doc_id: String,
    pub account_id: String,
    pub month: YearMonth,
    pub grade: Option<SmogGrade>,
    pub polarity: Polarity,
}

/// Mean accumulator carried as an exact-to-merge (sum, count) pair.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MeanAcc {
    sum: f64,
    count: u64,
}

impl MeanAcc {
    pub fn observe(&mut self, value: f64) {
        self.sum += value;
        self.count += 1;
    }

    pub fn merge(&mut self, other: &MeanAcc) {
        self.sum += other.sum;
        self.count += other.count;
    }

    pub fn mean(&self) -> Option<f64> {
        (self.count > 0).then(|| self.sum / self.count as f64)
    }

    pub fn count(&self) -> u64 {
        self.count
    }
}

/// Occurrence counts per polarity class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PolarityTally {
    pub positive: u64,
    pub negative: u64,
    pub neutral: u64,
}

impl PolarityTally {
    pub fn observe(&mut self, polarity: Polarity) {
        match polarity {
            Polarity::Positive => self.positive += 1,
            Polarity::Negative => self.negative += 1,
            Polarity::Neutral => self.neutral += 1,
        }
    }

    pub fn merge(&mut self, other: &PolarityTally) {
        self.positive += other.positive;
        self.negative += other.negative;
        self.neutral += other.neutral;
    }

    pub fn total(&self) -> u64 {
        self.positive + self.negative + self.neutral
    }

    /// The modal polarity; any tie for the maximum resolves to neutral.
    pub fn dominant(&self) -> Polarity {
        let max = self.positive.max(self.negative).max(self.neutral);
        let winners = [self.positive, self.negative, self.neutral]
            .iter()
            .filter(|&&n| n == max)
            .count();
        if winners > 1 {
            return Polarity::Neutral;
        }
        if self.positive == max {
            Polarity::Positive
        } else if self.negative == max {
            Polarity::Negative
        } else {
            Polarity::Neutral
        }
    }
}

/// Mergeable aggregation state over scored documents.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Aggregates {
    grade_by_account: BTreeMap<String, MeanAcc>,
    grade_by_account_month: BTreeMap<(String, YearMonth), MeanAcc>,
    polarity_by_account: BTreeMap<String, PolarityTally>,
    polarity_by_account_month: BTreeMap<(String, YearMonth), PolarityTally>,
}

impl Aggregates {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn observe(&mut self, doc: &ScoredDoc) {
        if let Some(grade) = &doc.grade {
            self.grade_by_account
                .entry(doc.account_id.clone())
                .or_default()
                .observe(grade.grade());
            self.grade_by_account_month
                .entry((doc.account_id.clone(), doc.month))
                .or_default()
                .observe(grade.grade());
        }
        self.polarity_by_account
            .entry(doc.account_id.clone())
            .or_default()
            .observe(doc.polarity);
        self.polarity_by_account_month
            .entry((doc.account_id.clone(), doc.month))
            .or_default()
            .observe(doc.polarity);
    }

    pub fn from_docs<'a>(docs: impl IntoIterator<Item = &'a ScoredDoc>) -> Self {
        let mut agg = Self::new();
        for doc in docs {
            agg.observe(doc);
        }
        agg
    }

    /// Associative, commutative merge of partial aggregates.
    pub fn merge(mut self, other: Aggregates) -> Aggregates {
        for (k, v) in other.grade_by_account {
            self.grade_by_account.entry(k).or_default().merge(&v);
        }
        for (k, v) in other.grade_by_account_month {
            self.grade_by_account_month.entry(k).or_default().merge(&v);
        }
        for (k, v) in other.polarity_by_account {
            self.polarity_by_account.entry(k).or_default().merge(&v);
        }
        for (k, v) in other.polarity_by_account_month {
            self.polarity_by_account_month
                .entry(k)
                .or_default()
                .merge(&v);
        }
        self
    }

    pub fn mean_grade_per_account(&self) -> BTreeMap<String, f64> {
        self.grade_by_account
            .iter()
            .filter_map(|(k, acc)| acc.mean().map(|m| (k.clone(), m)))
            .collect()
    }

    pub fn monthly_mean_grade(&self) -> BTreeMap<(String, YearMonth), f64> {
        self.grade_by_account_month
            .iter()
            .filter_map(|(k, acc)| acc.mean().map(|m| (k.clone(), m)))
            .collect()
    }

    pub fn polarity_counts(&self) -> &BTreeMap<String, PolarityTally> {
        &self.polarity_by_account
    }

    pub fn dominant_monthly_polarity(&self) -> BTreeMap<(String, YearMonth), Polarity> {
        self.polarity_by_account_month
            .iter()
            .map(|(k, tally)| (k.clone(), tally.dominant()))
            .collect()
    }
}

/// Mean SMOG grade per account over sorable documents. Accounts with no
/// sorable documents are absent.
pub fn mean_grade_per_account(docs: &[ScoredDoc]) -> BTreeMap<String, f64> {
    Aggregates::from_docs(docs).mean_grade_per_account()
}

/// Mean SMOG grade per (account, calendar month) over sorable documents.
/// Months with no documents are absent; no imputation.
pub fn monthly_mean_grade(docs: &[ScoredDoc]) -> BTreeMap<(String, YearMonth), f64> {
    Aggregates::from_docs(docs).monthly_mean_grade()
}

/// Polarity occurrence counts per account, unsorable documents included.
pub fn polarity_counts(docs: &[ScoredDoc]) -> BTreeMap<String, PolarityTally> {
    Aggregates::from_docs(docs).polarity_counts().clone()
}

/// Per-class mean of polarity counts across one gender's accounts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanPolarityCounts {
    pub positive: f64,
    pub negative: f64,
    pub neutral: f64,
}

/// Averages each polarity count across the counted accounts of each gender.
/// Counted accounts missing from the accounts table fall into the
/// unspecified group. Genders with no counted accounts are absent.
pub fn gender_mean_counts(
    accounts: &[Account],
    counts: &BTreeMap<String, PolarityTally>,
) -> BTreeMap<Gender, MeanPolarityCounts> {
    let gender_of: BTreeMap<&str, Gender> = accounts
        .iter()
        .map(|a| (a.id.as_str(), a.gender))
        .collect();

    let mut sums: BTreeMap<Gender, (PolarityTally, u64)> = BTreeMap::new();
    for (account_id, tally) in counts {
        let gender = gender_of
            .get(account_id.as_str())
            .copied()
            .unwrap_or(Gender::Unspecified);
        let entry = sums.entry(gender).or_default();
        entry.0.merge(tally);
        entry.1 += 1;
    }

    sums.into_iter()
        .map(|(gender, (tally, accounts))| {
            let n = accounts as f64;
            (
                gender,
                MeanPolarityCounts {
                    positive: tally.positive as f64 / n,
                    negative: tally.negative as f64 / n,
                    neutral: tally.neutral as f64 / n,
                },
            )
        })
        .collect()
}

/// Modal polarity per (account, month) bucket; ties resolve to neutral.
pub fn dominant_monthly_polarity(docs: &[ScoredDoc]) -> BTreeMap<(String, YearMonth), Polarity> {
    Aggregates::from_docs(docs).dominant_monthly_polarity()
}

/// The full report backing the five output tables, plus any warnings
/// collected while building it.
#[derive(Debug, Clone)]
pub struct AggregateReport {
    pub mean_grade_per_account: BTreeMap<String, f64>,
    pub monthly_mean_grade: BTreeMap<(String, YearMonth), f64>,
    pub polarity_counts: BTreeMap<String, PolarityTally>,
    pub gender_mean_counts: BTreeMap<Gender, MeanPolarityCounts>,
    pub dominant_monthly_polarity: BTreeMap<(String, YearMonth), Polarity>,
    pub warnings: Vec<String>,
}

impl AggregateReport {
    pub fn build(docs: &[ScoredDoc], accounts: &[Account]) -> Self {
        let aggregates = Aggregates::from_docs(docs);
        Self::from_aggregates(&aggregates, accounts)
    }

    pub fn from_aggregates(aggregates: &Aggregates, accounts: &[Account]) -> Self {
        let mean_grade = aggregates.mean_grade_per_account();
        let counts = aggregates.polarity_counts().clone();
        let mut warnings = Vec::new();
        for account_id in counts.keys() {
            if !mean_grade.contains_key(account_id) {
                warnings.push(format!(
                    "account {account_id}: no sorable documents, omitted from grade means"
                ));
            }
        }
        Self {
            mean_grade_per_account: mean_grade,
            monthly_mean_grade: aggregates.monthly_mean_grade(),
            gender_mean_counts: gender_mean_counts(accounts, &counts),
            dominant_monthly_polarity: aggregates.dominant_monthly_polarity(),
            polarity_counts: counts,
            warnings,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smog::{smog_simplified, SimplifiedVariant};
    use proptest::prelude::*;

    fn ts(s: &str) -> DateTime<Utc> {
        DateTime::parse_from_rfc3339(s).unwrap().with_timezone(&Utc)
    }

    fn grade_of(value: f64) -> SmogGrade {
        // Invert 3 + √φ to produce an arbitrary grade through a real formula.
        let phi = ((value - 3.0).max(0.0)).powi(2).round() as u64;
        smog_simplified(phi, SimplifiedVariant::Conventional)
    }

    fn scored(
        doc_id: &str,
        account: &str,
        month: (i32, u32),
        grade: Option<f64>,
        polarity: Polarity,
    ) -> ScoredDoc {
        ScoredDoc {
            doc_id: doc_id.to_string(),
            account_id: account.to_string(),
            month: YearMonth {
                year: month.0,
                month: month.1,
            },
            grade: grade.map(grade_of),
            polarity,
        }
    }

    #[test]
    fn month_bucketing_is_utc() {
        let m = YearMonth::from_timestamp(ts("2013-11-30T23:59:59Z"), 0);
        assert_eq!(m, YearMonth { year: 2013, month: 11 });
        assert_eq!(m.to_string(), "2013-11");
    }

    #[test]
    fn tz_offset_shifts_buckets() {
        // 23:59 UTC on Nov 30 is already December in Manila (+480 minutes).
        let m = YearMonth::from_timestamp(ts("2013-11-30T23:59:59Z"), 480);
        assert_eq!(m, YearMonth { year: 2013, month: 12 });
    }

    #[test]
    fn mean_grade_arithmetic() {
        let docs = vec![
            scored("d1", "s1", (2013, 11), Some(8.0), Polarity::Neutral),
            scored("d2", "s1", (2013, 11), Some(10.0), Polarity::Neutral),
        ];
        let means = mean_grade_per_account(&docs);
        assert!((means["s1"] - 9.0).abs() < 1e-12);
    }

    #[test]
    fn single_doc_mean_is_identity() {
        let docs = vec![scored("d1", "s1", (2013, 11), Some(3.0), Polarity::Positive)];
        let means = mean_grade_per_account(&docs);
        assert_eq!(means["s1"], 3.0);
    }

    #[test]
    fn unsorable_docs_stay_out_of_means_but_count_polarity() {
        let docs = vec![
            scored("d1", "s1", (2013, 11), None, Polarity::Neutral),
            scored("d2", "s1", (2013, 11), Some(8.0), Polarity::Positive),
        ];
        let means = mean_grade_per_account(&docs);
        assert_eq!(means["s1"], 8.0);
        let counts = polarity_counts(&docs);
        assert_eq!(counts["s1"].total(), 2);
    }

    #[test]
    fn account_with_no_sorable_docs_is_omitted_with_warning() {
        let docs = vec![scored("d1", "s1", (2013, 11), None, Polarity::Neutral)];
        let report = AggregateReport::build(&docs, &[]);
        assert!(report.mean_grade_per_account.is_empty());
        assert_eq!(report.warnings.len(), 1);
    }

    #[test]
    fn monthly_means_group_by_month() {
        let docs = vec![
            scored("d1", "s1", (2013, 11), Some(8.0), Polarity::Neutral),
            scored("d2", "s1", (2013, 11), Some(9.0), Polarity::Neutral),
            scored("d3", "s1", (2013, 12), Some(4.0), Polarity::Neutral),
        ];
        let means = monthly_mean_grade(&docs);
        let november = ("s1".to_string(), YearMonth { year: 2013, month: 11 });
        let december = ("s1".to_string(), YearMonth { year: 2013, month: 12 });
        assert!((means[&november] - 8.5).abs() < 1e-12);
        assert!((means[&december] - 4.0).abs() < 1e-12);
        assert_eq!(means.len(), 2);
    }

    #[test]
    fn polarity_counting() {
        let docs = vec![
            scored("d1", "s1", (2013, 11), Some(3.0), Polarity::Positive),
            scored("d2", "s1", (2013, 11), Some(3.0), Polarity::Positive),
            scored("d3", "s1", (2013, 11), Some(3.0), Polarity::Positive),
            scored("d4", "s1", (2013, 11), Some(3.0), Polarity::Neutral),
        ];
        let counts = polarity_counts(&docs);
        assert_eq!(counts["s1"].positive, 3);
        assert_eq!(counts["s1"].negative, 0);
        assert_eq!(counts["s1"].neutral, 1);
        assert_eq!(counts["s1"].total(), 4);
    }

    #[test]
    fn empty_corpus_has_empty_maps() {
        let docs: Vec<ScoredDoc> = Vec::new();
        assert!(polarity_counts(&docs).is_empty());
        assert!(mean_grade_per_account(&docs).is_empty());
    }

    fn account(id: &str, gender: Gender) -> Account {
        Account {
            id: id.to_string(),
            handle: format!("@{id}"),
            display_name: id.to_uppercase(),
            gender,
        }
    }

    #[test]
    fn gender_means_average_across_accounts() {
        let accounts = vec![
            account("s1", Gender::Male),
            account("s2", Gender::Male),
            account("s3", Gender::Female),
        ];
        let mut counts = BTreeMap::new();
        counts.insert(
            "s1".to_string(),
            PolarityTally { positive: 1, negative: 0, neutral: 10 },
        );
        counts.insert(
            "s2".to_string(),
            PolarityTally { positive: 3, negative: 2, neutral: 20 },
        );
        counts.insert(
            "s3".to_string(),
            PolarityTally { positive: 7, negative: 1, neutral: 4 },
        );
        let means = gender_mean_counts(&accounts, &counts);
        assert!((means[&Gender::Male].neutral - 15.0).abs() < 1e-12);
        assert!((means[&Gender::Male].positive - 2.0).abs() < 1e-12);
        // A single female account reports her counts verbatim.
        assert_eq!(means[&Gender::Female].positive, 7.0);
        assert!(!means.contains_key(&Gender::Unspecified));
    }

    #[test]
    fn unknown_account_falls_into_unspecified_group() {
        let mut counts = BTreeMap::new();
        counts.insert(
            "ghost".to_string(),
            PolarityTally { positive: 2, negative: 0, neutral: 0 },
        );
        let means = gender_mean_counts(&[], &counts);
        assert_eq!(means[&Gender::Unspecified].positive, 2.0);
    }

    #[test]
    fn dominant_polarity_mode_and_ties() {
        let tally = PolarityTally { positive: 5, negative: 1, neutral: 3 };
        assert_eq!(tally.dominant(), Polarity::Positive);
        let tied = PolarityTally { positive: 4, negative: 0, neutral: 4 };
        assert_eq!(tied.dominant(), Polarity::Neutral);
        let single = PolarityTally { positive: 0, negative: 1, neutral: 0 };
        assert_eq!(single.dominant(), Polarity::Negative);
    }

    #[test]
    fn dominant_monthly_polarity_per_bucket() {
        let docs = vec![
            scored("d1", "s1", (2013, 11), Some(3.0), Polarity::Positive),
            scored("d2", "s1", (2013, 11), Some(3.0), Polarity::Positive),
            scored("d3", "s1", (2013, 11), Some(3.0), Polarity::Negative),
            scored("d4", "s1", (2013, 12), Some(3.0), Polarity::Negative),
        ];
        let dominant = dominant_monthly_polarity(&docs);
        let november = ("s1".to_string(), YearMonth { year: 2013, month: 11 });
        let december = ("s1".to_string(), YearMonth { year: 2013, month: 12 });
        assert_eq!(dominant[&november], Polarity::Positive);
        assert_eq!(dominant[&december], Polarity::Negative);
    }

    fn arbitrary_docs() -> impl Strategy<Value = Vec<ScoredDoc>> {
        proptest::collection::vec(
            (
                0usize..5,
                11u32..=12,
                proptest::option::of(3u64..12),
                0usize..3,
            ),
            0..40,
        )
        .prop_map(|entries| {
            entries
                .into_iter()
                .enumerate()
                .map(|(i, (account, month, grade, polarity))| ScoredDoc {
                    doc_id: format!("d{i}"),
                    account_id: format!("s{account}"),
                    month: YearMonth { year: 2013, month },
                    grade: grade.map(|g| grade_of(g as f64)),
                    polarity: Polarity::ALL[polarity],
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn aggregation_is_permutation_invariant(docs in arbitrary_docs(), seed in 0u64..100) {
            let forward = Aggregates::from_docs(&docs);
            let mut shuffled = docs.clone();
            let len = shuffled.len();
            if len > 1 {
                for i in 0..len {
                    let j = (seed as usize + i * 13) % len;
                    shuffled.swap(i, j);
                }
            }
            let backward = Aggregates::from_docs(&shuffled);
            prop_assert_eq!(forward.polarity_counts(), backward.polarity_counts());
            let a = forward.mean_grade_per_account();
            let b = backward.mean_grade_per_account();
            prop_assert_eq!(a.len(), b.len());
            for (k, v) in &a {
                prop_assert!((v - b[k]).abs() < 1e-9);
            }
        }

        #[test]
        fn merged_shards_match_single_pass(docs in arbitrary_docs(), shards in 1usize..7) {
            let whole = Aggregates::from_docs(&docs);
            let mut parts: Vec<Aggregates> = vec![Aggregates::new(); shards];
            for (i, doc) in docs.iter().enumerate() {
                parts[i % shards].observe(doc);
            }
            let merged = parts
                .into_iter()
                .fold(Aggregates::new(), |acc, part| acc.merge(part));
            prop_assert_eq!(whole.polarity_counts(), merged.polarity_counts());
            let a = whole.mean_grade_per_account();
            let b = merged.mean_grade_per_account();
            prop_assert_eq!(a.len(), b.len());
            for (k, v) in &a {
                prop_assert!((v - b[k]).abs() < 1e-9);
            }
        }

        #[test]
        fn counts_sum_to_document_totals(docs in arbitrary_docs()) {
            let counts = polarity_counts(&docs);
            for (account, tally) in &counts {
                let expected = docs.iter().filter(|d| &d.account_id == account).count() as u64;
                prop_assert_eq!(tally.total(), expected);
            }
        }

        #[test]
        fn monthly_means_stay_within_bucket_range(docs in arbitrary_docs()) {
            let means = monthly_mean_grade(&docs);
            for ((account, month), mean) in &means {
                let grades: Vec<f64> = docs
                    .iter()
                    .filter(|d| &d.account_id == account && &d.month == month)
                    .filter_map(|d| d.grade.as_ref().map(|g| g.grade()))
                    .collect();
                let lo = grades.iter().cloned().fold(f64::INFINITY, f64::min);
                let hi = grades.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                prop_assert!(*mean >= lo - 1e-9 && *mean <= hi + 1e-9);
            }
        }
    }
}
