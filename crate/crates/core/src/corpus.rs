//! Occurrence-report corpus: JSONL parsing, normalization, cleaning
//! filters, and seeded train/validation/test splitting.
//!
//! A [`Corpus`] is a sequence of [`Document`]s plus a label interner.
//! Labels are interned to dense ids in first-seen order when parsing;
//! all cleaning operations are pure functions returning a new corpus.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::io::{self, BufRead, Write};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{LabelId, TokenId};

#[derive(Debug, Error)]
pub enum CorpusError {
    /// A JSONL line that failed to parse, with its 1-based line number.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate document id \"{0}\"")]
    DuplicateId(String),
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("invalid tokenizer config: {0}")]
    InvalidTokenizerConfig(String),
    #[error("invalid split spec: {0}")]
    InvalidSplitSpec(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Which partition a document was assigned to by [`assign_splits`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitTag {
    Train,
    Val,
    Test,
}

/// One occurrence report.
///
/// `tokens` is empty until the document is encoded against a
/// vocabulary; `labels` holds ids interned by the owning [`Corpus`].
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub tokens: Vec<TokenId>,
    pub labels: BTreeSet<LabelId>,
    pub reference_summary: Option<String>,
    pub generated_summary: Option<String>,
    pub split: Option<SplitTag>,
}

impl Document {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        Document {
            id: id.into(),
            text: text.into(),
            tokens: Vec::new(),
            labels: BTreeSet::new(),
            reference_summary: None,
            generated_summary: None,
            split: None,
        }
    }
}

/// A sequence of documents plus the label interner shared by all of them.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Corpus {
    pub documents: Vec<Document>,
    /// Label names in first-seen order; index is the [`LabelId`].
    pub label_names: Vec<String>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn label_id(&self, name: &str) -> Option<LabelId> {
        self.label_names.iter().position(|n| n == name)
    }

    /// Intern `name`, returning its id; new names get the next dense id.
    pub fn intern_label(&mut self, name: &str) -> LabelId {
        match self.label_id(name) {
            Some(id) => id,
            None => {
                self.label_names.push(name.to_string());
                self.label_names.len() - 1
            }
        }
    }

    /// Documents carrying the given split tag.
    pub fn with_split(&self, tag: SplitTag) -> impl Iterator<Item = &Document> {
        self.documents.iter().filter(move |d| d.split == Some(tag))
    }
}

/// Whitespace tokenizer configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TokenizerConfig {
    pub lowercase: bool,
    pub strip_punctuation: bool,
    pub stopwords: BTreeSet<String>,
    /// Minimum total corpus count for a token to enter the vocabulary.
    pub min_token_count: usize,
    /// Maximum fraction of documents a token may appear in.
    pub max_doc_fraction: f64,
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        TokenizerConfig {
            lowercase: true,
            strip_punctuation: true,
            stopwords: BTreeSet::new(),
            min_token_count: 1,
            max_doc_fraction: 1.0,
        }
    }
}

impl TokenizerConfig {
    pub fn validate(&self) -> Result<(), CorpusError> {
        if self.min_token_count < 1 {
            return Err(CorpusError::InvalidTokenizerConfig(
                "min_token_count must be >= 1".into(),
            ));
        }
        if !self.max_doc_fraction.is_finite()
            || self.max_doc_fraction <= 0.0
            || self.max_doc_fraction > 1.0
        {
            return Err(CorpusError::InvalidTokenizerConfig(
                "max_doc_fraction must be in (0, 1]".into(),
            ));
        }
        Ok(())
    }
}

/// Train/validation/test ratios plus the shuffle seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train: f64,
    pub validation: f64,
    pub test: f64,
    pub seed: u64,
}

impl SplitSpec {
    pub fn new(train: f64, validation: f64, test: f64, seed: u64) -> Self {
        SplitSpec {
            train,
            validation,
            test,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), CorpusError> {
        for (name, r) in [
            ("train", self.train),
            ("validation", self.validation),
            ("test", self.test),
        ] {
            if !r.is_finite() || r < 0.0 {
                return Err(CorpusError::InvalidSplitSpec(format!(
                    "{name} ratio must be finite and >= 0, got {r}"
                )));
            }
        }
        let sum = self.train + self.validation + self.test;
        if (sum - 1.0).abs() > 1e-9 {
            return Err(CorpusError::InvalidSplitSpec(format!(
                "ratios must sum to 1 (got {sum})"
            )));
        }
        Ok(())
    }
}

/// Normalize raw text to a token sequence.
///
/// Lowercases and strips non-alphanumeric characters from token edges
/// when configured, drops stopwords and empty tokens. Idempotent when
/// both lowercasing and stripping are on.
pub fn normalize(text: &str, config: &TokenizerConfig) -> Vec<String> {
    let text = if config.lowercase {
        text.to_lowercase()
    } else {
        text.to_string()
    };
    text.split_whitespace()
        .map(|raw| {
            if config.strip_punctuation {
                raw.trim_matches(|c: char| !c.is_alphanumeric())
            } else {
                raw
            }
        })
        .filter(|tok| !tok.is_empty() && !config.stopwords.contains(*tok))
        .map(str::to_string)
        .collect()
}

/// Wire format for one JSONL record. Unknown fields are ignored on
/// read; absent optionals are omitted on write.
#[derive(Debug, Serialize, Deserialize)]
struct JsonlRecord {
    id: String,
    text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reference_summary: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generated_summary: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tokens: Option<Vec<TokenId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    split: Option<SplitTag>,
}

/// Parse a line-delimited JSON stream into a corpus.
///
/// Required fields per line: `id`, `text`. Label strings are interned
/// to dense ids in first-seen order. Blank lines are skipped.
pub fn parse_jsonl<R: BufRead>(reader: R) -> Result<Corpus, CorpusError> {
    let mut corpus = Corpus::default();
    let mut seen_ids: HashSet<String> = HashSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: JsonlRecord =
            serde_json::from_str(&line).map_err(|e| CorpusError::Parse {
                line: idx + 1,
                message: e.to_string(),
            })?;
        if !seen_ids.insert(record.id.clone()) {
            return Err(CorpusError::DuplicateId(record.id));
        }
        let labels = record
            .labels
            .unwrap_or_default()
            .iter()
            .map(|name| corpus.intern_label(name))
            .collect();
        corpus.documents.push(Document {
            id: record.id,
            text: record.text,
            tokens: record.tokens.unwrap_or_default(),
            labels,
            reference_summary: record.reference_summary,
            generated_summary: record.generated_summary,
            split: record.split,
        });
    }
    Ok(corpus)
}

/// Write a corpus back to JSONL, one record per line.
///
/// Emits `labels` always (label names, interner order within each
/// document's sorted id set), `tokens` when non-empty, and `split`
/// when assigned. Output is byte-deterministic for a given corpus.
pub fn write_jsonl<W: Write>(corpus: &Corpus, mut writer: W) -> io::Result<()> {
    for doc in &corpus.documents {
        let record = JsonlRecord {
            id: doc.id.clone(),
            text: doc.text.clone(),
            labels: Some(
                doc.labels
                    .iter()
                    .map(|&l| corpus.label_names[l].clone())
                    .collect(),
            ),
            reference_summary: doc.reference_summary.clone(),
            generated_summary: doc.generated_summary.clone(),
            tokens: if doc.tokens.is_empty() {
                None
            } else {
                Some(doc.tokens.clone())
            },
            split: doc.split,
        };
        serde_json::to_writer(&mut writer, &record)?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}

/// Remove documents whose normalized text duplicates an earlier one.
///
/// The duplicate key is the normalized token sequence under `config`;
/// the first occurrence survives and order is otherwise preserved.
pub fn dedup(corpus: &Corpus, config: &TokenizerConfig) -> Corpus {
    let mut seen: HashSet<String> = HashSet::new();
    let documents = corpus
        .documents
        .iter()
        .filter(|doc| seen.insert(normalize(&doc.text, config).join(" ")))
        .cloned()
        .collect();
    Corpus {
        documents,
        label_names: corpus.label_names.clone(),
    }
}

/// Fields that [`filter_missing`] can require to be present and non-empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RequiredField {
    Text,
    Labels,
    ReferenceSummary,
}

impl RequiredField {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "text" => Some(RequiredField::Text),
            "labels" => Some(RequiredField::Labels),
            "reference_summary" => Some(RequiredField::ReferenceSummary),
            _ => None,
        }
    }
}

/// Keep only documents where every required field is non-empty.
///
/// An empty label set counts as missing when labels are required;
/// unlabeled documents are otherwise legal.
pub fn filter_missing(corpus: &Corpus, required: &[RequiredField]) -> Corpus {
    let documents = corpus
        .documents
        .iter()
        .filter(|doc| {
            required.iter().all(|field| match field {
                RequiredField::Text => !doc.text.is_empty(),
                RequiredField::Labels => !doc.labels.is_empty(),
                RequiredField::ReferenceSummary => doc
                    .reference_summary
                    .as_deref()
                    .is_some_and(|s| !s.is_empty()),
            })
        })
        .cloned()
        .collect();
    Corpus {
        documents,
        label_names: corpus.label_names.clone(),
    }
}

/// Drop documents with strictly more than `max_tokens` encoded tokens.
pub fn filter_max_length(corpus: &Corpus, max_tokens: usize) -> Corpus {
    let documents = corpus
        .documents
        .iter()
        .filter(|doc| doc.tokens.len() <= max_tokens)
        .cloned()
        .collect();
    Corpus {
        documents,
        label_names: corpus.label_names.clone(),
    }
}

/// Seeded permutation of `0..n` followed by floor cuts; the remainder
/// lands in the test slice.
fn split_order(n: usize, spec: &SplitSpec) -> (Vec<usize>, usize, usize) {
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    order.shuffle(&mut rng);
    let n_train = (n as f64 * spec.train).floor() as usize;
    let n_train_val = (n as f64 * (spec.train + spec.validation)).floor() as usize;
    (order, n_train, n_train_val)
}

/// Partition a corpus into train/validation/test sets.
///
/// Documents are shuffled by a seeded pseudorandom permutation and cut
/// at `floor(N*r_train)` and `floor(N*(r_train+r_val))`; the partition
/// is exact and deterministic given the seed.
pub fn split(corpus: &Corpus, spec: &SplitSpec) -> Result<(Corpus, Corpus, Corpus), CorpusError> {
    spec.validate()?;
    if corpus.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    let (order, n_train, n_train_val) = split_order(corpus.len(), spec);
    let part = |range: std::ops::Range<usize>| Corpus {
        documents: order[range]
            .iter()
            .map(|&i| corpus.documents[i].clone())
            .collect(),
        label_names: corpus.label_names.clone(),
    };
    Ok((
        part(0..n_train),
        part(n_train..n_train_val),
        part(n_train_val..corpus.len()),
    ))
}

/// Tag every document with its split, preserving document order.
///
/// Uses the same permutation and cuts as [`split`], so the id sets per
/// tag are identical between the two operations.
pub fn assign_splits(corpus: &Corpus, spec: &SplitSpec) -> Result<Corpus, CorpusError> {
    spec.validate()?;
    if corpus.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    let (order, n_train, n_train_val) = split_order(corpus.len(), spec);
    let mut tags = vec![SplitTag::Test; corpus.len()];
    for (pos, &doc_idx) in order.iter().enumerate() {
        tags[doc_idx] = if pos < n_train {
            SplitTag::Train
        } else if pos < n_train_val {
            SplitTag::Val
        } else {
            SplitTag::Test
        };
    }
    let documents = corpus
        .documents
        .iter()
        .zip(tags)
        .map(|(doc, tag)| {
            let mut doc = doc.clone();
            doc.split = Some(tag);
            doc
        })
        .collect();
    Ok(Corpus {
        documents,
        label_names: corpus.label_names.clone(),
    })
}

/// Total token occurrences and per-document frequencies under `config`.
///
/// Used by vocabulary construction; exposed for diagnostics.
pub fn token_statistics(
    corpus: &Corpus,
    config: &TokenizerConfig,
) -> (HashMap<String, usize>, HashMap<String, usize>) {
    let mut counts: HashMap<String, usize> = HashMap::new();
    let mut doc_freq: HashMap<String, usize> = HashMap::new();
    for doc in &corpus.documents {
        let tokens = normalize(&doc.text, config);
        let mut seen: HashSet<&str> = HashSet::new();
        for tok in &tokens {
            *counts.entry(tok.clone()).or_insert(0) += 1;
            if seen.insert(tok) {
                *doc_freq.entry(tok.clone()).or_insert(0) += 1;
            }
        }
    }
    (counts, doc_freq)
}
