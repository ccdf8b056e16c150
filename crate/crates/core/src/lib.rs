//! Toolkit for working with multi-label occurrence-report corpora.
//!
//! The crate is organized around a batch pipeline:
//!
//! 1. [`corpus`] — parse JSONL report collections, clean them (dedup,
//!    missing-section and length filters), tokenize, and split into
//!    train/validation/test sets with a seeded permutation.
//! 2. [`vocab`] — build a deterministic vocabulary and encode documents
//!    to dense token ids.
//! 3. [`lda`] — fit a topic model by collapsed Gibbs sampling, query
//!    topic/word distributions, fold in new documents, and generate
//!    synthetic corpora from the generative story.
//! 4. [`classifier`] — TF-IDF featurization and one-vs-rest logistic
//!    regression emitting independent per-label probabilities, plus an
//!    import path for externally produced score matrices.
//! 5. [`metrics`] — precision/recall, success, exact match, their @n
//!    variants over ranked predictions, and ROUGE-1/2/L for paired
//!    candidate/reference texts.
//!
//! Every operation is deterministic given its config and seed; model
//! files serialize bit-identically across runs on one platform.

pub mod classifier;
pub mod corpus;
pub mod lda;
pub mod metrics;
pub mod ranking;
pub mod vocab;

pub use corpus::{Corpus, Document, SplitSpec, SplitTag, TokenizerConfig};
pub use vocab::Vocabulary;

/// Token id into a [`Vocabulary`]; dense in `0..V`.
pub type TokenId = u32;
/// Label id interned by a [`Corpus`] in first-seen order.
pub type LabelId = usize;
