//! Latent Dirichlet Allocation fit by collapsed Gibbs sampling.
//!
//! The sampler integrates out the document-topic and topic-word
//! distributions and resamples one token assignment at a time with
//! `p(z=k) ∝ (n_dk + α)(n_kw + β)/(n_k + Vβ)`, the current token
//! excluded from all counts. The fitted model exposes the smoothed
//! estimates φ (topic-word) and θ (document-topic), top words per
//! topic, and fold-in inference for unseen documents. Everything is
//! deterministic given the config seed.

pub mod synthetic;

use std::io::{BufRead, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ranking::rank_descending;
use crate::vocab::Vocabulary;
use crate::TokenId;

const MODEL_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum LdaError {
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("document {0} is empty")]
    EmptyDocument(usize),
    #[error("document {doc} contains token id {token} outside vocabulary of size {vocab_size}")]
    TokenOutOfRange {
        doc: usize,
        token: TokenId,
        vocab_size: usize,
    },
    #[error("topic {topic} out of range for {n_topics} topics")]
    TopicOutOfRange { topic: usize, n_topics: usize },
    #[error("cutoff {n} exceeds topic count {n_topics}")]
    CutoffExceedsTopics { n: usize, n_topics: usize },
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("invalid synthetic spec: {0}")]
    InvalidSyntheticSpec(String),
    #[error("model built against a different vocabulary (expected hash {expected}, file has {found})")]
    VocabHashMismatch { expected: String, found: String },
    #[error("bad model file: {0}")]
    BadModelFile(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Sampler settings: topic count, symmetric Dirichlet priors, sweep
/// count, and seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LdaConfig {
    pub n_topics: usize,
    pub alpha: f64,
    pub beta: f64,
    pub iterations: usize,
    pub seed: u64,
}

impl Default for LdaConfig {
    fn default() -> Self {
        LdaConfig::with_topics(40)
    }
}

impl LdaConfig {
    /// Conventional defaults for a given topic count: `alpha = 50/K`,
    /// `beta = 0.01`, 1000 sweeps.
    pub fn with_topics(n_topics: usize) -> Self {
        LdaConfig {
            n_topics,
            alpha: 50.0 / n_topics.max(1) as f64,
            beta: 0.01,
            iterations: 1000,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<(), LdaError> {
        if self.n_topics < 1 {
            return Err(LdaError::InvalidConfig("n_topics must be >= 1".into()));
        }
        if !self.alpha.is_finite() || self.alpha <= 0.0 {
            return Err(LdaError::InvalidConfig("alpha must be finite and > 0".into()));
        }
        if !self.beta.is_finite() || self.beta <= 0.0 {
            return Err(LdaError::InvalidConfig("beta must be finite and > 0".into()));
        }
        if self.iterations < 1 {
            return Err(LdaError::InvalidConfig("iterations must be >= 1".into()));
        }
        Ok(())
    }
}

/// Fitted model state: the count matrices and per-token assignments
/// from the final sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LdaModel {
    config: LdaConfig,
    vocab_size: usize,
    /// K x V
    topic_word_counts: Vec<Vec<u32>>,
    /// D x K
    doc_topic_counts: Vec<Vec<u32>>,
    /// Per-topic token totals; `topic_totals[k] = sum_v topic_word_counts[k][v]`.
    topic_totals: Vec<u64>,
    /// Per-document, per-position topic assignments.
    assignments: Vec<Vec<u32>>,
}

impl LdaModel {
    pub fn config(&self) -> &LdaConfig {
        &self.config
    }

    pub fn n_topics(&self) -> usize {
        self.config.n_topics
    }

    pub fn vocab_size(&self) -> usize {
        self.vocab_size
    }

    pub fn n_docs(&self) -> usize {
        self.doc_topic_counts.len()
    }

    pub fn topic_word_counts(&self) -> &[Vec<u32>] {
        &self.topic_word_counts
    }

    pub fn doc_topic_counts(&self) -> &[Vec<u32>] {
        &self.doc_topic_counts
    }

    pub fn topic_totals(&self) -> &[u64] {
        &self.topic_totals
    }

    pub fn assignments(&self) -> &[Vec<u32>] {
        &self.assignments
    }

    fn doc_length(&self, d: usize) -> u64 {
        self.doc_topic_counts[d].iter().map(|&c| c as u64).sum()
    }

    /// Smoothed topic-word distribution: `phi[k][v] = (n_kv + β)/(n_k + Vβ)`.
    /// Each row sums to 1.
    pub fn phi(&self) -> Vec<Vec<f64>> {
        let v_beta = self.vocab_size as f64 * self.config.beta;
        self.topic_word_counts
            .iter()
            .zip(&self.topic_totals)
            .map(|(row, &total)| {
                let denom = total as f64 + v_beta;
                row.iter()
                    .map(|&c| (c as f64 + self.config.beta) / denom)
                    .collect()
            })
            .collect()
    }

    /// Smoothed document-topic distribution:
    /// `theta[d][k] = (n_dk + α)/(N_d + Kα)`. Each row sums to 1.
    pub fn theta(&self) -> Vec<Vec<f64>> {
        let k_alpha = self.config.n_topics as f64 * self.config.alpha;
        self.doc_topic_counts
            .iter()
            .enumerate()
            .map(|(d, row)| {
                let denom = self.doc_length(d) as f64 + k_alpha;
                row.iter()
                    .map(|&c| (c as f64 + self.config.alpha) / denom)
                    .collect()
            })
            .collect()
    }

    /// The `n` most probable token ids for a topic, descending
    /// probability, ties toward the lower id. Clipped to `V` entries.
    pub fn top_word_ids(&self, topic: usize, n: usize) -> Result<Vec<(TokenId, f64)>, LdaError> {
        if topic >= self.config.n_topics {
            return Err(LdaError::TopicOutOfRange {
                topic,
                n_topics: self.config.n_topics,
            });
        }
        let v_beta = self.vocab_size as f64 * self.config.beta;
        let denom = self.topic_totals[topic] as f64 + v_beta;
        let probs: Vec<f64> = self.topic_word_counts[topic]
            .iter()
            .map(|&c| (c as f64 + self.config.beta) / denom)
            .collect();
        Ok(rank_descending(&probs)
            .into_iter()
            .take(n)
            .map(|v| (v as TokenId, probs[v]))
            .collect())
    }

    /// Same as [`top_word_ids`](Self::top_word_ids) with ids resolved
    /// to token strings.
    pub fn top_words(
        &self,
        vocab: &Vocabulary,
        topic: usize,
        n: usize,
    ) -> Result<Vec<(String, f64)>, LdaError> {
        Ok(self
            .top_word_ids(topic, n)?
            .into_iter()
            .map(|(id, p)| {
                (
                    vocab.token(id).unwrap_or("<unknown>").to_string(),
                    p,
                )
            })
            .collect())
    }

    /// Fold in an unseen document: Gibbs-sample its assignments while
    /// holding the fitted topic-word counts fixed, then return the
    /// theta-style distribution.
    ///
    /// Out-of-vocabulary tokens are dropped; a document with no
    /// in-vocabulary tokens gets the uniform prior `1/K`.
    pub fn infer(&self, tokens: &[TokenId], iterations: usize, seed: u64) -> Vec<f64> {
        let k = self.config.n_topics;
        let alpha = self.config.alpha;
        let in_vocab: Vec<usize> = tokens
            .iter()
            .filter(|&&t| (t as usize) < self.vocab_size)
            .map(|&t| t as usize)
            .collect();
        if in_vocab.is_empty() {
            return vec![1.0 / k as f64; k];
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut local_counts = vec![0u32; k];
        let mut assignments: Vec<usize> = in_vocab
            .iter()
            .map(|_| {
                let z = rng.random_range(0..k);
                local_counts[z] += 1;
                z
            })
            .collect();
        let v_beta = self.vocab_size as f64 * self.config.beta;
        let mut weights = vec![0.0f64; k];
        for _ in 0..iterations {
            for (i, &v) in in_vocab.iter().enumerate() {
                let old = assignments[i];
                local_counts[old] -= 1;
                for (t, w) in weights.iter_mut().enumerate() {
                    *w = (local_counts[t] as f64 + alpha)
                        * (self.topic_word_counts[t][v] as f64 + self.config.beta)
                        / (self.topic_totals[t] as f64 + v_beta);
                }
                let new = sample_unnormalized(&weights, &mut rng);
                assignments[i] = new;
                local_counts[new] += 1;
            }
        }
        let denom = in_vocab.len() as f64 + k as f64 * alpha;
        local_counts
            .iter()
            .map(|&c| (c as f64 + alpha) / denom)
            .collect()
    }

    /// Verify the count matrices are mutually consistent with the
    /// assignments and the given documents.
    pub fn check_invariants(&self, docs: &[Vec<TokenId>]) -> bool {
        let total_tokens: u64 = docs.iter().map(|d| d.len() as u64).sum();
        if self.topic_totals.iter().sum::<u64>() != total_tokens {
            return false;
        }
        for (k, row) in self.topic_word_counts.iter().enumerate() {
            if row.iter().map(|&c| c as u64).sum::<u64>() != self.topic_totals[k] {
                return false;
            }
        }
        for (d, doc) in docs.iter().enumerate() {
            if self.doc_length(d) != doc.len() as u64 {
                return false;
            }
        }
        self.assignments
            .iter()
            .flatten()
            .all(|&z| (z as usize) < self.config.n_topics)
    }
}

/// Draw an index proportional to unnormalized non-negative weights.
fn sample_unnormalized<R: Rng>(weights: &[f64], rng: &mut R) -> usize {
    let total: f64 = weights.iter().sum();
    let mut u = rng.random::<f64>() * total;
    for (i, &w) in weights.iter().enumerate() {
        u -= w;
        if u <= 0.0 {
            return i;
        }
    }
    weights.len() - 1
}

/// Mutable collapsed-Gibbs state; one [`sweep`](Self::sweep) resamples
/// every token assignment once.
pub struct GibbsSampler {
    docs: Vec<Vec<TokenId>>,
    config: LdaConfig,
    vocab_size: usize,
    doc_topic_counts: Vec<Vec<u32>>,
    topic_word_counts: Vec<Vec<u32>>,
    topic_totals: Vec<u64>,
    assignments: Vec<Vec<u32>>,
    total_tokens: u64,
    rng: ChaCha8Rng,
}

impl GibbsSampler {
    /// Validate inputs and assign every token a uniformly random topic.
    pub fn new(
        docs: &[Vec<TokenId>],
        vocab_size: usize,
        config: &LdaConfig,
    ) -> Result<Self, LdaError> {
        config.validate()?;
        if docs.is_empty() {
            return Err(LdaError::EmptyCorpus);
        }
        if vocab_size < 1 {
            return Err(LdaError::InvalidConfig("vocabulary size must be >= 1".into()));
        }
        for (d, doc) in docs.iter().enumerate() {
            if doc.is_empty() {
                return Err(LdaError::EmptyDocument(d));
            }
            for &t in doc {
                if t as usize >= vocab_size {
                    return Err(LdaError::TokenOutOfRange {
                        doc: d,
                        token: t,
                        vocab_size,
                    });
                }
            }
        }
        let k = config.n_topics;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut doc_topic_counts = vec![vec![0u32; k]; docs.len()];
        let mut topic_word_counts = vec![vec![0u32; vocab_size]; k];
        let mut topic_totals = vec![0u64; k];
        let mut assignments = Vec::with_capacity(docs.len());
        let mut total_tokens = 0u64;
        for (d, doc) in docs.iter().enumerate() {
            let mut doc_z = Vec::with_capacity(doc.len());
            for &v in doc {
                let z = rng.random_range(0..k);
                doc_z.push(z as u32);
                doc_topic_counts[d][z] += 1;
                topic_word_counts[z][v as usize] += 1;
                topic_totals[z] += 1;
                total_tokens += 1;
            }
            assignments.push(doc_z);
        }
        Ok(GibbsSampler {
            docs: docs.to_vec(),
            config: *config,
            vocab_size,
            doc_topic_counts,
            topic_word_counts,
            topic_totals,
            assignments,
            total_tokens,
            rng,
        })
    }

    /// One full pass resampling every token's topic from the collapsed
    /// conditional, with that token excluded from the counts.
    pub fn sweep(&mut self) {
        let k = self.config.n_topics;
        let alpha = self.config.alpha;
        let beta = self.config.beta;
        let v_beta = self.vocab_size as f64 * beta;
        let mut weights = vec![0.0f64; k];
        for d in 0..self.docs.len() {
            for i in 0..self.docs[d].len() {
                let v = self.docs[d][i] as usize;
                let old = self.assignments[d][i] as usize;
                self.doc_topic_counts[d][old] -= 1;
                self.topic_word_counts[old][v] -= 1;
                self.topic_totals[old] -= 1;
                for (t, w) in weights.iter_mut().enumerate() {
                    *w = (self.doc_topic_counts[d][t] as f64 + alpha)
                        * (self.topic_word_counts[t][v] as f64 + beta)
                        / (self.topic_totals[t] as f64 + v_beta);
                }
                let new = sample_unnormalized(&weights, &mut self.rng);
                self.assignments[d][i] = new as u32;
                self.doc_topic_counts[d][new] += 1;
                self.topic_word_counts[new][v] += 1;
                self.topic_totals[new] += 1;
            }
        }
    }

    /// Count conservation: per-topic totals still sum to the token count.
    pub fn counts_consistent(&self) -> bool {
        self.topic_totals.iter().sum::<u64>() == self.total_tokens
    }

    pub fn into_model(self) -> LdaModel {
        LdaModel {
            config: self.config,
            vocab_size: self.vocab_size,
            topic_word_counts: self.topic_word_counts,
            doc_topic_counts: self.doc_topic_counts,
            topic_totals: self.topic_totals,
            assignments: self.assignments,
        }
    }
}

/// Fit an LDA model: `config.iterations` full Gibbs sweeps over the
/// encoded corpus. The final sweep's counts define the model.
pub fn fit_gibbs(
    docs: &[Vec<TokenId>],
    vocab_size: usize,
    config: &LdaConfig,
) -> Result<LdaModel, LdaError> {
    let mut sampler = GibbsSampler::new(docs, vocab_size, config)?;
    for _ in 0..config.iterations {
        sampler.sweep();
        assert!(sampler.counts_consistent(), "count conservation violated");
    }
    Ok(sampler.into_model())
}

/// The `n` most probable topic ids of a distribution, descending, ties
/// toward the lower id. Errors when `n` exceeds the topic count.
pub fn rank_topics(distribution: &[f64], n: usize) -> Result<Vec<usize>, LdaError> {
    if n > distribution.len() {
        return Err(LdaError::CutoffExceedsTopics {
            n,
            n_topics: distribution.len(),
        });
    }
    Ok(rank_descending(distribution).into_iter().take(n).collect())
}

#[derive(Serialize, Deserialize)]
struct LdaModelFile {
    version: u32,
    vocab_hash: String,
    model: LdaModel,
}

/// Serialize a model as versioned JSON bound to a vocabulary hash.
pub fn save_model<W: Write>(
    model: &LdaModel,
    vocab_hash: &str,
    writer: W,
) -> Result<(), LdaError> {
    let file = LdaModelFile {
        version: MODEL_VERSION,
        vocab_hash: vocab_hash.to_string(),
        model: model.clone(),
    };
    serde_json::to_writer(writer, &file).map_err(|e| LdaError::BadModelFile(e.to_string()))
}

/// Load a model, refusing a file built against another vocabulary.
pub fn load_model<R: BufRead>(reader: R, expected_vocab_hash: &str) -> Result<LdaModel, LdaError> {
    let file: LdaModelFile =
        serde_json::from_reader(reader).map_err(|e| LdaError::BadModelFile(e.to_string()))?;
    if file.version != MODEL_VERSION {
        return Err(LdaError::BadModelFile(format!(
            "unsupported version {}",
            file.version
        )));
    }
    if file.vocab_hash != expected_vocab_hash {
        return Err(LdaError::VocabHashMismatch {
            expected: expected_vocab_hash.to_string(),
            found: file.vocab_hash,
        });
    }
    Ok(file.model)
}
