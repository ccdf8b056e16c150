//! Run configuration: a TOML file establishes defaults, explicit flags
//! win, and the global `--seed` overrides every per-section seed.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Deserialize;

use occnlp::classifier::TrainConfig;
use occnlp::corpus::{SplitSpec, TokenizerConfig};
use occnlp::lda::LdaConfig;

use crate::errors::{CliError, IntoUsage};

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub paths: PathsSection,
    pub tokenizer: TokenizerSection,
    pub split: SplitSection,
    pub lda: LdaSection,
    pub train: TrainSection,
    pub eval: EvalSection,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PathsSection {
    pub corpus: Option<PathBuf>,
    pub vocab: Option<PathBuf>,
    pub model: Option<PathBuf>,
    pub scores: Option<PathBuf>,
    pub report: Option<PathBuf>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TokenizerSection {
    pub lowercase: Option<bool>,
    pub strip_punctuation: Option<bool>,
    pub stopwords: Option<Vec<String>>,
    pub min_token_count: Option<usize>,
    pub max_doc_fraction: Option<f64>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SplitSection {
    pub ratios: Option<Vec<f64>>,
    pub seed: Option<u64>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LdaSection {
    pub n_topics: Option<usize>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub iterations: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainSection {
    pub l2_lambda: Option<f64>,
    pub learning_rate: Option<f64>,
    pub epochs: Option<usize>,
    pub convergence_tol: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalSection {
    pub cutoffs: Option<Vec<usize>>,
    pub threshold: Option<f64>,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(RunConfig::default()),
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("cannot read config {}", path.display()))
                    .or_usage()?;
                toml::from_str(&text)
                    .with_context(|| format!("invalid config {}", path.display()))
                    .or_usage()
            }
        }
    }

    pub fn tokenizer_config(&self, no_lowercase: bool, keep_punctuation: bool, stopwords: &[String],
                            min_token_count: Option<usize>, max_doc_fraction: Option<f64>)
                            -> TokenizerConfig {
        let defaults = TokenizerConfig::default();
        let mut stopword_set: BTreeSet<String> =
            self.tokenizer.stopwords.clone().unwrap_or_default().into_iter().collect();
        stopword_set.extend(stopwords.iter().cloned());
        TokenizerConfig {
            lowercase: if no_lowercase {
                false
            } else {
                self.tokenizer.lowercase.unwrap_or(defaults.lowercase)
            },
            strip_punctuation: if keep_punctuation {
                false
            } else {
                self.tokenizer
                    .strip_punctuation
                    .unwrap_or(defaults.strip_punctuation)
            },
            stopwords: stopword_set,
            min_token_count: min_token_count
                .or(self.tokenizer.min_token_count)
                .unwrap_or(defaults.min_token_count),
            max_doc_fraction: max_doc_fraction
                .or(self.tokenizer.max_doc_fraction)
                .unwrap_or(defaults.max_doc_fraction),
        }
    }

    pub fn split_spec(&self, ratios: &[f64], seed: Option<u64>) -> Result<SplitSpec, CliError> {
        let ratios: Vec<f64> = if ratios.is_empty() {
            self.split
                .ratios
                .clone()
                .unwrap_or_else(|| vec![0.85, 0.05, 0.10])
        } else {
            ratios.to_vec()
        };
        if ratios.len() != 3 {
            return Err(CliError::usage(format!(
                "--ratios needs exactly three values, got {}",
                ratios.len()
            )));
        }
        Ok(SplitSpec {
            train: ratios[0],
            validation: ratios[1],
            test: ratios[2],
            seed: seed.or(self.split.seed).or(self.seed).unwrap_or(0),
        })
    }

    pub fn lda_config(
        &self,
        topics: Option<usize>,
        alpha: Option<f64>,
        beta: Option<f64>,
        iterations: Option<usize>,
        seed: Option<u64>,
    ) -> LdaConfig {
        let n_topics = topics.or(self.lda.n_topics).unwrap_or(40);
        let defaults = LdaConfig::with_topics(n_topics);
        LdaConfig {
            n_topics,
            alpha: alpha.or(self.lda.alpha).unwrap_or(defaults.alpha),
            beta: beta.or(self.lda.beta).unwrap_or(defaults.beta),
            iterations: iterations
                .or(self.lda.iterations)
                .unwrap_or(defaults.iterations),
            seed: seed.or(self.lda.seed).or(self.seed).unwrap_or(0),
        }
    }

    pub fn train_config(
        &self,
        l2_lambda: Option<f64>,
        learning_rate: Option<f64>,
        epochs: Option<usize>,
        convergence_tol: Option<f64>,
        seed: Option<u64>,
    ) -> TrainConfig {
        let defaults = TrainConfig::default();
        TrainConfig {
            l2_lambda: l2_lambda.or(self.train.l2_lambda).unwrap_or(defaults.l2_lambda),
            learning_rate: learning_rate
                .or(self.train.learning_rate)
                .unwrap_or(defaults.learning_rate),
            epochs: epochs.or(self.train.epochs).unwrap_or(defaults.epochs),
            convergence_tol: convergence_tol
                .or(self.train.convergence_tol)
                .unwrap_or(defaults.convergence_tol),
            seed: seed.or(self.train.seed).or(self.seed).unwrap_or(0),
        }
    }

    pub fn cutoffs(&self, flag: &[usize]) -> Result<Vec<usize>, CliError> {
        let cutoffs = if flag.is_empty() {
            self.eval.cutoffs.clone().unwrap_or_else(|| vec![1, 2, 5])
        } else {
            flag.to_vec()
        };
        if cutoffs.is_empty() || cutoffs.iter().any(|&n| n < 1) {
            return Err(CliError::usage("cutoffs must be non-empty and all >= 1"));
        }
        Ok(cutoffs)
    }

    pub fn threshold(&self, flag: Option<f64>) -> Result<f64, CliError> {
        let threshold = flag.or(self.eval.threshold).unwrap_or(0.5);
        if !(0.0..1.0).contains(&threshold) {
            return Err(CliError::usage(format!(
                "threshold must be in [0, 1), got {threshold}"
            )));
        }
        Ok(threshold)
    }

    pub fn path(
        &self,
        flag: Option<&Path>,
        section: Option<&Path>,
        what: &str,
    ) -> Result<PathBuf, CliError> {
        flag.or(section)
            .map(Path::to_path_buf)
            .ok_or_else(|| CliError::usage(format!("missing {what} path (flag or config)")))
    }
}
