//! Multi-label classification: TF-IDF featurization and one-vs-rest
//! L2-regularized logistic regression.
//!
//! The output contract is independent per-label probabilities through a
//! sigmoid (deliberately not softmax-normalized), a strict `>`
//! threshold to form label sets, and descending-probability ranking for
//! @n metrics.

mod scores;

pub use scores::{import_scores, write_scores, ScoreMatrix};

use std::collections::BTreeSet;
use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ranking::rank_descending;
use crate::{LabelId, TokenId};

const MODEL_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ClassifierError {
    #[error("label \"{0}\" never appears in the training set")]
    LabelNeverObserved(String),
    #[error("feature dimension mismatch: model expects {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid train config: {0}")]
    InvalidConfig(String),
    #[error("score {value} out of [0,1] at row {row}, column \"{column}\"")]
    ScoreOutOfRange {
        row: usize,
        column: String,
        value: f64,
    },
    #[error("document id \"{0}\" in score matrix not present in corpus")]
    UnknownDocId(String),
    #[error("corpus document id \"{0}\" missing from score matrix")]
    MissingDocId(String),
    #[error("duplicate document id \"{0}\" in score matrix")]
    DuplicateDocId(String),
    #[error("bad score file: {0}")]
    BadScoreFile(String),
    #[error("bad model file: {0}")]
    BadModelFile(String),
    #[error("model built against a different vocabulary (expected hash {expected}, file has {found})")]
    VocabHashMismatch { expected: String, found: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Sparse feature vector with an explicit dimension, entries sorted by
/// index.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVec {
    dim: usize,
    entries: Vec<(TokenId, f64)>,
}

impl SparseVec {
    pub fn new(dim: usize, mut entries: Vec<(TokenId, f64)>) -> Self {
        entries.sort_by_key(|&(i, _)| i);
        SparseVec { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(TokenId, f64)] {
        &self.entries
    }

    pub fn l2_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(_, v)| v * v)
            .sum::<f64>()
            .sqrt()
    }

    fn dot(&self, dense: &[f64]) -> f64 {
        self.entries
            .iter()
            .map(|&(i, v)| v * dense[i as usize])
            .sum()
    }
}

/// Smoothed-idf TF-IDF featurizer over an encoded document collection.
///
/// `idf[v] = ln((1+D)/(1+df[v])) + 1` where `df` counts documents in
/// the fitting set containing token `v`; always positive.
#[derive(Debug, Clone, PartialEq)]
pub struct TfidfFeaturizer {
    idf: Vec<f64>,
}

impl TfidfFeaturizer {
    /// Fit document frequencies from encoded documents.
    pub fn fit(vocab_size: usize, docs: &[Vec<TokenId>]) -> Self {
        let mut doc_freq = vec![0usize; vocab_size];
        for doc in docs {
            let distinct: BTreeSet<TokenId> = doc.iter().copied().collect();
            for id in distinct {
                if (id as usize) < vocab_size {
                    doc_freq[id as usize] += 1;
                }
            }
        }
        let n = docs.len() as f64;
        let idf = doc_freq
            .iter()
            .map(|&df| ((1.0 + n) / (1.0 + df as f64)).ln() + 1.0)
            .collect();
        TfidfFeaturizer { idf }
    }

    pub fn from_idf(idf: Vec<f64>) -> Self {
        TfidfFeaturizer { idf }
    }

    pub fn dim(&self) -> usize {
        self.idf.len()
    }

    pub fn idf(&self) -> &[f64] {
        &self.idf
    }

    /// Raw term counts times idf, L2-normalized. Out-of-range token ids
    /// are ignored; an all-OOV document maps to the zero vector.
    pub fn featurize(&self, tokens: &[TokenId]) -> SparseVec {
        let mut counts: std::collections::BTreeMap<TokenId, f64> = std::collections::BTreeMap::new();
        for &t in tokens {
            if (t as usize) < self.idf.len() {
                *counts.entry(t).or_insert(0.0) += 1.0;
            }
        }
        let mut entries: Vec<(TokenId, f64)> = counts
            .into_iter()
            .map(|(i, c)| (i, c * self.idf[i as usize]))
            .collect();
        let norm = entries.iter().map(|&(_, v)| v * v).sum::<f64>().sqrt();
        if norm > 0.0 {
            for (_, v) in entries.iter_mut() {
                *v /= norm;
            }
        }
        SparseVec {
            dim: self.idf.len(),
            entries,
        }
    }
}

/// Gradient-descent settings for the per-label logistic fits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub l2_lambda: f64,
    pub learning_rate: f64,
    pub epochs: usize,
    pub convergence_tol: f64,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            l2_lambda: 1e-4,
            learning_rate: 1.0,
            epochs: 500,
            convergence_tol: 1e-8,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), ClassifierError> {
        if !self.l2_lambda.is_finite() || self.l2_lambda < 0.0 {
            return Err(ClassifierError::InvalidConfig(
                "l2_lambda must be finite and >= 0".into(),
            ));
        }
        if !self.learning_rate.is_finite() || self.learning_rate <= 0.0 {
            return Err(ClassifierError::InvalidConfig(
                "learning_rate must be finite and > 0".into(),
            ));
        }
        if self.epochs < 1 {
            return Err(ClassifierError::InvalidConfig("epochs must be >= 1".into()));
        }
        if !self.convergence_tol.is_finite() || self.convergence_tol <= 0.0 {
            return Err(ClassifierError::InvalidConfig(
                "convergence_tol must be finite and > 0".into(),
            ));
        }
        Ok(())
    }
}

/// One weight vector and bias per label over TF-IDF features.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiLabelLinearModel {
    weights: Vec<Vec<f64>>,
    bias: Vec<f64>,
    label_names: Vec<String>,
    threshold: f64,
}

impl MultiLabelLinearModel {
    pub fn new(
        weights: Vec<Vec<f64>>,
        bias: Vec<f64>,
        label_names: Vec<String>,
        threshold: f64,
    ) -> Result<Self, ClassifierError> {
        if label_names.is_empty() {
            return Err(ClassifierError::InvalidConfig(
                "at least one label is required".into(),
            ));
        }
        let unique: BTreeSet<&String> = label_names.iter().collect();
        if unique.len() != label_names.len() {
            return Err(ClassifierError::InvalidConfig(
                "label names must be unique".into(),
            ));
        }
        if weights.len() != label_names.len() || bias.len() != label_names.len() {
            return Err(ClassifierError::InvalidConfig(
                "weights/bias rows must match label count".into(),
            ));
        }
        if weights.iter().flatten().any(|w| !w.is_finite())
            || bias.iter().any(|b| !b.is_finite())
        {
            return Err(ClassifierError::InvalidConfig(
                "weights and bias must be finite".into(),
            ));
        }
        Ok(MultiLabelLinearModel {
            weights,
            bias,
            label_names,
            threshold,
        })
    }

    pub fn n_labels(&self) -> usize {
        self.label_names.len()
    }

    pub fn dim(&self) -> usize {
        self.weights.first().map(Vec::len).unwrap_or(0)
    }

    pub fn label_names(&self) -> &[String] {
        &self.label_names
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn bias(&self) -> &[f64] {
        &self.bias
    }

    /// Independent per-label probabilities `sigmoid(w_l . x + b_l)`.
    ///
    /// Scores are not normalized across labels and need not sum to 1.
    pub fn predict_proba(&self, features: &SparseVec) -> Result<Vec<f64>, ClassifierError> {
        if features.dim() != self.dim() {
            return Err(ClassifierError::DimensionMismatch {
                expected: self.dim(),
                got: features.dim(),
            });
        }
        Ok(self
            .weights
            .iter()
            .zip(&self.bias)
            .map(|(w, &b)| sigmoid(features.dot(w) + b))
            .collect())
    }
}

/// Logistic sigmoid, clamped so the output stays strictly inside (0,1)
/// even where the exact value would round to 0 or 1 in f64.
pub fn sigmoid(z: f64) -> f64 {
    let p = 1.0 / (1.0 + (-z.clamp(-500.0, 500.0)).exp());
    p.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0)
}

/// Labels whose probability strictly exceeds the threshold.
pub fn predict_labels(probabilities: &[f64], threshold: f64) -> BTreeSet<LabelId> {
    probabilities
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > threshold)
        .map(|(i, _)| i)
        .collect()
}

/// Label ids in descending probability order, ties toward the lower id.
pub fn rank_labels(probabilities: &[f64]) -> Vec<LabelId> {
    rank_descending(probabilities)
}

fn log1p_exp(z: f64) -> f64 {
    // ln(1 + e^z) without overflow
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// Mean logistic loss plus `lambda/2 * ||w||^2` (bias unregularized).
pub fn binary_logistic_loss(
    weights: &[f64],
    bias: f64,
    features: &[SparseVec],
    targets: &[f64],
    lambda: f64,
) -> f64 {
    let n = features.len() as f64;
    let data: f64 = features
        .iter()
        .zip(targets)
        .map(|(x, &y)| {
            let z = x.dot(weights) + bias;
            log1p_exp(z) - y * z
        })
        .sum();
    let reg: f64 = weights.iter().map(|w| w * w).sum::<f64>() * lambda / 2.0;
    data / n + reg
}

/// Analytic gradient of [`binary_logistic_loss`] in `(weights, bias)`.
pub fn binary_logistic_grad(
    weights: &[f64],
    bias: f64,
    features: &[SparseVec],
    targets: &[f64],
    lambda: f64,
) -> (Vec<f64>, f64) {
    let n = features.len() as f64;
    let mut grad_w = vec![0.0; weights.len()];
    let mut grad_b = 0.0;
    for (x, &y) in features.iter().zip(targets) {
        let residual = sigmoid(x.dot(weights) + bias) - y;
        for &(i, v) in x.entries() {
            grad_w[i as usize] += residual * v;
        }
        grad_b += residual;
    }
    for (g, w) in grad_w.iter_mut().zip(weights) {
        *g = *g / n + lambda * w;
    }
    (grad_w, grad_b / n)
}

/// Fit one binary logistic task by full-batch gradient descent.
///
/// Stops at `epochs` or when the gradient norm drops below
/// `convergence_tol`. Returns the parameters and the loss recorded at
/// each visited iterate (non-increasing for the default rate).
pub fn fit_binary(
    features: &[SparseVec],
    targets: &[f64],
    config: &TrainConfig,
) -> (Vec<f64>, f64, Vec<f64>) {
    let dim = features.first().map(SparseVec::dim).unwrap_or(0);
    let mut weights = vec![0.0; dim];
    let mut bias = 0.0;
    let mut losses = Vec::new();
    for _ in 0..config.epochs {
        losses.push(binary_logistic_loss(
            &weights,
            bias,
            features,
            targets,
            config.l2_lambda,
        ));
        let (grad_w, grad_b) =
            binary_logistic_grad(&weights, bias, features, targets, config.l2_lambda);
        let grad_norm =
            (grad_w.iter().map(|g| g * g).sum::<f64>() + grad_b * grad_b).sqrt();
        if grad_norm < config.convergence_tol {
            break;
        }
        for (w, g) in weights.iter_mut().zip(&grad_w) {
            *w -= config.learning_rate * g;
        }
        bias -= config.learning_rate * grad_b;
    }
    (weights, bias, losses)
}

/// Train a one-vs-rest model: one independent logistic fit per label.
///
/// Every label in `label_names` must occur in at least one document's
/// label set. Deterministic given the config.
pub fn train(
    features: &[SparseVec],
    labels: &[BTreeSet<LabelId>],
    label_names: &[String],
    config: &TrainConfig,
) -> Result<MultiLabelLinearModel, ClassifierError> {
    config.validate()?;
    assert_eq!(features.len(), labels.len(), "misaligned training inputs");
    let mut weights = Vec::with_capacity(label_names.len());
    let mut bias = Vec::with_capacity(label_names.len());
    for (label_id, name) in label_names.iter().enumerate() {
        let targets: Vec<f64> = labels
            .iter()
            .map(|set| if set.contains(&label_id) { 1.0 } else { 0.0 })
            .collect();
        if !targets.contains(&1.0) {
            return Err(ClassifierError::LabelNeverObserved(name.clone()));
        }
        let (w, b, _) = fit_binary(features, &targets, config);
        weights.push(w);
        bias.push(b);
    }
    MultiLabelLinearModel::new(weights, bias, label_names.to_vec(), 0.5)
}

/// On-disk layout of a trained classifier.
#[derive(Serialize, Deserialize)]
struct ClassifierFile {
    version: u32,
    vocab_hash: String,
    label_names: Vec<String>,
    threshold: f64,
    idf: Vec<f64>,
    weights: Vec<Vec<f64>>,
    bias: Vec<f64>,
}

/// Serialize a model plus its featurizer as versioned JSON.
pub fn save_classifier<W: Write>(
    model: &MultiLabelLinearModel,
    featurizer: &TfidfFeaturizer,
    vocab_hash: &str,
    writer: W,
) -> Result<(), ClassifierError> {
    let file = ClassifierFile {
        version: MODEL_VERSION,
        vocab_hash: vocab_hash.to_string(),
        label_names: model.label_names.clone(),
        threshold: model.threshold,
        idf: featurizer.idf.clone(),
        weights: model.weights.clone(),
        bias: model.bias.clone(),
    };
    serde_json::to_writer(writer, &file)
        .map_err(|e| ClassifierError::BadModelFile(e.to_string()))
}

/// Load a classifier, refusing a file built against another vocabulary.
pub fn load_classifier<R: BufRead>(
    reader: R,
    expected_vocab_hash: &str,
) -> Result<(MultiLabelLinearModel, TfidfFeaturizer), ClassifierError> {
    let file: ClassifierFile =
        serde_json::from_reader(reader).map_err(|e| ClassifierError::BadModelFile(e.to_string()))?;
    if file.version != MODEL_VERSION {
        return Err(ClassifierError::BadModelFile(format!(
            "unsupported version {}",
            file.version
        )));
    }
    if file.vocab_hash != expected_vocab_hash {
        return Err(ClassifierError::VocabHashMismatch {
            expected: expected_vocab_hash.to_string(),
            found: file.vocab_hash,
        });
    }
    let model =
        MultiLabelLinearModel::new(file.weights, file.bias, file.label_names, file.threshold)?;
    Ok((model, TfidfFeaturizer { idf: file.idf }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn featurize_empty_doc_is_zero_vector() {
        let f = TfidfFeaturizer::from_idf(vec![1.0, 2.0]);
        let x = f.featurize(&[]);
        assert!(x.entries().is_empty());
        assert_eq!(x.dim(), 2);
    }

    #[test]
    fn featurize_single_token_is_unit() {
        let f = TfidfFeaturizer::from_idf(vec![1.0, 3.5]);
        let x = f.featurize(&[1]);
        assert_eq!(x.entries(), &[(1, 1.0)]);
    }

    #[test]
    fn featurize_hand_computation() {
        // doc "a a b" with idf(a)=1, idf(b)=2: pre-norm (2, 2), post (1/sqrt2, 1/sqrt2)
        let f = TfidfFeaturizer::from_idf(vec![1.0, 2.0]);
        let x = f.featurize(&[0, 0, 1]);
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        assert_eq!(x.entries().len(), 2);
        assert!((x.entries()[0].1 - inv_sqrt2).abs() < 1e-12);
        assert!((x.entries()[1].1 - inv_sqrt2).abs() < 1e-12);
        assert!((x.l2_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn idf_is_positive_and_decreasing_in_df() {
        let docs = vec![vec![0, 1], vec![0], vec![0, 2]];
        let f = TfidfFeaturizer::fit(3, &docs);
        assert!(f.idf().iter().all(|&v| v > 0.0));
        assert!(f.idf()[1] > f.idf()[0]); // rarer token, larger idf
    }

    #[test]
    fn predict_proba_zero_model_gives_half() {
        let model = MultiLabelLinearModel::new(
            vec![vec![0.0, 0.0], vec![0.0, 0.0]],
            vec![0.0, 0.0],
            vec!["a".into(), "b".into()],
            0.5,
        )
        .unwrap();
        let x = SparseVec::new(2, vec![(0, 1.0)]);
        let p = model.predict_proba(&x).unwrap();
        assert_eq!(p, vec![0.5, 0.5]);
    }

    #[test]
    fn sigmoid_of_ln3_is_three_quarters() {
        assert!((sigmoid(3.0f64.ln()) - 0.75).abs() < 1e-12);
    }

    #[test]
    fn predict_proba_rejects_dimension_mismatch() {
        let model = MultiLabelLinearModel::new(
            vec![vec![0.0, 0.0]],
            vec![0.0],
            vec!["a".into()],
            0.5,
        )
        .unwrap();
        let x = SparseVec::new(3, vec![]);
        assert!(matches!(
            model.predict_proba(&x),
            Err(ClassifierError::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn predict_labels_threshold_is_strict() {
        let set = predict_labels(&[0.9, 0.5, 0.51], 0.5);
        assert_eq!(set, BTreeSet::from([0, 2]));
        assert!(predict_labels(&[0.1, 0.2], 0.5).is_empty());
        let all = predict_labels(&[0.1, 0.2], 0.0);
        assert_eq!(all, BTreeSet::from([0, 1]));
    }

    #[test]
    fn rank_labels_descending_with_tie_rule() {
        assert_eq!(rank_labels(&[0.1, 0.9, 0.5]), vec![1, 2, 0]);
        assert_eq!(rank_labels(&[0.5, 0.5]), vec![0, 1]);
    }

    fn toy_two_label_problem() -> (Vec<SparseVec>, Vec<BTreeSet<LabelId>>, Vec<String>) {
        // label 0 docs contain token 0; label 1 docs contain token 1
        let f = TfidfFeaturizer::from_idf(vec![1.0, 1.0, 1.0]);
        let mut features = Vec::new();
        let mut labels = Vec::new();
        for i in 0..20 {
            let (tokens, set) = if i % 2 == 0 {
                (vec![0, 2], BTreeSet::from([0]))
            } else {
                (vec![1, 2], BTreeSet::from([1]))
            };
            features.push(f.featurize(&tokens));
            labels.push(set);
        }
        (features, labels, vec!["left".into(), "right".into()])
    }

    #[test]
    fn train_separates_disjoint_keywords() {
        let (features, labels, names) = toy_two_label_problem();
        let model = train(&features, &labels, &names, &TrainConfig::default()).unwrap();
        for (x, truth) in features.iter().zip(&labels) {
            let p = model.predict_proba(x).unwrap();
            for &l in truth {
                assert!(p[l] > 0.5, "own-label probability {} too low", p[l]);
            }
        }
        // scores are independent sigmoids, not a softmax: a document
        // carrying both keywords is confident on both labels at once
        let f = TfidfFeaturizer::from_idf(vec![1.0, 1.0, 1.0]);
        let p = model.predict_proba(&f.featurize(&[0, 1])).unwrap();
        assert!(p[0] > 0.5 && p[1] > 0.5);
        assert!(p.iter().sum::<f64>() > 1.0);
    }

    #[test]
    fn train_errors_on_unobserved_label() {
        let (features, labels, _) = toy_two_label_problem();
        let names = vec!["left".into(), "right".into(), "ghost".into()];
        match train(&features, &labels, &names, &TrainConfig::default()) {
            Err(ClassifierError::LabelNeverObserved(name)) => assert_eq!(name, "ghost"),
            other => panic!("expected unobserved-label error, got {other:?}"),
        }
    }

    #[test]
    fn zero_epochs_rejected_by_config() {
        let cfg = TrainConfig {
            epochs: 0,
            ..TrainConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn strong_regularization_shrinks_weights() {
        let (features, labels, names) = toy_two_label_problem();
        let small = train(
            &features,
            &labels,
            &names,
            &TrainConfig {
                l2_lambda: 1e-6,
                ..TrainConfig::default()
            },
        )
        .unwrap();
        // gradient descent on a lambda-strongly-convex objective needs
        // lr < 2/(lambda + 1/4); shrink the step accordingly
        let big = train(
            &features,
            &labels,
            &names,
            &TrainConfig {
                l2_lambda: 100.0,
                learning_rate: 5e-3,
                epochs: 1000,
                ..TrainConfig::default()
            },
        )
        .unwrap();
        let norm = |m: &MultiLabelLinearModel| -> f64 {
            m.weights()
                .iter()
                .flat_map(|row| row.iter())
                .map(|w| w * w)
                .sum::<f64>()
                .sqrt()
        };
        assert!(norm(&big) < 1e-2 * norm(&small));
        // with weights crushed, probabilities collapse to sigmoid(bias)
        let p = big.predict_proba(&features[0]).unwrap();
        for (l, prob) in p.iter().enumerate() {
            assert!((prob - sigmoid(big.bias()[l])).abs() < 0.02);
        }
    }

    #[test]
    fn training_loss_is_non_increasing_at_default_rate() {
        let (features, labels, _) = toy_two_label_problem();
        let targets: Vec<f64> = labels
            .iter()
            .map(|s| if s.contains(&0) { 1.0 } else { 0.0 })
            .collect();
        let (_, _, losses) = fit_binary(&features, &targets, &TrainConfig::default());
        for pair in losses.windows(2) {
            assert!(
                pair[1] <= pair[0] + 1e-12,
                "loss increased: {} -> {}",
                pair[0],
                pair[1]
            );
        }
    }

    #[test]
    fn save_load_round_trip_checks_vocab_hash() {
        let (features, labels, names) = toy_two_label_problem();
        let model = train(&features, &labels, &names, &TrainConfig::default()).unwrap();
        let featurizer = TfidfFeaturizer::from_idf(vec![1.0, 1.0, 1.0]);
        let mut buf = Vec::new();
        save_classifier(&model, &featurizer, "hash-a", &mut buf).unwrap();
        let (loaded, loaded_feat) = load_classifier(buf.as_slice(), "hash-a").unwrap();
        assert_eq!(loaded, model);
        assert_eq!(loaded_feat, featurizer);
        assert!(matches!(
            load_classifier(buf.as_slice(), "hash-b"),
            Err(ClassifierError::VocabHashMismatch { .. })
        ));
    }

    proptest! {
        #[test]
        fn probabilities_stay_strictly_inside_unit_interval(z in -1e6f64..1e6) {
            let p = sigmoid(z);
            prop_assert!(p > 0.0 && p < 1.0);
        }

        #[test]
        fn raising_threshold_never_adds_labels(
            probs in proptest::collection::vec(0.0f64..1.0, 1..10),
            t1 in 0.0f64..1.0,
            t2 in 0.0f64..1.0,
        ) {
            let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            let at_hi = predict_labels(&probs, hi);
            let at_lo = predict_labels(&probs, lo);
            prop_assert!(at_hi.is_subset(&at_lo));
        }

        #[test]
        fn ranking_invariant_under_strictly_increasing_transform(
            probs in proptest::collection::vec(0.0f64..1.0, 1..10),
        ) {
            let transformed: Vec<f64> = probs.iter().map(|p| 0.2 + 0.5 * p).collect();
            prop_assert_eq!(rank_labels(&probs), rank_labels(&transformed));
        }
    }
}
