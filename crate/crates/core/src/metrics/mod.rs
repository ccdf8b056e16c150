//! Evaluation metrics for multi-label predictions: confusion counts,
//! precision/recall, success, exact match, and their @n variants over
//! ranked label lists.
//!
//! Degenerate-denominator conventions, applied consistently here and in
//! every aggregate:
//! - precision over an empty prediction set is 1 (vacuous), recall over
//!   an empty true set is 1;
//! - documents with empty true sets are excluded from R@n and S@n but
//!   counted in P@n (vacuously perfect only when the ranking is empty
//!   too);
//! - an aggregate over zero included documents is 0.

mod report;
pub mod rouge;

pub use report::{evaluate, EvalReport, LabeledScores, SummaryPair};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::LabelId;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("cutoff n must be >= 1")]
    ZeroCutoff,
    #[error("document \"{0}\" has a repeated label in its ranking")]
    RepeatedRankedLabel(String),
    #[error("duplicate document id \"{0}\" in evaluation input")]
    DuplicateDocId(String),
}

/// True/false positive and false negative counts for one document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionCounts {
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
}

pub fn confusion_counts(
    predicted: &BTreeSet<LabelId>,
    truth: &BTreeSet<LabelId>,
) -> ConfusionCounts {
    let true_positives = predicted.intersection(truth).count();
    ConfusionCounts {
        true_positives,
        false_positives: predicted.len() - true_positives,
        false_negatives: truth.len() - true_positives,
    }
}

/// Precision and recall from confusion counts.
///
/// `P = TP/(TP+FP)` and `R = TP/(TP+FN)`, with the zero-denominator
/// cases defined as 1 (nothing predicted wrongly / nothing missed).
pub fn precision_recall(counts: &ConfusionCounts) -> (f64, f64) {
    let p_denom = counts.true_positives + counts.false_positives;
    let r_denom = counts.true_positives + counts.false_negatives;
    let precision = if p_denom == 0 {
        1.0
    } else {
        counts.true_positives as f64 / p_denom as f64
    };
    let recall = if r_denom == 0 {
        1.0
    } else {
        counts.true_positives as f64 / r_denom as f64
    };
    (precision, recall)
}

/// One document's ranked prediction: label ids in descending score
/// order plus the ground-truth set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedPrediction {
    pub doc_id: String,
    pub ranked: Vec<LabelId>,
    pub truth: BTreeSet<LabelId>,
}

impl RankedPrediction {
    /// Build a ranked prediction, rejecting repeated labels in the ranking.
    pub fn new(
        doc_id: impl Into<String>,
        ranked: Vec<LabelId>,
        truth: BTreeSet<LabelId>,
    ) -> Result<Self, MetricsError> {
        let doc_id = doc_id.into();
        let unique: BTreeSet<&LabelId> = ranked.iter().collect();
        if unique.len() != ranked.len() {
            return Err(MetricsError::RepeatedRankedLabel(doc_id));
        }
        Ok(RankedPrediction {
            doc_id,
            ranked,
            truth,
        })
    }
}

/// Mean P@n, R@n, and S@n over a collection of ranked predictions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtN {
    pub precision: f64,
    pub recall: f64,
    pub success: f64,
}

/// Compute @n metrics using only the top `n` ranked labels per document.
///
/// P@n averages `hits/n` over all documents; R@n and S@n average over
/// documents with non-empty true sets only.
pub fn at_n(predictions: &[RankedPrediction], n: usize) -> Result<AtN, MetricsError> {
    if n == 0 {
        return Err(MetricsError::ZeroCutoff);
    }
    let mut p_sum = 0.0;
    let mut r_sum = 0.0;
    let mut s_sum = 0.0;
    let mut r_count = 0usize;
    for pred in predictions {
        let top = &pred.ranked[..pred.ranked.len().min(n)];
        let hits = top.iter().filter(|l| pred.truth.contains(l)).count();
        if pred.truth.is_empty() {
            // nothing to retrieve: vacuously perfect only if nothing was ranked
            p_sum += if pred.ranked.is_empty() { 1.0 } else { 0.0 };
        } else {
            p_sum += hits as f64 / n as f64;
            r_sum += hits as f64 / pred.truth.len() as f64;
            s_sum += if hits >= 1 { 1.0 } else { 0.0 };
            r_count += 1;
        }
    }
    let mean = |sum: f64, count: usize| if count == 0 { 0.0 } else { sum / count as f64 };
    Ok(AtN {
        precision: mean(p_sum, predictions.len()),
        recall: mean(r_sum, r_count),
        success: mean(s_sum, r_count),
    })
}

/// Fraction of documents with at least one true label predicted, among
/// documents with non-empty true sets.
///
/// Panics if the two slices differ in length.
pub fn success(predicted: &[BTreeSet<LabelId>], truth: &[BTreeSet<LabelId>]) -> f64 {
    assert_eq!(predicted.len(), truth.len(), "misaligned prediction lists");
    let mut hit = 0usize;
    let mut total = 0usize;
    for (p, t) in predicted.iter().zip(truth) {
        if t.is_empty() {
            continue;
        }
        total += 1;
        if p.intersection(t).next().is_some() {
            hit += 1;
        }
    }
    if total == 0 {
        0.0
    } else {
        hit as f64 / total as f64
    }
}

/// Fraction of documents whose predicted set equals the true set
/// exactly; two empty sets match.
///
/// Panics if the two slices differ in length.
pub fn exact_match(predicted: &[BTreeSet<LabelId>], truth: &[BTreeSet<LabelId>]) -> f64 {
    assert_eq!(predicted.len(), truth.len(), "misaligned prediction lists");
    if predicted.is_empty() {
        return 0.0;
    }
    let matches = predicted.iter().zip(truth).filter(|(p, t)| p == t).count();
    matches as f64 / predicted.len() as f64
}
