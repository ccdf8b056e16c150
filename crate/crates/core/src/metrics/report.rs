//! Corpus-level evaluation: aggregate label metrics at several cutoffs
//! plus exact match, and mean ROUGE scores for paired summaries.

use std::collections::{BTreeSet, HashSet};

use super::rouge::{rouge_l, rouge_n};
use super::{at_n, exact_match, MetricsError, RankedPrediction};
use crate::ranking::rank_descending;
use crate::LabelId;

/// Per-document label scores and ground truth, already aligned by the
/// caller (typically via a score matrix joined to a corpus by id).
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledScores {
    pub doc_id: String,
    pub scores: Vec<f64>,
    pub truth: BTreeSet<LabelId>,
}

/// One generated/reference summary pair, tokenized.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryPair {
    pub doc_id: String,
    pub candidate: Vec<String>,
    pub reference: Vec<String>,
}

/// Named metric values in report order, plus the evaluated document count.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    entries: Vec<(String, f64)>,
    pub n_docs: usize,
}

impl EvalReport {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, v)| v)
    }

    pub fn entries(&self) -> &[(String, f64)] {
        &self.entries
    }

    /// `metric,value,n_docs` rows behind a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("metric,value,n_docs\n");
        for (name, value) in &self.entries {
            out.push_str(&format!("{name},{value},{}\n", self.n_docs));
        }
        out
    }

    /// Aligned two-column table for terminal display.
    pub fn to_table(&self) -> String {
        let width = self
            .entries
            .iter()
            .map(|(n, _)| n.len())
            .max()
            .unwrap_or(6)
            .max("Metric".len());
        let mut out = format!("{:<width$}  Value\n", "Metric");
        for (name, value) in &self.entries {
            out.push_str(&format!("{name:<width$}  {value:.4}\n"));
        }
        out.push_str(&format!("(documents: {})\n", self.n_docs));
        out
    }
}

fn check_unique_ids<'a>(ids: impl Iterator<Item = &'a str>) -> Result<(), MetricsError> {
    let mut seen = HashSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(MetricsError::DuplicateDocId(id.to_string()));
        }
    }
    Ok(())
}

/// Evaluate label predictions and/or summary pairs into one report.
///
/// Label metrics are P@n/R@n/S@n for each cutoff plus exact match of
/// the thresholded sets (score strictly greater than `threshold`).
/// Summary metrics are corpus means of per-document ROUGE-1/2/L
/// precision and recall. All aggregation is macro over documents.
pub fn evaluate(
    labels: &[LabeledScores],
    summaries: &[SummaryPair],
    cutoffs: &[usize],
    threshold: f64,
) -> Result<EvalReport, MetricsError> {
    check_unique_ids(labels.iter().map(|l| l.doc_id.as_str()))?;
    check_unique_ids(summaries.iter().map(|s| s.doc_id.as_str()))?;

    let mut entries: Vec<(String, f64)> = Vec::new();
    if !labels.is_empty() {
        let ranked: Vec<RankedPrediction> = labels
            .iter()
            .map(|l| {
                RankedPrediction::new(
                    l.doc_id.clone(),
                    rank_descending(&l.scores),
                    l.truth.clone(),
                )
            })
            .collect::<Result<_, _>>()?;
        let per_cutoff: Vec<(usize, super::AtN)> = cutoffs
            .iter()
            .map(|&n| at_n(&ranked, n).map(|a| (n, a)))
            .collect::<Result<_, _>>()?;
        for (n, a) in &per_cutoff {
            entries.push((format!("P@{n}"), a.precision));
        }
        for (n, a) in &per_cutoff {
            entries.push((format!("R@{n}"), a.recall));
        }
        for (n, a) in &per_cutoff {
            entries.push((format!("S@{n}"), a.success));
        }
        let predicted: Vec<BTreeSet<LabelId>> = labels
            .iter()
            .map(|l| {
                l.scores
                    .iter()
                    .enumerate()
                    .filter(|(_, &s)| s > threshold)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let truths: Vec<BTreeSet<LabelId>> = labels.iter().map(|l| l.truth.clone()).collect();
        entries.push(("EM".to_string(), exact_match(&predicted, &truths)));
    }

    if !summaries.is_empty() {
        let count = summaries.len() as f64;
        let mut sums = [[0.0f64; 2]; 3]; // [R1, R2, RL] x [precision, recall]
        for pair in summaries {
            let r1 = rouge_n(&pair.candidate, &pair.reference, 1);
            let r2 = rouge_n(&pair.candidate, &pair.reference, 2);
            let rl = rouge_l(&pair.candidate, &pair.reference);
            for (slot, score) in sums.iter_mut().zip([r1, r2, rl]) {
                slot[0] += score.precision;
                slot[1] += score.recall;
            }
        }
        for (name, slot) in ["R1", "R2", "RL"].iter().zip(sums) {
            entries.push((format!("{name}.precision"), slot[0] / count));
            entries.push((format!("{name}.recall"), slot[1] / count));
        }
    }

    let n_docs = if labels.is_empty() {
        summaries.len()
    } else {
        labels.len()
    };
    Ok(EvalReport { entries, n_docs })
}
