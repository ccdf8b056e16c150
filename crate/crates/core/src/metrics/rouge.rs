//! ROUGE-N and ROUGE-L precision/recall over token sequences.
//!
//! N-gram overlap uses clipped multiset counts; ROUGE-L uses the
//! word-level longest common subsequence. A score with an empty
//! denominator side is 0.

use std::collections::HashMap;
use std::hash::Hash;

/// Precision/recall pair for one candidate/reference comparison.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RougeScore {
    pub precision: f64,
    pub recall: f64,
}

/// All length-`n` windows of `tokens`, in order (a multiset: repeats kept).
///
/// Returns `max(0, len - n + 1)` grams; empty when `n` is 0 or exceeds
/// the sequence length.
pub fn ngrams<T>(tokens: &[T], n: usize) -> Vec<&[T]> {
    if n == 0 || tokens.len() < n {
        return Vec::new();
    }
    tokens.windows(n).collect()
}

fn ngram_counts<T: Eq + Hash>(tokens: &[T], n: usize) -> HashMap<&[T], usize> {
    let mut counts = HashMap::new();
    for gram in ngrams(tokens, n) {
        *counts.entry(gram).or_insert(0) += 1;
    }
    counts
}

/// ROUGE-N: clipped n-gram overlap divided by candidate grams
/// (precision) and reference grams (recall).
pub fn rouge_n<T: Eq + Hash>(candidate: &[T], reference: &[T], n: usize) -> RougeScore {
    let cand_counts = ngram_counts(candidate, n);
    let ref_counts = ngram_counts(reference, n);
    let cand_total: usize = cand_counts.values().sum();
    let ref_total: usize = ref_counts.values().sum();
    let overlap: usize = cand_counts
        .iter()
        .filter_map(|(gram, &c)| ref_counts.get(gram).map(|&r| c.min(r)))
        .sum();
    RougeScore {
        precision: ratio(overlap, cand_total),
        recall: ratio(overlap, ref_total),
    }
}

/// Word-level longest common subsequence length, `O(|a|*|b|)` time with
/// a two-row table.
pub fn lcs_length<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut prev = vec![0usize; b.len() + 1];
    let mut curr = vec![0usize; b.len() + 1];
    for ai in a {
        for (j, bj) in b.iter().enumerate() {
            curr[j + 1] = if ai == bj {
                prev[j] + 1
            } else {
                prev[j + 1].max(curr[j])
            };
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[b.len()]
}

/// ROUGE-L: LCS length divided by candidate length (precision) and
/// reference length (recall).
pub fn rouge_l<T: PartialEq>(candidate: &[T], reference: &[T]) -> RougeScore {
    let lcs = lcs_length(candidate, reference);
    RougeScore {
        precision: ratio(lcs, candidate.len()),
        recall: ratio(lcs, reference.len()),
    }
}

fn ratio(numerator: usize, denominator: usize) -> f64 {
    if denominator == 0 {
        0.0
    } else {
        numerator as f64 / denominator as f64
    }
}
