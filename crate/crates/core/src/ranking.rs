//! Shared ranking rule: descending score, ties broken by ascending index.

/// Argsort `values` descending; equal values keep ascending index order.
///
/// NaN sorts via `f64::total_cmp`, so the output is total and
/// deterministic for any input.
pub fn rank_descending(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    order
}
