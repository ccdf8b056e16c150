//! Score-matrix CSV interchange: per-document, per-label probabilities
//! produced either by the local model or by an external classifier.
//!
//! Format: UTF-8 CSV with header `doc_id,<label1>,...,<labelL>` and one
//! row per document of `L` reals in `[0,1]`.

use std::collections::HashMap;
use std::io::{Read, Write};

use super::ClassifierError;

/// Validated per-document label scores keyed by document id.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMatrix {
    pub doc_ids: Vec<String>,
    pub label_names: Vec<String>,
    pub scores: Vec<Vec<f64>>,
}

impl ScoreMatrix {
    pub fn new(
        doc_ids: Vec<String>,
        label_names: Vec<String>,
        scores: Vec<Vec<f64>>,
    ) -> Result<Self, ClassifierError> {
        let mut seen = HashMap::new();
        for (row, id) in doc_ids.iter().enumerate() {
            if seen.insert(id.clone(), row).is_some() {
                return Err(ClassifierError::DuplicateDocId(id.clone()));
            }
        }
        for (row, row_scores) in scores.iter().enumerate() {
            if row_scores.len() != label_names.len() {
                return Err(ClassifierError::BadScoreFile(format!(
                    "row {} has {} scores, expected {}",
                    row + 2,
                    row_scores.len(),
                    label_names.len()
                )));
            }
            for (col, &value) in row_scores.iter().enumerate() {
                if !(0.0..=1.0).contains(&value) {
                    return Err(ClassifierError::ScoreOutOfRange {
                        row: row + 2, // 1-based, counting the header
                        column: label_names[col].clone(),
                        value,
                    });
                }
            }
        }
        Ok(ScoreMatrix {
            doc_ids,
            label_names,
            scores,
        })
    }

    pub fn n_docs(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn n_labels(&self) -> usize {
        self.label_names.len()
    }

    pub fn row(&self, doc_id: &str) -> Option<&[f64]> {
        self.doc_ids
            .iter()
            .position(|id| id == doc_id)
            .map(|i| self.scores[i].as_slice())
    }

    /// Reorder rows to match `ids`; errors when the id sets differ in
    /// either direction.
    pub fn aligned_to(&self, ids: &[String]) -> Result<ScoreMatrix, ClassifierError> {
        let index: HashMap<&str, usize> = self
            .doc_ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), i))
            .collect();
        for id in &self.doc_ids {
            if !ids.contains(id) {
                return Err(ClassifierError::UnknownDocId(id.clone()));
            }
        }
        let mut scores = Vec::with_capacity(ids.len());
        for id in ids {
            match index.get(id.as_str()) {
                Some(&i) => scores.push(self.scores[i].clone()),
                None => return Err(ClassifierError::MissingDocId(id.clone())),
            }
        }
        Ok(ScoreMatrix {
            doc_ids: ids.to_vec(),
            label_names: self.label_names.clone(),
            scores,
        })
    }
}

/// Parse and validate a score-matrix CSV.
pub fn import_scores<R: Read>(reader: R) -> Result<ScoreMatrix, ClassifierError> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let headers = csv_reader
        .headers()
        .map_err(|e| ClassifierError::BadScoreFile(e.to_string()))?
        .clone();
    let mut header_iter = headers.iter();
    match header_iter.next() {
        Some("doc_id") => {}
        other => {
            return Err(ClassifierError::BadScoreFile(format!(
                "first header column must be doc_id, got {other:?}"
            )))
        }
    }
    let label_names: Vec<String> = header_iter.map(String::from).collect();
    if label_names.is_empty() {
        return Err(ClassifierError::BadScoreFile(
            "score file has no label columns".into(),
        ));
    }
    let mut doc_ids = Vec::new();
    let mut scores = Vec::new();
    for (row_idx, record) in csv_reader.records().enumerate() {
        let record = record.map_err(|e| ClassifierError::BadScoreFile(e.to_string()))?;
        let row_number = row_idx + 2;
        let mut fields = record.iter();
        let doc_id = fields
            .next()
            .ok_or_else(|| ClassifierError::BadScoreFile(format!("row {row_number} is empty")))?;
        let mut row = Vec::with_capacity(label_names.len());
        for (col, field) in fields.enumerate() {
            let value: f64 = field.trim().parse().map_err(|_| {
                ClassifierError::BadScoreFile(format!(
                    "row {row_number}, column \"{}\": not a number: {field:?}",
                    label_names.get(col).map(String::as_str).unwrap_or("?")
                ))
            })?;
            row.push(value);
        }
        doc_ids.push(doc_id.to_string());
        scores.push(row);
    }
    ScoreMatrix::new(doc_ids, label_names, scores)
}

/// Write a score matrix as CSV; floats use their shortest exact form,
/// so output is byte-deterministic.
pub fn write_scores<W: Write>(matrix: &ScoreMatrix, writer: W) -> Result<(), ClassifierError> {
    let mut csv_writer = csv::Writer::from_writer(writer);
    let mut header = vec!["doc_id".to_string()];
    header.extend(matrix.label_names.iter().cloned());
    csv_writer
        .write_record(&header)
        .map_err(|e| ClassifierError::BadScoreFile(e.to_string()))?;
    for (id, row) in matrix.doc_ids.iter().zip(&matrix.scores) {
        let mut record = vec![id.clone()];
        record.extend(row.iter().map(|v| v.to_string()));
        csv_writer
            .write_record(&record)
            .map_err(|e| ClassifierError::BadScoreFile(e.to_string()))?;
    }
    csv_writer
        .flush()
        .map_err(|e| ClassifierError::BadScoreFile(e.to_string()))?;
    Ok(())
}
