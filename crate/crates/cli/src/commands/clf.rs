//! `occnlp train-clf` and `predict`.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::BufReader;

use anyhow::Context;
use serde::Serialize;

use occnlp::classifier::{
    self, import_scores, predict_labels, rank_labels, write_scores, ScoreMatrix, SparseVec,
    TfidfFeaturizer,
};
use occnlp::{LabelId, TokenId};

use crate::config::RunConfig;
use crate::errors::{CliError, IntoUsage};
use crate::files::{atomic_write, read_corpus, read_vocab, select_split};
use crate::{PredictArgs, TrainClfArgs};

pub fn train(args: &TrainClfArgs, config: &RunConfig, seed: Option<u64>) -> Result<(), CliError> {
    let input = config.path(
        args.input.as_deref(),
        config.paths.corpus.as_deref(),
        "input corpus",
    )?;
    let vocab_path = config.path(
        args.vocab.as_deref(),
        config.paths.vocab.as_deref(),
        "vocabulary",
    )?;
    let out = config.path(
        args.out.as_deref(),
        config.paths.model.as_deref(),
        "model output (--out)",
    )?;
    let train_config = config.train_config(
        args.l2_lambda,
        args.learning_rate,
        args.epochs,
        args.convergence_tol,
        seed,
    );
    train_config.validate().or_usage()?;

    let corpus = read_corpus(&input)?;
    let corpus = select_split(&corpus, args.split.as_deref())?;
    let (vocabulary, _) = read_vocab(&vocab_path)?;
    let docs: Vec<Vec<TokenId>> = corpus.documents.iter().map(|d| d.tokens.clone()).collect();
    if docs.iter().all(Vec::is_empty) {
        return Err(CliError::usage(
            "no tokenized documents to train on (run ingest first)",
        ));
    }
    if corpus.label_names.is_empty() {
        return Err(CliError::usage("corpus carries no labels to train on"));
    }
    let featurizer = TfidfFeaturizer::fit(vocabulary.len(), &docs);
    let features: Vec<SparseVec> = docs.iter().map(|d| featurizer.featurize(d)).collect();
    let labels: Vec<BTreeSet<LabelId>> =
        corpus.documents.iter().map(|d| d.labels.clone()).collect();
    let model = classifier::train(&features, &labels, &corpus.label_names, &train_config)
        .or_usage()?;
    let mut bytes = Vec::new();
    classifier::save_classifier(&model, &featurizer, &vocabulary.hash(), &mut bytes)
        .or_internal()?;
    atomic_write(&out, &bytes)?;
    eprintln!(
        "trained {} labels on {} documents",
        model.n_labels(),
        corpus.len()
    );
    Ok(())
}

#[derive(Serialize)]
struct PredictionRecord<'a> {
    id: &'a str,
    scores: &'a [f64],
    predicted: Vec<&'a str>,
    ranked: Vec<&'a str>,
}

pub fn predict(args: &PredictArgs, config: &RunConfig) -> Result<(), CliError> {
    let input = config.path(
        args.input.as_deref(),
        config.paths.corpus.as_deref(),
        "input corpus",
    )?;
    let out = config.path(
        args.out.as_deref(),
        config.paths.scores.as_deref(),
        "scores output (--out)",
    )?;
    let threshold = config.threshold(args.threshold)?;
    let corpus = read_corpus(&input)?;
    let corpus = select_split(&corpus, args.split.as_deref())?;
    if corpus.is_empty() {
        return Err(CliError::usage("no documents to score"));
    }
    let ids: Vec<String> = corpus.documents.iter().map(|d| d.id.clone()).collect();

    let matrix = match (&args.scores, &args.model) {
        (Some(scores_path), _) => {
            // external scores bypass the local model entirely
            let file = File::open(scores_path)
                .with_context(|| format!("cannot open scores {}", scores_path.display()))
                .or_usage()?;
            let imported = import_scores(BufReader::new(file)).or_usage()?;
            imported.aligned_to(&ids).or_usage()?
        }
        (None, Some(model_path)) => {
            let vocab_path = config.path(
                args.vocab.as_deref(),
                config.paths.vocab.as_deref(),
                "vocabulary",
            )?;
            let (vocabulary, _) = read_vocab(&vocab_path)?;
            let file = File::open(model_path)
                .with_context(|| format!("cannot open model {}", model_path.display()))
                .or_usage()?;
            let (model, featurizer) =
                classifier::load_classifier(BufReader::new(file), &vocabulary.hash())
                    .or_usage()?;
            let mut rows = Vec::with_capacity(corpus.len());
            for doc in &corpus.documents {
                let features = featurizer.featurize(&doc.tokens);
                rows.push(model.predict_proba(&features).or_usage()?);
            }
            ScoreMatrix::new(ids.clone(), model.label_names().to_vec(), rows).or_internal()?
        }
        (None, None) => {
            return Err(CliError::usage(
                "predict needs either --model or --scores",
            ))
        }
    };

    let mut csv_bytes = Vec::new();
    write_scores(&matrix, &mut csv_bytes).or_internal()?;
    atomic_write(&out, &csv_bytes)?;

    if let Some(predictions_path) = &args.predictions {
        let mut bytes = Vec::new();
        for (id, row) in matrix.doc_ids.iter().zip(&matrix.scores) {
            let predicted = predict_labels(row, threshold);
            let ranked = rank_labels(row);
            let record = PredictionRecord {
                id,
                scores: row,
                predicted: predicted
                    .iter()
                    .map(|&l| matrix.label_names[l].as_str())
                    .collect(),
                ranked: ranked
                    .iter()
                    .map(|&l| matrix.label_names[l].as_str())
                    .collect(),
            };
            serde_json::to_writer(&mut bytes, &record).or_internal()?;
            bytes.push(b'\n');
        }
        atomic_write(predictions_path, &bytes)?;
    }
    eprintln!(
        "scored {} documents over {} labels (threshold {threshold})",
        matrix.n_docs(),
        matrix.n_labels()
    );
    Ok(())
}
