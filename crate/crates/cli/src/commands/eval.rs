//! `occnlp eval`: label metrics from a score matrix (or a model applied
//! on the fly) and/or ROUGE for generated-vs-reference summaries.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufReader, Write};

use anyhow::Context;

use occnlp::classifier::{self, import_scores, ScoreMatrix};
use occnlp::corpus::{normalize, Corpus, TokenizerConfig};
use occnlp::metrics::{evaluate, LabeledScores, SummaryPair};
use occnlp::LabelId;

use crate::config::RunConfig;
use crate::errors::{CliError, IntoUsage};
use crate::files::{atomic_write, read_corpus, read_vocab, select_split};
use crate::EvalArgs;

pub fn run(args: &EvalArgs, config: &RunConfig) -> Result<(), CliError> {
    let input = config.path(
        args.input.as_deref(),
        config.paths.corpus.as_deref(),
        "input corpus",
    )?;
    let out = config.path(
        args.out.as_deref(),
        config.paths.report.as_deref(),
        "report output (--out)",
    )?;
    let cutoffs = config.cutoffs(&args.cutoffs)?;
    let threshold = config.threshold(args.threshold)?;
    let corpus = read_corpus(&input)?;
    let corpus = select_split(&corpus, args.split.as_deref())?;
    if corpus.is_empty() {
        return Err(CliError::usage("no documents to evaluate"));
    }

    let matrix = load_scores(args, config, &corpus)?;
    let labeled = match &matrix {
        Some(matrix) => labeled_scores(&corpus, matrix),
        None => Vec::new(),
    };

    let summaries = if args.summaries {
        let pairs = summary_pairs(&corpus);
        if pairs.is_empty() {
            return Err(CliError::usage(
                "--summaries given but no document has both generated_summary and reference_summary",
            ));
        }
        pairs
    } else {
        Vec::new()
    };

    if labeled.is_empty() && summaries.is_empty() {
        return Err(CliError::usage(
            "nothing to evaluate: provide --scores or --model for labels, and/or --summaries",
        ));
    }

    let report = evaluate(&labeled, &summaries, &cutoffs, threshold).or_usage()?;
    atomic_write(&out, report.to_csv().as_bytes())?;
    std::io::stdout()
        .write_all(report.to_table().as_bytes())
        .or_internal()?;
    Ok(())
}

fn load_scores(
    args: &EvalArgs,
    config: &RunConfig,
    corpus: &Corpus,
) -> Result<Option<ScoreMatrix>, CliError> {
    let ids: Vec<String> = corpus.documents.iter().map(|d| d.id.clone()).collect();
    match (&args.scores, &args.model) {
        (Some(path), _) => {
            let file = File::open(path)
                .with_context(|| format!("cannot open scores {}", path.display()))
                .or_usage()?;
            let matrix = import_scores(BufReader::new(file)).or_usage()?;
            Ok(Some(matrix.aligned_to(&ids).or_usage()?))
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
            Ok(Some(
                ScoreMatrix::new(ids, model.label_names().to_vec(), rows).or_internal()?,
            ))
        }
        (None, None) => Ok(None),
    }
}

/// Join corpus ground truth onto the score matrix label space.
///
/// True labels absent from the matrix get synthetic ids past `L`; they
/// can never be predicted, which correctly penalizes recall.
fn labeled_scores(corpus: &Corpus, matrix: &ScoreMatrix) -> Vec<LabeledScores> {
    let mut extra_ids: std::collections::HashMap<&str, LabelId> = std::collections::HashMap::new();
    corpus
        .documents
        .iter()
        .zip(&matrix.scores)
        .map(|(doc, row)| {
            let truth: BTreeSet<LabelId> = doc
                .labels
                .iter()
                .map(|&l| {
                    let name = corpus.label_names[l].as_str();
                    match matrix.label_names.iter().position(|n| n == name) {
                        Some(col) => col,
                        None => {
                            let next = matrix.label_names.len() + extra_ids.len();
                            *extra_ids.entry(name).or_insert(next)
                        }
                    }
                })
                .collect();
            LabeledScores {
                doc_id: doc.id.clone(),
                scores: row.clone(),
                truth,
            }
        })
        .collect()
}

fn summary_pairs(corpus: &Corpus) -> Vec<SummaryPair> {
    // ROUGE tokenization: lowercase, edge punctuation stripped, no stopwords
    let tokenizer = TokenizerConfig::default();
    corpus
        .documents
        .iter()
        .filter_map(|doc| {
            let candidate = doc.generated_summary.as_deref()?;
            let reference = doc.reference_summary.as_deref()?;
            Some(SummaryPair {
                doc_id: doc.id.clone(),
                candidate: normalize(candidate, &tokenizer),
                reference: normalize(reference, &tokenizer),
            })
        })
        .collect()
}
