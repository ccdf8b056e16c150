//! `occnlp train-lda`, `topics`, and `infer-topics`.

use std::fs::File;
use std::io::{BufReader, Write};

use anyhow::Context;
use serde::Serialize;

use occnlp::lda::{self, rank_topics};
use occnlp::vocab::{config_hash, encode_corpus};
use occnlp::TokenId;

use crate::config::RunConfig;
use crate::errors::{CliError, IntoUsage};
use crate::files::{atomic_write, read_corpus, read_vocab, select_split};
use crate::{InferTopicsArgs, TopicsArgs, TrainLdaArgs};

pub fn train(args: &TrainLdaArgs, config: &RunConfig, seed: Option<u64>) -> Result<(), CliError> {
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
    let lda_config = config.lda_config(args.topics, args.alpha, args.beta, args.iterations, seed);
    lda_config.validate().or_usage()?;

    let corpus = read_corpus(&input)?;
    let corpus = select_split(&corpus, args.split.as_deref())?;
    let (vocabulary, _) = read_vocab(&vocab_path)?;
    let docs: Vec<Vec<TokenId>> = corpus
        .documents
        .iter()
        .filter(|d| !d.tokens.is_empty())
        .map(|d| d.tokens.clone())
        .collect();
    if docs.is_empty() {
        return Err(CliError::usage(
            "no tokenized documents to train on (run ingest first)",
        ));
    }
    let model = lda::fit_gibbs(&docs, vocabulary.len(), &lda_config).or_usage()?;
    let mut bytes = Vec::new();
    lda::save_model(&model, &vocabulary.hash(), &mut bytes).or_internal()?;
    atomic_write(&out, &bytes)?;
    eprintln!(
        "fitted {} topics on {} documents ({} sweeps, seed {})",
        lda_config.n_topics,
        docs.len(),
        lda_config.iterations,
        lda_config.seed
    );
    Ok(())
}

pub fn topics(args: &TopicsArgs, config: &RunConfig) -> Result<(), CliError> {
    let model_path = config.path(
        args.model.as_deref(),
        config.paths.model.as_deref(),
        "model",
    )?;
    let vocab_path = config.path(
        args.vocab.as_deref(),
        config.paths.vocab.as_deref(),
        "vocabulary",
    )?;
    if args.top_n < 1 {
        return Err(CliError::usage("--top-n must be >= 1"));
    }
    let (vocabulary, _) = read_vocab(&vocab_path)?;
    let file = File::open(&model_path)
        .with_context(|| format!("cannot open model {}", model_path.display()))
        .or_usage()?;
    let model = lda::load_model(BufReader::new(file), &vocabulary.hash()).or_usage()?;

    let mut output = String::new();
    for topic in 0..model.n_topics() {
        let words = model.top_words(&vocabulary, topic, args.top_n).or_internal()?;
        let listed: Vec<&str> = words.iter().map(|(w, _)| w.as_str()).collect();
        output.push_str(&format!("topic {topic}: {}\n", listed.join(", ")));
    }
    match &args.out {
        Some(path) => atomic_write(path, output.as_bytes())?,
        None => {
            std::io::stdout()
                .write_all(output.as_bytes())
                .or_internal()?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct InferredTopics<'a> {
    id: &'a str,
    topics: Vec<usize>,
    probabilities: Vec<f64>,
}

pub fn infer(args: &InferTopicsArgs, config: &RunConfig, seed: Option<u64>) -> Result<(), CliError> {
    let model_path = config.path(
        args.model.as_deref(),
        config.paths.model.as_deref(),
        "model",
    )?;
    let vocab_path = config.path(
        args.vocab.as_deref(),
        config.paths.vocab.as_deref(),
        "vocabulary",
    )?;
    let input = config.path(
        args.input.as_deref(),
        config.paths.corpus.as_deref(),
        "input corpus",
    )?;
    let out = config.path(args.out.as_deref(), None, "output (--out)")?;
    let (vocabulary, vocab_config_hash) = read_vocab(&vocab_path)?;
    let file = File::open(&model_path)
        .with_context(|| format!("cannot open model {}", model_path.display()))
        .or_usage()?;
    let model = lda::load_model(BufReader::new(file), &vocabulary.hash()).or_usage()?;
    if args.top_k > model.n_topics() {
        return Err(CliError::usage(format!(
            "--top-k {} exceeds the model's {} topics",
            args.top_k,
            model.n_topics()
        )));
    }
    let corpus = read_corpus(&input)?;
    let corpus = if corpus.documents.iter().all(|d| d.tokens.is_empty()) {
        // raw input: encode against the vocabulary, but only when the
        // active tokenizer config matches what built the vocabulary
        let tokenizer = config.tokenizer_config(false, false, &[], None, None);
        if config_hash(&tokenizer) != vocab_config_hash {
            return Err(CliError::usage(
                "input is untokenized and the active tokenizer config does not match the vocabulary header; re-run ingest or supply the original config",
            ));
        }
        encode_corpus(&corpus, &vocabulary, &tokenizer)
    } else {
        corpus
    };

    let seed = seed.or(config.lda.seed).or(config.seed).unwrap_or(0);
    let mut bytes = Vec::new();
    for (i, doc) in corpus.documents.iter().enumerate() {
        // distinct per-document seeds keep documents independent yet reproducible
        let dist = model.infer(&doc.tokens, args.iterations, seed.wrapping_add(i as u64));
        let top = rank_topics(&dist, args.top_k).or_usage()?;
        let record = InferredTopics {
            id: &doc.id,
            probabilities: top.iter().map(|&k| dist[k]).collect(),
            topics: top,
        };
        serde_json::to_writer(&mut bytes, &record).or_internal()?;
        bytes.push(b'\n');
    }
    atomic_write(&out, &bytes)?;
    eprintln!(
        "inferred top-{} topics for {} documents",
        args.top_k,
        corpus.len()
    );
    Ok(())
}
