//! `occnlp ingest`: parse raw JSONL, dedup, apply filters, build the
//! vocabulary, encode documents, and write both outputs atomically.

use occnlp::corpus::{self, RequiredField};
use occnlp::vocab;

use crate::config::RunConfig;
use crate::errors::{CliError, IntoUsage};
use crate::files::{atomic_write, read_corpus};
use crate::IngestArgs;

pub fn run(args: &IngestArgs, config: &RunConfig) -> Result<(), CliError> {
    let input = config.path(
        args.input.as_deref(),
        config.paths.corpus.as_deref(),
        "input corpus",
    )?;
    let out = config.path(args.out.as_deref(), None, "output (--out)")?;
    let vocab_path = config.path(
        args.vocab.as_deref(),
        config.paths.vocab.as_deref(),
        "vocabulary output (--vocab)",
    )?;
    let tokenizer = config.tokenizer_config(
        args.no_lowercase,
        args.keep_punctuation,
        &args.stopwords,
        args.min_token_count,
        args.max_doc_fraction,
    );
    tokenizer.validate().or_usage()?;
    let required: Vec<RequiredField> = args
        .require
        .iter()
        .map(|name| {
            RequiredField::parse(name)
                .ok_or_else(|| CliError::usage(format!("unknown required field \"{name}\"")))
        })
        .collect::<Result<_, _>>()?;

    let corpus = read_corpus(&input)?;
    let corpus = corpus::dedup(&corpus, &tokenizer);
    let corpus = corpus::filter_missing(&corpus, &required);
    if corpus.is_empty() {
        return Err(CliError::usage(
            "no documents survive cleaning; nothing to ingest",
        ));
    }
    let vocabulary = vocab::build_vocabulary(&corpus, &tokenizer).or_usage()?;
    let mut encoded = vocab::encode_corpus(&corpus, &vocabulary, &tokenizer);
    if let Some(max_tokens) = args.max_tokens {
        encoded = corpus::filter_max_length(&encoded, max_tokens);
    }

    let mut corpus_bytes = Vec::new();
    corpus::write_jsonl(&encoded, &mut corpus_bytes).or_internal()?;
    let mut vocab_bytes = Vec::new();
    vocabulary
        .save(&mut vocab_bytes, &vocab::config_hash(&tokenizer))
        .or_internal()?;
    atomic_write(&out, &corpus_bytes)?;
    atomic_write(&vocab_path, &vocab_bytes)?;
    eprintln!(
        "ingested {} documents, vocabulary of {} tokens",
        encoded.len(),
        vocabulary.len()
    );
    Ok(())
}
