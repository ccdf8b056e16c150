//! `occnlp` — occurrence-report NLP pipeline on the command line.
//!
//! Subcommands wire the library end to end: `ingest` (parse, clean,
//! tokenize), `split`, `train-lda` / `topics` / `infer-topics`,
//! `train-clf` / `predict`, and `eval`. Every command is deterministic
//! given its config and seed, and writes outputs atomically
//! (temp file + rename), so a nonzero exit never leaves partial files.
//!
//! Exit codes: 0 success, 1 internal failure, 2 usage or validation
//! error (bad flags, malformed inputs, missing files).

mod commands;
mod config;
mod errors;
mod files;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::RunConfig;
use errors::CliError;

#[derive(Parser)]
#[command(name = "occnlp", version, about = "Occurrence-report NLP toolkit")]
struct Cli {
    /// TOML run configuration; explicit flags override file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override every seed in the active configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse raw JSONL, dedup, filter, tokenize; write processed corpus + vocabulary.
    Ingest(IngestArgs),
    /// Annotate documents with train/val/test tags from seeded ratios.
    Split(SplitArgs),
    /// Fit the topic model by collapsed Gibbs sampling.
    TrainLda(TrainLdaArgs),
    /// Print the top-n words of every topic.
    Topics(TopicsArgs),
    /// Rank the top-k topics for each document.
    InferTopics(InferTopicsArgs),
    /// Train the one-vs-rest linear classifier.
    TrainClf(TrainClfArgs),
    /// Emit per-document label probabilities, thresholded sets, rankings.
    Predict(PredictArgs),
    /// Evaluate label predictions and/or generated summaries.
    Eval(EvalArgs),
}

#[derive(Args)]
struct IngestArgs {
    /// Raw JSONL corpus.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Processed JSONL output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Vocabulary file output.
    #[arg(long)]
    vocab: Option<PathBuf>,
    /// Keep original casing.
    #[arg(long)]
    no_lowercase: bool,
    /// Keep edge punctuation on tokens.
    #[arg(long)]
    keep_punctuation: bool,
    /// Minimum corpus count for a token to enter the vocabulary.
    #[arg(long)]
    min_token_count: Option<usize>,
    /// Maximum fraction of documents a vocabulary token may appear in.
    #[arg(long)]
    max_doc_fraction: Option<f64>,
    /// Comma-separated stopwords to drop during tokenization.
    #[arg(long, value_delimiter = ',')]
    stopwords: Vec<String>,
    /// Required fields (comma-separated): text, labels, reference_summary.
    #[arg(long, value_delimiter = ',')]
    require: Vec<String>,
    /// Drop documents with more than this many tokens.
    #[arg(long)]
    max_tokens: Option<usize>,
}

#[derive(Args)]
struct SplitArgs {
    /// Processed JSONL corpus.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Annotated JSONL output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Train,validation,test ratios summing to 1.
    #[arg(long, value_delimiter = ',')]
    ratios: Vec<f64>,
}

#[derive(Args)]
struct TrainLdaArgs {
    /// Processed (and optionally split-annotated) JSONL corpus.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Vocabulary file written by ingest.
    #[arg(long)]
    vocab: Option<PathBuf>,
    /// Model JSON output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Number of topics.
    #[arg(long)]
    topics: Option<usize>,
    /// Document-topic Dirichlet parameter (default 50/K).
    #[arg(long)]
    alpha: Option<f64>,
    /// Topic-word Dirichlet parameter.
    #[arg(long)]
    beta: Option<f64>,
    /// Gibbs sweeps.
    #[arg(long)]
    iterations: Option<usize>,
    /// Train on one split only (train|val|test).
    #[arg(long)]
    split: Option<String>,
}

#[derive(Args)]
struct TopicsArgs {
    /// Fitted LDA model JSON.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Vocabulary file the model was trained against.
    #[arg(long)]
    vocab: Option<PathBuf>,
    /// Words to list per topic.
    #[arg(long, default_value_t = 10)]
    top_n: usize,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InferTopicsArgs {
    /// Fitted LDA model JSON.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Vocabulary file the model was trained against.
    #[arg(long)]
    vocab: Option<PathBuf>,
    /// JSONL documents to infer (tokenized, or raw text to encode).
    #[arg(long)]
    input: Option<PathBuf>,
    /// JSONL output with ranked topics per document.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Topics to report per document.
    #[arg(long, default_value_t = 3)]
    top_k: usize,
    /// Fold-in Gibbs sweeps per document.
    #[arg(long, default_value_t = 100)]
    iterations: usize,
}

#[derive(Args)]
struct TrainClfArgs {
    /// Processed (and optionally split-annotated) JSONL corpus.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Vocabulary file written by ingest.
    #[arg(long)]
    vocab: Option<PathBuf>,
    /// Classifier JSON output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// L2 regularization strength.
    #[arg(long)]
    l2_lambda: Option<f64>,
    /// Gradient-descent step size.
    #[arg(long)]
    learning_rate: Option<f64>,
    /// Maximum gradient-descent epochs.
    #[arg(long)]
    epochs: Option<usize>,
    /// Stop when the gradient norm falls below this.
    #[arg(long)]
    convergence_tol: Option<f64>,
    /// Train on one split only (train|val|test).
    #[arg(long)]
    split: Option<String>,
}

#[derive(Args)]
struct PredictArgs {
    /// Processed JSONL corpus to score.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Vocabulary file (required with --model).
    #[arg(long)]
    vocab: Option<PathBuf>,
    /// Trained classifier JSON.
    #[arg(long)]
    model: Option<PathBuf>,
    /// External score-matrix CSV; bypasses the local model.
    #[arg(long)]
    scores: Option<PathBuf>,
    /// Score-matrix CSV output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSONL output with thresholded sets and rankings per document.
    #[arg(long)]
    predictions: Option<PathBuf>,
    /// Probability threshold for label sets.
    #[arg(long)]
    threshold: Option<f64>,
    /// Score one split only (train|val|test).
    #[arg(long)]
    split: Option<String>,
}

#[derive(Args)]
struct EvalArgs {
    /// Processed JSONL corpus carrying ground truth (and summaries).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Score-matrix CSV with label predictions.
    #[arg(long)]
    scores: Option<PathBuf>,
    /// Trained classifier JSON; scores are computed on the fly.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Vocabulary file (required with --model).
    #[arg(long)]
    vocab: Option<PathBuf>,
    /// Report CSV output; table prints to stdout as well.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also evaluate generated_summary against reference_summary.
    #[arg(long)]
    summaries: bool,
    /// Ranking cutoffs for P@n/R@n/S@n.
    #[arg(long, value_delimiter = ',')]
    cutoffs: Vec<usize>,
    /// Probability threshold for exact match.
    #[arg(long)]
    threshold: Option<f64>,
    /// Evaluate one split only (train|val|test).
    #[arg(long)]
    split: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run_config = match RunConfig::load(cli.config.as_deref()) {
        Ok(cfg) => cfg,
        Err(err) => return report(err),
    };
    let result = match cli.command {
        Command::Ingest(args) => commands::ingest::run(&args, &run_config),
        Command::Split(args) => commands::split::run(&args, &run_config, cli.seed),
        Command::TrainLda(args) => commands::lda::train(&args, &run_config, cli.seed),
        Command::Topics(args) => commands::lda::topics(&args, &run_config),
        Command::InferTopics(args) => commands::lda::infer(&args, &run_config, cli.seed),
        Command::TrainClf(args) => commands::clf::train(&args, &run_config, cli.seed),
        Command::Predict(args) => commands::clf::predict(&args, &run_config),
        Command::Eval(args) => commands::eval::run(&args, &run_config),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => report(err),
    }
}

fn report(err: CliError) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(err.exit_code())
}
