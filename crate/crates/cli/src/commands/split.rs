//! `occnlp split`: tag each document with train/val/test from a seeded
//! shuffle and floor-cut ratios.

use occnlp::corpus;

use crate::config::RunConfig;
use crate::errors::{CliError, IntoUsage};
use crate::files::{atomic_write, read_corpus};
use crate::SplitArgs;

pub fn run(args: &SplitArgs, config: &RunConfig, seed: Option<u64>) -> Result<(), CliError> {
    let input = config.path(
        args.input.as_deref(),
        config.paths.corpus.as_deref(),
        "input corpus",
    )?;
    let out = config.path(args.out.as_deref(), None, "output (--out)")?;
    let spec = config.split_spec(&args.ratios, seed)?;
    spec.validate().or_usage()?;

    let corpus = read_corpus(&input)?;
    let tagged = corpus::assign_splits(&corpus, &spec).or_usage()?;
    let mut bytes = Vec::new();
    corpus::write_jsonl(&tagged, &mut bytes).or_internal()?;
    atomic_write(&out, &bytes)?;

    let count = |tag| tagged.with_split(tag).count();
    eprintln!(
        "split {} documents: {} train / {} val / {} test (seed {})",
        tagged.len(),
        count(corpus::SplitTag::Train),
        count(corpus::SplitTag::Val),
        count(corpus::SplitTag::Test),
        spec.seed
    );
    Ok(())
}
