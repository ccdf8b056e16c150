//! File helpers shared by the subcommands: atomic writes and the
//! common read paths with usage-classified errors.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;

use anyhow::Context;

use occnlp::corpus::{parse_jsonl, Corpus, SplitTag};
use occnlp::vocab::Vocabulary;

use crate::errors::{CliError, IntoUsage};

/// Write bytes to a temp file in the destination directory, then
/// rename into place. A failed command never leaves a partial output.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(dir) => tempfile::NamedTempFile::new_in(dir),
        None => tempfile::NamedTempFile::new_in("."),
    }
    .with_context(|| format!("cannot create temp file next to {}", path.display()))
    .or_internal()?;
    tmp.write_all(bytes)
        .context("cannot write output")
        .or_internal()?;
    tmp.persist(path)
        .with_context(|| format!("cannot move output into place at {}", path.display()))
        .or_internal()?;
    Ok(())
}

pub fn read_corpus(path: &Path) -> Result<Corpus, CliError> {
    let file = File::open(path)
        .with_context(|| format!("cannot open corpus {}", path.display()))
        .or_usage()?;
    parse_jsonl(BufReader::new(file))
        .with_context(|| format!("cannot parse corpus {}", path.display()))
        .or_usage()
}

pub fn read_vocab(path: &Path) -> Result<(Vocabulary, String), CliError> {
    let file = File::open(path)
        .with_context(|| format!("cannot open vocabulary {}", path.display()))
        .or_usage()?;
    Vocabulary::load(BufReader::new(file))
        .with_context(|| format!("cannot parse vocabulary {}", path.display()))
        .or_usage()
}

pub fn parse_split_tag(name: &str) -> Result<SplitTag, CliError> {
    match name {
        "train" => Ok(SplitTag::Train),
        "val" => Ok(SplitTag::Val),
        "test" => Ok(SplitTag::Test),
        other => Err(CliError::usage(format!(
            "unknown split \"{other}\" (expected train, val, or test)"
        ))),
    }
}

/// Restrict a corpus to one split when requested.
pub fn select_split(corpus: &Corpus, split: Option<&str>) -> Result<Corpus, CliError> {
    match split {
        None => Ok(corpus.clone()),
        Some(name) => {
            let tag = parse_split_tag(name)?;
            let documents = corpus.with_split(tag).cloned().collect();
            Ok(Corpus {
                documents,
                label_names: corpus.label_names.clone(),
            })
        }
    }
}
