//! Vocabulary construction, token encoding, and the vocabulary file
//! format (one token per line behind a versioned header).

use std::collections::HashMap;
use std::io::{self, BufRead, Write};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::corpus::{token_statistics, Corpus, TokenizerConfig};
use crate::TokenId;

const VOCAB_MAGIC: &str = "#occnlp-vocab";
const VOCAB_VERSION: &str = "v1";

#[derive(Debug, Error)]
pub enum VocabError {
    #[error("empty vocabulary: every token was filtered out")]
    EmptyVocabulary,
    #[error("bad vocabulary file header: {0}")]
    BadHeader(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Bidirectional token/id map with document frequencies.
///
/// Ids are dense `0..V` in lexicographic token order, so a vocabulary
/// built from the same corpus and config is always identical.
#[derive(Debug, Clone, PartialEq)]
pub struct Vocabulary {
    tokens: Vec<String>,
    ids: HashMap<String, TokenId>,
    doc_freq: Vec<u32>,
    n_docs: u32,
}

impl Vocabulary {
    fn from_tokens(tokens: Vec<String>, doc_freq: Vec<u32>, n_docs: u32) -> Self {
        let ids = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as TokenId))
            .collect();
        Vocabulary {
            tokens,
            ids,
            doc_freq,
            n_docs,
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn id(&self, token: &str) -> Option<TokenId> {
        self.ids.get(token).copied()
    }

    pub fn token(&self, id: TokenId) -> Option<&str> {
        self.tokens.get(id as usize).map(String::as_str)
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    /// Number of build-corpus documents containing the token.
    /// Zero for vocabularies loaded from a file.
    pub fn doc_freq(&self, id: TokenId) -> u32 {
        self.doc_freq.get(id as usize).copied().unwrap_or(0)
    }

    /// Size of the corpus the vocabulary was built from.
    pub fn n_docs(&self) -> u32 {
        self.n_docs
    }

    /// Encode a normalized token sequence; out-of-vocabulary tokens are
    /// dropped.
    pub fn encode(&self, tokens: &[String]) -> Vec<TokenId> {
        tokens.iter().filter_map(|t| self.id(t)).collect()
    }

    pub fn decode(&self, ids: &[TokenId]) -> Vec<&str> {
        ids.iter().filter_map(|&id| self.token(id)).collect()
    }

    /// Content hash over the ordered token list; model files store this
    /// and refuse to load against a different vocabulary.
    pub fn hash(&self) -> String {
        let mut hasher = Sha256::new();
        for token in &self.tokens {
            hasher.update(token.as_bytes());
            hasher.update(b"\n");
        }
        hex_string(&hasher.finalize())
    }

    /// Write the vocabulary file: a header line carrying the format
    /// version and tokenizer-config hash, then one token per line
    /// (line position = id).
    pub fn save<W: Write>(&self, mut writer: W, config_hash: &str) -> io::Result<()> {
        writeln!(writer, "{VOCAB_MAGIC} {VOCAB_VERSION} {config_hash}")?;
        for token in &self.tokens {
            writeln!(writer, "{token}")?;
        }
        Ok(())
    }

    /// Read a vocabulary file; returns the vocabulary and the config
    /// hash recorded in the header. Document frequencies are not part
    /// of the file format and come back as zeros.
    pub fn load<R: BufRead>(reader: R) -> Result<(Self, String), VocabError> {
        let mut lines = reader.lines();
        let header = lines
            .next()
            .ok_or_else(|| VocabError::BadHeader("empty file".into()))??;
        let parts: Vec<&str> = header.split_whitespace().collect();
        match parts.as_slice() {
            [VOCAB_MAGIC, VOCAB_VERSION, hash] => {
                let mut tokens = Vec::new();
                for line in lines {
                    let line = line?;
                    if !line.is_empty() {
                        tokens.push(line);
                    }
                }
                let n = tokens.len();
                Ok((
                    Vocabulary::from_tokens(tokens, vec![0; n], 0),
                    hash.to_string(),
                ))
            }
            [VOCAB_MAGIC, version, ..] => Err(VocabError::BadHeader(format!(
                "unsupported version {version}"
            ))),
            _ => Err(VocabError::BadHeader(header)),
        }
    }
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Stable hash of a tokenizer config, recorded in the vocabulary file
/// header so downstream commands can detect config drift.
pub fn config_hash(config: &TokenizerConfig) -> String {
    let stopwords: Vec<&str> = config.stopwords.iter().map(String::as_str).collect();
    let canonical = format!(
        "lowercase={};strip_punctuation={};stopwords={};min_token_count={};max_doc_fraction={:?}",
        config.lowercase,
        config.strip_punctuation,
        stopwords.join(","),
        config.min_token_count,
        config.max_doc_fraction,
    );
    let digest = Sha256::digest(canonical.as_bytes());
    hex_string(&digest)[..16].to_string()
}

/// Build a vocabulary from a corpus.
///
/// Keeps tokens with total count `>= min_token_count` and document
/// fraction `<= max_doc_fraction`; errors if nothing survives.
pub fn build_vocabulary(
    corpus: &Corpus,
    config: &TokenizerConfig,
) -> Result<Vocabulary, VocabError> {
    let (counts, doc_freq) = token_statistics(corpus, config);
    let n_docs = corpus.len() as u32;
    let mut kept: Vec<String> = counts
        .iter()
        .filter(|(token, &count)| {
            count >= config.min_token_count
                && doc_freq[*token] as f64 <= config.max_doc_fraction * n_docs as f64
        })
        .map(|(token, _)| token.clone())
        .collect();
    if kept.is_empty() {
        return Err(VocabError::EmptyVocabulary);
    }
    kept.sort();
    let freqs = kept.iter().map(|t| doc_freq[t] as u32).collect();
    Ok(Vocabulary::from_tokens(kept, freqs, n_docs))
}

/// Fill every document's `tokens` by normalizing and encoding its text.
pub fn encode_corpus(corpus: &Corpus, vocab: &Vocabulary, config: &TokenizerConfig) -> Corpus {
    let documents = corpus
        .documents
        .iter()
        .map(|doc| {
            let mut doc = doc.clone();
            doc.tokens = vocab.encode(&crate::corpus::normalize(&doc.text, config));
            doc
        })
        .collect();
    Corpus {
        documents,
        label_names: corpus.label_names.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Document;
    use proptest::prelude::*;
    use std::io::Cursor;

    fn corpus_of(texts: &[&str]) -> Corpus {
        let mut corpus = Corpus::default();
        for (i, t) in texts.iter().enumerate() {
            corpus.documents.push(Document::new(format!("d{i}"), *t));
        }
        corpus
    }

    #[test]
    fn single_doc_vocab_and_doc_freq() {
        let corpus = corpus_of(&["a a b"]);
        let vocab = build_vocabulary(&corpus, &TokenizerConfig::default()).unwrap();
        assert_eq!(vocab.tokens(), &["a".to_string(), "b".to_string()]);
        assert_eq!(vocab.doc_freq(0), 1);
        assert_eq!(vocab.doc_freq(1), 1);
        assert_eq!(vocab.n_docs(), 1);
    }

    #[test]
    fn min_token_count_filters_rare_tokens() {
        let corpus = corpus_of(&["a a b"]);
        let config = TokenizerConfig {
            min_token_count: 2,
            ..TokenizerConfig::default()
        };
        let vocab = build_vocabulary(&corpus, &config).unwrap();
        assert_eq!(vocab.tokens(), &["a".to_string()]);
    }

    #[test]
    fn max_doc_fraction_excludes_ubiquitous_tokens() {
        let corpus = corpus_of(&["common left", "common right"]);
        let config = TokenizerConfig {
            max_doc_fraction: 0.5,
            ..TokenizerConfig::default()
        };
        let vocab = build_vocabulary(&corpus, &config).unwrap();
        assert_eq!(vocab.tokens(), &["left".to_string(), "right".to_string()]);
    }

    #[test]
    fn all_filtered_is_an_error() {
        let corpus = corpus_of(&["a b"]);
        let config = TokenizerConfig {
            min_token_count: 3,
            ..TokenizerConfig::default()
        };
        assert!(matches!(
            build_vocabulary(&corpus, &config),
            Err(VocabError::EmptyVocabulary)
        ));
    }

    #[test]
    fn ids_are_lexicographic() {
        let corpus = corpus_of(&["zulu alpha mike"]);
        let vocab = build_vocabulary(&corpus, &TokenizerConfig::default()).unwrap();
        assert_eq!(vocab.id("alpha"), Some(0));
        assert_eq!(vocab.id("mike"), Some(1));
        assert_eq!(vocab.id("zulu"), Some(2));
    }

    #[test]
    fn save_load_round_trip_preserves_tokens_and_hash() {
        let corpus = corpus_of(&["hard landing gear", "gear collapse"]);
        let config = TokenizerConfig::default();
        let vocab = build_vocabulary(&corpus, &config).unwrap();
        let mut buf = Vec::new();
        vocab.save(&mut buf, &config_hash(&config)).unwrap();
        let (loaded, hash) = Vocabulary::load(Cursor::new(buf)).unwrap();
        assert_eq!(loaded.tokens(), vocab.tokens());
        assert_eq!(hash, config_hash(&config));
        assert_eq!(loaded.hash(), vocab.hash());
    }

    #[test]
    fn load_rejects_bad_header() {
        let err = Vocabulary::load(Cursor::new("not a vocab file\n")).unwrap_err();
        assert!(matches!(err, VocabError::BadHeader(_)));
    }

    #[test]
    fn config_hash_changes_with_config() {
        let base = TokenizerConfig::default();
        let other = TokenizerConfig {
            min_token_count: 2,
            ..TokenizerConfig::default()
        };
        assert_ne!(config_hash(&base), config_hash(&other));
        assert_eq!(config_hash(&base), config_hash(&base.clone()));
    }

    #[test]
    fn encode_drops_oov() {
        let corpus = corpus_of(&["a b"]);
        let vocab = build_vocabulary(&corpus, &TokenizerConfig::default()).unwrap();
        let encoded = vocab.encode(&["a".into(), "zzz".into(), "b".into()]);
        assert_eq!(encoded, vec![0, 1]);
    }

    proptest! {
        #[test]
        fn encode_decode_round_trips_in_vocab_tokens(
            words in proptest::collection::vec("[a-f]{1,4}", 1..30)
        ) {
            let text = words.join(" ");
            let corpus = corpus_of(&[text.as_str()]);
            let config = TokenizerConfig::default();
            let vocab = build_vocabulary(&corpus, &config).unwrap();
            let normalized = crate::corpus::normalize(&text, &config);
            let decoded = vocab.decode(&vocab.encode(&normalized));
            prop_assert_eq!(normalized, decoded.into_iter().map(String::from).collect::<Vec<_>>());
        }
    }
}
