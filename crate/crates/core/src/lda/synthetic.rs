//! Synthetic corpus generation following the LDA generative story;
//! doubles as the recovery oracle for the sampler.
//!
//! Per document: draw a length from a Poisson (resampling zero), draw a
//! topic mixture from a symmetric Dirichlet, then per token draw a
//! topic from the mixture and a word from that topic's distribution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Poisson};

use super::LdaError;
use crate::TokenId;

/// Parameters of the generative process.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub n_topics: usize,
    pub vocab_size: usize,
    pub n_docs: usize,
    /// Mean document length.
    pub poisson_lambda: f64,
    /// Symmetric document-topic Dirichlet parameter.
    pub alpha: f64,
    /// Topic-word distributions; drawn from Dirichlet(0.1) when absent.
    pub true_phi: Option<Vec<Vec<f64>>>,
    pub seed: u64,
}

impl SyntheticSpec {
    pub fn validate(&self) -> Result<(), LdaError> {
        if self.n_topics < 1 || self.vocab_size < 1 || self.n_docs < 1 {
            return Err(LdaError::InvalidSyntheticSpec(
                "n_topics, vocab_size, n_docs must all be >= 1".into(),
            ));
        }
        if !self.poisson_lambda.is_finite() || self.poisson_lambda <= 0.0 {
            return Err(LdaError::InvalidSyntheticSpec(
                "poisson_lambda must be finite and > 0".into(),
            ));
        }
        if !self.alpha.is_finite() || self.alpha <= 0.0 {
            return Err(LdaError::InvalidSyntheticSpec(
                "alpha must be finite and > 0".into(),
            ));
        }
        if let Some(phi) = &self.true_phi {
            if phi.len() != self.n_topics {
                return Err(LdaError::InvalidSyntheticSpec(format!(
                    "true_phi has {} rows, expected {}",
                    phi.len(),
                    self.n_topics
                )));
            }
            for (k, row) in phi.iter().enumerate() {
                if row.len() != self.vocab_size {
                    return Err(LdaError::InvalidSyntheticSpec(format!(
                        "true_phi row {k} has length {}, expected {}",
                        row.len(),
                        self.vocab_size
                    )));
                }
                let sum: f64 = row.iter().sum();
                if (sum - 1.0).abs() > 1e-9 {
                    return Err(LdaError::InvalidSyntheticSpec(format!(
                        "true_phi row {k} sums to {sum}, expected 1"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Generated documents plus the true latent distributions that
/// produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticCorpus {
    pub docs: Vec<Vec<TokenId>>,
    pub theta: Vec<Vec<f64>>,
    pub phi: Vec<Vec<f64>>,
}

fn dirichlet_symmetric<R: Rng>(dim: usize, alpha: f64, rng: &mut R) -> Vec<f64> {
    let gamma = Gamma::new(alpha, 1.0).expect("alpha validated positive");
    let mut draws: Vec<f64> = (0..dim).map(|_| gamma.sample(rng)).collect();
    let sum: f64 = draws.iter().sum();
    if sum > 0.0 {
        for d in draws.iter_mut() {
            *d /= sum;
        }
    } else {
        // all gamma draws underflowed; fall back to uniform
        draws.fill(1.0 / dim as f64);
    }
    draws
}

fn sample_categorical<R: Rng>(probs: &[f64], rng: &mut R) -> usize {
    let mut u = rng.random::<f64>() * probs.iter().sum::<f64>();
    for (i, &p) in probs.iter().enumerate() {
        u -= p;
        if u <= 0.0 {
            return i;
        }
    }
    probs.len() - 1
}

/// Run the generative process; deterministic given the spec seed.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<SyntheticCorpus, LdaError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let phi = match &spec.true_phi {
        Some(rows) => rows.clone(),
        None => (0..spec.n_topics)
            .map(|_| dirichlet_symmetric(spec.vocab_size, 0.1, &mut rng))
            .collect(),
    };
    let poisson = Poisson::new(spec.poisson_lambda)
        .map_err(|e| LdaError::InvalidSyntheticSpec(e.to_string()))?;
    let mut docs = Vec::with_capacity(spec.n_docs);
    let mut thetas = Vec::with_capacity(spec.n_docs);
    for _ in 0..spec.n_docs {
        let mut length = 0usize;
        while length == 0 {
            length = poisson.sample(&mut rng) as usize;
        }
        let theta = dirichlet_symmetric(spec.n_topics, spec.alpha, &mut rng);
        let mut doc = Vec::with_capacity(length);
        for _ in 0..length {
            let topic = sample_categorical(&theta, &mut rng);
            let word = sample_categorical(&phi[topic], &mut rng);
            doc.push(word as TokenId);
        }
        docs.push(doc);
        thetas.push(theta);
    }
    Ok(SyntheticCorpus {
        docs,
        theta: thetas,
        phi,
    })
}

/// Topic-word distributions with pairwise disjoint uniform supports of
/// `support` words each; requires `n_topics * support <= vocab_size`.
pub fn disjoint_support_phi(n_topics: usize, vocab_size: usize, support: usize) -> Vec<Vec<f64>> {
    assert!(n_topics * support <= vocab_size, "supports do not fit");
    (0..n_topics)
        .map(|k| {
            let mut row = vec![0.0; vocab_size];
            row[k * support..(k + 1) * support].fill(1.0 / support as f64);
            row
        })
        .collect()
}
