//! Seeded shot sampling from exact outcome distributions.

use std::collections::BTreeMap;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::ProbabilityMap;

/// Draws `shots` bitstrings from `dist` with a ChaCha8 generator seeded by `seed`.
pub fn sample_outcomes(dist: &ProbabilityMap, shots: usize, seed: u64) -> Result<Vec<String>> {
    if shots == 0 {
        return Err(Error::Invalid("shot count must be at least 1".into()));
    }
    let (keys, weights): (Vec<&str>, Vec<f64>) = dist.iter().unzip();
    let index = WeightedIndex::new(&weights)
        .map_err(|e| Error::Invalid(format!("cannot sample distribution: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..shots).map(|_| keys[index.sample(&mut rng)].to_string()).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleSummary {
    pub shots: usize,
    pub seed: u64,
    pub counts: BTreeMap<String, usize>,
    pub frequencies: BTreeMap<String, f64>,
    pub exact: BTreeMap<String, f64>,
}

/// Samples and tallies; every key of `dist` appears in the summary.
pub fn sample_summary(dist: &ProbabilityMap, shots: usize, seed: u64) -> Result<SampleSummary> {
    let outcomes = sample_outcomes(dist, shots, seed)?;
    let mut counts: BTreeMap<String, usize> = dist.iter().map(|(k, _)| (k.to_string(), 0)).collect();
    for o in outcomes {
        *counts.entry(o).or_default() += 1;
    }
    let frequencies = counts
        .iter()
        .map(|(k, c)| (k.clone(), *c as f64 / shots as f64))
        .collect();
    let exact = dist.iter().map(|(k, p)| (k.to_string(), p)).collect();
    Ok(SampleSummary {
        shots,
        seed,
        counts,
        frequencies,
        exact,
    })
}
