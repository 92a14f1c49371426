use std::collections::BTreeMap;

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::state::StateVector;
use crate::bits::format_bits;
use crate::error::{Error, Result};

/// Probabilities below this are treated as structural zeros when listing outcomes.
pub const PROBABILITY_FLOOR: f64 = 1e-14;

/// Exact marginal distribution over a subset of qubits. Outcome index bits
/// follow the order of `subset`, first qubit most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementDistribution {
    subset: Vec<usize>,
    probs: Vec<f64>,
}

impl MeasurementDistribution {
    pub fn from_probabilities(subset: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != 1 << subset.len() {
            return Err(Error::InvalidArgument(
                "probability table does not match the measured subset".into(),
            ));
        }
        Ok(Self { subset, probs })
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn width(&self) -> usize {
        self.subset.len()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob_index(&self, outcome: usize) -> f64 {
        self.probs[outcome]
    }

    /// Probability of a bitstring outcome such as `"0110"`.
    pub fn prob(&self, outcome: &str) -> Result<f64> {
        Ok(self.probs[crate::bits::parse_bits(outcome, self.width())?])
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Mass on outcomes accepted by `good`.
    pub fn mass(&self, good: impl Fn(usize) -> bool) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .filter(|(i, _)| good(*i))
            .map(|(_, p)| p)
            .sum()
    }

    /// Outcomes with non-negligible probability, keyed by bitstring.
    pub fn support(&self) -> BTreeMap<String, f64> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| **p > PROBABILITY_FLOOR)
            .map(|(i, p)| (format_bits(i, self.width()), *p))
            .collect()
    }

    /// Most likely outcome among those accepted by `good`, if any has mass.
    pub fn most_likely(&self, good: impl Fn(usize) -> bool) -> Option<usize> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(i, p)| good(*i) && **p > PROBABILITY_FLOOR)
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
    }
}

/// Serializes as `{outcome: probability}` over the support, rounded to 12
/// decimal places so repeated runs print byte-identical output.
impl Serialize for MeasurementDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let support = self.support();
        let mut map = serializer.serialize_map(Some(support.len()))?;
        for (k, v) in support {
            map.serialize_entry(&k, &round_probability(v))?;
        }
        map.end()
    }
}

pub fn round_probability(p: f64) -> f64 {
    (p * 1e12).round() / 1e12
}

/// Marginal distribution of `subset`, summing `|amp|^2` over the other qubits.
pub fn measure_distribution(state: &StateVector, subset: &[usize]) -> Result<MeasurementDistribution> {
    let q = state.q();
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != subset.len() || subset.iter().any(|i| *i >= q) {
        return Err(Error::IndexOutOfRange(format!(
            "measured subset {subset:?} on {q} qubits"
        )));
    }
    let mut probs = vec![0.0; 1 << subset.len()];
    for (i, a) in state.amplitudes().iter().enumerate() {
        let outcome = subset.iter().fold(0, |acc, &qb| (acc << 1) | ((i >> (q - 1 - qb)) & 1));
        probs[outcome] += a.norm_sqr();
    }
    Ok(MeasurementDistribution {
        subset: subset.to_vec(),
        probs,
    })
}

/// Draws `shots` outcomes from `dist` with a generator seeded by `seed`.
/// Outcomes of zero probability are never drawn.
pub fn sample(dist: &MeasurementDistribution, shots: u64, seed: u64) -> Result<BTreeMap<String, u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(dist, shots, &mut rng)
}

pub fn sample_with<R: rand::Rng + ?Sized>(
    dist: &MeasurementDistribution,
    shots: u64,
    rng: &mut R,
) -> Result<BTreeMap<String, u64>> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let mut counts = vec![0u64; dist.probs.len()];
    let sampler = OutcomeSampler::new(dist)?;
    for _ in 0..shots {
        counts[sampler.draw(rng)] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .map(|(i, c)| (format_bits(i, dist.width()), c))
        .collect())
}

/// Reusable weighted sampler over outcome indices.
pub struct OutcomeSampler {
    index: WeightedIndex<f64>,
}

impl OutcomeSampler {
    pub fn new(dist: &MeasurementDistribution) -> Result<Self> {
        let weights = dist.probs.iter().map(|p| if *p > PROBABILITY_FLOOR { *p } else { 0.0 });
        let index = WeightedIndex::new(weights).map_err(|e| Error::InvalidArgument(format!("cannot sample: {e}")))?;
        Ok(Self { index })
    }

    pub fn draw<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.index.sample(rng)
    }
}
