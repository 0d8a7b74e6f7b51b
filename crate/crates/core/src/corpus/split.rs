use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::CorpusError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ratios {
    pub train: f64,
    pub valid: f64,
    pub test: f64,
}

impl Default for Ratios {
    fn default() -> Self {
        Self {
            train: 0.70,
            valid: 0.15,
            test: 0.15,
        }
    }
}

impl Ratios {
    pub fn new(train: f64, valid: f64, test: f64) -> Result<Self, CorpusError> {
        let r = Self { train, valid, test };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<(), CorpusError> {
        let parts = [self.train, self.valid, self.test];
        if parts.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(CorpusError::InvalidRatios(format!("{parts:?} has a negative or non-finite part")));
        }
        let sum: f64 = parts.iter().sum();
        if (sum - 1.0).abs() > 1e-6 {
            return Err(CorpusError::InvalidRatios(format!("{parts:?} sums to {sum}, not 1")));
        }
        Ok(())
    }
}

impl FromStr for Ratios {
    type Err = CorpusError;

    /// `"0.7,0.15,0.15"`.
    fn from_str(s: &str) -> Result<Self, CorpusError> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| CorpusError::InvalidRatios(format!("`{s}`: {e}")))?;
        match parts[..] {
            [a, b, c] => Ratios::new(a, b, c),
            _ => Err(CorpusError::InvalidRatios(format!("`{s}`: expected three comma-separated numbers"))),
        }
    }
}

/// Sample positions per partition, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitIndices {
    pub seed: u64,
    pub train: Vec<usize>,
    pub valid: Vec<usize>,
    pub test: Vec<usize>,
}

/// Seeded shuffle, then `floor(n * ratio)` items each for valid and test and
/// the remainder for train.
pub fn split_indices(n: usize, ratios: &Ratios, seed: u64) -> Result<SplitIndices, CorpusError> {
    ratios.validate()?;
    if n < 3 {
        return Err(CorpusError::TooFewSamples(n));
    }
    // the epsilon keeps products like 100 * 0.29 = 28.999999999999996 from
    // losing an item
    let size = |r: f64| (n as f64 * r + 1e-9).floor() as usize;
    let (n_valid, n_test) = (size(ratios.valid), size(ratios.test));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let n_train = n - n_valid - n_test;
    let part = |range: std::ops::Range<usize>| {
        let mut v = order[range].to_vec();
        v.sort_unstable();
        v
    };
    Ok(SplitIndices {
        seed,
        train: part(0..n_train),
        valid: part(n_train..n_train + n_valid),
        test: part(n_train + n_valid..n),
    })
}

/// (train, valid, test) copies of `items`.
pub fn split_corpus<T: Clone>(
    items: &[T],
    ratios: &Ratios,
    seed: u64,
) -> Result<(Vec<T>, Vec<T>, Vec<T>), CorpusError> {
    let idx = split_indices(items.len(), ratios, seed)?;
    let pick = |ix: &[usize]| ix.iter().map(|&i| items[i].clone()).collect();
    Ok((pick(&idx.train), pick(&idx.valid), pick(&idx.test)))
}
