use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::EvalError;
use crate::Scalar;

pub const MAX_ORDER: usize = 4;

/// Corpus BLEU with its modified n-gram precisions and brevity penalty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BleuScore<F> {
    /// Modified precisions for n = 1..=4.
    pub precisions: [F; MAX_ORDER],
    pub bp: F,
    pub bleu: F,
    pub candidate_len: usize,
    pub reference_len: usize,
}

fn ngram_counts<T: Eq + Hash>(tokens: &[T], n: usize) -> HashMap<&[T], usize> {
    let mut counts = HashMap::new();
    if tokens.len() >= n {
        for w in tokens.windows(n) {
            *counts.entry(w).or_insert(0) += 1;
        }
    }
    counts
}

/// Corpus-level BLEU-4 with clipped counts, one reference per candidate and
/// no smoothing: any zero precision gives a score of zero.
pub fn bleu<F: Scalar, T: Eq + Hash, S: AsRef<[T]>>(
    candidates: &[S],
    references: &[S],
) -> Result<BleuScore<F>, EvalError> {
    if candidates.is_empty() {
        return Err(EvalError::EmptyCorpus);
    }
    if candidates.len() != references.len() {
        return Err(EvalError::LengthMismatch {
            left: candidates.len(),
            right: references.len(),
        });
    }
    let mut matched = [0usize; MAX_ORDER];
    let mut total = [0usize; MAX_ORDER];
    let (mut c_len, mut r_len) = (0usize, 0usize);
    for (cand, reference) in candidates.iter().zip(references) {
        let (cand, reference) = (cand.as_ref(), reference.as_ref());
        c_len += cand.len();
        r_len += reference.len();
        for n in 1..=MAX_ORDER {
            let c = ngram_counts(cand, n);
            let r = ngram_counts(reference, n);
            total[n - 1] += cand.len().saturating_sub(n - 1);
            matched[n - 1] += c
                .iter()
                .map(|(g, &k)| k.min(r.get(g).copied().unwrap_or(0)))
                .sum::<usize>();
        }
    }
    let f = |x: usize| F::from_usize(x).expect("count fits in float");
    let mut precisions = [F::zero(); MAX_ORDER];
    for n in 0..MAX_ORDER {
        if total[n] > 0 {
            precisions[n] = f(matched[n]) / f(total[n]);
        }
    }
    let bp = if c_len == 0 {
        if r_len == 0 {
            F::one()
        } else {
            F::zero()
        }
    } else if c_len >= r_len {
        F::one()
    } else {
        (F::one() - f(r_len) / f(c_len)).exp()
    };
    let bleu = if precisions.iter().any(|p| p.is_zero()) {
        F::zero()
    } else {
        let mean_log = precisions.iter().fold(F::zero(), |acc, p| acc + p.ln()) / f(MAX_ORDER);
        bp * mean_log.exp()
    };
    Ok(BleuScore {
        precisions,
        bp,
        bleu,
        candidate_len: c_len,
        reference_len: r_len,
    })
}
