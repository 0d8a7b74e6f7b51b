//! Extractive fact-fidelity metrics and BLEU.
//!
//! * RG: how many facts a system plan states and what fraction the table
//!   licenses (sequence, repeats counted).
//! * CS: precision/recall/F1 of the system fact set against the gold set.
//! * CO: `1 - dld / max(len)` between gold and system plans.
//!
//! Corpus aggregation: RG count, CS and CO are averaged per sample, RG
//! precision is pooled over all extracted facts, BLEU is corpus-level.

mod bleu;
mod dld;

use std::collections::HashSet;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::align::Aligner;
use crate::plan::ContentPlan;
use crate::table::GameTable;
use crate::Scalar;

pub use bleu::{bleu, BleuScore, MAX_ORDER};
pub use dld::dld;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("cannot evaluate an empty corpus")]
    EmptyCorpus,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

fn scalar<F: Scalar>(x: usize) -> F {
    F::from_usize(x).expect("count fits in float")
}

/// Similarity of two symbol sequences; 1 when both are empty, 0 when exactly
/// one is.
pub fn co_symbols<F: Scalar, T: PartialEq>(gold: &[T], sys: &[T]) -> F {
    match (gold.is_empty(), sys.is_empty()) {
        (true, true) => F::one(),
        (true, false) | (false, true) => F::zero(),
        _ => F::one() - scalar::<F>(dld(gold, sys)) / scalar(gold.len().max(sys.len())),
    }
}

pub fn co<F: Scalar>(gold: &ContentPlan, sys: &ContentPlan) -> F {
    co_symbols(&gold.keys(), &sys.keys())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CsScore<F> {
    pub precision: F,
    pub recall: F,
    pub f1: F,
}

pub fn f1<F: Scalar>(precision: F, recall: F) -> F {
    let s = precision + recall;
    if s.is_zero() {
        F::zero()
    } else {
        (F::one() + F::one()) * precision * recall / s
    }
}

/// Content selection on deduplicated sets. Empty system set gives precision
/// 0, empty gold set gives recall 0.
pub fn cs_symbols<F: Scalar, T: Eq + Hash>(gold: &[T], sys: &[T]) -> CsScore<F> {
    let g: HashSet<&T> = gold.iter().collect();
    let s: HashSet<&T> = sys.iter().collect();
    let inter = g.intersection(&s).count();
    let precision = if s.is_empty() { F::zero() } else { scalar::<F>(inter) / scalar(s.len()) };
    let recall = if g.is_empty() { F::zero() } else { scalar::<F>(inter) / scalar(g.len()) };
    CsScore {
        precision,
        recall,
        f1: f1(precision, recall),
    }
}

pub fn cs<F: Scalar>(gold: &ContentPlan, sys: &ContentPlan) -> CsScore<F> {
    cs_symbols(&gold.keys(), &sys.keys())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RgScore<F> {
    pub count: usize,
    pub licensed: usize,
    /// 0 with `undefined` set when the plan is empty.
    pub precision: F,
    pub undefined: bool,
}

/// Relation generation against the table, using the aligner's licensing rule.
pub fn rg_with<F: Scalar>(sys: &ContentPlan, table: &GameTable, aligner: &Aligner) -> RgScore<F> {
    let licensed = sys
        .items
        .iter()
        .filter(|it| aligner.license(it.entity, it.value, &it.rtype, table))
        .count();
    let count = sys.len();
    RgScore {
        count,
        licensed,
        precision: if count == 0 { F::zero() } else { scalar::<F>(licensed) / scalar(count) },
        undefined: count == 0,
    }
}

pub fn rg<F: Scalar>(sys: &ContentPlan, table: &GameTable) -> RgScore<F> {
    rg_with(sys, table, &Aligner::default())
}

/// Inputs for one evaluated sample.
#[derive(Debug, Clone)]
pub struct EvalPair<'a> {
    pub gold_plan: &'a ContentPlan,
    pub sys_plan: &'a ContentPlan,
    pub table: &'a GameTable,
    pub gold_text: &'a [String],
    pub sys_text: &'a [String],
}

/// Zips parallel per-sample lists, rejecting length mismatches.
pub fn zip_pairs<'a>(
    gold_plans: &'a [ContentPlan],
    sys_plans: &'a [ContentPlan],
    tables: &'a [GameTable],
    gold_texts: &'a [Vec<String>],
    sys_texts: &'a [Vec<String>],
) -> Result<Vec<EvalPair<'a>>, EvalError> {
    let n = gold_plans.len();
    for len in [sys_plans.len(), tables.len(), gold_texts.len(), sys_texts.len()] {
        if len != n {
            return Err(EvalError::LengthMismatch { left: n, right: len });
        }
    }
    Ok((0..n)
        .map(|i| EvalPair {
            gold_plan: &gold_plans[i],
            sys_plan: &sys_plans[i],
            table: &tables[i],
            gold_text: &gold_texts[i],
            sys_text: &sys_texts[i],
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport<F> {
    pub rg_count: F,
    pub rg_precision: F,
    pub cs_precision: F,
    pub cs_recall: F,
    pub cs_f1: F,
    pub co_dld: F,
    pub bleu: BleuScore<F>,
    pub n_samples: usize,
}

pub fn evaluate_corpus<F: Scalar>(pairs: &[EvalPair<'_>], aligner: &Aligner) -> Result<MetricsReport<F>, EvalError> {
    if pairs.is_empty() {
        return Err(EvalError::EmptyCorpus);
    }
    let n: F = scalar(pairs.len());
    let (mut rg_count, mut cs_p, mut cs_r, mut cs_f, mut co_sum) =
        (F::zero(), F::zero(), F::zero(), F::zero(), F::zero());
    let (mut extracted, mut licensed) = (0usize, 0usize);
    for p in pairs {
        let rg: RgScore<F> = rg_with(p.sys_plan, p.table, aligner);
        rg_count = rg_count + scalar(rg.count);
        extracted += rg.count;
        licensed += rg.licensed;
        let c: CsScore<F> = cs(p.gold_plan, p.sys_plan);
        cs_p = cs_p + c.precision;
        cs_r = cs_r + c.recall;
        cs_f = cs_f + c.f1;
        co_sum = co_sum + co::<F>(p.gold_plan, p.sys_plan);
    }
    let sys_texts: Vec<&[String]> = pairs.iter().map(|p| p.sys_text).collect();
    let gold_texts: Vec<&[String]> = pairs.iter().map(|p| p.gold_text).collect();
    let bleu = bleu(&sys_texts, &gold_texts)?;
    Ok(MetricsReport {
        rg_count: rg_count / n,
        rg_precision: if extracted == 0 { F::zero() } else { scalar::<F>(licensed) / scalar(extracted) },
        cs_precision: cs_p / n,
        cs_recall: cs_r / n,
        cs_f1: cs_f / n,
        co_dld: co_sum / n,
        bleu,
        n_samples: pairs.len(),
    })
}

impl<F: Scalar> MetricsReport<F> {
    /// Aligned table: extractive metrics in percent, then the BLEU breakdown.
    pub fn to_table(&self) -> String {
        let pct = |x: F| x.to_f64().unwrap_or(f64::NAN) * 100.0;
        let mut s = String::new();
        s.push_str(&format!(
            "{:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}\n",
            "RG#", "RGP%", "CSP%", "CSR%", "CSF%", "CO%", "BLEU"
        ));
        s.push_str(&format!(
            "{:>8.2} {:>8.2} {:>8.2} {:>8.2} {:>8.2} {:>8.2} {:>8.2}\n",
            self.rg_count.to_f64().unwrap_or(f64::NAN),
            pct(self.rg_precision),
            pct(self.cs_precision),
            pct(self.cs_recall),
            pct(self.cs_f1),
            pct(self.co_dld),
            pct(self.bleu.bleu),
        ));
        s.push_str(&format!(
            "{:>8} {:>8} {:>8} {:>8} {:>8} {:>8}\n",
            "B1", "B2", "B3", "B4", "BP", "BLEU"
        ));
        let b = &self.bleu;
        s.push_str(&format!(
            "{:>8.2} {:>8.2} {:>8.2} {:>8.2} {:>8.2} {:>8.2}\n",
            pct(b.precisions[0]),
            pct(b.precisions[1]),
            pct(b.precisions[2]),
            pct(b.precisions[3]),
            b.bp.to_f64().unwrap_or(f64::NAN),
            pct(b.bleu),
        ));
        s.push_str(&format!("samples: {}\n", self.n_samples));
        s
    }
}

#[cfg(test)]
mod tests;
