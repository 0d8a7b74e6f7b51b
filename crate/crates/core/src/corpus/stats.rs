use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::CorpusError;
use crate::plan::ContentPlan;
use crate::summary::Sample;

/// Corpus size and per-sample averages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetStats {
    pub examples: usize,
    pub tokens: usize,
    pub vocab_size: usize,
    /// Distinct record types present in any table, text columns included.
    pub record_types: usize,
    pub avg_summary_len: f64,
    pub avg_sentences: f64,
    pub avg_plan_len: f64,
    /// Numeric records plus text cells (names, positions, cities).
    pub avg_records: f64,
    pub avg_numeric_records: f64,
}

fn text_cells(sample: &Sample) -> (usize, Vec<&'static str>) {
    let t = &sample.table;
    let mut types = vec!["TEAM-CITY", "TEAM-NAME"];
    let mut cells = 4;
    for p in &t.players {
        cells += 2;
        types.extend(["PLAYER_NAME", "TEAM_CITY"]);
        if !p.first_name.is_empty() {
            cells += 1;
            types.push("FIRST_NAME");
        }
        if !p.second_name.is_empty() {
            cells += 1;
            types.push("SECOND_NAME");
        }
        if p.start_position.is_some() {
            cells += 1;
            types.push("START_POSITION");
        }
    }
    (cells, types)
}

/// Statistics over samples whose summaries are already normalized, with one
/// plan per sample.
pub fn dataset_stats(samples: &[Sample], plans: &[ContentPlan]) -> Result<DatasetStats, CorpusError> {
    if samples.is_empty() {
        return Err(CorpusError::Empty);
    }
    if samples.len() != plans.len() {
        return Err(CorpusError::LengthMismatch {
            left: samples.len(),
            right: plans.len(),
        });
    }
    let mut vocab: HashSet<&str> = HashSet::new();
    let mut types: HashSet<&str> = HashSet::new();
    let (mut tokens, mut sentences, mut plan_items, mut numeric, mut text) = (0, 0, 0, 0, 0);
    for (s, p) in samples.iter().zip(plans) {
        tokens += s.summary.len();
        sentences += s.summary.num_sentences();
        plan_items += p.len();
        numeric += s.table.records.len();
        vocab.extend(s.summary.tokens.iter().map(String::as_str));
        types.extend(s.table.records.iter().map(|r| r.rtype.as_str()));
        let (cells, names) = text_cells(s);
        text += cells;
        types.extend(names);
    }
    let n = samples.len() as f64;
    Ok(DatasetStats {
        examples: samples.len(),
        tokens,
        vocab_size: vocab.len(),
        record_types: types.len(),
        avg_summary_len: tokens as f64 / n,
        avg_sentences: sentences as f64 / n,
        avg_plan_len: plan_items as f64 / n,
        avg_records: (numeric + text) as f64 / n,
        avg_numeric_records: numeric as f64 / n,
    })
}

impl DatasetStats {
    pub fn to_table(&self) -> String {
        let rows: [(&str, String); 9] = [
            ("examples", self.examples.to_string()),
            ("tokens", self.tokens.to_string()),
            ("vocab", self.vocab_size.to_string()),
            ("record types", self.record_types.to_string()),
            ("avg summary length", format!("{:.2}", self.avg_summary_len)),
            ("avg sentences", format!("{:.2}", self.avg_sentences)),
            ("avg plan length", format!("{:.2}", self.avg_plan_len)),
            ("avg records", format!("{:.2}", self.avg_records)),
            ("avg numeric records", format!("{:.2}", self.avg_numeric_records)),
        ];
        rows.iter().map(|(k, v)| format!("{k:<20} {v:>10}\n")).collect()
    }
}
