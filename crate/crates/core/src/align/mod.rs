//! Grounding numerals in a summary to table records.
//!
//! Sentences are the unit of topic: each numeral is owned by the nearest
//! preceding entity mention in its sentence (or the sentence topic), a type
//! cue around the numeral picks the record type, and the resulting
//! `(entity, value, type)` candidate is kept only if the table licenses it.

pub mod cues;

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::mentions::{build_lexicon_with, normalize_and_resolve, AliasOverrides, Mention};
use crate::numeralize::{numeralize_tokens, parse_numeral, rectify_percent_with, DEFAULT_PERCENT_TOLERANCE};
use crate::plan::{ContentPlan, PlanItem};
use crate::schema::{SchemaRegistry, ValueKind};
use crate::summary::{Sample, Summary};
use crate::table::{EntityId, EntityKind, GameTable, Record};

pub use cues::{default_cues, CueLexicon, CueScope, CueToken, TypeCue};

pub const DEFAULT_MIN_PLAN: usize = 5;

/// Ordered entity list per sentence.
pub type Topics = Vec<Vec<EntityId>>;

/// A typed reading of one numeral, before licensing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub token_index: usize,
    pub entity: EntityId,
    pub rtype: String,
    pub value: f64,
    /// Index of the winning cue in the lexicon.
    pub cue: usize,
}

/// A licensed candidate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Alignment {
    pub token_index: usize,
    pub record: Record,
    pub cue: usize,
}

/// Unit of retention during purification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Granularity {
    /// Each sentence must carry a licensed fact of its own.
    #[default]
    Sentence,
    /// A run of consecutive sentences sharing a topic head survives as a
    /// whole if any of its sentences carries a licensed fact.
    Run,
}

impl std::str::FromStr for Granularity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sentence" => Ok(Granularity::Sentence),
            "run" => Ok(Granularity::Run),
            other => Err(format!("unknown granularity `{other}` (expected sentence or run)")),
        }
    }
}

pub fn segment_topics(summary: &Summary, mentions: &[Mention]) -> Topics {
    let mut topics: Topics = Vec::with_capacity(summary.num_sentences());
    for s in 0..summary.num_sentences() {
        let r = summary.sentence_range(s);
        let mut ents: Vec<EntityId> = Vec::new();
        for m in mentions.iter().filter(|m| r.contains(&m.start)) {
            if !ents.contains(&m.entity) {
                ents.push(m.entity);
            }
        }
        if ents.is_empty() {
            if let Some(last) = topics.last().and_then(|t| t.last()) {
                ents.push(*last);
            }
        }
        topics.push(ents);
    }
    topics
}

/// One candidate per numeral that some cue explains; ties go to the longer
/// pattern, then to the earlier cue.
pub fn propose_candidates(
    summary: &Summary,
    topics: &Topics,
    mentions: &[Mention],
    cues: &CueLexicon,
) -> Vec<Candidate> {
    let kinds: HashMap<EntityId, EntityKind> = mentions.iter().map(|m| (m.entity, m.kind)).collect();
    let mut out = Vec::new();
    for s in 0..summary.num_sentences() {
        let range = summary.sentence_range(s);
        let in_sentence: Vec<&Mention> = mentions.iter().filter(|m| range.contains(&m.start)).collect();
        let mut teams: Vec<EntityId> = Vec::new();
        for m in &in_sentence {
            if m.kind == EntityKind::Team && !teams.contains(&m.entity) {
                teams.push(m.entity);
            }
        }
        for i in range.clone() {
            let Some(value) = parse_numeral(&summary.tokens[i]) else {
                continue;
            };
            let owner = in_sentence
                .iter()
                .rev()
                .find(|m| m.end <= i)
                .map(|m| (m.entity, m.kind))
                .or_else(|| {
                    topics[s]
                        .first()
                        .and_then(|e| kinds.get(e).map(|k| (*e, *k)))
                });

            let mut best: Option<(usize, usize, EntityId, &str)> = None;
            for (ci, cue) in cues.cues.iter().enumerate() {
                if best.is_some_and(|(w, _, _, _)| w >= cue.weight()) {
                    continue;
                }
                for slot in 0..cue.emitted_types.len() {
                    let entity = match (cue.scope, owner) {
                        (CueScope::Pair, _) if teams.len() >= 2 => Some(teams[slot]),
                        (CueScope::Pair, _) => None,
                        (CueScope::Either, Some((e, _))) => Some(e),
                        (CueScope::Player, Some((e, EntityKind::Player))) => Some(e),
                        (CueScope::Team, Some((e, EntityKind::Team))) => Some(e),
                        _ => None,
                    };
                    let Some(entity) = entity else { continue };
                    let owner_ends =
                        |pos: usize| in_sentence.iter().any(|m| m.entity == entity && m.end == pos);
                    if cue.match_at(&summary.tokens, range.clone(), i, slot, &owner_ends) {
                        best = Some((cue.weight(), ci, entity, &cue.emitted_types[slot]));
                        break;
                    }
                }
            }
            if let Some((_, ci, entity, rtype)) = best {
                out.push(Candidate {
                    token_index: i,
                    entity,
                    rtype: rtype.to_string(),
                    value,
                    cue: ci,
                });
            }
        }
    }
    out
}

/// The table's value for the fact when the fact is licensed: exact equality
/// for integer types, rounding tolerance for percentages.
pub fn license_value(
    entity: EntityId,
    value: f64,
    rtype: &str,
    table: &GameTable,
    schema: &SchemaRegistry,
    percent_tolerance: f64,
) -> Option<f64> {
    let cell = table.lookup(entity, rtype)?;
    match schema.value_kind(rtype) {
        Some(ValueKind::Percent) => rectify_percent_with(value, cell, percent_tolerance),
        _ => (cell == value).then_some(cell),
    }
}

/// [`license_value`] with the default schema and tolerance.
pub fn license(entity: EntityId, value: f64, rtype: &str, table: &GameTable) -> bool {
    license_value(
        entity,
        value,
        rtype,
        table,
        &SchemaRegistry::default(),
        DEFAULT_PERCENT_TOLERANCE,
    )
    .is_some()
}

/// Intermediate results of aligning one normalized sample.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub mentions: Vec<Mention>,
    pub topics: Topics,
    pub candidates: Vec<Candidate>,
    pub alignments: Vec<Alignment>,
}

impl Analysis {
    pub fn plan(&self) -> ContentPlan {
        ContentPlan::new(
            self.alignments
                .iter()
                .map(|a| PlanItem {
                    entity: a.record.entity,
                    value: a.record.value,
                    rtype: a.record.rtype.clone(),
                    side: a.record.side,
                    token_index: a.token_index,
                })
                .collect(),
        )
    }

    pub fn licensed_per_sentence(&self, summary: &Summary) -> Vec<usize> {
        let mut counts = vec![0; summary.num_sentences()];
        for a in &self.alignments {
            counts[summary.sentence_of(a.token_index)] += 1;
        }
        counts
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentenceFate {
    /// Index in the input summary.
    pub index: usize,
    pub kept: bool,
    pub licensed: usize,
    pub head: Option<EntityId>,
    /// Purification round in which the sentence was dropped (0 when kept).
    pub round: usize,
    pub text: String,
}

/// Per-game audit trail of purification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RetentionLog {
    pub game_id: String,
    pub kept: bool,
    pub plan_len: usize,
    pub sentences: Vec<SentenceFate>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Purified {
    pub sample: Sample,
    pub plan: ContentPlan,
}

/// Fact grounding configuration and driver.
#[derive(Debug, Clone)]
pub struct Aligner {
    pub cues: CueLexicon,
    pub schema: SchemaRegistry,
    pub overrides: AliasOverrides,
    pub percent_tolerance: f64,
    pub min_plan: usize,
    pub granularity: Granularity,
}

impl Default for Aligner {
    fn default() -> Self {
        Self {
            cues: default_cues(),
            schema: SchemaRegistry::default(),
            overrides: AliasOverrides::new(),
            percent_tolerance: DEFAULT_PERCENT_TOLERANCE,
            min_plan: DEFAULT_MIN_PLAN,
            granularity: Granularity::default(),
        }
    }
}

impl Aligner {
    /// Numeralizes number words and rewrites entity aliases to canonical
    /// names. Idempotent.
    pub fn normalize(&self, sample: &Sample) -> Sample {
        let (tokens, _) = numeralize_tokens(&sample.summary.tokens);
        let summary = Summary::from_tokens(tokens);
        let lexicon = build_lexicon_with(&sample.table, &self.overrides);
        let (normalized, _) = normalize_and_resolve(&summary, &lexicon);
        Sample {
            table: sample.table.clone(),
            summary: normalized,
        }
    }

    /// Runs mention detection, topic segmentation, cue matching and
    /// licensing on an already-normalized sample.
    pub fn analyze(&self, sample: &Sample) -> Analysis {
        let lexicon = build_lexicon_with(&sample.table, &self.overrides);
        let (_, mentions) = normalize_and_resolve(&sample.summary, &lexicon);
        let topics = segment_topics(&sample.summary, &mentions);
        let candidates = propose_candidates(&sample.summary, &topics, &mentions, &self.cues);
        let alignments = candidates
            .iter()
            .filter_map(|c| {
                let value = license_value(
                    c.entity,
                    c.value,
                    &c.rtype,
                    &sample.table,
                    &self.schema,
                    self.percent_tolerance,
                )?;
                let side = sample.table.entity(c.entity)?.side;
                Some(Alignment {
                    token_index: c.token_index,
                    record: Record {
                        entity: c.entity,
                        rtype: c.rtype.clone(),
                        value,
                        side,
                    },
                    cue: c.cue,
                })
            })
            .collect();
        Analysis {
            mentions,
            topics,
            candidates,
            alignments,
        }
    }

    pub fn license(&self, entity: EntityId, value: f64, rtype: &str, table: &GameTable) -> bool {
        license_value(entity, value, rtype, table, &self.schema, self.percent_tolerance).is_some()
    }

    /// Licensed facts in token order.
    pub fn extract_content_plan(&self, sample: &Sample) -> (ContentPlan, Vec<Alignment>) {
        let a = self.analyze(sample);
        (a.plan(), a.alignments)
    }

    fn retention_units(&self, summary: &Summary, topics: &Topics) -> Vec<Vec<usize>> {
        let n = summary.num_sentences();
        match self.granularity {
            Granularity::Sentence => (0..n).map(|s| vec![s]).collect(),
            Granularity::Run => {
                let mut units: Vec<Vec<usize>> = Vec::new();
                let mut prev_head: Option<Option<EntityId>> = None;
                for (s, topic) in topics.iter().enumerate().take(n) {
                    let head = topic.first().copied();
                    if prev_head == Some(head) {
                        units.last_mut().expect("run started").push(s);
                    } else {
                        units.push(vec![s]);
                    }
                    prev_head = Some(head);
                }
                units
            }
        }
    }

    /// Drops unlicensed sentence units until none remain, then applies the
    /// minimum plan size. Returns the audit log alongside.
    pub fn purify_logged(&self, sample: &Sample) -> (Option<Purified>, RetentionLog) {
        let mut current = sample.clone();
        let mut origin: Vec<usize> = (0..current.summary.num_sentences()).collect();
        let mut fates: Vec<Option<SentenceFate>> = vec![None; origin.len()];
        let mut round = 0;
        let analysis = loop {
            round += 1;
            let analysis = self.analyze(&current);
            let licensed = analysis.licensed_per_sentence(&current.summary);
            let units = self.retention_units(&current.summary, &analysis.topics);
            let mut keep = Vec::new();
            for unit in units {
                if unit.iter().any(|&s| licensed[s] > 0) {
                    keep.extend(unit);
                } else {
                    for s in unit {
                        fates[origin[s]] = Some(SentenceFate {
                            index: origin[s],
                            kept: false,
                            licensed: licensed[s],
                            head: analysis.topics[s].first().copied(),
                            round,
                            text: current.summary.tokens[current.summary.sentence_range(s)].join(" "),
                        });
                    }
                }
            }
            if keep.len() == current.summary.num_sentences() {
                for (s, &o) in origin.iter().enumerate() {
                    fates[o] = Some(SentenceFate {
                        index: o,
                        kept: true,
                        licensed: licensed[s],
                        head: analysis.topics[s].first().copied(),
                        round: 0,
                        text: current.summary.tokens[current.summary.sentence_range(s)].join(" "),
                    });
                }
                break analysis;
            }
            current.summary = current.summary.select_sentences(&keep);
            origin = keep.iter().map(|&s| origin[s]).collect();
        };
        let plan = analysis.plan();
        let kept = plan.len() >= self.min_plan;
        let log = RetentionLog {
            game_id: sample.table.game_id.clone(),
            kept,
            plan_len: plan.len(),
            sentences: fates.into_iter().flatten().collect(),
        };
        let out = kept.then_some(Purified {
            sample: current,
            plan,
        });
        (out, log)
    }

    pub fn purify(&self, sample: &Sample) -> Option<Purified> {
        self.purify_logged(sample).0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FillbackMismatch {
    pub token_index: usize,
    pub entity: EntityId,
    pub rtype: String,
    pub filled: f64,
    pub expected: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FillbackReport {
    pub mismatches: Vec<FillbackMismatch>,
    /// Distinct numeral tokens covered by the plan.
    pub aligned_numerals: usize,
    pub total_numerals: usize,
    pub filled_cells: usize,
}

impl FillbackReport {
    pub fn coverage(&self) -> f64 {
        if self.total_numerals == 0 {
            0.0
        } else {
            self.aligned_numerals as f64 / self.total_numerals as f64
        }
    }
}

/// Writes each planned value into an empty copy of the table and compares
/// every written cell with the source table.
pub fn verify_fillback(purified: &Sample, plan: &ContentPlan, table: &GameTable) -> FillbackReport {
    let mut filled = table.clone();
    filled.records.clear();
    let mut mismatches = Vec::new();
    for item in &plan.items {
        filled.set(item.entity, &item.rtype, item.value);
        let expected = table.lookup(item.entity, &item.rtype);
        if expected != Some(item.value) {
            mismatches.push(FillbackMismatch {
                token_index: item.token_index,
                entity: item.entity,
                rtype: item.rtype.clone(),
                filled: item.value,
                expected,
            });
        }
    }
    let total_numerals = purified
        .summary
        .tokens
        .iter()
        .filter(|t| parse_numeral(t).is_some())
        .count();
    let aligned: HashSet<usize> = plan.items.iter().map(|i| i.token_index).collect();
    FillbackReport {
        mismatches,
        aligned_numerals: aligned.len(),
        total_numerals,
        filled_cells: filled.records.len(),
    }
}
