//! Per-game stages run in parallel over a corpus, and the configuration
//! that builds an [`Aligner`] from optional schema, cue and alias files.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{dataset_stats, CorpusError, DatasetStats, Ratios};
use crate::align::{Aligner, CueLexicon, Granularity, Purified, RetentionLog, DEFAULT_MIN_PLAN};
use crate::mentions::AliasOverrides;
use crate::numeralize::DEFAULT_PERCENT_TOLERANCE;
use crate::plan::ContentPlan;
use crate::replenish::{replenish, ReplenishWarning};
use crate::schema::{build_schema, RecordType, SchemaRegistry};
use crate::summary::Sample;
use crate::template::TemplateConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub schema: Option<PathBuf>,
    pub cues: Option<PathBuf>,
    pub aliases: Option<PathBuf>,
    pub ratios: Ratios,
    pub seed: u64,
    pub percent_tolerance: f64,
    pub min_plan: usize,
    pub k_players: usize,
    pub granularity: Granularity,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            schema: None,
            cues: None,
            aliases: None,
            ratios: Ratios::default(),
            seed: 0,
            percent_tolerance: DEFAULT_PERCENT_TOLERANCE,
            min_plan: DEFAULT_MIN_PLAN,
            k_players: TemplateConfig::default().k_players,
            granularity: Granularity::default(),
        }
    }
}

fn read(path: &Path) -> Result<String, CorpusError> {
    std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_err(path: &Path, e: impl std::fmt::Display) -> CorpusError {
    CorpusError::Parse {
        context: path.display().to_string(),
        message: e.to_string(),
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<(), CorpusError> {
        self.ratios.validate()?;
        if self.min_plan < 1 {
            return Err(CorpusError::Config("min plan size must be at least 1".into()));
        }
        if self.k_players < 1 {
            return Err(CorpusError::Config("k_players must be at least 1".into()));
        }
        if !(self.percent_tolerance >= 0.0) {
            return Err(CorpusError::Config("percent tolerance must be non-negative".into()));
        }
        Ok(())
    }

    /// The schema file, when given, is a JSON array of record type
    /// descriptors and replaces the default schema.
    pub fn schema(&self) -> Result<SchemaRegistry, CorpusError> {
        match &self.schema {
            None => Ok(SchemaRegistry::default()),
            Some(p) => {
                let types: Vec<RecordType> = serde_json::from_str(&read(p)?).map_err(|e| parse_err(p, e))?;
                build_schema(types).map_err(|e| parse_err(p, e))
            }
        }
    }

    pub fn aligner(&self) -> Result<Aligner, CorpusError> {
        self.validate()?;
        let cues = match &self.cues {
            None => CueLexicon::default(),
            Some(p) => CueLexicon::from_json(&read(p)?).map_err(|e| parse_err(p, e))?,
        };
        let overrides: AliasOverrides = match &self.aliases {
            None => AliasOverrides::new(),
            Some(p) => serde_json::from_str(&read(p)?).map_err(|e| parse_err(p, e))?,
        };
        Ok(Aligner {
            cues,
            schema: self.schema()?,
            overrides,
            percent_tolerance: self.percent_tolerance,
            min_plan: self.min_plan,
            granularity: self.granularity,
        })
    }

    pub fn template(&self) -> TemplateConfig {
        TemplateConfig {
            k_players: self.k_players,
        }
    }
}

pub fn normalize_corpus(samples: &[Sample], aligner: &Aligner) -> Vec<Sample> {
    samples.par_iter().map(|s| aligner.normalize(s)).collect()
}

/// Plans of already-normalized samples.
pub fn extract_plans(samples: &[Sample], aligner: &Aligner) -> Vec<ContentPlan> {
    samples
        .par_iter()
        .map(|s| aligner.extract_content_plan(s).0)
        .collect()
}

#[derive(Debug, Clone)]
pub struct PurifyOutput {
    pub purified: Vec<Purified>,
    /// One log per input game, kept or not.
    pub logs: Vec<RetentionLog>,
}

/// Normalizes then purifies every sample.
pub fn purify_corpus(samples: &[Sample], aligner: &Aligner) -> PurifyOutput {
    let results: Vec<(Option<Purified>, RetentionLog)> = samples
        .par_iter()
        .map(|s| aligner.purify_logged(&aligner.normalize(s)))
        .collect();
    let mut purified = Vec::new();
    let mut logs = Vec::with_capacity(results.len());
    for (p, log) in results {
        purified.extend(p);
        logs.push(log);
    }
    PurifyOutput { purified, logs }
}

pub fn replenish_corpus(samples: &[Sample]) -> Vec<(Sample, Vec<ReplenishWarning>)> {
    samples
        .par_iter()
        .map(|s| {
            let r = replenish(&s.table);
            (
                Sample {
                    table: r.table,
                    summary: s.summary.clone(),
                },
                r.warnings,
            )
        })
        .collect()
}

/// Normalizes, extracts plans and computes statistics.
pub fn corpus_stats(samples: &[Sample], aligner: &Aligner) -> Result<DatasetStats, CorpusError> {
    let normalized = normalize_corpus(samples, aligner);
    let plans = extract_plans(&normalized, aligner);
    dataset_stats(&normalized, &plans)
}
