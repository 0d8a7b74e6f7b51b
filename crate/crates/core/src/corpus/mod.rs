//! Corpus files, splitting, statistics and per-game pipeline stages.
//!
//! A corpus file is either a JSON array of games or one game per line. Each
//! game follows the public boxscore corpus layout:
//!
//! ```text
//! { "home_name": "Rockets", "home_city": "Houston", "vis_name": ..., "vis_city": ...,
//!   "date": "2016-01-02",
//!   "home_line": { "TEAM-PTS": "108", "TEAM-WINS": "18", ... },
//!   "vis_line": { ... },
//!   "box_score": { "PLAYER_NAME": { "0": "James Harden", ... },
//!                  "START_POSITION": { "0": "G", "7": "N/A" },
//!                  "TEAM_CITY": { "0": "Houston", ... }, "PTS": { "0": "24" }, ... },
//!   "summary": ["The", "Houston", "Rockets", ...] }
//! ```
//!
//! `day` is accepted for `date`, values may be strings or numbers, and `N/A`
//! or an empty string means the cell is absent.

mod format;
pub mod pipeline;
mod split;
mod stats;

use std::path::PathBuf;

use thiserror::Error;

pub use format::{from_json_str, load_corpus, load_corpus_with, save_corpus, to_json_string, LoadReport, Rejection};
pub use split::{split_corpus, split_indices, Ratios, SplitIndices};
pub use stats::{dataset_stats, DatasetStats};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{context}: {message}")]
    Parse { context: String, message: String },
    #[error("empty corpus")]
    Empty,
    #[error("need at least 3 samples to split, got {0}")]
    TooFewSamples(usize),
    #[error("invalid split ratios: {0}")]
    InvalidRatios(String),
    #[error("length mismatch: {left} samples vs {right} plans")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
}
