//! Grounding numeric facts in basketball game summaries to boxscore records.
//!
//! The pipeline normalizes a summary (number words, entity aliases,
//! pronouns), aligns each numeral to a `(entity, value, type)` record that the
//! table licenses, and builds a content plan from the aligned facts. On top of
//! that sit corpus purification, derived team statistics, a template
//! generator and the RG/CS/CO/BLEU metrics.

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive};

pub mod align;
pub mod corpus;
pub mod eval;
pub mod fixtures;
pub mod mentions;
pub mod numeralize;
pub mod plan;
pub mod replenish;
pub mod schema;
pub mod summary;
pub mod synth;
pub mod table;
pub mod template;

/// Floating-point type used for metric values.
pub trait Scalar: Float + FromPrimitive + Debug + Send + Sync + 'static {}

impl<T: Float + FromPrimitive + Debug + Send + Sync + 'static> Scalar for T {}

pub use align::{Aligner, Granularity, Purified, RetentionLog};
pub use plan::{ContentPlan, PlanItem};
pub use schema::SchemaRegistry;
pub use summary::{Sample, Summary};
pub use table::{EntityId, GameTable, Record, Side};

pub type MetricsReport = eval::MetricsReport<f64>;
pub type BleuScore = eval::BleuScore<f64>;
pub type CsScore = eval::CsScore<f64>;
pub type RgScore = eval::RgScore<f64>;
