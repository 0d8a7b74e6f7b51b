//! Record-type registry.
//!
//! Team line-score types carry the `TEAM-` prefix used by the corpus line
//! maps, player box-score types are bare column names, and derived team types
//! use the names produced by [`crate::replenish`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::table::EntityKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ValueKind {
    Integer,
    Percent,
    /// Roster-backed text column (names, positions, cities). Never stored as
    /// a numeric record.
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RecordType {
    pub name: String,
    pub category: EntityKind,
    pub value_kind: ValueKind,
    #[serde(default)]
    pub derived: bool,
}

impl RecordType {
    pub fn new(name: &str, category: EntityKind, value_kind: ValueKind, derived: bool) -> Self {
        Self {
            name: name.to_string(),
            category,
            value_kind,
            derived,
        }
    }

    pub fn is_numeric(&self) -> bool {
        self.value_kind != ValueKind::Text
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchemaError {
    #[error("duplicate record type name `{0}`")]
    DuplicateName(String),
    #[error("record type name must not be empty")]
    EmptyName,
}

/// Player box-score columns holding text.
pub const PLAYER_TEXT_TYPES: [&str; 5] = [
    "PLAYER_NAME",
    "FIRST_NAME",
    "SECOND_NAME",
    "START_POSITION",
    "TEAM_CITY",
];

pub const PLAYER_INTEGER_TYPES: [&str; 16] = [
    "MIN", "PTS", "FGM", "FGA", "FG3M", "FG3A", "FTM", "FTA", "OREB", "DREB", "REB", "AST", "TO",
    "STL", "BLK", "PF",
];

pub const PLAYER_PERCENT_TYPES: [&str; 3] = ["FG_PCT", "FG3_PCT", "FT_PCT"];

pub const TEAM_TEXT_TYPES: [&str; 2] = ["TEAM-CITY", "TEAM-NAME"];

pub const TEAM_INTEGER_TYPES: [&str; 10] = [
    "TEAM-PTS_QTR1",
    "TEAM-PTS_QTR2",
    "TEAM-PTS_QTR3",
    "TEAM-PTS_QTR4",
    "TEAM-PTS",
    "TEAM-REB",
    "TEAM-AST",
    "TEAM-TOV",
    "TEAM-WINS",
    "TEAM-LOSSES",
];

pub const TEAM_PERCENT_TYPES: [&str; 3] = ["TEAM-FG_PCT", "TEAM-FG3_PCT", "TEAM-FT_PCT"];

pub const QUARTER_TYPES: [&str; 4] = [
    "TEAM-PTS_QTR1",
    "TEAM-PTS_QTR2",
    "TEAM-PTS_QTR3",
    "TEAM-PTS_QTR4",
];

/// The 39 base types of the original boxscore corpus.
pub fn base_types() -> Vec<RecordType> {
    use EntityKind::{Player, Team};
    let mut out = Vec::with_capacity(39);
    for n in PLAYER_TEXT_TYPES {
        out.push(RecordType::new(n, Player, ValueKind::Text, false));
    }
    for n in PLAYER_INTEGER_TYPES {
        out.push(RecordType::new(n, Player, ValueKind::Integer, false));
    }
    for n in PLAYER_PERCENT_TYPES {
        out.push(RecordType::new(n, Player, ValueKind::Percent, false));
    }
    for n in TEAM_TEXT_TYPES {
        out.push(RecordType::new(n, Team, ValueKind::Text, false));
    }
    for n in TEAM_INTEGER_TYPES {
        out.push(RecordType::new(n, Team, ValueKind::Integer, false));
    }
    for n in TEAM_PERCENT_TYPES {
        out.push(RecordType::new(n, Team, ValueKind::Percent, false));
    }
    out
}

/// The 18 replenished team types (6 shooting totals, 12 point breakdowns).
pub fn derived_types() -> Vec<RecordType> {
    crate::replenish::SHOOTING_TOTALS
        .iter()
        .map(|(name, _)| *name)
        .chain(crate::replenish::BREAKDOWN_TYPES)
        .map(|n| RecordType::new(n, EntityKind::Team, ValueKind::Integer, true))
        .collect()
}

/// Name-indexed set of record types. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaRegistry {
    types: Vec<RecordType>,
    by_name: BTreeMap<String, usize>,
}

pub fn build_schema(descriptors: Vec<RecordType>) -> Result<SchemaRegistry, SchemaError> {
    let mut by_name = BTreeMap::new();
    for (i, t) in descriptors.iter().enumerate() {
        if t.name.is_empty() {
            return Err(SchemaError::EmptyName);
        }
        if by_name.insert(t.name.clone(), i).is_some() {
            return Err(SchemaError::DuplicateName(t.name.clone()));
        }
    }
    Ok(SchemaRegistry {
        types: descriptors,
        by_name,
    })
}

impl SchemaRegistry {
    /// Base corpus schema (39 types).
    pub fn base() -> Self {
        build_schema(base_types()).expect("base type names are unique")
    }

    /// Base schema plus replenished types (57 types).
    pub fn replenished() -> Self {
        let mut all = base_types();
        all.extend(derived_types());
        build_schema(all).expect("base and derived type names are unique")
    }

    pub fn get(&self, name: &str) -> Option<&RecordType> {
        self.by_name.get(name).map(|&i| &self.types[i])
    }

    pub fn contains(&self, name: &str) -> bool {
        self.by_name.contains_key(name)
    }

    pub fn value_kind(&self, name: &str) -> Option<ValueKind> {
        self.get(name).map(|t| t.value_kind)
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &RecordType> {
        self.types.iter()
    }
}

impl Default for SchemaRegistry {
    fn default() -> Self {
        Self::replenished()
    }
}
