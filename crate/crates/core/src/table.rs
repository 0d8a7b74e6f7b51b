//! Entities, records and game tables.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::schema::{SchemaRegistry, ValueKind, QUARTER_TYPES};

/// Opaque per-game entity identifier. Two players with the same name are
/// still distinct entities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EntityId(pub u32);

impl fmt::Display for EntityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EntityKind {
    Player,
    Team,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Side {
    Home,
    Away,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Home => Side::Away,
            Side::Away => Side::Home,
        }
    }
}

pub(crate) fn tokens_of(s: &str) -> Vec<String> {
    s.split_whitespace().map(str::to_string).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entity {
    pub id: EntityId,
    pub kind: EntityKind,
    pub canonical_name: Vec<String>,
    pub aliases: BTreeSet<Vec<String>>,
    pub side: Side,
}

impl Entity {
    pub fn name(&self) -> String {
        self.canonical_name.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Team {
    pub entity: Entity,
    pub city: String,
    pub nickname: String,
}

impl Team {
    pub fn new(id: EntityId, side: Side, city: &str, nickname: &str) -> Self {
        let city_toks = tokens_of(city);
        let nick_toks = tokens_of(nickname);
        let canonical: Vec<String> = city_toks.iter().chain(&nick_toks).cloned().collect();
        let aliases = [canonical.clone(), city_toks, nick_toks]
            .into_iter()
            .filter(|a| !a.is_empty())
            .collect();
        Self {
            entity: Entity {
                id,
                kind: EntityKind::Team,
                canonical_name: canonical,
                aliases,
                side,
            },
            city: city.to_string(),
            nickname: nickname.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Player {
    pub entity: Entity,
    /// Key of this player in the box-score column maps.
    pub box_index: String,
    pub first_name: String,
    pub second_name: String,
    /// `None` for bench players.
    pub start_position: Option<String>,
}

impl Player {
    /// `full_name` is split into first token and remainder unless explicit
    /// first/second names are supplied.
    pub fn new(
        id: EntityId,
        side: Side,
        box_index: &str,
        full_name: &str,
        names: Option<(&str, &str)>,
        start_position: Option<&str>,
    ) -> Self {
        let canonical = tokens_of(full_name);
        let (first, second) = match names {
            Some((f, s)) => (f.to_string(), s.to_string()),
            None => {
                let mut it = full_name.splitn(2, char::is_whitespace);
                let f = it.next().unwrap_or("").to_string();
                let s = it.next().unwrap_or("").trim().to_string();
                (f, s)
            }
        };
        let aliases = [canonical.clone(), tokens_of(&first), tokens_of(&second)]
            .into_iter()
            .filter(|a| !a.is_empty())
            .collect();
        Self {
            entity: Entity {
                id,
                kind: EntityKind::Player,
                canonical_name: canonical,
                aliases,
                side,
            },
            box_index: box_index.to_string(),
            first_name: first,
            second_name: second,
            start_position: start_position.map(str::to_string),
        }
    }

    pub fn is_starter(&self) -> bool {
        self.start_position.is_some()
    }
}

/// One numeric table cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub entity: EntityId,
    pub rtype: String,
    pub value: f64,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameTable {
    pub game_id: String,
    pub date: String,
    pub home: Team,
    pub vis: Team,
    pub players: Vec<Player>,
    pub records: Vec<Record>,
}

pub const HOME_TEAM_ID: EntityId = EntityId(0);
pub const VIS_TEAM_ID: EntityId = EntityId(1);

impl GameTable {
    pub fn new(game_id: &str, date: &str, home: (&str, &str), vis: (&str, &str)) -> Self {
        Self {
            game_id: game_id.to_string(),
            date: date.to_string(),
            home: Team::new(HOME_TEAM_ID, Side::Home, home.0, home.1),
            vis: Team::new(VIS_TEAM_ID, Side::Away, vis.0, vis.1),
            players: Vec::new(),
            records: Vec::new(),
        }
    }

    /// Adds a player with the next free id; returns that id.
    pub fn add_player(&mut self, full_name: &str, side: Side, start_position: Option<&str>) -> EntityId {
        let id = self.next_entity_id();
        let index = self.players.len().to_string();
        self.players
            .push(Player::new(id, side, &index, full_name, None, start_position));
        id
    }

    pub fn next_entity_id(&self) -> EntityId {
        let max = self
            .players
            .iter()
            .map(|p| p.entity.id.0)
            .chain([HOME_TEAM_ID.0, VIS_TEAM_ID.0])
            .max()
            .unwrap_or(0);
        EntityId(max + 1)
    }

    pub fn team(&self, side: Side) -> &Team {
        match side {
            Side::Home => &self.home,
            Side::Away => &self.vis,
        }
    }

    pub fn teams(&self) -> [&Team; 2] {
        [&self.home, &self.vis]
    }

    pub fn entity(&self, id: EntityId) -> Option<&Entity> {
        if self.home.entity.id == id {
            return Some(&self.home.entity);
        }
        if self.vis.entity.id == id {
            return Some(&self.vis.entity);
        }
        self.players.iter().map(|p| &p.entity).find(|e| e.id == id)
    }

    pub fn player(&self, id: EntityId) -> Option<&Player> {
        self.players.iter().find(|p| p.entity.id == id)
    }

    pub fn entities(&self) -> impl Iterator<Item = &Entity> {
        [&self.home.entity, &self.vis.entity]
            .into_iter()
            .chain(self.players.iter().map(|p| &p.entity))
    }

    pub fn players_on(&self, side: Side) -> impl Iterator<Item = &Player> {
        self.players.iter().filter(move |p| p.entity.side == side)
    }

    pub fn lookup(&self, entity: EntityId, rtype: &str) -> Option<f64> {
        self.records
            .iter()
            .find(|r| r.entity == entity && r.rtype == rtype)
            .map(|r| r.value)
    }

    /// Inserts or overwrites the `(entity, rtype)` cell. The record's side is
    /// taken from the entity when known.
    pub fn set(&mut self, entity: EntityId, rtype: &str, value: f64) {
        let side = self
            .entity(entity)
            .map(|e| e.side)
            .unwrap_or(Side::Home);
        if let Some(r) = self
            .records
            .iter_mut()
            .find(|r| r.entity == entity && r.rtype == rtype)
        {
            r.value = value;
            r.side = side;
        } else {
            self.records.push(Record {
                entity,
                rtype: rtype.to_string(),
                value,
                side,
            });
        }
    }

    pub fn set_team(&mut self, side: Side, rtype: &str, value: f64) {
        let id = self.team(side).entity.id;
        self.set(id, rtype, value);
    }

    pub fn team_value(&self, side: Side, rtype: &str) -> Option<f64> {
        self.lookup(self.team(side).entity.id, rtype)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    DuplicateRecord { entity: EntityId, rtype: String },
    UnknownEntity { entity: EntityId, rtype: String },
    SideMismatch { entity: EntityId, rtype: String },
    NonIntegral { entity: EntityId, rtype: String, value: f64 },
    PercentOutOfRange { entity: EntityId, rtype: String, value: f64 },
    QuarterSum { team: EntityId, quarters: f64, points: f64 },
    EmptyName { entity: EntityId },
    DuplicateEntityId { entity: EntityId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateRecord { entity, rtype } => {
                write!(f, "duplicate record ({entity}, {rtype})")
            }
            Violation::UnknownEntity { entity, rtype } => {
                write!(f, "record ({entity}, {rtype}) refers to an entity outside the roster")
            }
            Violation::SideMismatch { entity, rtype } => {
                write!(f, "record ({entity}, {rtype}) home/away disagrees with its entity")
            }
            Violation::NonIntegral { entity, rtype, value } => {
                write!(f, "record ({entity}, {rtype}) = {value} is not an integer")
            }
            Violation::PercentOutOfRange { entity, rtype, value } => {
                write!(f, "record ({entity}, {rtype}) = {value} outside [0, 100]")
            }
            Violation::QuarterSum { team, quarters, points } => {
                write!(f, "team {team}: quarter points sum to {quarters} but TEAM-PTS is {points}")
            }
            Violation::EmptyName { entity } => write!(f, "entity {entity} has an empty name"),
            Violation::DuplicateEntityId { entity } => write!(f, "entity id {entity} used twice"),
        }
    }
}

/// Checks table invariants against the default (replenished) schema.
pub fn validate_table(table: &GameTable) -> Vec<Violation> {
    validate_table_with(table, &SchemaRegistry::default())
}

pub fn validate_table_with(table: &GameTable, schema: &SchemaRegistry) -> Vec<Violation> {
    let mut out = Vec::new();

    let mut ids = BTreeSet::new();
    for e in table.entities() {
        if !ids.insert(e.id) {
            out.push(Violation::DuplicateEntityId { entity: e.id });
        }
        if e.canonical_name.is_empty() {
            out.push(Violation::EmptyName { entity: e.id });
        }
    }

    let mut seen: HashMap<(EntityId, &str), usize> = HashMap::new();
    for r in &table.records {
        let n = seen.entry((r.entity, r.rtype.as_str())).or_default();
        *n += 1;
        if *n == 2 {
            out.push(Violation::DuplicateRecord {
                entity: r.entity,
                rtype: r.rtype.clone(),
            });
        }
        match table.entity(r.entity) {
            None => out.push(Violation::UnknownEntity {
                entity: r.entity,
                rtype: r.rtype.clone(),
            }),
            Some(e) if e.side != r.side => out.push(Violation::SideMismatch {
                entity: r.entity,
                rtype: r.rtype.clone(),
            }),
            Some(_) => {}
        }
        match schema.value_kind(&r.rtype) {
            Some(ValueKind::Integer) if r.value.fract() != 0.0 => {
                out.push(Violation::NonIntegral {
                    entity: r.entity,
                    rtype: r.rtype.clone(),
                    value: r.value,
                })
            }
            Some(ValueKind::Percent) if !(0.0..=100.0).contains(&r.value) => {
                out.push(Violation::PercentOutOfRange {
                    entity: r.entity,
                    rtype: r.rtype.clone(),
                    value: r.value,
                })
            }
            _ => {}
        }
    }

    for team in table.teams() {
        let id = team.entity.id;
        let quarters: Option<Vec<f64>> = QUARTER_TYPES.iter().map(|q| table.lookup(id, q)).collect();
        if let (Some(qs), Some(pts)) = (quarters, table.lookup(id, "TEAM-PTS")) {
            let sum: f64 = qs.iter().sum();
            if sum != pts {
                out.push(Violation::QuarterSum {
                    team: id,
                    quarters: sum,
                    points: pts,
                });
            }
        }
    }
    out
}
