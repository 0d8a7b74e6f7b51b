use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::CorpusError;
use crate::schema::{SchemaRegistry, ValueKind};
use crate::summary::{Sample, Summary};
use crate::table::{validate_table_with, EntityKind, GameTable, Player, Side};

const NAME_COLUMNS: [&str; 6] = [
    "PLAYER_NAME",
    "FIRST_NAME",
    "SECOND_NAME",
    "START_POSITION",
    "TEAM_CITY",
    "TEAM_NAME",
];

#[derive(Debug, Serialize, Deserialize)]
struct RawGame {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    game_id: Option<String>,
    #[serde(alias = "day")]
    date: String,
    home_name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    home_city: Option<String>,
    vis_name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vis_city: Option<String>,
    home_line: BTreeMap<String, Value>,
    vis_line: BTreeMap<String, Value>,
    box_score: BTreeMap<String, BTreeMap<String, Value>>,
    summary: Vec<String>,
}

/// A game the loader refused, with every reason found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    /// Position in the input file.
    pub index: usize,
    pub game_id: Option<String>,
    pub reasons: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct LoadReport {
    pub samples: Vec<Sample>,
    pub rejections: Vec<Rejection>,
    /// Non-fatal notes, such as skipped unknown columns.
    pub warnings: Vec<String>,
}

fn text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) if s.is_empty() || s == "N/A" => None,
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

fn number(v: &Value) -> Result<Option<f64>, String> {
    match v {
        Value::Null => Ok(None),
        Value::Number(n) => n.as_f64().map(Some).ok_or_else(|| format!("bad number {n}")),
        Value::String(s) if s.is_empty() || s == "N/A" => Ok(None),
        Value::String(s) => s.trim().parse::<f64>().map(Some).map_err(|_| format!("cannot parse `{s}`")),
        other => Err(format!("unexpected value {other}")),
    }
}

fn index_order(a: &str, b: &str) -> std::cmp::Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        _ => a.cmp(b),
    }
}

struct GameBuilder<'a> {
    schema: &'a SchemaRegistry,
    reasons: Vec<String>,
    warnings: Vec<String>,
}

impl GameBuilder<'_> {
    fn team_line(&mut self, table: &mut GameTable, side: Side, field: &str, line: &BTreeMap<String, Value>) {
        for (col, v) in line {
            match self.schema.get(col) {
                Some(t) if t.category == EntityKind::Team && t.value_kind == ValueKind::Text => {}
                Some(t) if t.category == EntityKind::Team => match number(v) {
                    Ok(Some(x)) => table.set_team(side, col, x),
                    Ok(None) => {}
                    Err(e) => self.reasons.push(format!("{field}.{col}: {e}")),
                },
                _ => self.warnings.push(format!("{field}.{col}: unknown team type, skipped")),
            }
        }
    }

    fn build(&mut self, raw: &RawGame, game_id: &str) -> GameTable {
        let home_city = raw
            .home_city
            .clone()
            .or_else(|| raw.home_line.get("TEAM-CITY").and_then(text))
            .unwrap_or_default();
        let vis_city = raw
            .vis_city
            .clone()
            .or_else(|| raw.vis_line.get("TEAM-CITY").and_then(text))
            .unwrap_or_default();
        if home_city.is_empty() {
            self.reasons.push("home_city: missing (and no TEAM-CITY in home_line)".into());
        }
        if vis_city.is_empty() {
            self.reasons.push("vis_city: missing (and no TEAM-CITY in vis_line)".into());
        }
        let mut table = GameTable::new(
            game_id,
            &raw.date,
            (&home_city, &raw.home_name),
            (&vis_city, &raw.vis_name),
        );
        self.team_line(&mut table, Side::Home, "home_line", &raw.home_line);
        self.team_line(&mut table, Side::Away, "vis_line", &raw.vis_line);

        let empty = BTreeMap::new();
        let col = |name: &str| raw.box_score.get(name).unwrap_or(&empty);
        let names = col("PLAYER_NAME");
        let mut indices: Vec<&String> = names.keys().collect();
        indices.sort_by(|a, b| index_order(a, b));
        for (name, column) in &raw.box_score {
            if let Some(stray) = column.keys().find(|k| !names.contains_key(*k)) {
                self.reasons
                    .push(format!("box_score.{name}: player index {stray} has no PLAYER_NAME"));
            }
        }
        for idx in indices {
            let Some(full) = text(&names[idx]) else {
                self.reasons.push(format!("box_score.PLAYER_NAME.{idx}: empty name"));
                continue;
            };
            let get = |c: &str| col(c).get(idx).and_then(text);
            let side = match (get("TEAM_CITY"), get("TEAM_NAME")) {
                (Some(c), _) if c == home_city && c != vis_city => Some(Side::Home),
                (Some(c), _) if c == vis_city && c != home_city => Some(Side::Away),
                (_, Some(n)) if n == raw.home_name && n != raw.vis_name => Some(Side::Home),
                (_, Some(n)) if n == raw.vis_name && n != raw.home_name => Some(Side::Away),
                _ => None,
            };
            let Some(side) = side else {
                self.reasons
                    .push(format!("box_score.TEAM_CITY.{idx}: cannot tell which team {full} plays for"));
                continue;
            };
            let first = get("FIRST_NAME");
            let second = get("SECOND_NAME");
            let names = match (&first, &second) {
                (Some(f), Some(s)) => Some((f.as_str(), s.as_str())),
                _ => None,
            };
            let id = table.next_entity_id();
            let start = get("START_POSITION");
            table
                .players
                .push(Player::new(id, side, idx, &full, names, start.as_deref()));
        }

        let ids: BTreeMap<String, _> = table
            .players
            .iter()
            .map(|p| (p.box_index.clone(), p.entity.id))
            .collect();
        for (name, column) in &raw.box_score {
            if NAME_COLUMNS.contains(&name.as_str()) {
                continue;
            }
            match self.schema.get(name) {
                Some(t) if t.category == EntityKind::Player && t.is_numeric() => {}
                _ => {
                    self.warnings
                        .push(format!("box_score.{name}: unknown player type, skipped"));
                    continue;
                }
            }
            let mut cells: Vec<(&String, &Value)> = column.iter().collect();
            cells.sort_by(|a, b| index_order(a.0, b.0));
            for (idx, v) in cells {
                let Some(&id) = ids.get(idx) else { continue };
                match number(v) {
                    Ok(Some(x)) => table.set(id, name, x),
                    Ok(None) => {}
                    Err(e) => self.reasons.push(format!("box_score.{name}.{idx}: {e}")),
                }
            }
        }
        table
    }
}

fn parse_games(text: &str, origin: &str) -> Result<Vec<Value>, CorpusError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        serde_json::from_str(text).map_err(|e| CorpusError::Parse {
            context: format!("{origin}:{}:{}", e.line(), e.column()),
            message: e.to_string(),
        })
    } else {
        text.lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                serde_json::from_str(l).map_err(|e| CorpusError::Parse {
                    context: format!("{origin}:{}", i + 1),
                    message: e.to_string(),
                })
            })
            .collect()
    }
}

/// Parses corpus text (JSON array or one game per line).
pub fn from_json_str(text: &str, schema: &SchemaRegistry) -> Result<LoadReport, CorpusError> {
    from_json_str_named(text, "<input>", schema)
}

fn from_json_str_named(text: &str, origin: &str, schema: &SchemaRegistry) -> Result<LoadReport, CorpusError> {
    let mut report = LoadReport::default();
    for (index, value) in parse_games(text, origin)?.into_iter().enumerate() {
        let declared_id = value.get("game_id").and_then(Value::as_str).map(str::to_string);
        let raw: RawGame = match serde_json::from_value(value) {
            Ok(r) => r,
            Err(e) => {
                report.rejections.push(Rejection {
                    index,
                    game_id: declared_id,
                    reasons: vec![e.to_string()],
                });
                continue;
            }
        };
        let game_id = raw.game_id.clone().unwrap_or_else(|| format!("game-{index:05}"));
        let mut builder = GameBuilder {
            schema,
            reasons: Vec::new(),
            warnings: Vec::new(),
        };
        let table = builder.build(&raw, &game_id);
        builder
            .reasons
            .extend(validate_table_with(&table, schema).iter().map(ToString::to_string));
        report
            .warnings
            .extend(builder.warnings.into_iter().map(|w| format!("{game_id}: {w}")));
        if builder.reasons.is_empty() {
            report.samples.push(Sample {
                table,
                summary: Summary::from_tokens(raw.summary),
            });
        } else {
            report.rejections.push(Rejection {
                index,
                game_id: Some(game_id),
                reasons: builder.reasons,
            });
        }
    }
    Ok(report)
}

pub fn load_corpus(path: &Path) -> Result<LoadReport, CorpusError> {
    load_corpus_with(path, &SchemaRegistry::default())
}

pub fn load_corpus_with(path: &Path, schema: &SchemaRegistry) -> Result<LoadReport, CorpusError> {
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    from_json_str_named(&text, &path.display().to_string(), schema)
}

fn cell(v: f64) -> Value {
    Value::String(format!("{v}"))
}

fn to_raw(sample: &Sample) -> RawGame {
    let t = &sample.table;
    let line = |side: Side| {
        let team = t.team(side);
        let mut m: BTreeMap<String, Value> = t
            .records
            .iter()
            .filter(|r| r.entity == team.entity.id)
            .map(|r| (r.rtype.clone(), cell(r.value)))
            .collect();
        m.insert("TEAM-CITY".into(), Value::String(team.city.clone()));
        m.insert("TEAM-NAME".into(), Value::String(team.nickname.clone()));
        m
    };
    let same_city = t.home.city == t.vis.city;
    let mut box_score: BTreeMap<String, BTreeMap<String, Value>> = BTreeMap::new();
    for p in &t.players {
        let idx = p.box_index.clone();
        let team = t.team(p.entity.side);
        let mut put = |col: &str, v: Value| {
            box_score.entry(col.to_string()).or_default().insert(idx.clone(), v);
        };
        put("PLAYER_NAME", Value::String(p.entity.name()));
        put("FIRST_NAME", Value::String(p.first_name.clone()));
        put("SECOND_NAME", Value::String(p.second_name.clone()));
        put(
            "START_POSITION",
            Value::String(p.start_position.clone().unwrap_or_else(|| "N/A".into())),
        );
        put("TEAM_CITY", Value::String(team.city.clone()));
        if same_city {
            put("TEAM_NAME", Value::String(team.nickname.clone()));
        }
        for r in t.records.iter().filter(|r| r.entity == p.entity.id) {
            put(&r.rtype, cell(r.value));
        }
    }
    RawGame {
        game_id: Some(t.game_id.clone()),
        date: t.date.clone(),
        home_name: t.home.nickname.clone(),
        home_city: Some(t.home.city.clone()),
        vis_name: t.vis.nickname.clone(),
        vis_city: Some(t.vis.city.clone()),
        home_line: line(Side::Home),
        vis_line: line(Side::Away),
        box_score,
        summary: sample.summary.tokens.clone(),
    }
}

/// Canonical text form: sorted keys, values as strings. `jsonl` writes one
/// compact game per line, otherwise a pretty-printed array.
pub fn to_json_string(samples: &[Sample], jsonl: bool) -> String {
    let raws: Vec<RawGame> = samples.iter().map(to_raw).collect();
    let mut out = if jsonl {
        raws.iter()
            .map(|r| serde_json::to_string(r).expect("game serializes"))
            .collect::<Vec<_>>()
            .join("\n")
    } else {
        serde_json::to_string_pretty(&raws).expect("corpus serializes")
    };
    out.push('\n');
    out
}

/// Writes JSON lines when the path ends in `.jsonl`, a JSON array otherwise.
pub fn save_corpus(path: &Path, samples: &[Sample]) -> Result<(), CorpusError> {
    let jsonl = path.extension().is_some_and(|e| e == "jsonl");
    std::fs::write(path, to_json_string(samples, jsonl)).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })
}
