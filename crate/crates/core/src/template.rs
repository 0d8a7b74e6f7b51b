//! Deterministic template summaries: one opening sentence with records and
//! the final score, then one sentence per top scorer.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plan::{ContentPlan, PlanItem};
use crate::summary::Summary;
use crate::table::{EntityId, GameTable, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateConfig {
    pub k_players: usize,
}

impl Default for TemplateConfig {
    fn default() -> Self {
        Self { k_players: 6 }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum TemplateError {
    #[error("k_players must be at least 1")]
    NoPlayers,
    #[error("missing record {rtype} for {entity}")]
    MissingRecord { entity: String, rtype: String },
    #[error("team scores are tied at {0}")]
    TiedScore(f64),
}

const PLAYER_SLOTS: [&str; 7] = ["FGM", "FGA", "FG3M", "FG3A", "FTM", "FTA", "REB"];

struct Writer<'a> {
    table: &'a GameTable,
    tokens: Vec<String>,
    facts: Vec<PlanItem>,
}

impl Writer<'_> {
    fn words(&mut self, text: &str) {
        self.tokens.extend(text.split_whitespace().map(str::to_string));
    }

    fn value(&self, entity: EntityId, rtype: &str) -> Result<f64, TemplateError> {
        self.table
            .lookup(entity, rtype)
            .ok_or_else(|| TemplateError::MissingRecord {
                entity: self.table.entity(entity).map(|e| e.name()).unwrap_or_default(),
                rtype: rtype.to_string(),
            })
    }

    fn fact(&mut self, entity: EntityId, rtype: &str) -> Result<(), TemplateError> {
        let value = self.value(entity, rtype)?;
        let side = self.table.entity(entity).map_or(Side::Home, |e| e.side);
        self.facts.push(PlanItem {
            entity,
            value,
            rtype: rtype.to_string(),
            side,
            token_index: self.tokens.len(),
        });
        self.tokens.push(format!("{value}"));
        Ok(())
    }
}

/// Players ordered by points, then rebounds, both descending, then name.
/// Players without a PTS record are skipped.
fn ranked_players(table: &GameTable) -> Vec<EntityId> {
    let mut ranked: Vec<(f64, f64, String, EntityId)> = table
        .players
        .iter()
        .filter_map(|p| {
            let id = p.entity.id;
            let pts = table.lookup(id, "PTS")?;
            let reb = table.lookup(id, "REB").unwrap_or(0.0);
            Some((pts, reb, p.entity.name(), id))
        })
        .collect();
    ranked.sort_by(|a, b| {
        b.0.total_cmp(&a.0)
            .then(b.1.total_cmp(&a.1))
            .then_with(|| a.2.cmp(&b.2))
    });
    ranked.into_iter().map(|r| r.3).collect()
}

/// Renders the summary together with the facts it states, in token order.
pub fn render_template_with_plan(
    table: &GameTable,
    cfg: &TemplateConfig,
) -> Result<(Summary, ContentPlan), TemplateError> {
    if cfg.k_players == 0 {
        return Err(TemplateError::NoPlayers);
    }
    let mut w = Writer {
        table,
        tokens: Vec::new(),
        facts: Vec::new(),
    };
    let home = table.home.entity.id;
    let vis = table.vis.entity.id;
    let (hp, vp) = (w.value(home, "TEAM-PTS")?, w.value(vis, "TEAM-PTS")?);
    if hp == vp {
        return Err(TemplateError::TiedScore(hp));
    }
    let (winner, loser) = if hp > vp { (home, vis) } else { (vis, home) };

    w.words(&table.entity(winner).expect("team").name());
    w.words("(");
    w.fact(winner, "TEAM-WINS")?;
    w.words("-");
    w.fact(winner, "TEAM-LOSSES")?;
    w.words(") defeated the");
    w.words(&table.entity(loser).expect("team").name());
    w.words("(");
    w.fact(loser, "TEAM-WINS")?;
    w.words("-");
    w.fact(loser, "TEAM-LOSSES")?;
    w.words(")");
    w.fact(winner, "TEAM-PTS")?;
    w.words("-");
    w.fact(loser, "TEAM-PTS")?;
    w.words(".");

    for id in ranked_players(table).into_iter().take(cfg.k_players) {
        for rtype in PLAYER_SLOTS {
            w.value(id, rtype)?;
        }
        w.words(&table.entity(id).expect("rostered").name());
        w.words("scored");
        w.fact(id, "PTS")?;
        w.words("points (");
        w.fact(id, "FGM")?;
        w.words("-");
        w.fact(id, "FGA")?;
        w.words("FG ,");
        w.fact(id, "FG3M")?;
        w.words("-");
        w.fact(id, "FG3A")?;
        w.words("3PT ,");
        w.fact(id, "FTM")?;
        w.words("-");
        w.fact(id, "FTA")?;
        w.words("FT ) to go with");
        w.fact(id, "REB")?;
        w.words("rebounds .");
    }
    Ok((Summary::from_tokens(w.tokens), ContentPlan::new(w.facts)))
}

pub fn render_template(table: &GameTable, cfg: &TemplateConfig) -> Result<Summary, TemplateError> {
    render_template_with_plan(table, cfg).map(|(s, _)| s)
}
