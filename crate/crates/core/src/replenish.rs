//! Derived team statistics: shooting totals summed over players, and the
//! twelve point-breakdown types (quarter/half sums and differences, bench and
//! starter points).
//!
//! Difference types are stored on each team from that team's perspective
//! (own minus opponent), so the home and visitor values are negatives of each
//! other. Overtime is not modelled.

use serde::{Deserialize, Serialize};

use crate::table::{GameTable, Side};

/// (team type, player column) pairs.
pub const SHOOTING_TOTALS: [(&str, &str); 6] = [
    ("TEAM_FGM", "FGM"),
    ("TEAM_FGA", "FGA"),
    ("TEAM_FG3M", "FG3M"),
    ("TEAM_FG3A", "FG3A"),
    ("TEAM_FTM", "FTM"),
    ("TEAM_FTA", "FTA"),
];

pub const BREAKDOWN_TYPES: [&str; 12] = [
    "PTS_QTR_1to2",
    "PTS_QTR_1to3",
    "PTS_QTR_2to3",
    "PTS_QTR_2to4",
    "PTS_BENCH",
    "PTS_STARTERS",
    "DIFF_HALF1",
    "DIFF_HALF2",
    "DIFF_QTR1",
    "DIFF_QTR2",
    "DIFF_QTR3",
    "DIFF_QTR4",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DerivedOp {
    Sum,
    Diff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DerivedSource {
    /// 1-based quarter numbers.
    Quarters(&'static [u8]),
    Bench,
    Starters,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DerivedSide {
    PerTeam,
    BetweenTeams,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DerivedTypeSpec {
    pub name: &'static str,
    pub op: DerivedOp,
    pub source: DerivedSource,
    pub side: DerivedSide,
}

const fn sum(name: &'static str, source: DerivedSource) -> DerivedTypeSpec {
    DerivedTypeSpec {
        name,
        op: DerivedOp::Sum,
        source,
        side: DerivedSide::PerTeam,
    }
}

const fn diff(name: &'static str, quarters: &'static [u8]) -> DerivedTypeSpec {
    DerivedTypeSpec {
        name,
        op: DerivedOp::Diff,
        source: DerivedSource::Quarters(quarters),
        side: DerivedSide::BetweenTeams,
    }
}

pub const BREAKDOWNS: [DerivedTypeSpec; 12] = [
    sum("PTS_QTR_1to2", DerivedSource::Quarters(&[1, 2])),
    sum("PTS_QTR_1to3", DerivedSource::Quarters(&[1, 2, 3])),
    sum("PTS_QTR_2to3", DerivedSource::Quarters(&[2, 3])),
    sum("PTS_QTR_2to4", DerivedSource::Quarters(&[2, 3, 4])),
    sum("PTS_BENCH", DerivedSource::Bench),
    sum("PTS_STARTERS", DerivedSource::Starters),
    diff("DIFF_HALF1", &[1, 2]),
    diff("DIFF_HALF2", &[3, 4]),
    diff("DIFF_QTR1", &[1]),
    diff("DIFF_QTR2", &[2]),
    diff("DIFF_QTR3", &[3]),
    diff("DIFF_QTR4", &[4]),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReplenishWarning {
    /// No player on this side has the column.
    MissingPlayerColumn { side: Side, column: String },
    MissingQuarters { side: Side },
    MissingPlayerPoints { side: Side },
}

impl std::fmt::Display for ReplenishWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReplenishWarning::MissingPlayerColumn { side, column } => {
                write!(f, "{side:?}: no player has {column}; team total skipped")
            }
            ReplenishWarning::MissingQuarters { side } => {
                write!(f, "{side:?}: quarter points missing; quarter breakdowns skipped")
            }
            ReplenishWarning::MissingPlayerPoints { side } => {
                write!(f, "{side:?}: player points missing; bench/starter points skipped")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Replenished {
    pub table: GameTable,
    pub warnings: Vec<ReplenishWarning>,
}

/// Sum of a player column over one side. `None` when the side has players
/// but none of them has the column.
fn player_sum(table: &GameTable, side: Side, column: &str, filter: impl Fn(bool) -> bool) -> Option<f64> {
    let players: Vec<_> = table.players_on(side).filter(|p| filter(p.is_starter())).collect();
    if players.is_empty() {
        return Some(0.0);
    }
    let values: Vec<f64> = players
        .iter()
        .filter_map(|p| table.lookup(p.entity.id, column))
        .collect();
    (!values.is_empty()).then(|| values.iter().sum())
}

pub fn aggregate_shooting(table: &GameTable) -> Replenished {
    let mut out = table.clone();
    let mut warnings = Vec::new();
    for side in [Side::Home, Side::Away] {
        for (team_type, column) in SHOOTING_TOTALS {
            match player_sum(table, side, column, |_| true) {
                Some(v) => out.set_team(side, team_type, v),
                None => warnings.push(ReplenishWarning::MissingPlayerColumn {
                    side,
                    column: column.to_string(),
                }),
            }
        }
    }
    Replenished {
        table: out,
        warnings,
    }
}

fn quarters(table: &GameTable, side: Side) -> Option<[f64; 4]> {
    let mut q = [0.0; 4];
    for (i, slot) in q.iter_mut().enumerate() {
        *slot = table.team_value(side, &format!("TEAM-PTS_QTR{}", i + 1))?;
    }
    Some(q)
}

fn quarter_sum(q: &[f64; 4], which: &[u8]) -> f64 {
    which.iter().map(|&k| q[k as usize - 1]).sum()
}

pub fn point_breakdowns(table: &GameTable) -> Replenished {
    let mut out = table.clone();
    let mut warnings = Vec::new();
    let home_q = quarters(table, Side::Home);
    let vis_q = quarters(table, Side::Away);
    for side in [Side::Home, Side::Away] {
        let (own, opp) = match side {
            Side::Home => (home_q, vis_q),
            Side::Away => (vis_q, home_q),
        };
        if own.is_none() {
            warnings.push(ReplenishWarning::MissingQuarters { side });
        }
        let mut points_warned = false;
        for spec in BREAKDOWNS {
            let value = match (spec.op, spec.source) {
                (DerivedOp::Sum, DerivedSource::Quarters(qs)) => own.map(|q| quarter_sum(&q, qs)),
                (DerivedOp::Diff, DerivedSource::Quarters(qs)) => match (own, opp) {
                    (Some(a), Some(b)) => Some(quarter_sum(&a, qs) - quarter_sum(&b, qs)),
                    _ => None,
                },
                (_, DerivedSource::Bench) => player_sum(table, side, "PTS", |starter| !starter),
                (_, DerivedSource::Starters) => player_sum(table, side, "PTS", |starter| starter),
            };
            match value {
                Some(v) => out.set_team(side, spec.name, v),
                None if matches!(spec.source, DerivedSource::Bench | DerivedSource::Starters) => {
                    if !points_warned {
                        warnings.push(ReplenishWarning::MissingPlayerPoints { side });
                        points_warned = true;
                    }
                }
                None => {}
            }
        }
    }
    Replenished {
        table: out,
        warnings,
    }
}

/// Shooting totals then point breakdowns. Idempotent: derived values are
/// recomputed from base records and overwrite any stale ones.
pub fn replenish(table: &GameTable) -> Replenished {
    let shooting = aggregate_shooting(table);
    let mut breakdowns = point_breakdowns(&shooting.table);
    let mut warnings = shooting.warnings;
    warnings.append(&mut breakdowns.warnings);
    Replenished {
        table: breakdowns.table,
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn game() -> GameTable {
        let mut t = GameTable::new("g", "d", ("Houston", "Rockets"), ("Denver", "Nuggets"));
        for q in 1..=4 {
            t.set_team(Side::Home, &format!("TEAM-PTS_QTR{q}"), 25.0);
            t.set_team(Side::Away, &format!("TEAM-PTS_QTR{q}"), 20.0);
        }
        t
    }

    #[test]
    fn shooting_sum() {
        let mut t = game();
        for fgm in [5.0, 7.0] {
            let p = t.add_player(&format!("P{fgm} X"), Side::Home, None);
            for (_, col) in SHOOTING_TOTALS {
                t.set(p, col, fgm);
            }
        }
        let r = aggregate_shooting(&t);
        assert_eq!(r.table.team_value(Side::Home, "TEAM_FGM"), Some(12.0));
        // visitors have no players: empty sums
        assert_eq!(r.table.team_value(Side::Away, "TEAM_FGM"), Some(0.0));
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn missing_column_warns() {
        let mut t = game();
        t.add_player("A B", Side::Home, None);
        let r = aggregate_shooting(&t);
        assert_eq!(r.warnings.len(), 6);
        assert_eq!(r.table.team_value(Side::Home, "TEAM_FGM"), None);
    }

    #[test]
    fn breakdown_arithmetic() {
        let r = point_breakdowns(&game());
        let t = &r.table;
        assert_eq!(t.team_value(Side::Home, "PTS_QTR_1to3"), Some(75.0));
        assert_eq!(t.team_value(Side::Home, "PTS_QTR_1to2"), Some(50.0));
        assert_eq!(t.team_value(Side::Home, "PTS_QTR_2to4"), Some(75.0));
        assert_eq!(t.team_value(Side::Home, "DIFF_HALF1"), Some(10.0));
        assert_eq!(t.team_value(Side::Away, "DIFF_HALF1"), Some(-10.0));
        assert_eq!(t.team_value(Side::Away, "DIFF_QTR3"), Some(-5.0));
    }

    #[test]
    fn starters_and_bench() {
        let mut t = game();
        for i in 0..5 {
            let p = t.add_player(&format!("Starter {i}"), Side::Home, Some("G"));
            t.set(p, "PTS", 10.0);
        }
        for i in 0..2 {
            let p = t.add_player(&format!("Bench {i}"), Side::Home, None);
            t.set(p, "PTS", 5.0);
        }
        let r = point_breakdowns(&t);
        assert_eq!(r.table.team_value(Side::Home, "PTS_STARTERS"), Some(50.0));
        assert_eq!(r.table.team_value(Side::Home, "PTS_BENCH"), Some(10.0));
    }

    #[test]
    fn missing_quarters() {
        let t = GameTable::new("g", "d", ("A", "B"), ("C", "D"));
        let r = point_breakdowns(&t);
        assert!(r.warnings.contains(&ReplenishWarning::MissingQuarters { side: Side::Home }));
        assert_eq!(r.table.team_value(Side::Home, "DIFF_QTR1"), None);
        // empty rosters still give bench/starter sums of zero
        assert_eq!(r.table.team_value(Side::Home, "PTS_BENCH"), Some(0.0));
    }

    #[test]
    fn stale_values_overwritten() {
        let mut t = game();
        t.set_team(Side::Home, "PTS_QTR_1to2", 999.0);
        let once = replenish(&t).table;
        assert_eq!(once.team_value(Side::Home, "PTS_QTR_1to2"), Some(50.0));
        assert_eq!(replenish(&once).table, once);
    }
}
