//! Type cues: token patterns with numeric slots that say which record type a
//! numeral refers to.
//!
//! Pattern syntax (whitespace separated):
//!
//! * `NUM` a numeric slot;
//! * `ENT` zero-width, a mention of the owning entity ends here;
//! * `...` skips up to [`GAP_MAX`] non-numeric tokens inside the sentence;
//! * `a|b|c` a word matching any alternative, case-insensitively.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeralize::parse_numeral;

pub const GAP_MAX: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CueToken {
    Num,
    Owner,
    Gap,
    Word(Vec<String>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CueScope {
    Player,
    Team,
    Either,
    /// Slot `k` belongs to the `k`-th distinct team mentioned in the sentence.
    Pair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CueSpec", into = "CueSpec")]
pub struct TypeCue {
    pub pattern: Vec<CueToken>,
    pub emitted_types: Vec<String>,
    pub scope: CueScope,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CueSpec {
    pattern: String,
    types: Vec<String>,
    scope: CueScope,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CueError {
    #[error("cue `{pattern}` has {slots} NUM slots but {types} emitted types")]
    SlotMismatch {
        pattern: String,
        slots: usize,
        types: usize,
    },
    #[error("cue `{0}` has no NUM slot")]
    NoSlot(String),
    #[error("cue `{0}`: `...` cannot open or close a pattern")]
    DanglingGap(String),
    #[error("cue `{0}`: `ENT` is only allowed as the first element")]
    MisplacedOwner(String),
    #[error("pair cue `{0}` needs exactly two slots")]
    PairArity(String),
    #[error("reading cue file: {0}")]
    Io(String),
    #[error("parsing cue file: {0}")]
    Parse(String),
}

impl TryFrom<CueSpec> for TypeCue {
    type Error = CueError;

    fn try_from(spec: CueSpec) -> Result<Self, CueError> {
        TypeCue::new(&spec.pattern, &spec.types, spec.scope)
    }
}

impl From<TypeCue> for CueSpec {
    fn from(c: TypeCue) -> Self {
        CueSpec {
            pattern: c.pattern_text(),
            types: c.emitted_types,
            scope: c.scope,
        }
    }
}

impl TypeCue {
    pub fn new<S: AsRef<str>>(pattern: &str, types: &[S], scope: CueScope) -> Result<Self, CueError> {
        let toks: Vec<CueToken> = pattern
            .split_whitespace()
            .map(|t| match t {
                "NUM" => CueToken::Num,
                "ENT" => CueToken::Owner,
                "..." => CueToken::Gap,
                w => CueToken::Word(w.split('|').map(str::to_lowercase).collect()),
            })
            .collect();
        let slots = toks.iter().filter(|t| **t == CueToken::Num).count();
        if slots == 0 {
            return Err(CueError::NoSlot(pattern.to_string()));
        }
        if slots != types.len() {
            return Err(CueError::SlotMismatch {
                pattern: pattern.to_string(),
                slots,
                types: types.len(),
            });
        }
        if toks.first() == Some(&CueToken::Gap) || toks.last() == Some(&CueToken::Gap) {
            return Err(CueError::DanglingGap(pattern.to_string()));
        }
        if toks.iter().skip(1).any(|t| *t == CueToken::Owner) {
            return Err(CueError::MisplacedOwner(pattern.to_string()));
        }
        if scope == CueScope::Pair && slots != 2 {
            return Err(CueError::PairArity(pattern.to_string()));
        }
        Ok(Self {
            pattern: toks,
            emitted_types: types.iter().map(|s| s.as_ref().to_string()).collect(),
            scope,
        })
    }

    pub fn pattern_text(&self) -> String {
        self.pattern
            .iter()
            .map(|t| match t {
                CueToken::Num => "NUM".to_string(),
                CueToken::Owner => "ENT".to_string(),
                CueToken::Gap => "...".to_string(),
                CueToken::Word(alts) => alts.join("|"),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Elements that must be consumed; used to prefer longer patterns.
    pub fn weight(&self) -> usize {
        self.pattern.iter().filter(|t| **t != CueToken::Gap).count()
    }

    fn slot_positions(&self) -> Vec<usize> {
        self.pattern
            .iter()
            .enumerate()
            .filter(|(_, t)| **t == CueToken::Num)
            .map(|(i, _)| i)
            .collect()
    }

    /// Tries to match with numeric slot `slot` anchored at token `at`, never
    /// leaving `bounds`. `owner_ends` tells whether a mention of the owner
    /// ends at a given index.
    pub fn match_at(
        &self,
        tokens: &[String],
        bounds: std::ops::Range<usize>,
        at: usize,
        slot: usize,
        owner_ends: &dyn Fn(usize) -> bool,
    ) -> bool {
        let Some(&p) = self.slot_positions().get(slot) else {
            return false;
        };
        let m = Matcher {
            tokens,
            lo: bounds.start,
            hi: bounds.end,
            owner_ends,
        };
        m.forward(&self.pattern[p + 1..], at + 1) && m.backward(&self.pattern[..p], at)
    }
}

struct Matcher<'a> {
    tokens: &'a [String],
    lo: usize,
    hi: usize,
    owner_ends: &'a dyn Fn(usize) -> bool,
}

impl Matcher<'_> {
    fn token_ok(&self, tok: &CueToken, idx: usize) -> bool {
        let t = &self.tokens[idx];
        match tok {
            CueToken::Num => parse_numeral(t).is_some(),
            CueToken::Word(alts) => {
                let lower = t.to_lowercase();
                alts.iter().any(|a| *a == lower)
            }
            CueToken::Owner | CueToken::Gap => unreachable!(),
        }
    }

    fn gap_ok(&self, idx: usize) -> bool {
        parse_numeral(&self.tokens[idx]).is_none()
    }

    /// Matches `pat` starting at `pos`.
    fn forward(&self, pat: &[CueToken], pos: usize) -> bool {
        let Some((first, rest)) = pat.split_first() else {
            return true;
        };
        match first {
            CueToken::Owner => (self.owner_ends)(pos) && self.forward(rest, pos),
            CueToken::Gap => {
                let mut p = pos;
                for _ in 0..=GAP_MAX {
                    if self.forward(rest, p) {
                        return true;
                    }
                    if p >= self.hi || !self.gap_ok(p) {
                        return false;
                    }
                    p += 1;
                }
                false
            }
            tok => pos < self.hi && self.token_ok(tok, pos) && self.forward(rest, pos + 1),
        }
    }

    /// Matches `pat` so that it ends just before `end`.
    fn backward(&self, pat: &[CueToken], end: usize) -> bool {
        let Some((last, rest)) = pat.split_last() else {
            return true;
        };
        match last {
            CueToken::Owner => (self.owner_ends)(end) && self.backward(rest, end),
            CueToken::Gap => {
                let mut e = end;
                for _ in 0..=GAP_MAX {
                    if self.backward(rest, e) {
                        return true;
                    }
                    if e <= self.lo || !self.gap_ok(e - 1) {
                        return false;
                    }
                    e -= 1;
                }
                false
            }
            tok => end > self.lo && self.token_ok(tok, end - 1) && self.backward(rest, end - 1),
        }
    }
}

/// Ordered cue list. Earlier cues win ties.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CueLexicon {
    pub cues: Vec<TypeCue>,
}

impl CueLexicon {
    pub fn from_json(text: &str) -> Result<Self, CueError> {
        serde_json::from_str(text).map_err(|e| CueError::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CueError> {
        let text = std::fs::read_to_string(path).map_err(|e| CueError::Io(e.to_string()))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cue lexicon serializes")
    }
}

impl Default for CueLexicon {
    fn default() -> Self {
        default_cues()
    }
}

const PLAYER: CueScope = CueScope::Player;
const TEAM: CueScope = CueScope::Team;
const PAIR: CueScope = CueScope::Pair;

const QUARTER_WORDS: [(&str, &str); 4] = [
    ("first|1st", "1"),
    ("second|2nd", "2"),
    ("third|3rd", "3"),
    ("fourth|4th", "4"),
];

/// Shooting phrases shared by players and teams: (pattern, made/attempt or
/// percent suffix). `{}` expands to the player or team type stem.
const SHOOTING: [(&str, &str); 14] = [
    ("NUM - NUM FG", "FG"),
    ("NUM - NUM 3PT", "FG3"),
    ("NUM - NUM FT", "FT"),
    ("NUM - for - NUM ... three|3-point|three-point|arc|deep|3PT", "FG3"),
    ("NUM - for - NUM from|beyond 3", "FG3"),
    ("NUM - of - NUM from|beyond 3", "FG3"),
    ("NUM - of - NUM ... three|3-point|three-point|arc|deep|3PT", "FG3"),
    ("NUM - for - NUM ... free|charity|stripe", "FT"),
    ("NUM - of - NUM ... free|charity|stripe", "FT"),
    ("NUM - for - NUM ... field|floor", "FG"),
    ("NUM - of - NUM ... field|floor", "FG"),
    ("NUM - for - NUM shooting", "FG"),
    ("NUM - of - NUM shooting", "FG"),
    ("NUM - for - NUM", "FG"),
];

const PERCENTS: [(&str, &str); 4] = [
    ("NUM percent|% from|beyond 3", "FG3_PCT"),
    ("NUM percent|% ... three|3-point|three-point|arc|deep|3PT", "FG3_PCT"),
    ("NUM percent|% ... free|charity|stripe", "FT_PCT"),
    ("NUM percent|% ... field|floor", "FG_PCT"),
];

const PLAYER_COUNTS: [(&str, &str); 17] = [
    ("NUM offensive rebounds|rebound|boards|board", "OREB"),
    ("NUM defensive rebounds|rebound|boards|board", "DREB"),
    ("NUM blocked shots|shot", "BLK"),
    ("NUM personal fouls|foul", "PF"),
    ("NUM - point|points", "PTS"),
    ("NUM - rebound|rebounds", "REB"),
    ("NUM - assist|assists", "AST"),
    ("NUM - steal|steals", "STL"),
    ("NUM - block|blocks", "BLK"),
    ("NUM points|point|pts", "PTS"),
    ("NUM rebounds|rebound|boards|board|reb", "REB"),
    ("NUM assists|assist|dimes|ast", "AST"),
    ("NUM steals|steal|stl", "STL"),
    ("NUM blocks|block|blk", "BLK"),
    ("NUM turnovers|turnover", "TO"),
    ("NUM minutes|minute|min", "MIN"),
    ("NUM fouls|foul", "PF"),
];

const TEAM_COUNTS: [(&str, &str); 8] = [
    ("NUM bench points", "PTS_BENCH"),
    ("NUM points off|from the bench", "PTS_BENCH"),
    ("NUM points from|by its|their|the starters", "PTS_STARTERS"),
    ("NUM points in|by the first|1st half", "PTS_QTR_1to2"),
    ("NUM points|point|pts", "TEAM-PTS"),
    ("NUM rebounds|rebound|boards|board", "TEAM-REB"),
    ("NUM assists|assist", "TEAM-AST"),
    ("NUM turnovers|turnover", "TEAM-TOV"),
];

fn cue(pattern: &str, types: &[&str], scope: CueScope) -> TypeCue {
    TypeCue::new(pattern, types, scope).expect("default cue is well formed")
}

/// Built-in cue lexicon covering counting stats, shooting lines and
/// percentages for players and teams, team records, final scores, quarter
/// and half scores, and half-time margins.
pub fn default_cues() -> CueLexicon {
    let mut cues = Vec::new();

    cues.push(cue("ENT ( NUM - NUM )", &["TEAM-WINS", "TEAM-LOSSES"], TEAM));

    for (words, q) in QUARTER_WORDS {
        let qtr = format!("TEAM-PTS_QTR{q}");
        cues.push(cue(
            &format!("NUM - NUM in|after|of the {words} quarter|period"),
            &[&qtr, &qtr],
            PAIR,
        ));
        cues.push(cue(
            &format!("NUM points in|during the {words} quarter|period"),
            &[&qtr],
            TEAM,
        ));
    }
    let half = ["PTS_QTR_1to2", "PTS_QTR_1to2"];
    cues.push(cue("NUM - NUM at|by halftime|intermission", &half, PAIR));
    cues.push(cue("NUM - NUM at|by the half|break", &half, PAIR));
    cues.push(cue("NUM - NUM in the first|1st half", &half, PAIR));
    cues.push(cue("NUM - NUM after three|3 quarters", &["PTS_QTR_1to3", "PTS_QTR_1to3"], PAIR));
    cues.push(cue("NUM - point lead at|by halftime|intermission", &["DIFF_HALF1"], TEAM));
    cues.push(cue("NUM - point lead at|by the half|break", &["DIFF_HALF1"], TEAM));

    for (pat, stem) in SHOOTING {
        let (pm, pa) = (format!("{stem}M"), format!("{stem}A"));
        let (tm, ta) = (format!("TEAM_{stem}M"), format!("TEAM_{stem}A"));
        cues.push(cue(pat, &[&pm, &pa], PLAYER));
        cues.push(cue(pat, &[&tm, &ta], TEAM));
    }
    for (pat, ty) in PERCENTS {
        cues.push(cue(pat, &[ty], PLAYER));
        cues.push(cue(pat, &[&format!("TEAM-{ty}")], TEAM));
    }
    for (pat, ty) in PLAYER_COUNTS {
        cues.push(cue(pat, &[ty], PLAYER));
    }
    for (pat, ty) in TEAM_COUNTS {
        cues.push(cue(pat, &[ty], TEAM));
    }

    cues.push(cue("NUM - NUM", &["TEAM-PTS", "TEAM-PTS"], PAIR));
    CueLexicon { cues }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    fn matches(c: &TypeCue, text: &str, at: usize, slot: usize) -> bool {
        let t = toks(text);
        c.match_at(&t, 0..t.len(), at, slot, &|_| false)
    }

    #[test]
    fn slot_count_checked() {
        assert!(matches!(
            TypeCue::new("NUM - NUM FG", &["FGM"], PLAYER),
            Err(CueError::SlotMismatch { .. })
        ));
        assert!(matches!(TypeCue::new("points", &[] as &[&str], PLAYER), Err(CueError::NoSlot(_))));
        assert!(TypeCue::new("... NUM", &["PTS"], PLAYER).is_err());
        assert!(TypeCue::new("NUM ENT", &["PTS"], PLAYER).is_err());
    }

    #[test]
    fn simple_and_pairs() {
        let c = cue("NUM points", &["PTS"], PLAYER);
        assert!(matches(&c, "furnished 12 points", 1, 0));
        assert!(!matches(&c, "furnished 12 rebounds", 1, 0));
        let fg = cue("NUM - NUM FG", &["FGM", "FGA"], PLAYER);
        assert!(matches(&fg, "( 7 - 13 FG ,", 1, 0));
        assert!(matches(&fg, "( 7 - 13 FG ,", 3, 1));
        assert!(!matches(&fg, "( 7 - 13 FG ,", 3, 0));
    }

    #[test]
    fn gaps_stop_at_numerals_and_bounds() {
        let c = cue("NUM percent ... field", &["FG_PCT"], PLAYER);
        assert!(matches(&c, "48 percent from the field", 0, 0));
        assert!(matches(&c, "48 percent field", 0, 0));
        assert!(!matches(&c, "48 percent from the a b c field", 0, 0));
        assert!(!matches(&c, "48 percent from 3 field", 0, 0));
        let t = toks("48 percent from the field");
        assert!(!c.match_at(&t, 0..4, 0, 0, &|_| false));
        let back = cue("out - scored ... NUM - NUM", &["A", "B"], PAIR);
        assert!(matches(&back, "out - scored the Nuggets 31 - 21", 5, 0));
        assert!(matches(&back, "out - scored the Nuggets 31 - 21", 7, 1));
    }

    #[test]
    fn owner_anchor() {
        let c = cue("ENT ( NUM - NUM )", &["TEAM-WINS", "TEAM-LOSSES"], TEAM);
        let t = toks("Houston Rockets ( 18 - 5 ) defeated");
        assert!(c.match_at(&t, 0..t.len(), 3, 0, &|i| i == 2));
        assert!(c.match_at(&t, 0..t.len(), 5, 1, &|i| i == 2));
        assert!(!c.match_at(&t, 0..t.len(), 3, 0, &|_| false));
    }

    #[test]
    fn json_round_trip() {
        let lex = default_cues();
        let back = CueLexicon::from_json(&lex.to_json()).unwrap();
        assert_eq!(lex, back);
        let bad = r#"[{"pattern": "NUM - NUM FG", "types": ["FGM"], "scope": "PLAYER"}]"#;
        assert!(CueLexicon::from_json(bad).is_err());
    }
}
