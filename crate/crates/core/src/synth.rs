//! Synthetic games with internally consistent box scores, and summaries
//! whose every numeral is grounded in the table.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::replenish::replenish;
use crate::summary::{Sample, Summary};
use crate::table::{EntityId, GameTable, Side};

const TEAMS: [(&str, &str); 12] = [
    ("Houston", "Rockets"),
    ("Denver", "Nuggets"),
    ("San Antonio", "Spurs"),
    ("Boston", "Celtics"),
    ("Miami", "Heat"),
    ("Chicago", "Bulls"),
    ("Golden State", "Warriors"),
    ("Toronto", "Raptors"),
    ("Utah", "Jazz"),
    ("Phoenix", "Suns"),
    ("Detroit", "Pistons"),
    ("Portland", "Trail Blazers"),
];

const FIRST_NAMES: [&str; 20] = [
    "Dwight", "Kawhi", "Jrue", "Goran", "Tobias", "Rudy", "Klay", "Serge", "Nikola", "Jusuf", "Danilo",
    "Kyle", "Lamarcus", "Demar", "Andre", "Zach", "Jimmy", "Bojan", "Enes", "Dario",
];

const LAST_NAMES: [&str; 24] = [
    "Howard", "Leonard", "Holiday", "Dragic", "Harris", "Gobert", "Thompson", "Ibaka", "Jokic",
    "Nurkic", "Gallinari", "Lowry", "Aldridge", "Derozan", "Drummond", "Lavine", "Butler",
    "Bogdanovic", "Kanter", "Saric", "Valanciunas", "Favors", "Hayward", "Mudiay",
];

const POSITIONS: [&str; 5] = ["G", "G", "F", "F", "C"];
const DAYS: [&str; 7] = ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"];
const ORDINALS: [&str; 4] = ["first", "second", "third", "fourth"];

fn pct(made: f64, attempted: f64) -> f64 {
    if attempted == 0.0 {
        0.0
    } else {
        (100.0 * made / attempted).round()
    }
}

fn player_line<R: Rng>(rng: &mut R, starter: bool) -> Vec<(&'static str, f64)> {
    let fga = rng.gen_range(0..=22);
    let fgm = rng.gen_range(0..=fga);
    let fg3a = rng.gen_range(0..=fga.min(10));
    let fg3m = rng.gen_range(0..=fg3a.min(fgm));
    let fta = rng.gen_range(0..=10);
    let ftm = rng.gen_range(0..=fta);
    let oreb = rng.gen_range(0..=4);
    let dreb = rng.gen_range(0..=10);
    let min = if starter { rng.gen_range(24..=42) } else { rng.gen_range(4..=30) };
    let f = |x: i32| f64::from(x);
    vec![
        ("MIN", f(min)),
        ("FGM", f(fgm)),
        ("FGA", f(fga)),
        ("FG3M", f(fg3m)),
        ("FG3A", f(fg3a)),
        ("FTM", f(ftm)),
        ("FTA", f(fta)),
        ("OREB", f(oreb)),
        ("DREB", f(dreb)),
        ("REB", f(oreb + dreb)),
        ("AST", f(rng.gen_range(0..=12))),
        ("STL", f(rng.gen_range(0..=4))),
        ("BLK", f(rng.gen_range(0..=4))),
        ("TO", f(rng.gen_range(0..=6))),
        ("PF", f(rng.gen_range(0..=6))),
        ("PTS", f(2 * fgm + fg3m + ftm)),
        ("FG_PCT", pct(f(fgm), f(fga))),
        ("FG3_PCT", pct(f(fg3m), f(fg3a))),
        ("FT_PCT", pct(f(ftm), f(fta))),
    ]
}

fn sum_col(t: &GameTable, side: Side, col: &str) -> f64 {
    t.players_on(side).filter_map(|p| t.lookup(p.entity.id, col)).sum()
}

fn fill_team_line<R: Rng>(rng: &mut R, t: &mut GameTable, side: Side) {
    let pts = sum_col(t, side, "PTS");
    let mut quarters = [0.0; 4];
    let mut left = pts;
    for q in quarters.iter_mut().take(3) {
        let share = ((pts / 4.0).round() + f64::from(rng.gen_range(-4..=4))).clamp(0.0, left);
        *q = share;
        left -= share;
    }
    quarters[3] = left;
    for (i, q) in quarters.iter().enumerate() {
        t.set_team(side, &format!("TEAM-PTS_QTR{}", i + 1), *q);
    }
    t.set_team(side, "TEAM-PTS", pts);
    let wins = rng.gen_range(0..=60);
    let losses = rng.gen_range(0..=(81 - wins));
    t.set_team(side, "TEAM-WINS", f64::from(wins));
    t.set_team(side, "TEAM-LOSSES", f64::from(losses));
    for (team, col) in [("TEAM-REB", "REB"), ("TEAM-AST", "AST"), ("TEAM-TOV", "TO")] {
        let v = sum_col(t, side, col);
        t.set_team(side, team, v);
    }
    for (team, m, a) in [
        ("TEAM-FG_PCT", "FGM", "FGA"),
        ("TEAM-FG3_PCT", "FG3M", "FG3A"),
        ("TEAM-FT_PCT", "FTM", "FTA"),
    ] {
        let v = pct(sum_col(t, side, m), sum_col(t, side, a));
        t.set_team(side, team, v);
    }
}

/// A consistent game with base records only. Team scores never tie.
pub fn synth_table<R: Rng>(rng: &mut R, game_id: &str) -> GameTable {
    loop {
        let teams: Vec<_> = TEAMS.choose_multiple(rng, 2).copied().collect();
        let mut t = GameTable::new(game_id, "2016-01-01", teams[0], teams[1]);
        let n_players = rng.gen_range(10..=16);
        let mut firsts = FIRST_NAMES;
        let mut lasts = LAST_NAMES;
        firsts.shuffle(rng);
        lasts.shuffle(rng);
        let names: Vec<(&str, &str)> = firsts.into_iter().zip(lasts).take(n_players).collect();
        for (i, (first, last)) in names.iter().enumerate() {
            let side = if i < n_players / 2 { Side::Home } else { Side::Away };
            let slot = if side == Side::Home { i } else { i - n_players / 2 };
            let pos = (slot < 5).then(|| POSITIONS[slot]);
            let id = t.add_player(&format!("{first} {last}"), side, pos);
            for (col, v) in player_line(rng, pos.is_some()) {
                t.set(id, col, v);
            }
        }
        fill_team_line(rng, &mut t, Side::Home);
        fill_team_line(rng, &mut t, Side::Away);
        if t.team_value(Side::Home, "TEAM-PTS") != t.team_value(Side::Away, "TEAM-PTS") {
            return t;
        }
    }
}

/// Sentence builder over whitespace-separated fragments.
struct Sentence(Vec<String>);

impl Sentence {
    fn new() -> Self {
        Sentence(Vec::new())
    }

    fn w(mut self, text: &str) -> Self {
        self.0.extend(text.split_whitespace().map(str::to_string));
        self
    }

    fn n(mut self, v: f64) -> Self {
        self.0.push(format!("{v}"));
        self
    }

    fn end(self) -> Vec<String> {
        self.w(".").0
    }
}

fn team_ref<R: Rng>(rng: &mut R, t: &GameTable, side: Side) -> String {
    let team = t.team(side);
    match rng.gen_range(0..3) {
        0 => format!("The {} {}", team.city, team.nickname),
        1 => team.city.clone(),
        _ => format!("The {}", team.nickname),
    }
}

fn the_team(t: &GameTable, side: Side) -> String {
    format!("the {}", t.team(side).nickname)
}

fn opening<R: Rng>(rng: &mut R, t: &GameTable) -> Vec<String> {
    let v = |s: Side, ty: &str| t.team_value(s, ty).expect("team line is complete");
    let (w, l) = if v(Side::Home, "TEAM-PTS") > v(Side::Away, "TEAM-PTS") {
        (Side::Home, Side::Away)
    } else {
        (Side::Away, Side::Home)
    };
    let verb = ["defeated", "beat", "topped"].choose(rng).expect("non-empty");
    let wt = t.team(w);
    let lt = t.team(l);
    let mut s = Sentence::new()
        .w(&format!("The {} {} (", wt.city, wt.nickname))
        .n(v(w, "TEAM-WINS"))
        .w("-")
        .n(v(w, "TEAM-LOSSES"))
        .w(&format!(") {verb} the {} {} (", lt.city, lt.nickname))
        .n(v(l, "TEAM-WINS"))
        .w("-")
        .n(v(l, "TEAM-LOSSES"))
        .w(")")
        .n(v(w, "TEAM-PTS"))
        .w("-")
        .n(v(l, "TEAM-PTS"));
    if rng.gen_bool(0.5) {
        s = s.w(&format!("on {}", DAYS.choose(rng).expect("non-empty")));
    }
    s.end()
}

fn quarter_sentence<R: Rng>(rng: &mut R, t: &GameTable) -> Vec<String> {
    let q = rng.gen_range(1..=4);
    let ty = format!("TEAM-PTS_QTR{q}");
    let h = t.team_value(Side::Home, &ty).expect("quarters present");
    let a = t.team_value(Side::Away, &ty).expect("quarters present");
    let (first, second) = if h >= a { (Side::Home, Side::Away) } else { (Side::Away, Side::Home) };
    let (x, y) = if first == Side::Home { (h, a) } else { (a, h) };
    Sentence::new()
        .w(&team_ref(rng, t, first))
        .w(&format!("outscored {}", the_team(t, second)))
        .n(x)
        .w("-")
        .n(y)
        .w(&format!("in the {} quarter", ORDINALS[q - 1]))
        .end()
}

fn halftime_sentence<R: Rng>(rng: &mut R, t: &GameTable) -> Vec<String> {
    let h = t.team_value(Side::Home, "PTS_QTR_1to2").expect("replenished");
    let a = t.team_value(Side::Away, "PTS_QTR_1to2").expect("replenished");
    let (first, second, x, y) = if h >= a {
        (Side::Home, Side::Away, h, a)
    } else {
        (Side::Away, Side::Home, a, h)
    };
    let verb = if x == y { "were tied with" } else { "led" };
    Sentence::new()
        .w(&team_ref(rng, t, first))
        .w(&format!("{verb} {}", the_team(t, second)))
        .n(x)
        .w("-")
        .n(y)
        .w(["at halftime", "at the half", "at the break"].choose(rng).expect("non-empty"))
        .end()
}

fn team_shooting_sentence<R: Rng>(rng: &mut R, t: &GameTable, side: Side) -> Vec<String> {
    let v = |ty: &str| t.team_value(side, ty).expect("team line is complete");
    let mut s = Sentence::new()
        .w(&team_ref(rng, t, side))
        .w("shot")
        .n(v("TEAM-FG_PCT"))
        .w("percent from the field");
    if rng.gen_bool(0.5) {
        s = s.w("and").n(v("TEAM-FG3_PCT")).w("percent from beyond the arc");
    }
    s.end()
}

fn bench_sentence<R: Rng>(rng: &mut R, t: &GameTable, side: Side) -> Vec<String> {
    let bench = t.team_value(side, "PTS_BENCH").expect("replenished");
    Sentence::new()
        .w(&team_ref(rng, t, side))
        .w("got")
        .n(bench)
        .w("bench points")
        .end()
}

fn player_sentences<R: Rng>(rng: &mut R, t: &GameTable, id: EntityId) -> Vec<Vec<String>> {
    let v = |ty: &str| t.lookup(id, ty).expect("player line is complete");
    let name = t.entity(id).expect("rostered").name();
    let mut out = Vec::new();
    let first = match rng.gen_range(0..5) {
        0 => Sentence::new()
            .w(&name)
            .w("scored")
            .n(v("PTS"))
            .w("points on")
            .n(v("FGM"))
            .w("- of -")
            .n(v("FGA"))
            .w("shooting , adding")
            .n(v("REB"))
            .w("rebounds and")
            .n(v("AST"))
            .w("assists in")
            .n(v("MIN"))
            .w("minutes"),
        1 => Sentence::new()
            .w(&name)
            .w("finished with")
            .n(v("PTS"))
            .w("points ,")
            .n(v("REB"))
            .w("rebounds and")
            .n(v("AST"))
            .w("assists"),
        2 => Sentence::new()
            .w(&name)
            .w("had")
            .n(v("PTS"))
            .w("points (")
            .n(v("FGM"))
            .w("-")
            .n(v("FGA"))
            .w("FG ,")
            .n(v("FG3M"))
            .w("-")
            .n(v("FG3A"))
            .w("3PT ,")
            .n(v("FTM"))
            .w("-")
            .n(v("FTA"))
            .w("FT )"),
        3 => Sentence::new()
            .w(&name)
            .w("went")
            .n(v("FG3M"))
            .w("- for -")
            .n(v("FG3A"))
            .w("from deep and scored")
            .n(v("PTS"))
            .w("points"),
        _ => Sentence::new()
            .w(&name)
            .w("chipped in")
            .n(v("STL"))
            .w("steals ,")
            .n(v("BLK"))
            .w("blocks and")
            .n(v("TO"))
            .w("turnovers"),
    };
    out.push(first.end());
    if rng.gen_bool(0.4) {
        let follow = if v("FGA") > 0.0 && rng.gen_bool(0.5) {
            Sentence::new().w("He shot").n(v("FG_PCT")).w("percent from the field")
        } else {
            Sentence::new()
                .w("He also had")
                .n(v("STL"))
                .w("steals in")
                .n(v("MIN"))
                .w("minutes")
        };
        out.push(follow.end());
    }
    out
}

/// A summary stating only facts licensed by `table`, which must already be
/// replenished.
pub fn grounded_summary<R: Rng>(rng: &mut R, table: &GameTable) -> Summary {
    let mut sentences = vec![opening(rng, table)];
    if rng.gen_bool(0.5) {
        sentences.push(quarter_sentence(rng, table));
    }
    if rng.gen_bool(0.5) {
        sentences.push(halftime_sentence(rng, table));
    }
    let mut players: Vec<EntityId> = table.players.iter().map(|p| p.entity.id).collect();
    players.shuffle(rng);
    for id in players.into_iter().take(rng.gen_range(2..=5)) {
        sentences.extend(player_sentences(rng, table, id));
    }
    for side in [Side::Home, Side::Away] {
        if rng.gen_bool(0.3) {
            sentences.push(team_shooting_sentence(rng, table, side));
        }
        if rng.gen_bool(0.2) {
            sentences.push(bench_sentence(rng, table, side));
        }
    }
    Summary::from_tokens(sentences.concat())
}

/// Replenished synthetic game with a grounded summary.
pub fn synth_sample<R: Rng>(rng: &mut R, game_id: &str) -> Sample {
    let table = replenish(&synth_table(rng, game_id)).table;
    let summary = grounded_summary(rng, &table);
    Sample { table, summary }
}

/// `n` samples from a seeded generator.
pub fn synth_corpus(n: usize, seed: u64) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|i| synth_sample(&mut rng, &format!("synth-{i:05}"))).collect()
}

/// A schedule or streak sentence whose numerals, if any, never correspond to
/// a table cell.
pub fn schedule_sentence<R: Rng>(rng: &mut R, table: &GameTable) -> Vec<String> {
    let side = if rng.gen_bool(0.5) { Side::Home } else { Side::Away };
    let team = team_ref(rng, table, side);
    let day = DAYS.choose(rng).expect("non-empty");
    match rng.gen_range(0..3) {
        0 => Sentence::new()
            .w(&team)
            .w(&format!("will face {} again on {day}", the_team(table, side.other())))
            .end(),
        1 => {
            let last = rng.gen_range(3..=10);
            Sentence::new()
                .w(&team)
                .w(if rng.gen_bool(0.5) { "have won" } else { "have lost" })
                .n(f64::from(rng.gen_range(1..=last)))
                .w("of their last")
                .n(f64::from(last))
                .w("games")
                .end()
        }
        _ => Sentence::new()
            .w(&team)
            .w("will begin a")
            .n(f64::from(rng.gen_range(2..=6)))
            .w(&format!("- game road trip on {day}"))
            .end(),
    }
}

/// Inserts a run of one or two ungrounded sentences after a random sentence.
/// Returns the new sample and the indices of the inserted sentences.
pub fn inject_ungrounded<R: Rng>(rng: &mut R, sample: &Sample) -> (Sample, Vec<usize>) {
    let n = sample.summary.num_sentences();
    let at = rng.gen_range(1..=n.max(1));
    let run: Vec<Vec<String>> = (0..rng.gen_range(1..=2))
        .map(|_| schedule_sentence(rng, &sample.table))
        .collect();
    let mut sentences: Vec<Vec<String>> = sample.summary.sentences().map(<[String]>::to_vec).collect();
    let inserted: Vec<usize> = (at..at + run.len()).collect();
    for (k, s) in run.into_iter().enumerate() {
        sentences.insert(at + k, s);
    }
    let summary = Summary::from_tokens(sentences.concat());
    (
        Sample {
            table: sample.table.clone(),
            summary,
        },
        inserted,
    )
}
