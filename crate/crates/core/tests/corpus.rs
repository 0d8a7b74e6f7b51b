use boxfacts::corpus::{from_json_str, load_corpus, save_corpus, to_json_string};
use boxfacts::synth::synth_corpus;
use boxfacts::{EntityId, Sample, SchemaRegistry, Side};
use serde_json::{json, Value};

fn game(id: &str, home_pts: u32) -> Value {
    json!({
        "game_id": id,
        "day": "01_02_16",
        "home_name": "Rockets", "home_city": "Houston",
        "vis_name": "Nuggets", "vis_city": "Denver",
        "home_line": {"TEAM-PTS": home_pts.to_string(), "TEAM-WINS": "18", "TEAM-LOSSES": "5",
                      "TEAM-CITY": "Houston", "TEAM-NAME": "Rockets"},
        "vis_line": {"TEAM-PTS": 96, "TEAM-WINS": "10", "TEAM-LOSSES": "13"},
        "box_score": {
            "PLAYER_NAME": {"0": "James Harden", "1": "Nikola Jokic"},
            "FIRST_NAME": {"0": "James", "1": "Nikola"},
            "SECOND_NAME": {"0": "Harden", "1": "Jokic"},
            "TEAM_CITY": {"0": "Houston", "1": "Denver"},
            "START_POSITION": {"0": "G", "1": "N/A"},
            "PTS": {"0": "24", "1": "17"},
            "REB": {"0": "10", "1": "N/A"},
            "MIN": {"0": "38", "1": ""}
        },
        "summary": ["The", "Houston", "Rockets", "won", "."]
    })
}

#[test]
fn loads_two_games() {
    let text = serde_json::to_string(&vec![game("a", 108), game("b", 99)]).unwrap();
    let report = from_json_str(&text, &SchemaRegistry::default()).unwrap();
    assert!(report.rejections.is_empty(), "{:?}", report.rejections);
    assert_eq!(report.samples.len(), 2);
    let t = &report.samples[0].table;
    assert_eq!(t.game_id, "a");
    assert_eq!(t.team_value(Side::Home, "TEAM-PTS"), Some(108.0));
    assert_eq!(t.team_value(Side::Away, "TEAM-PTS"), Some(96.0));
    assert_eq!(report.samples[1].table.team_value(Side::Home, "TEAM-PTS"), Some(99.0));
    let harden = EntityId(2);
    let jokic = EntityId(3);
    assert_eq!(t.entity(harden).unwrap().name(), "James Harden");
    assert_eq!(t.entity(jokic).unwrap().side, Side::Away);
    assert_eq!(t.lookup(harden, "PTS"), Some(24.0));
    // N/A and empty cells are absent, not zero
    assert_eq!(t.lookup(jokic, "REB"), None);
    assert_eq!(t.lookup(jokic, "MIN"), None);
    assert!(t.player(harden).unwrap().is_starter());
    assert!(!t.player(jokic).unwrap().is_starter());
    assert_eq!(report.samples[0].summary.len(), 5);
}

#[test]
fn jsonl_input_matches_array_input() {
    let games = [game("a", 108), game("b", 99)];
    let array = serde_json::to_string(&games).unwrap();
    let lines: String = games.iter().map(|g| g.to_string() + "\n").collect();
    let a = from_json_str(&array, &SchemaRegistry::default()).unwrap();
    let b = from_json_str(&lines, &SchemaRegistry::default()).unwrap();
    assert_eq!(a.samples, b.samples);
}

#[test]
fn missing_line_rejected_by_name() {
    let mut bad = game("bad", 108);
    bad.as_object_mut().unwrap().remove("vis_line");
    let text = serde_json::to_string(&vec![game("ok", 108), bad]).unwrap();
    let report = from_json_str(&text, &SchemaRegistry::default()).unwrap();
    assert_eq!(report.samples.len(), 1);
    assert_eq!(report.rejections.len(), 1);
    let r = &report.rejections[0];
    assert_eq!((r.index, r.game_id.as_deref()), (1, Some("bad")));
    assert!(r.reasons.iter().any(|m| m.contains("vis_line")), "{:?}", r.reasons);
}

#[test]
fn bad_cells_and_unknown_columns() {
    let mut g = game("x", 108);
    g["box_score"]["PTS"]["0"] = json!("lots");
    g["box_score"]["PLUS_MINUS"] = json!({"0": "4"});
    g["box_score"]["AST"] = json!({"7": "4"});
    let report = from_json_str(&serde_json::to_string(&vec![g]).unwrap(), &SchemaRegistry::default()).unwrap();
    let reasons = &report.rejections[0].reasons;
    assert!(reasons.iter().any(|m| m.contains("box_score.PTS.0")), "{reasons:?}");
    assert!(reasons.iter().any(|m| m.contains("index 7")), "{reasons:?}");
    assert!(report.warnings.iter().any(|w| w.contains("PLUS_MINUS")));
}

#[test]
fn malformed_json_is_an_error() {
    assert!(from_json_str("[{", &SchemaRegistry::default()).is_err());
}

/// Records sorted, since the loader reads them column by column.
fn canonical(s: &Sample) -> Sample {
    let mut s = s.clone();
    s.table
        .records
        .sort_by(|a, b| (a.entity, &a.rtype).cmp(&(b.entity, &b.rtype)));
    s
}

#[test]
fn save_load_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let samples = synth_corpus(15, 4);
    for name in ["c.json", "c.jsonl"] {
        let p = dir.path().join(name);
        save_corpus(&p, &samples).unwrap();
        let first = std::fs::read(&p).unwrap();
        let loaded = load_corpus(&p).unwrap();
        assert!(loaded.rejections.is_empty(), "{:?}", loaded.rejections);
        assert_eq!(loaded.samples.len(), samples.len());
        for (a, b) in loaded.samples.iter().zip(&samples) {
            assert_eq!(canonical(a), canonical(b));
        }
        save_corpus(&p, &loaded.samples).unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), first);
    }
    assert_eq!(to_json_string(&samples, true).lines().count(), 15);
}
