//! The worked example game: Rockets 108, Nuggets 96, with a partial box
//! score and its human-written recap.

use crate::summary::{Sample, Summary};
use crate::table::{EntityId, GameTable, Side};

pub const HARDEN: EntityId = EntityId(2);
pub const HOWARD: EntityId = EntityId(3);
pub const HICKSON: EntityId = EntityId(4);

pub const RECAP: &str = "The Houston Rockets ( 18 - 5 ) defeated the Denver Nuggets ( 10 - 13 ) 108 - 96 on Saturday . \
Houston has won 2 straight games and 6 of their last 7 . \
Dwight Howard returned to action Saturday after missing the Rockets ' last 11 games with a knee injury . \
He was supposed to be limited to 24 minutes in the game , but Howard persevered to play 30 minutes and put up a monstrous double-double of 26 points and 13 rebounds . \
Joining Dwight Howard in on the fun was James Harden with a triple-double of 24 points , 10 rebounds and 10 assists in 38 minutes . \
The Rockets ' formidable defense held the Nuggets to just 38 percent shooting from the field . \
Houston will face the Nuggets again in their next game , going on the road to Denver for their game on Wednesday . \
Denver has lost 4 of their last 5 games as they struggle to find footing during a tough part of their schedule . \
Denver will begin a 4 - game homestead hosting the San Antonio Spurs on Sunday .";

/// Sentence indices of [`RECAP`] whose facts are all grounded in the table.
pub const GROUNDED_SENTENCES: [usize; 4] = [0, 3, 4, 5];

pub fn table() -> GameTable {
    let mut t = GameTable::new("rockets-nuggets", "2016-01-02", ("Houston", "Rockets"), ("Denver", "Nuggets"));
    for (side, w, l, pts, fg) in [
        (Side::Home, 18.0, 5.0, 108.0, 44.0),
        (Side::Away, 10.0, 13.0, 96.0, 38.0),
    ] {
        t.set_team(side, "TEAM-WINS", w);
        t.set_team(side, "TEAM-LOSSES", l);
        t.set_team(side, "TEAM-PTS", pts);
        t.set_team(side, "TEAM-FG_PCT", fg);
    }
    for (name, side, pos, pts, reb, ast, min) in [
        ("James Harden", Side::Home, "G", 24.0, 10.0, 10.0, 38.0),
        ("Dwight Howard", Side::Home, "C", 26.0, 13.0, 2.0, 30.0),
        ("JJ Hickson", Side::Away, "F", 14.0, 10.0, 2.0, 22.0),
    ] {
        let id = t.add_player(name, side, Some(pos));
        t.set(id, "PTS", pts);
        t.set(id, "REB", reb);
        t.set(id, "AST", ast);
        t.set(id, "MIN", min);
    }
    t
}

pub fn sample() -> Sample {
    Sample {
        table: table(),
        summary: Summary::from_text(RECAP),
    }
}
