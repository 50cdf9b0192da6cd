//! Colour-balanced matches between two parameter sets.

use std::fmt::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::chess::Color;
use crate::elo::{elo_diff, format_elo};
use crate::eval::EvalParams;
use crate::pgn::write_pgn;
use crate::play::{play_game, GameSettings, Openings, PlayedGame};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatchError {
    #[error("a match needs a positive, even number of games, got {0}")]
    GameCount(usize),
}

/// Tally from player A's point of view.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MatchResult {
    pub wins: u32,
    pub draws: u32,
    pub losses: u32,
}

impl MatchResult {
    pub fn games(&self) -> u32 {
        self.wins + self.draws + self.losses
    }

    pub fn half_points_a(&self) -> u32 {
        2 * self.wins + self.draws
    }

    pub fn half_points_b(&self) -> u32 {
        2 * self.losses + self.draws
    }

    pub fn points_a(&self) -> f64 {
        self.half_points_a() as f64 / 2.0
    }

    pub fn points_b(&self) -> f64 {
        self.half_points_b() as f64 / 2.0
    }

    /// A's share of the points.
    pub fn win_rate(&self) -> f64 {
        self.points_a() / self.games() as f64
    }

    /// Binomial standard error of the winning rate.
    pub fn standard_error(&self) -> f64 {
        let w = self.win_rate();
        (w * (1.0 - w) / self.games() as f64).sqrt()
    }

    pub fn elo_diff(&self) -> Option<f64> {
        elo_diff(self.win_rate()).ok()
    }

    pub fn add(&mut self, half_points_a: u32) {
        match half_points_a {
            2 => self.wins += 1,
            1 => self.draws += 1,
            _ => self.losses += 1,
        }
    }
}

impl fmt::Display for MatchResult {
    /// `304.5 - 195.5  W = 60.9% (+/- 2.2%)  RD = +77`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:.1} - {:.1}  W = {:.1}% (+/- {:.1}%)  RD = {}",
            self.points_a(),
            self.points_b(),
            100.0 * self.win_rate(),
            100.0 * self.standard_error(),
            format_elo(self.win_rate())
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatchGame {
    pub index: usize,
    pub opening_id: usize,
    pub a_color: Color,
    pub game: PlayedGame,
}

impl MatchGame {
    pub fn half_points_a(&self) -> u32 {
        self.game.half_points(self.a_color)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatchReport {
    pub result: MatchResult,
    pub games: Vec<MatchGame>,
}

pub const MATCH_CSV_HEADER: &str = "game_index,opening_id,color_of_a,result";

impl MatchReport {
    /// One row per game; `result` is from A's side: `win`, `draw` or `loss`.
    pub fn csv(&self) -> String {
        let mut out = format!("{MATCH_CSV_HEADER}\n");
        for g in &self.games {
            let color = if g.a_color == Color::White { "white" } else { "black" };
            let result = ["loss", "draw", "win"][g.half_points_a() as usize];
            let _ = writeln!(out, "{},{},{},{}", g.index, g.opening_id, color, result);
        }
        out
    }

    pub fn pgn(&self) -> String {
        self.games.iter().map(|g| write_pgn(&g.game.record)).collect()
    }
}

/// Game `i` gives A white when `i` is even; each colour-swapped pair shares
/// an opening, and the seed picks where in the opening cycle the match starts.
pub fn play_match(
    a: &EvalParams,
    b: &EvalParams,
    games: usize,
    settings: &GameSettings,
    openings: &Openings,
    seed: u64,
) -> Result<MatchReport, MatchError> {
    if games == 0 || !games.is_multiple_of(2) {
        return Err(MatchError::GameCount(games));
    }
    let offset = ChaCha8Rng::seed_from_u64(seed).gen_range(0..openings.len());
    let played: Vec<MatchGame> = (0..games)
        .into_par_iter()
        .map(|index| {
            let opening_id = (offset + index / 2) % openings.len();
            let start = openings.get(opening_id).position;
            let a_color = if index % 2 == 0 { Color::White } else { Color::Black };
            let (white, black) = if a_color == Color::White { (a, b) } else { (b, a) };
            let mut game = play_game(white, black, start, settings);
            game.record.event = format!("match game {}", index + 1);
            (game.record.white, game.record.black) = if a_color == Color::White {
                ("A".into(), "B".into())
            } else {
                ("B".into(), "A".into())
            };
            MatchGame { index, opening_id, a_color, game }
        })
        .collect();
    let mut result = MatchResult::default();
    for g in &played {
        result.add(g.half_points_a());
    }
    Ok(MatchReport { result, games: played })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_rates() {
        // 254.5 - 245.5 over 500 games.
        let r = MatchResult { wins: 200, draws: 109, losses: 191 };
        assert_eq!(r.points_a(), 254.5);
        assert!((r.win_rate() - 0.509).abs() < 1e-12);
        assert_eq!(r.elo_diff().map(f64::round), Some(6.0));
    }

    #[test]
    fn report_line() {
        let r = MatchResult { wins: 250, draws: 109, losses: 141 };
        let line = r.to_string();
        assert!(line.starts_with("304.5 - 195.5  W = 60.9%"), "{line}");
        assert!(line.ends_with("RD = +77"), "{line}");
        let even = MatchResult { wins: 1, draws: 0, losses: 1 };
        assert!(even.to_string().starts_with("1.0 - 1.0  W = 50.0%"));
        assert!(even.to_string().ends_with("RD = +0"));
    }

    #[test]
    fn identical_engines_split_a_mirrored_pair() {
        let p = EvalParams::reference();
        let report = play_match(&p, &p, 2, &GameSettings::depth(1), &Openings::builtin(), 0).unwrap();
        assert_eq!(report.result.half_points_a(), 2);
        assert_eq!(report.result.games(), 2);
        assert_eq!(report.games[0].opening_id, report.games[1].opening_id);
        assert!(report.csv().starts_with(MATCH_CSV_HEADER));
        assert_eq!(report.csv().lines().count(), 3);
    }

    #[test]
    fn odd_games_rejected() {
        let p = EvalParams::reference();
        let err = play_match(&p, &p, 3, &GameSettings::depth(1), &Openings::builtin(), 0);
        assert_eq!(err, Err(MatchError::GameCount(3)));
    }
}
