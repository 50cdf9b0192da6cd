use std::fmt::Write;

use crate::chess::Color;

use super::GameRecord;

const LINE_WIDTH: usize = 79;

fn escape(value: &str) -> String {
    value.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Export-format PGN with SAN movetext.
pub fn write_pgn(game: &GameRecord) -> String {
    let mut out = String::new();
    let mut tag = |name: &str, value: &str| {
        let _ = writeln!(out, "[{name} \"{}\"]", escape(value));
    };
    tag("Event", &game.event);
    tag("White", &game.white);
    tag("Black", &game.black);
    tag("Result", game.result.tag());
    if let Some(elo) = game.white_elo {
        tag("WhiteElo", &elo.to_string());
    }
    if let Some(elo) = game.black_elo {
        tag("BlackElo", &elo.to_string());
    }
    if !game.starts_from_standard() {
        tag("SetUp", "1");
        tag("FEN", &game.start.to_fen());
    }
    out.push('\n');

    let mut line = String::new();
    let push = |token: String, out: &mut String, line: &mut String| {
        if !line.is_empty() && line.len() + 1 + token.len() > LINE_WIDTH {
            out.push_str(line);
            out.push('\n');
            line.clear();
        }
        if !line.is_empty() {
            line.push(' ');
        }
        line.push_str(&token);
    };
    for (i, (pos, mv)) in game.plies.iter().enumerate() {
        let san = pos.to_san(*mv);
        let token = match pos.side_to_move() {
            Color::White => format!("{}. {san}", pos.fullmove_number()),
            Color::Black if i == 0 => format!("{}... {san}", pos.fullmove_number()),
            Color::Black => san,
        };
        push(token, &mut out, &mut line);
    }
    push(game.result.tag().to_string(), &mut out, &mut line);
    out.push_str(&line);
    out.push_str("\n\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chess::Position;
    use crate::pgn::{load_pgn, GameResult};

    #[test]
    fn roundtrips_through_reader() {
        let start = Position::from_fen("r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R b KQkq - 0 1").unwrap();
        let mut pos = start;
        let mut moves = Vec::new();
        for _ in 0..40 {
            let legal = pos.legal_moves();
            if legal.is_empty() {
                break;
            }
            let mv = legal[(pos.key() % legal.len() as u64) as usize];
            moves.push(mv);
            pos = pos.make(mv);
        }
        let mut game = GameRecord::from_moves(start, &moves, GameResult::BlackWins).unwrap();
        game.white = "Some \"quoted\" name".into();
        game.white_elo = Some(2612);
        let text = write_pgn(&game);
        assert!(text.lines().all(|l| l.len() <= LINE_WIDTH));
        let load = load_pgn(&text);
        assert!(load.errors.is_empty(), "{:?}", load.errors);
        assert_eq!(load.games, vec![game]);
    }
}
