//! Export-format PGN reader. Comments, NAGs and variations are skipped;
//! a malformed game is reported and the rest of the stream still loads.

use std::fmt;

use crate::chess::Position;

use super::{GameRecord, GameResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PgnError {
    /// Zero-based index of the game within the stream.
    pub game: usize,
    pub message: String,
}

impl fmt::Display for PgnError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "game {}: {}", self.game + 1, self.message)
    }
}

impl std::error::Error for PgnError {}

#[derive(Clone, Debug, Default)]
pub struct PgnLoad {
    pub games: Vec<GameRecord>,
    pub errors: Vec<PgnError>,
}

/// Splits the stream into raw games: a header line after movetext starts a
/// new game.
fn chunks(text: &str) -> Vec<(Vec<&str>, String)> {
    let mut out: Vec<(Vec<&str>, String)> = Vec::new();
    let mut headers = Vec::new();
    let mut movetext = String::new();
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.starts_with('[') {
            if !movetext.trim().is_empty() {
                out.push((std::mem::take(&mut headers), std::mem::take(&mut movetext)));
            }
            headers.push(trimmed);
        } else if !trimmed.starts_with('%') {
            movetext.push_str(line);
            movetext.push('\n');
        }
    }
    if !headers.is_empty() || !movetext.trim().is_empty() {
        out.push((headers, movetext));
    }
    out
}

fn parse_tag(line: &str) -> Option<(&str, String)> {
    let inner = line.strip_prefix('[')?.strip_suffix(']')?.trim();
    let (name, rest) = inner.split_once(char::is_whitespace)?;
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return None;
    }
    let rest = rest.trim().strip_prefix('"')?.strip_suffix('"')?;
    let mut value = String::with_capacity(rest.len());
    let mut chars = rest.chars();
    while let Some(c) = chars.next() {
        match c {
            '\\' => value.push(chars.next()?),
            '"' => return None,
            c => value.push(c),
        }
    }
    Some((name, value))
}

/// Mainline move tokens and the terminating result marker, if any.
fn mainline(movetext: &str) -> Result<(Vec<&str>, Option<GameResult>), String> {
    let bytes = movetext.as_bytes();
    let mut tokens = Vec::new();
    let mut depth = 0usize;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'{' => match movetext[i..].find('}') {
                Some(end) => i += end + 1,
                None => return Err("unterminated comment".into()),
            },
            b';' => i = movetext[i..].find('\n').map_or(bytes.len(), |end| i + end + 1),
            b'(' => {
                depth += 1;
                i += 1;
            }
            b')' => {
                depth = depth.checked_sub(1).ok_or("unbalanced ')'")?;
                i += 1;
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() && !b"{}();".contains(&bytes[i]) {
                    i += 1;
                }
                if depth == 0 {
                    let token = &movetext[start..i];
                    if let Some(result) = GameResult::parse(token) {
                        return Ok((tokens, Some(result)));
                    }
                    tokens.push(token);
                }
            }
        }
    }
    if depth != 0 {
        return Err("unterminated variation".into());
    }
    Ok((tokens, None))
}

/// Drops move numbers ("12.", "12...", "12.e4") and NAGs; returns the SAN
/// part, if any.
fn san_part(token: &str) -> Option<&str> {
    if token.starts_with('$') {
        return None;
    }
    let rest = token.trim_start_matches(|c: char| c.is_ascii_digit());
    let rest = if rest.len() < token.len() { rest.trim_start_matches('.') } else { rest };
    let rest = rest.trim_end_matches(['!', '?']);
    (!rest.is_empty()).then_some(rest)
}

fn parse_game(headers: &[&str], movetext: &str) -> Result<GameRecord, String> {
    let mut record = GameRecord::from_moves(Position::startpos(), &[], GameResult::Unknown).expect("no moves");
    let mut result_tag = None;
    let mut fen = None;
    for line in headers {
        let (name, value) = parse_tag(line).ok_or_else(|| format!("malformed header {line}"))?;
        let elo = |v: &str| v.trim().parse::<u32>().ok();
        match name {
            "Event" => record.event = value,
            "White" => record.white = value,
            "Black" => record.black = value,
            "WhiteElo" => record.white_elo = elo(&value),
            "BlackElo" => record.black_elo = elo(&value),
            "Result" => {
                result_tag = Some(GameResult::parse(value.trim()).ok_or_else(|| format!("bad result tag '{value}'"))?)
            }
            "FEN" => fen = Some(value),
            _ => {}
        }
    }
    if let Some(fen) = fen {
        record.start = Position::from_fen(&fen).map_err(|e| format!("bad FEN tag: {e}"))?;
    }

    let (tokens, terminator) = mainline(movetext)?;
    let mut pos = record.start;
    for token in tokens {
        let Some(san) = san_part(token) else { continue };
        let mv = pos.parse_san(san).map_err(|e| format!("ply {}: {e}", record.plies.len() + 1))?;
        record.plies.push((pos, mv));
        pos = pos.make(mv);
    }
    record.result = result_tag.or(terminator).unwrap_or(GameResult::Unknown);
    Ok(record)
}

pub fn load_pgn(text: &str) -> PgnLoad {
    let mut load = PgnLoad::default();
    for (game, (headers, movetext)) in chunks(text).into_iter().enumerate() {
        match parse_game(&headers, &movetext) {
            Ok(record) => load.games.push(record),
            Err(message) => load.errors.push(PgnError { game, message }),
        }
    }
    load
}

#[cfg(test)]
mod tests {
    use super::*;

    const SHORT: &str = r#"[Event "Test"]
[White "A"]
[Black "B"]
[Result "1-0"]
[WhiteElo "2700"]
[BlackElo "2650"]

1. e4 e5 2. Nf3 Nc6 3. Bb5 a6 1-0
"#;

    #[test]
    fn one_game_with_six_plies() {
        let load = load_pgn(SHORT);
        assert!(load.errors.is_empty());
        assert_eq!(load.games.len(), 1);
        let g = &load.games[0];
        assert_eq!(g.plies.len(), 6);
        assert_eq!(g.result, GameResult::WhiteWins);
        assert_eq!((g.white_elo, g.black_elo), (Some(2700), Some(2650)));
        assert_eq!(g.white, "A");
        assert_eq!(g.plies[5].1.uci(), "a7a6");
    }

    #[test]
    fn comments_nags_and_variations_skipped() {
        let text = "[Result \"*\"]\n\n{comment} 1. e4 $1 (1. d4 d5 (1... Nf6)) e5 ; rest of line\n2. Nf3! *\n";
        let load = load_pgn(text);
        assert!(load.errors.is_empty(), "{:?}", load.errors);
        let ucis: Vec<String> = load.games[0].moves().map(|m| m.uci()).collect();
        assert_eq!(ucis, ["e2e4", "e7e5", "g1f3"]);
    }

    #[test]
    fn illegal_game_rejected_alone() {
        let text = format!("{SHORT}\n[Event \"Bad\"]\n[Result \"0-1\"]\n\n1. e4 e5 2. Ke3 0-1\n\n{SHORT}");
        let load = load_pgn(&text);
        assert_eq!(load.games.len(), 2);
        assert_eq!(load.errors.len(), 1);
        assert_eq!(load.errors[0].game, 1);
    }

    #[test]
    fn malformed_header_rejected_alone() {
        let text = format!("[Event \"Broken]\n\n1. e4 *\n\n{SHORT}");
        let load = load_pgn(&text);
        assert_eq!(load.games.len(), 1);
        assert_eq!(load.errors.len(), 1);
        assert!(load.errors[0].message.contains("header"));
    }

    #[test]
    fn fen_tag_and_black_move_numbers() {
        let text = "[FEN \"4k3/8/8/8/8/8/4P3/4K3 b - - 0 1\"]\n[Result \"1/2-1/2\"]\n\n1... Kd7 2. e4 1/2-1/2\n";
        let g = &load_pgn(text).games[0];
        assert_eq!(g.plies.len(), 2);
        assert_eq!(g.result, GameResult::Draw);
        assert_eq!(g.final_position().to_fen(), "8/3k4/8/8/4P3/8/8/4K3 b - e3 0 2");
    }

    #[test]
    fn escaped_tag_values() {
        assert_eq!(parse_tag(r#"[White "Say \"hi\""]"#), Some(("White", "Say \"hi\"".to_string())));
        assert_eq!(parse_tag("[White hi]"), None);
    }

    #[test]
    fn missing_elo_is_absent() {
        let g = &load_pgn("[WhiteElo \"-\"]\n\n1. d4 *").games[0];
        assert_eq!(g.white_elo, None);
        assert_eq!(g.black_elo, None);
    }
}
