//! Standard Algebraic Notation.

use super::position::Position;
use super::types::{Move, MoveKind, PieceKind, Square};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SanError {
    #[error("unparseable SAN '{0}'")]
    Syntax(String),
    #[error("SAN '{0}' matches no legal move")]
    Illegal(String),
    #[error("SAN '{0}' is ambiguous")]
    Ambiguous(String),
}

impl Position {
    pub fn to_san(&self, mv: Move) -> String {
        let mut san = match mv.kind {
            MoveKind::CastleKingside => "O-O".to_string(),
            MoveKind::CastleQueenside => "O-O-O".to_string(),
            _ => {
                let kind = self.piece_at(mv.from).map_or(PieceKind::Pawn, |p| p.kind);
                let mut s = String::new();
                match kind.san_letter() {
                    None => {
                        if mv.is_capture() {
                            s.push((b'a' + mv.from.file()) as char);
                        }
                    }
                    Some(letter) => {
                        s.push(letter);
                        let rivals: Vec<Move> = self
                            .legal_moves()
                            .into_iter()
                            .filter(|m| {
                                m.to == mv.to
                                    && m.from != mv.from
                                    && self.piece_at(m.from).map(|p| p.kind) == Some(kind)
                            })
                            .collect();
                        if !rivals.is_empty() {
                            let same_file = rivals.iter().any(|m| m.from.file() == mv.from.file());
                            let same_rank = rivals.iter().any(|m| m.from.rank() == mv.from.rank());
                            if !same_file {
                                s.push((b'a' + mv.from.file()) as char);
                            } else if !same_rank {
                                s.push((b'1' + mv.from.rank()) as char);
                            } else {
                                s.push_str(&mv.from.to_string());
                            }
                        }
                    }
                }
                if mv.is_capture() {
                    s.push('x');
                }
                s.push_str(&mv.to.to_string());
                if let Some(p) = mv.promotion {
                    s.push('=');
                    s.push(p.san_letter().unwrap_or('Q'));
                }
                s
            }
        };
        let next = self.make(mv);
        if next.in_check() {
            san.push(if next.has_legal_moves() { '+' } else { '#' });
        }
        san
    }

    /// Resolves a SAN token (annotation suffixes allowed) to a legal move.
    pub fn parse_san(&self, token: &str) -> Result<Move, SanError> {
        let text = token.trim_end_matches(['+', '#', '!', '?']);
        let syntax = || SanError::Syntax(token.to_string());
        let legal = self.legal_moves();

        if matches!(text, "O-O" | "0-0" | "O-O-O" | "0-0-0") {
            let kind = if text.len() == 3 { MoveKind::CastleKingside } else { MoveKind::CastleQueenside };
            return legal
                .iter()
                .copied()
                .find(|m| m.kind == kind)
                .ok_or_else(|| SanError::Illegal(token.to_string()));
        }

        let mut chars: Vec<char> = text.chars().collect();
        if chars.len() < 2 {
            return Err(syntax());
        }
        let kind = match chars[0] {
            'N' | 'B' | 'R' | 'Q' | 'K' => {
                let k = PieceKind::from_letter(chars[0]).ok_or_else(syntax)?;
                chars.remove(0);
                k
            }
            _ => PieceKind::Pawn,
        };

        let mut promotion = None;
        if let Some(&last) = chars.last() {
            if matches!(last, 'N' | 'B' | 'R' | 'Q') {
                if kind != PieceKind::Pawn {
                    return Err(syntax());
                }
                promotion = PieceKind::from_letter(last);
                chars.pop();
                if chars.last() == Some(&'=') {
                    chars.pop();
                }
            }
        }

        if chars.len() < 2 {
            return Err(syntax());
        }
        let dest: String = chars[chars.len() - 2..].iter().collect();
        let to = Square::parse(&dest).ok_or_else(syntax)?;
        let mut rest: Vec<char> = chars[..chars.len() - 2].to_vec();
        if rest.last() == Some(&'x') || rest.last() == Some(&':') {
            rest.pop();
        }
        let mut from_file = None;
        let mut from_rank = None;
        for c in rest {
            match c {
                'a'..='h' if from_file.is_none() => from_file = Some(c as u8 - b'a'),
                '1'..='8' if from_rank.is_none() => from_rank = Some(c as u8 - b'1'),
                _ => return Err(syntax()),
            }
        }

        let mut found = None;
        for m in legal.iter().copied() {
            if m.to != to || m.is_castle() || m.promotion != promotion {
                continue;
            }
            if self.piece_at(m.from).map(|p| p.kind) != Some(kind) {
                continue;
            }
            if from_file.is_some_and(|f| m.from.file() != f) || from_rank.is_some_and(|r| m.from.rank() != r) {
                continue;
            }
            if found.is_some() {
                return Err(SanError::Ambiguous(token.to_string()));
            }
            found = Some(m);
        }
        found.ok_or_else(|| SanError::Illegal(token.to_string()))
    }
}
