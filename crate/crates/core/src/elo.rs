//! Conversions between rating differences and expected scores.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EloError {
    #[error("winning rate {0} gives an infinite rating difference")]
    Infinite(f64),
    #[error("winning rate {0} is outside [0, 1]")]
    OutOfRange(f64),
}

/// Expected winning rate for a player rated `rd` points above the opponent.
pub fn expected_score(rd: f64) -> f64 {
    1.0 / (10f64.powf(-rd / 400.0) + 1.0)
}

/// Rating difference implied by winning rate `w`.
pub fn elo_diff(w: f64) -> Result<f64, EloError> {
    if w.is_nan() || !(0.0..=1.0).contains(&w) {
        return Err(EloError::OutOfRange(w));
    }
    if w == 0.0 || w == 1.0 {
        return Err(EloError::Infinite(w));
    }
    Ok(-400.0 * (1.0 / w - 1.0).log10())
}

/// Rounded rating difference with an explicit sign, e.g. `+77`, `+0`, `-12`.
/// Extreme rates print as `+inf` / `-inf`.
pub fn format_elo(w: f64) -> String {
    match elo_diff(w) {
        Ok(rd) => {
            let r = rd.round() as i64;
            if r < 0 {
                format!("{r}")
            } else {
                format!("+{r}")
            }
        }
        Err(_) if w >= 1.0 => "+inf".into(),
        Err(_) => "-inf".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_points() {
        assert_eq!(expected_score(0.0), 0.5);
        assert!((expected_score(400.0) - 10.0 / 11.0).abs() < 1e-12);
        assert!((expected_score(77.0) - 0.609).abs() < 0.001);
        assert_eq!(elo_diff(0.509).unwrap().round(), 6.0);
        assert_eq!(elo_diff(0.586).unwrap().round(), 60.0);
        assert_eq!(elo_diff(0.609).unwrap().round(), 77.0);
    }

    #[test]
    fn symmetric_and_inverse() {
        for x in [-1000.0, -400.0, -77.0, 0.0, 6.0, 60.0, 77.0, 400.0, 1000.0] {
            assert!((elo_diff(expected_score(x)).unwrap() - x).abs() < 1e-9);
            assert!((expected_score(x) + expected_score(-x) - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn extremes_are_errors() {
        assert_eq!(elo_diff(0.0), Err(EloError::Infinite(0.0)));
        assert_eq!(elo_diff(1.0), Err(EloError::Infinite(1.0)));
        assert!(matches!(elo_diff(1.5), Err(EloError::OutOfRange(_))));
    }

    #[test]
    fn formatting() {
        assert_eq!(format_elo(0.5), "+0");
        assert_eq!(format_elo(304.5 / 500.0), "+77");
        assert_eq!(format_elo(0.4), "-70");
        assert_eq!(format_elo(1.0), "+inf");
    }
}
