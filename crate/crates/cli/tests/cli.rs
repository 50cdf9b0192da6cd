use std::path::Path;
use std::process::{Command, Output};

use chessevo::BUNDLED_CORPUS;

fn chessevo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chessevo")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn small_evolve(out: &Path, extra: &[&str]) -> Output {
    let out = out.to_str().unwrap();
    let mut args = vec!["evolve", "--pgn", BUNDLED_CORPUS, "--positions", "200", "--pop", "6", "--gens", "3"];
    args.extend_from_slice(extra);
    args.extend_from_slice(&["--out", out]);
    chessevo(&args)
}

fn write_hex(dir: &Path, name: &str, seed: &str) -> String {
    let path = dir.join(name);
    let o = chessevo(&["random", "--seed", seed, "--out", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    path.to_string_lossy().into_owned()
}

#[test]
fn evolve_writes_artifacts_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let first = small_evolve(&a, &["--seed", "11"]);
    assert!(first.status.success(), "{}", stderr(&first));
    let second = small_evolve(&b, &["--seed", "11", "--jobs", "3"]);
    assert!(second.status.success(), "{}", stderr(&second));
    assert_eq!(stdout(&first), stdout(&second));
    for name in ["best.hex", "best.params", "stats.csv", "train.txt", "test.txt"] {
        assert_eq!(std::fs::read(a.join(name)).unwrap(), std::fs::read(b.join(name)).unwrap(), "{name}");
    }
    let config = std::fs::read_to_string(a.join("config.txt")).unwrap();
    assert!(config.contains("seed = 11"), "{config}");
    let stats = std::fs::read_to_string(a.join("stats.csv")).unwrap();
    assert_eq!(stats.lines().count(), 1 + 4);
    assert!(stdout(&first).starts_with("train: "));
}

#[test]
fn missing_seed_is_generated_and_logged() {
    let dir = tempfile::tempdir().unwrap();
    let o = small_evolve(dir.path(), &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let config = std::fs::read_to_string(dir.path().join("config.txt")).unwrap();
    assert!(config.lines().any(|l| l.starts_with("seed = ")), "{config}");
    assert!(stderr(&o).contains("seed = "));
}

#[test]
fn accuracy_agrees_with_final_training_rate() {
    let dir = tempfile::tempdir().unwrap();
    let o = small_evolve(dir.path(), &["--seed", "5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let acc = chessevo(&[
        "accuracy",
        "--chromosome",
        dir.path().join("best.hex").to_str().unwrap(),
        "--positions",
        dir.path().join("train.txt").to_str().unwrap(),
    ]);
    assert!(acc.status.success(), "{}", stderr(&acc));
    let train_line = stdout(&o).lines().next().unwrap().trim_start_matches("train: ").to_string();
    assert_eq!(stdout(&acc).trim(), format!("matched {train_line}"));

    let stats = std::fs::read_to_string(dir.path().join("stats.csv")).unwrap();
    let last: Vec<&str> = stats.lines().last().unwrap().split(',').collect();
    let (k, n) = train_line.split_once(' ').unwrap().0.split_once('/').unwrap();
    assert_eq!(last[3], k);
    let rate: f64 = last[4].parse().unwrap();
    let expect = k.parse::<f64>().unwrap() / n.parse::<f64>().unwrap();
    assert!((rate - expect).abs() < 1e-6);
}

#[test]
fn population_of_one_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let o = small_evolve(dir.path(), &["--pop", "1", "--seed", "1"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("population size must be at least 2"), "{}", stderr(&o));
}

#[test]
fn odd_games_per_pair_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_hex(dir.path(), "a.hex", "1");
    let b = write_hex(dir.path(), "b.hex", "2");
    let out = dir.path().join("co");
    let o = chessevo(&["coevolve", "--seeds", &a, &b, "--games-per-pair", "3", "--out", out.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("games per pair must be even"), "{}", stderr(&o));
}

#[test]
fn odd_match_length_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_hex(dir.path(), "a.hex", "1");
    let o = chessevo(&["match", "--a", &a, "--b", &a, "--games", "3"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("--games must be even"), "{}", stderr(&o));
}

#[test]
fn empty_positions_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_hex(dir.path(), "a.hex", "1");
    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "").unwrap();
    let o = chessevo(&["accuracy", "--chromosome", &a, "--positions", empty.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("contains no positions"), "{}", stderr(&o));
}

#[test]
fn missing_corpus_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let missing = dir.path().join("nope.pgn");
    let o = chessevo(&["evolve", "--pgn", missing.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(stderr(&o).lines().any(|l| l.starts_with("error:")), "{}", stderr(&o));
}

#[test]
fn identical_players_split_a_two_game_match() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_hex(dir.path(), "a.hex", "9");
    let o = chessevo(&["match", "--a", &a, "--b", &a, "--games", "2", "--depth", "1", "--seed", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("1.0 - 1.0"), "{text}");
    assert!(text.contains("W = 50.0%"), "{text}");
    assert!(text.contains("RD = +0"), "{text}");
}

#[test]
fn command_line_flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# small run\npop = 4\ngens = 2\nseed = 3\n").unwrap();
    let out = dir.path().join("out");
    let o = chessevo(&[
        "--config",
        cfg.to_str().unwrap(),
        "evolve",
        "--pgn",
        BUNDLED_CORPUS,
        "--positions",
        "100",
        "--gens",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let stats = std::fs::read_to_string(out.join("stats.csv")).unwrap();
    assert_eq!(stats.lines().count(), 1 + 2);
    let config = std::fs::read_to_string(out.join("config.txt")).unwrap();
    assert!(config.contains("pop = 4"), "{config}");
    assert!(config.contains("seed = 3"), "{config}");
}
