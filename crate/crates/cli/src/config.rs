//! `--config` files: `key = value` lines turned into flags placed before the
//! user's own, so explicit flags override them.

use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::{CommandFactory, Parser};

use crate::Cli;

fn config_path(args: &[String]) -> Option<String> {
    let mut iter = args.iter().skip(1);
    while let Some(arg) = iter.next() {
        if arg == "--config" {
            return iter.next().cloned();
        }
        if let Some(path) = arg.strip_prefix("--config=") {
            return Some(path.to_string());
        }
    }
    None
}

/// Flags from a config file. Lists are whitespace separated; `#` starts a comment.
pub fn config_flags(text: &str) -> Result<Vec<String>> {
    let mut flags = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {}: expected 'key = value', got '{raw}'", i + 1);
        };
        let key = key.trim().replace('_', "-");
        if key.is_empty() || key == "config" {
            bail!("config line {}: invalid key '{key}'", i + 1);
        }
        match value.trim() {
            "true" => flags.push(format!("--{key}")),
            "false" => {}
            value => {
                flags.push(format!("--{key}"));
                flags.extend(value.split_whitespace().map(str::to_string));
            }
        }
    }
    Ok(flags)
}

pub fn merge(args: Vec<String>, flags: Vec<String>) -> Vec<String> {
    let names: Vec<String> = Cli::command().get_subcommands().map(|c| c.get_name().to_string()).collect();
    let Some(at) = args.iter().skip(1).position(|a| names.contains(a)).map(|p| p + 2) else {
        return args;
    };
    let mut merged = args[..at].to_vec();
    merged.extend(flags);
    merged.extend_from_slice(&args[at..]);
    merged
}

pub fn parse_with_config(args: Vec<String>) -> Result<Cli> {
    let args = match config_path(&args) {
        Some(path) => {
            let text = std::fs::read_to_string(Path::new(&path)).with_context(|| format!("reading config {path}"))?;
            merge(args, config_flags(&text)?)
        }
        None => args,
    };
    match Cli::try_parse_from(args) {
        Ok(cli) => Ok(cli),
        Err(e) if e.use_stderr() => Err(anyhow::anyhow!("{e}")),
        Err(e) => e.exit(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    #[test]
    fn flags_follow_subcommand_and_lose_to_cli() {
        let flags = config_flags("pop = 30\n# comment\ngens=5 # trailing\nmin_elo = 2500\n").unwrap();
        assert_eq!(flags, argv("--pop 30 --gens 5 --min-elo 2500"));
        let merged = merge(argv("chessevo --jobs 2 evolve --pop 40"), flags);
        assert_eq!(merged, argv("chessevo --jobs 2 evolve --pop 30 --gens 5 --min-elo 2500 --pop 40"));
        let cli = Cli::try_parse_from(
            merged.into_iter().chain(argv("--pgn g.pgn --out o")).collect::<Vec<_>>(),
        )
        .unwrap();
        match cli.command {
            crate::Command::Evolve(e) => assert_eq!((e.pop, e.gens, e.min_elo), (40, 5, 2500)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_lines_rejected() {
        assert!(config_flags("just words").is_err());
        assert!(config_flags(" = 3").is_err());
    }

    #[test]
    fn finds_config_path() {
        assert_eq!(config_path(&argv("x --config a.cfg evolve")), Some("a.cfg".into()));
        assert_eq!(config_path(&argv("x evolve --config=b.cfg")), Some("b.cfg".into()));
        assert_eq!(config_path(&argv("x evolve")), None);
    }
}
