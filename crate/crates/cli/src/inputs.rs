use std::fs;
use std::path::Path;

use rankstab::freealg::{parse_group_presentation, parse_presentation, GroupPresentation, MatTuple, Presentation};
use rankstab::rational::{parse_rational, Rational};

use crate::error::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))
}

pub fn presentation(path: &Path) -> Result<Presentation, CliError> {
    parse_presentation(&read(path)?).map_err(|e| CliError::parse(&path.display().to_string(), e))
}

pub fn group(path: &Path) -> Result<GroupPresentation, CliError> {
    parse_group_presentation(&read(path)?).map_err(|e| CliError::parse(&path.display().to_string(), e))
}

pub fn tuple(path: &Path) -> Result<MatTuple, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::parse(&path.display().to_string(), e))
}

pub fn rational(text: &str) -> Result<Rational, CliError> {
    parse_rational(text).ok_or_else(|| CliError::Parse(format!("{text:?} is not a rational number")))
}

/// Parses `a..b` into the inclusive range `[a, b]`.
pub fn size_range(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Parse(format!("{text:?} is not a size range of the form a..b"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

pub fn write_json<T: serde::Serialize>(value: &T, out: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Failure(e.to_string()))?;
    match out {
        Some(path) => fs::write(path, text + "\n").map_err(|e| CliError::Failure(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
