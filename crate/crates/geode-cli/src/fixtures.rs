//! Recurrence-file loading, integrity checks, and bundled-fixture lookup.
//!
//! The repository ships pre-guessed, pre-verified recurrence files under
//! `fixtures/` so the fast methods work out of the box; `guess` can always
//! regenerate them from scratch. Every file loaded here is re-checked
//! against the definitional oracle on a small window before being trusted —
//! a file that fails is reported as an integrity error (exit 3), never used.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use num_bigint::BigInt;
use serde_json::json;

use geode::error::GeodeError;
use geode::index::MultiIndex;
use geode::oracle::{geode_number_oracle, geode_number_oracle_with_cap, GeodeTable};
use geode::recurrence::{Direction, PureRecurrence, RecurrenceSystem};
use geode::verifier;

use crate::{Envelope, EXIT_INTEGRITY, EXIT_RESOURCE, EXIT_USAGE};

pub enum LoadError {
    /// File missing or unreadable: usage error.
    Missing(String),
    /// File exists but does not parse or is structurally wrong.
    Corrupt(String),
    /// File parses but fails verification against the oracle.
    Unverified(String),
    /// Oracle budget exceeded during checks.
    Resource(String),
}

impl LoadError {
    pub fn into_exit(self, env: Envelope) -> ExitCode {
        match self {
            LoadError::Missing(m) => env.fail(EXIT_USAGE, m),
            LoadError::Corrupt(m) | LoadError::Unverified(m) => env.fail(EXIT_INTEGRITY, m),
            LoadError::Resource(m) => env.fail(EXIT_RESOURCE, m),
        }
    }
}

impl From<GeodeError> for LoadError {
    fn from(e: GeodeError) -> Self {
        match e {
            GeodeError::TermBudget { .. } => LoadError::Resource(e.to_string()),
            other => LoadError::Unverified(other.to_string()),
        }
    }
}

pub fn fixture_dir(explicit: Option<&Path>) -> PathBuf {
    if let Some(d) = explicit {
        return d.to_path_buf();
    }
    if let Ok(d) = std::env::var("GEODE_FIXTURES") {
        return PathBuf::from(d);
    }
    PathBuf::from("fixtures")
}

pub fn load_recurrence(path: &Path) -> Result<PureRecurrence, LoadError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LoadError::Missing(format!("cannot read {}: {e}", path.display())))?;
    PureRecurrence::from_json(&text, None)
        .map_err(|e| LoadError::Corrupt(format!("{}: {e}", path.display())))
}

fn system_paths(rec: &[PathBuf], fixtures: Option<&Path>) -> Vec<PathBuf> {
    if !rec.is_empty() {
        return rec.to_vec();
    }
    let dir = fixture_dir(fixtures);
    (1..=3).map(|d| dir.join(format!("geode3_dir{d}.json"))).collect()
}

fn diagonal_path(rec: &[PathBuf], fixtures: Option<&Path>) -> PathBuf {
    // an explicitly passed file wins; otherwise the bundled fixture
    if let Some(p) = rec.first() {
        return p.clone();
    }
    fixture_dir(fixtures).join("geode3_diag.json")
}

pub fn system_available(rec: &[PathBuf], fixtures: Option<&Path>) -> bool {
    let paths = system_paths(rec, fixtures);
    paths.len() == 3 && paths.iter().all(|p| p.exists())
}

pub fn diagonal_available(rec: &[PathBuf], fixtures: Option<&Path>) -> bool {
    diagonal_path(rec, fixtures).exists()
}

/// Load a complete pure system and verify it on a small window before use.
pub fn load_system(
    rec: &[PathBuf],
    fixtures: Option<&Path>,
) -> Result<RecurrenceSystem, LoadError> {
    let paths = system_paths(rec, fixtures);
    let mut recs = Vec::new();
    for p in &paths {
        recs.push(load_recurrence(p)?);
    }
    let k = recs[0].num_vars;
    let complete =
        recs.len() == k && (1..=k).all(|d| recs.iter().any(|r| r.direction == Direction::Coordinate(d)));
    if !complete {
        return Err(LoadError::Corrupt(
            "recurrence files do not cover every coordinate direction".into(),
        ));
    }
    let mut sys = RecurrenceSystem::new(recs, 2)?;
    let report = verifier::verify_window(&mut sys, 4)?;
    if !report.passed() {
        return Err(LoadError::Unverified(format!(
            "recurrence files fail window verification: {}",
            report.to_json()
        )));
    }
    Ok(sys)
}

/// Load the diagonal recurrence (plus the full system for denominator
/// fallback when available) and check it against oracle diagonal values.
pub fn load_diagonal(
    rec: &[PathBuf],
    fixtures: Option<&Path>,
) -> Result<(PureRecurrence, Option<RecurrenceSystem>), LoadError> {
    let diag_files: Vec<PathBuf> = rec
        .iter()
        .filter(|p|

            std::fs::read_to_string(p)
                .ok()
                .and_then(|t| serde_json::from_str::<serde_json::Value>(&t).ok())
                .map(|v| v["kind"] == json!("diagonal"))
                .unwrap_or(false)
        )
        .cloned()
        .collect();
    let path = if let Some(p) = diag_files.first() {
        p.clone()
    } else {
        diagonal_path(&[], fixtures)
    };
    let recurrence = load_recurrence(&path)?;
    if recurrence.direction != Direction::Diagonal {
        return Err(LoadError::Corrupt(format!(
            "{} is not a diagonal recurrence",
            path.display()
        )));
    }
    let report = verifier::verify_relation_window(&recurrence, 4)?;
    if !report.passed() {
        return Err(LoadError::Unverified(format!(
            "diagonal recurrence fails oracle check: {}",
            report.to_json()
        )));
    }
    let pure_files: Vec<PathBuf> = rec.iter().filter(|p| !diag_files.contains(p)).cloned().collect();
    let fallback = if system_available(&pure_files, fixtures) {
        load_system(&pure_files, fixtures).ok()
    } else {
        None
    };
    Ok((recurrence, fallback))
}

/// Initial diagonal values `G(j, ..., j)` for `j = 1..=order`, straight from
/// the definitional oracle (for k=3 and order 2 these are 319 and 669123).
pub fn diagonal_seeds(order: usize) -> Vec<(u32, BigInt)> {
    (1..=order as u32)
        .map(|j| {
            let v = geode_number_oracle(&MultiIndex::diagonal(j, 3)).expect("small oracle value");
            (j, v)
        })
        .collect()
}

/// Diagonal training data `G(n, ..., n)` for `k * n <= table_total_max`,
/// evaluated through the verified pure system when one is bundled (fast),
/// otherwise through the definitional oracle.
pub fn diagonal_data(
    k: usize,
    table_total_max: u32,
    fixtures: Option<&Path>,
    cap: usize,
) -> Result<GeodeTable, LoadError> {
    let n_max = table_total_max / k as u32;
    let mut pairs: Vec<(Vec<u32>, BigInt)> = Vec::with_capacity(n_max as usize + 1);
    let sys = if k == 3 && system_available(&[], fixtures) {
        load_system(&[], fixtures).ok()
    } else {
        None
    };
    for n in 0..=n_max {
        let m = MultiIndex::diagonal(n, k);
        let value = match &sys {
            Some(sys) => sys
                .eval_pure_with(&m, None, cap)
                .map_err(|e| LoadError::Resource(e.to_string()))?
                .value,
            None => geode_number_oracle_with_cap(&m, cap).map_err(LoadError::from)?,
        };
        pairs.push((vec![n], value));
    }
    Ok(GeodeTable::from_pairs(1, pairs))
}
