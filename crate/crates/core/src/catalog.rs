//! Embedded oscillator dataset: the first known oscillator of every period
//! from 1 to 42, the p43 Snark loop, a few extra gallery patterns and the
//! fixtures used by synthesis and catalyst search.
//!
//! The data lives in `data/catalog/` as one RLE file per pattern plus
//! `manifest.json`; both are compiled into the crate.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::analysis::{detect_dynamics, DynamicsKind, DynamicsReport};
use crate::error::{Error, Result};
use crate::parallel::{par_map, Parallelism};
use crate::pattern::Pattern;
use crate::rle::parse_rle;

mod files {
    include!(concat!(env!("OUT_DIR"), "/catalog_files.rs"));
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    Oscillator,
    Spaceship,
    Fixture,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    /// First-known table row with an embedded pattern.
    FirstKnown,
    /// First-known table row with no pattern; never verified.
    ManifestOnly,
    /// Gallery pattern outside the first-known table.
    GalleryExtra,
    /// Building block for synthesis or search; not periodic on its own.
    Fixture,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub period: Option<u64>,
    pub period_formula: Option<String>,
    pub name: String,
    pub discoverer: String,
    pub year: String,
    pub kind: EntryKind,
    pub file: Option<String>,
    pub role: Role,
    pub note: Option<String>,
    #[serde(skip)]
    pub rle: Option<String>,
}

impl CatalogEntry {
    pub fn is_verifiable(&self) -> bool {
        self.rle.is_some() && self.period.is_some() && self.kind != EntryKind::Fixture
    }

    pub fn pattern(&self) -> Result<Pattern> {
        let text = self
            .rle
            .as_deref()
            .ok_or_else(|| Error::Catalog(format!("{} has no embedded pattern", self.name)))?;
        Ok(parse_rle(text)?.pattern)
    }

    fn expected_kind(&self) -> DynamicsKind {
        match self.kind {
            EntryKind::Spaceship => DynamicsKind::Spaceship,
            _ => DynamicsKind::Oscillator,
        }
    }
}

#[derive(Deserialize)]
struct Manifest {
    entries: Vec<CatalogEntry>,
}

fn file(name: &str) -> Option<&'static str> {
    files::FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
}

fn load() -> Result<Vec<CatalogEntry>> {
    let text = file("manifest.json").ok_or_else(|| Error::Catalog("manifest missing".into()))?;
    let manifest: Manifest =
        serde_json::from_str(text).map_err(|e| Error::Catalog(format!("manifest: {e}")))?;
    manifest
        .entries
        .into_iter()
        .map(|mut e| {
            if let Some(f) = &e.file {
                let text = file(f).ok_or_else(|| Error::Catalog(format!("missing file {f}")))?;
                e.rle = Some(text.to_string());
            }
            Ok(e)
        })
        .collect()
}

/// Every manifest row in manifest order.
pub fn entries() -> &'static [CatalogEntry] {
    static ENTRIES: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| load().expect("embedded catalog is well formed"))
}

pub fn catalog_lookup(period: u64) -> Vec<&'static CatalogEntry> {
    entries()
        .iter()
        .filter(|e| e.period == Some(period))
        .collect()
}

pub fn by_name(name: &str) -> Option<&'static CatalogEntry> {
    entries().iter().find(|e| e.name == name)
}

/// The first-known oscillator for `period`, if its pattern is embedded.
pub fn first_known(period: u64) -> Option<&'static CatalogEntry> {
    entries()
        .iter()
        .find(|e| e.period == Some(period) && e.role == Role::FirstKnown && e.rle.is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryResult {
    pub name: String,
    pub period: u64,
    pub file: Option<String>,
    pub passed: bool,
    pub detected: Option<DynamicsReport>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub entries: Vec<EntryResult>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub all_passed: bool,
}

fn verify_entry(e: &CatalogEntry) -> EntryResult {
    let period = e.period.unwrap_or(0);
    let mut result = EntryResult {
        name: e.name.clone(),
        period,
        file: e.file.clone(),
        passed: false,
        detected: None,
        error: None,
    };
    let report = e.pattern().and_then(|p| detect_dynamics(&p, period + 1));
    match report {
        Ok(r) => {
            result.passed = r.kind == e.expected_kind() && r.period == Some(period);
            if !result.passed {
                result.error = Some(format!(
                    "expected period {period}, detected {:?} {:?}",
                    r.kind, r.period
                ));
            }
            result.detected = Some(r);
        }
        Err(err) => result.error = Some(err.to_string()),
    }
    result
}

/// Verifies the given entries; rows that carry no pattern or are fixtures are
/// counted as skipped. Results are ordered by period, then name.
pub fn verify_entries(all: &[CatalogEntry], par: Parallelism) -> CatalogReport {
    let mut todo: Vec<&CatalogEntry> = all.iter().filter(|e| e.is_verifiable()).collect();
    todo.sort_by(|a, b| (a.period, &a.name).cmp(&(b.period, &b.name)));
    let results = par_map(&todo, par, |e| verify_entry(e));
    let passed = results.iter().filter(|r| r.passed).count();
    let failed = results.len() - passed;
    CatalogReport {
        entries: results,
        passed,
        failed,
        skipped: all.len() - todo.len(),
        all_passed: failed == 0,
    }
}

pub fn verify_catalog(par: Parallelism) -> CatalogReport {
    verify_entries(entries(), par)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_period_up_to_42_has_a_pattern() {
        for p in 1..=42 {
            assert!(first_known(p).is_some(), "period {p}");
        }
    }

    #[test]
    fn lookup_examples() {
        let e = catalog_lookup(19);
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].name, "cribbage");
        assert_eq!(e[0].discoverer, "Mitchell Riley");
        assert_eq!(e[0].year, "2023");
        let names: Vec<_> = catalog_lookup(2).iter().map(|e| e.name.as_str()).collect();
        assert!(names.contains(&"blinker") && names.contains(&"phoenix"));
        assert!(catalog_lookup(99).is_empty());
    }

    #[test]
    fn every_file_parses() {
        for e in entries().iter().filter(|e| e.rle.is_some()) {
            e.pattern()
                .unwrap_or_else(|err| panic!("{}: {err}", e.name));
        }
    }
}
