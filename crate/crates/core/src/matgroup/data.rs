//! Embedded generator data for the exceptional groups G4-G37.
//!
//! The matrices live in `exceptional.json`, one entry per Shephard-Todd
//! index, together with the expected group order and reflection profile.
//! Closure re-derives both on every load of an enumerable group, so a
//! transcription error in the data cannot survive silently.

use std::collections::HashMap;

use once_cell::sync::Lazy;
use serde::Deserialize;

use super::Budget;
use crate::cyclo::{CycloMatrix, CycloNum};
use crate::error::{Error, Result};

/// Bumped whenever `exceptional.json` changes; cache files are keyed on it.
pub const DATA_VERSION: u32 = 1;

static RAW: &str = include_str!("exceptional.json");

#[derive(Deserialize)]
struct RawFile {
    version: u32,
    groups: Vec<RawEntry>,
}

#[derive(Deserialize)]
struct RawEntry {
    index: u8,
    dim: usize,
    order: u64,
    /// Pairs (reflection order, count).
    reflections: Vec<(u32, u64)>,
    gens: Vec<Vec<Vec<String>>>,
}

pub struct ExceptionalEntry {
    pub index: u8,
    pub dim: usize,
    pub order: u64,
    pub reflections: Vec<(u32, u64)>,
    gens_raw: Vec<Vec<Vec<String>>>,
}

impl ExceptionalEntry {
    /// Parses the generator matrices from their textual cyclotomic form.
    pub fn gens(&self) -> Result<Vec<CycloMatrix>> {
        let mut out = Vec::with_capacity(self.gens_raw.len());
        for raw in &self.gens_raw {
            let rows: Result<Vec<Vec<CycloNum>>> = raw
                .iter()
                .map(|row| row.iter().map(|s| s.parse::<CycloNum>()).collect())
                .collect();
            out.push(CycloMatrix::from_rows(rows?)?);
        }
        Ok(out)
    }

    pub fn reflection_count(&self) -> u64 {
        self.reflections.iter().map(|&(_, c)| c).sum()
    }
}

static ENTRIES: Lazy<HashMap<u8, ExceptionalEntry>> = Lazy::new(|| {
    let raw: RawFile = serde_json::from_str(RAW).expect("embedded exceptional.json is well-formed");
    assert_eq!(raw.version, DATA_VERSION);
    raw.groups
        .into_iter()
        .map(|g| {
            (
                g.index,
                ExceptionalEntry {
                    index: g.index,
                    dim: g.dim,
                    order: g.order,
                    reflections: g.reflections,
                    gens_raw: g.gens,
                },
            )
        })
        .collect()
});

pub fn exceptional_entry(index: u8) -> Result<&'static ExceptionalEntry> {
    if !(4..=37).contains(&index) {
        return Err(Error::UnknownExceptionalIndex(index));
    }
    ENTRIES
        .get(&index)
        .ok_or(Error::UnknownExceptionalIndex(index))
}

/// Generator matrices for G_index, refusing groups whose order exceeds the
/// budget (with the default budget that is exactly G34, G36 and G37).
pub fn load_exceptional(index: u8, budget: &Budget) -> Result<Vec<CycloMatrix>> {
    let entry = exceptional_entry(index)?;
    if entry.order > budget.max_order {
        return Err(Error::BudgetExceeded {
            task: format!("loading G{index}"),
            needed: entry.order,
            budget: budget.max_order,
        });
    }
    entry.gens()
}
