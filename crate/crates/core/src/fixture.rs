//! The published table of the 54 families: threshold, first five primes,
//! prime count up to `10^12` and density, one row per `(r, c)`.

use std::path::{Path, PathBuf};

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

pub const FIXTURE_FILE: &str = "table2.csv";
pub const FIXTURE_ENV: &str = "RQ_FIXTURE_DIR";
/// `x_max` of the count column.
pub const TABLE_X_MAX: u64 = 1_000_000_000_000;

const EMBEDDED: &str = include_str!("../fixtures/table2.csv");

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table2Row {
    pub r: u32,
    pub c: i64,
    pub k_threshold: u64,
    pub j1: u64,
    pub j2: u64,
    pub j3: u64,
    pub j4: u64,
    pub j5: u64,
    pub n: u64,
    pub density: f64,
}

impl Table2Row {
    pub fn first_primes(&self) -> [u64; 5] {
        [self.j1, self.j2, self.j3, self.j4, self.j5]
    }
}

pub fn parse(text: &str) -> Result<Vec<Table2Row>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    reader
        .deserialize()
        .collect::<std::result::Result<Vec<Table2Row>, _>>()
        .map_err(|e| Error::Fixture(e.to_string()))
}

pub fn embedded() -> Vec<Table2Row> {
    parse(EMBEDDED).expect("embedded fixture is well-formed")
}

/// Where the fixture is read from: an explicit path, else
/// `$RQ_FIXTURE_DIR/table2.csv`, else `None` for the embedded copy.
pub fn resolve(path: Option<&Path>) -> Option<PathBuf> {
    path.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(FIXTURE_ENV).map(|d| PathBuf::from(d).join(FIXTURE_FILE)))
}

pub fn load(path: Option<&Path>) -> Result<Vec<Table2Row>> {
    match resolve(path) {
        Some(p) => {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| Error::Fixture(format!("{}: {e}", p.display())))?;
            parse(&text)
        }
        None => Ok(embedded()),
    }
}
