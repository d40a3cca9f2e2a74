//! Census file format: a single self-describing JSON document with all counts
//! as decimal strings (exactness survives any reader) and a SHA-256 checksum
//! over a canonical serialization of the count arrays.

use super::{Census, CensusError};
use crate::walk::LatticeDim;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;
use thiserror::Error;

pub const CENSUS_FORMAT_VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum PersistError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed census file: {0}")]
    Malformed(String),
    #[error("unsupported census format version {found} (expected {CENSUS_FORMAT_VERSION})")]
    VersionMismatch { found: u64 },
    #[error("census checksum mismatch: counts do not match the recorded digest")]
    ChecksumMismatch,
}

#[derive(Serialize, Deserialize)]
struct CensusFile {
    format_version: u64,
    dimension: u32,
    max_length: usize,
    c: Vec<String>,
    b: Vec<String>,
    bridge_by_height: Vec<Vec<String>>,
    checksum: String,
}

/// Canonical serialization of the count arrays: decimal values in index
/// order, fixed separators, no whitespace. This exact string is hashed.
fn canonical_counts(c: &[String], b: &[String], bbh: &[Vec<String>]) -> String {
    let rows: Vec<String> = bbh.iter().map(|row| row.join(",")).collect();
    format!("c={};b={};h={}", c.join(","), b.join(","), rows.join("|"))
}

fn digest(c: &[String], b: &[String], bbh: &[Vec<String>]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(canonical_counts(c, b, bbh).as_bytes());
    hex::encode(hasher.finalize())
}

fn to_file(census: &Census) -> CensusFile {
    let c: Vec<String> = census.walk_counts().iter().map(|x| x.to_string()).collect();
    let b: Vec<String> = census.bridge_counts().iter().map(|x| x.to_string()).collect();
    let bbh: Vec<Vec<String>> = census
        .height_matrix()
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect())
        .collect();
    let checksum = digest(&c, &b, &bbh);
    CensusFile {
        format_version: CENSUS_FORMAT_VERSION,
        dimension: census.dim().get(),
        max_length: census.max_length(),
        c,
        b,
        bridge_by_height: bbh,
        checksum,
    }
}

fn parse_count(s: &str) -> Result<BigUint, PersistError> {
    s.parse::<BigUint>()
        .map_err(|_| PersistError::Malformed(format!("invalid count {s:?}")))
}

fn from_file(file: CensusFile) -> Result<Census, PersistError> {
    if file.format_version != CENSUS_FORMAT_VERSION {
        return Err(PersistError::VersionMismatch {
            found: file.format_version,
        });
    }
    if digest(&file.c, &file.b, &file.bridge_by_height) != file.checksum {
        return Err(PersistError::ChecksumMismatch);
    }
    let dim = LatticeDim::new(file.dimension)
        .map_err(|e| PersistError::Malformed(e.to_string()))?;
    let c = file.c.iter().map(|s| parse_count(s)).collect::<Result<Vec<_>, _>>()?;
    let b = file.b.iter().map(|s| parse_count(s)).collect::<Result<Vec<_>, _>>()?;
    let bbh = file
        .bridge_by_height
        .iter()
        .map(|row| row.iter().map(|s| parse_count(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if c.len() != file.max_length + 1 {
        return Err(PersistError::Malformed(format!(
            "max_length {} disagrees with {} count entries",
            file.max_length,
            c.len()
        )));
    }
    Census::from_parts(dim, c, b, bbh).map_err(|e: CensusError| PersistError::Malformed(e.to_string()))
}

pub fn census_to_string(census: &Census) -> String {
    serde_json::to_string_pretty(&to_file(census)).expect("census serializes")
}

pub fn census_from_str(text: &str) -> Result<Census, PersistError> {
    let file: CensusFile =
        serde_json::from_str(text).map_err(|e| PersistError::Malformed(e.to_string()))?;
    from_file(file)
}

pub fn save_census(census: &Census, path: &Path) -> Result<(), PersistError> {
    std::fs::write(path, census_to_string(census))?;
    Ok(())
}

pub fn load_census(path: &Path) -> Result<Census, PersistError> {
    census_from_str(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::enumerate_census;

    fn small_census() -> Census {
        enumerate_census(LatticeDim::new(2).unwrap(), 4, 1).unwrap()
    }

    #[test]
    fn roundtrip_is_identity() {
        let census = small_census();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("census.saw");
        save_census(&census, &path).unwrap();
        let loaded = load_census(&path).unwrap();
        assert_eq!(census, loaded);
    }

    #[test]
    fn corrupted_checksum_is_detected() {
        let census = small_census();
        let mut file: CensusFile = serde_json::from_str(&census_to_string(&census)).unwrap();
        file.c[3] = "37".into();
        let text = serde_json::to_string(&file).unwrap();
        assert!(matches!(
            census_from_str(&text),
            Err(PersistError::ChecksumMismatch)
        ));
    }

    #[test]
    fn version_mismatch_is_detected() {
        let census = small_census();
        let mut file: CensusFile = serde_json::from_str(&census_to_string(&census)).unwrap();
        file.format_version = 999;
        let text = serde_json::to_string(&file).unwrap();
        assert!(matches!(
            census_from_str(&text),
            Err(PersistError::VersionMismatch { found: 999 })
        ));
    }

    #[test]
    fn garbage_is_malformed() {
        assert!(matches!(
            census_from_str("not json at all"),
            Err(PersistError::Malformed(_))
        ));
        // structurally valid JSON, inconsistent metadata
        let census = small_census();
        let mut file: CensusFile = serde_json::from_str(&census_to_string(&census)).unwrap();
        file.max_length = 17;
        let text = serde_json::to_string(&file).unwrap();
        assert!(matches!(census_from_str(&text), Err(PersistError::Malformed(_))));
    }
}
