//! Checked-in manifest of adjudicated discrepancies between the tabulated
//! coefficient families and the derivation routes. A finding listed here
//! keeps `verify` green while preserving the evidence; an unlisted finding
//! fails the run.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

const MANIFEST: &str = include_str!("../data/known_discrepancies.json");

#[derive(Deserialize)]
struct ManifestFile {
    #[allow(dead_code)]
    version: u32,
    entries: Vec<ManifestEntry>,
}

#[derive(Deserialize)]
struct ManifestEntry {
    id: String,
    #[allow(dead_code)]
    scope: String,
    #[allow(dead_code)]
    description: String,
}

pub fn known_ids() -> BTreeSet<String> {
    let parsed: ManifestFile = serde_json::from_str(MANIFEST).expect("valid manifest");
    parsed.entries.into_iter().map(|e| e.id).collect()
}

/// A detected discrepancy, tagged with whether the manifest lists it.
#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub id: String,
    pub detail: String,
    pub known: bool,
}

impl Finding {
    pub fn new(id: &str, detail: &str, known: &BTreeSet<String>) -> Self {
        Finding {
            id: id.to_string(),
            detail: detail.to_string(),
            known: known.contains(id),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_parses_and_lists_the_four_findings() {
        let ids = known_ids();
        for id in [
            "q4-middle-coefficients",
            "q4es-middle-coefficients",
            "bundle-third-middle-coefficients",
            "q4-lambda1-substitution",
        ] {
            assert!(ids.contains(id), "{id}");
        }
    }
}
