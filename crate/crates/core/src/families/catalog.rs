use std::sync::OnceLock;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use super::FamilySpec;
use crate::{ForgeError, Result};

/// Family fixtures, generated by `tools/gen_families.py`.
pub const FIXTURE_JSON: &str = include_str!("../../fixtures/families.json");

/// SHA-256 of [`FIXTURE_JSON`].
pub const FIXTURE_SHA256: &str = "b0eefee292b5e8e8ba35ab08451ccc7c2516b4e3a59612b390e4c2e5124ed22d";

#[derive(Deserialize)]
struct FixtureFile {
    version: u32,
    families: Vec<FamilySpec>,
}

pub fn fixture_digest() -> String {
    hex::encode(Sha256::digest(FIXTURE_JSON.as_bytes()))
}

pub fn verify_fixture() -> Result<()> {
    let found = fixture_digest();
    if found != FIXTURE_SHA256 {
        return Err(ForgeError::Checksum { expected: FIXTURE_SHA256.to_string(), found });
    }
    Ok(())
}

fn parse() -> std::result::Result<Vec<FamilySpec>, String> {
    verify_fixture().map_err(|e| e.to_string())?;
    let file: FixtureFile = serde_json::from_str(FIXTURE_JSON).map_err(|e| e.to_string())?;
    if file.version != 1 {
        return Err(format!("unsupported fixture version {}", file.version));
    }
    for f in &file.families {
        f.validate().map_err(|e| format!("{}: {e}", f.id))?;
    }
    Ok(file.families)
}

/// Every catalogued family, in fixture order.
pub fn catalog() -> Result<&'static [FamilySpec]> {
    static CATALOG: OnceLock<std::result::Result<Vec<FamilySpec>, String>> = OnceLock::new();
    match CATALOG.get_or_init(parse) {
        Ok(v) => Ok(v),
        Err(e) => Err(ForgeError::Parse(format!("family fixtures: {e}"))),
    }
}

pub fn family(id: &str) -> Result<&'static FamilySpec> {
    catalog()?
        .iter()
        .find(|f| f.id == id)
        .ok_or_else(|| ForgeError::UnknownFamily(id.to_string()))
}
