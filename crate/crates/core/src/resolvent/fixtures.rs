use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{QuadElt, RationalMap};
use crate::{ipoly, ForgeError, IntPoly, Result};

/// The two worked quadratic `a`-orbits for `n = 5`.
pub const ORBIT_JSON: &str = include_str!("../../fixtures/orbits.json");

/// SHA-256 of [`ORBIT_JSON`].
pub const ORBIT_SHA256: &str = "60bf02ea011363ec4cca8697eb7657dcf41ba93fdc8568ddd1749c81feca1ad7";

/// A quadratic `a`-orbit with the quintic printed for it, a reduced
/// polynomial for the same splitting field and the Tschirnhaus map between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitExample {
    pub name: String,
    pub n: u64,
    pub generator: u64,
    pub a: Vec<QuadElt>,
    pub printed: IntPoly,
    pub reduced: IntPoly,
    /// The actual image of the computed quintic under the printed map, when
    /// it differs from the printed reduced polynomial.
    #[serde(default)]
    pub reduced_corrected: Option<IntPoly>,
    pub tschirnhaus: RationalMap,
}

#[derive(Deserialize)]
struct OrbitFile {
    version: u32,
    orbits: Vec<OrbitExample>,
}

pub fn orbit_fixture_digest() -> String {
    hex::encode(Sha256::digest(ORBIT_JSON.as_bytes()))
}

fn parse() -> std::result::Result<Vec<OrbitExample>, String> {
    let found = orbit_fixture_digest();
    if found != ORBIT_SHA256 {
        return Err(ForgeError::Checksum { expected: ORBIT_SHA256.to_string(), found }.to_string());
    }
    let file: OrbitFile = serde_json::from_str(ORBIT_JSON).map_err(|e| e.to_string())?;
    if file.version != 1 {
        return Err(format!("unsupported fixture version {}", file.version));
    }
    Ok(file.orbits)
}

pub fn orbit_examples() -> Result<&'static [OrbitExample]> {
    static EXAMPLES: OnceLock<std::result::Result<Vec<OrbitExample>, String>> = OnceLock::new();
    match EXAMPLES.get_or_init(parse) {
        Ok(v) => Ok(v),
        Err(e) => Err(ForgeError::Parse(format!("orbit fixtures: {e}"))),
    }
}

pub fn orbit_example(name: &str) -> Result<&'static OrbitExample> {
    orbit_examples()?
        .iter()
        .find(|o| o.name == name)
        .ok_or_else(|| ForgeError::Parse(format!("no orbit example named `{name}`")))
}

/// `x^4 - 47x^3 + 519x^2 + 47x + 1`, whose roots form both dual orbits.
pub fn unit_quartic() -> IntPoly {
    ipoly(&[1, 47, 519, -47, 1])
}

/// The two printed generators of the quartic's cyclic Galois group:
/// `(8x^3 - 377x^2 + 4186x + 234)/5` and `(-13x^3 + 612x^2 - 6786x - 234)/5`.
pub fn unit_quartic_generators() -> [RationalMap; 2] {
    [
        RationalMap::new(ipoly(&[234, 4186, -377, 8]), 5),
        RationalMap::new(ipoly(&[-234, -6786, 612, -13]), 5),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load() {
        let ex = orbit_examples().unwrap();
        assert_eq!(ex.len(), 2);
        assert_eq!(orbit_example("sqrt-47").unwrap().printed, ipoly(&[443629, 5860, -2605, -10, 0, 1]));
        assert!(orbit_example("sqrt-7").is_err());
    }
}
