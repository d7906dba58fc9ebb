//! Golden files: canonical outputs compared byte for byte.

use std::path::Path;

use djkm_core::algebra::{BasisKey, Bracket, ClosedBracket};
use djkm_core::families::{family_by_recursion, Family};
use djkm_core::ring::psi_table_generic;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::format::{algebra_json, canonical, family_csv, family_json, psi_table_json};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub name: String,
    pub content: String,
}

/// Brackets of all pairs `x <= y` of currents in the window, over `Q[c]`.
pub fn bracket_table_json(window: i64) -> Value {
    let br = ClosedBracket::generic(window);
    let keys = BasisKey::currents(window);
    let mut entries = Vec::new();
    for (i, a) in keys.iter().enumerate() {
        for b in &keys[i..] {
            let v = br.bracket_basis(a, b);
            if !v.is_zero() {
                entries.push(json!({"x": a.to_string(), "y": b.to_string(), "bracket": algebra_json(&v)}));
            }
        }
    }
    json!({"window": window, "entries": entries})
}

/// Family tables to `k = 20` for all four families (JSON, and CSV for
/// `-3`), `Psi(k)` for `|k| <= 20`, and bracket tables at windows 2 and 4.
pub fn standard_snapshots() -> Result<Vec<Snapshot>> {
    let mut out = Vec::new();
    for fam in Family::ALL {
        let table = family_by_recursion(fam, 20)?;
        out.push(Snapshot {
            name: format!("family_{}_k20.json", fam.index()),
            content: canonical(&family_json(&table)),
        });
        if fam == Family::M3 {
            out.push(Snapshot {
                name: "family_-3_k20.csv".into(),
                content: family_csv(&table),
            });
        }
    }
    out.push(Snapshot {
        name: "psi_k20.json".into(),
        content: canonical(&psi_table_json(&psi_table_generic(20), -20)),
    });
    for w in [2, 4] {
        out.push(Snapshot {
            name: format!("bracket_w{w}.json"),
            content: canonical(&bracket_table_json(w)),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Match,
    Written,
    Mismatch(String),
}

fn describe_diff(expected: &str, actual: &str) -> String {
    let (e, a): (Vec<&str>, Vec<&str>) = (expected.lines().collect(), actual.lines().collect());
    let first = e
        .iter()
        .zip(&a)
        .position(|(x, y)| x != y)
        .unwrap_or(e.len().min(a.len()));
    format!(
        "first difference at line {}: expected {:?}, got {:?} ({} vs {} lines, {} vs {} bytes)",
        first + 1,
        e.get(first).copied().unwrap_or("<end of file>"),
        a.get(first).copied().unwrap_or("<end of file>"),
        e.len(),
        a.len(),
        expected.len(),
        actual.len()
    )
}

pub fn check(snap: &Snapshot, dir: &Path, update: bool) -> Result<Status> {
    let path = dir.join(&snap.name);
    if update {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        std::fs::write(&path, &snap.content).map_err(|e| CliError::io(&path, e))?;
        return Ok(Status::Written);
    }
    match std::fs::read_to_string(&path) {
        Ok(golden) if golden == snap.content => Ok(Status::Match),
        Ok(golden) => Ok(Status::Mismatch(describe_diff(&golden, &snap.content))),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            Ok(Status::Mismatch("golden file is missing (run with --update)".into()))
        }
        Err(e) => Err(CliError::io(&path, e)),
    }
}
