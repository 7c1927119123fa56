//! Deterministic pipeline reports: ordered check results with anchors,
//! hypothesis flags and a verdict derived from the results.

mod pipeline;
pub mod registry;
#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::check::Outcome;
use crate::io::{to_canonical_json, InputFile, Sidecar};

pub use pipeline::{
    depth_two_summary, reconstruct, run_extension, run_input, run_pairing, tower_for, DepthTwoSummary, LevelSummary, Options, Reconstruction,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub anchor: &'static str,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// Milliseconds spent since the previous check; only with `Options::timing`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl CheckResult {
    pub fn new(id: &str, outcome: Outcome) -> CheckResult {
        let anchor = registry::anchor(id).unwrap_or_else(|| panic!("unregistered check id {id}"));
        let (status, reason, witness) = match outcome {
            Outcome::Pass => ("pass", None, None),
            Outcome::Fail { witness } => ("fail", None, Some(witness)),
            Outcome::Skipped { reason } => ("skipped", Some(reason), None),
        };
        CheckResult { id: id.to_string(), anchor, status, reason, witness, timing_ms: None }
    }

    pub fn is_pass(&self) -> bool {
        self.status == "pass"
    }

    pub fn is_fail(&self) -> bool {
        self.status == "fail"
    }
}

/// `None` when the pipeline stopped before deciding the property.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub frobenius: Option<bool>,
    pub index_scalar: Option<bool>,
    pub normalized: Option<bool>,
    pub split: Option<bool>,
    pub separable: Option<bool>,
    pub strongly_separable: Option<bool>,
    pub irreducible: Option<bool>,
    pub depth_two: Option<bool>,
}

impl Hypotheses {
    fn named(&self) -> Vec<(&'static str, Option<bool>)> {
        vec![
            ("frobenius", self.frobenius),
            ("index-scalar", self.index_scalar),
            ("normalized", self.normalized),
            ("split", self.split),
            ("separable", self.separable),
            ("strongly-separable", self.strongly_separable),
            ("irreducible", self.irreducible),
            ("depth-two", self.depth_two),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub hypotheses_held: Vec<&'static str>,
    pub hypotheses_failed: Vec<&'static str>,
    pub conclusions_certified: Vec<&'static str>,
    pub statement: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub input: String,
    pub kind: &'static str,
    pub field: String,
    /// `sha256:` of the canonical JSON of the input.
    pub digest: String,
    pub dims: BTreeMap<&'static str, usize>,
    /// `λ⁻¹` of the (normalized) system the tower is built on.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<String>,
    pub hypotheses: Hypotheses,
    /// Adjustments the pipeline made to the input, such as normalizing `E`.
    pub notes: Vec<String>,
    pub checks: Vec<CheckResult>,
    pub verdict: Verdict,
}

/// A conclusion is certified when every registered check under its
/// prefixes is present and passes.
const CONCLUSIONS: &[(&str, &[&str])] = &[
    ("frobenius-system", &["frobenius.bimodule-map", "frobenius.dual-bases", "frobenius.index-scalar", "frobenius.normalized"]),
    ("jones-tower", &["tower."]),
    ("depth-two-structure", &["depth2."]),
    ("hopf-reconstruction", &["hopf."]),
    ("smash-product-m2", &["galois.b-action.", "galois.theta."]),
    ("cleft-a-extension", &["galois.a-action.", "galois.cleft."]),
    ("galois-extension", &["galois.galois-map"]),
    ("hopf-algebra-b", &["pairing.b."]),
    ("hopf-algebra-a", &["pairing.a."]),
    ("pairing-duality", &["pairing.coalgebra-pairing", "pairing.algebra-pairing", "pairing.basis-independence"]),
];

fn certified(checks: &[CheckResult], prefixes: &[&str]) -> bool {
    let mut any = false;
    for p in prefixes {
        for id in registry::ids_with_prefix(p) {
            match checks.iter().find(|c| c.id == id) {
                Some(c) if c.is_pass() => any = true,
                _ => return false,
            }
        }
    }
    any
}

pub fn verdict(hyp: &Hypotheses, checks: &[CheckResult]) -> Verdict {
    let count = |s: &str| checks.iter().filter(|c| c.status == s).count();
    let named = hyp.named();
    let hypotheses_held: Vec<&'static str> = named.iter().filter(|(_, v)| *v == Some(true)).map(|(n, _)| *n).collect();
    let hypotheses_failed: Vec<&'static str> = named.iter().filter(|(_, v)| *v == Some(false)).map(|(n, _)| *n).collect();
    let conclusions_certified: Vec<&'static str> =
        CONCLUSIONS.iter().filter(|(_, prefixes)| certified(checks, prefixes)).map(|(n, _)| *n).collect();
    let galois = conclusions_certified.contains(&"galois-extension");
    let statement = match (hyp.irreducible, hyp.depth_two, hyp.strongly_separable) {
        (Some(true), Some(true), Some(ss)) => match (ss, galois) {
            (true, true) => "irreducible depth-two extension: E is strongly separable and M/N is B-Galois; both sides of the equivalence certified".into(),
            (true, false) => "irreducible depth-two extension: E is strongly separable but the Galois property was not certified".into(),
            (false, true) => "irreducible depth-two extension: M/N is B-Galois but strong separability failed".into(),
            (false, false) => "irreducible depth-two extension: neither strong separability nor the Galois property holds".into(),
        },
        _ => {
            let missing: Vec<&str> = [("irreducible", hyp.irreducible), ("depth-two", hyp.depth_two)]
                .iter()
                .filter(|(_, v)| *v != Some(true))
                .map(|(n, _)| *n)
                .collect();
            if missing.is_empty() {
                "Galois equivalence not assessed".into()
            } else {
                format!("Galois equivalence not assessed: hypothesis {} not established", missing.join(" and "))
            }
        }
    };
    Verdict {
        passed: count("pass"),
        failed: count("fail"),
        skipped: count("skipped"),
        hypotheses_held,
        hypotheses_failed,
        conclusions_certified,
        statement,
    }
}

impl PipelineReport {
    /// 0 when no check failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.verdict.failed > 0)
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "input:  {} ({}, field {})", self.input, self.kind, self.field);
        let _ = writeln!(s, "digest: {}", self.digest);
        if !self.dims.is_empty() {
            let dims: Vec<String> = self.dims.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(s, "dims:   {}", dims.join(" "));
        }
        if let Some(i) = &self.index {
            let _ = writeln!(s, "index:  {i}");
        }
        for n in &self.notes {
            let _ = writeln!(s, "note:   {n}");
        }
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.checks {
            let tag = match c.status {
                "pass" => "PASS",
                "fail" => "FAIL",
                _ => "SKIP",
            };
            let _ = write!(s, "{tag}  {:width$}  {}", c.id, c.anchor);
            if let Some(t) = c.timing_ms {
                let _ = write!(s, "  [{t} ms]");
            }
            s.push('\n');
            if let Some(r) = &c.reason {
                let _ = writeln!(s, "      reason: {r}");
            }
            if let Some(w) = &c.witness {
                let _ = writeln!(s, "      witness: {w}");
            }
        }
        let v = &self.verdict;
        let _ = writeln!(s, "summary: {} passed, {} failed, {} skipped", v.passed, v.failed, v.skipped);
        let _ = writeln!(s, "hypotheses held: {}", list_or_none(&v.hypotheses_held));
        let _ = writeln!(s, "hypotheses failed: {}", list_or_none(&v.hypotheses_failed));
        let _ = writeln!(s, "conclusions certified: {}", list_or_none(&v.conclusions_certified));
        let _ = writeln!(s, "verdict: {}", v.statement);
        s
    }
}

fn list_or_none(v: &[&str]) -> String {
    if v.is_empty() {
        "none".into()
    } else {
        v.join(", ")
    }
}

pub fn digest(input: &InputFile) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(to_canonical_json(input).as_bytes())))
}

/// Differences between a sidecar's expectations and a report.
pub fn sidecar_mismatches(sc: &Sidecar, r: &PipelineReport) -> Vec<String> {
    let mut out = Vec::new();
    let flag = |v: Option<bool>| v.map_or("undetermined".to_string(), |b| b.to_string());
    for (key, want) in &sc.values {
        let got = match key.as_str() {
            "field" => Some(r.field.clone()),
            "index" => r.index.clone(),
            "irreducible" => Some(flag(r.hypotheses.irreducible)),
            "depth_two" => Some(flag(r.hypotheses.depth_two)),
            "centralizer_dim" => r.dims.get("C_M(N)").map(ToString::to_string),
            k => k.strip_prefix("dim.").and_then(|d| r.dims.get(d)).map(ToString::to_string),
        };
        if got.as_deref() != Some(want.as_str()) {
            out.push(format!("{key}: expected {want}, got {}", got.unwrap_or_else(|| "nothing".into())));
        }
    }
    for (id, want) in &sc.checks {
        match r.checks.iter().find(|c| &c.id == id) {
            Some(c) if c.status == want => {}
            Some(c) => out.push(format!("{id}: expected {want}, got {}", c.status)),
            None => out.push(format!("{id}: expected {want}, not in report")),
        }
    }
    out
}
