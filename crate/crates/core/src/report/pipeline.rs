use std::collections::BTreeMap;
use std::time::Instant;

use serde_json::json;

use super::{digest, registry, verdict, CheckResult, Hypotheses, PipelineReport};
use crate::check::Outcome;
use crate::depth_two::{
    check_depth_two, conditional_expectations, nakayama_relations, second_centralizers, verify_c_structure, verify_f_faithful, DepthTwoData,
    LevelVerdict,
};
use crate::frobenius::{
    classify, nakayama, normalize, solve_dual_bases, verify_conditional_expectation, FrobeniusSystem, StrongSeparability,
};
use crate::galois::{action_a_on_m, action_b_on_m1, cleft_data, galois_map_tower, theta_report, verify_a_action, verify_b_action};
use crate::hopf::{
    bialgebra_from_abstract_pairing, compute_pairing, dualize, tower_hopf, verify_hopf_axioms, verify_tower_identities, AntipodeMode,
    HopfError, HopfStructure, PairingData, TowerPairing,
};
use crate::io::{ExtensionSpec, InputError, InputFile, PairingSpec};
use crate::tower::{basic_construction, cyclic_generation_rank, endo_ring_iso, extend_tower, verify_braid_relations, verify_emtwo, verify_pimsner_popa, TowerData};

#[derive(Clone, Debug)]
pub struct Options {
    /// Tower levels to build: 1 stops after `M₁`, 2 runs every stage.
    pub levels: u8,
    /// Keep only checks whose id contains this string.
    pub check: Option<String>,
    /// Record per-check wall-clock time (makes reports non-reproducible).
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { levels: 2, check: None, timing: false }
    }
}

struct State {
    checks: Vec<CheckResult>,
    hyp: Hypotheses,
    dims: BTreeMap<&'static str, usize>,
    notes: Vec<String>,
    index: Option<String>,
    stop: Option<String>,
    clock: Option<Instant>,
}

impl State {
    fn new(timing: bool) -> State {
        State {
            checks: Vec::new(),
            hyp: Hypotheses::default(),
            dims: BTreeMap::new(),
            notes: Vec::new(),
            index: None,
            stop: None,
            clock: timing.then(Instant::now),
        }
    }

    fn push(&mut self, id: &str, outcome: Outcome) {
        let mut r = CheckResult::new(id, outcome);
        if let Some(start) = self.clock.as_mut() {
            r.timing_ms = Some(start.elapsed().as_millis() as u64);
            *start = Instant::now();
        }
        self.checks.push(r);
    }

    fn push_entries<K: AsRef<str>>(&mut self, prefix: &str, entries: Vec<(K, &Outcome)>) {
        for (k, o) in entries {
            self.push(&format!("{prefix}{}", k.as_ref()), o.clone());
        }
    }

    fn stop(&mut self, reason: impl Into<String>) {
        self.stop = Some(reason.into());
    }

    /// Fills every unreached id of the family with the stop reason, orders
    /// by registry position and applies the filter.
    fn finish(mut self, family: fn(&str) -> bool, opts: &Options) -> State {
        self.clock = None;
        let reason = self.stop.clone().unwrap_or_else(|| "stage not reached".into());
        let missing: Vec<&str> =
            registry::REGISTRY.iter().map(|(k, _)| *k).filter(|k| family(k) && !self.checks.iter().any(|c| c.id == *k)).collect();
        for id in missing {
            self.push(id, Outcome::skipped(reason.clone()));
        }
        let pos = |id: &str| registry::REGISTRY.iter().position(|(k, _)| *k == id).expect("registered");
        self.checks.sort_by_key(|c| pos(&c.id));
        if let Some(f) = &opts.check {
            self.checks.retain(|c| c.id.contains(f.as_str()));
        }
        self
    }
}

fn witness_of<T: serde::Serialize>(r: &T) -> serde_json::Value {
    serde_json::to_value(r).expect("serializable")
}

fn level_info(l: &LevelVerdict) -> serde_json::Value {
    json!({
        "found": l.passes(),
        "method": l.method,
        "brute_force_agrees": l.brute_force_agrees,
        "error_bound": l.error_bound,
        "failure": l.result.as_ref().err().map(ToString::to_string),
    })
}

/// Reason cited by every check that needs an irreducible depth-two tower.
fn gate_reason(d2: &DepthTwoData, base_centralizer_dim: usize) -> Option<String> {
    let mut violated = Vec::new();
    if !d2.cents.base_irreducible {
        violated.push(format!("irreducibility failed: C_M(N) has dimension {base_centralizer_dim}"));
    }
    if !d2.passes() {
        let level = if d2.level1.passes() { 2 } else { 1 };
        violated.push(format!("depth-two failed: no orthogonal dual bases at level {level}"));
    }
    (!violated.is_empty()).then(|| violated.join("; "))
}

/// Frobenius stage: returns the normalized system the tower is built on.
fn frobenius_stage(spec: &ExtensionSpec, st: &mut State) -> Result<Option<FrobeniusSystem>, InputError> {
    let ext = spec.extension()?;
    st.dims.insert("M", ext.upper.dim());
    st.dims.insert("N", ext.lower.dim());
    let Some(e) = spec.expectation_map(&ext)? else {
        st.stop("no conditional expectation E supplied; E is part of the input and is never searched for");
        return Ok(None);
    };
    let er = verify_conditional_expectation(&ext, &e);
    st.push(
        "frobenius.bimodule-map",
        Outcome::from_bool(er.is_bimodule_map(), || json!({"left_failure": er.left_failure, "right_failure": er.right_failure})),
    );
    if !er.is_bimodule_map() {
        st.stop("E is not an N-bimodule map");
        return Ok(None);
    }
    let sys = match solve_dual_bases(&ext, &e) {
        Ok(sys) => {
            st.hyp.frobenius = Some(true);
            st.push("frobenius.dual-bases", Outcome::Pass);
            sys
        }
        Err(err) => {
            st.hyp.frobenius = Some(false);
            st.push("frobenius.dual-bases", Outcome::Fail { witness: json!({"reason": err.to_string()}) });
            st.stop("E is not a Frobenius homomorphism");
            return Ok(None);
        }
    };
    let supplied = match &spec.dual_bases {
        None => Outcome::skipped("no dual bases supplied"),
        Some(tensor) => match FrobeniusSystem::from_parts(ext.clone(), e.clone(), sys.quotient.clone(), tensor.clone()) {
            Ok(given) => Outcome::from_bool(given.tensor_class() == sys.tensor_class(), || json!({"reason": "class in M ⊗_N M differs"})),
            Err(err) => Outcome::Fail { witness: json!({"reason": err.to_string()}) },
        },
    };
    st.push("frobenius.supplied-dual-bases", supplied);

    let class = classify(&sys);
    st.hyp.split = Some(class.split);
    st.hyp.separable = Some(class.separable);
    st.hyp.strongly_separable = Some(class.strongly_separable == StrongSeparability::Holds);
    st.hyp.irreducible = Some(class.irreducible);
    st.dims.insert("C_M(N)", class.centralizer_dim);
    match &sys.lambda_inv {
        Some(l) if !l.is_zero() => {
            st.hyp.index_scalar = Some(true);
            st.push("frobenius.index-scalar", Outcome::Pass);
        }
        _ => {
            st.hyp.index_scalar = Some(false);
            let reason = format!("index-scalar failed: Σ x_i y_i = {:?} is not a nonzero multiple of 1", crate::exact::vector::to_strings(&sys.index));
            st.push("frobenius.index-scalar", Outcome::skipped(reason.clone()));
            st.stop(reason);
            return Ok(None);
        }
    }
    let sys = if class.normalized {
        st.hyp.normalized = Some(true);
        st.push("frobenius.normalized", Outcome::Pass);
        sys
    } else {
        match normalize(&sys) {
            Ok(n) => {
                let mu = sys.e_of_one().expect("normalizable");
                st.notes.push(format!("E(1) = {mu}; E rescaled by {} and the dual bases x_i by {mu}", mu.inv().expect("nonzero")));
                st.hyp.normalized = Some(true);
                st.push("frobenius.normalized", Outcome::Pass);
                n
            }
            Err(_) => {
                st.hyp.normalized = Some(false);
                let reason = "normalized failed: E(1) is not an invertible scalar";
                st.push("frobenius.normalized", Outcome::skipped(reason));
                st.stop(reason);
                return Ok(None);
            }
        }
    };
    st.index = sys.lambda_inv.as_ref().map(ToString::to_string);
    let naka = nakayama(&sys, &sys.ext.centralizer());
    st.push("frobenius.nakayama", naka.map_or_else(|err| Outcome::Fail { witness: json!({"reason": err.to_string()}) }, |_| Outcome::Pass));
    Ok(Some(sys))
}

fn tower_stage(sys: &FrobeniusSystem, opts: &Options, st: &mut State) -> Option<TowerData> {
    let l1 = match basic_construction(sys) {
        Ok(l1) => l1,
        Err(err) => {
            st.push("tower.basic-construction", Outcome::Fail { witness: json!({"reason": err.to_string()}) });
            st.stop("basic construction failed");
            return None;
        }
    };
    st.push("tower.basic-construction", Outcome::Pass);
    st.dims.insert("M1", l1.algebra().dim());
    let endo = match endo_ring_iso(sys, &l1) {
        Ok(r) => Outcome::from_bool(r.is_isomorphism && r.inverse_agrees, || {
            json!({"end_dim": r.end_dim, "m1_dim": r.m1_dim, "is_isomorphism": r.is_isomorphism, "inverse_agrees": r.inverse_agrees})
        }),
        Err(err) => Outcome::Fail { witness: json!({"reason": err.to_string()}) },
    };
    st.push("tower.endo-iso", endo);
    if opts.levels < 2 {
        st.stop("level 2 not requested (--levels 1)");
        return None;
    }
    let t = match extend_tower(sys, l1) {
        Ok(t) => t,
        Err(err) => {
            st.push("tower.level-two", Outcome::Fail { witness: json!({"reason": err.to_string()}) });
            st.stop("level 2 of the tower failed");
            return None;
        }
    };
    st.push("tower.level-two", Outcome::Pass);
    st.dims.insert("M2", t.m2().dim());
    let braid = verify_braid_relations(&t);
    st.push("tower.braid", Outcome::from_bool(braid.holds(), || witness_of(&braid)));
    let pp = verify_pimsner_popa(&t);
    st.push("tower.pimsner-popa", Outcome::from_bool(pp.holds(), || witness_of(&pp)));
    let em = verify_emtwo(&t);
    st.push("tower.m2-triple-tensor", Outcome::from_bool(em.holds(), || witness_of(&em)));
    let rank = cyclic_generation_rank(&t);
    let d1 = t.m1().dim();
    st.push("tower.cyclic-generation", Outcome::from_bool(rank == d1, || json!({"rank": rank, "m1_dim": d1})));
    Some(t)
}

/// Depth-two stage: the data and, when gated checks may run, the Nakayama
/// automorphism on `B`.
fn depth_two_stage(t: &TowerData, st: &mut State) -> (DepthTwoData, Option<String>, Option<crate::frobenius::Nakayama>) {
    let cents = second_centralizers(t);
    st.dims.insert("A", cents.a.dim());
    st.dims.insert("B", cents.b.dim());
    st.dims.insert("C", cents.c.dim());
    st.push("depth2.centralizers", Outcome::from_bool(cents.contains_base_centralizer, || json!({"reason": "C_M(N) is not contained in A"})));
    let d2 = check_depth_two(t, cents);
    for (id, l, level) in [("depth2.level1", &d2.level1, 1), ("depth2.level2", &d2.level2, 2)] {
        let o = match &l.result {
            Ok(_) => Outcome::Pass,
            Err(err) => Outcome::skipped(format!("depth-two failed at level {level}: {err}")),
        };
        st.push(id, o);
    }
    st.hyp.depth_two = Some(d2.passes());
    let agree = d2.level1.brute_force_agrees && d2.level2.brute_force_agrees;
    st.push(
        "depth2.brute-force-agreement",
        Outcome::from_bool(agree, || json!({"level1": level_info(&d2.level1), "level2": level_info(&d2.level2)})),
    );
    let gate = gate_reason(&d2, t.base.ext.centralizer().dim());
    match &gate {
        Some(reason) => {
            st.push("depth2.c-structure", Outcome::skipped(reason.clone()));
            st.push("depth2.expectations", Outcome::skipped(reason.clone()));
        }
        None => {
            let c = verify_c_structure(t, &d2).expect("gate passed");
            st.push("depth2.c-structure", Outcome::from_bool(c.holds(), || witness_of(&c)));
            let e = conditional_expectations(t, &d2).expect("gate passed");
            st.push("depth2.expectations", Outcome::from_bool(e.report.holds(), || witness_of(&e.report)));
        }
    }
    let faithful = match verify_f_faithful(t, &d2.cents.c) {
        Ok(r) => Outcome::from_bool(r.faithful(), || witness_of(&r)),
        Err(reason) => Outcome::skipped(reason),
    };
    let faithful_pass = faithful.is_pass();
    st.push("depth2.f-faithful", faithful);
    let mut q_b = None;
    let naka = if faithful_pass {
        match nakayama_relations(t, &d2) {
            Ok(r) => {
                let o = Outcome::from_bool(r.holds(), || {
                    json!({
                        "q_restricts_to_q_a": r.q_restricts_to_q_a,
                        "q_restricts_to_q_b": r.q_restricts_to_q_b,
                        "diagram_commutes": r.diagram_commutes,
                        "q_fixes_e1": r.q_fixes_e1,
                        "q_fixes_e2": r.q_fixes_e2,
                    })
                });
                q_b = Some(r.q_b);
                o
            }
            Err(reason) => Outcome::Fail { witness: json!({"reason": reason}) },
        }
    } else {
        Outcome::skipped("F is not known to be faithful on C")
    };
    st.push("depth2.nakayama", naka);
    (d2, gate, q_b)
}

/// Hopf stage: the pairing and both Hopf structures.
fn hopf_stage(t: &TowerData, d2: &DepthTwoData, q_b: Option<&crate::frobenius::Nakayama>, st: &mut State) -> Option<(TowerPairing, HopfStructure, HopfStructure)> {
    let tp = match compute_pairing(t, d2) {
        Ok(tp) => tp,
        Err(reason) => {
            st.push("hopf.pairing", Outcome::Fail { witness: json!({"reason": reason}) });
            st.stop("the pairing ⟨A, B⟩ is unavailable");
            return None;
        }
    };
    st.push("hopf.pairing", Outcome::Pass);
    let hb = match tower_hopf(t, &tp) {
        Ok(hb) => hb,
        Err(reason) => {
            st.push("hopf.antipode", Outcome::Fail { witness: json!({"reason": reason}) });
            st.stop("the antipode of B is unavailable");
            return None;
        }
    };
    st.push("hopf.antipode", Outcome::Pass);
    let ha = dualize(&tp.data, &hb);
    st.push_entries("hopf.b.", verify_hopf_axioms(&hb).entries());
    st.push_entries("hopf.tower.", verify_tower_identities(t, &tp, &hb, &ha, q_b).entries());
    st.push_entries("hopf.a.", verify_hopf_axioms(&ha).entries());
    Some((tp, hb, ha))
}

fn galois_stage(t: &TowerData, d2: &DepthTwoData, tp: &TowerPairing, hb: &HopfStructure, ha: &HopfStructure, st: &mut State) {
    let b_act = action_b_on_m1(t, tp, hb);
    st.push_entries("galois.b-action.", verify_b_action(t, tp, &b_act).entries());
    st.push_entries("galois.theta.", theta_report(t, tp, &d2.cents, &b_act).entries());
    let a_act = match action_a_on_m(t, tp, ha) {
        Ok(a) => a,
        Err(witness) => {
            st.push("galois.a-action.lands-in-m", Outcome::Fail { witness });
            st.stop("the A-action on M is unavailable");
            return;
        }
    };
    st.push("galois.a-action.lands-in-m", Outcome::Pass);
    st.push_entries("galois.a-action.", verify_a_action(t, tp, &a_act).entries());
    st.push_entries("galois.cleft.", cleft_data(t, tp, ha, &b_act, &a_act).entries());
    st.push("galois.galois-map", galois_map_tower(t, tp, hb, &a_act).outcome());
}

fn extension_stages(spec: &ExtensionSpec, opts: &Options, st: &mut State) -> Result<(), InputError> {
    let Some(sys) = frobenius_stage(spec, st)? else { return Ok(()) };
    let Some(t) = tower_stage(&sys, opts, st) else { return Ok(()) };
    let (d2, gate, q_b) = depth_two_stage(&t, st);
    if let Some(reason) = gate {
        st.stop(reason);
        return Ok(());
    }
    let Some((tp, hb, ha)) = hopf_stage(&t, &d2, q_b.as_ref(), st) else { return Ok(()) };
    galois_stage(&t, &d2, &tp, &hb, &ha, st);
    Ok(())
}

fn is_extension_check(id: &str) -> bool {
    !id.starts_with("pairing.")
}

fn is_pairing_check(id: &str) -> bool {
    id.starts_with("pairing.")
}

fn assemble(spec_name: &str, kind: &'static str, field: String, digest: String, st: State, family: fn(&str) -> bool, opts: &Options) -> PipelineReport {
    let st = st.finish(family, opts);
    let verdict = verdict(&st.hyp, &st.checks);
    PipelineReport {
        input: spec_name.to_string(),
        kind,
        field,
        digest,
        dims: st.dims,
        index: st.index,
        hypotheses: st.hyp,
        notes: st.notes,
        checks: st.checks,
        verdict,
    }
}

/// Runs every stage on an extension, gating the irreducible depth-two stages.
pub fn run_extension(spec: &ExtensionSpec, opts: &Options) -> Result<PipelineReport, InputError> {
    let mut st = State::new(opts.timing);
    extension_stages(spec, opts, &mut st)?;
    let d = digest(&InputFile::Extension(spec.to_file()));
    Ok(assemble(&spec.name, "extension", spec.field().to_string(), d, st, is_extension_check, opts))
}

/// Hopf axioms and pairing identities for an abstract pairing.
pub fn run_pairing(spec: &PairingSpec, opts: &Options) -> Result<PipelineReport, InputError> {
    let mut st = State::new(opts.timing);
    st.dims.insert("A", spec.a.dim());
    st.dims.insert("B", spec.b.dim());
    let mode = spec.antipode.clone().map_or(AntipodeMode::Solve, AntipodeMode::Supplied);
    match bialgebra_from_abstract_pairing(spec.a.clone(), spec.b.clone(), spec.pairing.clone(), mode) {
        Ok((_, _, report)) => {
            st.push("pairing.nondegenerate", Outcome::Pass);
            st.push_entries("pairing.", report.entries());
        }
        Err(HopfError::PairingSingular) => {
            st.push("pairing.nondegenerate", Outcome::Fail { witness: json!({"rank": spec.pairing.rank()}) });
            st.stop("the pairing is degenerate");
        }
        Err(err) => return Err(InputError::Shape(err.to_string())),
    }
    let d = digest(&InputFile::Pairing(spec.to_file(None, None)));
    Ok(assemble(&spec.name, "pairing", spec.a.field().to_string(), d, st, is_pairing_check, opts))
}

/// Parses either input kind and runs the matching pipeline.
pub fn run_input(input: &InputFile, opts: &Options) -> Result<PipelineReport, InputError> {
    match input {
        InputFile::Extension(f) => run_extension(&ExtensionSpec::from_file(f)?, opts),
        InputFile::Pairing(f) => run_pairing(&PairingSpec::from_file(f)?, opts),
    }
}

/// Everything the Hopf dumps need.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub pairing: PairingData,
    pub b: HopfStructure,
    pub a: HopfStructure,
}

/// Runs the stages up to the Hopf reconstruction; the error names the first
/// hypothesis or stage that prevented it.
pub fn reconstruct(input: &InputFile) -> Result<Result<Reconstruction, String>, InputError> {
    let spec = match input {
        InputFile::Pairing(f) => {
            let spec = PairingSpec::from_file(f)?;
            let mode = spec.antipode.clone().map_or(AntipodeMode::Solve, AntipodeMode::Supplied);
            return Ok(match bialgebra_from_abstract_pairing(spec.a, spec.b, spec.pairing, mode) {
                Ok((data, hb, _)) => {
                    let ha = dualize(&data, &hb);
                    Ok(Reconstruction { pairing: data, b: hb, a: ha })
                }
                Err(err) => Err(err.to_string()),
            });
        }
        InputFile::Extension(f) => ExtensionSpec::from_file(f)?,
    };
    let t = match tower_for(&spec)? {
        Ok(t) => t,
        Err(reason) => return Ok(Err(reason)),
    };
    let d2 = check_depth_two(&t, second_centralizers(&t));
    if let Some(reason) = gate_reason(&d2, t.base.ext.centralizer().dim()) {
        return Ok(Err(reason));
    }
    let tp = match compute_pairing(&t, &d2) {
        Ok(tp) => tp,
        Err(reason) => return Ok(Err(reason)),
    };
    Ok(tower_hopf(&t, &tp).map(|hb| {
        let ha = dualize(&tp.data, &hb);
        Reconstruction { pairing: tp.data, b: hb, a: ha }
    }))
}

/// The two-level tower of the (normalized) Frobenius system of `spec`; the
/// error names the first stage that prevented it.
pub fn tower_for(spec: &ExtensionSpec) -> Result<Result<TowerData, String>, InputError> {
    let mut st = State::new(false);
    let Some(sys) = frobenius_stage(spec, &mut st)? else {
        return Ok(Err(st.stop.unwrap_or_default()));
    };
    Ok(tower_stage(&sys, &Options::default(), &mut st).ok_or_else(|| st.stop.unwrap_or_default()))
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct LevelSummary {
    pub found: bool,
    pub method: &'static str,
    pub brute_force_agrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    /// `z_i` and `w_i` (level 1) or `u_j` and `v_j` (level 2) in ambient coordinates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct DepthTwoSummary {
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_c: usize,
    pub base_irreducible: bool,
    pub depth_two: bool,
    pub level1: LevelSummary,
    pub level2: LevelSummary,
}

fn level_summary(l: &LevelVerdict) -> LevelSummary {
    let strings = |vs: &[crate::exact::Vector]| vs.iter().map(|v| crate::exact::vector::to_strings(v)).collect();
    let ok = l.result.as_ref().ok();
    LevelSummary {
        found: l.passes(),
        method: l.method,
        brute_force_agrees: l.brute_force_agrees,
        error_bound: l.error_bound,
        failure: l.result.as_ref().err().map(ToString::to_string),
        z: ok.map(|b| strings(&b.z)),
        w: ok.map(|b| strings(&b.w)),
    }
}

pub fn depth_two_summary(t: &TowerData) -> DepthTwoSummary {
    let d2 = check_depth_two(t, second_centralizers(t));
    DepthTwoSummary {
        dim_a: d2.cents.a.dim(),
        dim_b: d2.cents.b.dim(),
        dim_c: d2.cents.c.dim(),
        base_irreducible: d2.cents.base_irreducible,
        depth_two: d2.passes(),
        level1: level_summary(&d2.level1),
        level2: level_summary(&d2.level2),
    }
}
