//! Batch runner behind the `hecke` binary: configuration loading, the `verify`, `levels`, `k0`,
//! `wang` and `oracle` commands, and JSON/markdown reports.
//!
//! Report bodies are deterministic for a given configuration; wall-clock timings live in a
//! separate `timing` section that [`Report::body_json`] leaves out.

pub mod cache;
pub mod checks;
pub mod config;
pub mod examples;

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::crossed::{associativity_sweep, build_level, cp_mul, iso_check, CrossedProduct};
use crate::group::{TowerKind, TowerSpec};
use crate::hecke::{convolve, HeckeInstance};
use crate::ktheory::{certify_semisimple, colim_k0_with, unit_orbit_count, wang_assemble_with, Decomposer, NegativeK};
use crate::laurent::TwistModel;
pub use cache::LevelCache;
pub use checks::CheckResult;
use checks::*;
pub use config::{build_problem, parse_config, ConfigError, Overrides, Problem, RunConfig};
pub use examples::{example_config, ExampleParams, EXAMPLE_NAMES};

/// Exhaustive oracle sweeps refuse larger groups.
pub const ORACLE_MAX_GROUP: usize = 16;
/// Orbit oracles refuse larger finest levels.
pub const ORACLE_MAX_LEVEL: u64 = 27;
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("config error at {0}")]
    Config(#[from] ConfigError),
    #[error("bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error("unknown example {0:?}; known: {names}", names = EXAMPLE_NAMES.join(", "))]
    UnknownExample(String),
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Verify,
    Levels,
    K0,
    Wang,
    Oracle,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Levels => "levels",
            Command::K0 => "k0",
            Command::Wang => "wang",
            Command::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timing {
    pub total_ms: u128,
    pub sections_ms: BTreeMap<String, u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub schema: u32,
    pub command: Command,
    pub name: String,
    pub config: RunConfig,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub tables: Map<String, Value>,
    pub timing: Timing,
}

impl Report {
    fn new(command: Command, problem: &Problem) -> Self {
        Report {
            tool: "hecke-workbench".into(),
            version: crate::VERSION.into(),
            schema: REPORT_SCHEMA,
            command,
            name: problem.name.clone(),
            config: problem.config.clone(),
            passed: true,
            checks: Vec::new(),
            tables: Map::new(),
            timing: Timing::default(),
        }
    }

    fn finish(mut self, start: Instant) -> Self {
        self.passed = self.checks.iter().all(|c| c.passed);
        self.timing.total_ms = start.elapsed().as_millis();
        self
    }

    pub fn failed(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check == name)
    }

    /// The full document, timing included.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    /// Everything except timing; identical across runs of the same configuration.
    pub fn body_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("serializable");
        v.as_object_mut().expect("object").remove("timing");
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!(
            "# {} `{}`: {}\n\nTool {} {}, {} of {} checks passed.\n\n| check | scope | verdict | detail |\n|---|---|---|---|\n",
            self.command.name(),
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.tool,
            self.version,
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        );
        for c in &self.checks {
            let verdict = if c.passed { "pass".to_string() } else { format!("**FAIL**: {}", c.property) };
            out += &format!("| {} | {} | {} | {} |\n", c.check, c.scope, verdict, c.detail.replace('|', "\\|"));
        }
        for (k, v) in &self.tables {
            out += &format!("\n## {k}\n\n```json\n{}\n```\n", serde_json::to_string_pretty(v).expect("serializable"));
        }
        out
    }
}

/// Where a configuration comes from.
#[derive(Clone, Debug)]
pub enum Source {
    Path(String),
    Example(String, ExampleParams),
}

/// Loads and validates a configuration, returning it with the text used for cache keys.
pub fn load(source: &Source, overrides: &Overrides) -> Result<(Problem, String), RunError> {
    let text = match source {
        Source::Path(p) => std::fs::read_to_string(p).map_err(|e| RunError::Io { path: p.clone(), reason: e.to_string() })?,
        Source::Example(name, params) => example_config(name, *params).ok_or_else(|| RunError::UnknownExample(name.clone()))?,
    };
    let cfg = parse_config(&text)?;
    let problem = build_problem(&cfg, overrides)?;
    let key_text = serde_json::to_string(&problem.config).expect("serializable");
    Ok((problem, key_text))
}

pub struct Context {
    pub cache: LevelCache,
}

impl Context {
    pub fn new(cache_dir: Option<&Path>, key_text: &str) -> Self {
        Context { cache: LevelCache::new(cache_dir.map(Path::to_path_buf), key_text) }
    }

    pub fn uncached() -> Self {
        Context { cache: LevelCache::disabled() }
    }

    fn decomposer(&self) -> impl Fn(&Arc<CrossedProduct>) -> Result<crate::ktheory::SemisimpleDecomposition, crate::ktheory::KTheoryError> + Sync + '_ {
        move |cp| self.cache.decompose(cp)
    }
}

pub fn run(command: Command, problem: &Problem, ctx: &Context) -> Result<Report, RunError> {
    match command {
        Command::Verify => Ok(cmd_verify(problem, ctx)),
        Command::Levels => Ok(cmd_levels(problem, ctx)),
        Command::K0 => Ok(cmd_k0(problem, ctx)),
        Command::Wang => cmd_wang(problem, ctx),
        Command::Oracle => cmd_oracle(problem, ctx),
    }
}

type Task<'a> = Box<dyn Fn() -> Vec<CheckResult> + Send + Sync + 'a>;

/// Runs independent tasks concurrently; results and timings are merged in task order.
fn run_tasks(report: &mut Report, tasks: Vec<(String, Task)>) {
    let results: Vec<(String, Vec<CheckResult>, u128)> = tasks
        .par_iter()
        .map(|(name, t)| {
            let s = Instant::now();
            let r = t();
            (name.clone(), r, s.elapsed().as_millis())
        })
        .collect();
    for (name, r, ms) in results {
        report.checks.extend(r);
        report.timing.sections_ms.insert(name, ms);
    }
}

/// Character validation and the instance; `None` after recording the failure.
fn instance_or_fail(problem: &Problem, report: &mut Report) -> Option<Arc<HeckeInstance>> {
    let validation = problem.validation();
    report.checks.push(character_check(&validation));
    if !validation.is_valid() {
        return None;
    }
    match problem.instance() {
        Ok(i) => Some(i),
        Err(e) => {
            report.checks.push(CheckResult::fail("instance", "instance", "the instance data is admissible", e.to_string(), json!({ "error": e.to_string() })));
            None
        }
    }
}

fn build_levels(inst: &Arc<HeckeInstance>, problem: &Problem, report: &mut Report) -> Option<Vec<Arc<CrossedProduct>>> {
    let mut out = Vec::new();
    for (i, k) in problem.levels.iter().enumerate() {
        match build_level(inst, k) {
            Ok(cp) => out.push(cp),
            Err(e) => {
                let scope = level_scope(i, k);
                report.checks.push(CheckResult::fail("level", &scope, "the level is admissible", e.to_string(), json!({ "level": k.members() })));
                return None;
            }
        }
    }
    Some(out)
}

/// Consecutive configured levels, ordered coarse (larger `K`) to fine.
fn nested_pairs(problem: &Problem) -> Vec<(usize, usize)> {
    let l = &problem.levels;
    (1..l.len())
        .filter_map(|j| {
            let i = j - 1;
            if l[j].is_subset_of(&l[i]) && l[j] != l[i] {
                Some((i, j))
            } else if l[i].is_subset_of(&l[j]) && l[i] != l[j] {
                Some((j, i))
            } else {
                None
            }
        })
        .collect()
}

fn level_rows(problem: &Problem, cps: &[Arc<CrossedProduct>]) -> Value {
    json!(cps
        .iter()
        .enumerate()
        .map(|(i, cp)| {
            let d = cp.d();
            let nontrivial_w = (0..d.order()).flat_map(|a| (0..d.order()).map(move |b| (a, b))).filter(|&(a, b)| !cp.w(a, b).is_one()).count();
            json!({
                "index": i,
                "level": problem.levels[i].members(),
                "d_order": cp.order(),
                "linear": cp.is_linear(),
                "w_nontrivial_entries": nontrivial_w,
                "c_exponents": cp.c_exponents(),
            })
        })
        .collect::<Vec<_>>())
}

/// The vanishing of negative K-theory, attached when every level algebra is certified semisimple.
fn negative_k_table(cps: &[Arc<CrossedProduct>]) -> Option<Value> {
    cps.iter().all(|cp| certify_semisimple(cp).is_ok()).then(|| json!(crate::ktheory::wang::negative_k_record()))
}

pub fn cmd_verify(problem: &Problem, ctx: &Context) -> Report {
    let _ = ctx;
    let start = Instant::now();
    let mut report = Report::new(Command::Verify, problem);
    let Some(inst) = instance_or_fail(problem, &mut report) else {
        return report.finish(start);
    };
    let Some(cps) = build_levels(&inst, problem, &mut report) else {
        return report.finish(start);
    };
    report.tables.insert("levels".into(), level_rows(problem, &cps));
    let mut tasks: Vec<(String, Task)> = Vec::new();
    for (i, cp) in cps.iter().enumerate() {
        let scope = level_scope(i, &problem.levels[i]);
        let inst = inst.clone();
        if problem.runs("ring") {
            let (cp, scope, inst) = (cp.clone(), scope.clone(), inst.clone());
            tasks.push((format!("ring/{i}"), Box::new(move || ring_checks(&inst, &cp, &scope))));
        }
        if problem.runs("iso") {
            let (cp, scope) = (cp.clone(), scope.clone());
            tasks.push((format!("iso/{i}"), Box::new(move || vec![iso_result(&cp, &scope)])));
        }
        if problem.runs("maschke") {
            let (cp, scope) = (cp.clone(), scope.clone());
            tasks.push((format!("maschke/{i}"), Box::new(move || vec![maschke_result(&cp, &scope)])));
        }
        if problem.runs("semisimple") {
            let (cp, scope) = (cp.clone(), scope.clone());
            tasks.push((format!("semisimple/{i}"), Box::new(move || vec![semisimple_result(&cp, &scope)])));
        }
    }
    if problem.runs("embed") {
        for (c, f) in nested_pairs(problem) {
            let (coarse, fine) = (cps[c].clone(), cps[f].clone());
            let scope = format!("level {c} into level {f}");
            tasks.push((format!("embed/{c}-{f}"), Box::new(move || vec![embed_result(&coarse, &fine, &scope)])));
        }
    }
    if problem.runs("xi") {
        if let Some(t) = problem.tower.as_ref().filter(|t| t.twist().is_some()) {
            tasks.push(("xi".into(), Box::new(move || vec![xi_task(t)])));
        }
    }
    run_tasks(&mut report, tasks);
    report.finish(start)
}

/// Ξ on the first proper level of the tower (level 0 for a depth-0 tower), `|n| ≤ 2`.
fn xi_task(t: &TowerSpec) -> CheckResult {
    let k = t.depth().min(1);
    let scope = format!("tower level {k}");
    let fail = |e: String| CheckResult::fail("xi", &scope, "Ξ is multiplicative", e.clone(), json!({ "error": e }));
    let model = match TwistModel::from_tower(t) {
        Ok(m) => m,
        Err(e) => return fail(e.to_string()),
    };
    match build_level(model.instance(), t.level(k)) {
        Ok(cp) => xi_result(&model, &cp, 2, &scope),
        Err(e) => fail(e.to_string()),
    }
}

pub fn cmd_levels(problem: &Problem, ctx: &Context) -> Report {
    let start = Instant::now();
    let mut report = Report::new(Command::Levels, problem);
    let Some(inst) = instance_or_fail(problem, &mut report) else {
        return report.finish(start);
    };
    let Some(cps) = build_levels(&inst, problem, &mut report) else {
        return report.finish(start);
    };
    let decompose = ctx.decomposer();
    let decs: Vec<_> = cps
        .par_iter()
        .enumerate()
        .map(|(i, cp)| {
            let s = Instant::now();
            let r = blocks_result(cp, &decompose, &level_scope(i, &problem.levels[i]));
            (r, s.elapsed().as_millis())
        })
        .collect();
    let mut rows = level_rows(problem, &cps);
    for (i, ((check, dec), ms)) in decs.iter().enumerate() {
        report.checks.push(check.clone());
        report.timing.sections_ms.insert(format!("blocks/{i}"), *ms);
        let row = rows[i].as_object_mut().expect("object");
        match dec {
            Some(d) => {
                row.insert("blocks".into(), json!(d.rank()));
                row.insert("block_dims".into(), json!(d.dims));
                row.insert("block_sizes".into(), json!(d.sizes));
                row.insert("prime".into(), json!(d.prime));
            }
            None => {
                row.insert("blocks".into(), Value::Null);
            }
        }
    }
    for (c, f) in nested_pairs(problem) {
        report.checks.push(embed_result(&cps[c], &cps[f], &format!("level {c} into level {f}")));
    }
    report.tables.insert("levels".into(), rows);
    if let Some(n) = negative_k_table(&cps) {
        report.tables.insert("negative_k".into(), n);
    }
    report.finish(start)
}

pub fn cmd_k0(problem: &Problem, ctx: &Context) -> Report {
    let start = Instant::now();
    let mut report = Report::new(Command::K0, problem);
    const P: &str = "every induced map on K_0 along the tower is split injective";
    let Some(inst) = instance_or_fail(problem, &mut report) else {
        return report.finish(start);
    };
    let decompose = ctx.decomposer();
    if let Some(t) = &problem.tower {
        match colim_k0_with(t, &decompose) {
            Ok(c) => {
                report.checks.push(CheckResult::pass("k0.split_injective", "tower", P, format!("{} transitions", c.transitions.len())));
                report.tables.insert("k0".into(), json!(c));
                report.tables.insert("negative_k".into(), json!(crate::ktheory::wang::negative_k_record()));
            }
            Err(e) => report.checks.push(CheckResult::fail("k0.split_injective", "tower", P, e.to_string(), json!({ "error": e.to_string() }))),
        }
        return report.finish(start);
    }
    let Some(cps) = build_levels(&inst, problem, &mut report) else {
        return report.finish(start);
    };
    let mut rows = Vec::new();
    for (i, cp) in cps.iter().enumerate() {
        let scope = level_scope(i, &problem.levels[i]);
        let (check, dec) = blocks_result(cp, &decompose, &scope);
        report.checks.push(check);
        if let Some(d) = dec {
            let unit_class = d.k0_class_of(&cp.one()).ok();
            rows.push(json!({ "index": i, "rank": d.rank(), "block_dims": d.dims, "class_of_unit": unit_class }));
        }
    }
    report.tables.insert("k0".into(), json!(rows));
    if let Some(n) = negative_k_table(&cps) {
        report.tables.insert("negative_k".into(), n);
    }
    report.finish(start)
}

fn twisted_tower(problem: &Problem) -> Result<&TowerSpec, RunError> {
    problem
        .tower
        .as_ref()
        .filter(|t| t.twist().is_some())
        .ok_or_else(|| RunError::Config(ConfigError::at("tower", "this command needs a tower with a twist")))
}

/// Finest level `p^depth` of a cyclic tower.
fn cyclic_modulus(t: &TowerSpec, depth: usize) -> Option<u64> {
    match t.kind() {
        TowerKind::Cyclic { p } => p.checked_pow(depth as u32),
        TowerKind::Chain => None,
    }
}

pub fn cmd_wang(problem: &Problem, ctx: &Context) -> Result<Report, RunError> {
    let start = Instant::now();
    let mut report = Report::new(Command::Wang, problem);
    let t = twisted_tower(problem)?;
    if instance_or_fail(problem, &mut report).is_none() {
        return Ok(report.finish(start));
    }
    let decompose = ctx.decomposer();
    let results: Vec<_> = (1..=t.depth())
        .into_par_iter()
        .map(|d| {
            let s = Instant::now();
            (d, wang_assemble_with(t, d, &decompose), s.elapsed().as_millis())
        })
        .collect();
    let mut rows = Vec::new();
    let mut negative: Option<NegativeK> = None;
    for (d, r, ms) in results {
        report.timing.sections_ms.insert(format!("depth/{d}"), ms);
        let scope = format!("depth {d}");
        let w = match r {
            Ok(w) => w,
            Err(e) => {
                report.checks.push(CheckResult::fail("wang", &scope, "the Wang sequence computes K_0", e.to_string(), json!({ "error": e.to_string() })));
                continue;
            }
        };
        report.checks.push(CheckResult::verdict(
            "wang.rank_identity",
            &scope,
            "rank coker + rank image = rank K_0 at the finest level",
            format!("{} + {} = {}", w.k0_rank, w.snf.invariant_factors.len(), w.total_rank),
            (!w.rank_identity_holds()).then(|| json!({ "snf": w.snf })),
        ));
        report.checks.push(CheckResult::verdict(
            "wang.torsion_free",
            &scope,
            "K_0 of the covirtually cyclic group is free",
            format!("torsion {:?}", w.torsion),
            (!w.torsion.is_empty()).then(|| json!({ "torsion": w.torsion })),
        ));
        if let (Some(m), Some(u)) = (cyclic_modulus(t, d), t.unit()) {
            let oracle = unit_orbit_count(m, u);
            report.checks.push(CheckResult::verdict(
                "wang.orbit_oracle",
                &scope,
                "rank K_0 equals the number of orbits of multiplication by u on the dual",
                format!("rank {} vs {oracle} orbits on Z/{m}", w.k0_rank),
                (w.k0_rank != oracle).then(|| json!({ "rank": w.k0_rank, "orbits": oracle })),
            ));
        }
        if let Some(s) = &w.stabilization {
            report.checks.push(CheckResult::verdict(
                "wang.stabilization",
                &scope,
                "K_0(φ) commutes with the map induced by the previous level",
                format!("{} previous orbits, {} new", s.previous_orbits, s.new_orbits),
                (!s.equivariant).then(|| json!(s)),
            ));
        }
        negative.get_or_insert_with(|| w.negative_k.clone());
        rows.push(json!(w));
    }
    report.tables.insert("wang".into(), json!(rows));
    if let Some(n) = negative {
        report.tables.insert("negative_k".into(), json!(n));
    }
    Ok(report.finish(start))
}

pub fn cmd_oracle(problem: &Problem, ctx: &Context) -> Result<Report, RunError> {
    let start = Instant::now();
    let mut report = Report::new(Command::Oracle, problem);
    if problem.group.order() > ORACLE_MAX_GROUP {
        return Err(RunError::BoundsExceeded(format!("|G| = {} > {ORACLE_MAX_GROUP}", problem.group.order())));
    }
    if let Some(t) = &problem.tower {
        if let Some(m) = cyclic_modulus(t, t.depth()).filter(|&m| m > ORACLE_MAX_LEVEL) {
            return Err(RunError::BoundsExceeded(format!("finest level {m} > {ORACLE_MAX_LEVEL}")));
        }
    }
    let Some(inst) = instance_or_fail(problem, &mut report) else {
        return Ok(report.finish(start));
    };
    let Some(cps) = build_levels(&inst, problem, &mut report) else {
        return Ok(report.finish(start));
    };
    let mut rows = Vec::new();
    for (i, cp) in cps.iter().enumerate() {
        let scope = level_scope(i, &problem.levels[i]);
        let iso = iso_check(cp);
        let ring = ring_checks(&inst, cp, &scope);
        let sweep = associativity_sweep(cp);
        let conv_assoc = ring[0].passed;
        report.checks.push(CheckResult::verdict(
            "oracle.structure_constants",
            &scope,
            "direct convolution agrees with the crossed-product structure constants",
            format!("{} pairs, {} mismatches", iso.pairs_checked, iso.mismatches.len()),
            iso.mismatches.first().map(|m| json!(m)),
        ));
        report.checks.push(CheckResult::verdict(
            "oracle.associativity",
            &scope,
            "triple sweeps agree: convolution and structure constants are both associative",
            format!("convolution {}, structure constants {}", conv_assoc, sweep.is_none()),
            (!conv_assoc || sweep.is_some()).then(|| json!({ "convolution": ring[0].witness, "structure_constants": sweep })),
        ));
        let zero_h = inst.zero(cp.level()).expect("admissible");
        let b = &cp.basis_functions()[0];
        let zero_ok = convolve(&zero_h, b).is_ok_and(|x| x.is_zero())
            && cp_mul(&cp.zero(), &cp.basis_element(0)).is_ok_and(|x| x.is_zero());
        report.checks.push(CheckResult::verdict(
            "oracle.zero",
            &scope,
            "zero times anything is zero on both sides",
            "0 * b_e".into(),
            (!zero_ok).then(|| json!({ "zero": "nonzero product" })),
        ));
        rows.push(json!({ "index": i, "pairs": iso.pairs_checked, "mismatches": iso.mismatches.len(), "triples": ring[0].detail }));
    }
    report.tables.insert("structure_constants".into(), json!(rows));

    if let Some(t) = problem.tower.as_ref().filter(|t| t.twist().is_some()) {
        let decompose = ctx.decomposer();
        let mut orbit_rows = Vec::new();
        for d in 1..=t.depth() {
            let scope = format!("depth {d}");
            let (Some(m), Some(u)) = (cyclic_modulus(t, d), t.unit()) else { break };
            let oracle = unit_orbit_count(m, u);
            let rank = wang_assemble_with(t, d, &decompose as &Decomposer).map(|w| w.k0_rank);
            let failure = match &rank {
                Ok(r) if *r == oracle => None,
                Ok(r) => Some(json!({ "snf_coker_rank": r, "orbits": oracle })),
                Err(e) => Some(json!({ "error": e.to_string() })),
            };
            report.checks.push(CheckResult::verdict(
                "oracle.orbits",
                &scope,
                "the SNF cokernel rank equals the brute-force orbit count",
                format!("modulus {m}, unit {u}"),
                failure,
            ));
            orbit_rows.push(json!({ "depth": d, "modulus": m, "unit": u, "orbits": oracle, "snf_coker_rank": rank.ok() }));
        }
        report.tables.insert("orbits".into(), json!(orbit_rows));
    }
    Ok(report.finish(start))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example(name: &str) -> Problem {
        load(&Source::Example(name.into(), ExampleParams::default()), &Overrides::default()).unwrap().0
    }

    #[test]
    fn omega_sign_verifies() {
        let r = cmd_verify(&example("omega-sign"), &Context::uncached());
        assert!(r.passed, "{:?}", r.failed());
        assert_eq!(r.body_json(), cmd_verify(&example("omega-sign"), &Context::uncached()).body_json());
    }

    #[test]
    fn invalid_omega_is_rejected() {
        let r = cmd_verify(&example("s3-invalid-omega"), &Context::uncached());
        assert!(!r.passed);
        let w = r.check("character").unwrap().witness.as_ref().unwrap();
        assert_eq!(w["first"]["kind"], "conjugation_invariance");
        assert!(r.to_markdown().contains("**FAIL**"));
    }

    #[test]
    fn omega_sign_over_q_is_not_split() {
        let r = cmd_levels(&example("omega-sign"), &Context::uncached());
        let w = r.check("blocks").unwrap().witness.as_ref().unwrap();
        assert_eq!(w["suggested_conductor"], 4);
    }

    #[test]
    fn oracle_bounds() {
        let (p, _) = load(&Source::Example("zp".into(), ExampleParams { prime: 3, unit: 2, depth: 3 }), &Overrides::default()).unwrap();
        assert!(matches!(cmd_oracle(&p, &Context::uncached()), Err(RunError::BoundsExceeded(_))));
        assert!(matches!(cmd_wang(&example("zp"), &Context::uncached()), Err(RunError::Config(_))));
    }
}
