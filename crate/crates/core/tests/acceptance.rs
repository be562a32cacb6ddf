//! Acceptance suite. Runs without the libtest harness so it can print one verdict line per
//! criterion in order; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hecke_workbench::crossed::{build_level, cp_mul, CrossedProduct};
use hecke_workbench::exact::CyclotomicField;
use hecke_workbench::group::{attach_unit_twist, cyclic_tower, CharacterViolation, FiniteGroup, GroupHom, Subgroup, TowerSpec};
use hecke_workbench::hecke::HeckeInstance;
use hecke_workbench::ktheory::{block_decompose, colim_k0, wang_assemble};
use hecke_workbench::laurent::TwistModel;
use hecke_workbench::report::checks::{embed_result, iso_result, level_scope, maschke_result, pushforward_result, ring_checks, xi_result};
use hecke_workbench::report::{load, run, CheckResult, Command, Context, ExampleParams, Overrides, Problem, Source};
use serde_json::Value;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

const VALID: [&str; 5] = ["plain-z4", "omega-sign", "galois-twist", "zp", "zp-twist"];

fn example(name: &str, params: ExampleParams) -> Problem {
    load(&Source::Example(name.into(), params), &Overrides::default()).expect("built-in example").0
}

fn corpus() -> Vec<Problem> {
    let mut out: Vec<Problem> = VALID.iter().map(|n| example(n, ExampleParams::default())).collect();
    out.push(example("zp", ExampleParams { depth: 3, ..Default::default() }));
    out
}

fn level_algebras(p: &Problem) -> Vec<Arc<CrossedProduct>> {
    let inst = p.instance().expect("valid instance");
    p.levels.iter().map(|k| build_level(&inst, k).expect("admissible level")).collect()
}

fn all_pass(checks: &[CheckResult]) -> Result<usize, String> {
    match checks.iter().find(|c| !c.passed) {
        Some(c) => Err(format!("{} [{}] {}: {}", c.check, c.scope, c.detail, c.witness.as_ref().map(Value::to_string).unwrap_or_default())),
        None => Ok(checks.len()),
    }
}

fn within(t: Instant, limit: Duration, ok: String) -> Verdict {
    let took = t.elapsed();
    if took < limit {
        Ok(format!("{ok}; {:.2} s", took.as_secs_f64()))
    } else {
        Err(format!("{ok}, but took {:.2} s, limit {} s", took.as_secs_f64(), limit.as_secs()))
    }
}

fn ring_axioms() -> Verdict {
    let t = Instant::now();
    let mut checks = Vec::new();
    for name in ["plain-z4", "omega-sign", "galois-twist"] {
        let p = example(name, ExampleParams::default());
        if p.group.order() > 16 {
            return Err(format!("{name} has |G| = {}", p.group.order()));
        }
        let inst = p.instance().expect("valid instance");
        for (i, cp) in level_algebras(&p).iter().enumerate() {
            let cs = ring_checks(&inst, cp, &format!("{name} {}", level_scope(i, &p.levels[i])));
            if let Some(c) = cs.iter().find(|c| c.check == "ring.associativity" && !c.detail.contains("exhaustive")) {
                return Err(format!("associativity not exhaustive: {}", c.detail));
            }
            checks.extend(cs);
        }
    }
    within(t, Duration::from_secs(60), format!("{} checks", all_pass(&checks)?))
}

fn crossed_product_identification() -> Verdict {
    let mut checks = Vec::new();
    for p in corpus() {
        for (i, cp) in level_algebras(&p).iter().enumerate() {
            checks.push(iso_result(cp, &format!("{} {}", p.name, level_scope(i, &p.levels[i]))));
        }
    }
    // the signed cocycle and the Galois action have to be present, not just consistent
    let sign = level_algebras(&example("omega-sign", ExampleParams::default()));
    let signed = sign.iter().any(|cp| (0..cp.order()).any(|a| (0..cp.order()).any(|b| *cp.w(a, b) == -cp.field().one())));
    let twist = level_algebras(&example("galois-twist", ExampleParams::default()));
    let galois = twist.iter().any(|cp| !cp.is_linear());
    if !signed || !galois {
        return Err(format!("signed cocycle present {signed}, Galois action present {galois}"));
    }
    Ok(format!("{} levels", all_pass(&checks)?))
}

fn xi_isomorphism() -> Verdict {
    let t = Instant::now();
    let p = example("zp-twist", ExampleParams { prime: 3, unit: 2, depth: 1 });
    let tower = p.tower.as_ref().ok_or("zp-twist has no tower")?;
    let model = TwistModel::from_tower(tower).map_err(|e| e.to_string())?;
    let cp = build_level(model.instance(), tower.level(1)).map_err(|e| e.to_string())?;
    let c = xi_result(&model, &cp, 2, "level 1");
    if !c.passed {
        return Err(format!("{}: {:?}", c.detail, c.witness));
    }
    within(t, Duration::from_secs(10), c.detail)
}

fn zp_tower(depth: usize) -> TowerSpec {
    let field = CyclotomicField::new(3u64.pow(depth as u32)).expect("cyclotomic");
    cyclic_tower(3, depth, &field).expect("tower")
}

fn filtration_and_splitting() -> Verdict {
    let tower = zp_tower(3);
    let inst = HeckeInstance::new(tower.omega().clone(), tower.rho().clone()).map_err(|e| e.to_string())?;
    let cps: Vec<_> = (0..=3).map(|k| build_level(&inst, tower.level(k)).expect("admissible")).collect();
    let embeds: Vec<_> = (0..3).map(|k| embed_result(&cps[k], &cps[k + 1], &format!("{k} -> {}", k + 1))).collect();
    all_pass(&embeds)?;
    for cp in &cps {
        let dec = block_decompose(cp).map_err(|e| e.to_string())?;
        let z = &dec.idempotents;
        let mut sum = cp.zero();
        for (i, zi) in z.iter().enumerate() {
            sum = sum.add(zi);
            for (j, zj) in z.iter().enumerate() {
                let prod = cp_mul(zi, zj).map_err(|e| e.to_string())?;
                if prod != if i == j { zi.clone() } else { cp.zero() } {
                    return Err(format!("|D| {}: z_{i} z_{j} is wrong", cp.order()));
                }
            }
            for d in 0..cp.order() {
                let b = cp.basis_element(d);
                if cp_mul(zi, &b).map_err(|e| e.to_string())? != cp_mul(&b, zi).map_err(|e| e.to_string())? {
                    return Err(format!("|D| {}: z_{i} does not commute with b_{d}", cp.order()));
                }
            }
        }
        if sum != cp.one() {
            return Err(format!("|D| {}: idempotents do not sum to 1", cp.order()));
        }
    }
    let colim = colim_k0(&tower).map_err(|e| e.to_string())?;
    for tr in &colim.transitions {
        let (m, l) = (&tr.matrix, &tr.left_inverse);
        for i in 0..l.len() {
            for j in 0..m[0].len() {
                let entry: i64 = (0..m.len()).map(|k| l[i][k] * m[k][j]).sum();
                if entry != i64::from(i == j) {
                    return Err(format!("left inverse fails for {} -> {}", tr.from, tr.to));
                }
            }
        }
    }
    let ranks: Vec<usize> = colim.levels.iter().map(|l| l.rank).collect();
    Ok(format!("3 embeddings, block counts {ranks:?}, 3 split injections"))
}

fn maschke() -> Verdict {
    let mut checks = Vec::new();
    for p in corpus() {
        for (i, cp) in level_algebras(&p).iter().enumerate() {
            checks.push(maschke_result(cp, &format!("{} {}", p.name, level_scope(i, &p.levels[i]))));
        }
    }
    Ok(format!("{} levels", all_pass(&checks)?))
}

/// Orbits of `a ↦ u a` on `ℤ/m`, by walking each orbit.
fn orbit_count(m: u64, u: i64) -> usize {
    let step = u.rem_euclid(m as i64) as u64;
    let mut seen = vec![false; m as usize];
    let mut orbits = 0;
    for a in 0..m {
        if seen[a as usize] {
            continue;
        }
        orbits += 1;
        let mut x = a;
        while !seen[x as usize] {
            seen[x as usize] = true;
            x = x * step % m;
        }
    }
    orbits
}

fn wang_endgame() -> Verdict {
    let t = Instant::now();
    let tower = attach_unit_twist(&zp_tower(3), 2).map_err(|e| e.to_string())?;
    let mut ranks = Vec::new();
    for depth in 1..=3 {
        let w = wang_assemble(&tower, depth).map_err(|e| e.to_string())?;
        let oracle = orbit_count(3u64.pow(depth as u32), 2);
        if w.k0_rank != oracle || !w.torsion.is_empty() {
            return Err(format!("depth {depth}: rank {} vs orbit count {oracle}, torsion {:?}", w.k0_rank, w.torsion));
        }
        ranks.push(w.k0_rank);
    }
    if ranks != [2, 3, 4] {
        return Err(format!("ranks {ranks:?}"));
    }
    within(t, Duration::from_secs(300), format!("ranks {ranks:?}, torsion-free, equal to orbit counts"))
}

fn negative_k() -> Verdict {
    let ctx = Context::uncached();
    let mut runs = Vec::new();
    for name in VALID {
        runs.push((name, Command::Levels, example(name, ExampleParams::default())));
    }
    runs.push(("zp-twist", Command::Wang, example("zp-twist", ExampleParams::default())));
    for (name, cmd, p) in &runs {
        let r = run(*cmd, p, &ctx).map_err(|e| e.to_string())?;
        let t = r.tables.get("negative_k").ok_or(format!("{name}: no negative_k table"))?;
        let degrees: Vec<i64> = t["degrees"].as_array().into_iter().flatten().filter_map(Value::as_i64).collect();
        if !degrees.iter().all(|&d| d <= -1) || !degrees.contains(&-1) || t["value"] != "0" || t["reason"].as_str().is_none_or(str::is_empty) {
            return Err(format!("{name}: {t}"));
        }
    }
    Ok(format!("{} reports", runs.len()))
}

fn functoriality() -> Verdict {
    let q = CyclotomicField::rationals();
    let (z2, z4) = (FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
    let phi = GroupHom::new(&z2, &z4, vec![0, 2]).map_err(|e| e.to_string())?;
    let c = pushforward_result(&phi, &HeckeInstance::plain(&z2, &q), &HeckeInstance::plain(&z4, &q), &[Subgroup::trivial(&z2), Subgroup::whole(&z2)]);
    if c.passed {
        Ok(c.detail)
    } else {
        Err(format!("{}: {:?}", c.detail, c.witness))
    }
}

fn invalid_omega_rejected() -> Verdict {
    let p = example("s3-invalid-omega", ExampleParams::default());
    let report = p.validation();
    if report.is_valid() {
        return Err("accepted".into());
    }
    let (g, n) = report
        .violations
        .iter()
        .find_map(|v| match *v {
            CharacterViolation::ConjugationInvariance { g, n } => Some((g, n)),
            _ => None,
        })
        .ok_or(format!("no conjugation witness among {:?}", report.violations))?;
    let grp = &p.group;
    let conj = grp.mul(grp.mul(g, n), grp.inv(g));
    if p.omega.value(conj) == p.omega.value(n) {
        return Err(format!("witness ({g}, {n}) does not violate invariance"));
    }
    Ok(format!("witness g = {g}, n = {n}: ω(gng⁻¹) = {} but ω(n) = {}", p.omega.value(conj), p.omega.value(n)))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Hecke ring axioms", ring_axioms),
        ("crossed-product identification", crossed_product_identification),
        ("Ξ isomorphism", xi_isomorphism),
        ("filtration and splitting", filtration_and_splitting),
        ("Maschke splitting", maschke),
        ("Wang K_0 ranks", wang_endgame),
        ("negative K report", negative_k),
        ("pushforward functoriality", functoriality),
        ("invalid ω rejected", invalid_omega_rejected),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} PASS: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL: {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
