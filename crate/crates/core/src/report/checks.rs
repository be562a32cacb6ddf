//! Individual verification checks. Each returns a [`CheckResult`] naming the law it tests and,
//! on failure, the first counterexample found.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::crossed::{build_level, embed_level, iso_check_with_permuted_section, maschke_section, CrossedProduct};
use crate::exact::FieldElement;
use crate::group::{quotient, GroupHom, Subgroup, ValidationReport};
use crate::hecke::{convolve, convolve_with, pushforward, unit_1k, HeckeElement, HeckeInstance};
use crate::ktheory::{certify_semisimple, Decomposer, KTheoryError, SemisimpleDecomposition};
use crate::laurent::{direct_convolve, laurent_mul, xi, xi_inv, LevelAutomorphism, TwistModel, TwistedLaurentElement};

/// Above this many triples the associativity sweep is sampled.
pub const EXHAUSTIVE_TRIPLES: usize = 4096;
const SAMPLED_TRIPLES: usize = 512;
const SAMPLE_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckResult {
    pub check: String,
    pub scope: String,
    /// The law this check tests.
    pub property: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckResult {
    pub fn pass(check: &str, scope: &str, property: &str, detail: impl Into<String>) -> Self {
        CheckResult { check: check.into(), scope: scope.into(), property: property.into(), passed: true, detail: detail.into(), witness: None }
    }

    pub fn fail(check: &str, scope: &str, property: &str, detail: impl Into<String>, witness: Value) -> Self {
        CheckResult {
            check: check.into(),
            scope: scope.into(),
            property: property.into(),
            passed: false,
            detail: detail.into(),
            witness: Some(witness),
        }
    }

    pub fn verdict(check: &str, scope: &str, property: &str, detail: String, failure: Option<Value>) -> Self {
        match failure {
            None => Self::pass(check, scope, property, detail),
            Some(w) => Self::fail(check, scope, property, detail, w),
        }
    }
}

pub fn level_scope(index: usize, level: &Subgroup) -> String {
    format!("level {index} (|K| = {})", level.order())
}

pub fn character_check(report: &ValidationReport) -> CheckResult {
    const P: &str = "ω is a conjugation-invariant, ρ-fixed homomorphism to roots of unity, with ρ trivial on N";
    match report.first() {
        None => CheckResult::pass("character", "instance", P, "all compatibility conditions hold"),
        Some(v) => CheckResult::fail(
            "character",
            "instance",
            P,
            format!("{} violation(s)", report.violations.len()),
            json!({ "first": v, "all": report.violations }),
        ),
    }
}

/// Basis functions of the level, times `ζ^j` when `ρ` is nontrivial.
fn spanning_set(cp: &CrossedProduct) -> Vec<HeckeElement> {
    let f = cp.field();
    let scalars: Vec<FieldElement> =
        if cp.instance().rho().is_trivial() { vec![f.one()] } else { (0..f.degree() as i64).map(|j| f.zeta_pow(j)).collect() };
    cp.basis_functions().iter().flat_map(|b| scalars.iter().map(move |r| b.scalar_act(r).expect("same field"))).collect()
}

fn index_triples(n: usize) -> (Vec<(usize, usize, usize)>, bool) {
    if n * n * n <= EXHAUSTIVE_TRIPLES {
        let all = (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))).collect();
        return (all, true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    ((0..SAMPLED_TRIPLES).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))).collect(), false)
}

fn values_json(s: &HeckeElement) -> Value {
    json!(s.values().iter().map(|v| v.to_string()).collect::<Vec<_>>())
}

/// Associativity on basis triples, the two-sided unit `1_K`, and independence of the product
/// from the admissible level and transversal used to compute it.
pub fn ring_checks(inst: &Arc<HeckeInstance>, cp: &Arc<CrossedProduct>, scope: &str) -> Vec<CheckResult> {
    let s = spanning_set(cp);
    let n = s.len();
    let (triples, exhaustive) = index_triples(n);
    let prods: Vec<Vec<HeckeElement>> = (0..n).map(|i| (0..n).map(|j| convolve(&s[i], &s[j]).expect("same instance")).collect()).collect();

    let mut failure = None;
    for &(i, j, k) in &triples {
        let lhs = convolve(&prods[i][j], &s[k]).expect("same instance");
        let rhs = convolve(&s[i], &prods[j][k]).expect("same instance");
        if lhs.values() != rhs.values() {
            failure = Some(json!({ "triple": [i, j, k], "left": values_json(&lhs), "right": values_json(&rhs) }));
            break;
        }
    }
    let assoc = CheckResult::verdict(
        "ring.associativity",
        scope,
        "convolution is associative",
        format!("{} triples over {n} spanning elements ({})", triples.len(), if exhaustive { "exhaustive" } else { "sampled" }),
        failure,
    );

    let unit = unit_1k(inst, cp.level()).expect("level is admissible");
    let failure = s.iter().enumerate().find_map(|(i, x)| {
        let l = convolve(&unit, x).expect("same instance");
        let r = convolve(x, &unit).expect("same instance");
        (l.values() != x.values() || r.values() != x.values()).then(|| json!({ "element": i, "left": values_json(&l), "right": values_json(&r) }))
    });
    let unit_check = CheckResult::verdict("ring.unit", scope, "1_K is a two-sided unit", format!("{n} spanning elements"), failure);

    // second route: the trivial level with the largest-label transversal of G/N
    let g = inst.group();
    let trivial = Subgroup::trivial(g);
    let q = quotient(g, inst.n()).expect("N is normal");
    let alt: Vec<usize> = (0..q.group.order()).map(|c| g.elements().filter(|&x| q.projection.apply(x) == c).max().expect("nonempty")).collect();
    let failure = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find_map(|(i, j)| {
        let other = convolve_with(&s[i], &s[j], &trivial, &alt);
        (other.values() != prods[i][j].values())
            .then(|| json!({ "pair": [i, j], "level_k": values_json(&prods[i][j]), "trivial_level": values_json(&other) }))
    });
    let indep = CheckResult::verdict(
        "ring.independence",
        scope,
        "the product does not depend on the admissible level or transversal",
        format!("{} pairs, level K with ascending transversal vs trivial level with descending transversal", n * n),
        failure,
    );
    vec![assoc, unit_check, indep]
}

pub fn iso_result(cp: &Arc<CrossedProduct>, scope: &str) -> CheckResult {
    const P: &str = "the level algebra is the crossed product F∗D";
    match iso_check_with_permuted_section(cp) {
        Ok(r) if r.passed() => CheckResult::pass("iso", scope, P, format!("{} pairs, also under a permuted section", r.pairs_checked)),
        Ok(r) => {
            let first = r.mismatches.first().or_else(|| r.permuted.as_ref().and_then(|p| p.mismatches.first()));
            CheckResult::fail("iso", scope, P, format!("basis property {}", r.basis_ok), json!({ "mismatch": first }))
        }
        Err(e) => CheckResult::fail("iso", scope, P, e.to_string(), json!({ "error": e.to_string() })),
    }
}

pub fn maschke_result(cp: &Arc<CrossedProduct>, scope: &str) -> CheckResult {
    let r = maschke_section(cp, 1);
    let detail = format!("{} vectors, {} actions", r.vectors_checked, r.actions_checked);
    let failure = (!r.passed()).then(|| json!({ "split": r.split, "equivariant": r.equivariant }));
    CheckResult::verdict("maschke", scope, "the averaging map is an equivariant section of p", detail, failure)
}

pub fn semisimple_result(cp: &Arc<CrossedProduct>, scope: &str) -> CheckResult {
    const P: &str = "the trace form of F∗D is nondegenerate";
    match certify_semisimple(cp) {
        Ok(c) => CheckResult::pass("semisimple", scope, P, format!("Gram determinant over {} of size {}: [{}]", c.over, c.size, c.gram_det.join(", "))),
        Err(e) => CheckResult::fail("semisimple", scope, P, e.to_string(), json!({ "error": e.to_string() })),
    }
}

/// Coherence of the inclusion of a coarse level algebra into a finer one.
pub fn embed_result(coarse: &Arc<CrossedProduct>, fine: &Arc<CrossedProduct>, scope: &str) -> CheckResult {
    const P: &str = "the level inclusion is multiplicative, 1_K is a central idempotent, and 1_K A' 1_K is the image";
    let emb = match embed_level(coarse, fine) {
        Ok(e) => e,
        Err(e) => return CheckResult::fail("embed", scope, P, e.to_string(), json!({ "error": e.to_string() })),
    };
    let failure = if let Some((a, b)) = emb.multiplicativity_failure() {
        Some(json!({ "multiplicativity": [a, b] }))
    } else if !crate::crossed::LevelEmbedding::is_central_idempotent(emb.unit_image()) {
        Some(json!({ "unit_image": "not a central idempotent" }))
    } else if !emb.corner_equals_image() {
        Some(json!({ "corner": "1_K A' 1_K differs from the image" }))
    } else {
        None
    };
    CheckResult::verdict("embed", scope, P, format!("|D| {} into |D'| {}", coarse.order(), fine.order()), failure)
}

/// Ξ is multiplicative on all monomials `r b_d tⁿ`, `|n| ≤ max_power`, and `Ξ⁻¹ Ξ = id`.
pub fn xi_result(model: &Arc<TwistModel>, cp: &Arc<CrossedProduct>, max_power: i64, scope: &str) -> CheckResult {
    const P: &str = "Ξ from the twisted Laurent ring to the Hecke algebra of E ⋊ ℤ is multiplicative";
    let alpha = match LevelAutomorphism::new(model, cp) {
        Ok(a) => Arc::new(a),
        Err(e) => return CheckResult::fail("xi", scope, P, e.to_string(), json!({ "error": e.to_string() })),
    };
    let f = cp.field();
    let scalars: Vec<FieldElement> = if cp.is_linear() { vec![f.one()] } else { (0..f.degree() as i64).map(|j| f.zeta_pow(j)).collect() };
    let mut monos = Vec::new();
    for d in 0..cp.order() {
        for r in &scalars {
            for n in -max_power..=max_power {
                monos.push((d, r.to_string(), n, TwistedLaurentElement::monomial(&alpha, cp.monomial(r.clone(), d), n)));
            }
        }
    }
    let images: Vec<_> = monos.iter().map(|m| xi(&m.3).expect("same model")).collect();
    let mut pairs = 0;
    for (i, a) in monos.iter().enumerate() {
        if xi_inv(&images[i], &alpha).ok().as_ref() != Some(&a.3) {
            return CheckResult::fail("xi", scope, P, "Ξ⁻¹ Ξ differs from the identity", json!({ "monomial": [a.0, a.1, a.2] }));
        }
        for (j, b) in monos.iter().enumerate() {
            pairs += 1;
            let prod = laurent_mul(&a.3, &b.3).expect("same automorphism");
            let lhs = xi(&prod).expect("same model");
            let rhs = direct_convolve(&images[i], &images[j]).expect("same model");
            if lhs != rhs {
                return CheckResult::fail(
                    "xi",
                    scope,
                    P,
                    format!("after {pairs} pairs"),
                    json!({ "left": { "d": a.0, "r": a.1, "n": a.2 }, "right": { "d": b.0, "r": b.1, "n": b.2 } }),
                );
            }
        }
    }
    CheckResult::pass("xi", scope, P, format!("{pairs} monomial pairs with |n| <= {max_power}"))
}

/// `φ_*` is multiplicative on basis pairs of every given source level and sends `1_{K'}` to `1_{φ(K')}`.
pub fn pushforward_result(phi: &GroupHom, source: &Arc<HeckeInstance>, target: &Arc<HeckeInstance>, levels: &[Subgroup]) -> CheckResult {
    const P: &str = "pushforward along an open inclusion is a ring homomorphism sending level units to level units";
    let scope = format!("{} -> {}", source.group().name(), target.group().name());
    let mut pairs = 0;
    for level in levels {
        let cp = match build_level(source, level) {
            Ok(cp) => cp,
            Err(e) => return CheckResult::fail("pushforward", &scope, P, e.to_string(), json!({ "error": e.to_string() })),
        };
        let s = spanning_set(&cp);
        let push = |x: &HeckeElement| pushforward(phi, target, x);
        let images: Vec<_> = match s.iter().map(push).collect::<Result<Vec<_>, _>>() {
            Ok(v) => v,
            Err(e) => return CheckResult::fail("pushforward", &scope, P, e.to_string(), json!({ "error": e.to_string() })),
        };
        for i in 0..s.len() {
            for j in 0..s.len() {
                pairs += 1;
                let lhs = push(&convolve(&s[i], &s[j]).expect("same instance")).expect("admissible image");
                let rhs = convolve(&images[i], &images[j]).expect("same instance");
                if lhs.values() != rhs.values() {
                    return CheckResult::fail("pushforward", &scope, P, "not multiplicative", json!({ "level": level.members(), "pair": [i, j] }));
                }
            }
        }
        let unit = push(&unit_1k(source, level).expect("admissible")).expect("admissible image");
        let expected = unit_1k(target, &phi.image_of(level)).expect("admissible image");
        if unit.values() != expected.values() {
            return CheckResult::fail("pushforward", &scope, P, "level unit not preserved", json!({ "level": level.members() }));
        }
    }
    CheckResult::pass("pushforward", &scope, P, format!("{pairs} basis pairs over {} levels", levels.len()))
}

/// Block decomposition of a level, surfacing a non-split field with the suggested conductor.
pub fn blocks_result(
    cp: &Arc<CrossedProduct>,
    decompose: &Decomposer,
    scope: &str,
) -> (CheckResult, Option<SemisimpleDecomposition>) {
    const P: &str = "F∗D splits into full matrix blocks over F";
    match decompose(cp) {
        Ok(dec) => {
            let detail = format!("{} blocks of dimensions {:?}", dec.rank(), dec.dims);
            (CheckResult::pass("blocks", scope, P, detail), Some(dec))
        }
        Err(KTheoryError::NonSplitBlock { suggested_conductor, reason }) => (
            CheckResult::fail("blocks", scope, P, reason.clone(), json!({ "non_split": reason, "suggested_conductor": suggested_conductor })),
            None,
        ),
        Err(e) => (CheckResult::fail("blocks", scope, P, e.to_string(), json!({ "error": e.to_string() })), None),
    }
}
