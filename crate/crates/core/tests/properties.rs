use std::sync::Arc;

use hecke_workbench::crossed::{build_level, cp_mul, embed_level, CPElement, CrossedProduct};
use hecke_workbench::exact::rational::rat;
use hecke_workbench::exact::{CyclotomicField, FieldElement};
use hecke_workbench::group::{
    attach_unit_twist, cyclic_tower, validate_normal_character, CharacterViolation, FiniteGroup, GroupHom, NormalCharacter, RhoAction,
    Subgroup,
};
use hecke_workbench::hecke::{convolve, convolve_with, make_element, pushforward, unit_1k, HeckeElement, HeckeInstance};
use hecke_workbench::ktheory::{block_decompose, induced_k0, SemisimpleDecomposition};
use hecke_workbench::laurent::{direct_convolve, laurent_mul, phi_hecke, phi_hecke_pow, xi, LevelAutomorphism, TwistModel, TwistedLaurentElement};
use hecke_workbench::report::{load, ExampleParams, Overrides, Problem, Source};
use proptest::prelude::*;

fn example(name: &str) -> Problem {
    load(&Source::Example(name.into(), ExampleParams::default()), &Overrides::default()).unwrap().0
}

fn sandbox(name: &str) -> (Arc<HeckeInstance>, Vec<Subgroup>) {
    let p = example(name);
    (p.instance().unwrap(), p.levels.clone())
}

/// `Σ c_i ζ^{k_i} b_i` over the basis functions of a level.
fn combination(cp: &CrossedProduct, coeffs: &[(i64, i64)]) -> HeckeElement {
    let f = cp.field();
    let mut acc = cp.instance().zero(cp.level()).unwrap();
    for (b, &(c, k)) in cp.basis_functions().iter().zip(coeffs.iter().cycle()) {
        let r = &f.from_int(c) * &f.zeta_pow(k);
        acc = acc.add(&b.scalar_act(&r).unwrap()).unwrap();
    }
    acc
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-3i64..=3, 0i64..4), 1..=8)
}

// ---- the character validator against a brute-force scan ----

/// Candidate data: a group, a subgroup, values in ℚ(ζ_m), and Galois exponents per element.
#[derive(Debug, Clone)]
struct CharacterCase {
    group: usize,
    subgroup: usize,
    conductor: u64,
    values: Vec<(bool, i64, bool)>,
    rho: Vec<usize>,
}

fn groups() -> Vec<(FiniteGroup, Vec<Vec<usize>>)> {
    let (s3, _) = FiniteGroup::symmetric(3);
    let klein = FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)).unwrap();
    vec![
        (FiniteGroup::cyclic(4), vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]),
        (FiniteGroup::cyclic(6), vec![vec![0, 3], vec![0, 2, 4], vec![0, 1, 2, 3, 4, 5]]),
        (s3, vec![vec![0], vec![0, 3, 4], vec![0, 1], (0..6).collect()]),
        (klein, vec![vec![0, 1], vec![0, 2], (0..4).collect()]),
    ]
}

fn character_case() -> impl Strategy<Value = CharacterCase> {
    (0usize..4, 0usize..4, prop::sample::select(vec![1u64, 3, 4]), prop::collection::vec((any::<bool>(), 0i64..12, prop::bool::weighted(0.05)), 6), prop::collection::vec(0usize..2, 6))
        .prop_map(|(group, subgroup, conductor, values, rho)| CharacterCase { group, subgroup, conductor, values, rho })
}

fn brute_force_valid(omega: &NormalCharacter, rho: &RhoAction, m: u64) -> bool {
    let n = omega.domain();
    let g = n.parent();
    let one = omega.field().one();
    let normal = g.elements().all(|x| n.members().iter().all(|&y| n.contains(g.conj(x, y))));
    if !normal {
        return false;
    }
    let roots = n.members().iter().all(|&x| (1..=2 * m as i64).any(|j| omega.value(x).pow(j) == one));
    let mult = n.members().iter().all(|&a| n.members().iter().all(|&b| omega.value(g.mul(a, b)) == &(omega.value(a) * omega.value(b))));
    let conj = g.elements().all(|x| n.members().iter().all(|&y| omega.value(g.conj(x, y)) == omega.value(y)));
    let fixed = g.elements().all(|x| n.members().iter().all(|&y| rho.act(x, omega.value(y)) == *omega.value(y)));
    let trivial_on_n = n.members().iter().all(|&y| rho.aut(y).is_identity());
    roots && mult && conj && fixed && trivial_on_n
}

fn witness_is_genuine(v: &CharacterViolation, omega: &NormalCharacter, rho: &RhoAction) -> bool {
    let n = omega.domain();
    let g = n.parent();
    match *v {
        CharacterViolation::NotNormal { g: x, n: y } => !n.contains(g.conj(x, y)),
        CharacterViolation::NotMultiplicative { a, b } => omega.value(g.mul(a, b)) != &(omega.value(a) * omega.value(b)),
        CharacterViolation::ConjugationInvariance { g: x, n: y } => omega.value(g.conj(x, y)) != omega.value(y),
        CharacterViolation::RhoMovesValue { g: x, n: y } => rho.act(x, omega.value(y)) != *omega.value(y),
        CharacterViolation::RhoNontrivialOnN { n: y } => !rho.aut(y).is_identity(),
        CharacterViolation::NotRootOfUnity { n: y } => omega.value(y).root_order().is_none(),
        CharacterViolation::FieldMismatch => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn validator_matches_brute_force(case in character_case()) {
        let all = groups();
        let (g, subs) = &all[case.group];
        let sub = Subgroup::new(g, subs[case.subgroup % subs.len()].iter().copied()).unwrap();
        let field = CyclotomicField::new(case.conductor).unwrap();
        let table: Vec<(usize, FieldElement)> = sub
            .members()
            .iter()
            .zip(&case.values)
            .map(|(&x, &(neg, k, junk))| {
                let z = if x == 0 { field.one() } else { field.zeta_pow(k) };
                let z = if neg && x != 0 { -z } else { z };
                (x, if junk { field.from_int(2) } else { z })
            })
            .collect();
        let omega = NormalCharacter::new(&sub, &field, &table).unwrap();
        let gal = field.galois_exponents();
        let exps: Vec<i64> = (0..g.order()).map(|x| gal[case.rho[x] % gal.len()] as i64).collect();
        let rho = RhoAction::from_exponents(g, &field, &exps).unwrap_or_else(|_| RhoAction::trivial(g, &field));
        let report = validate_normal_character(&omega, &rho);
        prop_assert_eq!(report.is_valid(), brute_force_valid(&omega, &rho, field.conductor()));
        for v in &report.violations {
            prop_assert!(witness_is_genuine(v, &omega, &rho), "{:?}", v);
        }
    }
}

// ---- Hecke convolution ----

fn sandbox_names() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["plain-z4", "omega-sign", "galois-twist"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn convolution_is_associative_across_levels(name in sandbox_names(), l in (0usize..3, 0usize..3, 0usize..3), a in coeffs(), b in coeffs(), c in coeffs()) {
        let (inst, levels) = sandbox(name);
        let pick = |i: usize| build_level(&inst, &levels[i % levels.len()]).unwrap();
        let (s, t, u) = (combination(&pick(l.0), &a), combination(&pick(l.1), &b), combination(&pick(l.2), &c));
        let lhs = convolve(&convolve(&s, &t).unwrap(), &u).unwrap();
        let rhs = convolve(&s, &convolve(&t, &u).unwrap()).unwrap();
        prop_assert_eq!(lhs.values(), rhs.values().to_vec());
        // the intersection level is admissible for the product
        prop_assert!(convolve(&s, &t).unwrap().validate().is_ok());
    }

    #[test]
    fn product_is_independent_of_level_and_transversal(name in sandbox_names(), l in 0usize..3, a in coeffs(), b in coeffs(), picks in prop::collection::vec(any::<prop::sample::Index>(), 8)) {
        let (inst, levels) = sandbox(name);
        let cp = build_level(&inst, &levels[l % levels.len()]).unwrap();
        let (s, t) = (combination(&cp, &a), combination(&cp, &b));
        let g = inst.group();
        // any representatives of G/N, over the trivial level
        let q = hecke_workbench::group::quotient(g, inst.n()).unwrap();
        let transversal: Vec<usize> = (0..q.group.order())
            .map(|c| {
                let coset: Vec<usize> = g.elements().filter(|&x| q.projection.apply(x) == c).collect();
                *picks[c % picks.len()].get(&coset)
            })
            .collect();
        let other = convolve_with(&s, &t, &Subgroup::trivial(g), &transversal);
        prop_assert_eq!(other.values().to_vec(), convolve(&s, &t).unwrap().values().to_vec());
    }

    #[test]
    fn unit_laws(name in sandbox_names(), l in 0usize..3, a in coeffs()) {
        let (inst, levels) = sandbox(name);
        let k = &levels[l % levels.len()];
        let s = combination(&build_level(&inst, k).unwrap(), &a);
        let one = unit_1k(&inst, k).unwrap();
        prop_assert_eq!(convolve(&one, &s).unwrap().values().to_vec(), s.values().to_vec());
        prop_assert_eq!(convolve(&s, &one).unwrap().values().to_vec(), s.values().to_vec());
    }

    #[test]
    fn measure_rescaling_transports_products(name in sandbox_names(), num in 1i64..6, den in 1i64..6, a in coeffs(), b in coeffs()) {
        let (inst, levels) = sandbox(name);
        let r = rat(num, den);
        let scaled = inst.rescaled(&r).unwrap();
        let cp = build_level(&inst, levels.last().unwrap()).unwrap();
        let (s, t) = (combination(&cp, &a), combination(&cp, &b));
        let transport = |x: &HeckeElement| x.scale(&r.recip()).reinterpret(&scaled).unwrap();
        let lhs = transport(&convolve(&s, &t).unwrap());
        let rhs = convolve(&transport(&s), &transport(&t)).unwrap();
        prop_assert_eq!(lhs.values(), rhs.values().to_vec());
        prop_assert_eq!(transport(&unit_1k(&inst, cp.level()).unwrap()).values().to_vec(), unit_1k(&scaled, cp.level()).unwrap().values().to_vec());
    }

    #[test]
    fn pushforward_is_a_homomorphism(a in coeffs(), b in coeffs(), level in 0usize..2) {
        let q = CyclotomicField::rationals();
        let (z2, z4) = (FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
        let source = HeckeInstance::plain(&z2, &q);
        let target = HeckeInstance::plain(&z4, &q);
        let phi = GroupHom::new(&z2, &z4, vec![0, 2]).unwrap();
        let k = if level == 0 { Subgroup::trivial(&z2) } else { Subgroup::whole(&z2) };
        let cp = build_level(&source, &k).unwrap();
        let (s, t) = (combination(&cp, &a), combination(&cp, &b));
        let push = |x: &HeckeElement| pushforward(&phi, &target, x).unwrap();
        prop_assert_eq!(push(&s.add(&t).unwrap()).values().to_vec(), push(&s).add(&push(&t)).unwrap().values().to_vec());
        prop_assert_eq!(push(&convolve(&s, &t).unwrap()).values().to_vec(), convolve(&push(&s), &push(&t)).unwrap().values().to_vec());
        let image: Vec<usize> = s.support().iter().map(|&x| phi.apply(x)).collect();
        prop_assert!(push(&s).support().iter().all(|x| image.contains(x)));
    }
}

// ---- level algebras and K_0 ----

fn small_algebras() -> Vec<Arc<CrossedProduct>> {
    let plain = |g: &FiniteGroup, m: u64| {
        let inst = HeckeInstance::plain(g, &CyclotomicField::new(m).unwrap());
        build_level(&inst, &Subgroup::trivial(g)).unwrap()
    };
    let (s3, _) = FiniteGroup::symmetric(3);
    let z4 = FiniteGroup::cyclic(4);
    let flip = GroupHom::new(&z4, &z4, vec![0, 3, 2, 1]).unwrap();
    let d4 = FiniteGroup::semidirect(&z4, &flip).unwrap();
    let klein = FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)).unwrap();
    let sign = example("omega-sign");
    let sign4 = build_problem_over(&sign, 4);
    vec![plain(&s3, 1), plain(&z4, 4), plain(&FiniteGroup::cyclic(9), 9), plain(&d4, 1), plain(&klein, 1), sign4]
}

fn build_problem_over(p: &Problem, m: u64) -> Arc<CrossedProduct> {
    let cfg = p.config.clone();
    let moved = hecke_workbench::report::build_problem(&cfg, &Overrides { conductor: Some(m), depth: None }).unwrap();
    build_level(&moved.instance().unwrap(), &moved.levels[0]).unwrap()
}

#[test]
fn central_idempotents_are_orthogonal_and_complete() {
    for cp in small_algebras() {
        let dec = block_decompose(&cp).unwrap();
        let z = &dec.idempotents;
        let mut sum = cp.zero();
        for (i, zi) in z.iter().enumerate() {
            sum = sum.add(zi);
            for (j, zj) in z.iter().enumerate() {
                let expected = if i == j { zi.clone() } else { cp.zero() };
                assert_eq!(cp_mul(zi, zj).unwrap(), expected, "{cp:?} blocks {i} {j}");
            }
            for d in 0..cp.order() {
                let b = cp.basis_element(d);
                assert_eq!(cp_mul(zi, &b).unwrap(), cp_mul(&b, zi).unwrap(), "{cp:?} block {i} is not central");
            }
        }
        assert_eq!(sum, cp.one());
        assert_eq!(dec.dims.iter().sum::<usize>(), cp.order());
    }
}

fn s3_setup() -> (Arc<CrossedProduct>, SemisimpleDecomposition) {
    let (s3, _) = FiniteGroup::symmetric(3);
    let inst = HeckeInstance::plain(&s3, &CyclotomicField::rationals());
    let cp = build_level(&inst, &Subgroup::trivial(&s3)).unwrap();
    let dec = block_decompose(&cp).unwrap();
    (cp, dec)
}

/// `(1 + b_t)/2` for an element `t` of order 2.
fn involution_idempotent(cp: &Arc<CrossedProduct>, t: usize) -> CPElement {
    cp.one().add(&cp.basis_element(t)).scale(&rat(1, 2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn k0_class_is_additive_and_conjugation_invariant(t in prop::sample::select(vec![1usize, 2, 5]), u in 0usize..6, block in 0usize..3) {
        let (cp, dec) = s3_setup();
        let e = involution_idempotent(&cp, t);
        let z = dec.idempotents[block].clone();
        let class = |m: &[Vec<CPElement>]| dec.k0_class(m).unwrap();
        let diag = vec![vec![e.clone(), cp.zero()], vec![cp.zero(), z.clone()]];
        let sum: Vec<i64> = class(&[vec![e.clone()]]).iter().zip(class(&[vec![z]])).map(|(a, b)| a + b).collect();
        prop_assert_eq!(class(&diag), sum);
        let conj = cp_mul(&cp_mul(&cp.basis_element(u), &e).unwrap(), &cp.basis_inverse(u)).unwrap();
        prop_assert_eq!(class(&[vec![conj]]), class(&[vec![e]]));
    }

    #[test]
    fn xi_is_multiplicative_on_random_monomials(d in (0usize..3, 0usize..3), n in (-2i64..=2, -2i64..=2), u in prop::sample::select(vec![1i64, 2])) {
        let t = attach_unit_twist(&cyclic_tower(3, 1, &CyclotomicField::new(3).unwrap()).unwrap(), u).unwrap();
        let model = TwistModel::from_tower(&t).unwrap();
        let cp = build_level(model.instance(), t.level(1)).unwrap();
        let alpha = Arc::new(LevelAutomorphism::new(&model, &cp).unwrap());
        let f = TwistedLaurentElement::monomial(&alpha, cp.basis_element(d.0), n.0);
        let g = TwistedLaurentElement::monomial(&alpha, cp.basis_element(d.1), n.1);
        let fg = laurent_mul(&f, &g).unwrap();
        prop_assert_eq!(xi(&fg).unwrap(), direct_convolve(&xi(&f).unwrap(), &xi(&g).unwrap()).unwrap());
        prop_assert!(xi(&fg).unwrap().slices().keys().all(|&k| k == n.0 + n.1));
        let h = TwistedLaurentElement::monomial(&alpha, cp.basis_element((d.0 + d.1) % 3), n.0 - n.1);
        prop_assert_eq!(laurent_mul(&laurent_mul(&f, &g).unwrap(), &h).unwrap(), laurent_mul(&f, &laurent_mul(&g, &h).unwrap()).unwrap());
    }

    #[test]
    fn phi_hecke_inverts(x in 0usize..9, c in 1i64..5) {
        let t = attach_unit_twist(&cyclic_tower(3, 2, &CyclotomicField::rationals()).unwrap(), 2).unwrap();
        let model = TwistModel::from_tower(&t).unwrap();
        let f = model.instance().field();
        let s = make_element(model.instance(), &[(x, f.from_int(c))], t.level(2)).unwrap();
        prop_assert_eq!(phi_hecke_pow(&model, &phi_hecke(&model, &s).unwrap(), -1).unwrap(), s);
    }
}

#[test]
fn induced_k0_is_functorial_along_towers() {
    for p in [2u64, 3] {
        let t = cyclic_tower(p, 2, &CyclotomicField::new(p * p).unwrap()).unwrap();
        let inst = HeckeInstance::new(t.omega().clone(), t.rho().clone()).unwrap();
        let cps: Vec<_> = (0..=2).map(|k| build_level(&inst, t.level(k)).unwrap()).collect();
        let decs: Vec<_> = cps.iter().map(|cp| block_decompose(cp).unwrap()).collect();
        let map = |a: usize, b: usize| {
            let emb = embed_level(&cps[a], &cps[b]).unwrap();
            induced_k0(&decs[a], &decs[b], |x| Ok(emb.apply(x)?)).unwrap()
        };
        let (m01, m12, m02) = (map(0, 1), map(1, 2), map(0, 2));
        let composed: Vec<Vec<i64>> =
            (0..m12.len()).map(|i| (0..m01[0].len()).map(|j| (0..m01.len()).map(|k| m12[i][k] * m01[k][j]).sum()).collect()).collect();
        assert_eq!(composed, m02, "p = {p}");
        // embeddings compose as well
        let (e01, e12, e02) = (embed_level(&cps[0], &cps[1]).unwrap(), embed_level(&cps[1], &cps[2]).unwrap(), embed_level(&cps[0], &cps[2]).unwrap());
        for d in 0..cps[0].order() {
            let b = cps[0].basis_element(d);
            assert_eq!(e12.apply(&e01.apply(&b).unwrap()).unwrap(), e02.apply(&b).unwrap());
        }
    }
}
