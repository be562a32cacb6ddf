//! Semisimplicity certificates, the center of `F∗D`, and its primitive central idempotents.
//!
//! Idempotents are found modulo an inert prime `p`, lifted `p`-adically by Newton iteration,
//! reconstructed as rationals and then verified exactly, so no step has to be trusted.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::modp::{
    big_pow, inverse_mod, is_prime, is_primitive_root, pow_u64, rational_reconstruct, unit_group_is_cyclic, Constants, ModAlgebra,
    ModElement, PolyRing,
};
use super::KTheoryError;
use crate::crossed::{cp_mul, CPElement, CrossedProduct};
use crate::exact::rational::Rational;
use crate::exact::{CyclotomicField, FieldElement, FieldMatrix};

/// `(x y)_e = Σ_a x_a c_a(y_{a⁻¹}) w(a, a⁻¹)`.
pub fn identity_coefficient(x: &CPElement, y: &CPElement) -> FieldElement {
    let p = x.parent();
    let d = p.d();
    let mut acc = p.field().zero();
    for (a, xa) in x.coeffs().iter().enumerate() {
        let ai = d.inv(a);
        let yb = y.coeff(ai);
        if xa.is_zero() || yb.is_zero() {
            continue;
        }
        acc += &(&(xa * &p.c(a).apply_unchecked(yb)) * p.w(a, ai));
    }
    acc
}

/// Nonzero Gram determinant of the trace form.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SemisimplicityCertificate {
    /// `"F"` for `tr(L_x L_y)` over `F` when `c` is trivial, `"Q"` for the trace over `ℚ` otherwise.
    pub over: String,
    pub size: usize,
    pub gram_det: Vec<String>,
}

fn field_trace(x: &FieldElement) -> Rational {
    let f = x.field();
    let mut acc = f.zero();
    for k in f.galois_exponents() {
        acc += &x.conjugate(k as i64);
    }
    acc.as_rational().expect("the trace lies in Q")
}

/// `F∗D` is semisimple iff its trace form is nondegenerate; `tr(L_x) = |D|·x_e` on the `b_d`.
pub fn certify_semisimple(cp: &Arc<CrossedProduct>) -> Result<SemisimplicityCertificate, KTheoryError> {
    let m = cp.order();
    let order = cp.field().from_int(m as i64);
    let (over, gram) = if cp.is_linear() {
        let f = cp.field();
        let mut g = FieldMatrix::zeros(f, m, m);
        for a in 0..m {
            for b in 0..m {
                g[(a, b)] = &order * &identity_coefficient(&cp.basis_element(a), &cp.basis_element(b));
            }
        }
        ("F", g)
    } else {
        let f = cp.field();
        let q = CyclotomicField::rationals();
        let deg = f.degree();
        let basis: Vec<CPElement> = (0..m).flat_map(|d| (0..deg as i64).map(move |j| (d, j))).map(|(d, j)| cp.monomial(f.zeta_pow(j), d)).collect();
        let n = basis.len();
        let mut g = FieldMatrix::zeros(&q, n, n);
        for i in 0..n {
            for j in 0..n {
                let t = field_trace(&identity_coefficient(&basis[i], &basis[j]));
                g[(i, j)] = q.from_rational(&(t * Rational::from_integer((m as i64).into())));
            }
        }
        ("Q", g)
    };
    let det = gram.det();
    if det.is_zero() {
        let witness = gram.nullspace().into_iter().next().unwrap_or_default();
        return Err(KTheoryError::NondegenerateTraceFailure { witness: witness.iter().map(|x| x.to_string()).collect() });
    }
    Ok(SemisimplicityCertificate { over: over.into(), size: gram.rows(), gram_det: det.to_strings() })
}

/// `Z(F∗D)` for trivial `c`: one basis vector per conjugacy class on which the cocycle is consistent.
#[derive(Clone, Debug)]
pub struct Center {
    pub algebra: Arc<CrossedProduct>,
    /// `z_C = Σ_{a ∈ C} x_a b_a` with `x` normalized to 1 on the first member found.
    pub basis: Vec<CPElement>,
    pub consts: Constants<FieldElement>,
    /// `tr(L_{z_i})` on the center.
    pub traces: Vec<FieldElement>,
}

/// Commuting with `b_d` forces `x_{d⁻¹ a d} = x_a·w(a, d)/w(d, d⁻¹ a d)`; classes where this
/// propagation contradicts itself carry no central element.
pub fn center(cp: &Arc<CrossedProduct>) -> Result<Center, KTheoryError> {
    if !cp.is_linear() {
        return Err(KTheoryError::SemilinearAlgebra);
    }
    let d = cp.d();
    let f = cp.field();
    let m = d.order();
    let mut seen = vec![false; m];
    let mut basis = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut x: Vec<Option<FieldElement>> = vec![None; m];
        x[start] = Some(f.one());
        seen[start] = true;
        let mut consistent = true;
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            let xa = x[a].clone().expect("assigned before queued");
            for g in 0..m {
                let b = d.conj(d.inv(g), a);
                let v = &(&xa * cp.w(a, g)) * &cp.w(g, b).inv().expect("cocycle values are units");
                match &x[b] {
                    None => {
                        x[b] = Some(v);
                        seen[b] = true;
                        queue.push_back(b);
                    }
                    Some(prev) if *prev != v => consistent = false,
                    Some(_) => {}
                }
            }
        }
        if consistent {
            basis.push(cp.element(x.into_iter().map(|v| v.unwrap_or_else(|| f.zero())).collect()));
        }
    }
    // first nonzero coordinate of each z_C, where it equals 1
    let reps: Vec<usize> = basis.iter().map(|z| z.coeffs().iter().position(|c| !c.is_zero()).expect("nonzero")).collect();
    let r = basis.len();
    let mut consts: Constants<FieldElement> = vec![vec![Vec::new(); r]; r];
    for i in 0..r {
        for j in i..r {
            let prod = cp_mul(&basis[i], &basis[j])?;
            let cell: Vec<(usize, FieldElement)> =
                reps.iter().enumerate().map(|(k, &a)| (k, prod.coeff(a).clone())).filter(|(_, c)| !c.is_zero()).collect();
            consts[j][i] = cell.clone();
            consts[i][j] = cell;
        }
    }
    let traces = (0..r)
        .map(|i| {
            let mut t = f.zero();
            for j in 0..r {
                if let Some((_, g)) = consts[i][j].iter().find(|(k, _)| *k == j) {
                    t += g;
                }
            }
            t
        })
        .collect();
    Ok(Center { algebra: cp.clone(), basis, consts, traces })
}

impl Center {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn mul(&self, x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.algebra.field();
        let mut out = vec![f.zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let xy = xi * yj;
                for (k, g) in &self.consts[i][j] {
                    out[*k] += &(&xy * g);
                }
            }
        }
        out
    }

    fn trace(&self, x: &[FieldElement]) -> FieldElement {
        let mut t = self.algebra.field().zero();
        for (xi, ti) in x.iter().zip(&self.traces) {
            t += &(xi * ti);
        }
        t
    }

    /// Coordinates of a central element; `None` if `x` is not in the span of the `z_C`.
    pub fn coordinates(&self, x: &CPElement) -> Option<Vec<FieldElement>> {
        let coords: Vec<FieldElement> =
            self.basis.iter().map(|z| x.coeff(z.coeffs().iter().position(|c| !c.is_zero()).expect("nonzero")).clone()).collect();
        (self.to_algebra(&coords) == *x).then_some(coords)
    }

    /// `Σ_C x_C z_C` as an element of `F∗D`.
    pub fn to_algebra(&self, x: &[FieldElement]) -> CPElement {
        let mut out = self.algebra.zero();
        for (xi, z) in x.iter().zip(&self.basis) {
            if !xi.is_zero() {
                out = out.add(&z.scalar(xi));
            }
        }
        out
    }
}

/// `A ≅ ∏ M_{n_i}(F)`, with the blocks ordered by dimension and then by coefficients.
#[derive(Clone, Debug)]
pub struct SemisimpleDecomposition {
    pub algebra: Arc<CrossedProduct>,
    pub idempotents: Vec<CPElement>,
    /// `dim_F(A z_i) = n_i²`.
    pub dims: Vec<usize>,
    pub sizes: Vec<usize>,
    pub center_dim: usize,
    /// The inert prime whose lift produced the idempotents.
    pub prime: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BlockSummary {
    pub center_dim: usize,
    pub dims: Vec<usize>,
    pub sizes: Vec<usize>,
    pub prime: u64,
    pub idempotents: Vec<Vec<Vec<String>>>,
}

impl SemisimpleDecomposition {
    pub fn rank(&self) -> usize {
        self.idempotents.len()
    }

    pub fn summary(&self) -> BlockSummary {
        BlockSummary {
            center_dim: self.center_dim,
            dims: self.dims.clone(),
            sizes: self.sizes.clone(),
            prime: self.prime,
            idempotents: self.idempotents.iter().map(|e| e.coeffs().iter().map(|c| c.to_strings()).collect()).collect(),
        }
    }

    /// `[e] ∈ K_0(A) = ℤ^r` for an idempotent matrix over `A`: the rank of `e` in block `i` is
    /// `tr(L_{e z_i})/n_i = |D|·Σ_j (e_{jj} z_i)_e / n_i`.
    pub fn k0_class(&self, e: &[Vec<CPElement>]) -> Result<Vec<i64>, KTheoryError> {
        let n = e.len();
        if e.iter().any(|row| row.len() != n) {
            return Err(KTheoryError::NotIdempotent("the matrix is not square".into()));
        }
        if e.iter().flatten().any(|x| x.parent().id() != self.algebra.id()) {
            return Err(KTheoryError::NotIdempotent("entries live in another algebra".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.algebra.zero();
                for k in 0..n {
                    acc = acc.add(&cp_mul(&e[i][k], &e[k][j])?);
                }
                if acc != e[i][j] {
                    return Err(KTheoryError::NotIdempotent(format!("(e²)[{i}][{j}] differs from e[{i}][{j}]")));
                }
            }
        }
        let order = Rational::from_integer((self.algebra.order() as i64).into());
        self.idempotents
            .iter()
            .zip(&self.sizes)
            .map(|(z, &size)| {
                let mut t = self.algebra.field().zero();
                for (i, row) in e.iter().enumerate() {
                    t += &identity_coefficient(&row[i], z);
                }
                let v = t.as_rational().map(|r| r * &order / Rational::from_integer((size as i64).into()));
                v.filter(|r| r.is_integer())
                    .and_then(|r| r.to_integer().to_i64())
                    .ok_or_else(|| KTheoryError::NotIdempotent(format!("non-integral block rank {t}")))
            })
            .collect()
    }

    /// Rebuilds a decomposition from a stored summary, verifying it exactly as [`block_decompose`] does.
    pub fn from_summary(cp: &Arc<CrossedProduct>, s: &BlockSummary) -> Result<Self, KTheoryError> {
        let bad = |why: &str| KTheoryError::NotIdempotent(format!("stored decomposition rejected: {why}"));
        let z = center(cp)?;
        if s.idempotents.len() != z.dim() || s.dims.len() != z.dim() || s.sizes.len() != z.dim() {
            return Err(bad("block count differs from the center dimension"));
        }
        let order = Rational::from_integer((cp.order() as i64).into());
        let mut coords = Vec::with_capacity(z.dim());
        let mut elems = Vec::with_capacity(z.dim());
        for (i, e) in s.idempotents.iter().enumerate() {
            if e.len() != cp.order() {
                return Err(bad("wrong number of coefficients"));
            }
            let coeffs = e.iter().map(|c| FieldElement::from_strings(cp.field(), c)).collect::<Result<Vec<_>, _>>();
            let x = cp.element(coeffs.map_err(|_| bad("undecodable coefficient"))?);
            let dim = x.coeff(0).as_rational().map(|c| c * &order);
            if dim != Some(Rational::from_integer((s.dims[i] as i64).into())) || s.sizes[i] * s.sizes[i] != s.dims[i] {
                return Err(bad("block dimensions do not match"));
            }
            coords.push(z.coordinates(&x).ok_or_else(|| bad("not central"))?);
            elems.push(x);
        }
        if !verify(&z, &coords) {
            return Err(bad("the idempotent system does not verify"));
        }
        Ok(SemisimpleDecomposition {
            algebra: cp.clone(),
            idempotents: elems,
            dims: s.dims.clone(),
            sizes: s.sizes.clone(),
            center_dim: z.dim(),
            prime: s.prime,
        })
    }

    /// Class of a single idempotent.
    pub fn k0_class_of(&self, e: &CPElement) -> Result<Vec<i64>, KTheoryError> {
        self.k0_class(&[vec![e.clone()]])
    }
}

/// `lcm(m, exponent)`, where `b_d` has effective order `ord(d)·ord(λ_d)` for `b_d^{ord d} = λ_d`.
pub fn suggested_conductor(cp: &Arc<CrossedProduct>) -> u64 {
    let d = cp.d();
    let mut exp = 1u64;
    for x in d.elements() {
        let k = d.element_order(x);
        let mut acc = cp.one();
        for _ in 0..k {
            acc = cp_mul(&acc, &cp.basis_element(x)).expect("same parent");
        }
        let lambda = acc.coeff(0).clone();
        let lo = if cp.is_linear() { lambda.root_order().unwrap_or(1) } else { 1 };
        exp = exp.lcm(&(k as u64 * lo));
    }
    cp.field().conductor().lcm(&exp)
}

/// Primes that keep `Φ_m` irreducible, do not divide `2m|D|` and exceed the center dimension.
fn candidate_primes(m: u64, order: usize, r: usize) -> impl Iterator<Item = u64> {
    (3u64..100_000).filter(move |&p| {
        is_prime(p) && p as usize > r && !(2 * m * order as u64).is_multiple_of(p) && is_primitive_root(p, m)
    })
}

const PRIMES_TRIED: usize = 6;
const MAX_ROUNDS: usize = 400;

enum Attempt {
    Found(Vec<Vec<FieldElement>>),
    /// `z^q ≠ z` for some `z`: the reduced center has a component bigger than `F_q`.
    FrobeniusWitness,
    Failed,
}

/// Splits `Z ⊗ F_q` into rank-one idempotents.
fn split_mod_p(alg: &ModAlgebra, q: &BigUint, rng: &mut ChaCha8Rng) -> Option<Vec<ModElement>> {
    let p = alg.ring.modulus();
    let half = inverse_mod(2, p)?;
    let exp = (q - 1u32) / 2u32;
    let mut parts = vec![alg.one()];
    for _ in 0..MAX_ROUNDS {
        if parts.iter().all(|e| alg.idempotent_rank(e) == Some(1)) {
            return Some(parts);
        }
        let y = alg.pow(&alg.random(rng), &exp);
        let mut next = Vec::new();
        for e in parts {
            if alg.idempotent_rank(&e) == Some(1) {
                next.push(e);
                continue;
            }
            let ye = alg.mul(&e, &y);
            let ye2 = alg.mul(&ye, &ye);
            let plus = alg.scalar(&alg.add(&ye2, &ye), half);
            let minus = alg.scalar(&alg.sub(&ye2, &ye), half);
            let zero = alg.sub(&e, &ye2);
            for piece in [plus, minus, zero] {
                if !alg.is_zero(&piece) {
                    next.push(piece);
                }
            }
        }
        parts = next;
    }
    None
}

fn attempt(center: &Center, p: u64, rng: &mut ChaCha8Rng) -> Attempt {
    let field = center.algebra.field();
    let Some(alg) = ModAlgebra::reduce(PolyRing::new(field, p), &center.consts, &center.traces) else {
        return Attempt::Failed;
    };
    let q = big_pow(p, field.degree());
    let z = alg.random(rng);
    if alg.pow(&z, &q) != z {
        return Attempt::FrobeniusWitness;
    }
    let Some(parts) = split_mod_p(&alg, &q, rng) else {
        return Attempt::Failed;
    };
    // Newton lift e ← 3e² − 2e³ to the largest power of p below 2^62
    let k = (62.0 / (p as f64).log2()).floor() as u32;
    let big = pow_u64(p, k);
    let Some(lifted) = ModAlgebra::reduce(PolyRing::new(field, big), &center.consts, &center.traces) else {
        return Attempt::Failed;
    };
    let mut found = Vec::with_capacity(parts.len());
    for e0 in parts {
        let mut e = e0;
        for _ in 0..8 {
            let e2 = lifted.mul(&e, &e);
            if e2 == e {
                break;
            }
            let e3 = lifted.mul(&e2, &e);
            e = lifted.sub(&lifted.scalar(&e2, 3), &lifted.scalar(&e3, 2));
        }
        let mut coords = Vec::with_capacity(e.len());
        for c in &e {
            let rats: Option<Vec<Rational>> = c.iter().map(|&a| rational_reconstruct(a, big)).collect();
            let Some(rats) = rats else {
                return Attempt::Failed;
            };
            coords.push(field.from_coefficients(&rats).expect("degree matches"));
        }
        found.push(coords);
    }
    Attempt::Found(found)
}

/// Exact check: each idempotent has central trace 1 and they sum to 1. Over a commutative
/// semisimple algebra this forces orthogonality and `F`-rational simple components.
fn verify(center: &Center, ids: &[Vec<FieldElement>]) -> bool {
    let f = center.algebra.field();
    let mut sum = vec![f.zero(); center.dim()];
    for e in ids {
        if center.mul(e, e) != *e || !center.trace(e).is_one() {
            return false;
        }
        for (s, x) in sum.iter_mut().zip(e) {
            *s += x;
        }
    }
    sum[0].is_one() && sum[1..].iter().all(|x| x.is_zero())
}

/// Primitive central idempotents of a split semisimple `F∗D` with trivial `c`.
pub fn block_decompose(cp: &Arc<CrossedProduct>) -> Result<SemisimpleDecomposition, KTheoryError> {
    let z = center(cp)?;
    let m = cp.field().conductor();
    if !unit_group_is_cyclic(m) {
        return Err(KTheoryError::UnsupportedConductor(m));
    }
    let r = z.dim();
    let non_split = |reason: String| KTheoryError::NonSplitBlock { suggested_conductor: suggested_conductor(cp), reason };
    let mut found = None;
    for p in candidate_primes(m, cp.order(), r).take(PRIMES_TRIED) {
        let mut rng = ChaCha8Rng::seed_from_u64(p ^ ((r as u64) << 32));
        match attempt(&z, p, &mut rng) {
            Attempt::FrobeniusWitness => {
                return Err(non_split(format!("Frobenius moves an element of the center modulo {p}")));
            }
            Attempt::Found(ids) if verify(&z, &ids) => {
                found = Some((p, ids));
                break;
            }
            _ => {}
        }
    }
    let Some((prime, ids)) = found else {
        return Err(non_split(format!("no lifted idempotent system verified over {PRIMES_TRIED} inert primes")));
    };
    let order = Rational::from_integer((cp.order() as i64).into());
    let mut blocks = Vec::with_capacity(ids.len());
    for e in &ids {
        let x = z.to_algebra(e);
        let dim = x.coeff(0).as_rational().map(|c| c * &order).filter(|d| d.is_integer() && d > &Rational::from_integer(0.into()));
        let dim = dim.and_then(|d| d.to_integer().to_usize()).ok_or_else(|| non_split("block dimension is not a positive integer".into()))?;
        let n = (dim as f64).sqrt().round() as usize;
        if n * n != dim {
            return Err(non_split(format!("a simple component has dimension {dim}, not a square")));
        }
        blocks.push((dim, n, x));
    }
    blocks.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| cmp_desc(&a.2, &b.2)));
    Ok(SemisimpleDecomposition {
        algebra: cp.clone(),
        dims: blocks.iter().map(|b| b.0).collect(),
        sizes: blocks.iter().map(|b| b.1).collect(),
        idempotents: blocks.into_iter().map(|b| b.2).collect(),
        center_dim: r,
        prime,
    })
}

fn cmp_desc(x: &CPElement, y: &CPElement) -> Ordering {
    for (a, b) in x.coeffs().iter().zip(y.coeffs()) {
        let o = b.cmp_coefficients(a);
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::build_level;
    use crate::crossed::tests::{example_c, galois_twist};
    use crate::exact::rational::rat;
    use crate::group::{FiniteGroup, Subgroup};
    use crate::hecke::HeckeInstance;

    fn group_algebra(n: usize, m: u64) -> Arc<CrossedProduct> {
        let g = FiniteGroup::cyclic(n);
        let inst = HeckeInstance::plain(&g, &CyclotomicField::new(m).unwrap());
        build_level(&inst, &Subgroup::trivial(&g)).unwrap()
    }

    #[test]
    fn gram_determinants() {
        let cert = certify_semisimple(&group_algebra(2, 1)).unwrap();
        assert_eq!(cert.gram_det[0], "4/1");
        let c = example_c();
        let cp = build_level(&c, &Subgroup::trivial(c.group())).unwrap();
        assert_eq!(certify_semisimple(&cp).unwrap().gram_det[0], "-4/1");
        let (inst, k) = galois_twist();
        let tw = build_level(&inst, &k).unwrap();
        let cert = certify_semisimple(&tw).unwrap();
        assert_eq!((cert.over.as_str(), cert.size), ("Q", 4));
        assert_eq!(certify_semisimple(&group_algebra(1, 1)).unwrap().gram_det[0], "1/1");
    }

    #[test]
    fn z4_over_q_zeta4_splits_into_four() {
        let cp = group_algebra(4, 4);
        let dec = block_decompose(&cp).unwrap();
        assert_eq!(dec.dims, vec![1; 4]);
        // trivial character first
        let quarter = cp.field().from_rational(&rat(1, 4));
        assert!(dec.idempotents[0].coeffs().iter().all(|c| c == &quarter));
        for e in &dec.idempotents {
            assert!(crate::crossed::LevelEmbedding::is_central_idempotent(e));
        }
        assert_eq!(dec.k0_class_of(&cp.one()).unwrap(), vec![1; 4]);
    }

    #[test]
    fn example_c_over_q_is_not_split() {
        let c = example_c();
        let cp = build_level(&c, &Subgroup::trivial(c.group())).unwrap();
        match block_decompose(&cp) {
            Err(KTheoryError::NonSplitBlock { suggested_conductor, .. }) => assert_eq!(suggested_conductor, 4),
            other => panic!("expected a non-split block, got {other:?}"),
        }
        let q4 = CyclotomicField::new(4).unwrap();
        let n = Subgroup::new(c.group(), [0, 2]).unwrap();
        let omega = crate::group::NormalCharacter::new(&n, &q4, &[(0, q4.one()), (2, q4.from_int(-1))]).unwrap();
        let inst = HeckeInstance::new(omega, crate::group::RhoAction::trivial(c.group(), &q4)).unwrap();
        let dec = block_decompose(&build_level(&inst, &Subgroup::trivial(c.group())).unwrap()).unwrap();
        assert_eq!(dec.dims, vec![1, 1]);
    }

    #[test]
    fn q_z3_has_a_nonsplit_block() {
        match block_decompose(&group_algebra(3, 1)) {
            Err(KTheoryError::NonSplitBlock { suggested_conductor, .. }) => assert_eq!(suggested_conductor, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn s3_has_a_matrix_block() {
        let (g, _) = FiniteGroup::symmetric(3);
        let inst = HeckeInstance::plain(&g, &CyclotomicField::rationals());
        let cp = build_level(&inst, &Subgroup::trivial(&g)).unwrap();
        let dec = block_decompose(&cp).unwrap();
        assert_eq!(dec.dims, vec![1, 1, 4]);
        assert_eq!(dec.sizes, vec![1, 1, 2]);
        assert_eq!(dec.k0_class_of(&cp.one()).unwrap(), vec![1, 1, 2]);
        let back = SemisimpleDecomposition::from_summary(&cp, &dec.summary()).unwrap();
        assert_eq!(back.summary(), dec.summary());
        let mut broken = dec.summary();
        broken.idempotents.swap(0, 2);
        assert!(SemisimpleDecomposition::from_summary(&cp, &broken).is_err());
        broken = dec.summary();
        broken.idempotents[0][1] = vec!["1/2".into()];
        assert!(SemisimpleDecomposition::from_summary(&cp, &broken).is_err());
    }

    #[test]
    fn averaging_idempotent_class() {
        let g = FiniteGroup::cyclic(3);
        let f = CyclotomicField::new(3).unwrap();
        let inst = HeckeInstance::plain(&g, &f);
        let cp = build_level(&inst, &Subgroup::trivial(&g)).unwrap();
        let dec = block_decompose(&cp).unwrap();
        let third = f.from_rational(&rat(1, 3));
        let avg = cp.element(vec![third.clone(), third.clone(), third]);
        assert_eq!(dec.k0_class_of(&avg).unwrap(), vec![1, 0, 0]);
        assert!(matches!(dec.k0_class_of(&cp.basis_element(1)), Err(KTheoryError::NotIdempotent(_))));
    }

    #[test]
    fn twisted_algebras_are_refused() {
        let (inst, k) = galois_twist();
        let tw = build_level(&inst, &k).unwrap();
        assert!(matches!(block_decompose(&tw), Err(KTheoryError::SemilinearAlgebra)));
    }

    #[test]
    fn noncyclic_conductor_is_refused() {
        assert!(matches!(block_decompose(&group_algebra(2, 8)), Err(KTheoryError::UnsupportedConductor(8))));
    }
}
