//! Crossed products `F∗D` with cocycle `w` and action `c`, built from a normal level of a
//! Hecke instance.
//!
//! Multiplication follows `b_{d₁}·b_{d₂} = w(d₁,d₂)·b_{d₁d₂}` and `b_d·r = c_d(r)·b_d`, so
//! `(r₁b_{d₁})(r₂b_{d₂}) = r₁·c_{d₁}(r₂)·w(d₁,d₂)·b_{d₁d₂}`.

mod embed;
mod maschke;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exact::rational::Rational;
use crate::exact::{CyclotomicField, FieldAut, FieldElement, FieldElementRepr};
use crate::group::{quotient, Elem, FiniteGroup, GroupError, GroupHom, Subgroup};
use crate::hecke::{convolve, HeckeElement, HeckeError, HeckeInstance};

pub use embed::{embed_level, LevelEmbedding};
pub use maschke::{maschke_section, MaschkeReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrossedError {
    #[error("level is not normal: conjugating {n} by {g} leaves it")]
    NotNormal { g: Elem, n: Elem },
    #[error("level is not in P: {0}")]
    LevelNotAdmissibleClass(String),
    #[error("cocycle is ill-defined at ({d1}, {d2})")]
    WellDefinednessFailure { d1: Elem, d2: Elem },
    #[error("elements have different parents")]
    ParentMismatch,
    #[error("levels are not nested")]
    NotNested,
    #[error("invalid section: {0}")]
    BadSection(String),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
}

impl From<GroupError> for CrossedError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::NotNormal { g, n } => CrossedError::NotNormal { g, n },
            other => CrossedError::Hecke(HeckeError::Group(other)),
        }
    }
}

/// `F∗D` for `D = G/NK`, together with the Hecke data it was built from.
pub struct CrossedProduct {
    inst: Arc<HeckeInstance>,
    level: Subgroup,
    d: FiniteGroup,
    projection: GroupHom,
    section: Vec<Elem>,
    w: Vec<FieldElement>,
    c: Vec<FieldAut>,
    basis: Vec<HeckeElement>,
    mu_pr: Rational,
    id: String,
}

impl fmt::Debug for CrossedProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CrossedProduct(|D| = {}, {}, id {})", self.d.order(), self.field(), self.id)
    }
}

/// Builds the crossed product for a normal level `K ∈ P` with the identity-first section.
pub fn build_level(inst: &Arc<HeckeInstance>, level: &Subgroup) -> Result<Arc<CrossedProduct>, CrossedError> {
    let nk = inst.n().product(level).map_err(CrossedError::from)?;
    level.require_normal()?;
    let section = quotient(inst.group(), &nk)?.transversal;
    build_level_with_section(inst, level, &section)
}

/// As [`build_level`] with an explicit section `d ↦ σ(d)`, indexed by the quotient labels.
pub fn build_level_with_section(
    inst: &Arc<HeckeInstance>,
    level: &Subgroup,
    section: &[Elem],
) -> Result<Arc<CrossedProduct>, CrossedError> {
    level.require_normal()?;
    inst.check_in_p(level).map_err(|e| match e {
        HeckeError::LevelNotAdmissibleClass(m) => CrossedError::LevelNotAdmissibleClass(m),
        other => other.into(),
    })?;
    let g = inst.group();
    let nk = inst.n().product(level)?;
    let q = quotient(g, &nk)?;
    let d = q.group.clone();
    let projection = q.projection.clone();
    if section.len() != d.order() || section.first() != Some(&0) {
        return Err(CrossedError::BadSection("a section must start with the identity".into()));
    }
    if let Some(x) = (0..d.order()).find(|&x| projection.apply(section[x]) != x) {
        return Err(CrossedError::BadSection(format!("σ({x}) lies over another coset")));
    }
    let field = inst.field().clone();
    let mu_pr = inst.mu_pr(level);
    let n_members = inst.n().members();

    // ω-value of the N-part of x ∈ NK; every factorization must agree
    let omega_of = |x: Elem| -> Option<FieldElement> {
        let mut found: Option<FieldElement> = None;
        for &n in n_members {
            if level.contains(g.mul(g.inv(n), x)) {
                let v = inst.omega().value(n);
                match &found {
                    Some(prev) if prev != v => return None,
                    Some(_) => {}
                    None => found = Some(v.clone()),
                }
            }
        }
        found
    };

    let m = d.order();
    let mut w = Vec::with_capacity(m * m);
    for d1 in 0..m {
        for d2 in 0..m {
            let x = g.mul(g.mul(section[d.mul(d1, d2)], g.inv(section[d2])), g.inv(section[d1]));
            let v = omega_of(x).ok_or(CrossedError::WellDefinednessFailure { d1, d2 })?;
            assert!(v.root_order().is_some(), "cocycle values are roots of unity");
            w.push(v);
        }
    }
    let c: Vec<FieldAut> = section.iter().map(|&s| inst.rho().aut(s).clone()).collect();

    // b_d(n k σ(d)) = ω(n) / μ(pr K)
    let inv_mu = mu_pr.recip();
    let basis = (0..m)
        .map(|dd| {
            let mut values = vec![field.zero(); g.order()];
            for &n in n_members {
                let v = inst.omega().value(n).scale(&inv_mu);
                for &k in level.members() {
                    values[g.mul(g.mul(n, k), section[dd])] = v.clone();
                }
            }
            HeckeElement::from_table(inst, values, level)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut h = Sha256::new();
    h.update(inst.id().as_bytes());
    for &x in level.members().iter().chain(section) {
        h.update((x as u32).to_le_bytes());
        h.update(b";");
    }
    let id = hex::encode(&h.finalize()[..8]);
    Ok(Arc::new(CrossedProduct { inst: inst.clone(), level: level.clone(), d, projection, section: section.to_vec(), w, c, basis, mu_pr, id }))
}

impl CrossedProduct {
    /// A crossed product given directly by its tables, with no Hecke data behind it.
    pub fn from_tables(d: &FiniteGroup, field: &CyclotomicField, w: Vec<FieldElement>, c: Vec<FieldAut>) -> Arc<Self> {
        let inst = HeckeInstance::plain(d, field);
        let level = Subgroup::trivial(d);
        assert_eq!(w.len(), d.order() * d.order());
        assert_eq!(c.len(), d.order());
        let mut h = Sha256::new();
        h.update(b"tables");
        h.update(inst.id().as_bytes());
        for v in &w {
            h.update(v.to_strings().join(",").as_bytes());
        }
        for a in &c {
            h.update(a.exponent().to_le_bytes());
        }
        let id = hex::encode(&h.finalize()[..8]);
        Arc::new(CrossedProduct {
            mu_pr: inst.mu_pr(&level),
            inst,
            level,
            d: d.clone(),
            projection: GroupHom::identity(d),
            section: d.elements().collect(),
            w,
            c,
            basis: Vec::new(),
            id,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn instance(&self) -> &Arc<HeckeInstance> {
        &self.inst
    }

    pub fn level(&self) -> &Subgroup {
        &self.level
    }

    pub fn d(&self) -> &FiniteGroup {
        &self.d
    }

    pub fn order(&self) -> usize {
        self.d.order()
    }

    pub fn field(&self) -> &CyclotomicField {
        self.inst.field()
    }

    pub fn projection(&self) -> &GroupHom {
        &self.projection
    }

    pub fn section(&self) -> &[Elem] {
        &self.section
    }

    pub fn w(&self, d1: Elem, d2: Elem) -> &FieldElement {
        &self.w[d1 * self.d.order() + d2]
    }

    pub fn c(&self, d: Elem) -> &FieldAut {
        &self.c[d]
    }

    /// The action `c` is trivial, i.e. the algebra is `F`-linear.
    pub fn is_linear(&self) -> bool {
        self.c.iter().all(|a| a.is_identity())
    }

    /// `b_d` as a Hecke function (empty for crossed products built from tables).
    pub fn basis_functions(&self) -> &[HeckeElement] {
        &self.basis
    }

    pub fn mu_pr(&self) -> &Rational {
        &self.mu_pr
    }

    pub fn zero(self: &Arc<Self>) -> CPElement {
        CPElement { parent: self.clone(), coeffs: vec![self.field().zero(); self.order()] }
    }

    pub fn one(self: &Arc<Self>) -> CPElement {
        self.basis_element(0)
    }

    pub fn basis_element(self: &Arc<Self>, d: Elem) -> CPElement {
        self.monomial(self.field().one(), d)
    }

    /// `r·b_d`.
    pub fn monomial(self: &Arc<Self>, r: FieldElement, d: Elem) -> CPElement {
        let mut x = self.zero();
        x.coeffs[d] = r;
        x
    }

    pub fn element(self: &Arc<Self>, coeffs: Vec<FieldElement>) -> CPElement {
        assert_eq!(coeffs.len(), self.order());
        CPElement { parent: self.clone(), coeffs }
    }

    /// `s = Σ_d μ(pr K)·s(σ(d))·b_d`, checked by reassembling the table.
    pub fn from_hecke(self: &Arc<Self>, s: &HeckeElement) -> Result<CPElement, CrossedError> {
        if !s.instance().same_as(&self.inst) {
            return Err(CrossedError::ParentMismatch);
        }
        if !s.is_admissible_for(&self.level) {
            return Err(CrossedError::Hecke(HeckeError::NotAdmissible("element is not in the level algebra".into())));
        }
        let coeffs = self.section.iter().map(|&x| s.value(x).scale(&self.mu_pr)).collect();
        let x = self.element(coeffs);
        debug_assert!(x.to_hecke().map(|t| &t == s).unwrap_or(false));
        Ok(x)
    }

    /// `b_d⁻¹ = c_d⁻¹(w(d, d⁻¹)⁻¹)·b_{d⁻¹}`.
    pub fn basis_inverse(self: &Arc<Self>, d: Elem) -> CPElement {
        let di = self.d.inv(d);
        let r = self.c[d].inverse().apply_unchecked(&self.w(d, di).inv().expect("cocycle values are units"));
        self.monomial(r, di)
    }

    pub fn w_table_strings(&self) -> Vec<Vec<Vec<String>>> {
        (0..self.order()).map(|a| (0..self.order()).map(|b| self.w(a, b).to_strings()).collect()).collect()
    }

    pub fn c_exponents(&self) -> Vec<u64> {
        self.c.iter().map(|a| a.exponent()).collect()
    }
}

/// `Σ_d r_d b_d`.
#[derive(Clone)]
pub struct CPElement {
    parent: Arc<CrossedProduct>,
    coeffs: Vec<FieldElement>,
}

impl PartialEq for CPElement {
    fn eq(&self, other: &Self) -> bool {
        self.parent.id == other.parent.id && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for CPElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(d, c)| format!("({c})b{d}")).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl CPElement {
    pub fn parent(&self) -> &Arc<CrossedProduct> {
        &self.parent
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, d: Elem) -> &FieldElement {
        &self.coeffs[d]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> CPElement {
        assert!(self.parent.id == other.parent.id, "parent mismatch");
        CPElement { parent: self.parent.clone(), coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> CPElement {
        assert!(self.parent.id == other.parent.id, "parent mismatch");
        CPElement { parent: self.parent.clone(), coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    /// Left scalar multiplication `r·x`.
    pub fn scalar(&self, r: &FieldElement) -> CPElement {
        CPElement { parent: self.parent.clone(), coeffs: self.coeffs.iter().map(|a| r * a).collect() }
    }

    pub fn scale(&self, r: &Rational) -> CPElement {
        CPElement { parent: self.parent.clone(), coeffs: self.coeffs.iter().map(|a| a.scale(r)).collect() }
    }

    /// The Hecke function `Σ_d r_d·b_d`.
    pub fn to_hecke(&self) -> Result<HeckeElement, CrossedError> {
        let p = &self.parent;
        if p.basis.is_empty() {
            return Err(CrossedError::ParentMismatch);
        }
        let g = p.inst.group();
        let mut values = vec![p.field().zero(); g.order()];
        for (d, r) in self.coeffs.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            for (x, v) in p.basis[d].values().iter().enumerate() {
                if !v.is_zero() {
                    values[x] = &values[x] + &(r * v);
                }
            }
        }
        Ok(HeckeElement::from_table(&p.inst, values, &p.level)?)
    }

    pub fn to_repr(&self) -> CPElementRepr {
        CPElementRepr { parent: self.parent.id.clone(), coeffs: self.coeffs.iter().map(FieldElementRepr::from).collect() }
    }

    pub fn from_repr(parent: &Arc<CrossedProduct>, repr: &CPElementRepr) -> Result<Self, CrossedError> {
        if repr.parent != parent.id || repr.coeffs.len() != parent.order() {
            return Err(CrossedError::ParentMismatch);
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| c.decode().map_err(|e| CrossedError::Hecke(HeckeError::FieldMismatch(e.to_string()))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CPElement { parent: parent.clone(), coeffs })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CPElementRepr {
    pub parent: String,
    pub coeffs: Vec<FieldElementRepr>,
}

/// `(Σ r_a b_a)(Σ s_b b_b) = Σ r_a c_a(s_b) w(a,b) b_{ab}`.
pub fn cp_mul(x: &CPElement, y: &CPElement) -> Result<CPElement, CrossedError> {
    if x.parent.id != y.parent.id {
        return Err(CrossedError::ParentMismatch);
    }
    let p = &x.parent;
    let d = &p.d;
    let mut out = vec![p.field().zero(); d.order()];
    for (a, ra) in x.coeffs.iter().enumerate() {
        if ra.is_zero() {
            continue;
        }
        let ca = &p.c[a];
        for (b, sb) in y.coeffs.iter().enumerate() {
            if sb.is_zero() {
                continue;
            }
            let term = &(ra * &ca.apply_unchecked(sb)) * p.w(a, b);
            out[d.mul(a, b)] += &term;
        }
    }
    Ok(CPElement { parent: p.clone(), coeffs: out })
}

/// Outcome of comparing crossed-product multiplication with Hecke convolution.
#[derive(Clone, Debug, Default, Serialize)]
pub struct IsoReport {
    pub pairs_checked: usize,
    pub mismatches: Vec<IsoMismatch>,
    /// Every level-`K` function expands uniquely in the `b_d`.
    pub basis_ok: bool,
    /// The rerun under a permuted section, when requested.
    pub permuted: Option<Box<IsoReport>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoMismatch {
    pub d1: Elem,
    pub d2: Elem,
    pub scalar: String,
    pub detail: String,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.basis_ok && self.mismatches.is_empty() && self.permuted.as_ref().is_none_or(|p| p.passed())
    }
}

/// For every pair `(d₁, d₂)` and every scalar `r` in the power basis, compares
/// `convolve(b_{d₁}, r·b_{d₂})` expanded in the `b_d` with `cp_mul`.
pub fn iso_check(cp: &Arc<CrossedProduct>) -> IsoReport {
    let field = cp.field();
    let mut report = IsoReport { basis_ok: basis_property(cp), ..Default::default() };
    let scalars: Vec<FieldElement> = if cp.is_linear() {
        vec![field.one()]
    } else {
        (0..field.degree() as i64).map(|j| field.zeta_pow(j)).collect()
    };
    for d1 in 0..cp.order() {
        for d2 in 0..cp.order() {
            for r in &scalars {
                report.pairs_checked += 1;
                let left = &cp.basis[d1];
                let right = cp.basis[d2].scalar_act(r).expect("same field");
                let expected = cp_mul(&cp.basis_element(d1), &cp.monomial(r.clone(), d2)).expect("same parent");
                let outcome = convolve(left, &right).map_err(CrossedError::from).and_then(|h| cp.from_hecke(&h));
                match outcome {
                    Ok(got) if got == expected => {}
                    Ok(got) => report.mismatches.push(IsoMismatch {
                        d1,
                        d2,
                        scalar: r.to_string(),
                        detail: format!("convolution gives {got:?}, crossed product gives {expected:?}"),
                    }),
                    Err(e) => report.mismatches.push(IsoMismatch { d1, d2, scalar: r.to_string(), detail: e.to_string() }),
                }
            }
        }
    }
    report
}

/// [`iso_check`] followed by a rerun with the section `σ′(d) = σ(d)·x_d`, where `x_d` is the
/// largest label of `NK` keeping the coset (identity kept for `e`).
pub fn iso_check_with_permuted_section(cp: &Arc<CrossedProduct>) -> Result<IsoReport, CrossedError> {
    let mut report = iso_check(cp);
    let g = cp.inst.group();
    let nk = cp.inst.n().product(&cp.level)?;
    let shift = *nk.members().last().expect("nonempty");
    let section: Vec<Elem> = cp.section.iter().enumerate().map(|(d, &s)| if d == 0 { s } else { g.mul(s, shift) }).collect();
    let other = build_level_with_section(&cp.inst, &cp.level, &section)?;
    report.permuted = Some(Box::new(iso_check(&other)));
    Ok(report)
}

/// The `b_d` have disjoint supports, `b_d(σ(d)) = 1/μ(pr K)`, and their number equals the
/// dimension of the level algebra (the count of non-degenerate double-coset orbits).
fn basis_property(cp: &CrossedProduct) -> bool {
    let g = cp.inst.group();
    let inv_mu = cp.field().from_rational(&cp.mu_pr.recip());
    let mut covered = vec![false; g.order()];
    for (d, b) in cp.basis.iter().enumerate() {
        if b.value(cp.section[d]) != &inv_mu {
            return false;
        }
        for x in b.support() {
            if covered[x] {
                return false;
            }
            covered[x] = true;
        }
    }
    cp.inst.level_orbits(&cp.level).free_reps().len() == cp.order()
}

/// Checks `(b_a b_b) b_c = b_a (b_b b_c)` on all basis triples; returns the first failure.
pub fn associativity_sweep(cp: &Arc<CrossedProduct>) -> Option<(Elem, Elem, Elem)> {
    let m = cp.order();
    let b: Vec<CPElement> = (0..m).map(|d| cp.basis_element(d)).collect();
    let prods: Vec<Vec<CPElement>> = (0..m).map(|i| (0..m).map(|j| cp_mul(&b[i], &b[j]).unwrap()).collect()).collect();
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let lhs = cp_mul(&prods[i][j], &b[k]).unwrap();
                let rhs = cp_mul(&b[i], &prods[j][k]).unwrap();
                if lhs != rhs {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::group::{NormalCharacter, RhoAction};

    pub(crate) fn example_c() -> Arc<HeckeInstance> {
        let g = FiniteGroup::cyclic(4);
        let q = CyclotomicField::rationals();
        let n = Subgroup::new(&g, [0, 2]).unwrap();
        let omega = NormalCharacter::new(&n, &q, &[(0, q.one()), (2, q.from_int(-1))]).unwrap();
        HeckeInstance::new(omega, RhoAction::trivial(&g, &q)).unwrap()
    }

    pub(crate) fn galois_twist() -> (Arc<HeckeInstance>, Subgroup) {
        let g = FiniteGroup::cyclic(4);
        let f = CyclotomicField::new(4).unwrap();
        let rho = RhoAction::from_exponents(&g, &f, &[1, 3, 1, 3]).unwrap();
        let inst = HeckeInstance::new(NormalCharacter::trivial(&Subgroup::trivial(&g), &f), rho).unwrap();
        let k = Subgroup::new(&g, [0, 2]).unwrap();
        (inst, k)
    }

    #[test]
    fn example_c_cocycle() {
        let inst = example_c();
        let cp = build_level(&inst, &Subgroup::trivial(inst.group())).unwrap();
        assert_eq!(cp.order(), 2);
        let q = cp.field();
        assert_eq!(cp.w(1, 1), &q.from_int(-1));
        assert!(cp.w(0, 1).is_one() && cp.w(1, 0).is_one() && cp.w(0, 0).is_one());
        let b1 = cp.basis_element(1);
        assert_eq!(cp_mul(&b1, &b1).unwrap(), cp.basis_element(0).scalar(&q.from_int(-1)));
        // direct convolution of the Hecke functions agrees
        let direct = convolve(&cp.basis_functions()[1], &cp.basis_functions()[1]).unwrap();
        assert_eq!(direct, cp.basis_functions()[0].scalar_act(&q.from_int(-1)).unwrap());
        assert!(iso_check_with_permuted_section(&cp).unwrap().passed());
    }

    #[test]
    fn plain_group_algebra() {
        let g = FiniteGroup::cyclic(5);
        let inst = HeckeInstance::plain(&g, &CyclotomicField::rationals());
        let cp = build_level(&inst, &Subgroup::trivial(&g)).unwrap();
        assert!((0..25).all(|i| cp.w[i].is_one()));
        assert!(cp.is_linear());
        let report = iso_check(&cp);
        assert_eq!(report.pairs_checked, 25);
        assert!(report.passed());
        assert_eq!(associativity_sweep(&cp), None);
    }

    #[test]
    fn galois_twist_instance() {
        let (inst, k) = galois_twist();
        let cp = build_level(&inst, &k).unwrap();
        let f = cp.field().clone();
        let z = f.zeta_pow(1);
        let lhs = cp_mul(&cp.basis_element(1), &cp.monomial(z.clone(), 0)).unwrap();
        assert_eq!(lhs, cp.monomial(-&z, 1));
        assert!(iso_check_with_permuted_section(&cp).unwrap().passed());
    }

    #[test]
    fn cyclic_level_quotient() {
        let g = FiniteGroup::cyclic(9);
        let inst = HeckeInstance::plain(&g, &CyclotomicField::rationals());
        let k = Subgroup::new(&g, [0, 3, 6]).unwrap();
        let cp = build_level(&inst, &k).unwrap();
        assert_eq!(cp.order(), 3);
        assert!(cp.w.iter().all(|v| v.is_one()));
        assert!(iso_check(&cp).passed());
    }

    #[test]
    fn errors() {
        let inst = example_c();
        assert!(matches!(build_level(&inst, inst.n()), Err(CrossedError::LevelNotAdmissibleClass(_))));
        let (s3, _) = FiniteGroup::symmetric(3);
        let plain = HeckeInstance::plain(&s3, &CyclotomicField::rationals());
        let not_normal = Subgroup::new(&s3, [0, 1]).unwrap();
        assert!(matches!(build_level(&plain, &not_normal), Err(CrossedError::NotNormal { .. })));
        let other = build_level(&plain, &Subgroup::trivial(&s3)).unwrap();
        let cp = build_level(&inst, &Subgroup::trivial(inst.group())).unwrap();
        assert_eq!(cp_mul(&cp.one(), &other.one()).unwrap_err(), CrossedError::ParentMismatch);
    }

    #[test]
    fn basis_inverses_and_repr() {
        let inst = example_c();
        let cp = build_level(&inst, &Subgroup::trivial(inst.group())).unwrap();
        for d in 0..2 {
            let b = cp.basis_element(d);
            let bi = cp.basis_inverse(d);
            assert_eq!(cp_mul(&b, &bi).unwrap(), cp.one());
            assert_eq!(cp_mul(&bi, &b).unwrap(), cp.one());
        }
        let x = cp.monomial(cp.field().from_int(7), 1).add(&cp.one());
        let text = serde_json::to_string(&x.to_repr()).unwrap();
        assert_eq!(CPElement::from_repr(&cp, &serde_json::from_str(&text).unwrap()).unwrap(), x);
    }
}
