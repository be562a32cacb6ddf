//! The covirtually-ℤ group `G = E ⋊_φ ℤ` at finite level: the automorphism `φ` of the level
//! algebras, twisted Laurent rings over them, direct convolution on `G`, and the isomorphism
//! `Ξ` between the two.
//!
//! `G` is never materialized. A function on `G` is a finite family of slices, slice `m` being
//! `l ↦ x(l tᵐ)`. The group law is `(l tᵐ)(l′ t^{m′}) = l φᵐ(l′) t^{m+m′}` and `ρ(l tᵐ) = ρ(l) ρ_tᵐ`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::crossed::{cp_mul, CPElement, CrossedError, CrossedProduct};
use crate::exact::{FieldAut, FieldElement, FieldElementRepr};
use crate::group::{quotient, Elem, GroupError, GroupHom, Subgroup, TowerSpec};
use crate::hecke::{HeckeElement, HeckeError, HeckeInstance};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("the tower carries no twisting automorphism")]
    NoTwistConfigured,
    #[error("Laurent elements over different base algebras")]
    BaseMismatch,
    #[error("element does not belong to this covirtually-Z model")]
    IncompatibleInstance,
    #[error("elements belong to different models")]
    InstanceMismatch,
    #[error("level is not invariant under the twist")]
    LevelNotInvariant,
    #[error(transparent)]
    Crossed(#[from] CrossedError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `E`, its Hecke data, the twist `φ` and the coefficient action `ρ_t` of the generator.
#[derive(Debug)]
pub struct TwistModel {
    inst: Arc<HeckeInstance>,
    phi: GroupHom,
    phi_inv: GroupHom,
    rho_t: FieldAut,
}

impl TwistModel {
    /// Uses the finest group of the tower as `E`, with `μ(E/N) = 1`.
    pub fn from_tower(tower: &TowerSpec) -> Result<Arc<Self>, LaurentError> {
        let phi = tower.twist().ok_or(LaurentError::NoTwistConfigured)?.clone();
        let inst = HeckeInstance::new(tower.omega().clone(), tower.rho().clone())?;
        Self::new(&inst, phi, tower.twist_rho())
    }

    pub fn new(inst: &Arc<HeckeInstance>, phi: GroupHom, rho_t: FieldAut) -> Result<Arc<Self>, LaurentError> {
        let g = inst.group();
        if phi.source() != g || phi.target() != g {
            return Err(LaurentError::IncompatibleInstance);
        }
        let phi_inv = phi.inverse().ok_or(LaurentError::IncompatibleInstance)?;
        if phi.image_of(inst.n()) != *inst.n()
            || inst.n().members().iter().any(|&n| inst.omega().value(phi.apply(n)) != inst.omega().value(n))
            || g.elements().any(|x| inst.rho().aut(phi.apply(x)) != inst.rho().aut(x))
        {
            return Err(LaurentError::IncompatibleInstance);
        }
        Ok(Arc::new(TwistModel { inst: inst.clone(), phi, phi_inv, rho_t }))
    }

    pub fn instance(&self) -> &Arc<HeckeInstance> {
        &self.inst
    }

    pub fn phi(&self) -> &GroupHom {
        &self.phi
    }

    pub fn rho_t(&self) -> &FieldAut {
        &self.rho_t
    }

    /// `φᵐ` on `E`, any sign of `m`.
    pub fn phi_pow(&self, m: i64) -> GroupHom {
        let base = if m >= 0 { &self.phi } else { &self.phi_inv };
        let mut out = GroupHom::identity(self.inst.group());
        for _ in 0..m.unsigned_abs() {
            out = base.compose(&out);
        }
        out
    }

    fn rho_t_pow(&self, m: i64) -> FieldAut {
        let base = if m >= 0 { self.rho_t.clone() } else { self.rho_t.inverse() };
        let mut out = FieldAut::identity(self.inst.field());
        for _ in 0..m.unsigned_abs() {
            out = base.compose(&out);
        }
        out
    }

    pub fn is_invariant(&self, level: &Subgroup) -> bool {
        self.phi.image_of(level) == *level
    }

    fn check(&self, s: &HeckeElement) -> Result<(), LaurentError> {
        if !s.instance().same_as(&self.inst) {
            return Err(LaurentError::IncompatibleInstance);
        }
        if !self.is_invariant(s.level()) {
            return Err(LaurentError::LevelNotInvariant);
        }
        Ok(())
    }
}

/// `φ(s)(l) = ρ_t(s(φ⁻¹(l)))`, the action of conjugation by `t`.
pub fn phi_hecke(model: &TwistModel, s: &HeckeElement) -> Result<HeckeElement, LaurentError> {
    phi_hecke_pow(model, s, 1)
}

/// `φᵐ(s)(l) = ρ_tᵐ(s(φ⁻ᵐ(l)))`.
pub fn phi_hecke_pow(model: &TwistModel, s: &HeckeElement, m: i64) -> Result<HeckeElement, LaurentError> {
    model.check(s)?;
    let back = model.phi_pow(-m);
    let a = model.rho_t_pow(m);
    let values = model.inst.group().elements().map(|l| a.apply_unchecked(s.value(back.apply(l)))).collect();
    Ok(HeckeElement::from_table(&model.inst, values, s.level())?)
}

/// `φ` restricted to a level algebra, in crossed-product coordinates; `F`-semilinear via `ρ_t`.
#[derive(Clone)]
pub struct LevelAutomorphism {
    model: Arc<TwistModel>,
    base: Arc<CrossedProduct>,
    images: Vec<CPElement>,
    inverse_images: Vec<CPElement>,
}

impl fmt::Debug for LevelAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LevelAutomorphism({:?})", self.base)
    }
}

impl LevelAutomorphism {
    pub fn new(model: &Arc<TwistModel>, base: &Arc<CrossedProduct>) -> Result<Self, LaurentError> {
        if !base.instance().same_as(&model.inst) {
            return Err(LaurentError::IncompatibleInstance);
        }
        if !model.is_invariant(base.level()) {
            return Err(LaurentError::LevelNotInvariant);
        }
        let map = |m: i64| -> Result<Vec<CPElement>, LaurentError> {
            base.basis_functions()
                .iter()
                .map(|b| Ok(base.from_hecke(&phi_hecke_pow(model, b, m)?)?))
                .collect()
        };
        Ok(LevelAutomorphism { model: model.clone(), base: base.clone(), images: map(1)?, inverse_images: map(-1)? })
    }

    pub fn base(&self) -> &Arc<CrossedProduct> {
        &self.base
    }

    pub fn model(&self) -> &Arc<TwistModel> {
        &self.model
    }

    pub fn image_of_basis(&self, d: Elem) -> &CPElement {
        &self.images[d]
    }

    fn apply_with(&self, x: &CPElement, images: &[CPElement], a: &FieldAut) -> CPElement {
        let mut out = self.base.zero();
        for (d, r) in x.coeffs().iter().enumerate() {
            if !r.is_zero() {
                out = out.add(&images[d].scalar(&a.apply_unchecked(r)));
            }
        }
        out
    }

    pub fn apply(&self, x: &CPElement) -> CPElement {
        self.apply_with(x, &self.images, &self.model.rho_t)
    }

    pub fn apply_inverse(&self, x: &CPElement) -> CPElement {
        self.apply_with(x, &self.inverse_images, &self.model.rho_t.inverse())
    }

    /// `αᵐ(x)`.
    pub fn pow(&self, x: &CPElement, m: i64) -> CPElement {
        let mut out = x.clone();
        for _ in 0..m.unsigned_abs() {
            out = if m >= 0 { self.apply(&out) } else { self.apply_inverse(&out) };
        }
        out
    }
}

/// `Σ aₙ tⁿ` with `aₙ` in a level algebra and `t a = α(a) t`.
#[derive(Clone)]
pub struct TwistedLaurentElement {
    alpha: Arc<LevelAutomorphism>,
    coeffs: BTreeMap<i64, CPElement>,
}

impl PartialEq for TwistedLaurentElement {
    fn eq(&self, other: &Self) -> bool {
        self.alpha.base.id() == other.alpha.base.id() && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for TwistedLaurentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().map(|(n, a)| format!("[{a:?}]t^{n}")).collect();
        write!(f, "{}", if terms.is_empty() { "0".to_string() } else { terms.join(" + ") })
    }
}

impl TwistedLaurentElement {
    pub fn zero(alpha: &Arc<LevelAutomorphism>) -> Self {
        TwistedLaurentElement { alpha: alpha.clone(), coeffs: BTreeMap::new() }
    }

    /// `a tⁿ`.
    pub fn monomial(alpha: &Arc<LevelAutomorphism>, a: CPElement, n: i64) -> Self {
        let mut x = Self::zero(alpha);
        x.insert(n, a);
        x
    }

    fn insert(&mut self, n: i64, a: CPElement) {
        if a.is_zero() {
            self.coeffs.remove(&n);
        } else {
            self.coeffs.insert(n, a);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, CPElement> {
        &self.coeffs
    }

    pub fn alpha(&self) -> &Arc<LevelAutomorphism> {
        &self.alpha
    }

    pub fn add(&self, other: &Self) -> Result<Self, LaurentError> {
        if self.alpha.base.id() != other.alpha.base.id() {
            return Err(LaurentError::BaseMismatch);
        }
        let mut out = self.clone();
        for (&n, a) in &other.coeffs {
            let sum = match out.coeffs.get(&n) {
                Some(b) => b.add(a),
                None => a.clone(),
            };
            out.insert(n, sum);
        }
        Ok(out)
    }
}

/// `(a tᵐ)(b tⁿ) = a·αᵐ(b)·t^{m+n}`, extended bilinearly.
pub fn laurent_mul(f: &TwistedLaurentElement, g: &TwistedLaurentElement) -> Result<TwistedLaurentElement, LaurentError> {
    if f.alpha.base.id() != g.alpha.base.id() || !Arc::ptr_eq(&f.alpha.model, &g.alpha.model) {
        return Err(LaurentError::BaseMismatch);
    }
    let mut out = TwistedLaurentElement::zero(&f.alpha);
    for (&m, a) in &f.coeffs {
        for (&n, b) in &g.coeffs {
            let term = cp_mul(a, &f.alpha.pow(b, m))?;
            let sum = match out.coeffs.get(&(m + n)) {
                Some(c) => c.add(&term),
                None => term,
            };
            out.insert(m + n, sum);
        }
    }
    Ok(out)
}

/// A finitely supported function on `E ⋊ ℤ`, stored slice by slice.
#[derive(Clone)]
pub struct CovirtZElement {
    model: Arc<TwistModel>,
    level: Subgroup,
    slices: BTreeMap<i64, Vec<FieldElement>>,
}

impl PartialEq for CovirtZElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.model, &other.model) && self.slices == other.slices
    }
}

impl fmt::Debug for CovirtZElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CovirtZElement{:?}", self.slices.iter().map(|(m, s)| (m, s.iter().map(|v| v.to_string()).collect::<Vec<_>>())).collect::<Vec<_>>())
    }
}

impl CovirtZElement {
    /// Builds an element from slices, each of which must be a Hecke element of level `K`.
    pub fn new(model: &Arc<TwistModel>, level: &Subgroup, slices: BTreeMap<i64, Vec<FieldElement>>) -> Result<Self, LaurentError> {
        if !model.is_invariant(level) {
            return Err(LaurentError::LevelNotInvariant);
        }
        let mut out = CovirtZElement { model: model.clone(), level: level.clone(), slices: BTreeMap::new() };
        for (m, values) in slices {
            let s = HeckeElement::from_table(&model.inst, values, level)?;
            if !s.is_zero() {
                out.slices.insert(m, s.values().to_vec());
            }
        }
        Ok(out)
    }

    pub fn slices(&self) -> &BTreeMap<i64, Vec<FieldElement>> {
        &self.slices
    }

    pub fn level(&self) -> &Subgroup {
        &self.level
    }

    /// `x(l tᵐ)`.
    pub fn value(&self, l: Elem, m: i64) -> FieldElement {
        self.slices.get(&m).map_or_else(|| self.model.inst.field().zero(), |s| s[l].clone())
    }

    pub fn to_repr(&self) -> CovirtZRepr {
        CovirtZRepr {
            level: self.level.members().to_vec(),
            slices: self.slices.iter().map(|(&m, s)| (m, s.iter().map(FieldElementRepr::from).collect())).collect(),
        }
    }

    pub fn from_repr(model: &Arc<TwistModel>, repr: &CovirtZRepr) -> Result<Self, LaurentError> {
        let level = Subgroup::new(model.inst.group(), repr.level.iter().copied())?;
        let mut slices = BTreeMap::new();
        for (m, values) in &repr.slices {
            let decoded = values
                .iter()
                .map(|v| v.decode().map_err(|e| LaurentError::Hecke(HeckeError::FieldMismatch(e.to_string()))))
                .collect::<Result<Vec<_>, _>>()?;
            slices.insert(*m, decoded);
        }
        Self::new(model, &level, slices)
    }
}

/// Wire form: level members and `(m, slice table)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CovirtZRepr {
    pub level: Vec<Elem>,
    pub slices: Vec<(i64, Vec<FieldElementRepr>)>,
}

/// The convolution on `G` with transversal `{t^{m′} l′}`, `l′` running over a transversal of
/// `E/NK`: for `g = l tᵐ`, `g g′ = l φ^{m+m′}(l′) t^{m+m′}` and `g′⁻¹ = l′⁻¹ t^{−m′}`.
pub fn direct_convolve(x: &CovirtZElement, y: &CovirtZElement) -> Result<CovirtZElement, LaurentError> {
    if !Arc::ptr_eq(&x.model, &y.model) {
        return Err(LaurentError::InstanceMismatch);
    }
    let model = &x.model;
    let inst = &model.inst;
    let e = inst.group();
    let level = x.level.intersect(&y.level);
    let nk = inst.n().product(&level)?;
    let transversal = quotient(e, &nk)?.transversal;
    let mu = inst.mu_pr(&level);
    let field = inst.field();
    let mut slices: BTreeMap<i64, Vec<FieldElement>> = BTreeMap::new();
    // y(g′⁻¹) lives in slice −m′, x(g g′) in slice m + m′, so the product lands in slice (m+m′) − m′
    for (&sx, xs) in &x.slices {
        let phi = model.phi_pow(sx);
        let a = model.rho_t_pow(sx);
        for (&sy, ys) in &y.slices {
            let m = sx + sy;
            let out = slices.entry(m).or_insert_with(|| vec![field.zero(); e.order()]);
            for l in e.elements() {
                let mut acc = field.zero();
                for &lp in &transversal {
                    let gg = e.mul(l, phi.apply(lp));
                    let left = &xs[gg];
                    if left.is_zero() {
                        continue;
                    }
                    let right = &ys[e.inv(lp)];
                    if right.is_zero() {
                        continue;
                    }
                    let twisted = inst.rho().act(gg, &a.apply_unchecked(right));
                    acc += &(left * &twisted);
                }
                out[l] += &acc.scale(&mu);
            }
        }
    }
    slices.retain(|_, s| s.iter().any(|v| !v.is_zero()));
    Ok(CovirtZElement { model: model.clone(), level, slices })
}

/// `Ξ(s tⁿ)(l tᵐ) = s(l)` if `m = n`, else `0`.
pub fn xi(f: &TwistedLaurentElement) -> Result<CovirtZElement, LaurentError> {
    let model = &f.alpha.model;
    let base = &f.alpha.base;
    let mut slices = BTreeMap::new();
    for (&n, a) in &f.coeffs {
        slices.insert(n, a.to_hecke()?.values().to_vec());
    }
    Ok(CovirtZElement { model: model.clone(), level: base.level().clone(), slices })
}

/// Inverse of [`xi`]: expands each slice in the base algebra's `b_d`.
pub fn xi_inv(x: &CovirtZElement, alpha: &Arc<LevelAutomorphism>) -> Result<TwistedLaurentElement, LaurentError> {
    if !Arc::ptr_eq(&x.model, &alpha.model) {
        return Err(LaurentError::IncompatibleInstance);
    }
    let base = &alpha.base;
    let mut out = TwistedLaurentElement::zero(alpha);
    for (&n, values) in &x.slices {
        let s = HeckeElement::from_table(&x.model.inst, values.clone(), base.level())
            .map_err(|_| LaurentError::IncompatibleInstance)?;
        out.insert(n, base.from_hecke(&s)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::build_level;
    use crate::exact::CyclotomicField;
    use crate::group::{attach_unit_twist, cyclic_tower};

    fn model(depth: usize, u: i64) -> (Arc<TwistModel>, TowerSpec) {
        let t = attach_unit_twist(&cyclic_tower(3, depth, &CyclotomicField::rationals()).unwrap(), u).unwrap();
        (TwistModel::from_tower(&t).unwrap(), t)
    }

    #[test]
    fn phi_moves_indicators() {
        let (m, t) = model(2, 2);
        let level = t.level(2).clone();
        let f = m.instance().field().clone();
        let delta1 = crate::hecke::make_element(m.instance(), &[(1, f.one())], &level).unwrap();
        let image = phi_hecke(&m, &delta1).unwrap();
        assert_eq!(image.support(), vec![2]);
        let (id, t1) = model(2, 1);
        let s = crate::hecke::make_element(id.instance(), &[(4, f.from_int(3))], t1.level(2)).unwrap();
        assert_eq!(phi_hecke(&id, &s).unwrap(), s);
    }

    #[test]
    fn no_twist() {
        let t = cyclic_tower(3, 1, &CyclotomicField::rationals()).unwrap();
        assert_eq!(TwistModel::from_tower(&t).unwrap_err(), LaurentError::NoTwistConfigured);
    }

    #[test]
    fn level_one_laurent_product() {
        let (m, t) = model(1, 2);
        let cp = build_level(m.instance(), t.level(1)).unwrap();
        let alpha = Arc::new(LevelAutomorphism::new(&m, &cp).unwrap());
        let d1 = cp.basis_element(1);
        let f = TwistedLaurentElement::monomial(&alpha, d1.clone(), 1);
        let sq = laurent_mul(&f, &f).unwrap();
        let expected = cp_mul(&d1, &cp.basis_element(2)).unwrap();
        assert_eq!(sq, TwistedLaurentElement::monomial(&alpha, expected, 2));
        // Ξ is multiplicative on this pair
        let direct = direct_convolve(&xi(&f).unwrap(), &xi(&f).unwrap()).unwrap();
        assert_eq!(direct, xi(&sq).unwrap());
        assert_eq!(direct.slices().keys().copied().collect::<Vec<_>>(), vec![2]);
        assert_eq!(xi_inv(&direct, &alpha).unwrap(), sq);
    }

    #[test]
    fn repr_round_trip() {
        let (m, t) = model(1, 2);
        let cp = build_level(m.instance(), t.level(1)).unwrap();
        let alpha = Arc::new(LevelAutomorphism::new(&m, &cp).unwrap());
        let x = xi(&TwistedLaurentElement::monomial(&alpha, cp.basis_element(2), -3)).unwrap();
        let text = serde_json::to_string(&x.to_repr()).unwrap();
        assert_eq!(CovirtZElement::from_repr(&m, &serde_json::from_str(&text).unwrap()).unwrap(), x);
    }
}
