//! Normal characters `ω: N → F^×` and Galois actions `ρ: G → Gal(F/Q)`.

use serde::Serialize;

use super::{Elem, FiniteGroup, GroupError, Subgroup};
use crate::exact::{CyclotomicField, FieldAut, FieldElement};

/// `g ↦ (ζ ↦ ζ^{k(g)})`, stored per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoAction {
    group: FiniteGroup,
    field: CyclotomicField,
    auts: Vec<FieldAut>,
}

impl RhoAction {
    pub fn trivial(group: &FiniteGroup, field: &CyclotomicField) -> Self {
        RhoAction { group: group.clone(), field: field.clone(), auts: vec![FieldAut::identity(field); group.order()] }
    }

    /// Builds the action from per-element exponents and checks that it is a homomorphism.
    pub fn from_exponents(group: &FiniteGroup, field: &CyclotomicField, exponents: &[i64]) -> Result<Self, GroupError> {
        if exponents.len() != group.order() {
            return Err(GroupError::NotAHom(format!("expected {} exponents, got {}", group.order(), exponents.len())));
        }
        let auts = exponents
            .iter()
            .map(|&k| FieldAut::new(field, k))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| GroupError::NotAHom(e.to_string()))?;
        let rho = RhoAction { group: group.clone(), field: field.clone(), auts };
        for a in group.elements() {
            for b in group.elements() {
                if rho.aut(group.mul(a, b)) != &rho.aut(a).compose(rho.aut(b)) {
                    return Err(GroupError::NotAHom(format!("rho({a}*{b}) != rho({a}) rho({b})")));
                }
            }
        }
        Ok(rho)
    }

    /// Pulls back along a group homomorphism into `self.group`.
    pub fn pullback(&self, hom: &super::GroupHom) -> RhoAction {
        assert!(hom.target() == &self.group);
        RhoAction {
            group: hom.source().clone(),
            field: self.field.clone(),
            auts: hom.source().elements().map(|x| self.auts[hom.apply(x)].clone()).collect(),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn aut(&self, g: Elem) -> &FieldAut {
        &self.auts[g]
    }

    pub fn exponents(&self) -> Vec<u64> {
        self.auts.iter().map(|a| a.exponent()).collect()
    }

    pub fn act(&self, g: Elem, r: &FieldElement) -> FieldElement {
        self.auts[g].apply_unchecked(r)
    }

    pub fn is_trivial(&self) -> bool {
        self.auts.iter().all(|a| a.is_identity())
    }

    pub fn is_trivial_on(&self, k: &Subgroup) -> bool {
        k.members().iter().all(|&x| self.auts[x].is_identity())
    }
}

/// A character on a normal subgroup `N`, with values indexed by the members of `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalCharacter {
    domain: Subgroup,
    field: CyclotomicField,
    values: Vec<Option<FieldElement>>,
}

impl NormalCharacter {
    pub fn trivial(domain: &Subgroup, field: &CyclotomicField) -> Self {
        let mut values = vec![None; domain.parent().order()];
        for &n in domain.members() {
            values[n] = Some(field.one());
        }
        NormalCharacter { domain: domain.clone(), field: field.clone(), values }
    }

    /// Assigns values to the members of `domain`; every member needs a value in `field`.
    pub fn new(domain: &Subgroup, field: &CyclotomicField, table: &[(Elem, FieldElement)]) -> Result<Self, GroupError> {
        let mut values = vec![None; domain.parent().order()];
        for (n, v) in table {
            if !domain.contains(*n) {
                return Err(GroupError::BadTower(format!("character value given at {n}, outside N")));
            }
            if v.field() != field {
                return Err(GroupError::BadTower(format!("character value at {n} lies in {}", v.field())));
            }
            values[*n] = Some(v.clone());
        }
        if let Some(&n) = domain.members().iter().find(|&&n| values[n].is_none()) {
            return Err(GroupError::BadTower(format!("character value missing at {n}")));
        }
        Ok(NormalCharacter { domain: domain.clone(), field: field.clone(), values })
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    /// `ω(n)`; panics if `n ∉ N`.
    pub fn value(&self, n: Elem) -> &FieldElement {
        self.values[n].as_ref().expect("character evaluated outside its domain")
    }

    pub fn get(&self, n: Elem) -> Option<&FieldElement> {
        self.values[n].as_ref()
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().flatten().all(|v| v.is_one())
    }

    pub fn is_trivial_on(&self, k: &Subgroup) -> bool {
        k.members().iter().all(|&x| self.get(x).is_none_or(|v| v.is_one()))
    }

    /// Transports the character along `hom`, whose restriction to the domain must be injective.
    pub fn pullback(&self, hom: &super::GroupHom, domain: &Subgroup) -> Result<Self, GroupError> {
        let table: Vec<_> = domain
            .members()
            .iter()
            .map(|&n| {
                self.get(hom.apply(n))
                    .cloned()
                    .map(|v| (n, v))
                    .ok_or_else(|| GroupError::BadTower(format!("{n} does not map into N")))
            })
            .collect::<Result<_, _>>()?;
        NormalCharacter::new(domain, &self.field, &table)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CharacterViolation {
    NotNormal { g: Elem, n: Elem },
    FieldMismatch,
    NotRootOfUnity { n: Elem },
    NotMultiplicative { a: Elem, b: Elem },
    /// `ω(g n g⁻¹) ≠ ω(n)`
    ConjugationInvariance { g: Elem, n: Elem },
    /// `g·ω(n) ≠ ω(n)`
    RhoMovesValue { g: Elem, n: Elem },
    /// `ρ(n) ≠ id`
    RhoNontrivialOnN { n: Elem },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<CharacterViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&CharacterViolation> {
        self.violations.first()
    }
}

/// Checks the compatibility conditions between `ω` and `ρ`. Each condition contributes at most
/// its first failing witness, in the order: normality, roots of unity, multiplicativity,
/// conjugation invariance, ρ-fixedness of values, ρ-triviality on `N`.
pub fn validate_normal_character(omega: &NormalCharacter, rho: &RhoAction) -> ValidationReport {
    let mut violations = Vec::new();
    let n_sub = omega.domain();
    let g = n_sub.parent();
    if rho.group() != g || rho.field() != omega.field() {
        violations.push(CharacterViolation::FieldMismatch);
        return ValidationReport { violations };
    }
    if let Some((g0, n0)) = n_sub.normality_witness() {
        violations.push(CharacterViolation::NotNormal { g: g0, n: n0 });
        return ValidationReport { violations };
    }
    let members = n_sub.members();
    if let Some(&n) = members.iter().find(|&&n| omega.value(n).root_order().is_none()) {
        violations.push(CharacterViolation::NotRootOfUnity { n });
    }
    'mult: for &a in members {
        for &b in members {
            if omega.value(g.mul(a, b)) != &(omega.value(a) * omega.value(b)) {
                violations.push(CharacterViolation::NotMultiplicative { a, b });
                break 'mult;
            }
        }
    }
    'conj: for x in g.elements() {
        for &n in members {
            if omega.value(g.conj(x, n)) != omega.value(n) {
                violations.push(CharacterViolation::ConjugationInvariance { g: x, n });
                break 'conj;
            }
        }
    }
    'fix: for x in g.elements() {
        for &n in members {
            if &rho.act(x, omega.value(n)) != omega.value(n) {
                violations.push(CharacterViolation::RhoMovesValue { g: x, n });
                break 'fix;
            }
        }
    }
    if let Some(&n) = members.iter().find(|&&n| !rho.aut(n).is_identity()) {
        violations.push(CharacterViolation::RhoNontrivialOnN { n });
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_sign() -> (FiniteGroup, NormalCharacter, CyclotomicField) {
        let g = FiniteGroup::cyclic(4);
        let q = CyclotomicField::rationals();
        let n = Subgroup::new(&g, [0, 2]).unwrap();
        let omega = NormalCharacter::new(&n, &q, &[(0, q.one()), (2, q.from_int(-1))]).unwrap();
        (g, omega, q)
    }

    #[test]
    fn trivial_character_is_valid() {
        let (s3, _) = FiniteGroup::symmetric(3);
        let q = CyclotomicField::rationals();
        let n = Subgroup::whole(&s3);
        let report = validate_normal_character(&NormalCharacter::trivial(&n, &q), &RhoAction::trivial(&s3, &q));
        assert!(report.is_valid());
    }

    #[test]
    fn sign_character_on_z4() {
        let (g, omega, q) = z4_sign();
        assert!(validate_normal_character(&omega, &RhoAction::trivial(&g, &q)).is_valid());
    }

    #[test]
    fn s3_three_cycle_character_fails_conjugation() {
        let (s3, perms) = FiniteGroup::symmetric(3);
        let f = CyclotomicField::new(3).unwrap();
        let idx = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let (c, c2) = (idx(&[1, 2, 0]), idx(&[2, 0, 1]));
        let a3 = Subgroup::new(&s3, [0, c, c2]).unwrap();
        let omega = NormalCharacter::new(&a3, &f, &[(0, f.one()), (c, f.zeta_pow(1)), (c2, f.zeta_pow(2))]).unwrap();
        let report = validate_normal_character(&omega, &RhoAction::trivial(&s3, &f));
        assert!(matches!(report.first(), Some(CharacterViolation::ConjugationInvariance { .. })));
        assert_eq!(report.violations.len(), 1);
    }

    #[test]
    fn galois_moving_values_is_caught() {
        let g = FiniteGroup::cyclic(4);
        let f = CyclotomicField::new(4).unwrap();
        let n = Subgroup::new(&g, [0, 2]).unwrap();
        // ρ through Z/4 → Z/2 = Gal(Q(i)/Q): ρ(1) is conjugation
        let rho = RhoAction::from_exponents(&g, &f, &[1, 3, 1, 3]).unwrap();
        let omega = NormalCharacter::new(&n, &f, &[(0, f.one()), (2, f.from_int(-1))]).unwrap();
        assert!(validate_normal_character(&omega, &rho).is_valid());
        let bad_rho = RhoAction::from_exponents(&g, &f, &[1, 3, 1, 3]).unwrap();
        let omega_i = NormalCharacter::new(&Subgroup::whole(&g), &f, &[(0, f.one()), (1, f.zeta_pow(1)), (2, f.from_int(-1)), (3, f.zeta_pow(3))]).unwrap();
        let report = validate_normal_character(&omega_i, &bad_rho);
        assert!(report.violations.contains(&CharacterViolation::RhoMovesValue { g: 1, n: 1 }));
        assert!(report.violations.contains(&CharacterViolation::RhoNontrivialOnN { n: 1 }));
        assert!(RhoAction::from_exponents(&g, &f, &[1, 3, 3, 3]).is_err());
    }

    #[test]
    fn non_multiplicative_and_non_root() {
        let (g, _, q) = z4_sign();
        let n = Subgroup::new(&g, [0, 2]).unwrap();
        let two = NormalCharacter::new(&n, &q, &[(0, q.one()), (2, q.from_int(2))]).unwrap();
        let report = validate_normal_character(&two, &RhoAction::trivial(&g, &q));
        assert_eq!(report.first(), Some(&CharacterViolation::NotRootOfUnity { n: 2 }));
        assert!(report.violations.iter().any(|v| matches!(v, CharacterViolation::NotMultiplicative { .. })));
    }
}
