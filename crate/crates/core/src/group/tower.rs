//! Descending towers of normal levels `K_0 ⊇ K_1 ⊇ … ⊇ K_depth` in a finite group.
//!
//! The tower lives in its finest group `E`; the level quotients `E_k = E/(N·K_k)` are
//! computed on demand. A profinite `L` with a tower of open normal subgroups is modeled by
//! `E = L/K_depth`, which is exact for everything that only looks at levels `K_0..K_depth`.

use num_integer::Integer;

use super::character::{validate_normal_character, NormalCharacter, RhoAction};
use super::{quotient, unit_multiplication, FiniteGroup, GroupError, GroupHom, Quotient, Subgroup};
use crate::exact::{CyclotomicField, FieldAut};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerKind {
    /// `E_k = Z/p^k`.
    Cyclic { p: u64 },
    Chain,
}

#[derive(Clone, Debug)]
pub struct TowerSpec {
    kind: TowerKind,
    group: FiniteGroup,
    levels: Vec<Subgroup>,
    n: Subgroup,
    omega: NormalCharacter,
    rho: RhoAction,
    /// Automorphism of `E` preserving `N` and every level, and how the generator `t` acts on coefficients.
    twist: Option<(GroupHom, FieldAut)>,
    unit: Option<i64>,
}

impl TowerSpec {
    /// Builds and validates a tower from explicit data.
    pub fn new(
        group: &FiniteGroup,
        levels: Vec<Subgroup>,
        omega: NormalCharacter,
        rho: RhoAction,
        twist: Option<(GroupHom, FieldAut)>,
    ) -> Result<Self, GroupError> {
        let n = omega.domain().clone();
        let t = TowerSpec { kind: TowerKind::Chain, group: group.clone(), levels, n, omega, rho, twist, unit: None };
        t.validate()?;
        Ok(t)
    }

    pub fn kind(&self) -> &TowerKind {
        &self.kind
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// The finest group.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn level(&self, k: usize) -> &Subgroup {
        &self.levels[k]
    }

    pub fn levels(&self) -> &[Subgroup] {
        &self.levels
    }

    pub fn n(&self) -> &Subgroup {
        &self.n
    }

    pub fn omega(&self) -> &NormalCharacter {
        &self.omega
    }

    pub fn rho(&self) -> &RhoAction {
        &self.rho
    }

    pub fn field(&self) -> &CyclotomicField {
        self.omega.field()
    }

    pub fn twist(&self) -> Option<&GroupHom> {
        self.twist.as_ref().map(|(phi, _)| phi)
    }

    /// The Galois automorphism by which the twisting generator acts on coefficients.
    pub fn twist_rho(&self) -> FieldAut {
        self.twist.as_ref().map_or_else(|| FieldAut::identity(self.field()), |(_, a)| a.clone())
    }

    pub fn unit(&self) -> Option<i64> {
        self.unit
    }

    /// `E_k` together with the projection from the finest group.
    pub fn level_quotient(&self, k: usize) -> Quotient {
        let nk = self.n.product(&self.levels[k]).expect("N normal");
        quotient(&self.group, &nk).expect("levels are normal")
    }

    /// The surjection `E_{k+1} → E_k`.
    pub fn surjection(&self, k: usize) -> GroupHom {
        let fine = self.level_quotient(k + 1);
        let coarse = self.level_quotient(k);
        let images = fine.transversal.iter().map(|&x| coarse.projection.apply(x)).collect();
        GroupHom::new(&fine.group, &coarse.group, images).expect("reduction is a homomorphism")
    }

    /// `φ_k` on `E_k`.
    pub fn twist_at(&self, k: usize) -> Option<GroupHom> {
        let phi = self.twist()?;
        let q = self.level_quotient(k);
        let images = q.transversal.iter().map(|&x| q.projection.apply(phi.apply(x))).collect();
        Some(GroupHom::new(&q.group, &q.group, images).expect("induced map is a homomorphism"))
    }

    /// Re-expresses trivial-ρ data over a larger cyclotomic field.
    pub fn with_field(&self, field: &CyclotomicField) -> Result<Self, GroupError> {
        if field == self.field() {
            return Ok(self.clone());
        }
        if !self.rho.is_trivial() || !self.twist_rho().is_identity() {
            return Err(GroupError::BadTower("cannot change the field of a tower with a nontrivial Galois action".into()));
        }
        let table = self
            .n
            .members()
            .iter()
            .map(|&x| self.omega.value(x).embed_into(field).map(|v| (x, v)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| GroupError::BadTower(e.to_string()))?;
        let mut t = self.clone();
        t.omega = NormalCharacter::new(&self.n, field, &table)?;
        t.rho = RhoAction::trivial(&self.group, field);
        t.twist = self.twist.as_ref().map(|(phi, _)| (phi.clone(), FieldAut::identity(field)));
        Ok(t)
    }

    /// Truncates to levels `K_0..K_depth`, replacing the finest group by `E/K_depth`.
    pub fn truncate(&self, depth: usize) -> Result<Self, GroupError> {
        if depth > self.depth() {
            return Err(GroupError::BadTower(format!("depth {depth} exceeds tower depth {}", self.depth())));
        }
        if !self.n.intersect(&self.levels[depth]).is_trivial() {
            return Err(GroupError::BadTower("cannot truncate when N meets the bottom level".into()));
        }
        let q = quotient(&self.group, &self.levels[depth])?;
        let pr = &q.projection;
        let levels = self.levels[..=depth].iter().map(|k| pr.image_of(k)).collect();
        let n = pr.image_of(&self.n);
        // pr is injective on N
        let table: Vec<_> = self.n.members().iter().map(|&x| (pr.apply(x), self.omega.value(x).clone())).collect();
        let omega = NormalCharacter::new(&n, self.field(), &table)?;
        let exps: Vec<i64> = q.transversal.iter().map(|&x| self.rho.aut(x).exponent() as i64).collect();
        let rho = RhoAction::from_exponents(&q.group, self.field(), &exps)?;
        let twist = self.twist.as_ref().map(|(phi, a)| {
            let images = q.transversal.iter().map(|&x| pr.apply(phi.apply(x))).collect();
            (GroupHom::new(&q.group, &q.group, images).expect("induced automorphism"), a.clone())
        });
        let t = TowerSpec { kind: self.kind.clone(), group: q.group, levels, n, omega, rho, twist, unit: self.unit };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        let g = &self.group;
        if self.levels.is_empty() {
            return Err(GroupError::BadTower("a tower needs at least K_0".into()));
        }
        for (k, level) in self.levels.iter().enumerate() {
            if level.parent() != g {
                return Err(GroupError::BadTower(format!("K_{k} lives in another group")));
            }
            level.require_normal()?;
            if k > 0 && !level.is_subset_of(&self.levels[k - 1]) {
                return Err(GroupError::BadTower(format!("K_{k} is not contained in K_{}", k - 1)));
            }
            if !self.rho.is_trivial_on(level) {
                return Err(GroupError::BadTower(format!("rho is nontrivial on K_{k}")));
            }
            if !self.omega.is_trivial_on(level) {
                return Err(GroupError::BadTower(format!("omega is nontrivial on N ∩ K_{k}")));
            }
        }
        let report = validate_normal_character(&self.omega, &self.rho);
        if let Some(v) = report.first() {
            return Err(GroupError::BadTower(format!("normal character invalid: {v:?}")));
        }
        if let Some((phi, a)) = &self.twist {
            if phi.source() != g || phi.target() != g || !phi.is_bijective() {
                return Err(GroupError::BadTower("twist is not an automorphism".into()));
            }
            if a.field() != self.field() {
                return Err(GroupError::BadTower("twist coefficient action lives in another field".into()));
            }
            for (k, level) in self.levels.iter().enumerate() {
                if phi.image_of(level) != *level {
                    return Err(GroupError::BadTower(format!("twist does not preserve K_{k}")));
                }
            }
            if phi.image_of(&self.n) != self.n {
                return Err(GroupError::BadTower("twist does not preserve N".into()));
            }
            for &x in self.n.members() {
                let v = self.omega.value(x);
                if self.omega.value(phi.apply(x)) != v || &a.apply_unchecked(v) != v {
                    return Err(GroupError::BadTower(format!("twist is incompatible with omega at {x}")));
                }
            }
            for x in g.elements() {
                if self.rho.aut(phi.apply(x)) != self.rho.aut(x) {
                    return Err(GroupError::BadTower(format!("twist is incompatible with rho at {x}")));
                }
            }
            for k in 0..self.depth() {
                let (s, fine, coarse) = (self.surjection(k), self.twist_at(k + 1).unwrap(), self.twist_at(k).unwrap());
                if s.compose(&fine) != coarse.compose(&s) {
                    return Err(GroupError::BadTower(format!("twist does not commute with E_{} -> E_{k}", k + 1)));
                }
            }
        }
        Ok(())
    }
}

/// `E_k = Z/p^k` for `k = 0..=depth`, with `N`, `ω`, `ρ` trivial over `field`.
pub fn cyclic_tower(p: u64, depth: usize, field: &CyclotomicField) -> Result<TowerSpec, GroupError> {
    if p < 2 || !is_prime(p) {
        return Err(GroupError::BadTower(format!("{p} is not prime")));
    }
    let order = (p as usize).checked_pow(depth as u32).filter(|&n| n <= super::MAX_ORDER).ok_or(GroupError::TooLarge(usize::MAX))?;
    let g = FiniteGroup::cyclic(order);
    let levels = (0..=depth)
        .map(|k| Subgroup::generated_by(&g, &[(p as usize).pow(k as u32) % order]))
        .collect::<Result<Vec<_>, _>>()?;
    let n = Subgroup::trivial(&g);
    let t = TowerSpec {
        kind: TowerKind::Cyclic { p },
        omega: NormalCharacter::trivial(&n, field),
        rho: RhoAction::trivial(&g, field),
        group: g,
        levels,
        n,
        twist: None,
        unit: None,
    };
    t.validate()?;
    Ok(t)
}

/// Attaches `φ_k = (x ↦ u x)` on every `E_k = Z/p^k` of a cyclic tower.
pub fn attach_unit_twist(tower: &TowerSpec, u: i64) -> Result<TowerSpec, GroupError> {
    let TowerKind::Cyclic { p } = tower.kind else {
        return Err(GroupError::BadTower("unit twists need a cyclic tower".into()));
    };
    if (u.rem_euclid(p as i64) as u64).gcd(&p) != 1 {
        return Err(GroupError::NotAUnit { u, p });
    }
    let phi = unit_multiplication(&tower.group, tower.group.order(), u)?;
    let mut t = tower.clone();
    t.twist = Some((phi, FieldAut::identity(tower.field())));
    t.unit = Some(u);
    t.validate()?;
    Ok(t)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}
