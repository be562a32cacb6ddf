//! The Hecke algebra `𝓗(G; F, ρ, ω)` of a finite group, as dense value tables.
//!
//! Everything here is computed straight from the defining formulas, so the module doubles
//! as the reference implementation the crossed-product model is checked against.

mod pushforward;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exact::rational::{format_rational, Rational};
use crate::exact::{CyclotomicField, FieldElement, FieldElementRepr};
use crate::group::{
    quotient, validate_normal_character, Elem, FiniteGroup, GroupError, NormalCharacter, RhoAction, Subgroup,
};

pub use pushforward::pushforward;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error("level is not in P: {0}")]
    LevelNotAdmissibleClass(String),
    #[error("inconsistent values at {at}: {reason}")]
    InconsistentValues { at: Elem, reason: String },
    #[error("elements belong to different Hecke instances")]
    InstanceMismatch,
    #[error("pushforward preconditions fail: {0}")]
    CompatibilityViolation(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("declared level is not admissible: {0}")]
    NotAdmissible(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The data `(G, N, ω, ρ, μ)`. The measure is recorded through `μ(Q)` for `Q = G/N`.
#[derive(Debug)]
pub struct HeckeInstance {
    group: FiniteGroup,
    omega: NormalCharacter,
    rho: RhoAction,
    mu_q: Rational,
    q_order: usize,
    id: String,
}

impl HeckeInstance {
    /// Validates `ω` against `ρ` and fixes `μ(Q) = 1`.
    pub fn new(omega: NormalCharacter, rho: RhoAction) -> Result<Arc<Self>, HeckeError> {
        Self::with_measure(omega, rho, Rational::one())
    }

    pub fn with_measure(omega: NormalCharacter, rho: RhoAction, mu_q: Rational) -> Result<Arc<Self>, HeckeError> {
        if mu_q <= Rational::zero() {
            return Err(HeckeError::InvalidInstance("measure must be positive".into()));
        }
        let report = validate_normal_character(&omega, &rho);
        if let Some(v) = report.first() {
            return Err(HeckeError::InvalidInstance(format!("{v:?}")));
        }
        let group = rho.group().clone();
        let q_order = group.order() / omega.domain().order();
        let id = fingerprint(&group, &omega, &rho, &mu_q);
        Ok(Arc::new(HeckeInstance { group, omega, rho, mu_q, q_order, id }))
    }

    /// Trivial `N`, `ω`, `ρ`: the group algebra `F[G]` up to the measure.
    pub fn plain(group: &FiniteGroup, field: &CyclotomicField) -> Arc<Self> {
        let n = Subgroup::trivial(group);
        Self::new(NormalCharacter::trivial(&n, field), RhoAction::trivial(group, field)).expect("trivial data is valid")
    }

    /// The same data with `μ` replaced by `r·μ`.
    pub fn rescaled(&self, r: &Rational) -> Result<Arc<Self>, HeckeError> {
        Self::with_measure(self.omega.clone(), self.rho.clone(), &self.mu_q * r)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn n(&self) -> &Subgroup {
        self.omega.domain()
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

    pub fn mu_q(&self) -> &Rational {
        &self.mu_q
    }

    /// Content hash of the instance data.
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn same_as(&self, other: &HeckeInstance) -> bool {
        self.id == other.id
    }

    /// `μ(pr K) = μ(Q)·|KN/N| / |Q|`.
    pub fn mu_pr(&self, k: &Subgroup) -> Rational {
        let pr_k = k.order() / k.intersect(self.n()).order();
        &self.mu_q * Rational::new(pr_k.into(), self.q_order.into())
    }

    /// Conditions for `K ∈ P`: `ρ` trivial on `K`, `ω` trivial on `N ∩ K`.
    pub fn check_in_p(&self, k: &Subgroup) -> Result<(), HeckeError> {
        if k.parent() != &self.group {
            return Err(HeckeError::LevelNotAdmissibleClass("level lives in another group".into()));
        }
        if let Some(&x) = k.members().iter().find(|&&x| !self.rho.aut(x).is_identity()) {
            return Err(HeckeError::LevelNotAdmissibleClass(format!("rho({x}) is not the identity")));
        }
        if let Some(&x) = k.members().iter().find(|&&x| self.omega.get(x).is_some_and(|v| !v.is_one())) {
            return Err(HeckeError::LevelNotAdmissibleClass(format!("omega({x}) != 1 on N ∩ K")));
        }
        Ok(())
    }

    pub fn zero(self: &Arc<Self>, level: &Subgroup) -> Result<HeckeElement, HeckeError> {
        self.check_in_p(level)?;
        Ok(HeckeElement { inst: self.clone(), level: level.clone(), values: vec![self.field().zero(); self.group.order()] })
    }

    /// Orbits of `x ↦ n k x k'` with the factor relating each element to its orbit representative.
    pub fn level_orbits(&self, level: &Subgroup) -> LevelOrbits {
        let g = &self.group;
        let order = g.order();
        let mut rep = vec![usize::MAX; order];
        let mut factor: Vec<Option<FieldElement>> = vec![None; order];
        let mut degenerate = vec![false; order];
        let n_members = self.n().members();
        for start in g.elements() {
            if rep[start] != usize::MAX {
                continue;
            }
            rep[start] = start;
            factor[start] = Some(self.field().one());
            let mut stack = vec![start];
            let mut bad = false;
            let mut orbit = vec![start];
            while let Some(x) = stack.pop() {
                let fx = factor[x].clone().expect("visited");
                let moves = n_members
                    .iter()
                    .map(|&n| (g.mul(n, x), Some(n)))
                    .chain(level.members().iter().map(|&k| (g.mul(k, x), None)))
                    .chain(level.members().iter().map(|&k| (g.mul(x, k), None)));
                for (y, n) in moves {
                    let fy = match n {
                        Some(n) => self.omega.value(n) * &fx,
                        None => fx.clone(),
                    };
                    match &factor[y] {
                        Some(existing) => bad |= existing != &fy,
                        None => {
                            rep[y] = start;
                            factor[y] = Some(fy);
                            orbit.push(y);
                            stack.push(y);
                        }
                    }
                }
            }
            if bad {
                for &y in &orbit {
                    degenerate[y] = true;
                }
            }
        }
        LevelOrbits { rep, factor: factor.into_iter().map(|f| f.expect("every element visited")).collect(), degenerate }
    }
}

fn fingerprint(g: &FiniteGroup, omega: &NormalCharacter, rho: &RhoAction, mu_q: &Rational) -> String {
    let mut h = Sha256::new();
    for row in g.rows() {
        for x in row {
            h.update((x as u32).to_le_bytes());
        }
    }
    h.update(omega.field().tag().as_bytes());
    for &n in omega.domain().members() {
        h.update((n as u32).to_le_bytes());
        for c in omega.value(n).to_strings() {
            h.update(c.as_bytes());
            h.update(b",");
        }
    }
    for e in rho.exponents() {
        h.update(e.to_le_bytes());
    }
    h.update(format_rational(mu_q).as_bytes());
    hex::encode(&h.finalize()[..8])
}

/// Orbit data of `N × K × K` acting on `G` by `x ↦ n k x k'`.
///
/// A Hecke element of level `K` satisfies `s(x) = factor[x] · s(rep[x])`, and vanishes on
/// degenerate orbits (where the relation forces `s = ω(n) s` with `ω(n) ≠ 1`).
#[derive(Clone, Debug)]
pub struct LevelOrbits {
    pub rep: Vec<Elem>,
    pub factor: Vec<FieldElement>,
    pub degenerate: Vec<bool>,
}

impl LevelOrbits {
    /// Representatives of the orbits that can carry nonzero values.
    pub fn free_reps(&self) -> Vec<Elem> {
        (0..self.rep.len()).filter(|&x| self.rep[x] == x && !self.degenerate[x]).collect()
    }
}

/// A function `s: G → F` together with a declared admissible level.
#[derive(Clone)]
pub struct HeckeElement {
    inst: Arc<HeckeInstance>,
    level: Subgroup,
    values: Vec<FieldElement>,
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        self.inst.same_as(&other.inst) && self.values == other.values
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeElement[level {:?}](", self.level)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Extends values given on some elements to the unique ω-equivariant, `K`-bi-invariant function.
/// Elements in orbits that received no value get zero.
pub fn make_element(
    inst: &Arc<HeckeInstance>,
    values: &[(Elem, FieldElement)],
    level: &Subgroup,
) -> Result<HeckeElement, HeckeError> {
    inst.check_in_p(level)?;
    let orbits = inst.level_orbits(level);
    let order = inst.group.order();
    let mut at_rep: Vec<Option<FieldElement>> = vec![None; order];
    for (g, v) in values {
        if *g >= order {
            return Err(HeckeError::Group(GroupError::OutOfRange(*g)));
        }
        if v.field() != inst.field() {
            return Err(HeckeError::FieldMismatch(format!("value at {g} lies in {}", v.field())));
        }
        let r = orbits.rep[*g];
        if orbits.degenerate[*g] {
            if !v.is_zero() {
                return Err(HeckeError::InconsistentValues { at: *g, reason: "the orbit forces the value zero".into() });
            }
            continue;
        }
        let implied = v * &orbits.factor[*g].inv().expect("factors are units");
        match &at_rep[r] {
            Some(prev) if prev != &implied => {
                return Err(HeckeError::InconsistentValues { at: *g, reason: "conflicts with another given value".into() })
            }
            _ => at_rep[r] = Some(implied),
        }
    }
    let table = (0..order)
        .map(|x| match &at_rep[orbits.rep[x]] {
            Some(v) if !orbits.degenerate[x] => &orbits.factor[x] * v,
            _ => inst.field().zero(),
        })
        .collect();
    let s = HeckeElement { inst: inst.clone(), level: level.clone(), values: table };
    debug_assert!(s.validate().is_ok());
    Ok(s)
}

/// `1_K(nk) = ω(n)/μ(pr K)`, zero off `NK`.
pub fn unit_1k(inst: &Arc<HeckeInstance>, level: &Subgroup) -> Result<HeckeElement, HeckeError> {
    inst.check_in_p(level)?;
    let g = &inst.group;
    let scale = inst.mu_pr(level).recip();
    let mut values = vec![inst.field().zero(); g.order()];
    for &n in inst.n().members() {
        let v = inst.omega.value(n).scale(&scale);
        for &k in level.members() {
            values[g.mul(n, k)] = v.clone();
        }
    }
    Ok(HeckeElement { inst: inst.clone(), level: level.clone(), values })
}

impl HeckeElement {
    /// Wraps a full table, validating every element invariant.
    pub fn from_table(inst: &Arc<HeckeInstance>, values: Vec<FieldElement>, level: &Subgroup) -> Result<Self, HeckeError> {
        inst.check_in_p(level)?;
        if values.len() != inst.group.order() {
            return Err(HeckeError::InconsistentValues { at: values.len(), reason: "table has the wrong length".into() });
        }
        let s = HeckeElement { inst: inst.clone(), level: level.clone(), values };
        s.validate()?;
        Ok(s)
    }

    pub fn instance(&self) -> &Arc<HeckeInstance> {
        &self.inst
    }

    pub fn level(&self) -> &Subgroup {
        &self.level
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    pub fn value(&self, g: Elem) -> &FieldElement {
        &self.values[g]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn support(&self) -> Vec<Elem> {
        (0..self.values.len()).filter(|&x| !self.values[x].is_zero()).collect()
    }

    /// `K` is admissible for `s`: `s(kg) = s(g) = s(gk)`.
    pub fn is_admissible_for(&self, k: &Subgroup) -> bool {
        if self.inst.check_in_p(k).is_err() {
            return false;
        }
        let g = &self.inst.group;
        g.elements().all(|x| {
            k.members().iter().all(|&y| self.values[g.mul(y, x)] == self.values[x] && self.values[g.mul(x, y)] == self.values[x])
        })
    }

    /// Re-checks left and right ω-equivariance and bi-invariance under the declared level.
    /// Right equivariance follows from the left one and conjugation invariance; it is checked anyway.
    pub fn validate(&self) -> Result<(), HeckeError> {
        let g = &self.inst.group;
        for x in g.elements() {
            for &n in self.inst.n().members() {
                let w = self.inst.omega.value(n);
                if self.values[g.mul(n, x)] != w * &self.values[x] {
                    return Err(HeckeError::InconsistentValues { at: x, reason: format!("s({n}·{x}) != ω({n}) s({x})") });
                }
                if self.values[g.mul(x, n)] != &self.values[x] * w {
                    return Err(HeckeError::InconsistentValues { at: x, reason: format!("s({x}·{n}) != s({x}) ω({n})") });
                }
            }
        }
        if !self.is_admissible_for(&self.level) {
            return Err(HeckeError::NotAdmissible(format!("{:?}", self.level)));
        }
        Ok(())
    }

    /// The same function with a smaller declared level.
    pub fn with_level(&self, level: &Subgroup) -> Result<Self, HeckeError> {
        let s = HeckeElement { inst: self.inst.clone(), level: level.clone(), values: self.values.clone() };
        if !s.is_admissible_for(level) {
            return Err(HeckeError::NotAdmissible(format!("{level:?}")));
        }
        Ok(s)
    }

    fn check_same(&self, other: &Self) -> Result<(), HeckeError> {
        if self.inst.same_as(&other.inst) {
            Ok(())
        } else {
            Err(HeckeError::InstanceMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, HeckeError> {
        self.check_same(other)?;
        let level = self.level.intersect(&other.level);
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(HeckeElement { inst: self.inst.clone(), level, values })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, HeckeError> {
        self.check_same(other)?;
        let level = self.level.intersect(&other.level);
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(HeckeElement { inst: self.inst.clone(), level, values })
    }

    /// `r·s` pointwise.
    pub fn scalar_act(&self, r: &FieldElement) -> Result<Self, HeckeError> {
        if r.field() != self.inst.field() {
            return Err(HeckeError::FieldMismatch(format!("{} vs {}", r.field(), self.inst.field())));
        }
        let values = self.values.iter().map(|v| r * v).collect();
        Ok(HeckeElement { inst: self.inst.clone(), level: self.level.clone(), values })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        HeckeElement { inst: self.inst.clone(), level: self.level.clone(), values: self.values.iter().map(|v| v.scale(r)).collect() }
    }

    /// The same table viewed in another instance on the same group (used for measure rescaling).
    pub fn reinterpret(&self, inst: &Arc<HeckeInstance>) -> Result<Self, HeckeError> {
        HeckeElement::from_table(inst, self.values.clone(), &self.level)
    }

    pub fn to_repr(&self) -> HeckeElementRepr {
        let orbits = self.inst.level_orbits(&self.level);
        let values = orbits
            .free_reps()
            .into_iter()
            .filter(|&r| !self.values[r].is_zero())
            .map(|r| (r, FieldElementRepr::from(&self.values[r])))
            .collect();
        HeckeElementRepr { instance: self.inst.id().to_string(), level: self.level.members().to_vec(), values }
    }

    /// Rebuilds the full table from its transversal values and re-validates it.
    pub fn from_repr(inst: &Arc<HeckeInstance>, repr: &HeckeElementRepr) -> Result<Self, HeckeError> {
        if repr.instance != inst.id() {
            return Err(HeckeError::InstanceMismatch);
        }
        let level = Subgroup::new(inst.group(), repr.level.iter().copied())?;
        let values = repr
            .values
            .iter()
            .map(|(g, v)| v.decode().map(|v| (*g, v)).map_err(|e| HeckeError::FieldMismatch(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let s = make_element(inst, &values, &level)?;
        s.validate()?;
        Ok(s)
    }
}

/// Wire form: instance fingerprint, level members, and values at orbit representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeElementRepr {
    pub instance: String,
    pub level: Vec<Elem>,
    pub values: Vec<(Elem, FieldElementRepr)>,
}

/// `(s·s′)(g) = μ(pr L) Σ_{g′∈T} s(gg′)·ρ(gg′)(s′(g′⁻¹))` with `L = K ∩ K′` and `T` a
/// transversal of `G → G/NL`. The result has declared level `L`.
pub fn convolve(s: &HeckeElement, t: &HeckeElement) -> Result<HeckeElement, HeckeError> {
    s.check_same(t)?;
    let level = s.level.intersect(&t.level);
    let nl = s.inst.n().product(&level)?;
    let transversal = quotient(&s.inst.group, &nl)?.transversal;
    Ok(convolve_with(s, t, &level, &transversal))
}

/// The product computed with an explicit level (admissible for both factors) and transversal.
pub fn convolve_with(s: &HeckeElement, t: &HeckeElement, level: &Subgroup, transversal: &[Elem]) -> HeckeElement {
    let inst = &s.inst;
    let g = &inst.group;
    let mu = inst.mu_pr(level);
    let field = inst.field();
    let s_support: Vec<bool> = s.values.iter().map(|v| !v.is_zero()).collect();
    let values = g
        .elements()
        .map(|x| {
            let mut acc = field.zero();
            for &y in transversal {
                let xy = g.mul(x, y);
                if !s_support[xy] {
                    continue;
                }
                let right = &t.values[g.inv(y)];
                if right.is_zero() {
                    continue;
                }
                acc += &(&s.values[xy] * &inst.rho.act(xy, right));
            }
            acc.scale(&mu)
        })
        .collect();
    HeckeElement { inst: inst.clone(), level: level.clone(), values }
}
