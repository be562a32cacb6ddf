//! Finite groups as multiplication tables, with subgroups, homomorphisms and quotients.

pub mod character;
pub mod tower;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use character::{validate_normal_character, CharacterViolation, NormalCharacter, RhoAction, ValidationReport};
pub use tower::{attach_unit_twist, cyclic_tower, TowerKind, TowerSpec};

/// Groups larger than this are rejected.
pub const MAX_ORDER: usize = 256;
/// Up to this order associativity is checked on every triple.
const FULL_VALIDATION_ORDER: usize = 64;

pub type Elem = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("group order {0} exceeds the cap of {MAX_ORDER}")]
    TooLarge(usize),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal: conjugating {n} by {g} leaves it")]
    NotNormal { g: Elem, n: Elem },
    #[error("not a homomorphism: {0}")]
    NotAHom(String),
    #[error("{u} is not a unit modulo {p}")]
    NotAUnit { u: i64, p: u64 },
    #[error("tower is inconsistent: {0}")]
    BadTower(String),
    #[error("element {0} out of range")]
    OutOfRange(Elem),
}

struct GroupData {
    order: usize,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
    name: String,
}

/// A finite group on labels `0..n`, where `0` is the identity.
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.order == other.0.order && self.0.table == other.0.table)
    }
}
impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.0.name, self.0.order)
    }
}

impl FiniteGroup {
    /// Builds a group from its row-major multiplication table and validates the axioms.
    pub fn from_table(name: &str, rows: Vec<Vec<Elem>>) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        if rows.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(GroupError::InvalidTable("table is not square over 0..n".into()));
        }
        let table: Vec<Elem> = rows.into_iter().flatten().collect();
        for a in 0..n {
            if table[a] != a || table[a * n] != a {
                return Err(GroupError::InvalidTable(format!("0 is not the identity at {a}")));
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a * n + b] == 0) {
                Some(b) if table[b * n + a] == 0 => inverse[a] = b,
                _ => return Err(GroupError::InvalidTable(format!("{a} has no two-sided inverse"))),
            }
        }
        let assoc = |a: usize, b: usize, c: usize| table[table[a * n + b] * n + c] == table[a * n + table[b * n + c]];
        if n <= FULL_VALIDATION_ORDER {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(GroupError::InvalidTable(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..20_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(GroupError::InvalidTable(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                }
            }
        }
        // every row and column must be a permutation (Latin square)
        for a in 0..n {
            let row: BTreeSet<_> = (0..n).map(|b| table[a * n + b]).collect();
            let col: BTreeSet<_> = (0..n).map(|b| table[b * n + a]).collect();
            if row.len() != n || col.len() != n {
                return Err(GroupError::InvalidTable(format!("row/column {a} is not a permutation")));
            }
        }
        Ok(FiniteGroup(Arc::new(GroupData { order: n, table, inverse, name: name.to_string() })))
    }

    pub fn cyclic(n: usize) -> Self {
        assert!((1..=MAX_ORDER).contains(&n), "cyclic order out of range");
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(&format!("Z/{n}"), rows).expect("cyclic group table")
    }

    /// Direct product; `(a, b)` has label `a * |H| + b`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self, GroupError> {
        let (m, n) = (g.order(), h.order());
        if m * n > MAX_ORDER {
            return Err(GroupError::TooLarge(m * n));
        }
        let rows = (0..m * n)
            .map(|x| (0..m * n).map(|y| g.mul(x / n, y / n) * n + h.mul(x % n, y % n)).collect())
            .collect();
        Self::from_table(&format!("{}x{}", g.name(), h.name()), rows)
    }

    /// `B ⋊ Z/k` where the generator of `Z/k` acts by the automorphism `aut` of order `k`.
    /// The pair `(b, i)` has label `i * |B| + b`.
    pub fn semidirect(base: &FiniteGroup, aut: &GroupHom) -> Result<Self, GroupError> {
        if aut.source() != base || aut.target() != base || !aut.is_bijective() {
            return Err(GroupError::NotAHom("semidirect action must be an automorphism of the base".into()));
        }
        let k = aut.order();
        let n = base.order();
        if n * k > MAX_ORDER {
            return Err(GroupError::TooLarge(n * k));
        }
        let powers: Vec<GroupHom> = std::iter::successors(Some(GroupHom::identity(base)), |p| Some(aut.compose(p)))
            .take(k)
            .collect();
        // (b1, i)(b2, j) = (b1 * aut^i(b2), i + j)
        let rows = (0..n * k)
            .map(|x| {
                let (b1, i) = (x % n, x / n);
                (0..n * k)
                    .map(|y| {
                        let (b2, j) = (y % n, y / n);
                        ((i + j) % k) * n + base.mul(b1, powers[i].apply(b2))
                    })
                    .collect()
            })
            .collect();
        Self::from_table(&format!("{}:Z/{k}", base.name()), rows)
    }

    /// The symmetric group on `n` letters, with permutations listed lexicographically
    /// (so the identity comes first). Returns the permutations alongside the group.
    pub fn symmetric(n: usize) -> (Self, Vec<Vec<usize>>) {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            perms.push(cur.clone());
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        // (p * q)(x) = p(q(x))
        let rows = perms
            .iter()
            .map(|p| perms.iter().map(|q| index(&q.iter().map(|&x| p[x]).collect())).collect())
            .collect();
        (Self::from_table(&format!("S{n}"), rows).expect("symmetric group"), perms)
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.0.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.table[a * self.0.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.0.inverse[a]
    }

    /// `g x g^-1`
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.0.table.chunks(self.0.order).map(|r| r.to_vec()).collect()
    }
}

/// A subgroup, stored as its sorted member labels.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: Vec<Elem>,
    mask: Vec<bool>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.members)
    }
}

impl Subgroup {
    pub fn new(parent: &FiniteGroup, members: impl IntoIterator<Item = Elem>) -> Result<Self, GroupError> {
        let set: BTreeSet<Elem> = members.into_iter().collect();
        if let Some(&x) = set.iter().find(|&&x| x >= parent.order()) {
            return Err(GroupError::OutOfRange(x));
        }
        if !set.contains(&0) {
            return Err(GroupError::NotASubgroup("missing identity".into()));
        }
        for &a in &set {
            if !set.contains(&parent.inv(a)) {
                return Err(GroupError::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &set {
                if !set.contains(&parent.mul(a, b)) {
                    return Err(GroupError::NotASubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        Ok(Self::from_set(parent, set))
    }

    fn from_set(parent: &FiniteGroup, set: BTreeSet<Elem>) -> Self {
        let mut mask = vec![false; parent.order()];
        for &x in &set {
            mask[x] = true;
        }
        Subgroup { parent: parent.clone(), members: set.into_iter().collect(), mask }
    }

    pub fn trivial(parent: &FiniteGroup) -> Self {
        Self::from_set(parent, [0].into_iter().collect())
    }

    pub fn whole(parent: &FiniteGroup) -> Self {
        Self::from_set(parent, parent.elements().collect())
    }

    pub fn generated_by(parent: &FiniteGroup, gens: &[Elem]) -> Result<Self, GroupError> {
        if let Some(&x) = gens.iter().find(|&&x| x >= parent.order()) {
            return Err(GroupError::OutOfRange(x));
        }
        let mut set: BTreeSet<Elem> = [0].into_iter().collect();
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = parent.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Ok(Self::from_set(parent, set))
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// First `(g, n)` with `g n g^-1` outside the subgroup, if any.
    pub fn normality_witness(&self) -> Option<(Elem, Elem)> {
        for g in self.parent.elements() {
            for &n in &self.members {
                if !self.contains(self.parent.conj(g, n)) {
                    return Some((g, n));
                }
            }
        }
        None
    }

    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }

    pub fn require_normal(&self) -> Result<(), GroupError> {
        match self.normality_witness() {
            Some((g, n)) => Err(GroupError::NotNormal { g, n }),
            None => Ok(()),
        }
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let set = self.members.iter().copied().filter(|&x| other.contains(x)).collect();
        Self::from_set(&self.parent, set)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// The product set `self * other`, which is a subgroup whenever one factor is normal.
    pub fn product(&self, other: &Subgroup) -> Result<Subgroup, GroupError> {
        let set: BTreeSet<Elem> =
            self.members.iter().flat_map(|&a| other.members.iter().map(move |&b| (a, b))).map(|(a, b)| self.parent.mul(a, b)).collect();
        Subgroup::new(&self.parent, set)
    }
}

/// A homomorphism of finite groups, stored by its image table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    images: Vec<Elem>,
}

impl GroupHom {
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, images: Vec<Elem>) -> Result<Self, GroupError> {
        if images.len() != source.order() || images.iter().any(|&y| y >= target.order()) {
            return Err(GroupError::NotAHom("image table has the wrong shape".into()));
        }
        if images[0] != 0 {
            return Err(GroupError::NotAHom("identity does not map to identity".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(GroupError::NotAHom(format!("f({a}*{b}) != f({a})*f({b})")));
                }
            }
        }
        Ok(GroupHom { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), images: g.elements().collect() }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x]
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &GroupHom) -> GroupHom {
        assert!(other.target == self.source, "composition of incompatible homomorphisms");
        GroupHom {
            source: other.source.clone(),
            target: self.target.clone(),
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.images.iter().collect::<BTreeSet<_>>().len() == self.images.len()
    }

    pub fn is_injective(&self) -> bool {
        self.images.iter().collect::<BTreeSet<_>>().len() == self.images.len()
    }

    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Some(GroupHom { source: self.target.clone(), target: self.source.clone(), images: inv })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Order of an endomorphism under composition; panics on non-bijective maps.
    pub fn order(&self) -> usize {
        assert!(self.is_bijective() && self.source == self.target);
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = self.compose(&p);
            k += 1;
        }
        k
    }

    pub fn image_of(&self, s: &Subgroup) -> Subgroup {
        let set = s.members().iter().map(|&x| self.apply(x)).collect();
        Subgroup::from_set(&self.target, set)
    }

    pub fn kernel(&self) -> Subgroup {
        let set = self.source.elements().filter(|&x| self.apply(x) == 0).collect();
        Subgroup::from_set(&self.source, set)
    }

    pub fn preimage(&self, s: &Subgroup) -> Subgroup {
        let set = self.source.elements().filter(|&x| s.contains(self.apply(x))).collect();
        Subgroup::from_set(&self.source, set)
    }
}

/// Quotient data: the group `G/N`, the projection, and the transversal (one representative per
/// coset, the identity first, then ascending by smallest label).
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: GroupHom,
    pub transversal: Vec<Elem>,
}

pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<Quotient, GroupError> {
    n.require_normal()?;
    let mut label = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if label[x] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(x);
        for &m in n.members() {
            label[g.mul(x, m)] = idx;
        }
    }
    let k = reps.len();
    let rows = (0..k).map(|a| (0..k).map(|b| label[g.mul(reps[a], reps[b])]).collect()).collect();
    let q = FiniteGroup::from_table(&format!("{}/N", g.name()), rows)?;
    let projection = GroupHom { source: g.clone(), target: q.clone(), images: label };
    Ok(Quotient { group: q, projection, transversal: reps })
}

/// The inner automorphism `x -> g x g^-1`.
pub fn conjugation_aut(g: &FiniteGroup, x: Elem) -> GroupHom {
    GroupHom { source: g.clone(), target: g.clone(), images: g.elements().map(|y| g.conj(x, y)).collect() }
}

/// Multiplication by a unit `u` on `Z/n`.
pub fn unit_multiplication(g: &FiniteGroup, n: usize, u: i64) -> Result<GroupHom, GroupError> {
    let images = (0..n).map(|x| ((x as i64 * u).rem_euclid(n as i64)) as usize).collect();
    GroupHom::new(g, g, images)
}
