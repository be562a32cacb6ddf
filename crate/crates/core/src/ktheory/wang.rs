//! Maps on `K_0` of level algebras, the colimit over a tower, and the Wang sequence
//! `K_0(𝓗(L)) --id − K_0(φ⁻¹)--> K_0(𝓗(L)) → K_0(𝓗(G)) → K_{-1}(𝓗(L)) = 0`.

use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::blocks::{block_decompose, SemisimpleDecomposition};
use super::snf::{from_i64, identity, mat_mul, smith_normal_form, SnfCertificate};
use super::KTheoryError;
use crate::crossed::{build_level, embed_level, CPElement, CrossedProduct};
use crate::group::TowerSpec;
use crate::hecke::HeckeInstance;
use crate::laurent::{LevelAutomorphism, TwistModel};

/// Integer matrix of a map `ℤ^cols → ℤ^rows`.
pub type K0Matrix = Vec<Vec<i64>>;

/// Column `i` is the class of `f(z_i)` divided by `n_i`, i.e. the image of the rank-one idempotent of block `i`.
pub fn induced_k0(
    source: &SemisimpleDecomposition,
    target: &SemisimpleDecomposition,
    f: impl Fn(&CPElement) -> Result<CPElement, KTheoryError>,
) -> Result<K0Matrix, KTheoryError> {
    let rows = target.rank();
    let mut m = vec![vec![0i64; source.rank()]; rows];
    for (i, (z, &n)) in source.idempotents.iter().zip(&source.sizes).enumerate() {
        let class = target.k0_class_of(&f(z)?)?;
        for (j, c) in class.into_iter().enumerate() {
            if c % n as i64 != 0 {
                return Err(KTheoryError::NotIdempotent(format!("image of block {i} has class not divisible by {n}")));
            }
            m[j][i] = c / n as i64;
        }
    }
    Ok(m)
}

fn permutation_of(dec: &SemisimpleDecomposition, image: impl Fn(&CPElement) -> CPElement) -> Result<Vec<usize>, KTheoryError> {
    let mut perm = Vec::with_capacity(dec.rank());
    for (i, z) in dec.idempotents.iter().enumerate() {
        let img = image(z);
        let j = dec.idempotents.iter().position(|w| *w == img).ok_or(KTheoryError::NotPermutation(i))?;
        if dec.sizes[j] != dec.sizes[i] {
            return Err(KTheoryError::NotPermutation(i));
        }
        perm.push(j);
    }
    let mut seen = vec![false; perm.len()];
    for &j in &perm {
        if std::mem::replace(&mut seen[j], true) {
            return Err(KTheoryError::NotPermutation(j));
        }
    }
    Ok(perm)
}

/// `perm[i] = j` means `α(z_i) = z_j`.
pub fn aut_permutation(alpha: &LevelAutomorphism, dec: &SemisimpleDecomposition) -> Result<Vec<usize>, KTheoryError> {
    check_base(alpha, dec)?;
    permutation_of(dec, |z| alpha.apply(z))
}

fn check_base(alpha: &LevelAutomorphism, dec: &SemisimpleDecomposition) -> Result<(), KTheoryError> {
    if alpha.base().id() != dec.algebra.id() {
        return Err(KTheoryError::Crossed(crate::crossed::CrossedError::ParentMismatch));
    }
    Ok(())
}

pub fn permutation_matrix(perm: &[usize]) -> K0Matrix {
    let mut m = vec![vec![0; perm.len()]; perm.len()];
    for (i, &j) in perm.iter().enumerate() {
        m[j][i] = 1;
    }
    m
}

/// `K_0(α)`: the permutation matrix of `α` on the blocks.
pub fn aut_k0(alpha: &LevelAutomorphism, dec: &SemisimpleDecomposition) -> Result<K0Matrix, KTheoryError> {
    Ok(permutation_matrix(&aut_permutation(alpha, dec)?))
}

/// `K_0(α⁻¹)`, computed from `α⁻¹` itself.
pub fn aut_inverse_k0(alpha: &LevelAutomorphism, dec: &SemisimpleDecomposition) -> Result<K0Matrix, KTheoryError> {
    check_base(alpha, dec)?;
    Ok(permutation_matrix(&permutation_of(dec, |z| alpha.apply_inverse(z))?))
}

pub fn cycle_lengths(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelK0 {
    pub level: usize,
    pub d_order: usize,
    pub rank: usize,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransitionK0 {
    pub from: usize,
    pub to: usize,
    pub matrix: K0Matrix,
    pub left_inverse: K0Matrix,
    pub snf: SnfCertificate,
    /// Rank of the new free summand `coker`.
    pub new_rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColimK0 {
    pub levels: Vec<LevelK0>,
    pub transitions: Vec<TransitionK0>,
    /// `K_0` at the finest level as `ℤ^{r_0} ⊕ ℤ^{r_1 − r_0} ⊕ …`.
    pub summands: Vec<usize>,
}

fn to_i64(m: &[Vec<BigInt>]) -> K0Matrix {
    m.iter().map(|r| r.iter().map(|x| i64::try_from(x).expect("small entries")).collect()).collect()
}

/// `K_0` of each level algebra of the tower and the maps induced by the inclusions, each
/// certified split injective by an exact left inverse.
pub fn colim_k0(tower: &TowerSpec) -> Result<ColimK0, KTheoryError> {
    colim_k0_with(tower, &block_decompose)
}

/// Source of block decompositions, e.g. [`block_decompose`] behind a cache.
pub type Decomposer<'a> = dyn Fn(&Arc<CrossedProduct>) -> Result<SemisimpleDecomposition, KTheoryError> + Sync + 'a;

pub fn colim_k0_with(tower: &TowerSpec, decompose: &Decomposer) -> Result<ColimK0, KTheoryError> {
    let inst = HeckeInstance::new(tower.omega().clone(), tower.rho().clone())?;
    let algebras = (0..=tower.depth()).map(|k| build_level(&inst, tower.level(k))).collect::<Result<Vec<_>, _>>()?;
    // levels are independent; collect keeps level order
    let decs = algebras.par_iter().map(decompose).collect::<Result<Vec<_>, _>>()?;
    let levels = decs
        .iter()
        .enumerate()
        .map(|(k, d)| LevelK0 { level: k, d_order: d.algebra.order(), rank: d.rank(), dims: d.dims.clone() })
        .collect();
    let mut transitions = Vec::new();
    let mut summands = vec![decs[0].rank()];
    for k in 0..tower.depth() {
        let emb = embed_level(&algebras[k], &algebras[k + 1])?;
        let matrix = induced_k0(&decs[k], &decs[k + 1], |x| Ok(emb.apply(x)?))?;
        let big = from_i64(&matrix);
        let snf = smith_normal_form(&big);
        let left = snf.left_inverse().ok_or(KTheoryError::NotSplitInjective { from: k, to: k + 1 })?;
        if mat_mul(&left, &big) != identity(decs[k].rank()) {
            return Err(KTheoryError::NotSplitInjective { from: k, to: k + 1 });
        }
        let cert = SnfCertificate::from(&snf);
        summands.push(cert.free_rank);
        transitions.push(TransitionK0 { from: k, to: k + 1, matrix, left_inverse: to_i64(&left), new_rank: cert.free_rank, snf: cert });
    }
    Ok(ColimK0 { levels, transitions, summands })
}

#[derive(Clone, Debug, Serialize)]
pub struct NegativeK {
    pub degrees: Vec<i64>,
    pub value: String,
    pub reason: String,
}

pub fn negative_k_record() -> NegativeK {
    NegativeK {
        degrees: vec![-1, -2, -3],
        value: "0".into(),
        reason: "every level algebra is semisimple, hence regular, so K_n vanishes for n <= -1 on 𝓗(L); \
                 the Wang sequence then gives K_n(𝓗(G)) = 0 for all n <= -1"
            .into(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Stabilization {
    pub previous_rank: usize,
    pub previous_orbits: usize,
    pub new_orbits: usize,
    /// `K_0(φ)` commutes with the map induced by the inclusion of the previous level.
    pub equivariant: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WangResult {
    pub depth: usize,
    /// Rank of `K_0(𝓗(L))` at this depth.
    pub total_rank: usize,
    pub block_dims: Vec<usize>,
    /// `perm[i] = j` for `φ(z_i) = z_j`.
    pub permutation: Vec<usize>,
    pub orbit_sizes: Vec<usize>,
    pub k0_rank: usize,
    pub torsion: Vec<String>,
    /// Rank of the image of `∂ : K_1(𝓗(G)) → K_0(𝓗(L))`, i.e. of `ker(id − K_0(φ⁻¹))`.
    pub boundary_rank: usize,
    pub snf: SnfCertificate,
    pub negative_k: NegativeK,
    pub stabilization: Option<Stabilization>,
}

impl WangResult {
    /// `rank coker + rank im = rank K_0(𝓗(L))`.
    pub fn rank_identity_holds(&self) -> bool {
        let image_rank = self.snf.invariant_factors.len();
        self.k0_rank + image_rank == self.total_rank && self.boundary_rank == self.total_rank - image_rank
    }
}

fn permutation_at(
    model: &Arc<TwistModel>,
    tower: &TowerSpec,
    k: usize,
    decompose: &Decomposer,
) -> Result<(SemisimpleDecomposition, Vec<usize>), KTheoryError> {
    let cp = build_level(model.instance(), tower.level(k))?;
    let dec = decompose(&cp)?;
    let alpha = LevelAutomorphism::new(model, &cp)?;
    let perm = aut_permutation(&alpha, &dec)?;
    Ok((dec, perm))
}

/// `K_0(𝓗(G))` for `G = L ⋊_φ ℤ`, with `L` truncated at the given depth of the tower.
pub fn wang_assemble(tower: &TowerSpec, depth: usize) -> Result<WangResult, KTheoryError> {
    wang_assemble_with(tower, depth, &block_decompose)
}

pub fn wang_assemble_with(tower: &TowerSpec, depth: usize, decompose: &Decomposer) -> Result<WangResult, KTheoryError> {
    let t = tower.truncate(depth)?;
    let model = TwistModel::from_tower(&t)?;
    let cp = build_level(model.instance(), t.level(depth))?;
    let dec = decompose(&cp)?;
    let alpha = LevelAutomorphism::new(&model, &cp)?;
    let perm = aut_permutation(&alpha, &dec)?;
    let p = permutation_matrix(&perm);
    let p_inv = aut_inverse_k0(&alpha, &dec)?;
    let n = dec.rank();
    if mat_mul(&from_i64(&p), &from_i64(&p_inv)) != identity(n) {
        return Err(KTheoryError::NotPermutation(0));
    }
    let m: K0Matrix = (0..n).map(|i| (0..n).map(|j| i64::from(i == j) - p_inv[i][j]).collect()).collect();
    let snf = smith_normal_form(&from_i64(&m));
    let cert = SnfCertificate::from(&snf);
    let image_rank = snf.rank();

    let stabilization = if depth > 0 {
        let (prev, prev_perm) = permutation_at(&model, &t, depth - 1, decompose)?;
        let emb = embed_level(&prev.algebra, &cp)?;
        let inc = induced_k0(&prev, &dec, |x| Ok(emb.apply(x)?))?;
        let lhs = mat_mul(&from_i64(&p), &from_i64(&inc));
        let rhs = mat_mul(&from_i64(&inc), &from_i64(&permutation_matrix(&prev_perm)));
        let prev_orbits = cycle_lengths(&prev_perm).len();
        Some(Stabilization {
            previous_rank: prev.rank(),
            previous_orbits: prev_orbits,
            new_orbits: cycle_lengths(&perm).len() - prev_orbits,
            equivariant: lhs == rhs,
        })
    } else {
        None
    };

    Ok(WangResult {
        depth,
        total_rank: n,
        block_dims: dec.dims.clone(),
        orbit_sizes: cycle_lengths(&perm),
        permutation: perm,
        k0_rank: cert.free_rank,
        torsion: cert.torsion.clone(),
        boundary_rank: n - image_rank,
        snf: cert,
        negative_k: negative_k_record(),
        stabilization,
    })
}

/// Orbits of `x ↦ u·x` on `ℤ/modulus`, by enumeration.
pub fn unit_orbit_count(modulus: u64, u: i64) -> usize {
    let u = u.rem_euclid(modulus as i64) as u64;
    let mut seen = vec![false; modulus as usize];
    let mut count = 0;
    for s in 0..modulus {
        if seen[s as usize] {
            continue;
        }
        count += 1;
        let mut x = s;
        while !seen[x as usize] {
            seen[x as usize] = true;
            x = x * u % modulus;
        }
    }
    count
}
