//! The averaging splitting of `p: A ⊗_F M → M`, `A = F∗D`, for `M = A^m`.
//!
//! `A` is free as a right `F`-module on the `b_d`, so an element of `A ⊗_F M` is stored as
//! a tuple `(m_d)_d` standing for `Σ_d b_d ⊗ m_d`.

use std::sync::Arc;

use serde::Serialize;

use super::{cp_mul, CPElement, CrossedProduct};
use crate::exact::rational::Rational;

type ModuleElement = Vec<CPElement>;
type Induced = Vec<ModuleElement>;

#[derive(Clone, Debug, Serialize)]
pub struct MaschkeReport {
    pub module_rank: usize,
    pub vectors_checked: usize,
    pub actions_checked: usize,
    /// `p ∘ i = id`.
    pub split: bool,
    /// `i(a·x) = a·i(x)`.
    pub equivariant: bool,
}

impl MaschkeReport {
    pub fn passed(&self) -> bool {
        self.split && self.equivariant
    }
}

fn act_on_module(a: &CPElement, x: &ModuleElement) -> ModuleElement {
    x.iter().map(|c| cp_mul(a, c).unwrap()).collect()
}

fn add_module(x: &ModuleElement, y: &ModuleElement) -> ModuleElement {
    x.iter().zip(y).map(|(a, b)| a.add(b)).collect()
}

/// `i(x) = Σ_d b_d ⊗ |D|⁻¹ b_d⁻¹ x`.
fn section_map(cp: &Arc<CrossedProduct>, x: &ModuleElement) -> Induced {
    let inv = Rational::new(1.into(), (cp.order() as i64).into());
    (0..cp.order()).map(|d| act_on_module(&cp.basis_inverse(d).scale(&inv), x)).collect()
}

/// `p(Σ b_d ⊗ m_d) = Σ b_d m_d`.
fn projection_map(cp: &Arc<CrossedProduct>, t: &Induced, rank: usize) -> ModuleElement {
    let mut out = vec![cp.zero(); rank];
    for (d, md) in t.iter().enumerate() {
        out = add_module(&out, &act_on_module(&cp.basis_element(d), md));
    }
    out
}

/// `(r b_f)·(b_d ⊗ m) = b_{fd} ⊗ c_{fd}⁻¹(r·w(f,d))·m`, extended additively.
fn act_on_induced(cp: &Arc<CrossedProduct>, a: &CPElement, t: &Induced, rank: usize) -> Induced {
    let dg = cp.d();
    let mut out: Induced = vec![vec![cp.zero(); rank]; cp.order()];
    for (f, r) in a.coeffs().iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        for (d, md) in t.iter().enumerate() {
            let fd = dg.mul(f, d);
            let s = cp.c(fd).inverse().apply_unchecked(&(r * cp.w(f, d)));
            let moved = act_on_module(&cp.monomial(s, 0), md);
            out[fd] = add_module(&out[fd], &moved);
        }
    }
    out
}

/// Verifies the splitting on a ℚ-spanning set of `A^m`: `b_d e_i`, times `ζ^j` when `D` acts
/// nontrivially on `F` (otherwise both maps are `F`-linear, which the `ζ` action confirms).
/// Equivariance is checked against the ring generators `b_f` and `ζ`.
pub fn maschke_section(cp: &Arc<CrossedProduct>, rank: usize) -> MaschkeReport {
    let f = cp.field();
    let scalars: Vec<i64> = if cp.is_linear() { vec![0] } else { (0..f.degree() as i64).collect() };
    let generators: Vec<CPElement> =
        (0..cp.order()).flat_map(|d| scalars.iter().map(move |&j| (d, j))).map(|(d, j)| cp.monomial(f.zeta_pow(j), d)).collect();
    let mut actions: Vec<CPElement> = (0..cp.order()).map(|d| cp.basis_element(d)).collect();
    if f.degree() > 1 {
        actions.push(cp.monomial(f.zeta_pow(1), 0));
    }
    let mut vectors = Vec::new();
    for i in 0..rank {
        for g in &generators {
            let mut x = vec![cp.zero(); rank];
            x[i] = g.clone();
            vectors.push(x);
        }
    }
    let mut report = MaschkeReport { module_rank: rank, vectors_checked: 0, actions_checked: 0, split: true, equivariant: true };
    for x in &vectors {
        report.vectors_checked += 1;
        let ix = section_map(cp, x);
        if &projection_map(cp, &ix, rank) != x {
            report.split = false;
        }
        for a in &actions {
            report.actions_checked += 1;
            if section_map(cp, &act_on_module(a, x)) != act_on_induced(cp, a, &ix, rank) {
                report.equivariant = false;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::tests::{example_c, galois_twist};
    use crate::crossed::build_level;
    use crate::exact::CyclotomicField;
    use crate::group::{FiniteGroup, Subgroup};
    use crate::hecke::HeckeInstance;

    #[test]
    fn trivial_d() {
        let g = FiniteGroup::cyclic(3);
        let inst = HeckeInstance::plain(&g, &CyclotomicField::rationals());
        let cp = build_level(&inst, &Subgroup::whole(&g)).unwrap();
        assert_eq!(cp.order(), 1);
        assert!(maschke_section(&cp, 2).passed());
    }

    #[test]
    fn example_c_regular() {
        let inst = example_c();
        let cp = build_level(&inst, &Subgroup::trivial(inst.group())).unwrap();
        let r = maschke_section(&cp, 1);
        assert_eq!(r.vectors_checked, 2);
        assert!(r.passed());
    }

    #[test]
    fn z3_regular_and_twisted() {
        let g = FiniteGroup::cyclic(3);
        let inst = HeckeInstance::plain(&g, &CyclotomicField::rationals());
        let cp = build_level(&inst, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(maschke_section(&cp, 1).vectors_checked, 3);
        assert!(maschke_section(&cp, 1).passed());
        let (inst, k) = galois_twist();
        let tw = build_level(&inst, &k).unwrap();
        assert!(maschke_section(&tw, 2).passed());
    }
}
