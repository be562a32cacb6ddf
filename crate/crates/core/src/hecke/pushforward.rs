use std::sync::Arc;

use super::{HeckeElement, HeckeError, HeckeInstance};
use crate::group::{quotient, GroupHom};

/// `φ_*: 𝓗(G′; F, ρ∘φ, ω∘φ) → 𝓗(G; F, ρ, ω)`.
///
/// For `g ∈ G` the value sums `s′(g′)·ω(φ(n′))` over those `g′` in a transversal of
/// `G′/N′K′` with `φ(g′n′k′) = g` for some `n′ ∈ N′`, `k′ ∈ K′`, scaled by
/// `μ′(pr′ K′) / μ(pr φ(K′))`. The result has declared level `φ(K′)`.
pub fn pushforward(phi: &GroupHom, target: &Arc<HeckeInstance>, s: &HeckeElement) -> Result<HeckeElement, HeckeError> {
    let source = s.instance();
    check_compatible(phi, source, target)?;
    let g = target.group();
    let gs = source.group();
    let level = s.level();
    let image_level = phi.image_of(level);
    target.check_in_p(&image_level)?;
    let nk = source.n().product(level)?;
    let transversal = quotient(gs, &nk)?.transversal;
    let ratio = source.mu_pr(level) / target.mu_pr(&image_level);
    let field = target.field();
    let mut values = vec![field.zero(); g.order()];
    for &y in &transversal {
        let sy = s.value(y);
        if sy.is_zero() {
            continue;
        }
        // one term per target element hit by φ(y N′K′), with the first n′ found
        let mut seen = vec![false; g.order()];
        for &n in source.n().members() {
            let omega_n = target.omega().value(phi.apply(n));
            for &k in level.members() {
                let x = phi.apply(gs.mul(gs.mul(y, n), k));
                if !seen[x] {
                    seen[x] = true;
                    values[x] += &(sy * omega_n);
                }
            }
        }
    }
    for v in values.iter_mut() {
        *v = v.scale(&ratio);
    }
    HeckeElement::from_table(target, values, &image_level)
}

fn check_compatible(phi: &GroupHom, source: &HeckeInstance, target: &HeckeInstance) -> Result<(), HeckeError> {
    let violation = |m: String| Err(HeckeError::CompatibilityViolation(m));
    if phi.source() != source.group() || phi.target() != target.group() {
        return violation("homomorphism does not connect the two groups".into());
    }
    if source.field() != target.field() {
        return violation(format!("coefficient fields differ: {} vs {}", source.field(), target.field()));
    }
    if phi.image_of(source.n()) != *target.n() {
        return violation("φ(N′) != N".into());
    }
    for x in source.group().elements() {
        if source.rho().aut(x) != target.rho().aut(phi.apply(x)) {
            return violation(format!("ρ′({x}) != ρ(φ({x}))"));
        }
    }
    for &n in source.n().members() {
        if source.omega().value(n) != target.omega().value(phi.apply(n)) {
            return violation(format!("ω′({n}) != ω(φ({n}))"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::CyclotomicField;
    use crate::group::{FiniteGroup, NormalCharacter, RhoAction, Subgroup};
    use crate::hecke::{convolve, make_element, unit_1k};

    #[test]
    fn identity_pushforward() {
        let g = FiniteGroup::cyclic(6);
        let inst = HeckeInstance::plain(&g, &CyclotomicField::new(3).unwrap());
        let k = Subgroup::new(&g, [0, 3]).unwrap();
        let f = inst.field();
        let s = make_element(&inst, &[(1, f.zeta_pow(1)), (2, f.from_int(5))], &k).unwrap();
        assert_eq!(pushforward(&GroupHom::identity(&g), &inst, &s).unwrap(), s);
    }

    #[test]
    fn inclusion_of_index_two_subgroup() {
        let q = CyclotomicField::rationals();
        let g = FiniteGroup::cyclic(4);
        let h = FiniteGroup::cyclic(2);
        let incl = GroupHom::new(&h, &g, vec![0, 2]).unwrap();
        let (src, tgt) = (HeckeInstance::plain(&h, &q), HeckeInstance::plain(&g, &q));
        let one_h = unit_1k(&src, &Subgroup::trivial(&h)).unwrap();
        let one_g = unit_1k(&tgt, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(pushforward(&incl, &tgt, &one_h).unwrap(), one_g);
        // multiplicative on a basis pair
        let x = make_element(&src, &[(1, q.from_int(3))], &Subgroup::trivial(&h)).unwrap();
        let lhs = pushforward(&incl, &tgt, &convolve(&x, &x).unwrap()).unwrap();
        let px = pushforward(&incl, &tgt, &x).unwrap();
        assert_eq!(lhs, convolve(&px, &px).unwrap());
    }

    #[test]
    fn character_mismatch_is_rejected() {
        let q = CyclotomicField::rationals();
        let g = FiniteGroup::cyclic(4);
        let h = FiniteGroup::cyclic(2);
        let pr = GroupHom::new(&g, &h, vec![0, 1, 0, 1]).unwrap();
        let n = Subgroup::new(&g, [0, 2]).unwrap();
        let omega = NormalCharacter::new(&n, &q, &[(0, q.one()), (2, q.from_int(-1))]).unwrap();
        let src = HeckeInstance::new(omega, RhoAction::trivial(&g, &q)).unwrap();
        let tgt = HeckeInstance::plain(&h, &q);
        let s = unit_1k(&src, &Subgroup::trivial(&g)).unwrap();
        assert!(matches!(pushforward(&pr, &tgt, &s), Err(HeckeError::CompatibilityViolation(_))));
    }
}
