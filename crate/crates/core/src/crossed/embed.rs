use std::sync::Arc;

use super::{cp_mul, CPElement, CrossedError, CrossedProduct};
use crate::exact::rational::Rational;
use crate::exact::FieldMatrix;

/// The inclusion `𝓗(G//K) ⊆ 𝓗(G//K′)` for `K′ ⊆ K`, on crossed-product coordinates.
#[derive(Clone, Debug)]
pub struct LevelEmbedding {
    coarse: Arc<CrossedProduct>,
    fine: Arc<CrossedProduct>,
    /// Image of each coarse `b_d`.
    images: Vec<CPElement>,
}

/// Expands each coarse `b_d` (a Hecke function) in the fine basis.
pub fn embed_level(coarse: &Arc<CrossedProduct>, fine: &Arc<CrossedProduct>) -> Result<LevelEmbedding, CrossedError> {
    if !coarse.instance().same_as(fine.instance()) || !fine.level().is_subset_of(coarse.level()) {
        return Err(CrossedError::NotNested);
    }
    let images = coarse
        .basis_functions()
        .iter()
        .map(|b| fine.from_hecke(&b.with_level(fine.level())?))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LevelEmbedding { coarse: coarse.clone(), fine: fine.clone(), images })
}

impl LevelEmbedding {
    pub fn coarse(&self) -> &Arc<CrossedProduct> {
        &self.coarse
    }

    pub fn fine(&self) -> &Arc<CrossedProduct> {
        &self.fine
    }

    pub fn image_of_basis(&self, d: usize) -> &CPElement {
        &self.images[d]
    }

    /// `Σ r_d b_d ↦ Σ r_d·ι(b_d)`; the embedding is left `F`-linear.
    pub fn apply(&self, x: &CPElement) -> Result<CPElement, CrossedError> {
        if x.parent().id() != self.coarse.id() {
            return Err(CrossedError::ParentMismatch);
        }
        let mut out = self.fine.zero();
        for (d, r) in x.coeffs().iter().enumerate() {
            if !r.is_zero() {
                out = out.add(&self.images[d].scalar(r));
            }
        }
        Ok(out)
    }

    /// `ι(1_K)`.
    pub fn unit_image(&self) -> &CPElement {
        &self.images[0]
    }

    /// First pair `(d₁, d₂)` with `ι(b_{d₁} b_{d₂}) ≠ ι(b_{d₁}) ι(b_{d₂})`.
    pub fn multiplicativity_failure(&self) -> Option<(usize, usize)> {
        let m = self.coarse.order();
        for a in 0..m {
            for b in 0..m {
                let prod = cp_mul(&self.coarse.basis_element(a), &self.coarse.basis_element(b)).unwrap();
                if self.apply(&prod).unwrap() != cp_mul(&self.images[a], &self.images[b]).unwrap() {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// `x` is idempotent and commutes with every `ζ^j b_d` of the fine algebra.
    pub fn is_central_idempotent(x: &CPElement) -> bool {
        let p = x.parent();
        if cp_mul(x, x).unwrap() != *x {
            return false;
        }
        let f = p.field();
        (0..p.order()).all(|d| {
            (0..f.degree() as i64).all(|j| {
                let y = p.monomial(f.zeta_pow(j), d);
                cp_mul(x, &y).unwrap() == cp_mul(&y, x).unwrap()
            })
        })
    }

    /// The corner `e·A′·e` for `e = ι(1_K)` equals the image of the coarse algebra.
    /// Compares left `F`-spans of `e (ζ^j b′_d) e` and of the images `ι(b_d)`.
    pub fn corner_equals_image(&self) -> bool {
        let fine = &self.fine;
        let f = fine.field();
        let e = self.unit_image();
        let image_span = span_matrix(f, &self.images);
        let image_rank = image_span.rank();
        if image_rank != self.coarse.order() {
            return false;
        }
        let mut corner = Vec::new();
        for d in 0..fine.order() {
            for j in 0..f.degree() as i64 {
                let y = fine.monomial(f.zeta_pow(j), d);
                corner.push(cp_mul(&cp_mul(e, &y).unwrap(), e).unwrap());
            }
        }
        let mut all = self.images.clone();
        all.extend(corner.iter().cloned());
        // corner ⊆ image, and image ⊆ corner since ι(b_d) = e ι(b_d) e
        span_matrix(f, &all).rank() == image_rank
            && self.images.iter().all(|x| &cp_mul(&cp_mul(e, x).unwrap(), e).unwrap() == x)
    }

    /// For trivial `ω`: `ι(b_d) = |F_d|⁻¹ Σ_{d′ ∈ F_d} b′_{d′}` over the fiber `F_d` of `D′ → D`.
    pub fn averaging_closed_form(&self) -> Option<Vec<CPElement>> {
        if !self.coarse.instance().omega().is_trivial() {
            return None;
        }
        let fine = &self.fine;
        let to_coarse: Vec<usize> =
            fine.section().iter().map(|&x| self.coarse.projection().apply(x)).collect();
        let out = (0..self.coarse.order())
            .map(|d| {
                let fiber: Vec<usize> = (0..fine.order()).filter(|&x| to_coarse[x] == d).collect();
                let r = Rational::new(1.into(), (fiber.len() as i64).into());
                let mut x = fine.zero();
                for &y in &fiber {
                    x = x.add(&fine.basis_element(y).scale(&r));
                }
                x
            })
            .collect();
        Some(out)
    }
}

/// Columns are coefficient vectors of the given elements.
fn span_matrix(f: &crate::exact::CyclotomicField, xs: &[CPElement]) -> FieldMatrix {
    let rows = xs.first().map_or(0, |x| x.coeffs().len());
    let mut m = FieldMatrix::zeros(f, rows, xs.len());
    for (j, x) in xs.iter().enumerate() {
        for (i, c) in x.coeffs().iter().enumerate() {
            m[(i, j)] = c.clone();
        }
    }
    m
}
