//! Dense linear algebra over a cyclotomic field.
//!
//! Elimination divides by pivots using exact field inverses, so no entry is ever rounded.

use super::cyclotomic::{CyclotomicField, FieldElement};
use super::poly::RatPoly;
use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    field: CyclotomicField,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn zeros(field: &CyclotomicField, rows: usize, cols: usize) -> Self {
        FieldMatrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &CyclotomicField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: &CyclotomicField, rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data: Vec<FieldElement> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        FieldMatrix { field: field.clone(), rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = FieldMatrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv().expect("nonzero pivot");
            for j in c..self.cols {
                self[(r, j)] = &self[(r, j)] * &inv;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if !self[(r, j)].is_zero() {
                        self[(i, j)] = &self[(i, j)] - &(&f * &self[(r, j)]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn det(&self) -> FieldElement {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in c + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..m.cols {
                    if !m[(c, j)].is_zero() {
                        m[(i, j)] = &m[(i, j)] - &(&f * &m[(c, j)]);
                    }
                }
            }
        }
        det
    }

    /// A basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&m[(r, f)];
                }
                v
            })
            .collect()
    }

    /// Solves `A x = b`; `None` if inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FieldMatrix::zeros(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for FieldMatrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FieldMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        &mut self.data[i * self.cols + j]
    }
}

/// Minimal polynomial over `Q`: the first linear dependency among `1, a, a^2, ...`.
pub fn minimal_polynomial(a: &FieldElement) -> RatPoly {
    let field = a.field();
    let q = CyclotomicField::rationals();
    let d = field.degree();
    let mut powers: Vec<Vec<Rational>> = Vec::new();
    let mut cur = field.one();
    loop {
        powers.push(cur.coefficients());
        let k = powers.len();
        // columns are the powers computed so far; look for a kernel vector
        let mut m = FieldMatrix::zeros(&q, d, k);
        for (j, p) in powers.iter().enumerate() {
            for i in 0..d {
                m[(i, j)] = q.from_rational(&p[i]);
            }
        }
        let ns = m.nullspace();
        if let Some(v) = ns.first() {
            let lead = v[k - 1].as_rational().expect("rational entry");
            assert!(lead != Rational::from_integer(0.into()), "kernel vector involves the top power");
            return v.iter().map(|c| c.as_rational().expect("rational entry") / &lead).collect();
        }
        cur = &cur * a;
    }
}
