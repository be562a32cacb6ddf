//! Smith normal form over the integers, with both transforms and their inverses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub type IntMatrix = Vec<Vec<BigInt>>;

/// `P·M·Q = S` with `P`, `Q` unimodular, so `M = U·S·V` for `U = P⁻¹`, `V = Q⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub p: IntMatrix,
    pub q: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.s.len().min(self.s.first().map_or(0, |r| r.len()));
        (0..n).map(|i| self.s[i][i].clone()).filter(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// `coker M ≅ ℤ^free ⊕ ⨁ ℤ/d`: the free rank and the nontrivial torsion orders.
    pub fn cokernel(&self) -> (usize, Vec<BigInt>) {
        let free = self.s.len() - self.rank();
        let torsion = self.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
        (free, torsion)
    }

    /// For a split injection (all invariant factors 1, full column rank): `L = Q·[I 0]·P` with `L·M = I`.
    pub fn left_inverse(&self) -> Option<IntMatrix> {
        let rows = self.s.len();
        let cols = self.s.first().map_or(0, |r| r.len());
        let f = self.invariant_factors();
        if f.len() != cols || f.iter().any(|d| !d.is_one()) {
            return None;
        }
        // [I 0] P keeps the first `cols` rows of P
        let top: IntMatrix = self.p[..cols].to_vec();
        let _ = rows;
        Some(mat_mul(&self.q, &top))
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| row.iter().enumerate().fold(BigInt::zero(), |acc, (k, x)| if x.is_zero() { acc } else { acc + x * &b[k][j] }))
                .collect()
        })
        .collect()
}

pub fn from_i64(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

struct Work {
    s: IntMatrix,
    p: IntMatrix,
    u: IntMatrix,
    q: IntMatrix,
    v: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.s.swap(i, j);
            self.p.swap(i, j);
            for row in self.u.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in self.s.iter_mut().chain(self.q.iter_mut()) {
                row.swap(i, j);
            }
            self.v.swap(i, j);
        }
    }

    /// row_i += c·row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        for m in [&mut self.s, &mut self.p] {
            let rj = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(rj) {
                *x += c * y;
            }
        }
        // U ← U·E⁻¹: col_j -= c·col_i
        for row in self.u.iter_mut() {
            let ui = row[i].clone();
            row[j] -= c * ui;
        }
    }

    /// col_i += c·col_j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        for m in [&mut self.s, &mut self.q] {
            for row in m.iter_mut() {
                let x = row[j].clone();
                row[i] += c * x;
            }
        }
        // V ← E⁻¹·V: row_j -= c·row_i
        let vi = self.v[i].clone();
        for (x, y) in self.v[j].iter_mut().zip(vi) {
            *x -= c * y;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.s, &mut self.p] {
            for x in m[i].iter_mut() {
                *x = -&*x;
            }
        }
        for row in self.u.iter_mut() {
            row[i] = -&row[i];
        }
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut w = Work { s: m.clone(), p: identity(rows), u: identity(rows), q: identity(cols), v: identity(cols) };
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !w.s[i][j].is_zero() && best.is_none_or(|(bi, bj)| w.s[i][j].abs() < w.s[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(w);
            };
            w.swap_rows(t, bi);
            w.swap_cols(t, bj);
            let mut clean = true;
            for i in t + 1..rows {
                if !w.s[i][t].is_zero() {
                    let qt = w.s[i][t].div_floor(&w.s[t][t]);
                    w.add_row(i, t, &-qt);
                    clean &= w.s[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.s[t][j].is_zero() {
                    let qt = w.s[t][j].div_floor(&w.s[t][t]);
                    w.add_col(j, t, &-qt);
                    clean &= w.s[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and start over
            let piv = w.s[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&w.s[i][j] % &piv).is_zero()));
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.s[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    finish(w)
}

fn finish(w: Work) -> SmithForm {
    SmithForm { s: w.s, p: w.p, q: w.q, u: w.u, v: w.v }
}

/// Exact SNF certificate for reports.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SnfCertificate {
    pub invariant_factors: Vec<String>,
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

impl From<&SmithForm> for SnfCertificate {
    fn from(f: &SmithForm) -> Self {
        let (free_rank, torsion) = f.cokernel();
        SnfCertificate {
            invariant_factors: f.invariant_factors().iter().map(|d| d.to_string()).collect(),
            free_rank,
            torsion: torsion.iter().map(|d| d.to_string()).collect(),
        }
    }
}
