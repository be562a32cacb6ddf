//! Arithmetic in `(ℤ/M)[x]/Φ_m` and in commutative algebras given by structure constants over it.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::exact::rational::Rational;
use crate::exact::{CyclotomicField, FieldElement};

pub type Poly = Vec<u64>;

#[derive(Clone, Debug)]
pub struct PolyRing {
    modulus: u64,
    deg: usize,
    /// Nonzero low coefficients of the monic `Φ_m`, reduced mod `M`.
    phi: Vec<(usize, u64)>,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn reduce_big(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits")
}

pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(m));
    e.gcd.is_one().then(|| reduce_big(&e.x, m))
}

impl PolyRing {
    pub fn new(field: &CyclotomicField, modulus: u64) -> Self {
        assert!((2..(1 << 62)).contains(&modulus));
        let full = field.modulus();
        let deg = field.degree();
        let phi = (0..deg).map(|j| (j, reduce_big(&full[j], modulus))).filter(|&(_, c)| c != 0).collect();
        PolyRing { modulus, deg, phi }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn zero(&self) -> Poly {
        vec![0; self.deg]
    }

    pub fn constant(&self, c: u64) -> Poly {
        let mut p = self.zero();
        p[0] = c % self.modulus;
        p
    }

    pub fn is_zero(&self, a: &Poly) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.modulus).collect()
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.iter().zip(b).map(|(&x, &y)| (x + self.modulus - y) % self.modulus).collect()
    }

    pub fn scalar(&self, a: &Poly, c: u64) -> Poly {
        a.iter().map(|&x| mulmod(x, c, self.modulus)).collect()
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let d = self.deg;
        let m = self.modulus;
        let mut wide = vec![0u64; 2 * d - 1];
        if m < (1 << 31) {
            // products stay below 2^62, so u64 arithmetic suffices
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    wide[i + j] = (wide[i + j] + x * y) % m;
                }
            }
        } else {
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    wide[i + j] = ((wide[i + j] as u128 + x as u128 * y as u128) % m as u128) as u64;
                }
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = wide[k];
            if c == 0 {
                continue;
            }
            for &(j, pj) in &self.phi {
                let t = mulmod(c, pj, m);
                wide[k - d + j] = (wide[k - d + j] + m - t) % m;
            }
        }
        wide.truncate(d);
        wide
    }

    /// Image of an exact element; `None` if a denominator is not invertible.
    pub fn reduce(&self, x: &FieldElement) -> Option<Poly> {
        let inv = inverse_mod(reduce_big(x.denominator(), self.modulus), self.modulus)?;
        Some(x.numerators().iter().map(|c| mulmod(reduce_big(c, self.modulus), inv, self.modulus)).collect())
    }

    pub fn random(&self, rng: &mut impl Rng) -> Poly {
        (0..self.deg).map(|_| rng.gen_range(0..self.modulus)).collect()
    }
}

/// Sparse structure constants: `z_i z_j = Σ_k γ_{ij}^k z_k`.
pub type Constants<T> = Vec<Vec<Vec<(usize, T)>>>;

/// A commutative algebra with basis `z_0..z_{r-1}` over `(ℤ/M)[x]/Φ_m`; `z_0` is the unit.
#[derive(Clone, Debug)]
pub struct ModAlgebra {
    pub ring: PolyRing,
    /// `None` marks a constant equal to 1.
    consts: Constants<Option<Poly>>,
    traces: Vec<Poly>,
}

pub type ModElement = Vec<Poly>;

impl ModAlgebra {
    pub fn reduce(ring: PolyRing, consts: &Constants<FieldElement>, traces: &[FieldElement]) -> Option<Self> {
        let mut out = Vec::with_capacity(consts.len());
        for row in consts {
            let mut r = Vec::with_capacity(row.len());
            for cell in row {
                let mut c = Vec::with_capacity(cell.len());
                for (k, g) in cell {
                    c.push((*k, if g.is_one() { None } else { Some(ring.reduce(g)?) }));
                }
                r.push(c);
            }
            out.push(r);
        }
        let traces = traces.iter().map(|t| ring.reduce(t)).collect::<Option<Vec<_>>>()?;
        Some(ModAlgebra { ring, consts: out, traces })
    }

    pub fn dim(&self) -> usize {
        self.consts.len()
    }

    pub fn zero(&self) -> ModElement {
        vec![self.ring.zero(); self.dim()]
    }

    pub fn one(&self) -> ModElement {
        let mut x = self.zero();
        x[0] = self.ring.constant(1);
        x
    }

    pub fn is_zero(&self, x: &ModElement) -> bool {
        x.iter().all(|c| self.ring.is_zero(c))
    }

    pub fn add(&self, x: &ModElement, y: &ModElement) -> ModElement {
        x.iter().zip(y).map(|(a, b)| self.ring.add(a, b)).collect()
    }

    pub fn sub(&self, x: &ModElement, y: &ModElement) -> ModElement {
        x.iter().zip(y).map(|(a, b)| self.ring.sub(a, b)).collect()
    }

    pub fn scalar(&self, x: &ModElement, c: u64) -> ModElement {
        x.iter().map(|a| self.ring.scalar(a, c)).collect()
    }

    pub fn mul(&self, x: &ModElement, y: &ModElement) -> ModElement {
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if self.ring.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if self.ring.is_zero(yj) {
                    continue;
                }
                let xy = self.ring.mul(xi, yj);
                for (k, g) in &self.consts[i][j] {
                    let term = match g {
                        Some(g) => self.ring.mul(&xy, g),
                        None => xy.clone(),
                    };
                    out[*k] = self.ring.add(&out[*k], &term);
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &ModElement, e: &BigUint) -> ModElement {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, x);
            }
        }
        acc
    }

    /// `tr(L_x)`; for an idempotent this is its rank, read off the constant term.
    pub fn trace(&self, x: &ModElement) -> Poly {
        let mut t = self.ring.zero();
        for (xi, ti) in x.iter().zip(&self.traces) {
            t = self.ring.add(&t, &self.ring.mul(xi, ti));
        }
        t
    }

    pub fn idempotent_rank(&self, e: &ModElement) -> Option<usize> {
        let t = self.trace(e);
        t[1..].iter().all(|&c| c == 0).then_some(t[0] as usize)
    }

    pub fn random(&self, rng: &mut impl Rng) -> ModElement {
        (0..self.dim()).map(|_| self.ring.random(rng)).collect()
    }
}

/// `n/d ≡ a (mod M)` with `|n|, d ≤ √(M/2)`.
pub fn rational_reconstruct(a: u64, modulus: u64) -> Option<Rational> {
    let m = modulus as i128;
    let bound = ((modulus / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (m, a as i128 % m);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    if n.gcd(&d) != 1 {
        return None;
    }
    Some(Rational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn pow_u64(p: u64, k: u32) -> u64 {
    (0..k).fold(1u64, |acc, _| acc * p)
}

pub fn big_pow(p: u64, k: usize) -> BigUint {
    num_traits::pow(BigUint::from(p), k)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `p` generates `(ℤ/m)^×`, so `Φ_m` stays irreducible mod `p`.
pub fn is_primitive_root(p: u64, m: u64) -> bool {
    if m <= 2 {
        return true;
    }
    if p.gcd(&m) != 1 {
        return false;
    }
    let phi = crate::exact::poly::euler_phi(m);
    let mut x = 1u64;
    for k in 1..=phi {
        x = mulmod(x, p % m, m);
        if x == 1 {
            return k == phi;
        }
    }
    false
}

/// `(ℤ/m)^×` is cyclic exactly for `m = 1, 2, 4, qᵏ, 2qᵏ` with `q` an odd prime.
pub fn unit_group_is_cyclic(m: u64) -> bool {
    if m <= 4 {
        return true;
    }
    let odd = if m.is_multiple_of(2) { m / 2 } else { m };
    if m.is_multiple_of(4) {
        return false;
    }
    let q = (3..=odd).find(|d| odd % d == 0).unwrap_or(odd);
    let mut r = odd;
    while r % q == 0 {
        r /= q;
    }
    r == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn reconstruction() {
        let m = pow_u64(29, 12);
        for (n, d) in [(1, 27), (-1, 27), (5, 3), (0, 1), (-7, 11)] {
            let a = (BigInt::from(n) * BigInt::from(inverse_mod(d as u64, m).unwrap())).mod_floor(&BigInt::from(m));
            assert_eq!(rational_reconstruct(a.to_u64().unwrap(), m), Some(rat(n, d)));
        }
    }

    #[test]
    fn ring_matches_exact_arithmetic() {
        let f = CyclotomicField::new(9).unwrap();
        let ring = PolyRing::new(&f, 101);
        let a = &f.zeta_pow(4) + &f.from_int(3);
        let b = &f.zeta_pow(7) - &f.zeta_pow(2);
        assert_eq!(ring.mul(&ring.reduce(&a).unwrap(), &ring.reduce(&b).unwrap()), ring.reduce(&(&a * &b)).unwrap());
        let big = PolyRing::new(&f, pow_u64(29, 12));
        assert_eq!(big.mul(&big.reduce(&a).unwrap(), &big.reduce(&b).unwrap()), big.reduce(&(&a * &b)).unwrap());
    }

    #[test]
    fn unit_groups() {
        assert!([1, 2, 4, 9, 27, 5, 25, 18].iter().all(|&m| unit_group_is_cyclic(m)));
        assert!([8, 12, 15, 16, 21].iter().all(|&m| !unit_group_is_cyclic(m)));
        assert!(is_primitive_root(29, 27) && is_primitive_root(3, 4) && !is_primitive_root(5, 4));
    }
}
