//! Cyclotomic fields `Q(zeta_m)` in the power basis, with exact arithmetic.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{cyclotomic_polynomial, IntPoly, RatPoly};
use super::rational::{format_rational, parse_rational, Rational};
use super::FieldError;

struct FieldData {
    conductor: u64,
    modulus: IntPoly,
    degree: usize,
    /// `zeta^k` in the power basis, for `k in 0..conductor`.
    powers: Vec<Vec<BigInt>>,
}

/// The field `Q(zeta_m)`.
///
/// Conductors `m = 2 (mod 4)` are normalized to `m / 2`, since `Q(zeta_2k) = Q(zeta_k)` for odd `k`.
#[derive(Clone)]
pub struct CyclotomicField(Arc<FieldData>);

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.conductor == other.0.conductor
    }
}
impl Eq for CyclotomicField {}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.conductor == 1 {
            write!(f, "Q")
        } else {
            write!(f, "Q(zeta_{})", self.0.conductor)
        }
    }
}

impl CyclotomicField {
    pub fn new(conductor: u64) -> Result<Self, FieldError> {
        if conductor == 0 {
            return Err(FieldError::BadConductor(conductor));
        }
        let m = if conductor % 4 == 2 { conductor / 2 } else { conductor };
        let modulus = cyclotomic_polynomial(m);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic modulus
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for i in 0..degree {
                    cur[i] -= &top * &modulus[i];
                }
            }
        }
        Ok(CyclotomicField(Arc::new(FieldData { conductor: m, modulus, degree, powers })))
    }

    pub fn rationals() -> Self {
        Self::new(1).expect("conductor 1")
    }

    pub fn conductor(&self) -> u64 {
        self.0.conductor
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.0.modulus
    }

    /// Orders of roots of unity available in this field.
    pub fn root_order_bound(&self) -> u64 {
        let m = self.conductor();
        if m % 2 == 1 {
            2 * m
        } else {
            m
        }
    }

    pub fn tag(&self) -> String {
        format!("cyclotomic:{}", self.conductor())
    }

    pub fn from_tag(tag: &str) -> Result<Self, FieldError> {
        let m = tag
            .strip_prefix("cyclotomic:")
            .and_then(|s| s.parse::<u64>().ok())
            .ok_or_else(|| FieldError::Parse(tag.to_string()))?;
        Self::new(m)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), num: vec![BigInt::zero(); self.degree()], den: BigInt::one() }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(&Rational::one())
    }

    pub fn from_rational(&self, r: &Rational) -> FieldElement {
        let mut num = vec![BigInt::zero(); self.degree()];
        num[0] = r.numer().clone();
        FieldElement { field: self.clone(), num, den: r.denom().clone() }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// `zeta_m^k`, for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> FieldElement {
        let m = self.conductor() as i64;
        let idx = k.rem_euclid(m) as usize;
        FieldElement { field: self.clone(), num: self.0.powers[idx].clone(), den: BigInt::one() }
    }

    pub fn from_coefficients(&self, coeffs: &[Rational]) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.degree() {
            return Err(FieldError::WrongLength { expected: self.degree(), got: coeffs.len() });
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(FieldElement::normalized(self.clone(), num, den))
    }

    /// A primitive root of unity of the given order.
    pub fn root_of_unity(&self, order: u64) -> Result<FieldElement, FieldError> {
        let bound = self.root_order_bound();
        if order == 0 || !bound.is_multiple_of(order) {
            return Err(FieldError::OrderNotSupported { order, field: self.to_string() });
        }
        let m = self.conductor();
        if m.is_multiple_of(2) {
            return Ok(self.zeta_pow((m / order) as i64));
        }
        // eta = -zeta^((m+1)/2) is a primitive 2m-th root of unity
        let eta = -&self.zeta_pow(m.div_ceil(2) as i64);
        Ok(eta.pow((bound / order) as i64))
    }

    /// Exponents `k in 1..=m` coprime to the conductor, i.e. the Galois group.
    pub fn galois_exponents(&self) -> Vec<u64> {
        let m = self.conductor();
        (1..=m).filter(|k| k.gcd(&m) == 1).collect()
    }

    fn reduce_wide(&self, wide: Vec<BigInt>, den: BigInt) -> FieldElement {
        // wide is indexed by exponent modulo the conductor
        let d = self.degree();
        let mut num = vec![BigInt::zero(); d];
        for (k, c) in wide.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < d {
                num[k] += c;
            } else {
                for (i, p) in self.0.powers[k].iter().enumerate() {
                    if !p.is_zero() {
                        num[i] += &c * p;
                    }
                }
            }
        }
        FieldElement::normalized(self.clone(), num, den)
    }
}

/// An element of `Q(zeta_m)`, stored as integer numerators over a common denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: CyclotomicField,
    num: Vec<BigInt>,
    den: BigInt,
}

/// Selector for [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Neg,
}

/// Checked arithmetic; `b` is ignored for the unary operations.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement, FieldError> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Inv => a.inv(),
        ArithOp::Neg => Ok(-a),
    }
}

impl FieldElement {
    fn normalized(field: CyclotomicField, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        if num.iter().all(|c| c.is_zero()) {
            return FieldElement { field, num, den: BigInt::one() };
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c /= &g;
            }
            den /= &g;
        }
        FieldElement { field, num, den }
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// Power-basis coefficients.
    pub fn coefficients(&self) -> Vec<Rational> {
        self.num.iter().map(|c| Rational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn coefficient(&self, i: usize) -> Rational {
        Rational::new(self.num[i].clone(), self.den.clone())
    }

    /// The common denominator of the coefficients.
    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    /// The value as a rational number, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(self.coefficient(0))
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.field != other.field {
            Err(FieldError::FieldMismatch { left: self.field.to_string(), right: other.field.to_string() })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self, subtract: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if subtract { -other } else { other.clone() };
        }
        let den = &self.den * &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let (x, y) = (a * &other.den, b * &self.den);
                if subtract {
                    x - y
                } else {
                    x + y
                }
            })
            .collect();
        Self::normalized(self.field.clone(), num, den)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return self.field.zero();
        }
        let d = self.field.degree();
        if d == 1 {
            return Self::normalized(self.field.clone(), vec![&self.num[0] * &other.num[0]], &self.den * &other.den);
        }
        let m = self.field.conductor() as usize;
        let mut wide = vec![BigInt::zero(); m.max(2 * d - 1)];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    wide[(i + j) % m] += a * b;
                }
            }
        }
        wide.truncate(m);
        self.field.reduce_wide(wide, &self.den * &other.den)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::normalized(self.field.clone(), num, &self.den * r.denom())
    }

    /// The image under `zeta -> zeta^k`.
    pub fn conjugate(&self, k: i64) -> Self {
        let m = self.field.conductor() as i64;
        let mut wide = vec![BigInt::zero(); m as usize];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                wide[((j as i64) * k).rem_euclid(m) as usize] += c;
            }
        }
        self.field.reduce_wide(wide, self.den.clone())
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> Rational {
        let adj = self.adjugate();
        (&adj * self).as_rational().expect("norm lies in Q")
    }

    fn adjugate(&self) -> Self {
        let mut adj = self.field.one();
        for k in self.field.galois_exponents() {
            if k != 1 {
                adj = &adj * &self.conjugate(k as i64);
            }
        }
        adj
    }

    /// Multiplicative inverse, as the product of the other conjugates over the norm.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.field.from_rational(&r.recip()));
        }
        let adj = self.adjugate();
        let n = (&adj * self).as_rational().expect("norm lies in Q");
        Ok(adj.scale(&n.recip()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("power of zero with negative exponent").pow(-e);
        }
        let mut base = self.clone();
        let mut acc = self.field.one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Smallest `n >= 1` with `self^n = 1`, if this is a root of unity.
    pub fn root_order(&self) -> Option<u64> {
        let bound = self.field.root_order_bound();
        let mut acc = self.clone();
        for n in 1..=bound {
            if acc.is_one() {
                return Some(n);
            }
            acc = &acc * self;
        }
        None
    }

    /// Monic minimal polynomial over `Q`, ascending coefficients.
    pub fn minimal_polynomial(&self) -> RatPoly {
        super::linalg::minimal_polynomial(self)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coefficients().iter().map(format_rational).collect()
    }

    pub fn from_strings(field: &CyclotomicField, coeffs: &[String]) -> Result<Self, FieldError> {
        let parsed = coeffs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
        if parsed.len() < field.degree() && !parsed.is_empty() {
            // short lists are padded with zeros
            let mut padded = parsed;
            padded.resize(field.degree(), Rational::zero());
            return field.from_coefficients(&padded);
        }
        field.from_coefficients(&parsed)
    }

    /// The image under `Q(zeta_m) -> Q(zeta_m')`, `zeta_m -> zeta_m'^(m'/m)`; needs `m | m'`.
    pub fn embed_into(&self, target: &CyclotomicField) -> Result<Self, FieldError> {
        let (m, t) = (self.field.conductor(), target.conductor());
        if t % m != 0 {
            return Err(FieldError::FieldMismatch { left: self.field.to_string(), right: target.to_string() });
        }
        let step = (t / m) as i64;
        let mut out = target.zero();
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                out += &target.zeta_pow(i as i64 * step).scale(&Rational::from_integer(c.clone()));
            }
        }
        Ok(out.scale(&Rational::new(BigInt::one(), self.den.clone())))
    }

    /// Lexicographic comparison of the coefficient vectors.
    pub fn cmp_coefficients(&self, other: &Self) -> std::cmp::Ordering {
        for i in 0..self.num.len() {
            let o = self.coefficient(i).cmp(&other.coefficient(i));
            if o != std::cmp::Ordering::Equal {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                assert!(self.field == rhs.field, "field mismatch: {} vs {}", self.field, rhs.field);
                $body(self, rhs)
            }
        }
        impl std::ops::$tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &FieldElement, b: &FieldElement| a.add_unchecked(b, false));
binop!(Sub, sub, |a: &FieldElement, b: &FieldElement| a.add_unchecked(b, true));
binop!(Mul, mul, |a: &FieldElement, b: &FieldElement| a.mul_unchecked(b));

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl std::ops::AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        *self = &*self + rhs;
    }
}

/// The Galois automorphism `zeta -> zeta^k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldAut {
    field: CyclotomicField,
    exponent: u64,
}

impl FieldAut {
    pub fn new(field: &CyclotomicField, k: i64) -> Result<Self, FieldError> {
        let m = field.conductor() as i64;
        let k = k.rem_euclid(m.max(1));
        let k = if m == 1 { 1 } else { k };
        if (k as u64).gcd(&(m as u64)) != 1 {
            return Err(FieldError::NotInvertibleExponent { k, conductor: m as u64 });
        }
        Ok(FieldAut { field: field.clone(), exponent: k as u64 })
    }

    pub fn identity(field: &CyclotomicField) -> Self {
        FieldAut { field: field.clone(), exponent: 1 }
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn is_identity(&self) -> bool {
        self.exponent == 1
    }

    pub fn compose(&self, other: &FieldAut) -> FieldAut {
        let m = self.field.conductor();
        FieldAut { field: self.field.clone(), exponent: (self.exponent * other.exponent) % m.max(1) }
            .normalize()
    }

    fn normalize(mut self) -> Self {
        if self.field.conductor() == 1 {
            self.exponent = 1;
        }
        self
    }

    pub fn inverse(&self) -> FieldAut {
        let m = self.field.conductor();
        if m == 1 {
            return self.clone();
        }
        let inv = (1..m).find(|k| (k * self.exponent) % m == 1).expect("unit modulo conductor");
        FieldAut { field: self.field.clone(), exponent: inv }
    }

    pub fn apply(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if a.field != self.field {
            return Err(FieldError::FieldMismatch { left: self.field.to_string(), right: a.field.to_string() });
        }
        Ok(self.apply_unchecked(a))
    }

    pub(crate) fn apply_unchecked(&self, a: &FieldElement) -> FieldElement {
        if self.exponent == 1 || self.field.conductor() == 1 {
            a.clone()
        } else {
            a.conjugate(self.exponent as i64)
        }
    }
}

/// `sigma(a)`; the free-function form of [`FieldAut::apply`].
pub fn apply_aut(sigma: &FieldAut, a: &FieldElement) -> Result<FieldElement, FieldError> {
    sigma.apply(a)
}

pub fn root_of_unity(field: &CyclotomicField, order: u64) -> Result<FieldElement, FieldError> {
    field.root_of_unity(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn q(m: u64) -> CyclotomicField {
        CyclotomicField::new(m).unwrap()
    }

    #[test]
    fn i_squared() {
        let f = q(4);
        let z = f.zeta_pow(1);
        assert_eq!(&z * &z, f.from_int(-1));
    }

    #[test]
    fn rational_sum() {
        let f = q(1);
        let s = f.from_rational(&rat(2, 3)) + f.from_rational(&rat(1, 6));
        assert_eq!(s, f.from_rational(&rat(5, 6)));
    }

    #[test]
    fn inverse_of_one_plus_zeta3() {
        let f = q(3);
        let a = f.one() + f.zeta_pow(1);
        let inv = field_arith(&a, &a, ArithOp::Inv).unwrap();
        assert_eq!(inv, -f.zeta_pow(1));
        // oracle: solve (1+z)(x0 + x1 z) = 1 over the power basis, z^2 = -1 - z:
        // x0 - x1 = 1, x0 = 0 ... i.e. x = -z
        assert!((&inv * &a).is_one());
    }

    #[test]
    fn division_by_zero() {
        let f = q(5);
        assert!(matches!(f.zero().inv(), Err(FieldError::DivisionByZero)));
    }

    #[test]
    fn mismatch_is_reported() {
        let a = q(3).one();
        let b = q(4).one();
        assert!(matches!(a.try_add(&b), Err(FieldError::FieldMismatch { .. })));
        assert!(matches!(field_arith(&a, &b, ArithOp::Mul), Err(FieldError::FieldMismatch { .. })));
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(root_of_unity(&q(1), 1).unwrap(), q(1).one());
        assert_eq!(root_of_unity(&q(1), 2).unwrap(), q(1).from_int(-1));
        assert_eq!(root_of_unity(&q(4), 4).unwrap(), q(4).zeta_pow(1));
        assert!(matches!(root_of_unity(&q(4), 3), Err(FieldError::OrderNotSupported { .. })));
        for m in [1u64, 3, 4, 5, 8, 9, 12, 27] {
            let f = q(m);
            for order in 1..=f.root_order_bound() {
                if f.root_order_bound().is_multiple_of(order) {
                    let r = f.root_of_unity(order).unwrap();
                    assert_eq!(r.root_order(), Some(order), "m={m} order={order}");
                }
            }
        }
    }

    #[test]
    fn automorphisms() {
        let f = q(4);
        let z = f.zeta_pow(1);
        let id = FieldAut::new(&f, 1).unwrap();
        let conj = FieldAut::new(&f, 3).unwrap();
        assert_eq!(apply_aut(&id, &z).unwrap(), z);
        assert_eq!(apply_aut(&conj, &z).unwrap(), -&z);
        for b in [f.one(), z.clone()] {
            assert_eq!(conj.apply(&conj.apply(&b).unwrap()).unwrap(), b);
        }
        assert!(FieldAut::new(&f, 2).is_err());
        assert!(conj.compose(&conj).is_identity());
        assert_eq!(FieldAut::new(&q(9), 2).unwrap().inverse().exponent(), 5);
    }

    #[test]
    fn aut_is_ring_hom_on_power_basis() {
        let f = q(9);
        for k in f.galois_exponents() {
            let s = FieldAut::new(&f, k as i64).unwrap();
            assert!(s.apply(&f.one()).unwrap().is_one());
            for i in 0..6 {
                for j in 0..6 {
                    let (a, b) = (f.zeta_pow(i), f.zeta_pow(j) + f.from_rational(&rat(1, 2)));
                    assert_eq!(s.apply(&(&a * &b)).unwrap(), &s.apply(&a).unwrap() * &s.apply(&b).unwrap());
                    assert_eq!(s.apply(&(&a + &b)).unwrap(), &s.apply(&a).unwrap() + &s.apply(&b).unwrap());
                }
            }
        }
    }

    #[test]
    fn norms_and_inverses_in_degree_18() {
        let f = q(27);
        let a = f.from_int(3) + f.zeta_pow(5) - f.zeta_pow(17).scale(&rat(2, 7));
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert_eq!(f.from_int(2).norm(), int(2).pow(18));
    }

    #[test]
    fn conductor_two_is_q() {
        assert_eq!(q(2), q(1));
        assert_eq!(q(6), q(3));
        assert_eq!(q(6).degree(), 2);
    }

    #[test]
    fn string_round_trip() {
        let f = q(9);
        let a = f.zeta_pow(4).scale(&rat(-3, 8)) + f.from_rational(&rat(1, 3));
        let back = FieldElement::from_strings(&f, &a.to_strings()).unwrap();
        assert_eq!(a, back);
        assert_eq!(CyclotomicField::from_tag(&f.tag()).unwrap(), f);
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let (small, big) = (q(3), q(9));
        let z = small.zeta_pow(1);
        let w = z.embed_into(&big).unwrap();
        assert_eq!(w, big.zeta_pow(3));
        let a = &small.from_rational(&rat(2, 5)) + &z;
        let b = small.zeta_pow(2).scale(&rat(-1, 3));
        assert_eq!((&a * &b).embed_into(&big).unwrap(), &a.embed_into(&big).unwrap() * &b.embed_into(&big).unwrap());
        assert!(z.embed_into(&q(4)).is_err());
    }
}
