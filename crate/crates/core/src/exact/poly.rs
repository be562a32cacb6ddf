//! Dense polynomials over the integers and rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;

/// Ascending coefficients, no trailing zeros (the zero polynomial is empty).
pub type IntPoly = Vec<BigInt>;
pub type RatPoly = Vec<Rational>;

fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Exact quotient of `num` by a monic `den`. Panics if the division leaves a remainder.
fn div_exact_monic(num: &IntPoly, den: &IntPoly) -> IntPoly {
    let mut rem = num.clone();
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    if rem.len() < den.len() {
        assert!(rem.iter().all(|c| c.is_zero()));
        return Vec::new();
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    trim(&mut quot);
    quot
}

fn mul_int(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

pub fn euler_phi(m: u64) -> u64 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u64
}

/// The m-th cyclotomic polynomial, via `x^m - 1 = prod_{d | m} Phi_d`.
pub fn cyclotomic_polynomial(m: u64) -> IntPoly {
    assert!(m >= 1);
    let mut num: IntPoly = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    let mut den: IntPoly = vec![BigInt::one()];
    for d in divisors(m) {
        if d < m {
            den = mul_int(&den, &cyclotomic_polynomial(d));
        }
    }
    div_exact_monic(&num, &den)
}

pub fn eval_rat(p: &RatPoly, x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Human-readable form, highest degree first.
pub fn format_rat_poly(p: &RatPoly) -> String {
    let mut terms = Vec::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        let coeff = if i > 0 && c.is_one() {
            String::new()
        } else if i > 0 && *c == -Rational::one() {
            "-".to_string()
        } else if i > 0 {
            format!("{c}*")
        } else {
            c.to_string()
        };
        terms.push(format!("{coeff}{mono}"));
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}
