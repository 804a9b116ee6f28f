//! Small finite fields `GF(p^k)` as lookup tables.

use crate::error::{Error, Result};
use crate::numbers::prime_power;

/// Elements are `0..q`, read as base-`p` digit vectors of polynomial
/// coefficients (constant term in the lowest digit).
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: usize,
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
}

/// Fields with more elements than this are refused.
pub const MAX_FIELD_ORDER: u64 = 256;

fn poly_mul_mod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let k = modulus.len() - 1;
    let mut prod = vec![0usize; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // modulus is monic of degree k
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let idx = d - k + i;
            prod[idx] = (prod[idx] + p * p - c * m % p) % p;
        }
    }
    prod.truncate(k);
    prod.resize(k, 0);
    prod
}

fn digits(mut x: usize, p: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(x % p);
        x /= p;
    }
    out
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Whether the monic polynomial (coefficients low to high) has a factor
/// of degree `1..=deg/2`, by trial division.
fn is_irreducible(poly: &[usize], p: usize) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut divisor = digits(low, p, d);
            divisor.push(1);
            if remainder(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn remainder(num: &[usize], den: &[usize], p: usize) -> Vec<usize> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    for d in (dd..r.len()).rev() {
        let c = r[d];
        if c == 0 {
            continue;
        }
        for (i, &m) in den.iter().enumerate() {
            let idx = d - dd + i;
            r[idx] = (r[idx] + p * p - c * m % p) % p;
        }
    }
    r.truncate(dd);
    r
}

impl FiniteField {
    pub fn new(q: u64) -> Result<FiniteField> {
        let (p, k) = prime_power(q).ok_or(Error::NotAPrimePower(q))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::SizeLimitExceeded {
                what: "field order".into(),
                requested: q as u128,
                limit: MAX_FIELD_ORDER as u128,
            });
        }
        let (p, k, q) = (p as usize, k as usize, q as usize);
        let modulus = (0..p.pow(k as u32))
            .map(|low| {
                let mut m = digits(low, p, k);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))
            .expect("irreducible polynomials exist in every degree");
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&sum, p) as u16;
                mul[a * q + b] = undigits(&poly_mul_mod(&da, &db, &modulus, p), p) as u16;
            }
        }
        Ok(FiniteField { p, q, add, mul })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }
}
