//! Exact combinatorial and arithmetic functions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Stirling numbers of the second kind via `S(s,r) = r·S(s−1,r) + S(s−1,r−1)`.
pub fn stirling2(s: u64, r: u64) -> BigInt {
    if r > s {
        return BigInt::zero();
    }
    let (s, r) = (s as usize, r as usize);
    let mut row = vec![BigInt::zero(); r + 1];
    row[0] = BigInt::one();
    for _ in 0..s {
        for j in (1..=r).rev() {
            let prev = std::mem::take(&mut row[j]);
            row[j] = prev * j + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    row.swap_remove(r)
}

/// Gaussian binomial `[n k]_q` for an integer `q ≥ 2`, by the product
/// formula. Each partial product is an exact Gaussian binomial, so every
/// division is exact.
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let q = BigInt::from(q);
    let mut acc = BigInt::one();
    for i in 0..k {
        let num = num_traits::pow(q.clone(), (n - i) as usize) - 1u32;
        let den = num_traits::pow(q.clone(), (i + 1) as usize) - 1u32;
        acc = acc * num / den;
    }
    acc
}

/// Coefficients (constant term first) of `[n k]_q` as a polynomial in `q`,
/// from the q-Pascal rule `[n k] = [n−1 k−1] + q^k [n−1 k]`.
pub fn gaussian_binomial_poly(n: u64, k: u64) -> Vec<BigInt> {
    if k > n {
        return vec![BigInt::zero()];
    }
    let (n, k) = (n as usize, k as usize);
    // table[j] holds [m j] for the current m
    let mut table: Vec<Vec<BigInt>> = vec![vec![BigInt::zero()]; k + 1];
    table[0] = vec![BigInt::one()];
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            let shifted = &table[j];
            let mut next = table[j - 1].clone();
            let len = next.len().max(shifted.len() + j);
            next.resize(len, BigInt::zero());
            for (i, c) in shifted.iter().enumerate() {
                next[i + j] += c;
            }
            while next.len() > 1 && next.last().is_some_and(|c| c.is_zero()) {
                next.pop();
            }
            table[j] = next;
        }
    }
    table.swap_remove(k)
}

pub fn eval_poly(coeffs: &[BigInt], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

/// Prime factorisation of a positive integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredInteger {
    pub n: u64,
    /// `(p, α)` with strictly increasing primes.
    pub factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    pub fn new(n: u64) -> FactoredInteger {
        assert!(n >= 1, "factorising zero");
        let mut factors = Vec::new();
        let mut m = n;
        let mut p = 2;
        while p * p <= m {
            if m.is_multiple_of(p) {
                let mut a = 0;
                while m.is_multiple_of(p) {
                    m /= p;
                    a += 1;
                }
                factors.push((p, a));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if m > 1 {
            factors.push((m, 1));
        }
        FactoredInteger { n, factors }
    }

    /// Number of distinct primes `r`.
    pub fn distinct_primes(&self) -> u32 {
        self.factors.len() as u32
    }

    /// `Ω_n`, prime factors with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, a)| a).sum()
    }

    pub fn is_square_free(&self) -> bool {
        self.factors.iter().all(|&(_, a)| a == 1)
    }

    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, a) in &self.factors {
            let len = divs.len();
            let mut pk = 1;
            for _ in 0..a {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

pub fn big_omega(m: u64) -> u32 {
    FactoredInteger::new(m).big_omega()
}

/// Number-theoretic Möbius function.
pub fn number_mobius(m: u64) -> i32 {
    let f = FactoredInteger::new(m);
    if !f.is_square_free() {
        0
    } else if f.factors.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = FactoredInteger::new(q.max(1));
    match f.factors.as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// Sieve of Eratosthenes up to and including `limit`.
pub fn prime_sieve(limit: usize) -> Vec<bool> {
    let mut is = vec![true; limit + 1];
    for v in is.iter_mut().take(2.min(limit + 1)) {
        *v = false;
    }
    let mut i = 2;
    while i * i <= limit {
        if is[i] {
            let mut j = i * i;
            while j <= limit {
                is[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    is
}

pub fn primes_up_to(limit: usize) -> Vec<u64> {
    prime_sieve(limit)
        .iter()
        .enumerate()
        .filter_map(|(i, &p)| p.then_some(i as u64))
        .collect()
}

/// Multiplicity of the prime `p` in `n!` (Legendre's formula).
pub fn legendre(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut m = n;
    while m > 0 {
        m /= p;
        total += m;
    }
    total
}

/// Multiplicity of `p` in `C(n, k)`.
pub fn binomial_multiplicity(n: u64, k: u64, p: u64) -> u64 {
    legendre(n, p) - legendre(k, p) - legendre(n - k, p)
}

/// Multiplicity of `p` in `m`.
pub fn multiplicity(mut m: u64, p: u64) -> u64 {
    let mut v = 0;
    while m > 0 && m.is_multiple_of(p) {
        m /= p;
        v += 1;
    }
    v
}

/// All integer partitions of `n` as non-increasing part lists, in reverse
/// lexicographic order starting from `[n]`.
pub fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of set partitions of an `n`-set whose block sizes are `shape`:
/// `n! / (Π λ_i! · Π m_j!)` with `m_j` the multiplicity of each part size.
pub fn set_partitions_of_shape(shape: &[usize]) -> BigInt {
    let n: usize = shape.iter().sum();
    let mut den = BigInt::one();
    for &p in shape {
        den *= factorial(p as u64);
    }
    let mut sorted = shape.to_vec();
    sorted.sort_unstable();
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&v| v == sorted[i]).count();
        den *= factorial(j as u64);
        i += j;
    }
    factorial(n as u64) / den
}
