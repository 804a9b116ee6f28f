//! Divisibility of factorial quotients, decided exactly or by comparing
//! prime multiplicities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::numbers::{binomial, factorial, legendre, multiplicity, prime_sieve, primes_up_to};

/// Factorial arguments above this use prime multiplicities instead of
/// big-integer arithmetic.
pub const EXACT_ARGUMENT_LIMIT: u64 = 10_000;

/// `Π num_i! / Π den_i! · Π extra_j`, assumed to be an integer.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorialQuotient {
    pub num: Vec<u64>,
    pub den: Vec<u64>,
    pub extra: Vec<u64>,
}

impl FactorialQuotient {
    /// `C(n, k)`.
    pub fn binomial(n: u64, k: u64) -> FactorialQuotient {
        FactorialQuotient {
            num: vec![n],
            den: vec![k, n - k],
            extra: Vec::new(),
        }
    }

    pub fn times(mut self, k: u64) -> FactorialQuotient {
        self.extra.push(k);
        self
    }

    fn max_argument(&self) -> u64 {
        self.num
            .iter()
            .chain(&self.den)
            .chain(&self.extra)
            .copied()
            .max()
            .unwrap_or(0)
    }

    pub fn value(&self) -> BigInt {
        let mut top = BigInt::one();
        for &n in &self.num {
            top *= factorial(n);
        }
        for &e in &self.extra {
            top *= e;
        }
        let mut bottom = BigInt::one();
        for &d in &self.den {
            bottom *= factorial(d);
        }
        top / bottom
    }

    /// Multiplicity of the prime `p`.
    pub fn multiplicity(&self, p: u64) -> i64 {
        let plus: u64 = self.num.iter().map(|&n| legendre(n, p)).sum::<u64>()
            + self.extra.iter().map(|&e| multiplicity(e, p)).sum::<u64>();
        let minus: u64 = self.den.iter().map(|&d| legendre(d, p)).sum();
        plus as i64 - minus as i64
    }
}

/// Whether `a` divides `b`, comparing every prime multiplicity.
pub fn divides_by_multiplicity(a: &FactorialQuotient, b: &FactorialQuotient) -> bool {
    let bound = a.max_argument().max(2);
    primes_up_to(bound as usize)
        .into_iter()
        .all(|p| a.multiplicity(p) <= b.multiplicity(p))
}

pub fn divides_exact(a: &FactorialQuotient, b: &FactorialQuotient) -> bool {
    let av = a.value();
    !av.is_zero() && b.value().is_multiple_of(&av)
}

/// Picks the exact path for small arguments and multiplicities above.
pub fn divides(a: &FactorialQuotient, b: &FactorialQuotient) -> bool {
    if a.max_argument().max(b.max_argument()) <= EXACT_ARGUMENT_LIMIT {
        divides_exact(a, b)
    } else {
        divides_by_multiplicity(a, b)
    }
}

/// `C(2m, m) ∤ C(4m, 2m)`, expected for every `m ≥ 2`.
pub fn central_binomial_check(m: u64) -> bool {
    let a = FactorialQuotient::binomial(2 * m, m);
    let b = FactorialQuotient::binomial(4 * m, 2 * m);
    !divides(&a, &b)
}

/// `(2m+1) C(2m, m) ∤ (4m+1) C(4m, 2m)`, expected for every `m ≥ 3`.
pub fn odd_case_check(m: u64) -> bool {
    let a = FactorialQuotient::binomial(2 * m, m).times(2 * m + 1);
    let b = FactorialQuotient::binomial(4 * m, 2 * m).times(4 * m + 1);
    !divides(&a, &b)
}

/// First `m` in the range where the check fails, if any.
pub fn first_failure(range: std::ops::RangeInclusive<u64>, check: fn(u64) -> bool) -> Option<u64> {
    let failures: Vec<u64> = range.into_par_iter().filter(|&m| !check(m)).collect();
    failures.into_iter().min()
}

/// Smallest prime `p` with `n < p < 6n/5`.
pub fn nagura_prime(n: u64) -> Option<u64> {
    (n + 1..).take_while(|&p| 5 * p < 6 * n).find(|&p| crate::numbers::is_prime(p))
}

/// `n` in `lo..=hi` with no prime in `(n, 6n/5)`, using one sieve.
pub fn nagura_gaps(lo: u64, hi: u64) -> Vec<u64> {
    let limit = (6 * hi / 5 + 2) as usize;
    let sieve = prime_sieve(limit);
    // next_prime[i] = smallest prime > i
    let mut next_prime = vec![u64::MAX; limit + 1];
    let mut next = u64::MAX;
    for i in (0..=limit).rev() {
        next_prime[i] = next;
        if sieve[i] {
            next = i as u64;
        }
    }
    (lo..=hi)
        .filter(|&n| {
            let p = next_prime[n as usize];
            p == u64::MAX || 5 * p >= 6 * n
        })
        .collect()
}

/// Whether `(d−1)!` divides `(dn−1)(dn−2)···(dn−d+1)`.
pub fn p0prime_divisibility(d: u64, n: u64) -> bool {
    let product: BigInt = (1..d).map(|s| BigInt::from(d * n - s)).product();
    product.is_multiple_of(&factorial(d - 1))
}

/// `δ(d)`: `d/2` for even `d`, `(d+1)/2` for odd `d`.
pub fn delta(d: u64) -> u64 {
    d.div_ceil(2)
}

/// A prime certifying `|J_P| ∤ |J|` for the two-block partition in
/// `Π^d_{2dm}` (and its odd counterpart in `Π^d_{2dm+d}`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessPrime {
    pub d: u64,
    pub m: u64,
    pub delta: u64,
    /// Open interval `(2dm/(2δ+1/2), dm/δ)` as exact fractions.
    pub interval: ((u64, u64), (u64, u64)),
    pub prime: Option<u64>,
    /// `p² > 2dm`.
    pub square_condition: bool,
    /// `v_p(C(2m, m)) > v_p(C(2dm, dm))`, hence `C(2m, m) ∤ C(2dm, dm)`.
    pub even_case: bool,
    /// `p ∤ Π_{s=1}^{d−1} (2dm + s)`.
    pub odd_case: bool,
}

impl WitnessPrime {
    pub fn confirmed(&self) -> bool {
        self.prime.is_some() && self.square_condition && self.even_case && self.odd_case
    }
}

/// Searches the interval for a prime meeting every condition; when none
/// does, reports the first prime in the interval (or none).
pub fn mainthm_witness(d: u64, m: u64) -> WitnessPrime {
    let delta = delta(d);
    // 2dm/(2δ+1/2) = 4dm/(4δ+1)
    let lo = (4 * d * m, 4 * delta + 1);
    let hi = (d * m, delta);
    let inside = |p: u64| p * lo.1 > lo.0 && p * hi.1 < hi.0;
    let outcome = |p: u64| {
        let square = p * p > 2 * d * m;
        let a = FactorialQuotient::binomial(2 * m, m);
        let b = FactorialQuotient::binomial(2 * d * m, d * m);
        let even = a.multiplicity(p) > b.multiplicity(p);
        let odd = (1..d).all(|s| !(2 * d * m + s).is_multiple_of(p));
        (square, even, odd)
    };
    let start = lo.0 / lo.1 + 1;
    let candidates: Vec<u64> = (start..)
        .take_while(|&p| p * hi.1 < hi.0)
        .filter(|&p| inside(p) && crate::numbers::is_prime(p))
        .collect();
    let chosen = candidates
        .iter()
        .copied()
        .find(|&p| outcome(p) == (true, true, true))
        .or_else(|| candidates.first().copied());
    let (square_condition, even_case, odd_case) = chosen.map_or((false, false, false), outcome);
    WitnessPrime {
        d,
        m,
        delta,
        interval: (lo, hi),
        prime: chosen,
        square_condition,
        even_case,
        odd_case,
    }
}

/// Summary of witness searches for one `d` over `1..=m_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessScan {
    pub d: u64,
    pub m_max: u64,
    /// Least `m₀` with a confirmed witness for every `m` in `m₀..=m_max`.
    pub m0: Option<u64>,
    pub missing: Vec<u64>,
}

pub fn mainthm_scan(d: u64, m_max: u64) -> WitnessScan {
    let confirmed: Vec<bool> = (1..=m_max)
        .into_par_iter()
        .map(|m| mainthm_witness(d, m).confirmed())
        .collect();
    let missing: Vec<u64> = (1..=m_max).filter(|&m| !confirmed[(m - 1) as usize]).collect();
    let m0 = match missing.last() {
        None => Some(1),
        Some(&last) if last < m_max => Some(last + 1),
        Some(_) => None,
    };
    WitnessScan { d, m_max, m0, missing }
}

/// `C(2m, m) ∤ C(2dm, dm)`, decided directly.
pub fn two_block_non_divisibility(d: u64, m: u64) -> bool {
    let a = FactorialQuotient::binomial(2 * m, m);
    let b = FactorialQuotient::binomial(2 * d * m, d * m);
    !divides(&a, &b)
}

#[doc(hidden)]
pub fn binomial_big(n: u64, k: u64) -> BigInt {
    binomial(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_and_multiplicity_paths_agree() {
        for m in 2..120 {
            let a = FactorialQuotient::binomial(2 * m, m);
            let b = FactorialQuotient::binomial(4 * m, 2 * m);
            assert_eq!(divides_exact(&a, &b), divides_by_multiplicity(&a, &b), "m = {m}");
            let a = a.times(2 * m + 1);
            let b = b.times(4 * m + 1);
            assert_eq!(divides_exact(&a, &b), divides_by_multiplicity(&a, &b), "m = {m}");
        }
        assert_eq!(FactorialQuotient::binomial(10, 3).value(), binomial(10, 3));
    }

    #[test]
    fn binomial_checks() {
        assert!(central_binomial_check(2));
        assert!(central_binomial_check(3));
        assert!(!central_binomial_check(1));
        assert!(odd_case_check(3));
        assert!(odd_case_check(4));
        assert!(odd_case_check(15));
        assert_eq!(first_failure(2..=400, central_binomial_check), None);
        assert_eq!(first_failure(3..=400, odd_case_check), None);
        // large arguments take the multiplicity path
        assert!(central_binomial_check(9_000));
    }

    #[test]
    fn nagura() {
        assert_eq!(nagura_prime(25), Some(29));
        assert_eq!(nagura_prime(24), None);
        assert_eq!(nagura_prime(100), Some(101));
        assert!(nagura_gaps(25, 20_000).is_empty());
        assert!(nagura_gaps(24, 24) == vec![24]);
    }

    #[test]
    fn p0prime() {
        assert!(p0prime_divisibility(4, 3));
        for d in 2..=12 {
            for n in 2..=60 {
                assert!(p0prime_divisibility(d, n));
            }
        }
    }

    #[test]
    fn witnesses() {
        let w = mainthm_witness(3, 20);
        assert_eq!(w.delta, 2);
        assert_eq!(w.prime, Some(29));
        assert!(w.confirmed());
        let w = mainthm_witness(4, 10);
        assert_eq!(w.prime, Some(19));
        assert!(w.confirmed());
        let w = mainthm_witness(3, 1);
        assert_eq!(w.prime, None);
        assert!(!w.confirmed());
        for d in 3..=5 {
            for m in 1..=200 {
                let w = mainthm_witness(d, m);
                if w.confirmed() {
                    assert!(two_block_non_divisibility(d, m), "d = {d}, m = {m}");
                }
            }
        }
    }

    #[test]
    fn witness_scan_thresholds() {
        let s = mainthm_scan(3, 500);
        assert_eq!(s.m0, Some(25));
        let s = mainthm_scan(4, 500);
        assert_eq!(s.m0, Some(19));
        let s = mainthm_scan(5, 500);
        assert_eq!(s.m0, Some(77));
    }
}
