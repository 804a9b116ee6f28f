//! Reference computations that share no code with the library beyond
//! reading an order relation or a multiplication table.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use pzeta_core::groups::FiniteGroup;
use pzeta_core::{CanonicalForm, Lattice};

/// A finite bounded poset stored as a dense order matrix.
pub struct Order {
    pub n: usize,
    leq: Vec<Vec<bool>>,
}

impl Order {
    pub fn new(n: usize, leq: impl Fn(usize, usize) -> bool) -> Order {
        let leq = (0..n).map(|i| (0..n).map(|j| leq(i, j)).collect()).collect();
        Order { n, leq }
    }

    pub fn of_lattice(l: &Lattice) -> Order {
        Order::new(l.len(), |i, j| l.leq(i, j))
    }

    pub fn of_form(f: &CanonicalForm) -> Order {
        Order::new(f.len(), |i, j| f.leq(i, j))
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn bottom(&self) -> usize {
        (0..self.n).find(|&x| (0..self.n).all(|y| self.leq[x][y])).expect("bounded")
    }

    pub fn top(&self) -> usize {
        (0..self.n).find(|&x| (0..self.n).all(|y| self.leq[y][x])).expect("bounded")
    }

    fn above_count(&self, x: usize) -> usize {
        (0..self.n).filter(|&y| self.leq[x][y]).count()
    }

    pub fn join_table(&self) -> Vec<Vec<usize>> {
        let above: Vec<usize> = (0..self.n).map(|x| self.above_count(x)).collect();
        (0..self.n)
            .map(|x| {
                (0..self.n)
                    .map(|y| {
                        // least upper bound has the most elements above it
                        (0..self.n)
                            .filter(|&z| self.leq[x][z] && self.leq[y][z])
                            .max_by_key(|&z| above[z])
                            .expect("top is an upper bound")
                    })
                    .collect()
            })
            .collect()
    }

    pub fn lower_covers(&self, x: usize) -> Vec<usize> {
        let below: Vec<usize> = (0..self.n).filter(|&y| y != x && self.leq[y][x]).collect();
        below
            .iter()
            .copied()
            .filter(|&y| !below.iter().any(|&z| z != y && self.leq[y][z]))
            .collect()
    }

    pub fn irreducibles(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.lower_covers(x).len() == 1).collect()
    }

    pub fn atoms(&self) -> Vec<usize> {
        let b = self.bottom();
        (0..self.n).filter(|&x| self.lower_covers(x) == [b]).collect()
    }

    /// `μ(x, top)` for every `x`.
    pub fn mobius_top(&self) -> Vec<BigInt> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&x| self.above_count(x));
        let mut mu = vec![BigInt::zero(); self.n];
        let top = self.top();
        for &x in &order {
            if x == top {
                mu[x] = BigInt::one();
                continue;
            }
            let s: BigInt = (0..self.n).filter(|&z| z != x && self.leq[x][z]).map(|z| mu[z].clone()).sum();
            mu[x] = -s;
        }
        mu
    }

    pub fn j_below(&self, irr: &[usize], x: usize) -> usize {
        irr.iter().filter(|&&j| self.leq[j][x]).count()
    }

    /// Probability that `s` uniform irreducibles join to the top.
    pub fn probability(&self, s: u32) -> BigRational {
        let irr = self.irreducibles();
        let join = self.join_table();
        let mut dist = vec![BigInt::zero(); self.n];
        dist[self.bottom()] = BigInt::one();
        for _ in 0..s {
            let mut next = vec![BigInt::zero(); self.n];
            for (x, c) in dist.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for &j in &irr {
                    next[join[x][j]] += c;
                }
            }
            dist = next;
        }
        let total = num_traits::pow(BigInt::from(irr.len()), s as usize);
        BigRational::new(dist[self.top()].clone(), total)
    }

    /// Local sums keyed by `|J|/|J_x|`, zero sums dropped.
    pub fn local_sums(&self) -> BTreeMap<BigRational, BigInt> {
        let irr = self.irreducibles();
        let mu = self.mobius_top();
        let b = self.bottom();
        let mut out: BTreeMap<BigRational, BigInt> = BTreeMap::new();
        for x in (0..self.n).filter(|&x| x != b) {
            let q = BigRational::new(irr.len().into(), self.j_below(&irr, x).into());
            *out.entry(q).or_default() += &mu[x];
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn strong(&self) -> bool {
        let irr = self.irreducibles();
        let b = self.bottom();
        (0..self.n).filter(|&x| x != b).all(|x| irr.len().is_multiple_of(self.j_below(&irr, x)))
    }

    pub fn weak(&self) -> bool {
        self.local_sums().keys().all(|q| q.is_integer())
    }

    pub fn atomistic(&self) -> bool {
        self.irreducibles() == self.atoms()
    }

    pub fn ratios(&self) -> BTreeSet<BigRational> {
        let irr = self.irreducibles();
        let b = self.bottom();
        (0..self.n)
            .filter(|&x| x != b)
            .map(|x| BigRational::new(irr.len().into(), self.j_below(&irr, x).into()))
            .collect()
    }
}

/// Number of isomorphism classes of lattices on `n ≥ 2` elements, found by
/// trying every order relation on the `n − 2` middle elements.
pub fn brute_force_lattice_count(n: usize) -> usize {
    let m = n - 2;
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let perms = permutations(m);
    let mut seen: HashSet<u64> = HashSet::new();
    for mask in 0u64..1 << pairs.len() {
        let lt = |i: usize, j: usize| i != j && pairs.iter().position(|&p| p == (i, j)).is_some_and(|k| mask >> k & 1 == 1);
        let rel: Vec<Vec<bool>> = (0..m).map(|i| (0..m).map(|j| lt(i, j)).collect()).collect();
        let order_ok = (0..m).all(|i| {
            (0..m).all(|j| !(rel[i][j] && rel[j][i]) && (0..m).all(|k| !(rel[i][j] && rel[j][k]) || rel[i][k]))
        });
        if !order_ok {
            continue;
        }
        let order = Order::new(n, |x, y| {
            x == y || x == 0 || y == n - 1 || (x > 0 && y > 0 && x < n - 1 && y < n - 1 && rel[x - 1][y - 1])
        });
        if !is_lattice(&order) {
            continue;
        }
        let key = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|&(_, &(i, j))| rel[p[i]][p[j]])
                    .fold(0u64, |acc, (k, _)| acc | 1 << k)
            })
            .min()
            .unwrap_or(0);
        seen.insert(key);
    }
    seen.len()
}

fn is_lattice(o: &Order) -> bool {
    (0..o.n).all(|x| {
        (0..o.n).all(|y| {
            let ubs: Vec<usize> = (0..o.n).filter(|&z| o.leq(x, z) && o.leq(y, z)).collect();
            ubs.iter().any(|&z| ubs.iter().all(|&w| o.leq(z, w)))
        })
    })
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `r! S(s, r)` as the number of surjections from an `s`-set onto an `r`-set.
pub fn surjections(s: u64, r: u64) -> BigInt {
    (0..=r)
        .map(|k| {
            let term = binomial(r, k) * num_traits::pow(BigInt::from(r - k), s as usize);
            if k % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

pub fn sieve(limit: usize) -> Vec<bool> {
    let mut is = vec![true; limit + 1];
    is[0] = false;
    if limit >= 1 {
        is[1] = false;
    }
    let mut i = 2;
    while i * i <= limit {
        if is[i] {
            (i * i..=limit).step_by(i).for_each(|k| is[k] = false);
        }
        i += 1;
    }
    is
}

pub fn primes_up_to(limit: usize) -> Vec<u64> {
    sieve(limit).iter().enumerate().filter(|(_, &p)| p).map(|(i, _)| i as u64).collect()
}

/// Exponent of `p` in `n!`.
pub fn legendre(n: u64, p: u64) -> u64 {
    let mut e = 0;
    let mut pk = p;
    while pk <= n {
        e += n / pk;
        pk = match pk.checked_mul(p) {
            Some(v) => v,
            None => break,
        };
    }
    e
}

pub fn v_binomial(n: u64, k: u64, p: u64) -> i64 {
    legendre(n, p) as i64 - legendre(k, p) as i64 - legendre(n - k, p) as i64
}

pub fn v_int(mut n: u64, p: u64) -> i64 {
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

pub fn number_mobius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        -sign
    } else {
        sign
    }
}

fn closure(g: &FiniteGroup, gens: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = BTreeSet::from([g.identity()]);
    let mut frontier: Vec<usize> = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for &a in gens {
            let y = g.mul(x, a);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// Probability that `s` uniform elements generate `G`, by enumeration.
pub fn generation_probability(g: &FiniteGroup, s: u32) -> BigRational {
    let n = g.order();
    let total = (n as u64).pow(s);
    let mut hits = 0u64;
    let mut tuple = vec![0usize; s as usize];
    for code in 0..total {
        let mut c = code;
        for slot in tuple.iter_mut() {
            *slot = (c % n as u64) as usize;
            c /= n as u64;
        }
        if closure(g, &tuple).len() == n {
            hits += 1;
        }
    }
    BigRational::new(hits.into(), total.into())
}

/// Number of cosets of all subgroups, plus one for the empty bottom.
pub fn coset_lattice_size(g: &FiniteGroup) -> usize {
    let mut subgroups: BTreeSet<BTreeSet<usize>> = BTreeSet::from([closure(g, &[])]);
    loop {
        let mut grown = subgroups.clone();
        for h in &subgroups {
            for x in 0..g.order() {
                let gens: Vec<usize> = h.iter().copied().chain([x]).collect();
                grown.insert(closure(g, &gens));
            }
        }
        if grown.len() == subgroups.len() {
            break;
        }
        subgroups = grown;
    }
    1 + subgroups.iter().map(|h| g.order() / h.len()).sum::<usize>()
}

pub fn integer_partitions(n: u64) -> Vec<Vec<u64>> {
    fn go(n: u64, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Shape-level strength of the partition lattice on `n` points: atoms are
/// the partitions with one pair merged.
pub fn partition_shapes_strong(n: u64) -> bool {
    let total = n * (n - 1) / 2;
    integer_partitions(n)
        .into_iter()
        .filter(|shape| shape.iter().any(|&p| p > 1))
        .all(|shape| total.is_multiple_of(shape.iter().map(|&p| p * (p - 1) / 2).sum::<u64>()))
}

fn double_factorial_odd(k: u64) -> BigInt {
    // (2k − 1)!!: the number of perfect matchings on 2k points
    (1..=k).map(|i| BigInt::from(2 * i - 1)).product()
}

/// Shape-level strength of the 2-divisible partition lattice on `2n`
/// points: atoms are perfect matchings.
pub fn two_divisible_shapes_strong(n: u64) -> bool {
    let total = double_factorial_odd(n);
    integer_partitions(n).into_iter().all(|shape| {
        let below: BigInt = shape.iter().map(|&p| double_factorial_odd(p)).product();
        total.is_multiple_of(&below)
    })
}

pub fn float_gaussian_count(q: f64, m: u32) -> f64 {
    (q.powi(m as i32) - 1.0) / (q - 1.0)
}

/// `P(S(F_q^n), s)` evaluated in floating point from subspace counts.
pub fn subspace_probability_float(q: f64, n: u32, s: u32) -> f64 {
    let gauss = |n: u32, k: u32| -> f64 {
        (0..k)
            .map(|i| (q.powi((n - i) as i32) - 1.0) / (q.powi((i + 1) as i32) - 1.0))
            .product()
    };
    let lines = float_gaussian_count(q, n);
    (0..n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let mu = sign * q.powi((k * k.saturating_sub(1) / 2) as i32);
            mu * gauss(n, k) * (float_gaussian_count(q, n - k) / lines).powi(s as i32)
        })
        .sum()
}

pub fn boolean_probability_float(n: u32, s: u32) -> f64 {
    (0..n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let c = binomial(n as u64, k as u64).to_string().parse::<f64>().unwrap();
            sign * c * ((n - k) as f64 / n as f64).powi(s as i32)
        })
        .sum()
}
