//! Classical lattice families and closed forms of their zeta functions.

mod field;
mod partition;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::dirichlet::DirichletSeries;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeOptions};
use crate::numbers::{binomial, gaussian_binomial, FactoredInteger};

pub use field::{FiniteField, MAX_FIELD_ORDER};
pub use partition::{
    d_divisible_j_count, d_divisible_partition_lattice, partition_lattice, partition_mobius_top,
    partition_zeta_closed, PartitionShape, MAX_DDIV_GROUND, MAX_PARTITION_N,
};

/// A lattice whose elements carry a description.
#[derive(Clone, Debug)]
pub struct Labeled<T> {
    pub lattice: Lattice,
    pub labels: Vec<T>,
}

impl<T: fmt::Display> Labeled<T> {
    pub fn label_strings(&self) -> Vec<String> {
        self.labels.iter().map(|l| l.to_string()).collect()
    }
}

pub fn chain(k: usize) -> Result<Lattice> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("chain needs k >= 2, got {k}")));
    }
    let covers: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
    Lattice::from_covers(k, &covers)
}

/// `B_r`: element `i` is the subset with bit mask `i`.
pub fn boolean_lattice(r: usize, opts: &LatticeOptions) -> Result<Lattice> {
    if r == 0 {
        return Err(Error::InvalidArgument("boolean lattice needs r >= 1".into()));
    }
    if r >= 64 {
        return Err(Error::SizeLimitExceeded {
            what: "boolean lattice".into(),
            requested: u128::MAX,
            limit: opts.max_elements as u128,
        });
    }
    opts.check_size("boolean lattice", 1u128 << r)?;
    let n = 1usize << r;
    let mut covers = Vec::with_capacity(n * r / 2);
    for x in 0..n {
        for b in 0..r {
            if x & (1 << b) == 0 {
                covers.push((x, x | (1 << b)));
            }
        }
    }
    Lattice::from_covers_with(n, &covers, opts)
}

/// `O_n`, the divisors of `n` under divisibility, ascending.
pub fn divisibility_lattice(n: u64, opts: &LatticeOptions) -> Result<Labeled<u64>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("divisor lattice needs n >= 2, got {n}")));
    }
    let f = FactoredInteger::new(n);
    let divisors = f.divisors();
    opts.check_size("divisor lattice", divisors.len() as u128)?;
    let index: HashMap<u64, usize> = divisors.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let mut covers = Vec::new();
    for (i, &d) in divisors.iter().enumerate() {
        for &(p, _) in &f.factors {
            if (n / d).is_multiple_of(p) {
                covers.push((i, index[&(d * p)]));
            }
        }
    }
    let lattice = Lattice::from_covers_with(divisors.len(), &covers, opts)?;
    Ok(Labeled {
        lattice,
        labels: divisors,
    })
}

/// A subspace of `F_q^n`, stored as its sorted member vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    pub dim: usize,
    pub members: Vec<u32>,
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dim {} {:?}", self.dim, self.members)
    }
}

/// Number of subspaces of `F_q^n`.
pub fn subspace_count(q: u64, n: u64) -> BigInt {
    (0..=n).map(|k| gaussian_binomial(n, k, q)).sum()
}

/// `S(F_q^n)` ordered by inclusion, elements sorted by (dimension, members).
pub fn subspace_lattice(q: u64, n: usize, opts: &LatticeOptions) -> Result<Labeled<Subspace>> {
    if n == 0 {
        return Err(Error::InvalidArgument("subspace lattice needs n >= 1".into()));
    }
    let field = FiniteField::new(q)?;
    let count = subspace_count(q, n as u64);
    opts.check_size(
        "subspace lattice",
        count.to_u128().unwrap_or(u128::MAX),
    )?;
    let qs = field.order();
    let nvec = qs.pow(n as u32);
    let add_vec = |a: usize, b: usize| -> usize {
        let (mut a, mut b, mut out, mut scale) = (a, b, 0, 1);
        for _ in 0..n {
            out += field.add(a % qs, b % qs) * scale;
            a /= qs;
            b /= qs;
            scale *= qs;
        }
        out
    };
    let scale_vec = |c: usize, a: usize| -> usize {
        let (mut a, mut out, mut scale) = (a, 0, 1);
        for _ in 0..n {
            out += field.mul(c, a % qs) * scale;
            a /= qs;
            scale *= qs;
        }
        out
    };
    // span(W ∪ {v}) = { w + c v }
    let extend = |w: &[u32], v: usize| -> Vec<u32> {
        let mut out: Vec<u32> = Vec::with_capacity(w.len() * qs);
        for c in 0..qs {
            let cv = scale_vec(c, v);
            out.extend(w.iter().map(|&x| add_vec(x as usize, cv) as u32));
        }
        out.sort_unstable();
        out
    };
    let mut layers: Vec<Vec<Vec<u32>>> = vec![vec![vec![0]]];
    let mut edges: Vec<(usize, Vec<u32>, Vec<u32>)> = Vec::new();
    for dim in 0..n {
        let mut next: Vec<Vec<u32>> = Vec::new();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for w in &layers[dim] {
            let mut member = vec![false; nvec];
            for &x in w {
                member[x as usize] = true;
            }
            let mut done = vec![false; nvec];
            for v in 0..nvec {
                if member[v] || done[v] {
                    continue;
                }
                let u = extend(w, v);
                for &x in &u {
                    done[x as usize] = true;
                }
                if seen.insert(u.clone()) {
                    next.push(u.clone());
                }
                edges.push((dim, w.clone(), u));
            }
        }
        next.sort();
        layers.push(next);
    }
    let mut labels = Vec::new();
    let mut index: HashMap<&[u32], usize> = HashMap::new();
    for (dim, layer) in layers.iter().enumerate() {
        for w in layer {
            index.insert(w, labels.len());
            labels.push(Subspace {
                dim,
                members: w.clone(),
            });
        }
    }
    let covers: Vec<(usize, usize)> = edges
        .iter()
        .map(|(_, a, b)| (index[a.as_slice()], index[b.as_slice()]))
        .collect();
    let lattice = Lattice::from_covers_with(labels.len(), &covers, opts)?;
    Ok(Labeled { lattice, labels })
}

fn sign(k: u64) -> BigInt {
    if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn ratio(a: impl Into<BigInt>, b: impl Into<BigInt>) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// `((−1)^r / r^s) Σ_{k=1}^{r} (−1)^k C(r, k) k^s`.
pub fn boolean_zeta_closed(r: u64) -> DirichletSeries {
    let mut out = DirichletSeries::new();
    for k in 1..=r {
        out.add_term(ratio(r, k), sign(r + k) * binomial(r, k));
    }
    out
}

/// `((−1)^Ω / Ω^s) Σ_k (−1)^k C(r, Ω − k) k^s` over `Ω − r ≤ k ≤ Ω`,
/// `k ≥ 1`, for `n` with `r` distinct primes and `Ω` prime factors.
pub fn divisibility_zeta_closed(n: u64) -> Result<DirichletSeries> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("divisor lattice needs n >= 2, got {n}")));
    }
    let f = FactoredInteger::new(n);
    let (omega, r) = (f.big_omega() as u64, f.distinct_primes() as u64);
    let mut out = DirichletSeries::new();
    for k in (omega - r).max(1)..=omega {
        out.add_term(ratio(omega, k), sign(omega + k) * binomial(r, omega - k));
    }
    Ok(out)
}

/// `Σ_{k=1}^{n} (−1)^{n−k} [n k]_q q^{C(n−k, 2)} / ((q^n − 1)/(q^k − 1))^s`.
pub fn subspace_zeta_closed(q: u64, n: u64) -> Result<DirichletSeries> {
    crate::numbers::prime_power(q).ok_or(Error::NotAPrimePower(q))?;
    if n == 0 {
        return Err(Error::InvalidArgument("subspace lattice needs n >= 1".into()));
    }
    let qb = BigInt::from(q);
    let top = num_traits::pow(qb.clone(), n as usize) - 1u32;
    let mut out = DirichletSeries::new();
    for k in 1..=n {
        let c = sign(n - k)
            * gaussian_binomial(n, k, q)
            * num_traits::pow(qb.clone(), binomial(n - k, 2).to_usize().unwrap_or(0));
        let below = num_traits::pow(qb.clone(), k as usize) - 1u32;
        out.add_term(BigRational::new(top.clone(), below), c);
    }
    Ok(out)
}

/// Comparison of the subspace closed form at `q = 1 + h` with the Boolean
/// closed form it tends to as `q → 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitCheck {
    pub n: u64,
    pub s: u32,
    pub h: f64,
    pub value: f64,
    pub limit: f64,
    pub difference: f64,
}

/// Evaluates the subspace closed form numerically at `q = 1 + h`.
pub fn subspace_zeta_numeric(n: u64, s: u32, h: f64) -> Result<f64> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::SingularInput(format!(
            "q = 1 + h needs h > 0, got h = {h}"
        )));
    }
    let lq = h.ln_1p();
    // q^m − 1 without cancellation near q = 1
    let qm1 = |m: u64| (m as f64 * lq).exp_m1();
    let gauss = |n: u64, k: u64| -> f64 {
        (0..k).map(|i| qm1(n - i) / qm1(i + 1)).product()
    };
    let mut total = 0.0;
    for k in 1..=n {
        let sgn = if (n - k).is_multiple_of(2) { 1.0 } else { -1.0 };
        let c = (n - k) * (n - k).saturating_sub(1) / 2;
        let qpow = (c as f64 * lq).exp();
        total += sgn * gauss(n, k) * qpow * (qm1(k) / qm1(n)).powi(s as i32);
    }
    Ok(total)
}

pub fn q_to_one_limit_check(n: u64, s: u32, h: f64) -> Result<LimitCheck> {
    if n == 0 || s == 0 {
        return Err(Error::InvalidArgument("need n >= 1 and s >= 1".into()));
    }
    let value = subspace_zeta_numeric(n, s, h)?;
    let limit = boolean_zeta_closed(n).evaluate_exact(s as i64).to_f64().unwrap_or(f64::NAN);
    Ok(LimitCheck {
        n,
        s,
        h,
        value,
        limit,
        difference: (value - limit).abs(),
    })
}

/// Named lattice families accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Boolean(u64),
    Divisor(u64),
    Subspace { q: u64, n: u64 },
    Partition(u64),
    DDivisible { d: u64, n: u64 },
    Chain(u64),
}

fn parse_args(name: &str, args: &str, want: usize) -> Result<Vec<u64>> {
    let parts: Vec<&str> = args.split(',').map(str::trim).collect();
    if parts.len() != want {
        return Err(Error::Parse(format!(
            "`{name}` takes {want} argument(s), got `{args}`"
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad number `{p}` in `{name}:{args}`")))
        })
        .collect()
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilySpec> {
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("family `{s}` must look like name:args")))?;
        Ok(match name.trim() {
            "boolean" => FamilySpec::Boolean(parse_args(name, args, 1)?[0]),
            "divisor" => FamilySpec::Divisor(parse_args(name, args, 1)?[0]),
            "partition" => FamilySpec::Partition(parse_args(name, args, 1)?[0]),
            "chain" => FamilySpec::Chain(parse_args(name, args, 1)?[0]),
            "subspace" => {
                let v = parse_args(name, args, 2)?;
                FamilySpec::Subspace { q: v[0], n: v[1] }
            }
            "ddiv" => {
                let v = parse_args(name, args, 2)?;
                FamilySpec::DDivisible { d: v[0], n: v[1] }
            }
            other => return Err(Error::Parse(format!("unknown family `{other}`"))),
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Boolean(r) => write!(f, "boolean:{r}"),
            FamilySpec::Divisor(n) => write!(f, "divisor:{n}"),
            FamilySpec::Subspace { q, n } => write!(f, "subspace:{q},{n}"),
            FamilySpec::Partition(n) => write!(f, "partition:{n}"),
            FamilySpec::DDivisible { d, n } => write!(f, "ddiv:{d},{n}"),
            FamilySpec::Chain(k) => write!(f, "chain:{k}"),
        }
    }
}

fn to_usize(v: u64) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::InvalidArgument(format!("{v} is too large")))
}

impl FamilySpec {
    /// Builds the lattice with a human-readable label per element.
    pub fn build(&self, opts: &LatticeOptions) -> Result<Labeled<String>> {
        let relabel = |lattice: Lattice| {
            let labels = (0..lattice.len()).map(|i| i.to_string()).collect();
            Labeled { lattice, labels }
        };
        Ok(match *self {
            FamilySpec::Boolean(r) => {
                let r = to_usize(r)?;
                let l = boolean_lattice(r, opts)?;
                let labels = (0..l.len())
                    .map(|m| {
                        let items: Vec<String> =
                            (0..r).filter(|b| m >> b & 1 == 1).map(|b| (b + 1).to_string()).collect();
                        format!("{{{}}}", items.join(","))
                    })
                    .collect();
                Labeled { lattice: l, labels }
            }
            FamilySpec::Divisor(n) => {
                let l = divisibility_lattice(n, opts)?;
                Labeled {
                    labels: l.label_strings(),
                    lattice: l.lattice,
                }
            }
            FamilySpec::Subspace { q, n } => {
                let l = subspace_lattice(q, to_usize(n)?, opts)?;
                Labeled {
                    labels: l.label_strings(),
                    lattice: l.lattice,
                }
            }
            FamilySpec::Partition(n) => {
                let l = partition_lattice(to_usize(n)?, opts)?;
                Labeled {
                    labels: l.label_strings(),
                    lattice: l.lattice,
                }
            }
            FamilySpec::DDivisible { d, n } => {
                let l = d_divisible_partition_lattice(to_usize(d)?, to_usize(n)?, opts)?;
                Labeled {
                    labels: l.label_strings(),
                    lattice: l.lattice,
                }
            }
            FamilySpec::Chain(k) => relabel(chain(to_usize(k)?)?),
        })
    }

    /// Closed-form series, where the family has one.
    pub fn closed_form(&self) -> Result<Option<DirichletSeries>> {
        Ok(match *self {
            FamilySpec::Boolean(r) => Some(boolean_zeta_closed(r)),
            FamilySpec::Divisor(n) => Some(divisibility_zeta_closed(n)?),
            FamilySpec::Subspace { q, n } => Some(subspace_zeta_closed(q, n)?),
            FamilySpec::Partition(n) => Some(partition_zeta_closed(to_usize(n)?)?),
            FamilySpec::Chain(k) if k >= 3 => Some(
                DirichletSeries::constant(1)
                    - DirichletSeries::monomial(ratio(k - 1, k - 2), 1),
            ),
            FamilySpec::Chain(_) => Some(DirichletSeries::constant(1)),
            FamilySpec::DDivisible { .. } => None,
        })
    }
}
