//! Strongly and weakly coset-like lattices.
//!
//! `L` is strongly coset-like when `|J_x|` divides `|J|` for every `x > 0̂`,
//! and weakly coset-like when `P(L, s)` is an ordinary Dirichlet series.

pub mod divisibility;
mod fixtures;

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::dirichlet::rational_to_string;
use crate::error::{Error, Result};
use crate::families::{d_divisible_j_count, PartitionShape};
use crate::lattice::Lattice;
use crate::numbers::{binomial, factorial, integer_partitions};
use crate::zeta::{zeta_series, ZetaReport};

pub use divisibility::{
    central_binomial_check, delta, mainthm_scan, mainthm_witness, nagura_gaps, nagura_prime,
    odd_case_check, p0prime_divisibility, WitnessPrime, WitnessScan,
};
pub use fixtures::{load_fixture, FIXTURE_NAMES};

/// An element `x` with `|J_x| ∤ |J|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongFailure {
    pub element: usize,
    pub j_below: usize,
    pub j_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub strong: bool,
    pub weak: bool,
    pub strong_failures: Vec<StrongFailure>,
    /// Bases `q` with `S(q) ≠ 0` that are not integers.
    pub non_integer_bases: Vec<BigRational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationDoc {
    pub strong: bool,
    pub weak: bool,
    pub strong_failures: Vec<StrongFailure>,
    pub non_integer_bases: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Classification {
    pub fn to_doc(&self, elapsed_ms: Option<u128>) -> ClassificationDoc {
        ClassificationDoc {
            strong: self.strong,
            weak: self.weak,
            strong_failures: self.strong_failures.clone(),
            non_integer_bases: self.non_integer_bases.iter().map(rational_to_string).collect(),
            elapsed_ms,
        }
    }
}

pub fn classify_report(l: &Lattice, report: &ZetaReport) -> Classification {
    let j = report.j_count;
    let strong_failures: Vec<StrongFailure> = (0..l.len())
        .filter(|&x| x != l.bottom() && !j.is_multiple_of(report.j_below[x]))
        .map(|x| StrongFailure {
            element: x,
            j_below: report.j_below[x],
            j_count: j,
        })
        .collect();
    let non_integer_bases: Vec<BigRational> = report
        .local_sums
        .iter()
        .filter(|(q, c)| !c.is_zero() && !q.is_integer())
        .map(|(q, _)| q.clone())
        .collect();
    Classification {
        strong: strong_failures.is_empty(),
        weak: non_integer_bases.is_empty(),
        strong_failures,
        non_integer_bases,
    }
}

pub fn classify(l: &Lattice) -> Classification {
    classify_report(l, &zeta_series(l))
}

/// Runs [`classify`] and records the wall time.
pub fn classify_timed(l: &Lattice) -> (Classification, u128) {
    let start = Instant::now();
    let c = classify(l);
    (c, start.elapsed().as_millis())
}

/// If the largest `|J_x|` over proper elements does not divide `|J|`,
/// returns the first element attaining it. Such elements are coatoms with
/// `μ = −1`, so the corresponding local sum is nonzero and `L` is not
/// weakly coset-like.
pub fn coatom_criterion(l: &Lattice) -> Option<usize> {
    let (bottom, top) = (l.bottom(), l.top());
    let counts: Vec<(usize, usize)> = (0..l.len())
        .filter(|&x| x != bottom && x != top)
        .map(|x| (x, l.below_irreducible_count(x)))
        .collect();
    let max = counts.iter().map(|&(_, c)| c).max()?;
    if l.below_irreducible_count(top).is_multiple_of(max) {
        return None;
    }
    counts.into_iter().find(|&(_, c)| c == max).map(|(x, _)| x)
}

/// Shape-level strong check: one row per shape whose count fails to divide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeCheck {
    pub d: u64,
    pub n: u64,
    pub j_count: String,
    pub shapes_checked: usize,
    pub failures: Vec<ShapeFailure>,
    pub strong: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeFailure {
    /// Block sizes of the partition, in the ground set `{1..dn}`.
    pub shape: String,
    pub j_below: String,
}

fn shape_check(
    d: u64,
    n: u64,
    j: BigInt,
    shapes: Vec<Vec<usize>>,
    count: impl Fn(&[u64]) -> BigInt + Sync,
) -> ShapeCheck {
    let shapes_checked = shapes.len();
    let mut failures: Vec<(Vec<usize>, BigInt)> = shapes
        .into_par_iter()
        .filter_map(|parts| {
            let sizes: Vec<u64> = parts.iter().map(|&p| p as u64 * d).collect();
            let jx = count(&sizes);
            (!jx.is_zero() && !j.is_multiple_of(&jx)).then_some((parts, jx))
        })
        .collect();
    failures.sort_by(|a, b| b.0.cmp(&a.0));
    let failures: Vec<ShapeFailure> = failures
        .into_iter()
        .map(|(parts, jx)| {
            let sizes = parts.iter().map(|&p| p as u64 * d).collect();
            ShapeFailure {
                shape: PartitionShape::new(sizes).expect("nonempty shape").to_string(),
                j_below: jx.to_string(),
            }
        })
        .collect();
    ShapeCheck {
        d,
        n,
        j_count: j.to_string(),
        shapes_checked,
        strong: failures.is_empty(),
        failures,
    }
}

/// Whether `Π_n` is strongly coset-like, decided on integer partitions.
pub fn partition_strong_check(n: u64) -> Result<ShapeCheck> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("partition lattice needs n >= 2, got {n}")));
    }
    let shapes: Vec<Vec<usize>> = integer_partitions(n as usize)
        .into_iter()
        .filter(|p| p.len() < n as usize)
        .collect();
    Ok(shape_check(1, n, binomial(n, 2), shapes, |sizes| {
        sizes.iter().map(|&p| binomial(p, 2)).sum()
    }))
}

/// `|J|` of `Π^d_{dn}`: `(dn)! / ((d!)^n n!)`.
pub fn ddiv_j_total(d: u64, n: u64) -> BigInt {
    factorial(d * n) / (num_traits::pow(factorial(d), n as usize) * factorial(n))
}

/// Whether `Π^d_{dn}` is strongly coset-like, decided on integer
/// partitions of `n`.
pub fn ddiv_strong_check(d: u64, n: u64) -> Result<ShapeCheck> {
    if d < 2 || n < 2 {
        return Err(Error::InvalidArgument(format!(
            "d-divisible check needs d >= 2 and n >= 2, got d = {d}, n = {n}"
        )));
    }
    let shapes = integer_partitions(n as usize);
    Ok(shape_check(d, n, ddiv_j_total(d, n), shapes, |sizes| {
        d_divisible_j_count(d, sizes).expect("sizes are multiples of d")
    }))
}

/// `adjoin_atoms(L, k)` classified for each `k` in the range.
pub fn adjoin_atoms_scan(
    l: &Lattice,
    ks: std::ops::RangeInclusive<usize>,
) -> Result<Vec<(usize, Classification)>> {
    ks.into_par_iter()
        .map(|k| Ok((k, classify(&crate::lattice::adjoin_atoms(l, k)?))))
        .collect()
}
