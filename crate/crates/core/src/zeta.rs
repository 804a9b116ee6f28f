//! The probabilistic zeta function of a lattice and its brute-force oracle.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::dirichlet::{rational_to_string, DirichletSeries, SeriesDoc, TermDoc};
use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// Default cap on `|J_x|^s` for direct tuple enumeration.
pub const DEFAULT_TUPLE_BUDGET: u128 = 4_000_000;

/// Everything computed on the way to `P(L, s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaReport {
    pub series: DirichletSeries,
    pub j_count: usize,
    /// `|J_x|` by element id (0 for the bottom).
    pub j_below: Vec<usize>,
    /// `μ(x, 1̂)` by element id.
    pub mobius_top: Vec<BigInt>,
    /// `S(q)` for every realised ratio `q`, zeros included.
    pub local_sums: BTreeMap<BigRational, BigInt>,
    pub is_ordinary: bool,
    pub is_strongly_coset_like: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZetaReportDoc {
    pub elements: usize,
    pub bottom: usize,
    pub top: usize,
    pub j_count: usize,
    pub j_below: Vec<usize>,
    pub mobius_top: Vec<String>,
    pub local_sums: Vec<TermDoc>,
    pub series: SeriesDoc,
    pub is_ordinary: bool,
    pub is_strongly_coset_like: bool,
}

impl ZetaReport {
    /// Ratio `[J : J_x]` for `x > 0̂`.
    pub fn ratio(&self, x: usize) -> Option<BigRational> {
        let jx = *self.j_below.get(x)?;
        (jx > 0).then(|| BigRational::new(self.j_count.into(), jx.into()))
    }

    pub fn to_doc(&self, lattice: &Lattice) -> ZetaReportDoc {
        ZetaReportDoc {
            elements: lattice.len(),
            bottom: lattice.bottom(),
            top: lattice.top(),
            j_count: self.j_count,
            j_below: self.j_below.clone(),
            mobius_top: self.mobius_top.iter().map(|m| m.to_string()).collect(),
            local_sums: self
                .local_sums
                .iter()
                .map(|(q, c)| TermDoc {
                    q: rational_to_string(q),
                    c: c.to_string(),
                })
                .collect(),
            series: self.series.to_doc(),
            is_ordinary: self.is_ordinary,
            is_strongly_coset_like: self.is_strongly_coset_like,
        }
    }

    pub fn to_json(&self, lattice: &Lattice) -> String {
        serde_json::to_string_pretty(&self.to_doc(lattice)).expect("report serialises")
    }
}

/// `P(L, s) = Σ_{x > 0̂} μ(x, 1̂) / [J : J_x]^s`.
pub fn zeta_series(l: &Lattice) -> ZetaReport {
    let n = l.len();
    let j_count = l.join_irreducibles().len();
    let j_below: Vec<usize> = (0..n).map(|x| l.below_irreducible_count(x)).collect();
    let mobius_top = l.mobius_top().values().to_vec();
    let mut local_sums: BTreeMap<BigRational, BigInt> = BTreeMap::new();
    let mut strong = true;
    for x in 0..n {
        if x == l.bottom() {
            continue;
        }
        let jx = j_below[x];
        if !j_count.is_multiple_of(jx) {
            strong = false;
        }
        let q = BigRational::new(j_count.into(), jx.into());
        *local_sums.entry(q).or_insert_with(BigInt::zero) += &mobius_top[x];
    }
    let mut series = DirichletSeries::new();
    for (q, c) in &local_sums {
        series.add_term(q.clone(), c.clone());
    }
    let is_ordinary = series.is_ordinary();
    ZetaReport {
        series,
        j_count,
        j_below,
        mobius_top,
        local_sums,
        is_ordinary,
        is_strongly_coset_like: strong,
    }
}

/// `S(q)` for every ratio realised by some `x > 0̂`.
pub fn local_sums(l: &Lattice) -> BTreeMap<BigRational, BigInt> {
    zeta_series(l).local_sums
}

/// Result of the atom-based definition.
#[derive(Clone, Debug, PartialEq)]
pub enum AtomZeta {
    Series(DirichletSeries),
    /// The atoms do not join to the top, so no tuple of atoms generates.
    DegenerateGeneration,
}

impl AtomZeta {
    pub fn series(&self) -> Option<&DirichletSeries> {
        match self {
            AtomZeta::Series(s) => Some(s),
            AtomZeta::DegenerateGeneration => None,
        }
    }
}

/// The same construction with `J` replaced by the atoms.
pub fn zeta_series_atom_based(l: &Lattice) -> AtomZeta {
    let atoms = l.atoms();
    if l.join_all(atoms.iter().copied()) != l.top() {
        return AtomZeta::DegenerateGeneration;
    }
    let a = atoms.len();
    let mu = l.mobius_top().values();
    let mut series = DirichletSeries::new();
    for x in 0..l.len() {
        if x == l.bottom() {
            continue;
        }
        let ax = atoms.iter().filter(|&&t| l.leq(t, x)).count();
        series.add_term(BigRational::new(a.into(), ax.into()), mu[x].clone());
    }
    AtomZeta::Series(series)
}

/// Which oracle produced a probability.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OraclePath {
    Direct,
    InclusionExclusion,
}

fn checked_power(base: usize, s: u32) -> Option<u128> {
    (base as u128).checked_pow(s)
}

fn target_irreducibles(l: &Lattice, x: usize) -> Result<Vec<usize>> {
    if x == l.bottom() {
        return Err(Error::BottomTarget);
    }
    if x >= l.len() {
        return Err(Error::InvalidElement { id: x, n: l.len() });
    }
    l.below_irreducibles(x)
}

/// Counts `s`-tuples of `J_x` whose join is exactly `x` by enumerating
/// them. Fails with `BudgetExceeded` when `|J_x|^s > budget`.
pub fn brute_force_direct(l: &Lattice, x: usize, s: u32, budget: u128) -> Result<BigRational> {
    let jx = target_irreducibles(l, x)?;
    let total = checked_power(jx.len(), s).filter(|&t| t <= budget).ok_or_else(|| {
        Error::BudgetExceeded(format!("{}^{} tuples exceed budget {}", jx.len(), s, budget))
    })?;
    if s == 0 {
        return Ok(BigRational::zero());
    }
    fn count(l: &Lattice, jx: &[usize], x: usize, depth: u32, acc: usize) -> u128 {
        if depth == 0 {
            return u128::from(acc == x);
        }
        jx.iter().map(|&j| count(l, jx, x, depth - 1, l.join(acc, j))).sum()
    }
    let hits = count(l, &jx, x, s, l.bottom());
    Ok(BigRational::new(hits.into(), total.into()))
}

/// Same probability via `Σ_{y ≤ x} μ(y, x) |J_y|^s / |J_x|^s`.
pub fn brute_force_inclusion_exclusion(l: &Lattice, x: usize, s: u32) -> Result<BigRational> {
    let jx = target_irreducibles(l, x)?;
    let mu = l.mobius_vector(x);
    let mut hits = BigInt::zero();
    for y in 0..l.len() {
        let Some(m) = mu.get(y) else { continue };
        if m.is_zero() {
            continue;
        }
        // 0^0 = 1: the empty tuple joins to the bottom
        let jy = BigInt::from(l.below_irreducible_count(y));
        hits += m * Pow::pow(&jy, s);
    }
    let total = Pow::pow(&BigInt::from(jx.len()), s);
    Ok(BigRational::new(hits, total))
}

/// Probability that `s` uniform elements of `J_x` join to exactly `x`,
/// by direct enumeration within the budget and inclusion–exclusion beyond.
pub fn brute_force_probability(
    l: &Lattice,
    x: usize,
    s: u32,
    budget: u128,
) -> Result<(BigRational, OraclePath)> {
    let jx = target_irreducibles(l, x)?;
    match checked_power(jx.len(), s) {
        Some(t) if t <= budget => Ok((brute_force_direct(l, x, s, budget)?, OraclePath::Direct)),
        _ => Ok((
            brute_force_inclusion_exclusion(l, x, s)?,
            OraclePath::InclusionExclusion,
        )),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub s: u32,
    pub series: String,
    pub oracle: String,
    pub path: OraclePath,
}

/// Checks `P(L, s)` against the oracle at `x = 1̂` for `s = 1..=s_max`.
pub fn verify_series_against_oracle(
    l: &Lattice,
    s_max: u32,
    budget: u128,
) -> Result<Vec<OracleComparison>> {
    let report = zeta_series(l);
    let mut out = Vec::new();
    for s in 1..=s_max {
        let value = report.series.evaluate_exact(s as i64);
        let (oracle, path) = brute_force_probability(l, l.top(), s, budget)?;
        if value != oracle {
            return Err(Error::MismatchDetected {
                s: s as i64,
                series: Box::new(value),
                oracle: Box::new(oracle),
            });
        }
        out.push(OracleComparison {
            s,
            series: rational_to_string(&value),
            oracle: rational_to_string(&oracle),
            path,
        });
    }
    Ok(out)
}

/// Whether `|J_x|` divides `|J|` for every `x > 0̂`.
pub fn strongly_coset_like(report: &ZetaReport, bottom: usize) -> bool {
    report
        .j_below
        .iter()
        .enumerate()
        .all(|(x, &jx)| x == bottom || report.j_count.is_multiple_of(jx))
}

/// `S(q)` at a single base, zero when `q` is not realised.
pub fn local_sum_at(report: &ZetaReport, q: &BigRational) -> BigInt {
    report.local_sums.get(q).cloned().unwrap_or_else(BigInt::zero)
}

/// `|J|^s · P(L, s)` as an integer, the number of generating tuples.
pub fn generating_tuples(report: &ZetaReport, s: u32) -> BigInt {
    let scale = Pow::pow(&BigInt::from(report.j_count), s);
    let v = report.series.evaluate_exact(s as i64) * BigRational::from_integer(scale);
    debug_assert!(v.is_integer());
    v.to_integer()
}
