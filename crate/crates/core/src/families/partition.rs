//! Partition lattices `Π_n` and their d-divisible sublattices.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Labeled;
use crate::dirichlet::DirichletSeries;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeOptions};
use crate::numbers::{binomial, factorial, integer_partitions, set_partitions_of_shape};

/// Largest `n` for which `Π_n` is materialised.
pub const MAX_PARTITION_N: usize = 8;
/// Largest ground set `dn` for materialised d-divisible partition lattices.
pub const MAX_DDIV_GROUND: usize = 12;

/// Block sizes of a partition, largest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionShape {
    parts: Vec<u64>,
}

impl PartitionShape {
    pub fn new(mut parts: Vec<u64>) -> Result<PartitionShape> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidArgument(format!("bad partition shape {parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PartitionShape { parts })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn block_count(&self) -> usize {
        self.parts.len()
    }

    /// `Σ C(|P_i|, 2)`, the number of atoms of `Π_n` below a partition of
    /// this shape.
    pub fn pair_count(&self) -> BigInt {
        self.parts.iter().map(|&p| binomial(p, 2)).sum()
    }

    /// Number of set partitions with this shape.
    pub fn multiplicity(&self) -> BigInt {
        let parts: Vec<usize> = self.parts.iter().map(|&p| p as usize).collect();
        set_partitions_of_shape(&parts)
    }
}

impl fmt::Display for PartitionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A set partition of `{1..m}` as block bit masks (bit `i` is element
/// `i + 1`), sorted by lowest element. The artificial bottom has no blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    pub blocks: Vec<u32>,
}

impl SetPartition {
    pub fn shape(&self) -> Option<PartitionShape> {
        PartitionShape::new(self.blocks.iter().map(|b| b.count_ones() as u64).collect()).ok()
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("∅");
        }
        let wide = self.blocks.iter().any(|b| 32 - b.leading_zeros() > 9);
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|&b| {
                let items: Vec<String> =
                    (0..32).filter(|i| b >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
                items.join(if wide { "," } else { "" })
            })
            .collect();
        f.write_str(&blocks.join("|"))
    }
}

fn normalise(mut blocks: Vec<u32>) -> Vec<u32> {
    blocks.sort_unstable_by_key(|b| b.trailing_zeros());
    blocks
}

/// All set partitions of `{0..m}` whose blocks have size divisible by `d`.
fn divisible_partitions(m: usize, d: usize) -> Vec<Vec<u32>> {
    fn rec(rest: u32, d: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        let low = rest & rest.wrapping_neg();
        let others = rest & !low;
        // iterate over submasks of `others`, including the empty one
        let mut sub = others;
        loop {
            if (sub.count_ones() as usize + 1).is_multiple_of(d) {
                cur.push(low | sub);
                rec(others & !sub, d, cur, out);
                cur.pop();
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
    }
    let mut out = Vec::new();
    let full = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
    rec(full, d, &mut Vec::new(), &mut out);
    out.into_iter().map(normalise).collect()
}

fn build(
    m: usize,
    d: usize,
    artificial_bottom: bool,
    opts: &LatticeOptions,
) -> Result<Labeled<SetPartition>> {
    let mut parts = divisible_partitions(m, d);
    let n = parts.len() + usize::from(artificial_bottom);
    opts.check_size("partition lattice", n as u128)?;
    parts.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let offset = usize::from(artificial_bottom);
    let index: HashMap<&[u32], usize> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i + offset))
        .collect();
    let mut covers = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        if artificial_bottom && p.len() * d == m {
            covers.push((0, i + offset));
        }
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                let mut merged: Vec<u32> = p
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != a && k != b)
                    .map(|(_, &x)| x)
                    .collect();
                merged.push(p[a] | p[b]);
                let merged = normalise(merged);
                covers.push((i + offset, index[merged.as_slice()]));
            }
        }
    }
    let lattice = Lattice::from_covers_with(n, &covers, opts)?;
    let mut labels = Vec::with_capacity(n);
    if artificial_bottom {
        labels.push(SetPartition { blocks: Vec::new() });
    }
    labels.extend(parts.into_iter().map(|blocks| SetPartition { blocks }));
    Ok(Labeled { lattice, labels })
}

/// `Π_n`, set partitions of `{1..n}` under refinement. Element 0 is the
/// discrete partition; elements are sorted by descending block count.
pub fn partition_lattice(n: usize, opts: &LatticeOptions) -> Result<Labeled<SetPartition>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("partition lattice needs n >= 2, got {n}")));
    }
    if n > MAX_PARTITION_N {
        return Err(Error::SizeLimitExceeded {
            what: "partition lattice n".into(),
            requested: n as u128,
            limit: MAX_PARTITION_N as u128,
        });
    }
    build(n, 1, false, opts)
}

/// `Π^d_{dn}`: partitions of `{1..dn}` with all block sizes divisible by
/// `d`, plus an artificial bottom (element 0).
pub fn d_divisible_partition_lattice(
    d: usize,
    n: usize,
    opts: &LatticeOptions,
) -> Result<Labeled<SetPartition>> {
    if d < 2 || n < 1 {
        return Err(Error::InvalidArgument(format!(
            "d-divisible partition lattice needs d >= 2 and n >= 1, got d = {d}, n = {n}"
        )));
    }
    let ground = d.saturating_mul(n);
    if ground > MAX_DDIV_GROUND {
        return Err(Error::SizeLimitExceeded {
            what: "d-divisible ground set".into(),
            requested: ground as u128,
            limit: MAX_DDIV_GROUND as u128,
        });
    }
    build(ground, d, true, opts)
}

/// `μ(P, 1̂)` in `Π_n` for `P` with `k` blocks: `(−1)^{k−1} (k−1)!`.
pub fn partition_mobius_top(blocks: usize) -> BigInt {
    let f = factorial(blocks as u64 - 1);
    if blocks % 2 == 1 {
        f
    } else {
        -f
    }
}

/// `P(Π_n, s)` aggregated over partition shapes.
pub fn partition_zeta_closed(n: usize) -> Result<DirichletSeries> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("partition lattice needs n >= 2, got {n}")));
    }
    let total = binomial(n as u64, 2);
    let mut out = DirichletSeries::new();
    for parts in integer_partitions(n) {
        let shape = PartitionShape::new(parts.iter().map(|&p| p as u64).collect())?;
        let jx = shape.pair_count();
        if jx.is_zero() {
            continue;
        }
        let c = partition_mobius_top(shape.block_count()) * shape.multiplicity();
        out.add_term(BigRational::new(total.clone(), jx), c);
    }
    Ok(out)
}

/// Number of atoms of `Π^d` below a partition with the given block sizes:
/// `Π_i (d p_i)! / ((d!)^{p_i} p_i!)`.
pub fn d_divisible_j_count(d: u64, parts: &[u64]) -> Result<BigInt> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be positive".into()));
    }
    let dfact = factorial(d);
    let mut acc = BigInt::one();
    for &part in parts {
        if part == 0 || part % d != 0 {
            return Err(Error::PartNotDivisible { part, d });
        }
        let p = part / d;
        acc *= factorial(part) / (num_traits::pow(dfact.clone(), p as usize) * factorial(p));
    }
    Ok(acc)
}
