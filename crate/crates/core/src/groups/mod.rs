//! Finite groups as Cayley tables, their subgroup lattices and `P(G, s)`.

mod coset;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dirichlet::DirichletSeries;
use crate::error::{Error, Result};
use crate::families::Labeled;
use crate::lattice::Lattice;

pub use coset::{
    coset_lattice, good_sublattice_candidates, is_good_sublattice, verify_brown_identity,
    verify_coprime_product, BrownRecord, Coset, CosetLattice, CoprimeRecord, GoodCandidate,
    GoodReport,
};

/// Largest supported group order; element sets are `u64` masks.
pub const MAX_GROUP_ORDER: usize = 64;

/// A set of group elements as a bit mask.
pub type ElementSet = u64;

pub fn elements_of(set: ElementSet) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| set >> i & 1 == 1)
}

pub fn format_set(set: ElementSet) -> String {
    let items: Vec<String> = elements_of(set).map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u8>,
    inverse: Vec<u8>,
    identity: usize,
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 || order > MAX_GROUP_ORDER {
        return Err(Error::OrderLimitExceeded {
            requested: order,
            limit: MAX_GROUP_ORDER,
        });
    }
    Ok(())
}

impl FiniteGroup {
    /// Validates a Cayley table (`table[a][b] = a·b`).
    pub fn from_table(name: impl Into<String>, table: &[Vec<usize>]) -> Result<FiniteGroup> {
        let order = table.len();
        check_order(order)?;
        let bad = |msg: String| Err(Error::InvalidGroup(msg));
        if table.iter().any(|row| row.len() != order || row.iter().any(|&v| v >= order)) {
            return bad("table is not square over 0..n".into());
        }
        let at = |a: usize, b: usize| table[a][b];
        let Some(identity) = (0..order).find(|&e| (0..order).all(|a| at(e, a) == a && at(a, e) == a))
        else {
            return bad("no identity".into());
        };
        let mut inverse = vec![0u8; order];
        for a in 0..order {
            match (0..order).find(|&b| at(a, b) == identity && at(b, a) == identity) {
                Some(b) => inverse[a] = b as u8,
                None => return bad(format!("{a} has no inverse")),
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return bad(format!("not associative at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            order,
            table: table.iter().flatten().map(|&v| v as u8).collect(),
            inverse,
            identity,
        })
    }

    fn from_fn(name: String, order: usize, mul: impl Fn(usize, usize) -> usize) -> Result<FiniteGroup> {
        check_order(order)?;
        let table: Vec<Vec<usize>> = (0..order).map(|a| (0..order).map(|b| mul(a, b)).collect()).collect();
        FiniteGroup::from_table(name, &table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn all(&self) -> ElementSet {
        if self.order == 64 {
            u64::MAX
        } else {
            (1u64 << self.order) - 1
        }
    }

    /// `{a·x : x ∈ set}`.
    pub fn left_translate(&self, a: usize, set: ElementSet) -> ElementSet {
        elements_of(set).fold(0, |acc, x| acc | 1 << self.mul(a, x))
    }

    /// Subgroup generated by a set of elements.
    pub fn closure(&self, gens: ElementSet) -> ElementSet {
        let mut set: ElementSet = 1 << self.identity;
        let mut frontier: Vec<usize> = vec![self.identity];
        let gen_list: Vec<usize> = elements_of(gens).collect();
        while let Some(x) = frontier.pop() {
            for &g in &gen_list {
                let y = self.mul(x, g);
                if set >> y & 1 == 0 {
                    set |= 1 << y;
                    frontier.push(y);
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, set: ElementSet) -> bool {
        set >> self.identity & 1 == 1 && self.closure(set) == set
    }

    pub fn is_normal(&self, h: ElementSet) -> bool {
        (0..self.order).all(|g| {
            elements_of(h).all(|x| h >> self.mul(self.mul(g, x), self.inv(g)) & 1 == 1)
        })
    }

    /// All subgroups, sorted by (order, mask).
    pub fn subgroups(&self) -> Vec<ElementSet> {
        let mut found: BTreeSet<ElementSet> = (0..self.order).map(|g| self.closure(1 << g)).collect();
        let cyclic: Vec<ElementSet> = found.iter().copied().collect();
        let mut frontier: Vec<ElementSet> = cyclic.clone();
        while !frontier.is_empty() {
            let mut fresh = Vec::new();
            for &h in &frontier {
                for &c in &cyclic {
                    if c & !h == 0 {
                        continue;
                    }
                    let j = self.closure(h | c);
                    if found.insert(j) {
                        fresh.push(j);
                    }
                }
            }
            frontier = fresh;
        }
        let mut out: Vec<ElementSet> = found.into_iter().collect();
        out.sort_by_key(|&h| (h.count_ones(), h));
        out
    }

    /// Left cosets `gH`, sorted by mask.
    pub fn left_cosets(&self, h: ElementSet) -> Vec<ElementSet> {
        let mut out: BTreeSet<ElementSet> = BTreeSet::new();
        for g in 0..self.order {
            out.insert(self.left_translate(g, h));
        }
        out.into_iter().collect()
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    FiniteGroup::from_fn(format!("cyclic:{n}"), n, |a, b| (a + b) % n.max(1))
}

/// `S_n` for `n ≤ 4`, elements are permutations in lexicographic order
/// (element 0 is the identity); `a·b` applies `b` first.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("symmetric group needs n >= 1".into()));
    }
    if n > 4 {
        return Err(Error::OrderLimitExceeded {
            requested: (1..=n).product(),
            limit: MAX_GROUP_ORDER,
        });
    }
    let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
    loop {
        let mut p = perms.last().unwrap().clone();
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
        perms.push(p);
    }
    let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    FiniteGroup::from_fn(format!("sym:{n}"), perms.len(), |a, b| {
        let composed: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
        index[&composed]
    })
}

/// `D_n` of order `2n`: element `i + n·j` is `r^i s^j`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("dihedral group needs n >= 1".into()));
    }
    check_order(2 * n)?;
    FiniteGroup::from_fn(format!("dihedral:{n}"), 2 * n, |a, b| {
        let (i, j) = (a % n, a / n);
        let (k, l) = (b % n, b / n);
        // r^i s^j r^k s^l = r^(i ± k) s^(j + l)
        let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
        rot + n * ((j + l) % 2)
    })
}

/// `G × H`, element `(g, h)` has id `g·|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let order = g.order * h.order;
    check_order(order)?;
    let hn = h.order;
    FiniteGroup::from_fn(format!("prod:{},{}", g.name, h.name), order, |a, b| {
        g.mul(a / hn, b / hn) * hn + h.mul(a % hn, b % hn)
    })
}

/// Subgroup lattice ordered by inclusion, labelled by element masks.
pub fn subgroup_lattice(g: &FiniteGroup) -> Result<Labeled<ElementSet>> {
    let subs = g.subgroups();
    let lattice = Lattice::from_leq(subs.len(), |a, b| subs[a] & !subs[b] == 0)?;
    Ok(Labeled { lattice, labels: subs })
}

/// `P(G, s) = Σ_{H ≤ G} μ(H, G) / [G : H]^s`.
pub fn group_zeta(g: &FiniteGroup) -> Result<DirichletSeries> {
    let sl = subgroup_lattice(g)?;
    let mu = sl.lattice.mobius_top();
    let mut out = DirichletSeries::new();
    for (i, &h) in sl.labels.iter().enumerate() {
        let index = g.order / h.count_ones() as usize;
        out.add_term(BigRational::from_integer(index.into()), mu.values()[i].clone());
    }
    Ok(out)
}

/// Fraction of `s`-tuples of `G` that generate `G`, counted directly
/// (tuples are grouped by the subgroup generated by their prefix).
pub fn tuple_generation_probability(g: &FiniteGroup, s: u32, budget: u128) -> Result<BigRational> {
    let total = (g.order as u128)
        .checked_pow(s)
        .filter(|&t| t <= budget)
        .ok_or_else(|| Error::BudgetExceeded(format!("{}^{s} tuples exceed budget {budget}", g.order)))?;
    let mut memo: HashMap<(u32, ElementSet), BigInt> = HashMap::new();
    fn count(
        g: &FiniteGroup,
        depth: u32,
        h: ElementSet,
        memo: &mut HashMap<(u32, ElementSet), BigInt>,
    ) -> BigInt {
        if depth == 0 {
            return if h == g.all() { BigInt::one() } else { BigInt::zero() };
        }
        if let Some(v) = memo.get(&(depth, h)) {
            return v.clone();
        }
        let mut acc = BigInt::zero();
        for x in 0..g.order() {
            let next = if h >> x & 1 == 1 { h } else { g.closure(h | 1 << x) };
            acc += count(g, depth - 1, next, memo);
        }
        memo.insert((depth, h), acc.clone());
        acc
    }
    let hits = count(g, s, 1 << g.identity(), &mut memo);
    Ok(BigRational::new(hits, total.into()))
}

/// Group descriptions accepted on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Symmetric(usize),
    Dihedral(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

struct SpecParser<'a> {
    src: &'a str,
    rest: &'a str,
}

impl<'a> SpecParser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("group `{}`: {msg}", self.src))
    }

    fn number(&mut self) -> Result<usize> {
        let end = self.rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest.len());
        let (digits, rest) = self.rest.split_at(end);
        self.rest = rest;
        digits.parse().map_err(|_| self.err("expected a number"))
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let (name, rest) = self.rest.split_once(':').ok_or_else(|| self.err("expected name:args"))?;
        self.rest = rest;
        Ok(match name.trim() {
            "cyclic" => GroupSpec::Cyclic(self.number()?),
            "sym" => GroupSpec::Symmetric(self.number()?),
            "dihedral" => GroupSpec::Dihedral(self.number()?),
            "prod" => {
                let a = self.spec()?;
                self.rest = self.rest.strip_prefix(',').ok_or_else(|| self.err("expected `,`"))?;
                let b = self.spec()?;
                GroupSpec::Product(Box::new(a), Box::new(b))
            }
            other => return Err(self.err(&format!("unknown group `{other}`"))),
        })
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupSpec> {
        let mut p = SpecParser { src: s, rest: s.trim() };
        let spec = p.spec()?;
        if !p.rest.is_empty() {
            return Err(p.err("trailing input"));
        }
        Ok(spec)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "sym:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Product(a, b) => write!(f, "prod:{a},{b}"),
        }
    }
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic(n) => cyclic(*n),
            GroupSpec::Symmetric(n) => symmetric(*n),
            GroupSpec::Dihedral(n) => dihedral(*n),
            GroupSpec::Product(a, b) => direct_product(&a.build()?, &b.build()?),
        }
    }
}
