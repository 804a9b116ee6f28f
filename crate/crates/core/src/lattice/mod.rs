//! Finite posets and lattices.
//!
//! Elements are dense ids `0..n`. Internally every element also has a
//! position in a fixed linear extension, and the order relation is kept as
//! two bit matrices (`up` and `down`) indexed by those positions. Joins are
//! then the first common upper bound in linear-extension order and meets the
//! last common lower bound, which keeps every query a handful of word
//! operations even when the join/meet tables are not materialised.

mod canon;
mod format;
mod ops;

use std::collections::VecDeque;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bits::{self, BitMatrix};
use crate::error::{Error, Result};

pub use canon::{canonical_form, canonical_labeling, is_isomorphic, CanonicalForm};
pub use format::{parse_lat, render_lat};
pub use ops::{
    adjoin_atoms, cartesian_product, lower_reduced_product, sublattice_generated, PairLabels, Sublattice,
};

/// Construction limits for lattices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeOptions {
    /// Join/meet tables are materialised only up to this many elements.
    pub table_threshold: usize,
    /// Hard cap on the number of elements.
    pub max_elements: usize,
}

impl Default for LatticeOptions {
    fn default() -> Self {
        LatticeOptions {
            table_threshold: 5000,
            max_elements: 10_000,
        }
    }
}

impl LatticeOptions {
    pub(crate) fn check_size(&self, what: &str, requested: u128) -> Result<()> {
        if requested > self.max_elements as u128 {
            return Err(Error::SizeLimitExceeded {
                what: what.to_string(),
                requested,
                limit: self.max_elements as u128,
            });
        }
        Ok(())
    }
}

/// A finite partial order with its cover relation and reflexive closure.
#[derive(Clone, Debug)]
pub struct Poset {
    n: usize,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    topo: Vec<usize>,
    pos: Vec<usize>,
    up: BitMatrix,
    down: BitMatrix,
}

impl Poset {
    /// Builds a poset from generating pairs `(a, b)` meaning `a < b`. The
    /// pairs need not be covers; the cover relation is re-derived.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Poset> {
        for &(a, b) in covers {
            for id in [a, b] {
                if id >= n {
                    return Err(Error::InvalidElement { id, n });
                }
            }
        }
        let mut edges: Vec<(usize, usize)> = covers.to_vec();
        edges.sort_unstable();
        edges.dedup();
        if edges.iter().any(|&(a, b)| a == b) {
            return Err(Error::CyclicCovers);
        }

        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in &edges {
            succ[a].push(b);
            indeg[b] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(x) = queue.pop_front() {
            topo.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::CyclicCovers);
        }
        let mut pos = vec![0; n];
        for (i, &x) in topo.iter().enumerate() {
            pos[x] = i;
        }

        let mut pred = vec![Vec::new(); n];
        for &(a, b) in &edges {
            pred[b].push(a);
        }
        let mut up = BitMatrix::new(n, n);
        for &x in topo.iter().rev() {
            up.set(x, pos[x]);
            for &y in &succ[x] {
                up.or_row_into(y, x);
            }
        }
        let mut down = BitMatrix::new(n, n);
        for &x in &topo {
            down.set(x, pos[x]);
            for &y in &pred[x] {
                down.or_row_into(y, x);
            }
        }

        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for &(a, b) in &edges {
            if bits::and_count(up.row(a), down.row(b)) == 2 {
                upper[a].push(b);
                lower[b].push(a);
            }
        }
        for v in upper.iter_mut().chain(lower.iter_mut()) {
            v.sort_unstable();
        }
        Ok(Poset {
            n,
            upper,
            lower,
            topo,
            pos,
            up,
            down,
        })
    }

    /// Builds a poset from an order predicate, which must be reflexive,
    /// antisymmetric and transitive.
    pub fn from_leq(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        let mut rel = BitMatrix::new(n, n);
        for x in 0..n {
            if !leq(x, x) {
                return Err(Error::NotAPartialOrder(format!("{x} is not below itself")));
            }
            for y in 0..n {
                if x != y && leq(x, y) {
                    rel.set(x, y);
                }
            }
        }
        for x in 0..n {
            for y in bits::ones(rel.row(x)).collect::<Vec<_>>() {
                if rel.get(y, x) {
                    return Err(Error::NotAPartialOrder(format!("{x} and {y} are mutually below")));
                }
                for z in bits::ones(rel.row(y)) {
                    if z != x && !rel.get(x, z) {
                        return Err(Error::NotAPartialOrder(format!(
                            "{x} <= {y} <= {z} but not {x} <= {z}"
                        )));
                    }
                }
            }
        }
        let below_count: Vec<usize> = (0..n)
            .map(|y| (0..n).filter(|&x| x != y && rel.get(x, y)).count())
            .collect();
        let mut topo: Vec<usize> = (0..n).collect();
        topo.sort_by_key(|&x| (below_count[x], x));
        let mut pos = vec![0; n];
        for (i, &x) in topo.iter().enumerate() {
            pos[x] = i;
        }
        let mut up = BitMatrix::new(n, n);
        let mut down = BitMatrix::new(n, n);
        for x in 0..n {
            up.set(x, pos[x]);
            down.set(x, pos[x]);
            for y in bits::ones(rel.row(x)) {
                up.set(x, pos[y]);
                down.set(y, pos[x]);
            }
        }
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for x in 0..n {
            for y in bits::ones(rel.row(x)) {
                if bits::and_count(up.row(x), down.row(y)) == 2 {
                    upper[x].push(y);
                    lower[y].push(x);
                }
            }
        }
        for v in lower.iter_mut() {
            v.sort_unstable();
        }
        Ok(Poset {
            n,
            upper,
            lower,
            topo,
            pos,
            up,
            down,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up.get(x, self.pos[y])
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    /// All cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.n)
            .flat_map(|a| self.upper[a].iter().map(move |&b| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Elements in a linear extension, minimal elements first.
    pub fn linear_extension(&self) -> &[usize] {
        &self.topo
    }

    /// Elements `y >= x`, in linear-extension order.
    pub fn up_set(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(self.up.row(x)).map(move |p| self.topo[p])
    }

    /// Elements `y <= x`, in linear-extension order.
    pub fn down_set(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(self.down.row(x)).map(move |p| self.topo[p])
    }

    /// Length of the longest chain from a minimal element to `x`, per element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.n];
        for &x in &self.topo {
            h[x] = self.lower[x].iter().map(|&y| h[y] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Möbius numbers `μ(x, target)` for every `x <= target`.
    pub fn mobius_vector(&self, target: usize) -> MobiusVector {
        let tpos = self.pos[target];
        let interval_row = self.down.row(target);
        let n = self.n;
        // i128 covers every case exercised in practice; fall back on overflow.
        let mut small = vec![0i128; n];
        let mut overflow = false;
        small[target] = 1;
        'outer: for p in (0..tpos).rev() {
            let x = self.topo[p];
            if !interval_row_has(interval_row, p) {
                continue;
            }
            let mut acc: i128 = 0;
            for q in bits::ones(self.up.row(x)) {
                if q > tpos {
                    break;
                }
                if q == p || !interval_row_has(interval_row, q) {
                    continue;
                }
                match acc.checked_add(small[self.topo[q]]) {
                    Some(v) => acc = v,
                    None => {
                        overflow = true;
                        break 'outer;
                    }
                }
            }
            small[x] = -acc;
        }
        let values = if overflow {
            let mut big = vec![BigInt::zero(); n];
            big[target] = BigInt::one();
            for p in (0..tpos).rev() {
                let x = self.topo[p];
                if !interval_row_has(interval_row, p) {
                    continue;
                }
                let mut acc = BigInt::zero();
                for q in bits::ones(self.up.row(x)) {
                    if q > tpos {
                        break;
                    }
                    if q != p && interval_row_has(interval_row, q) {
                        acc += &big[self.topo[q]];
                    }
                }
                big[x] = -acc;
            }
            big
        } else {
            small.into_iter().map(BigInt::from).collect()
        };
        MobiusVector {
            target,
            below: interval_row.to_vec(),
            positions: self.pos.clone(),
            values,
        }
    }
}

#[inline]
fn interval_row_has(row: &[u64], p: usize) -> bool {
    row[p / 64] >> (p % 64) & 1 == 1
}

/// `μ(x, target)` for all `x` in the principal ideal of `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusVector {
    target: usize,
    below: Vec<u64>,
    positions: Vec<usize>,
    values: Vec<BigInt>,
}

impl MobiusVector {
    pub fn target(&self) -> usize {
        self.target
    }

    /// `μ(x, target)`, or `None` when `x` is not below the target.
    pub fn get(&self, x: usize) -> Option<&BigInt> {
        let p = *self.positions.get(x)?;
        interval_row_has(&self.below, p).then(|| &self.values[x])
    }

    /// Raw values indexed by element id; zero outside the ideal.
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
}

#[derive(Clone, Debug)]
struct Tables {
    join: Vec<u32>,
    meet: Vec<u32>,
}

/// A validated finite lattice with distinct bottom and top.
#[derive(Debug)]
pub struct Lattice {
    poset: Poset,
    bottom: usize,
    top: usize,
    tables: Option<Tables>,
    irreducibles: Vec<usize>,
    irreducible_mask: Vec<u64>,
    mobius_top: OnceLock<MobiusVector>,
}

impl Clone for Lattice {
    fn clone(&self) -> Self {
        Lattice {
            poset: self.poset.clone(),
            bottom: self.bottom,
            top: self.top,
            tables: self.tables.clone(),
            irreducibles: self.irreducibles.clone(),
            irreducible_mask: self.irreducible_mask.clone(),
            mobius_top: OnceLock::new(),
        }
    }
}

impl Lattice {
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Lattice> {
        Self::from_covers_with(n, covers, &LatticeOptions::default())
    }

    pub fn from_covers_with(
        n: usize,
        covers: &[(usize, usize)],
        opts: &LatticeOptions,
    ) -> Result<Lattice> {
        opts.check_size("lattice elements", n as u128)?;
        Self::from_poset(Poset::from_covers(n, covers)?, opts)
    }

    pub fn from_leq(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Lattice> {
        Self::from_leq_with(n, leq, &LatticeOptions::default())
    }

    pub fn from_leq_with(
        n: usize,
        leq: impl Fn(usize, usize) -> bool,
        opts: &LatticeOptions,
    ) -> Result<Lattice> {
        opts.check_size("lattice elements", n as u128)?;
        Self::from_poset(Poset::from_leq(n, leq)?, opts)
    }

    /// Validates that `poset` is a lattice with distinct bottom and top.
    pub fn from_poset(poset: Poset, opts: &LatticeOptions) -> Result<Lattice> {
        let n = poset.n;
        opts.check_size("lattice elements", n as u128)?;
        let minimal: Vec<usize> = (0..n).filter(|&x| poset.lower[x].is_empty()).collect();
        let maximal: Vec<usize> = (0..n).filter(|&x| poset.upper[x].is_empty()).collect();
        if minimal.len() != 1 || maximal.len() != 1 {
            return Err(Error::NoBoundedStructure);
        }
        let (bottom, top) = (minimal[0], maximal[0]);
        if bottom == top {
            return Err(Error::DegenerateLattice);
        }

        // In a finite bounded poset it suffices that all joins exist.
        let with_tables = n <= opts.table_threshold;
        let mut join_t = if with_tables { vec![0u32; n * n] } else { Vec::new() };
        let mut meet_t = if with_tables { vec![0u32; n * n] } else { Vec::new() };
        for x in 0..n {
            for y in x..n {
                let (ux, uy) = (poset.up.row(x), poset.up.row(y));
                let jp = bits::first_common(ux, uy).ok_or(Error::NotALattice(x, y, "join"))?;
                let j = poset.topo[jp];
                if !bits::and_equals(ux, uy, poset.up.row(j)) {
                    return Err(Error::NotALattice(x, y, "join"));
                }
                if with_tables {
                    let mp = bits::last_common(poset.down.row(x), poset.down.row(y))
                        .ok_or(Error::NotALattice(x, y, "meet"))?;
                    let m = poset.topo[mp];
                    join_t[x * n + y] = j as u32;
                    join_t[y * n + x] = j as u32;
                    meet_t[x * n + y] = m as u32;
                    meet_t[y * n + x] = m as u32;
                }
            }
        }
        let tables = with_tables.then_some(Tables {
            join: join_t,
            meet: meet_t,
        });

        let irreducibles: Vec<usize> = (0..n).filter(|&x| poset.lower[x].len() == 1).collect();
        let mut irreducible_mask = vec![0u64; n.div_ceil(64).max(1)];
        for &j in &irreducibles {
            let p = poset.pos[j];
            irreducible_mask[p / 64] |= 1 << (p % 64);
        }
        Ok(Lattice {
            poset,
            bottom,
            top,
            tables,
            irreducibles,
            irreducible_mask,
            mobius_top: OnceLock::new(),
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.poset.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.poset.lt(x, y)
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        match &self.tables {
            Some(t) => t.join[x * self.poset.n + y] as usize,
            None => {
                let p = bits::first_common(self.poset.up.row(x), self.poset.up.row(y))
                    .expect("validated lattice has all joins");
                self.poset.topo[p]
            }
        }
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        match &self.tables {
            Some(t) => t.meet[x * self.poset.n + y] as usize,
            None => {
                let p = bits::last_common(self.poset.down.row(x), self.poset.down.row(y))
                    .expect("validated lattice has all meets");
                self.poset.topo[p]
            }
        }
    }

    /// Join of a set of elements; the empty join is the bottom.
    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        self.poset.upper_covers(x)
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        self.poset.lower_covers(x)
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.poset.covers()
    }

    /// Join-irreducible elements, ascending by id. In a finite lattice these
    /// are exactly the elements with a single lower cover.
    pub fn join_irreducibles(&self) -> &[usize] {
        &self.irreducibles
    }

    pub fn is_join_irreducible(&self, x: usize) -> bool {
        self.poset.lower[x].len() == 1
    }

    /// `J_x`: join-irreducibles below `x`, ascending by id.
    pub fn below_irreducibles(&self, x: usize) -> Result<Vec<usize>> {
        if x == self.bottom {
            return Err(Error::BottomHasNoIrreducibles);
        }
        let mut out: Vec<usize> = self
            .irreducibles
            .iter()
            .copied()
            .filter(|&j| self.leq(j, x))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// `|J_x|`, zero for the bottom.
    pub fn below_irreducible_count(&self, x: usize) -> usize {
        bits::and_count(self.poset.down.row(x), &self.irreducible_mask)
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.poset.upper[self.bottom].clone()
    }

    pub fn coatoms(&self) -> Vec<usize> {
        self.poset.lower[self.top].clone()
    }

    pub fn is_atomistic(&self) -> bool {
        self.irreducibles
            .iter()
            .all(|&j| self.poset.lower[j] == [self.bottom])
    }

    /// `μ(x, y)`.
    pub fn mobius(&self, x: usize, y: usize) -> Result<BigInt> {
        if !self.leq(x, y) {
            return Err(Error::NotComparable(x, y));
        }
        if y == self.top {
            return Ok(self.mobius_top().values()[x].clone());
        }
        Ok(self.poset.mobius_vector(y).values()[x].clone())
    }

    pub fn mobius_vector(&self, target: usize) -> MobiusVector {
        if target == self.top {
            return self.mobius_top().clone();
        }
        self.poset.mobius_vector(target)
    }

    /// `μ(x, 1̂)` for all elements, computed once.
    pub fn mobius_top(&self) -> &MobiusVector {
        self.mobius_top
            .get_or_init(|| self.poset.mobius_vector(self.top))
    }

    pub fn heights(&self) -> Vec<usize> {
        self.poset.heights()
    }

    pub fn linear_extension(&self) -> &[usize] {
        self.poset.linear_extension()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn chain(k: usize) -> Lattice {
        let covers: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Lattice::from_covers(k, &covers).unwrap()
    }

    fn boolean(r: usize) -> Lattice {
        let n = 1usize << r;
        Lattice::from_leq(n, |a, b| a & b == a).unwrap()
    }

    #[test]
    fn two_chain() {
        let l = chain(2);
        assert_eq!((l.bottom(), l.top()), (0, 1));
        assert_eq!(l.join_irreducibles(), &[1]);
    }

    #[test]
    fn diamond_join() {
        let l = Lattice::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(l.join(1, 2), 3);
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.atoms(), vec![1, 2]);
        assert!(l.is_atomistic());
    }

    #[test]
    fn unbounded_rejected() {
        let err = Lattice::from_covers(4, &[(0, 1), (0, 2), (1, 3)]).unwrap_err();
        assert_eq!(err, Error::NoBoundedStructure);
    }

    #[test]
    fn non_lattice_rejected() {
        // two atoms with two incomparable upper bounds
        let covers = [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 5), (4, 5)];
        assert!(matches!(
            Lattice::from_covers(6, &covers),
            Err(Error::NotALattice(..))
        ));
    }

    #[test]
    fn degenerate_and_cyclic() {
        assert_eq!(Lattice::from_covers(1, &[]).unwrap_err(), Error::DegenerateLattice);
        assert_eq!(
            Lattice::from_covers(3, &[(0, 1), (1, 2), (2, 1)]).unwrap_err(),
            Error::CyclicCovers
        );
        assert_eq!(
            Lattice::from_covers(2, &[(0, 5)]).unwrap_err(),
            Error::InvalidElement { id: 5, n: 2 }
        );
    }

    #[test]
    fn covers_are_reduced() {
        let l = Lattice::from_covers(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(l.covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn mobius_small_cases() {
        let c3 = chain(3);
        assert_eq!(c3.mobius(0, 2).unwrap(), BigInt::from(0));
        assert_eq!(c3.mobius(1, 1).unwrap(), BigInt::from(1));
        assert_eq!(c3.mobius(1, 2).unwrap(), BigInt::from(-1));
        let b3 = boolean(3);
        assert_eq!(b3.mobius(0, 7).unwrap(), BigInt::from(-1));
        assert_eq!(b3.mobius(0, 3).unwrap(), BigInt::from(1));
        assert_eq!(b3.mobius(3, 1), Err(Error::NotComparable(3, 1)));
    }

    #[test]
    fn irreducibles() {
        assert_eq!(boolean(3).join_irreducibles(), &[1, 2, 4]);
        assert_eq!(chain(5).join_irreducibles(), &[1, 2, 3, 4]);
        assert!(!chain(3).is_atomistic());
        let b3 = boolean(3);
        assert_eq!(b3.below_irreducibles(7).unwrap(), vec![1, 2, 4]);
        assert_eq!(b3.below_irreducibles(0), Err(Error::BottomHasNoIrreducibles));
        assert_eq!(b3.coatoms(), vec![3, 5, 6]);
    }

    #[test]
    fn lazy_tables_agree() {
        let opts = LatticeOptions {
            table_threshold: 0,
            ..Default::default()
        };
        let lazy = Lattice::from_leq_with(16, |a, b| a & b == a, &opts).unwrap();
        let eager = boolean(4);
        assert!(!lazy.has_tables());
        for x in 0..16 {
            for y in 0..16 {
                assert_eq!(lazy.join(x, y), eager.join(x, y));
                assert_eq!(lazy.meet(x, y), eager.meet(x, y));
            }
        }
    }

    #[test]
    fn size_limit() {
        let opts = LatticeOptions {
            max_elements: 3,
            ..Default::default()
        };
        assert!(matches!(
            Lattice::from_covers_with(4, &[(0, 1), (1, 2), (2, 3)], &opts),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }
}
