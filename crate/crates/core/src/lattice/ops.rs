//! Lattice constructions: products, atom adjoining and generated sublattices.

use std::collections::BTreeSet;

use super::{Lattice, LatticeOptions};
use crate::error::{Error, Result};

/// `L × K` with componentwise order. Element `(x, y)` has id `x * |K| + y`.
pub fn cartesian_product(l: &Lattice, k: &Lattice, opts: &LatticeOptions) -> Result<Lattice> {
    let (nl, nk) = (l.len(), k.len());
    opts.check_size("cartesian product", nl as u128 * nk as u128)?;
    let id = |x: usize, y: usize| x * nk + y;
    let mut covers = Vec::new();
    for x in 0..nl {
        for y in 0..nk {
            for &x2 in l.upper_covers(x) {
                covers.push((id(x, y), id(x2, y)));
            }
            for &y2 in k.upper_covers(y) {
                covers.push((id(x, y), id(x, y2)));
            }
        }
    }
    Lattice::from_covers_with(nl * nk, &covers, opts)
}

/// Non-bottom elements of a lattice, ascending by id.
fn non_bottom(l: &Lattice) -> Vec<usize> {
    (0..l.len()).filter(|&x| x != l.bottom()).collect()
}

/// For each id of a reduced product, the pair it came from (`None` for the
/// bottom).
pub type PairLabels = Vec<Option<(usize, usize)>>;

/// The lower reduced product `L ⋆ K`: pairs of non-bottom elements with
/// componentwise order, plus a fresh bottom with id 0.
///
/// Returns the lattice together with the pair behind every non-bottom id.
pub fn lower_reduced_product(
    l: &Lattice,
    k: &Lattice,
    opts: &LatticeOptions,
) -> Result<(Lattice, PairLabels)> {
    let ls = non_bottom(l);
    let ks = non_bottom(k);
    let n = ls.len() as u128 * ks.len() as u128 + 1;
    opts.check_size("lower reduced product", n)?;
    let mut l_index = vec![usize::MAX; l.len()];
    for (i, &x) in ls.iter().enumerate() {
        l_index[x] = i;
    }
    let mut k_index = vec![usize::MAX; k.len()];
    for (i, &y) in ks.iter().enumerate() {
        k_index[y] = i;
    }
    let id = |x: usize, y: usize| 1 + l_index[x] * ks.len() + k_index[y];
    let mut labels = vec![None; n as usize];
    let mut covers = Vec::new();
    for &x in &ls {
        for &y in &ks {
            labels[id(x, y)] = Some((x, y));
            if l.lower_covers(x) == [l.bottom()] && k.lower_covers(y) == [k.bottom()] {
                covers.push((0, id(x, y)));
            }
            for &x2 in l.upper_covers(x) {
                covers.push((id(x, y), id(x2, y)));
            }
            for &y2 in k.upper_covers(y) {
                covers.push((id(x, y), id(x, y2)));
            }
        }
    }
    let lat = Lattice::from_covers_with(n as usize, &covers, opts)?;
    Ok((lat, labels))
}

/// Adds `k` new atoms, each covered by the top. New atoms get ids
/// `|L|..|L|+k`.
pub fn adjoin_atoms(l: &Lattice, k: usize) -> Result<Lattice> {
    let n = l.len();
    let mut covers = l.covers();
    for a in n..n + k {
        covers.push((l.bottom(), a));
        covers.push((a, l.top()));
    }
    Lattice::from_covers(n + k, &covers)
}

/// A sublattice together with its embedding into the ambient lattice.
#[derive(Clone, Debug)]
pub struct Sublattice {
    pub lattice: Lattice,
    /// `embedding[i]` is the ambient id of sublattice element `i`.
    pub embedding: Vec<usize>,
}

impl Sublattice {
    /// Sublattice id of an ambient element, if it belongs to the sublattice.
    pub fn local_id(&self, ambient: usize) -> Option<usize> {
        self.embedding.binary_search(&ambient).ok()
    }
}

/// Closure of `generators ∪ {0̂, 1̂}` under the ambient join and meet.
pub fn sublattice_generated(ambient: &Lattice, generators: &[usize]) -> Result<Sublattice> {
    if generators.is_empty() {
        return Err(Error::InvalidArgument("no generators".into()));
    }
    for &g in generators {
        if g >= ambient.len() {
            return Err(Error::InvalidElement {
                id: g,
                n: ambient.len(),
            });
        }
    }
    let mut set: BTreeSet<usize> = generators.iter().copied().collect();
    set.insert(ambient.bottom());
    set.insert(ambient.top());
    let mut members: Vec<usize> = set.iter().copied().collect();
    let mut frontier = members.clone();
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for &a in &frontier {
            for &b in &members {
                for c in [ambient.join(a, b), ambient.meet(a, b)] {
                    if set.insert(c) {
                        fresh.push(c);
                    }
                }
            }
        }
        members.extend_from_slice(&fresh);
        frontier = fresh;
    }
    let embedding: Vec<usize> = set.into_iter().collect();
    let lattice = Lattice::from_leq(embedding.len(), |i, j| ambient.leq(embedding[i], embedding[j]))?;
    Ok(Sublattice { lattice, embedding })
}
