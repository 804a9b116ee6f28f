//! Coset lattices `𝒞(G)` and the identities relating them to `P(G, s)`.

use std::collections::HashMap;

use num_integer::Integer;
use serde::Serialize;

use super::{direct_product, elements_of, format_set, group_zeta, ElementSet, FiniteGroup};
use crate::dirichlet::rational_to_string;
use crate::error::{Error, Result};
use crate::lattice::{
    canonical_form, lower_reduced_product, sublattice_generated, CanonicalForm, Lattice,
    LatticeOptions, Sublattice,
};
use crate::zeta::zeta_series;

/// A left coset `xH`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Coset {
    pub subgroup: ElementSet,
    /// Smallest element of the coset.
    pub representative: usize,
    pub members: ElementSet,
}

/// All cosets of all subgroups of a group, plus the empty set as bottom
/// (element 0), ordered by inclusion.
#[derive(Clone, Debug)]
pub struct CosetLattice {
    pub group: FiniteGroup,
    pub lattice: Lattice,
    /// `None` for the empty set.
    pub cosets: Vec<Option<Coset>>,
    index: HashMap<ElementSet, usize>,
}

pub fn coset_lattice(g: &FiniteGroup, opts: &LatticeOptions) -> Result<CosetLattice> {
    let subs = g.subgroups();
    let count: u128 = 1 + subs
        .iter()
        .map(|h| (g.order() / h.count_ones() as usize) as u128)
        .sum::<u128>();
    opts.check_size("coset lattice", count)?;
    let mut cosets: Vec<Option<Coset>> = vec![None];
    for &h in &subs {
        for members in g.left_cosets(h) {
            cosets.push(Some(Coset {
                subgroup: h,
                representative: members.trailing_zeros() as usize,
                members,
            }));
        }
    }
    let members: Vec<ElementSet> = cosets.iter().map(|c| c.map_or(0, |c| c.members)).collect();
    let lattice = Lattice::from_leq_with(cosets.len(), |a, b| members[a] & !members[b] == 0, opts)?;
    let index = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    Ok(CosetLattice {
        group: g.clone(),
        lattice,
        cosets,
        index,
    })
}

impl CosetLattice {
    pub fn members(&self, x: usize) -> ElementSet {
        self.cosets[x].map_or(0, |c| c.members)
    }

    /// Element id of a coset given by its member set.
    pub fn id_of(&self, members: ElementSet) -> Option<usize> {
        self.index.get(&members).copied()
    }

    /// Id of the singleton coset `{g}`.
    pub fn singleton(&self, g: usize) -> usize {
        self.index[&(1u64 << g)]
    }

    /// `x₁H₁ ∨ x₂H₂ = x₁⟨x₁⁻¹x₂, H₁, H₂⟩`, with the empty set as identity.
    pub fn join_by_formula(&self, a: usize, b: usize) -> usize {
        let (Some(ca), Some(cb)) = (self.cosets[a], self.cosets[b]) else {
            return if self.cosets[a].is_none() { b } else { a };
        };
        let g = &self.group;
        let (x1, x2) = (ca.representative, cb.representative);
        let gens = 1u64 << g.mul(g.inv(x1), x2) | ca.subgroup | cb.subgroup;
        let k = g.closure(gens);
        self.index[&g.left_translate(x1, k)]
    }

    /// Compares the coset join formula with the inclusion-order join.
    pub fn validate_join_formula(&self) -> Result<()> {
        let n = self.lattice.len();
        for a in 0..n {
            for b in 0..n {
                if self.join_by_formula(a, b) != self.lattice.join(a, b) {
                    return Err(Error::VerificationFailed(format!(
                        "coset join formula disagrees at {} ∨ {}",
                        self.describe(a),
                        self.describe(b)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn describe(&self, x: usize) -> String {
        match self.cosets[x] {
            None => "∅".to_string(),
            Some(c) => format!("{} = {}·{}", format_set(c.members), c.representative, format_set(c.subgroup)),
        }
    }

    /// One description per element id.
    pub fn legend(&self) -> Vec<String> {
        (0..self.lattice.len()).map(|x| self.describe(x)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BrownRecord {
    /// `(s, P(𝒞(G), s + 1), P(G, s))`.
    pub rows: Vec<(u32, String, String)>,
    pub series_equal_after_shift: bool,
}

/// Checks `P(𝒞(G), s + 1) = P(G, s)` pointwise for `s = 0..=s_max` and as
/// series after shifting the argument.
pub fn verify_brown_identity(g: &FiniteGroup, s_max: u32, opts: &LatticeOptions) -> Result<BrownRecord> {
    let cl = coset_lattice(g, opts)?;
    let lattice_series = zeta_series(&cl.lattice).series;
    let group_series = group_zeta(g)?;
    let mut rows = Vec::new();
    for s in 0..=s_max {
        let lhs = lattice_series.evaluate_exact(s as i64 + 1);
        let rhs = group_series.evaluate_exact(s as i64);
        if lhs != rhs {
            return Err(Error::MismatchDetected {
                s: s as i64,
                series: Box::new(lhs),
                oracle: Box::new(rhs),
            });
        }
        rows.push((s, rational_to_string(&lhs), rational_to_string(&rhs)));
    }
    let shifted = lattice_series.shift_argument(1);
    if shifted.as_ref() != Some(&group_series) {
        return Err(Error::VerificationFailed(format!(
            "shifted coset series {} differs from {}",
            shifted.map_or("(non-integral)".to_string(), |s| s.to_string()),
            group_series
        )));
    }
    Ok(BrownRecord {
        rows,
        series_equal_after_shift: true,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoprimeRecord {
    pub product_series: String,
    pub zeta_product_equal: bool,
    pub coset_lattices_isomorphic: bool,
    pub rows: Vec<(u32, String)>,
}

/// For coprime orders: `P(G × H) = P(G) P(H)` and
/// `𝒞(G × H) ≅ 𝒞(G) ⋆ 𝒞(H)`.
pub fn verify_coprime_product(
    g: &FiniteGroup,
    h: &FiniteGroup,
    s_max: u32,
    opts: &LatticeOptions,
) -> Result<CoprimeRecord> {
    if g.order().gcd(&h.order()) != 1 {
        return Err(Error::NotCoprimeOrders(g.order(), h.order()));
    }
    let gh = direct_product(g, h)?;
    let lhs = group_zeta(&gh)?;
    let rhs = &group_zeta(g)? * &group_zeta(h)?;
    if lhs != rhs {
        return Err(Error::VerificationFailed(format!(
            "P(G×H) = {lhs} but P(G)P(H) = {rhs}"
        )));
    }
    let mut rows = Vec::new();
    for s in 1..=s_max {
        rows.push((s, rational_to_string(&lhs.evaluate_exact(s as i64))));
    }
    let cg = coset_lattice(g, opts)?;
    let ch = coset_lattice(h, opts)?;
    let cgh = coset_lattice(&gh, opts)?;
    let (reduced, _) = lower_reduced_product(&cg.lattice, &ch.lattice, opts)?;
    if canonical_form(&reduced) != canonical_form(&cgh.lattice) {
        return Err(Error::VerificationFailed(
            "coset lattice of the product is not the reduced product".into(),
        ));
    }
    Ok(CoprimeRecord {
        product_series: lhs.to_string(),
        zeta_product_equal: true,
        coset_lattices_isomorphic: true,
        rows,
    })
}

/// Clause-by-clause outcome of the good-sublattice test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodReport {
    pub normal: bool,
    pub action_preserves: bool,
    /// `H` normal and its translations map the sublattice to itself.
    pub clause_i: bool,
    /// Every join-irreducible is a singleton coset.
    pub clause_ii: bool,
    /// Group elements in join-irreducibles meet at most two cosets of `H`.
    pub clause_iii: bool,
    pub coset_count: usize,
    pub good: bool,
}

pub fn is_good_sublattice(cl: &CosetLattice, sub: &Sublattice, h: ElementSet) -> Result<GoodReport> {
    let g = &cl.group;
    if !g.is_subgroup(h) {
        return Err(Error::InvalidArgument(format!("{} is not a subgroup", format_set(h))));
    }
    let normal = g.is_normal(h);
    let member_sets: Vec<ElementSet> = sub.embedding.iter().map(|&x| cl.members(x)).collect();
    let mut present: Vec<ElementSet> = member_sets.clone();
    present.sort_unstable();
    let action_preserves = elements_of(h).all(|hx| {
        member_sets
            .iter()
            .all(|&m| present.binary_search(&g.left_translate(hx, m)).is_ok())
    });
    let irreducible_sets: Vec<ElementSet> = sub
        .lattice
        .join_irreducibles()
        .iter()
        .map(|&j| member_sets[j])
        .collect();
    let clause_ii = irreducible_sets.iter().all(|m| m.count_ones() == 1);
    let elements = irreducible_sets.iter().fold(0u64, |acc, m| acc | m);
    let coset_count = g
        .left_cosets(h)
        .iter()
        .filter(|&&c| c & elements != 0)
        .count();
    let clause_i = normal && action_preserves;
    let clause_iii = coset_count <= 2;
    Ok(GoodReport {
        normal,
        action_preserves,
        clause_i,
        clause_ii,
        clause_iii,
        coset_count,
        good: clause_i && clause_ii && clause_iii,
    })
}

/// A sublattice generated by the singletons of at most two cosets of a
/// normal subgroup.
#[derive(Clone, Debug)]
pub struct GoodCandidate {
    pub subgroup: ElementSet,
    pub cosets: (ElementSet, ElementSet),
    pub sublattice: Sublattice,
    pub report: GoodReport,
    pub strongly_coset_like: bool,
    pub canonical: CanonicalForm,
}

/// Enumerates, for every normal subgroup `H` and every pair of its cosets,
/// the sublattice generated by their singletons.
pub fn good_sublattice_candidates(cl: &CosetLattice) -> Result<Vec<GoodCandidate>> {
    let g = &cl.group;
    let mut out = Vec::new();
    for h in g.subgroups().into_iter().filter(|&h| g.is_normal(h)) {
        let cosets = g.left_cosets(h);
        for (i, &a) in cosets.iter().enumerate() {
            for &b in &cosets[i..] {
                let gens: Vec<usize> = elements_of(a | b).map(|x| cl.singleton(x)).collect();
                let sub = sublattice_generated(&cl.lattice, &gens)?;
                let report = is_good_sublattice(cl, &sub, h)?;
                let zeta = zeta_series(&sub.lattice);
                out.push(GoodCandidate {
                    subgroup: h,
                    cosets: (a, b),
                    canonical: canonical_form(&sub.lattice),
                    strongly_coset_like: zeta.is_strongly_coset_like,
                    sublattice: sub,
                    report,
                });
            }
        }
    }
    Ok(out)
}
