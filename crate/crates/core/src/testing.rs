//! Shared helpers for unit tests.

use proptest::prelude::*;

use crate::lattice::Lattice;

pub fn chain(k: usize) -> Lattice {
    let covers: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
    Lattice::from_covers(k, &covers).unwrap()
}

pub fn boolean(r: usize) -> Lattice {
    Lattice::from_leq(1 << r, |a, b| a & b == a).unwrap()
}

/// Lattice of the intersection-closed family generated by `sets` together
/// with the full ground set.
pub fn closure_lattice(ground: usize, sets: &[u32]) -> Lattice {
    let full = if ground == 32 { u32::MAX } else { (1u32 << ground) - 1 };
    let mut family: Vec<u32> = vec![full];
    for &s in sets {
        let s = s & full;
        if !family.contains(&s) {
            family.push(s);
        }
    }
    loop {
        let mut added = false;
        for i in 0..family.len() {
            for j in 0..i {
                let m = family[i] & family[j];
                if !family.contains(&m) {
                    family.push(m);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    family.sort_unstable();
    if family.len() == 1 {
        family.insert(0, 0);
    }
    Lattice::from_leq(family.len(), |i, j| family[i] & family[j] == family[i]).unwrap()
}

/// Random lattices as closure systems on a small ground set.
pub fn arb_lattice(ground: usize, max_sets: usize) -> impl Strategy<Value = Lattice> {
    prop::collection::vec(any::<u32>(), 1..=max_sets)
        .prop_map(move |sets| closure_lattice(ground, &sets))
}
