//! Canonical labelling of finite posets.
//!
//! Cells of an ordered partition are refined by (height, cover counts into
//! each cell) until stable, then the search individualises elements of the
//! first non-singleton cell and recurses. Every leaf yields a labelling and
//! the lexicographically smallest upper-triangular order matrix wins.
//! Automorphisms discovered at equal leaves prune sibling branches that lie
//! in the same orbit of the pointwise stabiliser of the current prefix.

use std::cmp::Ordering;
use std::fmt;

use super::{Lattice, Poset};
use crate::error::{Error, Result};

/// Relabelling-invariant encoding of a finite poset: the strict upper
/// triangle of its order matrix in canonical label order. Canonical labels
/// form a linear extension, so the lower triangle is always empty.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    words: Vec<u64>,
}

#[inline]
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl CanonicalForm {
    fn bit_count(n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Order relation between canonical labels.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        match i.cmp(&j) {
            Ordering::Equal => true,
            Ordering::Greater => false,
            Ordering::Less => {
                let k = pair_index(self.n, i, j);
                self.words[k / 64] >> (63 - k % 64) & 1 == 1
            }
        }
    }

    /// Hex string of the packed bits, most significant bit first.
    pub fn to_hex(&self) -> String {
        let nbytes = Self::bit_count(self.n).div_ceil(8);
        let bytes: Vec<u8> = self
            .words
            .iter()
            .flat_map(|w| w.to_be_bytes())
            .take(nbytes)
            .collect();
        hex::encode(bytes)
    }

    pub fn from_hex(n: usize, s: &str) -> Result<CanonicalForm> {
        let bytes = hex::decode(s).map_err(|e| Error::Parse(format!("bad hex `{s}`: {e}")))?;
        let nbits = Self::bit_count(n);
        if bytes.len() != nbits.div_ceil(8) {
            return Err(Error::Parse(format!(
                "hex `{s}` has {} bytes, {} expected for {n} elements",
                bytes.len(),
                nbits.div_ceil(8)
            )));
        }
        let mut words = vec![0u64; nbits.div_ceil(64).max(1)];
        for (i, chunk) in bytes.chunks(8).enumerate() {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            words[i] = u64::from_be_bytes(buf);
        }
        let form = CanonicalForm { n, words };
        // trailing padding must be clear so equality stays structural
        let canonical = {
            let mut probe = form.clone();
            probe.clear_padding();
            probe
        };
        if canonical != form {
            return Err(Error::Parse(format!("hex `{s}` has padding bits set")));
        }
        Ok(form)
    }

    fn clear_padding(&mut self) {
        let nbits = Self::bit_count(self.n);
        for k in nbits..self.words.len() * 64 {
            self.words[k / 64] &= !(1u64 << (63 - k % 64));
        }
    }

    /// Rebuilds a lattice whose element `i` is canonical label `i`.
    pub fn to_lattice(&self) -> Result<Lattice> {
        Lattice::from_leq(self.n, |i, j| self.leq(i, j))
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({}:{})", self.n, self.to_hex())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

struct Search<'a> {
    poset: &'a Poset,
    n: usize,
    best: Option<(Vec<u64>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Splits cells by the multiset of cells of upper and lower covers until
    /// the partition is stable. Cells keep their relative order.
    fn refine(&self, cells: &mut [usize], mut ncells: usize) -> usize {
        let n = self.n;
        let mut order: Vec<usize> = (0..n).collect();
        let mut sigs: Vec<Vec<usize>> = vec![Vec::new(); n];
        loop {
            for x in 0..n {
                let sig = &mut sigs[x];
                sig.clear();
                sig.push(cells[x]);
                let up = self.poset.upper_covers(x);
                let start = sig.len();
                sig.extend(up.iter().map(|&y| cells[y]));
                sig[start..].sort_unstable();
                sig.push(usize::MAX);
                let start = sig.len();
                sig.extend(self.poset.lower_covers(x).iter().map(|&y| cells[y]));
                sig[start..].sort_unstable();
            }
            order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
            let mut next = 0;
            for i in 0..n {
                if i > 0 && sigs[order[i]] != sigs[order[i - 1]] {
                    next += 1;
                }
                cells[order[i]] = next;
            }
            let count = next + 1;
            if count == ncells {
                return count;
            }
            ncells = count;
        }
    }

    fn code(&self, labels: &[usize]) -> Vec<u64> {
        let n = self.n;
        let nbits = CanonicalForm::bit_count(n);
        let mut words = vec![0u64; nbits.div_ceil(64).max(1)];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.poset.leq(labels[i], labels[j]) {
                    words[k / 64] |= 1 << (63 - k % 64);
                }
                k += 1;
            }
        }
        words
    }

    fn leaf(&mut self, cells: &[usize]) {
        let mut labels = vec![0; self.n];
        for (x, &c) in cells.iter().enumerate() {
            labels[c] = x;
        }
        let code = self.code(&labels);
        match &self.best {
            None => self.best = Some((code, labels)),
            Some((best_code, best_labels)) => match code.cmp(best_code) {
                Ordering::Less => self.best = Some((code, labels)),
                Ordering::Equal => {
                    let mut gamma = vec![0; self.n];
                    for i in 0..self.n {
                        gamma[best_labels[i]] = labels[i];
                    }
                    if gamma.iter().enumerate().any(|(i, &g)| i != g) {
                        self.automorphisms.push(gamma);
                    }
                }
                Ordering::Greater => {}
            },
        }
    }

    fn same_orbit(&self, prefix: &[usize], a: usize, b: usize) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for gamma in &self.automorphisms {
            if prefix.iter().any(|&v| gamma[v] != v) {
                continue;
            }
            for (x, &y) in gamma.iter().enumerate() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        find(&mut parent, a) == find(&mut parent, b)
    }

    fn search(&mut self, cells: Vec<usize>, ncells: usize, prefix: &mut Vec<usize>) {
        if ncells == self.n {
            self.leaf(&cells);
            return;
        }
        let mut sizes = vec![0usize; ncells];
        for &c in &cells {
            sizes[c] += 1;
        }
        let target = sizes.iter().position(|&s| s > 1).expect("non-discrete partition");
        let members: Vec<usize> = (0..self.n).filter(|&x| cells[x] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &w in &members {
            if explored.iter().any(|&e| self.same_orbit(prefix, e, w)) {
                continue;
            }
            explored.push(w);
            let mut child = cells.clone();
            for (x, c) in child.iter_mut().enumerate() {
                if *c > target || (*c == target && x != w) {
                    *c += 1;
                }
            }
            let nc = self.refine(&mut child, ncells + 1);
            prefix.push(w);
            self.search(child, nc, prefix);
            prefix.pop();
        }
    }
}

/// Canonical form and a canonical labelling (`labels[i]` is the element
/// receiving canonical label `i`).
pub fn canonical_labeling(poset: &Poset) -> (CanonicalForm, Vec<usize>) {
    let n = poset.len();
    let mut search = Search {
        poset,
        n,
        best: None,
        automorphisms: Vec::new(),
    };
    if n == 0 {
        return (CanonicalForm { n, words: vec![0] }, Vec::new());
    }
    let heights = poset.heights();
    let mut distinct: Vec<usize> = heights.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let mut cells: Vec<usize> = heights
        .iter()
        .map(|h| distinct.binary_search(h).unwrap())
        .collect();
    let ncells = search.refine(&mut cells, distinct.len());
    search.search(cells, ncells, &mut Vec::new());
    let (words, labels) = search.best.expect("search visits at least one leaf");
    (CanonicalForm { n, words }, labels)
}

pub fn canonical_form(l: &Lattice) -> CanonicalForm {
    canonical_labeling(l.poset()).0
}

pub fn is_isomorphic(a: &Lattice, b: &Lattice) -> bool {
    a.len() == b.len()
        && a.covers().len() == b.covers().len()
        && canonical_form(a) == canonical_form(b)
}
