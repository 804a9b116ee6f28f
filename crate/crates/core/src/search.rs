//! Exhaustive enumeration of finite lattices up to isomorphism.
//!
//! Every lattice on `n ≥ 3` elements arises from one on `n − 1` elements by
//! adjoining a new atom `a`: removing an atom never breaks meets or joins.
//! Conversely, a new atom with strict up-set `U` gives a lattice exactly
//! when `U` is an up-set containing the top but not the bottom, and the
//! meet of any two members of `U` is either in `U` or the bottom. Each
//! level is therefore the canonical-form deduplication of all such
//! extensions of the previous level.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cosetlike::classify_report;
use crate::error::{Error, Result};
use crate::lattice::{canonical_labeling, CanonicalForm, Poset};
use crate::zeta::zeta_series;

/// Largest element count accepted by the enumerator.
pub const MAX_SEARCH_N: usize = 11;

/// The one lattice on two elements.
fn two_chain() -> CanonicalForm {
    CanonicalForm::from_hex(2, "80").expect("valid two-element form")
}

struct Extender<'a> {
    base: &'a CanonicalForm,
    m: usize,
    up: Vec<u32>,
    down: Vec<u32>,
}

impl<'a> Extender<'a> {
    fn new(base: &'a CanonicalForm) -> Self {
        let m = base.len();
        let mut up = vec![0u32; m];
        let mut down = vec![0u32; m];
        for x in 0..m {
            for y in 0..m {
                if base.leq(x, y) {
                    up[x] |= 1 << y;
                    down[y] |= 1 << x;
                }
            }
        }
        Extender { base, m, up, down }
    }

    fn meet(&self, x: usize, y: usize) -> usize {
        let common = self.down[x] & self.down[y];
        // the meet is the common lower bound that sees all others below it
        (0..self.m)
            .find(|&z| common >> z & 1 == 1 && self.down[z] == common)
            .expect("base is a lattice")
    }

    fn admissible(&self, u: u32) -> bool {
        let members: Vec<usize> = (0..self.m).filter(|&x| u >> x & 1 == 1).collect();
        if members.iter().any(|&x| self.up[x] & !u != 0) {
            return false;
        }
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                let z = self.meet(x, y);
                if z != 0 && u >> z & 1 == 0 {
                    return false;
                }
            }
        }
        true
    }

    fn extend(&self, u: u32) -> CanonicalForm {
        let m = self.m;
        let leq = |i: usize, j: usize| match (i == m, j == m) {
            (false, false) => self.base.leq(i, j),
            (true, true) => true,
            (true, false) => u >> j & 1 == 1,
            (false, true) => i == 0,
        };
        let poset = Poset::from_leq(m + 1, leq).expect("atom extension is a partial order");
        canonical_labeling(&poset).0
    }

    fn extensions(&self) -> Vec<CanonicalForm> {
        let m = self.m;
        let top = 1u32 << (m - 1);
        let middle = m.saturating_sub(2) as u32;
        (0..1u32 << middle)
            .map(|mask| (mask << 1) | top)
            .filter(|&u| self.admissible(u))
            .map(|u| self.extend(u))
            .collect()
    }
}

/// Canonical forms of all lattices on `n` elements, one per class.
pub fn next_level(prev: &[CanonicalForm]) -> Vec<CanonicalForm> {
    let mut out: Vec<CanonicalForm> = prev
        .par_iter()
        .flat_map_iter(|base| Extender::new(base).extensions())
        .collect();
    out.par_sort_unstable();
    out.dedup();
    out
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("lattices need at least 2 elements, got {n}")));
    }
    if n > MAX_SEARCH_N {
        return Err(Error::BudgetExceeded(format!(
            "enumeration is limited to {MAX_SEARCH_N} elements, got {n}"
        )));
    }
    Ok(())
}

/// All lattices on `n` elements up to isomorphism, sorted by canonical form.
pub fn enumerate_lattices(n: usize) -> Result<Vec<CanonicalForm>> {
    check_n(n)?;
    let mut level = vec![two_chain()];
    for _ in 3..=n {
        level = next_level(&level);
    }
    Ok(level)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeCatalogEntry {
    pub canonical: String,
    pub n: usize,
    pub atomistic: bool,
    pub strong: bool,
    pub weak: bool,
    /// First 16 hex digits of the SHA-256 of the pretty-printed series.
    pub series_digest: String,
}

impl LatticeCatalogEntry {
    pub fn weak_not_strong(&self) -> bool {
        self.weak && !self.strong
    }

    pub fn flags(&self) -> String {
        let f = |b: bool, c: char| if b { c } else { '-' };
        [f(self.atomistic, 'a'), f(self.strong, 's'), f(self.weak, 'w')]
            .iter()
            .collect()
    }

    pub fn to_line(&self) -> String {
        format!("{} {} {}", self.canonical, self.n, self.flags())
    }

    pub fn form(&self) -> Result<CanonicalForm> {
        CanonicalForm::from_hex(self.n, &self.canonical)
    }
}

pub fn catalog_entry(form: &CanonicalForm) -> Result<LatticeCatalogEntry> {
    let l = form.to_lattice()?;
    let report = zeta_series(&l);
    let c = classify_report(&l, &report);
    let digest = Sha256::digest(report.series.pretty().as_bytes());
    Ok(LatticeCatalogEntry {
        canonical: form.to_hex(),
        n: form.len(),
        atomistic: l.is_atomistic(),
        strong: c.strong,
        weak: c.weak,
        series_digest: hex::encode(&digest[..8]),
    })
}

pub fn classify_level(forms: &[CanonicalForm]) -> Result<Vec<LatticeCatalogEntry>> {
    forms.par_iter().map(catalog_entry).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LevelSummary {
    pub n: usize,
    pub total: usize,
    pub strong: usize,
    pub weak: usize,
    pub atomistic: usize,
    pub weak_not_strong: usize,
    pub atomistic_weak_not_strong: usize,
}

impl LevelSummary {
    pub fn of(n: usize, entries: &[LatticeCatalogEntry]) -> LevelSummary {
        let count = |f: &dyn Fn(&LatticeCatalogEntry) -> bool| entries.iter().filter(|e| f(e)).count();
        LevelSummary {
            n,
            total: entries.len(),
            strong: count(&|e| e.strong),
            weak: count(&|e| e.weak),
            atomistic: count(&|e| e.atomistic),
            weak_not_strong: count(&|e| e.weak_not_strong()),
            atomistic_weak_not_strong: count(&|e| e.atomistic && e.weak_not_strong()),
        }
    }
}

/// Classified levels `2..=max_n`.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub levels: BTreeMap<usize, Vec<LatticeCatalogEntry>>,
}

impl Catalog {
    pub fn summaries(&self) -> Vec<LevelSummary> {
        self.levels.iter().map(|(&n, e)| LevelSummary::of(n, e)).collect()
    }

    pub fn weak_not_strong(&self) -> Vec<&LatticeCatalogEntry> {
        self.levels.values().flatten().filter(|e| e.weak_not_strong()).collect()
    }

    /// Line-oriented checkpoint text: one `<hex> <n> <flags>` line per
    /// entry, each finished level closed by `# done <n> <count>`.
    pub fn to_checkpoint(&self) -> String {
        let mut out = String::new();
        for (n, entries) in &self.levels {
            for e in entries {
                out.push_str(&e.to_line());
                out.push('\n');
            }
            out.push_str(&format!("# done {n} {}\n", entries.len()));
        }
        out
    }

    /// Reads back the finished levels of a checkpoint. Entries after the
    /// last `# done` marker are discarded.
    pub fn from_checkpoint(text: &str) -> Result<Catalog> {
        let mut levels = BTreeMap::new();
        let mut pending: Vec<LatticeCatalogEntry> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let bad = |what: &str| Error::Parse(format!("checkpoint line {}: {what}", i + 1));
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                [] => {}
                ["#", "done", n, count] => {
                    let n: usize = n.parse().map_err(|_| bad("bad level"))?;
                    let count: usize = count.parse().map_err(|_| bad("bad count"))?;
                    if pending.len() != count || pending.iter().any(|e| e.n != n) {
                        return Err(bad("level marker does not match its entries"));
                    }
                    levels.insert(n, std::mem::take(&mut pending));
                }
                [hex, n, flags] => {
                    let n: usize = n.parse().map_err(|_| bad("bad element count"))?;
                    let form = CanonicalForm::from_hex(n, hex)?;
                    let flags = flags.as_bytes();
                    if flags.len() != 3 {
                        return Err(bad("flags must have three characters"));
                    }
                    // digests are recomputed, flags are checked against them
                    let entry = catalog_entry(&form)?;
                    if entry.flags().as_bytes() != flags {
                        return Err(bad("flags disagree with recomputed classification"));
                    }
                    pending.push(entry);
                }
                _ => return Err(bad("expected `<hex> <n> <flags>`")),
            }
        }
        Ok(Catalog { levels })
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub max_n: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

/// Enumerates and classifies levels `2..=max_n`, resuming from `resume` and
/// calling `on_level` after each level. The callback can persist a
/// checkpoint; its return value aborts the run when it is an error.
pub fn run_search(
    cfg: &SearchConfig,
    resume: Option<Catalog>,
    mut on_level: impl FnMut(&Catalog, &LevelSummary) -> Result<()>,
) -> Result<Catalog> {
    check_n(cfg.max_n)?;
    let pool = match cfg.jobs {
        Some(jobs) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?,
        ),
        None => None,
    };
    let in_pool = |f: &(dyn Fn() -> Result<Vec<LatticeCatalogEntry>> + Sync)| match &pool {
        Some(p) => p.install(f),
        None => f(),
    };
    let mut catalog = resume.unwrap_or_default();
    catalog.levels.retain(|&n, _| n <= cfg.max_n);
    let done = (2..=cfg.max_n).take_while(|n| catalog.levels.contains_key(n)).last();
    let mut forms: Vec<CanonicalForm> = match done {
        Some(n) => catalog.levels[&n].iter().map(|e| e.form()).collect::<Result<_>>()?,
        None => Vec::new(),
    };
    catalog.levels.retain(|&n, _| done.is_some_and(|d| n <= d));
    let start = done.map_or(2, |d| d + 1);
    for n in start..=cfg.max_n {
        forms = if n == 2 {
            vec![two_chain()]
        } else {
            match &pool {
                Some(p) => p.install(|| next_level(&forms)),
                None => next_level(&forms),
            }
        };
        let entries = in_pool(&|| classify_level(&forms))?;
        let summary = LevelSummary::of(n, &entries);
        catalog.levels.insert(n, entries);
        on_level(&catalog, &summary)?;
    }
    Ok(catalog)
}

/// Writes a checkpoint atomically via a temporary sibling file.
pub fn write_checkpoint(path: &Path, catalog: &Catalog) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp)?;
    f.write_all(catalog.to_checkpoint().as_bytes())?;
    f.sync_all()?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read_checkpoint(path: &Path) -> Result<Option<Catalog>> {
    match fs::read_to_string(path) {
        Ok(text) => Catalog::from_checkpoint(&text).map(Some),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Weak-but-not-strong classes on at most `max_n` elements.
pub fn find_weak_not_strong(max_n: usize) -> Result<Vec<LatticeCatalogEntry>> {
    let catalog = run_search(&SearchConfig { max_n, jobs: None }, None, |_, _| Ok(()))?;
    Ok(catalog.weak_not_strong().into_iter().cloned().collect())
}

/// Per-level counts for levels `2..=n`.
pub fn classify_catalog(n: usize) -> Result<Vec<LevelSummary>> {
    let catalog = run_search(&SearchConfig { max_n: n, jobs: None }, None, |_, _| Ok(()))?;
    Ok(catalog.summaries())
}
