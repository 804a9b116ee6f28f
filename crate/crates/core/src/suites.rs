//! Named verification suites run by `pzeta verify --suite <name>`.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;
use serde::Serialize;

use crate::cosetlike::{
    central_binomial_check, classify, coatom_criterion, ddiv_strong_check, load_fixture,
    mainthm_scan, mainthm_witness, nagura_gaps, odd_case_check, p0prime_divisibility,
    partition_strong_check,
};
use crate::cosetlike::divisibility::{first_failure, two_block_non_divisibility};
use crate::dirichlet::DirichletSeries;
use crate::error::{Error, Result};
use crate::families::{
    boolean_lattice, chain, divisibility_lattice, divisibility_zeta_closed,
    partition_lattice, partition_mobius_top, partition_zeta_closed, q_to_one_limit_check,
    subspace_lattice, subspace_zeta_closed,
};
use crate::groups::{
    coset_lattice, cyclic, dihedral, direct_product, good_sublattice_candidates,
    is_good_sublattice, symmetric, verify_brown_identity, verify_coprime_product, FiniteGroup,
};
use crate::lattice::{
    canonical_form, lower_reduced_product, sublattice_generated, Lattice, LatticeOptions,
};
use crate::numbers::{number_mobius, stirling2};
use crate::search::{enumerate_lattices, run_search, SearchConfig};
use crate::zeta::{brute_force_direct, brute_force_inclusion_exclusion, zeta_series};

pub const SUITE_NAMES: [&str; 13] = [
    "partition5",
    "fixtures",
    "oracle",
    "stirling",
    "closed-forms",
    "q-limit",
    "brown",
    "products",
    "partitions",
    "ddiv",
    "mainthm",
    "search",
    "good-sublattices",
];

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub s_max: u32,
    pub budget: u128,
    pub lattice: LatticeOptions,
    /// Largest element count for the search suite.
    pub search_max_n: usize,
    pub jobs: Option<usize>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            s_max: 4,
            budget: crate::zeta::DEFAULT_TUPLE_BUDGET,
            lattice: LatticeOptions::default(),
            search_max_n: 9,
            jobs: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Default)]
struct Checks(Vec<CheckResult>);

impl Checks {
    fn add(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(CheckResult {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn terms(list: &[(i64, i64, i64)]) -> DirichletSeries {
    DirichletSeries::from_terms(list.iter().map(|&(n, d, c)| (q(n, d), BigInt::from(c))))
        .expect("bases are at least 1")
}

fn partition5(c: &mut Checks, o: &SuiteOptions) -> Result<()> {
    let expected = terms(&[(1, 1, 1), (5, 3, -5), (5, 2, -10), (10, 3, 20), (5, 1, 30), (10, 1, -60)]);
    let got = zeta_series(&partition_lattice(5, &o.lattice)?.lattice).series;
    c.add("P(Π5, s) term map", got == expected, got.pretty());
    Ok(())
}

fn fixtures(c: &mut Checks, _: &SuiteOptions) -> Result<()> {
    for name in crate::cosetlike::FIXTURE_NAMES {
        let l = load_fixture(name)?;
        let r = zeta_series(&l);
        let cl = classify(&l);
        let has_8_3 = (0..l.len()).any(|x| r.ratio(x) == Some(q(8, 3)));
        c.add(
            format!("{name} weak and not strong"),
            cl.weak && !cl.strong && has_8_3,
            format!("{} with ratio 8/3 present: {has_8_3}", r.series.pretty()),
        );
    }
    Ok(())
}

fn oracle(c: &mut Checks, o: &SuiteOptions) -> Result<()> {
    let mut compared = 0usize;
    let mut mismatch = None;
    for n in 2..=7 {
        for form in enumerate_lattices(n)? {
            let l = form.to_lattice()?;
            let series = zeta_series(&l).series;
            for s in 1..=3u32 {
                let value = series.evaluate_exact(s as i64);
                let direct = brute_force_direct(&l, l.top(), s, o.budget)?;
                let ie = brute_force_inclusion_exclusion(&l, l.top(), s)?;
                compared += 1;
                if value != direct || value != ie {
                    mismatch.get_or_insert(format!("{form} at s = {s}"));
                }
            }
        }
    }
    c.add(
        "series equals both oracles on lattices up to 7 elements",
        mismatch.is_none(),
        mismatch.unwrap_or_else(|| format!("{compared} comparisons")),
    );
    Ok(())
}

fn stirling(c: &mut Checks, o: &SuiteOptions) -> Result<()> {
    let mut bad = Vec::new();
    for r in 1..=5u64 {
        let series = zeta_series(&boolean_lattice(r as usize, &o.lattice)?).series;
        for s in 1..=9u64 {
            let lhs = series.evaluate_exact(s as i64) * BigRational::from_integer(BigInt::from(r).pow(s as u32));
            let rhs = BigRational::from_integer(crate::numbers::factorial(r) * stirling2(s, r));
            if lhs != rhs {
                bad.push(format!("r = {r}, s = {s}"));
            }
        }
    }
    c.add("r^s P(B_r, s) = r! S(s, r)", bad.is_empty(), bad.join("; "));
    Ok(())
}

fn closed_forms(c: &mut Checks, o: &SuiteOptions) -> Result<()> {
    for n in [4u64, 8, 12, 30, 360] {
        let l = divisibility_lattice(n, &o.lattice)?;
        let top = l.lattice.top();
        let mobius_ok = l.labels.iter().enumerate().all(|(i, &d)| {
            l.lattice.mobius(i, top).ok() == Some(BigInt::from(number_mobius(n / d)))
        });
        let eq = zeta_series(&l.lattice).series == divisibility_zeta_closed(n)?;
        c.add(format!("divisor:{n}"), eq && mobius_ok, format!("series {eq}, mobius {mobius_ok}"));
    }
    for (qq, n) in [(2u64, 2usize), (2, 3), (3, 2), (4, 2)] {
        let l = subspace_lattice(qq, n, &o.lattice)?;
        let top = l.lattice.top();
        let mobius_ok = l.labels.iter().enumerate().all(|(i, sp)| {
            let k = (n - sp.dim) as u32;
            let mag = BigInt::from(qq).pow(k * k.saturating_sub(1) / 2);
            let expect = if k.is_multiple_of(2) { mag } else { -mag };
            l.lattice.mobius(i, top).ok() == Some(expect)
        });
        let eq = zeta_series(&l.lattice).series == subspace_zeta_closed(qq, n as u64)?;
        c.add(format!("subspace:{qq},{n}"), eq && mobius_ok, format!("series {eq}, mobius {mobius_ok}"));
    }
    for n in 3..=6usize {
        let l = partition_lattice(n, &o.lattice)?;
        let top = l.lattice.top();
        let mobius_ok = l.labels.iter().enumerate().all(|(i, p)| {
            l.lattice.mobius(i, top).ok() == Some(partition_mobius_top(p.blocks.len()))
        });
        let eq = zeta_series(&l.lattice).series == partition_zeta_closed(n)?;
        c.add(format!("partition:{n}"), eq && mobius_ok, format!("series {eq}, mobius {mobius_ok}"));
    }
    Ok(())
}

fn q_limit(c: &mut Checks, _: &SuiteOptions) -> Result<()> {
    for n in 2..=3u64 {
        for s in 1..=4u32 {
            let r = q_to_one_limit_check(n, s, 1e-6)?;
            c.add(
                format!("q -> 1 limit n = {n}, s = {s}"),
                r.difference.abs() < 1e-3,
                format!("difference {:.3e}", r.difference),
            );
        }
    }
    Ok(())
}

fn brown_groups() -> Result<Vec<FiniteGroup>> {
    Ok(vec![
        cyclic(2)?,
        cyclic(3)?,
        cyclic(4)?,
        cyclic(6)?,
        cyclic(8)?,
        cyclic(12)?,
        symmetric(3)?,
        dihedral(4)?,
    ])
}

fn brown(c: &mut Checks, o: &SuiteOptions) -> Result<()> {
    for g in brown_groups()? {
        let outcome = verify_brown_identity(&g, o.s_max, &o.lattice);
        c.add(
            format!("brown identity {}", g.name()),
            outcome.is_ok(),
            outcome.err().map_or(format!("s = 0..{}", o.s_max), |e| e.to_string()),
        );
    }
    let z6 = coset_lattice(&cyclic(6)?, &o.lattice)?.lattice.len();
    let s3 = coset_lattice(&symmetric(3)?, &o.lattice)?.lattice.len();
    c.add("coset lattice sizes", z6 == 13 && s3 == 19, format!("|C(Z6)| = {z6}, |C(S3)| = {s3}"));
    Ok(())
}

fn products(c: &mut Checks, o: &SuiteOptions) -> Result<()> {
    let lefts: Vec<(&str, Lattice)> = vec![
        ("B2", boolean_lattice(2, &o.lattice)?),
        ("B3", boolean_lattice(3, &o.lattice)?),
        ("Π4", partition_lattice(4, &o.lattice)?.lattice),
        ("C(Z2)", coset_lattice(&cyclic(2)?, &o.lattice)?.lattice),
    ];
    let rights: Vec<(&str, Lattice)> = vec![
        ("3-chain", chain(3)?),
        ("B2", boolean_lattice(2, &o.lattice)?),
        ("ten_point", load_fixture("ten_point")?),
    ];
    for (ln, l) in &lefts {
        for (kn, k) in &rights {
            let (prod, _) = lower_reduced_product(l, k, &o.lattice)?;
            let lhs = zeta_series(&prod).series;
            let rhs = &zeta_series(l).series * &zeta_series(k).series;
            c.add(format!("P({ln} ⋆ {kn}) = P({ln}) P({kn})"), lhs == rhs, lhs.pretty());
        }
    }
    for (g, h) in [(cyclic(2)?, cyclic(3)?), (cyclic(4)?, cyclic(3)?)] {
        let outcome = verify_coprime_product(&g, &h, o.s_max, &o.lattice);
        c.add(
            format!("coprime product {} × {}", g.name(), h.name()),
            outcome.is_ok(),
            outcome.map_or_else(|e| e.to_string(), |r| r.product_series),
        );
    }
    Ok(())
}

fn partitions(c: &mut Checks, o: &SuiteOptions) -> Result<()> {
    let bad: Vec<u64> = (2..=30u64)
        .filter(|&n| partition_strong_check(n).map(|s| s.strong != (n <= 4)).unwrap_or(true))
        .collect();
    c.add("shape-level: strong iff n <= 4 (n <= 30)", bad.is_empty(), format!("{bad:?}"));
    for n in 2..=8usize {
        let l = partition_lattice(n, &o.lattice)?;
        let cl = classify(&l.lattice);
        let crit = coatom_criterion(&l.lattice);
        let ok = cl.strong == (n <= 4) && cl.weak == (n <= 4) && (crit.is_none() || !cl.weak);
        c.add(
            format!("full lattice Π{n}"),
            ok,
            format!("strong {}, weak {}, coatom witness {}", cl.strong, cl.weak, crit.is_some()),
        );
    }
    Ok(())
}

fn ddiv(c: &mut Checks, _: &SuiteOptions) -> Result<()> {
    let strong: Vec<u64> = (2..=30u64)
        .filter(|&n| ddiv_strong_check(2, n).map(|s| s.strong).unwrap_or(false))
        .collect();
    c.add("2-divisible strong exactly for n in {2,3,5}", strong == [2, 3, 5], format!("{strong:?}"));
    let cb = first_failure(2..=10_000, central_binomial_check);
    c.add("C(2m,m) ∤ C(4m,2m) for 2 <= m <= 10^4", cb.is_none(), format!("first failure {cb:?}"));
    let od = first_failure(3..=10_000, odd_case_check);
    c.add("(2m+1)C(2m,m) ∤ (4m+1)C(4m,2m) for 3 <= m <= 10^4", od.is_none(), format!("first failure {od:?}"));
    let gaps = nagura_gaps(25, 1_000_000);
    c.add("prime in (n, 6n/5) for 25 <= n <= 10^6", gaps.is_empty(), format!("{} gaps", gaps.len()));
    let p0 = (2..=12u64).all(|d| (2..=200u64).all(|n| p0prime_divisibility(d, n)));
    c.add("(d-1)! divides (dn-1)...(dn-d+1)", p0, "2 <= d <= 12, 2 <= n <= 200");
    Ok(())
}

fn mainthm(c: &mut Checks, _: &SuiteOptions) -> Result<()> {
    for d in 3..=5u64 {
        let scan = mainthm_scan(d, 500);
        let confirmed_ok = scan.m0.is_some_and(|m0| {
            (m0..=500).all(|m| mainthm_witness(d, m).confirmed() && two_block_non_divisibility(d, m))
        });
        let within = scan.m0.is_some_and(|m0| m0 <= 50);
        c.add(
            format!("witness primes for d = {d}, m in [m0, 500] with m0 <= 50"),
            confirmed_ok && within,
            format!("observed m0 = {:?}, last gap {:?}", scan.m0, scan.missing.last()),
        );
    }
    Ok(())
}

fn search(c: &mut Checks, o: &SuiteOptions) -> Result<()> {
    let cfg = SearchConfig {
        max_n: o.search_max_n,
        jobs: o.jobs,
    };
    let catalog = run_search(&cfg, None, |_, _| Ok(()))?;
    let counts: Vec<usize> = catalog.levels.values().map(Vec::len).collect();
    let known = [1usize, 1, 2, 5, 15, 53, 222, 1078, 5994, 37622];
    c.add("class counts", counts == known[..counts.len()], format!("{counts:?}"));
    let ten = canonical_form(&load_fixture("ten_point")?).to_hex();
    for (&n, entries) in &catalog.levels {
        let wns: Vec<&str> = entries
            .iter()
            .filter(|e| e.weak_not_strong())
            .map(|e| e.canonical.as_str())
            .collect();
        let atomistic = entries.iter().filter(|e| e.atomistic && e.weak_not_strong()).count();
        let ok = match n {
            ..=9 => wns.is_empty(),
            10 => wns.contains(&ten.as_str()),
            _ => true,
        } && atomistic == 0;
        c.add(
            format!("weak-not-strong on {n} elements"),
            ok,
            format!("{} classes, {atomistic} atomistic", wns.len()),
        );
    }
    Ok(())
}

fn good_groups() -> Result<Vec<FiniteGroup>> {
    let mut out = Vec::new();
    for n in 2..=16 {
        out.push(cyclic(n)?);
    }
    for n in 3..=8 {
        out.push(dihedral(n)?);
    }
    let (z2, z3, z4) = (cyclic(2)?, cyclic(3)?, cyclic(4)?);
    let v4 = direct_product(&z2, &z2)?;
    let e8 = direct_product(&v4, &z2)?;
    out.push(v4.clone());
    out.push(direct_product(&z2, &z4)?);
    out.push(e8.clone());
    out.push(direct_product(&e8, &z2)?);
    out.push(direct_product(&z3, &z3)?);
    out.push(direct_product(&z2, &cyclic(6)?)?);
    out.push(direct_product(&z4, &z4)?);
    out.push(direct_product(&z2, &cyclic(8)?)?);
    out.push(direct_product(&v4, &z4)?);
    out.push(direct_product(&z2, &dihedral(4)?)?);
    Ok(out)
}

fn good_sublattices(c: &mut Checks, o: &SuiteOptions) -> Result<()> {
    let cl = coset_lattice(&cyclic(6)?, &o.lattice)?;
    let id = |m: u64| cl.id_of(m).ok_or_else(|| Error::InvalidArgument("missing coset".into()));
    let sub = sublattice_generated(&cl.lattice, &[id(0b1)?, id(0b1000)?, id(0b10010)?])?;
    let weak = zeta_series(&sub.lattice).is_ordinary;
    c.add("C(Z6) sublattice from {0},{3},{1,4} is not weakly coset-like", !weak, zeta_series(&sub.lattice).series.pretty());

    let cl = coset_lattice(&cyclic(8)?, &o.lattice)?;
    let gens: Vec<usize> = [0, 1, 2, 4, 5, 6].iter().map(|&g| cl.singleton(g)).collect();
    let sub = sublattice_generated(&cl.lattice, &gens)?;
    let strong = zeta_series(&sub.lattice).is_strongly_coset_like;
    let r = is_good_sublattice(&cl, &sub, 0b1_0001)?;
    c.add(
        "C(Z8) sublattice on {0},{1},{2},{4},{5},{6} is not strong and fails clause (iii)",
        !strong && !r.clause_iii,
        format!("meets {} cosets of {{0,4}}", r.coset_count),
    );

    let mut good = 0usize;
    let mut failures = Vec::new();
    for g in good_groups()? {
        let cl = coset_lattice(&g, &o.lattice)?;
        for cand in good_sublattice_candidates(&cl)? {
            if cand.report.good {
                good += 1;
                if !cand.strongly_coset_like {
                    failures.push(format!("{} {}", g.name(), cand.canonical));
                }
            }
        }
    }
    c.add(
        "good sublattices over groups of order <= 16 are strongly coset-like",
        failures.is_empty() && good > 0,
        if failures.is_empty() { format!("{good} good sublattices") } else { failures.join("; ") },
    );
    Ok(())
}

pub fn run_suite(name: &str, o: &SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut checks = Checks::default();
    let run: fn(&mut Checks, &SuiteOptions) -> Result<()> = match name {
        "partition5" => partition5,
        "fixtures" => fixtures,
        "oracle" => oracle,
        "stirling" => stirling,
        "closed-forms" => closed_forms,
        "q-limit" => q_limit,
        "brown" => brown,
        "products" => products,
        "partitions" => partitions,
        "ddiv" => ddiv,
        "mainthm" => mainthm,
        "search" => search,
        "good-sublattices" => good_sublattices,
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown suite `{other}`; known: {}",
                SUITE_NAMES.join(", ")
            )))
        }
    };
    run(&mut checks, o)?;
    let passed = checks.0.iter().all(|c| c.passed);
    Ok(SuiteReport {
        suite: name.to_string(),
        passed,
        checks: checks.0,
        elapsed_ms: Some(start.elapsed().as_millis()),
    })
}
