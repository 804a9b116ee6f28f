use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pzeta_core::cosetlike::{classify_report, load_fixture};
use pzeta_core::dirichlet::rational_to_string;
use pzeta_core::error::Error;
use pzeta_core::groups::{
    group_zeta, subgroup_lattice, verify_brown_identity, verify_coprime_product, GroupSpec,
};
use pzeta_core::lattice::{render_lat, LatticeOptions};
use pzeta_core::search::{read_checkpoint, run_search, write_checkpoint, SearchConfig};
use pzeta_core::suites::{run_suite, SuiteOptions, SUITE_NAMES};
use pzeta_core::target::Target;
use pzeta_core::zeta::{verify_series_against_oracle, zeta_series, DEFAULT_TUPLE_BUDGET};
use pzeta_core::families::FamilySpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

/// Exact probabilistic zeta functions of finite lattices.
#[derive(Parser, Debug)]
#[command(name = "pzeta", version)]
struct Cli {
    /// Largest argument s used for pointwise checks.
    #[arg(long, global = true, default_value_t = 4)]
    smax: u32,
    /// Tuple budget for brute-force oracles.
    #[arg(long = "budget-tuples", global = true, default_value_t = DEFAULT_TUPLE_BUDGET)]
    budget_tuples: u128,
    /// Refuse to build lattices with more elements than this.
    #[arg(long = "max-elements", global = true, default_value_t = 10_000)]
    max_elements: usize,
    /// Worker threads for parallel work.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Include wall-clock timings in JSON reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Series and report for a lattice target.
    Zeta {
        target: String,
        /// Also compare against brute-force tuple counts for s = 1..smax.
        #[arg(long)]
        verify: bool,
    },
    /// Strong and weak coset-like classification.
    Classify { target: String },
    /// μ(x, 1̂) for every element.
    Mobius { target: String },
    /// Subgroup-lattice series of a group, with optional identity checks.
    Group {
        spec: String,
        #[arg(long)]
        brown: bool,
        #[arg(long)]
        coprime: Option<String>,
    },
    /// A lattice family, optionally checked against its closed form.
    Family {
        spec: String,
        #[arg(long = "closed-form-check")]
        closed_form_check: bool,
    },
    /// Enumerate and classify all lattices up to a size.
    Search {
        /// Largest element count to enumerate (2..=11).
        #[arg(long = "max-n")]
        max_n: usize,
        /// List only atomistic classes.
        #[arg(long = "atomistic-only")]
        atomistic_only: bool,
        /// Checkpoint file; an existing one is resumed.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// List every class, not just the weak-but-not-strong ones.
        #[arg(long = "full-catalog")]
        full_catalog: bool,
    },
    /// Run a named verification suite, or `all`.
    Verify {
        #[arg(long)]
        suite: String,
        /// Run the search suite up to 10 elements.
        #[arg(long)]
        long: bool,
    },
    /// Print a built-in fixture.
    Fixture { name: String },
}

struct Ctx {
    opts: LatticeOptions,
    format: Format,
    smax: u32,
    budget: u128,
    jobs: Option<usize>,
    timing: bool,
}

enum Failure {
    Verification(String),
    Usage(String),
    Module(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Module(e)
    }
}

struct Report {
    human: String,
    json: Value,
    ok: bool,
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::InvalidArgument(_) => "invalid_argument",
        Error::UnknownFixture(_) => "unknown_fixture",
        Error::SizeLimitExceeded { .. } => "size_limit_exceeded",
        Error::BudgetExceeded(_) => "budget_exceeded",
        Error::MismatchDetected { .. } => "mismatch",
        Error::VerificationFailed(_) => "verification_failed",
        Error::Io(_) => "io",
        _ => "lattice",
    }
}

fn target(text: &str) -> Result<Target, Failure> {
    text.parse().map_err(|e: Error| Failure::Usage(e.to_string()))
}

fn cmd_zeta(ctx: &Ctx, text: &str, verify: bool) -> Result<Report, Failure> {
    let t = target(text)?;
    let l = t.build(&ctx.opts)?;
    let report = zeta_series(&l.lattice);
    let mut json = serde_json::to_value(report.to_doc(&l.lattice)).expect("report serialises");
    let mut human = format!(
        "P({t}, s) = {}\nelements: {}  join-irreducibles: {}\nordinary: {}  strongly coset-like: {}\n",
        report.series.pretty(),
        l.lattice.len(),
        report.j_count,
        report.is_ordinary,
        report.is_strongly_coset_like
    );
    if verify {
        let rows = verify_series_against_oracle(&l.lattice, ctx.smax, ctx.budget)?;
        for r in &rows {
            human.push_str(&format!("s = {}: {} (oracle {:?})\n", r.s, r.series, r.path));
        }
        json["oracle"] = json!(rows
            .iter()
            .map(|r| json!({"s": r.s, "value": r.series, "path": format!("{:?}", r.path)}))
            .collect::<Vec<_>>());
    }
    json["target"] = json!(t.to_string());
    Ok(Report { human, json, ok: true })
}

fn cmd_classify(ctx: &Ctx, text: &str) -> Result<Report, Failure> {
    let t = target(text)?;
    let l = t.build(&ctx.opts)?;
    let start = std::time::Instant::now();
    let report = zeta_series(&l.lattice);
    let c = classify_report(&l.lattice, &report);
    let elapsed = start.elapsed().as_millis();
    let crit = pzeta_core::cosetlike::coatom_criterion(&l.lattice);
    let mut human = format!("{t}: weak={} strong={}\n", c.weak, c.strong);
    for f in &c.strong_failures {
        human.push_str(&format!(
            "  |J_x| = {} does not divide |J| = {} at {}\n",
            f.j_below, f.j_count, l.labels[f.element]
        ));
    }
    if !c.non_integer_bases.is_empty() {
        let bases: Vec<String> = c.non_integer_bases.iter().map(rational_to_string).collect();
        human.push_str(&format!("  non-integer bases with nonzero sum: {}\n", bases.join(", ")));
    }
    if let Some(x) = crit {
        human.push_str(&format!("  coatom criterion witness: {}\n", l.labels[x]));
    }
    human.push_str(&format!("  time: {elapsed} ms\n"));
    let mut json = serde_json::to_value(c.to_doc(ctx.timing.then_some(elapsed))).expect("serialises");
    json["target"] = json!(t.to_string());
    json["coatom_witness"] = json!(crit);
    Ok(Report { human, json, ok: true })
}

fn cmd_mobius(ctx: &Ctx, text: &str) -> Result<Report, Failure> {
    let t = target(text)?;
    let l = t.build(&ctx.opts)?;
    let mu = l.lattice.mobius_top();
    let mut human = String::new();
    let mut rows = Vec::new();
    for x in 0..l.lattice.len() {
        let m = mu.get(x).map_or("0".to_string(), |v| v.to_string());
        human.push_str(&format!("{x}\t{}\t{m}\n", l.labels[x]));
        rows.push(json!({"element": x, "label": l.labels[x], "mu": m}));
    }
    Ok(Report {
        human,
        json: json!({"target": t.to_string(), "mobius_top": rows}),
        ok: true,
    })
}

fn group_spec(text: &str) -> Result<GroupSpec, Failure> {
    text.parse().map_err(|e: Error| Failure::Usage(e.to_string()))
}

fn cmd_group(ctx: &Ctx, spec: &str, brown: bool, coprime: Option<&str>) -> Result<Report, Failure> {
    let g = group_spec(spec)?.build()?;
    let series = group_zeta(&g)?;
    let subgroups = subgroup_lattice(&g)?.lattice.len();
    let mut human = format!(
        "P({}, s) = {}\norder: {}  subgroups: {subgroups}\n",
        g.name(),
        series.pretty(),
        g.order()
    );
    let mut json = json!({
        "group": g.name(),
        "order": g.order(),
        "subgroups": subgroups,
        "series": series.to_doc(),
    });
    if brown {
        match verify_brown_identity(&g, ctx.smax, &ctx.opts) {
            Ok(rec) => {
                human.push_str(&format!("brown identity: OK (s=0..{})\n", ctx.smax));
                json["brown"] = serde_json::to_value(rec).expect("serialises");
            }
            Err(e @ (Error::MismatchDetected { .. } | Error::VerificationFailed(_))) => {
                return Err(Failure::Verification(format!("brown identity: FAILED: {e}")))
            }
            Err(e) => return Err(e.into()),
        }
    }
    if let Some(other) = coprime {
        let h = group_spec(other)?.build()?;
        match verify_coprime_product(&g, &h, ctx.smax, &ctx.opts) {
            Ok(rec) => {
                human.push_str(&format!(
                    "coprime product with {}: OK, P = {}\n",
                    h.name(),
                    rec.product_series
                ));
                json["coprime"] = serde_json::to_value(rec).expect("serialises");
            }
            Err(e @ Error::NotCoprimeOrders(..)) => return Err(Failure::Usage(e.to_string())),
            Err(e @ Error::VerificationFailed(_)) => return Err(Failure::Verification(e.to_string())),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Report { human, json, ok: true })
}

fn cmd_family(ctx: &Ctx, spec: &str, check: bool) -> Result<Report, Failure> {
    let fam: FamilySpec = spec.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let l = fam.build(&ctx.opts)?;
    let report = zeta_series(&l.lattice);
    let mut human = format!(
        "P({fam}, s) = {}\nelements: {}  join-irreducibles: {}\n",
        report.series.pretty(),
        l.lattice.len(),
        report.j_count
    );
    let mut json = json!({
        "family": fam.to_string(),
        "elements": l.lattice.len(),
        "j_count": report.j_count,
        "series": report.series.to_doc(),
    });
    let mut ok = true;
    if check {
        match fam.closed_form()? {
            Some(closed) => {
                ok = closed == report.series;
                human.push_str(&format!(
                    "closed form: {} ({})\n",
                    closed.pretty(),
                    if ok { "OK" } else { "MISMATCH" }
                ));
                json["closed_form"] = json!({"series": closed.to_doc(), "equal": ok});
            }
            None => {
                human.push_str("closed form: none known for this family\n");
                json["closed_form"] = Value::Null;
            }
        }
    }
    Ok(Report { human, json, ok })
}

fn cmd_search(
    ctx: &Ctx,
    max_n: usize,
    atomistic_only: bool,
    checkpoint: Option<&PathBuf>,
    full: bool,
) -> Result<Report, Failure> {
    let resume = match checkpoint {
        Some(p) => read_checkpoint(p)?,
        None => None,
    };
    let cfg = SearchConfig { max_n, jobs: ctx.jobs };
    let catalog = run_search(&cfg, resume, |catalog, s| {
        eprintln!(
            "n = {}: {} classes, {} strong, {} weak, {} weak-not-strong",
            s.n, s.total, s.strong, s.weak, s.weak_not_strong
        );
        match checkpoint {
            Some(p) => write_checkpoint(p, catalog),
            None => Ok(()),
        }
    })?;
    let summaries = catalog.summaries();
    let listed: Vec<_> = catalog
        .levels
        .values()
        .flatten()
        .filter(|e| full || e.weak_not_strong())
        .filter(|e| !atomistic_only || e.atomistic)
        .collect();
    let mut human = String::from("n\ttotal\tstrong\tweak\tatomistic\tweak-not-strong\n");
    for s in &summaries {
        human.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            s.n, s.total, s.strong, s.weak, s.atomistic, s.weak_not_strong
        ));
    }
    for e in &listed {
        human.push_str(&format!("{} {}\n", e.to_line(), e.series_digest));
    }
    Ok(Report {
        human,
        json: json!({"summaries": summaries, "entries": listed}),
        ok: true,
    })
}

fn cmd_verify(ctx: &Ctx, suite: &str, long: bool) -> Result<Report, Failure> {
    let names: Vec<&str> = match suite {
        "all" => SUITE_NAMES.to_vec(),
        s if SUITE_NAMES.contains(&s) => vec![s],
        other => {
            return Err(Failure::Usage(format!(
                "unknown suite `{other}`; known: all, {}",
                SUITE_NAMES.join(", ")
            )))
        }
    };
    let o = SuiteOptions {
        s_max: ctx.smax,
        budget: ctx.budget,
        lattice: ctx.opts,
        search_max_n: if long { 10 } else { 9 },
        jobs: ctx.jobs,
    };
    let mut human = String::new();
    let mut reports = Vec::new();
    let mut ok = true;
    for name in names {
        let mut r = run_suite(name, &o)?;
        ok &= r.passed;
        for c in &r.checks {
            human.push_str(&format!(
                "[{}] {name}: {} ({})\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        if !ctx.timing {
            r.elapsed_ms = None;
        }
        reports.push(r);
    }
    Ok(Report {
        human,
        json: json!({"passed": ok, "suites": reports}),
        ok,
    })
}

fn cmd_fixture(name: &str) -> Result<Report, Failure> {
    let l = match load_fixture(name) {
        Err(e @ Error::UnknownFixture(_)) => return Err(Failure::Usage(e.to_string())),
        other => other?,
    };
    let report = zeta_series(&l);
    let human = format!("# {name}: P(L, s) = {}\n{}", report.series.pretty(), render_lat(&l));
    let json = json!({
        "name": name,
        "elements": l.len(),
        "covers": l.covers(),
        "series": report.series.to_doc(),
    });
    Ok(Report { human, json, ok: true })
}

fn emit(output: Option<&PathBuf>, text: &str) -> std::io::Result<()> {
    match output {
        Some(p) => fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    if cli.budget_tuples == 0 || cli.max_elements == 0 {
        eprintln!("error: budgets must be positive");
        return ExitCode::from(2);
    }
    let ctx = Ctx {
        opts: LatticeOptions {
            max_elements: cli.max_elements,
            ..LatticeOptions::default()
        },
        format: cli.format,
        smax: cli.smax,
        budget: cli.budget_tuples,
        jobs: cli.jobs,
        timing: cli.timing,
    };
    let result = match &cli.command {
        Command::Zeta { target, verify } => cmd_zeta(&ctx, target, *verify),
        Command::Classify { target } => cmd_classify(&ctx, target),
        Command::Mobius { target } => cmd_mobius(&ctx, target),
        Command::Group { spec, brown, coprime } => cmd_group(&ctx, spec, *brown, coprime.as_deref()),
        Command::Family { spec, closed_form_check } => cmd_family(&ctx, spec, *closed_form_check),
        Command::Search {
            max_n,
            atomistic_only,
            checkpoint,
            full_catalog,
        } => cmd_search(&ctx, *max_n, *atomistic_only, checkpoint.as_ref(), *full_catalog),
        Command::Verify { suite, long } => cmd_verify(&ctx, suite, *long),
        Command::Fixture { name } => cmd_fixture(name),
    };
    let (text, code) = match result {
        Ok(r) => {
            let text = match ctx.format {
                Format::Human => r.human,
                Format::Json => serde_json::to_string_pretty(&r.json).expect("serialises") + "\n",
            };
            (text, if r.ok { 0 } else { 1 })
        }
        Err(f) => {
            let (kind, message, code) = match f {
                Failure::Verification(m) => ("verification_failed", m, 1),
                Failure::Usage(m) => ("usage", m, 2),
                Failure::Module(e) => {
                    let code = match e {
                        Error::MismatchDetected { .. } | Error::VerificationFailed(_) => 1,
                        _ => 2,
                    };
                    (error_kind(&e), e.to_string(), code)
                }
            };
            match ctx.format {
                Format::Human => {
                    eprintln!("error: {message}");
                    (String::new(), code)
                }
                Format::Json => {
                    let doc = json!({"error": {"kind": kind, "message": message}});
                    (serde_json::to_string_pretty(&doc).expect("serialises") + "\n", code)
                }
            }
        }
    };
    if !text.is_empty() {
        if let Err(e) = emit(cli.output.as_ref(), &text) {
            eprintln!("error: cannot write output: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
