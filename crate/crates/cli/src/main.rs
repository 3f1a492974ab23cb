//! `cgx`: command-line front end for convex geometric hypergraph
//! experiments.
//!
//! Exit codes: 0 success or free, 1 violation or failed check, 2 malformed
//! input, 3 optimum not reached with `--require-optimal`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use cgx_core::acceptance::{Suite, DEFAULT_MAX_N, MIN_MAX_N};
use cgx_core::constructions::{Design, Family, FamilySpec};
use cgx_core::formula::Formula;
use cgx_core::geometry::{oracle_classify, ConvexRealization, DEFAULT_RADIUS};
use cgx_core::search::{enumerate_extremal, ex_number, SearchOptions, DEFAULT_BUDGET};
use cgx_core::tournament::{
    count_directed_triangles, max_triangle_tournament, orient_shadow, triangles_by_formula,
    verify_d1_bound, Tournament,
};
use cgx_core::{classify_pair, count_copies, first_violation, Cgh, ConfigSet, Error, Triple};
use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "cgx",
    version,
    about = "Extremal problems for triangles in convex position"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Configuration type realized by two triples.
    Classify {
        #[arg(long)]
        n: usize,
        /// First triple, e.g. 0,1,3.
        #[arg(long)]
        a: String,
        /// Second triple.
        #[arg(long)]
        b: String,
        /// Also classify on an integer convex polygon and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Generate a named construction.
    Construct(ConstructArgs),
    /// Check a family for forbidden configurations.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        forbid: String,
    },
    /// Count the copies of every configuration in a family.
    Count {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Compute ex(n, F) exactly.
    Solve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        forbid: String,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        budget: Option<f64>,
        /// Write the witness family here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit with code 3 when the budget runs out before optimality.
        #[arg(long)]
        require_optimal: bool,
    },
    /// List maximum F-free families.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        forbid: String,
        #[arg(long, default_value_t = 100)]
        cap: usize,
        /// One representative per dihedral orbit.
        #[arg(long)]
        canonical: bool,
    },
    /// CSV of solver values against a closed form.
    Table {
        #[arg(long)]
        forbid: String,
        #[arg(long)]
        n_from: usize,
        #[arg(long)]
        n_to: usize,
        /// Closed form to compare with: delta, m1, m1s1, m3, m2, s3, s2.
        /// Defaults to the one matching the forbidden set.
        #[arg(long)]
        formula: Option<String>,
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Build, count, or derive tournaments.
    Tournament(TournamentArgs),
    /// Run the acceptance suite.
    VerifyAll {
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    family: String,
    /// Required unless --design is given.
    #[arg(long)]
    n: Option<usize>,
    /// Side bits for even-n HSTAR, e.g. 0110. Defaults to all zero.
    #[arg(long)]
    bits: Option<String>,
    /// Start vertex for odd-n HPLUS.
    #[arg(long)]
    start: Option<usize>,
    /// Swap indices for M3X, e.g. 1,2.
    #[arg(long)]
    swaps: Option<String>,
    /// Triangulation diagonals for D2TRI, e.g. 0-2,0-3.
    #[arg(long)]
    diagonals: Option<String>,
    /// S(n,7,2) design JSON for D2DESIGN.
    #[arg(long)]
    design: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(skip)]
#[command(group = ArgGroup::new("mode").required(true).args(["build", "count", "orient"]))]
struct TournamentArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Print a tournament on n vertices with the most directed triangles.
    #[arg(long)]
    build: bool,
    /// Count directed triangles of a tournament file.
    #[arg(long)]
    count: Option<PathBuf>,
    /// Orient the shadow of a D1-free family and report the triangle bound.
    #[arg(long)]
    orient: Option<PathBuf>,
}

/// Outcome of a command that ran to completion.
enum Done {
    Ok,
    Violation,
    NotOptimal,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Done::Ok) => ExitCode::SUCCESS,
        Ok(Done::Violation) => ExitCode::from(1),
        Ok(Done::NotOptimal) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<Done> {
    match cmd {
        Command::Classify { n, a, b, oracle } => classify(n, &a, &b, oracle),
        Command::Construct(args) => construct(args),
        Command::Check { input, forbid } => check(&input, &forbid),
        Command::Count { input } => {
            let h = read_cgh(&input)?;
            print_json(&count_copies(&h).to_json_value());
            Ok(Done::Ok)
        }
        Command::Solve {
            n,
            forbid,
            budget,
            out,
            require_optimal,
        } => solve(n, &forbid, budget, out.as_deref(), require_optimal),
        Command::Enumerate {
            n,
            forbid,
            cap,
            canonical,
        } => enumerate(n, &forbid, cap, canonical),
        Command::Table {
            forbid,
            n_from,
            n_to,
            formula,
            budget,
        } => table(&forbid, n_from, n_to, formula.as_deref(), budget),
        Command::Tournament(args) => tournament(args),
        Command::VerifyAll { max_n } => verify_all(max_n),
    }
}

fn print_json(v: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string(v).expect("json value serializes")
    );
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<T>().map_err(|e| anyhow!("bad {what} '{p}': {e}")))
        .collect()
}

fn parse_triple(n: usize, s: &str) -> Result<Triple> {
    let v: Vec<usize> = parse_list(s, "vertex")?;
    if v.len() != 3 {
        bail!("a triple needs three vertices, got '{s}'");
    }
    Ok(Triple::checked(n, v[0], v[1], v[2])?)
}

fn parse_forbid(s: &str) -> Result<ConfigSet> {
    Ok(s.parse::<ConfigSet>()?)
}

fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .filter(|c| *c != ',' && !c.is_whitespace())
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(anyhow!("side bits must be 0 or 1, got '{c}'")),
        })
        .collect()
}

fn parse_diagonals(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (u, v) = p
                .split_once('-')
                .ok_or_else(|| anyhow!("diagonal '{p}' is not of the form u-v"))?;
            Ok((u.trim().parse()?, v.trim().parse()?))
        })
        .collect()
}

fn read_cgh(path: &Path) -> Result<Cgh> {
    Cgh::read(path).with_context(|| format!("reading {}", path.display()))
}

fn budget_opts(budget: Option<f64>) -> Result<SearchOptions> {
    let budget = match budget {
        None => DEFAULT_BUDGET,
        Some(s) if s.is_finite() && s >= 0.0 => Duration::from_secs_f64(s),
        Some(s) => bail!("budget must be a non-negative number of seconds, got {s}"),
    };
    Ok(SearchOptions::from_env().with_budget(Some(budget)))
}

fn classify(n: usize, a: &str, b: &str, oracle: bool) -> Result<Done> {
    let (s, t) = (parse_triple(n, a)?, parse_triple(n, b)?);
    let c = classify_pair(n, &s, &t)?;
    println!("{c}");
    if oracle {
        let rz = ConvexRealization::realize(n, DEFAULT_RADIUS)?;
        let g = oracle_classify(&rz, &s, &t)?;
        println!("oracle: {g}");
        println!("agree: {}", g == c);
        if g != c {
            return Ok(Done::Violation);
        }
    }
    Ok(Done::Ok)
}

fn construct(args: ConstructArgs) -> Result<Done> {
    let family: Family = args.family.parse()?;
    let mut spec = match (&args.design, args.n) {
        (Some(path), n) => {
            let design =
                Design::read(path).with_context(|| format!("reading {}", path.display()))?;
            if let Some(n) = n.filter(|&n| n != design.n) {
                bail!("--n {n} disagrees with the design's n = {}", design.n);
            }
            FamilySpec::new(family, design.n).with_design(design)
        }
        (None, Some(n)) => FamilySpec::new(family, n),
        (None, None) => bail!("--n is required"),
    };
    let n = spec.n;
    if let Some(bits) = &args.bits {
        spec = spec.with_side_bits(parse_bits(bits)?);
    } else if family == Family::HStar && n % 2 == 0 {
        spec = spec.with_side_bits(vec![false; n / 2]);
    }
    if let Some(start) = args.start {
        spec = spec.with_start(start);
    }
    if let Some(swaps) = &args.swaps {
        spec = spec.with_swaps(parse_list(swaps, "swap")?);
    }
    if let Some(d) = &args.diagonals {
        spec = spec.with_diagonals(parse_diagonals(d)?);
    } else if family == Family::D2Tri {
        spec = spec.with_diagonals((2..n.saturating_sub(1)).map(|i| (0, i)).collect());
    }
    let h = spec.generate()?;
    let expected = spec.expected_size();
    let summary = format!(
        "{family} n={n} size={} expected={expected} match={}",
        h.len(),
        h.len() == expected
    );
    match &args.out {
        Some(path) => {
            h.write(path)
                .with_context(|| format!("writing {}", path.display()))?;
            println!("{summary}");
        }
        None => {
            println!("{}", h.to_json());
            eprintln!("{summary}");
        }
    }
    Ok(Done::Ok)
}

fn check(input: &Path, forbid: &str) -> Result<Done> {
    let h = read_cgh(input)?;
    let f = parse_forbid(forbid)?;
    match first_violation(&h, f) {
        None => {
            println!("free: {} triples on n = {} avoid {f}", h.len(), h.n());
            Ok(Done::Ok)
        }
        Some(v) => {
            print_json(&json!({
                "first": v.first.vertices(),
                "second": v.second.vertices(),
                "kind": v.kind.name(),
            }));
            Ok(Done::Violation)
        }
    }
}

fn solve(
    n: usize,
    forbid: &str,
    budget: Option<f64>,
    out: Option<&Path>,
    require_optimal: bool,
) -> Result<Done> {
    let f = parse_forbid(forbid)?;
    let r = ex_number(n, f, &budget_opts(budget)?)?;
    if let Some(path) = out {
        r.witness
            .write(path)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    print_json(&r.to_json_value());
    if require_optimal && !r.is_optimal() {
        eprintln!("budget exhausted: {} is only a lower bound", r.best_size);
        return Ok(Done::NotOptimal);
    }
    Ok(Done::Ok)
}

fn enumerate(n: usize, forbid: &str, cap: usize, canonical: bool) -> Result<Done> {
    let f = parse_forbid(forbid)?;
    let e = enumerate_extremal(
        n,
        f,
        cap,
        canonical,
        &SearchOptions::from_env().with_budget(None),
    )?;
    let families: Vec<_> = e.families.iter().map(Cgh::to_json_value).collect();
    print_json(&serde_json::Value::Array(families));
    eprintln!(
        "size={} families={} truncated={} {}",
        e.size,
        e.families.len(),
        e.truncated,
        if canonical {
            "up to symmetry"
        } else {
            "labelled"
        }
    );
    Ok(Done::Ok)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn table(
    forbid: &str,
    n_from: usize,
    n_to: usize,
    formula: Option<&str>,
    budget: Option<f64>,
) -> Result<Done> {
    let f = parse_forbid(forbid)?;
    if n_from > n_to {
        bail!("--n-from {n_from} exceeds --n-to {n_to}");
    }
    let formula = match formula {
        Some(id) => Some(id.parse::<Formula>()?),
        None => Formula::for_forbidden(f),
    };
    let opts = budget_opts(budget)?;
    println!("n,forbidden,ex_computed,formula,match,status,ms");
    let mut all_match = true;
    for n in n_from..=n_to {
        let start = Instant::now();
        let r = ex_number(n, f, &opts)?;
        let ms = start.elapsed().as_millis();
        let (value, matched) = match formula {
            Some(fm) => {
                let v = fm.eval(n);
                let m = r.is_optimal() && v == r.best_size;
                all_match &= m;
                (v.to_string(), m.to_string())
            }
            None => (String::new(), String::new()),
        };
        println!(
            "{n},{},{},{value},{matched},{:?},{ms}",
            csv_field(&f.to_string()),
            r.best_size,
            r.status
        );
    }
    Ok(if all_match { Done::Ok } else { Done::Violation })
}

fn tournament(args: TournamentArgs) -> Result<Done> {
    if args.build {
        let n = args.n.ok_or_else(|| anyhow!("--build needs --n"))?;
        let t = max_triangle_tournament(n)?;
        println!("{}", t.to_json());
        eprintln!("n={n} triangles={}", count_directed_triangles(&t)?);
        return Ok(Done::Ok);
    }
    if let Some(path) = &args.count {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let t = Tournament::from_json(&text)?;
        check_n(args.n, t.n())?;
        let brute = count_directed_triangles(&t)?;
        let formula = triangles_by_formula(&t.out_degrees())?;
        print_json(&json!({ "n": t.n(), "triangles": brute, "formula": formula }));
        return Ok(if brute == formula {
            Done::Ok
        } else {
            Done::Violation
        });
    }
    let path = args.orient.as_ref().expect("clap enforces one mode");
    let h = read_cgh(path)?;
    check_n(args.n, h.n())?;
    match verify_d1_bound(&h) {
        Ok(report) => {
            let oriented = orient_shadow(&h, true)?.completed();
            print_json(&json!({
                "report": report,
                "tournament": serde_json::from_str::<serde_json::Value>(&oriented.to_json())?,
            }));
            Ok(if report.bound_holds {
                Done::Ok
            } else {
                Done::Violation
            })
        }
        Err(Error::D1Violation(s, t)) => {
            print_json(&json!({ "first": s.vertices(), "second": t.vertices(), "kind": "D1" }));
            Ok(Done::Violation)
        }
        Err(e) => Err(e.into()),
    }
}

fn check_n(given: Option<usize>, actual: usize) -> Result<()> {
    match given {
        Some(n) if n != actual => bail!("--n {n} disagrees with the file's n = {actual}"),
        _ => Ok(()),
    }
}

fn verify_all(max_n: usize) -> Result<Done> {
    if max_n < MIN_MAX_N {
        bail!("--max-n must be at least {MIN_MAX_N}");
    }
    let suite = Suite::new(max_n, SearchOptions::from_env().with_budget(None));
    let outcomes = suite.run(|o| println!("{o}"));
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} passed, {failed} failed", outcomes.len() - failed);
    Ok(if failed == 0 {
        Done::Ok
    } else {
        Done::Violation
    })
}
