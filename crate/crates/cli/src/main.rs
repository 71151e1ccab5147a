use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use lattice_forge::catalog;
use lattice_forge::classify::classify;
use lattice_forge::deduction::{search, Bounds, RewriteSystem, Term, Verdict};
use lattice_forge::deduction::{replay_case1, replay_case2, ReplayReport};
use lattice_forge::lattice::{enumerate_small, random_lattice, FiniteLattice};
use lattice_forge::lemmas::{check_all, CheckReport};
use lattice_forge::semigroup::{self, FiniteSemigroup};
use lattice_forge::variety::{
    build_variety_lattice, in_variety, probe_special_elements, Membership, DEFAULT_CAP,
};
use lattice_forge::word::{normal_form_w, parse_identities, parse_identity, parse_word};

const CAP_VAR: &str = "LATTICE_FORGE_CAP";

#[derive(Parser)]
#[command(name = "lattice-forge", version, about = "Finite lattices, special elements and semigroup identities")]
struct Cli {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice files and the lemma harness.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Semigroup multiplication tables.
    #[command(subcommand)]
    Sgp(SgpCmd),
    /// Words in the variety [x^2 y = 0, xy = yx].
    #[command(subcommand)]
    Word(WordCmd),
    /// Bounded search for a derivation between two words.
    Deduce(DeduceArgs),
    /// Replays of the identity derivations.
    #[command(subcommand)]
    Replay(ReplayCmd),
    /// Variety membership and generated-variety lattices.
    #[command(subcommand)]
    Variety(VarietyCmd),
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Classify elements of a lattice file (or a bundled lattice name).
    Check {
        file: String,
        /// Restrict the report to these elements.
        #[arg(long = "element")]
        elements: Vec<String>,
    },
    /// Run the lemma checks; exits 1 on any violation.
    Lemmas(LemmaArgs),
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["file", "enumerate", "random"]))]
struct LemmaArgs {
    #[arg(long)]
    file: Option<String>,
    /// Every lattice up to this many elements, one per isomorphism class.
    #[arg(long)]
    enumerate: Option<usize>,
    /// Number of random lattices, with seeds K, K+1, ...
    #[arg(long, requires_all = ["size", "seed"])]
    random: Option<u64>,
    /// A size, or a range `MIN..MAX` cycled through by seed.
    #[arg(long)]
    size: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum SgpCmd {
    /// Check an identity; exits 1 when it fails.
    Check {
        table: String,
        #[arg(long)]
        identity: String,
    },
    /// Structural predicates.
    Info { table: String },
}

#[derive(Subcommand)]
enum WordCmd {
    /// Normal form in W.
    Nf { word: String },
}

#[derive(Args)]
struct DeduceArgs {
    /// Identity file, or a bundled identity file name such as `W`.
    #[arg(long)]
    axioms: String,
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long)]
    max_steps: Option<usize>,
}

#[derive(Subcommand)]
enum ReplayCmd {
    Case2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        ip: usize,
        #[arg(long)]
        jp: usize,
        #[arg(long)]
        r: usize,
    },
    Case1 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum VarietyCmd {
    /// Is A in the variety generated by the given semigroups? Exits 1 unless yes.
    Member {
        a: String,
        #[arg(long = "in", num_args = 1.., required = true)]
        bs: Vec<String>,
        /// Closure cap; defaults to $LATTICE_FORGE_CAP, then 1000000.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Lattice of varieties generated by subsets of a catalog directory.
    Lattice {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
        /// Also print the special-element probe.
        #[arg(long)]
        probe: bool,
    },
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    Negative,
}

fn print_line(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    print_line(&serde_json::to_string_pretty(value)?)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Paths win over bundled names.
fn load_lattice(arg: &str) -> Result<FiniteLattice> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some(l) = catalog::lattice(arg) {
            return Ok(l);
        }
    }
    FiniteLattice::from_json_str(&read(path)?).with_context(|| format!("loading {arg}"))
}

fn load_semigroup(arg: &str) -> Result<FiniteSemigroup> {
    let path = Path::new(arg);
    if !path.exists() {
        let stem = arg.strip_suffix(".json").unwrap_or(arg);
        if let Some(s) = semigroup::catalog::get(stem) {
            return Ok(s);
        }
    }
    let s = FiniteSemigroup::from_json_str(&read(path)?).with_context(|| format!("loading {arg}"))?;
    Ok(match (s.name(), path.file_stem().and_then(|s| s.to_str())) {
        (None, Some(stem)) => s.named(stem),
        _ => s,
    })
}

fn cap(flag: Option<usize>) -> Result<usize> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(CAP_VAR) {
        Ok(v) => v.trim().parse().with_context(|| format!("{CAP_VAR}={v} is not a number")),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn parse_sizes(text: &str) -> Result<(usize, usize)> {
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo.trim().parse()?, hi.trim().parse()?),
        None => {
            let s = text.trim().parse()?;
            (s, s)
        }
    };
    if lo > hi {
        bail!("empty size range {text}");
    }
    Ok((lo, hi))
}

fn lattice_check(file: &str, elements: &[String]) -> Result<Status> {
    let l = load_lattice(file)?;
    let picked: Vec<usize> = if elements.is_empty() {
        (0..l.len()).collect()
    } else {
        elements
            .iter()
            .map(|name| l.index_of(name).with_context(|| format!("no element named {name}")))
            .collect::<Result<_>>()?
    };
    let reports: Vec<_> = picked.into_iter().map(|x| classify(&l, x).named(&l)).collect();
    print_json(&reports)?;
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct LemmaOutput {
    lattices: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    class_counts: Option<BTreeMap<usize, usize>>,
    violations: usize,
    reports: Vec<CheckReport>,
}

fn lattice_lemmas(args: &LemmaArgs) -> Result<Status> {
    let mut class_counts = None;
    let corpus: Vec<(String, FiniteLattice)> = if let Some(file) = &args.file {
        vec![(file.clone(), load_lattice(file)?)]
    } else if let Some(n) = args.enumerate {
        let e = enumerate_small(n)?;
        class_counts = e.class_counts;
        e.lattices.into_iter().enumerate().map(|(k, l)| (format!("small#{k}"), l)).collect()
    } else {
        let count = args.random.expect("clap enforces one source");
        let (lo, hi) = parse_sizes(args.size.as_deref().expect("clap requires --size"))?;
        let first = args.seed.expect("clap requires --seed");
        (0..count)
            .into_par_iter()
            .map(|k| {
                let seed = first + k;
                let size = lo + (k as usize) % (hi - lo + 1);
                random_lattice(size, seed).map(|l| (format!("random(size={size},seed={seed})"), l))
            })
            .collect::<std::result::Result<_, _>>()?
    };
    let reports: Vec<CheckReport> = corpus
        .par_iter()
        .flat_map_iter(|(id, l)| check_all(l, id))
        .collect();
    let violations = reports.iter().map(|r| r.violations.len()).sum();
    print_json(&LemmaOutput {
        lattices: corpus.len(),
        class_counts,
        violations,
        reports,
    })?;
    Ok(if violations == 0 { Status::Ok } else { Status::Negative })
}

fn sgp_check(table: &str, identity: &str) -> Result<Status> {
    let s = load_semigroup(table)?;
    let id = parse_identity(identity)?;
    let sat = s.satisfies(&id);
    print_json(&json!({
        "semigroup": s.label(),
        "identity": id,
        "holds": sat.holds,
        "witness": sat.witness,
    }))?;
    Ok(if sat.holds { Status::Ok } else { Status::Negative })
}

fn sgp_info(table: &str) -> Result<Status> {
    let s = load_semigroup(table)?;
    print_json(&json!({
        "semigroup": s.label(),
        "order": s.order(),
        "zero": s.zero(),
        "predicates": s.predicates(),
    }))?;
    Ok(Status::Ok)
}

fn load_axioms(arg: &str) -> Result<RewriteSystem> {
    let path = Path::new(arg);
    let ids = if !path.exists() && catalog::identities(arg).is_some() {
        catalog::identities(arg).unwrap()
    } else {
        parse_identities(&read(path)?)?
    };
    Ok(RewriteSystem::new(ids))
}

fn deduce(args: &DeduceArgs) -> Result<Status> {
    let sys = load_axioms(&args.axioms)?;
    let u = Term::parse(&args.from)?;
    let v = Term::parse(&args.to)?;
    let defaults = Bounds::for_pair(&u, &v);
    let bounds = Bounds {
        max_len: args.max_len.unwrap_or(defaults.max_len),
        max_steps: args.max_steps.unwrap_or(defaults.max_steps),
    };
    let s = search(&u, &v, &sys, bounds);
    let proof = match &s.verdict {
        Verdict::Yes(p) => Some(&p.steps),
        _ => None,
    };
    print_json(&json!({
        "from": u,
        "to": v,
        "verdict": s.verdict.label(),
        "bounds": bounds,
        "expanded": s.expanded,
        "visited": s.visited,
        "proof": proof,
    }))?;
    Ok(if s.verdict.is_yes() { Status::Ok } else { Status::Negative })
}

fn replay(report: ReplayReport) -> Result<Status> {
    print_json(&report)?;
    Ok(if report.passed() { Status::Ok } else { Status::Negative })
}

fn variety_member(a: &str, bs: &[String], cap_flag: Option<usize>) -> Result<Status> {
    let a = load_semigroup(a)?;
    let bs: Vec<FiniteSemigroup> = bs.iter().map(|b| load_semigroup(b)).collect::<Result<_>>()?;
    let cap = cap(cap_flag)?;
    let verdict = in_variety(&a, &bs, cap)?;
    let witness = match &verdict {
        Membership::No(id) => Some(id),
        _ => None,
    };
    print_json(&json!({
        "a": a.label(),
        "generators": bs.iter().map(FiniteSemigroup::label).collect::<Vec<_>>(),
        "verdict": verdict.label(),
        "witness": witness,
        "cap": cap,
    }))?;
    Ok(match verdict {
        Membership::Yes => Status::Ok,
        _ => Status::Negative,
    })
}

fn load_catalog_dir(dir: &Path) -> Result<Vec<FiniteSemigroup>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| p.extension().is_some_and(|e| e == "json"));
    files.sort();
    if files.is_empty() {
        bail!("no .json tables in {}", dir.display());
    }
    files.iter().map(|p| load_semigroup(&p.to_string_lossy())).collect()
}

fn sidecar_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("lattice");
    out.with_file_name(format!("{stem}.meta.json"))
}

fn variety_lattice(dir: &Path, out: &Path, cap_flag: Option<usize>, probe: bool) -> Result<Status> {
    let members = load_catalog_dir(dir)?;
    let gl = build_variety_lattice(&members, cap(cap_flag)?)?;
    std::fs::write(out, gl.lattice.to_json_string() + "\n")
        .with_context(|| format!("writing {}", out.display()))?;
    let meta = sidecar_path(out);
    std::fs::write(&meta, serde_json::to_string_pretty(&gl.metadata())? + "\n")
        .with_context(|| format!("writing {}", meta.display()))?;
    let mut summary = json!({
        "catalog": members.iter().map(FiniteSemigroup::label).collect::<Vec<_>>(),
        "nodes": gl.nodes.iter().map(|n| &n.name).collect::<Vec<_>>(),
        "lattice": out,
        "metadata": meta,
        "join_is_exact": gl.join_is_exact,
        "meet_is_exact": gl.meet_is_exact,
    });
    if probe {
        summary["probe"] = serde_json::to_value(probe_special_elements(&gl))?;
    }
    print_json(&summary)?;
    Ok(Status::Ok)
}

fn run(cli: Cli) -> Result<Status> {
    if let Some(n) = cli.workers {
        if n == 0 {
            bail!("--workers must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.command {
        Command::Lattice(LatticeCmd::Check { file, elements }) => lattice_check(&file, &elements),
        Command::Lattice(LatticeCmd::Lemmas(args)) => lattice_lemmas(&args),
        Command::Sgp(SgpCmd::Check { table, identity }) => sgp_check(&table, &identity),
        Command::Sgp(SgpCmd::Info { table }) => sgp_info(&table),
        Command::Word(WordCmd::Nf { word }) => {
            print_line(&normal_form_w(&parse_word(&word)?).to_string())?;
            Ok(Status::Ok)
        }
        Command::Deduce(args) => deduce(&args),
        Command::Replay(ReplayCmd::Case2 { n, i, j, l, ip, jp, r }) => replay(replay_case2(n, i, j, l, ip, jp, r)?),
        Command::Replay(ReplayCmd::Case1 { m, k }) => replay(replay_case1(m, k)?),
        Command::Variety(VarietyCmd::Member { a, bs, cap }) => variety_member(&a, &bs, cap),
        Command::Variety(VarietyCmd::Lattice { catalog, out, cap, probe }) => {
            variety_lattice(&catalog, &out, cap, probe)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
