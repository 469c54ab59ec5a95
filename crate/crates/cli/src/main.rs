use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rotsys::corpus;
use rotsys::draw::drawability_witness;
use rotsys::encode::{CnfInstance, EncodeOptions, Obstructions};
use rotsys::experiments::{self, check_crossing_pairs, nested_lemma_holds};
use rotsys::hamconvex::{plane_hc_convex, plane_hp_with_edge, NestedLemma};
use rotsys::predicates::{all_edges, is_convex, is_drawable};
use rotsys::solve::{self, Backend, Budget, ExternalSolver, Status};
use rotsys::system::{Edge, RotationSystem};

#[derive(Parser)]
#[command(name = "rotsys", version, about = "Rotation systems of simple drawings of complete graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a question about rotation systems on n vertices and solve it
    Find(FindArgs),
    /// Construct plane Hamiltonian cycles avoiding a star in convex systems
    Hamcycle(HamcycleArgs),
    /// Construct plane Hamiltonian paths through prescribed edges
    Hampath(HampathArgs),
    /// Decide drawability and export a planarization
    Drawability(DrawabilityArgs),
    /// Refute an instance with the external solver and check the DRAT proof
    Certify(CertifyArgs),
    /// Run a registered experiment suite
    Reproduce(ReproduceArgs),
}

#[derive(Args, Clone)]
struct PropertyFlags {
    /// Only exclude nothing: any pre-rotation system
    #[arg(long, conflicts_with = "v5")]
    v4: bool,
    /// Only exclude the 4-element obstruction
    #[arg(long)]
    v5: bool,
    #[arg(long)]
    convex: bool,
    /// h-convex (implies --convex)
    #[arg(long)]
    hconvex: bool,
    /// Force natural labeling (on by default unless a task fixes a cycle)
    #[arg(long, conflicts_with = "no_natural")]
    natural: bool,
    #[arg(long)]
    no_natural: bool,
}

#[derive(Args, Clone)]
struct TaskFlags {
    /// No plane Hamiltonian cycle
    #[arg(long)]
    forbid_hc: bool,
    /// No plane Hamiltonian subdrawing on 2n-3 edges
    #[arg(long)]
    forbid_hc_2n3: bool,
    /// The cycle 1..n is plane and cannot be extended to 2n-3 edges
    #[arg(long)]
    unextendable_hc: bool,
    /// Some plane matching of size k meets every plane Hamiltonian cycle
    #[arg(long, value_name = "K")]
    matching: Option<usize>,
    /// Every edge is crossed
    #[arg(long)]
    all_edges_crossed: bool,
    /// At most K empty triangles
    #[arg(long, value_name = "K")]
    empty_at_most: Option<usize>,
}

impl TaskFlags {
    fn count(&self) -> usize {
        [
            self.forbid_hc,
            self.forbid_hc_2n3,
            self.unextendable_hc,
            self.matching.is_some(),
            self.all_edges_crossed,
            self.empty_at_most.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count()
    }

    fn fixes_labels(&self) -> bool {
        self.unextendable_hc || self.matching.is_some()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendKind {
    Embedded,
    External,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expect {
    Sat,
    Unsat,
}

#[derive(Clone, Copy, ValueEnum)]
enum LemmaPart {
    Part1,
    Part2Case1,
    Part2Case2,
    Part2Case3,
}

#[derive(Args)]
struct FindArgs {
    n: usize,
    #[command(flatten)]
    props: PropertyFlags,
    #[command(flatten)]
    task: TaskFlags,
    /// List all solutions instead of one
    #[arg(long)]
    enumerate: bool,
    /// With --enumerate: one representative per isomorphism class
    #[arg(long, requires = "enumerate")]
    canonical: bool,
    /// Check that equal crossing pairs imply equal or mirrored systems
    #[arg(long)]
    check_crossing_pairs: bool,
    /// Check a part of the nested bad edges lemma on all convex systems
    #[arg(long, value_enum)]
    nested_lemma: Option<LemmaPart>,
    /// Write the DIMACS instance (and `<path>.vars`)
    #[arg(long)]
    instance_out: Option<PathBuf>,
    /// Write solutions as JSON lines
    #[arg(long)]
    corpus_out: Option<PathBuf>,
    /// Exit with 1 unless the solver reports this status
    #[arg(long, value_enum)]
    expect: Option<Expect>,
    /// Time budget per solver call, seconds
    #[arg(long)]
    time_limit: Option<u64>,
    #[arg(long, value_enum, default_value = "embedded")]
    backend: BackendKind,
}

#[derive(Args)]
struct Input {
    /// Corpus file (JSON lines)
    #[arg(long = "in", conflicts_with = "rows")]
    input: Option<PathBuf>,
    /// One system as a JSON array of rows (1-based labels)
    #[arg(long)]
    rows: Option<String>,
}

impl Input {
    fn load(&self) -> anyhow::Result<Vec<(String, RotationSystem)>> {
        if let Some(path) = &self.input {
            let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            let named = corpus::read_named(BufReader::new(f))?;
            return Ok(named
                .into_iter()
                .enumerate()
                .map(|(i, r)| (r.name.unwrap_or_else(|| format!("#{}", i + 1)), r.system))
                .collect());
        }
        if let Some(text) = &self.rows {
            let rows: Vec<Vec<usize>> = serde_json::from_str(text).context("parsing --rows")?;
            let rs = RotationSystem::from_labels(rows.len(), &rows)?;
            return Ok(vec![("#1".into(), rs)]);
        }
        bail!("one of --in or --rows is required")
    }
}

#[derive(Args)]
struct HamcycleArgs {
    #[command(flatten)]
    input: Input,
    /// Star vertex (1-based)
    #[arg(long, conflicts_with = "all_stars")]
    star: Option<usize>,
    #[arg(long)]
    all_stars: bool,
}

#[derive(Args)]
struct HampathArgs {
    #[command(flatten)]
    input: Input,
    /// Prescribed edge as `a,b` (1-based)
    #[arg(long, conflicts_with = "all_edges", value_parser = parse_edge)]
    edge: Option<Edge>,
    #[arg(long)]
    all_edges: bool,
}

#[derive(Args)]
struct DrawabilityArgs {
    #[command(flatten)]
    input: Input,
    /// Directory for planarization JSON files
    #[arg(long)]
    planarization_out: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    n: usize,
    #[command(flatten)]
    props: PropertyFlags,
    #[command(flatten)]
    task: TaskFlags,
    /// Directory for instance.cnf, instance.vars and instance.drat
    #[arg(long)]
    dir: PathBuf,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Suite name (see --list)
    suite: Option<String>,
    #[arg(long)]
    list: bool,
    /// Print checks as JSON lines
    #[arg(long)]
    json: bool,
}

fn parse_edge(s: &str) -> Result<Edge, String> {
    let (a, b) = s.split_once(',').ok_or("expected a,b")?;
    let a: usize = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a == 0 || b == 0 || a == b {
        return Err("labels are 1-based and distinct".into());
    }
    Ok(Edge::labeled(a, b))
}

fn options(props: &PropertyFlags, task: &TaskFlags) -> anyhow::Result<EncodeOptions> {
    if task.count() > 1 {
        bail!("task flags are mutually exclusive");
    }
    if props.natural && task.fixes_labels() {
        bail!("--natural cannot be combined with tasks that fix a Hamiltonian cycle");
    }
    if (props.v4 || props.v5) && (props.convex || props.hconvex) {
        bail!("convexity needs the full drawability obstructions");
    }
    let obstructions = if props.v4 {
        Obstructions::None
    } else if props.v5 {
        Obstructions::Pi4Only
    } else {
        Obstructions::Drawable
    };
    Ok(EncodeOptions {
        obstructions,
        convex: props.convex || props.hconvex,
        hconvex: props.hconvex,
        natural: !props.no_natural && !task.fixes_labels(),
        ..EncodeOptions::default()
    })
}

fn build(n: usize, props: &PropertyFlags, task: &TaskFlags) -> anyhow::Result<CnfInstance> {
    let mut inst = CnfInstance::new(n, options(props, task)?)?;
    if task.forbid_hc {
        inst.forbid_plane_hamiltonian_cycle()?;
    }
    if task.forbid_hc_2n3 {
        inst.forbid_plane_hamiltonian_2n3()?;
    }
    if task.unextendable_hc {
        inst.assert_unextendable_fixed_hc()?;
    }
    if let Some(k) = task.matching {
        inst.assert_matching_unavoidable(k)?;
    }
    if task.all_edges_crossed {
        inst.assert_all_edges_crossed()?;
    }
    if let Some(k) = task.empty_at_most {
        inst.assert_empty_triangles_atmost(k)?;
    }
    Ok(inst)
}

fn write_corpus(path: &Path, systems: &[RotationSystem]) -> anyhow::Result<()> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(f);
    corpus::write(&mut w, systems)?;
    w.flush()?;
    Ok(())
}

fn ok(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn find(args: FindArgs) -> anyhow::Result<ExitCode> {
    if args.check_crossing_pairs {
        let holds = check_crossing_pairs(args.n);
        println!("check-crossing-pairs n={}: {holds}", args.n);
        return Ok(ok(holds));
    }
    if let Some(part) = args.nested_lemma {
        let part = match part {
            LemmaPart::Part1 => NestedLemma::Part1,
            LemmaPart::Part2Case1 => NestedLemma::Part2Case1,
            LemmaPart::Part2Case2 => NestedLemma::Part2Case2,
            LemmaPart::Part2Case3 => NestedLemma::Part2Case3,
        };
        let systems = experiments::convex_systems(args.n)?;
        let holds = nested_lemma_holds(&systems, part);
        println!("nested lemma {part:?} on {} convex systems (n={}): {holds}", systems.len(), args.n);
        return Ok(ok(holds));
    }
    let inst = build(args.n, &args.props, &args.task)?;
    if let Some(path) = &args.instance_out {
        solve::write_dimacs(&inst, path)?;
        let mut vars = path.clone().into_os_string();
        vars.push(".vars");
        solve::write_variable_map(&inst, Path::new(&vars))?;
        eprintln!("wrote {} ({} variables, {} clauses)", path.display(), inst.num_vars(), inst.num_clauses());
    }
    let budget = match args.time_limit {
        Some(s) => Budget::time(Duration::from_secs(s)),
        None => Budget::unlimited(),
    };
    if args.enumerate {
        if args.backend == BackendKind::External {
            bail!("enumeration runs on the embedded solver only");
        }
        let mut found = Vec::new();
        let report = solve::enumerate_all(&inst, args.canonical, budget, |rs| {
            found.push(rs.clone());
            true
        })?;
        if args.canonical {
            found.sort();
        }
        if let Some(path) = &args.corpus_out {
            write_corpus(path, &found)?;
        }
        println!(
            "{} systems ({} models, {:.2}s{})",
            found.len(),
            report.total,
            report.elapsed.as_secs_f64(),
            if report.complete { "" } else { ", incomplete" }
        );
        return Ok(ok(report.complete));
    }
    let result = match args.backend {
        BackendKind::Embedded => solve::solve(&inst, budget)?,
        BackendKind::External => ExternalSolver::from_env()?.solve(&inst, budget)?,
    };
    println!("status: {:?} ({:.2}s)", result.status, result.elapsed.as_secs_f64());
    if let Some(model) = &result.model {
        let rs = solve::decode(&inst, model)?;
        print!("{rs}");
        if let Some(path) = &args.corpus_out {
            write_corpus(path, std::slice::from_ref(&rs))?;
        }
    }
    let expected = match (args.expect, result.status) {
        (_, Status::Unknown) => false,
        (None, _) => true,
        (Some(Expect::Sat), s) => s == Status::Sat,
        (Some(Expect::Unsat), s) => s == Status::Unsat,
    };
    Ok(ok(expected))
}

fn one_based(seq: &[usize]) -> Vec<usize> {
    seq.iter().map(|v| v + 1).collect()
}

fn hamcycle(args: HamcycleArgs) -> anyhow::Result<ExitCode> {
    let systems = args.input.load()?;
    let mut all_ok = true;
    for (name, rs) in &systems {
        let stars: Vec<usize> = match (args.star, args.all_stars) {
            (Some(s), _) if s == 0 || s > rs.n() => bail!("star {s} out of range for n = {}", rs.n()),
            (Some(s), _) => vec![s - 1],
            (None, true) => (0..rs.n()).collect(),
            (None, false) => vec![rs.n() - 1],
        };
        if !is_drawable(rs) || !is_convex(rs).unwrap_or(false) {
            all_ok = false;
            println!("{}", json!({ "system": name, "error": "not a convex rotation system" }));
            continue;
        }
        for star in stars {
            let line = match plane_hc_convex(rs, star) {
                Ok(hc) => json!({
                    "system": name,
                    "star": star + 1,
                    "cycle": one_based(&hc.cycle),
                    "bad_edges": hc.bad_edges,
                    "report": hc.report,
                }),
                Err(e) => {
                    all_ok = false;
                    json!({ "system": name, "star": star + 1, "error": e.to_string() })
                }
            };
            println!("{line}");
        }
    }
    Ok(ok(all_ok))
}

fn hampath(args: HampathArgs) -> anyhow::Result<ExitCode> {
    let systems = args.input.load()?;
    let mut all_ok = true;
    for (name, rs) in &systems {
        let edges = match args.edge {
            Some(e) if e.v() >= rs.n() => bail!("edge {e} out of range for n = {}", rs.n()),
            Some(e) => vec![e],
            None if args.all_edges => all_edges(rs.n()),
            None => bail!("one of --edge or --all-edges is required"),
        };
        for e in edges {
            let line = match plane_hp_with_edge(rs, e) {
                Ok(p) => json!({ "system": name, "edge": e.to_string(), "path": one_based(&p.path) }),
                Err(err) => {
                    all_ok = false;
                    json!({ "system": name, "edge": e.to_string(), "error": err.to_string() })
                }
            };
            println!("{line}");
        }
    }
    Ok(ok(all_ok))
}

fn drawability(args: DrawabilityArgs) -> anyhow::Result<ExitCode> {
    let systems = args.input.load()?;
    if let Some(dir) = &args.planarization_out {
        std::fs::create_dir_all(dir)?;
    }
    let mut all_ok = true;
    for (i, (name, rs)) in systems.iter().enumerate() {
        let witness = drawability_witness(rs)?;
        let by_obstructions = is_drawable(rs);
        let by_sat = witness.is_some();
        all_ok &= by_sat;
        if by_sat != by_obstructions {
            bail!("{name}: planarization search and obstruction test disagree");
        }
        let mut line = json!({ "system": name, "drawable": by_sat });
        if let Some(p) = &witness {
            line["vertices"] = json!(p.num_vertices());
            line["edges"] = json!(p.num_edges());
            if let Some(dir) = &args.planarization_out {
                let path = dir.join(format!("planarization_{}.json", i + 1));
                std::fs::write(&path, serde_json::to_string_pretty(&p.to_json())?)?;
                line["file"] = json!(path.display().to_string());
            }
        }
        println!("{line}");
    }
    Ok(ok(all_ok))
}

fn certify(args: CertifyArgs) -> anyhow::Result<ExitCode> {
    let inst = build(args.n, &args.props, &args.task)?;
    match solve::unsat_certificate(&inst, &args.dir) {
        Ok(report) => {
            println!("{}", serde_json::to_string(&report)?);
            Ok(ok(report.verified))
        }
        Err(solve::SolveError::NotUnsat(status)) => {
            println!("status: {status:?}, no certificate");
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e.into()),
    }
}

fn reproduce(args: ReproduceArgs) -> anyhow::Result<ExitCode> {
    if args.list || args.suite.is_none() {
        for s in experiments::SUITES {
            let kind = if s.extended { "extended" } else { "default" };
            println!("{:<26} {kind:<8} {}", s.name, s.expected);
        }
        return Ok(ExitCode::SUCCESS);
    }
    let name = args.suite.unwrap();
    let Some(suite) = experiments::suite(&name) else {
        bail!("unknown suite {name:?}; see --list");
    };
    let checks = (suite.run)();
    for c in &checks {
        if args.json {
            println!("{}", serde_json::to_string(c)?);
        } else {
            println!("{}", experiments::format_check(c));
        }
    }
    Ok(ok(checks.iter().all(|c| c.passed)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Find(a) => find(a),
        Command::Hamcycle(a) => hamcycle(a),
        Command::Hampath(a) => hampath(a),
        Command::Drawability(a) => drawability(a),
        Command::Certify(a) => certify(a),
        Command::Reproduce(a) => reproduce(a),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
