//! Command-line orchestration: `build`, `verify`, `lip` and `report`.
//!
//! Exit codes: 0 all checks pass, 1 a check failed or an input is corrupt,
//! 2 usage error, 3 resource guard.

use std::fmt;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analysis::{bound_report, check_structure_lemmas, lip_exact, lip_heuristic, BoundReport, InducedPathResult};
use crate::barrier_words::{check_word_properties, full_barrier};
use crate::blowup::{check_path, degeneracy, hamiltonian_path, verify_degeneracy, BlowupGraph, PathCertificate, PathKind, CONVENTION};
use crate::check::Report;
use crate::index_tree::{Alpha, IndexTree, IndexTreeJson, FORMAT_VERSION};
use crate::ribbed::{verify_ribbed, RibbedTree};
use crate::skeleton::{verify_skeleton, SkeletonTree};

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_GUARD: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "lipgraph", version, about = "Build and check 2-degenerate traceable graphs with short induced paths")]
pub struct Cli {
    /// Worker threads for the parallel stages (default: one per core).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Construct every stage and write exports plus a manifest.
    Build(BuildArgs),
    /// Run verifiers; exits nonzero iff a check fails.
    Verify(VerifyArgs),
    /// Search for a longest induced path.
    Lip(LipArgs),
    /// Longest induced path against the lower and upper bounds.
    Report(LipArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Balanced tree; the complete binary tree when ell = 2^d - 1.
    Complete,
    /// `T_alpha(m)` with m = ell.
    Unbalanced,
    /// Index-tree JSON read from `--tree-file`.
    File,
}

#[derive(Args, Clone, Debug)]
pub struct TreeArgs {
    #[arg(long, value_enum, default_value_t = Family::Complete)]
    pub tree: Family,
    /// Number of indices.
    #[arg(long)]
    pub ell: Option<usize>,
    /// Number of indices of the unbalanced family (same as `--ell`).
    #[arg(long)]
    pub m: Option<u64>,
    /// Imbalance of the unbalanced family, > 2.
    #[arg(long, default_value_t = 3.0)]
    pub alpha: f64,
    #[arg(long)]
    pub tree_file: Option<PathBuf>,
    /// Lift the memory guard on ell.
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Args, Clone, Debug)]
pub struct BuildArgs {
    #[command(flatten)]
    pub tree: TreeArgs,
    #[arg(long, env = "LIPGRAPH_OUT", default_value = "lipgraph-out")]
    pub out: PathBuf,
    /// Graph export formats.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Format::Json, Format::Edgelist, Format::Dot])]
    pub formats: Vec<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Edgelist,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Words,
    Skeleton,
    Ribbed,
    Degeneracy,
    Hamiltonian,
    Structure,
    All,
}

#[derive(Args, Clone, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub tree: TreeArgs,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Which::All])]
    pub which: Vec<Which>,
    /// Sampled induced paths for the structure checks.
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory written by `build`, checked against a fresh construction.
    #[arg(long)]
    pub artifacts: Option<PathBuf>,
    /// Write `verify.json` here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Clone, Debug)]
pub struct LipArgs {
    #[command(flatten)]
    pub tree: TreeArgs,
    /// Node expansions for the exact search; 0 is unbounded. Accepts `10^7` and `1e7`.
    #[arg(long, default_value = "10^7", value_parser = parse_budget)]
    pub budget: u64,
    /// Random restarts of the heuristic.
    #[arg(long, default_value_t = 200)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "LIPGRAPH_OUT", default_value = "lipgraph-out")]
    pub out: PathBuf,
}

/// Parses `N`, `B^E` or `MeE`.
pub fn parse_budget(s: &str) -> Result<u64, String> {
    let s = s.trim().replace('_', "");
    let pow = |b: &str, e: &str| -> Result<u64, String> {
        let b: u64 = b.parse().map_err(|e| format!("{e}"))?;
        let e: u32 = e.parse().map_err(|e| format!("{e}"))?;
        b.checked_pow(e).ok_or_else(|| "budget overflows u64".to_string())
    };
    if let Some((b, e)) = s.split_once('^') {
        return pow(b, e);
    }
    if let Some((m, e)) = s.split_once(['e', 'E']) {
        let m: u64 = m.parse().map_err(|e| format!("{e}"))?;
        return m.checked_mul(pow("10", e)?).ok_or_else(|| "budget overflows u64".to_string());
    }
    s.parse().map_err(|e| format!("{e}"))
}

/// Invalid flag combination.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// A resolved tree family.
#[derive(Clone, Debug)]
pub struct TreeSpec {
    pub family: Family,
    pub ell: Option<usize>,
    pub alpha: Alpha,
    pub file: Option<PathBuf>,
    pub allow_large: bool,
}

impl TreeSpec {
    pub fn from_args(a: &TreeArgs) -> anyhow::Result<Self> {
        let ell = match (a.ell, a.m) {
            (Some(_), Some(_)) => return Err(usage("give exactly one of --ell and --m (the unbalanced family takes m as ell)")),
            (Some(e), None) => Some(e),
            (None, Some(m)) => Some(usize::try_from(m).map_err(|_| usage("--m too large"))?),
            (None, None) => None,
        };
        let alpha = Alpha::new(a.alpha).map_err(|e| usage(e.to_string()))?;
        match a.tree {
            Family::File if a.tree_file.is_none() => return Err(usage("--tree file needs --tree-file")),
            Family::Complete | Family::Unbalanced if ell.is_none() => return Err(usage("give one of --ell or --m")),
            Family::Complete | Family::Unbalanced if a.tree_file.is_some() => return Err(usage("--tree-file needs --tree file")),
            _ => {}
        }
        if ell == Some(0) {
            return Err(usage("ell must be at least 1"));
        }
        Ok(TreeSpec { family: a.tree, ell, alpha, file: a.tree_file.clone(), allow_large: a.allow_large })
    }

    pub fn complete(ell: usize) -> Self {
        TreeSpec { family: Family::Complete, ell: Some(ell), alpha: Alpha::new(3.0).expect("valid"), file: None, allow_large: false }
    }

    pub fn build_tree(&self) -> anyhow::Result<IndexTree> {
        let t = match self.family {
            Family::Complete => IndexTree::build_balanced(self.ell.expect("validated")),
            Family::Unbalanced => IndexTree::build_unbalanced(self.ell.expect("validated") as u64, self.alpha)?,
            Family::File => {
                let path = self.file.as_ref().expect("validated");
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let json: IndexTreeJson = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
                let t = IndexTree::from_json(&json).with_context(|| format!("invalid index-tree in {}", path.display()))?;
                if let Some(ell) = self.ell.filter(|&e| e != t.ell()) {
                    return Err(usage(format!("--ell {ell} disagrees with ell = {} in {}", t.ell(), path.display())));
                }
                t
            }
        };
        Ok(t)
    }

    /// Short description used in headers and file metadata.
    pub fn describe(&self, t: &IndexTree) -> String {
        match self.family {
            Family::Complete => format!("complete-{}", t.ell()),
            Family::Unbalanced => format!("unbalanced-{}-alpha-{}", t.ell(), self.alpha.value()),
            Family::File => {
                let name = self.file.as_deref().and_then(Path::file_name).map(|n| n.to_string_lossy().into_owned());
                format!("file-{}", name.unwrap_or_default())
            }
        }
    }

    pub fn build_graph(&self, t: &IndexTree) -> anyhow::Result<BlowupGraph> {
        let st = SkeletonTree::build_with_override(t.ell(), self.allow_large)?;
        Ok(BlowupGraph::build(RibbedTree::build(st, t)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub index_tree_nodes: usize,
    pub skeleton_nodes: usize,
    pub blocking_nodes: usize,
    pub ribbed_nodes: usize,
    pub vertices: usize,
    pub edges: usize,
}

impl Counts {
    pub fn of(g: &BlowupGraph) -> Self {
        let r = g.ribbed();
        Counts {
            index_tree_nodes: r.index_tree().ell(),
            skeleton_nodes: r.tree_node_count(),
            blocking_nodes: r.blocking_count(),
            ribbed_nodes: r.node_count(),
            vertices: g.vertex_count(),
            edges: g.edge_count(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub format_version: u32,
    pub ell: usize,
    pub tree: String,
    pub convention: String,
    pub counts: Counts,
    pub files: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub format_version: u32,
    pub construction_seconds: f64,
    pub export_seconds: f64,
}

fn create(dir: &Path, name: &str) -> anyhow::Result<BufWriter<File>> {
    let path = dir.join(name);
    Ok(BufWriter::new(File::create(&path).with_context(|| format!("creating {}", path.display()))?))
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> anyhow::Result<()> {
    let mut w = create(dir, name)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush().with_context(|| format!("writing {}", dir.join(name).display()))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("corrupt artifact {}", path.display()))
}

/// Builds every stage for `spec` and writes the exports to `out`. Wall-times
/// go to `timing.json` so the other files are reproducible byte for byte.
pub fn cmd_build(spec: &TreeSpec, out: &Path, formats: &[Format]) -> anyhow::Result<Manifest> {
    let start = Instant::now();
    let t = spec.build_tree()?;
    let desc = spec.describe(&t);
    let g = spec.build_graph(&t)?;
    let ham = hamiltonian_path(&g)?;
    let construction = start.elapsed().as_secs_f64();

    let start = Instant::now();
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let mut files = Vec::new();
    let mut record = |name: &str| files.push(name.to_string());

    write_json(out, "index_tree.json", &t.to_json())?;
    record("index_tree.json");
    let mut w = create(out, "words.txt")?;
    for i in 1..=t.ell() {
        let word = full_barrier(&t, i)?;
        writeln!(w, "{}", word.letters().iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))?;
    }
    w.flush()?;
    record("words.txt");
    write_json(out, "skeleton.json", &g.ribbed().skeleton().to_json())?;
    record("skeleton.json");
    write_json(out, "ribbed.json", &g.ribbed().to_json())?;
    record("ribbed.json");
    for f in formats {
        match f {
            Format::Json => {
                write_json(out, "graph.json", &g.to_json(&desc))?;
                record("graph.json");
            }
            Format::Edgelist => {
                let mut w = create(out, "ribbed.edgelist")?;
                w.write_all(g.ribbed().to_edge_list().as_bytes())?;
                w.flush()?;
                record("ribbed.edgelist");
                let mut w = create(out, "graph.edgelist")?;
                g.write_edge_list(&desc, &mut w)?;
                w.flush()?;
                record("graph.edgelist");
            }
            Format::Dot => {
                let mut w = create(out, "graph.dot")?;
                g.write_dot(&desc, &mut w)?;
                w.flush()?;
                record("graph.dot");
            }
        }
    }
    let cert = PathCertificate::new(PathKind::Hamiltonian, t.ell(), desc.clone(), ham);
    fs::write(out.join("hamiltonian.cert"), cert.to_string()).with_context(|| format!("writing {}", out.join("hamiltonian.cert").display()))?;
    record("hamiltonian.cert");

    let manifest = Manifest { format_version: FORMAT_VERSION, ell: t.ell(), tree: desc, convention: CONVENTION.to_string(), counts: Counts::of(&g), files };
    write_json(out, "manifest.json", &manifest)?;
    let timing = Timing { format_version: FORMAT_VERSION, construction_seconds: construction, export_seconds: start.elapsed().as_secs_f64() };
    write_json(out, "timing.json", &timing)?;
    Ok(manifest)
}

/// A named group of checks.
#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub name: String,
    pub checks: Vec<crate::check::Check>,
}

impl Section {
    fn new(name: &str, r: Report) -> Self {
        Section { name: name.to_string(), checks: r.checks }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn expand(which: &[Which]) -> Vec<Which> {
    const ORDER: [Which; 6] = [Which::Words, Which::Skeleton, Which::Ribbed, Which::Degeneracy, Which::Hamiltonian, Which::Structure];
    ORDER.into_iter().filter(|w| which.contains(w) || which.contains(&Which::All)).collect()
}

/// Runs the selected verifiers. The graph is only built when a selected
/// verifier needs it, so the word suite alone works for any `ell`.
pub fn cmd_verify(spec: &TreeSpec, which: &[Which], samples: u64, seed: u64, artifacts: Option<&Path>) -> anyhow::Result<Vec<Section>> {
    let t = spec.build_tree()?;
    let which = expand(which);
    let mut sections = Vec::new();
    if which.contains(&Which::Words) {
        sections.push(Section::new("words", check_word_properties(&t)?));
    }
    let needs_graph = artifacts.is_some() || which.iter().any(|w| *w != Which::Words);
    if !needs_graph {
        return Ok(sections);
    }
    let g = spec.build_graph(&t)?;
    for w in which {
        let r = match w {
            Which::Words | Which::All => continue,
            Which::Skeleton => verify_skeleton(g.ribbed().skeleton()),
            Which::Ribbed => verify_ribbed(g.ribbed()),
            Which::Degeneracy => verify_degeneracy(g.graph(), &degeneracy(g.graph()), 2),
            Which::Hamiltonian => check_path(g.graph(), &hamiltonian_path(&g)?, true, false),
            Which::Structure => check_structure_lemmas(&g, &t, samples, seed)?.report,
        };
        let name = format!("{w:?}").to_lowercase();
        sections.push(Section::new(&name, r));
    }
    if let Some(dir) = artifacts {
        sections.push(Section::new("artifacts", verify_artifacts(&g, &spec.describe(&t), dir)?));
    }
    Ok(sections)
}

/// Recounts a fresh construction against a build directory. Unreadable or
/// malformed files are errors naming the file.
pub fn verify_artifacts(g: &BlowupGraph, desc: &str, dir: &Path) -> anyhow::Result<Report> {
    use crate::check::Check;
    let mut r = Report::new();
    let manifest: Manifest = read_json(&dir.join("manifest.json"))?;
    let fresh = Counts::of(g);
    r.push(Check::from_witness(
        "manifest-counts-match",
        (manifest.counts != fresh).then(|| serde_json::json!({ "file": "manifest.json", "manifest": manifest.counts, "recount": fresh })),
    ));
    if manifest.files.iter().any(|f| f == "graph.json") {
        let path = dir.join("graph.json");
        let stored: crate::blowup::export::GraphJson = read_json(&path)?;
        let same = stored == g.to_json(desc);
        r.push(Check::from_witness("graph-json-matches", (!same).then(|| serde_json::json!({ "file": path.display().to_string() }))));
    }
    if manifest.files.iter().any(|f| f == "hamiltonian.cert") {
        let path = dir.join("hamiltonian.cert");
        let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let cert: PathCertificate = text.parse().with_context(|| format!("corrupt artifact {}", path.display()))?;
        for c in check_path(g.graph(), &cert.vertices, true, false).checks {
            r.push(Check { statement: format!("hamiltonian-cert-{}", c.statement), ..c });
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct LipOutput {
    pub format_version: u32,
    pub ell: usize,
    pub tree: String,
    pub seed: u64,
    pub budget: u64,
    pub heuristic_samples: u64,
    pub heuristic_order: usize,
    pub result: InducedPathResult,
}

/// Heuristic lower bound first, then the exact search seeded with it.
pub fn cmd_lip(spec: &TreeSpec, budget: u64, samples: u64, seed: u64) -> anyhow::Result<(BlowupGraph, IndexTree, LipOutput)> {
    let t = spec.build_tree()?;
    let g = spec.build_graph(&t)?;
    let heur = lip_heuristic(g.graph(), samples as usize, seed);
    let mut result = lip_exact(g.graph(), budget, Some(&heur.path));
    if !check_path(g.graph(), &result.path, false, true).passed() {
        return Err(anyhow!("internal error: solver returned a non-induced path"));
    }
    result.order = result.path.len();
    let out = LipOutput {
        format_version: FORMAT_VERSION,
        ell: t.ell(),
        tree: spec.describe(&t),
        seed,
        budget,
        heuristic_samples: samples,
        heuristic_order: heur.order,
        result,
    };
    Ok((g, t, out))
}

pub fn cmd_report(spec: &TreeSpec, budget: u64, samples: u64, seed: u64) -> anyhow::Result<(LipOutput, BoundReport)> {
    let (g, t, lip) = cmd_lip(spec, budget, samples, seed)?;
    let report = bound_report(&g, &t, &lip.result);
    Ok((lip, report))
}

#[derive(Serialize)]
struct ReportJson<'a> {
    format_version: u32,
    tree: &'a str,
    seed: u64,
    budget: u64,
    #[serde(flatten)]
    report: &'a BoundReport,
    checks: &'a [crate::check::Check],
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the thread pool")?;
    }
    match cli.command {
        Command::Build(a) => {
            let spec = TreeSpec::from_args(&a.tree)?;
            let m = cmd_build(&spec, &a.out, &a.formats)?;
            println!("built {} in {}", m.tree, a.out.display());
            println!("{}", serde_json::to_string_pretty(&m.counts)?);
            Ok(true)
        }
        Command::Verify(a) => {
            let spec = TreeSpec::from_args(&a.tree)?;
            let sections = cmd_verify(&spec, &a.which, a.samples, a.seed, a.artifacts.as_deref())?;
            for s in &sections {
                println!("== {}", s.name);
                for c in &s.checks {
                    println!("{c}");
                }
            }
            if let Some(dir) = &a.out {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                write_json(dir, "verify.json", &serde_json::json!({ "format_version": FORMAT_VERSION, "seed": a.seed, "sections": sections }))?;
            }
            Ok(sections.iter().all(Section::passed))
        }
        Command::Lip(a) => {
            let spec = TreeSpec::from_args(&a.tree)?;
            let (_, _, out) = cmd_lip(&spec, a.budget, a.samples, a.seed)?;
            fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
            write_json(&a.out, "lip.json", &out)?;
            let cert = out.result.certificate(out.ell, &out.tree);
            fs::write(a.out.join("lip.cert"), cert.to_string())?;
            let r = &out.result;
            println!("lip {} (exact: {}, budget exhausted: {}, expansions: {})", r.order, r.exact, r.budget_exhausted, r.expansions);
            Ok(true)
        }
        Command::Report(a) => {
            let spec = TreeSpec::from_args(&a.tree)?;
            let (lip, rep) = cmd_report(&spec, a.budget, a.samples, a.seed)?;
            fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
            let json = ReportJson { format_version: FORMAT_VERSION, tree: &lip.tree, seed: a.seed, budget: a.budget, report: &rep, checks: &rep.report.checks };
            write_json(&a.out, "report.json", &json)?;
            let table = format!("{}\n{}\n", BoundReport::table_header(), rep.table_row());
            fs::write(a.out.join("report.txt"), &table)?;
            print!("{table}");
            if !rep.lip_exact {
                println!("(+ = lower estimate: the exact search stopped at its budget)");
            }
            for c in rep.report.failures() {
                println!("{c}");
            }
            Ok(rep.passed())
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<UsageError>() {
            return EXIT_USAGE;
        }
        if let Some(crate::Error::MemoryGuard { .. }) = cause.downcast_ref::<crate::Error>() {
            return EXIT_GUARD;
        }
    }
    EXIT_CHECK_FAILED
}

/// Parses the process arguments and runs the command.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
