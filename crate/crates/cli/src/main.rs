//! Batch command line for the loose Hamilton cycle toolkit.
//!
//! Subcommands: `gen` writes instance files, `solve` produces loose
//! Hamilton cycle certificates, `tile` runs the tiling machinery,
//! `verify` re-validates certificates against instances, `experiment`
//! runs threshold sweeps to CSV. Outputs are deterministic for a fixed
//! seed; wall-clock data is opt-in. Exit status: 0 on success, 1 when a
//! run fails or a certificate is rejected (a stage log goes to stdout),
//! 2 on bad arguments or malformed input files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use loosehc::certificate::{Certificate, StageLog};
use loosehc::constructions::{
    make_complete, make_h3, make_hk, make_loose_cycle, make_m, random_binomial,
    random_min_degree, tripartite_random,
};
use loosehc::experiment::{config_hash, rebuild_row_host, run_sweep, write_csv, ThresholdSweep};
use loosehc::io::{self, GeneratorInfo, PartitionFile};
use loosehc::l29::L29Instance;
use loosehc::paths::LooseCycle;
use loosehc::pipeline::assemble::{assemble_loose_hc, AssembleOptions, AssembleOutcome};
use loosehc::pipeline::exact::{exact_loose_hc, SolveOptions, SolveOutcome};
use loosehc::regularity::RegularityMode;
use loosehc::tiling::fractional::{format_rational, parse_rational, FractionalTiling};
use loosehc::tiling::l29_search::find_l29_tiling;
use loosehc::tiling::loose_tiling::{path_tile, PathTileOptions};
use loosehc::tiling::mtiling::max_m_tiling;
use loosehc::Hypergraph3;

#[derive(Parser)]
#[command(name = "loosehc", version, about = "Loose Hamilton cycle toolkit")]
struct Cli {
    /// Base seed for anything randomized.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads; parallelism is at the instance level only.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Output file. Defaulted file names land in $LOOSEHC_OUT_DIR when
    /// set, else the working directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance file plus JSON metadata.
    Gen(GenArgs),
    /// Find a loose Hamilton cycle and write a certificate.
    Solve(SolveArgs),
    /// Run a tiling: perfect-matching style M-copies, loose paths, or a
    /// fractional tiling of a crossing instance.
    Tile(TileArgs),
    /// Re-validate a certificate or tiling file against its instance.
    Verify(VerifyArgs),
    /// Threshold sweep over minimum-degree instances, written as CSV.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Complete,
    LooseCycle,
    H3,
    Hk,
    M,
    MinDegree,
    Binomial,
    Tripartite,
    L29,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,

    /// Vertex count.
    #[arg(long)]
    n: Option<usize>,

    /// Uniformity for the k-uniform extremal family.
    #[arg(long, default_value_t = 4)]
    k: usize,

    /// Minimum vertex degree target.
    #[arg(long)]
    target: Option<u64>,

    /// Edge probability for the binomial family.
    #[arg(long)]
    p: Option<f64>,

    /// Crossing-triple density for the tripartite family.
    #[arg(long)]
    d: Option<f64>,

    /// Tripartite class sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Pipeline,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file (text or JSON).
    instance: PathBuf,

    #[arg(long, value_enum)]
    mode: Mode,

    /// Absorption parameter for the pipeline.
    #[arg(long, default_value_t = 0.3)]
    gamma: f64,

    /// Wall-clock budget in milliseconds.
    #[arg(long)]
    budget_ms: Option<u64>,

    /// Node budget for the exact search.
    #[arg(long, default_value_t = 200_000_000)]
    budget_nodes: u64,

    /// Retries for the pipeline.
    #[arg(long, default_value_t = 8)]
    attempts: usize,

    /// Certificate output path; defaults next to the instance name.
    #[arg(long)]
    certificate: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    M,
    Path,
    Fractional,
}

#[derive(Args)]
struct TileArgs {
    /// Instance file; `--what fractional` needs a crossing-instance JSON.
    instance: PathBuf,

    #[arg(long, value_enum)]
    what: What,

    /// Node budget for backtracking tilers.
    #[arg(long, default_value_t = 50_000_000)]
    node_budget: u64,

    /// Cluster count for path tiling.
    #[arg(long, default_value_t = 8)]
    t: usize,

    /// Regularity tolerance as p/q.
    #[arg(long, default_value = "1/4")]
    eps: String,

    /// Density threshold as p/q.
    #[arg(long, default_value = "1/2")]
    d: String,

    /// Regularity checks: `exhaustive` or `sampled:N`.
    #[arg(long, default_value = "sampled:40")]
    regularity: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Instance file the certificate claims to certify.
    instance: PathBuf,

    /// Certificate JSON (cycle certificate or fractional tiling).
    #[arg(long)]
    certificate: PathBuf,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Host sizes.
    #[arg(long, value_delimiter = ',', default_value = "6,8")]
    n_values: Vec<usize>,

    /// Degree targets as fractions of the degree ceiling.
    #[arg(long, value_delimiter = ',', default_value = "0.3,0.4375,0.6")]
    ratios: Vec<f64>,

    #[arg(long, default_value_t = 3)]
    seeds_per_cell: usize,

    /// Skip the extremal-host control rows.
    #[arg(long)]
    no_h3: bool,

    /// Add a wall-clock column; breaks byte reproducibility.
    #[arg(long)]
    timing: bool,

    /// Run label, part of the hashed config.
    #[arg(long, default_value = "sweep")]
    name: String,

    #[arg(long, default_value_t = 200_000_000)]
    node_budget: u64,

    /// Directory for per-success certificates; defaults next to --out.
    #[arg(long)]
    certs_dir: Option<PathBuf>,

    /// Skip writing certificates.
    #[arg(long)]
    no_certs: bool,
}

enum Failure {
    /// Bad arguments or malformed input: exit 2.
    Usage(String),
    /// A run that failed or a rejected artifact: exit 1.
    Internal(String),
}

type CliResult<T> = Result<T, Failure>;

impl From<loosehc::Error> for Failure {
    fn from(e: loosehc::Error) -> Failure {
        use loosehc::Error::*;
        match e {
            DegenerateEdge(_) | VertexOutOfRange { .. } | Parse { .. } | DuplicateEdge(_)
            | InvalidArgument(_) | TooManyVertices { .. } | Json(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Internal(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.cmd {
        Cmd::Gen(a) => gen(cli, a),
        Cmd::Solve(a) => solve(cli, a),
        Cmd::Tile(a) => tile(cli, a),
        Cmd::Verify(a) => verify(cli, a),
        Cmd::Experiment(a) => experiment(cli, a),
    }
}

/// Default output directory: $LOOSEHC_OUT_DIR or the working directory.
fn out_dir() -> PathBuf {
    std::env::var_os("LOOSEHC_OUT_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("."))
}

fn resolve_out(choice: &Option<PathBuf>, default_name: &str) -> PathBuf {
    match choice {
        Some(p) => p.clone(),
        None => out_dir().join(default_name),
    }
}

fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    PathBuf::from(format!("{}{}", path.display(), suffix))
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {}", path.display(), e)))
}

fn write_file(path: &Path, content: &str) -> CliResult<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .map_err(|e| Failure::Internal(format!("mkdir {}: {}", parent.display(), e)))?;
        }
    }
    fs::write(path, content)
        .map_err(|e| Failure::Internal(format!("write {}: {}", path.display(), e)))
}

fn emit(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("report serializes"));
}

/// Loads a 3-uniform host from text or JSON; crossing-instance JSON
/// contributes its host hypergraph.
fn load_host(path: &Path) -> CliResult<Hypergraph3> {
    let s = read_file(path)?;
    let t = s.trim_start();
    if !t.starts_with('{') {
        return Ok(io::parse_text(&s)?);
    }
    let v: serde_json::Value =
        serde_json::from_str(t).map_err(|e| Failure::Usage(format!("bad json: {}", e)))?;
    if v.get("crossing").is_some() {
        let inst = L29Instance::from_json(t)?;
        return Ok(inst.host().clone());
    }
    let (h, _) = io::parse_json(t)?;
    Ok(h)
}

fn load_l29(path: &Path) -> CliResult<L29Instance> {
    let s = read_file(path)?;
    let t = s.trim_start();
    if !t.starts_with('{') || serde_json::from_str::<serde_json::Value>(t).map_or(true, |v| v.get("crossing").is_none()) {
        return Err(Failure::Usage(format!(
            "{} is not a crossing-instance JSON (generate one with `gen --family l29`)",
            path.display()
        )));
    }
    Ok(L29Instance::from_json(t)?)
}

fn require<T: Copy>(opt: Option<T>, what: &str, family: &str) -> CliResult<T> {
    opt.ok_or_else(|| Failure::Usage(format!("--{} is required for --family {}", what, family)))
}

fn gen(cli: &Cli, a: &GenArgs) -> CliResult<()> {
    let seed = cli.seed;
    // Resolve the family into (default file name, text payload, metadata,
    // optional partition sidecar).
    let mut partition: Option<PartitionFile> = None;
    let (name, text, info): (String, String, GeneratorInfo) = match a.family {
        Family::Complete => {
            let n = require(a.n, "n", "complete")?;
            let h = make_complete(n);
            (
                format!("complete-n{}.txt", n),
                io::write_text(&h),
                GeneratorInfo {
                    name: "complete".into(),
                    params: json!({ "n": n }),
                    seed: None,
                },
            )
        }
        Family::LooseCycle => {
            let n = require(a.n, "n", "loose-cycle")?;
            let h = make_loose_cycle(n)?;
            (
                format!("loose-cycle-n{}.txt", n),
                io::write_text(&h),
                GeneratorInfo {
                    name: "loose-cycle".into(),
                    params: json!({ "n": n }),
                    seed: None,
                },
            )
        }
        Family::H3 => {
            let n = require(a.n, "n", "h3")?;
            let h = make_h3(n)?;
            (
                format!("h3-n{}.txt", n),
                io::write_text(&h),
                GeneratorInfo {
                    name: "h3".into(),
                    params: json!({ "n": n }),
                    seed: None,
                },
            )
        }
        Family::Hk => {
            let n = require(a.n, "n", "hk")?;
            let kel = make_hk(n, a.k)?;
            (
                format!("hk-n{}-k{}.txt", n, a.k),
                kel.to_text(),
                GeneratorInfo {
                    name: "hk".into(),
                    params: json!({ "n": n, "k": a.k }),
                    seed: None,
                },
            )
        }
        Family::M => {
            let h = make_m();
            (
                "m.txt".into(),
                io::write_text(&h),
                GeneratorInfo {
                    name: "m".into(),
                    params: json!({ "n": h.n() }),
                    seed: None,
                },
            )
        }
        Family::MinDegree => {
            let n = require(a.n, "n", "min-degree")?;
            let target = require(a.target, "target", "min-degree")?;
            let host = random_min_degree(n, target, seed)?;
            (
                format!("min-degree-n{}-t{}-s{}.txt", n, target, seed),
                io::write_text(&host.hypergraph),
                GeneratorInfo {
                    name: "min-degree".into(),
                    params: json!({ "n": n, "target": target, "added": host.added }),
                    seed: Some(seed),
                },
            )
        }
        Family::Binomial => {
            let n = require(a.n, "n", "binomial")?;
            let p = require(a.p, "p", "binomial")?;
            let h = random_binomial(n, p, seed)?;
            (
                format!("binomial-n{}-p{}-s{}.txt", n, p, seed),
                io::write_text(&h),
                GeneratorInfo {
                    name: "binomial".into(),
                    params: json!({ "n": n, "p": p }),
                    seed: Some(seed),
                },
            )
        }
        Family::Tripartite => {
            let d = require(a.d, "d", "tripartite")?;
            if a.sizes.len() != 3 {
                return Err(Failure::Usage(
                    "--sizes a,b,c (three classes) is required for --family tripartite".into(),
                ));
            }
            let sizes = [a.sizes[0], a.sizes[1], a.sizes[2]];
            let (h, classes) = tripartite_random(sizes, d, seed)?;
            partition = Some(PartitionFile {
                classes: classes.iter().map(|c| c.clone()).collect(),
                exceptional: vec![],
            });
            (
                format!(
                    "tripartite-{}-{}-{}-d{}-s{}.txt",
                    sizes[0], sizes[1], sizes[2], d, seed
                ),
                io::write_text(&h),
                GeneratorInfo {
                    name: "tripartite".into(),
                    params: json!({ "sizes": sizes, "d": d }),
                    seed: Some(seed),
                },
            )
        }
        Family::L29 => {
            let inst = L29Instance::random(seed);
            (
                format!("l29-s{}.json", seed),
                inst.to_json(),
                GeneratorInfo {
                    name: "l29".into(),
                    params: json!({ "crossing": inst.crossing().len() }),
                    seed: Some(seed),
                },
            )
        }
    };

    let out = resolve_out(&cli.out, &name);
    write_file(&out, &text)?;
    let meta_path = sidecar(&out, ".meta.json");
    let meta = json!({ "generator": info });
    write_file(&meta_path, &serde_json::to_string_pretty(&meta).expect("meta serializes"))?;
    let mut report = json!({
        "family": info.name,
        "out": out.display().to_string(),
        "metadata": meta_path.display().to_string(),
    });
    if let Some(p) = partition {
        let ppath = sidecar(&out, ".partition.json");
        write_file(&ppath, &serde_json::to_string_pretty(&p).expect("partition serializes"))?;
        report["partition"] = json!(ppath.display().to_string());
    }
    emit(&report);
    Ok(())
}

fn solve(cli: &Cli, a: &SolveArgs) -> CliResult<()> {
    let h = load_host(&a.instance)?;
    let stem = a
        .instance
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into());
    let cert_path = match (&a.certificate, &cli.out) {
        (Some(p), _) => p.clone(),
        (None, Some(p)) => p.clone(),
        (None, None) => out_dir().join(format!("{}.cert.json", stem)),
    };
    let time_budget = a.budget_ms.map(Duration::from_millis);

    match a.mode {
        Mode::Exact => {
            let report = exact_loose_hc(
                &h,
                &SolveOptions {
                    node_budget: a.budget_nodes,
                    time_budget,
                    ..Default::default()
                },
            )?;
            match report.outcome {
                SolveOutcome::Found(cycle) => {
                    let cert = Certificate::exact(&h, &cycle);
                    write_file(&cert_path, &cert.to_json())?;
                    emit(&json!({
                        "outcome": "success",
                        "mode": "exact",
                        "n": h.n(),
                        "nodes": report.nodes,
                        "certificate": cert_path.display().to_string(),
                    }));
                    Ok(())
                }
                SolveOutcome::NoCycle => {
                    emit(&json!({
                        "outcome": "failure(no-cycle)",
                        "mode": "exact",
                        "n": h.n(),
                        "nodes": report.nodes,
                        "stages": [ { "stage": "search",
                                      "detail": "exhausted: no loose Hamilton cycle exists" } ],
                    }));
                    Err(Failure::Internal("no loose Hamilton cycle exists".into()))
                }
                SolveOutcome::OutOfBudget => {
                    emit(&json!({
                        "outcome": "timeout",
                        "mode": "exact",
                        "n": h.n(),
                        "nodes": report.nodes,
                        "stages": [ { "stage": "search", "detail": "budget exhausted" } ],
                    }));
                    Err(Failure::Internal("search budget exhausted".into()))
                }
            }
        }
        Mode::Pipeline => {
            let opts = AssembleOptions {
                gamma: a.gamma,
                attempts: a.attempts,
                seed: cli.seed,
                time_budget,
                ..Default::default()
            };
            let report = assemble_loose_hc(&h, &opts)?;
            match report.outcome {
                AssembleOutcome::Success { certificate, .. } => {
                    certificate
                        .verify(&h)
                        .map_err(|e| Failure::Internal(format!("produced certificate rejected: {}", e)))?;
                    write_file(&cert_path, &certificate.to_json())?;
                    emit(&json!({
                        "outcome": "success",
                        "mode": "pipeline",
                        "n": h.n(),
                        "attempts": report.attempts,
                        "certificate": cert_path.display().to_string(),
                    }));
                    Ok(())
                }
                AssembleOutcome::Failure { stage, detail } => {
                    emit(&json!({
                        "outcome": format!("failure({})", stage),
                        "mode": "pipeline",
                        "n": h.n(),
                        "attempts": report.attempts,
                        "detail": detail,
                        "stages": report.log,
                    }));
                    Err(Failure::Internal(format!(
                        "pipeline failed at {}: {}",
                        stage, detail
                    )))
                }
            }
        }
    }
}

fn parse_regularity(s: &str) -> CliResult<RegularityMode> {
    if s == "exhaustive" {
        return Ok(RegularityMode::Exhaustive);
    }
    if let Some(n) = s.strip_prefix("sampled:") {
        if let Ok(trials) = n.parse::<usize>() {
            if trials > 0 {
                return Ok(RegularityMode::Sampled { trials });
            }
        }
    }
    Err(Failure::Usage(format!(
        "--regularity wants `exhaustive` or `sampled:N`, got {:?}",
        s
    )))
}

fn parse_ratio(s: &str, what: &str) -> CliResult<loosehc::tiling::fractional::Rational> {
    parse_rational(s)
        .ok_or_else(|| Failure::Usage(format!("--{} wants a rational like 1/4, got {:?}", what, s)))
}

fn tile(cli: &Cli, a: &TileArgs) -> CliResult<()> {
    match a.what {
        What::M => {
            let h = load_host(&a.instance)?;
            let report = max_m_tiling(&h, a.node_budget)?;
            report.tiling.validate(&h).map_err(|e| {
                Failure::Internal(format!("produced tiling rejected: {}", e))
            })?;
            let copies: Vec<[usize; 8]> =
                report.tiling.copies.iter().map(|c| c.vertices()).collect();
            let out = json!({
                "what": "m",
                "n": h.n(),
                "copies": copies.len(),
                "complete": report.complete,
                "covered": 8 * copies.len(),
                "uncovered": report.tiling.uncovered(h.n()).len(),
                "nodes": report.nodes,
                "tiling": copies,
            });
            if let Some(p) = &cli.out {
                write_file(p, &serde_json::to_string_pretty(&out).expect("report serializes"))?;
            }
            emit(&out);
            Ok(())
        }
        What::Path => {
            let h = load_host(&a.instance)?;
            let opts = PathTileOptions {
                t: a.t,
                eps: parse_ratio(&a.eps, "eps")?,
                d: parse_ratio(&a.d, "d")?,
                mode: parse_regularity(&a.regularity)?,
                seed: cli.seed,
                node_budget: a.node_budget,
            };
            let report = path_tile(&h, &opts)?;
            let paths: Vec<&[usize]> = report.paths.iter().map(|p| p.order()).collect();
            let out = json!({
                "what": "path",
                "n": h.n(),
                "cluster_sizes": report.cluster_sizes,
                "regular_triples": report.cluster_report.triples.len(),
                "k_copies": report.k_copies,
                "k_tiling_complete": report.k_tiling_complete,
                "augmentable": report.augmentable,
                "paths": paths.len(),
                "covered": report.covered,
                "uncovered": report.uncovered.len(),
                "tiling": paths,
            });
            if let Some(p) = &cli.out {
                write_file(p, &serde_json::to_string_pretty(&out).expect("report serializes"))?;
            }
            emit(&out);
            Ok(())
        }
        What::Fractional => {
            let inst = load_l29(&a.instance)?;
            match find_l29_tiling(&inst) {
                Ok(rep) => {
                    let tiling_json = rep.tiling.to_json();
                    let mut out = json!({
                        "what": "fractional",
                        "outcome": "success",
                        "stage": format!("{:?}", rep.stage),
                        "weight": format_rational(rep.stats.total_weight),
                        "h_min": rep.stats.h_min.map(format_rational),
                        "support_edges": rep.stats.support_edges,
                        "tiling": serde_json::from_str::<serde_json::Value>(&tiling_json)
                            .expect("tiling serializes"),
                    });
                    if let Some(p) = &cli.out {
                        write_file(p, &tiling_json)?;
                        out["out"] = json!(p.display().to_string());
                    }
                    emit(&out);
                    Ok(())
                }
                Err(e) => {
                    emit(&json!({
                        "what": "fractional",
                        "outcome": "failure(search)",
                        "stages": [ { "stage": "search", "detail": e.to_string() } ],
                    }));
                    Err(Failure::Internal(format!("fractional tiling failed: {}", e)))
                }
            }
        }
    }
}

fn verify(_cli: &Cli, a: &VerifyArgs) -> CliResult<()> {
    let h = load_host(&a.instance)?;
    let s = read_file(&a.certificate)?;
    let t = s.trim_start();
    if t.starts_with('[') {
        // A fractional tiling: weights on host edges.
        let tiling = FractionalTiling::from_json(t)?;
        let stats = tiling
            .validate(&h)
            .map_err(|e| Failure::Internal(format!("tiling rejected: {}", e)))?;
        emit(&json!({
            "ok": true,
            "kind": "fractional-tiling",
            "weight": format_rational(stats.total_weight),
            "h_min": stats.h_min.map(format_rational),
            "support_edges": stats.support_edges,
        }));
        return Ok(());
    }
    let cert = Certificate::from_json(t)?;
    cert.verify(&h)
        .map_err(|e| Failure::Internal(format!("certificate rejected: {}", e)))?;
    emit(&json!({
        "ok": true,
        "kind": cert.kind,
        "n": cert.n,
        "method": cert.method,
        "edges": cert.order.len() / 2,
    }));
    Ok(())
}

fn experiment(cli: &Cli, a: &ExperimentArgs) -> CliResult<()> {
    let cfg = ThresholdSweep {
        name: a.name.clone(),
        n_values: a.n_values.clone(),
        ratios: a.ratios.clone(),
        seeds_per_cell: a.seeds_per_cell,
        include_h3: !a.no_h3,
        parallelism: cli.threads.max(1),
        include_timing: a.timing,
        seed: cli.seed,
        node_budget: a.node_budget,
    };
    let mut rows = run_sweep(&cfg)?;
    let hash = config_hash(&cfg);

    // Certificates for success rows land next to the CSV; a run printed
    // to stdout skips them unless a directory is named.
    let certs_dir = if a.no_certs {
        None
    } else {
        a.certs_dir.clone().or_else(|| {
            cli.out.as_ref().map(|p| {
                let stem = p
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "sweep".into());
                p.with_file_name(format!("{}-certs", stem))
            })
        })
    };
    if let Some(dir) = &certs_dir {
        fs::create_dir_all(dir)
            .map_err(|e| Failure::Internal(format!("mkdir {}: {}", dir.display(), e)))?;
        for row in rows.iter_mut().filter(|r| r.outcome == "success") {
            let host = rebuild_row_host(row)?;
            let order = row.order.clone().expect("success rows carry an order");
            let cycle = LooseCycle::hamilton(&host, order)
                .map_err(|e| Failure::Internal(format!("recorded cycle rejected: {}", e)))?;
            let mut cert = Certificate::exact(&host, &cycle);
            cert.stages.push(StageLog {
                stage: "experiment".into(),
                detail: format!("config {}", hash),
            });
            let stem = format!(
                "{}-n{}-r{:.4}-s{}",
                row.family, row.n, row.ratio, row.seed_idx
            );
            // The instance file goes next to the certificate so `verify`
            // can re-check the pair.
            write_file(&dir.join(format!("{}.txt", stem)), &io::write_text(&host))?;
            let path = dir.join(format!("{}.json", stem));
            write_file(&path, &cert.to_json())?;
            row.certificate = path.display().to_string();
        }
    }

    let mut buf = Vec::new();
    write_csv(&cfg, &rows, &mut buf)?;
    let csv = String::from_utf8(buf).expect("csv is utf-8");
    match &cli.out {
        Some(p) => {
            write_file(p, &csv)?;
            emit(&json!({
                "config": hash,
                "rows": rows.len(),
                "out": p.display().to_string(),
                "certificates": certs_dir.as_ref().map(|d| d.display().to_string()),
            }));
        }
        None => print!("{}", csv),
    }
    Ok(())
}
