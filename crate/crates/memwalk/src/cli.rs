//! Config-driven front end over the library.
//!
//! Two verbs: `run` executes the experiment described by a TOML config and
//! writes CSV (time series) or JSON (reports); `validate` checks walk
//! artifact files and prints both a human-readable report and one line of
//! JSON. Every failure class has its own exit code so scripts can branch on
//! what went wrong without parsing messages:
//!
//! | code | meaning |
//! |------|-------------------------------------------|
//! | 0    | success |
//! | 2    | bad usage or config schema |
//! | 3    | input file missing or malformed |
//! | 4    | a validator rejected the inputs |
//! | 5    | output could not be written |
//!
//! Data outputs are byte-deterministic: fixed iteration order, plain
//! `Display` float formatting, and no timestamps. Run metadata goes to a
//! `<output>.meta.json` sidecar, never into the data file.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::json;
use thiserror::Error;

use crate::analysis;
use crate::bridge;
use crate::coined::{self, CoinOperator, CoinedState, CoinedWalk, WalkError};
use crate::graph::LineGraph;
use crate::io::{self, IoError};
use crate::szegedy::{self, SzegedyState, SzegedyWalk};

#[derive(Debug, Parser)]
#[command(name = "memwalk", version, about = "Memory quantum walks on regular digraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for randomized experiment trials.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest dimension for which the dense one-step oracle is checked.
    #[arg(long, global = true, default_value_t = analysis::DEFAULT_BASIS_CAP)]
    pub max_basis: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Execute the experiment described by a TOML config file.
    Run { config: PathBuf },
    /// Check artifact files and report every violation found.
    Validate {
        /// Graph file (required; everything else is checked against it).
        #[arg(long)]
        graph: PathBuf,
        /// Vertex partition file.
        #[arg(long)]
        partition: Option<PathBuf>,
        /// Coin shift table file (needs --partition).
        #[arg(long)]
        shift: Option<PathBuf>,
        /// Arc successor file.
        #[arg(long)]
        arcs: Option<PathBuf>,
        /// Per-arc transition amplitude file.
        #[arg(long)]
        amplitudes: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: IoError,
    },
    #[error("{0}")]
    Validation(String),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::File { .. } => 3,
            CliError::Validation(_) => 4,
            CliError::Output { .. } => 5,
        }
    }
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Run { config } => run(config, cli.seed, cli.max_basis),
        Command::Validate {
            graph,
            partition,
            shift,
            arcs,
            amplitudes,
        } => validate(
            graph,
            partition.as_deref(),
            shift.as_deref(),
            arcs.as_deref(),
            amplitudes.as_deref(),
        ),
    }
}

// ---------------------------------------------------------------- config --

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    walk: Option<WalkConfig>,
    experiment: Option<ExperimentConfig>,
    #[serde(default)]
    initial: InitialConfig,
    output: OutputConfig,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WalkConfig {
    /// "coined" or "szegedy".
    model: String,
    /// "qwm1" or "qwm2"; omit to load the walk from files.
    builder: Option<String>,
    /// Cycle length for builders.
    n: Option<usize>,
    steps: usize,
    graph: Option<PathBuf>,
    partition: Option<PathBuf>,
    shift: Option<PathBuf>,
    /// Coin preset for file-driven coined walks:
    /// "hadamard" (degree 2), "grover", or "identity".
    coin: Option<String>,
    arcs: Option<PathBuf>,
    amplitudes: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentConfig {
    /// Only "qwm-equivalence" exists.
    kind: String,
    n: usize,
    #[serde(alias = "t")]
    steps: usize,
    /// Fixed amplitude quadruple; omit to draw `trials` random ones.
    amplitudes: Option<Quadruple>,
    trials: Option<usize>,
}

/// Four amplitudes, given as reals or as `[re, im]` pairs.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Quadruple {
    Real([f64; 4]),
    Complex([[f64; 2]; 4]),
}

impl Quadruple {
    fn to_amplitudes(&self) -> [Complex64; 4] {
        match self {
            Quadruple::Real(q) => q.map(|re| Complex64::new(re, 0.0)),
            Quadruple::Complex(q) => q.map(|[re, im]| Complex64::new(re, im)),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct InitialConfig {
    /// Starting position for builder walks; defaults to n / 2.
    origin: Option<usize>,
    /// Memory-direction quadruple for builder walks; defaults to [1, 0, 0, 0].
    amplitudes: Option<Quadruple>,
    /// Explicit coined basis amplitudes for file-driven coined walks.
    entries: Option<Vec<CoinedEntry>>,
    /// Explicit arc amplitudes for file-driven Szegedy walks.
    arc_entries: Option<Vec<ArcEntry>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoinedEntry {
    vertex: usize,
    /// 1-based, like the on-disk tables.
    coin: usize,
    re: f64,
    #[serde(default)]
    im: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArcEntry {
    tail: usize,
    head: usize,
    re: f64,
    #[serde(default)]
    im: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputConfig {
    path: PathBuf,
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn file_err(path: &Path) -> impl FnOnce(IoError) -> CliError + '_ {
    move |source| CliError::File {
        path: path.to_path_buf(),
        source,
    }
}

// ------------------------------------------------------------------- run --

fn run(config_path: &Path, seed: u64, max_basis: usize) -> Result<(), CliError> {
    let text = std::fs::read_to_string(config_path).map_err(|e| CliError::File {
        path: config_path.to_path_buf(),
        source: IoError::Io(e),
    })?;
    let config: Config =
        toml::from_str(&text).map_err(|e| config_err(format!("{}: {e}", config_path.display())))?;

    match (&config.walk, &config.experiment) {
        (Some(walk), None) => run_walk(walk, &config.initial, &config.output, seed, max_basis),
        (None, Some(exp)) => run_experiment(exp, &config.output, seed, max_basis),
        _ => Err(config_err(
            "config needs exactly one of [walk] or [experiment]",
        )),
    }
}

fn run_experiment(
    exp: &ExperimentConfig,
    output: &OutputConfig,
    seed: u64,
    max_basis: usize,
) -> Result<(), CliError> {
    if exp.kind != "qwm-equivalence" {
        return Err(config_err(format!(
            "unknown experiment kind {:?}; only \"qwm-equivalence\" exists",
            exp.kind
        )));
    }
    if exp.amplitudes.is_some() && exp.trials.is_some() {
        return Err(config_err(
            "give either fixed amplitudes or a trial count, not both",
        ));
    }

    let quadruples: Vec<[Complex64; 4]> = match &exp.amplitudes {
        Some(q) => vec![q.to_amplitudes()],
        None => {
            let trials = exp.trials.unwrap_or(1);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..trials)
                .map(|_| crate::fixtures::amplitude_quadruple(&mut rng))
                .collect()
        }
    };

    let mut trials = Vec::new();
    let mut worst: f64 = 0.0;
    let mut all_equivalent = true;
    for q in &quadruples {
        let report = analysis::qwm_equivalence_experiment(exp.n, exp.steps, *q).map_err(|e| {
            match e {
                analysis::AnalysisError::NotNormalized { .. } => CliError::Validation(e.to_string()),
                analysis::AnalysisError::CycleTooSmall { .. } => config_err(e.to_string()),
                other => config_err(other.to_string()),
            }
        })?;
        worst = worst.max(report.max_abs);
        all_equivalent &= report.equivalent;
        trials.push(json!({
            "amplitudes": q.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "report": serde_json::to_value(&report).expect("report serializes"),
        }));
    }

    let document = json!({
        "experiment": "qwm-equivalence",
        "n": exp.n,
        "steps": exp.steps,
        "seed": seed,
        "trials": trials,
    });
    let rendered = serde_json::to_string_pretty(&document).expect("report serializes");
    write_output(&output.path, &(rendered + "\n"))?;
    write_meta(
        &output.path,
        json!({
            "command": "run",
            "experiment": "qwm-equivalence",
            "n": exp.n,
            "steps": exp.steps,
            "trials": quadruples.len(),
            "seed": seed,
            "max_basis": max_basis,
        }),
    )?;
    println!(
        "qwm-equivalence: n={} steps={} trials={} max|dp|={:.3e} equivalent={} -> {}",
        exp.n,
        exp.steps,
        quadruples.len(),
        worst,
        all_equivalent,
        output.path.display()
    );
    Ok(())
}

/// A built walk, its position bookkeeping, and its initial state.
enum Prepared {
    Coined {
        walk: Box<CoinedWalk>,
        line: LineGraph,
        state: CoinedState,
    },
    Szegedy {
        walk: Box<SzegedyWalk>,
        line: LineGraph,
        state: SzegedyState,
    },
}

fn builder_initial(
    builder: &str,
    line: &LineGraph,
    initial: &InitialConfig,
) -> Result<CoinedState, CliError> {
    let n = line.base().n_vertices();
    let origin = initial.origin.unwrap_or(n / 2);
    if origin >= n {
        return Err(config_err(format!("origin {origin} out of range for n = {n}")));
    }
    let q = initial
        .amplitudes
        .as_ref()
        .map(Quadruple::to_amplitudes)
        .unwrap_or([
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ]);
    let norm_sqr: f64 = q.iter().map(|z| z.norm_sqr()).sum();
    if (norm_sqr - 1.0).abs() > analysis::STATE_TOL {
        return Err(CliError::Validation(format!(
            "initial amplitudes have squared norm {norm_sqr}, expected 1"
        )));
    }
    let state = match builder {
        "qwm1" => coined::qwm1_initial(line, origin, q),
        _ => coined::qwm2_initial(line, origin, q),
    };
    state.map_err(|e| config_err(e.to_string()))
}

fn build_from_builder(
    walk: &WalkConfig,
    initial: &InitialConfig,
) -> Result<Prepared, CliError> {
    let builder = walk.builder.as_deref().expect("caller checked");
    if !matches!(builder, "qwm1" | "qwm2") {
        return Err(config_err(format!(
            "unknown builder {builder:?}; use \"qwm1\" or \"qwm2\""
        )));
    }
    for (name, there) in [
        ("graph", walk.graph.is_some()),
        ("partition", walk.partition.is_some()),
        ("shift", walk.shift.is_some()),
        ("coin", walk.coin.is_some()),
        ("arcs", walk.arcs.is_some()),
        ("amplitudes", walk.amplitudes.is_some()),
    ] {
        if there {
            return Err(config_err(format!(
                "builder walks take no {name} file; drop the key or the builder"
            )));
        }
    }
    let n = walk
        .n
        .ok_or_else(|| config_err("builder walks need n (the cycle length)"))?;
    let built = match builder {
        "qwm1" => coined::build_qwm1(n),
        _ => coined::build_qwm2(n),
    }
    .map_err(|e| config_err(e.to_string()))?;
    let (coined_walk, line) = built;
    let state = builder_initial(builder, &line, initial)?;

    match walk.model.as_str() {
        "coined" => Ok(Prepared::Coined {
            walk: Box::new(coined_walk),
            line,
            state,
        }),
        "szegedy" => {
            let form = bridge::coined_to_szegedy(&coined_walk);
            let arc_state = form.correspondence.coined_to_arc_state(&state);
            let szegedy_walk = form
                .szegedy_walk()
                .expect("builder coins are reflections");
            Ok(Prepared::Szegedy {
                walk: Box::new(szegedy_walk),
                line,
                state: arc_state,
            })
        }
        other => Err(config_err(format!(
            "unknown model {other:?}; use \"coined\" or \"szegedy\""
        ))),
    }
}

fn coin_preset(name: &str, degree: usize, vertices: usize) -> Result<CoinOperator, CliError> {
    let block = match name {
        "hadamard" => {
            if degree != 2 {
                return Err(config_err(format!(
                    "the hadamard preset needs degree 2, graph has degree {degree}"
                )));
            }
            coined::hadamard2()
        }
        "grover" => coined::grover(degree),
        "identity" => nalgebra::DMatrix::identity(degree, degree),
        other => {
            return Err(config_err(format!(
                "unknown coin preset {other:?}; use \"hadamard\", \"grover\", or \"identity\""
            )))
        }
    };
    let _ = vertices;
    CoinOperator::shared(block).map_err(|e| CliError::Validation(e.to_string()))
}

fn walk_error_to_cli(e: WalkError) -> CliError {
    match &e {
        WalkError::InvalidPartition(report) | WalkError::InvalidCoinShift(report) => {
            CliError::Validation(format!("{e}\n{report}"))
        }
        _ => CliError::Validation(e.to_string()),
    }
}

fn build_from_files(walk: &WalkConfig, initial: &InitialConfig) -> Result<Prepared, CliError> {
    let graph_path = walk
        .graph
        .as_ref()
        .ok_or_else(|| config_err("file-driven walks need a graph file"))?;
    let graph = Arc::new(io::read_graph(graph_path).map_err(file_err(graph_path))?);
    let line = LineGraph::identity(Arc::clone(&graph));

    match walk.model.as_str() {
        "coined" => {
            let (p_path, s_path) = match (&walk.partition, &walk.shift) {
                (Some(p), Some(s)) => (p, s),
                _ => {
                    return Err(config_err(
                        "a coined file walk needs partition and shift files",
                    ))
                }
            };
            if walk.arcs.is_some() || walk.amplitudes.is_some() {
                return Err(config_err(
                    "arcs/amplitudes files belong to szegedy walks",
                ));
            }
            let partition =
                io::read_partition(p_path, Arc::clone(&graph)).map_err(file_err(p_path))?;
            let shift = io::read_coin_shift(s_path).map_err(file_err(s_path))?;
            let coin = coin_preset(
                walk.coin.as_deref().unwrap_or("hadamard"),
                graph.degree(),
                graph.n_vertices(),
            )?;
            let coined_walk =
                CoinedWalk::new(partition, shift, coin).map_err(walk_error_to_cli)?;

            let entries = initial
                .entries
                .as_ref()
                .ok_or_else(|| config_err("file-driven coined walks need [initial] entries"))?;
            let mut state = CoinedState::zero(coined_walk.dim());
            for e in entries {
                if e.vertex >= graph.n_vertices() {
                    return Err(config_err(format!("entry vertex {} out of range", e.vertex)));
                }
                if e.coin == 0 || e.coin > graph.degree() {
                    return Err(config_err(format!(
                        "entry coin {} out of range 1..{}",
                        e.coin,
                        graph.degree()
                    )));
                }
                state.set(
                    coined_walk.state_index(e.vertex, e.coin - 1),
                    Complex64::new(e.re, e.im),
                );
            }
            check_unit_norm(state.norm())?;
            Ok(Prepared::Coined {
                walk: Box::new(coined_walk),
                line,
                state,
            })
        }
        "szegedy" => {
            let (a_path, t_path) = match (&walk.arcs, &walk.amplitudes) {
                (Some(a), Some(t)) => (a, t),
                _ => {
                    return Err(config_err(
                        "a szegedy file walk needs arcs and amplitudes files",
                    ))
                }
            };
            if walk.partition.is_some() || walk.shift.is_some() || walk.coin.is_some() {
                return Err(config_err(
                    "partition/shift/coin keys belong to coined walks",
                ));
            }
            let successor =
                io::read_arc_successor(a_path, Arc::clone(&graph)).map_err(file_err(a_path))?;
            let amplitudes =
                io::read_amplitudes(t_path, Arc::clone(&graph)).map_err(file_err(t_path))?;
            amplitudes
                .check_normalized()
                .map_err(|e| CliError::Validation(format!("{}: {e}", t_path.display())))?;
            let szegedy_walk = SzegedyWalk::new(amplitudes, successor).map_err(|e| match e {
                szegedy::SzegedyError::InvalidSuccessor(report) => {
                    CliError::Validation(format!("{}: invalid arc successor\n{report}", a_path.display()))
                }
                other => CliError::Validation(other.to_string()),
            })?;

            let entries = initial
                .arc_entries
                .as_ref()
                .ok_or_else(|| config_err("file-driven szegedy walks need [initial] arc_entries"))?;
            let mut state = SzegedyState::zero(szegedy_walk.dim());
            for e in entries {
                let arc = graph.arc_index(e.tail, e.head).ok_or_else(|| {
                    config_err(format!("({}, {}) is not an arc of the graph", e.tail, e.head))
                })?;
                state.set(arc, Complex64::new(e.re, e.im));
            }
            check_unit_norm(state.norm())?;
            Ok(Prepared::Szegedy {
                walk: Box::new(szegedy_walk),
                line,
                state,
            })
        }
        other => Err(config_err(format!(
            "unknown model {other:?}; use \"coined\" or \"szegedy\""
        ))),
    }
}

fn check_unit_norm(norm: f64) -> Result<(), CliError> {
    if (norm - 1.0).abs() > analysis::STATE_TOL {
        return Err(CliError::Validation(format!(
            "initial state has norm {norm}, expected 1"
        )));
    }
    Ok(())
}

fn run_walk(
    walk: &WalkConfig,
    initial: &InitialConfig,
    output: &OutputConfig,
    seed: u64,
    max_basis: usize,
) -> Result<(), CliError> {
    let prepared = if walk.builder.is_some() {
        build_from_builder(walk, initial)?
    } else {
        build_from_files(walk, initial)?
    };

    let (dim, labels): (usize, Vec<String>) = match &prepared {
        Prepared::Coined { walk, line, .. } => (walk.dim(), line.base().labels().to_vec()),
        Prepared::Szegedy { walk, line, .. } => (walk.dim(), line.base().labels().to_vec()),
    };

    // Dense one-step oracle, within the cap: the operator must be unitary.
    let oracle = if max_basis > 0 && dim <= max_basis {
        let deviation = match &prepared {
            Prepared::Coined { walk, .. } => {
                analysis::unitarity_deviation(&analysis::dense_operator(walk.as_ref(), max_basis).expect("dim within cap"))
            }
            Prepared::Szegedy { walk, .. } => {
                analysis::unitarity_deviation(&analysis::dense_operator(walk.as_ref(), max_basis).expect("dim within cap"))
            }
        };
        if deviation > analysis::OPERATOR_TOL {
            return Err(CliError::Validation(format!(
                "one-step operator deviates from unitarity by {deviation:e}"
            )));
        }
        json!({ "ran": true, "unitarity_deviation": deviation })
    } else if max_basis == 0 {
        json!({ "ran": false, "reason": "disabled (--max-basis 0)" })
    } else {
        json!({ "ran": false, "reason": format!("dimension {dim} exceeds cap {max_basis}") })
    };

    let mut rows = Vec::with_capacity(walk.steps + 1);
    match prepared {
        Prepared::Coined {
            walk: w,
            line,
            mut state,
        } => {
            for t in 0..=walk.steps {
                if t > 0 {
                    state = w.step(&state).expect("dimension fixed");
                }
                let p = coined::position_distribution(&state, &line).expect("dimension fixed");
                check_row_sum(&p, t)?;
                rows.push(p);
            }
        }
        Prepared::Szegedy {
            walk: w,
            line,
            mut state,
        } => {
            for t in 0..=walk.steps {
                if t > 0 {
                    state = w.step(&state).expect("dimension fixed");
                }
                let p = szegedy::position_distribution(&state, &line).expect("dimension fixed");
                check_row_sum(&p, t)?;
                rows.push(p);
            }
        }
    }

    let csv = io::distribution_csv(&labels, &rows);
    write_output(&output.path, &csv)?;
    write_meta(
        &output.path,
        json!({
            "command": "run",
            "model": walk.model,
            "builder": walk.builder,
            "n": walk.n,
            "steps": walk.steps,
            "dimension": dim,
            "positions": labels.len(),
            "seed": seed,
            "max_basis": max_basis,
            "oracle_check": oracle,
        }),
    )?;
    println!(
        "wrote {} rows x {} positions -> {}",
        rows.len(),
        labels.len(),
        output.path.display()
    );
    Ok(())
}

fn check_row_sum(p: &[f64], t: usize) -> Result<(), CliError> {
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > analysis::STATE_TOL {
        return Err(CliError::Validation(format!(
            "probability leak at step {t}: row sums to {sum}"
        )));
    }
    Ok(())
}

fn write_output(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content).map_err(|source| CliError::Output {
        path: path.to_path_buf(),
        source,
    })
}

fn write_meta(output_path: &Path, meta: serde_json::Value) -> Result<(), CliError> {
    let mut name = output_path.as_os_str().to_owned();
    name.push(".meta.json");
    let path = PathBuf::from(name);
    let rendered = serde_json::to_string_pretty(&meta).expect("meta serializes");
    write_output(&path, &(rendered + "\n"))
}

// -------------------------------------------------------------- validate --

fn validate(
    graph_path: &Path,
    partition_path: Option<&Path>,
    shift_path: Option<&Path>,
    arcs_path: Option<&Path>,
    amplitudes_path: Option<&Path>,
) -> Result<(), CliError> {
    if shift_path.is_some() && partition_path.is_none() {
        return Err(config_err("--shift needs --partition to check against"));
    }

    let graph = Arc::new(io::read_graph(graph_path).map_err(file_err(graph_path))?);
    println!(
        "graph {}: {} vertices, degree {}, {} arcs",
        graph_path.display(),
        graph.n_vertices(),
        graph.degree(),
        graph.n_arcs()
    );
    let mut findings = serde_json::Map::new();
    findings.insert(
        "graph".into(),
        json!({ "vertices": graph.n_vertices(), "degree": graph.degree() }),
    );
    let mut all_valid = true;

    let mut partition = None;
    if let Some(path) = partition_path {
        let p = io::read_partition(path, Arc::clone(&graph)).map_err(file_err(path))?;
        let report = p.validate();
        let dicycle = report.is_valid() && p.dicycle_classes().iter().all(|&d| d);
        if report.is_valid() {
            println!(
                "partition {}: valid; dicycle: {}",
                path.display(),
                if dicycle { "yes" } else { "no" }
            );
        } else {
            println!("partition {}: invalid", path.display());
            println!("{report}");
        }
        all_valid &= report.is_valid();
        findings.insert(
            "partition".into(),
            json!({
                "valid": report.is_valid(),
                "dicycle": dicycle,
                "violations": report.violations(),
            }),
        );
        partition = Some(p);
    }

    if let Some(path) = shift_path {
        let gc = io::read_coin_shift(path).map_err(file_err(path))?;
        let report = gc.validate(partition.as_ref().expect("checked above"));
        if report.is_valid() {
            println!("coin shift {}: valid", path.display());
        } else {
            println!("coin shift {}: invalid", path.display());
            println!("{report}");
        }
        all_valid &= report.is_valid();
        findings.insert(
            "shift".into(),
            json!({ "valid": report.is_valid(), "violations": report.violations() }),
        );
    }

    if let Some(path) = arcs_path {
        let f = io::read_arc_successor(path, Arc::clone(&graph)).map_err(file_err(path))?;
        let report = f.validate();
        if report.is_valid() {
            println!(
                "arc successor {}: valid; {} cycles",
                path.display(),
                f.cycles().len()
            );
        } else {
            println!("arc successor {}: invalid", path.display());
            println!("{report}");
        }
        all_valid &= report.is_valid();
        let cycles = report.is_valid().then(|| f.cycles().len());
        findings.insert(
            "arcs".into(),
            json!({ "valid": report.is_valid(), "cycles": cycles, "violations": report.violations() }),
        );
    }

    if let Some(path) = amplitudes_path {
        let t = io::read_amplitudes(path, Arc::clone(&graph)).map_err(file_err(path))?;
        match t.check_normalized() {
            Ok(()) => {
                println!("amplitudes {}: normalized per vertex", path.display());
                findings.insert("amplitudes".into(), json!({ "valid": true }));
            }
            Err(e) => {
                println!("amplitudes {}: {e}", path.display());
                all_valid = false;
                findings.insert(
                    "amplitudes".into(),
                    json!({ "valid": false, "error": e.to_string() }),
                );
            }
        }
    }

    findings.insert("valid".into(), json!(all_valid));
    println!(
        "{}",
        serde_json::to_string(&serde_json::Value::Object(findings)).expect("findings serialize")
    );

    if all_valid {
        Ok(())
    } else {
        Err(CliError::Validation("validation failed".into()))
    }
}
