//! Command-line harness: each subcommand runs one experiment and emits a
//! JSON report.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::capacity::{
    one_shot_coherent_info, switched_pauli_coherent_info, switched_pauli_formula, two_way_assisted_lower_bound,
};
use crate::channels::{choi_distance, is_entanglement_breaking, kraus_rank, pauli_channel, Channel, EbStatus, PauliVector};
use crate::correctability::{
    classify, kl_check_with, switched_kl_check, synthesize_recovery, verify_maximal_activation, QubitClassification,
};
use crate::ebcert::{certify_entanglement_breaking, ErasurePair};
use crate::error::{Error, Result};
use crate::json::{matrix_from_rows, matrix_to_rows, parse, ChannelJson, ErasurePairJson, PathConfigJson};
use crate::linalg::{self, c, ComplexMatrix, DensityMatrix, C64};
use crate::optim::OptimizerConfig;
use crate::paths::{independence_witness, packing_bound_correctable, path_superposition, PathConfig};
use crate::random;
use crate::switch::{pauli_switch_decomposition, switch_channel, ControlState};
use crate::tolerance::Tolerances;

#[derive(Debug, Parser)]
#[command(name = "qswitch", version, about = "Quantum SWITCH capacity-activation experiments")]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// `default` or `relaxed`.
    #[arg(long, global = true, default_value = "default")]
    pub tolerance_profile: String,
    /// Report destination (the CSV destination for `sweep`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Include wall-clock time in the report; reports are then no longer reproducible byte for byte.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Perfect activation of a Pauli channel by the switch.
    Activate(ActivateArgs),
    /// Superposition of paths and the packing-bound obstruction.
    Paths(PathsArgs),
    /// Entanglement-breaking certificates for switched erasure channels.
    Nogo(NogoArgs),
    /// Classify a qubit channel and test for maximal activation.
    Classify(ClassifyArgs),
    /// Sweep the Pauli simplex and write a CSV table.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct ActivateArgs {
    /// Pauli probabilities `p0,p1,p2,p3`.
    #[arg(long, default_value = "0,0.5,0.5,0")]
    pub p: String,
    /// Control state: `+`, `-`, `0`, `1`, `+i`, `-i`, `mixed`, or nested JSON rows.
    #[arg(long, default_value = "+")]
    pub omega: String,
}

#[derive(Debug, Args)]
pub struct PathsArgs {
    /// Built-in configuration: `xy2`, `unitary2`, `dep3`.
    #[arg(long, conflicts_with = "config")]
    pub preset: Option<String>,
    /// Path configuration JSON file.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NogoArgs {
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Comma-separated dimensions, cycled over the trials.
    #[arg(long, default_value = "2,3,4")]
    pub d: String,
    /// Certify a single erasure pair from a JSON file instead of sampling.
    #[arg(long)]
    pub pair: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Channel JSON (inline or a file path), or one of `xy`, `xyz`, `depolarizing`.
    #[arg(long)]
    pub channel: String,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Grid resolution `n`; probabilities are multiples of `1/n`.
    #[arg(long, default_value_t = 6)]
    pub grid: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub experiment: String,
    pub inputs: Value,
    pub results: BTreeMap<String, Value>,
    pub tolerances: Tolerances,
    pub pass: bool,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl Report {
    fn new(experiment: &str, inputs: Value, tolerances: &Tolerances, seed: u64) -> Self {
        Report {
            experiment: experiment.into(),
            inputs,
            results: BTreeMap::new(),
            tolerances: tolerances.clone(),
            pass: false,
            seed,
            runtime_ms: None,
        }
    }

    fn put(&mut self, key: &str, value: impl Serialize) {
        self.results.insert(key.into(), serde_json::to_value(value).expect("report values serialize"));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Parses `args`, runs the command and writes the report. Returns the exit
/// code: 0 on pass, 1 on failed checks, 2 on usage or input errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli).and_then(|report| emit(&cli, &report).map(|_| report)) {
        Ok(report) if report.pass => 0,
        Ok(_) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<()> {
    let text = report.to_json();
    match (&cli.out, &cli.command) {
        (Some(path), cmd) if !matches!(cmd, Command::Sweep(_)) => write_file(path, &text),
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Contract(format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

/// Runs the selected command and returns its report without writing it.
pub fn execute(cli: &Cli) -> Result<Report> {
    let tol = Tolerances::from_profile(&cli.tolerance_profile)
        .ok_or_else(|| Error::Parse(format!("unknown tolerance profile {:?}", cli.tolerance_profile)))?;
    let started = Instant::now();
    let mut report = match &cli.command {
        Command::Activate(a) => cmd_activate(a, &tol, cli.seed)?,
        Command::Paths(a) => cmd_paths(a, &tol, cli.seed)?,
        Command::Nogo(a) => cmd_nogo(a, &tol, cli.seed)?,
        Command::Classify(a) => cmd_classify(a, &tol, cli.seed)?,
        Command::Sweep(a) => cmd_sweep(a, cli.out.as_deref(), &tol, cli.seed)?,
    };
    if cli.timing {
        report.runtime_ms = Some(started.elapsed().as_millis() as u64);
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Argument parsing helpers
// ---------------------------------------------------------------------------

pub fn parse_pauli(text: &str) -> Result<PauliVector> {
    let values = text
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| Error::Parse(format!("bad probability {s:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    let p: [f64; 4] = values
        .try_into()
        .map_err(|v: Vec<f64>| Error::Parse(format!("expected 4 probabilities, got {}", v.len())))?;
    PauliVector::new(p)
}

pub fn parse_omega(text: &str) -> Result<ControlState> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let pure = |a: C64, b: C64| ControlState::pure(&linalg::ket(&[a, b]));
    match text.trim() {
        "+" => Ok(ControlState::plus()),
        "-" => Ok(ControlState::minus()),
        "0" => Ok(ControlState::basis(0)),
        "1" => Ok(ControlState::basis(1)),
        "+i" => pure(c(s, 0.0), c(0.0, s)),
        "-i" => pure(c(s, 0.0), c(0.0, -s)),
        "mixed" => Ok(ControlState::maximally_mixed()),
        t if t.starts_with('[') => {
            let rows: Vec<Vec<[f64; 2]>> = parse(t)?;
            ControlState::new(DensityMatrix::new(matrix_from_rows(&rows)?)?)
        }
        other => Err(Error::Parse(format!("unknown control state {other:?}"))),
    }
}

pub fn parse_channel(text: &str) -> Result<Channel> {
    match text.trim() {
        "xy" => Ok(pauli_channel(&PauliVector::xy())),
        "xyz" => Ok(pauli_channel(&PauliVector::xyz())),
        "depolarizing" => Ok(pauli_channel(&PauliVector::new([0.25; 4])?)),
        t if t.starts_with('{') => parse::<ChannelJson>(t)?.to_channel(),
        path => parse::<ChannelJson>(&read_file(Path::new(path))?)?.to_channel(),
    }
}

fn parse_dims(text: &str) -> Result<Vec<usize>> {
    let ds = text
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|e| Error::Parse(format!("bad dimension {s:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    if ds.is_empty() || ds.iter().any(|&d| !(2..=4).contains(&d)) {
        return Err(Error::Parse("dimensions must lie in 2..=4".into()));
    }
    Ok(ds)
}

fn preset_paths(name: &str) -> Result<PathConfig> {
    let uniform = |n: usize| vec![c(1.0 / (n as f64).sqrt(), 0.0); n];
    match name {
        "xy2" => PathConfig::new(vec![pauli_channel(&PauliVector::xy()); 2], uniform(2), None),
        "unitary2" => {
            let h = Channel::unitary(linalg::hadamard())?;
            PathConfig::new(vec![h; 2], uniform(2), None)
        }
        "dep3" => {
            let dep = pauli_channel(&PauliVector::new([0.7, 0.1, 0.1, 0.1])?);
            PathConfig::new(vec![dep; 3], uniform(3), None)
        }
        other => Err(Error::Parse(format!("unknown preset {other:?}; expected xy2, unitary2 or dep3"))),
    }
}

fn vec3(v: [f64; 3]) -> Value {
    json!(v)
}

fn matrix_json(m: &ComplexMatrix) -> Value {
    json!(matrix_to_rows(m))
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

pub fn cmd_activate(args: &ActivateArgs, tol: &Tolerances, seed: u64) -> Result<Report> {
    let p = parse_pauli(&args.p)?;
    let omega = parse_omega(&args.omega)?;
    let inputs = json!({ "p": p.probabilities(), "omega": matrix_to_rows(omega.matrix()) });
    let mut report = Report::new("activate", inputs, tol, seed);

    let e = pauli_channel(&p);
    let eb = is_entanglement_breaking(&e);
    report.put("eb_status", eb.status);
    report.put("eb_min_pt_eigenvalue", eb.min_pt_eigenvalue);

    let dec = pauli_switch_decomposition(&p, &omega)?;
    report.put("q_plus", dec.q_plus);
    report.put("q_minus", dec.q_minus);
    report.put("c_plus", dec.c_plus.as_ref().map(|v| v.probabilities()));
    report.put("c_minus", dec.c_minus.as_ref().map(|v| v.probabilities()));

    let sw = switch_channel(&e, &e, &omega)?;
    let kl = kl_check_with(sw.base.kraus(), tol.knill_laflamme)?;
    report.put("kl_satisfied", kl.satisfied);
    report.put("kl_residual", kl.residual);

    let support = omega.support();
    let recovery_distance = match support.as_slice() {
        [(_, gamma)] => synthesize_recovery(&e, gamma)
            .ok()
            .map(|r| Channel::compose_serial(&r, &sw.base).map(|total| choi_distance(&total, &Channel::identity(2))))
            .transpose()?,
        _ => None,
    };
    report.put("recovery_distance", recovery_distance);

    let cfg = OptimizerConfig::with_seed(seed);
    let before = one_shot_coherent_info(&e, &cfg)?;
    let after = one_shot_coherent_info(&sw.base, &cfg)?;
    report.put("ic_before", before.value);
    report.put("ic_after", after.value);
    report.put("ic_after_unclamped", after.unclamped);

    let plus = ControlState::plus();
    let is_plus = linalg::max_abs_diff(omega.matrix(), plus.matrix()) <= tol.choi_equal;
    report.put("ic_formula", is_plus.then(|| switched_pauli_formula(&p)));
    report.put("q2way_lower", two_way_assisted_lower_bound(&p, &omega).ok().map(|est| est.value));

    report.pass = eb.status == EbStatus::EntanglementBreaking
        && kl.satisfied
        && recovery_distance.is_some_and(|d| d <= tol.choi_equal)
        && before.value.abs() <= tol.coherent_info
        && (after.value - 1.0).abs() <= tol.coherent_info;
    Ok(report)
}

pub fn cmd_paths(args: &PathsArgs, tol: &Tolerances, seed: u64) -> Result<Report> {
    let (cfg, source) = match (&args.config, &args.preset) {
        (Some(path), _) => (parse::<PathConfigJson>(&read_file(path)?)?.to_config()?, path.display().to_string()),
        (None, preset) => {
            let name = preset.as_deref().unwrap_or("xy2");
            (preset_paths(name)?, name.to_string())
        }
    };
    let inputs = json!({ "source": source, "config": PathConfigJson::from_config(&cfg) });
    let mut report = Report::new("paths", inputs, tol, seed);

    let sup = path_superposition(&cfg)?;
    let rank = kraus_rank(&sup);
    let packing = packing_bound_correctable(&sup);
    let n = cfg.len();
    report.put("n", n);
    report.put("d", cfg.dim());
    report.put("kraus_count", sup.kraus().len());
    report.put("kraus_rank", rank);
    report.put("packing_bound_correctable", packing);
    report.put("trace_deviation", sup.validate().deviation);

    let noisy = cfg.channels().iter().all(|ch| kraus_rank(ch) >= 2);
    let populated = cfg.phi().iter().all(|z| z.norm() > 0.0);
    let hypothesis = noisy && populated;
    report.put("no_go_hypothesis", hypothesis);
    let witness_rank = match independence_witness(&cfg) {
        Ok(ops) => {
            report.put("witness_error", Value::Null);
            Some(linalg::span_rank(&ops))
        }
        Err(e) => {
            report.put("witness_error", e.to_string());
            None
        }
    };
    report.put("witness_rank", witness_rank);

    report.pass = if hypothesis {
        rank > n && !packing && witness_rank == Some(n + 1)
    } else {
        true
    };
    Ok(report)
}

pub fn cmd_nogo(args: &NogoArgs, tol: &Tolerances, seed: u64) -> Result<Report> {
    let ic_cfg = OptimizerConfig {
        restarts: 2,
        max_iters: 300,
        ..OptimizerConfig::with_seed(seed)
    };
    let pairs: Vec<ErasurePair> = match &args.pair {
        Some(path) => vec![parse::<ErasurePairJson>(&read_file(path)?)?.to_pair()?],
        None => {
            let ds = parse_dims(&args.d)?;
            (0..args.trials)
                .map(|i| ErasurePair::random(&mut random::rng(seed, i as u64), ds[i % ds.len()]))
                .collect::<Result<_>>()?
        }
    };
    let inputs = json!({
        "trials": pairs.len(),
        "d": args.d,
        "pair": args.pair.as_ref().map(|p| p.display().to_string()),
        "ic_optimizer": ic_cfg,
    });
    let mut report = Report::new("nogo", inputs, tol, seed);

    let mut certified = 0;
    let mut worst_reconstruction: f64 = 0.0;
    let mut worst_transpose: f64 = 0.0;
    let mut min_pt: f64 = f64::INFINITY;
    let mut max_ic: f64 = 0.0;
    let mut all_zero_ic = true;
    for pair in &pairs {
        let cert = certify_entanglement_breaking(pair)?;
        worst_reconstruction = worst_reconstruction.max(cert.reconstruction_residual);
        worst_transpose = worst_transpose.max(cert.transpose_residual);
        min_pt = min_pt.min(cert.min_pt_eig);
        let ok = cert.ppt_ok && cert.reconstruction_residual <= 1e-9 && cert.transpose_residual <= 1e-9;
        if ok {
            certified += 1;
        }
        let ic = one_shot_coherent_info(&pair.switched()?.base, &ic_cfg)?.value;
        max_ic = max_ic.max(ic);
        all_zero_ic &= ic.abs() <= tol.coherent_info;
    }
    report.put("certified", certified);
    report.put("trials", pairs.len());
    report.put("max_reconstruction_residual", worst_reconstruction);
    report.put("max_transpose_residual", worst_transpose);
    report.put("min_pt_eigenvalue", min_pt);
    report.put("max_coherent_info", max_ic);
    report.pass = certified == pairs.len() && all_zero_ic && min_pt >= -tol.ppt;
    Ok(report)
}

pub fn cmd_classify(args: &ClassifyArgs, tol: &Tolerances, seed: u64) -> Result<Report> {
    let e = parse_channel(&args.channel)?;
    let inputs = json!({ "channel": ChannelJson::from_channel(&e) });
    let mut report = Report::new("classify", inputs, tol, seed);
    let cls = classify(&e)?;
    report.put("kind", cls.kind());
    let mut consistent = true;
    match &cls {
        QubitClassification::Unitary { u } => report.put("u", matrix_json(u)),
        QubitClassification::SelfAdjointPair { q, m1, m2, u } => {
            report.put("q", q);
            report.put("m1", vec3(*m1));
            report.put("m2", vec3(*m2));
            report.put("u", matrix_json(u));
        }
        QubitClassification::None => {}
    }
    if let Some(rebuilt) = cls.reconstruct() {
        let dist = choi_distance(&rebuilt, &e);
        report.put("reconstruction_distance", dist);
        consistent = dist <= tol.choi_equal;
    }
    let verdict = verify_maximal_activation(&e)?;
    report.put("activation", verdict.kind);
    report.put("eb_status", verdict.eb.status);
    report.put("hashing_bound", verdict.hashing_bound);
    report.pass = consistent;
    Ok(report)
}

/// Grid points `(i₀, i₁, i₂, i₃)/n` of the probability simplex.
pub fn simplex_grid(n: usize) -> Vec<[f64; 4]> {
    let mut out = Vec::new();
    let nf = n as f64;
    for a in 0..=n {
        for b in 0..=n - a {
            for c3 in 0..=n - a - b {
                let d = n - a - b - c3;
                out.push([a as f64 / nf, b as f64 / nf, c3 as f64 / nf, d as f64 / nf]);
            }
        }
    }
    out
}

pub const SWEEP_HEADER: &str = "p0,p1,p2,p3,q_plus,q_minus,eb,kl_switched,ic_formula,ic_clamped,q2way_lower";

pub fn sweep_csv(grid: usize) -> Result<(String, usize)> {
    let plus = ControlState::plus();
    let gamma = linalg::ket_plus();
    let mut csv = String::from(SWEEP_HEADER);
    csv.push('\n');
    let points = simplex_grid(grid);
    for raw in &points {
        let p = PauliVector::new(*raw)?;
        let e = pauli_channel(&p);
        let dec = pauli_switch_decomposition(&p, &plus)?;
        let eb = is_entanglement_breaking(&e).status == EbStatus::EntanglementBreaking;
        let kl = switched_kl_check(&e, &gamma)?.satisfied;
        let ic = switched_pauli_coherent_info(&p);
        let q2 = two_way_assisted_lower_bound(&p, &plus)?.value;
        let _ = writeln!(
            csv,
            "{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{},{},{:.6},{:.6},{:.6}",
            raw[0],
            raw[1],
            raw[2],
            raw[3],
            dec.q_plus,
            dec.q_minus,
            u8::from(eb),
            u8::from(kl),
            ic.unclamped.unwrap_or(ic.value),
            ic.value,
            q2
        );
    }
    Ok((csv, points.len()))
}

pub fn cmd_sweep(args: &SweepArgs, out: Option<&Path>, tol: &Tolerances, seed: u64) -> Result<Report> {
    if args.grid == 0 {
        return Err(Error::Parse("grid must be positive".into()));
    }
    let out = out.ok_or_else(|| Error::Parse("sweep needs --out for the CSV table".into()))?;
    let inputs = json!({ "grid": args.grid, "out": out.display().to_string() });
    let mut report = Report::new("sweep", inputs, tol, seed);
    let (csv, rows) = sweep_csv(args.grid)?;
    write_file(out, &csv)?;
    report.put("rows", rows);
    report.put("columns", SWEEP_HEADER.split(',').collect::<Vec<_>>());
    report.pass = true;
    Ok(report)
}
