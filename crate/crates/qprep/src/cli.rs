//! The `qprep` command line.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when a bound,
//! reconstruction or suite check fails.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qprep_core::analysis::{
    overlap_fidelity, state_distance, success_lower_bound, total_bound, Execution, ReportConfig,
    BOUND_SLACK,
};
use qprep_core::diag::{
    peel_synthesize, quantize, reconstruct_gates, sparse_synthesize, GateCounts, SynthesisResult,
};
use qprep_core::prep::{
    build, execute, fast_path, required_precision, run_circuit, Mode, PrecisionConfig, TargetVector,
};
use qprep_core::sim::StateVector;
use serde::Serialize;

use crate::gatelist::{parse_gate_list, write_gate_list, GateList};
use crate::input::{read_phases, read_vector};
use crate::random::random_vector;
use crate::report::ReportFormat;
use crate::suites;

#[derive(Debug, Parser)]
#[command(
    name = "qprep",
    version,
    about = "Phase-estimation state preparation toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a preparation circuit for a target vector and check its bound.
    Prepare(PrepareArgs),
    /// Synthesize a diagonal phase table into X and controlled-Z-power gates.
    SynthDiag(SynthArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Simulate a gate-list file from |0…0⟩.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    #[value(alias = "deterministic")]
    Det,
    #[value(alias = "probabilistic")]
    Prob,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Det => Mode::Deterministic,
            ModeArg::Prob => Mode::Probabilistic,
        }
    }
}

#[derive(Debug, Args)]
pub struct PrepareArgs {
    /// Vector file (JSON or CSV).
    #[arg(required_unless_present = "random", conflicts_with = "random")]
    pub input: Option<PathBuf>,
    /// Use a random vector on this many qubits instead of a file.
    #[arg(long, value_name = "N")]
    pub random: Option<usize>,
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    /// Target distance; picks the register widths.
    #[arg(long, conflicts_with_all = ["t", "t_prime"])]
    pub epsilon: Option<f64>,
    /// Phase-estimation register width.
    #[arg(long, requires = "t_prime")]
    pub t: Option<u32>,
    /// Phase-stage grid level.
    #[arg(long = "t-prime", requires = "t")]
    pub t_prime: Option<u32>,
    /// Write the gate list here.
    #[arg(long)]
    pub emit: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Simulate the full circuit (default).
    #[arg(long, conflicts_with = "fast_path")]
    pub full_circuit: bool,
    /// Compute the prepared state directly from the quantized angles.
    #[arg(long)]
    pub fast_path: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Phase file (JSON or CSV).
    pub input: PathBuf,
    /// Grid level.
    #[arg(long)]
    pub m: u32,
    /// Use the sparse construction on the nonzero entries.
    #[arg(long)]
    pub sparse: bool,
    /// Write the gate list here; otherwise it goes to stdout.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Bounds,
    Synth,
    Dualpath,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub n: usize,
    /// Random cases (default: 20 for bounds and dualpath, 0 for synth).
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Results file; `.csv`, `.jsonl` or JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Gate-list file.
    pub gates: PathBuf,
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum Outcome {
    Ok,
    Violation(String),
}

#[derive(Debug, Serialize)]
struct QubitCounts {
    pe: usize,
    data: usize,
    ancilla: usize,
    total: usize,
}

/// JSON report of `qprep prepare`.
#[derive(Debug, Serialize)]
struct PrepareReport {
    config: ReportConfig,
    execution: Execution,
    seed: Option<u64>,
    qubits: QubitCounts,
    gate_count: usize,
    circuit_gate_counts: GateCounts,
    /// Synthesis counts of the diagonal operators.
    gate_counts: GateCounts,
    /// 2-norm distance to the target, no global-phase alignment.
    measured_distance: f64,
    /// `|⟨target|prepared⟩|`, insensitive to global phase.
    overlap_fidelity: f64,
    theoretical_bound: f64,
    success_probability: Option<f64>,
    success_lower_bound: Option<f64>,
    pe_residual: Option<f64>,
    satisfied: bool,
    amplitudes: Vec<[f64; 2]>,
}

fn amplitudes(state: &StateVector) -> Vec<[f64; 2]> {
    state.amplitudes().iter().map(|a| [a.re, a.im]).collect()
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

pub fn prepare(args: &PrepareArgs) -> Result<Outcome> {
    let (x, seed): (TargetVector, Option<u64>) = match (&args.input, args.random) {
        (Some(path), None) => (read_vector(path)?, None),
        (None, Some(n)) => {
            if n == 0 || n > 20 {
                bail!("--random needs 1..=20 qubits");
            }
            (random_vector(n, args.seed), Some(args.seed))
        }
        _ => bail!("give either an input file or --random"),
    };
    let n = x.num_qubits();
    let mode: Mode = args.mode.into();
    let cfg = match (args.epsilon, args.t, args.t_prime) {
        (Some(eps), None, None) => required_precision(n, eps, mode)?,
        (None, Some(t), Some(tp)) => PrecisionConfig::new(mode, t, tp),
        _ => bail!("give exactly one of --epsilon or --t with --t-prime"),
    };
    let built = build(&x, &cfg)?;
    let execution = if args.fast_path {
        Execution::FastPath
    } else {
        Execution::FullCircuit
    };
    let (state, probability, residual) = match execution {
        Execution::FullCircuit => {
            let p = execute(&built)?;
            (p.state, p.success_probability, Some(p.pe_residual))
        }
        Execution::FastPath => {
            let (s, p) = fast_path(&x, &cfg, true)?;
            (s, p, None)
        }
    };

    if let Some(path) = &args.emit {
        let list = GateList {
            n,
            num_qubits: built.circuit.num_qubits(),
            registers: Some(built.registers.clone()),
            gates: built.circuit.gates().to_vec(),
        };
        std::fs::write(path, write_gate_list(&list))
            .with_context(|| format!("writing {}", path.display()))?;
    }

    let target = x.state();
    let probabilistic = mode == Mode::Probabilistic;
    let measured_distance = state_distance(&target, &state)?;
    let theoretical_bound = args.epsilon.unwrap_or_else(|| total_bound(n, &cfg));
    let lower = probabilistic.then(|| success_lower_bound(&x));
    let success_probability = probabilistic.then_some(probability);
    let satisfied = measured_distance <= theoretical_bound + BOUND_SLACK
        && match (success_probability, lower) {
            (Some(p), Some(lb)) => p >= lb - BOUND_SLACK,
            _ => true,
        };
    let registers = &built.registers;
    let report = PrepareReport {
        config: ReportConfig {
            n,
            t: cfg.t,
            t_prime: cfg.t_prime,
            m: cfg.t,
            mode,
            epsilon: args.epsilon,
        },
        execution,
        seed,
        qubits: QubitCounts {
            pe: registers.pe.len(),
            data: registers.data.len(),
            ancilla: usize::from(registers.ancilla.is_some()),
            total: registers.total(),
        },
        gate_count: built.circuit.len(),
        circuit_gate_counts: GateCounts::from_gates(built.circuit.gates()),
        gate_counts: built.diagonal_gate_counts.clone(),
        measured_distance,
        overlap_fidelity: overlap_fidelity(&target, &state)?,
        theoretical_bound,
        success_probability,
        success_lower_bound: lower,
        pe_residual: residual,
        satisfied,
        amplitudes: amplitudes(&state),
    };
    write_or_print(args.report.as_deref(), &to_json(&report))?;
    Ok(if satisfied {
        Outcome::Ok
    } else {
        Outcome::Violation(format!(
            "distance {measured_distance:e} exceeds bound {theoretical_bound:e} or probability below its bound"
        ))
    })
}

pub fn synth_diag(args: &SynthArgs) -> Result<Outcome> {
    if args.m < 1 {
        bail!("--m must be at least 1");
    }
    let phases = read_phases(&args.input)?;
    let spec = quantize(&phases, args.m)?;
    let n = spec.num_qubits();
    let m = spec.level();
    let support = spec.support();
    let (result, bound): (SynthesisResult, u64) = if args.sparse {
        let r = sparse_synthesize(&spec, &support)?;
        (r, support.len() as u64 * (2 * n as u64 + m as u64))
    } else {
        (peel_synthesize(&spec), m as u64 * ((1u64 << n) - 1))
    };
    let gates = result.to_gates();
    let exact = reconstruct_gates(&gates, n, m)
        .map(|nums| nums == spec.numerators())
        .unwrap_or(false);

    let list = GateList {
        n,
        num_qubits: n,
        registers: None,
        gates: gates.clone(),
    };
    let text = write_gate_list(&list);
    let summary = format!(
        "n={n} m={m} method={}\ngates={} bound={bound}\ncounts={}\nglobal_phase_gates={}\nreconstruction={}\n",
        if args.sparse { "sparse" } else { "peel" },
        result.counts.total(),
        result.counts,
        gates.len() - result.gates.len(),
        if exact { "exact" } else { "mismatch" },
    );
    match &args.emit {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            print!("{summary}");
        }
        None => {
            print!("{text}");
            eprint!("{summary}");
        }
    }
    Ok(if exact {
        Outcome::Ok
    } else {
        Outcome::Violation("synthesized gates do not reproduce the phase table".into())
    })
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let outcome = match args.suite {
        Suite::Bounds => suites::bounds(args.n, args.trials.unwrap_or(20), args.seed)?,
        Suite::Synth => suites::synth(args.n, args.trials.unwrap_or(0), args.seed)?,
        Suite::Dualpath => suites::dualpath(args.n, args.trials.unwrap_or(20), args.seed)?,
    };
    if let Some(path) = &args.out {
        let text = outcome.render(ReportFormat::from_path(path));
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    let suite = format!("{:?}", args.suite).to_lowercase();
    println!(
        "suite={suite} n={} cells={} satisfied={}",
        args.n,
        outcome.cells,
        outcome.cells - outcome.failures.len()
    );
    if outcome.failures.is_empty() {
        Ok(Outcome::Ok)
    } else {
        for f in &outcome.failures {
            eprintln!("unsatisfied: {f}");
        }
        Ok(Outcome::Violation(format!(
            "{} unsatisfied cells",
            outcome.failures.len()
        )))
    }
}

#[derive(Debug, Serialize)]
struct SimulationOutput {
    num_qubits: usize,
    data_qubits: usize,
    success_probability: Option<f64>,
    pe_residual: Option<f64>,
    amplitudes: Vec<[f64; 2]>,
}

pub fn simulate(args: &SimulateArgs) -> Result<Outcome> {
    let text = std::fs::read_to_string(&args.gates)
        .with_context(|| format!("reading {}", args.gates.display()))?;
    let list = parse_gate_list(&text).with_context(|| format!("in {}", args.gates.display()))?;
    let circuit = list.circuit()?;
    let output = match &list.registers {
        Some(registers) => {
            let p = run_circuit(&circuit, registers)?;
            SimulationOutput {
                num_qubits: list.num_qubits,
                data_qubits: registers.data.len(),
                success_probability: registers.ancilla.map(|_| p.success_probability),
                pe_residual: Some(p.pe_residual),
                amplitudes: amplitudes(&p.state),
            }
        }
        None => SimulationOutput {
            num_qubits: list.num_qubits,
            data_qubits: list.num_qubits,
            success_probability: None,
            pe_residual: None,
            amplitudes: amplitudes(&circuit.simulate()?),
        },
    };
    write_or_print(args.out.as_deref(), &to_json(&output))?;
    Ok(Outcome::Ok)
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Prepare(a) => prepare(a),
        Command::SynthDiag(a) => synth_diag(a),
        Command::Verify(a) => verify(a),
        Command::Simulate(a) => simulate(a),
    }
}

/// Parses `std::env::args`, runs the command and maps the result to an exit
/// code.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violation(msg)) => {
            eprintln!("qprep: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("qprep: {e:#}");
            ExitCode::from(1)
        }
    }
}
