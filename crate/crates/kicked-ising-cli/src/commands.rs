//! Subcommand definitions and implementations.

use clap::{Parser, Subcommand, ValueEnum};
use kicked_ising::*;
use std::result::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::value::RawValue;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Duration;

use crate::angle::parse_angle;
use crate::output::{fmt_f64, jnum, jnum_vec, write_text};
use crate::CliError;

const SCHEMA_VERSION: u32 = 1;

/// Env var overriding the sweep worker-pool size.
pub const WORKERS_ENV: &str = "KICKED_ISING_WORKERS";

#[derive(Parser, Debug)]
#[command(
    name = "kicked-ising",
    about = "Kicked infinite-range Ising model in the permutation-symmetric subspace",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evolve an initial coherent state and tabulate entanglement per step.
    Simulate(SimulateArgs),
    /// Eigenphase spectrum of the Floquet operator with degeneracy grouping.
    Spectrum(SpectrumArgs),
    /// Operator deviation δ(n) and period detection for one configuration.
    Periodicity(PeriodicityArgs),
    /// Regression of the numerical pipeline against the exact N = 5..11 solutions.
    Verify(VerifyArgs),
    /// Signature suites over lists of N and τ, one JSONL record per job.
    Sweep(SweepArgs),
    /// Cross-check the compressed pipeline against the 2^N brute-force path.
    OracleCheck(OracleCheckArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StateFlag {
    /// θ0 = 0, φ0 = 0 (the ⊗|0⟩ trajectory)
    AllZero,
    /// θ0 = π/2, φ0 = −π/2 (the ⊗|+⟩_y trajectory)
    PlusY,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(clap::Args, Debug)]
pub struct InitialStateArgs {
    /// Shortcut for the two reference trajectories.
    #[arg(long, value_enum, conflicts_with_all = ["theta", "phi"])]
    pub state: Option<StateFlag>,
    /// Polar angle θ0 of the coherent state (radians; accepts pi expressions).
    #[arg(long, value_parser = parse_angle, default_value = "0")]
    pub theta: f64,
    /// Azimuthal angle φ0 of the coherent state.
    #[arg(long, value_parser = parse_angle, default_value = "0")]
    pub phi: f64,
}

impl InitialStateArgs {
    fn params(&self) -> Result<CoherentStateParams, CliError> {
        match self.state {
            Some(StateFlag::AllZero) => Ok(CoherentStateParams::all_zero()),
            Some(StateFlag::PlusY) => Ok(CoherentStateParams::plus_y()),
            None => CoherentStateParams::new(self.theta, self.phi).map_err(Into::into),
        }
    }
}

#[derive(clap::Args, Debug)]
pub struct SimulateArgs {
    /// Number of qubits.
    #[arg(long = "n")]
    pub n_qubits: usize,
    /// Kick period τ (accepts pi expressions such as pi/4).
    #[arg(long, value_parser = parse_angle, default_value = "pi/4")]
    pub tau: f64,
    #[command(flatten)]
    pub initial: InitialStateArgs,
    /// Number of kicks to simulate (rows run from n = 0 to n = steps).
    #[arg(long, default_value_t = 48)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long = "n")]
    pub n_qubits: usize,
    #[arg(long, value_parser = parse_angle, default_value = "pi/4")]
    pub tau: f64,
    /// Tolerance for merging eigenphases into degeneracy groups.
    #[arg(long, default_value_t = 1e-8)]
    pub grouping_tol: f64,
    /// Assert that every eigenphase lies on the {kπ/4} grid (exit 2 if not).
    #[arg(long)]
    pub check_pi4_grid: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct PeriodicityArgs {
    #[arg(long = "n")]
    pub n_qubits: usize,
    #[arg(long, value_parser = parse_angle, default_value = "pi/4")]
    pub tau: f64,
    #[command(flatten)]
    pub initial: InitialStateArgs,
    /// δ(n) and the entropy series run up to this n.
    #[arg(long, default_value_t = 64)]
    pub n_max: usize,
    /// Operator periods are searched up to this bound.
    #[arg(long, default_value_t = 64)]
    pub max_period: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub period_tol: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub entropy_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub grouping_tol: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    /// Kick period; anything but π/4 makes the regression fail loudly,
    /// which doubles as a negative control of the harness itself.
    #[arg(long, value_parser = parse_angle, default_value = "pi/4")]
    pub tau: f64,
    /// Steps per trajectory in the entropy regression.
    #[arg(long, default_value_t = 48)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = VerifyFormat::Text)]
    pub format: VerifyFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VerifyFormat {
    Text,
    Json,
}

#[derive(clap::Args, Debug)]
pub struct SweepArgs {
    /// Comma-separated qubit counts, e.g. --n 6,20,40.
    #[arg(long = "n", value_delimiter = ',', required = true)]
    pub n_qubits: Vec<usize>,
    /// Comma-separated kick periods, e.g. --tau pi/4,0.5.
    #[arg(long, value_parser = parse_angle, value_delimiter = ',', required = true)]
    pub tau: Vec<f64>,
    #[command(flatten)]
    pub initial: InitialStateArgs,
    /// δ(n) window per job.
    #[arg(long, default_value_t = 200)]
    pub n_max: usize,
    /// Operator-period search bound per job.
    #[arg(long, default_value_t = 5000)]
    pub max_period: usize,
    /// Keep every k-th δ(n) sample in the records.
    #[arg(long, default_value_t = 1)]
    pub delta_stride: usize,
    /// Worker-pool size (overrides the KICKED_ISING_WORKERS env var).
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, default_value_t = 1e-9)]
    pub period_tol: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub entropy_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub grouping_tol: f64,
    /// Output JSONL file; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct OracleCheckArgs {
    /// Check N = 2 up to this size (hard cap 12).
    #[arg(long, default_value_t = 10)]
    pub max_qubits: usize,
    /// Kick periods to exercise.
    #[arg(long, value_parser = parse_angle, value_delimiter = ',', default_value = "pi/4,0.3")]
    pub taus: Vec<f64>,
    /// Random coherent states per (N, τ) pair.
    #[arg(long, default_value_t = 20)]
    pub states: usize,
    /// Evolution steps per state.
    #[arg(long, default_value_t = 30)]
    pub steps: usize,
    /// RNG seed (fixed default keeps the report deterministic).
    #[arg(long, default_value_t = 271828)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Spectrum(args) => spectrum(args),
        Command::Periodicity(args) => periodicity(args),
        Command::Verify(args) => verify(args),
        Command::Sweep(args) => sweep(args),
        Command::OracleCheck(args) => oracle_check(args),
    }
}

// ---- simulate ----------------------------------------------------------------

#[derive(Serialize)]
struct SimulateRow {
    n: usize,
    linear_entropy: Box<RawValue>,
    concurrence: Box<RawValue>,
}

#[derive(Serialize)]
struct SimulateOut {
    schema: u32,
    command: &'static str,
    n_qubits: usize,
    tau: Box<RawValue>,
    theta0: Box<RawValue>,
    phi0: Box<RawValue>,
    steps: usize,
    rows: Vec<SimulateRow>,
}

fn trajectory(
    n_qubits: usize,
    tau: f64,
    params: &CoherentStateParams,
    steps: usize,
) -> Result<Vec<(usize, f64, f64)>, CliError> {
    let op = build_floquet(n_qubits, tau)?;
    let mut state = coherent_state(params, n_qubits)?;
    let mut rows = Vec::with_capacity(steps + 1);
    for n in 0..=steps {
        if n > 0 {
            state = op.apply(&state)?;
        }
        let s = linear_entropy(&rdm1(&state));
        let c = if n_qubits >= 2 { concurrence(&rdm2(&state)?)? } else { 0.0 };
        rows.push((n, s, c));
    }
    Ok(rows)
}

fn simulate(args: SimulateArgs) -> Result<(), CliError> {
    let params = args.initial.params()?;
    let rows = trajectory(args.n_qubits, args.tau, &params, args.steps)?;
    let content = match args.format {
        Format::Csv => {
            let mut out = String::from("n,linear_entropy,concurrence\n");
            for (n, s, c) in &rows {
                let _ = writeln!(out, "{n},{},{}", fmt_f64(*s), fmt_f64(*c));
            }
            out
        }
        Format::Json => {
            let doc = SimulateOut {
                schema: SCHEMA_VERSION,
                command: "simulate",
                n_qubits: args.n_qubits,
                tau: jnum(args.tau),
                theta0: jnum(params.theta0()),
                phi0: jnum(params.phi0()),
                steps: args.steps,
                rows: rows
                    .iter()
                    .map(|(n, s, c)| SimulateRow {
                        n: *n,
                        linear_entropy: jnum(*s),
                        concurrence: jnum(*c),
                    })
                    .collect(),
            };
            to_pretty_json(&doc)?
        }
    };
    write_text(args.output.as_deref(), &content)?;
    Ok(())
}

// ---- spectrum ----------------------------------------------------------------

#[derive(Serialize)]
struct GroupOut {
    center: Box<RawValue>,
    multiplicity: usize,
}

#[derive(Serialize)]
struct SpectrumBody {
    eigenphases: Vec<Box<RawValue>>,
    groups: Vec<GroupOut>,
    grouping_tol: Box<RawValue>,
}

#[derive(Serialize)]
struct GridCheckOut {
    checked: bool,
    tolerance: Box<RawValue>,
    max_deviation: Box<RawValue>,
    ok: bool,
}

#[derive(Serialize)]
struct SpectrumOut {
    schema: u32,
    command: &'static str,
    n_qubits: usize,
    tau: Box<RawValue>,
    spectrum: SpectrumBody,
    #[serde(skip_serializing_if = "Option::is_none")]
    pi4_grid: Option<GridCheckOut>,
}

fn spectrum_body(report: &SpectrumReport) -> SpectrumBody {
    SpectrumBody {
        eigenphases: jnum_vec(report.eigenphases.iter().copied()),
        groups: report
            .groups
            .iter()
            .map(|g| GroupOut { center: jnum(g.center), multiplicity: g.multiplicity })
            .collect(),
        grouping_tol: jnum(report.grouping_tol),
    }
}

fn spectrum(args: SpectrumArgs) -> Result<(), CliError> {
    let op = build_floquet(args.n_qubits, args.tau)?;
    let report = op.quasienergy_spectrum(args.grouping_tol)?;
    let grid = if args.check_pi4_grid {
        let dev = report.max_deviation_from_grid(std::f64::consts::PI / 4.0);
        Some((dev, dev < 1e-8))
    } else {
        None
    };
    let doc = SpectrumOut {
        schema: SCHEMA_VERSION,
        command: "spectrum",
        n_qubits: args.n_qubits,
        tau: jnum(args.tau),
        spectrum: spectrum_body(&report),
        pi4_grid: grid.map(|(dev, ok)| GridCheckOut {
            checked: true,
            tolerance: jnum(1e-8),
            max_deviation: jnum(dev),
            ok,
        }),
    };
    write_text(args.output.as_deref(), &to_pretty_json(&doc)?)?;
    if let Some((dev, ok)) = grid {
        if !ok {
            return Err(CliError::Verification(format!(
                "eigenphases deviate from the π/4 grid by {dev:.3e} (tolerance 1e-8); \
                 N = {}, tau = {}",
                args.n_qubits,
                fmt_f64(args.tau)
            )));
        }
    }
    Ok(())
}

// ---- periodicity ---------------------------------------------------------------

#[derive(Serialize)]
struct SignatureOut {
    schema: u32,
    command: &'static str,
    n_qubits: usize,
    tau: Box<RawValue>,
    theta0: Box<RawValue>,
    phi0: Box<RawValue>,
    n_max: usize,
    max_period_checked: usize,
    operator_period: Option<usize>,
    entropy_period: Option<usize>,
    delta_n_start: usize,
    delta_stride: usize,
    delta: Vec<Box<RawValue>>,
    delta_mean: Box<RawValue>,
    spectrum: SpectrumBody,
}

fn signature_out(
    command: &'static str,
    report: &SignatureReport,
    n_max: usize,
    delta_stride: usize,
) -> SignatureOut {
    SignatureOut {
        schema: SCHEMA_VERSION,
        command,
        n_qubits: report.n_qubits,
        tau: jnum(report.tau),
        theta0: jnum(report.theta0),
        phi0: jnum(report.phi0),
        n_max,
        max_period_checked: report.max_period_checked,
        operator_period: report.operator_period,
        entropy_period: report.entropy_period,
        delta_n_start: 2,
        delta_stride,
        delta: jnum_vec(report.delta_series.iter().copied().step_by(delta_stride.max(1))),
        delta_mean: jnum(report.delta_mean),
        spectrum: spectrum_body(&report.spectrum),
    }
}

fn periodicity(args: PeriodicityArgs) -> Result<(), CliError> {
    let params = args.initial.params()?;
    let config = SignatureConfig {
        n_max: args.n_max,
        max_period: args.max_period,
        tolerances: SignatureTolerances {
            period_tol: args.period_tol,
            entropy_tol: args.entropy_tol,
            grouping_tol: args.grouping_tol,
        },
    };
    let report = run_signature_suite(args.n_qubits, args.tau, &params, &config)?;
    let doc = signature_out("periodicity", &report, args.n_max, 1);
    write_text(args.output.as_deref(), &to_pretty_json(&doc)?)?;
    Ok(())
}

// ---- verify ----------------------------------------------------------------

const VERIFY_ENTROPY_TOL: f64 = 1e-10;
const VERIFY_BLOCK_TOL: f64 = 1e-12;

#[derive(Serialize, Clone)]
struct VerifyCase {
    kind: &'static str,
    label: String,
    detail: String,
    status: &'static str,
}

#[derive(Serialize)]
struct VerifyOut {
    schema: u32,
    command: &'static str,
    tau: Box<RawValue>,
    steps: usize,
    cases: Vec<VerifyCase>,
    failures: usize,
    known_discrepancies: usize,
}

fn verify(args: VerifyArgs) -> Result<(), CliError> {
    let mut cases: Vec<VerifyCase> = Vec::new();
    let mut failures = 0usize;
    let mut known = 0usize;

    let push = |case: VerifyCase, cases: &mut Vec<VerifyCase>, failures: &mut usize, known: &mut usize| {
        match case.status {
            "fail" => *failures += 1,
            "known-discrepancy" => *known += 1,
            _ => {}
        }
        cases.push(case);
    };

    for n_qubits in 5..=11usize {
        let op = build_floquet(n_qubits, args.tau)?;
        // operator period against the exact constant
        let expected_t1 = expected_periods(n_qubits, InitialState::AllZero)?.operator_period;
        let detected = detect_operator_period(&op, 64, 1e-9);
        push(
            VerifyCase {
                kind: "operator-period",
                label: format!("N={n_qubits}"),
                detail: format!("detected {detected:?}, expected Some({expected_t1})"),
                status: if detected == Some(expected_t1) { "pass" } else { "fail" },
            },
            &mut cases,
            &mut failures,
            &mut known,
        );

        for state in [InitialState::AllZero, InitialState::AllPlusY] {
            let params = state.params();
            let mut psi = coherent_state(&params, n_qubits)?;
            let mut series = Vec::with_capacity(args.steps + 1);
            let mut max_dev = 0.0_f64;
            for n in 0..=args.steps {
                if n > 0 {
                    psi = op.apply(&psi)?;
                }
                let s = linear_entropy(&rdm1(&psi));
                series.push(s);
                let exact = analytic_entropy(n_qubits, state, n as u64)?;
                max_dev = max_dev.max((s - exact).abs());
            }
            let entropy_status = if max_dev < VERIFY_ENTROPY_TOL {
                "pass"
            } else if analytic::is_expected_failure(n_qubits, state) {
                "known-discrepancy"
            } else {
                "fail"
            };
            push(
                VerifyCase {
                    kind: "entropy",
                    label: format!("N={n_qubits} {}", state.label()),
                    detail: format!("max deviation {}", fmt_f64(max_dev)),
                    status: entropy_status,
                },
                &mut cases,
                &mut failures,
                &mut known,
            );

            let expected_t = expected_periods(n_qubits, state)?.entropy_period;
            let detected = detect_entropy_period(&series, 1e-9)?;
            push(
                VerifyCase {
                    kind: "entropy-period",
                    label: format!("N={n_qubits} {}", state.label()),
                    detail: format!("detected {detected:?}, expected Some({expected_t})"),
                    status: if detected == Some(expected_t) { "pass" } else { "fail" },
                },
                &mut cases,
                &mut failures,
                &mut known,
            );
        }
    }

    // exact 5-qubit block powers
    {
        let op = build_floquet(5, args.tau)?;
        let decomp = build_parity_basis(5)?;
        let basis = decomp.basis_matrix();
        let mut max_dev = 0.0_f64;
        for n in [1u64, 3, 7, 24] {
            let power = op.power(n)?;
            let rotated = basis.adjoint() * power * basis;
            let (exact_plus, exact_minus) = analytic_u5_blocks(n);
            let plus = rotated.view((0, 0), (3, 3)).clone_owned();
            let minus = rotated.view((3, 3), (3, 3)).clone_owned();
            max_dev = max_dev
                .max(kicked_ising::linalg::max_abs_entry(&(plus - exact_plus)))
                .max(kicked_ising::linalg::max_abs_entry(&(minus - exact_minus)));
        }
        push(
            VerifyCase {
                kind: "blocks",
                label: "N=5 U±^n, n ∈ {1,3,7,24}".into(),
                detail: format!("max deviation {}", fmt_f64(max_dev)),
                status: if max_dev < VERIFY_BLOCK_TOL { "pass" } else { "fail" },
            },
            &mut cases,
            &mut failures,
            &mut known,
        );
    }

    let content = match args.format {
        VerifyFormat::Json => to_pretty_json(&VerifyOut {
            schema: SCHEMA_VERSION,
            command: "verify",
            tau: jnum(args.tau),
            steps: args.steps,
            cases: cases.clone(),
            failures,
            known_discrepancies: known,
        })?,
        VerifyFormat::Text => {
            let mut out = format!("verify: tau = {}, steps = {}\n", fmt_f64(args.tau), args.steps);
            for case in &cases {
                let _ = writeln!(
                    out,
                    "  {:16} {:28} {:44} {}",
                    case.kind,
                    case.label,
                    case.detail,
                    case.status.to_uppercase()
                );
            }
            let _ = writeln!(
                out,
                "verify: {} ({} cases, {} failures, {} known discrepancies)",
                if failures == 0 { "PASS" } else { "FAIL" },
                cases.len(),
                failures,
                known
            );
            out
        }
    };
    write_text(args.output.as_deref(), &content)?;

    if failures > 0 {
        return Err(CliError::Verification(format!(
            "{failures} verification case(s) failed (tau = {})",
            fmt_f64(args.tau)
        )));
    }
    Ok(())
}

// ---- sweep ----------------------------------------------------------------

#[derive(Serialize)]
struct SweepErrorOut {
    schema: u32,
    command: &'static str,
    n_qubits: usize,
    tau: Box<RawValue>,
    error: String,
}

fn sweep(args: SweepArgs) -> Result<(), CliError> {
    if args.n_qubits.is_empty() {
        return Err(CliError::Usage("sweep needs at least one qubit count (--n)".into()));
    }
    if args.tau.is_empty() {
        return Err(CliError::Usage("sweep needs at least one kick period (--tau)".into()));
    }
    if args.delta_stride == 0 {
        return Err(CliError::Usage("--delta-stride must be positive".into()));
    }
    let params = args.initial.params()?;
    let config = SignatureConfig {
        n_max: args.n_max,
        max_period: args.max_period,
        tolerances: SignatureTolerances {
            period_tol: args.period_tol,
            entropy_tol: args.entropy_tol,
            grouping_tol: args.grouping_tol,
        },
    };

    let jobs: Vec<(usize, f64)> = args
        .n_qubits
        .iter()
        .flat_map(|&n| args.tau.iter().map(move |&t| (n, t)))
        .collect();

    let workers = args
        .workers
        .or_else(|| std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse().ok()));
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(w) = workers {
            if w == 0 {
                return Err(CliError::Usage("worker count must be positive".into()));
            }
            builder = builder.num_threads(w);
        }
        builder
            .build()
            .map_err(|e| CliError::Usage(format!("cannot build worker pool: {e}")))?
    };

    // jobs run concurrently; records are emitted in job order
    let results: Vec<Result<SignatureReport, kicked_ising::Error>> = pool.install(|| {
        use rayon::prelude::*;
        jobs.par_iter()
            .map(|&(n, tau)| run_signature_suite(n, tau, &params, &config))
            .collect()
    });

    let mut content = String::new();
    let mut any_failed = false;
    for (&(n, tau), result) in jobs.iter().zip(&results) {
        let line = match result {
            Ok(report) => {
                serde_json::to_string(&signature_out("sweep", report, args.n_max, args.delta_stride))
            }
            Err(err) => {
                any_failed = true;
                serde_json::to_string(&SweepErrorOut {
                    schema: SCHEMA_VERSION,
                    command: "sweep",
                    n_qubits: n,
                    tau: jnum(tau),
                    error: err.to_string(),
                })
            }
        }
        .map_err(|e| CliError::Numerical(format!("serialization failed: {e}")))?;
        content.push_str(&line);
        content.push('\n');
    }
    write_text(args.output.as_deref(), &content)?;

    if any_failed {
        return Err(CliError::Numerical(
            "one or more sweep jobs failed; see the error records in the output".into(),
        ));
    }
    Ok(())
}

// ---- oracle-check ----------------------------------------------------------------

const ORACLE_OVERLAP_TOL: f64 = 1e-10;
const ORACLE_RDM_TOL: f64 = 1e-12;

fn oracle_check(args: OracleCheckArgs) -> Result<(), CliError> {
    if args.max_qubits < 2 {
        return Err(CliError::Usage("oracle-check needs --max-qubits of at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut out = format!(
        "oracle-check: N = 2..{}, taus = [{}], {} states, {} steps, seed {}\n",
        args.max_qubits,
        args.taus.iter().map(|t| fmt_f64(*t)).collect::<Vec<_>>().join(", "),
        args.states,
        args.steps,
        args.seed
    );
    let mut trajectories = 0usize;
    let mut worst_overlap = 0.0_f64;
    let mut worst_rdm = 0.0_f64;
    let mut bench = String::new();

    for n_qubits in 2..=args.max_qubits {
        let mut sym_time = Duration::ZERO;
        let mut full_time = Duration::ZERO;
        let mut n_overlap = 0.0_f64;
        let mut n_rdm = 0.0_f64;
        for &tau in &args.taus {
            let op = build_floquet(n_qubits, tau)?;
            for _ in 0..args.states {
                let params = CoherentStateParams::new(
                    rng.gen_range(0.0..std::f64::consts::PI),
                    rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
                )?;
                let mut sym = coherent_state(&params, n_qubits)?;
                let mut full = FullState::from_coherent(&params, n_qubits)?;
                let t0 = std::time::Instant::now();
                for _ in 0..args.steps {
                    sym = op.apply(&sym)?;
                }
                sym_time += t0.elapsed();
                let t0 = std::time::Instant::now();
                for _ in 0..args.steps {
                    full = full_floquet_apply(&full, tau)?;
                }
                full_time += t0.elapsed();

                let proj = project_symmetric(&full);
                let overlap = sym.overlap(&proj.to_state(n_qubits)?)?.norm();
                n_overlap = n_overlap.max((overlap - 1.0).abs());
                let d1 = kicked_ising::linalg::max_abs_entry(
                    &(rdm1(&sym).matrix() - full_partial_trace(&full, &[0])?.matrix()),
                );
                let d2 = kicked_ising::linalg::max_abs_entry(
                    &(rdm2(&sym)?.matrix() - full_partial_trace(&full, &[0, 1])?.matrix()),
                );
                n_rdm = n_rdm.max(d1).max(d2);
                trajectories += 1;
            }
        }
        let _ = writeln!(
            out,
            "  N={n_qubits}: overlap defect {}, rdm deviation {}",
            fmt_f64(n_overlap),
            fmt_f64(n_rdm)
        );
        // cost asymmetry is measured and reported, never asserted; it goes to
        // stderr so the data output stays deterministic
        let per_step = args.states.max(1) * args.taus.len().max(1) * args.steps.max(1);
        let _ = writeln!(
            bench,
            "  N={n_qubits}: symmetric {:.2} µs/step, full {:.2} µs/step, ratio {:.1}",
            sym_time.as_secs_f64() * 1e6 / per_step as f64,
            full_time.as_secs_f64() * 1e6 / per_step as f64,
            full_time.as_secs_f64() / sym_time.as_secs_f64().max(1e-12)
        );
        worst_overlap = worst_overlap.max(n_overlap);
        worst_rdm = worst_rdm.max(n_rdm);
    }

    let pass = worst_overlap < ORACLE_OVERLAP_TOL && worst_rdm < ORACLE_RDM_TOL;
    let _ = writeln!(
        out,
        "oracle-check: {} ({} trajectories, worst overlap defect {}, worst rdm deviation {})",
        if pass { "PASS" } else { "FAIL" },
        trajectories,
        fmt_f64(worst_overlap),
        fmt_f64(worst_rdm)
    );
    write_text(args.output.as_deref(), &out)?;
    eprintln!("cost asymmetry (wall time per step):\n{bench}");

    if !pass {
        return Err(CliError::Verification(format!(
            "representations disagree: overlap defect {}, rdm deviation {}",
            fmt_f64(worst_overlap),
            fmt_f64(worst_rdm)
        )));
    }
    Ok(())
}

fn to_pretty_json<T: Serialize>(doc: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(doc)
        .map_err(|e| CliError::Numerical(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}
