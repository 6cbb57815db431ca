//! Library half of the `etf` command-line tool. [`run`] parses arguments,
//! dispatches the subcommand and maps failures to exit codes (see [`exit`]).

pub mod args;
mod error;
pub mod files;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use etf_core::bounds::{certify, BoundFamily, BoundReport};
use etf_core::entropy::{DetectionEfficiency, OrderAlpha};
use etf_core::frames::{naimark_complement, optimize_etf, orthonormal_basis_frame, simplex_etf, OptimizeOptions};
use etf_core::measurement::{outcome_distribution, povm_from_frame, Povm};
use etf_core::numerics::{random_density, DensityMatrix};
use etf_core::witness::{
    convolution_povm, correlation_test, joint_etf_distribution, max_entangled_state, random_separable_state,
    separability_maxprob_test, separability_tsallis_test, steering_test, BipartiteDensityMatrix, WitnessVerdict,
};
use etf_core::{Frame64, Real};

pub use args::Cli;
use args::*;
pub use error::{exit, CliError, CliResult};
use files::{density_json, frame_json, read_frame, read_state, write_output};

pub const BOUNDS_HEADER: [&str; 6] = ["bound_name", "alpha", "bound_value", "achieved", "slack", "saturated"];
pub const WITNESS_HEADER: [&str; 5] = ["criterion", "alpha", "statistic", "threshold", "violated"];
pub const TOL_ENV: &str = "ETF_TOL";

/// Runs the tool and returns the process exit code. Data goes to `stdout`
/// only when an output path is `-`; diagnostics go to `stderr`.
pub fn run<I, A>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = write!(stderr, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.code
        }
    }
}

fn tolerance(flag: Option<f64>) -> CliResult<f64> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => s.trim().parse().map_err(|_| CliError::usage(format!("{TOL_ENV}={s} is not a number")))?,
            Err(_) => f64::VALIDATION_TOL,
        },
    };
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::usage(format!("tolerance must be positive, got {tol}")));
    }
    Ok(tol)
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<u8> {
    let tol = tolerance(cli.tol)?;
    match cli.command {
        Command::Frame(FrameCommand::Gen(a)) => frame_gen(a, tol, stdout, stderr),
        Command::Frame(FrameCommand::Validate(a)) => frame_validate(a, tol, stderr),
        Command::Frame(FrameCommand::Complement(a)) => {
            let frame = read_frame(&a.input, tol)?;
            emit_frame(&naimark_complement(&frame)?, None, &a.out, tol, stdout, stderr)
        }
        Command::State(StateCommand::Random(a)) => state_random(a, stdout, stderr),
        Command::State(StateCommand::Maxent(a)) => {
            let rho = max_entangled_state::<f64>(a.d)?;
            write_output(&a.out, &density_json(rho.density(), Some((a.d, a.d)), None), stdout)?;
            Ok(exit::OK)
        }
        Command::Measure(a) => measure(a, tol, stdout),
        Command::Bounds(a) => bounds(a, tol, stdout, stderr),
        Command::Witness(a) => witness(&a.frame, &a.state, a.mode, &a.alphas, &a.out, tol, stdout),
        Command::Steer(a) => witness(&a.frame, &a.state, WitnessMode::Steer, &a.alphas, &a.out, tol, stdout),
    }
}

fn need(value: Option<usize>, flag: &str) -> CliResult<usize> {
    value.ok_or_else(|| CliError::usage(format!("--{flag} is required for this frame kind")))
}

fn frame_gen(a: FrameGenArgs, tol: f64, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<u8> {
    let mut seed = None;
    let frame = match a.kind {
        FrameKind::Basis => {
            let d = need(a.d, "d")?;
            if a.n.is_some_and(|n| n != d) {
                return Err(CliError::usage("a basis frame has n = d"));
            }
            orthonormal_basis_frame(d)?
        }
        FrameKind::Simplex => {
            let d = need(a.d, "d")?;
            if a.n.is_some_and(|n| n != d + 1) {
                return Err(CliError::usage("a simplex frame has n = d + 1"));
            }
            simplex_etf(d)?
        }
        FrameKind::Optimize => {
            let (d, n) = (need(a.d, "d")?, need(a.n, "n")?);
            let mut options = OptimizeOptions::default();
            if let Some(r) = a.restarts {
                options.restarts = r;
            }
            writeln!(stderr, "seed={}", a.seed)?;
            seed = Some(a.seed);
            let found = optimize_etf::<f64>(d, n, a.seed, &options)?;
            writeln!(
                stderr,
                "optimizer: restart {} after {} iterations, residual {:.3e}",
                found.restart, found.iterations, found.residual
            )?;
            found.frame
        }
        FrameKind::Complement => {
            let input = a.input.as_ref().ok_or_else(|| CliError::usage("--input is required for --kind complement"))?;
            naimark_complement(&read_frame(input, tol)?)?
        }
    };
    emit_frame(&frame, seed, &a.out, tol, stdout, stderr)
}

fn emit_frame(
    frame: &Frame64,
    seed: Option<u64>,
    out: &str,
    tol: f64,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CliResult<u8> {
    let frame = frame.clone().canonicalized();
    let report = frame.report(tol);
    write!(stderr, "{report}")?;
    write_output(out, &frame_json(&frame, seed), stdout)?;
    Ok(if report.passed() { exit::OK } else { exit::CHECK_FAILED })
}

fn frame_validate(a: FrameValidateArgs, tol: f64, stderr: &mut dyn Write) -> CliResult<u8> {
    // read with a loose tolerance so that failing frames still get a report
    let frame = read_frame(&a.input, 1.0)?;
    let report = frame.report(tol);
    write!(stderr, "{report}")?;
    Ok(if report.passed() { exit::OK } else { exit::CHECK_FAILED })
}

fn state_random(a: StateRandomArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<u8> {
    writeln!(stderr, "seed={}", a.seed)?;
    let text = match a.separable {
        Some(k) => {
            if a.rank.is_some() {
                return Err(CliError::usage("--rank does not apply to --separable states"));
            }
            let rho = random_separable_state::<f64>(a.d, k, a.seed)?;
            density_json(rho.density(), Some((a.d, a.d)), Some(a.seed))
        }
        None => density_json(&random_density::<f64>(a.d, a.rank.unwrap_or(a.d), a.seed)?, None, Some(a.seed)),
    };
    write_output(&a.out, &text, stdout)?;
    Ok(exit::OK)
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::usage(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::usage(e.to_string()))
}

fn measure(a: MeasureArgs, tol: f64, stdout: &mut dyn Write) -> CliResult<u8> {
    let frame = read_frame(&a.frame, tol)?;
    let state = read_state(&a.state, tol)?;
    let dist = outcome_distribution(&povm_from_frame(&frame)?, state.density())?;
    let rows = dist.probs().iter().enumerate().map(|(j, p)| vec![j.to_string(), num(*p)]);
    write_output(&a.out, &csv_text(&["outcome", "probability"], rows)?, stdout)?;
    Ok(exit::OK)
}

fn parse_alphas(raw: &[String]) -> CliResult<Vec<OrderAlpha<f64>>> {
    raw.iter().map(|s| s.parse::<OrderAlpha<f64>>().map_err(|e| CliError::usage(format!("alpha {s:?}: {e}")))).collect()
}

fn parse_families(raw: &[String]) -> CliResult<Vec<BoundFamily>> {
    if raw.iter().any(|s| s.trim().eq_ignore_ascii_case("all")) {
        return Ok(BoundFamily::ALL.to_vec());
    }
    raw.iter().map(|s| s.parse().map_err(|_| CliError::usage(format!("unknown bound family {s:?}")))).collect()
}

/// Shortest representation that reads back to the same `f64`, with an
/// exponent for very small or large magnitudes.
fn num(x: f64) -> String {
    format!("{x:?}")
}

fn bound_row(r: &BoundReport<f64>) -> Vec<String> {
    vec![
        r.bound_name.to_string(),
        r.alpha.map(|a| a.to_string()).unwrap_or_default(),
        num(r.bound_value),
        num(r.achieved_value),
        num(r.slack),
        r.saturated.to_string(),
    ]
}

fn bounds(a: BoundsArgs, tol: f64, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<u8> {
    let frame = read_frame(&a.frame, tol)?;
    let alphas = parse_alphas(&a.alphas)?;
    let families = parse_families(&a.family)?;
    let eta = a.eta.map(DetectionEfficiency::new).transpose()?;
    if families.contains(&BoundFamily::Inefficiency) && eta.is_none() && a.family.iter().all(|f| f != "all") {
        return Err(CliError::usage("the inefficiency family needs --eta"));
    }
    let states: Vec<DensityMatrix<f64>> = match (&a.state, a.random) {
        (Some(path), _) => vec![read_state(path, tol)?.density().clone()],
        (None, Some(k)) => {
            writeln!(stderr, "seed={}", a.seed)?;
            let d = frame.d();
            (0..k as u64).map(|i| random_density(d, 1 + (i as usize) % d, a.seed + i)).collect::<Result<_, _>>()?
        }
        (None, None) => return Err(CliError::usage("give --state or --random")),
    };
    let mut reports = Vec::new();
    for rho in &states {
        reports.extend(certify(&frame, rho, &alphas, &families, eta)?);
    }
    write_output(&a.out, &csv_text(&BOUNDS_HEADER, reports.iter().map(bound_row))?, stdout)?;
    let violations = reports.iter().filter(|r| r.violated()).count();
    writeln!(stderr, "{} rows over {} state(s), {violations} violation(s)", reports.len(), states.len())?;
    Ok(if violations == 0 { exit::OK } else { exit::CHECK_FAILED })
}

fn verdict_row(v: &WitnessVerdict<f64>) -> Vec<String> {
    vec![
        v.criterion.to_string(),
        v.alpha.map(num).unwrap_or_default(),
        num(v.statistic),
        num(v.threshold),
        v.violated.to_string(),
    ]
}

/// B-side POVM of the convolution test: the conjugate frame relabelled
/// `k ↦ −k mod n`, so that `M_0 = Σ_j E_j ⊗ E_j^*` collects the matched pairs.
fn matched_convolution(frame: &Frame64) -> CliResult<Povm<f64>> {
    let conj = povm_from_frame(&frame.conjugate())?.to_povm();
    let n = conj.len();
    let relabelled = (0..n).map(|k| conj.elements()[(n - k) % n].clone()).collect();
    let b = Povm::new(relabelled, f64::VALIDATION_TOL)?;
    Ok(convolution_povm(&povm_from_frame(frame)?.to_povm(), &b)?)
}

pub fn witness_verdicts(
    frame: &Frame64,
    rho: &BipartiteDensityMatrix<f64>,
    mode: WitnessMode,
    alphas: &[f64],
) -> CliResult<Vec<WitnessVerdict<f64>>> {
    if rho.d_a() != frame.d() || rho.d_b() != frame.d() {
        return Err(CliError::usage(format!("state is {}⊗{}, frame has d={}", rho.d_a(), rho.d_b(), frame.d())));
    }
    let params = frame.params();
    let mut out = Vec::new();
    if matches!(mode, WitnessMode::G | WitnessMode::All) {
        out.push(correlation_test(&joint_etf_distribution(frame, rho)?, params)?);
    }
    if matches!(mode, WitnessMode::Convolution | WitnessMode::All) {
        let dist = matched_convolution(frame)?.distribution(rho.density())?;
        out.push(separability_maxprob_test(dist.probs(), params)?);
        for &alpha in alphas {
            out.push(separability_tsallis_test(dist.probs(), alpha, params)?);
        }
    }
    if matches!(mode, WitnessMode::Steer | WitnessMode::All) {
        let joint = joint_etf_distribution(frame, rho)?;
        for &alpha in alphas {
            out.push(steering_test(&joint, alpha, params)?);
        }
    }
    Ok(out)
}

fn witness(
    frame_path: &std::path::Path,
    state_path: &std::path::Path,
    mode: WitnessMode,
    alphas: &[f64],
    out: &str,
    tol: f64,
    stdout: &mut dyn Write,
) -> CliResult<u8> {
    let frame = read_frame(frame_path, tol)?;
    let rho = read_state(state_path, tol)?.bipartite(frame.d())?;
    let verdicts = witness_verdicts(&frame, &rho, mode, alphas)?;
    write_output(out, &csv_text(&WITNESS_HEADER, verdicts.iter().map(verdict_row))?, stdout)?;
    Ok(exit::OK)
}
