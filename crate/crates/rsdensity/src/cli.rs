//! Argument parsing and subcommand dispatch.
//!
//! Exit codes: 0 success, 1 bad input or invalid data, 2 a checked
//! inequality failed (the report is still written).

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rsdensity_core::analytic::{
    mellin_kernel, smooth_sum_contour, smooth_sum_direct, Coefficients, ContourSpec, SmoothKernel,
};
use rsdensity_core::density::{
    amplified_exponents, choose_ell, choose_k0, crossover_theta, exponent_report,
    phase_aligned_weights, pointwise_threshold, simulate_chain_finite, simulate_chain_infty,
    AmplifiedPair, AmplifiedVerdict, ChainPlace, ChainReport,
};
use rsdensity_core::dseries::psd_check_matrix;
use rsdensity_core::error::Error as CoreError;
use rsdensity_core::powersum::{turan_lhs, turan_ratio, turan_sweep, PowerSumInstance};
use rsdensity_core::ranksel::{explicit_lower_bound, rs_coefficient, rs_matrix, rs_triple_sum, RsPair};
use rsdensity_core::repmodel::{
    rs_conductor_cap, sample_family_with, total_conductor, Family, SampleSpec,
};
use rsdensity_core::DEFAULT_TRUNCATION;
use serde_json::{json, Value};

use crate::io::{
    cell, num, pair, parse_complex, read_complex_list, read_family, write_atomic, FamilyFile,
    Format, Output,
};

#[derive(Debug, Parser)]
#[command(name = "rsdensity", version, about = "Rankin-Selberg coefficient algebra and density exponents for synthetic families")]
pub struct Cli {
    /// Write the result here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Seed for the ChaCha8 generator.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Truncation degree K of the local power series.
    #[arg(long, global = true, default_value_t = DEFAULT_TRUNCATION)]
    pub truncation: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check unitarity, parameter bounds and conductor data of a family file.
    Validate {
        #[arg(long)]
        family: PathBuf,
    },
    /// Rankin-Selberg coefficients a_{π×π̃'}(m) and their matrices.
    #[command(subcommand)]
    Rs(RsCommand),
    /// Density exponents and chain simulations.
    #[command(subcommand)]
    Density(DensityCommand),
    /// Mellin transforms of the smooth kernels and smoothed coefficient sums.
    #[command(subcommand)]
    Analytic(AnalyticCommand),
    /// Turán power-sum window max_{M<k≤2M} |Σ z_j^k| against max |z_j|^k.
    Turan(TuranArgs),
    /// Draw a seeded random family and write it as a family file.
    Sample(SampleArgs),
}

#[derive(Debug, Subcommand)]
pub enum RsCommand {
    /// Coefficient matrix [a_{π×π̃'}(m)] over the family, or one entry with --pair.
    Coeff {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        m: u64,
        /// Two ids separated by a comma.
        #[arg(long)]
        pair: Option<String>,
    },
    /// Nonnegative definiteness of [a_{π×π̃'}(p^k)] for k = 0..=kmax.
    Psd {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        kmax: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Lower bound Σ w_π conj(w_π') a_{π×π̃'}(p^k) ≥ k^{-1} |Σ w_π P_k(π)|².
    Lowerbound {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        k: usize,
        /// JSON list of |F| weights.
        #[arg(long)]
        weights: PathBuf,
    },
    /// Triple sum Σ_{π,π'} w_{π,π'} Σ_{m≤M} u_m a_{π×π̃'}(m) (M/m)^{β_π+conj(β_π')}.
    Triplesum {
        #[arg(long)]
        family: PathBuf,
        /// JSON list with u_m at position m-1.
        #[arg(long)]
        u: PathBuf,
        /// JSON list of |F| shifts β_π.
        #[arg(long)]
        beta: PathBuf,
        #[arg(long = "M")]
        big_m: f64,
        /// JSON list of |F|² pair weights, row-major; all ones if omitted.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Base {
    /// Analytic conductor 𝔠, exponent n(1-2θ)/(2θ).
    Conductor,
    /// Rankin-Selberg conductor cap 𝔠_RS, exponent (1-2θ)/(4θ).
    Rs,
}

#[derive(Debug, Subcommand)]
pub enum DensityCommand {
    /// Density exponents at θ for rank n.
    Exponent {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        theta: f64,
        /// Which exponent to report as primary.
        #[arg(long, value_enum, default_value = "conductor")]
        base: Base,
    },
    /// θ* where the L-function exponent meets the summed spectral exponent.
    Crossover {
        #[arg(long)]
        n: usize,
    },
    /// Conductor and modulus exponents of twisted and Kloosterman-amplified bounds.
    Amplified {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        q: f64,
    },
    /// Run the finite (prime power) or Archimedean chain on a family.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("place").required(true).args(["finite", "infty"])))]
pub struct SimulateArgs {
    #[arg(long)]
    pub family: PathBuf,
    /// Chain over m = p^k, k ∈ [k0+1, k0+n].
    #[arg(long, requires = "prime", conflicts_with_all = ["infty", "ell"])]
    pub finite: bool,
    /// Chain over the smoothed sum at length ℓ.
    #[arg(long, requires = "theta", conflicts_with_all = ["prime", "k0", "weights"])]
    pub infty: bool,
    #[arg(long)]
    pub prime: Option<u64>,
    /// Defaults to round(log_p(|F| √𝔠_RS)) clamped to [1, K-n].
    #[arg(long)]
    pub k0: Option<usize>,
    /// JSON list of |F| unit weights; phase-aligned at k0+1 if omitted.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Defaults to ceil(|F| √𝔠_RS).
    #[arg(long)]
    pub ell: Option<u64>,
    #[arg(long)]
    pub theta: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelKind {
    /// Φ(x) = x^β e^{-x²}.
    Gauss,
    /// Φ(x) = x^B e^{-√x}, B real.
    Sqrtexp,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long, value_enum)]
    pub kernel: KernelKind,
    /// β (or B) as RE,IM.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0")]
    pub exponent: Complex64,
}

#[derive(Debug, Subcommand)]
pub enum AnalyticCommand {
    /// Mellin transform Φ̃(s) = ∫ x^{s-1} Φ(x) dx of a smooth kernel.
    Mellin {
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
    },
    /// Smoothed sum Σ a(m) Φ(m/M), directly or by the inverse Mellin contour.
    #[command(group(clap::ArgGroup::new("method").required(true).args(["direct", "contour"])))]
    Smoothsum {
        /// JSON list with a(m) at position m-1.
        #[arg(long)]
        coeffs: PathBuf,
        #[arg(long = "M")]
        big_m: f64,
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long)]
        direct: bool,
        #[arg(long)]
        contour: bool,
        #[arg(long, default_value_t = 2.0, requires = "contour")]
        sigma: f64,
        #[arg(long = "T", default_value_t = 60.0, requires = "contour")]
        t_max: f64,
        #[arg(long, default_value_t = 0.05, requires = "contour")]
        step: f64,
    },
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["z", "sweep"])))]
pub struct TuranArgs {
    /// JSON list of the z_j.
    #[arg(long, requires = "big_m")]
    pub z: Option<PathBuf>,
    #[arg(long = "M")]
    pub big_m: Option<u64>,
    /// Minimum ratio over random instances for each M in --M-list.
    #[arg(long, requires_all = ["n", "trials"], conflicts_with = "big_m")]
    pub sweep: bool,
    #[arg(long = "N")]
    pub n: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long = "M-list", value_delimiter = ',', default_value = "1,2,4,8,16,32,64")]
    pub m_list: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub size: usize,
    /// Lower bound on max |Re μ| at every sampled place.
    #[arg(long)]
    pub theta: f64,
    /// Unramified primes.
    #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
    pub places: Vec<u64>,
    /// Primes that carry segment data.
    #[arg(long, value_delimiter = ',')]
    pub ramified: Vec<u64>,
}

/// Why a run failed.
#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0:#}")]
    Input(anyhow::Error),
    #[error("{0}")]
    Check(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Check(_) => 2,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<CoreError>() {
            Some(CoreError::Quadrature { .. }) => Failure::Check(format!("{e:#}")),
            _ => Failure::Input(e),
        }
    }
}

/// A command's output plus the first failed check, if any.
pub struct Report {
    pub output: Output,
    pub failed: Option<String>,
}

impl Report {
    fn ok(output: Output) -> Self {
        Self { output, failed: None }
    }

    fn check(output: Output, pass: bool, what: impl FnOnce() -> String) -> Self {
        Self {
            output,
            failed: (!pass).then(what),
        }
    }
}

/// Parses `argv`, runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("rsdensity: {f}");
            f.code()
        }
    }
}

pub fn execute(cli: &Cli) -> std::result::Result<(), Failure> {
    let report = dispatch(cli)?;
    let bytes = report.output.render(cli.format)?;
    match &cli.output {
        Some(path) => write_atomic(path, &bytes)?,
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(&bytes)
                .context("writing stdout")?;
        }
    }
    match report.failed {
        Some(msg) => Err(Failure::Check(msg)),
        None => Ok(()),
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let k = cli.truncation;
    match &cli.command {
        Command::Validate { family } => validate(family),
        Command::Rs(c) => match c {
            RsCommand::Coeff { family, m, pair } => rs_coeff(&read_family(family)?, *m, pair.as_deref(), k),
            RsCommand::Psd { family, prime, kmax, tol } => rs_psd(&read_family(family)?, *prime, *kmax, *tol, k),
            RsCommand::Lowerbound { family, prime, k: kk, weights } => {
                rs_lowerbound(&read_family(family)?, *prime, *kk, &read_complex_list(weights)?)
            }
            RsCommand::Triplesum { family, u, beta, big_m, weights } => {
                let f = read_family(family)?;
                let w = match weights {
                    Some(p) => read_complex_list(p)?,
                    None => vec![Complex64::new(1.0, 0.0); f.len() * f.len()],
                };
                let v = rs_triple_sum(&f, &w, &read_complex_list(u)?, &read_complex_list(beta)?, *big_m, k)?;
                let mut out = Output::new(json!({ "M": big_m, "value": pair(v) }), &["M", "value"]);
                out.row(vec![num(*big_m), cell(v)]);
                Ok(Report::ok(out))
            }
        },
        Command::Density(c) => match c {
            DensityCommand::Exponent { n, theta, base } => exponent(*n, *theta, *base),
            DensityCommand::Crossover { n } => {
                let t = crossover_theta(*n)?;
                let pt = pointwise_threshold(*n)?;
                let mut out = Output::new(
                    json!({ "n": n, "crossover": t, "pointwise_threshold": pt }),
                    &["n", "crossover", "pointwise_threshold"],
                );
                out.row(vec![n.to_string(), num(t), num(pt)]);
                Ok(Report::ok(out))
            }
            DensityCommand::Amplified { n, theta, q } => amplified(*n, *theta, *q),
            DensityCommand::Simulate(a) => simulate(a, k),
        },
        Command::Analytic(c) => match c {
            AnalyticCommand::Mellin { kernel, s } => {
                let v = mellin_kernel(&make_kernel(kernel)?, *s)?;
                let mut out = Output::new(json!({ "s": pair(*s), "value": pair(v) }), &["s", "value"]);
                out.row(vec![cell(*s), cell(v)]);
                Ok(Report::ok(out))
            }
            AnalyticCommand::Smoothsum { coeffs, big_m, kernel, contour, sigma, t_max, step, .. } => {
                let c = Coefficients::from_slice(&read_complex_list(coeffs)?);
                let kern = make_kernel(kernel)?;
                if *contour {
                    let spec = ContourSpec::new(*sigma, *t_max, *step)?;
                    let r = smooth_sum_contour(&c, *big_m, &kern, &spec)?;
                    let mut out = Output::new(
                        json!({
                            "M": big_m, "method": "contour", "value": pair(r.value),
                            "error_estimate": r.error_estimate, "scale": r.scale,
                            "sigma": sigma, "T": t_max, "step": step,
                        }),
                        &["M", "method", "value", "error_estimate"],
                    );
                    out.row(vec![num(*big_m), "contour".into(), cell(r.value), num(r.error_estimate)]);
                    Ok(Report::ok(out))
                } else {
                    let v = smooth_sum_direct(&c, *big_m, &kern)?;
                    let mut out = Output::new(
                        json!({ "M": big_m, "method": "direct", "value": pair(v) }),
                        &["M", "method", "value", "error_estimate"],
                    );
                    out.row(vec![num(*big_m), "direct".into(), cell(v), String::new()]);
                    Ok(Report::ok(out))
                }
            }
        },
        Command::Turan(a) => turan(a, cli.seed),
        Command::Sample(a) => {
            let f = sample_family_with(
                &SampleSpec {
                    rank: a.n,
                    size: a.size,
                    theta_floor: a.theta,
                    places: a.places.clone(),
                    ramified: a.ramified.clone(),
                },
                cli.seed,
            )?;
            let json = serde_json::to_value(FamilyFile::from_family(&f))?;
            Ok(Report::ok(Output::new(json, &[])))
        }
    }
}

fn make_kernel(k: &KernelArgs) -> Result<SmoothKernel> {
    Ok(match k.kernel {
        KernelKind::Gauss => SmoothKernel::gauss_power(k.exponent)?,
        KernelKind::Sqrtexp => {
            if k.exponent.im != 0.0 {
                bail!("the sqrtexp exponent must be real");
            }
            SmoothKernel::sqrt_exp_power(k.exponent.re)?
        }
    })
}

fn validate(path: &Path) -> Result<Report> {
    let f = read_family(path)?;
    let mut reps = Vec::new();
    let mut out = Output::new(Value::Null, &["id", "place", "rule", "detail"]);
    let mut bad = 0;
    for rep in f.reps() {
        let v = rsdensity_core::repmodel::validate(rep);
        bad += usize::from(!v.is_empty());
        for x in &v {
            out.row(vec![rep.id.clone(), x.place.to_string(), x.rule.to_string(), x.detail.clone()]);
        }
        reps.push(json!({
            "id": rep.id,
            "valid": v.is_empty(),
            "total_conductor": total_conductor(rep),
            "violations": v.iter().map(|x| json!({
                "place": x.place.to_string(), "rule": x.rule.to_string(), "detail": x.detail,
            })).collect::<Vec<_>>(),
        }));
    }
    out.json = json!({
        "n": f.rank(),
        "size": f.len(),
        "valid": bad == 0,
        "rs_conductor_cap": rs_conductor_cap(&f),
        "reps": reps,
    });
    if bad > 0 {
        // Invalid data is an input error, but the report is still useful.
        let bytes = out.render(Format::Json)?;
        bail!(
            "{bad} of {} representations are invalid\n{}",
            f.len(),
            String::from_utf8_lossy(&bytes).trim_end()
        );
    }
    Ok(Report::ok(out))
}

fn ids(f: &Family) -> Vec<String> {
    f.reps().iter().map(|r| r.id.clone()).collect()
}

fn rs_coeff(f: &Family, m: u64, pair_ids: Option<&str>, k: usize) -> Result<Report> {
    if let Some(spec) = pair_ids {
        let (a, b) = spec.split_once(',').context("--pair expects ID,ID")?;
        let rep = |id: &str| f.get(id).with_context(|| format!("no representation with id {id:?}"));
        let v = rs_coefficient(&RsPair::new(rep(a)?, rep(b)?)?, m, k)?;
        let mut out = Output::new(
            json!({ "m": m, "pair": [a, b], "coefficient": pair(v) }),
            &["m", "a", "b", "coefficient"],
        );
        out.row(vec![m.to_string(), a.into(), b.into(), cell(v)]);
        return Ok(Report::ok(out));
    }
    let cm = rs_matrix(f, m, k)?;
    let names = ids(f);
    let mut header = vec!["id".to_string()];
    header.extend(names.iter().cloned());
    let mut out = Output::new(Value::Null, &[]);
    out.header = header;
    let mut rows = Vec::new();
    for (i, name) in names.iter().enumerate() {
        let row: Vec<Complex64> = (0..cm.size).map(|j| cm.get(i, j)).collect();
        let mut cells = vec![name.clone()];
        cells.extend(row.iter().map(|&z| cell(z)));
        out.row(cells);
        rows.push(row.into_iter().map(pair).collect::<Vec<_>>());
    }
    out.json = json!({ "m": m, "ids": names, "matrix": rows });
    Ok(Report::ok(out))
}

fn rs_psd(f: &Family, p: u64, kmax: usize, tol: f64, k: usize) -> Result<Report> {
    if kmax > k {
        bail!("--kmax {kmax} exceeds the truncation degree {k}");
    }
    let mut out = Output::new(Value::Null, &["k", "m", "min_eigenvalue", "trace", "pass"]);
    let mut checks = Vec::new();
    let mut all = true;
    for kk in 0..=kmax {
        let m = p
            .checked_pow(kk as u32)
            .with_context(|| format!("{p}^{kk} overflows"))?;
        let cm = rs_matrix(f, m, k)?;
        let (min, trace, pass) = psd_check_matrix(&cm.entries, cm.size, tol);
        all &= pass;
        out.row(vec![kk.to_string(), m.to_string(), num(min), num(trace), pass.to_string()]);
        checks.push(json!({ "k": kk, "m": m, "min_eigenvalue": min, "trace": trace, "pass": pass }));
    }
    out.json = json!({ "prime": p, "kmax": kmax, "tol": tol, "pass": all, "checks": checks });
    Ok(Report::check(out, all, || format!("coefficient matrix at p={p} is not PSD within tol {tol}")))
}

fn rs_lowerbound(f: &Family, p: u64, k: usize, w: &[Complex64]) -> Result<Report> {
    let lb = explicit_lower_bound(f, w, p, k)?;
    let pass = lb.holds();
    let mut out = Output::new(
        json!({
            "prime": p, "k": k, "lhs": lb.lhs, "lhs_im": lb.lhs_im,
            "rhs": lb.rhs, "slack": lb.slack, "pass": pass,
        }),
        &["prime", "k", "lhs", "lhs_im", "rhs", "slack", "pass"],
    );
    out.row(vec![
        p.to_string(),
        k.to_string(),
        num(lb.lhs),
        num(lb.lhs_im),
        num(lb.rhs),
        num(lb.slack),
        pass.to_string(),
    ]);
    Ok(Report::check(out, pass, || format!("lower bound fails with slack {}", lb.slack)))
}

fn exponent(n: usize, theta: f64, base: Base) -> Result<Report> {
    let r = exponent_report(n, theta)?;
    let primary = match base {
        Base::Conductor => r.exponent_lfn,
        Base::Rs => r.exponent_rs,
    };
    let base_name = match base {
        Base::Conductor => "conductor",
        Base::Rs => "rs",
    };
    let mut out = Output::new(
        json!({
            "n": n, "theta": theta, "base": base_name, "exponent": primary,
            "exponent_lfn": r.exponent_lfn, "exponent_rs": r.exponent_rs,
            "exponent_spectral": r.exponent_spectral,
            "exponent_spectral_summed": r.exponent_spectral_summed,
            "pointwise_threshold": r.pointwise_threshold, "crossover": r.crossover,
        }),
        &[
            "n", "theta", "base", "exponent", "exponent_lfn", "exponent_rs",
            "exponent_spectral", "exponent_spectral_summed", "pointwise_threshold", "crossover",
        ],
    );
    out.row(vec![
        n.to_string(),
        num(theta),
        base_name.into(),
        num(primary),
        num(r.exponent_lfn),
        num(r.exponent_rs),
        num(r.exponent_spectral),
        num(r.exponent_spectral_summed),
        num(r.pointwise_threshold),
        r.crossover.map(num).unwrap_or_default(),
    ]);
    Ok(Report::ok(out))
}

fn amplified(n: usize, theta: f64, q: f64) -> Result<Report> {
    let r = amplified_exponents(n, theta, q)?;
    let verdict = match r.verdict {
        AmplifiedVerdict::PickQOne => "pick_q_one",
        AmplifiedVerdict::Boundary => "boundary",
        AmplifiedVerdict::AmplificationWins => "amplification_wins",
    };
    let js = |a: &AmplifiedPair| {
        json!({ "rs_exponent": a.rs_exponent, "q_exponent": a.q_exponent, "q_factor": a.q_factor })
    };
    let mut out = Output::new(
        json!({
            "n": n, "theta": theta, "q": q, "twisted": js(&r.twisted),
            "kloosterman": js(&r.kloosterman), "verdict": verdict,
            "boundary_theta": r.boundary_theta,
        }),
        &["variant", "rs_exponent", "q_exponent", "q_factor", "verdict", "boundary_theta"],
    );
    for (name, a) in [("twisted", &r.twisted), ("kloosterman", &r.kloosterman)] {
        out.row(vec![
            name.into(),
            num(a.rs_exponent),
            num(a.q_exponent),
            num(a.q_factor),
            verdict.into(),
            num(r.boundary_theta),
        ]);
    }
    Ok(Report::ok(out))
}

fn simulate(a: &SimulateArgs, k: usize) -> Result<Report> {
    let f = read_family(&a.family)?;
    let rep = if a.finite {
        let p = a.prime.context("--finite needs --prime")?;
        let k0 = match a.k0 {
            Some(v) => v,
            None => choose_k0(&f, p, k)?,
        };
        let w = match &a.weights {
            Some(path) => read_complex_list(path)?,
            None => phase_aligned_weights(&f, p, (k0 + 1) as u32)?,
        };
        simulate_chain_finite(&f, p, k0, &w, k)?
    } else {
        let theta = a.theta.context("--infty needs --theta")?;
        let ell = a.ell.unwrap_or_else(|| choose_ell(&f));
        simulate_chain_infty(&f, ell, theta, k)?
    };
    let pass = rep.pass;
    let slack = rep.min_slack();
    Ok(Report::check(chain_output(&rep), pass, || {
        format!("chain check fails, minimum slack {slack}")
    }))
}

fn chain_output(r: &ChainReport) -> Output {
    let place = match r.place {
        ChainPlace::Prime(p) => json!(p),
        ChainPlace::Infinity => json!("infinity"),
    };
    let steps: Vec<Value> = r
        .steps
        .iter()
        .map(|s| {
            json!({
                "k": s.k, "s_value": s.s_value, "s_imag": s.s_imag,
                "lower_bound": s.lower_bound, "slack": s.slack, "pass": s.pass,
            })
        })
        .collect();
    let turan: Vec<Value> = r
        .turan
        .iter()
        .map(|t| {
            json!({
                "id": t.id, "k_star": t.k_star, "window_max": t.window_max,
                "window_sum": t.window_sum, "ratio": t.ratio, "max_alpha_pow": t.max_alpha_pow,
            })
        })
        .collect();
    let mut out = Output::new(
        json!({
            "place": place, "family_size": r.family_size, "rank": r.rank,
            "parameter": r.parameter, "theta": r.theta, "conductor_cap": r.conductor_cap,
            "steps": steps, "turan": turan, "window_max": r.window_max,
            "turan_reference": r.turan_reference, "upper_reference": r.upper_reference,
            "min_slack": r.min_slack(), "pass": r.pass,
        }),
        &["k", "s_value", "s_imag", "lower_bound", "slack", "pass"],
    );
    for s in &r.steps {
        out.row(vec![
            s.k.to_string(),
            num(s.s_value),
            num(s.s_imag),
            num(s.lower_bound),
            num(s.slack),
            s.pass.to_string(),
        ]);
    }
    out
}

fn turan(a: &TuranArgs, seed: u64) -> Result<Report> {
    if a.sweep {
        let n = a.n.context("--sweep needs --N")?;
        let trials = a.trials.context("--sweep needs --trials")?;
        let recs = turan_sweep(n, &a.m_list, trials, seed)?;
        let mut out = Output::new(Value::Null, &["N", "M", "trials", "min_ratio", "worst"]);
        let mut js = Vec::new();
        for r in &recs {
            let worst: Vec<String> = r.worst.iter().map(|&z| cell(z)).collect();
            out.row(vec![
                r.n.to_string(),
                r.m.to_string(),
                r.trials.to_string(),
                num(r.min_ratio),
                worst.join(";"),
            ]);
            js.push(json!({
                "N": r.n, "M": r.m, "trials": r.trials, "min_ratio": r.min_ratio,
                "worst": r.worst.iter().map(|&z| pair(z)).collect::<Vec<_>>(),
            }));
        }
        out.json = json!({ "seed": seed, "sweep": js });
        return Ok(Report::ok(out));
    }
    let path = a.z.as_ref().context("turan needs --z or --sweep")?;
    let big_m = a.big_m.context("--z needs --M")?;
    let inst = PowerSumInstance::new(read_complex_list(path)?, big_m)?;
    let lhs = turan_lhs(&inst);
    let ratio = turan_ratio(&inst)?;
    let mut out = Output::new(
        json!({
            "N": inst.n(), "M": big_m, "k_star": lhs.k_star, "value": lhs.value,
            "normalized": lhs.normalized, "ratio": ratio,
        }),
        &["N", "M", "k_star", "value", "normalized", "ratio"],
    );
    out.row(vec![
        inst.n().to_string(),
        big_m.to_string(),
        lhs.k_star.to_string(),
        num(lhs.value),
        num(lhs.normalized),
        num(ratio),
    ]);
    Ok(Report::ok(out))
}
