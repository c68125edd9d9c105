mod svg;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use torus_spectra::moment::{self, DistanceProfile, TrialRecord};
use torus_spectra::objective::{self, PATH_STEP};
use torus_spectra::spectral;
use torus_spectra::{
    build_cell, make_builtin, reduce_basis, Basis2, Error, Kernel, KernelSpec, Point, QuadratureConfig, TorusParams,
};

const DEFAULT_SEED: u64 = 7;
const THREADS_ENV: &str = "TORUS_SPECTRA_THREADS";
const GRAD_TOL: f64 = 1e-5;
/// Typed coordinates this close to the boundary of U are snapped onto it,
/// so rounded values such as `0.5,0.8660254` name the boundary point.
const INPUT_SNAP: f64 = 1e-6;

#[derive(Parser, Debug)]
#[command(name = "torus-spectra", version, about = "Operator norms and moduli-space checks for flat tori")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Moduli point `a,b` in the fundamental domain.
    #[arg(long, global = true, value_parser = parse_torus, conflicts_with = "basis", allow_hyphen_values = true)]
    torus: Option<TorusParams>,
    /// Lattice basis `m11,m12,m21,m22` (columns are generators), reduced first.
    #[arg(long, global = true, value_parser = parse_basis, allow_hyphen_values = true)]
    basis: Option<Basis2>,
    /// Kernel profile: constant | gaussian:L | invpow:EPS:P | ball:R
    #[arg(long, global = true, default_value = "gaussian:0.3")]
    kernel: KernelSpec,
    #[arg(long, global = true, default_value_t = 1e-10, value_parser = positive)]
    rel_tol: f64,
    #[arg(long, global = true, default_value_t = 1e-12, value_parser = positive)]
    abs_tol: f64,
    #[arg(long, global = true, default_value_t = 30)]
    max_depth: u32,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    format: Option<Format>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operator norm, Hilbert-Schmidt quantity and top eigenvalue.
    Norms,
    /// Eigenvalues over the dual lattice.
    Spectrum {
        #[arg(long, default_value_t = 4.0, value_parser = positive)]
        radius: f64,
    },
    /// J on a grid over the fundamental domain.
    Sweep {
        #[arg(long, default_value_t = 51)]
        na: usize,
        #[arg(long, default_value_t = 51)]
        nb: usize,
        #[arg(long, default_value_t = 2.0, value_parser = positive)]
        bmax: f64,
    },
    /// Rearrangement path from --torus to the equilateral torus.
    Optimize {
        #[arg(long, default_value_t = PATH_STEP, value_parser = positive)]
        step: f64,
    },
    /// Closed-form gradient against central differences.
    GradCheck,
    /// Inequalities behind the sign of the partial derivatives.
    VerifyClaims {
        #[arg(long, default_value_t = 1001)]
        z_samples: usize,
    },
    /// Randomized checks of the moment inequalities (JSON lines).
    MomentVerify {
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// SVG of the Voronoi cell with its incircle and circumcircle.
    VoronoiSvg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Suite {
    All,
    Theorem,
    Lemma,
    Lemma2,
    VertexCount,
}

fn parse_list<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let vals: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    vals.try_into().map_err(|v: Vec<f64>| format!("expected {N} comma-separated numbers, got {}", v.len()))
}

fn parse_torus(s: &str) -> Result<TorusParams, String> {
    let [a, b] = parse_list::<2>(s)?;
    let outside = || format!("({a}, {b}) is outside the fundamental domain U");
    if !(a.is_finite() && b.is_finite()) || a < -INPUT_SNAP || a > 0.5 + INPUT_SNAP {
        return Err(outside());
    }
    let a_snapped = a.clamp(0.0, 0.5);
    let gap = a_snapped * a_snapped + b * b - 1.0;
    if gap < -INPUT_SNAP {
        return Err(outside());
    }
    let b = if gap < 0.0 { (1.0 - a_snapped * a_snapped).sqrt() } else { b };
    TorusParams::new(a_snapped, b).map_err(|e| e.to_string())
}

fn parse_basis(s: &str) -> Result<Basis2, String> {
    let [m11, m12, m21, m22] = parse_list::<4>(s)?;
    Ok(Basis2::new(m11, m12, m21, m22))
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("must be positive, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

/// Failure classes mapped onto the exit-code contract.
enum Failure {
    Verification(String),
    Usage(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BadParameter(_) | Error::OutsideDomain { .. } | Error::DomainError(_) => Failure::Usage(e.to_string()),
            Error::MonotonicityViolated { .. } => Failure::Verification(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("output: {e}"))
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    common: Common,
    cfg: QuadratureConfig,
    kernel: Kernel,
}

impl Ctx {
    /// Parameters from --torus or the reduced --basis; the square torus when
    /// neither is given.
    fn params(&self) -> Result<(TorusParams, Option<serde_json::Value>), Failure> {
        match (&self.common.torus, &self.common.basis) {
            (Some(p), _) => Ok((*p, None)),
            (None, Some(b)) => {
                let r = reduce_basis(b).map_err(|e| Failure::Numeric(format!("basis reduction failed: {e}")))?;
                Ok((r.params, Some(serde_json::to_value(r).expect("reduction serializes"))))
            }
            (None, None) => Ok((TorusParams::SQUARE, None)),
        }
    }

    fn format(&self, allowed: &[Format]) -> Result<Format, Failure> {
        let f = self.common.format.unwrap_or(allowed[0]);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(Failure::Usage(format!("format {f:?} is not available for this command")))
        }
    }

    fn emit(&self, text: &str) -> Outcome {
        match &self.common.out {
            Some(path) => fs::write(path, text)?,
            None => io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn emit_json<T: Serialize>(&self, value: &T) -> Outcome {
        let mut s = serde_json::to_string_pretty(value).expect("report serializes");
        s.push('\n');
        self.emit(&s)
    }
}

fn cmd_norms(ctx: &Ctx) -> Outcome {
    ctx.format(&[Format::Json])?;
    let (p, reduction) = ctx.params()?;
    let operator_norm = objective::j(p, &ctx.kernel, &ctx.cfg)?;
    let hs_norm = spectral::hs_norm(p, &ctx.kernel, &ctx.cfg)?;
    let gamma0 = spectral::gamma(p, Point::ORIGIN, &ctx.kernel, &ctx.cfg)?;
    let mut out = json!({
        "params": p,
        "kernel": ctx.kernel.label(),
        "operator_norm": operator_norm,
        "hs_norm": hs_norm,
        "gamma0": gamma0,
    });
    if let Some(r) = reduction {
        out["reduction"] = r;
    }
    ctx.emit_json(&out)
}

fn cmd_spectrum(ctx: &Ctx, radius: f64) -> Outcome {
    ctx.format(&[Format::Json])?;
    let (p, _) = ctx.params()?;
    let rep = spectral::spectrum(p, &ctx.kernel, radius, &ctx.cfg)?;
    ctx.emit_json(&rep)?;
    if !rep.dominance {
        return Err(Failure::Verification("eigenvalue dominance failed".into()));
    }
    Ok(())
}

fn cmd_sweep(ctx: &Ctx, na: usize, nb: usize, bmax: f64) -> Outcome {
    let fmt = ctx.format(&[Format::Csv, Format::Json])?;
    let s = objective::grid_sweep(&ctx.kernel, &ctx.cfg, na, nb, bmax)?;
    match fmt {
        Format::Json => ctx.emit_json(&s)?,
        _ => ctx.emit(&s.to_csv())?,
    }
    eprintln!("argmax a={:.16e} b={:.16e} J={:.16e}", s.argmax.a, s.argmax.b, s.argmax.value);
    Ok(())
}

fn cmd_optimize(ctx: &Ctx, step: f64) -> Outcome {
    ctx.format(&[Format::Json])?;
    let (p, _) = ctx.params()?;
    let r = objective::optimize_path(p, &ctx.kernel, &ctx.cfg, step)?;
    ctx.emit_json(&r)
}

fn cmd_grad_check(ctx: &Ctx) -> Outcome {
    ctx.format(&[Format::Json])?;
    let (p, _) = ctx.params()?;
    let r = objective::grad_check(p, &ctx.kernel, &ctx.cfg)?;
    ctx.emit_json(&r)?;
    if !r.passes(GRAD_TOL) {
        return Err(Failure::Verification(format!("gradient agreement {:.3e} >= {GRAD_TOL:e}", r.agreement)));
    }
    Ok(())
}

fn cmd_verify_claims(ctx: &Ctx, z_samples: usize) -> Outcome {
    ctx.format(&[Format::Json])?;
    let (p, _) = ctx.params()?;
    let claims = objective::claim_check(p, z_samples);
    let mut ok = claims.ok();
    let mut out = json!({ "claims": claims });
    if p.a() > 0.0 && p.a() < 0.5 {
        let t = objective::transformed_integrals(p, &ctx.kernel, &ctx.cfg)?;
        ok &= t.identity_residual < 1e-8 && t.i1 >= 0.0 && t.i2 >= 0.0 && t.i3 >= 0.0;
        out["transformed"] = serde_json::to_value(t).expect("serializes");
    }
    if p.a() == 0.5 {
        let l = objective::lemma_jb_inequality(p, &ctx.kernel, z_samples, &ctx.cfg)?;
        ok &= l.inequality_holds;
        out["lemma_jb"] = serde_json::to_value(l).expect("serializes");
    }
    ctx.emit_json(&out)?;
    if !ok {
        return Err(Failure::Verification("a claim failed".into()));
    }
    Ok(())
}

fn cmd_moment_verify(ctx: &Ctx, trials: u64, suite: Suite) -> Outcome {
    ctx.format(&[Format::Json])?;
    let f = DistanceProfile::exponential();
    let seed = ctx.common.seed;
    let run = |s: Suite| -> Result<Vec<TrialRecord>, Error> {
        match s {
            Suite::Theorem => moment::suite_moment_theorem(seed, trials, &f, &ctx.cfg),
            Suite::Lemma => moment::suite_moment_lemma(seed, trials, &f, &ctx.cfg),
            Suite::Lemma2 => moment::suite_lemma2(seed, trials, 1.0, &f, &ctx.cfg),
            Suite::VertexCount => moment::suite_vertex_count(seed, trials),
            Suite::All => unreachable!(),
        }
    };
    let suites = match suite {
        Suite::All => vec![Suite::Theorem, Suite::Lemma, Suite::Lemma2, Suite::VertexCount],
        s => vec![s],
    };
    let mut lines = String::new();
    let mut summary = Vec::new();
    let mut all_ok = true;
    for s in suites {
        let recs = run(s)?;
        let pass = recs.iter().filter(|r| r.ok).count();
        all_ok &= pass == recs.len();
        if let Some(first) = recs.first() {
            summary.push(format!("{} {pass}/{}", first.suite, recs.len()));
        }
        for r in &recs {
            lines.push_str(&serde_json::to_string(r).expect("record serializes"));
            lines.push('\n');
        }
    }
    ctx.emit(&lines)?;
    eprintln!("moment-verify seed={seed}: {}", summary.join(", "));
    if !all_ok {
        return Err(Failure::Verification("a moment inequality failed".into()));
    }
    Ok(())
}

fn cmd_voronoi_svg(ctx: &Ctx) -> Outcome {
    ctx.format(&[Format::Svg])?;
    let (p, _) = ctx.params()?;
    ctx.emit(&svg::render_cell(&build_cell(p)))
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    configure_threads()?;
    let cfg = QuadratureConfig {
        rel_tol: cli.common.rel_tol,
        abs_tol: cli.common.abs_tol,
        max_depth: cli.common.max_depth,
        ..QuadratureConfig::default()
    };
    cfg.validate()?;
    let kernel = make_builtin(cli.common.kernel)?;
    let ctx = Ctx {
        common: cli.common,
        cfg,
        kernel,
    };
    match cli.command {
        Command::Norms => cmd_norms(&ctx),
        Command::Spectrum { radius } => cmd_spectrum(&ctx, radius),
        Command::Sweep { na, nb, bmax } => cmd_sweep(&ctx, na, nb, bmax),
        Command::Optimize { step } => cmd_optimize(&ctx, step),
        Command::GradCheck => cmd_grad_check(&ctx),
        Command::VerifyClaims { z_samples } => cmd_verify_claims(&ctx, z_samples),
        Command::MomentVerify { trials, suite } => cmd_moment_verify(&ctx, trials, suite),
        Command::VoronoiSvg => cmd_voronoi_svg(&ctx),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(m)) => {
            eprintln!("numeric failure: {m}");
            ExitCode::from(3)
        }
    }
}
