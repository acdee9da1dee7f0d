//! `mac`: exact computations with Macdonald operators, their eigenfunctions
//! and the rank-one affine layer.
//!
//! Exit codes: 0 success, 1 a check failed, 2 invalid input, 3 a resource
//! limit was hit.

mod output;
mod suites;

use clap::{Parser, Subcommand, ValueEnum};
use mac_core::affine::character::affine_character;
use mac_core::affine::experimental::dominant_trace_symmetry;
use mac_core::affine::extract::{
    commutator, extract_affine_operator, holdout_residual, leading_terms_ok, sample_points, samples_needed, symmetric_action, Source,
};
use mac_core::chars::WeightChar;
use mac_core::eigen::{expand_psi, macdonald_poly_oracle};
use mac_core::roots::FiniteWeight;
use mac_exact::{parse_scalar, Scalar};
use output::{CliError, Format, RunConfig};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "mac", version, about = "Exact Macdonald-operator computations")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for the ChaCha8 generator used by randomized checks.
    #[arg(long, global = true, default_value_t = suites::DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Macdonald polynomial P_λ in the monomial basis.
    Poly {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i64>,
    },
    /// Eigenfunction series ψ_θ to a given height.
    Psi {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        height: u32,
        /// `symbolic`, `lambda:<l1,…,ln>` or `values:<θ(e_1),…,θ(e_n)>`.
        #[arg(long, default_value = "symbolic")]
        theta: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest n (commute) or rank (other suites use fixed ranges).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        depth: Option<u32>,
        #[arg(long)]
        height: Option<u32>,
    },
    /// Affine layer (n = 2 for the quantum-group side).
    Affine {
        #[command(subcommand)]
        cmd: AffineCmd,
    },
    /// Reports that are not checks.
    Experimental {
        #[command(subcommand)]
        cmd: ExperimentalCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    /// Pairwise commutativity of M^r on seeded random symmetric polynomials.
    Commute,
    /// ψ at dominant weights against the polynomial oracle.
    Polynomials,
    /// Trace factorization Ψ = φψ and the C₁ trace identity, rank one.
    CentralTrace,
    /// Affine characters, kernel degeneration and operator extraction.
    Affine,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Commute => "commute",
            Suite::Polynomials => "polynomials",
            Suite::CentralTrace => "central-trace",
            Suite::Affine => "affine",
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum SourceArg {
    /// Fit M̃ against Ψ.
    Trace,
    /// Fit M = φ⁻¹M̃φ against ψ = Ψ/φ.
    Normalized,
}

#[derive(Subcommand)]
enum AffineCmd {
    /// Truncated character of L(Λ_r).
    Char {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, default_value_t = 2)]
        depth: u32,
    },
    /// Extract M̃^{ω̂_0}, M̃^{ω̂_1} from traces and cross-validate.
    Extract {
        #[arg(long, default_value_t = 2)]
        depth: u32,
        #[arg(long, default_value_t = 2)]
        height: u32,
        /// Minimum number of fitting samples per level; raised to the
        /// number the character requires.
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        holdout: usize,
        #[arg(long, value_enum, default_value_t = SourceArg::Trace)]
        source: SourceArg,
        /// Multiplicity of imaginary roots in φ (normalized source).
        #[arg(long, default_value_t = 1)]
        imag_mult: u32,
    },
}

#[derive(Subcommand)]
enum ExperimentalCmd {
    /// ψ = Ψ/φ at θ_λ, λ = lω_1 + kε, and finite-Weyl symmetry of its slices.
    DominantTrace {
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, default_value_t = 1)]
        level: u32,
        #[arg(long, default_value_t = 4)]
        height: u32,
        #[arg(long, default_value_t = 1)]
        imag_mult: u32,
    },
}

fn limit(ok: bool, msg: impl FnOnce() -> String) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Resource(msg()))
    }
}

fn input(ok: bool, msg: impl FnOnce() -> String) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Input(msg()))
    }
}

fn parse_theta(n: usize, spec: &str) -> Result<(WeightChar, &'static str), CliError> {
    if spec == "symbolic" {
        return Ok((WeightChar::symbolic_sl(n)?, "symbolic"));
    }
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Input(format!("unrecognized theta {spec:?}")))?;
    match kind {
        "lambda" => {
            let l: Vec<i64> = rest
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|e| CliError::Input(format!("{x:?}: {e}"))))
                .collect::<Result<_, _>>()?;
            input(l.len() == n, || format!("lambda has {} entries, n = {n}", l.len()))?;
            Ok((WeightChar::theta_mu(&FiniteWeight::from_ints(&l))?, "rational-specialized"))
        }
        "values" => {
            let v: Vec<Scalar> = rest
                .split(',')
                .map(|x| parse_scalar(x.trim()).map_err(|e| CliError::Input(format!("{x:?}: {e}"))))
                .collect::<Result<_, _>>()?;
            input(v.len() == n, || format!("{} values given, n = {n}", v.len()))?;
            input(v.iter().all(|x| !x.is_zero()), || "θ values must be nonzero".into())?;
            Ok((WeightChar::new(v), "rational-specialized"))
        }
        _ => Err(CliError::Input(format!("unrecognized theta kind {kind:?}"))),
    }
}

fn run(cli: &Cli, cfg: &mut RunConfig) -> Result<(Value, bool), CliError> {
    match &cli.cmd {
        Command::Poly { n, lambda } => {
            cfg.command = "poly".into();
            cfg.n = Some(*n);
            cfg.lambda = Some(lambda.clone());
            input(*n >= 2, || "n must be at least 2".into())?;
            input(lambda.len() == *n, || format!("lambda has {} entries, n = {n}", lambda.len()))?;
            limit(*n <= 4 && lambda.iter().map(|x| x.abs()).sum::<i64>() <= 8, || {
                "polynomials are limited to n ≤ 4 and |λ| ≤ 8".into()
            })?;
            let p = macdonald_poly_oracle(lambda)?;
            Ok((serde_json::to_value(&p).unwrap(), true))
        }
        Command::Psi { n, height, theta } => {
            cfg.command = "psi".into();
            cfg.n = Some(*n);
            cfg.height = Some(*height);
            cfg.theta = Some(theta.clone());
            input((2..=4).contains(n), || "n must be 2, 3 or 4".into())?;
            let (th, mode) = parse_theta(*n, theta)?;
            cfg.theta_mode = Some(mode.into());
            let cap = match (n, mode) {
                (2, _) => 10,
                (3, "symbolic") => 5,
                (_, "symbolic") => 3,
                _ => 6,
            };
            limit(*height <= cap, || format!("height {height} exceeds the limit {cap} for this n and θ"))?;
            let psi = expand_psi(&th, *height)?;
            Ok((serde_json::to_value(&psi).unwrap(), true))
        }
        Command::Verify { suite, n, depth, height } => {
            cfg.command = format!("verify {}", suite.name());
            cfg.n = *n;
            cfg.depth = *depth;
            cfg.height = *height;
            let rep = match suite {
                Suite::Commute => {
                    let n = n.unwrap_or(3);
                    input(n >= 2, || "n must be at least 2".into())?;
                    limit(n <= 4, || "commute suite is limited to n ≤ 4".into())?;
                    cfg.n = Some(n);
                    suites::commute(n, cli.seed)
                }
                Suite::Polynomials => suites::polynomials(),
                Suite::CentralTrace => {
                    let d = depth.unwrap_or(4);
                    limit(d <= 8, || "central-trace depth is limited to 8".into())?;
                    cfg.depth = Some(d);
                    cfg.theta_mode = Some("symbolic".into());
                    suites::central_trace(d as usize)
                }
                Suite::Affine => {
                    let d = depth.unwrap_or(2);
                    let h = height.unwrap_or(2);
                    limit(d <= 3 && h <= 4, || "affine suite is limited to depth ≤ 3, height ≤ 4".into())?;
                    cfg.depth = Some(d);
                    cfg.height = Some(h);
                    cfg.theta_mode = Some("rational-specialized".into());
                    suites::affine(d, h)
                }
            };
            let ok = rep.pass;
            Ok((serde_json::to_value(&rep).unwrap(), ok))
        }
        Command::Affine { cmd } => match cmd {
            AffineCmd::Char { n, r, depth } => {
                cfg.command = "affine char".into();
                cfg.n = Some(*n);
                cfg.r = Some(*r);
                cfg.depth = Some(*depth);
                input(*n >= 2 && r < n, || format!("need n ≥ 2 and 0 ≤ r < n, got n = {n}, r = {r}"))?;
                limit(*n <= 4 && *depth <= 8, || "characters are limited to n ≤ 4, depth ≤ 8".into())?;
                let ch = affine_character(*n, *r, *depth)?;
                cfg.height = Some(ch.height);
                cfg.weyl_len = Some(ch.weyl_len);
                Ok((serde_json::to_value(&ch).unwrap(), true))
            }
            AffineCmd::Extract {
                depth,
                height,
                samples,
                holdout,
                source,
                imag_mult,
            } => {
                cfg.command = "affine extract".into();
                cfg.n = Some(2);
                cfg.depth = Some(*depth);
                cfg.height = Some(*height);
                cfg.samples = Some(*samples);
                cfg.holdout = Some(*holdout);
                cfg.theta_mode = Some("rational-specialized".into());
                input(*samples >= 1 && *holdout >= 1, || "need at least one sample and one holdout".into())?;
                limit(*depth <= 3 && *height <= 4, || "extraction is limited to depth ≤ 3, height ≤ 4".into())?;
                let src = match source {
                    SourceArg::Trace => Source::Trace,
                    SourceArg::Normalized => {
                        cfg.imag_mult = Some(*imag_mult);
                        Source::Normalized { imag_mult: *imag_mult }
                    }
                };
                extract(*depth, *height, *samples, *holdout, src)
            }
        },
        Command::Experimental { cmd } => match cmd {
            ExperimentalCmd::DominantTrace {
                l,
                level,
                height,
                imag_mult,
            } => {
                cfg.command = "experimental dominant-trace".into();
                cfg.n = Some(2);
                cfg.height = Some(*height);
                cfg.imag_mult = Some(*imag_mult);
                cfg.theta = Some(format!("lambda:{l}ω_1+{level}ε"));
                cfg.theta_mode = Some("rational-specialized".into());
                limit(*height <= 5, || "height is limited to 5".into())?;
                let rep = dominant_trace_symmetry(*l, *level, *height, *imag_mult)?;
                Ok((serde_json::to_value(&rep).unwrap(), true))
            }
        },
    }
}

fn extract(depth: u32, height: u32, samples: usize, holdout: usize, src: Source) -> Result<(Value, bool), CliError> {
    let mut levels = Vec::new();
    let mut ops = Vec::new();
    let mut ok = true;
    for r in 0..2 {
        let need = samples_needed(r, depth)?;
        let (fit, hold) = sample_points(samples.max(need), holdout);
        let ex = extract_affine_operator(r, &fit, depth, height, src)?;
        let mut residuals = Vec::new();
        for z in &hold {
            let w = holdout_residual(&ex.operator, r, z, src)?;
            ok &= w.is_none();
            residuals.push(json!({ "z": z, "zero": w.is_none(), "witness": w }));
        }
        let lead = leading_terms_ok(&ex.operator, r, src)?;
        ok &= lead;
        // Only the normalized operator is expected to be Weyl-invariant.
        let sym = match src {
            Source::Trace => None,
            Source::Normalized { .. } => {
                let s = (0..3).map(|l| symmetric_action(&ex.operator, l)).collect::<mac_core::Result<Vec<_>>>()?;
                ok &= s.iter().all(|x| x.asymmetric.is_empty());
                Some(s)
            }
        };
        levels.push(json!({
            "r": r,
            "samples": fit,
            "samples_required": need,
            "unknowns": ex.unknowns,
            "equations": ex.equations,
            "leading_terms_ok": lead,
            "weyl_symmetry": sym,
            "holdout": residuals,
            "operator": ex.operator,
        }));
        ops.push(ex.operator);
    }
    let comm = commutator(&ops[0], &ops[1])?.is_zero();
    ok &= comm;
    Ok((
        json!({
            "source": src,
            "levels": levels,
            "commutator_zero": comm,
            "pass": ok,
        }),
        ok,
    ))
}

fn main() {
    let cli = Cli::parse();
    if let Some(t) = std::env::var("MAC_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global().ok();
    }
    let mut cfg = RunConfig::new(cli.seed, cli.format);
    let res = run(&cli, &mut cfg);
    let code = output::emit(&cfg, res);
    std::process::exit(code);
}
