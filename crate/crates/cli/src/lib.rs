//! Command-line front end. `run` is the whole program minus process I/O, so
//! tests drive it in-process.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thurstonlab::algebra::Covector;
use thurstonlab::bundle::{betti_numbers, euler_of_cover, validate_cover, Bundle4, ClassH2M};
use thurstonlab::error::Error as CoreError;
use thurstonlab::exceptional::{exceptional_segments, format_point, theta_test, xi_enumerate, xi_test};
use thurstonlab::fuzz::{fuzz_claim, fuzz_norms, fuzz_observation, FuzzReport, Instance};
use thurstonlab::niceness::{exact_niceness, fast_niceness, is_nice, NicenessVerdict, DEFAULT_MAX_SUPPORT};
use thurstonlab::swtheory::{averaging_warning, claim_witness, four_dimensional_support, refined_bound, symplectic_status, SwSupport};

pub mod schema;
mod svg;

pub use schema::{load, parse_bundle_file, parse_manifold_file, BundleFile, Loaded, ManifoldFile, ManifoldRef};

pub const MAX_SUPPORT_ENV: &str = "THURSTONLAB_MAX_SUPPORT";

pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 1;
    pub const PRECONDITION: i32 = 2;
    pub const COUNTEREXAMPLE: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("schema error at `{path}` (line {line}, column {column}): {message}")]
    Schema {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Input(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Schema { .. } | CliError::Input(_) => exit::INPUT,
            CliError::Precondition(_) => exit::PRECONDITION,
            CliError::Core(e) => match e {
                CoreError::GysinViolation { .. }
                | CoreError::TorsionEuler
                | CoreError::NotDivisible { .. }
                | CoreError::ZeroEuler
                | CoreError::ZeroNorm(_)
                | CoreError::ZeroVector(_) => exit::PRECONDITION,
                _ => exit::INPUT,
            },
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Schema { .. } => "schema",
            CliError::Input(_) => "input",
            CliError::Precondition(_) => "precondition",
            CliError::Core(CoreError::GysinViolation { .. }) => "GYSIN_VIOLATION",
            CliError::Core(_) if self.exit_code() == exit::PRECONDITION => "precondition",
            CliError::Core(_) => "input",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "thurstonlab", version, about = "Thurston norms, exceptional Euler classes and adjunction bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// `--euler` may be omitted when FILE is a bundle file.
#[derive(Debug, Args)]
pub struct EulerArg {
    #[arg(long, value_parser = parse_vec, allow_hyphen_values = true)]
    pub euler: Option<IntVec>,
}

#[derive(Debug, Args)]
pub struct ClassArgs {
    #[arg(long, value_parser = parse_vec, allow_hyphen_values = true)]
    pub sigma: IntVec,
    #[arg(long, value_parser = parse_vec, allow_hyphen_values = true)]
    pub curve: IntVec,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Thurston norm of a class
    Norm {
        file: PathBuf,
        #[arg(long, value_parser = parse_vec, allow_hyphen_values = true)]
        sigma: IntVec,
    },
    /// Dual ball vertices and edges
    Ball {
        file: PathBuf,
        /// Emit an SVG plot instead of JSON (b1 = 2 only)
        #[arg(long)]
        svg: bool,
    },
    /// Integral exceptional classes
    Xi {
        #[command(subcommand)]
        action: XiAction,
    },
    /// Ray-exceptional classes
    Theta {
        #[command(subcommand)]
        action: ThetaAction,
    },
    /// Niceness of the Alexander polynomial
    Nice {
        #[command(subcommand)]
        action: NiceAction,
    },
    /// Seiberg-Witten supports on the circle bundle
    Sw {
        #[command(subcommand)]
        action: SwAction,
    },
    /// Refined adjunction bound with status and provenance
    Bound {
        file: PathBuf,
        #[command(flatten)]
        euler: EulerArg,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Betti numbers of the total space
    Betti {
        file: PathBuf,
        #[command(flatten)]
        euler: EulerArg,
        #[arg(long)]
        torsion: bool,
    },
    /// Finite cover consistency checks
    Cover {
        #[command(subcommand)]
        action: CoverAction,
    },
    /// Symplectic-candidate test
    Symplectic {
        file: PathBuf,
        #[command(flatten)]
        euler: EulerArg,
        #[command(flatten)]
        class: ClassArgs,
    },
    /// Surviving norm-attaining class search
    Claim {
        file: PathBuf,
        #[command(flatten)]
        euler: EulerArg,
        #[arg(long, value_parser = parse_vec, allow_hyphen_values = true)]
        sigma: IntVec,
    },
    /// Canonical form of a manifold file
    Canonical { file: PathBuf },
    /// Seeded property harnesses
    Fuzz {
        #[arg(value_enum)]
        harness: Harness,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum XiAction {
    /// JSON array of the integral exceptional classes
    List { file: PathBuf },
    /// The carrier segments behind the set
    Carriers { file: PathBuf },
    Test {
        file: PathBuf,
        #[command(flatten)]
        euler: EulerArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum ThetaAction {
    Test {
        file: PathBuf,
        #[command(flatten)]
        euler: EulerArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum NiceAction {
    Check {
        file: PathBuf,
        /// Exact decision regardless of support size
        #[arg(long, conflicts_with = "fast")]
        exact: bool,
        /// Face-sum criterion only
        #[arg(long)]
        fast: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum SwAction {
    Average {
        file: PathBuf,
        #[command(flatten)]
        euler: EulerArg,
    },
    Basic {
        file: PathBuf,
        #[command(flatten)]
        euler: EulerArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum CoverAction {
    Check { file: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Harness {
    Observation,
    Claim,
    Norms,
}

/// Comma-separated integers, e.g. `--sigma 1,-2,0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntVec(pub Vec<i64>);

impl std::ops::Deref for IntVec {
    type Target = Vec<i64>;
    fn deref(&self) -> &Vec<i64> {
        &self.0
    }
}

fn parse_vec(s: &str) -> Result<IntVec, String> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.trim().is_empty() {
        return Ok(IntVec(Vec::new()));
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("`{}`: {e}", t.trim())))
        .collect::<Result<_, _>>()
        .map(IntVec)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Pretty JSON with sorted keys (serde_json maps are ordered) and a final newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT } else { exit::OK };
            let text = e.render().to_string();
            return if code == exit::OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    execute(&cli.command)
}

pub fn execute(cmd: &Command) -> Outcome {
    let mut warnings = Vec::new();
    match dispatch(cmd, &mut warnings) {
        Ok(Output::Json(v, code)) => Outcome {
            code,
            stdout: render(&v),
            stderr: join_warnings(&warnings),
        },
        Ok(Output::Text(t)) => Outcome {
            code: exit::OK,
            stdout: t,
            stderr: join_warnings(&warnings),
        },
        Err(e) => {
            let mut stderr = join_warnings(&warnings);
            stderr.push_str(&render(&json!({ "error": e.kind(), "message": e.to_string() })));
            Outcome {
                code: e.exit_code(),
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn join_warnings(w: &[String]) -> String {
    w.iter().map(|s| format!("warning: {s}\n")).collect()
}

enum Output {
    Json(Value, i32),
    Text(String),
}

fn ok(v: Value) -> Result<Output, CliError> {
    Ok(Output::Json(v, exit::OK))
}

fn euler_of(loaded: &Loaded, arg: &EulerArg) -> Result<Vec<i64>, CliError> {
    let e = arg
        .euler
        .as_ref()
        .map(|e| e.to_vec())
        .or_else(|| loaded.euler.clone())
        .ok_or_else(|| CliError::Input("--euler is required unless FILE is a bundle file".into()))?;
    if e.len() != loaded.manifold.b1() {
        return Err(CliError::Input(format!(
            "euler has length {}, expected b1 = {}",
            e.len(),
            loaded.manifold.b1()
        )));
    }
    Ok(e)
}

fn bundle_of(loaded: &Loaded, arg: &EulerArg, torsion_flag: bool) -> Result<Bundle4, CliError> {
    let e = euler_of(loaded, arg)?;
    let torsion = torsion_flag || (arg.euler.is_none() && loaded.euler_torsion);
    Ok(Bundle4::new(loaded.manifold.clone(), e, torsion)?)
}

fn check_len(what: &str, v: &[i64], b1: usize) -> Result<(), CliError> {
    if v.len() != b1 {
        return Err(CliError::Input(format!("{what} has length {}, expected b1 = {b1}", v.len())));
    }
    Ok(())
}

fn sw_of(loaded: &Loaded) -> Result<&SwSupport, CliError> {
    loaded
        .manifold
        .sw()
        .ok_or_else(|| CliError::Input("the manifold file has no `sw_support`".into()))
}

fn sw_json(sw: &SwSupport) -> Value {
    Value::Array(
        sw.iter()
            .map(|(c, v)| json!({ "c1": c, "value": v }))
            .collect(),
    )
}

fn max_support(warnings: &mut Vec<String>) -> usize {
    match std::env::var(MAX_SUPPORT_ENV) {
        Ok(s) => match s.trim().parse() {
            Ok(n) => n,
            Err(_) => {
                warnings.push(format!("ignoring {MAX_SUPPORT_ENV}={s:?}: not a nonnegative integer"));
                DEFAULT_MAX_SUPPORT
            }
        },
        Err(_) => DEFAULT_MAX_SUPPORT,
    }
}

fn verdict_json(v: &NicenessVerdict) -> Value {
    json!({
        "status": v.status.as_str(),
        "witness": v.witness.as_ref().map(|w| w.entries().to_vec()),
    })
}

fn dispatch(cmd: &Command, warnings: &mut Vec<String>) -> Result<Output, CliError> {
    match cmd {
        Command::Norm { file, sigma } => {
            let l = load(file)?;
            let ball = l.manifold.ball();
            check_len("sigma", sigma, ball.b1())?;
            let s = Covector::new(sigma.to_vec());
            ok(json!({
                "sigma": sigma.to_vec(),
                "norm": ball.norm(&s)?,
                "maximizing_vertices": ball.maximizing_vertices(&s)?,
                "ball_source": l.manifold.ball_source().as_str(),
            }))
        }
        Command::Ball { file, svg } => {
            let l = load(file)?;
            let ball = l.manifold.ball();
            if *svg {
                if ball.b1() != 2 {
                    return Err(CliError::Precondition(format!("--svg needs b1 = 2, got {}", ball.b1())));
                }
                return Ok(Output::Text(svg::plot(ball)));
            }
            let vs = ball.vertices();
            let edges: Vec<Value> = ball
                .polytope()
                .edge_indices()
                .iter()
                .map(|&(i, j)| json!([vs[i], vs[j]]))
                .collect();
            ok(json!({
                "vertices": vs,
                "edges": edges,
                "facets": ball.polytope().num_facets(),
                "affine_dim": ball.polytope().affine_dim(),
                "degenerate": ball.is_degenerate(),
                "ball_source": l.manifold.ball_source().as_str(),
            }))
        }
        Command::Xi { action } => match action {
            XiAction::List { file } => {
                let l = load(file)?;
                let ball = l.manifold.ball();
                if ball.is_degenerate() {
                    warnings.push("degenerate dual ball (a point or a segment)".into());
                }
                ok(json!(xi_enumerate(ball)))
            }
            XiAction::Carriers { file } => {
                let l = load(file)?;
                let set = exceptional_segments(l.manifold.ball());
                let carriers: Vec<Value> = set
                    .carriers
                    .iter()
                    .map(|c| {
                        json!({
                            "vertex": c.vertex,
                            "edge": [c.edge.0, c.edge.1],
                            "segment": [format_point(&c.segment.a), format_point(&c.segment.b)],
                        })
                    })
                    .collect();
                ok(json!({ "carriers": carriers, "degenerate": set.degenerate }))
            }
            XiAction::Test { file, euler } => {
                let l = load(file)?;
                let e = euler_of(&l, euler)?;
                ok(json!({ "euler": e, "xi": xi_test(l.manifold.ball(), &e)? }))
            }
        },
        Command::Theta { action: ThetaAction::Test { file, euler } } => {
            let l = load(file)?;
            let e = euler_of(&l, euler)?;
            let ball = l.manifold.ball();
            ok(json!({
                "euler": e,
                "theta": theta_test(ball, &e)?,
                "xi": xi_test(ball, &e)?,
            }))
        }
        Command::Nice { action: NiceAction::Check { file, exact, fast } } => {
            let l = load(file)?;
            let delta = l
                .manifold
                .alexander()
                .ok_or_else(|| CliError::Input("the manifold file has no `alexander` polynomial".into()))?;
            let (verdict, method) = if *exact {
                (exact_niceness(delta)?, "exact".to_string())
            } else if *fast {
                (fast_niceness(delta)?, "face-sum".to_string())
            } else {
                let cap = max_support(warnings);
                (is_nice(delta, cap)?, format!("auto (max_support = {cap})"))
            };
            let mut v = verdict_json(&verdict);
            v["method"] = json!(method);
            v["support_size"] = json!(delta.num_terms());
            ok(v)
        }
        Command::Sw { action } => {
            let (file, euler, basic) = match action {
                SwAction::Average { file, euler } => (file, euler, false),
                SwAction::Basic { file, euler } => (file, euler, true),
            };
            let l = load(file)?;
            let e = euler_of(&l, euler)?;
            let sw = sw_of(&l)?;
            let zero = e.iter().all(|&x| x == 0);
            if !zero {
                warnings.extend(averaging_warning(l.manifold.b1()));
            }
            let out = four_dimensional_support(sw, &e)?;
            let rule = if zero { "product" } else { "averaging" };
            if basic {
                ok(json!({ "euler": e, "rule": rule, "classes": out.classes() }))
            } else {
                ok(json!({
                    "euler": e,
                    "rule": rule,
                    "support": sw_json(&out),
                    "total": i64::try_from(out.total()).map_or_else(|_| json!(out.total().to_string()), |t| json!(t)),
                }))
            }
        }
        Command::Bound { file, euler, class } => {
            let l = load(file)?;
            let bundle = bundle_of(&l, euler, false)?;
            check_len("sigma", &class.sigma, l.manifold.b1())?;
            check_len("curve", &class.curve, l.manifold.b1())?;
            let a = ClassH2M::new(class.sigma.to_vec(), class.curve.to_vec());
            let verdict = match l.manifold.alexander() {
                Some(d) => Some(is_nice(d, max_support(warnings))?),
                None => None,
            };
            let r = refined_bound(&bundle, &a, verdict.as_ref())?;
            ok(json!({
                "value": r.value,
                "status": r.status.as_str(),
                "provenance": r.status.provenance(),
                "self_intersection": r.self_intersection,
                "norm": r.norm,
                "xi_exceptional": r.xi_exceptional,
                "theta_exceptional": r.theta_exceptional,
                "ball_source": l.manifold.ball_source().as_str(),
                "niceness": verdict.map_or(json!("absent"), |v| json!(v.status.as_str())),
            }))
        }
        Command::Betti { file, euler, torsion } => {
            let l = load(file)?;
            let bundle = bundle_of(&l, euler, *torsion)?;
            if bundle.is_torsion() {
                return ok(json!({
                    "euler": bundle.euler(),
                    "status": "product-up-to-cover",
                    "note": "torsion Euler class: Betti formulas for nontorsion classes do not apply; torsion classes are never exceptional",
                }));
            }
            let b = betti_numbers(&bundle)?;
            ok(json!({
                "euler": bundle.euler(),
                "status": "nontorsion",
                "b2": b.b2,
                "b2_plus": b.b2_plus,
            }))
        }
        Command::Cover { action: CoverAction::Check { file } } => {
            let c = schema::load_cover(file)?;
            let report = validate_cover(&c.datum, &c.base, c.classes.as_deref())?;
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|k| json!({ "name": k.name, "passed": k.passed, "detail": k.detail }))
                .collect();
            let mut v = json!({
                "checks": checks,
                "total_degree": report.total_degree,
                "passed": report.passed(),
            });
            if let Some(e) = &c.euler {
                check_len("euler", e, c.base.b1())?;
                v["euler_cover"] = json!(euler_of_cover(&c.datum, e)?);
            }
            let code = if report.passed() { exit::OK } else { exit::PRECONDITION };
            Ok(Output::Json(v, code))
        }
        Command::Symplectic { file, euler, class } => {
            let l = load(file)?;
            let bundle = bundle_of(&l, euler, false)?;
            check_len("sigma", &class.sigma, l.manifold.b1())?;
            check_len("curve", &class.curve, l.manifold.b1())?;
            let s = symplectic_status(&bundle, &ClassH2M::new(class.sigma.to_vec(), class.curve.to_vec()))?;
            ok(json!({
                "symplectic_candidate": s.candidate,
                "reasons": s.reasons,
                "convention": "positive cone read as self-intersection > 0",
            }))
        }
        Command::Claim { file, euler, sigma } => {
            let l = load(file)?;
            let e = euler_of(&l, euler)?;
            check_len("sigma", sigma, l.manifold.b1())?;
            let r = claim_witness(l.manifold.ball(), sw_of(&l)?, &e, &Covector::new(sigma.to_vec()))?;
            ok(json!({
                "witness": r.witness,
                "attaining": r.attaining,
                "violations": r.violations,
                "xi_exceptional": xi_test(l.manifold.ball(), &e)?,
            }))
        }
        Command::Canonical { file } => {
            let text = std::fs::read_to_string(file).map_err(|source| CliError::Io {
                path: file.display().to_string(),
                source,
            })?;
            let m = parse_manifold_file(&text)?;
            m.to_manifold()?;
            Ok(Output::Text(canonical_text(&m)?))
        }
        Command::Fuzz { harness, trials, seed } => {
            let report = match harness {
                Harness::Observation => fuzz_observation(*trials, *seed)?,
                Harness::Claim => fuzz_claim(*trials, *seed)?,
                Harness::Norms => fuzz_norms(*trials, *seed)?,
            };
            let code = if report.failures.is_empty() { exit::OK } else { exit::COUNTEREXAMPLE };
            Ok(Output::Json(fuzz_json(&report), code))
        }
    }
}

/// Canonical serialization: normalized content, sorted keys.
pub fn canonical_text(m: &ManifoldFile) -> Result<String, CliError> {
    let v = serde_json::to_value(m.canonical()?).expect("manifold files serialize");
    Ok(render(&v))
}

fn instance_json(i: &Instance) -> Value {
    match i {
        Instance::Observation { vertices, w } => json!({
            "vertices": vertices.iter().map(|v| format_point(v)).collect::<Vec<_>>(),
            "w": format_point(w),
        }),
        Instance::Claim { ball, sw, euler, sigma } => json!({
            "dual_ball_vertices": ball,
            "sw_support": sw.iter().map(|(c, v)| json!({ "c1": c, "value": v })).collect::<Vec<_>>(),
            "euler": euler,
            "sigma": sigma.to_vec(),
        }),
        Instance::Norms { ball, sigma, tau, k } => json!({
            "dual_ball_vertices": ball,
            "sigma": sigma.to_vec(),
            "tau": tau,
            "k": k,
        }),
    }
}

pub fn fuzz_json(r: &FuzzReport) -> Value {
    let counterexamples: Vec<Value> = r
        .failures
        .iter()
        .map(|f| json!({ "trial": f.trial, "message": f.message, "reproducer": instance_json(&f.instance) }))
        .collect();
    json!({
        "harness": r.kind,
        "seed": r.seed,
        "trials": r.trials,
        "premise_held": r.premise_held,
        "failures": r.failures.len(),
        "counterexamples": counterexamples,
    })
}
