//! Command-line front end.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, including singular systems on saturated (finite) balls and chains that hit `max_m` |
//! | 2 | anomaly: singular operator on an unsaturated ball, failed certificate, broken chain |
//! | 3 | graph validation failure |
//! | 4 | coherent mode: a chain did not stabilize |
//! | 64 | usage error |

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::graph::{
    family_oracle, validate_oracle, AdjacencyGraph, AdjacencySpec, FamilySpec, GraphError,
    GraphOracle, GraphView,
};
use crate::operator::{BallFunction, LambdaField, TargetFunction};
use crate::report::{
    labelled_values, CertificateJson, ChainJson, CoherentJson, LabelledValues, MetricJson,
    SolveJson,
};
use crate::solver::{
    coherent_solution, max_principle_certificate, prodiscrete_distance, run_chain, solve_on_ball,
    universal_element, ChainStatus, SolverError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ANOMALY: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_WINDOW_EXCEEDED: i32 = 4;
pub const EXIT_USAGE: i32 = 64;

pub const SCHEMA_HELP: &str = r#"Input schemas:
  --graph    shorthand (z, z2, z3, tree3, ladder2, free2, c4, p6),
             {"family":"line"} | {"family":"grid","dims":2} | {"family":"tree","degree":3}
             | {"family":"ladder","width":2} | {"family":"free_group","rank":2}
             | {"family":"cycle","length":4} | {"family":"path","length":6},
             {"vertices":N,"edges":[[i,j],...],"root":0}, or a path to such a JSON file
  --target   delta | zero | random (seeded by --seed) | {"kind":"delta"}
             | {"kind":"radial","coeffs":["1","-1/2",...]}
             | {"kind":"sparse","entries":{"<vertex label>":"3/2",...}}, or a file path
  --lambda   0 | distance | p/q | {"kind":"sparse","entries":{...}}
Rationals are strings "p/q" or "p"; integer literals are accepted on input."#;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Ball,
    Chain,
    Coherent,
    Certify,
    Metric,
    Fixtures,
}

#[derive(Debug, Parser)]
#[command(
    name = "laplace",
    about = "Exact preimages of the graph Laplacian on balls",
    after_help = SCHEMA_HELP
)]
pub struct Args {
    /// Graph family or description; repeatable in fixtures mode.
    #[arg(long, required = true)]
    pub graph: Vec<String>,
    #[arg(long, default_value = "delta")]
    pub target: String,
    /// Second target for metric mode (defaults to --target).
    #[arg(long)]
    pub compare: Option<String>,
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// n (ball, chain, certify), N (coherent), depth (metric) or the largest radius (fixtures).
    #[arg(long)]
    pub radius: usize,
    #[arg(long, default_value_t = 8)]
    pub max_m: usize,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub window: u64,
    #[arg(long, default_value = "0")]
    pub lambda: String,
    /// Report copy (or fixture directory in fixtures mode).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Anomaly(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Anomaly(_) | CliError::Io(_) => EXIT_ANOMALY,
        }
    }
}

fn read_inline_or_file(spec: &str) -> Result<String, CliError> {
    let t = spec.trim();
    if t.starts_with('{') {
        return Ok(t.to_owned());
    }
    let path = Path::new(t);
    if path.is_file() {
        return fs::read_to_string(path).map_err(CliError::from);
    }
    Ok(t.to_owned())
}

/// Oracle and display name for a `--graph` value.
pub fn parse_graph(spec: &str) -> Result<(Arc<dyn GraphOracle>, String), GraphError> {
    let text = read_inline_or_file(spec).map_err(|e| GraphError::InvalidGraph(e.to_string()))?;
    if text.starts_with('{') {
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| GraphError::InvalidGraph(e.to_string()))?;
        if value.get("family").is_some() {
            let fam: FamilySpec = serde_json::from_value(value)
                .map_err(|e| GraphError::InvalidGraph(e.to_string()))?;
            let name = fam.to_string();
            return Ok((family_oracle(&fam)?, name));
        }
        let adj: AdjacencySpec =
            serde_json::from_value(value).map_err(|e| GraphError::InvalidGraph(e.to_string()))?;
        let g = AdjacencyGraph::new(&adj)?;
        let name = g.name();
        return Ok((Arc::new(g), name));
    }
    let fam: FamilySpec = text.parse()?;
    let name = fam.to_string();
    Ok((family_oracle(&fam)?, name))
}

fn parse_target(
    spec: &str,
    view: &mut GraphView,
    radius: usize,
    seed: u64,
) -> Result<TargetFunction, CliError> {
    if spec.trim() == "random" {
        return TargetFunction::random_sparse(view, radius, seed)
            .map_err(|e| CliError::Validation(e.to_string()));
    }
    read_inline_or_file(spec)?
        .parse()
        .map_err(|e: crate::operator::OperatorError| CliError::Usage(e.to_string()))
}

fn graph_error(e: GraphError) -> CliError {
    match e {
        GraphError::BadFamilyParameter { .. } => CliError::Usage(e.to_string()),
        _ => CliError::Validation(e.to_string()),
    }
}

fn solver_error(e: SolverError) -> CliError {
    match e {
        SolverError::Graph(g) => graph_error(g),
        SolverError::BadArguments(s) => CliError::Usage(s),
        other => CliError::Anomaly(other.to_string()),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}

/// Runs the CLI on `argv` (including the program name), writing the report
/// to `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run_cli<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}\n{SCHEMA_HELP}\n");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&args) {
        Ok((report, code)) => {
            if let Some(path) = args.out.as_ref().filter(|_| args.mode != Mode::Fixtures) {
                if let Err(e) = fs::write(path, &report) {
                    let _ = writeln!(stderr, "cannot write {}: {e}", path.display());
                    return EXIT_ANOMALY;
                }
            }
            let _ = stdout.write_all(report.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if matches!(e, CliError::Usage(_)) {
                let _ = writeln!(stderr, "{SCHEMA_HELP}");
            }
            e.exit_code()
        }
    }
}

#[derive(Serialize)]
struct ValidationFailure<'a> {
    graph: &'a str,
    status: &'static str,
    report: crate::graph::ValidationReport,
}

#[derive(Serialize)]
struct StatusOnly<'a> {
    graph: &'a str,
    status: &'a str,
    detail: String,
}

fn execute(args: &Args) -> Result<(String, i32), CliError> {
    if args.mode == Mode::Fixtures {
        let out = args
            .out
            .as_ref()
            .ok_or_else(|| CliError::Usage("fixtures mode needs --out <dir>".into()))?;
        let families = args
            .graph
            .iter()
            .map(|g| g.parse::<FamilySpec>().map_err(graph_error))
            .collect::<Result<Vec<_>, _>>()?;
        let written = emit_fixtures(args.seed, &families, args.radius, out)?;
        let names: Vec<String> = written.iter().map(|p| p.display().to_string()).collect();
        return Ok((to_json(&serde_json::json!({ "written": names })), EXIT_OK));
    }
    let [graph_spec] = args.graph.as_slice() else {
        return Err(CliError::Usage(
            "exactly one --graph is allowed outside fixtures mode".into(),
        ));
    };
    let (oracle, name) = parse_graph(graph_spec).map_err(graph_error)?;
    let lambda: LambdaField = args
        .lambda
        .parse()
        .map_err(|e: crate::operator::OperatorError| CliError::Usage(e.to_string()))?;
    let lambda_text = lambda.describe();
    let window = args.window as usize;

    let probe = match args.mode {
        Mode::Chain | Mode::Coherent => args.max_m.max(args.radius) + 1,
        _ => args.radius + 1,
    };
    let validation = validate_oracle(oracle.as_ref(), probe).map_err(graph_error)?;
    if !validation.passes() {
        let report = ValidationFailure {
            graph: &name,
            status: "invalid_graph",
            report: validation,
        };
        return Ok((to_json(&report), EXIT_VALIDATION));
    }

    let mut view = GraphView::new(oracle);
    let n = args.radius;
    let target = parse_target(&args.target, &mut view, n, args.seed)?;
    match args.mode {
        Mode::Ball => match solve_on_ball(&mut view, &target, n, &lambda) {
            Ok(r) => {
                let code = if r.residual_check {
                    EXIT_OK
                } else {
                    EXIT_ANOMALY
                };
                Ok((
                    to_json(&SolveJson::from_report(&name, &lambda_text, &r)),
                    code,
                ))
            }
            Err(SolverError::SingularSystem {
                saturated: true, ..
            }) => Ok((
                to_json(&SolveJson::singular_finite(&name, &lambda_text, n)),
                EXIT_OK,
            )),
            Err(e @ SolverError::SingularSystem { .. }) => {
                let report = StatusOnly {
                    graph: &name,
                    status: "singular_anomaly",
                    detail: e.to_string(),
                };
                Ok((to_json(&report), EXIT_ANOMALY))
            }
            Err(e) => Err(solver_error(e)),
        },
        Mode::Certify => {
            let c = max_principle_certificate(&mut view, n, &lambda).map_err(solver_error)?;
            let code = if c.passes { EXIT_OK } else { EXIT_ANOMALY };
            Ok((
                to_json(&CertificateJson::new(&name, &lambda_text, &c)),
                code,
            ))
        }
        Mode::Chain => {
            let chain = run_chain(&mut view, &target, n, args.max_m, window, &lambda)
                .map_err(solver_error)?;
            let universal = match chain.status {
                ChainStatus::Stabilized { .. } => universal_element(&chain).ok(),
                ChainStatus::WindowExceeded { .. } => None,
            };
            let report = ChainJson::new(&name, &lambda_text, &chain, universal.as_ref());
            Ok((to_json(&report), EXIT_OK))
        }
        Mode::Coherent => {
            match coherent_solution(&mut view, &target, n, args.max_m, window, &lambda) {
                Ok(sol) => {
                    let report = CoherentJson::new(&name, &lambda_text, &sol);
                    let code = if report.coherent && report.report.residual_zero {
                        EXIT_OK
                    } else {
                        EXIT_ANOMALY
                    };
                    Ok((to_json(&report), code))
                }
                Err(e @ SolverError::NotStabilized { .. }) => {
                    let report = StatusOnly {
                        graph: &name,
                        status: "window_exceeded",
                        detail: e.to_string(),
                    };
                    Ok((to_json(&report), EXIT_WINDOW_EXCEEDED))
                }
                Err(e @ SolverError::EmptySolutionSet { .. }) => {
                    let report = StatusOnly {
                        graph: &name,
                        status: "empty_solution_set",
                        detail: e.to_string(),
                    };
                    Ok((to_json(&report), EXIT_OK))
                }
                Err(e) => Err(solver_error(e)),
            }
        }
        Mode::Metric => {
            let other = match &args.compare {
                Some(spec) => parse_target(spec, &mut view, n, args.seed)?,
                None => target.clone(),
            };
            let ball = Arc::new(view.ball(n).map_err(graph_error)?);
            let lhs = target.on_ball(&mut view, n).map_err(graph_error)?;
            let rhs = other.on_ball(&mut view, n).map_err(graph_error)?;
            let f = BallFunction::new(ball.clone(), lhs)
                .map_err(|e| CliError::Anomaly(e.to_string()))?;
            let h = BallFunction::new(ball, rhs).map_err(|e| CliError::Anomaly(e.to_string()))?;
            let d = prodiscrete_distance(&f, &h, n).map_err(solver_error)?;
            Ok((to_json(&MetricJson::new(&name, n, &d)), EXIT_OK))
        }
        Mode::Fixtures => unreachable!("handled above"),
    }
}

#[derive(Debug, Serialize)]
struct FixtureCase {
    radius: usize,
    singular: bool,
    residual_zero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    solution: Option<LabelledValues>,
}

#[derive(Debug, Serialize)]
struct FixtureFile {
    family: String,
    seed: u64,
    note: &'static str,
    target: TargetFunction,
    cases: Vec<FixtureCase>,
}

/// Writes one regression-baseline file per family: a seeded random sparse
/// target on `B_max_radius` and the ball-solver output for every radius
/// `0..=max_radius`. Output is byte-identical for identical inputs.
pub fn emit_fixtures(
    seed: u64,
    families: &[FamilySpec],
    max_radius: usize,
    dir: &Path,
) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for fam in families {
        let mut view = GraphView::new(family_oracle(fam).map_err(graph_error)?);
        let target =
            TargetFunction::random_sparse(&mut view, max_radius, seed).map_err(graph_error)?;
        let mut cases = Vec::with_capacity(max_radius + 1);
        for n in 0..=max_radius {
            let case = match solve_on_ball(&mut view, &target, n, &LambdaField::Zero) {
                Ok(r) => FixtureCase {
                    radius: n,
                    singular: false,
                    residual_zero: r.residual_check,
                    solution: Some(labelled_values(&r.solution)),
                },
                Err(SolverError::SingularSystem {
                    saturated: true, ..
                }) => FixtureCase {
                    radius: n,
                    singular: true,
                    residual_zero: false,
                    solution: None,
                },
                Err(e) => return Err(solver_error(e)),
            };
            cases.push(case);
        }
        let file = FixtureFile {
            family: fam.to_string(),
            seed,
            note: "regression baseline computed by this build; not independent ground truth",
            target,
            cases,
        };
        let path = dir.join(format!("{fam}_seed{seed}.json"));
        fs::write(&path, to_json(&file))?;
        written.push(path);
    }
    Ok(written)
}
