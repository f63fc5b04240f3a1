//! Command-line front end: parse graphs, matrices, and sampled
//! functions, pick a semiring, dispatch to the solvers, and emit
//! TSV or JSON.
//!
//! Exit codes: 0 on success, 2 for parse or usage problems, 3 for
//! algebraic failures (a closure that does not stabilize, an undefined
//! star, an unsupported algebra), with the diagnostic printed to
//! stderr.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use semikit::axioms::{check_axioms, AxiomReport};
use semikit::{
    closure_of_graph, idempotent_integral, legendre_transform, parse_matrix, riemann_universal,
    solve_bellman_gauss_seidel_with, solve_bellman_jacobi_with, solve_path_problem,
    BellmanSolution, Descriptor64, Element64, Error, Graph, Matrix64, PathProblem, PathSolution,
    SampledFunction64, SemiringKind, SolveOptions,
};

#[derive(Parser)]
#[command(name = "semikit", version, about = "Graph and function optimization by choice of algebra")]
pub struct Cli {
    /// Semiring name: max-plus, min-plus, max-min, field,
    /// deformed:h=<float>, interval-max-plus, interval-min-plus
    #[arg(long, global = true)]
    pub semiring: Option<String>,

    /// Input file (graph TSV, matrix text, or function CSV)
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Output file; stdout when omitted
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Method {
    Jacobi,
    GaussSeidel,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Rule {
    /// `⊕_i φ(x_i) ⊙ Δ_i`, meaningful over every semiring
    Riemann,
    /// `⊕` of the samples; idempotent semirings only
    Sup,
}

#[derive(Subcommand)]
pub enum Command {
    /// Closure A* of a graph lowered over the chosen semiring
    Closure,
    /// Minimal path weights (min-plus closure)
    ShortestPath {
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        target: Option<String>,
    },
    /// Maximal bottleneck capacities (max-min closure)
    WidestPath {
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        target: Option<String>,
    },
    /// Reachability (max-min closure of the 0̄/1̄ adjacency)
    TransitiveClosure {
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        target: Option<String>,
    },
    /// Solve X = AX ⊕ B for matrices A (--input) and B (--rhs)
    Bellman {
        #[arg(long)]
        rhs: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Jacobi)]
        method: Method,
        /// Iteration cap; defaults to 10·n
        #[arg(long)]
        max_iterations: Option<usize>,
        /// Field stopping tolerance on the max-norm step
        #[arg(long, default_value_t = 1e-10)]
        residual_tol: f64,
    },
    /// Transform of a max-plus sampled function over a slope grid
    Legendre {
        #[arg(long, allow_hyphen_values = true)]
        xi_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        xi_max: f64,
        #[arg(long)]
        xi_step: f64,
    },
    /// Integrate a sampled function over the chosen semiring
    Integrate {
        #[arg(long, value_enum, default_value_t = Rule::Riemann)]
        rule: Rule,
    },
    /// Run the semiring law suite on random samples
    Axioms {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn exit_code(f: &Failure) -> i32 {
    match f {
        Failure::Usage(_) => 2,
        Failure::Core(e) => match e {
            Error::NonStabilizing { .. } | Error::StarUndefined(_) | Error::Unsupported(_) => 3,
            _ => 2,
        },
    }
}

fn message(f: &Failure) -> String {
    match f {
        Failure::Usage(m) => m.clone(),
        Failure::Core(e) => e.to_string(),
    }
}

/// Runs a parsed invocation, writing results to `--output` or stdout
/// and diagnostics to stderr. Returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(&cli) {
        Ok(text) => {
            let wrote = match &cli.output {
                Some(path) => fs::write(path, text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    let mut out = std::io::stdout().lock();
                    out.write_all(text.as_bytes()).map_err(|e| e.to_string())
                }
            };
            match wrote {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            }
        }
        Err(failure) => {
            eprintln!("error: {}", message(&failure));
            exit_code(&failure)
        }
    }
}

fn read_input(cli: &Cli) -> Result<String, Failure> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| Failure::Usage("--input is required".into()))?;
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn parse_semiring(cli: &Cli) -> Result<Descriptor64, Failure> {
    let name = cli
        .semiring
        .as_deref()
        .ok_or_else(|| Failure::Usage("--semiring is required".into()))?;
    name.parse::<Descriptor64>().map_err(Failure::Core)
}

fn reject_deformed(s: &Descriptor64) -> Result<(), Failure> {
    if s.kind() == SemiringKind::Deformed {
        Err(Failure::Usage(
            "the deformed semiring is only accepted by 'axioms' and 'integrate'".into(),
        ))
    } else {
        Ok(())
    }
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Closure => {
            let s = parse_semiring(cli)?;
            reject_deformed(&s)?;
            let graph = Graph::parse(&read_input(cli)?)?;
            let star = closure_of_graph(&graph, &s)?;
            Ok(format_named_matrix(graph.nodes(), &star, cli.format))
        }
        Command::ShortestPath { source, target } => {
            run_path_problem(cli, PathProblem::ShortestPath, source, target)
        }
        Command::WidestPath { source, target } => {
            run_path_problem(cli, PathProblem::WidestPath, source, target)
        }
        Command::TransitiveClosure { source, target } => {
            run_path_problem(cli, PathProblem::TransitiveClosure, source, target)
        }
        Command::Bellman { rhs, method, max_iterations, residual_tol } => {
            let a = parse_matrix::<f64>(&read_input(cli)?)?;
            let b_text = fs::read_to_string(rhs)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", rhs.display())))?;
            let b = parse_matrix::<f64>(&b_text)?;
            if let Some(name) = cli.semiring.as_deref() {
                let declared: Descriptor64 = name.parse().map_err(Failure::Core)?;
                if &declared != a.semiring() {
                    return Err(Failure::Core(Error::SemiringMismatch {
                        left: declared.name(),
                        right: a.semiring().name(),
                    }));
                }
            }
            reject_deformed(a.semiring())?;
            let opts = SolveOptions {
                residual_tol: *residual_tol,
                max_iterations: *max_iterations,
            };
            let solution = match method {
                Method::Jacobi => solve_bellman_jacobi_with(&a, &b, &opts)?,
                Method::GaussSeidel => solve_bellman_gauss_seidel_with(&a, &b, &opts)?,
            };
            Ok(format_bellman(&solution, cli.format))
        }
        Command::Legendre { xi_min, xi_max, xi_step } => {
            if let Some(name) = cli.semiring.as_deref() {
                if name != "max-plus" {
                    return Err(Failure::Usage(
                        "the transform is defined over max-plus only".into(),
                    ));
                }
            }
            if !xi_step.is_finite() || *xi_step <= 0.0 {
                return Err(Failure::Usage("--xi-step must be positive".into()));
            }
            if xi_max < xi_min {
                return Err(Failure::Usage("--xi-max must not be below --xi-min".into()));
            }
            let phi =
                SampledFunction64::parse_csv(&read_input(cli)?, Descriptor64::max_plus())?;
            let count = ((xi_max - xi_min) / xi_step + 1e-9).floor() as usize + 1;
            let xi: Vec<f64> = (0..count).map(|k| xi_min + k as f64 * xi_step).collect();
            let out = legendre_transform(&phi, &xi)?;
            Ok(format_function(&out, cli.format))
        }
        Command::Integrate { rule } => {
            let s = parse_semiring(cli)?;
            let phi = SampledFunction64::parse_csv(&read_input(cli)?, s)?;
            let value = match rule {
                Rule::Riemann => riemann_universal(&phi)?,
                Rule::Sup => idempotent_integral(&phi)?,
            };
            Ok(format_value(&value, cli.format))
        }
        Command::Axioms { samples, seed } => {
            let s = parse_semiring(cli)?;
            let report = check_axioms(&s, *samples, *seed);
            let text = format_axioms(&report, cli.format);
            if report.all_passed() {
                Ok(text)
            } else {
                // show the report, then fail
                let _ = std::io::stdout().lock().write_all(text.as_bytes());
                Err(Failure::Core(Error::Domain(format!(
                    "axiom suite failed for {}",
                    report.semiring
                ))))
            }
        }
    }
}

fn run_path_problem(
    cli: &Cli,
    problem: PathProblem,
    source: &Option<String>,
    target: &Option<String>,
) -> Result<String, Failure> {
    // the problem fixes the algebra; a redundant --semiring must agree
    if let Some(name) = cli.semiring.as_deref() {
        let declared: Descriptor64 = name.parse().map_err(Failure::Core)?;
        let fixed = problem.semiring::<f64>();
        if declared != fixed {
            return Err(Failure::Usage(format!(
                "this problem is solved over {fixed}, not {declared}"
            )));
        }
    }
    let graph = Graph::parse(&read_input(cli)?)?;
    let solution =
        solve_path_problem::<f64>(&graph, problem, source.as_deref(), target.as_deref())?;
    Ok(format_path_solution(&solution, cli.format))
}

// ---------------------------------------------------------------------------
// output formatting

/// JSON number with `inf`/`-inf` spelled literally and a decimal point
/// on integral values.
fn json_num(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".to_string()
    } else if v == f64::NEG_INFINITY {
        "-inf".to_string()
    } else if v == v.trunc() {
        format!("{v:.1}")
    } else {
        format!("{v}")
    }
}

fn json_element(e: &Element64) -> String {
    match e {
        Element64::Scalar(v) => json_num(*v),
        Element64::Interval(lo, hi) => format!("[{}, {}]", json_num(*lo), json_num(*hi)),
    }
}

fn json_string(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn json_matrix(m: &Matrix64) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let cells: Vec<String> =
                (0..m.cols()).map(|j| json_element(&m.get(i, j))).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn format_named_matrix(nodes: &[String], m: &Matrix64, format: Format) -> String {
    match format {
        Format::Tsv => format!("# nodes: {}\n{m}", nodes.join(" ")),
        Format::Json => format!("{}\n", json_matrix(m)),
    }
}

fn format_distances(pairs: &[(String, Element64)], format: Format) -> String {
    match format {
        Format::Tsv => {
            let mut out = String::new();
            for (node, value) in pairs {
                out.push_str(&format!("{node}\t{value}\n"));
            }
            out
        }
        Format::Json => {
            let items: Vec<String> = pairs
                .iter()
                .map(|(node, value)| {
                    format!("{{\"node\": {}, \"value\": {}}}", json_string(node), json_element(value))
                })
                .collect();
            format!("[{}]\n", items.join(", "))
        }
    }
}

fn format_path_solution(solution: &PathSolution<f64>, format: Format) -> String {
    match solution {
        PathSolution::Value { node, value } => match format {
            Format::Tsv => format!("{node}\t{value}\n"),
            Format::Json => format!(
                "{{\"node\": {}, \"value\": {}}}\n",
                json_string(node),
                json_element(value)
            ),
        },
        PathSolution::Distances(pairs) => format_distances(pairs, format),
        PathSolution::ReachableSet(nodes) => match format {
            Format::Tsv => {
                let mut out = String::new();
                for n in nodes {
                    out.push_str(n);
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let items: Vec<String> = nodes.iter().map(|n| json_string(n)).collect();
                format!("[{}]\n", items.join(", "))
            }
        },
        PathSolution::ClosureMatrix { nodes, matrix } => format_named_matrix(nodes, matrix, format),
    }
}

fn format_bellman(solution: &BellmanSolution<f64>, format: Format) -> String {
    match format {
        Format::Tsv => format!(
            "# iterations {} stabilized {}\n{}",
            solution.iterations, solution.stabilized, solution.x
        ),
        Format::Json => format!(
            "{{\"iterations\": {}, \"stabilized\": {}, \"x\": {}}}\n",
            solution.iterations,
            solution.stabilized,
            json_matrix(&solution.x)
        ),
    }
}

fn format_function(f: &SampledFunction64, format: Format) -> String {
    match format {
        Format::Tsv => {
            let mut out = String::new();
            for (x, v) in f.xs().iter().zip(f.values()) {
                out.push_str(&format!("{x}\t{v}\n"));
            }
            out
        }
        Format::Json => {
            let items: Vec<String> = f
                .xs()
                .iter()
                .zip(f.values())
                .map(|(x, v)| format!("{{\"x\": {}, \"value\": {}}}", json_num(*x), json_element(v)))
                .collect();
            format!("[{}]\n", items.join(", "))
        }
    }
}

fn format_value(value: &Element64, format: Format) -> String {
    match format {
        Format::Tsv => format!("{value}\n"),
        Format::Json => format!("{}\n", json_element(value)),
    }
}

fn format_axioms(report: &AxiomReport, format: Format) -> String {
    match format {
        Format::Tsv => {
            let mut out = format!("# {} on {} samples\n", report.semiring, report.samples);
            for check in &report.checks {
                if check.passed() {
                    out.push_str(&format!("{}\tok\n", check.law));
                } else {
                    out.push_str(&format!(
                        "{}\tFAIL ({} of {})\n",
                        check.law, check.failures, check.samples
                    ));
                }
            }
            out
        }
        Format::Json => {
            let items: Vec<String> = report
                .checks
                .iter()
                .map(|c| {
                    format!(
                        "{{\"law\": {}, \"ok\": {}, \"failures\": {}}}",
                        json_string(c.law),
                        c.passed(),
                        c.failures
                    )
                })
                .collect();
            format!("[{}]\n", items.join(", "))
        }
    }
}
