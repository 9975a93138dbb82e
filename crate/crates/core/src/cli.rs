//! Command-line driver. [`run`] parses arguments, executes one subcommand and returns the
//! JSON document to print together with the process exit code.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::applications::{
    clique_density_sum, coloring_partition, distinguish_independent, hafnian, hamiltonian_permanent,
    independent_set_instance, AppValue, Constraint, Evaluation,
};
use crate::combinatorics::ln_multinomial;
use crate::config::WorkBudget;
use crate::error::{Error, Result};
use crate::graph::MultiplicityVector;
use crate::io;
use crate::oracle::exact_partition;
use crate::taylor::{approximate_log_partition, OrderMode};
use crate::zeros::{compute_beta, polydisc_scan, root_margin, Beta, GAMMA_DEFAULT};

/// Default additive log error when a command approximates without `--eps`.
pub const DEFAULT_EPS: f64 = 0.1;

#[derive(Debug, Parser)]
#[command(name = "pfgm", about = "Partition functions of graph homomorphisms with multiplicities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Instance {
    #[arg(long)]
    graph: PathBuf,
    /// Comma-separated multiplicities, e.g. `2,1`.
    #[arg(long)]
    mult: String,
    #[arg(long)]
    weights: PathBuf,
}

#[derive(Debug, Args)]
struct Accuracy {
    /// Evaluate by exhaustive enumeration.
    #[arg(long, conflicts_with = "eps")]
    exact: bool,
    /// Certified additive error on the logarithm.
    #[arg(long)]
    eps: Option<f64>,
}

impl Accuracy {
    fn evaluation(&self) -> Evaluation {
        if self.exact {
            Evaluation::Exact
        } else {
            Evaluation::Approx { epsilon: self.eps.unwrap_or(DEFAULT_EPS) }
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Q_{G,m}(B) by enumeration.
    Exact(Instance),
    /// Taylor approximation of ln Q_{G,m}(B).
    Approx {
        #[command(flatten)]
        instance: Instance,
        #[arg(long, conflicts_with = "eps", required_unless_present = "eps")]
        order: Option<usize>,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Independent sets of a given size.
    Indep {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        gamma: Option<f64>,
        #[command(flatten)]
        accuracy: Accuracy,
        #[arg(long, requires = "edges")]
        distinguish: bool,
        #[arg(long)]
        edges: Option<f64>,
    },
    /// Hafnian of a symmetric even-dimensional matrix.
    Hafnian {
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        accuracy: Accuracy,
    },
    /// Hamiltonian permanent, or Hamiltonian cycle count with --cycles.
    Hamperm {
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        accuracy: Accuracy,
        #[arg(long)]
        cycles: bool,
    },
    /// Clique count, or soft clique density sum with --gamma.
    Clique {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        gamma: Option<f64>,
        #[command(flatten)]
        accuracy: Accuracy,
    },
    /// Colorings with prescribed class sizes.
    Color {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        mult: String,
        #[arg(long)]
        gamma: Option<f64>,
        #[command(flatten)]
        accuracy: Accuracy,
    },
    /// Evaluates Q on random points of the polydisc of radius --delta.
    ZeroScan {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        mult: String,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Smallest root modulus of z -> Q(J + z(B - J)).
    RootMargin(Instance),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Exact(_) => "exact",
            Command::Approx { .. } => "approx",
            Command::Indep { .. } => "indep",
            Command::Hafnian { .. } => "hafnian",
            Command::Hamperm { .. } => "hamperm",
            Command::Clique { .. } => "clique",
            Command::Color { .. } => "color",
            Command::ZeroScan { .. } => "zero-scan",
            Command::RootMargin(_) => "root-margin",
        }
    }
}

/// Structured output of one command.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CommandResult {
    pub command: String,
    pub value_log: Option<Complex64>,
    pub value: Option<Complex64>,
    /// `None` is printed as `"none"`.
    pub error_bound: Option<f64>,
    pub order: Option<usize>,
    pub beta: Option<Beta>,
    pub diagnostics: Map<String, Value>,
    /// Command-specific top-level fields (the scan report, the root margin).
    pub fields: Map<String, Value>,
}

fn real(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn complex(z: Complex64) -> Value {
    json!({ "re": real(z.re), "im": real(z.im) })
}

impl CommandResult {
    fn new(command: &str) -> Self {
        CommandResult { command: command.to_string(), ..Default::default() }
    }

    /// Sets `value_log` and, when it does not overflow, `value = exp(value_log)`.
    fn with_log(mut self, log: Complex64) -> Self {
        self.value_log = Some(log);
        self.value = (log.re < 700.0).then(|| log.exp());
        self
    }

    fn diag(mut self, key: &str, v: Value) -> Self {
        self.diagnostics.insert(key.to_string(), v);
        self
    }

    fn field(mut self, key: &str, v: Value) -> Self {
        self.fields.insert(key.to_string(), v);
        self
    }

    pub fn to_json(&self) -> Value {
        let mut out = self.fields.clone();
        out.insert("command".into(), json!(self.command));
        if let Some(z) = self.value_log {
            out.insert("value_log".into(), complex(z));
        }
        if let Some(z) = self.value {
            out.insert("value".into(), complex(z));
        }
        out.insert("error_bound".into(), self.error_bound.map_or(json!("none"), real));
        if let Some(n) = self.order {
            out.insert("order".into(), json!(n));
        }
        if let Some(b) = self.beta {
            out.insert(
                "beta".into(),
                match b {
                    Beta::Finite(x) => real(x),
                    Beta::Unbounded => json!("unbounded"),
                },
            );
        }
        out.insert("diagnostics".into(), Value::Object(self.diagnostics.clone()));
        Value::Object(out)
    }
}

/// Output of [`run`]: JSON for standard output, warnings for standard error, exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub warnings: Vec<String>,
    pub exit_code: i32,
}

fn error_outcome(command: &str, e: &Error) -> Outcome {
    let body = json!({ "command": command, "error": e.to_string(), "kind": e.kind() });
    Outcome { stdout: body.to_string(), warnings: Vec::new(), exit_code: e.exit_code() }
}

/// Runs the command line `argv` (including the program name) with the given budget.
pub fn run<I, T>(argv: I, budget: &WorkBudget) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { stdout: e.to_string(), warnings: Vec::new(), exit_code: 0 };
            }
            return error_outcome("", &Error::invalid(e.to_string().trim().to_string()));
        }
    };
    let name = cli.command.name();
    let mut warnings = Vec::new();
    match execute(cli.command, budget, &mut warnings) {
        Ok(result) => Outcome { stdout: result.to_json().to_string(), warnings, exit_code: 0 },
        Err(e) => Outcome { warnings, ..error_outcome(name, &e) },
    }
}

fn mult_for(csv: &str, g: &crate::graph::Graph, warnings: &mut Vec<String>) -> Result<MultiplicityVector> {
    let m = io::parse_mult(csv, g)?;
    if m.has_zero() {
        warnings.push("warning: multiplicity vector has zero entries; zero-freeness is only guaranteed for positive entries".into());
    }
    Ok(m)
}

fn app_result(command: &str, v: AppValue, warnings: &mut Vec<String>) -> CommandResult {
    warnings.extend(v.warnings.iter().map(|w| format!("warning: {w}")));
    let mut r = CommandResult::new(command);
    match v.log_value {
        Some(log) => {
            r = r.with_log(log);
            if v.order.is_none() {
                // Exact values are reported as computed, not re-exponentiated.
                r.value = Some(v.value);
            }
        }
        None => r.value = Some(v.value),
    }
    r.error_bound = v.error_bound;
    r.order = v.order;
    r.beta = v.beta.map(|b| if b.is_infinite() { Beta::Unbounded } else { Beta::Finite(b) });
    r
}

fn constraint(gamma: Option<f64>) -> Constraint {
    gamma.map_or(Constraint::Hard, |gamma| Constraint::Soft { gamma })
}

fn execute(cmd: Command, budget: &WorkBudget, warnings: &mut Vec<String>) -> Result<CommandResult> {
    let name = cmd.name();
    match cmd {
        Command::Exact(inst) => {
            let g = io::read_graph(&inst.graph)?;
            let m = mult_for(&inst.mult, &g, warnings)?;
            let w = io::read_weights(&inst.weights, &g)?;
            let q = exact_partition(&g, &m, &w, budget)?;
            let mut r = CommandResult::new(name);
            if q != Complex64::new(0.0, 0.0) {
                r = r.with_log(q.ln());
            }
            r.value = Some(q);
            Ok(r.diag("vertices", json!(g.vertex_count()))
                .diag("edges", json!(g.edge_count()))
                .diag("log_multinomial", real(ln_multinomial(m.counts()))))
        }
        Command::Approx { instance, order, eps } => {
            let g = io::read_graph(&instance.graph)?;
            let m = mult_for(&instance.mult, &g, warnings)?;
            let w = io::read_weights(&instance.weights, &g)?;
            let mode = match (order, eps) {
                (Some(n), None) => OrderMode::Fixed(n),
                (None, Some(e)) => OrderMode::Epsilon(e),
                _ => return Err(Error::invalid("give exactly one of --order and --eps")),
            };
            let a = approximate_log_partition(&g, &m, &w, mode, budget)?;
            let mut r = CommandResult::new(name).with_log(a.log_value);
            r.error_bound = a.error_bound;
            r.order = Some(a.order);
            r.beta = Some(a.beta);
            Ok(r.diag("support_edges", json!(a.support_edges))
                .diag("log_at_j", real(a.log_at_j))
                .diag("deviation", real(w.deviation()))
                .diag("max_degree", json!(g.max_degree())))
        }
        Command::Indep { graph, size, gamma, accuracy, distinguish, edges } => {
            let g = io::read_graph(&graph)?;
            if distinguish {
                let gamma = gamma.unwrap_or(GAMMA_DEFAULT);
                let rel_err = accuracy.eps.unwrap_or(DEFAULT_EPS);
                let x = edges.ok_or_else(|| Error::invalid("--distinguish requires --edges"))?;
                let v = distinguish_independent(&g, size, x, gamma, rel_err, budget)?;
                let mut r = CommandResult::new(name).with_log(Complex64::new(v.n_value.ln(), 0.0));
                r.error_bound = Some(v.error_bound);
                r.order = Some(v.order);
                let labels: Vec<&str> = v.labels.iter().map(|l| l.as_str()).collect();
                return Ok(r
                    .diag("threshold", real(v.threshold))
                    .diag("verdict", json!(labels))
                    .diag("gamma", real(gamma))
                    .diag("edges_threshold", real(x)));
            }
            let inst = independent_set_instance(&g, size, constraint(gamma))?;
            let v = inst.evaluate(accuracy.evaluation(), budget)?;
            Ok(app_result(name, v, warnings).diag("description", json!(inst.description)))
        }
        Command::Hafnian { matrix, accuracy } => {
            let a = io::read_matrix(&matrix)?;
            let v = hafnian(&a, accuracy.evaluation(), budget)?;
            Ok(app_result(name, v, warnings).diag("dimension", json!(a.dim())))
        }
        Command::Hamperm { matrix, accuracy, cycles } => {
            let a = io::read_matrix(&matrix)?;
            let v = hamiltonian_permanent(&a, accuracy.evaluation(), cycles, budget)?;
            Ok(app_result(name, v, warnings).diag("dimension", json!(a.dim())).diag("cycles", json!(cycles)))
        }
        Command::Clique { host, size, gamma, accuracy } => {
            let (k, host_edges) = io::read_host(&host)?;
            let v = clique_density_sum(k, &host_edges, size, constraint(gamma), accuracy.evaluation(), budget)?;
            Ok(app_result(name, v, warnings).diag("host_vertices", json!(k)))
        }
        Command::Color { graph, mult, gamma, accuracy } => {
            let g = io::read_graph(&graph)?;
            let m = mult_for(&mult, &g, warnings)?;
            let v = coloring_partition(&g, &m, constraint(gamma), accuracy.evaluation(), budget)?;
            Ok(app_result(name, v, warnings))
        }
        Command::ZeroScan { graph, mult, delta, trials, seed } => {
            let g = io::read_graph(&graph)?;
            let m = mult_for(&mult, &g, warnings)?;
            let report = polydisc_scan(&g, &m, delta, trials, seed, budget)?;
            Ok(CommandResult::new(name)
                .field("trials", json!(report.trials))
                .field("delta", real(report.delta))
                .field("min_abs_ratio", real(report.min_abs_ratio))
                .field("zero_count", json!(report.zero_count))
                .field("seed", json!(report.seed)))
        }
        Command::RootMargin(inst) => {
            let g = io::read_graph(&inst.graph)?;
            let m = mult_for(&inst.mult, &g, warnings)?;
            let w = io::read_weights(&inst.weights, &g)?;
            let margin = root_margin(&g, &m, &w, budget)?;
            let mut r = CommandResult::new(name);
            r.beta = Some(compute_beta(&g, &w));
            Ok(r.field(
                "root_margin",
                match margin {
                    Beta::Finite(x) => real(x),
                    Beta::Unbounded => json!("unbounded"),
                },
            ))
        }
    }
}
