//! Reductions of counting problems to `Q_{G,m}`.
//!
//! Each adapter builds an [`ApplicationInstance`] and evaluates it either exactly (oracle)
//! or through the Taylor engine with a certified error. The target quantity is always
//! `Q_{G,m}(weights) · exp(−normalizer_log)`.

use num_complex::Complex64;

use crate::combinatorics::{binomial, ln_factorial};
use crate::config::WorkBudget;
use crate::error::{Error, Result};
use crate::graph::{Graph, MultiplicityVector};
use crate::oracle::exact_partition;
use crate::taylor::{approximate_log_partition, OrderMode};
use crate::weights::EdgeWeights;
use crate::zeros::{ALPHA, GAMMA_DEFAULT};

/// A reduced instance and the constant relating `Q` to the target quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct ApplicationInstance {
    pub graph: Graph,
    pub mult: MultiplicityVector,
    pub weights: EdgeWeights,
    /// Target = `Q · exp(−normalizer_log)`.
    pub normalizer_log: f64,
    pub description: String,
    pub warnings: Vec<String>,
}

/// Hard 0/1 constraint or its soft relaxation with parameter γ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Constraint {
    Hard,
    Soft { gamma: f64 },
}

impl Constraint {
    pub fn soft_default() -> Self {
        Constraint::Soft { gamma: GAMMA_DEFAULT }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Evaluation {
    Exact,
    /// Certified additive error `epsilon` on the logarithm.
    Approx { epsilon: f64 },
}

/// Value of an adapter, with the certificate when it was approximated.
#[derive(Debug, Clone, PartialEq)]
pub struct AppValue {
    /// Logarithm of the target quantity; `None` when the exact value is zero.
    pub log_value: Option<Complex64>,
    pub value: Complex64,
    pub error_bound: Option<f64>,
    pub order: Option<usize>,
    pub beta: Option<f64>,
    pub warnings: Vec<String>,
}

fn gamma_warning(gamma: f64) -> Option<String> {
    (gamma >= ALPHA).then(|| format!("gamma = {gamma} is not below alpha = {ALPHA}; no error certificate"))
}

fn check_gamma(gamma: f64, max_degree: usize) -> Result<()> {
    if !(gamma > 0.0) || gamma.is_infinite() {
        return Err(Error::invalid(format!("gamma: must be positive, got {gamma}")));
    }
    if gamma >= max_degree as f64 {
        return Err(Error::invalid(format!("gamma: must be below Δ = {max_degree}, got {gamma}")));
    }
    Ok(())
}

impl ApplicationInstance {
    /// Evaluates the target quantity.
    pub fn evaluate(&self, eval: Evaluation, budget: &WorkBudget) -> Result<AppValue> {
        let mut warnings = self.warnings.clone();
        if self.mult.has_zero() {
            warnings.push("multiplicity vector has zero entries".to_string());
        }
        match eval {
            Evaluation::Exact => {
                let q = exact_partition(&self.graph, &self.mult, &self.weights, budget)?;
                let scale = (-self.normalizer_log).exp();
                let log_value =
                    (q != Complex64::new(0.0, 0.0)).then(|| q.ln() - Complex64::new(self.normalizer_log, 0.0));
                Ok(AppValue { log_value, value: q * scale, error_bound: None, order: None, beta: None, warnings })
            }
            Evaluation::Approx { epsilon } => {
                let r = approximate_log_partition(
                    &self.graph,
                    &self.mult,
                    &self.weights,
                    OrderMode::Epsilon(epsilon),
                    budget,
                )?;
                let log_value = r.log_value - Complex64::new(self.normalizer_log, 0.0);
                Ok(AppValue {
                    log_value: Some(log_value),
                    value: log_value.exp(),
                    error_bound: r.error_bound,
                    order: Some(r.order),
                    beta: Some(r.beta.value()),
                    warnings,
                })
            }
        }
    }
}

/// Independent `s`-sets of `g` as color class 1 of a 2-coloring with `m = (s, |V| − s)`.
///
/// Hard: `a_11 = 0`, other entries 1, so `Q` counts independent `s`-sets.
/// Soft: `a_11 = 1 − γ/Δ`, others `1 + γ/Δ`; the target is `Σ_{|S|=s} w(S)` with
/// `w(S) = ((1 − γ/Δ)/(1 + γ/Δ))^{e(S)}`.
pub fn independent_set_instance(g: &Graph, s: usize, mode: Constraint) -> Result<ApplicationInstance> {
    let n = g.vertex_count();
    if s == 0 || s >= n {
        return Err(Error::invalid(format!("size: need 1 <= s <= |V| - 1 = {}, got {s}", n.saturating_sub(1))));
    }
    let mult = MultiplicityVector::for_vertex_count(n, &[s as i64, (n - s) as i64])?;
    let delta = g.max_degree() as f64;
    let (matrix, normalizer_log, warnings, description) = match mode {
        Constraint::Hard => (
            vec![vec![0.0, 1.0], vec![1.0, 1.0]],
            0.0,
            Vec::new(),
            format!("independent sets of size {s}"),
        ),
        Constraint::Soft { gamma } => {
            check_gamma(gamma, g.max_degree())?;
            let lo = 1.0 - gamma / delta;
            let hi = 1.0 + gamma / delta;
            (
                vec![vec![lo, hi], vec![hi, hi]],
                g.edge_count() as f64 * hi.ln(),
                gamma_warning(gamma).into_iter().collect(),
                format!("soft independent sets of size {s}, gamma = {gamma}"),
            )
        }
    };
    let weights = EdgeWeights::uniform_real(g, &matrix)?;
    Ok(ApplicationInstance { graph: g.clone(), mult, weights, normalizer_log, description, warnings })
}

/// Which way the discriminator points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum VerdictLabel {
    /// `N > T e^{r}`: some `s`-subset spans fewer than `x` edges.
    SparseSubsetExists,
    /// `N < 2T e^{−r}`: a random `s`-subset is independent with probability below `2 e^{−2γx/Δ}`.
    FewIndependent,
    /// Neither test fired.
    Inconclusive,
}

impl VerdictLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictLabel::SparseSubsetExists => "SPARSE_SUBSET_EXISTS",
            VerdictLabel::FewIndependent => "FEW_INDEPENDENT",
            VerdictLabel::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    /// `(1 + γ/Δ)^{−|E|} Q(Ã)`, approximated.
    pub n_value: f64,
    /// `C(|V|, s) exp(−2γx/Δ)`.
    pub threshold: f64,
    pub labels: Vec<VerdictLabel>,
    pub error_bound: f64,
    pub order: usize,
}

/// Separates graphs whose `s`-subsets all span at least `x` edges from graphs with many
/// independent `s`-sets, using a certified approximation within `rel_err` on the log.
pub fn distinguish_independent(
    g: &Graph,
    s: usize,
    x: f64,
    gamma: f64,
    rel_err: f64,
    budget: &WorkBudget,
) -> Result<Verdict> {
    if gamma >= ALPHA {
        return Err(Error::NoCertificate(format!("gamma = {gamma} must be below alpha = {ALPHA}")));
    }
    if !(x >= 0.0) {
        return Err(Error::invalid(format!("edges: threshold must be non-negative, got {x}")));
    }
    let inst = independent_set_instance(g, s, Constraint::Soft { gamma })?;
    let v = inst.evaluate(Evaluation::Approx { epsilon: rel_err }, budget)?;
    let n_value = v.value.re;
    let subsets = binomial(g.vertex_count(), s).map_or(f64::INFINITY, |b| b as f64);
    let threshold = subsets * (-2.0 * gamma * x / g.max_degree() as f64).exp();
    let mut labels = Vec::new();
    if n_value > threshold * rel_err.exp() {
        labels.push(VerdictLabel::SparseSubsetExists);
    }
    if n_value < 2.0 * threshold * (-rel_err).exp() {
        labels.push(VerdictLabel::FewIndependent);
    }
    if labels.is_empty() {
        labels.push(VerdictLabel::Inconclusive);
    }
    Ok(Verdict {
        n_value,
        threshold,
        labels,
        error_bound: v.error_bound.unwrap_or(f64::INFINITY),
        order: v.order.unwrap_or(0),
    })
}

/// Symmetric complex square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl SymmetricMatrix {
    pub fn new(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::invalid("matrix: must be non-empty"));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::invalid(format!("entries[{i}]: expected {n} columns, got {}", rows[i].len())));
        }
        for i in 0..n {
            for j in i + 1..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::invalid(format!(
                        "entries: matrix is not symmetric at ({i}, {j}): {} vs {}",
                        rows[i][j], rows[j][i]
                    )));
                }
            }
        }
        Ok(SymmetricMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_real(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect())
    }

    /// 0/1 adjacency matrix of a graph.
    pub fn adjacency(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for &(u, v) in g.edges() {
            entries[u * n + v] = Complex64::new(1.0, 0.0);
            entries[v * n + u] = Complex64::new(1.0, 0.0);
        }
        SymmetricMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.entries.chunks(self.n).map(<[Complex64]>::to_vec).collect()
    }

    /// `max |a_ij − 1|`.
    pub fn deviation(&self) -> f64 {
        self.entries.iter().map(|z| (z - Complex64::new(1.0, 0.0)).norm()).fold(0.0, f64::max)
    }
}

fn check_region(a: &SymmetricMatrix, eval: Evaluation, radius: f64, what: &str) -> Result<()> {
    if let Evaluation::Approx { .. } = eval {
        let dev = a.deviation();
        if !(dev < radius) {
            return Err(Error::NoCertificate(format!(
                "{what}: max |1 - a_ij| = {dev:.6e} is not below {radius:.6e}"
            )));
        }
    }
    Ok(())
}

/// Hafnian of a `2n × 2n` symmetric matrix through `n` disjoint edges, `k = 2n`,
/// `m = (1, ..., 1)`: `haf(A) = Q / (2^n n!)`.
pub fn hafnian_instance(a: &SymmetricMatrix) -> Result<ApplicationInstance> {
    let dim = a.dim();
    if dim % 2 != 0 {
        return Err(Error::invalid(format!("matrix: hafnian needs even dimension, got {dim}")));
    }
    let n = dim / 2;
    let graph = Graph::perfect_matching(n)?;
    let weights = EdgeWeights::uniform(&graph, dim, &a.rows())?;
    Ok(ApplicationInstance {
        graph,
        mult: MultiplicityVector::ones(dim),
        weights,
        normalizer_log: n as f64 * 2f64.ln() + ln_factorial(n),
        description: format!("hafnian of a {dim}x{dim} matrix"),
        warnings: Vec::new(),
    })
}

pub fn hafnian(a: &SymmetricMatrix, eval: Evaluation, budget: &WorkBudget) -> Result<AppValue> {
    let inst = hafnian_instance(a)?;
    check_region(a, eval, ALPHA, "hafnian")?;
    inst.evaluate(eval, budget)
}

/// Cycle `G` on `n` vertices, `k = n`, `m = (1, ..., 1)`.
///
/// With `cycles = false` the target is `Q / n`, the sum over single-cycle permutations σ
/// of `Π a_{iσ(i)}`; with `cycles = true` it is `Q / (2n)`, the number of Hamiltonian
/// cycles for a 0/1 adjacency matrix.
pub fn hamiltonian_instance(a: &SymmetricMatrix, cycles: bool) -> Result<ApplicationInstance> {
    let n = a.dim();
    if n < 3 {
        return Err(Error::invalid(format!("matrix: Hamiltonian permanent needs n >= 3, got {n}")));
    }
    let graph = Graph::cycle(n)?;
    let weights = EdgeWeights::uniform(&graph, n, &a.rows())?;
    let divisor = if cycles { 2 * n } else { n };
    Ok(ApplicationInstance {
        graph,
        mult: MultiplicityVector::ones(n),
        weights,
        normalizer_log: (divisor as f64).ln(),
        description: if cycles {
            format!("Hamiltonian cycles, n = {n}")
        } else {
            format!("Hamiltonian permanent, n = {n}")
        },
        warnings: Vec::new(),
    })
}

pub fn hamiltonian_permanent(
    a: &SymmetricMatrix,
    eval: Evaluation,
    cycles: bool,
    budget: &WorkBudget,
) -> Result<AppValue> {
    let inst = hamiltonian_instance(a, cycles)?;
    check_region(a, eval, ALPHA / 2.0, "hamiltonian permanent")?;
    inst.evaluate(eval, budget)
}

/// `K_n` plus `k − n` isolated vertices colored bijectively by the `k` host vertices.
///
/// Hard: `a_ij` is the host adjacency and the target is the number of `n`-cliques.
/// Soft: `a_ij = 1 ± γ/(n − 1)` on host edges / non-edges and the target is
/// `Σ_{|S|=n} ((1 − γ/(n−1))/(1 + γ/(n−1)))^{t(S)}`, `t(S)` the non-adjacent pairs in `S`.
pub fn clique_instance(
    host_vertices: usize,
    host_edges: &[(usize, usize)],
    n: usize,
    mode: Constraint,
) -> Result<ApplicationInstance> {
    let host = Graph::new_allow_empty(host_vertices, host_edges)?;
    let k = host.vertex_count();
    if n < 3 || n > k {
        return Err(Error::invalid(format!("size: need 3 <= n <= k = {k}, got {n}")));
    }
    let graph = Graph::complete_with_isolated(n, k - n)?;
    let pairs = (n * (n - 1) / 2) as f64;
    let base = ln_factorial(n) + ln_factorial(k - n);
    let (on, off, normalizer_log, warnings, description) = match mode {
        Constraint::Hard => (1.0, 0.0, base, Vec::new(), format!("cliques of size {n}")),
        Constraint::Soft { gamma } => {
            check_gamma(gamma, n - 1)?;
            let step = gamma / (n - 1) as f64;
            (
                1.0 + step,
                1.0 - step,
                base + pairs * (1.0 + step).ln(),
                gamma_warning(gamma).into_iter().collect(),
                format!("soft clique density sum, n = {n}, gamma = {gamma}"),
            )
        }
    };
    let matrix: Vec<Vec<f64>> = (0..k)
        .map(|i| (0..k).map(|j| if i != j && host.has_edge(i, j) { on } else { off }).collect())
        .collect();
    let weights = EdgeWeights::uniform_real(&graph, &matrix)?;
    Ok(ApplicationInstance { graph, mult: MultiplicityVector::ones(k), weights, normalizer_log, description, warnings })
}

pub fn clique_density_sum(
    host_vertices: usize,
    host_edges: &[(usize, usize)],
    n: usize,
    mode: Constraint,
    eval: Evaluation,
    budget: &WorkBudget,
) -> Result<AppValue> {
    clique_instance(host_vertices, host_edges, n, mode)?.evaluate(eval, budget)
}

/// Colorings with prescribed class sizes.
///
/// Hard: `a_ij = 1 − δ_ij`, `Q` counts proper colorings using color `i` exactly `μ_i`
/// times. Soft: diagonal `1 − γ/Δ`, off-diagonal `1 + γ/Δ`, target `(1 + γ/Δ)^{−|E|} Q`.
pub fn coloring_instance(g: &Graph, m: &MultiplicityVector, mode: Constraint) -> Result<ApplicationInstance> {
    if m.total() != g.vertex_count() {
        return Err(Error::invalid("mult: multiplicities do not sum to the vertex count"));
    }
    let k = m.k();
    let delta = g.max_degree() as f64;
    let (diag, off, normalizer_log, warnings, description) = match mode {
        Constraint::Hard => (0.0, 1.0, 0.0, Vec::new(), format!("proper colorings with counts {:?}", m.counts())),
        Constraint::Soft { gamma } => {
            check_gamma(gamma, g.max_degree())?;
            (
                1.0 - gamma / delta,
                1.0 + gamma / delta,
                g.edge_count() as f64 * (1.0 + gamma / delta).ln(),
                gamma_warning(gamma).into_iter().collect(),
                format!("soft colorings with counts {:?}, gamma = {gamma}", m.counts()),
            )
        }
    };
    let matrix: Vec<Vec<f64>> = (0..k).map(|i| (0..k).map(|j| if i == j { diag } else { off }).collect()).collect();
    let weights = EdgeWeights::uniform_real(g, &matrix)?;
    Ok(ApplicationInstance { graph: g.clone(), mult: m.clone(), weights, normalizer_log, description, warnings })
}

pub fn coloring_partition(
    g: &Graph,
    m: &MultiplicityVector,
    mode: Constraint,
    eval: Evaluation,
    budget: &WorkBudget,
) -> Result<AppValue> {
    coloring_instance(g, m, mode)?.evaluate(eval, budget)
}
