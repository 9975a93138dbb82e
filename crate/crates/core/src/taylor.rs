//! Taylor approximation of `ln Q_{G,m}(B)` with a certified additive error.
//!
//! With `g(t) = Q_{G,m}(J + t(B − J))` and `f = ln g`, the engine computes the
//! normalized derivatives `h_j = g^{(j)}(0) / g(0)` by enumerating edge subsets and partial
//! colorings of their endpoints, converts them to the derivatives `f_j` of `f` through the
//! triangular system `h_j = Σ_{i<j} C(j−1, i) h_i f_{j−i}`, and sums the Taylor polynomial
//! of `f` at 0 evaluated at `t = 1`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::combinatorics::{binomial, ln_multinomial, pascal_rows};
use crate::config::WorkBudget;
use crate::error::{Error, Result};
use crate::graph::{Graph, MultiplicityVector};
use crate::weights::EdgeWeights;
use crate::zeros::{compute_beta, Beta, ALPHA};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// How the Taylor order is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrderMode {
    /// Use exactly this order; the certificate is attached only if one exists.
    Fixed(usize),
    /// Smallest order whose certified additive error on the log is at most this value.
    Epsilon(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationResult {
    /// Approximation of `ln Q_{G,m}(B)` on the branch that is real at `B = J`.
    pub log_value: Complex64,
    pub order: usize,
    /// Certified additive error on `log_value`; `None` when β ≤ 1 (no certificate).
    pub error_bound: Option<f64>,
    pub beta: Beta,
    /// `ln Q_{G,m}(J) = ln multinomial(|V|; m)`.
    pub log_at_j: f64,
    /// Number of edges whose block differs from all-ones.
    pub support_edges: usize,
}

/// Fraction of the `multinomial(|V|; m)` maps that agree with a partial map using color
/// `i` exactly `ν_i` times on `s = Σ ν_i` vertices: `Π_i (μ_i)_{ν_i} / (|V|)_s`.
pub fn extension_count_ratio(m: &MultiplicityVector, nu: &[usize], s: usize) -> Result<f64> {
    let n = m.total();
    if nu.len() != m.k() {
        return Err(Error::invalid(format!("nu: expected {} entries, got {}", m.k(), nu.len())));
    }
    if s > n {
        return Err(Error::invalid(format!("s = {s} exceeds |V| = {n}")));
    }
    if nu.iter().sum::<usize>() != s {
        return Err(Error::invalid("nu: entries must sum to s"));
    }
    if let Some(i) = (0..m.k()).find(|&i| nu[i] > m.counts()[i]) {
        return Err(Error::invalid(format!("nu[{i}] = {} exceeds μ = {}", nu[i], m.counts()[i])));
    }
    // Pair numerator and denominator factors so intermediate values stay in [0, 1].
    let mut num = Vec::with_capacity(s);
    for (i, &used) in nu.iter().enumerate() {
        num.extend((0..used).map(|r| (m.counts()[i] - r) as f64));
    }
    Ok(num.iter().enumerate().map(|(p, x)| x / (n - p) as f64).product())
}

/// Upper bound on the (subset, partial map) pairs visited for orders `1..=n`.
pub fn derivative_work(support: usize, k: usize, vertex_count: usize, n: usize) -> f64 {
    (1..=n.min(support))
        .map(|j| {
            let subsets = binomial(support, j).map_or(f64::INFINITY, |b| b as f64);
            subsets * (k as f64).powi((2 * j).min(vertex_count) as i32)
        })
        .sum()
}

struct DerivativeSearch<'a> {
    m: &'a MultiplicityVector,
    b: &'a EdgeWeights,
    edges: Vec<(usize, (usize, usize))>,
    max_order: usize,
    vertex_count: usize,
}

/// Mutable state of one depth-first walk over edge subsets.
struct Walk {
    subset: Vec<usize>,
    sums: Vec<Complex64>,
}

impl DerivativeSearch<'_> {
    /// Σ over partial maps of the subset's endpoints of ratio × Π (b − 1).
    fn subset_term(&self, subset: &[usize]) -> Complex64 {
        let mut verts: Vec<usize> = Vec::with_capacity(2 * subset.len());
        // closing[p]: edges whose second endpoint (in `verts` order) sits at position p.
        let mut closing: Vec<Vec<(usize, usize)>> = Vec::with_capacity(2 * subset.len());
        for &idx in subset {
            let (e, (u, v)) = self.edges[idx];
            let pu = match verts.iter().position(|&x| x == u) {
                Some(p) => p,
                None => {
                    verts.push(u);
                    closing.push(Vec::new());
                    verts.len() - 1
                }
            };
            let pv = match verts.iter().position(|&x| x == v) {
                Some(p) => p,
                None => {
                    verts.push(v);
                    closing.push(Vec::new());
                    verts.len() - 1
                }
            };
            if pu < pv {
                closing[pv].push((e, pu));
            } else {
                closing[pu].push((e, pv));
            }
        }
        let mut colors = vec![0usize; verts.len()];
        let mut used = vec![0usize; self.m.k()];
        self.assign(0, ONE, &closing, &mut colors, &mut used)
    }

    fn assign(
        &self,
        p: usize,
        acc: Complex64,
        closing: &[Vec<(usize, usize)>],
        colors: &mut [usize],
        used: &mut [usize],
    ) -> Complex64 {
        if p == colors.len() {
            return acc;
        }
        let mut sum = ZERO;
        let remaining = (self.vertex_count - p) as f64;
        for c in 0..self.m.k() {
            let mu = self.m.counts()[c];
            if used[c] >= mu {
                continue;
            }
            colors[p] = c;
            let mut term = acc * ((mu - used[c]) as f64 / remaining);
            for &(e, other) in &closing[p] {
                // Blocks are symmetric, so the orientation does not matter.
                term *= self.b.get(e, c, colors[other]) - ONE;
            }
            if term == ZERO {
                continue;
            }
            used[c] += 1;
            sum += self.assign(p + 1, term, closing, colors, used);
            used[c] -= 1;
        }
        sum
    }

    fn extend(&self, next: usize, walk: &mut Walk) {
        let j = walk.subset.len();
        walk.sums[j] += self.subset_term(&walk.subset);
        if j == self.max_order {
            return;
        }
        for idx in next..self.edges.len() {
            walk.subset.push(idx);
            self.extend(idx + 1, walk);
            walk.subset.pop();
        }
    }

    /// Sums indexed by subset size `0..=max_order`, for subsets whose smallest edge is `first`.
    fn rooted_sums(&self, first: usize) -> Vec<Complex64> {
        let mut walk = Walk { subset: vec![first], sums: vec![ZERO; self.max_order + 1] };
        self.extend(first + 1, &mut walk);
        walk.sums
    }
}

/// `h_1, ..., h_n` where `h_j = g^{(j)}(0) / g(0)`.
///
/// Unordered `j`-subsets of the support edges are enumerated and the result multiplied by
/// `j!`. Orders above the support size are exactly zero.
pub fn normalized_derivatives(
    g: &Graph,
    m: &MultiplicityVector,
    b: &EdgeWeights,
    n: usize,
    budget: &WorkBudget,
) -> Result<Vec<Complex64>> {
    b.check_compatible(g, m.k())?;
    if m.total() != g.vertex_count() {
        return Err(Error::invalid("mult: multiplicities do not sum to the vertex count"));
    }
    let support = b.support_edges();
    let work = derivative_work(support.len(), m.k(), g.vertex_count(), n);
    if work > budget.taylor {
        return Err(too_large_for_order(work, budget.taylor, support.len(), m.k(), g.vertex_count()));
    }
    let search = DerivativeSearch {
        m,
        b,
        edges: support.iter().map(|&e| (e, g.edges()[e])).collect(),
        max_order: n.min(support.len()),
        vertex_count: g.vertex_count(),
    };
    let mut sums = vec![ZERO; n + 1];
    if search.max_order > 0 {
        // Fixed block per root edge, reduced in index order: independent of thread count.
        let blocks: Vec<Vec<Complex64>> =
            (0..search.edges.len()).into_par_iter().map(|first| search.rooted_sums(first)).collect();
        for block in blocks {
            for (j, s) in block.into_iter().enumerate() {
                sums[j] += s;
            }
        }
    }
    let mut factorial = 1.0;
    Ok((1..=n)
        .map(|j| {
            factorial *= j as f64;
            sums[j] * factorial
        })
        .collect())
}

/// Single normalized derivative `h_j`, `j ≥ 1`.
pub fn normalized_derivative(
    g: &Graph,
    m: &MultiplicityVector,
    b: &EdgeWeights,
    j: usize,
    budget: &WorkBudget,
) -> Result<Complex64> {
    if j == 0 {
        return Err(Error::invalid("derivative order must be at least 1"));
    }
    Ok(normalized_derivatives(g, m, b, j, budget)?[j - 1])
}

/// Solves the triangular system linking derivatives of `g/g(0)` (`h`) and of `ln g` (`f`).
pub fn log_derivatives(h: &[Complex64]) -> Vec<Complex64> {
    let n = h.len();
    let pascal = pascal_rows(n.saturating_sub(1));
    let mut f: Vec<Complex64> = Vec::with_capacity(n);
    for j in 1..=n {
        let mut fj = h[j - 1];
        for i in 1..j {
            fj -= h[i - 1] * f[j - i - 1] * pascal[j - 1][i] as f64;
        }
        f.push(fj);
    }
    f
}

/// Additive error `|E'| / ((n + 1) β^n (β − 1))` of the order-`n` Taylor polynomial.
pub fn error_bound(edge_count: usize, beta: f64, n: usize) -> Result<f64> {
    if beta.is_infinite() && beta > 0.0 || edge_count == 0 {
        return Ok(0.0);
    }
    if !(beta > 1.0) {
        return Err(Error::NoCertificate(format!("zero-free radius β = {beta} does not exceed 1")));
    }
    Ok(edge_count as f64 / ((n + 1) as f64 * beta.powf(n as f64) * (beta - 1.0)))
}

/// Smallest `n` with `error_bound(edge_count, beta, n) <= epsilon`.
pub fn select_order(edge_count: usize, beta: f64, epsilon: f64) -> Result<usize> {
    if !(epsilon > 0.0) {
        return Err(Error::invalid(format!("epsilon must be positive, got {epsilon}")));
    }
    if epsilon.is_infinite() {
        return Ok(0);
    }
    let bound = |n: usize| error_bound(edge_count, beta, n);
    if bound(0)? <= epsilon {
        return Ok(0);
    }
    // Dropping the (n + 1) factor gives an order that always suffices.
    let upper = ((edge_count as f64 / (epsilon * (beta - 1.0))).ln() / beta.ln()).ceil();
    if !(upper < usize::MAX as f64 / 2.0) {
        return Err(Error::NoCertificate(format!("no feasible order reaches epsilon = {epsilon} with β = {beta}")));
    }
    let (mut lo, mut hi) = (0usize, (upper as usize).max(1));
    while bound(hi)? > epsilon {
        hi *= 2;
    }
    // Invariant: bound(lo) > epsilon >= bound(hi).
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if bound(mid)? > epsilon {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

fn too_large_for_order(work: f64, cap: f64, support: usize, k: usize, vertex_count: usize) -> Error {
    let achievable = (0..)
        .take_while(|&n| n <= support && derivative_work(support, k, vertex_count, n) <= cap)
        .last()
        .unwrap_or(0);
    Error::TooLarge { needed: work, cap, hint: format!("; largest feasible order is {achievable}") }
}

/// Approximates `ln Q_{G,m}(B)` by the degree-`n` Taylor polynomial of
/// `t ↦ ln Q(J + t(B − J))` at 0, evaluated at `t = 1`.
///
/// In [`OrderMode::Epsilon`] the instance must lie strictly inside the zero-free polydisc
/// (`deviation(B) < α/Δ(G)`); otherwise [`Error::NoCertificate`] is returned.
pub fn approximate_log_partition(
    g: &Graph,
    m: &MultiplicityVector,
    b: &EdgeWeights,
    mode: OrderMode,
    budget: &WorkBudget,
) -> Result<ApproximationResult> {
    b.check_compatible(g, m.k())?;
    let support = b.support_edges().len();
    let beta = compute_beta(g, b);
    let log_at_j = ln_multinomial(m.counts());

    let order = match mode {
        OrderMode::Fixed(n) => n,
        OrderMode::Epsilon(eps) => {
            if !(eps > 0.0) {
                return Err(Error::invalid(format!("epsilon must be positive, got {eps}")));
            }
            match beta {
                Beta::Unbounded => 0,
                Beta::Finite(bv) if bv > 1.0 => select_order(support, bv, eps)?,
                Beta::Finite(_) => {
                    return Err(Error::NoCertificate(format!(
                        "deviation {:.6e} is not below α/Δ = {:.6e}",
                        b.deviation(),
                        ALPHA / g.max_degree() as f64
                    )))
                }
            }
        }
    };
    let error = if beta.certifies() { Some(error_bound(support, beta.value(), order)?) } else { None };

    let h = normalized_derivatives(g, m, b, order, budget)?;
    let f = log_derivatives(&h);
    let mut factorial = 1.0;
    let mut log_value = Complex64::new(log_at_j, 0.0);
    for (j, fj) in f.iter().enumerate() {
        factorial *= (j + 1) as f64;
        log_value += fj / factorial;
    }
    Ok(ApproximationResult { log_value, order, error_bound: error, beta, log_at_j, support_edges: support })
}
