//! Brute-force evaluation of `Q_{G,m}`, `Q_G` and the prefix-restricted sums `Q^W_I`.
//!
//! These are exponential-time ground truth for the Taylor engine and the adapters. Every
//! entry point estimates its work (maps × edges) and refuses instances above the
//! oracle budget.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::combinatorics::{ln_multinomial, multinomial, multinomial_f64};
use crate::config::WorkBudget;
use crate::error::{Error, Result};
use crate::graph::{Graph, MultiplicityVector};
use crate::weights::EdgeWeights;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Vertices `W = (v_1, ..., v_r)` pinned to colors `I = (i_1, ..., i_r)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RestrictedPrefix {
    vertices: Vec<usize>,
    colors: Vec<usize>,
}

impl RestrictedPrefix {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Checks that `W` is duplicate-free and that `I` uses color `i` at most `μ_i` times.
    pub fn new(g: &Graph, m: &MultiplicityVector, vertices: Vec<usize>, colors: Vec<usize>) -> Result<Self> {
        if vertices.len() != colors.len() {
            return Err(Error::invalid(format!(
                "prefix: {} vertices but {} colors",
                vertices.len(),
                colors.len()
            )));
        }
        let mut seen = vec![false; g.vertex_count()];
        for &v in &vertices {
            if v >= g.vertex_count() {
                return Err(Error::invalid(format!("prefix: vertex {v} out of range")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::invalid(format!("prefix: vertex {v} repeated")));
            }
        }
        let mut used = vec![0usize; m.k()];
        for &c in &colors {
            if c >= m.k() {
                return Err(Error::invalid(format!("prefix: color {c} out of range")));
            }
            used[c] += 1;
            if used[c] > m.counts()[c] {
                return Err(Error::invalid(format!(
                    "prefix: color {c} used {} times, multiplicity is {}",
                    used[c],
                    m.counts()[c]
                )));
            }
        }
        Ok(RestrictedPrefix { vertices, colors })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// ν_i(I) for every color.
    pub fn usage(&self, k: usize) -> Vec<usize> {
        let mut nu = vec![0; k];
        for &c in &self.colors {
            nu[c] += 1;
        }
        nu
    }

    /// `(W, v)` and `(I, i)`, or `None` if the extension is not admissible.
    pub fn extended(&self, g: &Graph, m: &MultiplicityVector, v: usize, color: usize) -> Option<Self> {
        let mut vertices = self.vertices.clone();
        let mut colors = self.colors.clone();
        vertices.push(v);
        colors.push(color);
        Self::new(g, m, vertices, colors).ok()
    }
}

struct Enumerator<'a> {
    w: &'a EdgeWeights,
    /// For each vertex, its neighbors with smaller index and the connecting edge.
    lower: Vec<Vec<(usize, usize)>>,
    fixed: Vec<Option<usize>>,
    remaining: Option<Vec<usize>>,
    coloring: Vec<usize>,
}

impl<'a> Enumerator<'a> {
    fn new(g: &Graph, w: &'a EdgeWeights, fixed: Vec<Option<usize>>, remaining: Option<Vec<usize>>) -> Self {
        let mut lower = vec![Vec::new(); g.vertex_count()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            lower[v].push((u, e));
        }
        Enumerator { w, lower, fixed, remaining, coloring: vec![0; g.vertex_count()] }
    }

    fn run(&mut self) -> Complex64 {
        self.visit(0, ONE)
    }

    fn factor(&self, v: usize, c: usize) -> Complex64 {
        let mut f = ONE;
        for &(u, e) in &self.lower[v] {
            f *= self.w.get(e, self.coloring[u], c);
        }
        f
    }

    fn visit(&mut self, v: usize, acc: Complex64) -> Complex64 {
        if v == self.coloring.len() {
            return acc;
        }
        if let Some(c) = self.fixed[v] {
            self.coloring[v] = c;
            let next = acc * self.factor(v, c);
            return if next == ZERO { ZERO } else { self.visit(v + 1, next) };
        }
        let mut sum = ZERO;
        for c in 0..self.w.k() {
            if let Some(rem) = &self.remaining {
                if rem[c] == 0 {
                    continue;
                }
            }
            self.coloring[v] = c;
            let next = acc * self.factor(v, c);
            if next == ZERO {
                continue;
            }
            if let Some(rem) = &mut self.remaining {
                rem[c] -= 1;
            }
            sum += self.visit(v + 1, next);
            if let Some(rem) = &mut self.remaining {
                rem[c] += 1;
            }
        }
        sum
    }
}

fn check_budget(maps: f64, g: &Graph, budget: &WorkBudget) -> Result<()> {
    let work = maps * g.edge_count().max(1) as f64;
    if work > budget.oracle {
        return Err(Error::too_large(work, budget.oracle));
    }
    Ok(())
}

/// `Q_{G,m}(B)`: sum over maps with `|φ⁻¹(i)| = μ_i` of the product of edge weights.
pub fn exact_partition(g: &Graph, m: &MultiplicityVector, w: &EdgeWeights, budget: &WorkBudget) -> Result<Complex64> {
    exact_restricted(g, m, w, &RestrictedPrefix::empty(), budget)
}

/// `Q^W_I(B)`: like [`exact_partition`] with `φ(v_j) = i_j` for every prefix position.
pub fn exact_restricted(
    g: &Graph,
    m: &MultiplicityVector,
    w: &EdgeWeights,
    p: &RestrictedPrefix,
    budget: &WorkBudget,
) -> Result<Complex64> {
    if m.total() != g.vertex_count() {
        return Err(Error::invalid("mult: multiplicities do not sum to the vertex count"));
    }
    w.check_compatible(g, m.k())?;
    // Re-validate in case the prefix was built against another instance.
    let p = RestrictedPrefix::new(g, m, p.vertices.clone(), p.colors.clone())?;
    let nu = p.usage(m.k());
    let remaining: Vec<usize> = m.counts().iter().zip(&nu).map(|(mu, n)| mu - n).collect();
    check_budget(multinomial_f64(&remaining), g, budget)?;

    let mut fixed = vec![None; g.vertex_count()];
    for (&v, &c) in p.vertices.iter().zip(&p.colors) {
        fixed[v] = Some(c);
    }
    Ok(Enumerator::new(g, w, fixed, Some(remaining)).run())
}

/// `Q_G(B)`: sum over all `k^{|V|}` maps, without multiplicity constraints.
pub fn exact_partition_unrestricted(g: &Graph, w: &EdgeWeights, budget: &WorkBudget) -> Result<Complex64> {
    if w.edge_count() != g.edge_count() {
        return Err(Error::invalid("weights: block count does not match the edge count"));
    }
    let maps = (w.k() as f64).powi(g.vertex_count() as i32);
    check_budget(maps, g, budget)?;
    Ok(Enumerator::new(g, w, vec![None; g.vertex_count()], None).run())
}

/// Enumerates maps while carrying `Π_e (1 + t(b_e − 1))` over the closed support edges as
/// a polynomial in `t`.
struct PolyEnumerator<'a> {
    w: &'a EdgeWeights,
    /// For each vertex, its lower neighbors through support edges.
    lower: Vec<Vec<(usize, usize)>>,
    remaining: Vec<usize>,
    coloring: Vec<usize>,
    /// `levels[v]` is the product before `v` is colored.
    levels: Vec<Vec<Complex64>>,
    total: Vec<Complex64>,
}

impl PolyEnumerator<'_> {
    fn visit(&mut self, v: usize) {
        if v == self.coloring.len() {
            for (t, c) in self.total.iter_mut().zip(&self.levels[v]) {
                *t += c;
            }
            return;
        }
        for c in 0..self.w.k() {
            if self.remaining[c] == 0 {
                continue;
            }
            self.coloring[v] = c;
            let (head, tail) = self.levels.split_at_mut(v + 1);
            let next = &mut tail[0];
            next.copy_from_slice(&head[v]);
            for &(u, e) in &self.lower[v] {
                let a = self.w.get(e, self.coloring[u], c) - ONE;
                for j in (1..next.len()).rev() {
                    let lower = next[j - 1];
                    next[j] += a * lower;
                }
            }
            self.remaining[c] -= 1;
            self.visit(v + 1);
            self.remaining[c] += 1;
        }
    }
}

/// Coefficients `c_0, ..., c_d` of `g(t) = Q_{G,m}(J + t(B − J))`, `d = |E'|`.
///
/// Each map contributes `Π_{e ∈ E'} (1 + t(b_e − 1))`, expanded exactly. `c_0` is the
/// exact multinomial.
pub fn g_polynomial(
    g: &Graph,
    m: &MultiplicityVector,
    b: &EdgeWeights,
    budget: &WorkBudget,
) -> Result<Vec<Complex64>> {
    if m.total() != g.vertex_count() {
        return Err(Error::invalid("mult: multiplicities do not sum to the vertex count"));
    }
    b.check_compatible(g, m.k())?;
    let support = b.support_edges();
    let d = support.len();
    let c0 = multinomial(m.counts())
        .map(|c| c as f64)
        .unwrap_or_else(|| ln_multinomial(m.counts()).exp());
    if d == 0 {
        return Ok(vec![Complex64::new(c0, 0.0)]);
    }
    let work = multinomial_f64(m.counts()) * g.edge_count() as f64 * (d + 1) as f64;
    if work > budget.oracle {
        return Err(Error::too_large(work, budget.oracle));
    }
    let n = g.vertex_count();
    let mut lower = vec![Vec::new(); n];
    for &e in &support {
        let (u, v) = g.edges()[e];
        lower[v].push((u, e));
    }
    let mut first = vec![ZERO; d + 1];
    first[0] = ONE;
    let mut levels = vec![vec![ZERO; d + 1]; n + 1];
    levels[0] = first;
    let mut en = PolyEnumerator {
        w: b,
        lower,
        remaining: m.counts().to_vec(),
        coloring: vec![0; n],
        levels,
        total: vec![ZERO; d + 1],
    };
    en.visit(0);
    let mut coeffs = en.total;
    coeffs[0] = Complex64::new(c0, 0.0);
    Ok(coeffs)
}

/// Horner evaluation of `Σ c_j t^j`.
pub fn horner(coeffs: &[Complex64], t: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(ZERO, |acc, &c| acc * t + c)
}

/// `ln Q_{G,m}(B)` on the branch continued from the real value `ln g(0)` along `t ∈ [0, 1]`.
///
/// The modulus and the principal argument come from [`exact_partition`]; the winding is
/// tracked along the segment on the expanded polynomial `g`. Fails if `Q` vanishes.
pub fn exact_log_partition(
    g: &Graph,
    m: &MultiplicityVector,
    b: &EdgeWeights,
    budget: &WorkBudget,
) -> Result<Complex64> {
    let q = exact_partition(g, m, b, budget)?;
    if q == ZERO {
        return Err(Error::invalid("partition function is zero; logarithm undefined"));
    }
    let coeffs = g_polynomial(g, m, b, budget)?;
    let steps = 256 * coeffs.len();
    let mut arg = 0.0;
    let mut prev = coeffs[0];
    for s in 1..=steps {
        let cur = horner(&coeffs, Complex64::new(s as f64 / steps as f64, 0.0));
        arg += (cur / prev).arg();
        prev = cur;
    }
    // Snap the tracked argument to the exact principal argument plus a multiple of 2π.
    let principal = q.arg();
    let winding = ((arg - principal) / (2.0 * PI)).round();
    Ok(Complex64::new(q.norm().ln(), principal + 2.0 * PI * winding))
}
