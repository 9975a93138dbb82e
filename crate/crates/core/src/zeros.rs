//! Zero-free region constants, the certified radius β, and empirical zero checks.
//!
//! For every graph and every all-positive multiplicity vector, `Q_{G,m}(Z) ≠ 0` whenever
//! each entry of `Z` lies within `α/Δ(G)` of 1. Along the pencil `J + z(B − J)` this gives
//! a zero-free disc `|z| ≤ α / (Δ(G)·deviation(B))`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{ln_multinomial, multinomial, multinomial_f64};
use crate::config::WorkBudget;
use crate::error::{Error, Result};
use crate::graph::{Graph, MultiplicityVector};
use crate::oracle::{exact_partition, g_polynomial};
use crate::roots::{polynomial_roots, relative_residual, trim};
use crate::weights::EdgeWeights;

/// Zero-free radius constant, `0.565 τ / (4 + 0.565 τ)`.
pub const ALPHA: f64 = 0.1074337498;
/// Rounded α as usually quoted.
pub const ALPHA_ROUNDED: f64 = 0.107;
/// Default deviation budget γ for soft reductions.
pub const GAMMA_DEFAULT: f64 = 0.1;
/// Angle budget used to build the region.
pub const EPSILON_PROOF: f64 = 0.76;
/// Fixed point of `θ = arcsin(ε / cos(θ/2))` for ε = 0.76.
pub const THETA: f64 = 1.101463960;
/// `cos(θ/2)`.
pub const TAU: f64 = 0.8521416971;
/// Upper bound required of `ξ = 4α / ((1 − α/Δ) τ)`.
pub const XI_CAP: f64 = 0.565;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroRegionConstants {
    pub alpha: f64,
    pub alpha_rounded: f64,
    pub gamma_default: f64,
    pub epsilon_proof: f64,
    pub theta: f64,
    pub tau: f64,
    pub xi_cap: f64,
}

pub fn constants() -> ZeroRegionConstants {
    ZeroRegionConstants {
        alpha: ALPHA,
        alpha_rounded: ALPHA_ROUNDED,
        gamma_default: GAMMA_DEFAULT,
        epsilon_proof: EPSILON_PROOF,
        theta: THETA,
        tau: TAU,
        xi_cap: XI_CAP,
    }
}

impl ZeroRegionConstants {
    /// Polydisc radius `α / Δ` for a graph of maximum degree `max_degree`.
    pub fn region_radius(&self, max_degree: usize) -> f64 {
        self.alpha / max_degree as f64
    }
}

/// Radius of a zero-free disc of the pencil `z ↦ Q(J + z(B − J))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Beta {
    Finite(f64),
    /// `B = J`: the pencil is constant.
    Unbounded,
}

impl Beta {
    pub fn value(self) -> f64 {
        match self {
            Beta::Finite(b) => b,
            Beta::Unbounded => f64::INFINITY,
        }
    }

    /// True when the radius exceeds 1, i.e. a Taylor error certificate exists.
    pub fn certifies(self) -> bool {
        self.value() > 1.0
    }
}

/// `β = α / (Δ(G) · deviation(B))`.
pub fn compute_beta(g: &Graph, w: &EdgeWeights) -> Beta {
    let dev = w.deviation();
    if dev == 0.0 {
        Beta::Unbounded
    } else {
        Beta::Finite(ALPHA / (g.max_degree() as f64 * dev))
    }
}

/// Smallest modulus among the roots of `g(z) = Q_{G,m}(J + z(B − J))`.
///
/// Coefficients come from [`g_polynomial`]. Trailing coefficients below `1e-13 Σ|c_j|`
/// only move roots of very large modulus and are dropped before root finding; every root
/// is checked against a relative residual of `1e-8`. Returns [`Beta::Unbounded`] when `g` is constant.
pub fn root_margin(g: &Graph, m: &MultiplicityVector, b: &EdgeWeights, budget: &WorkBudget) -> Result<Beta> {
    let coeffs = g_polynomial(g, m, b, budget)?;
    let scale: f64 = coeffs.iter().map(|c| c.norm()).sum();
    let coeffs = trim(&coeffs, 1e-13 * scale);
    let roots = polynomial_roots(&coeffs);
    if roots.is_empty() {
        return Ok(Beta::Unbounded);
    }
    let mut margin = f64::INFINITY;
    for z in roots {
        let residual = relative_residual(&coeffs, z);
        if !(residual <= 1e-8) {
            return Err(Error::invalid(format!("root finder did not converge (residual {residual:.3e} at {z})")));
        }
        margin = margin.min(z.norm());
    }
    Ok(Beta::Finite(margin))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub trials: u64,
    pub delta: f64,
    pub min_abs_ratio: f64,
    pub zero_count: u64,
    pub seed: u64,
}

/// Random weight array with entries `1 + r e^{iφ}`, `r ~ U[0, δ]`, `φ ~ U[0, 2π)`.
pub fn sample_polydisc(g: &Graph, k: usize, delta: f64, rng: &mut impl Rng) -> EdgeWeights {
    EdgeWeights::from_fn(g, k, |_, _, _| {
        let r = delta * rng.gen::<f64>();
        let phi = 2.0 * PI * rng.gen::<f64>();
        Complex64::new(1.0, 0.0) + Complex64::from_polar(r, phi)
    })
    .expect("k >= 1 for a validated multiplicity vector")
}

/// Evaluates `Q_{G,m}` on `trials` random points of the polydisc of radius `delta`.
///
/// Trial `t` draws from a ChaCha8 stream `(seed, t)`, so the report does not depend on
/// the number of worker threads.
pub fn polydisc_scan(
    g: &Graph,
    m: &MultiplicityVector,
    delta: f64,
    trials: u64,
    seed: u64,
    budget: &WorkBudget,
) -> Result<ScanReport> {
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(Error::invalid(format!("delta: must be a non-negative number, got {delta}")));
    }
    let per_trial = multinomial_f64(m.counts()) * g.edge_count() as f64;
    if per_trial > budget.oracle {
        return Err(Error::too_large(per_trial, budget.oracle));
    }
    let norm = multinomial(m.counts()).map_or_else(|| ln_multinomial(m.counts()).exp(), |c| c as f64);
    let ratios = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            let z = sample_polydisc(g, m.k(), delta, &mut rng);
            exact_partition(g, m, &z, budget).map(|q| q.norm() / norm)
        })
        .collect::<Result<Vec<f64>>>()?;
    let min_abs_ratio = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let zero_count = ratios.iter().filter(|&&r| r < 1e-12).count() as u64;
    Ok(ScanReport {
        trials,
        delta,
        min_abs_ratio: if trials == 0 { 1.0 } else { min_abs_ratio },
        zero_count,
        seed,
    })
}
