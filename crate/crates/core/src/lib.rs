//! Partition functions of graph homomorphisms with prescribed multiplicities.
//!
//! For a graph `G = (V, E)`, a multiplicity vector `m = (μ_1, ..., μ_k)` summing to `|V|`
//! and per-edge symmetric `k × k` complex weight blocks `B`, the crate evaluates
//!
//! ```text
//! Q_{G,m}(B) = Σ_{φ : V → [k], |φ⁻¹(i)| = μ_i}  Π_{{u,v} ∈ E} b^{uv}_{φ(u) φ(v)}
//! ```
//!
//! exactly by enumeration ([`oracle`]) and approximately through the Taylor expansion of
//! `ln Q(J + t(B − J))` at `t = 0` with a certified additive error on the logarithm
//! ([`taylor`]). The certificate relies on the zero-free polydisc radius stored in
//! [`zeros`]. [`applications`] reduces independent sets, hafnians, Hamiltonian permanents,
//! clique sums and colorings to `Q_{G,m}`.

pub mod applications;
pub mod cli;
pub mod combinatorics;
pub mod config;
pub mod error;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod roots;
pub mod taylor;
pub mod weights;
pub mod zeros;

pub use num_complex::Complex64;

pub use config::WorkBudget;
pub use error::{Error, Result};
pub use graph::{Graph, MultiplicityVector};
pub use taylor::{approximate_log_partition, ApproximationResult, OrderMode};
pub use weights::EdgeWeights;
pub use zeros::{compute_beta, Beta, ZeroRegionConstants};
