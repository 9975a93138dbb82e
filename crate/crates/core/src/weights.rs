//! Per-edge symmetric weight blocks `b^{uv}_{ij}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::Graph;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// One symmetric `k × k` complex block per canonical edge of a [`Graph`].
///
/// Blocks are stored full (row-major), with `b_ij = b_ji` checked on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWeights {
    k: usize,
    blocks: Vec<Vec<Complex64>>,
}

fn check_block(k: usize, block: &[Complex64], what: &str) -> Result<()> {
    if block.len() != k * k {
        return Err(Error::invalid(format!("{what}: expected {k}x{k} block, got {} entries", block.len())));
    }
    for i in 0..k {
        for j in i + 1..k {
            if block[i * k + j] != block[j * k + i] {
                return Err(Error::invalid(format!(
                    "{what}: block is not symmetric at ({i}, {j}): {} vs {}",
                    block[i * k + j],
                    block[j * k + i]
                )));
            }
        }
    }
    Ok(())
}

fn flatten(k: usize, rows: &[Vec<Complex64>], what: &str) -> Result<Vec<Complex64>> {
    if rows.len() != k || rows.iter().any(|r| r.len() != k) {
        return Err(Error::invalid(format!("{what}: expected a {k}x{k} matrix")));
    }
    Ok(rows.iter().flatten().copied().collect())
}

impl EdgeWeights {
    /// The same matrix `A` on every edge.
    pub fn uniform(g: &Graph, k: usize, matrix: &[Vec<Complex64>]) -> Result<Self> {
        if k < 1 {
            return Err(Error::invalid("k: color count must be at least 1"));
        }
        let block = flatten(k, matrix, "uniform")?;
        check_block(k, &block, "uniform")?;
        Ok(EdgeWeights { k, blocks: vec![block; g.edge_count()] })
    }

    /// Uniform real matrix; convenience for tests and adapters.
    pub fn uniform_real(g: &Graph, matrix: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> =
            matrix.iter().map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect();
        Self::uniform(g, matrix.len(), &rows)
    }

    /// One block per canonical edge, each given as `k` rows.
    pub fn per_edge(g: &Graph, k: usize, blocks: &[Vec<Vec<Complex64>>]) -> Result<Self> {
        if k < 1 {
            return Err(Error::invalid("k: color count must be at least 1"));
        }
        if blocks.len() != g.edge_count() {
            return Err(Error::invalid(format!(
                "per_edge: expected {} blocks (one per edge), got {}",
                g.edge_count(),
                blocks.len()
            )));
        }
        let mut flat = Vec::with_capacity(blocks.len());
        for (e, rows) in blocks.iter().enumerate() {
            let what = format!("per_edge[{e}]");
            let block = flatten(k, rows, &what)?;
            check_block(k, &block, &what)?;
            flat.push(block);
        }
        Ok(EdgeWeights { k, blocks: flat })
    }

    /// Builds blocks from `f(edge, i, j)`, evaluated for `i <= j` and mirrored.
    pub fn from_fn(g: &Graph, k: usize, mut f: impl FnMut(usize, usize, usize) -> Complex64) -> Result<Self> {
        if k < 1 {
            return Err(Error::invalid("k: color count must be at least 1"));
        }
        let blocks = (0..g.edge_count())
            .map(|e| {
                let mut block = vec![ONE; k * k];
                for i in 0..k {
                    for j in i..k {
                        let z = f(e, i, j);
                        block[i * k + j] = z;
                        block[j * k + i] = z;
                    }
                }
                block
            })
            .collect();
        Ok(EdgeWeights { k, blocks })
    }

    /// The all-ones array `J`.
    pub fn all_ones(g: &Graph, k: usize) -> Result<Self> {
        Self::from_fn(g, k, |_, _, _| ONE)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.blocks.len()
    }

    #[inline]
    pub fn get(&self, edge: usize, i: usize, j: usize) -> Complex64 {
        self.blocks[edge][i * self.k + j]
    }

    pub fn block(&self, edge: usize) -> &[Complex64] {
        &self.blocks[edge]
    }

    /// True when the block of `edge` differs from all-ones in some entry.
    pub fn is_support_edge(&self, edge: usize) -> bool {
        self.blocks[edge].iter().any(|&z| z != ONE)
    }

    /// Canonical indices of edges whose block is not exactly all-ones.
    pub fn support_edges(&self) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&e| self.is_support_edge(e)).collect()
    }

    /// `max |b^e_ij − 1|` over all edges and colors.
    pub fn deviation(&self) -> f64 {
        self.blocks.iter().flatten().map(|&z| (z - ONE).norm()).fold(0.0, f64::max)
    }

    /// Membership in the closed polydisc of radius `delta` around `J`.
    pub fn in_polydisc(&self, delta: f64) -> bool {
        self.deviation() <= delta
    }

    /// Entrywise `1 + t (b − 1)`.
    pub fn interpolate(&self, t: Complex64) -> EdgeWeights {
        let blocks =
            self.blocks.iter().map(|b| b.iter().map(|&z| ONE + t * (z - ONE)).collect()).collect();
        EdgeWeights { k: self.k, blocks }
    }

    /// Applies a color permutation: the new color `perm[i]` plays the role of old color `i`.
    pub fn permute_colors(&self, perm: &[usize]) -> EdgeWeights {
        let k = self.k;
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut out = vec![ONE; k * k];
                for i in 0..k {
                    for j in 0..k {
                        out[perm[i] * k + perm[j]] = b[i * k + j];
                    }
                }
                out
            })
            .collect();
        EdgeWeights { k, blocks }
    }

    pub(crate) fn check_compatible(&self, g: &Graph, k: usize) -> Result<()> {
        if self.blocks.len() != g.edge_count() {
            return Err(Error::invalid(format!(
                "weights: {} blocks for a graph with {} edges",
                self.blocks.len(),
                g.edge_count()
            )));
        }
        if self.k != k {
            return Err(Error::invalid(format!(
                "weights: color count {} does not match multiplicity length {k}",
                self.k
            )));
        }
        Ok(())
    }
}
