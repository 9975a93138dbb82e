//! Random instances and direct enumerators shared by the integration tests.
//!
//! The enumerators here work straight from the combinatorial definitions (subsets,
//! matchings, cyclic permutations, colorings) and do not go through `Q_{G,m}`.

#![allow(dead_code)]

use std::f64::consts::PI;

use pfgm::{Complex64, EdgeWeights, Graph, MultiplicityVector};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn rel_diff(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// Random graph on `min_v..=max_v` vertices with at least one edge.
pub fn random_graph(rng: &mut impl Rng, min_v: usize, max_v: usize) -> Graph {
    let n = rng.gen_range(min_v..=max_v);
    let p = rng.gen_range(0.25..0.8);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    if edges.is_empty() {
        edges.push((0, 1));
    }
    edges.shuffle(rng);
    Graph::new(n, &edges).unwrap()
}

/// Random composition of `n` into `k` parts; all positive when `positive` (requires k ≤ n).
pub fn random_mult(rng: &mut impl Rng, n: usize, k: usize, positive: bool) -> MultiplicityVector {
    let mut counts = if positive { vec![1i64; k] } else { vec![0i64; k] };
    let base: usize = if positive { k } else { 0 };
    for _ in base..n {
        let i = rng.gen_range(0..k);
        counts[i] += 1;
    }
    MultiplicityVector::for_vertex_count(n, &counts).unwrap()
}

/// Blocks with entries `1 + r e^{iφ}`, `r ≤ max_dev`. About one edge in five keeps `J`.
pub fn random_weights(rng: &mut impl Rng, g: &Graph, k: usize, max_dev: f64) -> EdgeWeights {
    let keep: Vec<bool> = (0..g.edge_count()).map(|_| rng.gen_bool(0.2)).collect();
    let w = EdgeWeights::from_fn(g, k, |e, _, _| {
        if keep[e] {
            return c(1.0);
        }
        let r = max_dev * rng.gen::<f64>();
        let phi = 2.0 * PI * rng.gen::<f64>();
        c(1.0) + Complex64::from_polar(r, phi)
    })
    .unwrap();
    assert!(w.deviation() <= max_dev);
    w
}

/// Arbitrary symmetric complex blocks (not near `J`).
pub fn random_wild_weights(rng: &mut impl Rng, g: &Graph, k: usize) -> EdgeWeights {
    EdgeWeights::from_fn(g, k, |_, _, _| Complex64::new(rng.gen_range(-1.0..2.0), rng.gen_range(-1.0..1.0))).unwrap()
}

fn subsets_of_size(n: usize, s: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..(1 << n))
        .filter(move |mask| mask.count_ones() as usize == s)
        .map(move |mask| (0..n).filter(|&v| mask & (1 << v) != 0).collect())
}

/// Number of edges of `g` inside `set`.
pub fn spanned_edges(g: &Graph, set: &[usize]) -> usize {
    g.edges().iter().filter(|(u, v)| set.contains(u) && set.contains(v)).count()
}

pub fn count_independent_sets(g: &Graph, s: usize) -> u64 {
    subsets_of_size(g.vertex_count(), s).filter(|set| spanned_edges(g, set) == 0).count() as u64
}

/// `Σ_{|S|=s} r^{e(S)}`.
pub fn weighted_subset_sum(g: &Graph, s: usize, r: f64) -> f64 {
    subsets_of_size(g.vertex_count(), s).map(|set| r.powi(spanned_edges(g, &set) as i32)).sum()
}

/// `Σ_{|S|=n} r^{t(S)}` where `t(S)` counts non-adjacent pairs of the host inside `S`.
pub fn weighted_clique_sum(k: usize, host_edges: &[(usize, usize)], n: usize, r: f64) -> f64 {
    let adjacent = |u: usize, v: usize| host_edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u));
    subsets_of_size(k, n)
        .map(|set| {
            let mut missing = 0;
            for (i, &u) in set.iter().enumerate() {
                for &v in &set[i + 1..] {
                    if !adjacent(u, v) {
                        missing += 1;
                    }
                }
            }
            r.powi(missing)
        })
        .sum()
}

pub fn count_cliques(k: usize, host_edges: &[(usize, usize)], n: usize) -> u64 {
    weighted_clique_sum(k, host_edges, n, 0.0).round() as u64
}

/// Hafnian by recursive pairing of the lowest unmatched index.
pub fn hafnian_direct(a: &[Vec<Complex64>]) -> Complex64 {
    fn rec(a: &[Vec<Complex64>], free: &mut Vec<usize>) -> Complex64 {
        if free.is_empty() {
            return c(1.0);
        }
        let first = free.remove(0);
        let mut sum = c(0.0);
        for idx in 0..free.len() {
            let partner = free.remove(idx);
            sum += a[first][partner] * rec(a, free);
            free.insert(idx, partner);
        }
        free.insert(0, first);
        sum
    }
    let mut free: Vec<usize> = (0..a.len()).collect();
    rec(a, &mut free)
}

/// Sum over single-cycle permutations σ of `Π a_{iσ(i)}`: cycles `0 → p_1 → ... → p_{n−1} → 0`.
pub fn hamiltonian_permanent_direct(a: &[Vec<Complex64>]) -> Complex64 {
    fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permutations(items, k + 1, out);
            items.swap(k, i);
        }
    }
    let n = a.len();
    let mut rest: Vec<usize> = (1..n).collect();
    let mut perms = Vec::new();
    permutations(&mut rest, 0, &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let mut cycle = vec![0];
            cycle.extend(p);
            (0..n).map(|i| a[cycle[i]][cycle[(i + 1) % n]]).product::<Complex64>()
        })
        .sum()
}

/// Maps `V → [k]` with the prescribed class sizes, visited in lexicographic order.
pub fn for_each_coloring(n: usize, counts: &[usize], mut f: impl FnMut(&[usize])) {
    fn rec(v: usize, coloring: &mut Vec<usize>, left: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if v == coloring.len() {
            f(coloring);
            return;
        }
        for col in 0..left.len() {
            if left[col] > 0 {
                left[col] -= 1;
                coloring[v] = col;
                rec(v + 1, coloring, left, f);
                left[col] += 1;
            }
        }
    }
    let mut coloring = vec![0; n];
    let mut left = counts.to_vec();
    rec(0, &mut coloring, &mut left, &mut f);
}

pub fn count_proper_colorings(g: &Graph, counts: &[usize]) -> u64 {
    let mut total = 0;
    for_each_coloring(g.vertex_count(), counts, |col| {
        if g.edges().iter().all(|&(u, v)| col[u] != col[v]) {
            total += 1;
        }
    });
    total
}

/// `Σ_φ r^{e(φ)}` with `e(φ)` the monochromatic edges.
pub fn weighted_coloring_sum(g: &Graph, counts: &[usize], r: f64) -> f64 {
    let mut total = 0.0;
    for_each_coloring(g.vertex_count(), counts, |col| {
        let bad = g.edges().iter().filter(|&&(u, v)| col[u] == col[v]).count();
        total += r.powi(bad as i32);
    });
    total
}
