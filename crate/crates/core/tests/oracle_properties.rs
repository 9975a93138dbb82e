mod common;

use common::*;
use pfgm::combinatorics::compositions;
use pfgm::oracle::{
    exact_partition, exact_partition_unrestricted, exact_restricted, g_polynomial, horner, RestrictedPrefix,
};
use pfgm::{Complex64, EdgeWeights, Graph, MultiplicityVector, WorkBudget};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn budget() -> WorkBudget {
    WorkBudget::default()
}

#[test]
fn restriction_recurrences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let g = random_graph(&mut rng, 2, 6);
        let k = rng.gen_range(1..=3.min(g.vertex_count()));
        let m = random_mult(&mut rng, g.vertex_count(), k, true);
        let w = random_wild_weights(&mut rng, &g, k);

        // Random admissible prefix shorter than |V|.
        let len = rng.gen_range(0..g.vertex_count());
        let mut verts: Vec<usize> = (0..g.vertex_count()).collect();
        verts.shuffle(&mut rng);
        let mut pool: Vec<usize> = m.counts().iter().enumerate().flat_map(|(i, &mu)| vec![i; mu]).collect();
        pool.shuffle(&mut rng);
        let p = RestrictedPrefix::new(&g, &m, verts[..len].to_vec(), pool[..len].to_vec()).unwrap();
        let base = exact_restricted(&g, &m, &w, &p, &budget()).unwrap();

        // Extend by a fixed free vertex over all admissible colors.
        let v = verts[len];
        let by_color: Complex64 = (0..k)
            .filter_map(|i| p.extended(&g, &m, v, i))
            .map(|q| exact_restricted(&g, &m, &w, &q, &budget()).unwrap())
            .sum();
        assert!(rel_diff(base, by_color) < 1e-10);

        // Extend by a fixed admissible color over all free vertices.
        let nu = p.usage(k);
        let color = (0..k).find(|&i| nu[i] < m.counts()[i]).unwrap();
        let by_vertex: Complex64 = (0..g.vertex_count())
            .filter_map(|u| p.extended(&g, &m, u, color))
            .map(|q| exact_restricted(&g, &m, &w, &q, &budget()).unwrap())
            .sum();
        let scaled = by_vertex / (m.counts()[color] - nu[color]) as f64;
        assert!(rel_diff(base, scaled) < 1e-10);
    }
}

#[test]
fn full_prefix_is_a_single_product() {
    let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
    let m = MultiplicityVector::validate(&g, &[2, 1, 1]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let w = random_wild_weights(&mut rng, &g, 3);
    let coloring = [0, 2, 0, 1];
    let p = RestrictedPrefix::new(&g, &m, vec![3, 0, 2, 1], vec![1, 0, 0, 2]).unwrap();
    let product: Complex64 =
        g.edges().iter().enumerate().map(|(e, &(u, v))| w.get(e, coloring[u], coloring[v])).product();
    let q = exact_restricted(&g, &m, &w, &p, &budget()).unwrap();
    assert!(rel_diff(q, product) < 1e-14);
    let empty = exact_restricted(&g, &m, &w, &RestrictedPrefix::empty(), &budget()).unwrap();
    assert_eq!(empty, exact_partition(&g, &m, &w, &budget()).unwrap());
}

#[test]
fn compositions_sum_to_unrestricted() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let g = random_graph(&mut rng, 2, 5);
        let k = rng.gen_range(1..=3);
        let w = random_wild_weights(&mut rng, &g, k);
        let total: Complex64 = compositions(g.vertex_count(), k)
            .iter()
            .map(|counts| {
                let counts: Vec<i64> = counts.iter().map(|&x| x as i64).collect();
                let m = MultiplicityVector::validate(&g, &counts).unwrap();
                exact_partition(&g, &m, &w, &budget()).unwrap()
            })
            .sum();
        let direct = exact_partition_unrestricted(&g, &w, &budget()).unwrap();
        assert!(rel_diff(total, direct) < 1e-10);
    }
}

#[test]
fn g_polynomial_matches_at_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let g = random_graph(&mut rng, 2, 6);
        let k = rng.gen_range(1..=3.min(g.vertex_count()));
        let m = random_mult(&mut rng, g.vertex_count(), k, true);
        let w = random_weights(&mut rng, &g, k, 0.3);
        let coeffs = g_polynomial(&g, &m, &w, &budget()).unwrap();
        assert!(coeffs.len() <= w.support_edges().len() + 1);
        let q = exact_partition(&g, &m, &w, &budget()).unwrap();
        assert!(rel_diff(horner(&coeffs, c(1.0)), q) < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn color_relabeling_invariance(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 2, 6);
        let k = rng.gen_range(1..=3);
        let m = random_mult(&mut rng, g.vertex_count(), k, false);
        let w = random_wild_weights(&mut rng, &g, k);
        let mut perm: Vec<usize> = (0..k).collect();
        perm.shuffle(&mut rng);
        let mut permuted = vec![0i64; k];
        for i in 0..k {
            permuted[perm[i]] = m.counts()[i] as i64;
        }
        let m2 = MultiplicityVector::validate(&g, &permuted).unwrap();
        let w2 = w.permute_colors(&perm);
        let a = exact_partition(&g, &m, &w, &budget()).unwrap();
        let b = exact_partition(&g, &m2, &w2, &budget()).unwrap();
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
    }

    #[test]
    fn all_ones_counts_maps(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 2, 7);
        let k = rng.gen_range(1..=4);
        let m = random_mult(&mut rng, g.vertex_count(), k, false);
        let j = EdgeWeights::all_ones(&g, k).unwrap();
        let q = exact_partition(&g, &m, &j, &budget()).unwrap();
        let expected = pfgm::combinatorics::multinomial(m.counts()).unwrap();
        prop_assert_eq!(q, c(expected as f64));
    }
}
