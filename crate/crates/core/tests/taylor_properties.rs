mod common;

use common::*;
use pfgm::oracle::{exact_log_partition, g_polynomial};
use pfgm::taylor::{approximate_log_partition, error_bound, normalized_derivatives, OrderMode};
use pfgm::zeros::{compute_beta, ALPHA};
use pfgm::{EdgeWeights, Graph, MultiplicityVector, WorkBudget};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn budget() -> WorkBudget {
    WorkBudget::default()
}

#[test]
fn derivatives_agree_with_interpolated_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..25 {
        let g = random_graph(&mut rng, 2, 6);
        let k = rng.gen_range(1..=3.min(g.vertex_count()));
        let m = random_mult(&mut rng, g.vertex_count(), k, true);
        let w = random_weights(&mut rng, &g, k, 0.5 / g.max_degree() as f64);
        let coeffs = g_polynomial(&g, &m, &w, &budget()).unwrap();
        let n = 5;
        let h = normalized_derivatives(&g, &m, &w, n, &budget()).unwrap();
        let support = w.support_edges().len();
        let mut fact = 1.0;
        for j in 1..=n {
            fact *= j as f64;
            if j > support {
                assert_eq!(h[j - 1], c(0.0));
                continue;
            }
            let expected = coeffs[j] * fact / coeffs[0];
            assert!(rel_diff(h[j - 1], expected) <= 1e-9, "j = {j}: {} vs {expected}", h[j - 1]);
        }
    }
}

#[test]
fn orders_above_support_are_zero() {
    let g = Graph::path(4).unwrap();
    let m = MultiplicityVector::validate(&g, &[2, 2]).unwrap();
    let w = EdgeWeights::from_fn(&g, 2, |e, i, j| if e == 1 && i == j { c(1.05) } else { c(1.0) }).unwrap();
    let h = normalized_derivatives(&g, &m, &w, 4, &budget()).unwrap();
    assert!(h[0].norm() > 0.0);
    assert!(h[1..].iter().all(|x| *x == c(0.0)));
}

#[test]
fn certified_error_holds_for_every_small_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..20 {
        let g = random_graph(&mut rng, 2, 6);
        let k = rng.gen_range(1..=3.min(g.vertex_count()));
        let m = random_mult(&mut rng, g.vertex_count(), k, true);
        let w = random_weights(&mut rng, &g, k, 0.1 / g.max_degree() as f64);
        let exact = exact_log_partition(&g, &m, &w, &budget()).unwrap();
        let beta = compute_beta(&g, &w).value();
        for n in 0..=5 {
            let r = approximate_log_partition(&g, &m, &w, OrderMode::Fixed(n), &budget()).unwrap();
            let bound = r.error_bound.unwrap();
            assert_eq!(bound, error_bound(r.support_edges, beta, n).unwrap());
            assert!((r.log_value - exact).norm() <= bound, "n = {n}");
        }
    }
}

#[test]
fn epsilon_mode_meets_its_target() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..10 {
        let g = random_graph(&mut rng, 2, 5);
        let k = rng.gen_range(1..=2.min(g.vertex_count()));
        let m = random_mult(&mut rng, g.vertex_count(), k, true);
        // Deep inside the region so that a modest order suffices.
        let w = random_weights(&mut rng, &g, k, 0.02 / g.max_degree() as f64);
        let r = approximate_log_partition(&g, &m, &w, OrderMode::Epsilon(0.05), &budget()).unwrap();
        assert!(r.error_bound.unwrap() <= 0.05);
        let exact = exact_log_partition(&g, &m, &w, &budget()).unwrap();
        assert!((r.log_value - exact).norm() <= 0.05);
    }
}

#[test]
fn boundary_of_region_has_no_certificate() {
    let g = Graph::cycle(4).unwrap();
    let m = MultiplicityVector::validate(&g, &[2, 2]).unwrap();
    let dev = ALPHA / 2.0 * 1.01;
    let w = EdgeWeights::from_fn(&g, 2, |_, i, j| if i == j { c(1.0 - dev) } else { c(1.0) }).unwrap();
    assert!(approximate_log_partition(&g, &m, &w, OrderMode::Epsilon(0.1), &budget()).is_err());
    let r = approximate_log_partition(&g, &m, &w, OrderMode::Fixed(2), &budget()).unwrap();
    assert_eq!(r.error_bound, None);
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let g = random_graph(&mut rng, 7, 7);
    let m = random_mult(&mut rng, 7, 3, true);
    let w = random_weights(&mut rng, &g, 3, 0.05);
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| approximate_log_partition(&g, &m, &w, OrderMode::Fixed(3), &budget()).unwrap())
    };
    let one = run(1);
    for threads in [2, 3, 8] {
        let other = run(threads);
        assert_eq!(one.log_value.re.to_bits(), other.log_value.re.to_bits());
        assert_eq!(one.log_value.im.to_bits(), other.log_value.im.to_bits());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn relabeling_colors_leaves_the_approximation_unchanged(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 2, 6);
        let k = rng.gen_range(1..=3.min(g.vertex_count()));
        let m = random_mult(&mut rng, g.vertex_count(), k, true);
        let w = random_weights(&mut rng, &g, k, 0.1 / g.max_degree() as f64);
        let mut perm: Vec<usize> = (0..k).collect();
        perm.shuffle(&mut rng);
        let mut counts = vec![0i64; k];
        for i in 0..k {
            counts[perm[i]] = m.counts()[i] as i64;
        }
        let m2 = MultiplicityVector::validate(&g, &counts).unwrap();
        let a = approximate_log_partition(&g, &m, &w, OrderMode::Fixed(3), &budget()).unwrap();
        let b = approximate_log_partition(&g, &m2, &w.permute_colors(&perm), OrderMode::Fixed(3), &budget()).unwrap();
        prop_assert!((a.log_value - b.log_value).norm() <= 1e-12 * a.log_value.norm().max(1.0));
    }

    #[test]
    fn bound_is_monotone(edges in 1usize..50, beta in 1.01f64..5.0, n in 0usize..40) {
        let here = error_bound(edges, beta, n).unwrap();
        prop_assert!(error_bound(edges, beta, n + 1).unwrap() < here);
        prop_assert!(error_bound(edges, beta * 1.1, n).unwrap() < here);
    }
}
