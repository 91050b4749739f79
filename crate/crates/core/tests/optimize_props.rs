mod common;

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use common::{naive_modularity, naive_q_at_most_k, naive_qstar, random_graph, rng};
use obsmod::optimize::{best_of, brute_force_q_at_most_k, brute_force_qstar, local_move_heuristic, HeuristicConfig};
use obsmod::{modularity_exact, ratio, Graph, Scalar};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>(), 0.1f64..0.9).prop_map(|(n, seed, p)| random_graph(&mut rng(seed), n, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn qstar_in_unit_interval_with_a_valid_witness(g in graph(9)) {
        let (q, w) = brute_force_qstar(&g).unwrap();
        prop_assert!(q >= BigRational::zero() && q < BigRational::one());
        prop_assert_eq!(naive_modularity(&g, w.assignment()), q);
    }

    #[test]
    fn q_at_most_k_is_monotone_reaches_qstar_and_obeys_dinh_thai(g in graph(8)) {
        let (q, _) = brute_force_qstar(&g).unwrap();
        let mut prev = BigRational::zero();
        for k in 1..=g.n() {
            let qk = brute_force_q_at_most_k(&g, k).unwrap();
            prop_assert!(qk >= prev);
            if (2..=3).contains(&k) {
                prop_assert!(qk >= &q * (BigRational::one() - ratio(1, k as i64)));
            }
            prev = qk;
        }
        prop_assert_eq!(prev, q);
    }

    #[test]
    fn q_at_most_k_matches_exhaustive_search(g in graph(7), k in 1usize..4) {
        prop_assert_eq!(brute_force_q_at_most_k(&g, k).unwrap(), naive_q_at_most_k(&g, k));
    }

    #[test]
    fn heuristic_trace_is_monotone_and_deterministic(g in graph(40), seed in any::<u64>(), refine in any::<bool>()) {
        prop_assume!(!g.is_empty());
        let cfg = HeuristicConfig { refinement: refine, seed, ..Default::default() };
        let a = local_move_heuristic(&g, &cfg).unwrap();
        prop_assert!(a.score_trace.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(a.best_score >= 0.0);
        let exact = modularity_exact(&g, &a.best_partition).unwrap().score.to_f64();
        prop_assert!((exact - a.best_score).abs() < 1e-9 || (a.best_score == 0.0 && exact <= 0.0));
        prop_assert_eq!(a, local_move_heuristic(&g, &cfg).unwrap());
        let b = best_of(&g, 4, &cfg).unwrap();
        prop_assert_eq!(&b, &best_of(&g, 4, &cfg).unwrap());
        prop_assert_eq!(b.per_run_scores.len(), 4);
    }
}

#[test]
fn best_of_never_beats_the_oracle_and_usually_matches() {
    let mut r = rng(2024);
    let (mut matched, mut total) = (0, 0);
    for i in 0..200 {
        let n = 2 + i % 8;
        let g = random_graph(&mut r, n, 0.45);
        if g.is_empty() {
            continue;
        }
        let (q, _) = brute_force_qstar(&g).unwrap();
        let res = best_of(&g, 20, &HeuristicConfig::default().with_seed(i as u64)).unwrap();
        let found = modularity_exact(&g, &res.best_partition).unwrap().score;
        let found = if found < BigRational::zero() { BigRational::zero() } else { found };
        assert!(found <= q, "heuristic beat the oracle on {g:?}");
        total += 1;
        if found == q {
            matched += 1;
        }
    }
    assert!(matched * 100 >= 95 * total, "matched {matched} of {total}");
}

#[test]
fn brute_force_matches_naive_on_a_fixed_corpus() {
    let mut r = rng(7);
    for n in 1..=8 {
        for _ in 0..4 {
            let g = random_graph(&mut r, n, 0.5);
            assert_eq!(brute_force_qstar(&g).unwrap().0, naive_qstar(&g));
        }
    }
}

#[test]
fn runs_one_equals_single_run() {
    let g = obsmod::sampling::gen_triangles(3);
    let cfg = HeuristicConfig::default().with_seed(11);
    let single = local_move_heuristic(&g, &cfg).unwrap();
    let best = best_of(&g, 1, &cfg).unwrap();
    assert_eq!(single.best_score, best.best_score);
    assert_eq!(single.best_partition, best.best_partition);
    assert!((best.best_score - 2.0 / 3.0).abs() < 1e-12);
}
