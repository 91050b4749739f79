mod common;

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use common::{naive_lambda, naive_modularity, part_volumes, random_labels, random_nonempty_graph, rng, sum_sq};
use obsmod::fattening::{
    fatten, fatten_counted, greedy_bipartition, greedy_number_partition, lambda_exact, partition_cost, WeightVector,
};
use obsmod::sampling::gen_triangles;
use obsmod::{modularity_exact, ratio, Exact, Partition};

fn weights(max_n: usize) -> impl Strategy<Value = Vec<Exact>> {
    prop::collection::vec(1i64..=1000, 1..=max_n).prop_map(|raw| {
        let total: i64 = raw.iter().sum();
        raw.iter().map(|&a| ratio(a, total)).collect()
    })
}

fn eta() -> impl Strategy<Value = Exact> {
    prop::sample::select(vec![ratio(1, 20), ratio(1, 10), ratio(1, 5), ratio(1, 2)])
}

fn half() -> Exact {
    ratio(1, 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn greedy_gamma_guarantee(x in weights(200)) {
        let w = WeightVector::new(x.clone()).unwrap();
        let bp = greedy_bipartition(&w);
        let bound = half() * (BigRational::one() - sum_sq(&x));
        prop_assert!(bp.gamma >= bound);
        let mut all: Vec<usize> = bp.a.iter().chain(&bp.b).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..x.len()).collect::<Vec<_>>());
        let sa = bp.a.iter().fold(BigRational::zero(), |s, &i| s + &x[i]);
        let sb = bp.b.iter().fold(BigRational::zero(), |s, &i| s + &x[i]);
        prop_assert_eq!(bp.gamma, if sa < sb { sa } else { sb });
    }

    #[test]
    fn gamma_below_lambda_below_half(x in weights(12)) {
        let w = WeightVector::new(x.clone()).unwrap();
        let lambda = lambda_exact(&w).unwrap();
        prop_assert_eq!(&lambda, &naive_lambda(&x));
        prop_assert!(greedy_bipartition(&w).gamma <= lambda);
        prop_assert!(lambda <= half());
    }

    #[test]
    fn number_partition_is_fat_and_cheap(x in weights(120), eta in eta()) {
        let w = WeightVector::new(x.clone()).unwrap();
        let np = greedy_number_partition(&w, &eta).unwrap();
        let mut seen = vec![false; x.len()];
        for (part, sum) in np.partition.parts.iter().zip(&np.partition.sums) {
            let s = part.iter().fold(BigRational::zero(), |s, &i| s + &x[i]);
            prop_assert_eq!(&s, sum);
            prop_assert!(s >= eta);
            for &i in part {
                prop_assert!(!seen[i]);
                seen[i] = true;
            }
        }
        prop_assert!(seen.into_iter().all(|b| b));
        let cost = partition_cost(&np.partition, &w);
        let direct = np.partition.sums.iter().fold(BigRational::zero(), |s, v| s + v * v) - sum_sq(&x);
        prop_assert_eq!(&cost, &direct);
        prop_assert!(cost < ratio(2, 1) * eta);
    }

    #[test]
    fn fatten_is_fat_and_loses_less_than_two_eta(seed in any::<u64>(), n in 2usize..=30, k in 1usize..=12, eta in eta()) {
        let mut r = rng(seed);
        let g = random_nonempty_graph(&mut r, n, 0.25);
        let b = Partition::from_assignment(&random_labels(&mut r, n, k));
        let out = fatten(&g, &eta, &b).unwrap();
        prop_assert!(b.refines(&out));
        let vol = part_volumes(&g, out.assignment());
        let total = vol.iter().fold(BigRational::zero(), |s, v| s + v);
        for v in &vol {
            prop_assert!(*v >= &eta * &total);
        }
        let before = naive_modularity(&g, b.assignment());
        let after = naive_modularity(&g, out.assignment());
        prop_assert!(after > before - ratio(2, 1) * &eta);
    }

    #[test]
    fn eta_one_keeps_everything_together(x in weights(40)) {
        let w = WeightVector::new(x.clone()).unwrap();
        let np = greedy_number_partition(&w, &BigRational::one()).unwrap();
        prop_assert_eq!(np.partition.parts.len(), 1);
        prop_assert_eq!(partition_cost(&np.partition, &w), BigRational::one() - sum_sq(&x));
    }
}

#[test]
fn fatten_float_and_exact_agree_on_triangles() {
    let g = gen_triangles(4);
    let b = Partition::from_assignment(&(0..12).map(|v| v / 3).collect::<Vec<_>>());
    let exact = fatten(&g, &ratio(1, 20), &b).unwrap();
    let float = fatten(&g, &0.05f64, &b).unwrap();
    assert_eq!(exact, b);
    assert_eq!(float, b);
    assert_eq!(modularity_exact(&g, &exact).unwrap().score, ratio(3, 4));
}

#[test]
fn operation_counts_grow_linearly() {
    let eta = ratio(1, 10);
    let mut prev: Option<(u64, u64, u64)> = None;
    for n in [50usize, 100, 200, 400] {
        let mut r = rng(n as u64);
        let x = common::random_weight_vector(&mut r, n);
        let w = WeightVector::new(x).unwrap();
        let bp = greedy_bipartition(&w).ops;
        let np = greedy_number_partition(&w, &eta).unwrap().ops;
        let g = random_nonempty_graph(&mut r, n, 4.0 / n as f64);
        let b = Partition::from_assignment(&random_labels(&mut r, n, n / 4));
        let ft = fatten_counted(&g, &eta, &b).unwrap().ops;
        if let Some((a, c, d)) = prev {
            assert!(bp as f64 <= 2.5 * a as f64, "bipartition {a} -> {bp}");
            assert!(np as f64 <= 2.5 * c as f64, "number partition {c} -> {np}");
            assert!(ft as f64 <= 2.5 * d as f64, "fatten {d} -> {ft}");
        }
        prev = Some((bp, np, ft));
    }
}
