mod common;

use ensemble_color::bench::{emit_results, parse_records_json, InstanceMeta, OutputFormat, RunDetail, RunRecord};
use ensemble_color::coloring::{count_conflicts, Coloring};
use ensemble_color::graph::{parse_dimacs, Graph};
use ensemble_color::island::island_seed;
use ensemble_color::tlbo::partition_crossover;
use ensemble_color::{tabucol, EvalBudget, TabuParams};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        proptest::collection::vec(any::<bool>(), m).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::from_edges(n, edges).expect("pairs are in range")
        })
    })
}

fn coloring_strategy(max_n: usize) -> impl Strategy<Value = (Graph, usize, Vec<usize>)> {
    (graph_strategy(max_n), 1..6usize).prop_flat_map(|(g, k)| {
        let n = g.vertex_count();
        (Just(g), Just(k), proptest::collection::vec(0..k, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn moves_keep_tables_exact((g, k, colors) in coloring_strategy(24), moves in proptest::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), 0..60)) {
        let mut s = Coloring::from_assignment(&g, k, colors).unwrap();
        for (vi, ci) in moves {
            let v = vi.index(g.vertex_count());
            let c = ci.index(k);
            if c == s.color(v) {
                continue;
            }
            let before = s.conflict_count() as i64;
            let m = s.plan_move(v, c);
            s.apply_move(&g, &m).unwrap();
            prop_assert_eq!(s.conflict_count() as i64, before + m.delta);
        }
        prop_assert_eq!(s.conflict_count(), common::recount(&g, s.colors()));
        for v in 0..g.vertex_count() {
            for c in 0..k {
                prop_assert_eq!(s.gamma(v, c), common::recount_gamma(&g, s.colors(), v, c));
            }
        }
        prop_assert!(s.is_consistent(&g));
    }

    #[test]
    fn a_move_and_its_reverse_cancel((g, k, colors) in coloring_strategy(20), vi in any::<prop::sample::Index>(), ci in any::<prop::sample::Index>()) {
        let mut s = Coloring::from_assignment(&g, k, colors).unwrap();
        let original = s.clone();
        let v = vi.index(g.vertex_count());
        let c = ci.index(k);
        prop_assume!(c != s.color(v));
        let m = s.plan_move(v, c);
        s.apply_move(&g, &m).unwrap();
        let back = s.plan_move(v, m.from);
        prop_assert_eq!(back.delta, -m.delta);
        s.apply_move(&g, &back).unwrap();
        prop_assert_eq!(&s, &original);
        prop_assert_eq!(s.conflict_count(), original.conflict_count());
    }

    #[test]
    fn relabeling_colors_keeps_conflicts((g, k, colors) in coloring_strategy(20), shift in 0..6usize) {
        let relabeled: Vec<usize> = colors.iter().map(|&c| (c + shift) % k).collect();
        prop_assert_eq!(count_conflicts(&g, &colors), count_conflicts(&g, &relabeled));
        let a = Coloring::from_assignment(&g, k, colors).unwrap();
        let b = Coloring::from_assignment(&g, k, relabeled).unwrap();
        prop_assert_eq!(a.conflict_count(), b.conflict_count());
        prop_assert_eq!(a.critical_count(), b.critical_count());
    }

    #[test]
    fn crossover_child_is_a_valid_coloring((g, k, p1) in coloring_strategy(30), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Coloring::from_assignment(&g, k, p1).unwrap();
        let b = Coloring::random(&g, k, &mut rng).unwrap();
        let child = partition_crossover(&g, &a, &b, &mut rng).unwrap();
        prop_assert_eq!(child.k(), k);
        prop_assert_eq!(child.vertex_count(), g.vertex_count());
        prop_assert!(child.colors().iter().all(|&c| c < k));
        prop_assert_eq!(child.conflict_count(), common::recount(&g, child.colors()));
    }

    #[test]
    fn dimacs_round_trip(g in graph_strategy(30)) {
        let text = g.to_dimacs();
        let back = parse_dimacs(&text).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn tabucol_never_worsens_and_respects_budget((g, k, colors) in coloring_strategy(30), seed in any::<u64>(), limit in 1..500u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let start = Coloring::from_assignment(&g, k, colors).unwrap();
        let f0 = start.conflict_count();
        let mut budget = EvalBudget::with_limit(limit);
        let out = tabucol(&g, start, &TabuParams::default(), &mut rng, &mut budget);
        prop_assert!(out.best.conflict_count() <= f0);
        prop_assert!(budget.used() <= limit);
        prop_assert_eq!(out.iterations as u64, budget.used());
        prop_assert_eq!(out.best.conflict_count(), common::recount(&g, out.best.colors()));
    }

    #[test]
    fn island_seeds_differ(base in any::<u64>(), a in 0..10_000usize, b in 0..10_000usize, k in 1..200usize) {
        prop_assume!(a != b);
        prop_assert_ne!(island_seed(base, a, k), island_seed(base, b, k));
    }

    #[test]
    fn json_documents_round_trip(runs in 1..6usize, hits_raw in 0..6usize, evals in any::<u32>(), k_star in proptest::option::of(1..300usize), name in "[A-Za-z0-9_.]{1,12}") {
        let hits = k_star.map(|_| hits_raw.min(runs));
        let record = RunRecord {
            instance: InstanceMeta { name, best_known_k: k_star, source_path: "x/y.col".into() },
            vertices: 10,
            edges: 15,
            k_reported: Some(3),
            hits,
            runs,
            mean_time_sec: 0.25,
            total_evaluations: u64::from(evals),
            per_run_details: (0..runs).map(|i| RunDetail { seed: i as u64, k: Some(3), time_sec: 0.25, success: i < hits.unwrap_or(0) }).collect(),
            error: None,
        };
        let doc = emit_results(std::slice::from_ref(&record), OutputFormat::Json);
        let parsed = parse_records_json(&doc).unwrap();
        prop_assert_eq!(&parsed[0], &record);
        prop_assert_eq!(emit_results(&parsed, OutputFormat::Json), doc);
    }
}

#[test]
fn brute_force_oracle_sanity() {
    use ensemble_color::graph::generate::*;
    assert_eq!(common::chromatic_number(&complete(5)), 5);
    assert_eq!(common::chromatic_number(&cycle(7)), 3);
    assert_eq!(common::chromatic_number(&cycle(8)), 2);
    assert_eq!(common::chromatic_number(&petersen()), 3);
    assert_eq!(common::chromatic_number(&empty(4)), 1);
}
