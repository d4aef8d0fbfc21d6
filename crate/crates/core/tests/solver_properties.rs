use degseq_core::graph::*;
use degseq_core::graphicality::*;
use degseq_core::reductions::{Basket, BasketFillingInstance};
use degseq_core::solvers::*;
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |mask| {
            let edges: Vec<_> = pairs.iter().zip(&mask).filter(|(_, &b)| b).map(|(&e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn arb_pairs() -> impl Strategy<Value = Vec<(usize, usize)>> {
    proptest::collection::vec((0usize..5, 0usize..5), 1..7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn realizers_are_complete_on_graph_profiles(g in arb_graph(9)) {
        let sods = second_order_profile(&g);
        let found = realize_sods(&sods, SearchBudget::unlimited());
        prop_assert!(found.outcome.certificate().is_some_and(|h| verify_sods(h, &sods)));
        let xy = neighbor_degree_sum(&g);
        let found = realize_xy(&xy, SearchBudget::unlimited());
        prop_assert!(found.outcome.certificate().is_some_and(|h| verify_xy(h, &xy)));
        if bipartition(&g).is_some() {
            let found = realize_sods_bipartite(&sods, SearchBudget::unlimited());
            prop_assert!(found.outcome.certificate().is_some_and(|h| verify_sods(h, &sods) && bipartition(h).is_some()));
        }
    }

    #[test]
    fn solved_certificates_verify(pairs in arb_pairs()) {
        let sods = SodsTarget { pairs: pairs.clone() };
        if let SolveOutcome::Solved(g) = realize_sods(&sods, SearchBudget::unlimited()).outcome {
            prop_assert!(verify_sods(&g, &sods));
        }
        if let SolveOutcome::Solved(g) = realize_sods_bipartite(&sods, SearchBudget::unlimited()).outcome {
            prop_assert!(verify_sods(&g, &sods) && bipartition(&g).is_some());
        }
        let xy = XyTarget { pairs: pairs.iter().map(|&(a, b)| (a, a * b)).collect() };
        if let SolveOutcome::Solved(g) = realize_xy(&xy, SearchBudget::unlimited()).outcome {
            prop_assert!(verify_xy(&g, &xy));
        }
    }

    #[test]
    fn prefilter_never_rejects_a_real_profile(g in arb_graph(10)) {
        prop_assert!(sods_d1_necessary(&second_order_profile(&g)));
        prop_assert!(xy_necessary(&neighbor_degree_sum(&g)));
    }

    #[test]
    fn profile_inequalities(g in arb_graph(12)) {
        let n = g.vertex_count();
        let sods = second_order_profile(&g);
        let xy = neighbor_degree_sum(&g);
        prop_assert_eq!(degree_sequence(&g).sum() % 2, 0);
        for v in 0..n {
            let (d1, d2) = sods.pairs[v];
            prop_assert_eq!(d1, distance_k_count(&g, v, 1).unwrap());
            prop_assert_eq!(d2, distance_k_count(&g, v, 2).unwrap());
            prop_assert!(d1 + d2 < n);
            let fanout: usize = g.neighbors(v).iter().map(|&u| g.degree(u) - 1).sum();
            prop_assert!(d2 <= fanout);
            if d1 >= 1 {
                prop_assert!(xy.pairs[v].1 >= d2 + d1);
            }
        }
    }

    #[test]
    fn spectra_rebuild_the_jdm(g in arb_graph(12)) {
        prop_assume!(g.edge_count() > 0);
        let jdm = jdm_of_graph(&g).unwrap();
        let delta = jdm.delta();
        let mut rebuilt = vec![vec![0u64; delta]; delta];
        for v in 0..g.vertex_count() {
            let s = degree_spectrum(&g, v).unwrap();
            prop_assert_eq!(s.total(), g.degree(v));
            if g.degree(v) == 0 {
                continue;
            }
            for j in 1..=delta {
                rebuilt[g.degree(v) - 1][j - 1] += s.get(j) as u64;
            }
        }
        for i in 0..delta {
            rebuilt[i][i] /= 2;
        }
        prop_assert_eq!(rebuilt, jdm.rows());
        let verdict = jdm_graphical(&jdm);
        prop_assert!(verdict.is_graphical());
        for i in 1..=delta {
            let size = (0..g.vertex_count()).filter(|&v| g.degree(v) == i).count() as u64;
            prop_assert_eq!(verdict.class_sizes[i - 1], Some(size));
        }
    }

    #[test]
    fn aggregates_of_a_graph_are_feasible(g in arb_graph(9)) {
        prop_assume!(g.edge_count() > 0);
        let jdm = jdm_of_graph(&g).unwrap();
        let xy = neighbor_degree_sum(&g);
        let sizes: Vec<u64> = (1..=jdm.delta())
            .map(|i| (0..g.vertex_count()).filter(|&v| g.degree(v) == i).count() as u64)
            .collect();
        let totals: Vec<u64> = (1..=jdm.delta())
            .map(|i| (0..g.vertex_count()).filter(|&v| g.degree(v) == i).map(|v| xy.pairs[v].1 as u64).sum())
            .collect();
        let found = jdm_feasible_from_aggregates(&sizes, &totals, SearchBudget::unlimited(), RowEquation::default());
        let j = found.outcome.certificate().cloned();
        prop_assert!(j.is_some());
        prop_assert!(jdm_graphical(j.as_ref().unwrap()).is_graphical());
    }

    #[test]
    fn basket_solver_is_sound_and_deterministic(
        weights in proptest::collection::vec(1usize..6, 2..8),
        split in 1usize..4,
    ) {
        let n = weights.len();
        let k = split.min(n / 2).max(1);
        let mut counts = vec![2; k];
        counts[0] += n - 2 * k;
        let mut baskets = Vec::new();
        let mut at = 0;
        for &c in &counts {
            baskets.push(Basket { count: c, weight: weights[at..at + c].iter().sum() });
            at += c;
        }
        let bf = BasketFillingInstance::new(weights, baskets).unwrap();
        let a = solve_bf(&bf, SearchBudget::unlimited());
        prop_assert!(a.outcome.certificate().is_some_and(|s| verify_bf(&bf, s)));
        prop_assert_eq!(a, solve_bf(&bf, SearchBudget::unlimited()));
    }
}

/// Exhaustive reference for the JDM aggregate search on tiny class sizes.
#[test]
fn aggregate_search_matches_brute_force_matrices() {
    for s1 in 0..=3u64 {
        for s2 in 0..=3u64 {
            for d1 in 0..=8u64 {
                for d2 in 0..=14u64 {
                    let sizes = [s1, s2];
                    let totals = [d1, d2];
                    let found = jdm_feasible_from_aggregates(
                        &sizes,
                        &totals,
                        SearchBudget::unlimited(),
                        RowEquation::default(),
                    );
                    let mut expected = None;
                    'outer: for j11 in 0..=6 {
                        for j12 in 0..=9 {
                            for j22 in 0..=6 {
                                let mut m = Jdm::zero(2);
                                m.set(1, 1, j11);
                                m.set(1, 2, j12);
                                m.set(2, 2, j22);
                                let rows_ok = 2 * j11 + j12 == s1 && 2 * j22 + j12 == 2 * s2;
                                let totals_ok = 2 * j11 + 2 * j12 == d1 && j12 + 4 * j22 == d2;
                                let bounds_ok = j11 <= s1 * s1.saturating_sub(1) / 2
                                    && j22 <= s2 * s2.saturating_sub(1) / 2
                                    && j12 <= s1 * s2;
                                if rows_ok && totals_ok && bounds_ok && jdm_graphical(&m).is_graphical() {
                                    expected = Some(m);
                                    break 'outer;
                                }
                            }
                        }
                    }
                    assert_eq!(found.outcome.certificate().cloned(), expected, "sizes {sizes:?} totals {totals:?}");
                }
            }
        }
    }
}
