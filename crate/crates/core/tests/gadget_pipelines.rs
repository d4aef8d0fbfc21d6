use degseq_core::generate::gen_tp_solvable;
use degseq_core::graph::{bipartition, second_order_profile};
use degseq_core::reductions::*;
use degseq_core::solvers::*;

fn bf(weights: &[usize], baskets: &[(usize, usize)]) -> BasketFillingInstance {
    let baskets = baskets.iter().map(|&(count, weight)| Basket { count, weight }).collect();
    BasketFillingInstance::new(weights.to_vec(), baskets).unwrap()
}

fn budget() -> SearchBudget {
    SearchBudget::new(5_000_000, 60_000)
}

#[test]
fn solver_realizations_of_sods_gadgets_decode() {
    for inst in [
        bf(&[3, 3], &[(2, 6)]),
        bf(&[3, 3, 5, 5], &[(2, 8), (2, 8)]),
        bf(&[3, 5, 3, 5], &[(2, 6), (2, 10)]),
        bf(&[24, 24, 24], &[(3, 72)]),
    ] {
        let (target, roles) = bf_to_sods(&inst).unwrap();
        let report = realize_sods(&target, budget());
        let g = report.outcome.certificate().unwrap_or_else(|| panic!("{inst:?}: {:?}", report.outcome.verdict()));
        assert!(verify_sods(g, &target));
        let sol = decode_sods_solution(g, &inst, &roles).unwrap();
        assert!(verify_bf(&inst, &sol), "{inst:?}");
    }
}

#[test]
fn unsolvable_basket_gadget_is_infeasible() {
    // Pairs of {3, 3, 5, 5} sum to 6, 8 or 10; no split gives 7 + 9.
    let inst = bf(&[3, 3, 5, 5], &[(2, 7), (2, 9)]);
    assert!(!bf_needs_rescale(&inst));
    assert_eq!(solve_bf(&inst, budget()).outcome, SolveOutcome::Infeasible);
    let (target, _) = bf_to_sods(&inst).unwrap();
    assert_eq!(realize_sods(&target, budget()).outcome, SolveOutcome::Infeasible);
}

#[test]
fn bipartite_and_xy_gadgets_round_trip_through_solvers() {
    for seed in 0..4 {
        let tp = gen_tp_solvable(seed, 2, 9 + seed as usize).unwrap();
        let (target, _) = tp_to_bipartite_sods(&tp).unwrap();
        let g = realize_sods_bipartite(&target, budget()).outcome.certificate().cloned().unwrap();
        assert!(bipartition(&g).is_some());
        assert!(verify_tp(&tp, &decode_bipartite_solution(&g, &tp).unwrap()));

        let (xy, _) = tp_to_xy(&tp);
        let g = realize_xy(&xy, budget()).outcome.certificate().cloned().unwrap();
        assert!(verify_tp(&tp, &decode_xy_solution(&g, &tp).unwrap()));
    }
}

#[test]
fn unsolvable_three_partition_gadgets_are_infeasible() {
    // Only 4 + 4 + 5 reaches 13, and there is no 5.
    let tp = ThreePartitionInstance::new(2, 13, vec![4, 4, 4, 4, 4, 6]).unwrap();
    assert_eq!(solve_tp(&tp, budget()).outcome, SolveOutcome::Infeasible);
    let (target, _) = tp_to_bipartite_sods(&tp).unwrap();
    assert_eq!(realize_sods_bipartite(&target, budget()).outcome, SolveOutcome::Infeasible);
    let (xy, _) = tp_to_xy(&tp);
    assert_eq!(realize_xy(&xy, budget()).outcome, SolveOutcome::Infeasible);
}

#[test]
fn encoders_reproduce_targets_and_decoders_invert_them() {
    for seed in 0..10 {
        let tp = gen_tp_solvable(seed, 3, 13 + seed as usize).unwrap();
        let partition = solve_tp(&tp, SearchBudget::unlimited()).outcome.certificate().cloned().unwrap();
        let g = encode_tp_solution_as_bipartite_graph(&tp, &partition).unwrap();
        assert!(bipartition(&g).is_some());
        assert_eq!(second_order_profile(&g), tp_to_bipartite_sods(&tp).unwrap().0);
        assert_eq!(decode_bipartite_solution(&g, &tp).unwrap(), partition);
        let g = encode_tp_solution_as_xy_graph(&tp, &partition).unwrap();
        assert_eq!(decode_xy_solution(&g, &tp).unwrap(), partition);

        let via_bf = tp_to_bf(&tp);
        let (scaled, target, roles) = bf_to_sods_auto_rescale(&via_bf).unwrap();
        assert_eq!(target.pairs.len(), scaled.total_weight() + scaled.item_count() + scaled.basket_count() + 1);
        let sol = solve_bf(&scaled, SearchBudget::unlimited()).outcome.certificate().cloned().unwrap();
        let g = encode_bf_solution_as_graph(&scaled, &sol).unwrap();
        assert_eq!(decode_sods_solution(&g, &scaled, &roles).unwrap(), sol);
    }
}

#[test]
fn gadget_sizes_are_linear_in_unary_size() {
    let tp = gen_tp_solvable(5, 4, 21).unwrap();
    assert_eq!(tp_to_bipartite_sods(&tp).unwrap().0.pairs.len(), tp.unary_size() + 4 * tp.m());
    assert_eq!(tp_to_xy(&tp).0.pairs.len(), tp.unary_size() + 4 * tp.m());
}

#[test]
fn larger_budget_never_flips_a_verdict() {
    let tp = gen_tp_solvable(2, 2, 11).unwrap();
    let (target, _) = tp_to_bipartite_sods(&tp).unwrap();
    let full = realize_sods_bipartite(&target, SearchBudget::unlimited());
    for nodes in [1, 2, 5, 20, 100, 1000] {
        let partial = realize_sods_bipartite(&target, SearchBudget::nodes(nodes));
        match partial.outcome {
            SolveOutcome::Unknown => assert!(partial.nodes <= nodes),
            ref other => assert_eq!(other, &full.outcome),
        }
    }
}
