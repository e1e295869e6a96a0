use proptest::prelude::*;

use dgreedy::graph::{exact_numbers, InfoGraph};
use dgreedy::greedy::{
    brute_force_opt, is_greedy_profile, run_generalized_greedy, TiePolicy,
};
use dgreedy::lp::{fractional_numbers, solve_lp, LinearProgram, Sense};
use dgreedy::rational::{self, rat, Rational};
use dgreedy::sample::{random_assignment_instance, random_coverage_instance, random_graph};
use dgreedy::submodular::{
    audit_properties, parse_instance, ActionSets, CappedSum, ElementSet, Instance, TargetAssignment,
    TargetAssignmentSpec, Valuation, WeightedCoverage,
};
use dgreedy::Execution;

fn value_vec(max_len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((0i64..6, 1i64..4).prop_map(|(p, q)| rat(p, q)), 1..=max_len)
}

fn subset_pair(ground: usize) -> impl Strategy<Value = (ElementSet, ElementSet, usize)> {
    let mask = (1u128 << ground) - 1;
    (any::<u128>(), any::<u128>(), 0..ground).prop_map(move |(a, extra, x)| {
        let a = ElementSet::from_bits(a & mask);
        let b = a.union(ElementSet::from_bits(extra & mask));
        (a, b, x)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coverage_objectives_pass_the_audit(values in value_vec(10)) {
        let f = WeightedCoverage::from_values(&values).unwrap();
        prop_assert!(audit_properties(&f).unwrap().passed());
    }

    #[test]
    fn assignment_objectives_pass_the_audit(
        values in value_vec(5),
        probs in prop::collection::vec((0i64..=4).prop_map(|p| rat(p, 4)), 1..=2),
    ) {
        let f = TargetAssignment::new(TargetAssignmentSpec { target_values: values, success_probs: probs }).unwrap();
        prop_assert!(audit_properties(&f).unwrap().passed());
    }

    #[test]
    fn capped_sums_pass_the_audit(weights in value_vec(5)) {
        let f = CappedSum::new(weights).unwrap();
        prop_assert!(audit_properties(&f).unwrap().passed());
    }

    #[test]
    fn marginals_shrink_on_supersets(
        values in prop::collection::vec((0i64..6, 1i64..4).prop_map(|(p, q)| rat(p, q)), 10),
        pair in subset_pair(10),
    ) {
        let f = WeightedCoverage::from_values(&values).unwrap();
        let (a, b, x) = pair;
        let (a, b) = (a.without(x), b.without(x));
        let x = ElementSet::singleton(x);
        prop_assert!(f.gain(x, a) >= f.gain(x, b));
        prop_assert!(f.value(a) <= f.value(b));
    }

    #[test]
    fn certain_assignment_is_coverage(values in value_vec(4), agents in 1usize..4, bits in any::<u128>()) {
        let vta = TargetAssignment::new(TargetAssignmentSpec {
            target_values: values.clone(),
            success_probs: vec![rat(1, 1); agents],
        }).unwrap();
        let wsc = WeightedCoverage::from_values(&values).unwrap();
        let set = ElementSet::from_bits(bits & ((1u128 << vta.ground_size()) - 1));
        prop_assert_eq!(vta.value(set), wsc.value(vta.covered_targets(set)));
    }

    #[test]
    fn rationals_round_trip_through_text(p in -1000i64..1000, q in 1i64..1000) {
        let r = rat(p, q);
        prop_assert_eq!(rational::parse(&rational::format(&r)).unwrap(), r);
    }

    #[test]
    fn greedy_outcomes_are_fixed_points(n in 1usize..6, seed in any::<u64>(), k in 0u64..1000) {
        let g = random_graph(n, seed, k);
        let inst = random_coverage_instance(n, 8, seed, k).unwrap();
        let worst = run_generalized_greedy(&inst, &g, TiePolicy::WorstCase).unwrap();
        let first = run_generalized_greedy(&inst, &g, TiePolicy::FirstIndex).unwrap();
        let random = run_generalized_greedy(&inst, &g, TiePolicy::SeededRandom(seed)).unwrap();
        for out in [&worst, &first, &random] {
            prop_assert!(is_greedy_profile(&inst, &g, &out.profile).unwrap());
            prop_assert_eq!(out.value, inst.profile_value(&out.profile));
        }
        prop_assert!(worst.value <= first.value && worst.value <= random.value);
        let opt = brute_force_opt(&inst, Execution::Parallel).unwrap();
        prop_assert!(opt.value >= first.value);
    }

    #[test]
    fn optimum_is_schedule_independent(n in 1usize..6, seed in any::<u64>()) {
        let inst = random_assignment_instance(n, 12, seed, 0).unwrap();
        prop_assert_eq!(
            brute_force_opt(&inst, Execution::Sequential).unwrap(),
            brute_force_opt(&inst, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn fractional_numbers_sit_between_integer_ones(n in 1usize..9, seed in any::<u64>()) {
        let g = random_graph(n, seed, 0);
        let exact = exact_numbers(&g).unwrap();
        let frac = fractional_numbers(&g).unwrap();
        prop_assert!(rat(exact.alpha as i64, 1) <= frac.alpha_star);
        prop_assert_eq!(frac.alpha_star, frac.k_star);
        prop_assert!(frac.k_star <= rat(exact.clique_cover as i64, 1));
        // Each clique in a fractional cover holds at most ω agents.
        prop_assert!(frac.k_star * rat(exact.omega as i64, 1) >= rat(n as i64, 1));
        prop_assert!(exact.omega * exact.clique_cover >= n);
    }

    #[test]
    fn lp_solutions_carry_valid_certificates(
        rows in prop::collection::vec(prop::collection::vec(0i64..4, 3), 1..5),
        objective in prop::collection::vec(0i64..5, 3),
        rhs in prop::collection::vec(1i64..6, 5),
    ) {
        let b = &rhs[..rows.len()];
        let lp = LinearProgram::from_integers(&objective, &rows, b, Sense::Maximize);
        // Columns with no positive entry and a positive cost make the LP unbounded.
        let bounded = (0..3).all(|j| objective[j] == 0 || rows.iter().any(|r| r[j] > 0));
        match solve_lp(&lp) {
            Ok(sol) => {
                prop_assert!(bounded);
                prop_assert!(sol.verify(&lp).is_ok());
            }
            Err(e) => prop_assert!(!bounded, "{e}"),
        }
    }

    #[test]
    fn instance_files_round_trip(n in 1usize..5, seed in any::<u64>()) {
        for inst in [
            random_coverage_instance(n, 10, seed, 1).unwrap(),
            random_assignment_instance(n, 12, seed, 2).unwrap(),
        ] {
            prop_assert_eq!(parse_instance(&inst.to_json()).unwrap(), inst);
        }
    }
}

#[test]
fn capped_sum_file_round_trips() {
    let f = CappedSum::new(vec![rat(1, 2), rat(1, 3)]).unwrap();
    let s = ElementSet::singleton;
    let inst = Instance::new(f.into(), ActionSets::new(vec![vec![s(0), s(2)], vec![s(1), s(3)]]).unwrap()).unwrap();
    assert_eq!(parse_instance(&inst.to_json()).unwrap(), inst);
}

#[test]
fn graphs_round_trip_through_json() {
    for k in 0..50 {
        let g = random_graph(7, 3, k);
        assert_eq!(InfoGraph::from_json(&g.to_json()).unwrap(), g);
    }
}
