use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use interleave_core::counts::hook_count;
use interleave_core::cuts::{cut_count, cut_size_counts, level_profile, semantic_size, ProfileMethod};
use interleave_core::process::{
    annotate_weights, contract, degree_sequence_of_tree, parse_process, suspended_view,
    tree_from_degree_sequence, RunPrefix, SyntaxTree,
};
use interleave_core::sampling::{
    count_runs_via_probability, prefix_probability, sample_run, sample_run_traced, PartialSumTree, Rng,
};

fn random_tree(max: usize) -> impl Strategy<Value = SyntaxTree> {
    (1..=max, any::<u64>()).prop_map(|(n, seed)| {
        interleave_core::sampling::uniform_random_tree(n, &mut Rng::seeded(seed)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn term_round_trip(t in random_tree(40)) {
        let back = parse_process(&t.to_term(), false).unwrap();
        prop_assert_eq!(back.structure(), t.structure());
        prop_assert_eq!(back.labels(), t.labels());
        let json = SyntaxTree::from_json(&t.to_json()).unwrap();
        prop_assert_eq!(json.to_term(), t.to_term());
    }

    #[test]
    fn degree_round_trip(t in random_tree(80)) {
        let u = degree_sequence_of_tree(&t);
        prop_assert_eq!(u.len(), t.len());
        prop_assert_eq!(tree_from_degree_sequence(&u).unwrap().structure(), t.structure());
    }

    #[test]
    fn contraction_removes_one_node(t in random_tree(30)) {
        let degree = t.degree(t.root());
        for i in 1..=degree {
            prop_assert_eq!(contract(&t, i).unwrap().len(), t.len() - 1);
        }
        prop_assert!(contract(&t, degree + 1).is_err());
    }

    #[test]
    fn weights_are_subtree_sizes(t in random_tree(60)) {
        let w = annotate_weights(t);
        let t = w.tree();
        prop_assert_eq!(w.weight(t.root()), t.len());
        for v in t.ids() {
            let below: usize = t.children(v).map(|c| w.weight(c)).sum();
            prop_assert_eq!(w.weight(v), 1 + below);
        }
    }

    #[test]
    fn run_counting_duality(t in random_tree(60)) {
        let w = annotate_weights(t);
        prop_assert_eq!(count_runs_via_probability(&w).unwrap(), hook_count(&w));
    }

    #[test]
    fn extensions_of_a_prefix_partition_its_probability(t in random_tree(25), seed in any::<u64>(), cut in 0.0f64..1.0) {
        let w = annotate_weights(t);
        let run = sample_run(&w, &mut Rng::seeded(seed));
        let p = 1 + ((w.len() - 1) as f64 * cut) as usize;
        let prefix = RunPrefix::new(w.tree(), run.actions()[..p].to_vec()).unwrap();
        let rho = prefix_probability(&w, &prefix).unwrap();
        let view = suspended_view(&w, &prefix).unwrap();
        if view.frontier.is_empty() {
            prop_assert_eq!(p, w.len());
            prop_assert_eq!(rho, BigRational::one() / BigRational::from_integer(hook_count(&w).into()));
        } else {
            let mut total = BigRational::zero();
            for &b in &view.frontier {
                let mut next = prefix.actions().to_vec();
                next.push(b);
                total += prefix_probability(&w, &RunPrefix::new(w.tree(), next).unwrap()).unwrap();
            }
            prop_assert_eq!(total, rho);
        }
    }

    #[test]
    fn multiset_tracks_the_frontier(t in random_tree(40), seed in any::<u64>()) {
        let w = annotate_weights(t);
        let n = w.len();
        let mut taken = Vec::new();
        let mut ok = true;
        let run = sample_run_traced(&w, &mut Rng::seeded(seed), |step| {
            taken.push(step.action);
            let prefix = RunPrefix::new(w.tree(), taken.clone()).unwrap();
            let view = suspended_view(&w, &prefix).unwrap();
            let frontier: Vec<usize> = view.frontier.iter().map(|v| v.0).collect();
            ok &= step.multiset.total() == (n - step.round) as u64;
            ok &= step.multiset.support() == frontier;
        });
        prop_assert!(ok);
        prop_assert_eq!(run.actions().len(), n);
        prop_assert!(RunPrefix::new(w.tree(), run.actions().to_vec()).is_ok());
    }

    #[test]
    fn sampled_run_has_probability_one_over_runs(t in random_tree(12), seed in any::<u64>()) {
        let w = annotate_weights(t);
        let run = sample_run(&w, &mut Rng::seeded(seed));
        let product = run.step_probabilities(&w).iter().fold(BigRational::one(), |acc, &(k, m)| {
            acc * BigRational::new(k.into(), m.into())
        });
        prop_assert_eq!(product, BigRational::new(1.into(), hook_count(&w).into()));
    }

    #[test]
    fn profile_shape(t in random_tree(60)) {
        let p = level_profile(&t, ProfileMethod::Fast).unwrap();
        let counts = p.counts();
        prop_assert_eq!(counts.len(), t.len());
        prop_assert_eq!(&counts[0], &BigUint::one());
        prop_assert!(counts.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(counts.last().unwrap(), &hook_count(&annotate_weights(t.clone())));
        prop_assert_eq!(p.total(), semantic_size(&t).unwrap());
    }

    #[test]
    fn fast_profile_matches_cut_enumeration(t in random_tree(9)) {
        prop_assert_eq!(
            level_profile(&t, ProfileMethod::Fast).unwrap(),
            level_profile(&t, ProfileMethod::Oracle).unwrap()
        );
        let by_size: BigUint = cut_size_counts(&t).iter().sum();
        prop_assert_eq!(by_size, cut_count(&t));
    }

    #[test]
    fn partial_sum_tree_stays_consistent(
        weights in prop::collection::vec(0u64..20, 1..200),
        ops in prop::collection::vec((any::<u16>(), 0u64..20), 0..300),
        seed in any::<u64>(),
    ) {
        let entries: Vec<(usize, u64)> = weights.iter().copied().enumerate().collect();
        let mut pst = PartialSumTree::build(&entries).unwrap();
        let mut flat = weights.clone();
        let bound = (entries.len() as f64).log2().ceil() as usize + 1;
        let mut rng = Rng::seeded(seed);
        for (id, weight) in ops {
            let id = id as usize % flat.len();
            prop_assert!(pst.update(id, weight).unwrap() <= bound);
            flat[id] = weight;
            prop_assert_eq!(pst.total(), flat.iter().sum::<u64>());
            if pst.total() > 0 {
                let x = pst.sample(&mut rng).unwrap();
                prop_assert!(flat[x] > 0);
            }
        }
        prop_assert!(pst.audit());
        // Every element owns a contiguous run of `weight` positions.
        let hits: Vec<usize> = (1..=pst.total()).map(|r| pst.dispatch(r)).collect();
        let mut runs: Vec<(usize, u64)> = Vec::new();
        for id in hits {
            match runs.last_mut() {
                Some((last, k)) if *last == id => *k += 1,
                _ => runs.push((id, 1)),
            }
        }
        runs.sort();
        let expected: Vec<(usize, u64)> = flat.iter().copied().enumerate().filter(|&(_, w)| w > 0).collect();
        prop_assert_eq!(runs, expected);
    }

    #[test]
    fn big_uniform_draws_stay_below_bound(bits in 1u32..300, seed in any::<u64>()) {
        let bound = (BigUint::one() << bits) - 1u32 + BigUint::from(seed % 7);
        let mut rng = Rng::seeded(seed);
        for _ in 0..20 {
            prop_assert!(rng.below_big(&bound) < bound);
        }
    }
}
