use std::cmp::Ordering;

use proptest::prelude::*;
use vgg_core::cycle::{canonicalize, cycle_payoffs, player_payoffs};
use vgg_core::dynamics::{
    dominance_compare, run_dynamic, GapMultiset, Outcome, Policy, Selection, TieBreak,
};
use vgg_core::rational::int;
use vgg_core::structure::{check_star_partition, star_partition};
use vgg_core::{cycle_instance, Distance, Game, GameInstance, GameMode, Graph, Rational};

/// Random tree on `n` vertices plus extra edges from `mask`.
fn connected_graph(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2..=max_n).prop_flat_map(|n| {
        let parents = (1..n).map(|v| 0..v).collect::<Vec<_>>();
        let pairs = n * (n - 1) / 2;
        (
            Just(n),
            parents,
            proptest::collection::vec(any::<bool>(), pairs),
            0u8..4,
        )
            .prop_map(|(n, parents, mask, density)| {
                let mut edges: Vec<(usize, usize)> = parents
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| (p, i + 1))
                    .collect();
                let mut idx = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if mask[idx] && idx % 4 < density as usize && !edges.contains(&(u, v)) {
                            edges.push((u, v));
                        }
                        idx += 1;
                    }
                }
                (n, edges)
            })
    })
}

/// Arbitrary (possibly disconnected) instance with weights and facilities.
fn instance() -> impl Strategy<Value = GameInstance> {
    (2usize..=8).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        (
            proptest::sample::subsequence(pairs.clone(), 0..=pairs.len()),
            proptest::collection::vec(1u64..=4, n),
            proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 1..=n),
            1..n,
        )
            .prop_map(move |(edges, weights, facilities, k)| {
                GameInstance::new(n, &edges, Some(weights), Some(facilities), k).unwrap()
            })
    })
}

fn instance_and_profile() -> impl Strategy<Value = (GameInstance, Vec<usize>)> {
    instance().prop_flat_map(|inst| {
        let k = inst.k();
        let fac = inst.facilities().to_vec();
        (
            Just(inst),
            proptest::collection::vec(proptest::sample::select(fac), k),
        )
    })
}

proptest! {
    #[test]
    fn distances_are_a_metric_on_edges(inst in instance()) {
        let d = inst.distances();
        for u in 0..inst.n() {
            prop_assert_eq!(d.get(u, u), Distance::Finite(0));
            for v in 0..inst.n() {
                prop_assert_eq!(d.get(u, v), d.get(v, u));
            }
        }
        for (u, v) in inst.graph().edges() {
            for x in 0..inst.n() {
                match (d.get(u, x), d.get(v, x)) {
                    (Distance::Finite(a), Distance::Finite(b)) => prop_assert!(a.abs_diff(b) <= 1),
                    (a, b) => prop_assert_eq!(a, b),
                }
            }
        }
    }

    #[test]
    fn json_round_trip(inst in instance()) {
        let text = inst.to_json();
        prop_assert_eq!(GameInstance::from_json(&text).unwrap(), inst);
    }

    #[test]
    fn partition_columns_sum_to_one_or_zero((inst, profile) in instance_and_profile()) {
        let game = Game::new(inst.clone());
        let part = game.voronoi_partition(&profile, GameMode::Shared);
        let mut reachable = 0u64;
        for v in 0..inst.n() {
            let expect = if part.customer_distance[v].is_finite() { int(1) } else { int(0) };
            prop_assert_eq!(part.column_sum(v), expect);
            if part.customer_distance[v].is_finite() {
                reachable += inst.weight(v);
            }
        }
        let payoffs = game.payoffs(&profile, GameMode::Shared);
        prop_assert_eq!(payoffs.iter().sum::<Rational>(), int(reachable as i64));
        for (i, p) in payoffs.iter().enumerate() {
            let from_partition: Rational = (0..inst.n())
                .map(|v| part.shares[i][v] * int(inst.weight(v) as i64))
                .sum();
            prop_assert_eq!(*p, from_partition);
        }
    }

    #[test]
    fn disjoint_payoffs_zero_exactly_the_stacked((inst, profile) in instance_and_profile()) {
        let game = Game::new(inst);
        let shared = game.payoffs(&profile, GameMode::Shared);
        let disjoint = game.payoffs(&profile, GameMode::Disjoint);
        for i in 0..profile.len() {
            let stacked = profile.iter().filter(|&&v| v == profile[i]).count() > 1;
            prop_assert_eq!(disjoint[i], if stacked { int(0) } else { shared[i] });
        }
    }

    #[test]
    fn connected_standard_payoffs_sum_to_n((n, edges) in connected_graph(9), seed in any::<u64>()) {
        let k = 1 + (seed as usize) % (n - 1);
        let game = Game::new(GameInstance::standard(n, &edges, k).unwrap());
        let profile: Vec<usize> = (0..k).map(|i| (seed as usize).wrapping_mul(31).wrapping_add(i * 7) % n).collect();
        prop_assert_eq!(game.payoffs(&profile, GameMode::Shared).iter().sum::<Rational>(), int(n as i64));
    }

    #[test]
    fn best_response_dominates_every_deviation((inst, profile) in instance_and_profile()) {
        let game = Game::new(inst);
        for i in 0..profile.len() {
            let br = game.best_responses(&profile, i, GameMode::Shared);
            for (u, p) in game.deviation_payoffs(&profile, i, GameMode::Shared) {
                prop_assert!(p <= br.value);
                prop_assert_eq!(p == br.value, br.vertices.contains(&u));
            }
        }
    }

    #[test]
    fn star_partitions_are_valid((n, edges) in connected_graph(12)) {
        let graph = Graph::new(n, &edges).unwrap();
        let stars = star_partition(&graph).unwrap();
        check_star_partition(&graph, &stars).unwrap();
    }

    #[test]
    fn cycle_closed_form_matches_engine(n in 3usize..=14, seed in proptest::collection::vec(any::<usize>(), 1..6)) {
        let k = seed.len().min(n - 1);
        let positions: Vec<usize> = seed[..k].iter().map(|s| s % n).collect();
        let profile = canonicalize(n, &positions).unwrap();
        let game = Game::new(cycle_instance(n, k).unwrap());
        prop_assert_eq!(player_payoffs(&profile, &positions), game.payoffs(&positions, GameMode::Shared));
        prop_assert_eq!(cycle_payoffs(&profile).iter().zip(&profile.counts).map(|(p, &c)| *p * int(c as i64)).sum::<Rational>(), int(n as i64));
    }

    #[test]
    fn dominance_is_a_total_order(
        a in proptest::collection::vec(1usize..6, 1..5),
        b in proptest::collection::vec(1usize..6, 1..5),
        c in proptest::collection::vec(1usize..6, 1..5),
    ) {
        let (a, b, c) = (GapMultiset::new(a), GapMultiset::new(b), GapMultiset::new(c));
        prop_assert_eq!(dominance_compare(&a, &b), dominance_compare(&b, &a).reverse());
        prop_assert_eq!(dominance_compare(&a, &b) == Ordering::Equal, a == b);
        if dominance_compare(&a, &b) != Ordering::Less && dominance_compare(&b, &c) != Ordering::Less {
            prop_assert_ne!(dominance_compare(&a, &c), Ordering::Less);
        }
    }

    #[test]
    fn converged_dynamics_end_at_equilibria((inst, profile) in instance_and_profile(), seed in any::<u64>(), random in any::<bool>()) {
        let game = Game::new(inst);
        let policy = Policy {
            selection: if random { Selection::Random } else { Selection::LowestIndex },
            tie_break: if random { TieBreak::Random } else { TieBreak::LowestVertex },
            seed,
            max_steps: 200,
        };
        let run = run_dynamic(&game, &profile, GameMode::Shared, policy).unwrap();
        match run.outcome {
            Outcome::Converged { profile, steps } => {
                prop_assert!(game.is_nash(&profile, GameMode::Shared));
                prop_assert_eq!(steps, run.trace.len());
            }
            Outcome::Cycled { states } => {
                prop_assert!(policy.is_deterministic());
                prop_assert_eq!(states.first(), states.last());
            }
            Outcome::Exhausted { max_steps, .. } => prop_assert_eq!(run.trace.len(), max_steps),
        }
        for m in &run.trace {
            prop_assert!(m.payoff_after > m.payoff_before);
        }
    }
}
