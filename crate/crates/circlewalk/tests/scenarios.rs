//! Cross-module scenario tests: pairing, chain interactions, synchronization
//! statistics, rotating orbits, and pinned-gap constructions.

use circlewalk::analysis::{
    at_sequence_pair, cesaro_compare, check_nondegeneracy, four_particle_scenario, prop1_scenario,
    two_zero_velocities_scenario, GapFunctional,
};
use circlewalk::coupling::{chain_interaction_log, init_coupled, synchronization_time};
use circlewalk::geometry::config_from_gaps;
use circlewalk::rng::derive_seed;
use circlewalk::{
    ConflictRule, GapVector, InteractionEvent, JumpLaw, Runner, Scenario, UpdateRule,
};

fn gaps(values: &[f64]) -> GapVector {
    GapVector::new(values.to_vec(), 0.0).unwrap()
}

fn collect_events(scenario: Scenario) -> (Vec<InteractionEvent>, Runner) {
    let mut runner = Runner::new(scenario).unwrap();
    let mut events = Vec::new();
    runner
        .run(|rec| events.extend_from_slice(&rec.outcome.interactions))
        .unwrap();
    (events, runner)
}

#[test]
fn four_particle_walk_pairs_up() {
    let (events, runner) = collect_events(four_particle_scenario(3, 300));
    let final_gaps = runner.config().gaps().clone();
    // Pairs (1,2) and (3,4) meet and stay met; their gaps close exactly.
    assert_eq!(final_gaps.gaps()[0], 0.0);
    assert_eq!(final_gaps.gaps()[2], 0.0);
    assert!((final_gaps.gaps()[1] + final_gaps.gaps()[3] - 1.0).abs() < 1e-12);

    let report = chain_interaction_log(&events, 4);
    assert!(report.first_interaction[0].is_some());
    assert!(report.first_interaction[2].is_some());
    // The separating pairs never interact.
    assert_eq!(report.first_interaction[1], None);
    assert_eq!(report.first_interaction[3], None);
}

#[test]
fn fast_walk_chain_interacts_within_the_speed_bound() {
    // Every speed above free/n forces each pair to interact within
    // free / v_min of its own updates, under the round-robin cursor.
    let speeds = [0.45, 0.9, 0.85];
    let config = config_from_gaps(&gaps(&[0.05, 0.05, 0.9]), &[0.0; 3], 0.0).unwrap();
    let scenario = Scenario {
        n: 3,
        positions: config.positions().to_vec(),
        radii: vec![0.0; 3],
        laws: speeds
            .iter()
            .map(|&v| JumpLaw::constant(v).unwrap())
            .collect(),
        update: UpdateRule::DeterministicSequential { start_index: 1 },
        conflict: ConflictRule::Natural,
        lattice: None,
        seed: 0,
        horizon: 120,
    };
    let (events, _) = collect_events(scenario);
    let report = chain_interaction_log(&events, 3);
    let bound = 3 * (1.0f64 / 0.45).ceil() as u64;
    for (i, first) in report.first_interaction.iter().enumerate() {
        let tick = first.unwrap_or_else(|| panic!("pair {i} never interacts"));
        assert!(
            tick <= bound,
            "pair {i} first interacts at {tick} > {bound}"
        );
    }
    // Once locked, the two followers keep catching the particles ahead of
    // them round after round, so the chains through gaps 1 and 2 recur.
    assert!(report.chain[1][0].is_some());
    assert!(report.chain[2][0].is_some());
    assert!(report.chain[1][2].is_some());
}

#[test]
fn equal_spacing_and_equal_speeds_never_interact() {
    let config = config_from_gaps(&gaps(&[0.25; 4]), &[0.0; 4], 0.0).unwrap();
    let scenario = Scenario {
        n: 4,
        positions: config.positions().to_vec(),
        radii: vec![0.0; 4],
        laws: vec![JumpLaw::constant(0.2).unwrap(); 4],
        update: UpdateRule::Parallel,
        conflict: ConflictRule::Natural,
        lattice: None,
        seed: 0,
        horizon: 1000,
    };
    let (events, runner) = collect_events(scenario);
    assert!(events.is_empty());
    for g in runner.config().gaps().gaps() {
        assert!((g - 0.25).abs() < 1e-9);
    }
}

#[test]
fn two_particle_overtaking_walks_synchronize() {
    // Statistical battery: 200 seed pairs of a two-particle sequential walk
    // whose atom laws overtake pairwise; the replicas couple below 1e-9.
    let laws = vec![
        JumpLaw::atoms(vec![(0.0, 0.5), (0.3, 0.5)]).unwrap(),
        JumpLaw::atoms(vec![(0.0, 0.5), (0.45, 0.5)]).unwrap(),
    ];
    assert!(check_nondegeneracy(&laws).unwrap().clockwise_overtaking);
    let mut synced = 0;
    for seed in 0..200u64 {
        let a = config_from_gaps(&gaps(&[0.2, 0.8]), &[0.0, 0.0], 0.0).unwrap();
        let b = config_from_gaps(&gaps(&[0.6, 0.4]), &[0.0, 0.0], 0.5).unwrap();
        let mut runner = init_coupled(
            a,
            b,
            laws.clone(),
            UpdateRule::RandomSequential {
                weights: vec![0.5, 0.5],
            },
            ConflictRule::Natural,
            derive_seed(0xabc, seed),
        )
        .unwrap();
        if synchronization_time(&mut runner, 1e-9, 1_000_000)
            .unwrap()
            .is_some()
        {
            synced += 1;
        }
        assert!(runner.report().is_clean());
    }
    assert!(synced >= 198, "only {synced}/200 seed pairs synchronized");
}

#[test]
fn identical_replicas_synchronize_immediately() {
    let a = config_from_gaps(&gaps(&[0.3, 0.7]), &[0.0, 0.0], 0.0).unwrap();
    let mut runner = init_coupled(
        a.clone(),
        a,
        vec![JumpLaw::constant(0.1).unwrap(); 2],
        UpdateRule::Parallel,
        ConflictRule::Natural,
        1,
    )
    .unwrap();
    assert_eq!(
        synchronization_time(&mut runner, 1e-9, 100).unwrap(),
        Some(0)
    );
}

#[test]
fn rotating_orbits_with_different_shapes_never_synchronize() {
    let a = prop1_scenario(&[0.5, 0.4, 0.3], 0.01, &[0.0; 3], 9, 10_000).unwrap();
    let b = prop1_scenario(&[0.5, 0.4, 0.3], 0.02, &[0.0; 3], 9, 10_000).unwrap();
    let mut runner = init_coupled(
        a.config().unwrap(),
        b.config().unwrap(),
        a.laws.clone(),
        a.update.clone(),
        a.conflict,
        a.seed,
    )
    .unwrap();
    let sync = synchronization_time(&mut runner, 1e-9, 10_000).unwrap();
    assert_eq!(sync, None);
    assert!(
        runner.state().sync_distance() > 1e-3,
        "distance {}",
        runner.state().sync_distance()
    );
}

#[test]
fn rotating_orbits_separate_in_the_max_gap_average() {
    // The largest gap is invariant along a rotation, so its Cesàro average
    // distinguishes the two orbit shapes.
    let a = prop1_scenario(&[0.5, 0.4, 0.3], 0.01, &[0.0; 3], 9, 10_000).unwrap();
    let b = prop1_scenario(&[0.5, 0.4, 0.3], 0.02, &[0.0; 3], 9, 10_000).unwrap();
    let report = cesaro_compare(&a, &b, GapFunctional::MaxGap, 10_000).unwrap();
    assert!(
        report.final_gap > 2e-3,
        "max-gap averages differ by {}",
        report.final_gap
    );
}

#[test]
fn sequential_walks_share_cesaro_averages() {
    // Two-particle overtaking walk: running averages of the first gap from
    // different starts agree within 0.01 after a million ticks.
    let laws = vec![
        JumpLaw::atoms(vec![(0.0, 0.5), (0.3, 0.5)]).unwrap(),
        JumpLaw::atoms(vec![(0.0, 0.5), (0.45, 0.5)]).unwrap(),
    ];
    let build = |initial: &[f64], anchor: f64, seed: u64| {
        let config = config_from_gaps(&gaps(initial), &[0.0, 0.0], anchor).unwrap();
        Scenario {
            n: 2,
            positions: config.positions().to_vec(),
            radii: vec![0.0, 0.0],
            laws: laws.clone(),
            update: UpdateRule::RandomSequential {
                weights: vec![0.5, 0.5],
            },
            conflict: ConflictRule::Natural,
            lattice: None,
            seed,
            horizon: 1_000_000,
        }
    };
    let mut worst: f64 = 0.0;
    for pair in 0..50u64 {
        let seed = derive_seed(0xce5a, pair);
        let a = build(&[0.15, 0.85], 0.0, seed);
        let b = build(&[0.7, 0.3], 0.4, seed);
        let report = cesaro_compare(&a, &b, GapFunctional::Coordinate(0), 1_000_000).unwrap();
        worst = worst.max(report.final_gap);
    }
    assert!(worst < 0.01, "worst Cesàro gap {worst}");
}

#[test]
fn stationary_particles_pin_their_gap() {
    let scenario = two_zero_velocities_scenario(5, 0, 500).unwrap();
    let initial_gap = scenario.config().unwrap().gaps().gaps()[0];
    let mut runner = Runner::new(scenario).unwrap();
    runner
        .run(|rec| {
            // Particles 1 and 2 never move, so the gap between them is pinned.
            assert_eq!(rec.outcome.displacements[0], 0.0);
            assert_eq!(rec.outcome.displacements[1], 0.0);
            assert!((rec.outcome.gaps_next.gaps()[0] - initial_gap).abs() < 1e-12);
        })
        .unwrap();
    // The fast particles keep circulating behind the pinned pair.
    assert!(runner.config().gaps().gaps()[4] < initial_gap + 1e-9);
}

#[test]
fn duplicated_minimum_trains_stay_apart_forever() {
    // Speeds (0.2, 0.5, 0.2, 0.5): the fast particles ride behind the slow
    // ones and the leftover space splits arbitrarily between the trains, so
    // two different splits are distinct invariant states.
    let laws: Vec<JumpLaw> = [0.2, 0.5, 0.2, 0.5]
        .iter()
        .map(|&v| JumpLaw::constant(v).unwrap())
        .collect();
    let a = config_from_gaps(&gaps(&[0.3, 0.2, 0.3, 0.2]), &[0.0; 4], 0.0).unwrap();
    let b = config_from_gaps(&gaps(&[0.35, 0.2, 0.25, 0.2]), &[0.0; 4], 0.0).unwrap();
    let mut runner =
        init_coupled(a, b, laws, UpdateRule::Parallel, ConflictRule::Natural, 17).unwrap();
    for _ in 0..10_000 {
        runner.step().unwrap();
        let d = runner.state().sync_distance();
        assert!((d - 0.1).abs() < 1e-9, "distance moved to {d}");
    }
    assert!(runner.report().is_clean());
}

#[test]
fn liftings_recover_gaps_over_long_runs() {
    let laws = vec![
        JumpLaw::atoms(vec![(0.0, 0.25), (0.35, 0.75)]).unwrap(),
        JumpLaw::atoms(vec![(-0.2, 0.5), (0.3, 0.5)]).unwrap(),
        JumpLaw::uniform(-0.4, 0.5).unwrap(),
    ];
    let a = config_from_gaps(&gaps(&[0.5, 0.25, 0.25]), &[0.0; 3], 0.0).unwrap();
    let b = config_from_gaps(&gaps(&[0.2, 0.5, 0.3]), &[0.0; 3], 0.7).unwrap();
    let mut runner =
        init_coupled(a, b, laws, UpdateRule::Parallel, ConflictRule::Natural, 23).unwrap();
    let mut worst: f64 = 0.0;
    for _ in 0..100_000 {
        runner.step().unwrap();
        let state = runner.state();
        worst = worst.max(state.lifting_a.gap_recovery_residual(state.gaps_a()));
        worst = worst.max(state.lifting_b.gap_recovery_residual(state.gaps_b()));
    }
    println!("worst lifting residual over 1e5 ticks: {worst:.3e}");
    assert!(worst < 1e-9, "residual {worst:.3e}");
    assert!(runner.report().identity_violations.is_empty());
}

#[test]
fn lattice_scenarios_run_exactly() {
    let sites = 6u32;
    let scenario = Scenario {
        n: 2,
        positions: vec![0.0, 3.0 / 6.0],
        radii: vec![1.0 / 12.0, 1.0 / 12.0],
        laws: vec![
            JumpLaw::atoms(vec![(0.0, 0.5), (2.0 / 6.0, 0.5)]).unwrap(),
            JumpLaw::atoms(vec![(0.0, 0.5), (2.0 / 6.0, 0.5)]).unwrap(),
        ],
        update: UpdateRule::Parallel,
        conflict: ConflictRule::StrictExclusion,
        lattice: Some(circlewalk::LatticeSpec { sites }),
        seed: 5,
        horizon: 2000,
    };
    let mut runner = Runner::new(scenario).unwrap();
    runner
        .run(|rec| {
            for (i, &x) in rec.outcome.config_next.positions().iter().enumerate() {
                let site = (x * sites as f64).round();
                assert_eq!(x, site / sites as f64, "position left the lattice");
                // 2-site hops keep each particle's site parity.
                assert_eq!(site as i64 % 2, i as i64, "parity flipped");
            }
        })
        .unwrap();
    assert_eq!(runner.tick(), 2000);
}

#[test]
fn scripted_pair_scenarios_run_to_script_end() {
    let (a, b) = at_sequence_pair(25, 1).unwrap();
    for scenario in [a, b] {
        let mut runner = Runner::new(scenario).unwrap();
        runner.run(|_| {}).unwrap();
        assert_eq!(runner.tick(), 25);
    }
}
