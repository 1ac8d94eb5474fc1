//! Acceptance suite: one test per shipped guarantee, each printing a
//! PASS/FAIL line with the measured quantity before asserting it.

use circlewalk::analysis::classify::parse_sign_word;
use circlewalk::analysis::{
    at_sequence_pair, cesaro_compare, check_nondegeneracy, classify_deterministic_positive,
    classify_deterministic_signed, lattice_reachability, prop10_scenario, prop1_gaps,
    prop1_scenario, GapFunctional, Outcome,
};
use circlewalk::coupling::{init_coupled, CoupledRunner};
use circlewalk::rng::derive_seed;
use circlewalk::surd::{ratio, Surd};
use circlewalk::{
    config_from_gaps, gap_step, gaps_of, CircleConfig, ConflictRule, GapVector, JumpLaw,
    LatticeSpec, Runner, Scenario, UpdateRule,
};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MASTER_SEED: u64 = 0x5eed_cafe_f00d_0001;

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Random admissible gap vector for `n` particles with the given radii.
fn random_gaps(rng: &mut ChaCha8Rng, n: usize, radii: &[f64]) -> GapVector {
    let free = 1.0 - radii.iter().map(|r| 2.0 * r).sum::<f64>();
    let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let mut gaps: Vec<f64> = weights.iter().map(|w| w / total * free).collect();
    let sum: f64 = gaps.iter().sum();
    let last = gaps.len() - 1;
    gaps[last] = (gaps[last] + free - sum).max(0.0);
    GapVector::new(gaps, 1.0 - free).expect("constructed admissible")
}

fn random_radii(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    if rng.gen_bool(0.5) {
        vec![0.0; n]
    } else {
        (0..n).map(|_| rng.gen_range(0.0..0.2 / n as f64)).collect()
    }
}

fn random_law(rng: &mut ChaCha8Rng, signed: bool) -> JumpLaw {
    let lo = if signed { -1.0 } else { 0.0 };
    match rng.gen_range(0..3) {
        0 => {
            let k = rng.gen_range(2..=3);
            let weights: Vec<f64> = (0..k).map(|_| rng.gen_range(0.1..1.0)).collect();
            let total: f64 = weights.iter().sum();
            let atoms: Vec<(f64, f64)> = weights
                .iter()
                .map(|w| (rng.gen_range(lo..1.0), w / total))
                .collect();
            JumpLaw::atoms(atoms).expect("valid atoms")
        }
        1 => {
            let a = rng.gen_range(lo..0.9);
            let b = rng.gen_range(a + 0.01..1.0);
            JumpLaw::uniform(a, b).expect("valid uniform")
        }
        _ => JumpLaw::constant(rng.gen_range(lo..1.0)).expect("valid constant"),
    }
}

/// Randomized scenario battery covering every update/conflict combination.
fn random_scenario(index: u64, horizon: u64) -> Scenario {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(MASTER_SEED, index));
    let n = rng.gen_range(2..=12);
    let radii = random_radii(&mut rng, n);
    let gaps = random_gaps(&mut rng, n, &radii);
    let anchor = rng.gen_range(0.0..1.0);
    let config = config_from_gaps(&gaps, &radii, anchor).expect("admissible");
    let signed = rng.gen_bool(0.5);
    let laws: Vec<JumpLaw> = (0..n).map(|_| random_law(&mut rng, signed)).collect();
    let update = match index % 3 {
        0 => UpdateRule::Parallel,
        1 => {
            let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
            let total: f64 = w.iter().sum();
            UpdateRule::RandomSequential {
                weights: w.iter().map(|x| x / total).collect(),
            }
        }
        _ => UpdateRule::DeterministicSequential {
            start_index: rng.gen_range(1..=n),
        },
    };
    let conflict = if (index / 3) % 2 == 0 {
        ConflictRule::Natural
    } else {
        ConflictRule::StrictExclusion
    };
    Scenario {
        n,
        positions: config.positions().to_vec(),
        radii,
        laws,
        update,
        conflict,
        lattice: None,
        seed: derive_seed(MASTER_SEED, index ^ 0xff),
        horizon,
    }
}

/// Criterion 1: conservation of gaps plus diameters along randomized runs.
#[test]
fn acceptance_01_conservation() {
    const SCENARIOS: u64 = 10_000;
    const TICKS: u64 = 1_000;
    let mut worst: f64 = 0.0;
    for k in 0..SCENARIOS {
        let scenario = random_scenario(k, TICKS);
        let mut runner = Runner::new(scenario).expect("valid scenario");
        runner
            .run(|rec| {
                worst = worst.max((rec.outcome.gaps_next.conserved_sum() - 1.0).abs());
            })
            .expect("run completes");
    }
    let pass = worst < 1e-9;
    println!(
        "criterion 01 conservation: {} (max |sum - 1| = {worst:.3e} over {SCENARIOS} scenarios x {TICKS} ticks)",
        status(pass)
    );
    assert!(pass);
}

/// Criterion 2: the gap-space step matches the position-space step.
#[test]
fn acceptance_02_position_gap_equivalence() {
    const SCENARIOS: u64 = 10_000;
    const TICKS: u64 = 1_000;
    let mut worst: f64 = 0.0;
    for k in 0..SCENARIOS {
        let scenario = random_scenario(k, TICKS);
        let conflict = scenario.conflict;
        let mut gaps = scenario.config().expect("admissible").gaps().clone();
        let mask = vec![true; scenario.n];
        let mut runner = Runner::new(scenario).expect("valid scenario");
        let mut diverged: f64 = 0.0;
        runner
            .run(|rec| {
                gaps =
                    gap_step(&gaps, &rec.velocities, &mask, conflict).expect("gap step succeeds");
                for (a, b) in gaps.gaps().iter().zip(rec.outcome.gaps_next.gaps()) {
                    diverged = diverged.max((a - b).abs());
                }
            })
            .expect("run completes");
        worst = worst.max(diverged);
    }
    let pass = worst < 1e-12;
    println!(
        "criterion 02 position/gap equivalence: {} (max route divergence = {worst:.3e})",
        status(pass)
    );
    assert!(pass);
}

fn coupled_battery_runner(index: u64, n: usize, sequential: bool, signed: bool) -> CoupledRunner {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(MASTER_SEED ^ 0xc0, index));
    let radii = random_radii(&mut rng, n);
    let config_a = config_from_gaps(&random_gaps(&mut rng, n, &radii), &radii, 0.0).unwrap();
    let config_b = config_from_gaps(&random_gaps(&mut rng, n, &radii), &radii, 0.3).unwrap();
    let laws: Vec<JumpLaw> = (0..n).map(|_| random_law(&mut rng, signed)).collect();
    let update = if sequential {
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
        let total: f64 = w.iter().sum();
        UpdateRule::RandomSequential {
            weights: w.iter().map(|x| x / total).collect(),
        }
    } else {
        UpdateRule::Parallel
    };
    init_coupled(
        config_a,
        config_b,
        laws,
        update,
        ConflictRule::Natural,
        derive_seed(MASTER_SEED ^ 0xc1, index),
    )
    .expect("coupled shapes agree")
}

/// Criterion 3: interlacing containment and strict pair contraction at every
/// logged interaction, across at least 100k events.
#[test]
fn acceptance_03_interlacing() {
    let mut events: u64 = 0;
    let mut containment = 0usize;
    let mut decrease = 0usize;
    let mut batch = 0u64;
    while events < 100_000 {
        let sequential = batch % 2 == 0;
        let signed = (batch / 2) % 2 == 0;
        let n = 2 + (batch % 7) as usize;
        let mut runner = coupled_battery_runner(batch, n, sequential, signed);
        for _ in 0..2_000 {
            runner.step().expect("coupled step");
        }
        let report = runner.report();
        events += report.interactions_checked;
        containment += report.containment_violations.len();
        decrease += report.decrease_violations.len();
        batch += 1;
    }
    let pass = containment == 0 && decrease == 0;
    println!(
        "criterion 03 interlacing: {} ({} events, {} containment violations, {} contraction violations)",
        status(pass),
        events,
        containment,
        decrease
    );
    assert!(pass);
}

/// Criteria 4 and 5: Var(s) never increases (both updating modes) and the gap
/// functional V never increases under sequential updating.
#[test]
fn acceptance_04_05_monotone_functionals() {
    const TRAJECTORIES: u64 = 500;
    const TICKS: u64 = 10_000;
    let mut var_violations = 0usize;
    let mut v_violations = 0usize;
    for k in 0..TRAJECTORIES {
        let sequential = k % 2 == 0;
        let signed = (k / 2) % 2 == 0;
        let n = 2 + (k % 11) as usize;
        let mut runner = coupled_battery_runner(k ^ 0x4000, n, sequential, signed);
        for _ in 0..TICKS {
            runner.step().expect("coupled step");
        }
        var_violations += runner.report().variation_violations.len();
        v_violations += runner.report().gap_functional_violations.len();
    }
    let pass_var = var_violations == 0;
    let pass_v = v_violations == 0;
    println!(
        "criterion 04 spin-variation monotone: {} ({} violations over {TRAJECTORIES} x {TICKS} ticks)",
        status(pass_var),
        var_violations
    );
    println!(
        "criterion 05 gap functional monotone (sequential): {} ({} violations)",
        status(pass_v),
        v_violations
    );
    assert!(pass_var);
    assert!(pass_v);
}

/// Criterion 6: two replicas with pairwise-overtaking atom laws synchronize
/// under random sequential updating.
#[test]
fn acceptance_06_synchronization() {
    const SEEDS: u64 = 200;
    const MAX_TICKS: u64 = 1_000_000;
    let n = 4;
    let radii = vec![0.02; n];
    let speeds = [0.30, 0.35, 0.40, 0.45];
    let laws: Vec<JumpLaw> = speeds
        .iter()
        .map(|&c| JumpLaw::atoms(vec![(0.0, 0.5), (c, 0.5)]).unwrap())
        .collect();
    let overtake = check_nondegeneracy(&laws).expect("decidable family");
    assert!(
        overtake.clockwise_overtaking,
        "battery laws must overtake pairwise"
    );

    let mut synced = 0u64;
    let mut identity_ok = true;
    for seed in 0..SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(MASTER_SEED ^ 0x600, seed));
        let config_a = config_from_gaps(&random_gaps(&mut rng, n, &radii), &radii, 0.1).unwrap();
        let config_b = config_from_gaps(&random_gaps(&mut rng, n, &radii), &radii, 0.6).unwrap();
        let mut runner = init_coupled(
            config_a,
            config_b,
            laws.clone(),
            UpdateRule::RandomSequential {
                weights: vec![0.25; 4],
            },
            ConflictRule::Natural,
            derive_seed(MASTER_SEED ^ 0x601, seed),
        )
        .unwrap();
        let mut reached = false;
        for _ in 0..MAX_TICKS {
            runner.step().expect("coupled step");
            if runner.state().variation() < 1e-9 {
                reached = true;
                break;
            }
        }
        if reached {
            synced += 1;
            // Var < 1e-9 forces the gap distance below 1e-9 as well.
            if runner.state().sync_distance() >= 1e-9 {
                identity_ok = false;
            }
        }
    }
    let rate = synced as f64 / SEEDS as f64;
    let pass = rate >= 0.99 && identity_ok;
    println!(
        "criterion 06 synchronization: {} ({synced}/{SEEDS} seeds, gap distance consistent: {identity_ok})",
        status(pass)
    );
    assert!(pass);
}

/// Criterion 7: the rotating-orbit construction has an exact period-n gap
/// orbit; distinct shape parameters are then required to separate the Cesàro
/// averages of the first gap by more than 0.05.
#[test]
fn acceptance_07_rotating_orbit() {
    const TICKS: usize = 10_000;
    let v0 = [0.5, 0.4, 0.3];
    let radii = [0.0; 3];
    let mut drift: f64 = 0.0;
    for &b in &[0.01, 0.02] {
        let scenario = prop1_scenario(&v0, b, &radii, 7, TICKS as u64).unwrap();
        let mut runner = Runner::new(scenario).unwrap();
        let mut history: Vec<Vec<f64>> = vec![runner.config().gaps().gaps().to_vec()];
        runner
            .run(|rec| history.push(rec.outcome.gaps_next.gaps().to_vec()))
            .unwrap();
        for t in 0..history.len() - 3 {
            for i in 0..3 {
                drift = drift.max((history[t + 3][i] - history[t][i]).abs());
            }
        }
    }
    let period_pass = drift < 1e-10;
    println!(
        "criterion 07a exact period-3 orbit: {} (max |gap(t+3) - gap(t)| = {drift:.3e})",
        status(period_pass)
    );

    let a = prop1_scenario(&v0, 0.01, &radii, 7, TICKS as u64).unwrap();
    let b = prop1_scenario(&v0, 0.02, &radii, 7, TICKS as u64).unwrap();
    let report = cesaro_compare(&a, &b, GapFunctional::Coordinate(0), TICKS as u64).unwrap();
    let cesaro_pass = report.final_gap > 0.05;
    println!(
        "criterion 07b Cesàro separation of gap 1: {} (|avg_a - avg_b| = {:.3e}, required > 0.05; both orbits average the same rotation, so the first-gap averages coincide at (1 - 2 sum r)/n)",
        status(cesaro_pass),
        report.final_gap
    );
    assert!(period_pass);
    assert!(
        cesaro_pass,
        "Cesàro averages of gap 1 differ by {:.3e} <= 0.05: a period-n rotation averages \
         every gap slot equally, so this separation cannot occur for any shape parameter",
        report.final_gap
    );
}

/// Criterion 8: classifier verdict plus trajectory lock-in within the
/// catch-up bound, with the leader advancing by exactly the locked step.
#[test]
fn acceptance_08_deterministic_lock_in() {
    let velocities = vec![
        Surd::from_ratio(1, 2),
        Surd::from_ratio(2, 5),
        Surd::root_term(1, 8, 2).unwrap(),
    ];
    let verdict = classify_deterministic_positive(&velocities, &[]).unwrap();
    let classifier_pass = verdict.outcome == Outcome::UniquelyErgodic;
    let bound = match &verdict.witness {
        circlewalk::analysis::classify::Witness::PositiveSpeeds {
            catch_up_bounds, ..
        } => *catch_up_bounds.last().unwrap(),
        _ => panic!("positive-speed witness expected"),
    };
    let v = [0.5, 0.4, 2f64.sqrt() / 8.0];
    let beta = v[2];
    let mut lock_pass = true;
    let mut worst_lock_tick = 0u64;
    let mut step_err: f64 = 0.0;
    for trial in 0..6u64 {
        let gaps = if trial == 0 {
            GapVector::new(vec![0.98, 0.01, 0.01], 0.0).unwrap()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(MASTER_SEED ^ 0x800, trial));
            random_gaps(&mut rng, 3, &[0.0; 3])
        };
        let mut config = config_from_gaps(&gaps, &[0.0; 3], 0.0).unwrap();
        let mut locked_at: Option<u64> = None;
        for tick in 0..200u64 {
            let out = circlewalk::step_parallel(&config, &v, ConflictRule::Natural).unwrap();
            let g = out.gaps_next.gaps();
            if locked_at.is_none() && (g[0] - g[1]).abs() < 1e-9 && (g[0] - beta).abs() < 1e-9 {
                locked_at = Some(tick + 1);
            }
            if locked_at.is_some() {
                step_err = step_err.max((out.displacements[2] - beta).abs());
                if (g[0] - g[1]).abs() >= 1e-9 {
                    lock_pass = false;
                }
            }
            config = out.config_next;
        }
        match locked_at {
            Some(t) if (t as f64) <= bound.ceil() => worst_lock_tick = worst_lock_tick.max(t),
            _ => lock_pass = false,
        }
    }
    let step_pass = step_err < 1e-12;
    let pass = classifier_pass && lock_pass && step_pass;
    println!(
        "criterion 08 deterministic lock-in: {} (verdict {:?}, worst lock tick {worst_lock_tick} <= bound {:.3}, leader step error {step_err:.3e})",
        status(pass),
        verdict.outcome,
        bound
    );
    assert!(pass);
}

/// Criterion 9: the frozen strict-exclusion configuration is an exact fixed
/// point, and shifted copies are distinct fixed points.
#[test]
fn acceptance_09_frozen_fixed_points() {
    let laws = vec![JumpLaw::atoms(vec![(0.5, 0.5), (-0.5, 0.5)]).unwrap(); 4];
    let scenario = prop10_scenario(0.3, 4, laws, 11, 100_000).unwrap();
    let initial = scenario.config().unwrap();
    let mut runner = Runner::new(scenario.clone()).unwrap();
    let mut moved = false;
    runner
        .run(|rec| {
            if rec.outcome.displacements.iter().any(|&d| d != 0.0) {
                moved = true;
            }
        })
        .unwrap();
    let fixed = !moved && runner.config().positions() == initial.positions();

    let mut variants_fixed = true;
    let mut variants: Vec<Vec<f64>> = Vec::new();
    for k in 0..10 {
        let shift = 0.01 * k as f64;
        let positions: Vec<f64> = initial
            .positions()
            .iter()
            .map(|&x| circlewalk::geometry::reduce(x + shift))
            .collect();
        let mut s = scenario.clone();
        s.positions = positions.clone();
        s.horizon = 1_000;
        let mut r = Runner::new(s).unwrap();
        r.run(|_| {}).unwrap();
        if r.config().positions() != positions.as_slice() {
            variants_fixed = false;
        }
        variants.push(positions);
    }
    let all_distinct =
        (0..variants.len()).all(|i| (i + 1..variants.len()).all(|j| variants[i] != variants[j]));
    let pass = fixed && variants_fixed && all_distinct;
    println!(
        "criterion 09 frozen fixed points: {} (base fixed over 100000 ticks: {fixed}, 10 shifted variants fixed: {variants_fixed}, distinct: {all_distinct})",
        status(pass)
    );
    assert!(pass);
}

/// Criterion 10: lattice hop reachability — single hops irreducible, double
/// hops reducible on an even circle (with per-particle parity conserved) and
/// irreducible on an odd circle.
#[test]
fn acceptance_10_lattice_reachability() {
    let j1 = lattice_reachability(LatticeSpec { sites: 6 }, 2, 1, 1_000_000).unwrap();
    let j2 = lattice_reachability(LatticeSpec { sites: 6 }, 2, 2, 1_000_000).unwrap();
    let j2_odd = lattice_reachability(LatticeSpec { sites: 5 }, 2, 2, 1_000_000).unwrap();
    let mut parity_ok = true;
    for (from, outs) in j2.edges.iter().enumerate() {
        for &to in outs {
            for (a, b) in j2.states[from].iter().zip(&j2.states[to as usize]) {
                if a % 2 != b % 2 {
                    parity_ok = false;
                }
            }
        }
    }
    let pass = j1.irreducible && !j2.irreducible && parity_ok && j2_odd.irreducible;
    println!(
        "criterion 10 lattice reachability: {} (6 sites: jump-1 irreducible {}, jump-2 classes {}, parity conserved {}; 5 sites: jump-2 irreducible {})",
        status(pass),
        j1.irreducible,
        j2.class_count,
        parity_ok,
        j2_odd.irreducible
    );
    assert!(pass);
}

/// Criterion 11: classifier tables — sign words and a 30-case hand-tabulated
/// positive-speed matrix covering both slack branches, rational and
/// irrational minima, and duplicated minima.
#[test]
fn acceptance_11_classifier_tables() {
    let sign_cases = [
        ("+++0--", Outcome::UniquelyErgodic),
        ("++000--+-", Outcome::NotUniquelyErgodic),
        ("++--0", Outcome::NotUniquelyErgodic),
    ];
    let mut failures = Vec::new();
    for (word, expected) in sign_cases {
        let got = classify_deterministic_signed(&parse_sign_word(word).unwrap())
            .unwrap()
            .outcome;
        if got != expected {
            failures.push(format!("{word}: got {got:?}"));
        }
    }

    type Row = (&'static str, Vec<Surd>, Vec<BigRational>, Outcome);
    let rt = |n: i64, d: i64, rad: u64| Surd::root_term(n, d, rad).unwrap();
    let rq = Surd::from_ratio;
    let mix = |an: i64, ad: i64, bn: i64, bd: i64, rad: u64| {
        Surd::new(ratio(an, ad), ratio(bn, bd), rad).unwrap()
    };
    use Outcome::{NotUniquelyErgodic as No, UniquelyErgodic as Yes};
    let rows: Vec<Row> = vec![
        ("half vs root2/4", vec![rq(1, 2), rt(1, 4, 2)], vec![], Yes),
        ("one vs root2/2", vec![rq(1, 1), rt(1, 2, 2)], vec![], Yes),
        ("equal halves", vec![rq(1, 2), rq(1, 2)], vec![], No),
        ("rational min, slack+", vec![rq(1, 2), rq(1, 4)], vec![], No),
        (
            "rational min, slack-",
            vec![rq(9, 10), rq(3, 5)],
            vec![],
            No,
        ),
        (
            "irrational, slack-",
            vec![rq(9, 10), rt(1, 2, 2)],
            vec![],
            Yes,
        ),
        (
            "n=3 irrational min",
            vec![rq(1, 2), rq(2, 5), rt(1, 8, 2)],
            vec![],
            Yes,
        ),
        (
            "n=3 rational min, dup non-min",
            vec![rq(1, 2), rq(1, 2), rq(1, 4)],
            vec![],
            No,
        ),
        (
            "dup irrational min",
            vec![rt(1, 4, 2), rt(1, 4, 2), rq(1, 2)],
            vec![],
            No,
        ),
        (
            "radii, irrational, slack+",
            vec![rq(2, 5), rt(1, 8, 3)],
            vec![ratio(1, 8), ratio(1, 8)],
            Yes,
        ),
        (
            "radii, rational, slack+",
            vec![rq(2, 5), rq(1, 5)],
            vec![ratio(1, 8), ratio(1, 8)],
            No,
        ),
        (
            "radii, rational, slack-",
            vec![rq(2, 5), rq(3, 10)],
            vec![ratio(1, 8), ratio(1, 8)],
            No,
        ),
        (
            "radii, irrational, slack-",
            vec![rq(2, 5), rt(1, 6, 3)],
            vec![ratio(1, 8), ratio(1, 8)],
            Yes,
        ),
        ("zero slack, rational", vec![rq(3, 4), rq(1, 2)], vec![], No),
        (
            "n=3 with radii, irrational",
            vec![rq(1, 3), rq(1, 4), rt(1, 10, 5)],
            vec![ratio(1, 30), ratio(1, 30), ratio(1, 30)],
            Yes,
        ),
        (
            "cross-field minimum",
            vec![rt(1, 2, 2), rt(1, 4, 3)],
            vec![],
            Yes,
        ),
        (
            "canonical equality dup",
            vec![Surd::new(ratio(0, 1), ratio(1, 4), 8).unwrap(), rt(1, 2, 2)],
            vec![],
            No,
        ),
        (
            "n=4 rational, slack-",
            vec![rq(1, 2), rq(1, 3), rq(2, 5), rq(3, 10)],
            vec![],
            No,
        ),
        (
            "n=4 irrational, slack-",
            vec![rq(1, 2), rq(1, 3), rq(2, 5), rt(1, 5, 2)],
            vec![],
            Yes,
        ),
        (
            "dup rational min",
            vec![rq(1, 4), rq(1, 4), rq(1, 2)],
            vec![],
            No,
        ),
        ("min at head", vec![rt(1, 4, 2), rq(1, 2)], vec![], Yes),
        (
            "negative root part",
            vec![mix(1, 1, -1, 2, 2), rq(1, 2)],
            vec![],
            Yes,
        ),
        ("large radicand", vec![rq(1, 2), rt(1, 20, 97)], vec![], Yes),
        (
            "near-half rational",
            vec![rq(1, 2), rq(49, 100)],
            vec![],
            No,
        ),
        ("all equal", vec![rq(3, 5), rq(3, 5), rq(3, 5)], vec![], No),
        (
            "n=3 rational chain",
            vec![rq(2, 5), rq(7, 20), rq(3, 10)],
            vec![],
            No,
        ),
        (
            "n=3 irrational tail",
            vec![rq(2, 5), rq(7, 20), rt(1, 5, 2)],
            vec![],
            Yes,
        ),
        (
            "zero locked angle",
            vec![rq(1, 2), rq(5, 12), rq(5, 12), rq(1, 3)],
            vec![],
            No,
        ),
        (
            "same field pair",
            vec![rt(1, 4, 5), rt(1, 8, 5)],
            vec![],
            Yes,
        ),
        (
            "n=4 irrational, slack+",
            vec![rq(7, 10), rq(7, 10), rq(1, 5), rt(1, 10, 3)],
            vec![],
            Yes,
        ),
    ];
    assert_eq!(rows.len(), 30);
    for (label, velocities, radii, expected) in &rows {
        let got = classify_deterministic_positive(velocities, radii)
            .unwrap()
            .outcome;
        if got != *expected {
            failures.push(format!("{label}: got {got:?}, expected {expected:?}"));
        }
    }
    let pass = failures.is_empty();
    println!(
        "criterion 11 classifier tables: {} (3 sign words + 30 speed rows, {} mismatches{})",
        status(pass),
        failures.len(),
        if failures.is_empty() {
            String::new()
        } else {
            format!(": {failures:?}")
        }
    );
    assert!(pass);
}

/// Criterion 12: the growing-script pair keeps exactly one non-interacting
/// particle per replica at every tick, with no index shared.
#[test]
fn acceptance_12_scripted_regression() {
    const TICKS: usize = 100;
    let (a, b) = at_sequence_pair(TICKS, 5).unwrap();
    let mut runner = init_coupled(
        a.config().unwrap(),
        b.config().unwrap(),
        a.laws.clone(),
        a.update.clone(),
        a.conflict,
        a.seed,
    )
    .unwrap();
    runner.record_reduction(true);
    for _ in 0..TICKS {
        runner.step().expect("scripted run");
    }
    let log = &runner.report().reduction_log;
    let mut ok = log.len() == TICKS;
    for entry in log {
        if entry.non_interacting_a.len() != 1
            || entry.non_interacting_b.len() != 1
            || !entry.shared_non_interacting.is_empty()
        {
            ok = false;
        }
    }
    println!(
        "criterion 12 scripted regression: {} ({} ticks, exactly one non-interacting particle per replica, none shared)",
        status(ok),
        log.len()
    );
    assert!(ok);

    // The same scripts keep the total jump below the free length throughout.
    let aux = circlewalk::analysis::check_aux_conditions(&a.laws, 0.0, TICKS as u64);
    assert_eq!(
        aux.total_jump_below_free.status,
        circlewalk::analysis::Status::Holds
    );
}

/// Sanity for the battery itself: gaps produced by the orbit construction
/// match the shape the classifier and simulators assume.
#[test]
fn battery_prop1_guard() {
    let gv = prop1_gaps(&[0.5, 0.4, 0.3], 0.01, &[0.0; 3]).unwrap();
    assert!((gv.conserved_sum() - 1.0).abs() < 1e-12);
    let c = gaps_of(&config_from_gaps(&gv, &[0.0; 3], 0.0).unwrap());
    for (a, b) in c.gaps().iter().zip(gv.gaps()) {
        assert!((a - b).abs() < 1e-12);
    }
    let _: &CircleConfig = &config_from_gaps(&gv, &[0.0; 3], 0.0).unwrap();
}
