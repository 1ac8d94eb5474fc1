//! Run a small sequential walk and print what happened.

use circlewalk::{ConflictRule, JumpLaw, Runner, Scenario, UpdateRule};

fn main() {
    let scenario = Scenario {
        n: 3,
        positions: vec![0.0, 0.35, 0.7],
        radii: vec![0.02, 0.02, 0.02],
        laws: vec![
            JumpLaw::atoms(vec![(0.0, 0.5), (0.3, 0.5)]).unwrap(),
            JumpLaw::atoms(vec![(0.0, 0.5), (0.35, 0.5)]).unwrap(),
            JumpLaw::atoms(vec![(0.0, 0.5), (0.4, 0.5)]).unwrap(),
        ],
        update: UpdateRule::RandomSequential {
            weights: vec![1.0 / 3.0; 3],
        },
        conflict: ConflictRule::Natural,
        lattice: None,
        seed: 7,
        horizon: 10_000,
    };

    let mut runner = Runner::new(scenario).unwrap();
    let mut interactions = vec![0u64; 3];
    let mut worst_conservation: f64 = 0.0;
    runner
        .run(|record| {
            for event in &record.outcome.interactions {
                interactions[event.gap_index(3)] += 1;
            }
            worst_conservation =
                worst_conservation.max((record.outcome.gaps_next.conserved_sum() - 1.0).abs());
        })
        .unwrap();

    println!("ticks:              {}", runner.tick());
    println!("final positions:    {:?}", runner.config().positions());
    println!("final gaps:         {:?}", runner.config().gaps().gaps());
    println!("interactions/pair:  {interactions:?}");
    println!("worst |sum - 1|:    {worst_conservation:.3e}");
}
