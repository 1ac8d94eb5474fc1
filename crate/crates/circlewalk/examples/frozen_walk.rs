//! Strict exclusion with jumps larger than every gap: the configuration is a
//! fixed point, and so is every small shift of it, so the gap process has
//! infinitely many invariant states.

use circlewalk::analysis::prop10_scenario;
use circlewalk::geometry::reduce;
use circlewalk::{JumpLaw, Runner};

fn main() {
    let laws = vec![JumpLaw::atoms(vec![(0.5, 0.5), (-0.5, 0.5)]).unwrap(); 4];
    let scenario = prop10_scenario(0.3, 4, laws, 3, 10_000).unwrap();
    println!(
        "gaps: {:?} (all below 0.3)",
        scenario.config().unwrap().gaps().gaps()
    );
    println!("every |jump| = 0.5, so every particle is blocked on both sides");

    for shift in [0.0, 0.01, 0.02] {
        let mut shifted = scenario.clone();
        shifted.positions = shifted
            .positions
            .iter()
            .map(|&x| reduce(x + shift))
            .collect();
        let start = shifted.positions.clone();
        let mut runner = Runner::new(shifted).unwrap();
        let mut moved = false;
        runner
            .run(|rec| moved |= rec.outcome.displacements.iter().any(|&d| d != 0.0))
            .unwrap();
        println!(
            "shift {shift:>4}: fixed point over {} ticks: {}",
            runner.tick(),
            !moved && runner.config().positions() == start.as_slice()
        );
    }
}
