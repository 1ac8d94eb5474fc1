//! Four particles with alternating jump directions: 1 and 3 only move
//! clockwise, 2 and 4 only anticlockwise. The pairs (1,2) and (3,4) meet and
//! freeze while the two separating gaps never see an interaction, so the gap
//! process keeps a memory of where the pairs met.

use circlewalk::analysis::four_particle_scenario;
use circlewalk::coupling::chain_interaction_log;
use circlewalk::Runner;

fn main() {
    for seed in [1, 2, 3] {
        let mut runner = Runner::new(four_particle_scenario(seed, 400)).unwrap();
        let mut events = Vec::new();
        runner
            .run(|rec| events.extend_from_slice(&rec.outcome.interactions))
            .unwrap();
        let report = chain_interaction_log(&events, 4);
        let gaps = runner.config().gaps().clone();
        println!("seed {seed}:");
        println!("  final gaps: {:?}", gaps.gaps());
        println!(
            "  first interaction per pair: {:?} (separating pairs stay silent)",
            report.first_interaction
        );
    }
}
