//! Two mirrored replicas driven by the same growing scripted jumps. At every
//! tick each replica has exactly one blocked particle, but never the same
//! index in both, so the pair process has no jointly idle particle to anchor
//! a reduction to one-at-a-time updating.

use circlewalk::analysis::at_sequence_pair;
use circlewalk::coupling::init_coupled;

fn main() {
    let ticks = 12;
    let (a, b) = at_sequence_pair(ticks, 0).unwrap();
    println!("replica A gaps: {:?}", a.config().unwrap().gaps().gaps());
    println!("replica B gaps: {:?}", b.config().unwrap().gaps().gaps());

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
    for _ in 0..ticks {
        runner.step().unwrap();
    }

    println!("tick | idle in A | idle in B | idle in both");
    for entry in &runner.report().reduction_log {
        println!(
            "{:>4} | {:>9} | {:>9} | {:?}",
            entry.tick,
            entry.non_interacting_a[0] + 1,
            entry.non_interacting_b[0] + 1,
            entry.shared_non_interacting
        );
    }
}
