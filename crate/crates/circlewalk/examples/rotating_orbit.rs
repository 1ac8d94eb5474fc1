//! A parallel walk whose gap vector rotates forever: every particle is
//! blocked at every tick, so one tick cyclically shifts the gaps and the
//! orbit has exact period n. Different shape parameters give different
//! orbits, hence different invariant measures.

use circlewalk::analysis::{prop1_gaps, prop1_scenario};
use circlewalk::Runner;

fn main() {
    let v0 = [0.5, 0.4, 0.3];
    for b in [0.01, 0.02] {
        let gaps = prop1_gaps(&v0, b, &[0.0; 3]).unwrap();
        println!("b = {b}: starting gaps {:?}", gaps.gaps());

        let scenario = prop1_scenario(&v0, b, &[0.0; 3], 1, 9).unwrap();
        let mut runner = Runner::new(scenario).unwrap();
        let mut history = vec![runner.config().gaps().gaps().to_vec()];
        runner
            .run(|rec| history.push(rec.outcome.gaps_next.gaps().to_vec()))
            .unwrap();
        for (t, state) in history.iter().enumerate() {
            println!("  tick {t}: {state:?}");
        }
        let exact = history[0] == history[3] && history[3] == history[6];
        println!("  returns to itself every 3 ticks: {exact}");
    }
}
