//! The two conflict resolutions side by side: mutually approaching particles
//! meet part-way under the natural rule and stay put under strict exclusion.

use circlewalk::{step_parallel, CircleConfig, ConflictRule};

fn main() {
    let config = CircleConfig::new(vec![0.2, 0.5], vec![0.0, 0.0]).unwrap();
    let jumps = [0.3, -0.2];
    println!("start:    {:?}, jumps {:?}", config.positions(), jumps);

    let natural = step_parallel(&config, &jumps, ConflictRule::Natural).unwrap();
    println!(
        "natural:  {:?}  displacements {:?}  (pair meets at the contact point)",
        natural.config_next.positions(),
        natural.displacements
    );

    let strict = step_parallel(&config, &jumps, ConflictRule::StrictExclusion).unwrap();
    println!(
        "strict:   {:?}  displacements {:?}  (both conflicting jumps are refused)",
        strict.config_next.positions(),
        strict.displacements
    );

    for (name, outcome) in [("natural", &natural), ("strict", &strict)] {
        for event in &outcome.interactions {
            println!(
                "{name}: interaction at pair {} ({:?}), jump {:+.2}, moved {:+.3}",
                event.index + 1,
                event.kind,
                event.velocity,
                event.displacement
            );
        }
    }
}
