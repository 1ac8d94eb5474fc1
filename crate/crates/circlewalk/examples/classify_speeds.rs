//! Exact classification of deterministic walks with constant positive
//! speeds: the verdict depends on whether the slowest particle is unique and
//! on the rationality of the rotation angle it settles into, both decided in
//! quadratic-surd arithmetic.

use circlewalk::analysis::classify::Witness;
use circlewalk::analysis::classify_deterministic_positive;
use circlewalk::surd::Surd;

fn main() {
    let cases: Vec<(&str, Vec<Surd>)> = vec![
        (
            "(1/2, sqrt(2)/4)",
            vec![Surd::from_ratio(1, 2), Surd::root_term(1, 4, 2).unwrap()],
        ),
        (
            "(1, sqrt(2)/2)",
            vec![Surd::from_ratio(1, 1), Surd::root_term(1, 2, 2).unwrap()],
        ),
        (
            "(1/2, 1/4)",
            vec![Surd::from_ratio(1, 2), Surd::from_ratio(1, 4)],
        ),
        (
            "(1/2, 1/2)",
            vec![Surd::from_ratio(1, 2), Surd::from_ratio(1, 2)],
        ),
        (
            "(1/2, 2/5, sqrt(2)/8)",
            vec![
                Surd::from_ratio(1, 2),
                Surd::from_ratio(2, 5),
                Surd::root_term(1, 8, 2).unwrap(),
            ],
        ),
    ];
    for (label, speeds) in cases {
        let verdict = classify_deterministic_positive(&speeds, &[]).unwrap();
        println!("speeds {label}: {:?}", verdict.outcome);
        if let Witness::PositiveSpeeds {
            min_indices,
            v_min,
            slack,
            locked_angle,
            catch_up_bounds,
            reason,
            ..
        } = &verdict.witness
        {
            println!("  slowest at {min_indices:?}, v_min = {v_min}");
            println!("  slack = {slack}, locked angle = {locked_angle}");
            println!("  catch-up bounds: {catch_up_bounds:?}");
            println!("  reason: {reason}");
        }
    }
}
