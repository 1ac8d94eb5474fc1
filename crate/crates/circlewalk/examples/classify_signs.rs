//! Classification by the cyclic word of velocity signs: a deterministic walk
//! with both directions present collapses into a single cluster exactly when
//! there are at most three sign groups and any zero sits alone between the
//! positive and the negative group.

use circlewalk::analysis::classify::{parse_sign_word, Witness};
use circlewalk::analysis::classify_deterministic_signed;

fn main() {
    for word in ["+++0--", "++000--+-", "++--0", "+-", "++++", "+++00--"] {
        let verdict = classify_deterministic_signed(&parse_sign_word(word).unwrap()).unwrap();
        print!("{word:>10}: {:?}", verdict.outcome);
        match &verdict.witness {
            Witness::SignWord { groups, reason } => {
                let shape: Vec<String> = groups
                    .iter()
                    .map(|g| format!("{:?}x{}", g.sign, g.len))
                    .collect();
                println!("  [{}]  {reason}", shape.join(" "));
            }
            Witness::Scope { reason } => println!("  {reason}"),
            _ => println!(),
        }
    }
}
