//! Unique-ergodicity classifiers for deterministic walks.
//!
//! Constant positive speeds, parallel updating: after a finite catch-up
//! phase the walk locks into a train behind the slowest particle, every gap
//! behind the leader equal to a common step `beta`. The gap process is then
//! uniquely ergodic exactly when the slowest particle is unique and the
//! rotation it performs has an irrational angle: `v_min` itself when the
//! leftover slack `1 - 2 sum r - n v_min` is nonnegative, or the reduced
//! angle `slack + v_min` when the slack is negative. Both tests are decided
//! in exact surd arithmetic; approximate inputs are refused rather than
//! rounded.
//!
//! Speeds of both signs: the cyclic word of velocity signs decides. The walk
//! collapses into a single cluster (and is uniquely ergodic) exactly when the
//! word has at most three maximal groups and any zero group is a singleton
//! sitting between the positive group and the negative one.

use crate::error::AnalysisError;
use crate::surd::Surd;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    UniquelyErgodic,
    NotUniquelyErgodic,
    OutsideTheoremScope,
}

/// Velocity sign of one particle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Zero,
    Minus,
}

impl Sign {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '+' => Some(Self::Plus),
            '0' => Some(Self::Zero),
            '-' => Some(Self::Minus),
            _ => None,
        }
    }
}

/// A maximal run of equal signs in the cyclic word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignGroup {
    pub sign: Sign,
    pub len: usize,
}

/// Structured reason behind a verdict.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    PositiveSpeeds {
        /// 1-based indices attaining the minimum speed.
        min_indices: Vec<usize>,
        v_min: String,
        v_min_value: f64,
        v_min_irrational: bool,
        /// Exact `1 - 2 sum r - n v_min`.
        slack: String,
        slack_value: f64,
        slack_nonnegative: bool,
        /// Rotation angle of the slowest particle after lock-in.
        locked_angle: String,
        locked_angle_irrational: bool,
        /// Catch-up tick bounds for the particles behind the slowest one,
        /// cumulative from its immediate predecessor backward; the last entry
        /// bounds the tick by which the whole train is locked.
        catch_up_bounds: Vec<f64>,
        reason: String,
    },
    SignWord {
        groups: Vec<SignGroup>,
        reason: String,
    },
    Scope {
        reason: String,
    },
}

/// Classification outcome plus its witness.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub witness: Witness,
}

impl Verdict {
    fn scope(reason: impl Into<String>) -> Self {
        Self {
            outcome: Outcome::OutsideTheoremScope,
            witness: Witness::Scope {
                reason: reason.into(),
            },
        }
    }
}

/// Classify a deterministic walk with constant, strictly positive speeds
/// under parallel updating.
///
/// `radii` gives the exact ball radii (empty means all zero).
pub fn classify_deterministic_positive(
    velocities: &[Surd],
    radii: &[BigRational],
) -> Result<Verdict, AnalysisError> {
    let n = velocities.len();
    if n < 2 {
        return Err(AnalysisError::Precondition(
            "need at least 2 particles".into(),
        ));
    }
    if !radii.is_empty() && radii.len() != n {
        return Err(AnalysisError::Precondition(format!(
            "{} radii for {n} particles",
            radii.len()
        )));
    }
    for (i, v) in velocities.iter().enumerate() {
        if v.sign() != Ordering::Greater {
            return Err(AnalysisError::NonPositiveVelocity(i + 1));
        }
    }
    let mut diameter = BigRational::zero();
    for r in radii {
        diameter += r + r;
    }
    let free = BigRational::from_integer(1.into()) - diameter;

    let v_min = velocities.iter().min().expect("nonempty").clone();
    let min_indices: Vec<usize> = velocities
        .iter()
        .enumerate()
        .filter(|(_, v)| **v == v_min)
        .map(|(i, _)| i + 1)
        .collect();

    // slack = free - n * v_min; when nonnegative the slowest particle ends up
    // rotating freely by v_min, otherwise by slack + v_min.
    let slack = Surd::from_rational(free.clone())
        .try_sub(&v_min.scale_int(n as i64))
        .expect("rational minus one surd");
    let slack_nonnegative = slack.sign() != Ordering::Less;
    let locked_angle = if slack_nonnegative {
        v_min.clone()
    } else {
        slack.try_add(&v_min).expect("same radicand")
    };

    let unique = min_indices.len() == 1;
    let catch_up_bounds = if unique {
        catch_up(
            velocities,
            &v_min,
            min_indices[0] - 1,
            free.to_f64().unwrap(),
        )
    } else {
        Vec::new()
    };

    let (outcome, reason) = if !unique {
        (
            Outcome::NotUniquelyErgodic,
            format!("minimum speed duplicated at indices {min_indices:?}"),
        )
    } else if locked_angle.is_irrational() {
        let branch = if slack_nonnegative {
            "nonnegative slack and irrational minimal speed"
        } else {
            "negative slack and irrational reduced angle"
        };
        (Outcome::UniquelyErgodic, branch.to_string())
    } else {
        (
            Outcome::NotUniquelyErgodic,
            if slack_nonnegative {
                "minimal speed is rational".to_string()
            } else {
                "reduced angle is rational".to_string()
            },
        )
    };

    Ok(Verdict {
        outcome,
        witness: Witness::PositiveSpeeds {
            min_indices,
            v_min: v_min.to_string(),
            v_min_value: v_min.to_f64(),
            v_min_irrational: v_min.is_irrational(),
            slack: slack.to_string(),
            slack_value: slack.to_f64(),
            slack_nonnegative,
            locked_angle: locked_angle.to_string(),
            locked_angle_irrational: locked_angle.is_irrational(),
            catch_up_bounds,
            reason,
        },
    })
}

/// Catch-up bounds: the particle right behind the slowest one reaches it
/// within `free / (v - v_min)` ticks; each next particle back adds its own
/// term. Returned cumulatively, so the last entry bounds the full lock-in.
fn catch_up(velocities: &[Surd], v_min: &Surd, min_index: usize, free: f64) -> Vec<f64> {
    let n = velocities.len();
    let v_min_f = v_min.to_f64();
    let mut bounds = Vec::with_capacity(n - 1);
    let mut total = 0.0;
    for back in 1..n {
        let i = (min_index + n - back) % n;
        let v = velocities[i].to_f64();
        total += free / (v - v_min_f);
        bounds.push(total);
    }
    bounds
}

/// Classify a deterministic walk with speeds of both signs by its cyclic
/// sign word (either updating mode).
pub fn classify_deterministic_signed(signs: &[Sign]) -> Result<Verdict, AnalysisError> {
    let n = signs.len();
    if n < 2 {
        return Err(AnalysisError::Precondition(
            "need at least 2 particles".into(),
        ));
    }
    let has_plus = signs.contains(&Sign::Plus);
    let has_minus = signs.contains(&Sign::Minus);
    if !has_plus || !has_minus {
        return Ok(Verdict::scope(
            "no oppositely signed speeds; use the positive-speed classifier",
        ));
    }

    // Maximal constant groups of the cyclic word, starting at a boundary.
    let start = (1..n).find(|&i| signs[i] != signs[i - 1]).unwrap_or(0);
    let mut groups: Vec<SignGroup> = Vec::new();
    for k in 0..n {
        let s = signs[(start + k) % n];
        match groups.last_mut() {
            Some(g) if g.sign == s => g.len += 1,
            _ => groups.push(SignGroup { sign: s, len: 1 }),
        }
    }

    let verdict = |outcome, reason: String| Verdict {
        outcome,
        witness: Witness::SignWord {
            groups: groups.clone(),
            reason,
        },
    };

    if groups.len() > 3 {
        return Ok(verdict(
            Outcome::NotUniquelyErgodic,
            format!("{} groups", groups.len()),
        ));
    }
    if groups.len() == 2 {
        // Two groups with both signs present are one + group and one - group.
        return Ok(verdict(
            Outcome::UniquelyErgodic,
            "one positive and one negative group".into(),
        ));
    }
    // Three groups are one of each kind; the zero group must be a singleton
    // placed after the positive group and before the negative one.
    let zero_pos = groups
        .iter()
        .position(|g| g.sign == Sign::Zero)
        .expect("three groups over two signs is impossible cyclically");
    let zero = groups[zero_pos];
    if zero.len > 1 {
        return Ok(verdict(
            Outcome::NotUniquelyErgodic,
            format!("zero group of size {}", zero.len),
        ));
    }
    let before = groups[(zero_pos + groups.len() - 1) % groups.len()].sign;
    let after = groups[(zero_pos + 1) % groups.len()].sign;
    if before == Sign::Plus && after == Sign::Minus {
        Ok(verdict(
            Outcome::UniquelyErgodic,
            "single zero between the positive and negative groups".into(),
        ))
    } else {
        Ok(verdict(
            Outcome::NotUniquelyErgodic,
            "zero group misplaced".into(),
        ))
    }
}

/// Parse a sign word like `"+++0--"`.
pub fn parse_sign_word(word: &str) -> Result<Vec<Sign>, AnalysisError> {
    word.chars()
        .map(|c| {
            Sign::from_char(c)
                .ok_or_else(|| AnalysisError::Precondition(format!("invalid sign character {c:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surd::ratio;

    fn rational(n: i64, d: i64) -> Surd {
        Surd::from_ratio(n, d)
    }

    fn root(n: i64, d: i64, rad: u64) -> Surd {
        Surd::root_term(n, d, rad).unwrap()
    }

    #[test]
    fn unique_irrational_minimum_is_uniquely_ergodic() {
        let v = vec![rational(1, 2), root(1, 4, 2)];
        let verdict = classify_deterministic_positive(&v, &[]).unwrap();
        assert_eq!(verdict.outcome, Outcome::UniquelyErgodic);
        match verdict.witness {
            Witness::PositiveSpeeds {
                min_indices,
                slack_nonnegative,
                v_min_irrational,
                ..
            } => {
                assert_eq!(min_indices, vec![2]);
                assert!(slack_nonnegative);
                assert!(v_min_irrational);
            }
            _ => panic!("wrong witness"),
        }
    }

    #[test]
    fn negative_slack_branch() {
        // v = (1, sqrt(2)/2): slack = 1 - sqrt(2) < 0, reduced angle
        // 1 - sqrt(2)/2 irrational.
        let v = vec![rational(1, 1), root(1, 2, 2)];
        let verdict = classify_deterministic_positive(&v, &[]).unwrap();
        assert_eq!(verdict.outcome, Outcome::UniquelyErgodic);
        match verdict.witness {
            Witness::PositiveSpeeds {
                slack_nonnegative,
                locked_angle_irrational,
                ..
            } => {
                assert!(!slack_nonnegative);
                assert!(locked_angle_irrational);
            }
            _ => panic!("wrong witness"),
        }
    }

    #[test]
    fn duplicated_minimum_fails() {
        let v = vec![rational(1, 2), rational(1, 2)];
        let verdict = classify_deterministic_positive(&v, &[]).unwrap();
        assert_eq!(verdict.outcome, Outcome::NotUniquelyErgodic);
    }

    #[test]
    fn radii_enter_the_slack() {
        // free = 1/2; v = (2/5, sqrt(3)/8): slack = 1/2 - sqrt(3)/4 > 0.
        let v = vec![rational(2, 5), root(1, 8, 3)];
        let radii = vec![ratio(1, 8), ratio(1, 8)];
        let verdict = classify_deterministic_positive(&v, &radii).unwrap();
        assert_eq!(verdict.outcome, Outcome::UniquelyErgodic);
    }

    #[test]
    fn nonpositive_speed_is_rejected() {
        let v = vec![rational(0, 1), rational(1, 2)];
        assert!(matches!(
            classify_deterministic_positive(&v, &[]),
            Err(AnalysisError::NonPositiveVelocity(1))
        ));
    }

    #[test]
    fn catch_up_bounds_are_cumulative() {
        // v = (1/2, 2/5, sqrt(2)/8), min at tail: bounds 1/(v2-v3), then + 1/(v1-v3).
        let v = vec![rational(1, 2), rational(2, 5), root(1, 8, 2)];
        let verdict = classify_deterministic_positive(&v, &[]).unwrap();
        match verdict.witness {
            Witness::PositiveSpeeds {
                catch_up_bounds, ..
            } => {
                let vmin = 2f64.sqrt() / 8.0;
                let t2 = 1.0 / (0.4 - vmin);
                let t1 = t2 + 1.0 / (0.5 - vmin);
                assert!((catch_up_bounds[0] - t2).abs() < 1e-12);
                assert!((catch_up_bounds[1] - t1).abs() < 1e-12);
            }
            _ => panic!("wrong witness"),
        }
    }

    #[test]
    fn sign_word_examples() {
        let v = classify_deterministic_signed(&parse_sign_word("+++0--").unwrap()).unwrap();
        assert_eq!(v.outcome, Outcome::UniquelyErgodic);

        let v = classify_deterministic_signed(&parse_sign_word("++000--+-").unwrap()).unwrap();
        assert_eq!(v.outcome, Outcome::NotUniquelyErgodic);
        match &v.witness {
            Witness::SignWord { groups, reason } => {
                assert_eq!(groups.len(), 5);
                assert!(reason.contains("5 groups"));
            }
            _ => panic!("wrong witness"),
        }

        let v = classify_deterministic_signed(&parse_sign_word("++--0").unwrap()).unwrap();
        assert_eq!(v.outcome, Outcome::NotUniquelyErgodic);
        match &v.witness {
            Witness::SignWord { reason, .. } => assert!(reason.contains("misplaced")),
            _ => panic!("wrong witness"),
        }

        let v = classify_deterministic_signed(&parse_sign_word("+-").unwrap()).unwrap();
        assert_eq!(v.outcome, Outcome::UniquelyErgodic);

        let v = classify_deterministic_signed(&parse_sign_word("++++").unwrap()).unwrap();
        assert_eq!(v.outcome, Outcome::OutsideTheoremScope);

        let v = classify_deterministic_signed(&parse_sign_word("+++00--").unwrap()).unwrap();
        assert_eq!(v.outcome, Outcome::NotUniquelyErgodic);
    }
}
