//! Executable support checks for the hypotheses under which the gap process
//! synchronizes (or provably fails to).
//!
//! For independent laws with decidable supports, `P(v_i > v_j) > 0` holds
//! exactly when `sup supp(v_i) > inf supp(v_j)`: any strictly smaller cut
//! point leaves positive mass on both sides. All checks below reduce to such
//! support comparisons, except the per-tick conditions on deterministic
//! velocity arrays, which are evaluated literally up to a horizon.

use crate::error::AnalysisError;
use crate::law::JumpLaw;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    Undecidable,
}

/// One checked condition with a human-readable witness.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionResult {
    pub status: Status,
    pub witness: String,
}

impl ConditionResult {
    fn holds(witness: impl Into<String>) -> Self {
        Self {
            status: Status::Holds,
            witness: witness.into(),
        }
    }
    fn fails(witness: impl Into<String>) -> Self {
        Self {
            status: Status::Fails,
            witness: witness.into(),
        }
    }
    fn undecidable(witness: impl Into<String>) -> Self {
        Self {
            status: Status::Undecidable,
            witness: witness.into(),
        }
    }
}

/// Pairwise overtaking structure of a law family.
#[derive(Debug, Clone, Serialize)]
pub struct OvertakeReport {
    pub n: usize,
    /// `faster[i][j]`: truth of `P(v_i > v_j) > 0` (diagonal is `None`).
    pub faster: Vec<Vec<Option<bool>>>,
    /// Exact `P(v_i > v_j)` for purely atomic pairs.
    pub faster_probability: Vec<Vec<Option<f64>>>,
    /// Every particle overtakes every other with positive probability.
    pub clockwise_overtaking: bool,
    /// Every particle falls behind every other with positive probability.
    pub anticlockwise_overtaking: bool,
}

fn atom_list(law: &JumpLaw) -> Option<Vec<(f64, f64)>> {
    match law {
        JumpLaw::Atoms { atoms } => Some(atoms.clone()),
        JumpLaw::Constant { value } => Some(vec![(*value, 1.0)]),
        _ => None,
    }
}

/// Decide `P(v_i > v_j) > 0` for every ordered pair of independent laws.
///
/// Scripted laws are ruled out: a deterministic velocity array is not a
/// product measure over ticks, so the pairwise statement is not law-level
/// decidable.
pub fn check_nondegeneracy(laws: &[JumpLaw]) -> Result<OvertakeReport, AnalysisError> {
    for (i, law) in laws.iter().enumerate() {
        if !law.is_decidable_family() {
            return Err(AnalysisError::Undecidable(format!(
                "law {} is scripted; overtaking probabilities are undefined",
                i + 1
            )));
        }
    }
    let n = laws.len();
    let mut faster = vec![vec![None; n]; n];
    let mut prob = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            faster[i][j] = Some(laws[i].support_sup() > laws[j].support_inf());
            if let (Some(ai), Some(aj)) = (atom_list(&laws[i]), atom_list(&laws[j])) {
                let p: f64 = ai
                    .iter()
                    .flat_map(|&(x, px)| {
                        aj.iter()
                            .filter(move |&&(y, _)| x > y)
                            .map(move |&(_, py)| px * py)
                    })
                    .sum();
                prob[i][j] = Some(p);
            }
        }
    }
    let all = |m: &Vec<Vec<Option<bool>>>| m.iter().flatten().all(|x| x.unwrap_or(true));
    let clockwise = all(&faster);
    let mut slower = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                slower[i][j] = Some(laws[i].support_inf() < laws[j].support_sup());
            }
        }
    }
    let anticlockwise = all(&slower);
    Ok(OvertakeReport {
        n,
        faster,
        faster_probability: prob,
        clockwise_overtaking: clockwise,
        anticlockwise_overtaking: anticlockwise,
    })
}

/// The auxiliary conditions evaluated by [`check_aux_conditions`].
#[derive(Debug, Clone, Serialize)]
pub struct AuxConditionReport {
    /// Every particle can move arbitrarily slowly:
    /// `P(v_i < eps) > 0` for all `eps > 0` and all `i`.
    pub arbitrarily_slow: ConditionResult,
    /// Some adjacent pair can move toward each other:
    /// `P(v_i * v_{i+1} < 0) > 0` for at least one `i`.
    pub opposing_neighbors: ConditionResult,
    /// Deterministic arrays only: `inf_{i,t} v_i^t > free / n`.
    pub min_speed_exceeds_share: ConditionResult,
    /// Deterministic arrays only: from every start tick, the running sum of
    /// `v_i^t - v_{i+1}^t` exceeds 1 in finite time, for every `i`.
    pub cumulative_overtake: ConditionResult,
    /// The total jump can stay below the free length:
    /// `P(sum_i v_i < free) > 0` (at every tick, for scripted laws).
    pub total_jump_below_free: ConditionResult,
}

fn script_len(laws: &[JumpLaw], horizon: u64) -> usize {
    let mut len = horizon as usize;
    for law in laws {
        if let JumpLaw::Scripted { values } = law {
            len = len.min(values.len());
        }
    }
    len
}

fn value_at(law: &JumpLaw, t: usize) -> Option<f64> {
    match law {
        JumpLaw::Constant { value } => Some(*value),
        JumpLaw::Scripted { values } => values.get(t).copied(),
        _ => None,
    }
}

/// Evaluate the auxiliary conditions for a law family with total ball
/// diameter `2 sum r_i = diameter`, scanning scripted laws up to `horizon`.
pub fn check_aux_conditions(laws: &[JumpLaw], diameter: f64, horizon: u64) -> AuxConditionReport {
    let n = laws.len();
    let free = 1.0 - diameter;
    let ticks = script_len(laws, horizon);

    // Arbitrarily slow: inf supp <= 0 per law; scripted laws need every
    // tick's value to be at most 0.
    let arbitrarily_slow = {
        let mut bad = None;
        for (i, law) in laws.iter().enumerate() {
            let ok = match law {
                JumpLaw::Scripted { values } => values.iter().take(ticks).all(|&v| v <= 0.0),
                _ => law.support_inf() <= 0.0,
            };
            if !ok {
                bad = Some(i);
                break;
            }
        }
        match bad {
            None => ConditionResult::holds("every law reaches below any positive bound"),
            Some(i) => ConditionResult::fails(format!(
                "law {} has all jumps >= {}",
                i + 1,
                laws[i].support_inf()
            )),
        }
    };

    // Opposing neighbors: positive-probability sign opposition for some pair.
    let opposing_neighbors = {
        let pair_opposes = |i: usize| {
            let j = (i + 1) % n;
            let (sup_i, inf_i) = scripted_aware_bounds(&laws[i], ticks);
            let (sup_j, inf_j) = scripted_aware_bounds(&laws[j], ticks);
            (sup_i > 0.0 && inf_j < 0.0) || (inf_i < 0.0 && sup_j > 0.0)
        };
        match (0..n).find(|&i| pair_opposes(i)) {
            Some(i) => ConditionResult::holds(format!(
                "pair ({}, {}) can move toward each other",
                i + 1,
                (i + 1) % n + 1
            )),
            None => ConditionResult::fails("no adjacent pair opposes"),
        }
    };

    // Minimum speed above the per-particle share of free space.
    let min_speed_exceeds_share = if laws.iter().all(|l| l.is_deterministic()) {
        let mut inf = f64::INFINITY;
        for law in laws {
            inf = inf.min(match law {
                JumpLaw::Constant { value } => *value,
                JumpLaw::Scripted { values } => values
                    .iter()
                    .take(ticks)
                    .copied()
                    .fold(f64::INFINITY, f64::min),
                _ => unreachable!(),
            });
        }
        let share = free / n as f64;
        if inf > share {
            ConditionResult::holds(format!("inf v = {inf} > {share} = free/n"))
        } else {
            ConditionResult::fails(format!("inf v = {inf} <= {share} = free/n"))
        }
    } else {
        ConditionResult::undecidable("requires constant or scripted laws")
    };

    // Cumulative overtaking of the right neighbor from every start tick.
    let cumulative_overtake = if laws.iter().all(|l| l.is_deterministic()) {
        let all_constant = laws.iter().all(|l| matches!(l, JumpLaw::Constant { .. }));
        if all_constant {
            let diffs: Vec<f64> = (0..n)
                .map(|i| value_at(&laws[i], 0).unwrap() - value_at(&laws[(i + 1) % n], 0).unwrap())
                .collect();
            match diffs.iter().position(|&c| c <= 0.0) {
                None => {
                    let tau = diffs
                        .iter()
                        .map(|&c| (1.0 / c).ceil())
                        .fold(0.0f64, f64::max);
                    ConditionResult::holds(format!("constant differences, max tau = {tau}"))
                }
                Some(i) => ConditionResult::fails(format!(
                    "v_{} - v_{} = {} never accumulates past 1",
                    i + 1,
                    (i + 1) % n + 1,
                    diffs[i]
                )),
            }
        } else {
            let mut failure = None;
            let mut max_tau = 0usize;
            'outer: for i in 0..n {
                let j = (i + 1) % n;
                for t0 in 0..ticks {
                    let mut sum = 0.0;
                    let mut found = false;
                    for t in t0..ticks {
                        sum += value_at(&laws[i], t).unwrap() - value_at(&laws[j], t).unwrap();
                        if sum > 1.0 {
                            max_tau = max_tau.max(t - t0);
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        failure = Some((i, t0));
                        break 'outer;
                    }
                }
            }
            match failure {
                None => ConditionResult::holds(format!("max tau = {max_tau} over {ticks} ticks")),
                Some((i, t0)) => ConditionResult::fails(format!(
                    "pair {} never accumulates past 1 from tick {t0} within the script",
                    i + 1
                )),
            }
        }
    } else {
        ConditionResult::undecidable("requires constant or scripted laws")
    };

    // Total jump below the free length with positive probability.
    let total_jump_below_free = {
        let any_scripted = laws.iter().any(|l| matches!(l, JumpLaw::Scripted { .. }));
        if any_scripted {
            let mut first_fail = None;
            for t in 0..ticks {
                let total: f64 = laws
                    .iter()
                    .map(|l| match l {
                        JumpLaw::Scripted { values } => values[t],
                        other => other.support_inf(),
                    })
                    .sum();
                if !(total < free) {
                    first_fail = Some((t, total));
                    break;
                }
            }
            match first_fail {
                None => ConditionResult::holds(format!("holds at every tick up to {ticks}")),
                Some((t, total)) => ConditionResult::fails(format!(
                    "tick {t}: minimal total jump {total} >= free {free}"
                )),
            }
        } else {
            let total: f64 = laws.iter().map(|l| l.support_inf()).sum();
            if total < free {
                ConditionResult::holds(format!("sum of infima {total} < free {free}"))
            } else {
                ConditionResult::fails(format!("sum of infima {total} >= free {free}"))
            }
        }
    };

    AuxConditionReport {
        arbitrarily_slow,
        opposing_neighbors,
        min_speed_exceeds_share,
        cumulative_overtake,
        total_jump_below_free,
    }
}

fn scripted_aware_bounds(law: &JumpLaw, ticks: usize) -> (f64, f64) {
    match law {
        JumpLaw::Scripted { values } => {
            let prefix = &values[..ticks.min(values.len())];
            (
                prefix.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                prefix.iter().copied().fold(f64::INFINITY, f64::min),
            )
        }
        _ => (law.support_sup(), law.support_inf()),
    }
}
