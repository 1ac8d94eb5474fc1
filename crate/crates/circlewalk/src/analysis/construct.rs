//! Ready-to-run scenario constructions exhibiting non-ergodic behavior.

use crate::error::AnalysisError;
use crate::geometry::{config_from_gaps, GapVector};
use crate::law::JumpLaw;
use crate::scenario::{ConflictRule, Scenario, UpdateRule};

/// Cyclic variation `sum_i |v_i - v_{i+1}|` of a velocity profile.
fn profile_variation(v: &[f64]) -> f64 {
    let n = v.len();
    (0..n).map(|i| (v[i] - v[(i + 1) % n]).abs()).sum()
}

/// Gap vector that a parallel walk with every particle permanently blocked
/// rotates through cyclically.
///
/// With speeds dominating `v0`, every particle lands on its successor's old
/// boundary each tick, so the gap vector is cyclically shifted and its orbit
/// has period `n`. The construction centers the gaps on the velocity profile
/// (`gap_i ~ v0_i - a/2 + b`, normalized to the free length), which keeps
/// `gap_i < v0_i` as long as `b` is small against
/// `a = (sum v0 - free) / n`.
pub fn prop1_gaps(v0: &[f64], b: f64, radii: &[f64]) -> Result<GapVector, AnalysisError> {
    let n = v0.len();
    if n < 2 {
        return Err(AnalysisError::Precondition(
            "need at least 2 particles".into(),
        ));
    }
    if radii.len() != n {
        return Err(AnalysisError::Precondition(format!(
            "{} radii for {n} velocities",
            radii.len()
        )));
    }
    let diameter: f64 = radii.iter().map(|r| 2.0 * r).sum();
    let free = 1.0 - diameter;
    let total: f64 = v0.iter().sum();
    if v0.iter().any(|&v| !(v > 0.0)) {
        return Err(AnalysisError::Precondition(
            "all velocities must be positive".into(),
        ));
    }
    if !(total > free) {
        return Err(AnalysisError::Precondition(format!(
            "total velocity {total} must exceed the free length {free}"
        )));
    }
    if profile_variation(v0) <= 0.0 {
        return Err(AnalysisError::Precondition(
            "velocity profile must be non-constant".into(),
        ));
    }
    if !(b > 0.0) {
        return Err(AnalysisError::Precondition("b must be positive".into()));
    }
    let a = (total - free) / n as f64;
    let shaped: Vec<f64> = v0.iter().map(|&v| (v - a / 2.0 + b).max(0.0)).collect();
    let shaped_sum: f64 = shaped.iter().sum();
    let gaps: Vec<f64> = shaped.iter().map(|&g| g * free / shaped_sum).collect();
    for (i, (&g, &v)) in gaps.iter().zip(v0).enumerate() {
        if !(v > g) {
            return Err(AnalysisError::BParameterTooLarge {
                b,
                index: i + 1,
                gap: g,
                velocity: v,
            });
        }
    }
    Ok(GapVector::new(gaps, diameter)?)
}

/// Scenario realizing the rotating orbit of [`prop1_gaps`].
///
/// Every particle gets the constant law `max_i v0_i`, which dominates the
/// profile and exceeds every constructed gap (guaranteed for `b < a/2`), so
/// every particle is blocked at every tick and the gap orbit is an exact
/// period-`n` rotation.
pub fn prop1_scenario(
    v0: &[f64],
    b: f64,
    radii: &[f64],
    seed: u64,
    horizon: u64,
) -> Result<Scenario, AnalysisError> {
    let gaps = prop1_gaps(v0, b, radii)?;
    let config = config_from_gaps(&gaps, radii, 0.0)?;
    let vmax = v0.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    for (i, &g) in gaps.gaps().iter().enumerate() {
        if !(vmax > g) {
            return Err(AnalysisError::BParameterTooLarge {
                b,
                index: i + 1,
                gap: g,
                velocity: vmax,
            });
        }
    }
    let law = JumpLaw::constant(vmax).map_err(|e| AnalysisError::Precondition(e.to_string()))?;
    Ok(Scenario {
        n: v0.len(),
        positions: config.positions().to_vec(),
        radii: radii.to_vec(),
        laws: vec![law; v0.len()],
        update: UpdateRule::Parallel,
        conflict: ConflictRule::Natural,
        lattice: None,
        seed,
        horizon,
    })
}

/// Frozen strict-exclusion scenario: `n` equal gaps below `epsilon` and laws
/// whose support avoids `[-epsilon, epsilon]`, so the configuration is a
/// fixed point of the dynamics (as is every small shift of it).
pub fn prop10_scenario(
    epsilon: f64,
    n: usize,
    laws: Vec<JumpLaw>,
    seed: u64,
    horizon: u64,
) -> Result<Scenario, AnalysisError> {
    if !(epsilon > 0.0) {
        return Err(AnalysisError::Precondition(
            "epsilon must be positive".into(),
        ));
    }
    if !(n as f64 > 1.0 / epsilon) {
        return Err(AnalysisError::Precondition(format!(
            "need n > 1/epsilon, got n = {n} <= {}",
            1.0 / epsilon
        )));
    }
    if laws.len() != n {
        return Err(AnalysisError::Precondition(format!(
            "{} laws for {n} particles",
            laws.len()
        )));
    }
    for (i, law) in laws.iter().enumerate() {
        let avoids = match law {
            JumpLaw::Atoms { atoms } => atoms.iter().all(|(v, _)| v.abs() > epsilon),
            JumpLaw::Uniform { lower, upper } => *upper < -epsilon || *lower > epsilon,
            JumpLaw::Constant { value } => value.abs() > epsilon,
            JumpLaw::Scripted { values } => values.iter().all(|v| v.abs() > epsilon),
        };
        if !avoids {
            return Err(AnalysisError::Precondition(format!(
                "law {} puts mass inside [-{epsilon}, {epsilon}]",
                i + 1
            )));
        }
    }
    let gaps = GapVector::new(vec![1.0 / n as f64; n], 0.0)?;
    let config = config_from_gaps(&gaps, &vec![0.0; n], 0.0)?;
    Ok(Scenario {
        n,
        positions: config.positions().to_vec(),
        radii: vec![0.0; n],
        laws,
        update: UpdateRule::Parallel,
        conflict: ConflictRule::StrictExclusion,
        lattice: None,
        seed,
        horizon,
    })
}

/// The slowly-growing jump sequence `a_t = 1/2 - 1/(2(t+2))`.
pub fn at_sequence(len: usize) -> Vec<f64> {
    (0..len)
        .map(|t| 0.5 - 1.0 / (2.0 * (t as f64 + 2.0)))
        .collect()
}

/// Two mirrored two-particle replicas driven by the same growing scripted
/// jumps `a_1 < a_2 < ... < 1/2`, starting from gaps `(a_0, 1 - a_0)` and
/// `(1 - a_0, a_0)`.
///
/// At every tick the total jump stays below the free length and each replica
/// has exactly one blocked particle, yet the blocked index differs between
/// the replicas, so no particle pair is interaction-free in both at once.
/// The script is offset by one so the strict overshoot holds from tick 0.
pub fn at_sequence_pair(ticks: usize, seed: u64) -> Result<(Scenario, Scenario), AnalysisError> {
    if ticks == 0 {
        return Err(AnalysisError::Precondition("need at least one tick".into()));
    }
    let seq = at_sequence(ticks + 1);
    let a0 = seq[0];
    let script: Vec<f64> = seq[1..].to_vec();
    let law = JumpLaw::scripted(script).map_err(|e| AnalysisError::Precondition(e.to_string()))?;
    let build = |gaps: Vec<f64>| -> Result<Scenario, AnalysisError> {
        let gv = GapVector::new(gaps, 0.0)?;
        let config = config_from_gaps(&gv, &[0.0, 0.0], 0.0)?;
        Ok(Scenario {
            n: 2,
            positions: config.positions().to_vec(),
            radii: vec![0.0, 0.0],
            laws: vec![law.clone(), law.clone()],
            update: UpdateRule::Parallel,
            conflict: ConflictRule::Natural,
            lattice: None,
            seed,
            horizon: ticks as u64,
        })
    };
    Ok((build(vec![a0, 1.0 - a0])?, build(vec![1.0 - a0, a0])?))
}

/// Four particles with alternating one-sided laws: 1 and 3 jump clockwise,
/// 2 and 4 anticlockwise. Pairs (1,2) and (3,4) meet and stay put; the pairs
/// (2,3) and (4,1) never interact.
pub fn four_particle_scenario(seed: u64, horizon: u64) -> Scenario {
    Scenario {
        n: 4,
        positions: vec![0.0, 0.25, 0.5, 0.75],
        radii: vec![0.0; 4],
        laws: vec![
            JumpLaw::uniform(0.0, 1.0).unwrap(),
            JumpLaw::uniform(-1.0, 0.0).unwrap(),
            JumpLaw::uniform(0.0, 1.0).unwrap(),
            JumpLaw::uniform(-1.0, 0.0).unwrap(),
        ],
        update: UpdateRule::Parallel,
        conflict: ConflictRule::Natural,
        lattice: None,
        seed,
        horizon,
    }
}

/// Sequential walk with two stationary particles and unit speeds elsewhere.
/// The total speed far exceeds the free length, yet the two zero-speed
/// particles pin the gap between them forever.
pub fn two_zero_velocities_scenario(
    n: usize,
    seed: u64,
    horizon: u64,
) -> Result<Scenario, AnalysisError> {
    if n < 3 {
        return Err(AnalysisError::Precondition(
            "need at least 3 particles".into(),
        ));
    }
    let mut laws = vec![JumpLaw::constant(0.0).unwrap(); 2];
    laws.extend(vec![JumpLaw::constant(1.0).unwrap(); n - 2]);
    let gaps = GapVector::new(vec![1.0 / n as f64; n], 0.0)?;
    let config = config_from_gaps(&gaps, &vec![0.0; n], 0.0)?;
    Ok(Scenario {
        n,
        positions: config.positions().to_vec(),
        radii: vec![0.0; n],
        laws,
        update: UpdateRule::DeterministicSequential { start_index: 1 },
        conflict: ConflictRule::Natural,
        lattice: None,
        seed,
        horizon,
    })
}
