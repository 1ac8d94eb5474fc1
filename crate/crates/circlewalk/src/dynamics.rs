//! One-tick dynamics of the collective walk.
//!
//! Each particle draws a signed jump `v_i` in `[-1, 1]`. A positive jump is
//! limited by the gap ahead (`gap_i`), a negative jump by the gap behind
//! (`gap_{i-1}`), both measured against the neighbors' old positions. When two
//! particles jump toward each other and their combined motion exceeds the gap
//! between them, the pair is in a mutual conflict.
//!
//! Conflict resolution:
//! * [`ConflictRule::Natural`] — a one-sidedly blocked particle advances to the
//!   old boundary; a mutually conflicting pair advances proportionally to its
//!   jumps until the balls touch, as in continuous-time motion.
//! * [`ConflictRule::StrictExclusion`] — a blocked particle stays put. Both
//!   members of a mutual conflict stay put (each one's full jump is
//!   incompatible with the other's, so neither is allowed to move).
//!
//! An *interaction* is recorded only for strict overshoot (`v > gap`, never at
//! equality) and for mutual conflicts.

use crate::error::DynamicsError;
use crate::geometry::{gaps_of, reduce, CircleConfig, GapVector, TOL};
use crate::scenario::{ConflictRule, UpdateRule};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// How a particle's jump was resolved this tick.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveMode {
    /// Full jump (possibly zero).
    Free,
    /// Advanced exactly to the old left boundary of the right neighbor.
    CapRight,
    /// Retreated exactly to the old right boundary of the left neighbor.
    CapLeft,
    /// Left member of a pair that meets this tick.
    MutualLeft,
    /// Right member of a pair that meets this tick; its position is derived
    /// from the left member so the contact is exact.
    MutualRight,
    /// Stayed put under strict exclusion.
    Frozen,
}

/// Kind of a recorded interaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InteractionKind {
    /// Particle `index` overshot the gap ahead of it.
    RightCapped,
    /// Particle `index` overshot the gap behind it.
    LeftCapped,
    /// Particles `index` and `index + 1` jumped into each other.
    Mutual,
}

/// A capped jump, recorded at the tick it happened.
///
/// `index` is the 0-based particle index; for `Mutual` it names the left
/// member of the pair. `velocity` is the drawn jump of that particle and
/// `displacement` the signed distance it actually covered.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InteractionEvent {
    pub tick: u64,
    pub index: usize,
    pub kind: InteractionKind,
    pub velocity: f64,
    pub displacement: f64,
}

impl InteractionEvent {
    /// Index of the gap (equivalently, of the particle pair) this event binds.
    pub fn gap_index(&self, n: usize) -> usize {
        match self.kind {
            InteractionKind::RightCapped | InteractionKind::Mutual => self.index,
            InteractionKind::LeftCapped => (self.index + n - 1) % n,
        }
    }
}

/// Result of advancing a configuration by one tick.
#[derive(Debug, Clone)]
pub struct TickOutcome {
    pub config_next: CircleConfig,
    pub gaps_next: GapVector,
    /// Signed distance actually covered by each particle.
    pub displacements: Vec<f64>,
    pub interactions: Vec<InteractionEvent>,
}

impl TickOutcome {
    pub fn stamp(mut self, tick: u64) -> Self {
        for ev in &mut self.interactions {
            ev.tick = tick;
        }
        self
    }
}

fn check_velocities(velocities: &[f64], n: usize) -> Result<(), DynamicsError> {
    if velocities.len() != n {
        return Err(DynamicsError::Geometry(
            crate::error::GeometryError::LengthMismatch {
                expected: n,
                got: velocities.len(),
            },
        ));
    }
    for (i, &v) in velocities.iter().enumerate() {
        if !v.is_finite() || v.abs() > 1.0 {
            return Err(DynamicsError::VelocityRange { index: i, value: v });
        }
    }
    Ok(())
}

/// Resolve all jumps against the current gaps.
///
/// `w` holds the mask-applied jumps (`0` for unchosen particles). Fills
/// `disp` and `modes` and appends events (with `tick = 0`; the caller stamps).
pub(crate) fn resolve_displacements(
    gaps: &[f64],
    w: &[f64],
    conflict: ConflictRule,
    disp: &mut [f64],
    modes: &mut [MoveMode],
    events: &mut Vec<InteractionEvent>,
) -> Result<(), DynamicsError> {
    let n = gaps.len();
    match conflict {
        ConflictRule::Natural => {
            for i in 0..n {
                let v = w[i];
                if v > 0.0 {
                    let ahead = gaps[i];
                    let wr = w[(i + 1) % n];
                    if wr < 0.0 && v - wr >= ahead {
                        // The pair meets; at exact closure both jumps fit.
                        let d = if v - wr == ahead {
                            v
                        } else {
                            ahead * v / (v - wr)
                        };
                        disp[i] = d;
                        modes[i] = MoveMode::MutualLeft;
                        if v - wr > ahead {
                            events.push(InteractionEvent {
                                tick: 0,
                                index: i,
                                kind: InteractionKind::Mutual,
                                velocity: v,
                                displacement: d,
                            });
                        }
                    } else if v > ahead {
                        disp[i] = ahead;
                        modes[i] = MoveMode::CapRight;
                        events.push(InteractionEvent {
                            tick: 0,
                            index: i,
                            kind: InteractionKind::RightCapped,
                            velocity: v,
                            displacement: ahead,
                        });
                    } else {
                        disp[i] = v;
                        modes[i] = MoveMode::Free;
                    }
                } else if v < 0.0 {
                    let prev = (i + n - 1) % n;
                    let behind = gaps[prev];
                    let wl = w[prev];
                    if wl > 0.0 && wl - v >= behind {
                        // Mutual pair; the left member records the event.
                        disp[i] = if wl - v == behind {
                            v
                        } else {
                            behind * v / (wl - v)
                        };
                        modes[i] = MoveMode::MutualRight;
                    } else if -v > behind {
                        disp[i] = -behind;
                        modes[i] = MoveMode::CapLeft;
                        events.push(InteractionEvent {
                            tick: 0,
                            index: i,
                            kind: InteractionKind::LeftCapped,
                            velocity: v,
                            displacement: -behind,
                        });
                    } else {
                        disp[i] = v;
                        modes[i] = MoveMode::Free;
                    }
                } else {
                    disp[i] = 0.0;
                    modes[i] = MoveMode::Free;
                }
            }
        }
        ConflictRule::StrictExclusion => {
            for i in 0..n {
                let v = w[i];
                disp[i] = v;
                modes[i] = MoveMode::Free;
                if v > 0.0 && v > gaps[i] {
                    disp[i] = 0.0;
                    modes[i] = MoveMode::Frozen;
                    events.push(InteractionEvent {
                        tick: 0,
                        index: i,
                        kind: InteractionKind::RightCapped,
                        velocity: v,
                        displacement: 0.0,
                    });
                } else if v < 0.0 && -v > gaps[(i + n - 1) % n] {
                    disp[i] = 0.0;
                    modes[i] = MoveMode::Frozen;
                    events.push(InteractionEvent {
                        tick: 0,
                        index: i,
                        kind: InteractionKind::LeftCapped,
                        velocity: v,
                        displacement: 0.0,
                    });
                }
            }
            // Mutual conflicts freeze both members even when each jump fits
            // the gap on its own; otherwise the pair would cross.
            for i in 0..n {
                let r = (i + 1) % n;
                if w[i] > 0.0
                    && w[r] < 0.0
                    && w[i] - w[r] > gaps[i]
                    && modes[i] != MoveMode::Frozen
                    && modes[r] != MoveMode::Frozen
                {
                    disp[i] = 0.0;
                    disp[r] = 0.0;
                    modes[i] = MoveMode::Frozen;
                    modes[r] = MoveMode::Frozen;
                    events.push(InteractionEvent {
                        tick: 0,
                        index: i,
                        kind: InteractionKind::Mutual,
                        velocity: w[i],
                        displacement: 0.0,
                    });
                }
            }
        }
    }
    // Diagnostic guard: resolution must never drive a gap negative.
    for i in 0..n {
        let next = gaps[i] - disp[i] + disp[(i + 1) % n];
        if next < -TOL {
            return Err(DynamicsError::StepInvariant {
                index: i,
                gap: next,
            });
        }
    }
    Ok(())
}

/// New center positions from resolved displacements.
///
/// Capped and touching particles land exactly on the boundary they are capped
/// at, and the right member of a meeting pair is derived from the left one,
/// so a closed gap is closed bit-exactly and neighbors can never end up
/// inverted by rounding. A free mover that lands on its bound within rounding
/// (a tie) is snapped to the boundary as well.
pub(crate) fn apply_positions(
    config: &CircleConfig,
    gaps: &[f64],
    disp: &[f64],
    modes: &[MoveMode],
) -> Vec<f64> {
    let n = config.n();
    let x = config.positions();
    let r = config.radii();
    let mut out = vec![0.0; n];
    for i in 0..n {
        out[i] = match modes[i] {
            MoveMode::Free => {
                if disp[i] > 0.0 && disp[i] >= gaps[i] {
                    let next = (i + 1) % n;
                    reduce(x[next] - r[i] - r[next])
                } else if disp[i] < 0.0 && -disp[i] >= gaps[(i + n - 1) % n] {
                    let prev = (i + n - 1) % n;
                    reduce(x[prev] + r[prev] + r[i])
                } else {
                    reduce(x[i] + disp[i])
                }
            }
            MoveMode::MutualLeft => reduce(x[i] + disp[i]),
            MoveMode::CapRight => {
                let next = (i + 1) % n;
                reduce(x[next] - r[i] - r[next])
            }
            MoveMode::CapLeft => {
                let prev = (i + n - 1) % n;
                reduce(x[prev] + r[prev] + r[i])
            }
            // Placed in the second pass.
            MoveMode::MutualRight | MoveMode::Frozen => x[i],
        };
    }
    for i in 0..n {
        if modes[i] == MoveMode::MutualRight {
            let prev = (i + n - 1) % n;
            out[i] = reduce(out[prev] + r[prev] + r[i]);
        }
    }
    out
}

pub(crate) fn next_config(
    config: &CircleConfig,
    gaps: &[f64],
    disp: &[f64],
    modes: &[MoveMode],
) -> Result<CircleConfig, DynamicsError> {
    let n = config.n();
    let positions = apply_positions(config, gaps, disp, modes);
    // Expected new gaps disambiguate contact windings in the derived config.
    let predicted: Vec<f64> = (0..n)
        .map(|i| (gaps[i] - disp[i] + disp[(i + 1) % n]).max(0.0))
        .collect();
    Ok(CircleConfig::derive(
        positions,
        config.radii().to_vec(),
        Some(&predicted),
    )?)
}

fn outcome_from(
    config: &CircleConfig,
    gaps: &[f64],
    disp: Vec<f64>,
    modes: &[MoveMode],
    events: Vec<InteractionEvent>,
) -> Result<TickOutcome, DynamicsError> {
    let config_next = next_config(config, gaps, &disp, modes)?;
    let gaps_next = gaps_of(&config_next);
    Ok(TickOutcome {
        config_next,
        gaps_next,
        displacements: disp,
        interactions: events,
    })
}

/// Advance every particle simultaneously by its drawn jump.
pub fn step_parallel(
    config: &CircleConfig,
    velocities: &[f64],
    conflict: ConflictRule,
) -> Result<TickOutcome, DynamicsError> {
    let n = config.n();
    check_velocities(velocities, n)?;
    let gaps = config.gaps();
    let mut disp = vec![0.0; n];
    let mut modes = vec![MoveMode::Free; n];
    let mut events = Vec::new();
    resolve_displacements(
        gaps.gaps(),
        velocities,
        conflict,
        &mut disp,
        &mut modes,
        &mut events,
    )?;
    outcome_from(config, gaps.gaps(), disp, &modes, events)
}

/// Advance only particle `index` (0-based) by the jump `v`.
pub fn step_sequential(
    config: &CircleConfig,
    index: usize,
    v: f64,
    conflict: ConflictRule,
) -> Result<TickOutcome, DynamicsError> {
    let n = config.n();
    if index >= n {
        return Err(DynamicsError::ParticleIndex { index, n });
    }
    if !v.is_finite() || v.abs() > 1.0 {
        return Err(DynamicsError::VelocityRange { index, value: v });
    }
    let mut w = vec![0.0; n];
    w[index] = v;
    let gaps = config.gaps();
    let mut disp = vec![0.0; n];
    let mut modes = vec![MoveMode::Free; n];
    let mut events = Vec::new();
    resolve_displacements(
        gaps.gaps(),
        &w,
        conflict,
        &mut disp,
        &mut modes,
        &mut events,
    )?;
    outcome_from(config, gaps.gaps(), disp, &modes, events)
}

/// Advance the gap vector directly, without positions.
///
/// `mask` is the per-tick update mask `u`; masked-out particles neither move
/// nor block anyone by their drawn jump. Cross-checks against the position
/// step: `gap_step(gaps_of(c)) == gaps_of(step(c).config_next)`.
pub fn gap_step(
    gaps: &GapVector,
    velocities: &[f64],
    mask: &[bool],
    conflict: ConflictRule,
) -> Result<GapVector, DynamicsError> {
    let n = gaps.n();
    check_velocities(velocities, n)?;
    if mask.len() != n {
        return Err(DynamicsError::Geometry(
            crate::error::GeometryError::LengthMismatch {
                expected: n,
                got: mask.len(),
            },
        ));
    }
    let w: Vec<f64> = velocities
        .iter()
        .zip(mask)
        .map(|(&v, &u)| if u { v } else { 0.0 })
        .collect();
    let mut disp = vec![0.0; n];
    let mut modes = vec![MoveMode::Free; n];
    let mut events = Vec::new();
    resolve_displacements(
        gaps.gaps(),
        &w,
        conflict,
        &mut disp,
        &mut modes,
        &mut events,
    )?;
    let mut next = vec![0.0; n];
    for i in 0..n {
        let g = gaps.gaps()[i] - disp[i] + disp[(i + 1) % n];
        // Mutual conflicts close gaps exactly; absorb the rounding residue.
        next[i] = if g < 0.0 { 0.0 } else { g };
    }
    Ok(GapVector::new(next, gaps.total_diameter())?)
}

/// Pick the particle updated at `tick` under a sequential rule (0-based).
pub fn choose_index(
    rule: &UpdateRule,
    n: usize,
    tick: u64,
    rng: &mut ChaCha8Rng,
) -> Result<usize, DynamicsError> {
    match rule {
        UpdateRule::Parallel => Err(DynamicsError::NotSequential),
        UpdateRule::RandomSequential { weights } => {
            let u: f64 = rng.gen();
            let mut acc = 0.0;
            for (i, &q) in weights.iter().enumerate() {
                acc += q;
                if u < acc {
                    return Ok(i);
                }
            }
            Ok(weights.len() - 1)
        }
        UpdateRule::DeterministicSequential { start_index } => {
            Ok((start_index - 1 + (tick % n as u64) as usize) % n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::config_from_gaps;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn config(x: &[f64], r: &[f64]) -> CircleConfig {
        CircleConfig::new(x.to_vec(), r.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= TOL
    }

    #[test]
    fn parallel_totally_asymmetric_caps_at_old_positions() {
        let c = config(&[0.0, 0.3, 0.6], &[0.0; 3]);
        let out = step_parallel(&c, &[0.4, 0.2, 0.5], ConflictRule::Natural).unwrap();
        assert_eq!(out.config_next.positions(), &[0.3, 0.5, 0.0]);
        let g = out.gaps_next.gaps();
        assert!(close(g[0], 0.2) && close(g[1], 0.5) && close(g[2], 0.3));
        let kinds: Vec<_> = out.interactions.iter().map(|e| (e.index, e.kind)).collect();
        assert_eq!(
            kinds,
            vec![
                (0, InteractionKind::RightCapped),
                (2, InteractionKind::RightCapped)
            ]
        );
    }

    #[test]
    fn mutual_conflict_meets_proportionally() {
        let c = config(&[0.2, 0.5], &[0.0, 0.0]);
        let out = step_parallel(&c, &[0.3, -0.2], ConflictRule::Natural).unwrap();
        assert!(close(out.config_next.positions()[0], 0.38));
        assert!(close(out.config_next.positions()[1], 0.38));
        assert!(close(out.gaps_next.gaps()[0], 0.0));
        assert!(close(out.gaps_next.gaps()[1], 1.0));
        assert!(close(out.displacements[0], 0.18));
        assert!(close(out.displacements[1], -0.12));
        assert_eq!(out.interactions.len(), 1);
        assert_eq!(out.interactions[0].kind, InteractionKind::Mutual);
    }

    #[test]
    fn mutual_within_gap_is_free() {
        let c = config(&[0.2, 0.8], &[0.0, 0.0]);
        let out = step_parallel(&c, &[0.3, -0.2], ConflictRule::Natural).unwrap();
        assert!(close(out.config_next.positions()[0], 0.5));
        assert!(close(out.config_next.positions()[1], 0.6));
        assert!(out.interactions.is_empty());
    }

    #[test]
    fn strict_exclusion_freezes_tight_config() {
        let g = GapVector::new(vec![0.25; 4], 0.0).unwrap();
        let c = config_from_gaps(&g, &[0.0; 4], 0.05).unwrap();
        let out =
            step_parallel(&c, &[0.5, -0.5, 0.3, -0.4], ConflictRule::StrictExclusion).unwrap();
        assert_eq!(out.config_next.positions(), c.positions());
        assert!(out.displacements.iter().all(|&d| d == 0.0));
    }

    #[test]
    fn strict_exclusion_freezes_mutual_pairs() {
        // Each jump fits its gap alone, but combined they would cross.
        let c = config(&[0.2, 0.5], &[0.0, 0.0]);
        let out = step_parallel(&c, &[0.25, -0.25], ConflictRule::StrictExclusion).unwrap();
        assert_eq!(out.config_next.positions(), c.positions());
        assert_eq!(out.interactions.len(), 1);
        assert_eq!(out.interactions[0].kind, InteractionKind::Mutual);
    }

    #[test]
    fn sequential_caps_forward() {
        let c = config(&[0.0, 0.1], &[0.0, 0.0]);
        let out = step_sequential(&c, 0, 0.3, ConflictRule::Natural).unwrap();
        assert_eq!(out.config_next.positions(), &[0.1, 0.1]);
        let g = out.gaps_next.gaps();
        assert!(close(g[0], 0.0) && close(g[1], 1.0));
    }

    #[test]
    fn sequential_free_moves() {
        let c = config(&[0.0, 0.5], &[0.0, 0.0]);
        let out = step_sequential(&c, 0, 0.3, ConflictRule::Natural).unwrap();
        assert_eq!(out.config_next.positions(), &[0.3, 0.5]);
        assert!(out.interactions.is_empty());
    }

    #[test]
    fn sequential_backward_wraps() {
        let c = config(&[0.0, 0.5], &[0.0, 0.0]);
        let out = step_sequential(&c, 0, -0.2, ConflictRule::Natural).unwrap();
        assert!(close(out.config_next.positions()[0], 0.8));
        let g = out.gaps_next.gaps();
        assert!(close(g[0], 0.7) && close(g[1], 0.3));
    }

    #[test]
    fn exact_tie_is_not_an_interaction() {
        let c = config(&[0.0, 0.25], &[0.0, 0.0]);
        let out = step_sequential(&c, 0, 0.25, ConflictRule::Natural).unwrap();
        assert_eq!(out.config_next.positions()[0], 0.25);
        assert!(out.interactions.is_empty());
    }

    #[test]
    fn gap_step_matches_hand_computation() {
        let g = GapVector::new(vec![0.3, 0.3, 0.4], 0.0).unwrap();
        let out = gap_step(&g, &[0.4, 0.2, 0.5], &[true; 3], ConflictRule::Natural).unwrap();
        let gg = out.gaps();
        assert!(close(gg[0], 0.2) && close(gg[1], 0.5) && close(gg[2], 0.3));

        let idle = gap_step(&g, &[0.0, 0.0, 0.0], &[true; 3], ConflictRule::Natural).unwrap();
        assert_eq!(idle.gaps(), g.gaps());
    }

    #[test]
    fn choose_index_deterministic_cursor() {
        let rule = UpdateRule::DeterministicSequential { start_index: 2 };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let picks: Vec<usize> = (0..4)
            .map(|t| choose_index(&rule, 3, t, &mut rng).unwrap())
            .collect();
        // 0-based picks 1,2,0,1 correspond to particles 2,3,1,2.
        assert_eq!(picks, vec![1, 2, 0, 1]);
    }

    #[test]
    fn choose_index_random_frequencies() {
        let rule = UpdateRule::RandomSequential {
            weights: vec![0.5, 0.3, 0.2],
        };
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut counts = [0usize; 3];
        let draws = 100_000;
        for t in 0..draws {
            counts[choose_index(&rule, 3, t, &mut rng).unwrap()] += 1;
        }
        for (c, q) in counts.iter().zip([0.5, 0.3, 0.2]) {
            assert!((*c as f64 / draws as f64 - q).abs() < 0.01);
        }
    }

    #[test]
    fn choose_index_rejects_parallel() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(
            choose_index(&UpdateRule::Parallel, 3, 0, &mut rng).unwrap_err(),
            DynamicsError::NotSequential
        );
    }

    #[test]
    fn velocity_range_is_enforced() {
        let c = config(&[0.0, 0.5], &[0.0, 0.0]);
        assert!(matches!(
            step_parallel(&c, &[1.2, 0.0], ConflictRule::Natural),
            Err(DynamicsError::VelocityRange { index: 0, .. })
        ));
    }

    prop_compose! {
        fn arb_state()(n in 2usize..9,
                       weights in proptest::collection::vec(1e-3..1.0f64, 9),
                       radii in proptest::collection::vec(0.0..0.03f64, 9),
                       vels in proptest::collection::vec(-1.0..1.0f64, 9),
                       strict in proptest::bool::ANY,
                       anchor in 0.0..1.0f64)
            -> (CircleConfig, Vec<f64>, ConflictRule) {
            let radii = radii[..n].to_vec();
            let free = 1.0 - radii.iter().map(|r| 2.0 * r).sum::<f64>();
            let wsum: f64 = weights[..n].iter().sum();
            let mut gaps: Vec<f64> = weights[..n].iter().map(|w| w / wsum * free).collect();
            let s: f64 = gaps.iter().sum();
            let last = gaps.len() - 1;
            gaps[last] = (gaps[last] + free - s).max(0.0);
            let gv = GapVector::new(gaps, 1.0 - free).unwrap();
            let config = config_from_gaps(&gv, &radii, anchor).unwrap();
            let conflict = if strict { ConflictRule::StrictExclusion } else { ConflictRule::Natural };
            (config, vels[..n].to_vec(), conflict)
        }
    }

    proptest! {
        #[test]
        fn steps_preserve_admissibility_and_conservation((config, vels, conflict) in arb_state()) {
            let out = step_parallel(&config, &vels, conflict).unwrap();
            prop_assert!((out.gaps_next.conserved_sum() - 1.0).abs() <= TOL);
            // Displacement sign never flips against the drawn jump.
            for (d, v) in out.displacements.iter().zip(&vels) {
                prop_assert!(*d == 0.0 || d.signum() == v.signum());
                prop_assert!(d.abs() <= v.abs() + TOL);
            }
        }

        #[test]
        fn gap_route_matches_position_route((config, vels, conflict) in arb_state()) {
            let out = step_parallel(&config, &vels, conflict).unwrap();
            let direct = gap_step(config.gaps(), &vels, &vec![true; config.n()], conflict).unwrap();
            for (a, b) in out.gaps_next.gaps().iter().zip(direct.gaps()) {
                prop_assert!((a - b).abs() <= TOL);
            }
        }
    }
}
