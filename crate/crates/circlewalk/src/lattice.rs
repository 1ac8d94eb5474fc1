//! Exact lattice dynamics.
//!
//! On a lattice with `L` sites everything is an integer multiple of
//! `1/(2L)`: centers and jumps are even counts of half-sites, radii are zero
//! or odd counts. The tick semantics are identical to the continuum step but
//! computed in `i64`, so lattice trajectories carry no rounding at all.
//!
//! The natural resolution of a mutual conflict places the meeting point at
//! `gap * v / (v - v')`, which need not be a lattice point; such a step is
//! rejected as a lattice-domain error instead of silently leaving the grid.

use crate::dynamics::{InteractionEvent, InteractionKind, TickOutcome};
use crate::error::DynamicsError;
use crate::geometry::{gaps_of, CircleConfig};
use crate::scenario::{ConflictRule, LatticeSpec};

/// Integer state: positions and radii in half-site units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct UnitState {
    pub two_l: i64,
    pub pos: Vec<i64>,
    pub radii: Vec<i64>,
}

impl UnitState {
    pub fn from_config(config: &CircleConfig, spec: &LatticeSpec) -> Result<Self, DynamicsError> {
        let two_l = 2 * spec.sites as i64;
        let pos = config
            .positions()
            .iter()
            .map(|&x| {
                spec.half_units(x)
                    .filter(|k| k % 2 == 0)
                    .ok_or_else(|| DynamicsError::LatticeDomain(format!("position {x} off-grid")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let radii = config
            .radii()
            .iter()
            .map(|&r| {
                spec.radius_half_units(r)
                    .ok_or_else(|| DynamicsError::LatticeDomain(format!("radius {r} off-grid")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { two_l, pos, radii })
    }

    /// Gaps in half-site units; the wrap gap is forced by conservation.
    pub fn gaps(&self) -> Result<Vec<i64>, DynamicsError> {
        let n = self.pos.len();
        let free = self.two_l - 2 * self.radii.iter().sum::<i64>();
        let mut gaps = vec![0i64; n];
        let mut partial = 0;
        for i in 0..n - 1 {
            let g = (self.pos[i + 1] - self.pos[i]).rem_euclid(self.two_l)
                - self.radii[i]
                - self.radii[i + 1];
            if g < 0 {
                return Err(DynamicsError::LatticeDomain(format!(
                    "balls {i} and {} overlap",
                    i + 1
                )));
            }
            gaps[i] = g;
            partial += g;
        }
        let last = free - partial;
        if last < 0 {
            return Err(DynamicsError::LatticeDomain(
                "positions are not clockwise-ordered".into(),
            ));
        }
        gaps[n - 1] = last;
        Ok(gaps)
    }
}

/// Integer twin of the continuum displacement resolution.
pub(crate) fn resolve_units(
    gaps: &[i64],
    w: &[i64],
    conflict: ConflictRule,
) -> Result<(Vec<i64>, Vec<(usize, InteractionKind, i64)>), DynamicsError> {
    let n = gaps.len();
    let mut disp = vec![0i64; n];
    let mut events = Vec::new();
    match conflict {
        ConflictRule::Natural => {
            for i in 0..n {
                let v = w[i];
                if v > 0 {
                    let ahead = gaps[i];
                    let wr = w[(i + 1) % n];
                    if wr < 0 && v - wr > ahead {
                        let num = ahead * v;
                        let den = v - wr;
                        if num % den != 0 || (ahead * wr) % den != 0 {
                            return Err(DynamicsError::LatticeDomain(format!(
                                "mutual conflict at pair {i} meets off-grid"
                            )));
                        }
                        disp[i] = num / den;
                        events.push((i, InteractionKind::Mutual, disp[i]));
                    } else if v > ahead {
                        disp[i] = ahead;
                        events.push((i, InteractionKind::RightCapped, ahead));
                    } else {
                        disp[i] = v;
                    }
                } else if v < 0 {
                    let prev = (i + n - 1) % n;
                    let behind = gaps[prev];
                    let wl = w[prev];
                    if wl > 0 && wl - v > behind {
                        disp[i] = behind * v / (wl - v);
                    } else if -v > behind {
                        disp[i] = -behind;
                        events.push((i, InteractionKind::LeftCapped, -behind));
                    } else {
                        disp[i] = v;
                    }
                }
            }
        }
        ConflictRule::StrictExclusion => {
            let mut frozen = vec![false; n];
            for i in 0..n {
                let v = w[i];
                disp[i] = v;
                if v > 0 && v > gaps[i] {
                    disp[i] = 0;
                    frozen[i] = true;
                    events.push((i, InteractionKind::RightCapped, 0));
                } else if v < 0 && -v > gaps[(i + n - 1) % n] {
                    disp[i] = 0;
                    frozen[i] = true;
                    events.push((i, InteractionKind::LeftCapped, 0));
                }
            }
            for i in 0..n {
                let r = (i + 1) % n;
                if w[i] > 0 && w[r] < 0 && w[i] - w[r] > gaps[i] && !frozen[i] && !frozen[r] {
                    disp[i] = 0;
                    disp[r] = 0;
                    frozen[i] = true;
                    frozen[r] = true;
                    events.push((i, InteractionKind::Mutual, 0));
                }
            }
        }
    }
    for i in 0..n {
        if gaps[i] - disp[i] + disp[(i + 1) % n] < 0 {
            return Err(DynamicsError::StepInvariant {
                index: i,
                gap: (gaps[i] - disp[i] + disp[(i + 1) % n]) as f64,
            });
        }
    }
    Ok((disp, events))
}

/// One tick in exact lattice arithmetic.
///
/// `mask` plays the same role as in the continuum step. All inputs must lie
/// on the grid of `spec`.
pub fn lattice_step(
    config: &CircleConfig,
    spec: &LatticeSpec,
    velocities: &[f64],
    mask: &[bool],
    conflict: ConflictRule,
) -> Result<TickOutcome, DynamicsError> {
    let n = config.n();
    if velocities.len() != n || mask.len() != n {
        return Err(DynamicsError::Geometry(
            crate::error::GeometryError::LengthMismatch {
                expected: n,
                got: velocities.len().min(mask.len()),
            },
        ));
    }
    let state = UnitState::from_config(config, spec)?;
    let w: Vec<i64> = velocities
        .iter()
        .zip(mask)
        .map(|(&v, &u)| {
            if !u {
                return Ok(0);
            }
            if !v.is_finite() || v.abs() > 1.0 {
                return Err(DynamicsError::VelocityRange { index: 0, value: v });
            }
            spec.half_units(v)
                .filter(|k| k % 2 == 0)
                .ok_or_else(|| DynamicsError::LatticeDomain(format!("jump {v} off-grid")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let gaps = state.gaps()?;
    let (disp, unit_events) = resolve_units(&gaps, &w, conflict)?;

    let positions: Vec<f64> = state
        .pos
        .iter()
        .zip(&disp)
        .map(|(&p, &d)| spec.coord((p + d).rem_euclid(state.two_l)))
        .collect();
    let predicted: Vec<f64> = (0..n)
        .map(|i| spec.coord((gaps[i] - disp[i] + disp[(i + 1) % n]).max(0)))
        .collect();
    let config_next = CircleConfig::derive(positions, config.radii().to_vec(), Some(&predicted))?;
    let gaps_next = gaps_of(&config_next);
    let interactions = unit_events
        .into_iter()
        .map(|(index, kind, d)| InteractionEvent {
            tick: 0,
            index,
            kind,
            velocity: velocities[index],
            displacement: spec.coord(d),
        })
        .collect();
    Ok(TickOutcome {
        config_next,
        gaps_next,
        displacements: disp.iter().map(|&d| spec.coord(d)).collect(),
        interactions,
    })
}
