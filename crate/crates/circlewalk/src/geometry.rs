//! Circle configurations and gap vectors.
//!
//! A configuration is `n >= 2` hard balls on the unit circle, each given by
//! the position of its center `x_i` in `[0, 1)` and a radius `r_i >= 0`.
//! Particle `i + 1` is the clockwise successor of particle `i` (indices wrap),
//! and admissibility means the open balls do not overlap:
//! `x_i + r_i + r_{i+1} <= x_{i+1}` in clockwise arithmetic.
//!
//! The free arc between ball `i` and ball `i + 1` is the gap
//! `gap_i = (x_{i+1} - r_{i+1}) - (x_i + r_i)`, and the gaps together with the
//! diameters always tile the circle: `sum_i (gap_i + 2 r_i) = 1`.

use crate::error::GeometryError;

/// Tolerance for equality-of-reals invariants throughout the crate.
pub const TOL: f64 = 1e-12;

/// Arcs this close to a full circle are read as slightly negative instead.
///
/// Touching point particles sit at bitwise-coincident centers; when the two
/// centers of a contact are produced by different float paths, one can land
/// an ulp behind the other and the raw arc wraps to almost 1. True arcs in
/// `(1 - ARC_GUARD, 1)` would require a neighbor approached to within
/// `1e-13` without touching, below any quantity the dynamics produces.
const ARC_GUARD: f64 = 1e-13;

/// Reduce a coordinate to the fundamental domain `[0, 1)`.
///
/// Inputs are expected within `(-1, 2)`; a single wrap suffices.
#[inline]
pub fn reduce(x: f64) -> f64 {
    let y = if x >= 1.0 {
        x - 1.0
    } else if x < 0.0 {
        x + 1.0
    } else {
        x
    };
    // Guard against -0.0 and rounding that lands exactly on 1.0.
    if y >= 1.0 || y == 0.0 {
        0.0
    } else {
        y
    }
}

/// Clockwise arc length from `a` to `b`, in `[0, 1)`.
#[inline]
pub fn arc(a: f64, b: f64) -> f64 {
    reduce(b - a)
}

/// An admissible arrangement of hard balls on the unit circle.
///
/// The gap vector is stored alongside the centers: at a contact of point
/// particles the coordinates alone cannot tell which side of the pair is
/// touching (a gap of zero in front is the same coordinate picture as a gap
/// of zero behind, one winding apart), so the gaps carry that bit. When a
/// configuration is built from raw coordinates, a coincidence is read as
/// "touching ahead"; the dynamics resolves contacts it creates itself.
///
/// Immutable after construction; every constructor validates admissibility.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleConfig {
    positions: Vec<f64>,
    radii: Vec<f64>,
    gaps: GapVector,
}

impl CircleConfig {
    /// Validate and build a configuration from clockwise-ordered centers.
    pub fn new(positions: Vec<f64>, radii: Vec<f64>) -> Result<Self, GeometryError> {
        Self::derive(positions, radii, None)
    }

    /// Build from centers, disambiguating contact windings with the expected
    /// gap values (used by the dynamics, which knows which pairs touched).
    /// The stored gaps remain coordinate-derived; the hint only selects the
    /// winding of each arc.
    pub(crate) fn derive(
        positions: Vec<f64>,
        radii: Vec<f64>,
        hint: Option<&[f64]>,
    ) -> Result<Self, GeometryError> {
        let n = positions.len();
        if n < 2 {
            return Err(GeometryError::TooFewParticles(n));
        }
        if radii.len() != n {
            return Err(GeometryError::LengthMismatch {
                expected: n,
                got: radii.len(),
            });
        }
        for (i, &x) in positions.iter().enumerate() {
            if !(0.0..1.0).contains(&x) || !x.is_finite() {
                return Err(GeometryError::PositionRange { index: i, value: x });
            }
        }
        for (i, &r) in radii.iter().enumerate() {
            if !(r >= 0.0) || !r.is_finite() {
                return Err(GeometryError::NegativeRadius { index: i, value: r });
            }
        }
        let total: f64 = radii.iter().map(|r| 2.0 * r).sum();
        if total > 1.0 + TOL {
            return Err(GeometryError::RadiiSum { total });
        }
        let free = 1.0 - total;
        let mut gaps = vec![0.0; n];
        let mut partial = 0.0;
        let read = |i: usize, j: usize| -> Result<f64, GeometryError> {
            let mut a = arc(positions[i], positions[j]);
            match hint {
                Some(h) => {
                    // Pick the winding closest to the expected arc length.
                    let target = h[i] + radii[i] + radii[j];
                    if a - target > 0.5 {
                        a -= 1.0;
                    } else if target - a > 0.5 {
                        a += 1.0;
                    }
                }
                None => {
                    if a > 1.0 - ARC_GUARD {
                        a -= 1.0;
                    }
                }
            }
            let g = a - radii[i] - radii[j];
            if g < -TOL {
                return Err(GeometryError::Admissibility { index: i, gap: g });
            }
            Ok(g.max(0.0))
        };
        for i in 0..n - 1 {
            gaps[i] = read(i, i + 1)?;
            partial += gaps[i];
        }
        if hint.is_some() {
            // The wrap arc is read directly (the hint fixes its winding) and
            // conservation becomes a checked invariant.
            gaps[n - 1] = read(n - 1, 0)?;
            let sum = partial + gaps[n - 1];
            if (sum - free).abs() > TOL {
                return Err(GeometryError::GapSum { sum: sum + total });
            }
        } else {
            // Raw coordinates cannot see the wrap winding (coincident points
            // could sit anywhere between zero and a full lap), so the wrap
            // gap is forced by conservation; a negative value means the
            // positions are not in clockwise order.
            let last = free - partial;
            if last < -TOL {
                return Err(GeometryError::Admissibility {
                    index: n - 1,
                    gap: last,
                });
            }
            gaps[n - 1] = last.max(0.0);
        }
        Ok(Self {
            positions,
            radii,
            gaps: GapVector {
                gaps,
                total_diameter: total,
            },
        })
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    /// Total diameter `sum_i 2 r_i`.
    pub fn total_diameter(&self) -> f64 {
        self.gaps.total_diameter()
    }

    /// Free circle length `1 - sum_i 2 r_i`.
    pub fn free_length(&self) -> f64 {
        1.0 - self.total_diameter()
    }

    /// The gap vector of this configuration.
    pub fn gaps(&self) -> &GapVector {
        &self.gaps
    }
}

/// The gaps between consecutive balls, together with the cached total diameter.
///
/// Admissible when every gap is nonnegative and
/// `sum_i gap_i + total_diameter = 1` within [`TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct GapVector {
    gaps: Vec<f64>,
    total_diameter: f64,
}

impl GapVector {
    /// Validate and build a gap vector for balls of total diameter `2 sum r_i`.
    pub fn new(gaps: Vec<f64>, total_diameter: f64) -> Result<Self, GeometryError> {
        if gaps.len() < 2 {
            return Err(GeometryError::TooFewParticles(gaps.len()));
        }
        for (i, &g) in gaps.iter().enumerate() {
            if !(g >= 0.0) || !g.is_finite() {
                return Err(GeometryError::NegativeGap { index: i, value: g });
            }
        }
        let sum: f64 = gaps.iter().sum::<f64>() + total_diameter;
        if (sum - 1.0).abs() > TOL {
            return Err(GeometryError::GapSum { sum });
        }
        Ok(Self {
            gaps,
            total_diameter,
        })
    }

    pub fn n(&self) -> usize {
        self.gaps.len()
    }

    pub fn gaps(&self) -> &[f64] {
        &self.gaps
    }

    pub fn total_diameter(&self) -> f64 {
        self.total_diameter
    }

    /// `sum_i (gap_i + 2 r_i)`; equals 1 within [`TOL`] for admissible vectors.
    pub fn conserved_sum(&self) -> f64 {
        self.gaps.iter().sum::<f64>() + self.total_diameter
    }
}

/// Gap vector of an admissible configuration.
pub fn gaps_of(config: &CircleConfig) -> GapVector {
    config.gaps().clone()
}

/// Rebuild the configuration with the given gaps and radii, anchoring the
/// center of particle 1 at `anchor`. Inverse of [`gaps_of`] up to the anchor.
pub fn config_from_gaps(
    gaps: &GapVector,
    radii: &[f64],
    anchor: f64,
) -> Result<CircleConfig, GeometryError> {
    let n = gaps.n();
    if radii.len() != n {
        return Err(GeometryError::LengthMismatch {
            expected: n,
            got: radii.len(),
        });
    }
    let total: f64 = radii.iter().map(|r| 2.0 * r).sum();
    let sum = gaps.gaps().iter().sum::<f64>() + total;
    if (sum - 1.0).abs() > TOL {
        return Err(GeometryError::GapSum { sum });
    }
    let mut positions = vec![0.0; n];
    positions[0] = reduce(anchor);
    for i in 0..n - 1 {
        positions[i + 1] = reduce(positions[i] + radii[i] + gaps.gaps()[i] + radii[i + 1]);
    }
    CircleConfig::derive(positions, radii.to_vec(), Some(gaps.gaps()))
}
