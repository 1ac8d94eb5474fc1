//! Per-particle jump distributions.

use crate::error::LawError;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A jump distribution with support inside `[-1, 1]`.
///
/// `Scripted` is a deterministic velocity array indexed by tick; it consumes
/// no randomness and errors once exhausted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum JumpLaw {
    Atoms { atoms: Vec<(f64, f64)> },
    Uniform { lower: f64, upper: f64 },
    Constant { value: f64 },
    Scripted { values: Vec<f64> },
}

fn check_support(v: f64) -> Result<(), LawError> {
    if !v.is_finite() || v.abs() > 1.0 {
        return Err(LawError::SupportRange(v));
    }
    Ok(())
}

impl JumpLaw {
    /// Finite mixture of point jumps, given as `(value, probability)` pairs.
    pub fn atoms(atoms: Vec<(f64, f64)>) -> Result<Self, LawError> {
        if atoms.is_empty() {
            return Err(LawError::NoAtoms);
        }
        let mut sum = 0.0;
        for &(v, p) in &atoms {
            check_support(v)?;
            if !(p > 0.0) || !p.is_finite() {
                return Err(LawError::AtomProbability(p));
            }
            sum += p;
        }
        if (sum - 1.0).abs() > 1e-12 {
            return Err(LawError::AtomProbabilitySum(sum));
        }
        Ok(Self::Atoms { atoms })
    }

    pub fn uniform(lower: f64, upper: f64) -> Result<Self, LawError> {
        check_support(lower)?;
        check_support(upper)?;
        if !(lower < upper) {
            return Err(LawError::UniformBounds { lower, upper });
        }
        Ok(Self::Uniform { lower, upper })
    }

    pub fn constant(value: f64) -> Result<Self, LawError> {
        check_support(value)?;
        Ok(Self::Constant { value })
    }

    pub fn scripted(values: Vec<f64>) -> Result<Self, LawError> {
        if values.is_empty() {
            return Err(LawError::EmptyScript);
        }
        for &v in &values {
            check_support(v)?;
        }
        Ok(Self::Scripted { values })
    }

    /// Re-validate a deserialized law.
    pub fn validate(&self) -> Result<(), LawError> {
        match self {
            Self::Atoms { atoms } => Self::atoms(atoms.clone()).map(|_| ()),
            Self::Uniform { lower, upper } => Self::uniform(*lower, *upper).map(|_| ()),
            Self::Constant { value } => Self::constant(*value).map(|_| ()),
            Self::Scripted { values } => Self::scripted(values.clone()).map(|_| ()),
        }
    }

    /// Draw the jump for the given tick from this law.
    pub fn sample(&self, tick: u64, rng: &mut ChaCha8Rng) -> Result<f64, LawError> {
        match self {
            Self::Atoms { atoms } => {
                let u: f64 = rng.gen();
                let mut acc = 0.0;
                for &(v, p) in atoms {
                    acc += p;
                    if u < acc {
                        return Ok(v);
                    }
                }
                Ok(atoms[atoms.len() - 1].0)
            }
            Self::Uniform { lower, upper } => {
                let u: f64 = rng.gen();
                Ok(lower + u * (upper - lower))
            }
            Self::Constant { value } => Ok(*value),
            Self::Scripted { values } => {
                values
                    .get(tick as usize)
                    .copied()
                    .ok_or(LawError::ScriptExhausted {
                        tick,
                        len: values.len(),
                    })
            }
        }
    }

    /// Infimum of the support.
    pub fn support_inf(&self) -> f64 {
        match self {
            Self::Atoms { atoms } => atoms.iter().map(|a| a.0).fold(f64::INFINITY, f64::min),
            Self::Uniform { lower, .. } => *lower,
            Self::Constant { value } => *value,
            Self::Scripted { values } => values.iter().copied().fold(f64::INFINITY, f64::min),
        }
    }

    /// Supremum of the support.
    pub fn support_sup(&self) -> f64 {
        match self {
            Self::Atoms { atoms } => atoms.iter().map(|a| a.0).fold(f64::NEG_INFINITY, f64::max),
            Self::Uniform { upper, .. } => *upper,
            Self::Constant { value } => *value,
            Self::Scripted { values } => values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }

    /// True for laws whose draw at a given tick is a fixed number.
    pub fn is_deterministic(&self) -> bool {
        matches!(self, Self::Constant { .. } | Self::Scripted { .. })
    }

    /// True for product-measure families with decidable support predicates.
    pub fn is_decidable_family(&self) -> bool {
        !matches!(self, Self::Scripted { .. })
    }
}
