//! Error types shared across the crate.

use thiserror::Error;

/// Construction or validation failure of a circle configuration or gap vector.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum GeometryError {
    #[error("need at least 2 particles, got {0}")]
    TooFewParticles(usize),
    #[error("position {index} = {value} lies outside [0, 1)")]
    PositionRange { index: usize, value: f64 },
    #[error("radius {index} = {value} is negative")]
    NegativeRadius { index: usize, value: f64 },
    #[error("total ball diameter {total} exceeds the circle length 1")]
    RadiiSum { total: f64 },
    #[error("inadmissible configuration: ball {index} overlaps its successor (gap {gap})")]
    Admissibility { index: usize, gap: f64 },
    #[error("gap {index} = {value} is negative")]
    NegativeGap { index: usize, value: f64 },
    #[error("gaps and diameters sum to {sum}, expected 1")]
    GapSum { sum: f64 },
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Invalid jump law or failed draw.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum LawError {
    #[error("atom list is empty")]
    NoAtoms,
    #[error("atom probability {0} is not positive")]
    AtomProbability(f64),
    #[error("atom probabilities sum to {0}, expected 1")]
    AtomProbabilitySum(f64),
    #[error("uniform bounds ({lower}, {upper}) need lower < upper")]
    UniformBounds { lower: f64, upper: f64 },
    #[error("jump value {0} lies outside [-1, 1]")]
    SupportRange(f64),
    #[error("scripted law has no entries")]
    EmptyScript,
    #[error("scripted law exhausted: tick {tick} >= script length {len}")]
    ScriptExhausted { tick: u64, len: usize },
}

/// Invalid update rule.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum UpdateRuleError {
    #[error("sequential weight {index} = {value} is not strictly positive")]
    WeightNotPositive { index: usize, value: f64 },
    #[error("sequential weights sum to {0}, expected 1")]
    WeightSum(f64),
    #[error("start index {start} outside 1..={n}")]
    StartIndex { start: usize, n: usize },
}

/// Failure while advancing a configuration by one tick.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum DynamicsError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("velocity {index} = {value} lies outside [-1, 1]")]
    VelocityRange { index: usize, value: f64 },
    #[error("particle index {index} outside 0..{n}")]
    ParticleIndex { index: usize, n: usize },
    #[error("choose_index called on a parallel update rule")]
    NotSequential,
    #[error(transparent)]
    Law(#[from] LawError),
    #[error("lattice domain violation: {0}")]
    LatticeDomain(String),
    #[error("step produced an inadmissible state at pair {index} (gap {gap}); conflict resolution is ambiguous here")]
    StepInvariant { index: usize, gap: f64 },
}

/// Mismatched replicas in a static coupling.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum CouplingError {
    #[error("coupled replicas disagree in shape: {0}")]
    ShapeMismatch(String),
}

/// Failure of an analysis operation (classifiers, constructions, reachability).
#[derive(Debug, Clone, Error, PartialEq)]
pub enum AnalysisError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parameter b = {b} too large: constructed gap {gap} at index {index} is not below velocity {velocity}")]
    BParameterTooLarge {
        b: f64,
        index: usize,
        gap: f64,
        velocity: f64,
    },
    #[error("undecidable: {0}")]
    Undecidable(String),
    #[error("state budget exceeded: {visited} states explored, budget {budget}")]
    BudgetExceeded { visited: usize, budget: usize },
    #[error(
        "velocity {0} is not strictly positive; use the sign classifier for signed velocities"
    )]
    NonPositiveVelocity(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Scenario file (or classifier input) schema violation, with a JSON pointer.
#[derive(Debug, Clone, Error, PartialEq)]
#[error("{pointer}: {message}")]
pub struct SchemaError {
    pub pointer: String,
    pub message: String,
}

impl SchemaError {
    pub fn new(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}
