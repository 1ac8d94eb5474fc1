//! Decision procedures and constructions on top of the dynamics: support
//! checks for the ergodicity hypotheses, exact classifiers for deterministic
//! walks, counterexample scenario builders, Cesàro-average comparisons, and
//! exhaustive lattice reachability.

pub mod cesaro;
pub mod classify;
pub mod conditions;
pub mod construct;
pub mod reach;

pub use cesaro::{cesaro_compare, CesaroReport, GapFunctional};
pub use classify::{
    classify_deterministic_positive, classify_deterministic_signed, Outcome, Sign, Verdict,
};
pub use conditions::{check_aux_conditions, check_nondegeneracy, AuxConditionReport, Status};
pub use construct::{
    at_sequence_pair, four_particle_scenario, prop10_scenario, prop1_gaps, prop1_scenario,
    two_zero_velocities_scenario,
};
pub use reach::{lattice_reachability, ReachabilityReport};
