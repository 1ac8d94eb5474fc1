//! Discrete-time collective random walks of hard balls on the unit circle.
//!
//! `n` balls with centers `x_i` and radii `r_i` live on the circle `[0, 1)`
//! in fixed clockwise order. Each tick, updated particles draw signed jumps
//! from per-particle laws and move subject to the exclusion constraint that
//! balls never overrun each other. The crate provides:
//!
//! * the tick dynamics in position space and in gap space, under parallel or
//!   sequential updating and two conflict-resolution rules
//!   ([`dynamics`], [`lattice`], [`sim`]);
//! * static coupling of two replicas with real-line liftings, spins, and the
//!   variation functional, plus monitors for the interlacing and monotonicity
//!   properties those objects satisfy ([`coupling`]);
//! * decision procedures: support-based non-degeneracy checks, exact
//!   quadratic-surd classifiers for deterministic walks, counterexample
//!   generators, Cesàro-average comparisons, and exhaustive lattice
//!   reachability ([`analysis`], [`surd`]);
//! * reproducible scenario files, trace emission, and a thin CLI ([`scenario`],
//!   [`trace`], [`cli`]).
//!
//! Runnable demonstrations of each capability live in `examples/`.

pub mod analysis;
pub mod cli;
pub mod coupling;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod law;
pub mod rng;
pub mod scenario;
pub mod sim;
pub mod surd;
pub mod trace;

pub use dynamics::{
    choose_index, gap_step, step_parallel, step_sequential, InteractionEvent, InteractionKind,
    TickOutcome,
};
pub use geometry::{config_from_gaps, gaps_of, CircleConfig, GapVector, TOL};
pub use lattice::lattice_step;
pub use law::JumpLaw;
pub use scenario::{ConflictRule, LatticeSpec, Scenario, UpdateRule};
pub use sim::Runner;

#[cfg(test)]
mod tests {
    fn shareable<T: Send + Sync>() {}

    // Values are immutable after construction and runs own their state, so
    // independent runs may execute on separate threads.
    #[test]
    fn state_types_are_shareable_across_threads() {
        shareable::<crate::CircleConfig>();
        shareable::<crate::GapVector>();
        shareable::<crate::JumpLaw>();
        shareable::<crate::Scenario>();
        shareable::<crate::Runner>();
        shareable::<crate::coupling::CoupledRunner>();
        shareable::<crate::analysis::Verdict>();
    }
}
