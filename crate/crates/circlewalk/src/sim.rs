//! Single-run simulation driver.

use crate::dynamics::{choose_index, step_parallel, step_sequential, TickOutcome};
use crate::error::DynamicsError;
use crate::geometry::CircleConfig;
use crate::lattice::lattice_step;
use crate::law::JumpLaw;
use crate::rng::RunStreams;
use crate::scenario::{Scenario, UpdateRule};

/// What happened during one tick of a run.
#[derive(Debug, Clone)]
pub struct TickRecord {
    pub tick: u64,
    /// Chosen particle for sequential updating (0-based), `None` when parallel.
    pub chosen: Option<usize>,
    /// Drawn jumps; zero for particles that were not updated.
    pub velocities: Vec<f64>,
    pub outcome: TickOutcome,
}

/// Draw jumps for the masked particles only; unchosen particles consume no
/// randomness, which keeps statically coupled replicas replayable.
pub(crate) fn draw_masked(
    laws: &[JumpLaw],
    mask: &[bool],
    tick: u64,
    streams: &mut RunStreams,
    out: &mut [f64],
) -> Result<(), DynamicsError> {
    for (i, law) in laws.iter().enumerate() {
        out[i] = if mask[i] {
            law.sample(tick, streams.particle(i))?
        } else {
            0.0
        };
    }
    Ok(())
}

/// Owns the evolving state of one scenario run.
#[derive(Debug, Clone)]
pub struct Runner {
    scenario: Scenario,
    config: CircleConfig,
    streams: RunStreams,
    tick: u64,
    mask: Vec<bool>,
    velocities: Vec<f64>,
}

impl Runner {
    pub fn new(scenario: Scenario) -> Result<Self, DynamicsError> {
        let config = scenario.config()?;
        let streams = RunStreams::new(scenario.seed, scenario.n);
        let n = scenario.n;
        Ok(Self {
            scenario,
            config,
            streams,
            tick: 0,
            mask: vec![false; n],
            velocities: vec![0.0; n],
        })
    }

    /// Same scenario, different seed (used by batch experiments).
    pub fn with_seed(mut scenario: Scenario, seed: u64) -> Result<Self, DynamicsError> {
        scenario.seed = seed;
        Self::new(scenario)
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn config(&self) -> &CircleConfig {
        &self.config
    }

    pub fn tick(&self) -> u64 {
        self.tick
    }

    /// Advance one tick and report what happened.
    pub fn step(&mut self) -> Result<TickRecord, DynamicsError> {
        let n = self.scenario.n;
        let tick = self.tick;
        let chosen = match &self.scenario.update {
            UpdateRule::Parallel => {
                self.mask.fill(true);
                None
            }
            rule => {
                let i = choose_index(rule, n, tick, self.streams.chooser())?;
                self.mask.fill(false);
                self.mask[i] = true;
                Some(i)
            }
        };
        draw_masked(
            &self.scenario.laws,
            &self.mask,
            tick,
            &mut self.streams,
            &mut self.velocities,
        )?;
        let outcome = if let Some(spec) = self.scenario.lattice {
            lattice_step(
                &self.config,
                &spec,
                &self.velocities,
                &self.mask,
                self.scenario.conflict,
            )?
        } else {
            match chosen {
                None => step_parallel(&self.config, &self.velocities, self.scenario.conflict)?,
                Some(i) => {
                    step_sequential(&self.config, i, self.velocities[i], self.scenario.conflict)?
                }
            }
        };
        let outcome = outcome.stamp(tick);
        self.config = outcome.config_next.clone();
        self.tick += 1;
        Ok(TickRecord {
            tick,
            chosen,
            velocities: self.velocities.clone(),
            outcome,
        })
    }

    /// Run to the scenario horizon, feeding every record to `sink`.
    pub fn run<F>(&mut self, mut sink: F) -> Result<(), DynamicsError>
    where
        F: FnMut(&TickRecord),
    {
        while self.tick < self.scenario.horizon {
            let record = self.step()?;
            sink(&record);
        }
        Ok(())
    }
}
