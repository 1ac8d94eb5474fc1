//! Static coupling of two replicas.
//!
//! Two copies of the walk run with all randomness shared: particle `i` draws
//! the same jump in both replicas at every tick, and sequential updates pick
//! the same index. Per replica, the *lifting* `R(i)` unrolls particle `i`'s
//! trajectory onto the real line: it starts at the cumulative initial gap
//! `sum_{j<i} gap_j` and accumulates the signed distances actually covered.
//! The *spin* `s_i = R_A(i) - R_B(i)` measures how far apart the two copies
//! of particle `i` have drifted, and the cyclic variation
//! `Var(s) = sum_i |s_i - s_{i+1}|` is the coupling Lyapunov functional.
//!
//! Gaps are recoverable from the lifting at all times:
//! `gap_i = R(i+1) - R(i)` for `i < n` and
//! `gap_n = R(1) + (1 - 2 sum r) - R(n)` for the wrap pair (the constant is
//! the free circle length, which the lifting never sees).
//!
//! Monitors observe, per interaction, the interlacing containment of the
//! moved spins and the strict contraction of the interacting pair, and, per
//! tick, the monotonicity of `Var(s)` and (under sequential updating) of the
//! gap functional `V = sum_i |gap_i^A - gap_i^B|`. Monitors report; they
//! never abort a run, so counterexample scenarios can play out in full.

use crate::dynamics::{
    next_config, resolve_displacements, InteractionEvent, InteractionKind, MoveMode,
};
use crate::error::{CouplingError, DynamicsError};
use crate::geometry::{gaps_of, CircleConfig, GapVector, TOL};
use crate::law::JumpLaw;
use crate::rng::RunStreams;
use crate::scenario::{ConflictRule, UpdateRule};
use crate::sim::draw_masked;
use serde::Serialize;

/// Tolerance for lifting/spin identities, which accumulate rounding over
/// long runs (unlike the per-tick geometric invariants held to [`TOL`]).
pub const IDENTITY_TOL: f64 = 1e-9;

/// Real-line unrolling of one replica, per particle.
///
/// The values grow without bound along a run, so the accumulator is
/// compensated (Neumaier): the gap-recovery identity stays at ulp scale over
/// millions of ticks instead of drifting with `ulp(R) * sqrt(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Lifting {
    values: Vec<f64>,
    compensation: Vec<f64>,
    base_tick: u64,
}

impl Lifting {
    /// Lifting at the base tick: `R(1) = 0`, `R(i) = sum_{j<i} gap_j`.
    pub fn from_gaps(gaps: &GapVector, base_tick: u64) -> Self {
        let mut values = vec![0.0; gaps.n()];
        for i in 1..gaps.n() {
            values[i] = values[i - 1] + gaps.gaps()[i - 1];
        }
        Self {
            compensation: vec![0.0; gaps.n()],
            values,
            base_tick,
        }
    }

    /// Current lifting coordinates.
    pub fn values(&self) -> Vec<f64> {
        self.values
            .iter()
            .zip(&self.compensation)
            .map(|(v, c)| v + c)
            .collect()
    }

    pub fn value(&self, i: usize) -> f64 {
        self.values[i] + self.compensation[i]
    }

    pub fn base_tick(&self) -> u64 {
        self.base_tick
    }

    fn advance(&mut self, displacements: &[f64]) {
        for (i, &d) in displacements.iter().enumerate() {
            let v = self.values[i];
            let t = v + d;
            self.compensation[i] += if v.abs() >= d.abs() {
                (v - t) + d
            } else {
                (d - t) + v
            };
            self.values[i] = t;
        }
    }

    /// Largest residual of the gap-recovery identity against `gaps`.
    pub fn gap_recovery_residual(&self, gaps: &GapVector) -> f64 {
        let n = self.values.len();
        let free = 1.0 - gaps.total_diameter();
        let mut worst: f64 = 0.0;
        for i in 0..n - 1 {
            worst = worst.max((self.value(i + 1) - self.value(i) - gaps.gaps()[i]).abs());
        }
        worst.max((self.value(0) + free - self.value(n - 1) - gaps.gaps()[n - 1]).abs())
    }
}

/// Cyclic variation `sum_i |s_i - s_{i+1}|` of a spin collection.
pub fn variation(spins: &[f64]) -> f64 {
    let n = spins.len();
    (0..n).map(|i| (spins[i] - spins[(i + 1) % n]).abs()).sum()
}

/// Gap functional `V = sum_i |a_i - b_i|`.
pub fn gap_distance(a: &GapVector, b: &GapVector) -> Result<f64, CouplingError> {
    if a.n() != b.n() {
        return Err(CouplingError::ShapeMismatch(format!(
            "gap vectors of length {} vs {}",
            a.n(),
            b.n()
        )));
    }
    Ok(a.gaps()
        .iter()
        .zip(b.gaps())
        .map(|(x, y)| (x - y).abs())
        .sum())
}

/// The pair state of two statically coupled replicas.
#[derive(Debug, Clone)]
pub struct CoupledState {
    pub config_a: CircleConfig,
    pub config_b: CircleConfig,
    pub lifting_a: Lifting,
    pub lifting_b: Lifting,
    /// `s_i = R_A(i) - R_B(i)`, maintained incrementally.
    pub spins: Vec<f64>,
    pub tick: u64,
}

impl CoupledState {
    pub fn n(&self) -> usize {
        self.config_a.n()
    }

    pub fn gaps_a(&self) -> &GapVector {
        self.config_a.gaps()
    }

    pub fn gaps_b(&self) -> &GapVector {
        self.config_b.gaps()
    }

    pub fn variation(&self) -> f64 {
        variation(&self.spins)
    }

    /// `sum_i |gap_i^A - gap_i^B|`, the synchronization metric.
    pub fn sync_distance(&self) -> f64 {
        gap_distance(self.gaps_a(), self.gaps_b()).expect("replicas share n")
    }
}

/// A containment or contraction failure at one interaction.
#[derive(Debug, Clone, Serialize)]
pub struct InterlacingViolation {
    pub tick: u64,
    pub gap: usize,
    pub pre: (f64, f64),
    pub post: (f64, f64),
    pub containment: bool,
}

/// A tick where a monotone functional increased beyond tolerance.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MonotonicityViolation {
    pub tick: u64,
    pub before: f64,
    pub after: f64,
}

/// Per-tick bookkeeping of which particle indices did not interact.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionTick {
    pub tick: u64,
    pub non_interacting_a: Vec<usize>,
    pub non_interacting_b: Vec<usize>,
    /// Indices interaction-free in both replicas at once.
    pub shared_non_interacting: Vec<usize>,
}

/// Everything the monitors observed along a coupled run.
#[derive(Debug, Clone, Default, Serialize)]
pub struct MonitorReport {
    pub ticks: u64,
    pub interactions_checked: u64,
    pub containment_violations: Vec<InterlacingViolation>,
    pub decrease_violations: Vec<InterlacingViolation>,
    pub variation_violations: Vec<MonotonicityViolation>,
    pub gap_functional_violations: Vec<MonotonicityViolation>,
    pub identity_violations: Vec<MonotonicityViolation>,
    pub reduction_log: Vec<ReductionTick>,
    /// First tick at which the sync distance fell below the threshold.
    pub synchronization_tick: Option<u64>,
}

impl MonitorReport {
    pub fn is_clean(&self) -> bool {
        self.containment_violations.is_empty()
            && self.decrease_violations.is_empty()
            && self.variation_violations.is_empty()
            && self.gap_functional_violations.is_empty()
            && self.identity_violations.is_empty()
    }
}

/// Drives two statically coupled replicas and evaluates the monitors.
#[derive(Debug, Clone)]
pub struct CoupledRunner {
    laws: Vec<JumpLaw>,
    update: UpdateRule,
    conflict: ConflictRule,
    streams: RunStreams,
    state: CoupledState,
    report: MonitorReport,
    record_reduction: bool,
    sync_threshold: f64,
    // scratch
    mask: Vec<bool>,
    velocities: Vec<f64>,
    w: Vec<f64>,
    disp_a: Vec<f64>,
    disp_b: Vec<f64>,
    modes_a: Vec<MoveMode>,
    modes_b: Vec<MoveMode>,
    events_a: Vec<InteractionEvent>,
    events_b: Vec<InteractionEvent>,
    spins_pre: Vec<f64>,
    prev_variation: f64,
    prev_gap_functional: f64,
}

/// Build the pair process from two admissible replicas.
///
/// The replicas must agree on particle count and radii; all random choices
/// (jumps and chosen indices) are shared through `seed`.
pub fn init_coupled(
    config_a: CircleConfig,
    config_b: CircleConfig,
    laws: Vec<JumpLaw>,
    update: UpdateRule,
    conflict: ConflictRule,
    seed: u64,
) -> Result<CoupledRunner, CouplingError> {
    let n = config_a.n();
    if config_b.n() != n {
        return Err(CouplingError::ShapeMismatch(format!(
            "{n} vs {} particles",
            config_b.n()
        )));
    }
    for (i, (ra, rb)) in config_a.radii().iter().zip(config_b.radii()).enumerate() {
        if (ra - rb).abs() > TOL {
            return Err(CouplingError::ShapeMismatch(format!(
                "radius {i}: {ra} vs {rb}"
            )));
        }
    }
    if laws.len() != n {
        return Err(CouplingError::ShapeMismatch(format!(
            "{} laws for {n} particles",
            laws.len()
        )));
    }
    update
        .validate(n)
        .map_err(|e| CouplingError::ShapeMismatch(e.to_string()))?;
    let lifting_a = Lifting::from_gaps(&gaps_of(&config_a), 0);
    let lifting_b = Lifting::from_gaps(&gaps_of(&config_b), 0);
    let spins: Vec<f64> = (0..n)
        .map(|i| lifting_a.value(i) - lifting_b.value(i))
        .collect();
    let state = CoupledState {
        config_a,
        config_b,
        lifting_a,
        lifting_b,
        spins,
        tick: 0,
    };
    let prev_variation = state.variation();
    let prev_gap_functional = state.sync_distance();
    Ok(CoupledRunner {
        laws,
        update,
        conflict,
        streams: RunStreams::new(seed, n),
        state,
        report: MonitorReport::default(),
        record_reduction: false,
        sync_threshold: IDENTITY_TOL,
        mask: vec![false; n],
        velocities: vec![0.0; n],
        w: vec![0.0; n],
        disp_a: vec![0.0; n],
        disp_b: vec![0.0; n],
        modes_a: vec![MoveMode::Free; n],
        modes_b: vec![MoveMode::Free; n],
        events_a: Vec::new(),
        events_b: Vec::new(),
        spins_pre: vec![0.0; n],
        prev_variation,
        prev_gap_functional,
    })
}

impl CoupledRunner {
    pub fn state(&self) -> &CoupledState {
        &self.state
    }

    pub fn report(&self) -> &MonitorReport {
        &self.report
    }

    pub fn into_report(self) -> MonitorReport {
        self.report
    }

    /// Record the per-tick non-interacting index sets (off by default).
    pub fn record_reduction(&mut self, on: bool) {
        self.record_reduction = on;
    }

    /// Threshold for the synchronization-tick detector.
    pub fn set_sync_threshold(&mut self, threshold: f64) {
        self.sync_threshold = threshold;
        self.check_sync();
    }

    /// Latest per-replica interaction events (for trace emission).
    pub fn last_events(&self) -> (&[InteractionEvent], &[InteractionEvent]) {
        (&self.events_a, &self.events_b)
    }

    /// Latest per-replica displacements.
    pub fn last_displacements(&self) -> (&[f64], &[f64]) {
        (&self.disp_a, &self.disp_b)
    }

    /// Latest shared jump draws (masked entries are zero).
    pub fn last_jumps(&self) -> &[f64] {
        &self.w
    }

    /// Spins at the start of the latest tick.
    pub fn previous_spins(&self) -> &[f64] {
        &self.spins_pre
    }

    fn check_sync(&mut self) {
        if self.report.synchronization_tick.is_none()
            && self.state.sync_distance() < self.sync_threshold
        {
            self.report.synchronization_tick = Some(self.state.tick);
        }
    }

    /// Advance both replicas one tick with shared randomness.
    pub fn step(&mut self) -> Result<(), DynamicsError> {
        if self.report.ticks == 0 {
            self.check_sync();
        }
        let n = self.state.n();
        let tick = self.state.tick;
        let chosen = match &self.update {
            UpdateRule::Parallel => {
                self.mask.fill(true);
                None
            }
            rule => {
                let i = crate::dynamics::choose_index(rule, n, tick, self.streams.chooser())?;
                self.mask.fill(false);
                self.mask[i] = true;
                Some(i)
            }
        };
        draw_masked(
            &self.laws,
            &self.mask,
            tick,
            &mut self.streams,
            &mut self.velocities,
        )?;
        for i in 0..n {
            self.w[i] = if self.mask[i] {
                self.velocities[i]
            } else {
                0.0
            };
            if !self.w[i].is_finite() || self.w[i].abs() > 1.0 {
                return Err(DynamicsError::VelocityRange {
                    index: i,
                    value: self.w[i],
                });
            }
        }
        let _ = chosen;

        let gaps_a = self.state.gaps_a().clone();
        let gaps_b = self.state.gaps_b().clone();
        self.events_a.clear();
        self.events_b.clear();
        resolve_displacements(
            gaps_a.gaps(),
            &self.w,
            self.conflict,
            &mut self.disp_a,
            &mut self.modes_a,
            &mut self.events_a,
        )?;
        resolve_displacements(
            gaps_b.gaps(),
            &self.w,
            self.conflict,
            &mut self.disp_b,
            &mut self.modes_b,
            &mut self.events_b,
        )?;
        for ev in self.events_a.iter_mut().chain(self.events_b.iter_mut()) {
            ev.tick = tick;
        }

        self.spins_pre.copy_from_slice(&self.state.spins);

        self.state.config_a = apply(
            &self.state.config_a,
            gaps_a.gaps(),
            &self.disp_a,
            &self.modes_a,
        )?;
        self.state.config_b = apply(
            &self.state.config_b,
            gaps_b.gaps(),
            &self.disp_b,
            &self.modes_b,
        )?;
        self.state.lifting_a.advance(&self.disp_a);
        self.state.lifting_b.advance(&self.disp_b);
        for i in 0..n {
            self.state.spins[i] += self.disp_a[i] - self.disp_b[i];
        }
        self.state.tick += 1;
        self.report.ticks += 1;

        self.run_monitors(tick);
        self.check_sync();
        Ok(())
    }

    /// Run until the horizon or until synchronized below the threshold.
    pub fn run_until_sync(
        &mut self,
        threshold: f64,
        max_ticks: u64,
    ) -> Result<Option<u64>, DynamicsError> {
        self.set_sync_threshold(threshold);
        while self.report.synchronization_tick.is_none() && self.state.tick < max_ticks {
            self.step()?;
        }
        Ok(self.report.synchronization_tick)
    }

    fn run_monitors(&mut self, tick: u64) {
        let n = self.state.n();
        let natural = self.conflict == ConflictRule::Natural;

        // Interlacing at every interacting pair, evaluated in isolation:
        // the pair's movers take their actual spin update, the still member
        // keeps its pre-tick spin.
        let mut moved_left = vec![false; n];
        let mut moved_right = vec![false; n];
        for ev in self.events_a.iter().chain(self.events_b.iter()) {
            let g = ev.gap_index(n);
            match ev.kind {
                InteractionKind::RightCapped => moved_left[g] = true,
                InteractionKind::LeftCapped => moved_right[g] = true,
                InteractionKind::Mutual => {
                    moved_left[g] = true;
                    moved_right[g] = true;
                }
            }
        }
        for g in 0..n {
            if !moved_left[g] && !moved_right[g] {
                continue;
            }
            if !natural {
                continue;
            }
            self.report.interactions_checked += 1;
            let l = g;
            let r = (g + 1) % n;
            let pre_l = self.spins_pre[l];
            let pre_r = self.spins_pre[r];
            let post_l = if moved_left[g] {
                pre_l + (self.disp_a[l] - self.disp_b[l])
            } else {
                pre_l
            };
            let post_r = if moved_right[g] {
                pre_r + (self.disp_a[r] - self.disp_b[r])
            } else {
                pre_r
            };
            let lo = pre_l.min(pre_r) - TOL;
            let hi = pre_l.max(pre_r) + TOL;
            let contained = (!moved_left[g] || (lo <= post_l && post_l <= hi))
                && (!moved_right[g] || (lo <= post_r && post_r <= hi));
            if !contained {
                self.report
                    .containment_violations
                    .push(InterlacingViolation {
                        tick,
                        gap: g,
                        pre: (pre_l, pre_r),
                        post: (post_l, post_r),
                        containment: true,
                    });
            }
            let old_diff = (pre_l - pre_r).abs();
            if old_diff > TOL {
                let new_diff = (post_l - post_r).abs();
                if !(new_diff < old_diff) {
                    self.report.decrease_violations.push(InterlacingViolation {
                        tick,
                        gap: g,
                        pre: (pre_l, pre_r),
                        post: (post_l, post_r),
                        containment: false,
                    });
                }
            }
        }

        // Var(s) never increases under the natural rule.
        let var_now = self.state.variation();
        if natural && var_now > self.prev_variation + TOL {
            self.report
                .variation_violations
                .push(MonotonicityViolation {
                    tick,
                    before: self.prev_variation,
                    after: var_now,
                });
        }
        self.prev_variation = var_now;

        // V = sum |gap^A - gap^B| never increases under sequential natural updating.
        let v_now = self.state.sync_distance();
        if natural && self.update.is_sequential() && v_now > self.prev_gap_functional + TOL {
            self.report
                .gap_functional_violations
                .push(MonotonicityViolation {
                    tick,
                    before: self.prev_gap_functional,
                    after: v_now,
                });
        }
        self.prev_gap_functional = v_now;

        // gap^A - gap^B = s_{i+1} - s_i, cyclically.
        let ga = self.state.gaps_a();
        let gb = self.state.gaps_b();
        for i in 0..n {
            let lhs = ga.gaps()[i] - gb.gaps()[i];
            let rhs = self.state.spins[(i + 1) % n] - self.state.spins[i];
            if (lhs - rhs).abs() > IDENTITY_TOL {
                self.report.identity_violations.push(MonotonicityViolation {
                    tick,
                    before: lhs,
                    after: rhs,
                });
            }
        }

        if self.record_reduction {
            let interacting = |events: &[InteractionEvent]| {
                let mut set = vec![false; n];
                for ev in events {
                    match ev.kind {
                        InteractionKind::Mutual => {
                            set[ev.index] = true;
                            set[(ev.index + 1) % n] = true;
                        }
                        _ => set[ev.index] = true,
                    }
                }
                set
            };
            let ia = interacting(&self.events_a);
            let ib = interacting(&self.events_b);
            let non = |set: &[bool]| {
                set.iter()
                    .enumerate()
                    .filter(|(_, &x)| !x)
                    .map(|(i, _)| i)
                    .collect::<Vec<_>>()
            };
            let non_a = non(&ia);
            let non_b = non(&ib);
            let shared = non_a
                .iter()
                .copied()
                .filter(|i| non_b.contains(i))
                .collect();
            self.report.reduction_log.push(ReductionTick {
                tick,
                non_interacting_a: non_a,
                non_interacting_b: non_b,
                shared_non_interacting: shared,
            });
        }
    }
}

fn apply(
    config: &CircleConfig,
    gaps: &[f64],
    disp: &[f64],
    modes: &[MoveMode],
) -> Result<CircleConfig, DynamicsError> {
    next_config(config, gaps, disp, modes)
}

/// First tick at which `sum_i |gap_i^A - gap_i^B| < threshold`, stepping the
/// runner up to `max_ticks`; `None` if never reached.
pub fn synchronization_time(
    runner: &mut CoupledRunner,
    threshold: f64,
    max_ticks: u64,
) -> Result<Option<u64>, DynamicsError> {
    runner.run_until_sync(threshold, max_ticks)
}

/// Chain-interaction summary extracted from an event log.
#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    /// First interaction tick per gap (pair `i`, `i+1`).
    pub first_interaction: Vec<Option<u64>>,
    /// `chain[i][j]`: completion tick of the earliest monotone chain of
    /// interactions along gaps `i, i+1, ..., j-1` (clockwise), if observed.
    pub chain: Vec<Vec<Option<u64>>>,
}

/// Scan an interaction log for monotone clockwise chains between all pairs.
pub fn chain_interaction_log(events: &[InteractionEvent], n: usize) -> ChainReport {
    let mut per_gap: Vec<Vec<u64>> = vec![Vec::new(); n];
    for ev in events {
        per_gap[ev.gap_index(n)].push(ev.tick);
    }
    for ticks in &mut per_gap {
        ticks.sort_unstable();
    }
    let first_interaction: Vec<Option<u64>> = per_gap.iter().map(|t| t.first().copied()).collect();
    let mut chain = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            // Greedy earliest-feasible chain along gaps i .. j-1 (cyclic).
            let mut t: u64 = 0;
            let mut ok = true;
            let mut g = i;
            loop {
                match per_gap[g].iter().find(|&&x| x >= t) {
                    Some(&x) => t = x,
                    None => {
                        ok = false;
                        break;
                    }
                }
                g = (g + 1) % n;
                if g == j {
                    break;
                }
            }
            if ok {
                chain[i][j] = Some(t);
            }
        }
    }
    ChainReport {
        first_interaction,
        chain,
    }
}
