//! Cesàro-average comparison of two runs differing only in the initial
//! configuration.

use crate::error::AnalysisError;
use crate::scenario::Scenario;
use crate::sim::Runner;
use serde::Serialize;

/// Bounded functionals of the gap vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapFunctional {
    /// `gap_k` for a fixed 0-based index.
    Coordinate(usize),
    /// `max_i gap_i`.
    MaxGap,
    /// `sum_i |gap_i - 1/n|`.
    DeviationL1,
}

impl GapFunctional {
    pub fn eval(&self, gaps: &[f64]) -> f64 {
        match self {
            Self::Coordinate(k) => gaps[*k],
            Self::MaxGap => gaps.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            Self::DeviationL1 => {
                let target = 1.0 / gaps.len() as f64;
                gaps.iter().map(|g| (g - target).abs()).sum()
            }
        }
    }

    pub fn parse(name: &str) -> Result<Self, AnalysisError> {
        if let Some(k) = name.strip_prefix("gap") {
            let k: usize = k
                .parse()
                .map_err(|_| AnalysisError::Precondition(format!("bad functional {name:?}")))?;
            if k == 0 {
                return Err(AnalysisError::Precondition(
                    "gap indices are 1-based".into(),
                ));
            }
            return Ok(Self::Coordinate(k - 1));
        }
        match name {
            "max" => Ok(Self::MaxGap),
            "deviation" => Ok(Self::DeviationL1),
            _ => Err(AnalysisError::Precondition(format!(
                "unknown functional {name:?}; use gapK, max or deviation"
            ))),
        }
    }
}

/// Running Cesàro averages of one functional along two coupled-seed runs.
#[derive(Debug, Clone, Serialize)]
pub struct CesaroReport {
    /// `|avg_a - avg_b|` at the horizon.
    pub final_gap: f64,
    pub final_average_a: f64,
    pub final_average_b: f64,
    /// Running averages, one entry per tick.
    pub running_a: Vec<f64>,
    pub running_b: Vec<f64>,
}

/// Run both scenarios with identical laws, rule, and seed, and compare the
/// running averages of `functional` after `horizon` ticks.
pub fn cesaro_compare(
    a: &Scenario,
    b: &Scenario,
    functional: GapFunctional,
    horizon: u64,
) -> Result<CesaroReport, AnalysisError> {
    if a.laws != b.laws || a.update != b.update || a.conflict != b.conflict || a.seed != b.seed {
        return Err(AnalysisError::Precondition(
            "scenarios must share laws, update rule, conflict rule and seed".into(),
        ));
    }
    if a.radii != b.radii {
        return Err(AnalysisError::Precondition(
            "scenarios must share radii".into(),
        ));
    }
    let run = |scenario: &Scenario| -> Result<Vec<f64>, AnalysisError> {
        let mut s = scenario.clone();
        s.horizon = horizon;
        let mut runner = Runner::new(s).map_err(|e| AnalysisError::Precondition(e.to_string()))?;
        let mut sum = 0.0;
        let mut avg = Vec::with_capacity(horizon as usize);
        runner
            .run(|rec| {
                sum += functional.eval(rec.outcome.gaps_next.gaps());
                avg.push(sum / (rec.tick + 1) as f64);
            })
            .map_err(|e| AnalysisError::Precondition(e.to_string()))?;
        Ok(avg)
    };
    let running_a = run(a)?;
    let running_b = run(b)?;
    let final_average_a = running_a.last().copied().unwrap_or(0.0);
    let final_average_b = running_b.last().copied().unwrap_or(0.0);
    Ok(CesaroReport {
        final_gap: (final_average_a - final_average_b).abs(),
        final_average_a,
        final_average_b,
        running_a,
        running_b,
    })
}
