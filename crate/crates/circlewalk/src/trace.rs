//! Trace emission and run manifests.
//!
//! CSV traces print reals with 17 significant digits so a trace replays
//! bit-exactly; JSONL uses serde_json's shortest round-trip encoding. All
//! particle and pair indices in emitted files are 1-based.

use crate::coupling::CoupledRunner;
use crate::dynamics::InteractionEvent;
use crate::scenario::Scenario;
use crate::sim::TickRecord;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

/// 17-significant-digit decimal form of `x`; parses back to the same bits.
pub fn fmt_g17(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceFormat {
    Csv,
    Jsonl,
}

impl TraceFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Jsonl => "jsonl",
        }
    }
}

/// Stable identity of a canonicalized scenario document.
pub fn scenario_digest(scenario: &Scenario) -> String {
    // serde_json maps are ordered, so serializing the parsed value is canonical.
    let value: serde_json::Value =
        serde_json::from_str(&scenario.to_json_string()).expect("scenario JSON is valid");
    let canonical = serde_json::to_string(&value).expect("canonical serialization");
    let hash = Sha256::digest(canonical.as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

/// Reproducibility record written next to every run's outputs.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub scenario_digest: String,
    pub seed: u64,
    pub horizon: u64,
    pub outputs: Vec<PathBuf>,
    pub monitors: bool,
    pub tool_version: String,
}

impl RunManifest {
    pub fn new(scenario: &Scenario, outputs: Vec<PathBuf>, monitors: bool) -> Self {
        Self {
            scenario_digest: scenario_digest(scenario),
            seed: scenario.seed,
            horizon: scenario.horizon,
            outputs,
            monitors,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Write `content`, replacing `path` atomically.
pub fn write_atomic(path: &Path, content: &[u8]) -> io::Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, content)?;
    std::fs::rename(&tmp, path)
}

/// Streams one run's per-tick rows.
pub struct SimTraceWriter<W: Write> {
    out: W,
    format: TraceFormat,
    n: usize,
}

impl<W: Write> SimTraceWriter<W> {
    pub fn new(mut out: W, format: TraceFormat, n: usize) -> io::Result<Self> {
        if format == TraceFormat::Csv {
            let mut header = String::from("tick");
            for i in 1..=n {
                header.push_str(&format!(",x{i}"));
            }
            for i in 1..=n {
                header.push_str(&format!(",g{i}"));
            }
            header.push_str(",chosen");
            for i in 1..=n {
                header.push_str(&format!(",int{i}"));
            }
            writeln!(out, "{header}")?;
        }
        Ok(Self { out, format, n })
    }

    /// Row for the initial state (tick 0, before any update).
    pub fn write_initial(&mut self, positions: &[f64], gaps: &[f64]) -> io::Result<()> {
        self.write_row(0, positions, gaps, 0, &[])
    }

    pub fn write_record(&mut self, record: &TickRecord) -> io::Result<()> {
        let chosen = match record.chosen {
            Some(i) => i as i64 + 1,
            None => -1,
        };
        self.write_row(
            record.tick + 1,
            record.outcome.config_next.positions(),
            record.outcome.gaps_next.gaps(),
            chosen,
            &record.outcome.interactions,
        )
    }

    fn write_row(
        &mut self,
        row: u64,
        positions: &[f64],
        gaps: &[f64],
        chosen: i64,
        events: &[InteractionEvent],
    ) -> io::Result<()> {
        let mut flags = vec![0u8; self.n];
        for ev in events {
            flags[ev.gap_index(self.n)] = 1;
        }
        match self.format {
            TraceFormat::Csv => {
                let mut line = row.to_string();
                for &x in positions {
                    line.push(',');
                    line.push_str(&fmt_g17(x));
                }
                for &g in gaps {
                    line.push(',');
                    line.push_str(&fmt_g17(g));
                }
                line.push_str(&format!(",{chosen}"));
                for f in &flags {
                    line.push_str(&format!(",{f}"));
                }
                writeln!(self.out, "{line}")
            }
            TraceFormat::Jsonl => {
                #[derive(Serialize)]
                struct Row<'a> {
                    tick: u64,
                    positions: &'a [f64],
                    gaps: &'a [f64],
                    chosen: Option<i64>,
                    interactions: Vec<serde_json::Value>,
                }
                let interactions = events
                    .iter()
                    .map(|ev| {
                        serde_json::json!({
                            "index": ev.index + 1,
                            "kind": ev.kind,
                            "velocity": ev.velocity,
                            "displacement": ev.displacement,
                        })
                    })
                    .collect();
                let row = Row {
                    tick: row,
                    positions,
                    gaps,
                    chosen: if chosen == 0 { None } else { Some(chosen) },
                    interactions,
                };
                writeln!(self.out, "{}", serde_json::to_string(&row)?)
            }
        }
    }
}

/// Streams per-tick rows of a coupled run: spins, Var(s), the gap functional
/// V, the synchronization distance, and the interaction events.
pub struct CoupledTraceWriter<W: Write> {
    out: W,
    format: TraceFormat,
    n: usize,
}

impl<W: Write> CoupledTraceWriter<W> {
    pub fn new(mut out: W, format: TraceFormat, n: usize) -> io::Result<Self> {
        if format == TraceFormat::Csv {
            let mut header = String::from("tick");
            for i in 1..=n {
                header.push_str(&format!(",s{i}"));
            }
            header.push_str(",var,v,sync,events");
            writeln!(out, "{header}")?;
        }
        Ok(Self { out, format, n })
    }

    pub fn write_state(&mut self, runner: &CoupledRunner) -> io::Result<()> {
        let state = runner.state();
        let var = state.variation();
        let v = state.sync_distance();
        let (ea, eb) = runner.last_events();
        match self.format {
            TraceFormat::Csv => {
                let mut line = state.tick.to_string();
                for &s in &state.spins {
                    line.push(',');
                    line.push_str(&fmt_g17(s));
                }
                line.push_str(&format!(
                    ",{},{},{},{}",
                    fmt_g17(var),
                    fmt_g17(v),
                    fmt_g17(v),
                    ea.len() + eb.len()
                ));
                writeln!(self.out, "{line}")
            }
            TraceFormat::Jsonl => {
                let fmt_events = |events: &[InteractionEvent]| {
                    events
                        .iter()
                        .map(|ev| {
                            serde_json::json!({
                                "index": ev.index + 1,
                                "kind": ev.kind,
                                "velocity": ev.velocity,
                            })
                        })
                        .collect::<Vec<_>>()
                };
                let row = serde_json::json!({
                    "tick": state.tick,
                    "spins": state.spins,
                    "var": var,
                    "v": v,
                    "sync": v,
                    "events_a": fmt_events(ea),
                    "events_b": fmt_events(eb),
                });
                writeln!(self.out, "{row}")
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g17_round_trips_bits() {
        for &x in &[
            0.1,
            1.0 / 3.0,
            0.30000000000000004,
            1e-300,
            -0.75,
            2f64.sqrt() / 8.0,
        ] {
            let s = fmt_g17(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn digest_is_stable_under_reformatting() {
        let text = r#"{
            "n": 2, "positions": [0.0, 0.5], "radii": [0.0, 0.0],
            "laws": [{"type":"constant","value":0.1},{"type":"constant","value":0.2}],
            "update": {"type":"parallel"}, "conflict": "natural",
            "seed": 1, "horizon": 10
        }"#;
        let a = Scenario::from_json_str(text).unwrap();
        let b = Scenario::from_json_str(&a.to_json_string()).unwrap();
        assert_eq!(scenario_digest(&a), scenario_digest(&b));
    }
}
