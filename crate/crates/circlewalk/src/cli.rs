//! Command-line front end.
//!
//! Subcommands: `simulate`, `couple`, `classify`, `counterexample`,
//! `lattice-reach`. Exit codes: 0 success, 2 schema error, 3 precondition
//! error, 4 runtime error.

use crate::analysis::classify::{parse_sign_word, Verdict};
use crate::analysis::{self, cesaro::GapFunctional, check_aux_conditions, check_nondegeneracy};
use crate::coupling::{init_coupled, CoupledRunner};
use crate::error::{AnalysisError, CouplingError, DynamicsError, SchemaError};
use crate::scenario::{LatticeSpec, Scenario};
use crate::sim::Runner;
use crate::surd::Surd;
use crate::trace::{write_atomic, CoupledTraceWriter, RunManifest, SimTraceWriter, TraceFormat};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug)]
enum CliError {
    Schema(String),
    Precondition(String),
    Runtime(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            Self::Schema(_) => 2,
            Self::Precondition(_) => 3,
            Self::Runtime(_) => 4,
        }
    }
    fn message(&self) -> &str {
        match self {
            Self::Schema(m) | Self::Precondition(m) | Self::Runtime(m) => m,
        }
    }
}

impl From<SchemaError> for CliError {
    fn from(e: SchemaError) -> Self {
        Self::Schema(e.to_string())
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        Self::Precondition(e.to_string())
    }
}

impl From<CouplingError> for CliError {
    fn from(e: CouplingError) -> Self {
        Self::Precondition(e.to_string())
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        Self::Runtime(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Runtime(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "circlewalk",
    version,
    about = "Collective random walks of hard balls on the unit circle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Jsonl,
}

impl From<FormatArg> for TraceFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => TraceFormat::Csv,
            FormatArg::Jsonl => TraceFormat::Jsonl,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one scenario and emit a trace plus a summary.
    Simulate(SimulateArgs),
    /// Run two statically coupled scenarios with shared randomness.
    Couple(CoupleArgs),
    /// Classify a deterministic walk for unique ergodicity.
    Classify(ClassifyArgs),
    /// Generate a named counterexample scenario file.
    Counterexample(CounterexampleArgs),
    /// Exhaustive reachability of a small lattice walk.
    LatticeReach(LatticeReachArgs),
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Scenario JSON file.
    #[arg(long)]
    scenario: PathBuf,
    /// Override the scenario seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the scenario horizon.
    #[arg(long)]
    horizon: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Trace format.
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Evaluate the condition checkers into the summary.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    monitors: bool,
}

#[derive(Debug, Args)]
struct CoupleArgs {
    /// First scenario (replica A).
    #[arg(long)]
    scenario_a: PathBuf,
    /// Second scenario (replica B); must share laws, rule, and radii.
    #[arg(long)]
    scenario_b: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    horizon: Option<u64>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Record per-tick non-interacting index sets in the report.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    monitors: bool,
    /// Synchronization detection threshold.
    #[arg(long, default_value_t = 1e-9)]
    sync_threshold: f64,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    /// Classifier input JSON (sign word or exact velocities).
    #[arg(long)]
    input: PathBuf,
    /// Verdict output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CounterexampleArgs {
    /// One of: prop1, prop10, at-sequence, four-particle, two-zero-velocities.
    name: String,
    /// Output scenario path (at-sequence writes `<stem>.a.json` and `.b.json`).
    #[arg(long)]
    out: PathBuf,
    /// Velocity profile for prop1, comma-separated.
    #[arg(long)]
    v0: Option<String>,
    /// Gap-shaping parameter for prop1.
    #[arg(long)]
    b: Option<f64>,
    /// Radii, comma-separated (defaults to zeros).
    #[arg(long)]
    radii: Option<String>,
    /// Jump-size floor for prop10.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Particle count (prop10, two-zero-velocities).
    #[arg(long)]
    n: Option<usize>,
    /// Script length for at-sequence.
    #[arg(long)]
    ticks: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    horizon: Option<u64>,
}

#[derive(Debug, Args)]
struct LatticeReachArgs {
    /// Number of lattice sites.
    #[arg(long)]
    sites: u32,
    /// Number of particles.
    #[arg(long)]
    n: usize,
    /// Jump length in sites.
    #[arg(long)]
    jump: u32,
    /// Maximum number of states to enumerate.
    #[arg(long, default_value_t = 1_000_000)]
    budget: usize,
    /// Output JSONL file for the state listing (summary goes to stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Entry point used by the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Couple(args) => cmd_couple(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Counterexample(args) => cmd_counterexample(args),
        Command::LatticeReach(args) => cmd_lattice_reach(args),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}

fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
    Ok(Scenario::from_json_str(&text)?)
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let mut scenario = load_scenario(&args.scenario)?;
    if let Some(seed) = args.seed {
        scenario.seed = seed;
    }
    if let Some(horizon) = args.horizon {
        scenario.horizon = horizon;
    }
    fs::create_dir_all(&args.out)?;
    let format: TraceFormat = args.format.into();
    let trace_path = args.out.join(format!("trace.{}", format.extension()));
    let n = scenario.n;

    let mut runner =
        Runner::new(scenario.clone()).map_err(|e| CliError::Precondition(e.to_string()))?;
    let mut buffer = Vec::new();
    let mut writer = SimTraceWriter::new(&mut buffer, format, n)?;
    writer.write_initial(runner.config().positions(), runner.config().gaps().gaps())?;
    let mut pair_interactions = vec![0u64; n];
    let mut conservation_error: f64 = 0.0;
    let mut io_error: Option<std::io::Error> = None;
    let run_result = runner.run(|rec| {
        for ev in &rec.outcome.interactions {
            pair_interactions[ev.gap_index(n)] += 1;
        }
        conservation_error =
            conservation_error.max((rec.outcome.gaps_next.conserved_sum() - 1.0).abs());
        if io_error.is_none() {
            if let Err(e) = writer.write_record(rec) {
                io_error = Some(e);
            }
        }
    });
    run_result.map_err(|e| CliError::Runtime(format!("tick {}: {e}", runner.tick())))?;
    if let Some(e) = io_error {
        return Err(e.into());
    }
    write_atomic(&trace_path, &buffer)?;

    let conditions = if args.monitors {
        let nondeg = match check_nondegeneracy(&scenario.laws) {
            Ok(report) => serde_json::to_value(report).expect("serializable"),
            Err(e) => json!({ "undecidable": e.to_string() }),
        };
        let diameter: f64 = scenario.radii.iter().map(|r| 2.0 * r).sum();
        let aux = check_aux_conditions(&scenario.laws, diameter, scenario.horizon);
        json!({ "overtaking": nondeg, "auxiliary": aux })
    } else {
        Value::Null
    };
    let summary = json!({
        "ticks": runner.tick(),
        "final_positions": runner.config().positions(),
        "final_gaps": runner.config().gaps().gaps(),
        "interactions": {
            "total": pair_interactions.iter().sum::<u64>(),
            "per_pair": pair_interactions,
        },
        "conservation_max_error": conservation_error,
        "conditions": conditions,
    });
    write_atomic(
        &args.out.join("summary.json"),
        serde_json::to_string_pretty(&summary).unwrap().as_bytes(),
    )?;
    let manifest = RunManifest::new(
        &scenario,
        vec![trace_path.clone(), args.out.join("summary.json")],
        args.monitors,
    );
    write_atomic(
        &args.out.join("manifest.json"),
        serde_json::to_string_pretty(&manifest).unwrap().as_bytes(),
    )?;
    println!("{}", serde_json::to_string_pretty(&summary).unwrap());
    Ok(())
}

fn build_coupled(a: &Scenario, b: &Scenario, seed: u64) -> Result<CoupledRunner, CliError> {
    if a.laws != b.laws {
        return Err(CouplingError::ShapeMismatch("laws differ".into()).into());
    }
    if a.update != b.update {
        return Err(CouplingError::ShapeMismatch("update rules differ".into()).into());
    }
    if a.conflict != b.conflict {
        return Err(CouplingError::ShapeMismatch("conflict rules differ".into()).into());
    }
    if a.lattice.is_some() || b.lattice.is_some() {
        return Err(CliError::Precondition(
            "coupled runs are continuum-only".into(),
        ));
    }
    let config_a = a
        .config()
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    let config_b = b
        .config()
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    Ok(init_coupled(
        config_a,
        config_b,
        a.laws.clone(),
        a.update.clone(),
        a.conflict,
        seed,
    )?)
}

fn cmd_couple(args: CoupleArgs) -> Result<(), CliError> {
    let a = load_scenario(&args.scenario_a)?;
    let b = load_scenario(&args.scenario_b)?;
    let seed = args.seed.unwrap_or(a.seed);
    let horizon = args.horizon.unwrap_or(a.horizon.max(b.horizon));
    let mut runner = build_coupled(&a, &b, seed)?;
    runner.record_reduction(args.monitors);
    runner.set_sync_threshold(args.sync_threshold);

    fs::create_dir_all(&args.out)?;
    let format: TraceFormat = args.format.into();
    let trace_path = args.out.join(format!("coupled.{}", format.extension()));
    let mut buffer = Vec::new();
    let mut writer = CoupledTraceWriter::new(&mut buffer, format, a.n)?;
    writer.write_state(&runner)?;
    for _ in 0..horizon {
        runner
            .step()
            .map_err(|e| CliError::Runtime(format!("tick {}: {e}", runner.state().tick)))?;
        writer.write_state(&runner)?;
    }
    write_atomic(&trace_path, &buffer)?;

    let report = runner.report();
    write_atomic(
        &args.out.join("monitors.json"),
        serde_json::to_string_pretty(report).unwrap().as_bytes(),
    )?;
    let manifest = RunManifest::new(
        &a,
        vec![trace_path, args.out.join("monitors.json")],
        args.monitors,
    );
    write_atomic(
        &args.out.join("manifest.json"),
        serde_json::to_string_pretty(&manifest).unwrap().as_bytes(),
    )?;
    let summary = json!({
        "ticks": report.ticks,
        "synchronization_tick": report.synchronization_tick,
        "final_sync_distance": runner.state().sync_distance(),
        "final_variation": runner.state().variation(),
        "monitors_clean": report.is_clean(),
    });
    println!("{}", serde_json::to_string_pretty(&summary).unwrap());
    Ok(())
}

fn parse_i64(value: &Value, ptr: &str) -> Result<i64, SchemaError> {
    value
        .as_i64()
        .ok_or_else(|| SchemaError::new(ptr, "expected an integer"))
}

fn parse_rational(value: &Value, ptr: &str) -> Result<BigRational, SchemaError> {
    let obj = value
        .as_object()
        .ok_or_else(|| SchemaError::new(ptr, "expected {num, den}"))?;
    let num = parse_i64(
        obj.get("num")
            .ok_or_else(|| SchemaError::new(format!("{ptr}/num"), "missing"))?,
        &format!("{ptr}/num"),
    )?;
    let den = parse_i64(
        obj.get("den")
            .ok_or_else(|| SchemaError::new(format!("{ptr}/den"), "missing"))?,
        &format!("{ptr}/den"),
    )?;
    if den == 0 {
        return Err(SchemaError::new(format!("{ptr}/den"), "must be nonzero"));
    }
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// Parse one velocity entry. `Ok(None)` means the entry is syntactically
/// valid JSON but not an exact encoding (a bare float), which downgrades the
/// verdict rather than failing the parse.
fn parse_velocity(value: &Value, ptr: &str) -> Result<Option<Surd>, SchemaError> {
    if value.is_number() {
        return Ok(None);
    }
    let obj = value
        .as_object()
        .ok_or_else(|| SchemaError::new(ptr, "expected {num, den} or {a, b, d}"))?;
    if obj.contains_key("num") {
        return Ok(Some(Surd::from_rational(parse_rational(value, ptr)?)));
    }
    let a = parse_rational(
        obj.get("a")
            .ok_or_else(|| SchemaError::new(format!("{ptr}/a"), "missing"))?,
        &format!("{ptr}/a"),
    )?;
    let b = parse_rational(
        obj.get("b")
            .ok_or_else(|| SchemaError::new(format!("{ptr}/b"), "missing"))?,
        &format!("{ptr}/b"),
    )?;
    let d = obj
        .get("d")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| SchemaError::new(format!("{ptr}/d"), "expected a positive integer"))?;
    Surd::new(a, b, d)
        .map(Some)
        .map_err(|e| SchemaError::new(ptr, e))
}

fn classify_from_value(value: &Value) -> Result<Verdict, CliError> {
    let obj = value
        .as_object()
        .ok_or_else(|| SchemaError::new("", "expected an object"))
        .map_err(CliError::from)?;
    if let Some(word) = obj.get("signs") {
        let word = word
            .as_str()
            .ok_or_else(|| SchemaError::new("/signs", "expected a string"))
            .map_err(CliError::from)?;
        let signs = parse_sign_word(word).map_err(|e| CliError::Schema(e.to_string()))?;
        return analysis::classify_deterministic_signed(&signs)
            .map_err(|e| CliError::Precondition(e.to_string()));
    }
    let velocities = obj
        .get("velocities")
        .and_then(|v| v.as_array())
        .ok_or_else(|| SchemaError::new("/velocities", "expected an array"))
        .map_err(CliError::from)?;
    if let Some(updating) = obj.get("updating") {
        if updating.as_str() != Some("parallel") {
            return Ok(Verdict {
                outcome: analysis::Outcome::OutsideTheoremScope,
                witness: crate::analysis::classify::Witness::Scope {
                    reason: "classification is established for parallel updating only".into(),
                },
            });
        }
    }
    let mut exact = Vec::with_capacity(velocities.len());
    for (i, v) in velocities.iter().enumerate() {
        match parse_velocity(v, &format!("/velocities/{i}"))? {
            Some(s) => exact.push(s),
            None => {
                return Ok(Verdict {
                    outcome: analysis::Outcome::OutsideTheoremScope,
                    witness: crate::analysis::classify::Witness::Scope {
                        reason: format!(
                            "velocity {} is a floating-point number; exact {{num, den}} or {{a, b, d}} encodings are required",
                            i + 1
                        ),
                    },
                });
            }
        }
    }
    let radii = match obj.get("radii") {
        None => Vec::new(),
        Some(Value::Null) => Vec::new(),
        Some(v) => {
            let arr = v
                .as_array()
                .ok_or_else(|| SchemaError::new("/radii", "expected an array"))
                .map_err(CliError::from)?;
            arr.iter()
                .enumerate()
                .map(|(i, r)| parse_rational(r, &format!("/radii/{i}")))
                .collect::<Result<Vec<_>, _>>()
                .map_err(CliError::from)?
        }
    };
    analysis::classify_deterministic_positive(&exact, &radii)
        .map_err(|e| CliError::Precondition(e.to_string()))
}

fn cmd_classify(args: ClassifyArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| CliError::Schema(format!("{}: {e}", args.input.display())))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("invalid JSON: {e}")))?;
    let verdict = classify_from_value(&value)?;
    let rendered = serde_json::to_string_pretty(&verdict).unwrap();
    if let Some(path) = &args.out {
        write_atomic(path, rendered.as_bytes())?;
    }
    println!("{rendered}");
    Ok(())
}

fn parse_f64_list(text: &str, what: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Schema(format!("{what}: {e}")))
        })
        .collect()
}

fn cmd_counterexample(args: CounterexampleArgs) -> Result<(), CliError> {
    let need = |opt: Option<&str>, flag: &str| -> Result<String, CliError> {
        opt.map(str::to_string)
            .ok_or_else(|| CliError::Schema(format!("{} requires --{flag}", args.name)))
    };
    match args.name.as_str() {
        "prop1" => {
            let v0 = parse_f64_list(&need(args.v0.as_deref(), "v0")?, "--v0")?;
            let b = args
                .b
                .ok_or_else(|| CliError::Schema("prop1 requires --b".into()))?;
            let radii = match args.radii.as_deref() {
                Some(text) => parse_f64_list(text, "--radii")?,
                None => vec![0.0; v0.len()],
            };
            let horizon = args.horizon.unwrap_or(3 * v0.len() as u64);
            let scenario = analysis::prop1_scenario(&v0, b, &radii, args.seed, horizon)?;
            write_atomic(&args.out, scenario.to_json_string().as_bytes())?;
            println!("wrote {}", args.out.display());
        }
        "prop10" => {
            let epsilon = args
                .epsilon
                .ok_or_else(|| CliError::Schema("prop10 requires --epsilon".into()))?;
            let n = args
                .n
                .ok_or_else(|| CliError::Schema("prop10 requires --n".into()))?;
            let laws = vec![crate::law::JumpLaw::atoms(vec![(0.5, 0.5), (-0.5, 0.5)]).unwrap(); n];
            let horizon = args.horizon.unwrap_or(100_000);
            let scenario = analysis::prop10_scenario(epsilon, n, laws, args.seed, horizon)?;
            write_atomic(&args.out, scenario.to_json_string().as_bytes())?;
            println!("wrote {}", args.out.display());
        }
        "at-sequence" => {
            let ticks = args.ticks.unwrap_or(100);
            let (a, b) = analysis::at_sequence_pair(ticks, args.seed)?;
            let stem = args.out.with_extension("");
            let path_a = stem.with_extension("a.json");
            let path_b = stem.with_extension("b.json");
            write_atomic(&path_a, a.to_json_string().as_bytes())?;
            write_atomic(&path_b, b.to_json_string().as_bytes())?;
            println!("wrote {} and {}", path_a.display(), path_b.display());
        }
        "four-particle" => {
            let horizon = args.horizon.unwrap_or(1000);
            let scenario = analysis::four_particle_scenario(args.seed, horizon);
            write_atomic(&args.out, scenario.to_json_string().as_bytes())?;
            println!("wrote {}", args.out.display());
        }
        "two-zero-velocities" => {
            let n = args.n.unwrap_or(5);
            let horizon = args.horizon.unwrap_or(1000);
            let scenario = analysis::two_zero_velocities_scenario(n, args.seed, horizon)?;
            write_atomic(&args.out, scenario.to_json_string().as_bytes())?;
            println!("wrote {}", args.out.display());
        }
        other => {
            return Err(CliError::Schema(format!(
                "unknown counterexample {other:?}; valid names: prop1, prop10, at-sequence, four-particle, two-zero-velocities"
            )));
        }
    }
    Ok(())
}

fn cmd_lattice_reach(args: LatticeReachArgs) -> Result<(), CliError> {
    let report = analysis::lattice_reachability(
        LatticeSpec { sites: args.sites },
        args.n,
        args.jump,
        args.budget,
    )?;
    if let Some(path) = &args.out {
        let mut buffer = Vec::new();
        for (i, state) in report.states.iter().enumerate() {
            let line = json!({
                "state": state,
                "next": report.edges[i],
            });
            writeln!(buffer, "{line}")?;
        }
        write_atomic(path, &buffer)?;
    }
    let summary = json!({
        "sites": report.sites,
        "n": report.n,
        "jump_sites": report.jump_sites,
        "states": report.states.len(),
        "irreducible": report.irreducible,
        "class_count": report.class_count,
        "reachable_from_first": report.reachable_from_first,
    });
    println!("{}", serde_json::to_string_pretty(&summary).unwrap());
    Ok(())
}

/// Comparison entry point shared with the examples: run two scenarios and
/// report the Cesàro gap of a named functional.
pub fn cesaro_gap(
    a: &Scenario,
    b: &Scenario,
    functional: &str,
    horizon: u64,
) -> Result<f64, AnalysisError> {
    let f = GapFunctional::parse(functional)?;
    Ok(analysis::cesaro_compare(a, b, f, horizon)?.final_gap)
}
