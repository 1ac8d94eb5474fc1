//! Scenario descriptions and their JSON representation.
//!
//! A scenario bundles everything a run needs: initial configuration, one jump
//! law per particle, the updating rule, the conflict-resolution rule, an
//! optional lattice restriction, a seed, and a tick horizon.
//!
//! The JSON schema is documented in the repository README. Parsing is done
//! against a `serde_json::Value` so that schema violations can be reported
//! with a JSON pointer to the offending key.

use crate::error::{GeometryError, LawError, SchemaError, UpdateRuleError};
use crate::geometry::CircleConfig;
use crate::law::JumpLaw;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// How the per-tick update mask `u` is produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum UpdateRule {
    /// Every particle attempts its jump each tick.
    Parallel,
    /// One particle per tick, drawn with the given positive weights.
    RandomSequential { weights: Vec<f64> },
    /// One particle per tick, a clockwise cursor starting at `start_index` (1-based).
    DeterministicSequential { start_index: usize },
}

impl UpdateRule {
    pub fn random_sequential(weights: Vec<f64>) -> Result<Self, UpdateRuleError> {
        let rule = Self::RandomSequential { weights };
        rule.validate(rule.weight_len()).map(|_| rule)
    }

    fn weight_len(&self) -> usize {
        match self {
            Self::RandomSequential { weights } => weights.len(),
            _ => 0,
        }
    }

    /// Check the rule against a particle count.
    pub fn validate(&self, n: usize) -> Result<(), UpdateRuleError> {
        match self {
            Self::Parallel => Ok(()),
            Self::RandomSequential { weights } => {
                for (i, &w) in weights.iter().enumerate() {
                    if !(w > 0.0) || !w.is_finite() {
                        return Err(UpdateRuleError::WeightNotPositive { index: i, value: w });
                    }
                }
                let sum: f64 = weights.iter().sum();
                if (sum - 1.0).abs() > 1e-12 {
                    return Err(UpdateRuleError::WeightSum(sum));
                }
                if weights.len() != n {
                    return Err(UpdateRuleError::WeightSum(sum));
                }
                Ok(())
            }
            Self::DeterministicSequential { start_index } => {
                if *start_index < 1 || *start_index > n {
                    return Err(UpdateRuleError::StartIndex {
                        start: *start_index,
                        n,
                    });
                }
                Ok(())
            }
        }
    }

    pub fn is_sequential(&self) -> bool {
        !matches!(self, Self::Parallel)
    }
}

/// What happens when a jump would violate admissibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConflictRule {
    /// Move as far as possible, imitating continuous-time motion.
    Natural,
    /// A conflicting particle stays put entirely.
    StrictExclusion,
}

/// Restriction of all scenario data to a lattice with `sites` sites.
///
/// Positions and jumps are multiples of `1/sites`; radii satisfy
/// `sites * r` in `{0} + {k + 1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub sites: u32,
}

impl LatticeSpec {
    const SNAP: f64 = 1e-9;

    /// Integer value of `x` in half-site units (`1 / (2 sites)`), if on-grid.
    pub fn half_units(&self, x: f64) -> Option<i64> {
        let scaled = x * 2.0 * self.sites as f64;
        let k = scaled.round();
        if (scaled - k).abs() <= Self::SNAP {
            Some(k as i64)
        } else {
            None
        }
    }

    /// On-grid check for positions and jumps (multiples of `1/sites`).
    pub fn site_units(&self, x: f64) -> Option<i64> {
        match self.half_units(x) {
            Some(k) if k.rem_euclid(2) == 0 => Some(k / 2),
            _ => None,
        }
    }

    /// Valid radius: `0` or an odd number of half-site units.
    pub fn radius_half_units(&self, r: f64) -> Option<i64> {
        match self.half_units(r) {
            Some(0) => Some(0),
            Some(k) if k > 0 && k % 2 == 1 => Some(k),
            _ => None,
        }
    }

    /// f64 coordinate of a half-unit count.
    pub fn coord(&self, half_units: i64) -> f64 {
        half_units as f64 / (2.0 * self.sites as f64)
    }
}

/// A complete, validated run description.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub n: usize,
    pub positions: Vec<f64>,
    pub radii: Vec<f64>,
    pub laws: Vec<JumpLaw>,
    pub update: UpdateRule,
    pub conflict: ConflictRule,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeSpec>,
    pub seed: u64,
    pub horizon: u64,
}

impl Scenario {
    /// Build the initial configuration (validating admissibility).
    pub fn config(&self) -> Result<CircleConfig, GeometryError> {
        CircleConfig::new(self.positions.clone(), self.radii.clone())
    }

    /// Full structural validation; `Err` carries a JSON pointer.
    pub fn validate(&self) -> Result<(), SchemaError> {
        if self.n < 2 {
            return Err(SchemaError::new("/n", "need at least 2 particles"));
        }
        if self.positions.len() != self.n {
            return Err(SchemaError::new("/positions", "length must equal n"));
        }
        if self.radii.len() != self.n {
            return Err(SchemaError::new("/radii", "length must equal n"));
        }
        if self.laws.len() != self.n {
            return Err(SchemaError::new("/laws", "length must equal n"));
        }
        self.config()
            .map_err(|e| SchemaError::new("/positions", e.to_string()))?;
        for (i, law) in self.laws.iter().enumerate() {
            law.validate()
                .map_err(|e| SchemaError::new(format!("/laws/{i}"), e.to_string()))?;
        }
        self.update
            .validate(self.n)
            .map_err(|e| SchemaError::new("/update", e.to_string()))?;
        if let Some(lat) = self.lattice {
            if lat.sites == 0 {
                return Err(SchemaError::new("/lattice/sites", "must be positive"));
            }
            for (i, &x) in self.positions.iter().enumerate() {
                if lat.site_units(x).is_none() {
                    return Err(SchemaError::new(
                        format!("/positions/{i}"),
                        format!("{x} is not a multiple of 1/{}", lat.sites),
                    ));
                }
            }
            for (i, &r) in self.radii.iter().enumerate() {
                if lat.radius_half_units(r).is_none() {
                    return Err(SchemaError::new(
                        format!("/radii/{i}"),
                        format!("{}*{r} must be 0 or k + 1/2", lat.sites),
                    ));
                }
            }
            for (i, law) in self.laws.iter().enumerate() {
                let values: &[f64] = match law {
                    JumpLaw::Atoms { atoms } => {
                        for (j, (v, _)) in atoms.iter().enumerate() {
                            if lat.site_units(*v).is_none() {
                                return Err(SchemaError::new(
                                    format!("/laws/{i}/atoms/{j}"),
                                    format!("{v} is not a multiple of 1/{}", lat.sites),
                                ));
                            }
                        }
                        &[]
                    }
                    JumpLaw::Constant { value } => std::slice::from_ref(value),
                    JumpLaw::Scripted { values } => values,
                    JumpLaw::Uniform { .. } => {
                        return Err(SchemaError::new(
                            format!("/laws/{i}"),
                            "uniform laws are not lattice-supported",
                        ))
                    }
                };
                for v in values {
                    if lat.site_units(*v).is_none() {
                        return Err(SchemaError::new(
                            format!("/laws/{i}"),
                            format!("{v} is not a multiple of 1/{}", lat.sites),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Parse and validate a scenario document.
    pub fn from_json_str(text: &str) -> Result<Self, SchemaError> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| SchemaError::new("", format!("invalid JSON: {e}")))?;
        Self::from_json_value(&value)
    }

    /// Parse and validate from an already-parsed JSON value.
    pub fn from_json_value(value: &Value) -> Result<Self, SchemaError> {
        let obj = as_object(value, "")?;
        for key in obj.keys() {
            if !matches!(
                key.as_str(),
                "n" | "positions"
                    | "radii"
                    | "laws"
                    | "update"
                    | "conflict"
                    | "lattice"
                    | "seed"
                    | "horizon"
            ) {
                return Err(SchemaError::new(format!("/{key}"), "unknown key"));
            }
        }
        let n = as_u64(field(obj, "n", "")?, "/n")? as usize;
        let positions = as_f64_array(field(obj, "positions", "")?, "/positions")?;
        let radii = as_f64_array(field(obj, "radii", "")?, "/radii")?;
        let laws_value = as_array(field(obj, "laws", "")?, "/laws")?;
        let mut laws = Vec::with_capacity(laws_value.len());
        for (i, lv) in laws_value.iter().enumerate() {
            laws.push(parse_law(lv, &format!("/laws/{i}"))?);
        }
        let update = parse_update(field(obj, "update", "")?, "/update")?;
        let conflict = parse_conflict(field(obj, "conflict", "")?, "/conflict")?;
        let lattice = match obj.get("lattice") {
            None | Some(Value::Null) => None,
            Some(v) => {
                let lobj = as_object(v, "/lattice")?;
                let sites = as_u64(field(lobj, "sites", "/lattice")?, "/lattice/sites")?;
                Some(LatticeSpec {
                    sites: u32::try_from(sites)
                        .map_err(|_| SchemaError::new("/lattice/sites", "too many sites"))?,
                })
            }
        };
        let seed = as_u64(field(obj, "seed", "")?, "/seed")?;
        let horizon = as_u64(field(obj, "horizon", "")?, "/horizon")?;
        let scenario = Scenario {
            n,
            positions,
            radii,
            laws,
            update,
            conflict,
            lattice,
            seed,
            horizon,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serialization cannot fail")
    }
}

fn field<'v>(
    obj: &'v serde_json::Map<String, Value>,
    key: &str,
    base: &str,
) -> Result<&'v Value, SchemaError> {
    obj.get(key)
        .ok_or_else(|| SchemaError::new(format!("{base}/{key}"), "missing required key"))
}

fn as_object<'v>(
    value: &'v Value,
    pointer: &str,
) -> Result<&'v serde_json::Map<String, Value>, SchemaError> {
    value
        .as_object()
        .ok_or_else(|| SchemaError::new(pointer, "expected an object"))
}

fn as_array<'v>(value: &'v Value, pointer: &str) -> Result<&'v Vec<Value>, SchemaError> {
    value
        .as_array()
        .ok_or_else(|| SchemaError::new(pointer, "expected an array"))
}

fn as_f64(value: &Value, pointer: &str) -> Result<f64, SchemaError> {
    value
        .as_f64()
        .ok_or_else(|| SchemaError::new(pointer, "expected a number"))
}

fn as_u64(value: &Value, pointer: &str) -> Result<u64, SchemaError> {
    value
        .as_u64()
        .ok_or_else(|| SchemaError::new(pointer, "expected a nonnegative integer"))
}

fn as_str<'v>(value: &'v Value, pointer: &str) -> Result<&'v str, SchemaError> {
    value
        .as_str()
        .ok_or_else(|| SchemaError::new(pointer, "expected a string"))
}

fn as_f64_array(value: &Value, pointer: &str) -> Result<Vec<f64>, SchemaError> {
    let arr = as_array(value, pointer)?;
    arr.iter()
        .enumerate()
        .map(|(i, v)| as_f64(v, &format!("{pointer}/{i}")))
        .collect()
}

fn parse_law(value: &Value, pointer: &str) -> Result<JumpLaw, SchemaError> {
    let obj = as_object(value, pointer)?;
    let kind = as_str(field(obj, "type", pointer)?, &format!("{pointer}/type"))?;
    let law = match kind {
        "atoms" => {
            let arr = as_array(field(obj, "atoms", pointer)?, &format!("{pointer}/atoms"))?;
            let mut atoms = Vec::with_capacity(arr.len());
            for (j, pair) in arr.iter().enumerate() {
                let p = as_array(pair, &format!("{pointer}/atoms/{j}"))?;
                if p.len() != 2 {
                    return Err(SchemaError::new(
                        format!("{pointer}/atoms/{j}"),
                        "expected [value, probability]",
                    ));
                }
                atoms.push((
                    as_f64(&p[0], &format!("{pointer}/atoms/{j}/0"))?,
                    as_f64(&p[1], &format!("{pointer}/atoms/{j}/1"))?,
                ));
            }
            JumpLaw::atoms(atoms)
        }
        "uniform" => JumpLaw::uniform(
            as_f64(field(obj, "lower", pointer)?, &format!("{pointer}/lower"))?,
            as_f64(field(obj, "upper", pointer)?, &format!("{pointer}/upper"))?,
        ),
        "constant" => JumpLaw::constant(as_f64(
            field(obj, "value", pointer)?,
            &format!("{pointer}/value"),
        )?),
        "scripted" => JumpLaw::scripted(as_f64_array(
            field(obj, "values", pointer)?,
            &format!("{pointer}/values"),
        )?),
        other => {
            return Err(SchemaError::new(
                format!("{pointer}/type"),
                format!("unknown law type {other:?}"),
            ))
        }
    };
    law.map_err(|e: LawError| SchemaError::new(pointer, e.to_string()))
}

fn parse_update(value: &Value, pointer: &str) -> Result<UpdateRule, SchemaError> {
    let obj = as_object(value, pointer)?;
    let kind = as_str(field(obj, "type", pointer)?, &format!("{pointer}/type"))?;
    match kind {
        "parallel" => Ok(UpdateRule::Parallel),
        "random_sequential" => Ok(UpdateRule::RandomSequential {
            weights: as_f64_array(
                field(obj, "weights", pointer)?,
                &format!("{pointer}/weights"),
            )?,
        }),
        "deterministic_sequential" => {
            let start = as_u64(
                field(obj, "start_index", pointer)?,
                &format!("{pointer}/start_index"),
            )?;
            Ok(UpdateRule::DeterministicSequential {
                start_index: start as usize,
            })
        }
        other => Err(SchemaError::new(
            format!("{pointer}/type"),
            format!("unknown update type {other:?}"),
        )),
    }
}

fn parse_conflict(value: &Value, pointer: &str) -> Result<ConflictRule, SchemaError> {
    match as_str(value, pointer)? {
        "natural" => Ok(ConflictRule::Natural),
        "strict_exclusion" => Ok(ConflictRule::StrictExclusion),
        other => Err(SchemaError::new(
            pointer,
            format!("unknown conflict rule {other:?}"),
        )),
    }
}
