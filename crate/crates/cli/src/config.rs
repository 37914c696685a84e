//! Run configuration: a JSON document with dotted-name overrides.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use mwall_core::solver::{EvolutionConfig, WavepacketSpec};
use mwall_core::{Grid1D, PhysicalParams};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub params: PhysicalParams,
    /// Co-moving grid; `x_max` must be 0 (the wall).
    pub grid: Grid1D,
    pub dt: f64,
    /// `null` sizes the run to the packet's round trip to the wall.
    pub n_steps: Option<usize>,
    /// `null` emits about ten snapshots.
    pub snapshot_stride: Option<usize>,
    pub wall_velocity: f64,
    pub packet: WavepacketSpec,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        let sim = EvolutionConfig::desk_default(0.0);
        Self {
            params: sim.params,
            grid: sim.grid,
            dt: sim.dt,
            n_steps: None,
            snapshot_stride: None,
            wall_velocity: 0.0,
            packet: WavepacketSpec::default(),
            output_dir: PathBuf::from("mwall_out"),
        }
    }
}

impl RunConfig {
    /// Defaults, then the file (if any), then `key=value` overrides.
    pub fn load(path: Option<&Path>, overrides: &[String]) -> anyhow::Result<Self> {
        let mut doc = serde_json::to_value(RunConfig::default())?;
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            let file: Value = serde_json::from_str(&text)
                .with_context(|| format!("parsing config {}", path.display()))?;
            merge(&mut doc, file);
        }
        for item in overrides {
            apply_override(&mut doc, item)?;
        }
        let cfg: RunConfig = serde_json::from_value(doc).context("invalid configuration")?;
        cfg.grid.validate()?;
        cfg.params.validate()?;
        Ok(cfg)
    }

    pub fn evolution(&self) -> EvolutionConfig {
        EvolutionConfig {
            grid: self.grid,
            dt: self.dt,
            n_steps: self.n_steps.unwrap_or(0),
            snapshot_stride: self.snapshot_stride.unwrap_or(1),
            wall_velocity: self.wall_velocity,
            params: self.params,
        }
    }

    /// Fills in `n_steps` and `snapshot_stride`. Fails when the packet can
    /// not reach the wall, since the round trip is then undefined.
    pub fn resolve(mut self) -> anyhow::Result<Self> {
        let n_steps = match self.n_steps {
            Some(n) => n,
            None => {
                self.packet.validate(&self.grid, self.wall_velocity, &self.params)?;
                self.evolution().steps_for_round_trip(&self.packet)
            }
        };
        self.n_steps = Some(n_steps);
        if self.snapshot_stride.is_none() {
            self.snapshot_stride = Some((n_steps / 10).max(1));
        }
        Ok(self)
    }
}

fn merge(base: &mut Value, patch: Value) {
    match (base, patch) {
        (Value::Object(b), Value::Object(p)) => {
            for (k, v) in p {
                match b.get_mut(&k) {
                    Some(slot) => merge(slot, v),
                    None => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (slot, v) => *slot = v,
    }
}

/// `a.b.c=value`; the value is read as JSON, falling back to a string.
fn apply_override(doc: &mut Value, item: &str) -> anyhow::Result<()> {
    let Some((key, raw)) = item.split_once('=') else {
        bail!("override {item:?} is not of the form key=value");
    };
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_owned()));
    let mut slot = doc;
    for part in key.split('.') {
        let Value::Object(map) = slot else {
            bail!("override {key:?} descends into a non-object");
        };
        if !map.contains_key(part) {
            bail!("unknown configuration field {key:?}");
        }
        slot = map.get_mut(part).expect("checked above");
    }
    *slot = value;
    Ok(())
}
