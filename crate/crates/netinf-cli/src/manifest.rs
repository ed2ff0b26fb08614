//! Experiment configuration snapshots and run manifests.
//!
//! Both serialize as flat `key=value` text. A manifest records the effective
//! configuration, SHA-256 digests of every input and output file, wall-clock
//! timings per phase, and the library version, so a run can be audited and
//! reproduced from its output directory alone.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use sha2::{Digest, Sha256};

use crate::CliError;

/// Flat, losslessly serializable snapshot of a command's parameters. Fields
/// not used by a command stay `None` and are omitted from the encoding.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentConfig {
    pub command: String,
    pub model: Option<String>,
    pub seed_matrix: Option<[f64; 4]>,
    pub power: Option<u32>,
    pub edges: Option<usize>,
    pub n: Option<usize>,
    pub fwd: Option<f64>,
    pub bwd: Option<f64>,
    pub dist: Option<String>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub epsilon: Option<f64>,
    pub coverage: Option<f64>,
    pub max_cascades: Option<usize>,
    pub missing: Option<f64>,
    pub external: Option<f64>,
    pub algo: Option<String>,
    pub k: Option<usize>,
    pub stop_frac: Option<f64>,
    pub strategy: Option<String>,
    pub influence: Option<bool>,
    pub rng_seed: Option<u64>,
    pub out_dir: String,
}

macro_rules! kv_fields {
    ($($field:ident),* $(,)?) => {
        fn field_to_string(&self, name: &str) -> Option<String> {
            match name {
                "command" => Some(self.command.clone()),
                "out_dir" => Some(self.out_dir.clone()),
                "seed_matrix" => self.seed_matrix.map(|m| {
                    format!("{},{},{},{}", m[0], m[1], m[2], m[3])
                }),
                $(stringify!($field) => self.$field.as_ref().map(|v| v.to_string()),)*
                _ => None,
            }
        }

        fn set_field(&mut self, name: &str, value: &str) -> Result<(), String> {
            fn parse<T: std::str::FromStr>(v: &str) -> Result<T, String> {
                v.parse().map_err(|_| format!("invalid value `{v}`"))
            }
            match name {
                "command" => self.command = value.to_string(),
                "out_dir" => self.out_dir = value.to_string(),
                "seed_matrix" => {
                    let parts: Vec<&str> = value.split(',').collect();
                    if parts.len() != 4 {
                        return Err("seed_matrix needs 4 entries".into());
                    }
                    let mut m = [0.0; 4];
                    for (slot, p) in m.iter_mut().zip(&parts) {
                        *slot = parse(p)?;
                    }
                    self.seed_matrix = Some(m);
                }
                $(stringify!($field) => self.$field = Some(parse(value)?),)*
                other => return Err(format!("unknown key `{other}`")),
            }
            Ok(())
        }
    };
}

impl ExperimentConfig {
    // `command`, `out_dir` and `seed_matrix` are handled explicitly; the
    // rest are plain optional scalars.
    kv_fields!(
        model, power, edges, n, fwd, bwd, dist, alpha, beta, epsilon, coverage,
        max_cascades, missing, external, algo, k, stop_frac, strategy, influence, rng_seed,
    );

    const ALL_KEYS: &'static [&'static str] = &[
        "command",
        "model",
        "seed_matrix",
        "power",
        "edges",
        "n",
        "fwd",
        "bwd",
        "dist",
        "alpha",
        "beta",
        "epsilon",
        "coverage",
        "max_cascades",
        "missing",
        "external",
        "algo",
        "k",
        "stop_frac",
        "strategy",
        "influence",
        "rng_seed",
        "out_dir",
    ];

    /// `key=value` lines in a fixed key order, omitting absent fields.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        for key in Self::ALL_KEYS {
            if let Some(value) = self.field_to_string(key) {
                out.push_str(key);
                out.push('=');
                out.push_str(&value);
                out.push('\n');
            }
        }
        out
    }

    pub fn from_kv(text: &str) -> Result<Self, CliError> {
        let mut config = Self::default();
        for (i, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Format(format!("line {}: expected `key=value`", i + 1))
            })?;
            config
                .set_field(key, value)
                .map_err(|e| CliError::Format(format!("line {}: {e}", i + 1)))?;
        }
        Ok(config)
    }
}

/// Accumulates manifest rows during a command run.
pub struct RunManifest {
    config: ExperimentConfig,
    inputs: Vec<(String, String)>,
    outputs: Vec<(String, String)>,
    timings: Vec<(String, Duration)>,
}

impl RunManifest {
    pub fn new(config: ExperimentConfig) -> Self {
        Self { config, inputs: Vec::new(), outputs: Vec::new(), timings: Vec::new() }
    }

    pub fn record_input(&mut self, path: &Path) -> Result<(), CliError> {
        // An unreadable input is an input problem, not a runtime fault.
        let digest = digest_file(path).map_err(|e| match e {
            CliError::Runtime(msg) => CliError::Format(msg),
            other => other,
        })?;
        self.inputs.push((file_name(path), digest));
        Ok(())
    }

    pub fn record_output(&mut self, path: &Path) -> Result<(), CliError> {
        let digest = digest_file(path)?;
        self.outputs.push((file_name(path), digest));
        Ok(())
    }

    pub fn record_timing(&mut self, phase: &str, elapsed: Duration) {
        self.timings.push((phase.to_string(), elapsed));
    }

    /// Write `manifest.txt` into the output directory.
    pub fn write(&self, out_dir: &Path) -> Result<PathBuf, CliError> {
        let mut text = format!("version={}\n", env!("CARGO_PKG_VERSION"));
        text.push_str(&self.config.to_kv());
        for (name, digest) in &self.inputs {
            text.push_str(&format!("input.{name}.sha256={digest}\n"));
        }
        for (name, digest) in &self.outputs {
            text.push_str(&format!("output.{name}.sha256={digest}\n"));
        }
        for (phase, elapsed) in &self.timings {
            text.push_str(&format!("timing.{phase}_secs={:.6}\n", elapsed.as_secs_f64()));
        }
        let path = out_dir.join("manifest.txt");
        write_atomic(&path, &text)?;
        Ok(path)
    }
}

fn file_name(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into())
}

pub fn digest_file(path: &Path) -> Result<String, CliError> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::Runtime(format!("cannot read {}: {e}", path.display())))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Write through a temporary sibling and rename, so readers never observe a
/// half-written artifact.
pub fn write_atomic(path: &Path, content: &str) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, content)
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", tmp.display())))?;
    fs::rename(&tmp, path)
        .map_err(|e| CliError::Runtime(format!("cannot rename into {}: {e}", path.display())))?;
    Ok(())
}
