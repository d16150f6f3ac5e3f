// Copyright 2026 The qec-workbench Authors
// SPDX-License-Identifier: Apache-2.0

//! Experiment configuration files and logical-error-rate sweeps.
//!
//! A config is flat `key = value` text with `#` comments:
//!
//! ```text
//! code = steane7
//! channel = depolarizing_1q
//! eps_start = 0.001
//! eps_stop = 0.1
//! points = 8
//! scale = log
//! trials = 100000
//! seed = 7
//! ```

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::Serialize;

use crate::codes::StabilizerCode;
use crate::error::{QecError, Result};
use crate::montecarlo::{build_decoder, logical_error_rate_with, RatePoint};
use crate::noise::NoiseChannel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GridScale {
    Linear,
    Log,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = QecError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(QecError::Unknown {
                what: "output format",
                name: other.to_string(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EpsilonGrid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: GridScale,
}

impl EpsilonGrid {
    pub fn validate(&self) -> Result<()> {
        if self.points == 0 {
            return Err(QecError::Invalid("grid needs at least one point".into()));
        }
        for v in [self.start, self.stop] {
            if !(0.0..=1.0).contains(&v) {
                return Err(QecError::Invalid(format!("grid bound {v} outside [0, 1]")));
            }
        }
        if self.scale == GridScale::Log && self.start <= 0.0 {
            return Err(QecError::Invalid("log grid needs a positive start".into()));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i == self.points - 1 {
                    return self.stop;
                }
                let t = i as f64 / last;
                match self.scale {
                    GridScale::Linear => self.start + (self.stop - self.start) * t,
                    GridScale::Log => {
                        (self.start.ln() + (self.stop.ln() - self.start.ln()) * t).exp()
                    }
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    /// Built-in code name or path to a code file.
    pub code: String,
    pub channel: String,
    pub grid: EpsilonGrid,
    pub trials: u64,
    pub seed: Option<u64>,
    pub workers: usize,
    pub out: Option<String>,
    pub format: OutputFormat,
}

const KEYS: [&str; 11] = [
    "code",
    "channel",
    "eps_start",
    "eps_stop",
    "points",
    "scale",
    "trials",
    "seed",
    "workers",
    "out",
    "format",
];

fn parse_value<T: FromStr>(
    map: &BTreeMap<String, (usize, String)>,
    key: &str,
) -> Result<Option<T>> {
    match map.get(key) {
        None => Ok(None),
        Some((line, v)) => v.parse::<T>().map(Some).map_err(|_| QecError::Parse {
            position: *line,
            message: format!("bad value `{v}` for `{key}`"),
        }),
    }
}

impl ExperimentConfig {
    /// Parses config text. Parse errors carry the 1-based line number.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| QecError::Parse {
                position: line_no,
                message: format!("expected `key = value`, got `{line}`"),
            })?;
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) {
                return Err(QecError::Parse {
                    position: line_no,
                    message: format!("unknown key `{k}`"),
                });
            }
            if map
                .insert(k.to_string(), (line_no, v.to_string()))
                .is_some()
            {
                return Err(QecError::Parse {
                    position: line_no,
                    message: format!("duplicate key `{k}`"),
                });
            }
        }
        let required = |key: &str| -> Result<String> {
            map.get(key)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| QecError::Invalid(format!("config is missing `{key}`")))
        };
        let code = required("code")?;
        let channel = required("channel")?;
        let start: f64 = parse_value(&map, "eps_start")?
            .ok_or_else(|| QecError::Invalid("config is missing `eps_start`".into()))?;
        let stop: f64 = parse_value(&map, "eps_stop")?.unwrap_or(start);
        let points: usize = parse_value(&map, "points")?.unwrap_or(1);
        let scale = match map.get("scale").map(|(_, v)| v.as_str()) {
            None | Some("linear") => GridScale::Linear,
            Some("log") => GridScale::Log,
            Some(other) => {
                return Err(QecError::Parse {
                    position: map["scale"].0,
                    message: format!("scale must be linear or log, got `{other}`"),
                })
            }
        };
        let cfg = ExperimentConfig {
            code,
            channel,
            grid: EpsilonGrid {
                start,
                stop,
                points,
                scale,
            },
            trials: parse_value(&map, "trials")?
                .ok_or_else(|| QecError::Invalid("config is missing `trials`".into()))?,
            seed: parse_value(&map, "seed")?,
            workers: parse_value(&map, "workers")?.unwrap_or(0),
            out: map.get("out").map(|(_, v)| v.clone()),
            format: parse_value(&map, "format")?.unwrap_or(OutputFormat::Csv),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        if self.trials == 0 {
            return Err(QecError::Invalid("trials must be at least 1".into()));
        }
        self.channel_at(self.grid.start)?;
        Ok(())
    }

    pub fn channel_at(&self, epsilon: f64) -> Result<NoiseChannel> {
        let ch = NoiseChannel::from_params(&self.channel, |k| (k == "epsilon").then_some(epsilon))?;
        if ch.pauli_probabilities().is_none() {
            return Err(QecError::Unsupported(format!(
                "sweeps need a single-qubit Pauli channel, got {}",
                self.channel
            )));
        }
        Ok(ch)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    #[serde(flatten)]
    pub rate: RatePoint,
    /// The encoded failure rate beats the unencoded rate.
    pub pseudo_threshold: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub code: String,
    pub channel: String,
    pub seed: u64,
    pub config: ExperimentConfig,
    pub points: Vec<SweepPoint>,
}

/// Runs every grid point with the same master seed.
pub fn run_sweep(
    config: &ExperimentConfig,
    code: &StabilizerCode,
    seed: u64,
    workers: usize,
) -> Result<SweepResult> {
    config.validate()?;
    let decoder = build_decoder(code)?;
    let points = config
        .grid
        .values()
        .into_iter()
        .map(|eps| {
            let rate = logical_error_rate_with(
                &decoder,
                &config.channel_at(eps)?,
                config.trials,
                seed,
                workers,
            )?;
            Ok(SweepPoint {
                pseudo_threshold: rate.estimate < eps,
                rate,
            })
        })
        .collect::<Result<_>>()?;
    let mut echo = config.clone();
    echo.seed = Some(seed);
    echo.workers = workers;
    Ok(SweepResult {
        code: code.name.clone(),
        channel: config.channel.clone(),
        seed,
        config: echo,
        points,
    })
}

pub const CSV_HEADER: [&str; 7] = [
    "epsilon",
    "trials",
    "failures",
    "estimate",
    "stderr",
    "seed",
    "pseudo_threshold",
];

impl SweepResult {
    /// CSV with shortest round-trip float formatting.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| QecError::Invalid(format!("csv: {e}"));
        w.write_record(CSV_HEADER).map_err(io)?;
        for p in &self.points {
            let r = &p.rate;
            w.write_record([
                r.epsilon.to_string(),
                r.trials.to_string(),
                r.failures.to_string(),
                r.estimate.to_string(),
                r.stderr.to_string(),
                r.seed.to_string(),
                p.pseudo_threshold.to_string(),
            ])
            .map_err(io)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| QecError::Invalid(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| QecError::Invalid(format!("csv: {e}")))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| QecError::Invalid(format!("json: {e}")))
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::builtin;

    const SAMPLE: &str = "\
# bit-flip sweep
code = bitflip3
channel = bit_flip
eps_start = 0.1
eps_stop = 0.9
points = 9
trials = 2000
seed = 5   # fixed
";

    #[test]
    fn parses_sample() {
        let c = ExperimentConfig::parse(SAMPLE).unwrap();
        assert_eq!(c.code, "bitflip3");
        assert_eq!(c.grid.points, 9);
        assert_eq!(c.seed, Some(5));
        assert_eq!(c.format, OutputFormat::Csv);
        let v = c.grid.values();
        assert_eq!(v.len(), 9);
        assert_eq!(v[0], 0.1);
        assert_eq!(v[8], 0.9);
        assert!((v[4] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_configs() {
        let zero_points = SAMPLE.replace("points = 9", "points = 0");
        assert!(ExperimentConfig::parse(&zero_points).is_err());
        let unknown = format!("{SAMPLE}colour = red\n");
        assert!(matches!(
            ExperimentConfig::parse(&unknown),
            Err(QecError::Parse { position: 9, .. })
        ));
        let dup = format!("{SAMPLE}seed = 6\n");
        assert!(ExperimentConfig::parse(&dup).is_err());
        let bad = SAMPLE.replace("eps_stop = 0.9", "eps_stop = 1.9");
        assert!(ExperimentConfig::parse(&bad).is_err());
        let pd = SAMPLE.replace("bit_flip", "phase_damping");
        assert!(ExperimentConfig::parse(&pd).is_err());
        assert!(ExperimentConfig::parse("code = x\nnot a pair\n").is_err());
    }

    #[test]
    fn log_grid() {
        let g = EpsilonGrid {
            start: 1e-4,
            stop: 1e-1,
            points: 4,
            scale: GridScale::Log,
        };
        let v = g.values();
        for (a, b) in v.iter().zip([1e-4, 1e-3, 1e-2, 1e-1]) {
            assert!((a / b - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn pseudo_threshold_flips_at_half() {
        let mut c = ExperimentConfig::parse(SAMPLE).unwrap();
        c.trials = 20_000;
        let r = run_sweep(&c, &builtin("bitflip3").unwrap(), 1, 0).unwrap();
        for p in &r.points {
            let eps = p.rate.epsilon;
            if (eps - 0.5).abs() > 0.05 {
                assert_eq!(p.pseudo_threshold, eps < 0.5, "eps {eps}");
            }
        }
    }

    #[test]
    fn csv_layout_and_determinism() {
        let c = ExperimentConfig::parse(SAMPLE).unwrap();
        let code = builtin("bitflip3").unwrap();
        let a = run_sweep(&c, &code, 9, 1).unwrap().to_csv().unwrap();
        let b = run_sweep(&c, &code, 9, 8).unwrap().to_csv().unwrap();
        assert_eq!(a, b);
        let mut lines = a.lines();
        assert_eq!(
            lines.next().unwrap(),
            "epsilon,trials,failures,estimate,stderr,seed,pseudo_threshold"
        );
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first[0], "0.1");
        assert_eq!(first[1], "2000");
        assert_eq!(first[5], "9");
        let json: serde_json::Value =
            serde_json::from_str(&run_sweep(&c, &code, 9, 1).unwrap().to_json().unwrap()).unwrap();
        assert_eq!(json["points"].as_array().unwrap().len(), 9);
        assert_eq!(json["config"]["seed"], 9);
    }
}
