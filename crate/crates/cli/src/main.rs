// Copyright 2026 The qec-workbench Authors
// SPDX-License-Identifier: Apache-2.0

//! `qec`: inspect codes, compute syndromes, run logical-error sweeps,
//! audit syndrome gadgets and run the dense-oracle verification suite.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qec_core::codes::{builtin, builtin_names, load_code, Distance, PairClass};
use qec_core::gadgets::{build_gadget, ft_audit, AuditReport, GadgetStyle};
use qec_core::montecarlo::{
    build_decoder, concat_recursion, default_threshold_grid, threshold_scan, LevelMap,
};
use qec_core::pauli::{paulis_up_to_weight, PauliOperator};
use qec_core::suite::verify_suite;
use qec_core::sweep::{run_sweep, ExperimentConfig, OutputFormat};
use qec_core::StabilizerCode;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "qec", version, about = "Stabilizer-code workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapKind {
    Repetition,
    Quadratic,
}

#[derive(Subcommand)]
enum Command {
    /// List or check codes.
    Codes {
        #[command(subcommand)]
        action: CodesAction,
    },
    /// Syndrome of a Pauli error and the lookup decoder's correction.
    Syndrome {
        /// Built-in name or code file.
        code: String,
        /// Pauli string such as `XIZ` or `-iYY`.
        pauli: String,
    },
    /// Monte Carlo logical-error-rate sweep driven by a config file.
    Sweep {
        config: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads; 0 uses every core.
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, value_enum)]
        format: Option<SweepFormat>,
    },
    /// Fixed point of a concatenation level map.
    Threshold {
        #[arg(long, value_enum, default_value = "repetition")]
        map: MapKind,
        /// Constant of the quadratic map `c·p²`.
        #[arg(long)]
        c: Option<f64>,
        /// Also iterate the map from this starting rate.
        #[arg(long)]
        p0: Option<f64>,
        #[arg(long, default_value_t = 4)]
        levels: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Syndrome-extraction gadgets.
    Gadget {
        #[command(subcommand)]
        action: GadgetAction,
    },
    /// Dense-oracle verification suite.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
}

#[derive(Subcommand)]
enum CodesAction {
    /// Built-in codes with their parameters.
    List,
    /// Validate a code and test the error-correction conditions.
    Check {
        code: String,
        /// Largest error weight fed to the condition check.
        #[arg(long, default_value_t = 1)]
        max_weight: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum GadgetAction {
    /// Exhaustive single-fault audit of one generator's gadget.
    Audit {
        code: String,
        generator: usize,
        #[arg(value_parser = ["bare", "cat"])]
        style: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum OracleAction {
    /// Run the checks; exit 1 if any residual exceeds its tolerance.
    Verify {
        /// Comma-separated subset of checks; an empty list runs nothing.
        #[arg(long, num_args = 0.., value_delimiter = ',')]
        only: Option<Vec<String>>,
    },
}

/// Error paired with its exit status.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn usage(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        error: error.into(),
    }
}

fn failure(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: EXIT_FAILURE,
        error: error.into(),
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(failure)?;
    println!("{text}");
    Ok(())
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    }
}

fn distance_bound(code: &StabilizerCode) -> usize {
    if code.n <= 12 {
        code.n
    } else {
        3
    }
}

fn codes_list() -> CmdResult {
    println!("{:<12} {:>3} {:>3} {:>4}", "name", "n", "k", "d");
    for name in builtin_names() {
        let code = builtin(name).map_err(failure)?;
        let d = code.distance(distance_bound(&code));
        println!(
            "{:<12} {:>3} {:>3} {:>4}",
            name,
            code.n,
            code.k,
            d.to_string()
        );
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CheckSummary {
    code: String,
    n: usize,
    k: usize,
    generators: usize,
    distance: Distance,
    valid: bool,
    issues: Vec<String>,
    condition_max_weight: usize,
    condition_pairs: usize,
    condition_violations: Vec<(String, String)>,
    clean: bool,
}

fn codes_check(name: &str, max_weight: usize, format: Format) -> CmdResult {
    let code = load_code(name).map_err(usage)?;
    let report = code.validate();
    let errors: Vec<PauliOperator> = paulis_up_to_weight(code.n, max_weight).collect();
    let (pairs, violations) = if report.is_valid() {
        let q = code.stabilizer_qecc_check(&errors).map_err(failure)?;
        let v = q
            .violations()
            .map(|p| (errors[p.alpha].to_string(), errors[p.beta].to_string()))
            .collect::<Vec<_>>();
        debug_assert_eq!(v.len(), q.count(PairClass::Undetectable));
        (q.pairs.len(), v)
    } else {
        (0, Vec::new())
    };
    let summary = CheckSummary {
        code: code.name.clone(),
        n: code.n,
        k: code.k,
        generators: code.generators.len(),
        distance: code.distance(distance_bound(&code)),
        valid: report.is_valid(),
        issues: report.issues.iter().map(|i| i.to_string()).collect(),
        condition_max_weight: max_weight,
        condition_pairs: pairs,
        clean: report.is_valid() && violations.is_empty(),
        condition_violations: violations,
    };
    match format {
        Format::Json => print_json(&summary)?,
        Format::Text => {
            println!(
                "{}: [[{}, {}]], {} generators, d={}",
                summary.code, summary.n, summary.k, summary.generators, summary.distance
            );
            if summary.valid {
                println!("validation: ok");
            } else {
                for issue in &summary.issues {
                    println!("validation: {issue}");
                }
            }
            if summary.valid {
                println!(
                    "error-correction conditions, weight <= {}: {} pairs, {} violations",
                    max_weight,
                    summary.condition_pairs,
                    summary.condition_violations.len()
                );
                for (a, b) in summary.condition_violations.iter().take(10) {
                    println!("  undetectable: {a}^dag * {b}");
                }
            }
        }
    }
    Ok(status(summary.clean))
}

fn syndrome_cmd(code_name: &str, pauli: &str) -> CmdResult {
    let code = load_code(code_name).map_err(usage)?;
    let e: PauliOperator = pauli.parse().map_err(usage)?;
    if e.num_qubits() != code.n {
        return Err(usage(anyhow!(
            "{pauli} acts on {} qubits, {} has {}",
            e.num_qubits(),
            code.name,
            code.n
        )));
    }
    let s = code.syndrome(&e).map_err(failure)?;
    println!("code       {}", code.name);
    println!("error      {e}");
    println!("syndrome   {s}");
    if let Ok(dec) = build_decoder(&code) {
        println!("correction {}", dec.decode(&s).map_err(failure)?);
    }
    Ok(ExitCode::SUCCESS)
}

fn sweep_cmd(
    path: &str,
    seed: Option<u64>,
    workers: Option<usize>,
    out: Option<String>,
    format: Option<SweepFormat>,
) -> CmdResult {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read config {path}"))
        .map_err(usage)?;
    let config = ExperimentConfig::parse(&text)
        .with_context(|| format!("invalid config {path}"))
        .map_err(failure)?;
    let seed = seed.or(config.seed).ok_or_else(|| {
        usage(anyhow!(
            "a seed is required: pass --seed or set `seed` in the config"
        ))
    })?;
    let workers = workers.unwrap_or(config.workers);
    let code = load_code(&config.code).map_err(failure)?;
    let result = run_sweep(&config, &code, seed, workers).map_err(failure)?;
    let format = match format {
        Some(SweepFormat::Csv) => OutputFormat::Csv,
        Some(SweepFormat::Json) => OutputFormat::Json,
        None => config.format,
    };
    let rendered = result.render(format).map_err(failure)?;
    match out.or(config.out.clone()) {
        Some(p) => fs::write(&p, rendered)
            .with_context(|| format!("cannot write {p}"))
            .map_err(failure)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(rendered.as_bytes()).map_err(failure)?;
            if format == OutputFormat::Json {
                writeln!(stdout).map_err(failure)?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ThresholdReport {
    map: LevelMap,
    fixed_point: f64,
    recursion: Option<Vec<f64>>,
    closed_form: Option<Vec<f64>>,
}

fn threshold_cmd(
    map: MapKind,
    c: Option<f64>,
    p0: Option<f64>,
    levels: u32,
    format: Format,
) -> CmdResult {
    let map = match (map, c) {
        (MapKind::Repetition, None) => LevelMap::Repetition,
        (MapKind::Repetition, Some(_)) => {
            return Err(usage(anyhow!("--c applies to the quadratic map only")))
        }
        (MapKind::Quadratic, Some(c)) if c > 0.0 => LevelMap::Quadratic { c },
        (MapKind::Quadratic, _) => return Err(usage(anyhow!("the quadratic map needs --c > 0"))),
    };
    let p = threshold_scan(|p| map.apply(p), &default_threshold_grid()).map_err(failure)?;
    let rec = p0
        .map(|p0| concat_recursion(p0, levels, map))
        .transpose()
        .map_err(usage)?;
    let report = ThresholdReport {
        map,
        fixed_point: p,
        recursion: rec.as_ref().map(|r| r.levels.clone()),
        closed_form: rec.and_then(|r| r.closed_form),
    };
    match format {
        Format::Json => print_json(&report)?,
        Format::Text => {
            println!("p* = {p}");
            if let Some(levels) = &report.recursion {
                for (k, v) in levels.iter().enumerate() {
                    println!("p_{k} = {v:e}");
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_audit(r: &AuditReport) {
    println!(
        "{} generator {} ({:?} gadget): {} faults, {} rejected",
        r.code, r.generator, r.style, r.faults_checked, r.faults_rejected
    );
    println!(
        "{:>4}  {:<14} {:>6} {:>8}  {:<16} reduced",
        "pos", "before", "faults", "rejected", "worst fault"
    );
    for l in &r.locations {
        let (fault, reduced) = l
            .worst
            .as_ref()
            .map_or(("-".to_string(), "-".to_string()), |w| {
                (
                    w.fault.clone(),
                    format!("{} (w={})", w.reduced_residual, w.reduced_weight),
                )
            });
        println!(
            "{:>4}  {:<14} {:>6} {:>8}  {:<16} {}",
            l.position, l.before, l.faults, l.rejected, fault, reduced
        );
    }
    println!(
        "max reduced weight {}: {}",
        r.max_reduced_weight,
        if r.fault_tolerant { "FT" } else { "NOT-FT" }
    );
}

fn gadget_audit(code: &str, generator: usize, style: &str, format: Format) -> CmdResult {
    let code = load_code(code).map_err(usage)?;
    let style = GadgetStyle::parse(style).map_err(usage)?;
    let gadget = build_gadget(&code, generator, style).map_err(usage)?;
    let report = ft_audit(&gadget, &code).map_err(failure)?;
    match format {
        Format::Json => print_json(&report)?,
        Format::Text => print_audit(&report),
    }
    Ok(ExitCode::SUCCESS)
}

fn oracle_verify(only: Option<Vec<String>>) -> CmdResult {
    let only = only.map(|v| v.into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>());
    let report = verify_suite(only.as_deref()).map_err(usage)?;
    print_json(&report)?;
    Ok(status(report.passed))
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Codes { action } => match action {
            CodesAction::List => codes_list(),
            CodesAction::Check {
                code,
                max_weight,
                format,
            } => codes_check(&code, max_weight, format),
        },
        Command::Syndrome { code, pauli } => syndrome_cmd(&code, &pauli),
        Command::Sweep {
            config,
            seed,
            workers,
            out,
            format,
        } => sweep_cmd(&config, seed, workers, out, format),
        Command::Threshold {
            map,
            c,
            p0,
            levels,
            format,
        } => threshold_cmd(map, c, p0, levels, format),
        Command::Gadget {
            action:
                GadgetAction::Audit {
                    code,
                    generator,
                    style,
                    format,
                },
        } => gadget_audit(&code, generator, &style, format),
        Command::Oracle {
            action: OracleAction::Verify { only },
        } => oracle_verify(only),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn quadratic_map_needs_c() {
        assert!(threshold_cmd(MapKind::Quadratic, None, None, 1, Format::Text).is_err());
        assert!(threshold_cmd(MapKind::Repetition, Some(2.0), None, 1, Format::Text).is_err());
    }

    #[test]
    fn unknown_sweep_config_is_usage_error() {
        let err = sweep_cmd("/nonexistent/sweep.cfg", Some(1), None, None, None)
            .err()
            .unwrap();
        assert_eq!(err.code, EXIT_USAGE);
    }
}
