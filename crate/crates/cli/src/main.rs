//! `mwall`: reproducible runs of the moving-wall reflection toolkit.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid input, 3 boundary
//! contamination during `simulate`, 4 Doppler check failed during `sweep`,
//! 5 property failure during `verify`.

mod config;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Parser, Subcommand};
use mwall_core::analytic::{self, PhysicalParams, PlaneWaveScattering};
use mwall_core::doppler::{self, DopplerReport};
use mwall_core::{io, solver, verify, FieldSnapshot, Frame, Grid1D};

use crate::config::RunConfig;
use crate::output::{write_atomic, write_json};

#[derive(Parser)]
#[command(name = "mwall", version, about = "Matter-wave reflection by a uniformly moving hard wall")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the exact plane-wave solution on a grid and write it as CSV.
    Analytic {
        #[arg(long, allow_negative_numbers = true)]
        k: f64,
        #[arg(long, allow_negative_numbers = true)]
        v: f64,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = -20.0, allow_negative_numbers = true)]
        x_min: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        x_max: f64,
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, default_value = "analytic.csv")]
        out: PathBuf,
    },
    /// Evolve a Gaussian packet against the wall and write snapshots.
    Simulate {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory; overrides `output_dir` from the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override a config field, e.g. `--set packet.k0_lab=4`.
        #[arg(long = "set", value_name = "KEY=VALUE", allow_hyphen_values = true)]
        overrides: Vec<String>,
    },
    /// Compare simulated and predicted reflected wavenumbers over wall velocities.
    Sweep {
        #[arg(long, allow_negative_numbers = true)]
        k0: f64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        v_list: Vec<f64>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long = "set", value_name = "KEY=VALUE", allow_hyphen_values = true)]
        overrides: Vec<String>,
        #[arg(long, default_value = "doppler_report.json")]
        out: PathBuf,
        /// Also write the report as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the seeded property suite and write a pass/fail ledger.
    Verify {
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value = "verify_ledger.json")]
        out: PathBuf,
    },
}

/// Failure classes mapped onto exit codes 2 and 1.
enum Failure {
    Invalid(anyhow::Error),
    Io(anyhow::Error),
}

impl From<mwall_core::Error> for Failure {
    fn from(e: mwall_core::Error) -> Self {
        Failure::Invalid(e.into())
    }
}

fn invalid(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Invalid(e.into())
}

fn io_err(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Io(e.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let result = match cli.command {
        Command::Analytic { k, v, hbar, mass, x_min, x_max, n, t, out } => {
            cmd_analytic(k, v, hbar, mass, (x_min, x_max), n, t, &out)
        }
        Command::Simulate { config, out, overrides } => cmd_simulate(config.as_deref(), out, &overrides),
        Command::Sweep { k0, v_list, config, overrides, out, csv } => {
            cmd_sweep(k0, &v_list, config.as_deref(), &overrides, &out, csv.as_deref())
        }
        Command::Verify { seed, out } => cmd_verify(seed, &out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("I/O error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_analytic(
    k: f64,
    v: f64,
    hbar: f64,
    mass: f64,
    x_range: (f64, f64),
    n: usize,
    t: f64,
    out: &Path,
) -> Result<ExitCode, Failure> {
    if !(k > 0.0) {
        return Err(invalid(anyhow!("--k must satisfy k > 0 (incident wave toward +x), got {k}")));
    }
    let params = PhysicalParams::new(hbar, mass)?;
    let scat = PlaneWaveScattering::new(k, v, params)?;
    let grid = Grid1D::new(x_range.0, x_range.1, n)?;

    // beyond the wall the field vanishes
    let wall = scat.wall_position(t);
    let snap = FieldSnapshot::sample(t, Frame::Lab, v, grid, |x| {
        if x <= wall {
            analytic::total_wavefunction(x, t, &scat)
        } else {
            Default::default()
        }
    });
    let current: Vec<f64> = grid
        .nodes()
        .map(|x| if x <= wall { analytic::probability_current(x, t, &scat) } else { 0.0 })
        .collect();
    write_atomic(out, io::snapshot_csv(&snap, &current).as_bytes()).map_err(io_err)?;

    println!("k={k}");
    println!("v={v}");
    println!("k_prime={}", scat.k_prime());
    println!("k_bar={}", scat.k_bar());
    println!("omega={}", scat.omega());
    println!("omega_prime={}", scat.omega_prime());
    println!("reflected_phase_velocity={}", analytic::reflected_phase_velocity(k, v, &params)?);
    println!("regime={}", scat.regime());
    Ok(ExitCode::SUCCESS)
}

#[derive(serde::Serialize)]
struct SimulationMeta<'a> {
    config: &'a RunConfig,
    #[serde(flatten)]
    run: &'a solver::RunMetadata,
    files: Vec<String>,
}

fn cmd_simulate(config: Option<&Path>, out: Option<PathBuf>, overrides: &[String]) -> Result<ExitCode, Failure> {
    let mut cfg = RunConfig::load(config, overrides).map_err(invalid)?;
    if let Some(dir) = out {
        cfg.output_dir = dir;
    }
    let cfg = cfg.resolve().map_err(invalid)?;
    let evo = cfg.evolution();
    evo.validate()?;
    let initial = solver::init_gaussian(cfg.grid, &cfg.packet, cfg.wall_velocity, &cfg.params)?;
    let run = solver::evolve(&initial, &evo)?;

    let dir = &cfg.output_dir;
    std::fs::create_dir_all(dir).map_err(io_err)?;
    write_json(&dir.join("resolved_config.json"), &cfg).map_err(io_err)?;
    let mut files = Vec::new();
    for (index, snap) in run.snapshots.iter().enumerate() {
        let lab = solver::to_lab_frame(snap, cfg.wall_velocity, &cfg.params)?;
        for frame_snap in [snap, &lab] {
            let current = analytic::discrete_current(frame_snap, &cfg.params)?;
            let name = io::snapshot_file_name(frame_snap.frame, index);
            write_atomic(&dir.join(&name), io::snapshot_csv(frame_snap, &current).as_bytes()).map_err(io_err)?;
            files.push(name);
        }
    }
    let meta = SimulationMeta {
        config: &cfg,
        run: &run.meta,
        files,
    };
    write_json(&dir.join("meta.json"), &meta).map_err(io_err)?;

    println!(
        "steps={} snapshots={} norm_drift={:e} boundary_contaminated={}",
        run.meta.n_steps, run.meta.n_snapshots, run.meta.norm_drift, run.meta.boundary_contaminated
    );
    if run.meta.boundary_contaminated {
        eprintln!(
            "warning: {:.3e} of the final norm sits next to the far boundary",
            run.meta.far_boundary_fraction
        );
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn sweep_threads() -> Result<usize, Failure> {
    match std::env::var("MWALL_THREADS") {
        Ok(s) if !s.trim().is_empty() => s
            .trim()
            .parse()
            .map_err(|_| invalid(anyhow!("MWALL_THREADS must be a non-negative integer, got {s:?}"))),
        _ => Ok(0),
    }
}

fn print_table(report: &DopplerReport) {
    println!(
        "{:>8} {:>10} {:>12} {:>10}  {:<24} note",
        "v", "k_pred", "k_meas", "err", "regime"
    );
    for row in &report.rows {
        let meas = row.k_measured.map_or("-".to_string(), |k| format!("{k:.6}"));
        let err = row.relative_error.map_or("-".to_string(), |e| format!("{e:.2e}"));
        let note = match (&row.skipped_reason, row.passes()) {
            (Some(reason), _) => format!("skipped: {reason}"),
            (None, true) => "ok".to_string(),
            (None, false) => "FAIL".to_string(),
        };
        println!(
            "{:>8} {:>10} {:>12} {:>10}  {:<24} {}",
            row.v, row.k_predicted, meas, err, row.regime.to_string(), note
        );
    }
}

fn cmd_sweep(
    k0: f64,
    velocities: &[f64],
    config: Option<&Path>,
    overrides: &[String],
    out: &Path,
    csv: Option<&Path>,
) -> Result<ExitCode, Failure> {
    if !(k0 > 0.0) {
        return Err(invalid(anyhow!("--k0 must satisfy k0 > 0, got {k0}")));
    }
    if velocities.is_empty() || velocities.iter().any(|v| !v.is_finite()) {
        return Err(invalid(anyhow!("--v-list must hold finite velocities")));
    }
    let mut cfg = RunConfig::load(config, overrides).map_err(invalid)?;
    cfg.packet.k0_lab = k0;
    let sim = cfg.evolution();
    sim.validate()?;

    let threads = sweep_threads()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(invalid)?;
    let report = pool.install(|| doppler::doppler_sweep(k0, velocities, &sim, &cfg.packet))?;

    if let Some(parent) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(io_err)?;
        write_json(&parent.join("resolved_config.json"), &cfg).map_err(io_err)?;
    } else {
        write_json(Path::new("resolved_config.json"), &cfg).map_err(io_err)?;
    }
    write_json(out, &report).map_err(io_err)?;
    if let Some(csv) = csv {
        write_atomic(csv, io::report_csv(&report).as_bytes()).map_err(io_err)?;
    }
    print_table(&report);
    if report.all_pass() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(4))
    }
}

fn cmd_verify(seed: u64, out: &Path) -> Result<ExitCode, Failure> {
    let ledger = verify::run_suite(seed);
    write_json(out, &ledger).map_err(io_err)?;
    for p in &ledger.properties {
        println!(
            "{:<4} {:<32} metric={:.3e} threshold={:.3e}",
            if p.passed { "PASS" } else { "FAIL" },
            p.name,
            p.metric,
            p.threshold
        );
    }
    match ledger.first_failure() {
        None => Ok(ExitCode::SUCCESS),
        Some(p) => {
            eprintln!("property failed: {} ({})", p.name, p.detail);
            Ok(ExitCode::from(5))
        }
    }
}
