//! Batch command-line surface over the library operations. Each subcommand
//! runs one experiment, writes CSV (and optionally SVG) into the output
//! directory, and prints a one-line summary to stdout.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::analysis::{
    self, find_transition, instability_fidelity, phase_portrait, time_averaged_current, Engine,
    SweepParam,
};
use crate::config::RunConfig;
use crate::csv_io;
use crate::error::{Error, Result};
use crate::model::{state_to_field, TangentVector};
use crate::spectral::gp_evolve;
use crate::svg;
use crate::tangent::{evolve_with_tangent, twin_trajectory_divergence, LyapunovMethod};
use crate::three_mode::tmm_evolve;

#[derive(Debug, Parser)]
#[command(
    name = "ring-ratchet",
    about = "Driven Bose-Einstein condensate on a ring: currents, chaos \
             diagnostics and phase-transition experiments",
    version
)]
pub struct Cli {
    /// Flat key = value config file applied before the flags below.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output directory (default: $RING_RATCHET_OUT or the working directory).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Also render SVG plots next to the CSV output.
    #[arg(long, global = true)]
    pub svg: bool,

    /// Nonlinearity strength.
    #[arg(long, global = true)]
    pub g: Option<f64>,

    /// Drive amplitude K.
    #[arg(long, global = true)]
    pub k: Option<f64>,

    /// Drive angular frequency omega.
    #[arg(long, global = true)]
    pub omega: Option<f64>,

    /// Spatial grid points (power of two).
    #[arg(long, global = true)]
    pub grid: Option<usize>,

    /// Time steps per drive period.
    #[arg(long, global = true)]
    pub steps_per_period: Option<usize>,

    /// Run length in drive periods.
    #[arg(long, global = true)]
    pub periods: Option<usize>,

    /// Record observables every this many steps.
    #[arg(long, global = true)]
    pub stride: Option<usize>,

    /// Initial weight of momentum mode -1 (mode 0 gets the rest).
    #[arg(long, global = true)]
    pub w_minus1: Option<f64>,

    /// Initial relative phase between modes -1 and 0.
    #[arg(long, global = true)]
    pub phase: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Parameter to scan: g, K or omega.
    #[arg(long)]
    pub param: String,
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    #[arg(long, default_value_t = 41)]
    pub points: usize,
    /// Solver: gp or tmm.
    #[arg(long, default_value = "tmm")]
    pub engine: String,
}

#[derive(Debug, Args)]
pub struct TransitionArgs {
    /// Parameter to bisect: g, K or omega.
    #[arg(long)]
    pub param: String,
    #[arg(long)]
    pub lo: f64,
    #[arg(long)]
    pub hi: f64,
    #[arg(long, default_value_t = 0.002)]
    pub tol: f64,
    #[arg(long, default_value = "tmm")]
    pub engine: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full Gross-Pitaevskii evolution; writes gp_current.csv.
    EvolveGp,
    /// Three-mode evolution; writes tmm_current.csv.
    EvolveTmm,
    /// Tangent-space run and Lyapunov estimate; writes lyapunov.csv.
    Lyapunov {
        /// Initial uniform tangent perturbation.
        #[arg(long, default_value_t = 1e-20)]
        eps0: f64,
        /// Estimator for the summary line: endpoint or slope.
        #[arg(long, default_value = "slope")]
        method: String,
    },
    /// Fidelity-based instability of the GP dynamics; prints IF.
    Instability {
        /// Multiplicative perturbation of the mode-0 coefficient.
        #[arg(long, default_value_t = 1e-5)]
        perturbation: f64,
    },
    /// Time-averaged current over a parameter grid; writes sweep_<param>.csv.
    Sweep(#[command(flatten)] SweepArgs),
    /// Bisect the current phase transition point; prints the critical value.
    Transition(#[command(flatten)] TransitionArgs),
    /// (current, relative phase) portrait of a three-mode run; writes portrait.csv.
    Portrait,
    /// Twin three-mode trajectories from nearby initial states; writes twin.csv.
    Twin {
        /// Uniform real offset added to each mode amplitude.
        #[arg(long, default_value_t = 1e-3)]
        delta: f64,
    },
}

fn build_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.merge_file(path)?;
    }
    if let Some(v) = cli.g {
        cfg.g = v;
    }
    if let Some(v) = cli.k {
        cfg.k = v;
    }
    if let Some(v) = cli.omega {
        cfg.omega = v;
    }
    if let Some(v) = cli.grid {
        cfg.grid_points = v;
    }
    if let Some(v) = cli.steps_per_period {
        cfg.steps_per_period = v;
    }
    if let Some(v) = cli.periods {
        cfg.horizon_periods = v;
    }
    if let Some(v) = cli.stride {
        cfg.sample_stride = v;
    }
    if let Some(v) = cli.w_minus1 {
        cfg.w_minus1 = v;
    }
    if let Some(v) = cli.phase {
        cfg.relative_phase = v;
    }
    if let Some(dir) = &cli.out {
        cfg.out_dir = dir.clone();
    }
    Ok(cfg)
}

/// Run one CLI invocation. Errors bubble up for the binary to map onto
/// exit codes.
pub fn run(cli: &Cli) -> Result<()> {
    let run_cfg = build_config(cli)?;
    let params = run_cfg.drive_params()?;
    let numerics = run_cfg.numerics()?;
    let initial = run_cfg.initial_state()?;
    let out = &run_cfg.out_dir;
    if !out.exists() {
        std::fs::create_dir_all(out)?;
    }

    match &cli.command {
        Command::EvolveGp => {
            let field = state_to_field(&initial, &numerics);
            let traj = gp_evolve(&field, &params, &numerics)?;
            let path = out.join("gp_current.csv");
            csv_io::write_gp_trajectory(&path, &traj)?;
            if cli.svg {
                svg::line_plot(
                    &out.join("gp_current.svg"),
                    "GP ring current",
                    "t",
                    "I(t)",
                    &traj.times,
                    &[("current", &traj.currents)],
                )?;
            }
            let tac = time_averaged_current(&traj.times, &traj.currents)?;
            println!(
                "evolve-gp g={} K={} omega={} periods={}: TAC = {:.6} -> {}",
                params.g,
                params.k,
                params.omega,
                numerics.horizon_periods,
                tac,
                path.display()
            );
        }
        Command::EvolveTmm => {
            let traj = tmm_evolve(&initial, &params, &numerics)?;
            let path = out.join("tmm_current.csv");
            csv_io::write_tmm_trajectory(&path, &traj)?;
            if cli.svg {
                svg::line_plot(
                    &out.join("tmm_current.svg"),
                    "Three-mode ring current",
                    "t",
                    "I(t)",
                    &traj.times,
                    &[("current", &traj.currents)],
                )?;
            }
            let tac = time_averaged_current(&traj.times, &traj.currents)?;
            println!(
                "evolve-tmm g={} K={} omega={} periods={}: TAC = {:.6} -> {}",
                params.g,
                params.k,
                params.omega,
                numerics.horizon_periods,
                tac,
                path.display()
            );
        }
        Command::Lyapunov { eps0, method } => {
            let method = match method.as_str() {
                "endpoint" => LyapunovMethod::Endpoint,
                "slope" => LyapunovMethod::Slope,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown method '{other}' (expected endpoint or slope)"
                    )))
                }
            };
            let (_, record) =
                evolve_with_tangent(&initial, &TangentVector::uniform(*eps0), &params, &numerics)?;
            let path = out.join("lyapunov.csv");
            csv_io::write_lyapunov(&path, &record)?;
            if cli.svg {
                svg::line_plot(
                    &out.join("lyapunov.svg"),
                    "Perturbation growth",
                    "t",
                    "ln |dP(t)/dP(0)|",
                    &record.times,
                    &[("log_ratio", &record.log_ratio)],
                )?;
            }
            let lambda = crate::tangent::lyapunov_exponent(&record, method);
            println!(
                "lyapunov g={} K={} omega={} periods={}: lambda = {:.6e} \
                 (endpoint {:.6e}, slope {:.6e}) -> {}",
                params.g,
                params.k,
                params.omega,
                numerics.horizon_periods,
                lambda,
                record.lambda_endpoint,
                record.lambda_slope,
                path.display()
            );
        }
        Command::Instability { perturbation } => {
            let value = instability_fidelity(&params, &numerics, *perturbation)?;
            println!(
                "instability g={} K={} omega={} periods={}: IF = {:.6e}",
                params.g, params.k, params.omega, numerics.horizon_periods, value
            );
        }
        Command::Sweep(args) => {
            let param: SweepParam = args.param.parse()?;
            let engine: Engine = args.engine.parse()?;
            if args.points < 2 {
                return Err(Error::InvalidArgument(
                    "need at least 2 sweep points".into(),
                ));
            }
            let grid: Vec<f64> = (0..args.points)
                .map(|i| args.from + (args.to - args.from) * i as f64 / (args.points - 1) as f64)
                .collect();
            let result = analysis::sweep(param, &grid, &params, &numerics, engine)?;
            let path = out.join(format!("sweep_{}.csv", param.name()));
            csv_io::write_sweep(&path, &result)?;
            if cli.svg {
                svg::line_plot(
                    &out.join(format!("sweep_{}.svg", param.name())),
                    "Time-averaged current",
                    param.name(),
                    "TAC",
                    &result.values,
                    &[("tac", &result.tac)],
                )?;
            }
            println!(
                "sweep {} in [{}, {}] x{} ({:?}): TAC range [{:.4}, {:.4}] -> {}",
                param.name(),
                args.from,
                args.to,
                args.points,
                engine,
                result.tac.iter().cloned().fold(f64::INFINITY, f64::min),
                result.tac.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
                path.display()
            );
        }
        Command::Transition(args) => {
            let param: SweepParam = args.param.parse()?;
            let engine: Engine = args.engine.parse()?;
            let critical = find_transition(
                param, args.lo, args.hi, &params, &numerics, engine, args.tol,
            )?;
            println!(
                "transition {} in [{}, {}] ({:?}): critical value = {:.6}",
                param.name(),
                args.lo,
                args.hi,
                engine,
                critical
            );
        }
        Command::Portrait => {
            let traj = tmm_evolve(&initial, &params, &numerics)?;
            let (points, skipped) = phase_portrait(&traj);
            let path = out.join("portrait.csv");
            csv_io::write_portrait(&path, &points)?;
            if cli.svg {
                let pairs: Vec<(f64, f64)> =
                    points.iter().map(|p| (p.phase_diff, p.current)).collect();
                svg::scatter_plot(
                    &out.join("portrait.svg"),
                    "Phase portrait",
                    "arg A - arg B",
                    "I",
                    &pairs,
                )?;
            }
            println!(
                "portrait g={} K={} omega={} periods={}: {} points ({} skipped) -> {}",
                params.g,
                params.k,
                params.omega,
                numerics.horizon_periods,
                points.len(),
                skipped,
                path.display()
            );
        }
        Command::Twin { delta } => {
            let (base, twin) = twin_trajectory_divergence(&initial, *delta, &params, &numerics)?;
            let path = out.join("twin.csv");
            csv_io::write_twin(&path, &base.times, &base.currents, &twin.currents)?;
            if cli.svg {
                svg::line_plot(
                    &out.join("twin.svg"),
                    "Twin trajectories",
                    "t",
                    "I(t)",
                    &base.times,
                    &[("current", &base.currents), ("perturbed", &twin.currents)],
                )?;
            }
            let max_dev = base
                .currents
                .iter()
                .zip(&twin.currents)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            println!(
                "twin g={} K={} omega={} delta={}: max |I - I~| = {:.6} -> {}",
                params.g,
                params.k,
                params.omega,
                delta,
                max_dev,
                path.display()
            );
        }
    }
    Ok(())
}
