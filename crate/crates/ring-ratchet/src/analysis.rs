//! Experiment-level observables: time-averaged current, fidelity-based
//! instability, parameter sweeps, transition-point bisection and phase
//! portraits. Sweep points are independent jobs and run in parallel.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{state_to_field, DriveParams, NumericsConfig, ThreeModeState};
use crate::spectral::{gp_evolve, overlap_modulus, GpStepper};
use crate::three_mode::{tmm_evolve, TmmTrajectory};

/// Which parameter a sweep or bisection varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    G,
    K,
    Omega,
}

impl SweepParam {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::G => "g",
            SweepParam::K => "K",
            SweepParam::Omega => "omega",
        }
    }

    pub fn apply(&self, base: DriveParams, value: f64) -> Result<DriveParams> {
        let mut p = base;
        match self {
            SweepParam::G => p.g = value,
            SweepParam::K => p.k = value,
            SweepParam::Omega => p.omega = value,
        }
        p.validate()?;
        Ok(p)
    }
}

impl std::str::FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "g" => Ok(SweepParam::G),
            "k" => Ok(SweepParam::K),
            "omega" | "w" => Ok(SweepParam::Omega),
            other => Err(Error::InvalidArgument(format!(
                "unknown sweep parameter '{other}' (expected g, K or omega)"
            ))),
        }
    }
}

/// Which solver backs an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Gp,
    Tmm,
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gp" => Ok(Engine::Gp),
            "tmm" => Ok(Engine::Tmm),
            other => Err(Error::InvalidArgument(format!(
                "unknown engine '{other}' (expected gp or tmm)"
            ))),
        }
    }
}

/// (parameter value -> time-averaged current) table.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub parameter: SweepParam,
    pub values: Vec<f64>,
    pub tac: Vec<f64>,
    pub transition_estimate: Option<f64>,
}

/// One point of a (current, relative phase) portrait.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PortraitPoint {
    pub current: f64,
    pub phase_diff: f64,
}

/// Finite-horizon time-averaged current: trapezoidal integral of I(t)
/// divided by the total span. Needs at least two samples.
pub fn time_averaged_current(times: &[f64], currents: &[f64]) -> Result<f64> {
    if times.len() != currents.len() {
        return Err(Error::InvalidArgument(format!(
            "times ({}) and currents ({}) differ in length",
            times.len(),
            currents.len()
        )));
    }
    if times.len() < 2 {
        return Err(Error::InvalidArgument(
            "need at least 2 samples to average".into(),
        ));
    }
    let mut integral = 0.0;
    for i in 1..times.len() {
        integral += 0.5 * (currents[i] + currents[i - 1]) * (times[i] - times[i - 1]);
    }
    Ok(integral / (times[times.len() - 1] - times[0]))
}

/// Time-averaged current from the equally weighted initial state at the
/// given parameters, by either engine.
pub fn tac_at(params: &DriveParams, cfg: &NumericsConfig, engine: Engine) -> Result<f64> {
    match engine {
        Engine::Tmm => {
            let traj = tmm_evolve(&ThreeModeState::ews(), params, cfg)?;
            time_averaged_current(&traj.times, &traj.currents)
        }
        Engine::Gp => {
            let field = state_to_field(&ThreeModeState::ews(), cfg);
            let traj = gp_evolve(&field, params, cfg)?;
            time_averaged_current(&traj.times, &traj.currents)
        }
    }
}

/// Instability of the full GP dynamics: evolve the equally weighted initial
/// state and a copy whose mode-0 coefficient is multiplied by
/// (1 + perturbation_size) then renormalized, track the overlap modulus,
/// and return IF = 1 - min_t |<psi|psi~>|.
pub fn instability_fidelity(
    params: &DriveParams,
    cfg: &NumericsConfig,
    perturbation_size: f64,
) -> Result<f64> {
    if !(perturbation_size > 0.0 && perturbation_size <= 1e-2) {
        return Err(Error::InvalidArgument(format!(
            "perturbation_size must be in (0, 1e-2], got {perturbation_size}"
        )));
    }
    params.validate()?;
    cfg.validate()?;
    let base = ThreeModeState::ews();
    let perturbed = ThreeModeState {
        b: base.b * (1.0 + perturbation_size),
        ..base
    }
    .normalized();
    let mut f1 = state_to_field(&base, cfg);
    let mut f2 = state_to_field(&perturbed, cfg);

    let dt = params.period() / cfg.steps_per_period as f64;
    let total_steps = cfg.horizon_periods * cfg.steps_per_period;
    let mut stepper = GpStepper::new(cfg.grid_points, *params, dt);
    let mut min_overlap = overlap_modulus(&f1, &f2);
    for i in 1..=total_steps {
        stepper.step(&mut f1)?;
        stepper.step(&mut f2)?;
        f1.current_time = i as f64 * dt;
        f2.current_time = f1.current_time;
        if i % cfg.sample_stride == 0 || i == total_steps {
            min_overlap = min_overlap.min(overlap_modulus(&f1, &f2));
        }
    }
    Ok(1.0 - min_overlap)
}

/// Evaluate the time-averaged current over a grid of parameter values,
/// from the equally weighted initial state, one independent run per value.
pub fn sweep(
    parameter: SweepParam,
    grid: &[f64],
    base: &DriveParams,
    cfg: &NumericsConfig,
    engine: Engine,
) -> Result<SweepResult> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument("sweep grid is empty".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "sweep grid must be strictly increasing".into(),
        ));
    }
    let tac: Result<Vec<f64>> = grid
        .par_iter()
        .map(|&v| {
            let p = parameter.apply(*base, v)?;
            tac_at(&p, cfg, engine).map_err(|e| Error::SweepPoint {
                parameter: parameter.name(),
                value: v,
                source: Box::new(e),
            })
        })
        .collect();
    Ok(SweepResult {
        parameter,
        values: grid.to_vec(),
        tac: tac?,
        transition_estimate: None,
    })
}

/// Threshold separating the zero-current branch from the trapped branch:
/// half the magnitude of the initial current of the equally weighted state.
pub const TRANSITION_THRESHOLD: f64 = 0.25;

/// Locate the parameter value where the time-averaged current switches
/// between the zero branch and the trapped branch, by bisection on the
/// classifier |TAC| > 0.25. Classification runs use 4x the configured
/// horizon: the oscillation period diverges near the transition, so short
/// averages misclassify points just below it.
pub fn find_transition(
    parameter: SweepParam,
    lo: f64,
    hi: f64,
    base: &DriveParams,
    cfg: &NumericsConfig,
    engine: Engine,
    tol: f64,
) -> Result<f64> {
    // negated comparisons double as NaN guards
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(hi > lo) || !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need lo < hi and tol > 0, got lo={lo}, hi={hi}, tol={tol}"
        )));
    }
    let long_cfg = cfg.with_horizon(cfg.horizon_periods * 4);
    let classify = |v: f64| -> Result<bool> {
        let p = parameter.apply(*base, v)?;
        let tac = tac_at(&p, &long_cfg, engine).map_err(|e| Error::SweepPoint {
            parameter: parameter.name(),
            value: v,
            source: Box::new(e),
        })?;
        Ok(tac.abs() > TRANSITION_THRESHOLD)
    };

    let c_lo = classify(lo)?;
    let c_hi = classify(hi)?;
    if c_lo == c_hi {
        return Err(Error::Bracket(format!(
            "{} = {lo} and {hi} classify identically (both {})",
            parameter.name(),
            if c_lo { "trapped" } else { "zero-current" },
        )));
    }
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if classify(mid)? == c_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Project a three-mode trajectory onto the (current, arg A - arg B) plane.
/// Returns the points plus the count of samples skipped because the phase
/// was undefined.
pub fn phase_portrait(traj: &TmmTrajectory) -> (Vec<PortraitPoint>, usize) {
    let mut points = Vec::with_capacity(traj.len());
    let mut skipped = 0;
    for (&current, phase) in traj.currents.iter().zip(&traj.phase_diff) {
        match phase {
            Some(phi) => points.push(PortraitPoint {
                current,
                phase_diff: *phi,
            }),
            None => skipped += 1,
        }
    }
    (points, skipped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::three_mode::phase_difference;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::TAU;

    #[test]
    fn tac_constant_series() {
        let times: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let currents = vec![-0.5; 10];
        assert_abs_diff_eq!(
            time_averaged_current(&times, &currents).unwrap(),
            -0.5,
            epsilon = 1e-15
        );
    }

    #[test]
    fn tac_zero_mean_oscillation() {
        let n = 20_000;
        let times: Vec<f64> = (0..=n).map(|i| TAU * i as f64 / n as f64).collect();
        let currents: Vec<f64> = times.iter().map(|t| t.sin()).collect();
        assert_abs_diff_eq!(
            time_averaged_current(&times, &currents).unwrap(),
            0.0,
            epsilon = 1e-6
        );
    }

    #[test]
    fn tac_rejects_short_series() {
        assert!(time_averaged_current(&[0.0], &[1.0]).is_err());
        assert!(time_averaged_current(&[0.0, 1.0], &[1.0]).is_err());
    }

    #[test]
    fn tac_bounded_by_extremes() {
        let times: Vec<f64> = (0..100).map(|i| i as f64 * 0.1).collect();
        let currents: Vec<f64> = times.iter().map(|t| (3.0 * t).sin() - 0.3).collect();
        let tac = time_averaged_current(&times, &currents).unwrap();
        let lo = currents.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = currents.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(tac >= lo && tac <= hi);
    }

    #[test]
    fn instability_rejects_degenerate_perturbation() {
        let params = DriveParams::new(0.1, 2.0, 10.0).unwrap();
        let cfg = NumericsConfig::default().with_horizon(1);
        assert!(instability_fidelity(&params, &cfg, 0.0).is_err());
        assert!(instability_fidelity(&params, &cfg, 0.1).is_err());
    }

    #[test]
    fn sweep_rejects_bad_grids() {
        let base = DriveParams::new(0.1, 2.0, 10.0).unwrap();
        let cfg = NumericsConfig::default().with_horizon(1);
        assert!(sweep(SweepParam::G, &[], &base, &cfg, Engine::Tmm).is_err());
        assert!(sweep(SweepParam::G, &[0.2, 0.1], &base, &cfg, Engine::Tmm).is_err());
    }

    #[test]
    fn bracket_error_when_both_ends_agree() {
        let base = DriveParams::new(0.1, 2.0, 10.0).unwrap();
        let cfg = NumericsConfig::default()
            .with_horizon(50)
            .with_steps_per_period(200)
            .with_stride(20);
        // both endpoints deep in the trapped branch
        let err =
            find_transition(SweepParam::G, 0.15, 0.2, &base, &cfg, Engine::Tmm, 0.01).unwrap_err();
        assert!(matches!(err, Error::Bracket(_)));
    }

    #[test]
    fn portrait_skips_undefined_phase() {
        let s_ok = ThreeModeState::ews();
        let s_bad = ThreeModeState::new(0.0.into(), 1.0.into(), 0.0.into());
        let traj = TmmTrajectory {
            times: vec![0.0, 1.0],
            states: vec![s_ok, s_bad],
            currents: vec![-0.5, 0.0],
            populations: vec![s_ok.populations(), s_bad.populations()],
            phase_diff: vec![phase_difference(&s_ok), phase_difference(&s_bad)],
        };
        let (points, skipped) = phase_portrait(&traj);
        assert_eq!(points.len(), 1);
        assert_eq!(skipped, 1);
        assert_abs_diff_eq!(points[0].current, -0.5);
    }

    #[test]
    fn sweep_param_parsing() {
        assert_eq!("g".parse::<SweepParam>().unwrap(), SweepParam::G);
        assert_eq!("K".parse::<SweepParam>().unwrap(), SweepParam::K);
        assert_eq!("omega".parse::<SweepParam>().unwrap(), SweepParam::Omega);
        assert!("x".parse::<SweepParam>().is_err());
        assert_eq!("gp".parse::<Engine>().unwrap(), Engine::Gp);
        assert!("fft".parse::<Engine>().is_err());
    }
}
