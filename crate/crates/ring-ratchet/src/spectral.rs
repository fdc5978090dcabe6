//! Split-step Fourier evolution of the driven Gross-Pitaevskii equation
//!
//! ```text
//! i d(psi)/dt = [ -1/2 d^2/dx^2 + g |psi|^2 + K sin(omega t) sin(x) ] psi
//! ```
//!
//! on the periodic grid, plus the grid-level observables: ring current,
//! momentum-mode populations, overlap fidelity and energy.
//!
//! Momentum coefficients follow the plane-wave basis phi_n = e^{inx}/sqrt(2 pi),
//! so c_n = sqrt(2 pi)/N * F_n with F the unnormalized forward DFT.
//! Wavenumbers are ordered (0, 1, ..., N/2-1, -N/2, ..., -1); the n = -N/2
//! bin participates in the kinetic factor but is excluded from observables.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::model::{drive_potential, DriveParams, NumericsConfig, WaveField};

/// Sampled observables of a full GP run.
#[derive(Debug, Clone)]
pub struct GpTrajectory {
    pub times: Vec<f64>,
    pub currents: Vec<f64>,
    /// |c_n|^2 for n = -1, 0, +1 at each sample.
    pub populations: Vec<[f64; 3]>,
    /// Spectral weight outside n in {-1, 0, 1} at each sample.
    pub tail_weight: Vec<f64>,
    pub final_field: WaveField,
}

impl GpTrajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// FFT bin index -> signed wavenumber.
pub(crate) fn bin_to_mode(k: usize, n: usize) -> i64 {
    if k < n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

pub(crate) struct FftPair {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    scratch: Vec<Complex64>,
}

impl FftPair {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let scratch_len = fwd
            .get_inplace_scratch_len()
            .max(inv.get_inplace_scratch_len());
        FftPair {
            n,
            fwd,
            inv,
            scratch: vec![Complex64::new(0.0, 0.0); scratch_len],
        }
    }

    pub fn forward(&mut self, buf: &mut [Complex64]) {
        self.fwd.process_with_scratch(buf, &mut self.scratch);
    }

    /// Inverse transform including the 1/N normalization.
    pub fn inverse(&mut self, buf: &mut [Complex64]) {
        self.inv.process_with_scratch(buf, &mut self.scratch);
        let s = 1.0 / self.n as f64;
        for v in buf.iter_mut() {
            *v *= s;
        }
    }

    /// Basis coefficients c_n (FFT bin order) of a field.
    pub fn mode_coefficients(&mut self, field: &WaveField) -> Vec<Complex64> {
        let mut buf = field.samples.clone();
        self.forward(&mut buf);
        let s = TAU.sqrt() / self.n as f64;
        for v in buf.iter_mut() {
            *v *= s;
        }
        buf
    }
}

/// One observable sample of a GP field.
#[derive(Debug, Clone, Copy)]
pub struct GpSample {
    pub current: f64,
    pub populations: [f64; 3],
    pub tail_weight: f64,
}

/// Reusable stepper for the symmetric split-step scheme. Owns the FFT plans
/// and the precomputed half-step kinetic phases for a fixed `dt`; one stepper
/// may advance several fields of the same grid size in lockstep.
pub struct GpStepper {
    fft: FftPair,
    params: DriveParams,
    dt: f64,
    kinetic_half: Vec<Complex64>,
    x: Vec<f64>,
    steps_taken: usize,
}

impl GpStepper {
    pub fn new(grid_points: usize, params: DriveParams, dt: f64) -> Self {
        let kinetic_half = (0..grid_points)
            .map(|k| {
                let n = bin_to_mode(k, grid_points) as f64;
                Complex64::from_polar(1.0, -n * n / 2.0 * dt / 2.0)
            })
            .collect();
        let x = (0..grid_points)
            .map(|j| TAU * j as f64 / grid_points as f64)
            .collect();
        GpStepper {
            fft: FftPair::new(grid_points),
            params,
            dt,
            kinetic_half,
            x,
            steps_taken: 0,
        }
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Advance `field` by one Strang step: half kinetic, full diagonal
    /// (nonlinearity + drive at the substep midpoint), half kinetic.
    /// Each factor is a pure phase, so the norm is conserved to round-off.
    pub fn step(&mut self, field: &mut WaveField) -> Result<()> {
        let t_mid = field.current_time + 0.5 * self.dt;
        self.half_kinetic(&mut field.samples);
        let g = self.params.g;
        for (v, &x) in field.samples.iter_mut().zip(&self.x) {
            let phase = -(g * v.norm_sqr() + drive_potential(x, t_mid, &self.params)) * self.dt;
            *v *= Complex64::from_polar(1.0, phase);
        }
        self.half_kinetic(&mut field.samples);
        field.current_time += self.dt;
        self.steps_taken += 1;
        if !field.is_finite() {
            return Err(Error::NumericalBlowup {
                step: self.steps_taken,
                time: field.current_time,
            });
        }
        Ok(())
    }

    fn half_kinetic(&mut self, samples: &mut [Complex64]) {
        self.fft.forward(samples);
        for (v, ph) in samples.iter_mut().zip(&self.kinetic_half) {
            *v *= ph;
        }
        self.fft.inverse(samples);
    }

    /// Spectral observables of a field on this stepper's grid.
    pub fn measure(&mut self, field: &WaveField) -> GpSample {
        let coeffs = self.fft.mode_coefficients(field);
        sample_from_coeffs(&coeffs)
    }
}

fn sample_from_coeffs(coeffs: &[Complex64]) -> GpSample {
    let n = coeffs.len();
    let mut current = 0.0;
    let mut populations = [0.0; 3];
    let mut tail = 0.0;
    for (k, c) in coeffs.iter().enumerate() {
        let mode = bin_to_mode(k, n);
        let w = c.norm_sqr();
        if mode == -(n as i64) / 2 {
            continue; // unpaired Nyquist mode, excluded from observables
        }
        current += mode as f64 * w;
        match mode {
            -1 => populations[0] += w,
            0 => populations[1] += w,
            1 => populations[2] += w,
            _ => tail += w,
        }
    }
    GpSample {
        current,
        populations,
        tail_weight: tail,
    }
}

/// Advance a field by a single split step. Convenience wrapper that builds a
/// one-shot stepper; long runs should use [`gp_evolve`] or [`GpStepper`].
pub fn gp_step(field: &WaveField, t: f64, dt: f64, params: &DriveParams) -> Result<WaveField> {
    if dt <= 0.0 {
        return Err(Error::InvalidArgument(format!("dt must be > 0, got {dt}")));
    }
    let mut out = field.clone();
    out.current_time = t;
    let mut stepper = GpStepper::new(field.grid_points(), *params, dt);
    stepper.step(&mut out)?;
    Ok(out)
}

/// Integrate the GP equation over `cfg.horizon_periods` drive periods with
/// dt = T / steps_per_period, recording observables at t = 0, every
/// `sample_stride` steps, and at the final step.
pub fn gp_evolve(
    initial: &WaveField,
    params: &DriveParams,
    cfg: &NumericsConfig,
) -> Result<GpTrajectory> {
    params.validate()?;
    cfg.validate()?;
    if initial.grid_points() != cfg.grid_points {
        return Err(Error::InvalidArgument(format!(
            "field grid {} does not match cfg grid {}",
            initial.grid_points(),
            cfg.grid_points
        )));
    }
    let dt = params.period() / cfg.steps_per_period as f64;
    let total_steps = cfg.horizon_periods * cfg.steps_per_period;
    let t0 = initial.current_time;

    let mut field = initial.clone();
    let mut stepper = GpStepper::new(cfg.grid_points, *params, dt);
    let n_samples = total_steps / cfg.sample_stride + 2;
    let mut traj = GpTrajectory {
        times: Vec::with_capacity(n_samples),
        currents: Vec::with_capacity(n_samples),
        populations: Vec::with_capacity(n_samples),
        tail_weight: Vec::with_capacity(n_samples),
        final_field: initial.clone(),
    };

    let mut record = |stepper: &mut GpStepper, field: &WaveField, t: f64| {
        let s = stepper.measure(field);
        traj.times.push(t);
        traj.currents.push(s.current);
        traj.populations.push(s.populations);
        traj.tail_weight.push(s.tail_weight);
    };

    record(&mut stepper, &field, t0);
    for i in 1..=total_steps {
        stepper.step(&mut field)?;
        // recompute t from the step count so sample times stay exact
        field.current_time = t0 + i as f64 * dt;
        if i % cfg.sample_stride == 0 || i == total_steps {
            record(&mut stepper, &field, field.current_time);
        }
    }
    traj.final_field = field;
    Ok(traj)
}

/// Ring current I = <psi| -i d/dx |psi> = sum_n n |c_n|^2, computed spectrally.
pub fn current(field: &WaveField) -> f64 {
    let mut fft = FftPair::new(field.grid_points());
    sample_from_coeffs(&fft.mode_coefficients(field)).current
}

/// Populations |c_n|^2 for n in [-n_max, n_max], lowest mode first.
pub fn mode_populations(field: &WaveField, n_max: usize) -> Result<Vec<f64>> {
    let n = field.grid_points();
    if n_max >= n / 2 {
        return Err(Error::InvalidArgument(format!(
            "n_max = {n_max} out of range for grid of {n} points"
        )));
    }
    let mut fft = FftPair::new(n);
    let coeffs = fft.mode_coefficients(field);
    let mut out = Vec::with_capacity(2 * n_max + 1);
    for m in -(n_max as i64)..=(n_max as i64) {
        let k = m.rem_euclid(n as i64) as usize;
        out.push(coeffs[k].norm_sqr());
    }
    Ok(out)
}

/// Overlap modulus |integral a* b dx| in [0, 1] for normalized fields.
pub fn fidelity_overlap(a: &WaveField, b: &WaveField) -> Result<f64> {
    if a.grid_points() != b.grid_points() {
        return Err(Error::InvalidArgument(format!(
            "grid mismatch: {} vs {}",
            a.grid_points(),
            b.grid_points()
        )));
    }
    Ok(overlap_modulus(a, b))
}

pub(crate) fn overlap_modulus(a: &WaveField, b: &WaveField) -> f64 {
    let acc: Complex64 = a
        .samples
        .iter()
        .zip(&b.samples)
        .map(|(x, y)| x.conj() * y)
        .sum();
    (a.dx() * acc).norm()
}

/// GP energy functional without the drive term:
/// E = sum_n n^2/2 |c_n|^2 + g/2 * dx * sum_j |psi_j|^4.
/// Conserved along [`gp_evolve`] when K = 0.
pub fn gp_energy(field: &WaveField, g: f64) -> f64 {
    let n = field.grid_points();
    let mut fft = FftPair::new(n);
    let coeffs = fft.mode_coefficients(field);
    let kinetic: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let m = bin_to_mode(k, n) as f64;
            m * m / 2.0 * c.norm_sqr()
        })
        .sum();
    let quartic: f64 = field.samples.iter().map(|z| z.norm_sqr().powi(2)).sum();
    kinetic + 0.5 * g * field.dx() * quartic
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{make_two_mode_state, state_to_field, ThreeModeState};
    use approx::assert_abs_diff_eq;

    fn plane_wave(n_mode: i64, grid: usize) -> WaveField {
        let samples = (0..grid)
            .map(|j| {
                let x = TAU * j as f64 / grid as f64;
                Complex64::from_polar(1.0 / TAU.sqrt(), n_mode as f64 * x)
            })
            .collect();
        WaveField {
            samples,
            current_time: 0.0,
        }
    }

    #[test]
    fn free_plane_wave_is_kinetic_eigenstate() {
        let params = DriveParams::new(0.0, 0.0, 10.0).unwrap();
        let mut field = plane_wave(1, 64);
        let dt = 1e-3;
        let mut stepper = GpStepper::new(64, params, dt);
        for _ in 0..500 {
            stepper.step(&mut field).unwrap();
        }
        let t = 500.0 * dt;
        assert_abs_diff_eq!(current(&field), 1.0, epsilon = 1e-12);
        let pops = mode_populations(&field, 2).unwrap();
        assert_abs_diff_eq!(pops[3], 1.0, epsilon = 1e-12);
        // phase advances by e^{-i t/2}
        let expect = Complex64::from_polar(1.0 / TAU.sqrt(), -t / 2.0);
        assert_abs_diff_eq!((field.samples[0] - expect).norm(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn zero_g_evolution_is_linear() {
        let params = DriveParams::new(0.0, 2.0, 10.0).unwrap();
        let f1 = plane_wave(0, 64);
        let f2 = plane_wave(-1, 64);
        let sum = WaveField {
            samples: f1
                .samples
                .iter()
                .zip(&f2.samples)
                .map(|(a, b)| a + b)
                .collect(),
            current_time: 0.0,
        };
        let dt = 1e-3;
        let g1 = gp_step(&f1, 0.0, dt, &params).unwrap();
        let g2 = gp_step(&f2, 0.0, dt, &params).unwrap();
        let gs = gp_step(&sum, 0.0, dt, &params).unwrap();
        for j in 0..64 {
            let lin = g1.samples[j] + g2.samples[j];
            assert_abs_diff_eq!((gs.samples[j] - lin).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn norm_conserved_over_one_period() {
        let params = DriveParams::new(0.1, 2.0, 10.0).unwrap();
        let cfg = NumericsConfig::default().with_horizon(1);
        let field = state_to_field(&ThreeModeState::ews(), &cfg);
        let traj = gp_evolve(&field, &params, &cfg).unwrap();
        assert_abs_diff_eq!(traj.final_field.norm_sq(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn current_examples() {
        let cfg = NumericsConfig::default().with_grid(64);
        let ews = state_to_field(&ThreeModeState::ews(), &cfg);
        assert_abs_diff_eq!(current(&ews), -0.5, epsilon = 1e-12);
        let uews = state_to_field(&make_two_mode_state(0.7, 0.3, 0.0).unwrap(), &cfg);
        assert_abs_diff_eq!(current(&uews), -0.7, epsilon = 1e-12);
        assert_abs_diff_eq!(current(&plane_wave(1, 64)), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn mode_population_examples() {
        let cfg = NumericsConfig::default().with_grid(64);
        let ews = state_to_field(&ThreeModeState::ews(), &cfg);
        let pops = mode_populations(&ews, 2).unwrap();
        let expect = [0.0, 0.5, 0.5, 0.0, 0.0];
        for (p, e) in pops.iter().zip(expect) {
            assert_abs_diff_eq!(*p, e, epsilon = 1e-13);
        }
        let flat = state_to_field(
            &ThreeModeState::new(0.0.into(), 1.0.into(), 0.0.into()),
            &cfg,
        );
        assert_abs_diff_eq!(mode_populations(&flat, 1).unwrap()[1], 1.0, epsilon = 1e-13);
        assert!(mode_populations(&flat, 32).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let cfg = NumericsConfig::default().with_grid(64);
        let f = state_to_field(&ThreeModeState::ews(), &cfg);
        assert_abs_diff_eq!(fidelity_overlap(&f, &f).unwrap(), 1.0, epsilon = 1e-12);
        let p1 = plane_wave(1, 64);
        let p0 = plane_wave(0, 64);
        assert_abs_diff_eq!(fidelity_overlap(&p1, &p0).unwrap(), 0.0, epsilon = 1e-12);
        let rotated = WaveField {
            samples: f
                .samples
                .iter()
                .map(|z| z * Complex64::from_polar(1.0, 1.234))
                .collect(),
            current_time: 0.0,
        };
        assert_abs_diff_eq!(
            fidelity_overlap(&f, &rotated).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        let small = plane_wave(0, 32);
        assert!(fidelity_overlap(&f, &small).is_err());
    }

    #[test]
    fn spectral_identity_current_equals_weighted_populations() {
        // mixed-mode field: weights over n = -2..2
        let cfg = NumericsConfig::default().with_grid(64);
        let mut f = state_to_field(&ThreeModeState::ews(), &cfg);
        for (j, z) in f.samples.iter_mut().enumerate() {
            let x = TAU * j as f64 / 64.0;
            *z += 0.3 * Complex64::from_polar(1.0 / TAU.sqrt(), 2.0 * x);
        }
        let pops = mode_populations(&f, 31).unwrap();
        let weighted: f64 = pops
            .iter()
            .enumerate()
            .map(|(i, p)| (i as i64 - 31) as f64 * p)
            .sum();
        assert_abs_diff_eq!(current(&f), weighted, epsilon = 1e-12);
    }

    #[test]
    fn projection_round_trip() {
        for grid in [16usize, 64, 256] {
            let cfg = NumericsConfig::default().with_grid(grid);
            let s = make_two_mode_state(0.3, 0.7, 0.9).unwrap();
            let f = state_to_field(&s, &cfg);
            let pops = mode_populations(&f, 1).unwrap();
            assert_abs_diff_eq!(pops[0], 0.3, epsilon = 1e-12);
            assert_abs_diff_eq!(pops[1], 0.7, epsilon = 1e-12);
            assert_abs_diff_eq!(pops[2], 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn blowup_detected() {
        let params = DriveParams::new(0.1, 2.0, 10.0).unwrap();
        let cfg = NumericsConfig::default().with_grid(16);
        let mut f = state_to_field(&ThreeModeState::ews(), &cfg);
        f.samples[3] = Complex64::new(f64::NAN, 0.0);
        let err = gp_step(&f, 0.0, 1e-3, &params).unwrap_err();
        assert!(matches!(err, Error::NumericalBlowup { .. }));
    }
}
