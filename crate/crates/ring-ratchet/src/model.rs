//! Domain types and initial-state constructors shared by both solvers.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// The dimensionless drive/interaction triple of the ring Hamiltonian:
/// nonlinearity `g`, drive amplitude `k` and drive angular frequency `omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveParams {
    pub g: f64,
    pub k: f64,
    pub omega: f64,
}

impl DriveParams {
    pub fn new(g: f64, k: f64, omega: f64) -> Result<Self> {
        let p = DriveParams { g, k, omega };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.g.is_finite() || self.g < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "g must be finite and >= 0, got {}",
                self.g
            )));
        }
        if !self.k.is_finite() || self.k < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "K must be finite and >= 0, got {}",
                self.k
            )));
        }
        if !self.omega.is_finite() || self.omega <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "omega must be finite and > 0, got {}",
                self.omega
            )));
        }
        Ok(())
    }

    /// Drive period T = 2*pi / omega.
    pub fn period(&self) -> f64 {
        TAU / self.omega
    }
}

/// Grid and stepping controls for both solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NumericsConfig {
    /// Spatial grid size for the spectral solver; power of two, >= 16.
    pub grid_points: usize,
    /// Time steps per drive period; >= 100.
    pub steps_per_period: usize,
    /// Run length in drive periods.
    pub horizon_periods: usize,
    /// Record observables every this many steps.
    pub sample_stride: usize,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        NumericsConfig {
            grid_points: 256,
            steps_per_period: 1000,
            horizon_periods: 8000,
            sample_stride: 10,
        }
    }
}

impl NumericsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 16 || !self.grid_points.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "grid_points must be a power of two >= 16, got {}",
                self.grid_points
            )));
        }
        if self.steps_per_period < 100 {
            return Err(Error::InvalidArgument(format!(
                "steps_per_period must be >= 100, got {}",
                self.steps_per_period
            )));
        }
        if self.horizon_periods < 1 {
            return Err(Error::InvalidArgument(
                "horizon_periods must be >= 1".into(),
            ));
        }
        if self.sample_stride < 1 {
            return Err(Error::InvalidArgument("sample_stride must be >= 1".into()));
        }
        Ok(())
    }

    pub fn with_grid(mut self, grid_points: usize) -> Self {
        self.grid_points = grid_points;
        self
    }

    pub fn with_steps_per_period(mut self, steps: usize) -> Self {
        self.steps_per_period = steps;
        self
    }

    pub fn with_horizon(mut self, periods: usize) -> Self {
        self.horizon_periods = periods;
        self
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.sample_stride = stride;
        self
    }
}

/// Complex amplitudes of the momentum modes n = -1 (`a`), 0 (`b`), +1 (`c`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeModeState {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl ThreeModeState {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Self {
        ThreeModeState { a, b, c }
    }

    pub fn norm_sq(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm_sq().sqrt();
        ThreeModeState {
            a: self.a / n,
            b: self.b / n,
            c: self.c / n,
        }
    }

    /// Populations (|A|^2, |B|^2, |C|^2).
    pub fn populations(&self) -> [f64; 3] {
        [self.a.norm_sqr(), self.b.norm_sqr(), self.c.norm_sqr()]
    }

    pub fn is_finite(&self) -> bool {
        [self.a, self.b, self.c]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Equally weighted superposition of modes -1 and 0.
    pub fn ews() -> Self {
        make_two_mode_state(0.5, 0.5, 0.0).expect("valid weights")
    }

    /// Unequally weighted superposition A = sqrt(0.7), B = sqrt(0.3).
    pub fn uews() -> Self {
        make_two_mode_state(0.7, 0.3, 0.0).expect("valid weights")
    }

    pub(crate) fn axpy(&self, s: f64, d: &ThreeModeState) -> ThreeModeState {
        ThreeModeState {
            a: self.a + s * d.a,
            b: self.b + s * d.b,
            c: self.c + s * d.c,
        }
    }
}

/// Perturbation (dA, dB, dC) co-evolved with a [`ThreeModeState`]. Its
/// magnitude may grow or shrink exponentially; no normalization applies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVector {
    pub da: Complex64,
    pub db: Complex64,
    pub dc: Complex64,
}

impl TangentVector {
    pub fn new(da: Complex64, db: Complex64, dc: Complex64) -> Self {
        TangentVector { da, db, dc }
    }

    /// Uniform real perturbation (eps, eps, eps).
    pub fn uniform(eps: f64) -> Self {
        let z = Complex64::new(eps, 0.0);
        TangentVector {
            da: z,
            db: z,
            dc: z,
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.da.norm_sqr() + self.db.norm_sqr() + self.dc.norm_sqr()
    }

    pub fn is_finite(&self) -> bool {
        [self.da, self.db, self.dc]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn scale(&self, s: f64) -> TangentVector {
        TangentVector {
            da: s * self.da,
            db: s * self.db,
            dc: s * self.dc,
        }
    }

    pub(crate) fn axpy(&self, s: f64, d: &TangentVector) -> TangentVector {
        TangentVector {
            da: self.da + s * d.da,
            db: self.db + s * d.db,
            dc: self.dc + s * d.dc,
        }
    }
}

/// Condensate wavefunction sampled on the uniform periodic grid
/// x_j = 2*pi*j/N over [0, 2*pi).
#[derive(Debug, Clone, PartialEq)]
pub struct WaveField {
    pub samples: Vec<Complex64>,
    pub current_time: f64,
}

impl WaveField {
    pub fn grid_points(&self) -> usize {
        self.samples.len()
    }

    /// Grid spacing dx = 2*pi / N.
    pub fn dx(&self) -> f64 {
        TAU / self.samples.len() as f64
    }

    pub fn grid_x(&self, j: usize) -> f64 {
        TAU * j as f64 / self.samples.len() as f64
    }

    /// Discrete norm integral dx * sum |psi_j|^2.
    pub fn norm_sq(&self) -> f64 {
        self.dx() * self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    pub fn is_finite(&self) -> bool {
        self.samples
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Build the two-mode initial state
/// (A, B, C) = (sqrt(w_minus1) e^{i phase}, sqrt(w_0), 0).
///
/// Weights must be non-negative and sum to 1 within 1e-12; the result has
/// exactly unit norm by construction.
pub fn make_two_mode_state(w_minus1: f64, w_0: f64, relative_phase: f64) -> Result<ThreeModeState> {
    if w_minus1 < 0.0 || w_0 < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "weights must be non-negative, got ({w_minus1}, {w_0})"
        )));
    }
    if (w_minus1 + w_0 - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "weights must sum to 1, got {w_minus1} + {w_0} = {}",
            w_minus1 + w_0
        )));
    }
    let a = Complex64::from_polar(w_minus1.sqrt(), relative_phase);
    let b = Complex64::new(w_0.sqrt(), 0.0);
    Ok(ThreeModeState::new(a, b, Complex64::new(0.0, 0.0)))
}

/// Evaluate the three-mode ansatz on the grid:
/// psi(x_j) = (A e^{-i x_j} + B + C e^{i x_j}) / sqrt(2 pi).
pub fn state_to_field(state: &ThreeModeState, cfg: &NumericsConfig) -> WaveField {
    let n = cfg.grid_points;
    let norm = 1.0 / TAU.sqrt();
    let samples = (0..n)
        .map(|j| {
            let x = TAU * j as f64 / n as f64;
            let e = Complex64::from_polar(1.0, x);
            norm * (state.a * e.conj() + state.b + state.c * e)
        })
        .collect();
    WaveField {
        samples,
        current_time: 0.0,
    }
}

/// The zero-mean drive potential V(x, t) = K sin(omega t) sin(x).
pub fn drive_potential(x: f64, t: f64, params: &DriveParams) -> f64 {
    params.k * (params.omega * t).sin() * x.sin()
}

/// Wrap an angle to (-pi, pi].
pub fn wrap_angle(theta: f64) -> f64 {
    let mut y = theta % TAU;
    if y <= -PI {
        y += TAU;
    } else if y > PI {
        y -= TAU;
    }
    y
}
