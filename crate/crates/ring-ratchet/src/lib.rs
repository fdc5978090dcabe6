//! Mean-field dynamics of a Bose-Einstein condensate on a ring under a
//! zero-mean periodic drive.
//!
//! Two solvers share a common set of domain types:
//!
//! * [`spectral`] — full Gross-Pitaevskii evolution on a periodic grid via
//!   symmetric split-step Fourier integration,
//! * [`three_mode`] — the reduced model keeping only the momentum modes
//!   n = -1, 0, +1, integrated with fixed-step RK4.
//!
//! On top of these, [`tangent`] co-integrates the linearized perturbation
//! equations along a three-mode trajectory and estimates the Lyapunov
//! exponent, and [`analysis`] provides the experiment-level observables:
//! time-averaged current, fidelity-based instability, parameter sweeps,
//! transition-point bisection and phase portraits.
//!
//! Everything is dimensionless (hbar = 1); the domain is x in [0, 2*pi).
//! The drive potential is K sin(omega t) sin(x), which has zero mean in
//! both space and time, so any directed current is a genuine ratchet
//! effect of the nonlinearity.
//!
//! See the crate `examples/` directory for one runnable program per major
//! capability, and the `ring-ratchet` binary for a batch CLI over the same
//! operations.

pub mod analysis;
pub mod cli;
pub mod config;
pub mod csv_io;
pub mod error;
pub mod model;
pub mod spectral;
pub mod svg;
pub mod tangent;
pub mod three_mode;

pub use analysis::{Engine, PortraitPoint, SweepParam, SweepResult};
pub use error::{Error, Result};
pub use model::{
    drive_potential, make_two_mode_state, state_to_field, DriveParams, NumericsConfig,
    TangentVector, ThreeModeState, WaveField,
};
pub use spectral::{current, fidelity_overlap, gp_evolve, gp_step, mode_populations, GpTrajectory};
pub use tangent::{evolve_with_tangent, lyapunov_exponent, LyapunovMethod, LyapunovRecord};
pub use three_mode::{effective_energy, tmm_current, tmm_evolve, tmm_rhs, TmmTrajectory};
