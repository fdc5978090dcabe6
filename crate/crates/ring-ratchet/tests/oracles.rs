//! Independent cross-checks of the solver kernels: grid-projection oracle
//! for the three-mode equations, quadrature oracle for the closed-form
//! energy, finite-difference oracle for the tangent flow, and convergence
//! order checks for both integrators.

use std::f64::consts::TAU;

use num_complex::Complex64;
use ring_ratchet::model::{
    drive_potential, DriveParams, NumericsConfig, TangentVector, ThreeModeState,
};
use ring_ratchet::tangent::propagate_tangent;
use ring_ratchet::three_mode::{effective_energy, tmm_evolve, tmm_rhs};
use ring_ratchet::{current, gp_evolve, state_to_field};

fn params(g: f64, k: f64, omega: f64) -> DriveParams {
    DriveParams::new(g, k, omega).unwrap()
}

/// The three-mode right-hand side must equal the Galerkin projection of the
/// full GP right-hand side evaluated on the three-mode field. Everything
/// here is built from the defining formulas, independent of the solver code:
/// the field and its second derivative come from the ansatz in closed form,
/// and the projection integral is a plain rectangle sum, which is exact for
/// the band-limited integrand (modes within +-3 on a 64-point grid).
#[test]
fn tmm_rhs_matches_grid_projection_of_gp_rhs() {
    let p = params(0.17, 2.3, 9.0);
    let t = 0.37;
    let state = ThreeModeState::new(
        Complex64::new(0.55, -0.21),
        Complex64::new(0.34, 0.48),
        Complex64::new(-0.12, 0.53),
    )
    .normalized();
    let (a, b, c) = (state.a, state.b, state.c);

    let n = 64usize;
    let dx = TAU / n as f64;
    let basis_norm = 1.0 / TAU.sqrt();
    let mut projected = [Complex64::new(0.0, 0.0); 3];
    for j in 0..n {
        let x = dx * j as f64;
        let e = Complex64::from_polar(1.0, x);
        let psi = basis_norm * (a * e.conj() + b + c * e);
        // -1/2 psi'' of the ansatz, in closed form
        let kinetic = basis_norm * 0.5 * (a * e.conj() + c * e);
        let psi_dot =
            -Complex64::i() * (kinetic + (p.g * psi.norm_sqr() + drive_potential(x, t, &p)) * psi);
        for (slot, mode) in projected.iter_mut().zip([-1.0f64, 0.0, 1.0]) {
            *slot += dx * basis_norm * Complex64::from_polar(1.0, -mode * x) * psi_dot;
        }
    }

    let rhs = tmm_rhs(&state, t, &p);
    for (got, want) in [rhs.a, rhs.b, rhs.c].iter().zip(projected) {
        assert!(
            (got - want).norm() < 1e-14,
            "projection mismatch: got {got}, want {want}"
        );
    }
}

/// Closed-form three-mode energy vs direct quadrature of the energy density
/// 1/2 |psi'|^2 + g/2 |psi|^4 + V |psi|^2 built from the ansatz.
#[test]
fn effective_energy_matches_quadrature() {
    let p = params(0.2, 2.0, 10.0);
    let t = 1.234;
    for state in [
        ThreeModeState::ews(),
        ThreeModeState::uews(),
        ThreeModeState::new(
            Complex64::new(0.4, 0.3),
            Complex64::new(-0.5, 0.2),
            Complex64::new(0.1, -0.6),
        )
        .normalized(),
    ] {
        let (a, b, c) = (state.a, state.b, state.c);
        let n = 256usize;
        let dx = TAU / n as f64;
        let basis_norm = 1.0 / TAU.sqrt();
        let mut quad = 0.0;
        for j in 0..n {
            let x = dx * j as f64;
            let e = Complex64::from_polar(1.0, x);
            let psi = basis_norm * (a * e.conj() + b + c * e);
            let dpsi = basis_norm * Complex64::i() * (c * e - a * e.conj());
            quad += dx
                * (0.5 * dpsi.norm_sqr()
                    + 0.5 * p.g * psi.norm_sqr().powi(2)
                    + drive_potential(x, t, &p) * psi.norm_sqr());
        }
        let closed = effective_energy(&state, t, &p);
        assert!(
            (closed - quad).abs() < 1e-10,
            "energy mismatch: closed {closed}, quadrature {quad}"
        );
    }
}

/// The co-integrated tangent vector must reproduce the population deviation
/// between two full trajectories separated by eps0 at t = 5 periods.
#[test]
fn tangent_flow_matches_finite_difference() {
    let p = params(0.1, 2.0, 10.0);
    let cfg = NumericsConfig::default().with_horizon(5).with_stride(1000);
    let initial = ThreeModeState::ews();
    let eps0 = TangentVector::uniform(1e-8);

    let (final_state, final_eps) = propagate_tangent(&initial, &eps0, &p, &cfg).unwrap();
    let predicted = 2.0 * (final_state.a.conj() * final_eps.da).re + final_eps.da.norm_sqr();

    let shifted = ThreeModeState::new(
        initial.a + eps0.da,
        initial.b + eps0.db,
        initial.c + eps0.dc,
    );
    let base = tmm_evolve(&initial, &p, &cfg).unwrap();
    let other = tmm_evolve(&shifted, &p, &cfg).unwrap();
    let fd = other.states.last().unwrap().a.norm_sqr() - base.states.last().unwrap().a.norm_sqr();

    let rel = (predicted - fd).abs() / fd.abs();
    assert!(
        rel < 1e-3,
        "tangent prediction {predicted:e} vs finite difference {fd:e} (rel {rel:e})"
    );
}

/// Expanded and literal forms of dP_{-1} agree once |dA| is large enough
/// for the difference of squares to be representable.
#[test]
fn population_deviation_forms_agree() {
    let p = params(0.1, 2.0, 10.0);
    let cfg = NumericsConfig::default().with_horizon(3).with_stride(1000);
    let (state, eps) = propagate_tangent(
        &ThreeModeState::ews(),
        &TangentVector::uniform(1e-7),
        &p,
        &cfg,
    )
    .unwrap();
    assert!(eps.da.norm() < 1e-6);
    let literal = (state.a + eps.da).norm_sqr() - state.a.norm_sqr();
    let expanded = 2.0 * (state.a.conj() * eps.da).re + eps.da.norm_sqr();
    assert!(
        (literal - expanded).abs() / expanded.abs() < 1e-8,
        "literal {literal:e} vs expanded {expanded:e}"
    );
}

/// Strang splitting is second order: halving dt shrinks the current error
/// at t = 10 periods by about 4x.
#[test]
fn strang_splitting_is_second_order() {
    let p = params(0.05, 2.0, 10.0);
    let base = NumericsConfig::default()
        .with_grid(64)
        .with_horizon(10)
        .with_stride(100_000);
    let run = |spp: usize| {
        let cfg = base.with_steps_per_period(spp);
        let field = state_to_field(&ThreeModeState::ews(), &cfg);
        let traj = gp_evolve(&field, &p, &cfg).unwrap();
        current(&traj.final_field)
    };
    let reference = run(1600);
    let e1 = (run(100) - reference).abs();
    let e2 = (run(200) - reference).abs();
    let ratio = e1 / e2;
    assert!(
        (3.0..6.0).contains(&ratio),
        "expected ~4x error reduction, got {ratio} (e1 {e1:e}, e2 {e2:e})"
    );
}

/// RK4 is fourth order: halving dt shrinks the state error at t = 10
/// periods by about 16x.
#[test]
fn rk4_is_fourth_order() {
    let p = params(0.05, 2.0, 10.0);
    let base = NumericsConfig::default()
        .with_horizon(10)
        .with_stride(100_000);
    let run = |spp: usize| {
        let cfg = base.with_steps_per_period(spp);
        *tmm_evolve(&ThreeModeState::ews(), &p, &cfg)
            .unwrap()
            .states
            .last()
            .unwrap()
    };
    let reference = run(1600);
    let err = |s: ThreeModeState| {
        ((s.a - reference.a).norm_sqr()
            + (s.b - reference.b).norm_sqr()
            + (s.c - reference.c).norm_sqr())
        .sqrt()
    };
    let e1 = err(run(100));
    let e2 = err(run(200));
    let ratio = e1 / e2;
    assert!(
        (11.0..22.0).contains(&ratio),
        "expected ~16x error reduction, got {ratio} (e1 {e1:e}, e2 {e2:e})"
    );
}

/// GP and three-mode currents agree over the first 50 periods in the
/// regime where three modes dominate.
#[test]
fn gp_and_tmm_currents_agree_at_small_g() {
    for g in [0.1, 0.2] {
        let p = params(g, 2.0, 10.0);
        let cfg = NumericsConfig::default().with_horizon(50);
        let field = state_to_field(&ThreeModeState::ews(), &cfg);
        let gp = gp_evolve(&field, &p, &cfg).unwrap();
        let tmm = tmm_evolve(&ThreeModeState::ews(), &p, &cfg).unwrap();
        assert_eq!(gp.times.len(), tmm.times.len());
        let mse: f64 = gp
            .currents
            .iter()
            .zip(&tmm.currents)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            / gp.currents.len() as f64;
        let rms = mse.sqrt();
        assert!(rms < 0.05, "g = {g}: GP-TMM current RMS {rms}");
    }
}
