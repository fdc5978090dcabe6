//! Lyapunov exponent of the driven three-mode dynamics versus nonlinearity.
//! The exponent peaks at the current phase transition. The exponents are
//! tiny, so the estimate only stabilizes over long horizons: this example
//! integrates 8000 drive periods per point and takes a few minutes.

use rayon::prelude::*;
use ring_ratchet::model::{DriveParams, NumericsConfig, TangentVector, ThreeModeState};
use ring_ratchet::tangent::{evolve_with_tangent, lyapunov_exponent, LyapunovMethod};

fn main() {
    let cfg = NumericsConfig::default()
        .with_horizon(8000)
        .with_stride(100);
    let eps0 = TangentVector::uniform(1e-20);
    let gs: Vec<f64> = (0..=10).map(|i| 0.02 * i as f64).collect();
    let lambdas: Vec<f64> = gs
        .par_iter()
        .map(|&g| {
            let p = DriveParams::new(g, 2.0, 10.0).unwrap();
            let (_, rec) = evolve_with_tangent(&ThreeModeState::ews(), &eps0, &p, &cfg).unwrap();
            lyapunov_exponent(&rec, LyapunovMethod::Slope)
        })
        .collect();
    let peak = lambdas.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    println!("g      lambda      (normalized to peak)");
    for (g, l) in gs.iter().zip(&lambdas) {
        println!("{g:<5.2}  {l:+.3e}  {:+.3}", l / peak);
    }
}
