//! Instability fidelity of the full GP dynamics: IF = 1 - min_t |<psi|psi~>|
//! for a slightly perturbed initial state. IF peaks at the transition point;
//! the trapped regime keeps an elevated plateau, the zero-current regime is
//! orders of magnitude quieter. Needs a couple of thousand drive periods to
//! develop, so this example takes a few minutes.

use ring_ratchet::analysis::instability_fidelity;
use ring_ratchet::model::{DriveParams, NumericsConfig};

fn main() {
    let cfg = NumericsConfig::default()
        .with_grid(64)
        .with_horizon(2000)
        .with_stride(10);
    println!("g      IF");
    for g in [0.03, 0.06, 0.09, 0.12, 0.2] {
        let p = DriveParams::new(g, 2.0, 10.0).unwrap();
        let fid = instability_fidelity(&p, &cfg, 1e-5).unwrap();
        println!("{g:<6} {fid:.3e}");
    }
}
