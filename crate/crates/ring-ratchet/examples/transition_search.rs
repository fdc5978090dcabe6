//! Bisect the critical nonlinearity where the time-averaged current jumps
//! from the zero branch to the trapped branch. The classification horizon
//! here is shorter than the production default, trading a little accuracy
//! for speed.

use ring_ratchet::analysis::{find_transition, Engine, SweepParam};
use ring_ratchet::model::{DriveParams, NumericsConfig};

fn main() {
    let base = DriveParams::new(0.1, 2.0, 10.0).unwrap();
    let cfg = NumericsConfig::default().with_horizon(500).with_stride(100);
    let g_c = find_transition(SweepParam::G, 0.05, 0.2, &base, &cfg, Engine::Tmm, 0.002).unwrap();
    println!("critical nonlinearity g_c = {g_c:.4} (expected near 0.089)");

    let k_c = find_transition(SweepParam::K, 1.5, 3.0, &base, &cfg, Engine::Tmm, 0.01).unwrap();
    println!("critical drive amplitude K_c = {k_c:.3} (expected near 2.15)");
}
