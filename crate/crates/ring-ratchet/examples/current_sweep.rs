//! Time-averaged current versus drive amplitude K: the trapped branch
//! below the critical amplitude, the zero branch above it.

use ring_ratchet::analysis::{sweep, Engine, SweepParam};
use ring_ratchet::model::{DriveParams, NumericsConfig};

fn main() {
    let base = DriveParams::new(0.1, 2.0, 10.0).unwrap();
    let cfg = NumericsConfig::default()
        .with_horizon(1000)
        .with_stride(100);
    let grid: Vec<f64> = (0..=12).map(|i| 1.6 + 0.1 * i as f64).collect();
    let result = sweep(SweepParam::K, &grid, &base, &cfg, Engine::Tmm).unwrap();
    println!("K      TAC");
    for (k, tac) in result.values.iter().zip(&result.tac) {
        let bar = "#".repeat((tac.abs() * 40.0) as usize);
        println!("{k:<5.1}  {tac:+.3}  {bar}");
    }
}
