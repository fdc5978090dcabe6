//! Phase portraits (current vs relative phase of modes -1 and 0) for the
//! equally and unequally weighted initial states, written as CSV next to
//! the working directory.

use ring_ratchet::analysis::phase_portrait;
use ring_ratchet::csv_io::write_portrait;
use ring_ratchet::model::{make_two_mode_state, DriveParams, NumericsConfig};
use ring_ratchet::tmm_evolve;

fn main() {
    let cfg = NumericsConfig::default().with_horizon(500).with_stride(20);
    for (label, w) in [("ews", 0.5), ("uews", 0.7)] {
        let initial = make_two_mode_state(w, 1.0 - w, 0.0).unwrap();
        for g in [0.05, 0.2] {
            let p = DriveParams::new(g, 2.0, 10.0).unwrap();
            let traj = tmm_evolve(&initial, &p, &cfg).unwrap();
            let (points, skipped) = phase_portrait(&traj);
            let lo = points
                .iter()
                .map(|p| p.current)
                .fold(f64::INFINITY, f64::min);
            let hi = points
                .iter()
                .map(|p| p.current)
                .fold(f64::NEG_INFINITY, f64::max);
            let path = format!("portrait_{label}_g{g}.csv");
            write_portrait(path.as_ref(), &points).unwrap();
            println!(
                "{label} g={g}: current in [{lo:+.3}, {hi:+.3}], {} points ({skipped} skipped) -> {path}",
                points.len()
            );
        }
    }
}
