//! Cross-validate the reduced three-mode model against the full
//! split-step Gross-Pitaevskii solver over the first 100 drive periods.

use ring_ratchet::model::{DriveParams, NumericsConfig, ThreeModeState};
use ring_ratchet::{gp_evolve, state_to_field, tmm_evolve};

fn main() {
    let cfg = NumericsConfig::default().with_horizon(100).with_stride(100);
    for g in [0.05, 0.1, 0.2] {
        let p = DriveParams::new(g, 2.0, 10.0).unwrap();
        let field = state_to_field(&ThreeModeState::ews(), &cfg);
        let gp = gp_evolve(&field, &p, &cfg).unwrap();
        let tmm = tmm_evolve(&ThreeModeState::ews(), &p, &cfg).unwrap();
        let rms = (gp
            .currents
            .iter()
            .zip(&tmm.currents)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            / gp.currents.len() as f64)
            .sqrt();
        let tail = gp.tail_weight.iter().cloned().fold(0.0, f64::max);
        println!(
            "g={g:<5} current RMS(GP - TMM) = {rms:.2e}, max weight outside 3 modes = {tail:.2e}"
        );
    }
}
