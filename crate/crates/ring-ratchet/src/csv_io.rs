//! Deterministic CSV serialization of results. Column names and order are
//! part of the contract; floats are written with 17 significant digits so
//! identical runs produce byte-identical files.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::analysis::{PortraitPoint, SweepResult};
use crate::error::Result;
use crate::spectral::GpTrajectory;
use crate::tangent::LyapunovRecord;
use crate::three_mode::TmmTrajectory;

pub const TIME_SERIES_HEADER: &str = "time,current,p_minus1,p_0,p_plus1";
pub const LYAPUNOV_HEADER: &str = "time,log_ratio";
pub const SWEEP_HEADER: &str = "param_value,tac";
pub const PORTRAIT_HEADER: &str = "current,phase_diff";
pub const TWIN_HEADER: &str = "time,current,current_perturbed";

/// 17 significant digits: round-trips any f64 exactly.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn writer(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn write_rows<W: Write>(
    mut w: W,
    header: &str,
    rows: impl Iterator<Item = Vec<f64>>,
) -> std::io::Result<()> {
    writeln!(w, "{header}")?;
    for row in rows {
        let line: Vec<String> = row.into_iter().map(fmt_float).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn write_gp_trajectory(path: &Path, traj: &GpTrajectory) -> Result<()> {
    let rows = traj.times.iter().enumerate().map(|(i, &t)| {
        let p = traj.populations[i];
        vec![t, traj.currents[i], p[0], p[1], p[2]]
    });
    write_rows(writer(path)?, TIME_SERIES_HEADER, rows)?;
    Ok(())
}

pub fn write_tmm_trajectory(path: &Path, traj: &TmmTrajectory) -> Result<()> {
    let rows = traj.times.iter().enumerate().map(|(i, &t)| {
        let p = traj.populations[i];
        vec![t, traj.currents[i], p[0], p[1], p[2]]
    });
    write_rows(writer(path)?, TIME_SERIES_HEADER, rows)?;
    Ok(())
}

pub fn write_lyapunov(path: &Path, record: &LyapunovRecord) -> Result<()> {
    let rows = record
        .times
        .iter()
        .zip(&record.log_ratio)
        .map(|(&t, &y)| vec![t, y]);
    write_rows(writer(path)?, LYAPUNOV_HEADER, rows)?;
    Ok(())
}

pub fn write_sweep(path: &Path, result: &SweepResult) -> Result<()> {
    let rows = result
        .values
        .iter()
        .zip(&result.tac)
        .map(|(&v, &tac)| vec![v, tac]);
    write_rows(writer(path)?, SWEEP_HEADER, rows)?;
    Ok(())
}

pub fn write_portrait(path: &Path, points: &[PortraitPoint]) -> Result<()> {
    let rows = points.iter().map(|p| vec![p.current, p.phase_diff]);
    write_rows(writer(path)?, PORTRAIT_HEADER, rows)?;
    Ok(())
}

pub fn write_twin(path: &Path, times: &[f64], base: &[f64], perturbed: &[f64]) -> Result<()> {
    let rows = times
        .iter()
        .zip(base.iter().zip(perturbed))
        .map(|(&t, (&a, &b))| vec![t, a, b]);
    write_rows(writer(path)?, TWIN_HEADER, rows)?;
    Ok(())
}
