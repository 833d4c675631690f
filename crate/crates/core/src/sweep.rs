//! Grid evaluation over (L, p), iso-contour extraction, and detection of the
//! loci where the distillation level or the code distance jumps.
//!
//! Cells are evaluated independently (the estimator is pure), so the grid is
//! embarrassingly parallel and the parallel result is identical to the
//! serial one.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{HardwareProfile, PhysicalConstants, ProblemInstance};
use crate::pipeline::{estimate, max_bits_within, Metric, ResourceReport};

/// Either a report or the typed error for that (L, p) cell; above-threshold
/// cells are data, not failures.
pub type GridCell = std::result::Result<ResourceReport, Error>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub bits_axis: Vec<u64>,
    pub perr_axis: Vec<f64>,
    /// Row-major: `cells[i][j]` is the cell at `(bits_axis[i], perr_axis[j])`.
    pub cells: Vec<Vec<GridCell>>,
}

impl SweepGrid {
    pub fn cell(&self, i: usize, j: usize) -> &GridCell {
        &self.cells[i][j]
    }
}

fn validate_axis<T: PartialOrd + std::fmt::Debug>(name: &str, axis: &[T]) -> Result<()> {
    for w in axis.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::InvalidInput(format!(
                "{name} axis must be strictly increasing, got {:?} then {:?}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

pub fn sweep(
    bits_axis: &[u64],
    perr_axis: &[f64],
    k: &PhysicalConstants,
    hw: &HardwareProfile,
) -> Result<SweepGrid> {
    validate_axis("bits", bits_axis)?;
    validate_axis("perr", perr_axis)?;
    let cells = bits_axis
        .par_iter()
        .map(|&bits| {
            perr_axis
                .iter()
                .map(|&p| estimate(&ProblemInstance { bits, physical_error_rate: p }, k, hw))
                .collect()
        })
        .collect();
    Ok(SweepGrid {
        bits_axis: bits_axis.to_vec(),
        perr_axis: perr_axis.to_vec(),
        cells,
    })
}

/// Reference single-threaded evaluation; the determinism contract is that
/// [`sweep`] produces exactly this grid.
pub fn sweep_serial(
    bits_axis: &[u64],
    perr_axis: &[f64],
    k: &PhysicalConstants,
    hw: &HardwareProfile,
) -> Result<SweepGrid> {
    validate_axis("bits", bits_axis)?;
    validate_axis("perr", perr_axis)?;
    let cells = bits_axis
        .iter()
        .map(|&bits| {
            perr_axis
                .iter()
                .map(|&p| estimate(&ProblemInstance { bits, physical_error_rate: p }, k, hw))
                .collect()
        })
        .collect();
    Ok(SweepGrid {
        bits_axis: bits_axis.to_vec(),
        perr_axis: perr_axis.to_vec(),
        cells,
    })
}

/// A point along a p-sweep where the plan changed between adjacent samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Discontinuity {
    pub bits: u64,
    pub perr_low: f64,
    pub perr_high: f64,
    pub level_low: u8,
    pub level_high: u8,
    pub distance_low: u32,
    pub distance_high: u32,
}

impl Discontinuity {
    pub fn level_changed(&self) -> bool {
        self.level_low != self.level_high
    }

    pub fn distance_changed(&self) -> bool {
        self.distance_low != self.distance_high
    }
}

/// Scans each L row along p and flags every adjacent pair of evaluated cells
/// whose footprint level or code distance differs.
pub fn detect_discontinuities(grid: &SweepGrid) -> Vec<Discontinuity> {
    let mut found = Vec::new();
    for (i, &bits) in grid.bits_axis.iter().enumerate() {
        for j in 1..grid.perr_axis.len() {
            let (Ok(lo), Ok(hi)) = (&grid.cells[i][j - 1], &grid.cells[i][j]) else {
                continue;
            };
            if lo.plan.footprint_level != hi.plan.footprint_level
                || lo.code_distance != hi.code_distance
            {
                found.push(Discontinuity {
                    bits,
                    perr_low: grid.perr_axis[j - 1],
                    perr_high: grid.perr_axis[j],
                    level_low: lo.plan.footprint_level,
                    level_high: hi.plan.footprint_level,
                    distance_low: lo.code_distance,
                    distance_high: hi.code_distance,
                });
            }
        }
    }
    found
}

/// One sample of an iso-contour: the largest L at this p whose metric stays
/// within the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourPoint {
    pub perr: f64,
    pub bits_boundary: u64,
    pub footprint_level: u8,
    pub code_distance: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourLine {
    pub metric: Metric,
    pub threshold: f64,
    pub points: Vec<ContourPoint>,
    /// p values (the later of each adjacent pair) where the boundary
    /// report's footprint level or distance changed.
    pub discontinuities: Vec<f64>,
    /// p values where even L = 2 exceeds the threshold.
    pub unsatisfiable: Vec<f64>,
}

pub fn contour(
    metric: Metric,
    threshold: f64,
    perr_axis: &[f64],
    k: &PhysicalConstants,
    hw: &HardwareProfile,
) -> Result<ContourLine> {
    validate_axis("perr", perr_axis)?;
    let samples: Vec<(f64, Result<ContourPoint>)> = perr_axis
        .par_iter()
        .map(|&p| {
            let point = max_bits_within(threshold, p, metric, k, hw).and_then(|bits| {
                let report = estimate(&ProblemInstance { bits, physical_error_rate: p }, k, hw)?;
                Ok(ContourPoint {
                    perr: p,
                    bits_boundary: bits,
                    footprint_level: report.plan.footprint_level,
                    code_distance: report.code_distance,
                })
            });
            (p, point)
        })
        .collect();

    let mut points = Vec::new();
    let mut unsatisfiable = Vec::new();
    for (p, sample) in samples {
        match sample {
            Ok(point) => points.push(point),
            Err(Error::BoundUnsatisfiable { .. }) => unsatisfiable.push(p),
            Err(e) => return Err(e),
        }
    }
    let discontinuities = points
        .windows(2)
        .filter(|w| {
            w[0].footprint_level != w[1].footprint_level
                || w[0].code_distance != w[1].code_distance
        })
        .map(|w| w[1].perr)
        .collect();
    Ok(ContourLine {
        metric,
        threshold,
        points,
        discontinuities,
        unsatisfiable,
    })
}

/// Geometrically spaced error-rate axis.
pub fn log_spaced_perr(min: f64, max: f64, count: usize) -> Result<Vec<f64>> {
    if !(min > 0.0 && max > min) || count < 2 {
        return Err(Error::InvalidInput(format!(
            "axis needs 0 < min < max and count >= 2, got [{min}, {max}] x {count}"
        )));
    }
    let step = (max / min).powf(1.0 / (count as f64 - 1.0));
    Ok((0..count)
        .map(|i| {
            if i == count - 1 {
                max
            } else {
                min * step.powi(i as i32)
            }
        })
        .collect())
}

/// Geometrically spaced problem-size axis, rounded to integers and deduped.
pub fn log_spaced_bits(min: u64, max: u64, count: usize) -> Result<Vec<u64>> {
    if min < 2 || max <= min || count < 2 {
        return Err(Error::InvalidInput(format!(
            "axis needs 2 <= min < max and count >= 2, got [{min}, {max}] x {count}"
        )));
    }
    let values = log_spaced_perr(min as f64, max as f64, count)?;
    let mut bits: Vec<u64> = values.iter().map(|&v| v.round() as u64).collect();
    bits.dedup();
    Ok(bits)
}
