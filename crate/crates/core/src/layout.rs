//! Braided-gate footprint catalog and cluster geometry.
//!
//! All lengths are counted in unit cells of the cluster. A logical cell has
//! an edge of d + d/4 unit cells, which is fractional unless 4 | d; lengths
//! derived from it are therefore carried as exact quarter-unit-cell counts
//! and rounded up only at the final physical quantities.

use serde::{Deserialize, Serialize};

use crate::decomposition::circuit_shape;
use crate::error::{Error, Result};
use crate::model::CodeDistance;

/// Each algorithmic qubit is a defect pair occupying two logical cells of
/// cross-section.
pub const WIDTH_PER_QUBIT: u64 = 2;

/// Dimensions of one braided Rz(pi/8) block, including its distilleries, at
/// a given concatenation level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateFootprint {
    pub level: u8,
    /// Logical cells per gate (V).
    pub cells: u64,
    /// Temporal depth in logical cells (D).
    pub depth: u64,
    /// Cross-section height in logical cells (A).
    pub cross_section_height: u64,
    /// Algorithmic qubits sharing one repeating block.
    pub qubits_per_block: u64,
}

/// Catalog of the compacted block designs. Level 1: 5 x 21 x 2 = 210 cells
/// for one qubit. Level 2: 8 x 77 x 9 / 4 = 1386 cells per gate, four qubits
/// per block. Level 3 is an extrapolation of the level-2 design at V = 10000,
/// D = 15, with the cross-section height completing the cuboid:
/// ceil(10000 / (15 * 2)) = 334.
const CATALOG: [GateFootprint; 3] = [
    GateFootprint {
        level: 1,
        cells: 210,
        depth: 5,
        cross_section_height: 21,
        qubits_per_block: 1,
    },
    GateFootprint {
        level: 2,
        cells: 1386,
        depth: 9,
        cross_section_height: 77,
        qubits_per_block: 4,
    },
    GateFootprint {
        level: 3,
        cells: 10000,
        depth: 15,
        cross_section_height: 334,
        qubits_per_block: 4,
    },
];

pub fn footprint(level: u8) -> Result<GateFootprint> {
    match level {
        1..=3 => Ok(CATALOG[usize::from(level) - 1]),
        _ => Err(Error::InvalidInput(format!(
            "no footprint for concatenation level {level}; catalog covers 1..=3"
        ))),
    }
}

/// An exact length in quarter unit cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QuarterCells(pub u128);

impl QuarterCells {
    pub fn ceil_cells(self) -> u64 {
        (self.0.div_ceil(4)) as u64
    }

    /// Whole unit cells, or None if the length is not a multiple of 4
    /// quarters.
    pub fn exact_cells(self) -> Option<u128> {
        (self.0 % 4 == 0).then_some(self.0 / 4)
    }
}

/// Edge of one logical cell: d + d/4 unit cells, i.e. 5d quarters.
pub fn logical_cell_edge(d: CodeDistance) -> QuarterCells {
    QuarterCells(5 * u128::from(d.get()))
}

/// Cluster dimensions for one problem instance. The cross-section holds
/// 4L x A logical cells (5Ld x ceil(5dA/4) physical unit cells); the third
/// axis is time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterGeometry {
    /// Logical cells along the qubit line: 4L.
    pub cells_line: u64,
    /// Logical cells of cross-section height: A.
    pub cells_height: u64,
    /// Physical unit cells across the qubit line: N1 = 5 L d.
    pub n1: u64,
    /// Physical unit cells of cross-section height: N2 = ceil(5 d A / 4).
    pub n2: u64,
    /// 32 L^3 * Lambda * D logical cells along the temporal axis.
    pub depth_logical_cells: u128,
    /// Temporal depth in physical unit cells: depth * 5d/4 (exact; 4 | 32L^3).
    pub depth_unit_cells: u128,
}

pub fn cluster_geometry(
    bits: u64,
    d: CodeDistance,
    lambda: u64,
    fp: &GateFootprint,
) -> Result<ClusterGeometry> {
    if lambda == 0 {
        return Err(Error::InvalidInput("sequence length must be >= 1".into()));
    }
    let shape = circuit_shape(bits)?;
    let edge = logical_cell_edge(d);
    let cells_line = 4 * bits;
    let n1 = QuarterCells(u128::from(cells_line) * edge.0)
        .exact_cells()
        .expect("4L quarters times 5d is a multiple of 4") as u64;
    debug_assert_eq!(n1, 5 * bits * u64::from(d.get()));
    let n2 = QuarterCells(u128::from(fp.cross_section_height) * edge.0).ceil_cells();
    let depth_logical_cells = shape.depth * u128::from(lambda) * u128::from(fp.depth);
    let depth_unit_cells = QuarterCells(depth_logical_cells * edge.0)
        .exact_cells()
        .expect("32 L^3 is a multiple of 4");
    Ok(ClusterGeometry {
        cells_line,
        cells_height: fp.cross_section_height,
        n1,
        n2,
        depth_logical_cells,
        depth_unit_cells,
    })
}
