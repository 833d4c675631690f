//! End-to-end estimation for a single (L, p) point.
//!
//! Distillation level, block footprint and code distance depend on each
//! other: a bigger block needs a lower cell failure rate, which needs a
//! larger distance, which can in turn demand deeper distillation. The
//! estimate resolves the cycle by seeding at level one and ascending until
//! the selected level reproduces itself; the update is monotone and capped,
//! so it terminates in at most three rounds.

use serde::{Deserialize, Serialize};

use crate::decomposition::{circuit_shape, sk_sequence_length};
use crate::distillation::{
    select_level, shortage_prob_a, shortage_prob_ycorr, DistillationPlan, RedundancyModel,
    StateKind, MAX_LEVEL,
};
use crate::error::{Error, Result};
use crate::hardware::{machine_dimensions, module_count, runtime_report, MachineDimensions,
    ModuleBreakdown, RuntimeReport};
use crate::layout::{cluster_geometry, footprint, ClusterGeometry, GateFootprint};
use crate::model::{
    gate_failure, logical_cell_failure_continuous, required_distance, target_gate_error,
    HardwareProfile, PhysicalConstants, ProblemInstance,
};

/// Upper end of the problem-size search range; 32 L^3 still fits u128 with
/// room to spare here.
pub const MAX_SEARCH_BITS: u64 = 1 << 20;

/// Full output record for one (L, p) point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub bits: u64,
    pub physical_error_rate: f64,
    pub delta_gate: f64,
    pub lambda: u64,
    pub circuit_depth: u128,
    pub logical_qubits: u64,
    pub plan: DistillationPlan,
    pub code_distance: u32,
    /// Cell failure rate at the chosen distance (unrounded suppression
    /// exponent; the value the budget and the residual conditions are
    /// checked against).
    pub cell_failure: f64,
    pub footprint: GateFootprint,
    pub geometry: ClusterGeometry,
    pub modules: ModuleBreakdown,
    pub dimensions: MachineDimensions,
    pub runtime: RuntimeReport,
    pub shortage_a: f64,
    pub shortage_ycorr: f64,
}

impl ResourceReport {
    /// Re-derives the report from its inputs and checks it is unchanged,
    /// then re-asserts the budget and residual inequalities.
    pub fn validate(&self, k: &PhysicalConstants, hw: &HardwareProfile) -> Result<()> {
        let inst = ProblemInstance::new(self.bits, self.physical_error_rate)?;
        let fresh = estimate(&inst, k, hw)?;
        if &fresh != self {
            return Err(Error::InvalidInput(
                "report is not reproducible from its inputs".into(),
            ));
        }
        let fail = gate_failure(
            self.cell_failure,
            self.lambda,
            self.footprint.cells,
        )?;
        if fail > self.delta_gate
            || self.plan.residual_a > self.cell_failure
            || self.plan.residual_y > self.cell_failure
        {
            return Err(Error::InvalidInput(
                "report violates the budget or residual inequalities".into(),
            ));
        }
        Ok(())
    }
}

pub fn estimate(
    inst: &ProblemInstance,
    k: &PhysicalConstants,
    hw: &HardwareProfile,
) -> Result<ResourceReport> {
    let inst = ProblemInstance::new(inst.bits, inst.physical_error_rate)?;
    k.validate()?;
    hw.validate()?;
    let p = inst.physical_error_rate;
    k.require_subthreshold(p)?;

    let budget = target_gate_error(inst.bits)?;
    let lambda = sk_sequence_length(&budget)?.gates;
    let shape = circuit_shape(inst.bits)?;

    let mut level = 1u8;
    let (fp, d, p_f, plan) = loop {
        let fp = footprint(level)?;
        let d = required_distance(inst.bits, lambda, fp.cells, p, k)?;
        let p_f = logical_cell_failure_continuous(d, p, k)?;
        let a = select_level(StateKind::A, p, p_f)?;
        let y = select_level(StateKind::Y, p, p_f)?;
        let next = a.level.max(y.level);
        if next == level {
            break (fp, d, p_f, DistillationPlan::new(a, y));
        }
        if next < level {
            return Err(Error::NonConvergence {
                from: level,
                to: next,
            });
        }
        debug_assert!(next <= MAX_LEVEL);
        level = next;
    };

    let geometry = cluster_geometry(inst.bits, d, lambda, &fp)?;
    let modules = module_count(geometry.n1, geometry.n2)?;
    let dimensions = machine_dimensions(&geometry, hw);
    let runtime = runtime_report(inst.bits, lambda, fp.depth, d, hw.layer_time_s, modules.total)?;
    let redundancy = RedundancyModel::default();

    Ok(ResourceReport {
        bits: inst.bits,
        physical_error_rate: p,
        delta_gate: budget.per_gate,
        lambda,
        circuit_depth: shape.depth,
        logical_qubits: shape.qubits,
        plan,
        code_distance: d.get(),
        cell_failure: p_f,
        footprint: fp,
        geometry,
        modules,
        dimensions,
        runtime,
        shortage_a: shortage_prob_a(p, &redundancy)?,
        shortage_ycorr: shortage_prob_ycorr(p, &redundancy)?,
    })
}

/// Cost metric for searches and contours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Metric {
    /// Runtime in seconds.
    Runtime,
    /// Total photonic modules.
    Modules,
    /// Machine extent along the qubit line, meters.
    SizeX,
    /// Machine extent across the distillation stack, meters.
    SizeY,
}

impl Metric {
    pub fn of(self, report: &ResourceReport) -> f64 {
        match self {
            Metric::Runtime => report.runtime.runtime_seconds,
            Metric::Modules => report.modules.total as f64,
            Metric::SizeX => report.dimensions.s_x_m,
            Metric::SizeY => report.dimensions.s_y_m,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::Runtime => "runtime",
            Metric::Modules => "modules",
            Metric::SizeX => "sx",
            Metric::SizeY => "sy",
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Largest problem size L in [2, MAX_SEARCH_BITS] whose metric stays at or
/// below the threshold, by exponential bracketing and integer bisection.
///
/// The cost metrics are step functions of L (distance and level jumps), so
/// the boundary is re-verified directly at the returned L and L + 1 and
/// nudged if a jump landed inside the final bracket.
pub fn max_bits_within(
    threshold: f64,
    p: f64,
    metric: Metric,
    k: &PhysicalConstants,
    hw: &HardwareProfile,
) -> Result<u64> {
    let fits = |bits: u64| -> Result<bool> {
        match estimate(&ProblemInstance { bits, physical_error_rate: p }, k, hw) {
            Ok(report) => Ok(metric.of(&report) <= threshold),
            // A size that no distillation level can serve is infeasible,
            // i.e. above any bound; hard domain errors still propagate.
            Err(Error::DistillationInsufficient { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    };

    // The smallest instance must fit; errors here (including insufficiency)
    // are the caller's problem, not a search result.
    let first = metric.of(&estimate(
        &ProblemInstance { bits: 2, physical_error_rate: p },
        k,
        hw,
    )?);
    if first > threshold {
        return Err(Error::BoundUnsatisfiable {
            metric: metric.name().into(),
            bits: 2,
            value: first,
            threshold,
        });
    }

    let mut lo = 2u64;
    let mut hi = lo;
    while hi < MAX_SEARCH_BITS {
        hi = (hi * 2).min(MAX_SEARCH_BITS);
        if fits(hi)? {
            lo = hi;
        } else {
            break;
        }
    }
    if lo == MAX_SEARCH_BITS {
        return Ok(MAX_SEARCH_BITS);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Verify the boundary; a step jump strictly inside the bracket can leave
    // the bisection one step off.
    while lo < MAX_SEARCH_BITS && fits(lo + 1)? {
        lo += 1;
    }
    while lo > 2 && !fits(lo)? {
        lo -= 1;
    }
    Ok(lo)
}
