//! JSON and CSV emitters. Field order, column order and number formatting
//! are fixed, so identical invocations produce byte-identical artifacts.

use serde::{Deserialize, Serialize};
use shorcost_core::mc::{SimConfig, SimResult};
use shorcost_core::sweep::{ContourLine, GridCell, SweepGrid};
use shorcost_core::{HardwareProfile, Metric, PhysicalConstants, ResourceReport};

/// Everything needed to re-derive and re-validate an estimate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EstimateDocument {
    pub constants: PhysicalConstants,
    pub hardware: HardwareProfile,
    pub report: ResourceReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepDocument {
    pub constants: PhysicalConstants,
    pub hardware: HardwareProfile,
    pub bits_axis: Vec<u64>,
    pub perr_axis: Vec<f64>,
    pub cells: Vec<Vec<CellOut>>,
}

/// One grid cell: a report, or the typed reason there is none.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellOut {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ResourceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CellOut {
    fn from_cell(cell: &GridCell) -> Self {
        match cell {
            Ok(report) => Self {
                status: "ok".into(),
                report: Some(report.clone()),
                error: None,
            },
            Err(e) => Self {
                status: e.kind().into(),
                report: None,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContourDocument {
    pub constants: PhysicalConstants,
    pub hardware: HardwareProfile,
    pub threshold_unit: String,
    #[serde(flatten)]
    pub line: ContourLine,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimulateDocument {
    pub config: SimConfig,
    pub result: SimResult,
}

pub fn metric_unit(metric: Metric) -> &'static str {
    match metric {
        Metric::Runtime => "seconds",
        Metric::Modules => "modules",
        Metric::SizeX | Metric::SizeY => "meters",
    }
}

pub fn sweep_document(
    grid: &SweepGrid,
    constants: PhysicalConstants,
    hardware: HardwareProfile,
) -> SweepDocument {
    SweepDocument {
        constants,
        hardware,
        bits_axis: grid.bits_axis.clone(),
        perr_axis: grid.perr_axis.clone(),
        cells: grid
            .cells
            .iter()
            .map(|row| row.iter().map(CellOut::from_cell).collect())
            .collect(),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

/// Column order of report rows, shared by `estimate` and `sweep` CSV output.
pub const REPORT_COLUMNS: &str = "bits,perr,status,delta_gate,lambda,level_a,level_y,\
footprint_level,code_distance,cell_failure,n1,n2,modules_total,s_x_m,s_y_m,s_z_max_m,\
runtime_seconds,runtime_years,temporal_overhead,qubit_overhead,shortage_a,shortage_ycorr";

fn report_row(bits: u64, perr: f64, cell: &GridCell) -> String {
    match cell {
        Ok(r) => format!(
            "{bits},{perr},ok,{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.delta_gate,
            r.lambda,
            r.plan.level_a,
            r.plan.level_y,
            r.plan.footprint_level,
            r.code_distance,
            r.cell_failure,
            r.geometry.n1,
            r.geometry.n2,
            r.modules.total,
            r.dimensions.s_x_m,
            r.dimensions.s_y_m,
            r.dimensions.s_z_max_m,
            r.runtime.runtime_seconds,
            r.runtime.runtime_years,
            r.runtime.temporal_overhead,
            r.runtime.qubit_overhead,
            r.shortage_a,
            r.shortage_ycorr,
        ),
        Err(e) => format!("{bits},{perr},{},,,,,,,,,,,,,,,,,,,", e.kind()),
    }
}

pub fn report_csv(report: &ResourceReport) -> String {
    let mut out = String::from(REPORT_COLUMNS);
    out.push('\n');
    out.push_str(&report_row(
        report.bits,
        report.physical_error_rate,
        &Ok(report.clone()),
    ));
    out.push('\n');
    out
}

pub fn sweep_csv(grid: &SweepGrid) -> String {
    let mut out = String::from(REPORT_COLUMNS);
    out.push('\n');
    for (i, &bits) in grid.bits_axis.iter().enumerate() {
        for (j, &perr) in grid.perr_axis.iter().enumerate() {
            out.push_str(&report_row(bits, perr, grid.cell(i, j)));
            out.push('\n');
        }
    }
    out
}

pub const CONTOUR_COLUMNS: &str =
    "metric,threshold,threshold_unit,perr,status,bits_boundary,footprint_level,code_distance,discontinuity";

pub fn contour_csv(line: &ContourLine) -> String {
    let unit = metric_unit(line.metric);
    let mut out = String::from(CONTOUR_COLUMNS);
    out.push('\n');
    for point in &line.points {
        let discontinuity = u8::from(line.discontinuities.contains(&point.perr));
        out.push_str(&format!(
            "{},{},{unit},{},ok,{},{},{},{discontinuity}\n",
            line.metric, line.threshold, point.perr, point.bits_boundary,
            point.footprint_level, point.code_distance,
        ));
    }
    for &perr in &line.unsatisfiable {
        out.push_str(&format!(
            "{},{},{unit},{perr},bound_unsatisfiable,,,,\n",
            line.metric, line.threshold,
        ));
    }
    out
}

pub const SIMULATE_COLUMNS: &str = "circuit_failure_prob,trials,seed,shortage_a_rate,\
shortage_a_std_error,shortage_ycorr_rate,shortage_ycorr_std_error,top_y_rate,top_y_std_error";

pub fn simulate_csv(result: &SimResult) -> String {
    format!(
        "{SIMULATE_COLUMNS}\n{},{},{},{},{},{},{},{},{}\n",
        result.circuit_failure_prob,
        result.trials,
        result.seed,
        result.shortage_a.rate,
        result.shortage_a.std_error,
        result.shortage_ycorr.rate,
        result.shortage_ycorr.std_error,
        result.top_y.rate,
        result.top_y.std_error,
    )
}
