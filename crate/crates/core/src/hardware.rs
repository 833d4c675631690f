//! Machine-level costing: photonic-module counts, physical dimensions and
//! runtime.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::ClusterGeometry;
use crate::model::{CodeDistance, HardwareProfile};

/// 365.25 days.
pub const SECONDS_PER_YEAR: f64 = 3.15576e7;

/// Reference physical gate time used for the temporal-overhead ratio.
pub const REFERENCE_GATE_TIME_S: f64 = 10e-9;

/// Module inventory for a cluster with an N1 x N2 unit-cell cross-section.
///
/// Every optical line carries one probabilistic source; photon detection
/// takes two modules on half the lines and four on the other half, i.e.
/// three per line on average, which is the count the closed-form total is
/// built from. The line total (2N1+1)(2N2+1) is always odd, so an exact
/// half/half split does not exist; the two split fields record the
/// assignment with the extra line in the two-module class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleBreakdown {
    pub optical_lines: u64,
    pub lines_with_two_detectors: u64,
    pub lines_with_four_detectors: u64,
    /// 3 * optical_lines.
    pub detection_modules: u64,
    /// One source per line.
    pub source_modules: u64,
    /// 2 (N1+2)(N2+1) + 2 (N2+2)(N1+1) preparation modules.
    pub preparation_modules: u64,
    /// 12 + 14 N1 + 14 N2 + 20 N1 N2.
    pub total: u64,
}

pub fn module_count(n1: u64, n2: u64) -> Result<ModuleBreakdown> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::InvalidInput(
            "cross-section must be at least 1 x 1 unit cells".into(),
        ));
    }
    let (w1, w2) = (u128::from(n1), u128::from(n2));
    let lines = (2 * w1 + 1) * (2 * w2 + 1);
    let detection = 3 * lines;
    let preparation = 2 * (w1 + 2) * (w2 + 1) + 2 * (w2 + 2) * (w1 + 1);
    let total = 12 + 14 * w1 + 14 * w2 + 20 * w1 * w2;
    debug_assert_eq!(detection + lines + preparation, total);
    let narrow = |v: u128, what: &str| -> Result<u64> {
        u64::try_from(v)
            .map_err(|_| Error::InvalidInput(format!("{what} count overflows at {n1} x {n2}")))
    };
    Ok(ModuleBreakdown {
        optical_lines: narrow(lines, "optical line")?,
        lines_with_two_detectors: narrow(lines.div_ceil(2), "line")?,
        lines_with_four_detectors: narrow(lines / 2, "line")?,
        detection_modules: narrow(detection, "detection module")?,
        source_modules: narrow(lines, "source module")?,
        preparation_modules: narrow(preparation, "preparation module")?,
        total: narrow(total, "module")?,
    })
}

/// Physical dimensions: S_x = N1 M, S_y = N2 M, and the recycling-loop
/// bound S_z <= 2 T c_f.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MachineDimensions {
    pub s_x_m: f64,
    pub s_y_m: f64,
    pub s_z_max_m: f64,
}

pub fn machine_dimensions(geom: &ClusterGeometry, hw: &HardwareProfile) -> MachineDimensions {
    MachineDimensions {
        s_x_m: geom.n1 as f64 * hw.module_edge_m,
        s_y_m: geom.n2 as f64 * hw.module_edge_m,
        s_z_max_m: 2.0 * hw.layer_time_s * hw.fiber_speed_m_per_s,
    }
}

/// Total runtime `32 L^3 * Lambda * D * (5d/4) * 2T` plus the overhead
/// ratios against the bare circuit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RuntimeReport {
    pub runtime_seconds: f64,
    pub runtime_years: f64,
    /// Runtime over the bare 32 L^3 steps at the reference 10 ns gate time.
    pub temporal_overhead: f64,
    /// Total modules over the 2L algorithmic qubits.
    pub qubit_overhead: f64,
}

pub fn runtime_report(
    bits: u64,
    lambda: u64,
    depth_per_gate: u64,
    d: CodeDistance,
    layer_time_s: f64,
    total_modules: u64,
) -> Result<RuntimeReport> {
    if lambda == 0 || depth_per_gate == 0 {
        return Err(Error::InvalidInput(
            "sequence length and gate depth must be >= 1".into(),
        ));
    }
    if layer_time_s <= 0.0 {
        return Err(Error::InvalidInput(
            "layer preparation time must be positive".into(),
        ));
    }
    let l = u128::from(bits);
    // (32 L^3 * Lambda * D * 5d) / 4 is exact: 4 divides 32 L^3.
    let depth_unit_cells =
        32 * l * l * l * u128::from(lambda) * u128::from(depth_per_gate) * 5 * u128::from(d.get())
            / 4;
    let runtime_seconds = depth_unit_cells as f64 * 2.0 * layer_time_s;
    let bare_steps = (32 * l * l * l) as f64;
    Ok(RuntimeReport {
        runtime_seconds,
        runtime_years: runtime_seconds / SECONDS_PER_YEAR,
        temporal_overhead: runtime_seconds / (bare_steps * REFERENCE_GATE_TIME_S),
        qubit_overhead: total_modules as f64 / (2.0 * bits as f64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::footprint;
    use crate::layout::cluster_geometry;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs()
    }

    #[test]
    fn module_count_smallest() {
        let m = module_count(1, 1).unwrap();
        assert_eq!(m.optical_lines, 9);
        assert_eq!(m.detection_modules, 27);
        assert_eq!(m.source_modules, 9);
        assert_eq!(m.preparation_modules, 24);
        assert_eq!(m.total, 60);
        assert_eq!(m.lines_with_two_detectors, 5);
        assert_eq!(m.lines_with_four_detectors, 4);
        assert!(module_count(0, 1).is_err());
        assert!(module_count(1, 0).is_err());
    }

    #[test]
    fn module_count_headline() {
        let m = module_count(163_840, 3_080).unwrap();
        assert_eq!(m.total, 10_094_880_892);
        assert_eq!(
            m.detection_modules + m.source_modules + m.preparation_modules,
            m.total
        );
    }

    #[test]
    fn breakdown_identity_exhaustive() {
        // 4 (2N1+1)(2N2+1) + 2 (N1+2)(N2+1) + 2 (N2+2)(N1+1)
        //   = 12 + 14 N1 + 14 N2 + 20 N1 N2
        for n1 in 1..=50u64 {
            for n2 in 1..=50u64 {
                let m = module_count(n1, n2).unwrap();
                assert_eq!(
                    m.detection_modules + m.source_modules + m.preparation_modules,
                    m.total,
                    "{n1} x {n2}"
                );
                assert_eq!(m.total, 12 + 14 * n1 + 14 * n2 + 20 * n1 * n2);
                assert_eq!(
                    m.lines_with_two_detectors + m.lines_with_four_detectors,
                    m.optical_lines
                );
            }
        }
    }

    #[test]
    fn module_count_quadratic_growth() {
        // Doubling both axes multiplies the leading term by four.
        let base = module_count(500, 500).unwrap().total;
        let double = module_count(1000, 1000).unwrap().total;
        let ratio = double as f64 / base as f64;
        assert!((ratio - 4.0).abs() < 0.04, "{ratio}");
    }

    #[test]
    fn dimensions_headline() {
        let hw = HardwareProfile::default();
        let fp = footprint(2).unwrap();
        let g = cluster_geometry(1024, CodeDistance::new(32).unwrap(), 281, &fp).unwrap();
        let dims = machine_dimensions(&g, &hw);
        assert!(close(dims.s_x_m, 1638.4, 1e-12));
        assert!(close(dims.s_y_m, 30.8, 1e-12));
        assert!(close(dims.s_z_max_m, 4.0, 1e-12));
    }

    #[test]
    fn runtime_minimal_product() {
        let r = runtime_report(2, 1, 1, CodeDistance::new(4).unwrap(), 1.0, 60).unwrap();
        assert_eq!(r.runtime_seconds, 2560.0);
    }

    #[test]
    fn runtime_headline() {
        let d32 = CodeDistance::new(32).unwrap();
        let r = runtime_report(1024, 281, 9, d32, 10e-9, 10_094_880_892).unwrap();
        assert!(close(r.runtime_seconds, 6.95166226661376e7, 1e-12));
        assert!(close(r.runtime_years, 2.2028488435792837, 1e-12));
        assert!(close(r.temporal_overhead, 202_320.0, 1e-12));
        assert!(close(r.qubit_overhead, 10_094_880_892.0 / 2048.0, 1e-12));

        let d17 = CodeDistance::new(17).unwrap();
        let r = runtime_report(1024, 281, 9, d17, 10e-9, 1).unwrap();
        assert!(close(r.runtime_years, 1.1702634481514944, 1e-12));
    }

    #[test]
    fn runtime_strictly_increasing_in_each_argument() {
        let d = |v| CodeDistance::new(v).unwrap();
        let base = runtime_report(64, 100, 9, d(16), 10e-9, 1)
            .unwrap()
            .runtime_seconds;
        for r in [
            runtime_report(65, 100, 9, d(16), 10e-9, 1).unwrap(),
            runtime_report(64, 101, 9, d(16), 10e-9, 1).unwrap(),
            runtime_report(64, 100, 10, d(16), 10e-9, 1).unwrap(),
            runtime_report(64, 100, 9, d(17), 10e-9, 1).unwrap(),
            runtime_report(64, 100, 9, d(16), 11e-9, 1).unwrap(),
        ] {
            assert!(r.runtime_seconds > base);
        }
    }
}
