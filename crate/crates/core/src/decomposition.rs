//! Algorithm-layer shape: circuit dimensions of the nearest-neighbour
//! factoring circuit and the sequence-length fit that converts a per-gate
//! accuracy into a count of Rz(pi/8) primitives.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ErrorBudget;

/// Depth and width of the linear-nearest-neighbour factoring circuit:
/// `K = 32 L^3` steps over `Q = 2 L` logical qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitShape {
    pub depth: u128,
    pub qubits: u64,
}

/// Number of Rz(pi/8) primitives approximating one algorithmic gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkLength {
    pub gates: u64,
}

pub fn circuit_shape(bits: u64) -> Result<CircuitShape> {
    if bits < 2 {
        return Err(Error::InvalidInput(format!(
            "bit length must be at least 2, got {bits}"
        )));
    }
    let l = bits as u128;
    Ok(CircuitShape {
        depth: 32 * l * l * l,
        qubits: 2 * bits,
    })
}

/// Sequence length `ceil(19.6 * log10(1/delta) - 10.5)`, clamped below at 1.
///
/// Every one of the K algorithmic steps is modelled as a full-length
/// Rz(pi/8) sequence; this is the pessimistic upper bound on the
/// decomposition.
pub fn sk_sequence_length(budget: &ErrorBudget) -> Result<SkLength> {
    let delta = budget.per_gate;
    if !(0.0 < delta && delta < 1.0) {
        return Err(Error::InvalidInput(format!(
            "per-gate budget must satisfy 0 < delta < 1, got {delta}"
        )));
    }
    let raw = 19.6 * (1.0 / delta).log10() - 10.5;
    let gates = if raw < 1.0 { 1 } else { raw.ceil() as u64 };
    Ok(SkLength { gates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::target_gate_error;

    #[test]
    fn shape_examples() {
        let s = circuit_shape(2).unwrap();
        assert_eq!((s.depth, s.qubits), (256, 4));
        let s = circuit_shape(1024).unwrap();
        assert_eq!((s.depth, s.qubits), (34_359_738_368, 2048));
        let s = circuit_shape(768).unwrap();
        assert_eq!((s.depth, s.qubits), (14_495_514_624, 1536));
        assert!(circuit_shape(1).is_err());
    }

    #[test]
    fn shape_exceeds_u64_without_overflow() {
        let s = circuit_shape(1 << 20).unwrap();
        assert_eq!(s.depth, 32u128 << 60);
    }

    #[test]
    fn depth_times_width_reproduces_budget_denominator() {
        for bits in [2u64, 17, 768, 1024] {
            let s = circuit_shape(bits).unwrap();
            let l = bits as u128;
            assert_eq!(s.depth * s.qubits as u128, 64 * l * l * l * l);
        }
    }

    #[test]
    fn sequence_length_examples() {
        assert_eq!(
            sk_sequence_length(&ErrorBudget { per_gate: 0.1 }).unwrap().gates,
            10
        );
        let budget = target_gate_error(1024).unwrap();
        assert_eq!(sk_sequence_length(&budget).unwrap().gates, 281);
        // A very loose budget would give a nonpositive count; clamp to 1.
        assert_eq!(
            sk_sequence_length(&ErrorBudget { per_gate: 0.9999 })
                .unwrap()
                .gates,
            1
        );
        assert!(sk_sequence_length(&ErrorBudget { per_gate: 1.0 }).is_err());
        assert!(sk_sequence_length(&ErrorBudget { per_gate: 0.0 }).is_err());
    }

    #[test]
    fn sequence_length_nonincreasing_in_budget() {
        // Tighter budget (smaller delta) never shortens the sequence.
        for exp in 2..=18 {
            let tight = sk_sequence_length(&ErrorBudget {
                per_gate: 10f64.powi(-exp),
            })
            .unwrap()
            .gates;
            let loose = sk_sequence_length(&ErrorBudget {
                per_gate: 10f64.powi(-exp + 1),
            })
            .unwrap()
            .gates;
            assert!(tight >= loose);
        }
    }
}
