//! Concatenated state distillation: residual errors of the |A> and |Y>
//! purification circuits, minimum-level selection against a cell-failure
//! target, and the analytic shortage probabilities of the spare-circuit
//! arrangement.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deepest concatenation the block layouts support.
pub const MAX_LEVEL: u8 = 3;

/// Which injected ancilla a distillery purifies: |A> feeds the Rz(pi/8)
/// teleportation, |Y> the Rz(pi/4) correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StateKind {
    A,
    Y,
}

impl StateKind {
    /// One round maps p -> branching * p^3: 35 for the 15-qubit |A> circuit,
    /// 7 for the 7-qubit |Y> circuit.
    pub fn branching_factor(self) -> f64 {
        match self {
            StateKind::A => 35.0,
            StateKind::Y => 7.0,
        }
    }
}

impl std::fmt::Display for StateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StateKind::A => write!(f, "|A>"),
            StateKind::Y => write!(f, "|Y>"),
        }
    }
}

/// A distillation outcome: the chosen level and its residual error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistillationState {
    pub kind: StateKind,
    pub level: u8,
    pub residual: f64,
}

/// Concatenation levels chosen for both ancilla kinds. The braided block is
/// keyed by the larger of the two levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistillationPlan {
    pub level_a: u8,
    pub level_y: u8,
    pub residual_a: f64,
    pub residual_y: f64,
    pub footprint_level: u8,
}

impl DistillationPlan {
    pub fn new(a: DistillationState, y: DistillationState) -> Self {
        Self {
            level_a: a.level,
            level_y: y.level,
            residual_a: a.residual,
            residual_y: y.residual,
            footprint_level: a.level.max(y.level),
        }
    }
}

/// Spare-circuit bookkeeping of the level-two block: 17 stacked level-one
/// |A> circuits of which 15 must succeed, 15 level-one |Y> circuits serving
/// correction slots that are each demanded with probability one half, and a
/// final correction demanded half the time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RedundancyModel {
    pub a_slots: u32,
    pub a_required: u32,
    pub y_corr_slots: u32,
    pub y_corr_demand_prob: f64,
    pub top_y_demand_prob: f64,
    /// Failure probability of one distillation circuit attempt is
    /// `circuit_failure_scale * p`; the scale is a knob with default 1.
    pub circuit_failure_scale: f64,
}

impl Default for RedundancyModel {
    fn default() -> Self {
        Self {
            a_slots: 17,
            a_required: 15,
            y_corr_slots: 15,
            y_corr_demand_prob: 0.5,
            top_y_demand_prob: 0.5,
            circuit_failure_scale: 1.0,
        }
    }
}

impl RedundancyModel {
    pub fn validate(&self) -> Result<()> {
        if self.a_slots < self.a_required {
            return Err(Error::InvalidInput(format!(
                "slot count {} below required count {}",
                self.a_slots, self.a_required
            )));
        }
        for (name, v) in [
            ("y_corr_demand_prob", self.y_corr_demand_prob),
            ("top_y_demand_prob", self.top_y_demand_prob),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidInput(format!("{name} must be in [0, 1], got {v}")));
            }
        }
        if self.circuit_failure_scale < 0.0 {
            return Err(Error::InvalidInput(
                "circuit_failure_scale must be nonnegative".into(),
            ));
        }
        Ok(())
    }

    pub fn circuit_failure_prob(&self, p: f64) -> f64 {
        (self.circuit_failure_scale * p).min(1.0)
    }
}

/// Residual error after `level` rounds of distillation:
/// `branching^((3^level - 1)/2) * p^(3^level)`, clamped at 1.
///
/// Equal (in exact arithmetic) to iterating p -> branching * p^3.
pub fn residual_after(kind: StateKind, level: u8, p: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::InvalidInput(format!(
            "injected error rate must satisfy 0 <= p < 1, got {p}"
        )));
    }
    if p == 0.0 {
        return Ok(0.0);
    }
    let factor = kind.branching_factor();
    // 3^level and (3^level - 1)/2; exact in f64 up to level 33, far past any
    // level that survives the clamp.
    let b = 3f64.powi(i32::from(level.min(33)));
    let a = (b - 1.0) / 2.0;
    let log2_residual = a * factor.log2() + b * p.log2();
    let value = if b * p.log2() > -1000.0 {
        factor.powf(a) * p.powf(b)
    } else {
        // p^(3^level) alone would underflow; evaluate the product in
        // log space instead.
        log2_residual.exp2()
    };
    Ok(value.min(1.0))
}

/// Smallest level in 1..=3 whose residual is at or below the cell-failure
/// target. Injected states are always distilled at least once before they
/// touch data.
pub fn select_level(kind: StateKind, p: f64, p_f: f64) -> Result<DistillationState> {
    if !(0.0..1.0).contains(&p_f) {
        return Err(Error::InvalidInput(format!(
            "cell failure target must be in [0, 1), got {p_f}"
        )));
    }
    let mut residual = f64::NAN;
    for level in 1..=MAX_LEVEL {
        residual = residual_after(kind, level, p)?;
        if residual <= p_f {
            return Ok(DistillationState {
                kind,
                level,
                residual,
            });
        }
    }
    Err(Error::DistillationInsufficient {
        kind,
        residual,
        target: p_f,
        max_level: MAX_LEVEL,
    })
}

/// Probability that fewer than `a_required` of the `a_slots` stacked
/// level-one |A> circuits succeed: the exact binomial tail
/// `sum_{k > slots - required} C(slots, k) q^k (1-q)^(slots-k)` with
/// `q = circuit_failure_scale * p`. Leading order `C(17,3) p^3 = 680 p^3`.
pub fn shortage_prob_a(p: f64, model: &RedundancyModel) -> Result<f64> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::InvalidInput(format!(
            "error rate must satisfy 0 <= p < 1, got {p}"
        )));
    }
    model.validate()?;
    let q = model.circuit_failure_prob(p);
    let tolerated = model.a_slots - model.a_required;
    Ok(binomial_tail(model.a_slots, q, tolerated + 1))
}

/// Leading-order probability that the correction supply runs short: all
/// correction slots demanded and exactly one feeding circuit failed,
/// `slots * p * demand^slots` (= `15 p / 2^15` at the defaults).
pub fn shortage_prob_ycorr(p: f64, model: &RedundancyModel) -> Result<f64> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::InvalidInput(format!(
            "error rate must satisfy 0 <= p < 1, got {p}"
        )));
    }
    model.validate()?;
    let q = model.circuit_failure_prob(p);
    let slots = f64::from(model.y_corr_slots);
    Ok(slots * q * model.y_corr_demand_prob.powi(model.y_corr_slots as i32))
}

/// P(X >= k_min) for X ~ Binomial(n, q).
pub(crate) fn binomial_tail(n: u32, q: f64, k_min: u32) -> f64 {
    if q == 0.0 {
        return if k_min == 0 { 1.0 } else { 0.0 };
    }
    let mut tail = 0.0;
    for k in k_min..=n {
        tail += binomial_coefficient(n, k) * q.powi(k as i32) * (1.0 - q).powi((n - k) as i32);
    }
    tail.min(1.0)
}

pub(crate) fn binomial_coefficient(n: u32, k: u32) -> f64 {
    let k = k.min(n - k.min(n));
    let mut c = 1u128;
    for i in 0..k as u128 {
        c = c * (n as u128 - i) / (i + 1);
    }
    c as f64
}
