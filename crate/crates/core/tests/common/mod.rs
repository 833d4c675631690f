//! Independent oracles shared by the integration tests. These deliberately
//! avoid the library's own closed forms wherever they are used to check one:
//! distances come from a linear scan, residuals from iterating the cubic
//! recursion, and tail probabilities from direct summation.

use shorcost_core::model::{
    gate_failure, logical_cell_failure_continuous, target_gate_error, CodeDistance,
    PhysicalConstants,
};

/// Smallest distance whose decomposed-gate failure meets the per-gate
/// budget, by scanning d upward.
pub fn brute_force_distance(
    bits: u64,
    lambda: u64,
    cells: u64,
    p: f64,
    k: &PhysicalConstants,
) -> Option<u32> {
    let budget = target_gate_error(bits).unwrap().per_gate;
    (1..=2000u32).find(|&d| {
        let p_f = logical_cell_failure_continuous(CodeDistance::new(d).unwrap(), p, k).unwrap();
        gate_failure(p_f, lambda, cells).unwrap() <= budget
    })
}

/// l-fold iteration of the cubic distillation map.
pub fn iterated_residual(branching: f64, level: u8, p: f64) -> f64 {
    let mut r = p;
    for _ in 0..level {
        r = branching * r * r * r;
    }
    r.min(1.0)
}

pub fn binomial_coefficient(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    let mut c = 1u128;
    for i in 0..k as u128 {
        c = c * (n as u128 - i) / (i + 1);
    }
    c as f64
}

/// P(X >= k_min), X ~ Binomial(n, q), by direct summation.
pub fn binomial_tail(n: u64, q: f64, k_min: u64) -> f64 {
    (k_min..=n)
        .map(|k| binomial_coefficient(n, k) * q.powi(k as i32) * (1.0 - q).powi((n - k) as i32))
        .sum()
}

