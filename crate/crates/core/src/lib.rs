//! Resource model for fault-tolerant factoring on a photonic
//! cluster-state machine.
//!
//! Given a problem size L and a physical error rate p, the crate derives the
//! per-gate error budget of the nearest-neighbour factoring circuit, the
//! Rz(pi/8) sequence length, the concatenated-distillation plan, the code
//! distance, the cluster geometry, and from those the photonic-module count,
//! machine dimensions and total runtime. On top of the single-point
//! estimator sit (L, p) grid sweeps, iso-contour extraction (e.g. runtime of
//! one year) and a Monte Carlo validator for the spare-circuit shortage
//! probabilities.
//!
//! Everything is a pure function of its inputs: grids can be evaluated in
//! parallel and identical inputs give bit-identical outputs.

pub mod decomposition;
pub mod distillation;
pub mod error;
pub mod hardware;
pub mod layout;
pub mod mc;
pub mod model;
pub mod pipeline;
pub mod sweep;

pub use error::{Error, Result};
pub use model::{CodeDistance, HardwareProfile, PhysicalConstants, ProblemInstance};
pub use pipeline::{estimate, max_bits_within, Metric, ResourceReport};
pub use sweep::{contour, detect_discontinuities, sweep, sweep_serial, ContourLine, SweepGrid};
