//! Monte Carlo validation of the spare-circuit combinatorics.
//!
//! Each trial draws one logical timestep of the level-two block: 17
//! level-one |A> circuits of which at most two may fail, 15 correction slots
//! each demanded with a fair coin against 15 level-one |Y> circuits, and the
//! final correction (demanded half the time) fed by 7 + 1 level-one circuits
//! of which one failure is tolerated.
//!
//! Trials are split into fixed-size chunks; each chunk runs on its own
//! counter-mode RNG stream derived from the master seed, so the aggregate is
//! independent of scheduling and identical seeds give identical results.

use rand::distributions::Bernoulli;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::Binomial;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distillation::RedundancyModel;
use crate::error::{Error, Result};

/// Circuits feeding the final correction state: seven inputs of the
/// purification circuit plus one spare.
const TOP_Y_CIRCUITS: u64 = 8;
const TOP_Y_TOLERATED_FAILURES: u64 = 1;

const CHUNK_TRIALS: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Failure probability of one distillation circuit attempt.
    pub circuit_failure_prob: f64,
    pub trials: u64,
    pub seed: u64,
    pub model: RedundancyModel,
}

impl SimConfig {
    pub fn new(p: f64, trials: u64, seed: u64) -> Self {
        Self {
            circuit_failure_prob: p,
            trials,
            seed,
            model: RedundancyModel::default(),
        }
    }
}

/// A rate with its binomial standard error sqrt(r (1-r) / trials).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateEstimate {
    pub events: u64,
    pub rate: f64,
    pub std_error: f64,
}

impl RateEstimate {
    fn from_events(events: u64, trials: u64) -> Self {
        let rate = events as f64 / trials as f64;
        Self {
            events,
            rate,
            std_error: (rate * (1.0 - rate) / trials as f64).sqrt(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub trials: u64,
    pub seed: u64,
    pub circuit_failure_prob: f64,
    pub shortage_a: RateEstimate,
    pub shortage_ycorr: RateEstimate,
    pub top_y: RateEstimate,
}

#[derive(Default, Clone, Copy)]
struct Counts {
    shortage_a: u64,
    shortage_ycorr: u64,
    top_y: u64,
}

impl Counts {
    fn merge(self, other: Counts) -> Counts {
        Counts {
            shortage_a: self.shortage_a + other.shortage_a,
            shortage_ycorr: self.shortage_ycorr + other.shortage_ycorr,
            top_y: self.top_y + other.top_y,
        }
    }
}

pub fn simulate(cfg: &SimConfig) -> Result<SimResult> {
    if cfg.trials == 0 {
        return Err(Error::InvalidInput("trials must be >= 1".into()));
    }
    cfg.model.validate()?;
    let p = cfg.circuit_failure_prob;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!(
            "circuit failure probability must be in [0, 1], got {p}"
        )));
    }
    let q = cfg.model.circuit_failure_prob(p);
    let model = cfg.model;

    let a_slots = u64::from(model.a_slots);
    let a_tolerated = u64::from(model.a_slots - model.a_required);
    let y_slots = u64::from(model.y_corr_slots);

    let a_failures = Binomial::new(a_slots, q).expect("q in [0,1]");
    let y_demand = Binomial::new(y_slots, model.y_corr_demand_prob).expect("prob in [0,1]");
    let y_failures = Binomial::new(y_slots, q).expect("q in [0,1]");
    let top_demand = Bernoulli::new(model.top_y_demand_prob).expect("prob in [0,1]");
    let top_failures = Binomial::new(TOP_Y_CIRCUITS, q).expect("q in [0,1]");

    let chunks = cfg.trials.div_ceil(CHUNK_TRIALS);
    let totals = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(chunk + 1);
            let trials_here = CHUNK_TRIALS.min(cfg.trials - chunk * CHUNK_TRIALS);
            let mut counts = Counts::default();
            for _ in 0..trials_here {
                if a_failures.sample(&mut rng) > a_tolerated {
                    counts.shortage_a += 1;
                }
                let demand = y_demand.sample(&mut rng);
                if y_failures.sample(&mut rng) > y_slots - demand {
                    counts.shortage_ycorr += 1;
                }
                let wanted = top_demand.sample(&mut rng);
                if top_failures.sample(&mut rng) > TOP_Y_TOLERATED_FAILURES && wanted {
                    counts.top_y += 1;
                }
            }
            counts
        })
        .reduce(Counts::default, Counts::merge);

    Ok(SimResult {
        trials: cfg.trials,
        seed: cfg.seed,
        circuit_failure_prob: p,
        shortage_a: RateEstimate::from_events(totals.shortage_a, cfg.trials),
        shortage_ycorr: RateEstimate::from_events(totals.shortage_ycorr, cfg.trials),
        top_y: RateEstimate::from_events(totals.top_y, cfg.trials),
    })
}
