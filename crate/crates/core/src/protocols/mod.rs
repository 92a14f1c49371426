//! End-to-end procedures built on the circuits: strategy comparison for
//! Walsh sampling, amplitude amplification and estimation, and the
//! resiliency and uncorrelatedness checkers.

mod amplify;
mod checks;
mod curve;
mod estimate;

pub use amplify::{
    amplitude_amplify, grover_iterate, search, AmplificationLadder, AmplificationResult, SearchOutcome, SCHEDULE_RATIO,
};
pub use checks::{
    check_resilient, check_uncorrelated, dicke_cost, point_probe, sample_cross_correlation, CheckConfig, CheckVerdict,
    CorrelationSample, DickeCost, Method, Mode, TaggedOutcome, Verdict, WeightReport, DEFAULT_PREFILTER_SHOTS,
    DICKE_FLAT_CONSTANT, EXACT_TOLERANCE,
};
pub use curve::{closed_form, strategy_curve, StrategyCurve, StrategyValues};
pub use estimate::{
    amplitude_estimate, estimate_cross_correlation_point, inverse_qft, AmplitudeEstimator, CorrelationPointEstimator,
    EstimationPlan, EstimationResult, CALL_BOUND_CONSTANT,
};

use serde::Serialize;

use crate::circuits::Construction;

/// Good outcomes on a measured subset: `marked[pattern]` for each pattern of
/// `qubits`, first qubit most significant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodSet {
    pub qubits: Vec<usize>,
    pub marked: Vec<bool>,
}

impl GoodSet {
    pub fn new(qubits: Vec<usize>, accept: impl Fn(usize) -> bool) -> Self {
        let marked = (0..1usize << qubits.len()).map(accept).collect();
        Self { qubits, marked }
    }

    /// Good set over the measured qubits of a construction.
    pub fn on(c: &Construction, accept: impl Fn(usize) -> bool) -> Self {
        Self::new(c.measured.clone(), accept)
    }

    pub fn accepts(&self, outcome: usize) -> bool {
        self.marked[outcome]
    }

    pub fn is_empty(&self) -> bool {
        !self.marked.iter().any(|m| *m)
    }
}
