//! Grover-style amplitude amplification over an arbitrary measurement-free
//! circuit, with a known iteration count or an unknown-amplitude schedule.

use rand::Rng;
use serde::Serialize;

use super::GoodSet;
use crate::error::{Error, Result};
use crate::qsim::{measure_distribution, Circuit, Gate, MeasurementDistribution, OutcomeSampler, StateVector};

/// Growth factor of the iteration bound between rounds of [`search`].
pub const SCHEDULE_RATIO: f64 = 6.0 / 5.0;

/// `Q = −A S_0 A† S_χ`: flip the good outcomes, undo `A`, flip `|0…0⟩`,
/// redo `A`, and apply the global `−1`. The sign matters once `Q` is
/// controlled, as in phase estimation.
pub fn grover_iterate(base: &Circuit, good: &GoodSet) -> Result<Vec<Gate>> {
    if good.qubits.iter().any(|q| *q >= base.q()) {
        return Err(Error::IndexOutOfRange(format!(
            "good set {:?} on a {}-qubit circuit",
            good.qubits,
            base.q()
        )));
    }
    let all: Vec<usize> = (0..base.q()).collect();
    let mut gates = vec![Gate::PhaseMark {
        qubits: good.qubits.clone(),
        marked: good.marked.clone(),
    }];
    gates.extend(base.inverse_gates());
    gates.extend(all.iter().map(|&q| Gate::X { q }));
    gates.push(Gate::Mcz { qubits: all.clone() });
    gates.extend(all.iter().map(|&q| Gate::X { q }));
    gates.extend(base.gates().iter().cloned());
    gates.push(Gate::GlobalPhase {
        theta: std::f64::consts::PI,
    });
    Ok(gates)
}

#[derive(Debug, Clone, Serialize)]
pub struct AmplificationResult {
    pub iterations: usize,
    /// Good mass of the base circuit, `sin^2 θ`.
    pub initial_mass: f64,
    /// Good mass after the iterations, read from the simulated state.
    pub success: f64,
    /// `sin^2((2k+1)θ)`.
    pub predicted: f64,
    /// Set when the base circuit puts no mass on the good set; the output
    /// then stays at zero for every `k`.
    pub no_good_support: bool,
    #[serde(skip)]
    pub distribution: MeasurementDistribution,
}

/// Runs the base circuit followed by `k` Grover iterations and reports the
/// exact output distribution on the good-set qubits.
pub fn amplitude_amplify(base: &Circuit, good: &GoodSet, k: usize) -> Result<AmplificationResult> {
    let mut ladder = AmplificationLadder::new(base, good)?;
    let distribution = ladder.distribution(k)?.clone();
    let initial_mass = ladder.initial_mass();
    let success = distribution.mass(|i| good.accepts(i));
    let theta = initial_mass.clamp(0.0, 1.0).sqrt().asin();
    Ok(AmplificationResult {
        iterations: k,
        initial_mass,
        success,
        predicted: ((2 * k + 1) as f64 * theta).sin().powi(2),
        no_good_support: initial_mass <= crate::qsim::PROBABILITY_FLOOR,
        distribution,
    })
}

/// Output distributions after `0, 1, 2, …` iterations, computed lazily and
/// cached so a schedule can revisit any iteration count.
pub struct AmplificationLadder {
    good: GoodSet,
    iterate: Vec<Gate>,
    state: StateVector,
    distributions: Vec<MeasurementDistribution>,
    samplers: Vec<Option<OutcomeSampler>>,
}

impl AmplificationLadder {
    pub fn new(base: &Circuit, good: &GoodSet) -> Result<Self> {
        let iterate = grover_iterate(base, good)?;
        let state = crate::qsim::run(base)?;
        let first = measure_distribution(&state, &good.qubits)?;
        Ok(Self {
            good: good.clone(),
            iterate,
            state,
            distributions: vec![first],
            samplers: vec![None],
        })
    }

    pub fn good(&self) -> &GoodSet {
        &self.good
    }

    pub fn initial_mass(&self) -> f64 {
        self.good_mass_at(0)
    }

    fn good_mass_at(&self, k: usize) -> f64 {
        self.distributions[k].mass(|i| self.good.accepts(i))
    }

    pub fn distribution(&mut self, k: usize) -> Result<&MeasurementDistribution> {
        while self.distributions.len() <= k {
            self.state.apply_all(&self.iterate)?;
            self.distributions
                .push(measure_distribution(&self.state, &self.good.qubits)?);
            self.samplers.push(None);
        }
        Ok(&self.distributions[k])
    }

    pub fn good_mass(&mut self, k: usize) -> Result<f64> {
        self.distribution(k)?;
        Ok(self.good_mass_at(k))
    }

    /// One measurement after `k` iterations.
    pub fn draw<R: Rng + ?Sized>(&mut self, k: usize, rng: &mut R) -> Result<usize> {
        self.distribution(k)?;
        if self.samplers[k].is_none() {
            self.samplers[k] = Some(OutcomeSampler::new(&self.distributions[k])?);
        }
        Ok(self.samplers[k].as_ref().expect("sampler just built").draw(rng))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutcome {
    /// First good outcome observed, if any.
    pub witness: Option<usize>,
    /// Invocations of the base circuit or its inverse.
    pub calls: u64,
    pub oracle_calls: u64,
    pub shots: u64,
}

/// Unknown-amplitude search: in each round pick `k` uniformly below the
/// current bound, run `k` iterations and measure once; the bound grows by
/// [`SCHEDULE_RATIO`] up to `max_iterations`. A round with `k` iterations
/// costs `2k + 1` base calls, each worth `queries_per_call` oracle queries.
/// Stops at the first good outcome or when `budget` oracle queries are spent.
pub fn search<R: Rng + ?Sized>(
    ladder: &mut AmplificationLadder,
    queries_per_call: u64,
    budget: u64,
    max_iterations: usize,
    rng: &mut R,
) -> Result<SearchOutcome> {
    let per_call = queries_per_call.max(1);
    let mut out = SearchOutcome {
        witness: None,
        calls: 0,
        oracle_calls: 0,
        shots: 0,
    };
    let mut bound = 1.0f64;
    loop {
        let remaining_calls = (budget - out.oracle_calls) / per_call;
        if remaining_calls == 0 {
            return Ok(out);
        }
        let affordable = ((remaining_calls - 1) / 2) as usize;
        let k = rng.gen_range(0..bound.ceil() as usize).min(affordable);
        let calls = 2 * k as u64 + 1;
        let outcome = ladder.draw(k, rng)?;
        out.calls += calls;
        out.oracle_calls += calls * per_call;
        out.shots += 1;
        if ladder.good().accepts(outcome) {
            out.witness = Some(outcome);
            return Ok(out);
        }
        bound = (bound * SCHEDULE_RATIO).min(max_iterations.max(1) as f64);
    }
}
