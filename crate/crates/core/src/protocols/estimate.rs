//! Amplitude estimation by phase estimation on the Grover iterate, and the
//! signed cross-correlation point estimator built on it.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::amplify::grover_iterate;
use super::GoodSet;
use crate::boolfn::{linear, same_size, TruthTable};
use crate::circuits::a32;
use crate::error::{Error, Result};
use crate::qsim::{hadamards, run_distribution, Circuit, Gate, MeasurementDistribution, OutcomeSampler};

/// Constant `c` in `calls ≤ c · ⌈π/ε⌉ · ⌈ln(1/δ)⌉` for plans built by
/// [`EstimationPlan::for_targets`].
pub const CALL_BOUND_CONSTANT: u64 = 128;

/// Lower bound on the probability that one phase-estimation run lands within
/// the per-run error bound.
const SINGLE_RUN_SUCCESS: f64 = 8.0 / (PI * PI);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimationResult {
    pub alpha: f64,
    pub epsilon: f64,
    pub delta: f64,
    /// Invocations of the base circuit or its inverse over all runs.
    pub calls: u64,
    pub precision_qubits: usize,
    pub reps: usize,
    pub seed: u64,
}

/// Precision qubits and repetition count for a target accuracy on the
/// estimated probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimationPlan {
    pub precision_qubits: usize,
    pub reps: usize,
}

impl EstimationPlan {
    /// `t = ⌈log2(2π/ε)⌉` keeps `π/2^t + π²/2^{2t} ≤ ε`; the repetition count
    /// is the smallest odd `r` with `exp(-2r(8/π² - 1/2)²) ≤ δ`.
    pub fn for_targets(epsilon: f64, delta: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "need 0 < ε < 1 and 0 < δ < 1, got ε={epsilon}, δ={delta}"
            )));
        }
        let precision_qubits = (2.0 * PI / epsilon).log2().ceil() as usize;
        let gap = SINGLE_RUN_SUCCESS - 0.5;
        let mut reps = ((1.0 / delta).ln() / (2.0 * gap * gap)).ceil().max(1.0) as usize;
        if reps.is_multiple_of(2) {
            reps += 1;
        }
        Ok(Self { precision_qubits, reps })
    }

    pub fn calls_per_run(&self) -> u64 {
        calls_per_run(self.precision_qubits)
    }

    pub fn calls(&self) -> u64 {
        self.calls_per_run() * self.reps as u64
    }

    /// Per-run error bound `π/2^t + π²/2^{2t}` on the probability.
    pub fn run_error(&self) -> f64 {
        run_error(self.precision_qubits)
    }

    /// `c · ⌈π/ε⌉ · ⌈ln(1/δ)⌉`.
    pub fn call_bound(epsilon: f64, delta: f64) -> u64 {
        CALL_BOUND_CONSTANT * (PI / epsilon).ceil() as u64 * (1.0 / delta).ln().ceil().max(1.0) as u64
    }
}

fn calls_per_run(t: usize) -> u64 {
    // one A, then 2^t - 1 applications of Q, each holding A and A†
    1 + 2 * ((1u64 << t) - 1)
}

fn run_error(t: usize) -> f64 {
    let s = (1u64 << t) as f64;
    PI / s + PI * PI / (s * s)
}

/// Inverse quantum Fourier transform on `qubits`, first qubit most
/// significant.
pub fn inverse_qft(qubits: &[usize]) -> Vec<Gate> {
    let t = qubits.len();
    let mut qft = Vec::new();
    for i in 0..t {
        qft.push(Gate::H { q: qubits[i] });
        for j in i + 1..t {
            qft.push(Gate::ControlledBlock {
                control: qubits[j],
                polarity: 1,
                body: vec![Gate::Phase {
                    q: qubits[i],
                    theta: 2.0 * PI / (1u64 << (j - i + 1)) as f64,
                }],
            });
        }
    }
    for i in 0..t / 2 {
        let (a, b) = (qubits[i], qubits[t - 1 - i]);
        qft.push(Gate::Cnot { control: a, target: b });
        qft.push(Gate::Cnot { control: b, target: a });
        qft.push(Gate::Cnot { control: a, target: b });
    }
    qft.iter().rev().map(Gate::inverse).collect()
}

/// Phase estimation of the Grover iterate with `t` precision qubits. The
/// exact distribution of the precision register is computed once; runs are
/// then drawn from it.
pub struct AmplitudeEstimator {
    t: usize,
    phases: MeasurementDistribution,
    sampler: OutcomeSampler,
}

impl AmplitudeEstimator {
    /// Layout: precision qubits `0..t` (qubit `t-1-j` controls `Q^{2^j}`),
    /// then the base circuit shifted up by `t`.
    pub fn new(base: &Circuit, good: &GoodSet, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidArgument("need at least one precision qubit".into()));
        }
        let q_gates: Vec<Gate> = grover_iterate(base, good)?.iter().map(|g| g.shifted(t)).collect();
        let precision: Vec<usize> = (0..t).collect();
        let mut c = Circuit::new(base.q() + t)?;
        c.extend(hadamards(&precision))?;
        c.extend(base.gates().iter().map(|g| g.shifted(t)))?;
        for j in 0..t {
            let mut body = Vec::with_capacity(q_gates.len() << j);
            for _ in 0..1usize << j {
                body.extend(q_gates.iter().cloned());
            }
            c.push(Gate::ControlledBlock {
                control: t - 1 - j,
                polarity: 1,
                body,
            })?;
        }
        c.extend(inverse_qft(&precision))?;
        let phases = run_distribution(&c, &precision)?;
        let sampler = OutcomeSampler::new(&phases)?;
        Ok(Self { t, phases, sampler })
    }

    pub fn precision_qubits(&self) -> usize {
        self.t
    }

    /// Exact distribution of the precision register.
    pub fn phase_distribution(&self) -> &MeasurementDistribution {
        &self.phases
    }

    /// `sin^2(π y / 2^t)` for a measured `y`.
    pub fn estimate_of(&self, y: usize) -> f64 {
        (PI * y as f64 / (1u64 << self.t) as f64).sin().powi(2)
    }

    /// Median of `reps` independent runs.
    pub fn median_estimate(&self, reps: usize, seed: u64) -> Result<f64> {
        if reps.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("reps must be odd, got {reps}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut runs: Vec<f64> = (0..reps)
            .map(|_| self.estimate_of(self.sampler.draw(&mut rng)))
            .collect();
        runs.sort_by(f64::total_cmp);
        Ok(runs[reps / 2])
    }
}

/// Estimates the good mass of `base` with `t` precision qubits, taking the
/// median of `reps` runs.
pub fn amplitude_estimate(
    base: &Circuit,
    good: &GoodSet,
    t: usize,
    reps: usize,
    seed: u64,
) -> Result<EstimationResult> {
    let estimator = AmplitudeEstimator::new(base, good, t)?;
    let alpha = estimator.median_estimate(reps, seed)?;
    let gap = SINGLE_RUN_SUCCESS - 0.5;
    Ok(EstimationResult {
        alpha,
        epsilon: run_error(t),
        delta: (-2.0 * reps as f64 * gap * gap).exp(),
        calls: calls_per_run(t) * reps as u64,
        precision_qubits: t,
        reps,
        seed,
    })
}

/// Estimator for `C_{f,g}(y) / 2^n` through the two-query circuit on
/// `(f, L_y, g)`, whose driving qubit reads `0` with probability
/// `p = (1 + C/2^n) / 2`. Accuracy `ε` on the correlation needs `ε/2` on `p`.
pub struct CorrelationPointEstimator {
    estimator: AmplitudeEstimator,
    plan: EstimationPlan,
    epsilon: f64,
    delta: f64,
}

impl CorrelationPointEstimator {
    pub fn new(f: &TruthTable, g: &TruthTable, y: usize, epsilon: f64, delta: f64) -> Result<Self> {
        same_size(f, g)?;
        if !(epsilon > 0.0 && epsilon <= 0.25) {
            return Err(Error::InvalidArgument(format!("need 0 < ε ≤ 1/4, got {epsilon}")));
        }
        let plan = EstimationPlan::for_targets(epsilon / 2.0, delta)?;
        let c = a32(f, &linear(f.n(), y)?, g)?;
        let good = GoodSet::on(&c, |o| o == 0);
        let estimator = AmplitudeEstimator::new(&c.circuit, &good, plan.precision_qubits)?;
        Ok(Self {
            estimator,
            plan,
            epsilon,
            delta,
        })
    }

    pub fn plan(&self) -> EstimationPlan {
        self.plan
    }

    pub fn estimate(&self, seed: u64) -> Result<EstimationResult> {
        let p = self.estimator.median_estimate(self.plan.reps, seed)?;
        Ok(EstimationResult {
            alpha: 2.0 * p - 1.0,
            epsilon: self.epsilon,
            delta: self.delta,
            calls: self.plan.calls(),
            precision_qubits: self.plan.precision_qubits,
            reps: self.plan.reps,
            seed,
        })
    }
}

/// Signed estimate of `C_{f,g}(y) / 2^n` within `ε` with probability at least `1 − δ`.
pub fn estimate_cross_correlation_point(
    f: &TruthTable,
    g: &TruthTable,
    y: usize,
    epsilon: f64,
    delta: f64,
    seed: u64,
) -> Result<EstimationResult> {
    CorrelationPointEstimator::new(f, g, y, epsilon, delta)?.estimate(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::constant;

    fn coin(theta: f64) -> (Circuit, GoodSet) {
        let mut c = Circuit::new(1).unwrap();
        c.push(Gate::Ry { q: 0, theta }).unwrap();
        (c, GoodSet::new(vec![0], |o| o == 1))
    }

    #[test]
    fn qft_inverse_undoes_forward() {
        let qs = [0, 1, 2];
        let forward: Vec<Gate> = inverse_qft(&qs).iter().rev().map(Gate::inverse).collect();
        let mut s = crate::qsim::StateVector::new(3).unwrap();
        s.apply(&Gate::X { q: 1 }).unwrap();
        s.apply_all(&forward).unwrap();
        // QFT|y⟩ has amplitude e^{2πi y z / 8} / √8 on |z⟩
        for z in 0..8 {
            let expected = num_complex::Complex64::from_polar(1.0 / 8f64.sqrt(), 2.0 * PI * 2.0 * z as f64 / 8.0);
            assert!((s.amplitude(z) - expected).norm() < 1e-12, "z={z}");
        }
        s.apply_all(&inverse_qft(&qs)).unwrap();
        assert!((s.amplitude(2).re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_masses_are_exact() {
        let (c, good) = coin(0.0);
        let r = amplitude_estimate(&c, &good, 4, 3, 1).unwrap();
        assert_eq!(r.alpha, 0.0);
        let (c, good) = coin(PI);
        let r = amplitude_estimate(&c, &good, 4, 3, 1).unwrap();
        assert!((r.alpha - 1.0).abs() < 1e-12);
    }

    #[test]
    fn half_mass_at_three_qubits() {
        let (c, good) = coin(PI / 2.0);
        let est = AmplitudeEstimator::new(&c, &good, 3).unwrap();
        // support of the t = 3 estimator
        let support: Vec<usize> = (0..8)
            .filter(|y| est.phase_distribution().prob_index(*y) > 1e-12)
            .collect();
        assert_eq!(support, vec![2, 6]);
        for y in support {
            assert!((est.estimate_of(y) - 0.5).abs() < 1e-12);
        }
        let r = amplitude_estimate(&c, &good, 3, 5, 9).unwrap();
        assert!((r.alpha - 0.5).abs() < 1e-12);
        assert_eq!(r.calls, 5 * 15);
    }

    #[test]
    fn plan_for_default_targets() {
        let plan = EstimationPlan::for_targets(0.025, 0.1).unwrap();
        assert_eq!(plan.precision_qubits, 8);
        assert_eq!(plan.reps, 13);
        assert!(plan.run_error() <= 0.025);
        assert!(plan.calls() <= EstimationPlan::call_bound(0.05, 0.1));
    }

    #[test]
    fn call_bound_holds_across_targets() {
        for &eps in &[0.25, 0.2, 0.1, 0.05, 0.02, 0.01] {
            for &delta in &[0.9, 0.5, 0.3, 0.1, 0.01, 1e-4] {
                let plan = EstimationPlan::for_targets(eps / 2.0, delta).unwrap();
                assert!(
                    plan.calls() <= EstimationPlan::call_bound(eps, delta),
                    "ε={eps} δ={delta}"
                );
            }
        }
    }

    #[test]
    fn constant_pair_correlation_is_one() {
        let f = constant(2, 1).unwrap();
        let r = estimate_cross_correlation_point(&f, &f, 0b01, 0.1, 0.1, 3).unwrap();
        assert!((r.alpha - 1.0).abs() <= 0.1);
    }
}
