//! Dense statevector simulation.
//!
//! Circuits are gate lists over at most [`MAX_QUBITS`] qubits; every state
//! starts at `|0…0⟩` and all output probabilities are computed exactly from
//! the final amplitudes. Sampling is layered on top with seeded generators.

mod fragments;
mod gate;
mod measure;
mod state;

pub use fragments::{dc_operator, dicke_prep};
pub use gate::{hadamards, query_count, Circuit, Gate};
pub use measure::{
    measure_distribution, round_probability, sample, sample_with, MeasurementDistribution, OutcomeSampler,
    PROBABILITY_FLOOR,
};
pub use state::{run, StateVector};

pub const MAX_QUBITS: usize = 22;

/// Runs `circuit` and returns the exact distribution over `subset`.
pub fn run_distribution(circuit: &Circuit, subset: &[usize]) -> crate::Result<MeasurementDistribution> {
    measure_distribution(&run(circuit)?, subset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::all_functions;
    use num_complex::Complex64;

    #[test]
    fn bit_oracle_on_minus_equals_phase_oracle() {
        for n in 1..=3 {
            let inputs: Vec<usize> = (0..n).collect();
            for f in all_functions(n) {
                let mut prep = StateVector::new(n + 1).unwrap();
                prep.apply_all(&hadamards(&inputs)).unwrap();
                prep.apply(&Gate::X { q: n }).unwrap();
                prep.apply(&Gate::H { q: n }).unwrap();

                let mut kicked = prep.clone();
                kicked
                    .apply(&Gate::BitOracle {
                        table: f.clone(),
                        inputs: inputs.clone(),
                        target: n,
                    })
                    .unwrap();

                let phased: Vec<Complex64> = prep
                    .amplitudes()
                    .iter()
                    .enumerate()
                    .map(|(i, a)| a * f.value(i >> 1) as f64)
                    .collect();
                for (a, b) in kicked.amplitudes().iter().zip(&phased) {
                    assert!((a - b).norm() < 1e-12);
                }
            }
        }
    }
}
