use num_complex::Complex64;

use super::gate::{Circuit, Gate};
use super::MAX_QUBITS;
use crate::error::{Error, Result};

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Dense amplitudes over `q` qubits. Basis index bit `q - 1 - i` holds qubit `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    q: usize,
    amps: Vec<Complex64>,
}

/// Restriction of a gate to basis states where `index & mask == value`.
#[derive(Clone, Copy)]
struct Ctrl {
    mask: usize,
    value: usize,
}

impl StateVector {
    /// `|0…0⟩` on `q` qubits.
    pub fn new(q: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidArgument("need at least one qubit".into()));
        }
        if q > MAX_QUBITS {
            return Err(Error::TooManyQubits(q));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << q];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { q, amps })
    }

    /// Wraps raw amplitudes; the caller is responsible for normalization.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() || amps.len() < 2 {
            return Err(Error::InvalidArgument(
                "amplitude count must be a power of two ≥ 2".into(),
            ));
        }
        let q = amps.len().trailing_zeros() as usize;
        if q > MAX_QUBITS {
            return Err(Error::TooManyQubits(q));
        }
        Ok(Self { q, amps })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    #[inline]
    fn bit(&self, qubit: usize) -> usize {
        1 << (self.q - 1 - qubit)
    }

    /// Reads the pattern on `qubits` out of a basis index, first qubit most significant.
    #[inline]
    fn gather(&self, index: usize, qubits: &[usize]) -> usize {
        qubits
            .iter()
            .fold(0, |acc, &qb| (acc << 1) | ((index >> (self.q - 1 - qb)) & 1))
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.q)?;
        self.apply_ctrl(gate, Ctrl { mask: 0, value: 0 });
        Ok(())
    }

    pub fn apply_all(&mut self, gates: &[Gate]) -> Result<()> {
        for g in gates {
            self.apply(g)?;
        }
        Ok(())
    }

    fn apply_ctrl(&mut self, gate: &Gate, ctrl: Ctrl) {
        match gate {
            Gate::H { q } => {
                let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
                self.single(*q, ctrl, [[h, h], [h, -h]]);
            }
            Gate::X { q } => self.flip(*q, ctrl),
            Gate::Ry { q, theta } => {
                let (s, c) = (theta / 2.0).sin_cos();
                let c = Complex64::new(c, 0.0);
                let s = Complex64::new(s, 0.0);
                self.single(*q, ctrl, [[c, -s], [s, c]]);
            }
            Gate::Phase { q, theta } => {
                let b = self.bit(*q);
                let phase = Complex64::from_polar(1.0, *theta);
                self.diagonal(ctrl, |i| if i & b != 0 { Some(phase) } else { None });
            }
            Gate::GlobalPhase { theta } => {
                let phase = Complex64::from_polar(1.0, *theta);
                self.diagonal(ctrl, |_| Some(phase));
            }
            Gate::Cnot { control, target } => {
                let b = self.bit(*control);
                self.flip(
                    *target,
                    Ctrl {
                        mask: ctrl.mask | b,
                        value: ctrl.value | b,
                    },
                );
            }
            Gate::Mcx { controls, target } => {
                let m = controls.iter().fold(0, |acc, c| acc | self.bit(*c));
                self.flip(
                    *target,
                    Ctrl {
                        mask: ctrl.mask | m,
                        value: ctrl.value | m,
                    },
                );
            }
            Gate::Mcz { qubits } => {
                let m = qubits.iter().fold(0, |acc, c| acc | self.bit(*c));
                let neg = Complex64::new(-1.0, 0.0);
                self.diagonal(ctrl, |i| if i & m == m { Some(neg) } else { None });
            }
            Gate::PhaseMark { qubits, marked } => {
                let neg = Complex64::new(-1.0, 0.0);
                let q = self.q;
                let gather = |i: usize| qubits.iter().fold(0, |acc, &qb| (acc << 1) | ((i >> (q - 1 - qb)) & 1));
                self.diagonal(ctrl, |i| if marked[gather(i)] { Some(neg) } else { None });
            }
            Gate::BitOracle { table, inputs, target } => {
                let tb = self.bit(*target);
                for i in 0..self.amps.len() {
                    if i & tb != 0 || i & ctrl.mask != ctrl.value {
                        continue;
                    }
                    if table.is_negative(self.gather(i, inputs)) {
                        self.amps.swap(i, i | tb);
                    }
                }
            }
            Gate::ControlledBlock {
                control,
                polarity,
                body,
            } => {
                let b = self.bit(*control);
                let inner = Ctrl {
                    mask: ctrl.mask | b,
                    value: if *polarity == 0 { ctrl.value } else { ctrl.value | b },
                };
                for g in body {
                    self.apply_ctrl(g, inner);
                }
            }
        }
    }

    fn single(&mut self, q: usize, ctrl: Ctrl, m: [[Complex64; 2]; 2]) {
        let b = self.bit(q);
        for i in 0..self.amps.len() {
            if i & b != 0 || i & ctrl.mask != ctrl.value {
                continue;
            }
            let (a0, a1) = (self.amps[i], self.amps[i | b]);
            self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[i | b] = m[1][0] * a0 + m[1][1] * a1;
        }
    }

    fn flip(&mut self, q: usize, ctrl: Ctrl) {
        let b = self.bit(q);
        for i in 0..self.amps.len() {
            if i & b == 0 && i & ctrl.mask == ctrl.value {
                self.amps.swap(i, i | b);
            }
        }
    }

    fn diagonal(&mut self, ctrl: Ctrl, factor: impl Fn(usize) -> Option<Complex64>) {
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & ctrl.mask == ctrl.value {
                if let Some(f) = factor(i) {
                    *a *= f;
                }
            }
        }
    }
}

/// Runs `circuit` from `|0…0⟩`.
pub fn run(circuit: &Circuit) -> Result<StateVector> {
    let mut state = StateVector::new(circuit.q())?;
    state.apply_all(circuit.gates())?;
    Ok(state)
}
