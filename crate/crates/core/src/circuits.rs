//! Builders for the Deutsch–Jozsa, Forrelation and register-driven
//! cross-correlation circuits.
//!
//! Each builder returns a [`Construction`]: the circuit, the qubits to
//! measure (in output-bit order) and a one-line statement of which outcome
//! probability equals which closed form.

use serde::Serialize;

use crate::boolfn::{same_size, TruthTable};
use crate::error::{Error, Result};
use crate::qsim::{dc_operator, dicke_prep, hadamards, run_distribution, Circuit, Gate, MeasurementDistribution};

pub const ROLE_QUERY: &str = "query";
pub const ROLE_KICKBACK: &str = "kickback";
pub const ROLE_DRIVING: &str = "driving";
pub const ROLE_REGISTER: &str = "register";

#[derive(Debug, Clone, Serialize)]
pub struct Construction {
    pub name: &'static str,
    pub circuit: Circuit,
    /// Measured qubits; output bitstrings list them in this order.
    pub measured: Vec<usize>,
    pub contract: String,
}

impl Construction {
    pub fn distribution(&self) -> Result<MeasurementDistribution> {
        run_distribution(&self.circuit, &self.measured)
    }

    pub fn oracle_queries(&self) -> usize {
        self.circuit.oracle_queries()
    }
}

fn oracle(table: &TruthTable, inputs: &[usize], target: usize) -> Gate {
    Gate::BitOracle {
        table: table.clone(),
        inputs: inputs.to_vec(),
        target,
    }
}

fn kickback_prep(anc: usize) -> [Gate; 2] {
    [Gate::X { q: anc }, Gate::H { q: anc }]
}

/// Query register `0..n`, kickback ancilla `n`.
fn query_layout(n: usize) -> Result<(Circuit, Vec<usize>, usize)> {
    let query: Vec<usize> = (0..n).collect();
    let circuit = Circuit::new(n + 1)?
        .with_role(ROLE_QUERY, query.clone())?
        .with_role(ROLE_KICKBACK, vec![n])?;
    Ok((circuit, query, n))
}

/// `H^n → U_{f_1} → H^n → … → U_{f_k} → H^n` on `|0^n⟩|−⟩`; the amplitude of
/// `|0^n⟩` is the `k`-fold Forrelation.
fn chain(fs: &[&TruthTable]) -> Result<(Circuit, Vec<usize>)> {
    let n = fs[0].n();
    for f in fs {
        same_size(fs[0], f)?;
    }
    let (mut c, query, anc) = query_layout(n)?;
    c.extend(kickback_prep(anc))?;
    c.extend(hadamards(&query))?;
    for f in fs {
        c.push(oracle(f, &query, anc))?;
        c.extend(hadamards(&query))?;
    }
    Ok((c, query))
}

/// Final query-register amplitudes are `W_f(x) / 2^n`.
pub fn deutsch_jozsa(f: &TruthTable) -> Result<Construction> {
    let (circuit, measured) = chain(&[f])?;
    Ok(Construction {
        name: "dj",
        circuit,
        measured,
        contract: "P(x) = W_f(x)^2 / 2^{2n}".into(),
    })
}

pub fn forrelation2_circuit(f1: &TruthTable, f2: &TruthTable) -> Result<Construction> {
    let (circuit, measured) = chain(&[f1, f2])?;
    Ok(Construction {
        name: "forr2",
        circuit,
        measured,
        contract: "P(0^n) = Φ_{f1,f2}^2".into(),
    })
}

/// Three-query circuit for 3-fold Forrelation.
pub fn a33(f1: &TruthTable, f2: &TruthTable, f3: &TruthTable) -> Result<Construction> {
    let (circuit, measured) = chain(&[f1, f2, f3])?;
    Ok(Construction {
        name: "a33",
        circuit,
        measured,
        contract: "P(0^n) = Φ_{f1,f2,f3}^2".into(),
    })
}

/// Two-query circuit for 3-fold Forrelation driven by a control qubit.
///
/// Layout: driving qubit `0`, query register `1..=n`, kickback `n + 1`.
/// The `0` branch runs `H^n U_{f1} H^n U_{f2} H^n`, the `1` branch runs
/// `H^n U_{f3}`, and the driving qubit is read in the Hadamard basis, so
/// `P(0) = (1 + ⟨ψ_1|ψ_0⟩) / 2 = (1 + Φ) / 2`.
pub fn a32(f1: &TruthTable, f2: &TruthTable, f3: &TruthTable) -> Result<Construction> {
    same_size(f1, f2)?;
    same_size(f2, f3)?;
    let n = f1.n();
    let driving = 0;
    let query: Vec<usize> = (1..=n).collect();
    let anc = n + 1;
    let mut c = Circuit::new(n + 2)?
        .with_role(ROLE_DRIVING, vec![driving])?
        .with_role(ROLE_QUERY, query.clone())?
        .with_role(ROLE_KICKBACK, vec![anc])?;

    c.push(Gate::H { q: driving })?;
    c.extend(kickback_prep(anc))?;

    let mut branch0 = hadamards(&query);
    branch0.push(oracle(f1, &query, anc));
    branch0.extend(hadamards(&query));
    branch0.push(oracle(f2, &query, anc));
    branch0.extend(hadamards(&query));
    c.push(Gate::ControlledBlock {
        control: driving,
        polarity: 0,
        body: branch0,
    })?;

    let mut branch1 = hadamards(&query);
    branch1.push(oracle(f3, &query, anc));
    c.push(Gate::ControlledBlock {
        control: driving,
        polarity: 1,
        body: branch1,
    })?;

    c.push(Gate::H { q: driving })?;
    Ok(Construction {
        name: "a32",
        circuit: c,
        measured: vec![driving],
        contract: "P(0) = (1 + Φ_{f1,f2,f3}) / 2".into(),
    })
}

/// How the register `R` is prepared before the cross-correlation circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "arg", rename_all = "snake_case")]
pub enum RegisterPrep {
    /// `X` on `r_i` wherever `u_i = 1`.
    Point(usize),
    /// `H` on every `r_i`.
    Uniform,
    /// Dicke state of the given weight.
    Dicke(usize),
}

impl RegisterPrep {
    fn gates(&self, register: &[usize]) -> Result<Vec<Gate>> {
        let n = register.len();
        match *self {
            RegisterPrep::Point(u) => {
                if u >> n != 0 {
                    return Err(Error::InvalidArgument(format!("point {u} does not fit in {n} bits")));
                }
                Ok(register
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (u >> (n - 1 - i)) & 1 == 1)
                    .map(|(_, &q)| Gate::X { q })
                    .collect())
            }
            RegisterPrep::Uniform => Ok(hadamards(register)),
            RegisterPrep::Dicke(k) => dicke_prep(register, k),
        }
    }

    /// Squared amplitude of `|u⟩` in the prepared register state.
    pub fn weight_of(&self, n: usize, u: usize) -> f64 {
        match *self {
            RegisterPrep::Point(p) => (p == u) as u8 as f64,
            RegisterPrep::Uniform => 1.0 / (1u64 << n) as f64,
            RegisterPrep::Dicke(k) => {
                if crate::bits::weight(u) as usize == k {
                    1.0 / crate::bits::binomial(n, k) as f64
                } else {
                    0.0
                }
            }
        }
    }
}

/// Register-driven cross-correlation circuit.
///
/// Layout: register `R = 0..n`, query `q_1..q_n = n..2n`, kickback `2n`.
/// Steps: prepare `R`; `HX` on the kickback qubit; `H^n`; `U_f`; `H^n`;
/// the `CNOT^{r_i,q_i}` cascade; `H^n`; `U_g`; `H^n`. With `R` in `|u⟩` the
/// cascade is an oracle for `L_u`, so the amplitude of `|u⟩|0^n⟩` is
/// `α_u · C_{f,g}(u) / 2^n`. Outcomes list `R` then the query register.
pub fn algorithm1(prep: RegisterPrep, f: &TruthTable, g: &TruthTable) -> Result<Construction> {
    same_size(f, g)?;
    let n = f.n();
    let register: Vec<usize> = (0..n).collect();
    let query: Vec<usize> = (n..2 * n).collect();
    let anc = 2 * n;
    if let RegisterPrep::Dicke(k) = prep {
        if k > n {
            return Err(Error::BadWeight { n, k });
        }
    }
    let mut c = Circuit::new(2 * n + 1)?
        .with_role(ROLE_REGISTER, register.clone())?
        .with_role(ROLE_QUERY, query.clone())?
        .with_role(ROLE_KICKBACK, vec![anc])?;

    c.extend(prep.gates(&register)?)?;
    c.extend(kickback_prep(anc))?;
    c.extend(hadamards(&query))?;
    c.push(oracle(f, &query, anc))?;
    c.extend(hadamards(&query))?;
    c.extend(dc_operator(&register, &query, anc)?)?;
    c.extend(hadamards(&query))?;
    c.push(oracle(g, &query, anc))?;
    c.extend(hadamards(&query))?;

    let mut measured = register;
    measured.extend(query);
    let contract = match prep {
        RegisterPrep::Point(_) => "P(u‖0^n) = C_{f,g}(u)^2 / 2^{2n}",
        RegisterPrep::Uniform => "P(u‖0^n) = C_{f,g}(u)^2 / 2^{3n}",
        RegisterPrep::Dicke(_) => "P(u‖0^n) = C_{f,g}(u)^2 / (C(n,i) 2^{2n}) on wt(u) = i, 0 elsewhere",
    };
    Ok(Construction {
        name: "alg1",
        circuit: c,
        measured,
        contract: contract.into(),
    })
}
