use std::collections::BTreeMap;

use serde::Serialize;

use crate::boolfn::TruthTable;
use crate::error::{Error, Result};

/// One circuit element. Qubit `0` is the most significant position of a
/// basis label.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "gate", rename_all = "snake_case")]
pub enum Gate {
    H {
        q: usize,
    },
    X {
        q: usize,
    },
    /// `exp(-i θ Y / 2)`.
    Ry {
        q: usize,
        theta: f64,
    },
    /// `diag(1, e^{iθ})`.
    Phase {
        q: usize,
        theta: f64,
    },
    /// `e^{iθ}` on the whole (possibly controlled) subspace.
    GlobalPhase {
        theta: f64,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    Mcx {
        controls: Vec<usize>,
        target: usize,
    },
    /// `-1` when every listed qubit is `1`.
    Mcz {
        qubits: Vec<usize>,
    },
    /// `U_f |x⟩|a⟩ = |x⟩|a ⊕ [f(x) = -1]⟩` with `x` read from `inputs`, first
    /// input most significant.
    BitOracle {
        table: TruthTable,
        inputs: Vec<usize>,
        target: usize,
    },
    /// `-1` on every basis state whose pattern on `qubits` is marked.
    /// Used for reflections about a set of good outcomes.
    PhaseMark {
        qubits: Vec<usize>,
        marked: Vec<bool>,
    },
    /// `body` applied only where `control` equals `polarity`.
    ControlledBlock {
        control: usize,
        polarity: u8,
        body: Vec<Gate>,
    },
}

impl Gate {
    /// Every qubit the gate reads or writes, control included.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::H { q } | Gate::X { q } | Gate::Ry { q, .. } | Gate::Phase { q, .. } => vec![*q],
            Gate::GlobalPhase { .. } => Vec::new(),
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Mcx { controls, target } => {
                let mut qs = controls.clone();
                qs.push(*target);
                qs
            }
            Gate::Mcz { qubits } | Gate::PhaseMark { qubits, .. } => qubits.clone(),
            Gate::BitOracle { inputs, target, .. } => {
                let mut qs = inputs.clone();
                qs.push(*target);
                qs
            }
            Gate::ControlledBlock { control, body, .. } => {
                let mut qs = vec![*control];
                for g in body {
                    qs.extend(g.qubits());
                }
                qs.sort_unstable();
                qs.dedup();
                qs
            }
        }
    }

    /// Checks indices are in range and distinct within the gate.
    pub fn validate(&self, q: usize) -> Result<()> {
        let local = match self {
            Gate::ControlledBlock { control, body, .. } => {
                for g in body {
                    g.validate(q)?;
                    if g.qubits().contains(control) {
                        return Err(Error::IndexOutOfRange(format!(
                            "control qubit {control} also used inside its block"
                        )));
                    }
                }
                vec![*control]
            }
            Gate::PhaseMark { qubits, marked } => {
                if marked.len() != 1 << qubits.len() {
                    return Err(Error::InvalidArgument("phase mark table has the wrong length".into()));
                }
                qubits.clone()
            }
            Gate::BitOracle { table, inputs, .. } => {
                if table.n() != inputs.len() {
                    return Err(Error::SizeMismatch {
                        left: table.n(),
                        right: inputs.len(),
                    });
                }
                self.qubits()
            }
            other => other.qubits(),
        };
        let mut seen = local.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != local.len() {
            return Err(Error::IndexOutOfRange(format!("repeated qubit in {local:?}")));
        }
        if let Some(bad) = local.iter().find(|i| **i >= q) {
            return Err(Error::IndexOutOfRange(format!("qubit {bad} on a {q}-qubit register")));
        }
        Ok(())
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::Ry { q, theta } => Gate::Ry { q: *q, theta: -theta },
            Gate::Phase { q, theta } => Gate::Phase { q: *q, theta: -theta },
            Gate::GlobalPhase { theta } => Gate::GlobalPhase { theta: -theta },
            Gate::ControlledBlock {
                control,
                polarity,
                body,
            } => Gate::ControlledBlock {
                control: *control,
                polarity: *polarity,
                body: body.iter().rev().map(Gate::inverse).collect(),
            },
            other => other.clone(),
        }
    }

    /// Same gate with every qubit index moved up by `offset`.
    pub fn shifted(&self, offset: usize) -> Gate {
        let s = |q: &usize| q + offset;
        let sv = |qs: &Vec<usize>| qs.iter().map(s).collect::<Vec<_>>();
        match self {
            Gate::H { q } => Gate::H { q: s(q) },
            Gate::X { q } => Gate::X { q: s(q) },
            Gate::Ry { q, theta } => Gate::Ry { q: s(q), theta: *theta },
            Gate::Phase { q, theta } => Gate::Phase { q: s(q), theta: *theta },
            Gate::GlobalPhase { theta } => Gate::GlobalPhase { theta: *theta },
            Gate::Cnot { control, target } => Gate::Cnot {
                control: s(control),
                target: s(target),
            },
            Gate::Mcx { controls, target } => Gate::Mcx {
                controls: sv(controls),
                target: s(target),
            },
            Gate::Mcz { qubits } => Gate::Mcz { qubits: sv(qubits) },
            Gate::BitOracle { table, inputs, target } => Gate::BitOracle {
                table: table.clone(),
                inputs: sv(inputs),
                target: s(target),
            },
            Gate::PhaseMark { qubits, marked } => Gate::PhaseMark {
                qubits: sv(qubits),
                marked: marked.clone(),
            },
            Gate::ControlledBlock {
                control,
                polarity,
                body,
            } => Gate::ControlledBlock {
                control: s(control),
                polarity: *polarity,
                body: body.iter().map(|g| g.shifted(offset)).collect(),
            },
        }
    }

    /// Number of oracle gates anywhere inside this gate.
    pub fn oracle_gates(&self) -> usize {
        match self {
            Gate::BitOracle { .. } => 1,
            Gate::ControlledBlock { body, .. } => body.iter().map(Gate::oracle_gates).sum(),
            _ => 0,
        }
    }
}

/// Number of oracle queries made by a gate sequence.
///
/// A pair of adjacent blocks on the same control with opposite polarities
/// runs its two bodies on orthogonal branches, so the pair costs the larger
/// of the two bodies rather than their sum.
pub fn query_count(gates: &[Gate]) -> usize {
    let mut total = 0;
    let mut i = 0;
    while i < gates.len() {
        match (&gates[i], gates.get(i + 1)) {
            (
                Gate::ControlledBlock {
                    control: c0,
                    polarity: p0,
                    body: b0,
                },
                Some(Gate::ControlledBlock {
                    control: c1,
                    polarity: p1,
                    body: b1,
                }),
            ) if c0 == c1 && p0 != p1 => {
                total += query_count(b0).max(query_count(b1));
                i += 2;
            }
            (Gate::ControlledBlock { body, .. }, _) => {
                total += query_count(body);
                i += 1;
            }
            (g, _) => {
                total += g.oracle_gates();
                i += 1;
            }
        }
    }
    total
}

/// An ordered gate list over `q` qubits with named, disjoint qubit roles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Circuit {
    q: usize,
    roles: BTreeMap<String, Vec<usize>>,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(q: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidArgument("circuit needs at least one qubit".into()));
        }
        if q > super::MAX_QUBITS {
            return Err(Error::TooManyQubits(q));
        }
        Ok(Self {
            q,
            roles: BTreeMap::new(),
            gates: Vec::new(),
        })
    }

    /// Declares a named qubit group. Groups must be disjoint.
    pub fn with_role(mut self, name: &str, qubits: Vec<usize>) -> Result<Self> {
        if let Some(bad) = qubits.iter().find(|i| **i >= self.q) {
            return Err(Error::IndexOutOfRange(format!("role {name} uses qubit {bad}")));
        }
        for (other, qs) in &self.roles {
            if let Some(shared) = qubits.iter().find(|i| qs.contains(i)) {
                return Err(Error::InvalidArgument(format!(
                    "qubit {shared} is in both {other} and {name}"
                )));
            }
        }
        self.roles.insert(name.to_string(), qubits);
        Ok(self)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn roles(&self) -> &BTreeMap<String, Vec<usize>> {
        &self.roles
    }

    /// Qubits of a declared role.
    pub fn role(&self, name: &str) -> Result<&[usize]> {
        self.roles
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::InvalidArgument(format!("no role named {name}")))
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.q)?;
        if !self.roles.is_empty() {
            for qb in gate.qubits() {
                if !self.roles.values().any(|qs| qs.contains(&qb)) {
                    return Err(Error::IndexOutOfRange(format!(
                        "qubit {qb} is not in any declared role"
                    )));
                }
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// Oracle queries, counting complementary controlled branches once.
    pub fn oracle_queries(&self) -> usize {
        query_count(&self.gates)
    }

    /// Oracle gates present in the circuit.
    pub fn oracle_gates(&self) -> usize {
        self.gates.iter().map(Gate::oracle_gates).sum()
    }

    pub fn inverse_gates(&self) -> Vec<Gate> {
        self.gates.iter().rev().map(Gate::inverse).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit serializes")
    }
}

pub fn hadamards(qubits: &[usize]) -> Vec<Gate> {
    qubits.iter().map(|&q| Gate::H { q }).collect()
}
