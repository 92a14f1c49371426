//! Reusable gate sequences: the doubly-controlled linear-phase cascade and
//! Dicke-state preparation.

use super::gate::Gate;
use crate::error::{Error, Result};

/// `CNOT^{r_i, q_i}_{anc}` for every `i`. With `anc` in `|−⟩` this acts as
/// `|u⟩|x⟩ ↦ (-1)^{u·x} |u⟩|x⟩`, i.e. an oracle for `L_u` selected by `R`.
pub fn dc_operator(r: &[usize], q: &[usize], anc: usize) -> Result<Vec<Gate>> {
    if r.len() != q.len() {
        return Err(Error::SizeMismatch {
            left: r.len(),
            right: q.len(),
        });
    }
    Ok(r.iter()
        .zip(q)
        .map(|(&ri, &qi)| Gate::Mcx {
            controls: vec![ri, qi],
            target: anc,
        })
        .collect())
}

/// Prepares `|D^n_k⟩` on `qubits` from `|0…0⟩` with `O(nk)` gates.
///
/// The last `k` qubits are flipped to `1`, then split-and-cyclic-shift blocks
/// are applied to prefixes of decreasing length `l = n, …, 2`. Each block
/// takes `|0^{l-j} 1^j⟩` to `√(j/l)|0^{l-j}1^j⟩ + √((l-j)/l)|0^{l-j-1}1^j 0⟩`
/// for `j ≤ min(k, l-1)`, which realizes the recursion
/// `D^l_k = √(k/l) D^{l-1}_{k-1}|1⟩ + √((l-k)/l) D^{l-1}_k|0⟩`.
pub fn dicke_prep(qubits: &[usize], k: usize) -> Result<Vec<Gate>> {
    let n = qubits.len();
    if k > n || n == 0 {
        return Err(Error::BadWeight { n, k });
    }
    let mut gates: Vec<Gate> = qubits[n - k..].iter().map(|&q| Gate::X { q }).collect();
    if k == 0 || k == n {
        return Ok(gates);
    }
    for l in (2..=n).rev() {
        split_and_shift(&mut gates, &qubits[..l], k.min(l - 1));
    }
    Ok(gates)
}

/// One split-and-cyclic-shift block on the prefix `p` (length `l`).
fn split_and_shift(gates: &mut Vec<Gate>, p: &[usize], k: usize) {
    let l = p.len();
    let last = p[l - 1];
    for i in 1..=k {
        let pivot = p[l - 1 - i];
        // cos(θ/2) = √(i/l)
        let theta = 2.0 * ((i as f64) / (l as f64)).sqrt().acos();
        let rotation = Gate::Ry { q: pivot, theta };
        let controlled = if i == 1 {
            Gate::ControlledBlock {
                control: last,
                polarity: 1,
                body: vec![rotation],
            }
        } else {
            Gate::ControlledBlock {
                control: last,
                polarity: 1,
                body: vec![Gate::ControlledBlock {
                    control: p[l - i],
                    polarity: 1,
                    body: vec![rotation],
                }],
            }
        };
        gates.push(Gate::Cnot {
            control: pivot,
            target: last,
        });
        gates.push(controlled);
        gates.push(Gate::Cnot {
            control: pivot,
            target: last,
        });
    }
}
