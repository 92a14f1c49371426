//! Probability of hitting a set `S` of Walsh indices under four sampling
//! strategies, as closed forms in `p = 2^{-2n} Σ_{ω∈S} W_f(ω)^2` and as
//! read off simulated circuits.

use serde::Serialize;

use super::amplify::amplitude_amplify;
use super::GoodSet;
use crate::boolfn::{indicator_negated, TruthTable};
use crate::circuits::{a32, a33, deutsch_jozsa};
use crate::error::{Error, Result};
use crate::spectra::walsh_mass;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StrategyValues {
    /// One Deutsch–Jozsa shot lands in `S`.
    pub dj_once: f64,
    /// At least one of two shots lands in `S`.
    pub dj_twice: f64,
    /// One shot after a single amplification round with `S` as the good set.
    pub dj_aa1: f64,
    /// The three-query circuit on `(f, g_S, f)` returns a nonzero outcome.
    pub a33: f64,
}

impl StrategyValues {
    pub fn as_array(&self) -> [f64; 4] {
        [self.dj_once, self.dj_twice, self.dj_aa1, self.a33]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategyCurve {
    pub p: f64,
    pub closed: StrategyValues,
    pub simulated: StrategyValues,
    /// Output-`1` probability of the two-query circuit on `(f, g_S, f)`; equals `p`.
    pub a32_one: f64,
}

/// `p`, `2p − p²`, `sin²(3θ)` with `sin θ = √p`, and `4p − 4p²`.
pub fn closed_form(p: f64) -> StrategyValues {
    let p = p.clamp(0.0, 1.0);
    StrategyValues {
        dj_once: p,
        dj_twice: 2.0 * p - p * p,
        dj_aa1: (3.0 * p.sqrt().asin()).sin().powi(2),
        a33: 4.0 * p - 4.0 * p * p,
    }
}

pub fn strategy_curve(f: &TruthTable, set: &[usize]) -> Result<StrategyCurve> {
    if set.is_empty() {
        return Err(Error::InvalidArgument("the Walsh index set must be nonempty".into()));
    }
    let n = f.n();
    let g = indicator_negated(n, set)?;
    let p = walsh_mass(f, set)?;

    let dj = deutsch_jozsa(f)?;
    let in_set = GoodSet::on(&dj, |w| set.contains(&w));
    let once = dj.distribution()?.mass(|w| in_set.accepts(w));
    let aa1 = amplitude_amplify(&dj.circuit, &in_set, 1)?.success;

    let three = a33(f, &g, f)?.distribution()?.mass(|x| x != 0);
    let two = a32(f, &g, f)?.distribution()?.prob_index(1);

    Ok(StrategyCurve {
        p,
        closed: closed_form(p),
        simulated: StrategyValues {
            dj_once: once,
            dj_twice: 1.0 - (1.0 - once) * (1.0 - once),
            dj_aa1: aa1,
            a33: three,
        },
        a32_one: two,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::constant;

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form(0.0).as_array(), [0.0; 4]);
        let q = closed_form(0.25);
        assert_eq!(q.dj_once, 0.25);
        assert_eq!(q.dj_twice, 0.4375);
        assert!((q.dj_aa1 - 1.0).abs() < 1e-12);
        assert_eq!(q.a33, 0.75);
        assert_eq!(closed_form(0.75).a33, 0.75);
    }

    #[test]
    fn quarter_mass_function() {
        let f = TruthTable::new(2, vec![1, 1, -1, 1]).unwrap();
        let c = strategy_curve(&f, &[0]).unwrap();
        assert_eq!(c.p, 0.25);
        for (a, b) in c.closed.as_array().iter().zip(c.simulated.as_array()) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!((c.a32_one - 0.25).abs() < 1e-10);
    }

    #[test]
    fn empty_set_rejected() {
        assert!(strategy_curve(&constant(2, 1).unwrap(), &[]).is_err());
    }
}
