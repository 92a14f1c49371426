//! Classical spectra and exact Forrelation values.
//!
//! These are the reference quantities every simulated circuit is compared
//! against. Spectra stay in exact integers; Forrelation values are `f64`
//! because the normalizers `2^{-3n/2}` are irrational for odd `n`.

use serde::Serialize;

use crate::bits::{dot_sign, weight};
use crate::boolfn::{same_size, TruthTable};
use crate::error::{Error, Result};

/// In-place unnormalized Walsh–Hadamard butterfly. Applying it twice scales
/// the input by `len`.
pub fn fwht_in_place(data: &mut [i64]) {
    let len = data.len();
    assert!(len.is_power_of_two(), "length must be a power of two");
    let mut half = 1;
    while half < len {
        for block in data.chunks_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        half *= 2;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumKind {
    Walsh,
    CrossCorrelation,
    Autocorrelation,
}

/// `W_f(ω) = Σ_x f(x) (-1)^{x·ω}` for every `ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: usize,
    values: Vec<i64>,
}

impl WalshSpectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn at(&self, omega: usize) -> i64 {
        self.values[omega]
    }

    /// `Σ_ω W_f(ω)^2`; equals `2^{2n}` for every Boolean function.
    pub fn energy(&self) -> i64 {
        self.values.iter().map(|w| w * w).sum()
    }

    pub fn export(&self) -> SpectrumExport<'_> {
        SpectrumExport {
            n: self.n,
            kind: SpectrumKind::Walsh,
            values: &self.values,
        }
    }
}

/// `C_{f,g}(y) = Σ_x f(x) g(x ⊕ y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelationSpectrum {
    n: usize,
    values: Vec<i64>,
    is_auto: bool,
}

impl CorrelationSpectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn at(&self, y: usize) -> i64 {
        self.values[y]
    }

    pub fn is_auto(&self) -> bool {
        self.is_auto
    }

    pub fn energy(&self) -> i64 {
        self.values.iter().map(|c| c * c).sum()
    }

    /// `Σ_{wt(y) = i} C(y)^2`.
    pub fn weight_energy(&self, i: usize) -> i64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(y, _)| weight(*y) as usize == i)
            .map(|(_, c)| c * c)
            .sum()
    }

    pub fn export(&self) -> SpectrumExport<'_> {
        SpectrumExport {
            n: self.n,
            kind: if self.is_auto {
                SpectrumKind::Autocorrelation
            } else {
                SpectrumKind::CrossCorrelation
            },
            values: &self.values,
        }
    }
}

/// JSON form of a spectrum: `{"n": .., "kind": .., "values": [..]}`.
#[derive(Debug, Serialize)]
pub struct SpectrumExport<'a> {
    pub n: usize,
    pub kind: SpectrumKind,
    pub values: &'a [i64],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ForrelationValue {
    pub value: f64,
    pub k: usize,
    pub n: usize,
}

pub fn walsh_transform(f: &TruthTable) -> WalshSpectrum {
    let mut values: Vec<i64> = f.values().iter().map(|v| *v as i64).collect();
    fwht_in_place(&mut values);
    WalshSpectrum { n: f.n(), values }
}

/// Cross-correlation through the transform identity
/// `C_{f,g} = 2^{-n} Ĥ_n (W_f · W_g)`.
pub fn cross_correlation(f: &TruthTable, g: &TruthTable) -> Result<CorrelationSpectrum> {
    same_size(f, g)?;
    let wf = walsh_transform(f);
    let wg = walsh_transform(g);
    let mut values: Vec<i64> = wf.values.iter().zip(&wg.values).map(|(a, b)| a * b).collect();
    fwht_in_place(&mut values);
    let n = f.n();
    for v in values.iter_mut() {
        debug_assert_eq!(*v % (1 << n), 0);
        *v >>= n;
    }
    Ok(CorrelationSpectrum {
        n,
        values,
        is_auto: false,
    })
}

pub fn auto_correlation(f: &TruthTable) -> CorrelationSpectrum {
    let mut spectrum = cross_correlation(f, f).expect("same table");
    spectrum.is_auto = true;
    spectrum
}

/// `Φ_{f,g} = 2^{-3n/2} Σ_x f(x) W_g(x)`.
pub fn forrelation2(f: &TruthTable, g: &TruthTable) -> Result<ForrelationValue> {
    same_size(f, g)?;
    let n = f.n();
    let wg = walsh_transform(g);
    let sum: i64 = f.values().iter().zip(wg.values()).map(|(a, w)| *a as i64 * w).sum();
    Ok(ForrelationValue {
        value: sum as f64 / 2f64.powf(1.5 * n as f64),
        k: 2,
        n,
    })
}

/// Product form `Φ_{f1,f2,f3} = 2^{-2n} Σ_x f2(x) W_{f1}(x) W_{f3}(x)`.
pub fn forrelation3(f1: &TruthTable, f2: &TruthTable, f3: &TruthTable) -> Result<ForrelationValue> {
    same_size(f1, f2)?;
    same_size(f2, f3)?;
    let n = f1.n();
    let w1 = walsh_transform(f1);
    let w3 = walsh_transform(f3);
    let sum: i64 = (0..1usize << n).map(|x| f2.value(x) as i64 * w1.at(x) * w3.at(x)).sum();
    Ok(ForrelationValue {
        value: sum as f64 / (1u64 << (2 * n)) as f64,
        k: 3,
        n,
    })
}

pub const FORRELATION_K_MAX_BITS: usize = 24;

/// `k`-fold Forrelation by the full nested sum over `x_1..x_k`.
pub fn forrelation_k(fs: &[TruthTable]) -> Result<ForrelationValue> {
    let k = fs.len();
    if !(2..=4).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "forrelation needs 2 to 4 functions, got {k}"
        )));
    }
    for pair in fs.windows(2) {
        same_size(&pair[0], &pair[1])?;
    }
    let n = fs[0].n();
    if k * n > FORRELATION_K_MAX_BITS {
        return Err(Error::TooLarge(format!(
            "k·n = {} exceeds {}",
            k * n,
            FORRELATION_K_MAX_BITS
        )));
    }
    let size = 1usize << n;
    let total: i64 = (0..size)
        .map(|x| fs[0].value(x) as i64 * chain_sum(&fs[1..], x, size))
        .sum();
    let norm = 2f64.powf((k + 1) as f64 * n as f64 / 2.0);
    Ok(ForrelationValue {
        value: total as f64 / norm,
        k,
        n,
    })
}

fn chain_sum(rest: &[TruthTable], prev: usize, size: usize) -> i64 {
    match rest.split_first() {
        None => 1,
        Some((head, tail)) => (0..size)
            .map(|x| dot_sign(prev, x) * head.value(x) as i64 * chain_sum(tail, x, size))
            .sum(),
    }
}

/// Final query-register amplitudes of the `k`-query chain
/// `H^n U_{f_1} H^n … U_{f_k} H^n |0^n⟩`, computed classically with
/// Walsh–Hadamard transforms. Entry `0` is the `k`-fold Forrelation.
pub fn chain_amplitudes(fs: &[&TruthTable]) -> Result<Vec<f64>> {
    let first = fs
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty function chain".into()))?;
    for f in fs {
        same_size(first, f)?;
    }
    let n = first.n();
    let mut v: Vec<i64> = vec![1; 1 << n];
    for f in fs {
        for (x, a) in v.iter_mut().enumerate() {
            *a *= f.value(x) as i64;
        }
        fwht_in_place(&mut v);
    }
    let norm = 2f64.powf((fs.len() + 1) as f64 * n as f64 / 2.0);
    Ok(v.into_iter().map(|a| a as f64 / norm).collect())
}

/// `p = 2^{-2n} Σ_{x ∈ S} W_f(x)^2`, the chance a Deutsch–Jozsa run lands in `S`.
pub fn walsh_mass(f: &TruthTable, set: &[usize]) -> Result<f64> {
    let n = f.n();
    if let Some(bad) = set.iter().find(|x| **x >> n != 0) {
        return Err(Error::InvalidArgument(format!("point {bad} does not fit in {n} bits")));
    }
    let mut points = set.to_vec();
    points.sort_unstable();
    points.dedup();
    let w = walsh_transform(f);
    let sum: i64 = points.iter().map(|x| w.at(*x).pow(2)).sum();
    Ok(sum as f64 / (1u64 << (2 * n)) as f64)
}

/// `W_f(ω) = 0` for every `ω` of weight at most `m`.
pub fn is_m_resilient(f: &TruthTable, m: usize) -> bool {
    zero_up_to_weight(walsh_transform(f).values(), m)
}

/// Largest `m < n` such that `f` is `m`-resilient, or `-1`.
pub fn resiliency_order(f: &TruthTable) -> i32 {
    let w = walsh_transform(f);
    let order = largest_zero_weight(w.values());
    order.min(f.n() as i32 - 1)
}

/// Largest `m` with `C_{f,g}(y) = 0` for all `wt(y) ≤ m`; `-1` when
/// `C_{f,g}(0) ≠ 0` and `n` when the whole spectrum vanishes.
pub fn uncorrelated_degree(f: &TruthTable, g: &TruthTable) -> Result<i32> {
    let c = cross_correlation(f, g)?;
    Ok(largest_zero_weight(c.values()))
}

fn zero_up_to_weight(values: &[i64], m: usize) -> bool {
    values
        .iter()
        .enumerate()
        .all(|(x, v)| weight(x) as usize > m || *v == 0)
}

/// Largest `m` such that every entry of weight `≤ m` vanishes, `-1` if the
/// weight-0 entry is nonzero, `n` if all vanish.
fn largest_zero_weight(values: &[i64]) -> i32 {
    let n = values.len().trailing_zeros() as i32;
    let lowest_nonzero = values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != 0)
        .map(|(x, _)| weight(x) as i32)
        .min();
    match lowest_nonzero {
        Some(w) => w - 1,
        None => n,
    }
}
