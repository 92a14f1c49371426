//! Truth tables of `n`-variable Boolean functions in the `{+1, -1}` convention.
//!
//! Entry `i` of a table is `f(x)` where the binary expansion of `i` is
//! `x_1 x_2 ... x_n` with `x_1` most significant. Bit `0` maps to `+1` and
//! bit `1` maps to `-1`; the 0/1 form only appears at the file boundary.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::{dot_parity, format_bits, weight};
use crate::error::{Error, Result};
use crate::spectra::walsh_transform;

pub const MAX_VARIABLES: usize = 12;

/// A `{+1, -1}`-valued function on `{0,1}^n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct TruthTable {
    n: usize,
    values: Vec<i8>,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    n: usize,
    bits: String,
}

impl TryFrom<TableRepr> for TruthTable {
    type Error = Error;

    fn try_from(repr: TableRepr) -> Result<Self> {
        parse_truth_table(&format!("n={}\n{}", repr.n, repr.bits))
    }
}

impl From<TruthTable> for TableRepr {
    fn from(table: TruthTable) -> Self {
        TableRepr {
            n: table.n,
            bits: table.bit_string(),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if (1..=MAX_VARIABLES).contains(&n) {
        Ok(())
    } else {
        Err(Error::BadVariableCount(n))
    }
}

impl TruthTable {
    /// Builds a table from `±1` values.
    pub fn new(n: usize, values: Vec<i8>) -> Result<Self> {
        check_n(n)?;
        if values.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                found: values.len(),
            });
        }
        if let Some(bad) = values.iter().find(|v| **v != 1 && **v != -1) {
            return Err(Error::InvalidArgument(format!("table entry {bad} is not +1 or -1")));
        }
        Ok(Self { n, values })
    }

    /// Builds a table by evaluating `f` at every input index.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize) -> bool) -> Result<Self> {
        check_n(n)?;
        let values = (0..1usize << n).map(|x| if f(x) { -1 } else { 1 }).collect();
        Ok(Self { n, values })
    }

    /// Uniformly random table from a seeded generator.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_n(n)?;
        Self::from_fn(n, |_| rng.gen())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn value(&self, x: usize) -> i8 {
        self.values[x]
    }

    /// `true` where the 0/1 output is `1`, i.e. the table holds `-1`.
    #[inline]
    pub fn is_negative(&self, x: usize) -> bool {
        self.values[x] < 0
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn negate(&self) -> Self {
        Self {
            n: self.n,
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    /// The 0/1 bit string, `'1'` where the value is `-1`.
    pub fn bit_string(&self) -> String {
        self.values.iter().map(|v| if *v < 0 { '1' } else { '0' }).collect()
    }

    /// Serializes into the two-line file format read by [`parse_truth_table`].
    pub fn to_file_string(&self) -> String {
        format!("n={}\n{}\n", self.n, self.bit_string())
    }

    pub fn sum(&self) -> i64 {
        self.values.iter().map(|v| *v as i64).sum()
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(n={}, {})", self.n, self.bit_string())
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bit_string())
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_truth_table(s)
    }
}

/// Parses the truth-table file format:
///
/// ```text
/// # optional comments
/// n=2
/// 0001
/// ```
pub fn parse_truth_table(text: &str) -> Result<TruthTable> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (_, header) = lines.next().ok_or(Error::MissingHeader)?;
    let n: usize = header
        .strip_prefix("n=")
        .and_then(|rest| rest.trim().parse().ok())
        .ok_or(Error::MissingHeader)?;
    check_n(n)?;

    let mut values = Vec::with_capacity(1 << n);
    for (line_no, line) in lines {
        for ch in line.chars() {
            match ch {
                '0' => values.push(1),
                '1' => values.push(-1),
                c if c.is_whitespace() => {}
                c => return Err(Error::BadCharacter { ch: c, line: line_no }),
            }
        }
    }
    if values.len() != 1 << n {
        return Err(Error::LengthMismatch {
            expected: 1 << n,
            found: values.len(),
        });
    }
    Ok(TruthTable { n, values })
}

pub fn constant(n: usize, sign: i8) -> Result<TruthTable> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument(format!("sign {sign} is not ±1")));
    }
    check_n(n)?;
    Ok(TruthTable {
        n,
        values: vec![sign; 1 << n],
    })
}

/// The linear function `L_y(x) = (-1)^{x·y}`; equal to row `y` of the
/// unnormalized Hadamard matrix.
pub fn linear(n: usize, y: usize) -> Result<TruthTable> {
    check_n(n)?;
    if y >> n != 0 {
        return Err(Error::InvalidArgument(format!("mask {y} does not fit in {n} bits")));
    }
    TruthTable::from_fn(n, |x| dot_parity(x, y))
}

/// `-1` exactly on the inputs in `set`.
pub fn indicator_negated(n: usize, set: &[usize]) -> Result<TruthTable> {
    check_n(n)?;
    if let Some(bad) = set.iter().find(|x| **x >> n != 0) {
        return Err(Error::InvalidArgument(format!("point {bad} does not fit in {n} bits")));
    }
    let mut values = vec![1i8; 1 << n];
    for x in set {
        values[*x] = -1;
    }
    Ok(TruthTable { n, values })
}

/// `-1` on every input of Hamming weight at most `m`.
pub fn weight_threshold(n: usize, m: usize) -> Result<TruthTable> {
    check_n(n)?;
    if m >= n {
        return Err(Error::InvalidArgument(format!("need m < n, got m={m}, n={n}")));
    }
    TruthTable::from_fn(n, |x| weight(x) as usize <= m)
}

/// Pointwise product, i.e. the XOR of the 0/1 forms.
pub fn xor(f: &TruthTable, g: &TruthTable) -> Result<TruthTable> {
    same_size(f, g)?;
    Ok(TruthTable {
        n: f.n,
        values: f.values.iter().zip(&g.values).map(|(a, b)| a * b).collect(),
    })
}

pub(crate) fn same_size(f: &TruthTable, g: &TruthTable) -> Result<()> {
    if f.n != g.n {
        return Err(Error::SizeMismatch { left: f.n, right: g.n });
    }
    Ok(())
}

pub fn is_balanced(f: &TruthTable) -> bool {
    f.sum() == 0
}

/// Every Walsh coefficient has magnitude `2^{n/2}`. Always false for odd `n`.
pub fn is_bent(f: &TruthTable) -> bool {
    if f.n % 2 == 1 {
        return false;
    }
    let target = 1i64 << (f.n / 2);
    walsh_transform(f).values().iter().all(|w| w.abs() == target)
}

/// The dual bent function `f̂(ω) = W_f(ω) / 2^{n/2}`.
pub fn dual(f: &TruthTable) -> Result<TruthTable> {
    if !is_bent(f) {
        return Err(Error::NotBent);
    }
    let scale = 1i64 << (f.n / 2);
    let values = walsh_transform(f).values().iter().map(|w| (w / scale) as i8).collect();
    Ok(TruthTable { n: f.n, values })
}

/// Upper-triangular coefficient pairs `(i, j)`, `i < j`, of a quadratic form.
fn variable_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// `(-1)^{Σ a_ij x_i x_j}` for the coefficient pairs selected by `mask`.
fn quadratic_form(n: usize, pairs: &[(usize, usize)], mask: u64) -> TruthTable {
    let chosen: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .filter(|(k, _)| (mask >> k) & 1 == 1)
        .map(|(_, p)| *p)
        .collect();
    let bit = |x: usize, var: usize| (x >> (n - 1 - var)) & 1;
    TruthTable::from_fn(n, |x| {
        chosen.iter().map(|&(i, j)| bit(x, i) & bit(x, j)).sum::<usize>() & 1 == 1
    })
    .expect("n already validated")
}

const FAMILY_CANDIDATES: usize = 512;
const FAMILY_SEED: u64 = 0x6b65_7264_6f63_6b00;

/// A family of quadratic bent functions whose pairwise XORs are all bent.
///
/// Candidates are quadratic forms, screened with [`is_bent`], and a clique of
/// pairwise-compatible members is found by depth-first search. Every member
/// and every pairwise XOR of the returned family has been checked with the
/// brute-force Walsh transform.
pub fn bent_family(n: usize) -> Result<Vec<TruthTable>> {
    if n < 4 || n % 2 == 1 || n > MAX_VARIABLES {
        return Err(Error::UnsupportedN(n));
    }
    let target = (1usize << (n / 2)).min(8);
    let pairs = variable_pairs(n);
    let mask_space = 1u64 << pairs.len();

    let mut rng = ChaCha8Rng::seed_from_u64(FAMILY_SEED);
    let mut masks: Vec<u64> = if pairs.len() <= 15 {
        (1..mask_space).collect()
    } else {
        (0..FAMILY_CANDIDATES * 8)
            .map(|_| rng.gen_range(1..mask_space))
            .collect()
    };
    masks.shuffle(&mut rng);
    let candidates: Vec<TruthTable> = masks
        .into_iter()
        .map(|m| quadratic_form(n, &pairs, m))
        .filter(is_bent)
        .take(FAMILY_CANDIDATES)
        .collect();

    let mut compatible = vec![vec![None::<bool>; candidates.len()]; candidates.len()];
    let mut chosen = Vec::with_capacity(target);
    if !extend_family(&candidates, &mut compatible, &mut chosen, 0, target) {
        return Err(Error::UnsupportedN(n));
    }
    let family: Vec<TruthTable> = chosen.into_iter().map(|i| candidates[i].clone()).collect();

    for (i, f) in family.iter().enumerate() {
        debug_assert!(is_bent(f));
        for g in &family[i + 1..] {
            if !is_bent(&xor(f, g)?) {
                return Err(Error::SimulationInconsistency(
                    "bent family pair failed verification".into(),
                ));
            }
        }
    }
    Ok(family)
}

fn extend_family(
    candidates: &[TruthTable],
    compatible: &mut [Vec<Option<bool>>],
    chosen: &mut Vec<usize>,
    start: usize,
    target: usize,
) -> bool {
    if chosen.len() == target {
        return true;
    }
    for c in start..candidates.len() {
        if candidates.len() - c < target - chosen.len() {
            return false;
        }
        let fits = chosen.iter().all(|&p| {
            *compatible[p][c].get_or_insert_with(|| is_bent(&xor(&candidates[p], &candidates[c]).expect("same n")))
        });
        if fits {
            chosen.push(c);
            if extend_family(candidates, compatible, chosen, c + 1, target) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Every table on `n` variables, in index order of their bit strings.
pub fn all_functions(n: usize) -> impl Iterator<Item = TruthTable> {
    assert!(n <= 4, "exhaustive enumeration is limited to n <= 4");
    (0u64..1u64 << (1u64 << n))
        .map(move |code| TruthTable::from_fn(n, |x| (code >> ((1usize << n) - 1 - x)) & 1 == 1).expect("n in range"))
}

/// Human-readable label of an input, e.g. `"01"`.
pub fn input_label(n: usize, x: usize) -> String {
    format_bits(x, n)
}
