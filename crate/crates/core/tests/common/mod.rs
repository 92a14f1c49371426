//! Definitional brute-force oracles shared by the integration tests. They
//! deliberately avoid the library's fast transforms.

#![allow(dead_code)]

use forrel::boolfn::TruthTable;

pub fn sign(x: usize, y: usize) -> i64 {
    if (x & y).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn walsh(f: &TruthTable) -> Vec<i64> {
    let size = 1usize << f.n();
    (0..size)
        .map(|w| (0..size).map(|x| f.value(x) as i64 * sign(x, w)).sum())
        .collect()
}

pub fn correlation(f: &TruthTable, g: &TruthTable) -> Vec<i64> {
    let size = 1usize << f.n();
    (0..size)
        .map(|y| (0..size).map(|x| f.value(x) as i64 * g.value(x ^ y) as i64).sum())
        .collect()
}

/// `2^{-3n/2} Σ_{x,y} f(x) (-1)^{x·y} g(y)`.
pub fn forrelation2(f: &TruthTable, g: &TruthTable) -> f64 {
    let n = f.n();
    let size = 1usize << n;
    let mut total = 0i64;
    for x in 0..size {
        for y in 0..size {
            total += f.value(x) as i64 * sign(x, y) * g.value(y) as i64;
        }
    }
    total as f64 / 2f64.powf(1.5 * n as f64)
}

/// `2^{-2n} Σ_{x,y,z} f1(x) (-1)^{x·y} f2(y) (-1)^{y·z} f3(z)`.
pub fn forrelation3(f1: &TruthTable, f2: &TruthTable, f3: &TruthTable) -> f64 {
    let n = f1.n();
    let size = 1usize << n;
    let mut total = 0i64;
    for x in 0..size {
        for y in 0..size {
            let left = f1.value(x) as i64 * sign(x, y) * f2.value(y) as i64;
            for z in 0..size {
                total += left * sign(y, z) * f3.value(z) as i64;
            }
        }
    }
    total as f64 / (1u64 << (2 * n)) as f64
}

pub fn wt(x: usize) -> usize {
    x.count_ones() as usize
}

pub fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn resilient(f: &TruthTable, m: usize) -> bool {
    walsh(f).iter().enumerate().all(|(w, v)| wt(w) > m || *v == 0)
}

pub fn uncorrelated(f: &TruthTable, g: &TruthTable, m: usize) -> bool {
    correlation(f, g).iter().enumerate().all(|(y, c)| wt(y) > m || *c == 0)
}

pub fn is_bent(f: &TruthTable) -> bool {
    let half = 1i64 << (f.n() / 2);
    f.n().is_multiple_of(2) && walsh(f).iter().all(|w| w.abs() == half)
}

pub fn dual(f: &TruthTable) -> TruthTable {
    let half = 1i64 << (f.n() / 2);
    TruthTable::new(f.n(), walsh(f).iter().map(|w| (w / half) as i8).collect()).unwrap()
}

pub fn every_function(n: usize) -> Vec<TruthTable> {
    let size = 1usize << n;
    (0..1u64 << size)
        .map(|bits| TruthTable::new(n, (0..size).map(|x| if bits >> x & 1 == 1 { -1 } else { 1 }).collect()).unwrap())
        .collect()
}
