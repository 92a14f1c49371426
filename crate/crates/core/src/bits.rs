//! Bitstring helpers shared by every module.
//!
//! A bitstring `b_1 b_2 ... b_w` is read with `b_1` as the most significant
//! bit, so `"10"` is index 2.

use crate::error::{Error, Result};

/// Formats `value` as a `width`-character bitstring, most significant bit first.
pub fn format_bits(value: usize, width: usize) -> String {
    (0..width)
        .map(|i| if (value >> (width - 1 - i)) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parses a bitstring of exactly `width` characters.
pub fn parse_bits(text: &str, width: usize) -> Result<usize> {
    let text = text.trim();
    if text.len() != width {
        return Err(Error::LengthMismatch {
            expected: width,
            found: text.len(),
        });
    }
    let mut value = 0usize;
    for ch in text.chars() {
        value <<= 1;
        match ch {
            '0' => {}
            '1' => value |= 1,
            other => return Err(Error::BadCharacter { ch: other, line: 1 }),
        }
    }
    Ok(value)
}

/// Hamming weight.
#[inline]
pub fn weight(x: usize) -> u32 {
    x.count_ones()
}

/// Parity of `x · y` over GF(2).
#[inline]
pub fn dot_parity(x: usize, y: usize) -> bool {
    (x & y).count_ones() & 1 == 1
}

/// `(-1)^{x·y}`.
#[inline]
pub fn dot_sign(x: usize, y: usize) -> i64 {
    if dot_parity(x, y) {
        -1
    } else {
        1
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        assert_eq!(format_bits(2, 2), "10");
        assert_eq!(format_bits(1, 3), "001");
        assert_eq!(parse_bits("101", 3).unwrap(), 5);
        assert!(matches!(parse_bits("10", 3), Err(Error::LengthMismatch { .. })));
        assert!(matches!(parse_bits("1x1", 3), Err(Error::BadCharacter { ch: 'x', .. })));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(6, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(12, 6), 924);
    }
}
