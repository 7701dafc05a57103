//! Helpers for binary symbol sequences.
//!
//! Bits are stored one per `u8` and must be 0 or 1. Text form is a run of
//! `'0'`/`'1'` characters; whitespace is ignored on input so that bracketed
//! vectors such as `1 0 1 1` can be pasted directly.

use crate::error::{Error, Result};

/// Parse a string of `0`/`1` characters, skipping whitespace.
pub fn parse_bits(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .filter(|c| !c.is_whitespace())
        .enumerate()
        .map(|(position, c)| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            value => Err(Error::NonBinary { position, value }),
        })
        .collect()
}

pub fn format_bits(bits: &[u8]) -> String {
    bits.iter()
        .map(|&b| if b == 0 { '0' } else { '1' })
        .collect()
}

pub(crate) fn check_binary(bits: &[u8]) -> Result<()> {
    match bits.iter().position(|&b| b > 1) {
        Some(position) => Err(Error::NonBinary {
            position,
            value: char::from_digit(u32::from(bits[position]) % 36, 36).unwrap_or('?'),
        }),
        None => Ok(()),
    }
}

/// Number of positions where two equal-length sequences differ.
pub fn hamming_distance(a: &[u8], b: &[u8]) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count())
}

/// Pack up to 64 bits into a word; position 1 (index 0) is bit 0.
pub(crate) fn pack(bits: &[u8]) -> u64 {
    debug_assert!(bits.len() <= 64);
    bits.iter()
        .enumerate()
        .fold(0u64, |acc, (i, &b)| acc | (u64::from(b & 1) << i))
}

/// Value of a word read as a binary numeral, first bit most significant.
pub(crate) fn numeric_value(bits: &[u8]) -> u64 {
    bits.iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b))
}

pub(crate) fn from_numeric(value: u64, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((value >> (n - 1 - i)) & 1) as u8).collect()
}
