//! Brute-force references for the decoder.
//!
//! Deliberately naive and self-contained: nothing here calls into the decoder
//! or the packed-word helpers, so the property tests compare two independent
//! routes to the same answer.

use crate::codebook::Codebook;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HammingDecode {
    /// Distance from the group to each codeword, in codebook order.
    pub distances: Vec<usize>,
    /// Zero-based indices of every codeword at the minimum distance.
    pub nearest: Vec<usize>,
}

pub fn min_hamming_decode(group: &[u8], cb: &Codebook) -> Result<HammingDecode> {
    let mut distances = Vec::with_capacity(cb.count());
    for cw in cb.codewords() {
        let bits = cw.bits();
        if bits.len() != group.len() {
            return Err(Error::LengthMismatch {
                expected: bits.len(),
                actual: group.len(),
            });
        }
        let mut d = 0;
        for i in 0..bits.len() {
            if bits[i] != group[i] {
                d += 1;
            }
        }
        distances.push(d);
    }
    let best = distances.iter().copied().min().unwrap_or(0);
    let nearest = (0..distances.len())
        .filter(|&j| distances[j] == best)
        .collect();
    Ok(HammingDecode { distances, nearest })
}

/// `C(k, N)`: the number of `N`-position index sets lying entirely inside
/// `k` agreeing positions. Zero when `k < N`.
pub fn closed_form_votes(agreement: usize, tuple_len: usize) -> u64 {
    if tuple_len > agreement {
        return 0;
    }
    // Pascal's rule, one row at a time.
    let mut row = vec![1u64];
    for _ in 0..agreement {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[tuple_len]
}
