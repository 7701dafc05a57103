//! Bit error rate, per-point aggregation and the memory model.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fraction of positions where the decoded stream differs from the sent one.
pub fn bit_error_rate(sent: &[u8], decoded: &[u8]) -> Result<f64> {
    if sent.len() != decoded.len() {
        return Err(Error::LengthMismatch {
            expected: sent.len(),
            actual: decoded.len(),
        });
    }
    if sent.is_empty() {
        return Err(Error::Empty("bit stream"));
    }
    let errors = sent.iter().zip(decoded).filter(|(a, b)| a != b).count();
    Ok(errors as f64 / sent.len() as f64)
}

/// Modelled decoder memory in bytes: `2^N * C * m / n`, kept exact.
pub fn memory_bytes(
    tuple_len: u32,
    codewords: u64,
    classifiers: u64,
    n: u64,
) -> Result<Ratio<u128>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "codeword length n must be positive".into(),
        ));
    }
    if tuple_len == 0 || codewords == 0 || classifiers == 0 {
        return Err(Error::InvalidArgument("N, C and m must be positive".into()));
    }
    let numerator = 1u128
        .checked_shl(tuple_len)
        .and_then(|p| p.checked_mul(u128::from(codewords)))
        .and_then(|p| p.checked_mul(u128::from(classifiers)))
        .ok_or_else(|| Error::InvalidArgument("memory model overflows".into()))?;
    Ok(Ratio::new(numerator, u128::from(n)))
}

/// Outcome of one simulated transmission at one sweep point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationStats {
    pub ber: f64,
    pub inversions: u64,
    pub undecided: u64,
    pub ties: u64,
}

/// Decoder parameters and channel probability identifying a sweep point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointKey {
    pub n: usize,
    pub tuple_len: usize,
    pub classifiers: usize,
    pub codewords: usize,
    pub probability: f64,
}

/// One row of sweep output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BerRecord {
    pub n: usize,
    #[serde(rename = "N")]
    pub tuple_len: usize,
    #[serde(rename = "m")]
    pub classifiers: usize,
    #[serde(rename = "C")]
    pub codewords: usize,
    pub probability: f64,
    pub iterations: usize,
    pub ber: f64,
    pub total_inversions: u64,
    pub avg_inversions: f64,
    pub undecided: u64,
    pub ties: u64,
}

impl BerRecord {
    pub fn key(&self) -> PointKey {
        PointKey {
            n: self.n,
            tuple_len: self.tuple_len,
            classifiers: self.classifiers,
            codewords: self.codewords,
            probability: self.probability,
        }
    }
}

/// Mean BER and summed counters over the iterations of one point.
pub fn aggregate_iterations(key: PointKey, per_iteration: &[IterationStats]) -> Result<BerRecord> {
    if per_iteration.is_empty() {
        return Err(Error::Empty("iteration list"));
    }
    let iterations = per_iteration.len();
    let ber = per_iteration.iter().map(|s| s.ber).sum::<f64>() / iterations as f64;
    let total_inversions: u64 = per_iteration.iter().map(|s| s.inversions).sum();
    Ok(BerRecord {
        n: key.n,
        tuple_len: key.tuple_len,
        classifiers: key.classifiers,
        codewords: key.codewords,
        probability: key.probability,
        iterations,
        ber,
        total_inversions,
        avg_inversions: total_inversions as f64 / iterations as f64,
        undecided: per_iteration.iter().map(|s| s.undecided).sum(),
        ties: per_iteration.iter().map(|s| s.ties).sum(),
    })
}

/// Standard error of the mean (sample standard deviation over sqrt(len)).
pub fn standard_error(values: &[f64]) -> f64 {
    let len = values.len();
    if len < 2 {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / len as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (len - 1) as f64;
    (var / len as f64).sqrt()
}
