//! Reversal/insertion/deletion channel.
//!
//! Each input bit independently suffers exactly one of four outcomes, drawn
//! from a single categorical distribution: deletion, insertion of a random
//! bit ahead of it, inversion, or clean passage.

use rand::Rng;

use crate::codebook::{BitStream, Origin};
use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, SimRng};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    p_inv: f64,
    p_ins: f64,
    p_del: f64,
}

impl ChannelParams {
    pub fn new(p_inv: f64, p_ins: f64, p_del: f64) -> Result<Self> {
        for (name, p) in [("p_inv", p_inv), ("p_ins", p_ins), ("p_del", p_del)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidProbability(format!(
                    "{name} = {p} is outside [0, 1]"
                )));
            }
        }
        let total = p_inv + p_ins + p_del;
        // Allow for rounding in sums such as 0.7 + 0.2 + 0.1.
        if total > 1.0 + 1e-12 {
            return Err(Error::InvalidProbability(format!(
                "p_inv + p_ins + p_del = {total} exceeds 1"
            )));
        }
        Ok(Self {
            p_inv,
            p_ins,
            p_del,
        })
    }

    pub fn inversion_only(p_inv: f64) -> Result<Self> {
        Self::new(p_inv, 0.0, 0.0)
    }

    pub fn p_inv(&self) -> f64 {
        self.p_inv
    }

    pub fn p_ins(&self) -> f64 {
        self.p_ins
    }

    pub fn p_del(&self) -> f64 {
        self.p_del
    }

    /// Probability that a bit passes untouched.
    pub fn p_ok(&self) -> f64 {
        (1.0 - self.p_inv - self.p_ins - self.p_del).max(0.0)
    }

    /// Probability of correct reception in the inversion-only regime.
    pub fn p_rec(&self) -> f64 {
        1.0 - self.p_inv
    }
}

/// Positions (zero-based, in the input stream) of every channel event.
///
/// An insertion at position `i` means a random bit was emitted just before
/// input bit `i`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ErrorLog {
    pub inversions: Vec<usize>,
    pub insertions: Vec<usize>,
    pub deletions: Vec<usize>,
}

impl ErrorLog {
    pub fn inversion_count(&self) -> usize {
        self.inversions.len()
    }

    pub fn insertion_count(&self) -> usize {
        self.insertions.len()
    }

    pub fn deletion_count(&self) -> usize {
        self.deletions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inversions.is_empty() && self.insertions.is_empty() && self.deletions.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Event {
    Delete,
    Insert,
    Invert,
    Pass,
}

fn draw_event(params: &ChannelParams, rng: &mut SimRng) -> Event {
    let u: f64 = rng.gen();
    if u < params.p_del {
        Event::Delete
    } else if u < params.p_del + params.p_ins {
        Event::Insert
    } else if u < params.p_del + params.p_ins + params.p_inv {
        Event::Invert
    } else {
        Event::Pass
    }
}

/// Push `stream` through the channel with a generator seeded from `seed`.
pub fn transmit(stream: &BitStream, params: &ChannelParams, seed: u64) -> (BitStream, ErrorLog) {
    transmit_with(stream.bits(), params, &mut rng_from_seed(seed))
}

/// Same as [`transmit`] but drawing from a caller-supplied generator.
pub fn transmit_with(
    bits: &[u8],
    params: &ChannelParams,
    rng: &mut SimRng,
) -> (BitStream, ErrorLog) {
    let mut out = Vec::with_capacity(bits.len() + bits.len() / 8);
    let mut log = ErrorLog::default();
    for (i, &bit) in bits.iter().enumerate() {
        match draw_event(params, rng) {
            Event::Delete => log.deletions.push(i),
            Event::Insert => {
                out.push(u8::from(rng.gen::<bool>()));
                out.push(bit);
                log.insertions.push(i);
            }
            Event::Invert => {
                out.push(bit ^ 1);
                log.inversions.push(i);
            }
            Event::Pass => out.push(bit),
        }
    }
    (BitStream::from_raw(out, Origin::Received), log)
}

/// Count positions where the sent and received streams differ.
pub fn count_channel_inversions(sent: &[u8], received: &[u8]) -> Result<usize> {
    if sent.len() != received.len() {
        return Err(Error::LengthMismatch {
            expected: sent.len(),
            actual: received.len(),
        });
    }
    Ok(sent.iter().zip(received).filter(|(a, b)| a != b).count())
}
