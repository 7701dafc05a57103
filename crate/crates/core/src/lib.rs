//! Weightless N-tuple neural decoding of block codes over a reversal,
//! insertion and deletion channel.
//!
//! The crate is organised around the simulation pipeline:
//! [`codebook`] builds messages, [`channel`] corrupts them, [`decoder`] votes
//! them back to codewords and [`metrics`] scores the result. [`harness`]
//! drives parameter sweeps; [`oracle`] holds brute-force references and
//! [`adam`] the correlation-matrix memory the decoder descends from.

pub mod adam;
pub mod bits;
pub mod channel;
pub mod codebook;
pub mod decoder;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod oracle;
pub mod rng;

pub use bits::{format_bits, hamming_distance, parse_bits};
pub use channel::{count_channel_inversions, transmit, ChannelParams, ErrorLog};
pub use codebook::{
    encode_message, encode_sequence, generate_codebook, split_groups, validate_codebook, BitStream,
    Codebook, Codeword, Origin, ValidationReport,
};
pub use decoder::{
    decode_group, decode_message, enumerate_index_sets, extract_mapper, prune_classifiers, vote,
    voter_confidence, ClassifierSet, Decoder, GroupDecision, IndexSet, Mapper, VoteTally,
};
pub use error::{Error, Result};
pub use metrics::{aggregate_iterations, bit_error_rate, memory_bytes, BerRecord};
