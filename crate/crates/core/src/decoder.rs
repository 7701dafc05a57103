//! N-tuple binary neural network decoder.
//!
//! Every classifier looks at one index set: a fixed selection of `N` of the
//! `n` bit positions. For a received group, a classifier casts one vote for
//! each codeword that agrees with the group on all of its positions. The
//! codeword with the most votes is taken as the transmitted one.
//!
//! Positions are 1-based everywhere in the public API, and index-set ordinals
//! follow the lexicographic order of their position lists, starting at 1
//! (`{1,2,3}`, `{1,2,4}`, ...).

use std::collections::BTreeSet;
use std::fmt;

use crate::bits::pack;
use crate::codebook::{split_groups, BitStream, Codebook, Origin};
use crate::error::{Error, Result};

/// Packed words hold at most this many positions.
pub const MAX_WORD_LEN: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    positions: Vec<usize>,
    ordinal: usize,
}

impl IndexSet {
    /// Sorted, 1-based positions.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// 1-based rank in the lexicographic enumeration.
    pub fn ordinal(&self) -> usize {
        self.ordinal
    }

    pub fn tuple_len(&self) -> usize {
        self.positions.len()
    }

    fn mask(&self) -> u64 {
        self.positions
            .iter()
            .fold(0u64, |m, &p| m | (1u64 << (p - 1)))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I_{} = {{", self.ordinal)?;
        for (i, p) in self.positions.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// Ordered collection of index sets used together by one decoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifierSet {
    n: usize,
    tuple_len: usize,
    sets: Vec<IndexSet>,
}

impl ClassifierSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tuple_len(&self) -> usize {
        self.tuple_len
    }

    pub fn index_sets(&self) -> &[IndexSet] {
        &self.sets
    }

    /// Number of classifiers, `m`.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn by_ordinal(&self, ordinal: usize) -> Option<&IndexSet> {
        self.sets.iter().find(|s| s.ordinal == ordinal)
    }

    /// True when this is the full set of all `C(n, N)` index sets.
    pub fn is_full(&self) -> bool {
        binomial(self.n, self.tuple_len) == Some(self.sets.len() as u64)
    }

    /// Positions `1..=n` that no index set covers.
    pub fn uncovered_positions(&self) -> Vec<usize> {
        let covered: BTreeSet<usize> = self
            .sets
            .iter()
            .flat_map(|s| s.positions.iter().copied())
            .collect();
        (1..=self.n).filter(|p| !covered.contains(p)).collect()
    }

    pub fn has_coverage(&self) -> bool {
        self.uncovered_positions().is_empty()
    }

    fn masks(&self) -> Vec<u64> {
        self.sets.iter().map(IndexSet::mask).collect()
    }
}

fn binomial(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).ok()
}

fn check_dimensions(n: usize, tuple_len: usize) -> Result<()> {
    if n > MAX_WORD_LEN {
        return Err(Error::UnsupportedLength {
            n,
            min: crate::codebook::MIN_CODEWORD_LEN,
            max: MAX_WORD_LEN,
        });
    }
    if tuple_len <= 1 || tuple_len > n {
        return Err(Error::InvalidTupleLength { n, tuple_len });
    }
    Ok(())
}

/// All `C(n, N)` index sets in lexicographic order.
pub fn enumerate_index_sets(n: usize, tuple_len: usize) -> Result<ClassifierSet> {
    check_dimensions(n, tuple_len)?;
    if n < crate::codebook::MIN_CODEWORD_LEN {
        return Err(Error::InvalidTupleLength { n, tuple_len });
    }
    let mut sets = Vec::new();
    let mut current: Vec<usize> = (1..=tuple_len).collect();
    loop {
        sets.push(IndexSet {
            positions: current.clone(),
            ordinal: sets.len() + 1,
        });
        // Rightmost slot that can still move up.
        let Some(slot) = (0..tuple_len)
            .rev()
            .find(|&i| current[i] < n - (tuple_len - 1 - i))
        else {
            break;
        };
        current[slot] += 1;
        for i in slot + 1..tuple_len {
            current[i] = current[i - 1] + 1;
        }
    }
    Ok(ClassifierSet { n, tuple_len, sets })
}

/// Drop the listed ordinals from a full classifier set.
///
/// Ordinal labels of the survivors are kept. Fails if an ordinal is unknown
/// or repeated, or if the survivors no longer cover every position.
pub fn prune_classifiers(full: &ClassifierSet, removed: &[usize]) -> Result<ClassifierSet> {
    if !full.is_full() {
        return Err(Error::NotFullSet {
            expected: binomial(full.n, full.tuple_len).unwrap_or(u64::MAX) as usize,
            actual: full.len(),
        });
    }
    let mut drop = BTreeSet::new();
    for &ordinal in removed {
        if ordinal == 0 || ordinal > full.len() {
            return Err(Error::UnknownOrdinal(ordinal));
        }
        if !drop.insert(ordinal) {
            return Err(Error::DuplicateOrdinal(ordinal));
        }
    }
    let pruned = ClassifierSet {
        n: full.n,
        tuple_len: full.tuple_len,
        sets: full
            .sets
            .iter()
            .filter(|s| !drop.contains(&s.ordinal))
            .cloned()
            .collect(),
    };
    let missing = pruned.uncovered_positions();
    if !missing.is_empty() {
        return Err(Error::CoverageLost { missing });
    }
    Ok(pruned)
}

/// Bits of a word read at an index set's positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mapper(pub Vec<u8>);

pub fn extract_mapper(word: &[u8], idx: &IndexSet) -> Result<Mapper> {
    let needed = idx.positions.last().copied().unwrap_or(0);
    if word.len() < needed {
        return Err(Error::LengthMismatch {
            expected: needed,
            actual: word.len(),
        });
    }
    Ok(Mapper(idx.positions.iter().map(|&p| word[p - 1]).collect()))
}

/// Votes per codeword, in codebook order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoteTally {
    pub votes: Vec<u32>,
    /// Number of classifiers that voted.
    pub classifiers: usize,
}

impl VoteTally {
    pub fn new(votes: Vec<u32>, classifiers: usize) -> Self {
        Self { votes, classifiers }
    }

    pub fn max(&self) -> u32 {
        self.votes.iter().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupDecision {
    /// Zero-based index of the chosen codeword.
    pub winner: usize,
    /// Winning vote minus runner-up vote.
    pub confidence: u32,
    /// More than one codeword shares a non-zero maximum.
    pub tie: bool,
    /// Every codeword received zero votes.
    pub undecided: bool,
}

/// Winner, confidence and flags for one tally.
///
/// The lowest index among maximal codewords wins. An all-zero tally is
/// flagged undecided (not tied) and reports codeword 0.
pub fn decode_group(tally: &VoteTally) -> GroupDecision {
    let max = tally.max();
    let winner = tally.votes.iter().position(|&v| v == max).unwrap_or(0);
    let sharing = tally.votes.iter().filter(|&&v| v == max).count();
    let undecided = max == 0;
    GroupDecision {
        winner,
        confidence: runner_up_gap(&tally.votes, winner),
        tie: sharing > 1 && !undecided,
        undecided,
    }
}

fn runner_up_gap(votes: &[u32], winner: usize) -> u32 {
    let runner_up = votes
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != winner)
        .map(|(_, &v)| v)
        .max()
        .unwrap_or(0);
    votes
        .get(winner)
        .copied()
        .unwrap_or(0)
        .saturating_sub(runner_up)
}

/// Difference between the top vote and the best vote once one top entry is
/// set aside. Zero exactly when the maximum is shared.
pub fn voter_confidence(tally: &VoteTally) -> Result<u32> {
    if tally.votes.len() < 2 {
        return Err(Error::TooFewCodewords(tally.votes.len()));
    }
    Ok(decode_group(tally).confidence)
}

/// Codebook and classifier set bound together, with words pre-packed.
#[derive(Debug, Clone)]
pub struct Decoder {
    codebook: Codebook,
    classifiers: ClassifierSet,
    packed_codewords: Vec<u64>,
    masks: Vec<u64>,
}

impl Decoder {
    pub fn new(codebook: Codebook, classifiers: ClassifierSet) -> Result<Self> {
        codebook.ensure_valid()?;
        if codebook.n() != classifiers.n {
            return Err(Error::LengthMismatch {
                expected: classifiers.n,
                actual: codebook.n(),
            });
        }
        let packed_codewords = codebook
            .codewords()
            .iter()
            .map(|c| pack(c.bits()))
            .collect();
        let masks = classifiers.masks();
        Ok(Self {
            codebook,
            classifiers,
            packed_codewords,
            masks,
        })
    }

    pub fn codebook(&self) -> &Codebook {
        &self.codebook
    }

    pub fn classifiers(&self) -> &ClassifierSet {
        &self.classifiers
    }

    pub fn n(&self) -> usize {
        self.classifiers.n
    }

    pub fn vote(&self, group: &[u8]) -> Result<VoteTally> {
        if group.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: group.len(),
            });
        }
        Ok(self.vote_packed(pack(group)))
    }

    fn vote_packed(&self, group: u64) -> VoteTally {
        let votes = self
            .packed_codewords
            .iter()
            .map(|&cw| {
                let diff = cw ^ group;
                self.masks.iter().filter(|&&m| diff & m == 0).count() as u32
            })
            .collect();
        VoteTally::new(votes, self.masks.len())
    }

    /// Decode every `n`-bit group of `received` and rebuild the message from
    /// the winning codewords.
    pub fn decode_message(&self, received: &[u8]) -> Result<(BitStream, Vec<GroupDecision>)> {
        let groups = split_groups(received, self.n())?;
        let mut bits = Vec::with_capacity(received.len());
        let mut decisions = Vec::with_capacity(groups.len());
        for group in groups {
            let decision = decode_group(&self.vote_packed(pack(group)));
            bits.extend_from_slice(self.codebook.codewords()[decision.winner].bits());
            decisions.push(decision);
        }
        Ok((BitStream::from_raw(bits, Origin::Decoded), decisions))
    }
}

/// One-shot vote without building a [`Decoder`] first.
pub fn vote(group: &[u8], cb: &Codebook, cls: &ClassifierSet) -> Result<VoteTally> {
    Decoder::new(cb.clone(), cls.clone())?.vote(group)
}

pub fn decode_message(
    received: &[u8],
    cb: &Codebook,
    cls: &ClassifierSet,
) -> Result<(BitStream, Vec<GroupDecision>)> {
    Decoder::new(cb.clone(), cls.clone())?.decode_message(received)
}

/// Selected index sets from a full enumeration, keeping their ordinals.
/// Unlike [`prune_classifiers`] this does not demand coverage.
pub fn select_classifiers(full: &ClassifierSet, ordinals: &[usize]) -> Result<ClassifierSet> {
    let mut seen = BTreeSet::new();
    let mut sets = Vec::with_capacity(ordinals.len());
    for &ordinal in ordinals {
        if !seen.insert(ordinal) {
            return Err(Error::DuplicateOrdinal(ordinal));
        }
        let set = full
            .by_ordinal(ordinal)
            .ok_or(Error::UnknownOrdinal(ordinal))?;
        sets.push(set.clone());
    }
    sets.sort_by_key(|s| s.ordinal);
    Ok(ClassifierSet {
        n: full.n,
        tuple_len: full.tuple_len,
        sets,
    })
}
