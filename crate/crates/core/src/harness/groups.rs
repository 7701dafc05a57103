//! Classifier reduction groups for the 8-bit decoders.
//!
//! Each group removes everything the previous group removed plus the ordinals
//! listed for it. Ordinals follow the lexicographic index-set numbering.

use std::fmt;
use std::str::FromStr;

use crate::decoder::{enumerate_index_sets, prune_classifiers, ClassifierSet};
use crate::error::{Error, Result};

/// Codeword length the reduction groups were drawn up for.
pub const GROUP_CODEWORD_LEN: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReductionGroup {
    A,
    B,
    C,
    D,
}

impl ReductionGroup {
    pub const ALL: [ReductionGroup; 4] = [Self::A, Self::B, Self::C, Self::D];

    fn rank(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::A => "group-a",
            Self::B => "group-b",
            Self::C => "group-c",
            Self::D => "group-d",
        }
    }
}

impl fmt::Display for ReductionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ReductionGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "group-a" | "a" => Ok(Self::A),
            "group-b" | "b" => Ok(Self::B),
            "group-c" | "c" => Ok(Self::C),
            "group-d" | "d" => Ok(Self::D),
            other => Err(Error::Config(format!("unknown reduction group {other:?}"))),
        }
    }
}

const PAIR_STEPS: [&[usize]; 4] = [
    &[2, 9, 15, 20, 24, 27],
    &[7, 13, 16, 19, 5, 18],
    &[3, 10, 14, 23, 28],
    &[21, 6, 11, 25, 8],
];

// I_14 appears in both the C and D steps; the union leaves 15 classifiers in
// group D rather than the 14 the group heading announces.
const TRIPLE_STEPS: [&[usize]; 4] = [
    &[8, 28, 42, 51, 17, 20, 10, 30, 2, 27, 31, 34, 36, 13],
    &[4, 7, 15, 19, 25, 32, 38, 41, 47, 50, 54, 9, 24],
    &[37, 56, 52, 40, 14, 33],
    &[14, 45, 3, 21, 48, 23, 16, 55, 6],
];

/// Ordinals listed for one group on its own, as published.
pub fn group_step(tuple_len: usize, group: ReductionGroup) -> Result<&'static [usize]> {
    let steps = match tuple_len {
        2 => &PAIR_STEPS,
        3 => &TRIPLE_STEPS,
        _ => {
            return Err(Error::Config(format!(
                "reduction groups exist only for N = 2 and N = 3, not N = {tuple_len}"
            )))
        }
    };
    Ok(steps[group.rank()])
}

/// Every ordinal removed by `group`, including earlier groups, each listed
/// once in order of first appearance.
pub fn cumulative_removals(tuple_len: usize, group: ReductionGroup) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for g in ReductionGroup::ALL.iter().take(group.rank() + 1) {
        for &ordinal in group_step(tuple_len, *g)? {
            if !out.contains(&ordinal) {
                out.push(ordinal);
            }
        }
    }
    Ok(out)
}

/// The retained classifier set for `group` on the 8-bit decoder.
pub fn reduced_classifiers(tuple_len: usize, group: ReductionGroup) -> Result<ClassifierSet> {
    let full = enumerate_index_sets(GROUP_CODEWORD_LEN, tuple_len)?;
    prune_classifiers(&full, &cumulative_removals(tuple_len, group)?)
}
