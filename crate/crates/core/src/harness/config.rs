//! Experiment configuration.
//!
//! Configs are flat `key = value` files (TOML syntax). Any key left out takes
//! the default of the selected test.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::groups::{ReductionGroup, GROUP_CODEWORD_LEN};
use crate::codebook::MIN_CODEWORD_LEN;
use crate::error::{Error, Result};

/// Message length that every codeword length from 3 to 8 divides.
pub const DEFAULT_MESSAGE_BITS: usize = 1680;
pub const DEFAULT_ITERATIONS: usize = 10;
pub const DEFAULT_CODEWORDS: usize = 4;

/// Channel inversion probabilities swept by the tests.
pub const CONDITION_GRID: [f64; 19] = [
    0.001, 0.005, 0.007, 0.008, 0.01, 0.02, 0.05, 0.07, 0.08, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7,
    0.8, 0.9, 1.0,
];

/// [`CONDITION_GRID`] plus 0.002, in ascending order.
pub fn default_grid() -> Vec<f64> {
    let mut grid = CONDITION_GRID.to_vec();
    grid.push(0.002);
    grid.sort_by(f64::total_cmp);
    grid
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TestId {
    Test1,
    Test2,
    Test3,
    Custom,
}

impl FromStr for TestId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "1" | "test1" => Ok(Self::Test1),
            "2" | "test2" => Ok(Self::Test2),
            "3" | "test3" => Ok(Self::Test3),
            "custom" => Ok(Self::Custom),
            other => Err(Error::Config(format!("unknown test {other:?}"))),
        }
    }
}

impl fmt::Display for TestId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Test1 => "test1",
            Self::Test2 => "test2",
            Self::Test3 => "test3",
            Self::Custom => "custom",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TupleLengths {
    /// Every `N` with `2 <= N <= n`.
    AllValid,
    List(Vec<usize>),
}

impl TupleLengths {
    pub fn for_length(&self, n: usize) -> Vec<usize> {
        match self {
            Self::AllValid => (2..=n).collect(),
            Self::List(list) => list.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifierSpec {
    /// All `C(n, N)` index sets.
    Max,
    /// The maximum set followed by every reduction group.
    AllGroups,
    Group(ReductionGroup),
    /// Explicit ordinals to remove from the maximum set.
    Removal(Vec<usize>),
}

impl FromStr for ClassifierSpec {
    type Err = Error;

    /// `max`, `groups`, a group name, or a comma-separated ordinal list.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "max" => return Ok(Self::Max),
            "groups" | "all-groups" => return Ok(Self::AllGroups),
            _ => {}
        }
        if let Ok(group) = s.parse::<ReductionGroup>() {
            return Ok(Self::Group(group));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .trim_start_matches(['I', 'i', '_'])
                    .parse::<usize>()
                    .map_err(|_| Error::Config(format!("bad classifier ordinal {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::Removal)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub test: TestId,
    pub message_bits: usize,
    pub iterations: usize,
    pub probability_grid: Vec<f64>,
    pub codeword_lengths: Vec<usize>,
    pub tuple_lengths: TupleLengths,
    pub classifiers: ClassifierSpec,
    pub codewords: usize,
    pub codebook_seed: u64,
    pub codebook_files: Vec<PathBuf>,
    pub master_seed: u64,
    /// Draw a fresh message every iteration instead of re-sending one.
    pub reencode_each_iteration: bool,
}

impl ExperimentConfig {
    pub fn for_test(test: TestId) -> Self {
        let (codeword_lengths, tuple_lengths, classifiers) = match test {
            TestId::Test1 | TestId::Custom => (
                (3..=8).collect(),
                TupleLengths::AllValid,
                ClassifierSpec::Max,
            ),
            TestId::Test2 => (
                vec![GROUP_CODEWORD_LEN],
                TupleLengths::List(vec![2, 3]),
                ClassifierSpec::AllGroups,
            ),
            TestId::Test3 => (
                vec![8, 12],
                TupleLengths::List(vec![3]),
                ClassifierSpec::Max,
            ),
        };
        Self {
            test,
            message_bits: DEFAULT_MESSAGE_BITS,
            iterations: DEFAULT_ITERATIONS,
            probability_grid: default_grid(),
            codeword_lengths,
            tuple_lengths,
            classifiers,
            codewords: DEFAULT_CODEWORDS,
            codebook_seed: 1,
            codebook_files: Vec::new(),
            master_seed: 0,
            reencode_each_iteration: false,
        }
    }

    /// Parse a config file's text. `test` may be omitted when `fallback` is given.
    pub fn from_toml(text: &str, fallback: Option<TestId>) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text)?;
        let test = match (raw.test.as_deref(), fallback) {
            (Some(t), _) => t.parse()?,
            (None, Some(t)) => t,
            (None, None) => return Err(Error::Config("missing `test` key".into())),
        };
        let mut cfg = Self::for_test(test);
        if let Some(v) = raw.message_bits {
            cfg.message_bits = v;
        }
        if let Some(v) = raw.iterations {
            cfg.iterations = v;
        }
        if let Some(v) = raw.probability_grid {
            cfg.probability_grid = v;
        }
        if let Some(v) = raw.codeword_lengths {
            cfg.codeword_lengths = v;
        }
        match raw.tuple_lengths {
            Some(RawTuples::Name(name)) if name == "all-valid" => {
                cfg.tuple_lengths = TupleLengths::AllValid;
            }
            Some(RawTuples::Name(name)) => {
                return Err(Error::Config(format!(
                    "unknown tuple_lengths value {name:?}"
                )));
            }
            Some(RawTuples::List(list)) => cfg.tuple_lengths = TupleLengths::List(list),
            None => {}
        }
        match raw.classifiers {
            Some(RawClassifiers::Name(name)) => cfg.classifiers = name.parse()?,
            Some(RawClassifiers::Removal(list)) => cfg.classifiers = ClassifierSpec::Removal(list),
            None => {}
        }
        if let Some(v) = raw.codewords {
            cfg.codewords = v;
        }
        if let Some(v) = raw.codebook_seed {
            cfg.codebook_seed = v;
        }
        if let Some(v) = raw.codebook_files {
            cfg.codebook_files = v;
        }
        if let Some(v) = raw.master_seed {
            cfg.master_seed = v;
        }
        if let Some(v) = raw.reencode_each_iteration {
            cfg.reencode_each_iteration = v;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path, fallback: Option<TestId>) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?, fallback)
    }

    /// Canonical `key = value` rendering; reading it back gives the same config.
    pub fn to_toml(&self) -> String {
        let tuples = match &self.tuple_lengths {
            TupleLengths::AllValid => "\"all-valid\"".to_string(),
            TupleLengths::List(l) => format!("{l:?}"),
        };
        let classifiers = match &self.classifiers {
            ClassifierSpec::Max => "\"max\"".to_string(),
            ClassifierSpec::AllGroups => "\"groups\"".to_string(),
            ClassifierSpec::Group(g) => format!("\"{g}\""),
            ClassifierSpec::Removal(l) => format!("{l:?}"),
        };
        let grid: Vec<String> = self
            .probability_grid
            .iter()
            .map(|p| format!("{p:?}"))
            .collect();
        let files: Vec<String> = self
            .codebook_files
            .iter()
            .map(|p| format!("{:?}", p.display().to_string()))
            .collect();
        format!(
            "test = \"{}\"\nmessage_bits = {}\niterations = {}\nprobability_grid = [{}]\n\
             codeword_lengths = {:?}\ntuple_lengths = {}\nclassifiers = {}\ncodewords = {}\n\
             codebook_seed = {}\ncodebook_files = [{}]\nmaster_seed = {}\nreencode_each_iteration = {}\n",
            self.test,
            self.message_bits,
            self.iterations,
            grid.join(", "),
            self.codeword_lengths,
            tuples,
            classifiers,
            self.codewords,
            self.codebook_seed,
            files.join(", "),
            self.master_seed,
            self.reencode_each_iteration,
        )
    }

    /// Check general and per-test invariants.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.iterations == 0 {
            return fail("iterations must be at least 1".into());
        }
        if self.message_bits == 0 {
            return fail("message_bits must be positive".into());
        }
        if self.codeword_lengths.is_empty() {
            return fail("codeword_lengths is empty".into());
        }
        if self.codewords < 2 {
            return fail(format!("codewords = {} (need at least 2)", self.codewords));
        }
        for &p in &self.probability_grid {
            if !(0.0..=1.0).contains(&p) {
                return fail(format!("probability {p} is outside [0, 1]"));
            }
        }
        for &n in &self.codeword_lengths {
            if n < MIN_CODEWORD_LEN {
                return fail(format!("codeword length {n} violates n > 2"));
            }
            if !self.message_bits.is_multiple_of(n) {
                return fail(format!(
                    "message_bits = {} is not divisible by codeword length {n}",
                    self.message_bits
                ));
            }
            let tuples = self.tuple_lengths.for_length(n);
            if tuples.is_empty() {
                return fail(format!("no tuple lengths for n = {n}"));
            }
            for tuple_len in tuples {
                if tuple_len <= 1 || tuple_len > n {
                    return fail(format!("tuple length {tuple_len} violates 1 < N <= {n}"));
                }
            }
        }
        let lengths = &self.codeword_lengths;
        let tuples = match &self.tuple_lengths {
            TupleLengths::List(l) => Some(l.as_slice()),
            TupleLengths::AllValid => None,
        };
        match self.test {
            TestId::Test2 => {
                if lengths.iter().any(|&n| n != GROUP_CODEWORD_LEN) {
                    return fail("test2 runs only on 8-bit codewords".into());
                }
                if !tuples.is_some_and(|t| t.iter().all(|&k| k == 2 || k == 3)) {
                    return fail("test2 tuple lengths must be drawn from {2, 3}".into());
                }
            }
            TestId::Test3 => {
                if lengths.iter().any(|&n| n != 8 && n != 12) {
                    return fail("test3 compares 8- and 12-bit codewords only".into());
                }
                if tuples != Some(&[3][..]) {
                    return fail("test3 uses 3-bit tuples".into());
                }
                if self.classifiers != ClassifierSpec::Max {
                    return fail("test3 uses the maximum classifier set".into());
                }
            }
            TestId::Test1 => {
                if self.classifiers != ClassifierSpec::Max {
                    return fail("test1 keeps classifiers at maximum".into());
                }
            }
            TestId::Custom => {}
        }
        Ok(())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    test: Option<String>,
    message_bits: Option<usize>,
    iterations: Option<usize>,
    probability_grid: Option<Vec<f64>>,
    codeword_lengths: Option<Vec<usize>>,
    tuple_lengths: Option<RawTuples>,
    classifiers: Option<RawClassifiers>,
    codewords: Option<usize>,
    codebook_seed: Option<u64>,
    codebook_files: Option<Vec<PathBuf>>,
    master_seed: Option<u64>,
    reencode_each_iteration: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawTuples {
    Name(String),
    List(Vec<usize>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawClassifiers {
    Name(String),
    Removal(Vec<usize>),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_has_twenty_sorted_points() {
        let grid = default_grid();
        assert_eq!(grid.len(), 20);
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
        assert!(grid.contains(&0.002));
        assert_eq!(CONDITION_GRID.len(), 19);
    }

    #[test]
    fn defaults_validate() {
        for test in [TestId::Test1, TestId::Test2, TestId::Test3, TestId::Custom] {
            ExperimentConfig::for_test(test).validate().unwrap();
        }
    }

    #[test]
    fn parse_overrides_defaults() {
        let cfg = ExperimentConfig::from_toml(
            "test = \"test1\"\niterations = 3\nprobability_grid = [0.0, 0.5]\n\
             codeword_lengths = [4, 6]\ntuple_lengths = [2, 3]\nmaster_seed = 9\n",
            None,
        )
        .unwrap();
        assert_eq!(cfg.test, TestId::Test1);
        assert_eq!(cfg.iterations, 3);
        assert_eq!(cfg.probability_grid, vec![0.0, 0.5]);
        assert_eq!(cfg.tuple_lengths, TupleLengths::List(vec![2, 3]));
        assert_eq!(cfg.master_seed, 9);
        assert_eq!(cfg.message_bits, DEFAULT_MESSAGE_BITS);
        cfg.validate().unwrap();
    }

    #[test]
    fn render_round_trip() {
        let mut cfg = ExperimentConfig::for_test(TestId::Custom);
        cfg.classifiers = ClassifierSpec::Removal(vec![2, 9]);
        cfg.codebook_files = vec![PathBuf::from("books/n8.txt")];
        let back = ExperimentConfig::from_toml(&cfg.to_toml(), None).unwrap();
        assert_eq!(back, cfg);
        let cfg = ExperimentConfig::for_test(TestId::Test2);
        assert_eq!(
            ExperimentConfig::from_toml(&cfg.to_toml(), None).unwrap(),
            cfg
        );
    }

    #[test]
    fn missing_test_uses_fallback() {
        let cfg = ExperimentConfig::from_toml("iterations = 2\n", Some(TestId::Test3)).unwrap();
        assert_eq!(cfg.codeword_lengths, vec![8, 12]);
        assert!(ExperimentConfig::from_toml("iterations = 2\n", None).is_err());
        assert!(ExperimentConfig::from_toml("bogus = 1\n", Some(TestId::Test1)).is_err());
    }

    #[test]
    fn invariant_violations() {
        let mut cfg = ExperimentConfig::for_test(TestId::Test1);
        cfg.message_bits = 1000;
        assert!(cfg.validate().is_err());

        let mut cfg = ExperimentConfig::for_test(TestId::Custom);
        cfg.codeword_lengths = vec![2];
        assert!(cfg.validate().is_err());

        let mut cfg = ExperimentConfig::for_test(TestId::Custom);
        cfg.tuple_lengths = TupleLengths::List(vec![1]);
        assert!(cfg.validate().is_err());

        let mut cfg = ExperimentConfig::for_test(TestId::Test3);
        cfg.message_bits = 1000;
        assert!(cfg.validate().is_err());

        let mut cfg = ExperimentConfig::for_test(TestId::Test2);
        cfg.codeword_lengths = vec![7];
        assert!(cfg.validate().is_err());

        let mut cfg = ExperimentConfig::for_test(TestId::Test1);
        cfg.probability_grid = vec![1.5];
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn classifier_spec_parsing() {
        assert_eq!(
            "max".parse::<ClassifierSpec>().unwrap(),
            ClassifierSpec::Max
        );
        assert_eq!(
            "group-c".parse::<ClassifierSpec>().unwrap(),
            ClassifierSpec::Group(ReductionGroup::C)
        );
        assert_eq!(
            "2, 9,I_15".parse::<ClassifierSpec>().unwrap(),
            ClassifierSpec::Removal(vec![2, 9, 15])
        );
        assert!("x".parse::<ClassifierSpec>().is_err());
    }
}
