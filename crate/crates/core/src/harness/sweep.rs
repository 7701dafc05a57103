//! Monte Carlo sweep engine.
//!
//! A sweep is a list of decoder cells (codebook plus classifier set) crossed
//! with a probability grid. For each point and iteration the message is sent
//! through an inversion-only channel, decoded, and scored against the encoded
//! message. Points are independent and run in parallel; results are sorted
//! by `(n, N, m, probability)` before they are returned.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::config::{ClassifierSpec, ExperimentConfig, TestId};
use super::groups::{cumulative_removals, ReductionGroup};
use crate::channel::{count_channel_inversions, transmit, ChannelParams};
use crate::codebook::{encode_message, generate_codebook, BitStream, Codebook};
use crate::decoder::{enumerate_index_sets, prune_classifiers, ClassifierSet, Decoder};
use crate::error::{Error, Result};
use crate::metrics::{
    aggregate_iterations, bit_error_rate, standard_error, BerRecord, IterationStats, PointKey,
};
use crate::rng::{derive_seed, Stream};

/// One decoder configuration inside a sweep.
#[derive(Debug, Clone)]
pub struct Cell {
    /// `max`, a reduction group name, or `custom`.
    pub label: String,
    pub decoder: Decoder,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub label: String,
    pub record: BerRecord,
    pub iteration_bers: Vec<f64>,
}

impl SweepPoint {
    pub fn std_error(&self) -> f64 {
        standard_error(&self.iteration_bers)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Provenance {
    pub config_hash: u64,
    pub master_seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
    pub provenance: Provenance,
}

impl SweepResult {
    pub fn records(&self) -> impl Iterator<Item = &BerRecord> {
        self.points.iter().map(|p| &p.record)
    }

    /// First point matching the decoder shape and probability.
    pub fn find(
        &self,
        n: usize,
        tuple_len: usize,
        classifiers: usize,
        probability: f64,
    ) -> Option<&SweepPoint> {
        self.points.iter().find(|p| {
            let r = &p.record;
            r.n == n
                && r.tuple_len == tuple_len
                && r.classifiers == classifiers
                && r.probability == probability
        })
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Codebooks for every configured length: files first, generated otherwise.
pub fn load_codebooks(config: &ExperimentConfig) -> Result<BTreeMap<usize, Codebook>> {
    let mut books = BTreeMap::new();
    for path in &config.codebook_files {
        let cb = Codebook::from_text(&std::fs::read_to_string(path)?)?;
        books.insert(cb.n(), cb);
    }
    for &n in &config.codeword_lengths {
        if let std::collections::btree_map::Entry::Vacant(slot) = books.entry(n) {
            slot.insert(generate_codebook(
                n,
                config.codewords,
                config.codebook_seed,
            )?);
        }
    }
    Ok(books)
}

fn classifier_variants(
    spec: &ClassifierSpec,
    n: usize,
    tuple_len: usize,
) -> Result<Vec<(String, ClassifierSet)>> {
    let full = enumerate_index_sets(n, tuple_len)?;
    let group = |g: ReductionGroup| -> Result<(String, ClassifierSet)> {
        if n != super::groups::GROUP_CODEWORD_LEN {
            return Err(Error::Config(format!(
                "reduction groups are defined for n = 8, not n = {n}"
            )));
        }
        Ok((
            g.label().to_string(),
            prune_classifiers(&full, &cumulative_removals(tuple_len, g)?)?,
        ))
    };
    match spec {
        ClassifierSpec::Max => Ok(vec![("max".into(), full)]),
        ClassifierSpec::Group(g) => Ok(vec![group(*g)?]),
        ClassifierSpec::AllGroups => {
            let mut out = vec![("max".to_string(), full.clone())];
            for g in ReductionGroup::ALL {
                out.push(group(g)?);
            }
            Ok(out)
        }
        ClassifierSpec::Removal(list) => {
            Ok(vec![("custom".into(), prune_classifiers(&full, list)?)])
        }
    }
}

/// Decoder cells implied by a validated config.
pub fn build_cells(config: &ExperimentConfig) -> Result<Vec<Cell>> {
    let books = load_codebooks(config)?;
    let mut cells = Vec::new();
    for &n in &config.codeword_lengths {
        let cb = &books[&n];
        for tuple_len in config.tuple_lengths.for_length(n) {
            for (label, cls) in classifier_variants(&config.classifiers, n, tuple_len)? {
                cells.push(Cell {
                    label,
                    decoder: Decoder::new(cb.clone(), cls)?,
                });
            }
        }
    }
    Ok(cells)
}

/// Parameters shared by every point of a sweep.
#[derive(Debug, Clone, Copy)]
pub struct SweepSettings {
    pub message_bits: usize,
    pub iterations: usize,
    pub master_seed: u64,
    pub reencode_each_iteration: bool,
}

impl From<&ExperimentConfig> for SweepSettings {
    fn from(c: &ExperimentConfig) -> Self {
        Self {
            message_bits: c.message_bits,
            iterations: c.iterations,
            master_seed: c.master_seed,
            reencode_each_iteration: c.reencode_each_iteration,
        }
    }
}

fn message_for(decoder: &Decoder, settings: &SweepSettings, iteration: usize) -> Result<BitStream> {
    let n = decoder.n() as u64;
    let seed = if settings.reencode_each_iteration {
        derive_seed(
            settings.master_seed,
            Stream::Message,
            &[n, iteration as u64],
        )
    } else {
        derive_seed(settings.master_seed, Stream::Message, &[n])
    };
    encode_message(decoder.codebook(), settings.message_bits, seed)
}

/// Simulate one (cell, probability) point.
///
/// Iteration `t` at grid index `q` draws its channel from
/// `derive_seed(master, Channel, [t, q])`, so every point can be replayed alone.
pub fn run_point(
    cell: &Cell,
    probability: f64,
    grid_index: usize,
    settings: &SweepSettings,
) -> Result<SweepPoint> {
    let params = ChannelParams::inversion_only(probability)?;
    let fixed = if settings.reencode_each_iteration {
        None
    } else {
        Some(message_for(&cell.decoder, settings, 0)?)
    };
    let mut stats = Vec::with_capacity(settings.iterations);
    for t in 0..settings.iterations {
        let fresh;
        let sent = match &fixed {
            Some(m) => m,
            None => {
                fresh = message_for(&cell.decoder, settings, t)?;
                &fresh
            }
        };
        let seed = derive_seed(
            settings.master_seed,
            Stream::Channel,
            &[t as u64, grid_index as u64],
        );
        let (received, _log) = transmit(sent, &params, seed);
        let (decoded, decisions) = cell.decoder.decode_message(received.bits())?;
        stats.push(IterationStats {
            ber: bit_error_rate(sent.bits(), decoded.bits())?,
            inversions: count_channel_inversions(sent.bits(), received.bits())? as u64,
            undecided: decisions.iter().filter(|d| d.undecided).count() as u64,
            ties: decisions.iter().filter(|d| d.tie).count() as u64,
        });
    }
    let decoder = &cell.decoder;
    let key = PointKey {
        n: decoder.n(),
        tuple_len: decoder.classifiers().tuple_len(),
        classifiers: decoder.classifiers().len(),
        codewords: decoder.codebook().count(),
        probability,
    };
    Ok(SweepPoint {
        label: cell.label.clone(),
        record: aggregate_iterations(key, &stats)?,
        iteration_bers: stats.iter().map(|s| s.ber).collect(),
    })
}

/// Run every cell at every grid probability and merge in sorted order.
pub fn run_sweep(
    cells: &[Cell],
    grid: &[f64],
    settings: &SweepSettings,
) -> Result<Vec<SweepPoint>> {
    let tasks: Vec<(&Cell, usize, f64)> = cells
        .iter()
        .flat_map(|c| grid.iter().enumerate().map(move |(q, &p)| (c, q, p)))
        .collect();
    let mut points = tasks
        .par_iter()
        .map(|&(cell, q, p)| run_point(cell, p, q, settings))
        .collect::<Result<Vec<_>>>()?;
    points.sort_by(|a, b| {
        let (x, y) = (&a.record, &b.record);
        (x.n, x.tuple_len, x.classifiers)
            .cmp(&(y.n, y.tuple_len, y.classifiers))
            .then(x.probability.total_cmp(&y.probability))
            .then_with(|| a.label.cmp(&b.label))
    });
    Ok(points)
}

/// Validate the config, build its cells and run the sweep.
pub fn run_experiment(config: &ExperimentConfig) -> Result<SweepResult> {
    config.validate()?;
    let cells = build_cells(config)?;
    let points = run_sweep(
        &cells,
        &config.probability_grid,
        &SweepSettings::from(config),
    )?;
    Ok(SweepResult {
        points,
        provenance: Provenance {
            config_hash: fnv1a(config.to_toml().as_bytes()),
            master_seed: config.master_seed,
        },
    })
}

fn expect_test(config: &ExperimentConfig, test: TestId) -> Result<()> {
    if config.test != test {
        return Err(Error::Config(format!(
            "expected a {test} config, got {}",
            config.test
        )));
    }
    Ok(())
}

/// Codeword length against tuple length, every `2 <= N <= n`, full classifier sets.
pub fn run_test1(config: &ExperimentConfig) -> Result<SweepResult> {
    expect_test(config, TestId::Test1)?;
    run_experiment(config)
}

/// 8-bit decoders with the maximum set and reduction groups A to D.
pub fn run_test2(config: &ExperimentConfig) -> Result<SweepResult> {
    expect_test(config, TestId::Test2)?;
    run_experiment(config)
}

/// 8-bit against 12-bit codewords with 3-bit tuples, same grid and seeds.
pub fn run_test3(config: &ExperimentConfig) -> Result<SweepResult> {
    expect_test(config, TestId::Test3)?;
    run_experiment(config)
}

pub fn run_config(config: &ExperimentConfig) -> Result<SweepResult> {
    match config.test {
        TestId::Test1 => run_test1(config),
        TestId::Test2 => run_test2(config),
        TestId::Test3 => run_test3(config),
        TestId::Custom => run_experiment(config),
    }
}
