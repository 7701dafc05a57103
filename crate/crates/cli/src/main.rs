//! `tuplecode` command line tool.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tuplecode_core::decoder::select_classifiers;
use tuplecode_core::harness::config::{ClassifierSpec, ExperimentConfig, TestId};
use tuplecode_core::harness::csv::{emit_csv, write_records};
use tuplecode_core::harness::groups::reduced_classifiers;
use tuplecode_core::harness::run_config;
use tuplecode_core::{
    enumerate_index_sets, format_bits, generate_codebook, memory_bytes, parse_bits,
    prune_classifiers, Codebook, Decoder, Error,
};

#[derive(Debug, Parser)]
#[command(
    name = "tuplecode",
    version,
    about = "N-tuple weightless neural decoder simulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a BER sweep and write CSV
    Run {
        /// Test to run: 1, 2, 3 or custom
        #[arg(long)]
        test: TestId,
        /// Config file (flat key = value); keys left out use the test defaults
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output CSV path; standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Master seed, overriding the config
        #[arg(long)]
        seed: Option<u64>,
        /// Iterations per point, overriding the config
        #[arg(long)]
        iterations: Option<usize>,
    },
    /// Decode a bit string read from standard input
    Decode {
        /// Codebook file, one codeword per line
        #[arg(long)]
        codebook: PathBuf,
        /// `max`, a reduction group, or comma-separated ordinals to remove
        #[arg(long, default_value = "max")]
        classifiers: String,
        /// Codeword length
        #[arg(long)]
        n: usize,
        /// Tuple length
        #[arg(long = "N")]
        tuple_len: usize,
        /// Treat `--classifiers` ordinals as the ones to keep instead
        #[arg(long)]
        keep: bool,
    },
    /// Print the modelled decoder memory, 2^N * C * m / n bytes
    Memory {
        #[arg(long)]
        n: u64,
        #[arg(long = "N")]
        tuple_len: u32,
        #[arg(long = "C", default_value_t = 4)]
        codewords: u64,
        /// Classifier count; defaults to the full C(n, N)
        #[arg(long)]
        m: Option<u64>,
    },
    /// Generate a distance-maximising codebook file
    Codebook {
        #[arg(long)]
        n: usize,
        #[arg(long = "C", default_value_t = 4)]
        codewords: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Io(_) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}

fn execute(command: Command) -> Result<(), Error> {
    match command {
        Command::Run {
            test,
            config,
            out,
            seed,
            iterations,
        } => {
            let mut cfg = match &config {
                Some(path) => ExperimentConfig::from_file(path, Some(test))?,
                None => ExperimentConfig::for_test(test),
            };
            if cfg.test != test {
                return Err(Error::Config(format!(
                    "--test {test} does not match config test {}",
                    cfg.test
                )));
            }
            if let Some(seed) = seed {
                cfg.master_seed = seed;
            }
            if let Some(iterations) = iterations {
                cfg.iterations = iterations;
            }
            eprintln!(
                "running {} ({} probabilities, {} iterations, seed {})",
                cfg.test,
                cfg.probability_grid.len(),
                cfg.iterations,
                cfg.master_seed
            );
            let result = run_config(&cfg)?;
            eprintln!(
                "{} points done, config hash {:016x}",
                result.points.len(),
                result.provenance.config_hash
            );
            match out {
                Some(path) => emit_csv(&result, &path),
                None => write_records(io::stdout().lock(), result.records()),
            }
        }
        Command::Decode {
            codebook,
            classifiers,
            n,
            tuple_len,
            keep,
        } => {
            let cb = Codebook::from_text(&std::fs::read_to_string(&codebook)?)?;
            if cb.n() != n {
                return Err(Error::Config(format!(
                    "--n {n} but codebook has n = {}",
                    cb.n()
                )));
            }
            let full = enumerate_index_sets(n, tuple_len)?;
            let cls = match classifiers.parse::<ClassifierSpec>()? {
                ClassifierSpec::Max => full,
                ClassifierSpec::Group(g) if n == 8 => reduced_classifiers(tuple_len, g)?,
                ClassifierSpec::Removal(list) if keep => select_classifiers(&full, &list)?,
                ClassifierSpec::Removal(list) => prune_classifiers(&full, &list)?,
                other => {
                    return Err(Error::Config(format!(
                        "classifier spec {other:?} not usable here"
                    )))
                }
            };
            let mut input = String::new();
            io::stdin().read_to_string(&mut input)?;
            let received = parse_bits(&input)?;
            let decoder = Decoder::new(cb, cls)?;
            let (decoded, decisions) = decoder.decode_message(&received)?;
            let mut out = io::stdout().lock();
            writeln!(out, "{decoded}")?;
            writeln!(out, "# classifiers m={}", decoder.classifiers().len())?;
            for (i, (group, d)) in received.chunks_exact(n).zip(&decisions).enumerate() {
                let tally = decoder.vote(group)?;
                let votes: Vec<String> = tally.votes.iter().map(u32::to_string).collect();
                write!(
                    out,
                    "# group {} {} votes=[{}] winner={} confidence={}",
                    i + 1,
                    format_bits(group),
                    votes.join(","),
                    d.winner + 1,
                    d.confidence
                )?;
                if d.tie {
                    write!(out, " tie")?;
                }
                if d.undecided {
                    write!(out, " undecided")?;
                }
                writeln!(out)?;
            }
            Ok(())
        }
        Command::Memory {
            n,
            tuple_len,
            codewords,
            m,
        } => {
            let m = match m {
                Some(m) => m,
                None => enumerate_index_sets(n as usize, tuple_len as usize)?.len() as u64,
            };
            let bytes = memory_bytes(tuple_len, codewords, m, n)?;
            if bytes.is_integer() {
                println!("{} bytes", bytes.to_integer());
            } else {
                let approx = *bytes.numer() as f64 / *bytes.denom() as f64;
                println!("{}/{} bytes ({approx:.4})", bytes.numer(), bytes.denom());
            }
            Ok(())
        }
        Command::Codebook {
            n,
            codewords,
            seed,
            out,
        } => {
            let text = generate_codebook(n, codewords, seed)?.to_text();
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(())
        }
    }
}
