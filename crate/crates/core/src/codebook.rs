//! Codebooks, message encoding and group splitting.
//!
//! A codebook is an ordered list of `C` distinct `n`-bit codewords. Messages
//! are built by concatenating codewords, and a received stream is cut back
//! into `n`-bit groups that the decoder handles one at a time.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::bits::{check_binary, format_bits, from_numeric, numeric_value, parse_bits};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, rng_from_seed, Stream};

/// Codeword lengths of two or less cannot separate four codewords.
pub const MIN_CODEWORD_LEN: usize = 3;

/// Upper bound for exhaustive codebook generation (2^n candidates).
pub const MAX_GENERATED_LEN: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword(Vec<u8>);

impl Codeword {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        check_binary(&bits)?;
        Ok(Self(bits))
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_bits(&self.0))
    }
}

impl FromStr for Codeword {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Self(parse_bits(s)?))
    }
}

/// A single broken codebook invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    /// Condition 1: every 2-bit word is a codeword of some 4-word book, so a
    /// single inversion always lands on another valid codeword.
    TooShort {
        n: usize,
    },
    LengthMismatch {
        index: usize,
        len: usize,
        n: usize,
    },
    Duplicate {
        first: usize,
        second: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "codebook has no codewords"),
            Violation::TooShort { n } => write!(
                f,
                "codeword length {n} violates n > 2: with n <= 2 the codebook exhausts \
                 (or nearly exhausts) all {} possible words, so an inversion turns one \
                 codeword into another and cannot be corrected",
                1u64 << n
            ),
            Violation::LengthMismatch { index, len, n } => {
                write!(f, "codeword {} has length {len}, expected {n}", index + 1)
            }
            Violation::Duplicate { first, second } => write!(
                f,
                "codewords {} and {} are identical",
                first + 1,
                second + 1
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("no violations");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Ordered set of codewords. Construction with [`Codebook::new`] only checks
/// that symbols are binary; [`Codebook::validate`] reports the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    codewords: Vec<Codeword>,
}

impl Codebook {
    pub fn new(codewords: Vec<Codeword>) -> Self {
        Self { codewords }
    }

    /// Build and validate in one step.
    pub fn checked(codewords: Vec<Codeword>) -> Result<Self> {
        let cb = Self::new(codewords);
        cb.ensure_valid()?;
        Ok(cb)
    }

    pub fn from_bit_vecs<I>(words: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<u8>>,
    {
        let codewords = words
            .into_iter()
            .map(Codeword::new)
            .collect::<Result<Vec<_>>>()?;
        Self::checked(codewords)
    }

    pub fn codewords(&self) -> &[Codeword] {
        &self.codewords
    }

    pub fn get(&self, index: usize) -> Option<&Codeword> {
        self.codewords.get(index)
    }

    /// Codeword length, taken from the first codeword.
    pub fn n(&self) -> usize {
        self.codewords.first().map_or(0, Codeword::len)
    }

    /// Number of codewords, `C`.
    pub fn count(&self) -> usize {
        self.codewords.len()
    }

    pub fn validate(&self) -> ValidationReport {
        validate_codebook(self)
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidCodebook(report))
        }
    }

    /// Serialize as text: a `# n=<n> C=<C>` header, then one codeword per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("# n={} C={}\n", self.n(), self.count());
        for cw in &self.codewords {
            out.push_str(&cw.to_string());
            out.push('\n');
        }
        out
    }

    /// Parse the text format. The header is optional; when present its `n`
    /// and `C` must agree with the listed codewords. The result is validated.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut codewords = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if codewords.is_empty() && header.is_none() {
                    header = parse_header(rest).map_err(|message| Error::Parse {
                        line: i + 1,
                        message,
                    })?;
                }
                continue;
            }
            if line.chars().any(char::is_whitespace) {
                return Err(Error::Parse {
                    line: i + 1,
                    message: "codeword must be contiguous 0/1 characters".into(),
                });
            }
            let cw = line.parse::<Codeword>().map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
            codewords.push(cw);
        }
        let cb = Self::new(codewords);
        if let Some((n, count)) = header {
            if cb.n() != n || cb.count() != count {
                return Err(Error::Parse {
                    line: 1,
                    message: format!(
                        "header declares n={n} C={count} but file holds n={} C={}",
                        cb.n(),
                        cb.count()
                    ),
                });
            }
        }
        cb.ensure_valid()?;
        Ok(cb)
    }
}

fn parse_header(rest: &str) -> std::result::Result<Option<(usize, usize)>, String> {
    let mut n = None;
    let mut count = None;
    for token in rest.split_whitespace() {
        let Some((key, value)) = token.split_once('=') else {
            // A plain comment line, not a header.
            return Ok(None);
        };
        let value: usize = value
            .parse()
            .map_err(|_| format!("bad header value {value:?}"))?;
        match key {
            "n" => n = Some(value),
            "C" => count = Some(value),
            other => return Err(format!("unknown header key {other:?}")),
        }
    }
    match (n, count) {
        (Some(n), Some(c)) => Ok(Some((n, c))),
        (None, None) => Ok(None),
        _ => Err("header must give both n and C".into()),
    }
}

impl fmt::Display for Codebook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Check every codebook invariant and list what is broken.
pub fn validate_codebook(cb: &Codebook) -> ValidationReport {
    let mut violations = Vec::new();
    let words = cb.codewords();
    if words.is_empty() {
        violations.push(Violation::Empty);
        return ValidationReport { violations };
    }
    let n = cb.n();
    if n < MIN_CODEWORD_LEN {
        violations.push(Violation::TooShort { n });
    }
    for (index, cw) in words.iter().enumerate() {
        if cw.len() != n {
            violations.push(Violation::LengthMismatch {
                index,
                len: cw.len(),
                n,
            });
        }
    }
    for second in 1..words.len() {
        if let Some(first) = (0..second).find(|&first| words[first] == words[second]) {
            violations.push(Violation::Duplicate { first, second });
        }
    }
    ValidationReport { violations }
}

/// Greedy distance-maximising codebook.
///
/// The seed picks the first codeword uniformly; each further codeword is the
/// unused word with the largest minimum Hamming distance to those already
/// chosen, ties going to the smallest numeric value.
pub fn generate_codebook(n: usize, count: usize, seed: u64) -> Result<Codebook> {
    if n < MIN_CODEWORD_LEN {
        return Err(Error::InvalidCodebook(ValidationReport {
            violations: vec![Violation::TooShort { n }],
        }));
    }
    if n > MAX_GENERATED_LEN {
        return Err(Error::UnsupportedLength {
            n,
            min: MIN_CODEWORD_LEN,
            max: MAX_GENERATED_LEN,
        });
    }
    let space = 1u64 << n;
    if count == 0 || count as u64 > space {
        return Err(Error::ImpossibleCodebook { n, count });
    }

    let mut rng = rng_from_seed(derive_seed(seed, Stream::Codebook, &[n as u64]));
    let first = rng.gen_range(0..space);
    // Chosen words sit at distance 0, so they are never picked again.
    let mut min_dist: Vec<u32> = (0..space).map(|w| (w ^ first).count_ones()).collect();
    let mut chosen = vec![first];
    while chosen.len() < count {
        let (next, _) = min_dist
            .iter()
            .enumerate()
            .fold(
                (0usize, 0u32),
                |best, (w, &d)| if d > best.1 { (w, d) } else { best },
            );
        let next = next as u64;
        for (w, d) in min_dist.iter_mut().enumerate() {
            *d = (*d).min((w as u64 ^ next).count_ones());
        }
        chosen.push(next);
    }

    let codewords = chosen
        .into_iter()
        .map(|w| Codeword(from_numeric(w, n)))
        .collect();
    Codebook::checked(codewords)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Encoded,
    Received,
    Decoded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitStream {
    bits: Vec<u8>,
    origin: Origin,
}

impl BitStream {
    pub fn new(bits: Vec<u8>, origin: Origin) -> Result<Self> {
        check_binary(&bits)?;
        Ok(Self { bits, origin })
    }

    pub(crate) fn from_raw(bits: Vec<u8>, origin: Origin) -> Self {
        Self { bits, origin }
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn into_bits(self) -> Vec<u8> {
        self.bits
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

impl fmt::Display for BitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_bits(&self.bits))
    }
}

/// Random message of `total_bits` bits, each `n`-bit slot an independently
/// and uniformly chosen codeword.
pub fn encode_message(cb: &Codebook, total_bits: usize, seed: u64) -> Result<BitStream> {
    cb.ensure_valid()?;
    let n = cb.n();
    if !total_bits.is_multiple_of(n) {
        return Err(Error::NotDivisible { len: total_bits, n });
    }
    let mut rng = rng_from_seed(seed);
    let sequence: Vec<usize> = (0..total_bits / n)
        .map(|_| rng.gen_range(0..cb.count()))
        .collect();
    encode_sequence(cb, &sequence)
}

/// Message built from an explicit sequence of zero-based codeword indices.
pub fn encode_sequence(cb: &Codebook, sequence: &[usize]) -> Result<BitStream> {
    cb.ensure_valid()?;
    let mut bits = Vec::with_capacity(sequence.len() * cb.n());
    for &idx in sequence {
        let cw = cb.get(idx).ok_or(Error::CodewordIndex {
            index: idx,
            count: cb.count(),
        })?;
        bits.extend_from_slice(cw.bits());
    }
    Ok(BitStream::from_raw(bits, Origin::Encoded))
}

/// Cut a stream into consecutive `n`-bit groups.
pub fn split_groups(bits: &[u8], n: usize) -> Result<Vec<&[u8]>> {
    if n == 0 || !bits.len().is_multiple_of(n) {
        return Err(Error::NotDivisible { len: bits.len(), n });
    }
    Ok(bits.chunks_exact(n).collect())
}

/// Index of the codebook entry numerically equal to `word`, if any.
pub fn position_of(cb: &Codebook, word: &[u8]) -> Option<usize> {
    let value = numeric_value(word);
    cb.codewords()
        .iter()
        .position(|cw| cw.len() == word.len() && numeric_value(cw.bits()) == value)
}
