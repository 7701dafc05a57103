//! ADAM-style binary correlation matrix memory.
//!
//! Training sets weight `(r, c)` whenever an input has bit `r` set and the
//! paired output has bit `c` set; weights only ever go from 0 to 1. Recall
//! sums the weight rows selected by the probe and keeps the columns that hit
//! the maximum sum (L-Max). Two memories can be chained through an
//! intermediate class pattern.

use std::fmt;

use crate::bits::{check_binary, format_bits, parse_bits};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelationMatrix {
    rows: usize,
    cols: usize,
    weights: Vec<u8>,
}

impl CorrelationMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            weights: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.weights[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.weights[row * self.cols..(row + 1) * self.cols]
    }

    /// OR the outer product of `input` and `output` into the weights.
    pub fn train_pair(&mut self, input: &[u8], output: &[u8]) -> Result<()> {
        self.check_len(self.rows, input)?;
        self.check_len(self.cols, output)?;
        check_binary(input)?;
        check_binary(output)?;
        for (r, _) in input.iter().enumerate().filter(|(_, &a)| a == 1) {
            let row = &mut self.weights[r * self.cols..(r + 1) * self.cols];
            for (w, &b) in row.iter_mut().zip(output) {
                *w |= b;
            }
        }
        Ok(())
    }

    /// Summed recall followed by the L-Max threshold.
    pub fn recall(&self, probe: &[u8]) -> Result<ClassVector> {
        self.check_len(self.rows, probe)?;
        check_binary(probe)?;
        let mut summed = vec![0u32; self.cols];
        for (r, _) in probe.iter().enumerate().filter(|(_, &a)| a == 1) {
            for (s, &w) in summed.iter_mut().zip(self.row(r)) {
                *s += u32::from(w);
            }
        }
        Ok(ClassVector::from_summed(summed))
    }

    fn check_len(&self, expected: usize, bits: &[u8]) -> Result<()> {
        if bits.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: bits.len(),
            });
        }
        Ok(())
    }

    /// Rows of `0`/`1` characters, one line per input bit.
    pub fn to_text(&self) -> String {
        (0..self.rows)
            .map(|r| format_bits(self.row(r)) + "\n")
            .collect()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().map(str::trim).enumerate() {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bits = parse_bits(line).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
            rows.push((i + 1, bits));
        }
        let cols = rows.first().map_or(0, |(_, r)| r.len());
        let mut weights = Vec::with_capacity(rows.len() * cols);
        for (line, row) in &rows {
            if row.len() != cols {
                return Err(Error::Parse {
                    line: *line,
                    message: format!("expected {cols} columns, found {}", row.len()),
                });
            }
            weights.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            weights,
        })
    }
}

impl fmt::Display for CorrelationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassVector {
    pub summed: Vec<u32>,
    pub thresholded: Vec<u8>,
}

impl ClassVector {
    pub fn from_summed(summed: Vec<u32>) -> Self {
        let thresholded = l_max(&summed);
        Self {
            summed,
            thresholded,
        }
    }
}

/// 1 wherever the sum equals the maximum. An all-zero sum recalls nothing.
pub fn l_max(summed: &[u32]) -> Vec<u8> {
    let max = summed.iter().copied().max().unwrap_or(0);
    summed
        .iter()
        .map(|&s| u8::from(max > 0 && s == max))
        .collect()
}

/// Recall through `first`, threshold, then recall the class through `second`.
pub fn two_stage_recall(
    first: &CorrelationMatrix,
    second: &CorrelationMatrix,
    probe: &[u8],
) -> Result<Vec<u8>> {
    if first.cols() != second.rows() {
        return Err(Error::LengthMismatch {
            expected: second.rows(),
            actual: first.cols(),
        });
    }
    let class = first.recall(probe)?;
    Ok(second.recall(&class.thresholded)?.thresholded)
}

/// Split the input into consecutive `tuple_len`-bit tuples and replace each
/// by a one-hot vector of width `2^tuple_len` selected by the tuple's value.
pub fn tuple_preprocess(input: &[u8], tuple_len: usize) -> Result<Vec<u8>> {
    if tuple_len == 0 || tuple_len > 16 {
        return Err(Error::InvalidArgument(format!(
            "tuple length {tuple_len} must be in 1..=16"
        )));
    }
    if !input.len().is_multiple_of(tuple_len) {
        return Err(Error::NotDivisible {
            len: input.len(),
            n: tuple_len,
        });
    }
    check_binary(input)?;
    let width = 1usize << tuple_len;
    let mut out = vec![0u8; input.len() / tuple_len * width];
    for (t, tuple) in input.chunks_exact(tuple_len).enumerate() {
        let address = tuple
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | usize::from(b));
        out[t * width + address] = 1;
    }
    Ok(out)
}

/// Two chained correlation matrices with a fixed-width intermediate class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoStageMemory {
    pub first: CorrelationMatrix,
    pub second: CorrelationMatrix,
}

impl TwoStageMemory {
    pub fn new(input_len: usize, class_len: usize, output_len: usize) -> Self {
        Self {
            first: CorrelationMatrix::new(input_len, class_len),
            second: CorrelationMatrix::new(class_len, output_len),
        }
    }

    /// Associate `input` with `output` through the given class pattern.
    pub fn train(&mut self, input: &[u8], class: &[u8], output: &[u8]) -> Result<()> {
        self.first.train_pair(input, class)?;
        self.second.train_pair(class, output)
    }

    pub fn recall(&self, probe: &[u8]) -> Result<Vec<u8>> {
        two_stage_recall(&self.first, &self.second, probe)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Two stored pairs whose union puts `11101` on rows 0, 2 and 4; probing
    /// with those three rows sums every set column to 3.
    fn summed_fixture() -> (CorrelationMatrix, Vec<u8>) {
        let mut m = CorrelationMatrix::new(6, 5);
        m.train_pair(&[1, 0, 1, 0, 1, 0], &[1, 1, 0, 0, 1]).unwrap();
        m.train_pair(&[1, 1, 1, 0, 1, 0], &[0, 0, 1, 0, 0]).unwrap();
        (m, vec![1, 0, 1, 0, 1, 0])
    }

    #[test]
    fn recall_fixture() {
        let (m, probe) = summed_fixture();
        let class = m.recall(&probe).unwrap();
        assert_eq!(class.summed, vec![3, 3, 3, 0, 3]);
        assert_eq!(class.thresholded, vec![1, 1, 1, 0, 1]);
    }

    #[test]
    fn training_basics() {
        let mut m = CorrelationMatrix::new(4, 3);
        m.train_pair(&[0, 0, 0, 0], &[1, 1, 1]).unwrap();
        assert_eq!(m, CorrelationMatrix::new(4, 3));
        m.train_pair(&[0, 1, 0, 0], &[0, 0, 1]).unwrap();
        let ones: Vec<(usize, usize)> = (0..4)
            .flat_map(|r| (0..3).map(move |c| (r, c)))
            .filter(|&(r, c)| m.get(r, c) == 1)
            .collect();
        assert_eq!(ones, vec![(1, 2)]);
        let once = m.clone();
        m.train_pair(&[0, 1, 0, 0], &[0, 0, 1]).unwrap();
        assert_eq!(m, once);
        assert!(m.train_pair(&[0, 1], &[0, 0, 1]).is_err());
        assert!(m.train_pair(&[0, 1, 0, 0], &[0, 2, 1]).is_err());
    }

    #[test]
    fn zero_probe_recalls_nothing() {
        let (m, _) = summed_fixture();
        let class = m.recall(&[0; 6]).unwrap();
        assert_eq!(class.summed, vec![0; 5]);
        assert_eq!(class.thresholded, vec![0; 5]);
        assert!(m.recall(&[1; 5]).is_err());
    }

    #[test]
    fn single_pair_expansion() {
        let a = [1, 0, 1, 1, 0, 1];
        let b = [0, 1, 1, 0, 1];
        let mut m = CorrelationMatrix::new(6, 5);
        m.train_pair(&a, &b).unwrap();
        let class = m.recall(&a).unwrap();
        assert_eq!(class.summed, vec![0, 4, 4, 0, 4]);
        assert_eq!(class.thresholded, b.to_vec());
    }

    #[test]
    fn two_stage() {
        let mut first = CorrelationMatrix::new(4, 3);
        first.train_pair(&[1, 0, 1, 0], &[0, 1, 0]).unwrap();
        let mut identity = CorrelationMatrix::new(3, 3);
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = 1;
            identity.train_pair(&e, &e).unwrap();
        }
        let probe = [1, 0, 1, 0];
        assert_eq!(
            two_stage_recall(&first, &identity, &probe).unwrap(),
            first.recall(&probe).unwrap().thresholded
        );
        assert_eq!(
            two_stage_recall(&first, &identity, &[0; 4]).unwrap(),
            vec![0; 3]
        );
        assert!(two_stage_recall(&first, &CorrelationMatrix::new(4, 3), &probe).is_err());

        let mut mem = TwoStageMemory::new(4, 3, 5);
        mem.train(&[1, 1, 0, 0], &[0, 0, 1], &[1, 0, 1, 1, 0])
            .unwrap();
        assert_eq!(mem.recall(&[1, 1, 0, 0]).unwrap(), vec![1, 0, 1, 1, 0]);
    }

    #[test]
    fn preprocessing() {
        assert_eq!(
            tuple_preprocess(&[1, 0, 0, 0, 1, 1], 2).unwrap(),
            vec![0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1]
        );
        assert!(tuple_preprocess(&[1, 0, 1], 2).is_err());
        assert!(tuple_preprocess(&[1, 0], 0).is_err());
    }

    #[test]
    fn preprocessed_patterns_separate_in_two_stage_memory() {
        let patterns: [&[u8]; 3] = [
            &[1, 1, 0, 0, 1, 0],
            &[1, 1, 0, 1, 1, 0],
            &[0, 1, 1, 0, 0, 1],
        ];
        let mut mem = TwoStageMemory::new(3 * 4, 3, 6);
        for (i, p) in patterns.iter().enumerate() {
            let mut class = vec![0; 3];
            class[i] = 1;
            mem.train(&tuple_preprocess(p, 2).unwrap(), &class, p)
                .unwrap();
        }
        for p in patterns {
            assert_eq!(
                mem.recall(&tuple_preprocess(p, 2).unwrap()).unwrap(),
                p.to_vec()
            );
        }
    }

    #[test]
    fn text_round_trip() {
        let (m, _) = summed_fixture();
        assert_eq!(CorrelationMatrix::from_text(&m.to_text()).unwrap(), m);
        assert!(CorrelationMatrix::from_text("101\n10\n").is_err());
    }

    fn bits(len: usize) -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(0u8..2, len)
    }

    proptest! {
        #[test]
        fn stored_pair_recalls_its_class(a in bits(8), b in bits(6)) {
            prop_assume!(a.contains(&1) && b.contains(&1));
            let mut m = CorrelationMatrix::new(8, 6);
            m.train_pair(&a, &b).unwrap();
            prop_assert_eq!(m.recall(&a).unwrap().thresholded, b);
        }

        #[test]
        fn more_training_never_lowers_recall(pairs in prop::collection::vec((bits(8), bits(6)), 1..6), extra in (bits(8), bits(6)), probe in bits(8)) {
            let mut m = CorrelationMatrix::new(8, 6);
            for (a, b) in &pairs {
                m.train_pair(a, b).unwrap();
            }
            let before = m.recall(&probe).unwrap().summed;
            m.train_pair(&extra.0, &extra.1).unwrap();
            let after = m.recall(&probe).unwrap().summed;
            prop_assert!(before.iter().zip(&after).all(|(x, y)| x <= y));
        }

        #[test]
        fn l_max_scale_invariant(summed in prop::collection::vec(0u32..50, 1..12), k in 1u32..20) {
            let scaled: Vec<u32> = summed.iter().map(|s| s * k).collect();
            prop_assert_eq!(l_max(&summed), l_max(&scaled));
        }
    }
}
