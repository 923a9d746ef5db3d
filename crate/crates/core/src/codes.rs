//! Binary linear codes.
//!
//! A [`BinaryCode`] is stored by its reduced row-echelon generator matrix, so
//! two codes are equal exactly when their representations are equal.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qseries::QSeries;

/// Default cap on the number of codewords any enumeration may visit.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// A vector over the two-element field.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    blocks: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            blocks: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = BitVector::zeros(len);
        v.set(i, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index out of range");
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index out of range");
        let mask = 1u64 << (i % 64);
        if value {
            self.blocks[i / 64] |= mask;
        } else {
            self.blocks[i / 64] &= !mask;
        }
    }

    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a ^= b;
        }
    }

    /// Size of the common support, |a ∧ b|.
    pub fn intersection(&self, other: &BitVector) -> usize {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Dot product over the two-element field.
    pub fn dot(&self, other: &BitVector) -> bool {
        self.intersection(other) % 2 == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        self.blocks
            .iter()
            .enumerate()
            .find(|(_, &b)| b != 0)
            .map(|(i, b)| i * 64 + b.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(|i| self.get(i))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl std::str::FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidArgument(format!("not a bit: {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BitVector::from_bits(&bits))
    }
}

/// A binary linear code held as its canonical reduced row-echelon generator matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinaryCode {
    length: usize,
    generators: Vec<BitVector>,
}

impl BinaryCode {
    /// The code spanned by `rows`, reduced to canonical form.
    pub fn canonicalize(length: usize, rows: &[BitVector]) -> Result<BinaryCode> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != length {
                return Err(Error::RowLengthMismatch {
                    row: i,
                    expected: length,
                    found: r.len(),
                });
            }
        }
        let mut m: Vec<BitVector> = rows.to_vec();
        let mut rank = 0;
        for col in 0..length {
            let Some(p) = (rank..m.len()).find(|&r| m[r].get(col)) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            rank += 1;
        }
        m.truncate(rank);
        Ok(BinaryCode {
            length,
            generators: m,
        })
    }

    pub fn zero(length: usize) -> BinaryCode {
        BinaryCode {
            length,
            generators: Vec::new(),
        }
    }

    pub fn full(length: usize) -> BinaryCode {
        BinaryCode {
            length,
            generators: (0..length).map(|i| BitVector::unit(length, i)).collect(),
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[BitVector] {
        &self.generators
    }

    fn pivots(&self) -> Vec<usize> {
        self.generators
            .iter()
            .map(|g| g.first_one().expect("canonical rows are nonzero"))
            .collect()
    }

    /// The orthogonal complement under the standard dot product.
    pub fn dual(&self) -> BinaryCode {
        let n = self.length;
        let pivots = self.pivots();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        // For the free column j, set x_j = 1 and solve each pivot coordinate.
        let rows: Vec<BitVector> = (0..n)
            .filter(|&j| !is_pivot[j])
            .map(|j| {
                let mut v = BitVector::unit(n, j);
                for (g, &p) in self.generators.iter().zip(&pivots) {
                    if g.get(j) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        BinaryCode::canonicalize(n, &rows).expect("rows have the code length")
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.dimension() == self.length && *self == self.dual()
    }

    pub fn contains(&self, word: &BitVector) -> Result<bool> {
        if word.len() != self.length {
            return Err(Error::RowLengthMismatch {
                row: 0,
                expected: self.length,
                found: word.len(),
            });
        }
        let mut w = word.clone();
        for (g, p) in self.generators.iter().zip(self.pivots()) {
            if w.get(p) {
                w.xor_assign(g);
            }
        }
        Ok(w.is_zero())
    }

    /// Even iff every generator has even weight, since
    /// |a + b| = |a| + |b| − 2|a ∧ b|.
    pub fn is_even(&self) -> bool {
        self.generators.iter().all(|g| g.weight() % 2 == 0)
    }

    /// Doubly even iff every generator weight is divisible by four and every
    /// pair of generators meets in an even number of positions.
    pub fn is_doubly_even(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|r| r.weight() % 4 == 0)
            && (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].intersection(&g[j]).is_multiple_of(2)))
    }

    fn check_cap(&self, cap: u64) -> Result<()> {
        let k = self.dimension();
        if k >= 64 || (1u64 << k) > cap {
            return Err(Error::EnumerationCapExceeded { dimension: k, cap });
        }
        Ok(())
    }

    /// All 2^k codewords in Gray-code order of the message vector.
    pub fn codewords(&self, cap: u64) -> Result<Codewords<'_>> {
        self.check_cap(cap)?;
        Ok(Codewords {
            code: self,
            current: BitVector::zeros(self.length),
            step: 0,
            total: 1u64 << self.dimension(),
        })
    }

    /// Counts of codewords by weight, `counts[w]` for `w = 0..=n`.
    pub fn weight_distribution(&self, cap: u64) -> Result<Vec<u64>> {
        self.check_cap(cap)?;
        let k = self.dimension();
        let n = self.length;
        // Split the message space on its top bits; each chunk walks a Gray
        // code over the low bits starting from its fixed prefix.
        let split = k.saturating_sub(12).min(8);
        let low = k - split;
        let gens = &self.generators;
        let per_chunk: Vec<Vec<u64>> = (0u64..1 << split)
            .into_par_iter()
            .map(|prefix| {
                let mut counts = vec![0u64; n + 1];
                let mut word = BitVector::zeros(n);
                for b in 0..split {
                    if prefix >> b & 1 == 1 {
                        word.xor_assign(&gens[low + b]);
                    }
                }
                counts[word.weight()] += 1;
                for t in 1u64..1 << low {
                    word.xor_assign(&gens[t.trailing_zeros() as usize]);
                    counts[word.weight()] += 1;
                }
                counts
            })
            .collect();
        let mut counts = vec![0u64; n + 1];
        for chunk in per_chunk {
            for (c, x) in counts.iter_mut().zip(chunk) {
                *c += x;
            }
        }
        Ok(counts)
    }

    /// W(q) = Σ_{S ∈ C} q^{|S|}, as a series known through exponent n.
    pub fn weight_enumerator(&self, cap: u64) -> Result<QSeries> {
        let counts = self.weight_distribution(cap)?;
        Ok(QSeries::from_integer_coefficients(
            counts.iter().map(|&c| c.into()),
            self.length as i64,
        ))
    }
}

/// Iterator over the codewords of a [`BinaryCode`].
pub struct Codewords<'a> {
    code: &'a BinaryCode,
    current: BitVector,
    step: u64,
    total: u64,
}

impl Iterator for Codewords<'_> {
    type Item = BitVector;

    fn next(&mut self) -> Option<BitVector> {
        if self.step >= self.total {
            return None;
        }
        if self.step > 0 {
            let flip = self.step.trailing_zeros() as usize;
            self.current.xor_assign(&self.code.generators[flip]);
        }
        self.step += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.step) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Codewords<'_> {}
