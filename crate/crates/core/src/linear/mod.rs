//! Binary linear codes given by generator matrices.

mod families;

pub(crate) use families::ceil_log2;
pub use families::{
    belov, belov_for_distance, doubled_punctured_simplex, simplex, BelovParams, BELOV_SEARCH_BUDGET,
};

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::BitVector;
use crate::error::{FccError, Result};
use crate::gray::{reflected_gray, reflected_values};

/// Largest dimension for which codewords are enumerated.
pub const MAX_ENUM_DIM: usize = 20;

/// A `k x n` generator matrix of full row rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    rows: Vec<BitVector>,
    n: usize,
    claimed_distance: Option<usize>,
}

/// Column reordering applied by [`systematize`]: column `c` of the result is
/// column `source[c]` of the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnPermutation {
    pub source: Vec<usize>,
}

impl ColumnPermutation {
    pub fn is_identity(&self) -> bool {
        self.source.iter().enumerate().all(|(i, &s)| i == s)
    }
}

/// Row-reduces `rows` in place, choosing the leftmost available pivot for
/// each row. Returns the pivot columns in order.
fn reduce_rows(rows: &mut [BitVector], n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..n {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(next, found);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.get(col) {
                row.xor_assign_unchecked(&pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

impl GeneratorMatrix {
    /// Validates equal row lengths and full row rank.
    pub fn new(rows: Vec<BitVector>, claimed_distance: Option<usize>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(FccError::InvalidCode("generator matrix has no rows".into()));
        };
        let n = first.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(FccError::Dimension {
                left: n,
                right: bad.len(),
            });
        }
        let mut scratch = rows.clone();
        let rank = reduce_rows(&mut scratch, n).len();
        if rank < rows.len() {
            return Err(FccError::InvalidCode(format!(
                "rows are linearly dependent (rank {rank} < {})",
                rows.len()
            )));
        }
        Ok(GeneratorMatrix {
            rows,
            n,
            claimed_distance,
        })
    }

    /// Builds a matrix from column values, the first row holding the most
    /// significant of the `k` low bits of each column.
    pub(crate) fn from_columns(k: usize, columns: &[u32], claimed: Option<usize>) -> Result<Self> {
        let mut rows = vec![BitVector::try_zeros(columns.len())?; k];
        for (c, &col) in columns.iter().enumerate() {
            for (r, row) in rows.iter_mut().enumerate() {
                if (col >> (k - 1 - r)) & 1 == 1 {
                    row.set(c, true);
                }
            }
        }
        GeneratorMatrix::new(rows, claimed)
    }

    /// Dimension.
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// Length.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn claimed_distance(&self) -> Option<usize> {
        self.claimed_distance
    }

    pub fn with_claimed_distance(mut self, d: Option<usize>) -> Self {
        self.claimed_distance = d;
        self
    }

    /// The codeword `a G`.
    pub fn encode(&self, message: &BitVector) -> Result<BitVector> {
        if message.len() != self.k() {
            return Err(FccError::Dimension {
                left: message.len(),
                right: self.k(),
            });
        }
        let mut out = BitVector::zeros(self.n);
        for (i, row) in self.rows.iter().enumerate() {
            if message.get(i) {
                out.xor_assign_unchecked(row);
            }
        }
        Ok(out)
    }

    /// True when the first `k` columns form the identity matrix.
    pub fn is_systematic(&self) -> bool {
        let k = self.k();
        k <= self.n
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(r, row)| (0..k).all(|c| row.get(c) == (r == c)))
    }

    /// Row-space membership, decided by reducing `word` against the pivots
    /// of the reduced row echelon form.
    pub fn contains(&self, word: &BitVector) -> bool {
        if word.len() != self.n {
            return false;
        }
        let mut reduced = self.rows.clone();
        let pivots = reduce_rows(&mut reduced, self.n);
        let mut w = word.clone();
        for (row, &col) in reduced.iter().zip(&pivots) {
            if w.get(col) {
                w.xor_assign_unchecked(row);
            }
        }
        w.weight() == 0
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_bools(&self.rows.iter().map(|r| r.get(c)).collect::<Vec<_>>())
    }

    /// Text form: a `k n` header line, then one line of space-separated
    /// bits per row.
    pub fn to_matrix_text(&self) -> String {
        let mut out = format!("{} {}\n", self.k(), self.n);
        for row in &self.rows {
            let line: Vec<&str> = row.iter().map(|b| if b { "1" } else { "0" }).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn from_matrix_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| FccError::parse("empty matrix file"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|s| {
                s.parse()
                    .map_err(|_| FccError::parse(format!("bad header {header:?}")))
            })
            .collect::<Result<_>>()?;
        let [k, n] = dims[..] else {
            return Err(FccError::parse(format!(
                "header must be \"k n\", got {header:?}"
            )));
        };
        let mut rows = Vec::with_capacity(k);
        for _ in 0..k {
            let line = lines
                .next()
                .ok_or_else(|| FccError::parse(format!("expected {k} rows")))?;
            let bits: String = line.split_whitespace().collect();
            let row: BitVector = bits.parse()?;
            if row.len() != n {
                return Err(FccError::parse(format!(
                    "row {line:?} has {} entries, expected {n}",
                    row.len()
                )));
            }
            rows.push(row);
        }
        if lines.next().is_some() {
            return Err(FccError::parse("trailing content after matrix rows"));
        }
        GeneratorMatrix::new(rows, None)
    }
}

/// Brings `g` to systematic form: leftmost-pivot row reduction, then the
/// pivot columns are moved to the front in order and the remaining columns
/// follow in their original order. This is the lexicographically smallest
/// column permutation that yields an identity prefix.
pub fn systematize(g: &GeneratorMatrix) -> Result<(GeneratorMatrix, ColumnPermutation)> {
    let mut rows = g.rows.clone();
    let pivots = reduce_rows(&mut rows, g.n);
    if pivots.len() < g.k() {
        return Err(FccError::InvalidCode(
            "generator matrix is rank deficient".into(),
        ));
    }
    let mut source = pivots.clone();
    source.extend((0..g.n).filter(|c| !pivots.contains(c)));
    let permuted = rows
        .iter()
        .map(|row| {
            let mut out = BitVector::zeros(g.n);
            for (c, &s) in source.iter().enumerate() {
                if row.get(s) {
                    out.set(c, true);
                }
            }
            out
        })
        .collect();
    Ok((
        GeneratorMatrix {
            rows: permuted,
            n: g.n,
            claimed_distance: g.claimed_distance,
        },
        ColumnPermutation { source },
    ))
}

/// Minimum weight over the nonzero codewords, by enumeration.
///
/// Codewords are visited in Gray order so that each step adds one row. The
/// index space is split into fixed chunks, so the answer does not depend on
/// the number of worker threads.
pub fn min_distance(g: &GeneratorMatrix) -> Result<usize> {
    let k = g.k();
    if k > MAX_ENUM_DIM {
        return Err(FccError::Feasibility(format!(
            "enumerating 2^{k} codewords exceeds the limit 2^{MAX_ENUM_DIM}"
        )));
    }
    let total: u64 = 1 << k;
    let chunks: u64 = 1 << k.min(6);
    let span = total / chunks;
    let best = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * span;
            let gray = start ^ (start >> 1);
            let mut word = BitVector::zeros(g.n);
            for (r, row) in g.rows.iter().enumerate() {
                // row r carries bit r of the Gray index
                if (gray >> r) & 1 == 1 {
                    word.xor_assign_unchecked(row);
                }
            }
            let mut best = if start == 0 {
                usize::MAX
            } else {
                word.weight()
            };
            for i in start + 1..start + span {
                word.xor_assign_unchecked(&g.rows[i.trailing_zeros() as usize]);
                best = best.min(word.weight());
            }
            best
        })
        .min()
        .unwrap_or(usize::MAX);
    if best == usize::MAX {
        return Err(FccError::InvalidCode(
            "code has no nonzero codewords".into(),
        ));
    }
    Ok(best)
}

/// The Griesmer length bound `sum_{i<k} ceil(d / 2^i)`.
pub fn griesmer_bound(k: usize, d: usize) -> usize {
    (0..k)
        .map(|i| {
            if i >= 64 {
                1.min(d)
            } else {
                d.div_ceil(1usize << i.min(63))
            }
        })
        .sum()
}

/// A systematic code's codewords listed in the reflected Gray order of their
/// message parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrayOrderedCode {
    pub k: usize,
    pub n: usize,
    /// `(a_i, b_i)` with `a_i` the `i`-th Gray word and `(a_i, b_i) = a_i G`.
    pub codewords: Vec<(BitVector, BitVector)>,
}

impl GrayOrderedCode {
    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Parity part `b_i`.
    pub fn parity(&self, i: usize) -> &BitVector {
        &self.codewords[i].1
    }
}

/// Lists the codewords of a systematic generator in Gray order.
pub fn gray_order(g: &GeneratorMatrix) -> Result<GrayOrderedCode> {
    if !g.is_systematic() {
        return Err(FccError::Precondition(
            "gray_order needs a systematic generator (identity in the first k columns)".into(),
        ));
    }
    let k = g.k();
    if k > MAX_ENUM_DIM {
        return Err(FccError::Feasibility(format!(
            "dimension {k} too large to list"
        )));
    }
    let gray = reflected_gray(k)?;
    let codewords = gray
        .sequence
        .into_iter()
        .map(|a| {
            let c = g.encode(&a)?;
            let b = c.slice(k..g.n);
            Ok((a, b))
        })
        .collect::<Result<_>>()?;
    Ok(GrayOrderedCode {
        k,
        n: g.n,
        codewords,
    })
}

/// Integer Gray sequence, re-exported for callers that index by position.
pub fn gray_values(k: usize) -> Vec<u32> {
    reflected_values(k)
}
