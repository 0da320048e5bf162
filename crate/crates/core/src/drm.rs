//! Distance requirement matrices.

use std::fmt::Write as _;

use crate::bits::{hamming_distance, BitVector};
use crate::error::{FccError, Result};

/// Symmetric `M x M` matrix of pairwise distance demands with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DistanceRequirementMatrix {
    size: usize,
    entries: Vec<usize>,
}

impl DistanceRequirementMatrix {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(FccError::Dimension {
                    left: size,
                    right: row.len(),
                });
            }
            if row[i] != 0 {
                return Err(FccError::arg(format!(
                    "diagonal entry ({i},{i}) is nonzero"
                )));
            }
            entries.extend_from_slice(row);
        }
        let d = DistanceRequirementMatrix { size, entries };
        for i in 0..size {
            for j in 0..i {
                if d.get(i, j) != d.get(j, i) {
                    return Err(FccError::arg(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        Ok(d)
    }

    fn from_fn(size: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                entries.push(if i == j { 0 } else { f(i, j) });
            }
        }
        DistanceRequirementMatrix { size, entries }
    }

    pub fn zeros(size: usize) -> Self {
        Self::from_fn(size, |_, _| 0)
    }

    /// Number of rows `M`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn max_entry(&self) -> usize {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    /// Largest `|i - j|` with a nonzero demand.
    pub fn bandwidth(&self) -> usize {
        let mut band = 0;
        for i in 0..self.size {
            for j in i + 1..self.size {
                if self.get(i, j) > 0 {
                    band = band.max(j - i);
                }
            }
        }
        band
    }

    /// Sum of the entries strictly above the diagonal.
    pub fn upper_sum(&self) -> usize {
        (0..self.size)
            .flat_map(|i| (i + 1..self.size).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .sum()
    }

    /// Simultaneous row/column permutation: entry `(i, j)` of the result is
    /// entry `(order[i], order[j])` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        check_permutation(order, self.size)?;
        Ok(Self::from_fn(self.size, |i, j| {
            self.get(order[i], order[j])
        }))
    }

    /// Text form: `M` on the first line, then `M` lines of `M` integers.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.size);
        for i in 0..self.size {
            let line: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let size: usize = lines
            .next()
            .ok_or_else(|| FccError::parse("empty matrix file"))?
            .parse()
            .map_err(|_| FccError::parse("first line must be the matrix size"))?;
        let mut rows = Vec::with_capacity(size);
        for i in 0..size {
            let line = lines
                .next()
                .ok_or_else(|| FccError::parse(format!("missing row {i}")))?;
            let row = line
                .split_whitespace()
                .map(|v| {
                    v.parse()
                        .map_err(|_| FccError::parse(format!("bad entry {v:?}")))
                })
                .collect::<Result<Vec<usize>>>()?;
            rows.push(row);
        }
        if lines.next().is_some() {
            return Err(FccError::parse("trailing content after matrix rows"));
        }
        Self::from_rows(rows)
    }
}

pub(crate) fn check_permutation(order: &[usize], size: usize) -> Result<()> {
    let mut seen = vec![false; size];
    if order.len() != size {
        return Err(FccError::arg(format!(
            "permutation has {} entries, expected {size}",
            order.len()
        )));
    }
    for &o in order {
        if o >= size || seen[o] {
            return Err(FccError::arg(format!(
                "{order:?} is not a permutation of 0..{size}"
            )));
        }
        seen[o] = true;
    }
    Ok(())
}

/// Demand `max(2t + 1 - d(u_i, u_j), 0)` between representatives whose
/// function values differ, zero otherwise.
pub fn build_drm<L: PartialEq>(
    t: usize,
    representatives: &[BitVector],
    labels: &[L],
) -> Result<DistanceRequirementMatrix> {
    if representatives.len() != labels.len() {
        return Err(FccError::Dimension {
            left: representatives.len(),
            right: labels.len(),
        });
    }
    let size = representatives.len();
    let mut rows = vec![vec![0; size]; size];
    for i in 0..size {
        for j in 0..size {
            if i != j && labels[i] != labels[j] {
                let d = hamming_distance(&representatives[i], &representatives[j])?;
                rows[i][j] = (2 * t + 1).saturating_sub(d);
            }
        }
    }
    DistanceRequirementMatrix::from_rows(rows)
}

/// Demands between the weight representatives `0^{k-i} 1^i`, `i = 0..=k`.
pub fn weight_drm(k: usize, t: usize) -> DistanceRequirementMatrix {
    DistanceRequirementMatrix::from_fn(k + 1, |i, j| (2 * t + 1).saturating_sub(i.abs_diff(j)))
}

/// As [`weight_drm`], but pairs in the same weight bin `floor(i / T)` have
/// no demand.
pub fn distribution_drm(k: usize, t: usize, bin_width: usize) -> Result<DistanceRequirementMatrix> {
    if bin_width == 0 {
        return Err(FccError::arg("bin width must be at least 1"));
    }
    Ok(DistanceRequirementMatrix::from_fn(k + 1, |i, j| {
        if i / bin_width == j / bin_width {
            0
        } else {
            (2 * t + 1).saturating_sub(i.abs_diff(j))
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::canonical_weight_vector;

    #[test]
    fn single_entries() {
        let reps: Vec<_> = (0..2)
            .map(|i| canonical_weight_vector(4, i).unwrap())
            .collect();
        let d = build_drm(1, &reps, &[0, 1]).unwrap();
        assert_eq!(d.get(0, 1), 2);
        let same = build_drm(1, &reps, &["a", "a"]).unwrap();
        assert_eq!(same.get(0, 1), 0);
        let far: Vec<_> = [0, 5]
            .iter()
            .map(|&i| canonical_weight_vector(6, i).unwrap())
            .collect();
        assert_eq!(build_drm(2, &far, &[0, 5]).unwrap().get(0, 1), 0);
    }

    #[test]
    fn weight_band() {
        let d = weight_drm(4, 1);
        assert_eq!(d.row(0), &[0, 2, 1, 0, 0]);
        assert_eq!(d.bandwidth(), 2);
        let d2 = weight_drm(2, 3);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(d2.get(i, j), 7 - i.abs_diff(j));
                }
            }
        }
    }

    #[test]
    fn weight_drm_matches_generic_builder() {
        for k in 1..=12 {
            for t in 1..=6 {
                let reps: Vec<_> = (0..=k)
                    .map(|i| canonical_weight_vector(k, i).unwrap())
                    .collect();
                let labels: Vec<usize> = (0..=k).collect();
                assert_eq!(weight_drm(k, t), build_drm(t, &reps, &labels).unwrap());
                let bins: Vec<usize> = (0..=k).map(|i| i / 3).collect();
                assert_eq!(
                    distribution_drm(k, t, 3).unwrap(),
                    build_drm(t, &reps, &bins).unwrap()
                );
            }
        }
    }

    #[test]
    fn distribution_examples() {
        assert_eq!(distribution_drm(9, 2, 1).unwrap(), weight_drm(9, 2));
        let d = distribution_drm(9, 2, 5).unwrap();
        assert_eq!(d.get(3, 4), 0);
        assert_eq!(d.get(4, 5), 4);
        assert!(distribution_drm(3, 1, 0).is_err());
    }

    #[test]
    fn text_format() {
        let d = weight_drm(2, 1);
        assert_eq!(d.to_text(), "3\n0 2 1\n2 0 2\n1 2 0\n");
        assert_eq!(
            DistanceRequirementMatrix::from_text(&d.to_text()).unwrap(),
            d
        );
        assert!(DistanceRequirementMatrix::from_text("2\n0 1\n2 0\n").is_err());
        assert!(DistanceRequirementMatrix::from_text("2\n1 1\n1 0\n").is_err());
        assert!(DistanceRequirementMatrix::from_text("2\n0 1\n").is_err());
    }

    #[test]
    fn permutation_checks() {
        let d = weight_drm(3, 1);
        assert_eq!(d.permuted(&[3, 2, 1, 0]).unwrap(), d);
        assert!(d.permuted(&[0, 0, 1, 2]).is_err());
        assert!(d.permuted(&[0, 1]).is_err());
    }
}
