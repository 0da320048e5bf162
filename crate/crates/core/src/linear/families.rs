//! Griesmer-optimal families: simplex codes, the doubled punctured simplex
//! code, and Belov-type codes.
//!
//! A Belov-type code of dimension `m` and distance `d` (with
//! `2^{m-1} < d <= 2^m`) takes two copies of every nonzero column of
//! `F_2^m` and deletes the points of subspaces `B_1, ..., B_p` of dimensions
//! `u_1 > ... > u_p`, where `2^m - d = sum 2^{u_i - 1}`. A nonzero message
//! `a` loses `2^{u_i - 1}` weight for every `B_i` not contained in `a^perp`,
//! so the distance is at least `2^m - sum 2^{u_i - 1} = d` as long as no
//! point is deleted more than twice.

use serde::Serialize;

use super::{griesmer_bound, min_distance, GeneratorMatrix};
use crate::error::{FccError, Result};

/// Nodes the subspace backtracking may visit before giving up.
pub const BELOV_SEARCH_BUDGET: u64 = 2_000_000;

/// Simplex code `[2^m - 1, m, 2^{m-1}]`; column `j` (1-based) is the binary
/// representation of `j`, most significant bit in the top row.
pub fn simplex(m: usize) -> Result<GeneratorMatrix> {
    if !(2..=16).contains(&m) {
        return Err(FccError::arg(format!(
            "simplex order must be in 2..=16, got {m}"
        )));
    }
    let columns: Vec<u32> = (1..1u32 << m).collect();
    GeneratorMatrix::from_columns(m, &columns, Some(1 << (m - 1)))
}

/// `(G_m, G_m)` with its first column removed: a `[2^{m+1} - 3, m, 2^m - 1]`
/// code.
pub fn doubled_punctured_simplex(m: usize) -> Result<GeneratorMatrix> {
    if !(2..=15).contains(&m) {
        return Err(FccError::arg(format!(
            "doubled punctured simplex order must be in 2..=15, got {m}"
        )));
    }
    let columns: Vec<u32> = (1..1u32 << m).chain(1..1u32 << m).skip(1).collect();
    GeneratorMatrix::from_columns(m, &columns, Some((1 << m) - 1))
}

/// Parameters of the Belov-type code for a target distance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BelovParams {
    pub distance: usize,
    /// Dimension, `ceil(log2 distance)`.
    pub m: usize,
    /// `2^m - distance`.
    pub deficit: usize,
    /// Subspace dimensions, strictly decreasing.
    pub u: Vec<usize>,
}

impl BelovParams {
    pub fn for_distance(distance: usize) -> Result<Self> {
        if distance < 2 {
            return Err(FccError::arg("Belov-type codes need distance at least 2"));
        }
        let m = ceil_log2(distance);
        if m > 16 {
            return Err(FccError::arg(format!("distance {distance} too large")));
        }
        let deficit = (1usize << m) - distance;
        let u = (0..m)
            .rev()
            .filter(|b| (deficit >> b) & 1 == 1)
            .map(|b| b + 1)
            .collect();
        Ok(BelovParams {
            distance,
            m,
            deficit,
            u,
        })
    }

    /// Number of deleted subspaces (ones in the binary form of the deficit).
    pub fn p(&self) -> usize {
        self.u.len()
    }

    /// Code length `2 (2^m - 1) - sum (2^{u_i} - 1)`.
    pub fn length(&self) -> usize {
        2 * ((1 << self.m) - 1) - self.u.iter().map(|&u| (1usize << u) - 1).sum::<usize>()
    }

    /// Existence condition for two-fold Belov codes: the three largest
    /// subspace dimensions sum to at most `2m`.
    pub fn existence_condition(&self) -> bool {
        self.u.iter().take(3).sum::<usize>() <= 2 * self.m
    }

    /// The sufficient condition `2^m - d <= 2^{2m/3}`, decided in integers.
    pub fn deficit_condition(&self) -> bool {
        (self.deficit as u128).pow(3) <= 1u128 << (2 * self.m)
    }
}

pub(crate) fn ceil_log2(x: usize) -> usize {
    assert!(x >= 1);
    (usize::BITS - (x - 1).leading_zeros()) as usize
}

/// Belov-type `[4t + p, m, 2t + 1]` code with `m = ceil(log2(2t + 1))`.
pub fn belov(t: usize) -> Result<GeneratorMatrix> {
    if t == 0 {
        return Err(FccError::arg("t must be at least 1"));
    }
    belov_for_distance(2 * t + 1)
}

/// Belov-type code of dimension `ceil(log2 d)` and minimum distance `d`,
/// verified by enumeration before it is returned.
pub fn belov_for_distance(distance: usize) -> Result<GeneratorMatrix> {
    let params = BelovParams::for_distance(distance)?;
    let m = params.m;
    let counts = select_subspaces(m, &params.u, BELOV_SEARCH_BUDGET).ok_or_else(|| {
        let cond = if params.existence_condition() {
            "subspace search exhausted its budget"
        } else {
            "the three largest subspace dimensions exceed 2m"
        };
        FccError::ConstructionInfeasible {
            reason: format!(
                "no Belov-type [{}, {m}, {distance}] code: {cond}; \
                 condition 2^ceil(log d) - d <= 2^((2/3) ceil(log d)) is {}",
                params.length(),
                if params.deficit_condition() {
                    "met"
                } else {
                    "not met"
                }
            ),
            suggestion: Some(format!(
                "use the doubled punctured simplex code with m = {}",
                m + 1
            )),
        }
    })?;

    // point x keeps 2 - counts[x] of its two copies
    let first = (1..1u32 << m).filter(|&x| counts[x as usize] <= 1);
    let second = (1..1u32 << m).filter(|&x| counts[x as usize] == 0);
    let columns: Vec<u32> = first.chain(second).collect();
    debug_assert_eq!(columns.len(), params.length());

    let g = GeneratorMatrix::from_columns(m, &columns, Some(distance))?;
    let found = min_distance(&g)?;
    if found != distance || g.n() != griesmer_bound(m, distance) {
        return Err(FccError::InternalConsistency(format!(
            "Belov-type code has [{}, {m}, {found}], expected [{}, {m}, {distance}]",
            g.n(),
            griesmer_bound(m, distance)
        )));
    }
    Ok(g)
}

/// Picks subspaces of `F_2^m` with the given dimensions so that every nonzero
/// point lies in at most two of them. Returns the per-point multiplicity.
fn select_subspaces(m: usize, dims: &[usize], budget: u64) -> Option<Vec<u8>> {
    if dims.iter().sum::<usize>() <= 2 * m {
        return Some(coordinate_aligned(m, dims));
    }
    let mut search = SubspaceSearch {
        m,
        dims,
        counts: vec![0; 1 << m],
        nodes: 0,
        budget,
    };
    // any subspace can be moved to a coordinate span, so B_1 is fixed
    let first: Vec<u32> = (0..dims[0]).map(|c| 1u32 << c).collect();
    let span = span_of(&first);
    if !search.place(&span) {
        return None;
    }
    if search.solve(1) {
        Some(search.counts)
    } else {
        None
    }
}

/// Subspaces spanned by coordinate sets laid end to end around the cycle
/// `0, 1, ..., m-1, 0, ...`; with total size at most `2m`, no coordinate (and
/// hence no point) is covered more than twice.
fn coordinate_aligned(m: usize, dims: &[usize]) -> Vec<u8> {
    let mut counts = vec![0u8; 1 << m];
    let mut pos = 0;
    for &u in dims {
        let basis: Vec<u32> = (0..u).map(|j| 1u32 << ((pos + j) % m)).collect();
        pos += u;
        for x in span_of(&basis).into_iter().skip(1) {
            counts[x as usize] += 1;
        }
    }
    counts
}

/// All points of the span of `basis`, starting with zero.
fn span_of(basis: &[u32]) -> Vec<u32> {
    let mut pts = vec![0u32];
    for &b in basis {
        let shifted: Vec<u32> = pts.iter().map(|p| p ^ b).collect();
        pts.extend(shifted);
    }
    pts
}

struct SubspaceSearch<'a> {
    m: usize,
    dims: &'a [usize],
    counts: Vec<u8>,
    nodes: u64,
    budget: u64,
}

impl SubspaceSearch<'_> {
    fn place(&mut self, points: &[u32]) -> bool {
        if points
            .iter()
            .any(|&x| x != 0 && self.counts[x as usize] >= 2)
        {
            return false;
        }
        for &x in points.iter().filter(|&&x| x != 0) {
            self.counts[x as usize] += 1;
        }
        true
    }

    fn remove(&mut self, points: &[u32]) {
        for &x in points.iter().filter(|&&x| x != 0) {
            self.counts[x as usize] -= 1;
        }
    }

    fn capacity_left(&self) -> usize {
        self.counts[1..].iter().map(|&c| 2 - c as usize).sum()
    }

    fn solve(&mut self, idx: usize) -> bool {
        if idx == self.dims.len() {
            return true;
        }
        let need: usize = self.dims[idx..].iter().map(|&u| (1usize << u) - 1).sum();
        if need > self.capacity_left() {
            return false;
        }
        let mut span = vec![0u32];
        self.extend(idx, 0, None, &mut span)
    }

    /// Grows subspace `idx` one reduced-echelon row at a time. Each row's
    /// pivot is its highest bit; pivots increase, and a row's lower bits
    /// avoid earlier pivots, so every subspace is generated exactly once.
    fn extend(
        &mut self,
        idx: usize,
        rows: usize,
        last_pivot: Option<usize>,
        span: &mut Vec<u32>,
    ) -> bool {
        let dim = self.dims[idx];
        if rows == dim {
            return self.solve(idx + 1);
        }
        let pivot_mask: u32 = span_pivots(span);
        let lo = last_pivot.map_or(0, |p| p + 1);
        let hi = self.m - (dim - rows);
        for pivot in lo..=hi {
            let free: Vec<u32> = (0..pivot)
                .filter(|&b| pivot_mask & (1 << b) == 0)
                .map(|b| 1u32 << b)
                .collect();
            for assignment in 0u32..1 << free.len() {
                self.nodes += 1;
                if self.nodes > self.budget {
                    return false;
                }
                let mut row = 1u32 << pivot;
                for (j, bit) in free.iter().enumerate() {
                    if (assignment >> j) & 1 == 1 {
                        row |= bit;
                    }
                }
                let added: Vec<u32> = span.iter().map(|s| s ^ row).collect();
                if !self.place(&added) {
                    continue;
                }
                let before = span.len();
                span.extend_from_slice(&added);
                if self.extend(idx, rows + 1, Some(pivot), span) {
                    return true;
                }
                span.truncate(before);
                self.remove(&added);
            }
        }
        false
    }
}

/// Pivot bits of a span built by `extend`: the highest bit of each basis
/// row, recovered as the set of highest bits of all points.
fn span_pivots(span: &[u32]) -> u32 {
    span.iter()
        .filter(|&&x| x != 0)
        .fold(0, |acc, &x| acc | (1 << (31 - x.leading_zeros())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{griesmer_bound, min_distance};

    #[test]
    fn simplex_three_layout() {
        let g = simplex(3).unwrap();
        let text: Vec<String> = g.rows().iter().map(|r| r.to_string()).collect();
        assert_eq!(text, ["0001111", "0110011", "1010101"]);
        assert_eq!(g.claimed_distance(), Some(4));
    }

    #[test]
    fn simplex_two_and_four() {
        let g = simplex(2).unwrap();
        let cols: Vec<String> = (0..3).map(|c| g.column(c).to_string()).collect();
        assert_eq!(cols, ["01", "10", "11"]);
        assert_eq!(min_distance(&g).unwrap(), 2);
        let g4 = simplex(4).unwrap();
        assert_eq!((g4.n(), g4.k()), (15, 4));
        assert_eq!(min_distance(&g4).unwrap(), 8);
        assert!(simplex(1).is_err());
        assert!(simplex(17).is_err());
    }

    #[test]
    fn doubled_punctured_small_cases() {
        let g = doubled_punctured_simplex(3).unwrap();
        assert_eq!((g.n(), g.k()), (13, 3));
        assert_eq!(min_distance(&g).unwrap(), 7);
        let g2 = doubled_punctured_simplex(2).unwrap();
        assert_eq!((g2.n(), g2.k()), (5, 2));
        assert_eq!(min_distance(&g2).unwrap(), 3);
        for m in 2..=10 {
            assert_eq!(griesmer_bound(m, (1 << m) - 1), (1 << (m + 1)) - 3);
        }
        assert!(doubled_punctured_simplex(16).is_err());
    }

    #[test]
    fn belov_parameters() {
        let p5 = BelovParams::for_distance(11).unwrap();
        assert_eq!((p5.m, p5.deficit, p5.p(), p5.length()), (4, 5, 2, 22));
        assert_eq!(p5.u, vec![3, 1]);
        let p3 = BelovParams::for_distance(7).unwrap();
        assert_eq!((p3.m, p3.p(), p3.length()), (3, 1, 13));
        let p2 = BelovParams::for_distance(5).unwrap();
        assert_eq!((p2.m, p2.deficit, p2.p(), p2.length()), (3, 3, 2, 10));
        assert_eq!(p2.u, vec![2, 1]);
    }

    #[test]
    fn belov_small_codes() {
        for (t, n, m) in [(5, 22, 4), (3, 13, 3), (2, 10, 3), (1, 5, 2)] {
            let g = belov(t).unwrap();
            assert_eq!((g.n(), g.k()), (n, m), "t = {t}");
            assert_eq!(min_distance(&g).unwrap(), 2 * t + 1);
        }
    }

    #[test]
    fn even_distance_codes() {
        for d in [4, 6, 8, 10, 12, 14, 16, 20] {
            let g = belov_for_distance(d).unwrap();
            assert_eq!(g.n(), griesmer_bound(g.k(), d));
            assert_eq!(min_distance(&g).unwrap(), d);
        }
    }

    #[test]
    fn infeasible_when_top_three_dimensions_exceed_2m() {
        // t = 32: 2t+1 = 65, m = 7, deficit 63 -> u = 6,5,4,... and 15 > 14
        let params = BelovParams::for_distance(65).unwrap();
        assert!(!params.existence_condition());
        let err = belov(32).unwrap_err();
        assert!(matches!(err, FccError::ConstructionInfeasible { .. }));
    }

    #[test]
    fn search_path_handles_non_aligned_cases() {
        // t = 40: deficit 47 = 101111b -> u = 6,4,3,2,1, total 16 > 14
        let params = BelovParams::for_distance(81).unwrap();
        assert!(params.u.iter().sum::<usize>() > 2 * params.m);
        assert!(params.existence_condition());
        let g = belov(40).unwrap();
        assert_eq!(g.n(), 4 * 40 + params.p());
    }

    #[test]
    fn span_and_pivots() {
        assert_eq!(span_of(&[0b001, 0b110]), vec![0, 1, 6, 7]);
        assert_eq!(span_pivots(&[0, 0b001, 0b110, 0b111]), 0b101);
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(8), 3);
        assert_eq!(ceil_log2(9), 4);
    }
}
