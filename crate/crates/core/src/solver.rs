//! Exact computation of `N(D)`, the least length admitting vectors
//! `p_0, ..., p_{M-1}` with `d(p_i, p_j) >= D_ij`.
//!
//! The search assigns `p_0 = 0` (translation invariance) and then each `p_j`
//! in turn. Only the last `b` vectors can constrain `p_j`, where `b` is the
//! bandwidth of `D`, so the trailing window is the whole search state. Two
//! reductions keep the tree small:
//!
//! * coordinates whose columns agree on the window are interchangeable, so a
//!   candidate only chooses how many ones each such class gets, placed on the
//!   leftmost columns of the class;
//! * windows that failed once are remembered up to translation and column
//!   permutation.

use std::collections::HashSet;

use serde::Serialize;

use crate::bits::BitVector;
use crate::drm::{check_permutation, DistanceRequirementMatrix};
use crate::error::{FccError, Result};

pub const MAX_DENSE_SIZE: usize = 12;
pub const MAX_BANDED_SIZE: usize = 64;
pub const MAX_DENSE_LEN: usize = 20;
pub const MAX_BANDED_LEN: usize = 16;
pub const MAX_ORDERING_SIZE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    /// `N(D)`, or `None` when no length up to `r_max` works.
    pub n_value: Option<usize>,
    pub r_max: usize,
    /// Vectors achieving every demand, in index order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<BitVector>>,
    /// Ordering of `D` under which the witness was found, for
    /// [`ordering_search`].
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<usize>>,
    pub nodes_explored: u64,
}

impl SolveResult {
    pub fn is_unknown(&self) -> bool {
        self.n_value.is_none()
    }
}

fn check_size(d: &DistanceRequirementMatrix, r_max: usize) -> Result<()> {
    let m = d.size();
    let dense = m <= MAX_DENSE_SIZE;
    if m > MAX_BANDED_SIZE || (!dense && d.bandwidth() + 1 >= m) {
        return Err(FccError::Feasibility(format!(
            "exact search supports M <= {MAX_DENSE_SIZE}, or banded matrices with M <= {MAX_BANDED_SIZE}; got M = {m}"
        )));
    }
    let cap = if dense { MAX_DENSE_LEN } else { MAX_BANDED_LEN };
    if r_max > cap {
        return Err(FccError::Feasibility(format!(
            "r_max = {r_max} exceeds {cap} for M = {m}"
        )));
    }
    Ok(())
}

/// Exact `N(D)` for lengths up to `r_max`.
pub fn solve_nd(d: &DistanceRequirementMatrix, r_max: usize) -> Result<SolveResult> {
    check_size(d, r_max)?;
    let mut nodes = 0;
    let found = search_range(d, d.max_entry(), r_max, &mut nodes);
    finish(d, found, r_max, nodes, None)
}

fn search_range(
    d: &DistanceRequirementMatrix,
    from: usize,
    to: usize,
    nodes: &mut u64,
) -> Option<(usize, Vec<u64>)> {
    if d.size() == 0 {
        return Some((0, Vec::new()));
    }
    (from..=to).find_map(|r| {
        let mut search = Search::new(d, r);
        let ok = search.extend(0);
        *nodes += search.nodes;
        ok.then_some((r, search.assigned))
    })
}

fn finish(
    d: &DistanceRequirementMatrix,
    found: Option<(usize, Vec<u64>)>,
    r_max: usize,
    nodes: u64,
    ordering: Option<Vec<usize>>,
) -> Result<SolveResult> {
    let Some((r, words)) = found else {
        return Ok(SolveResult {
            n_value: None,
            r_max,
            witness: None,
            ordering: None,
            nodes_explored: nodes,
        });
    };
    let witness: Vec<BitVector> = words.iter().map(|&w| BitVector::from_u64(w, r)).collect();
    for i in 0..witness.len() {
        for j in i + 1..witness.len() {
            if witness[i].distance_unchecked(&witness[j]) < d.get(i, j) {
                return Err(FccError::InternalConsistency(format!(
                    "solver witness violates demand ({i}, {j})"
                )));
            }
        }
    }
    Ok(SolveResult {
        n_value: Some(r),
        r_max,
        witness: Some(witness),
        ordering,
        nodes_explored: nodes,
    })
}

struct Search<'a> {
    d: &'a DistanceRequirementMatrix,
    r: usize,
    band: usize,
    assigned: Vec<u64>,
    failed: HashSet<(usize, Vec<u64>)>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(d: &'a DistanceRequirementMatrix, r: usize) -> Self {
        Search {
            d,
            r,
            band: d.bandwidth().max(1),
            assigned: Vec::with_capacity(d.size()),
            failed: HashSet::new(),
            nodes: 0,
        }
    }

    /// Column patterns of `window`, bit `i` of pattern `c` being bit `c` of
    /// `window[i]`.
    fn columns(&self, window: &[u64]) -> Vec<u64> {
        (0..self.r)
            .map(|c| {
                window
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (i, &w)| acc | (((w >> c) & 1) << i))
            })
            .collect()
    }

    fn canonical(&self, j: usize, window: &[u64]) -> (usize, Vec<u64>) {
        let base = window[0];
        let shifted: Vec<u64> = window.iter().map(|w| w ^ base).collect();
        let mut cols = self.columns(&shifted);
        cols.sort_unstable();
        (j, cols)
    }

    fn extend(&mut self, j: usize) -> bool {
        self.nodes += 1;
        if j == self.d.size() {
            return true;
        }
        if j == 0 {
            self.assigned.push(0);
            if self.extend(1) {
                return true;
            }
            self.assigned.pop();
            return false;
        }
        let start = j.saturating_sub(self.band);
        let window = self.assigned[start..j].to_vec();
        let key = self.canonical(j, &window);
        if self.failed.contains(&key) {
            return false;
        }

        // classes of interchangeable coordinates, in order of first column
        let cols = self.columns(&window);
        let mut classes: Vec<(u64, Vec<usize>)> = Vec::new();
        for (c, &pattern) in cols.iter().enumerate() {
            match classes.iter_mut().find(|(p, _)| *p == pattern) {
                Some((_, members)) => members.push(c),
                None => classes.push((pattern, vec![c])),
            }
        }
        let demands: Vec<usize> = (start..j).map(|i| self.d.get(i, j)).collect();

        let mut counts = vec![0usize; classes.len()];
        let mut dist = vec![0usize; window.len()];
        if self.choose(j, &classes, &demands, 0, &mut counts, &mut dist) {
            return true;
        }
        self.failed.insert(key);
        false
    }

    /// Chooses the number of ones in class `c` onwards; `dist` holds the
    /// distance from the partial candidate to each window row.
    fn choose(
        &mut self,
        j: usize,
        classes: &[(u64, Vec<usize>)],
        demands: &[usize],
        c: usize,
        counts: &mut [usize],
        dist: &mut [usize],
    ) -> bool {
        let remaining: usize = classes[c..].iter().map(|(_, m)| m.len()).sum();
        if demands
            .iter()
            .zip(dist.iter())
            .any(|(&need, &got)| got + remaining < need)
        {
            return false;
        }
        if c == classes.len() {
            let mut word = 0u64;
            for ((_, members), &h) in classes.iter().zip(counts.iter()) {
                for &col in &members[..h] {
                    word |= 1 << col;
                }
            }
            self.assigned.push(word);
            if self.extend(j + 1) {
                return true;
            }
            self.assigned.pop();
            return false;
        }
        let (pattern, members) = &classes[c];
        let size = members.len();
        for h in (0..=size).rev() {
            counts[c] = h;
            for (i, dv) in dist.iter_mut().enumerate() {
                *dv += if (pattern >> i) & 1 == 1 { size - h } else { h };
            }
            let ok = self.choose(j, classes, demands, c + 1, counts, dist);
            for (i, dv) in dist.iter_mut().enumerate() {
                *dv -= if (pattern >> i) & 1 == 1 { size - h } else { h };
            }
            if ok {
                return true;
            }
        }
        false
    }
}

/// Minimum of `N` over all simultaneous row and column permutations of `D`.
/// Each distinct permuted matrix is searched only below the best length
/// found so far.
pub fn ordering_search(d: &DistanceRequirementMatrix, r_max: usize) -> Result<SolveResult> {
    let m = d.size();
    if m > MAX_ORDERING_SIZE {
        return Err(FccError::Feasibility(format!(
            "ordering search supports M <= {MAX_ORDERING_SIZE}, got {m}"
        )));
    }
    check_size(d, r_max)?;
    let mut seen = HashSet::new();
    let mut nodes = 0;
    let mut best: Option<(usize, Vec<u64>, Vec<usize>)> = None;
    for order in permutations(m) {
        let permuted = d.permuted(&order)?;
        if !seen.insert(permuted.clone()) {
            continue;
        }
        let ceiling = best.as_ref().map_or(r_max, |(r, _, _)| r - 1);
        if best.is_some() && ceiling < permuted.max_entry() {
            continue;
        }
        if let Some((r, words)) = search_range(&permuted, permuted.max_entry(), ceiling, &mut nodes)
        {
            best = Some((r, words, order));
        }
    }
    let Some((r, words, order)) = best else {
        return finish(d, None, r_max, nodes, None);
    };
    // word i belongs to original index order[i]
    let mut original = vec![0u64; m];
    for (i, &o) in order.iter().enumerate() {
        original[o] = words[i];
    }
    finish(d, Some((r, original)), r_max, nodes, Some(order))
}

/// All permutations of `0..m` in lexicographic order.
fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..m).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..m).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..m).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

/// Checks a candidate D-code against `D` under the given ordering.
pub fn is_d_code(
    d: &DistanceRequirementMatrix,
    words: &[BitVector],
    order: &[usize],
) -> Result<bool> {
    check_permutation(order, d.size())?;
    if words.len() != d.size() {
        return Err(FccError::Dimension {
            left: d.size(),
            right: words.len(),
        });
    }
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let dist = crate::bits::hamming_distance(&words[i], &words[j])?;
            if dist < d.get(order[i], order[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drm::{distribution_drm, weight_drm};

    /// Oracle: plain backtracking over all words with `p_0 = 0`.
    fn brute_force(d: &DistanceRequirementMatrix) -> usize {
        fn place(d: &DistanceRequirementMatrix, r: usize, words: &mut Vec<u64>) -> bool {
            let j = words.len();
            if j == d.size() {
                return true;
            }
            let range = if j == 0 { 0..1 } else { 0..1u64 << r };
            for v in range {
                if (0..j).all(|i| (words[i] ^ v).count_ones() as usize >= d.get(i, j)) {
                    words.push(v);
                    if place(d, r, words) {
                        return true;
                    }
                    words.pop();
                }
            }
            false
        }
        (0..).find(|&r| place(d, r, &mut Vec::new())).unwrap()
    }

    #[test]
    fn known_values() {
        for k in 3..=6 {
            assert_eq!(
                solve_nd(&weight_drm(k, 1), 8).unwrap().n_value,
                Some(3),
                "k={k}"
            );
        }
        for k in 5..=7 {
            assert_eq!(
                solve_nd(&weight_drm(k, 2), 10).unwrap().n_value,
                Some(6),
                "k={k}"
            );
        }
    }

    #[test]
    fn two_points() {
        for dd in 1..=6 {
            let d = DistanceRequirementMatrix::from_rows(vec![vec![0, dd], vec![dd, 0]]).unwrap();
            let res = solve_nd(&d, 10).unwrap();
            assert_eq!(res.n_value, Some(dd));
            let w = res.witness.unwrap();
            assert_eq!(w[0], BitVector::zeros(dd));
            assert_eq!(w[1], BitVector::ones(dd));
        }
    }

    #[test]
    fn unknown_when_r_max_too_small() {
        let res = solve_nd(&weight_drm(5, 2), 5).unwrap();
        assert!(res.is_unknown());
        assert!(res.witness.is_none());
        assert!(res.nodes_explored > 0);
    }

    #[test]
    fn zero_matrix() {
        assert_eq!(
            solve_nd(&DistanceRequirementMatrix::zeros(4), 3)
                .unwrap()
                .n_value,
            Some(0)
        );
        assert_eq!(
            ordering_search(&DistanceRequirementMatrix::zeros(4), 3)
                .unwrap()
                .n_value,
            Some(0)
        );
    }

    #[test]
    fn size_limits() {
        assert!(solve_nd(&weight_drm(70, 1), 5).is_err());
        assert!(solve_nd(&weight_drm(40, 1), 17).is_err());
        assert!(solve_nd(&weight_drm(40, 1), 16).is_ok());
        assert!(ordering_search(&weight_drm(8, 1), 5).is_err());
    }

    #[test]
    fn long_banded_instances() {
        assert_eq!(solve_nd(&weight_drm(63, 1), 6).unwrap().n_value, Some(3));
        assert_eq!(solve_nd(&weight_drm(40, 2), 8).unwrap().n_value, Some(6));
    }

    #[test]
    fn matches_brute_force_on_small_matrices() {
        for k in 1..=5 {
            for t in 1..=2 {
                let d = weight_drm(k, t);
                assert_eq!(
                    solve_nd(&d, 12).unwrap().n_value,
                    Some(brute_force(&d)),
                    "k={k} t={t}"
                );
                for bin in 2..=3 {
                    let d = distribution_drm(k, t, bin).unwrap();
                    assert_eq!(solve_nd(&d, 12).unwrap().n_value, Some(brute_force(&d)));
                }
            }
        }
    }

    #[test]
    fn ordering_search_agrees_with_solve() {
        for k in 2..=5 {
            let d = weight_drm(k, 1);
            let a = solve_nd(&d, 8).unwrap();
            let b = ordering_search(&d, 8).unwrap();
            assert_eq!(a.n_value, b.n_value);
            assert!(is_d_code(
                &d,
                b.witness.as_ref().unwrap(),
                &(0..=k).collect::<Vec<_>>()
            )
            .unwrap());
        }
    }

    #[test]
    fn permutation_enumeration() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
    }
}
