//! Checks of the FCC property: `d(Enc(u), Enc(v)) >= 2t + 1` whenever
//! `f(u) != f(v)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::{canonical_weight_vector, BitVector};
use crate::construct::RedundancyTable;
use crate::error::{FccError, Result};

/// Largest message length for [`verify_full`].
pub const MAX_FULL_K: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub u: BitVector,
    pub v: BitVector,
    /// `d(Enc(u), Enc(v))`.
    pub distance: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub passed: bool,
    /// First failing pair in lexicographic order.
    pub counterexample: Option<Counterexample>,
    /// Pairs with different function values that were compared.
    pub pairs_checked: u64,
}

/// Distances between redundancy words, indexed by weight.
fn redundancy_distances(table: &RedundancyTable) -> Vec<Vec<usize>> {
    let entries = table.entries();
    entries
        .iter()
        .map(|a| entries.iter().map(|b| a.distance_unchecked(b)).collect())
        .collect()
}

/// Checks the representatives `0^{k-i} 1^i`: `d(p_i, p_j) + |i - j| >= 2t + 1`
/// for every pair of weights with different function values.
pub fn verify_representatives(table: &RedundancyTable) -> Verdict {
    let k = table.k();
    let need = 2 * table.t() + 1;
    let dist = redundancy_distances(table);
    let mut pairs = 0;
    let mut counterexample = None;
    for i in 0..=k {
        for j in i + 1..=k {
            if table.value(i) == table.value(j) {
                continue;
            }
            pairs += 1;
            let d = dist[i][j] + (j - i);
            if d < need && counterexample.is_none() {
                counterexample = Some(Counterexample {
                    u: canonical_weight_vector(k, i).expect("i <= k"),
                    v: canonical_weight_vector(k, j).expect("j <= k"),
                    distance: d,
                });
            }
        }
    }
    Verdict {
        passed: counterexample.is_none(),
        counterexample,
        pairs_checked: pairs,
    }
}

/// Exhaustive check over all pairs of messages, for `k <= 10`. Messages are
/// ordered as integers with the first coordinate most significant.
pub fn verify_full(table: &RedundancyTable) -> Result<Verdict> {
    let k = table.k();
    if k > MAX_FULL_K {
        return Err(FccError::Feasibility(format!(
            "full verification supports k <= {MAX_FULL_K}, got {k}; use verify_representatives"
        )));
    }
    let need = 2 * table.t() + 1;
    let dist = redundancy_distances(table);
    let total = 1u64 << k;
    let (pairs, first) = (0..total)
        .into_par_iter()
        .map(|u| {
            let wu = u.count_ones() as usize;
            let mut pairs = 0u64;
            let mut first = None;
            for v in u + 1..total {
                let wv = v.count_ones() as usize;
                if table.value(wu) == table.value(wv) {
                    continue;
                }
                pairs += 1;
                let d = (u ^ v).count_ones() as usize + dist[wu][wv];
                if d < need && first.is_none() {
                    first = Some((u, v, d));
                }
            }
            (pairs, first)
        })
        .reduce(
            || (0, None),
            |(pa, fa), (pb, fb)| {
                let first = match (fa, fb) {
                    (Some(a), Some(b)) => Some(if (a.0, a.1) <= (b.0, b.1) { a } else { b }),
                    (a, b) => a.or(b),
                };
                (pa + pb, first)
            },
        );
    let counterexample = first.map(|(u, v, distance)| Counterexample {
        u: BitVector::from_u64(u, k),
        v: BitVector::from_u64(v, k),
        distance,
    });
    Ok(Verdict {
        passed: counterexample.is_none(),
        counterexample,
        pairs_checked: pairs,
    })
}
