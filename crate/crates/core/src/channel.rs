//! Substitution-error channel and function-value decoder.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bits::BitVector;
use crate::construct::RedundancyTable;
use crate::error::{FccError, Result};

/// Decodes the function value of a received word `y = (y_msg, y_red)`: the
/// weight `i` minimising `|wt(y_msg) - i| + d(y_red, p_i)`, smallest `i` on
/// ties, mapped through `f`. The first term is the distance from `y_msg` to
/// the nearest message of weight `i`.
pub fn decode(table: &RedundancyTable, y: &BitVector) -> Result<usize> {
    let (k, r) = (table.k(), table.r());
    if y.len() != k + r {
        return Err(FccError::Dimension {
            left: k + r,
            right: y.len(),
        });
    }
    let w = y.slice(0..k).weight();
    let red = y.slice(k..k + r);
    let best = (0..=k)
        .min_by_key(|&i| {
            (
                w.abs_diff(i) + red.distance_unchecked(table.redundancy(i)),
                i,
            )
        })
        .expect("k >= 1");
    Ok(table.value(best))
}

/// Flips the given 1-based positions of `Enc(u)` and decodes. At most `t`
/// distinct positions are accepted.
pub fn inject_and_decode(
    table: &RedundancyTable,
    u: &BitVector,
    positions: &[usize],
) -> Result<usize> {
    if positions.len() > table.t() {
        return Err(FccError::arg(format!(
            "{} error positions exceed t = {}",
            positions.len(),
            table.t()
        )));
    }
    let mut y = table.encode(u)?;
    let n = y.len();
    let mut seen = vec![false; n];
    for &pos in positions {
        if pos == 0 || pos > n {
            return Err(FccError::arg(format!(
                "error position {pos} outside 1..={n}"
            )));
        }
        if std::mem::replace(&mut seen[pos - 1], true) {
            return Err(FccError::arg(format!("error position {pos} repeated")));
        }
        y.flip(pos - 1);
    }
    decode(table, &y)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub trials: u64,
    pub seed: u64,
    pub successes: u64,
    pub success_rate: f64,
}

/// Random message, error count uniform in `0..=t`, positions uniform among
/// all subsets of that size. Trial `i` draws from ChaCha8 seeded with `seed`
/// on stream `i`, so results do not depend on scheduling.
pub fn monte_carlo(table: &RedundancyTable, trials: u64, seed: u64) -> Result<SimulationReport> {
    if trials == 0 {
        return Err(FccError::arg("trials must be at least 1"));
    }
    let (k, n) = (table.k(), table.k() + table.r());
    let max_errors = table.t().min(n);
    let successes = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let bits: Vec<bool> = (0..k).map(|_| rng.gen()).collect();
            let u = BitVector::from_bools(&bits);
            let errors = rng.gen_range(0..=max_errors);
            let positions: Vec<usize> = sample(&mut rng, n, errors)
                .into_iter()
                .map(|p| p + 1)
                .collect();
            let decoded = inject_and_decode(table, &u, &positions)?;
            Ok(u64::from(decoded == table.value(u.weight())))
        })
        .sum::<Result<u64>>()?;
    Ok(SimulationReport {
        trials,
        seed,
        successes,
        success_rate: successes as f64 / trials as f64,
    })
}
