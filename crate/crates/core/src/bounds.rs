//! Lower and upper bounds on `N(D)` and on the optimal redundancy of the
//! weight and weight-distribution functions.
//!
//! Rational bounds are kept exact; bounds involving square roots or
//! logarithms are `f64` values. Closed forms are evaluated everywhere and
//! carry an `in_stated_range` flag instead of failing outside their
//! hypotheses, so sweeps can cross range boundaries.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::bits::BitVector;
use crate::drm::{check_permutation, distribution_drm, weight_drm, DistanceRequirementMatrix};
use crate::error::{FccError, Result};

/// Exact rational with its decimal value and ceiling.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalValue {
    pub exact: String,
    pub value: f64,
    pub ceil: i64,
}

impl From<Ratio<i64>> for RationalValue {
    fn from(r: Ratio<i64>) -> Self {
        RationalValue {
            exact: if r.is_integer() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            },
            value: r.to_f64().unwrap_or(f64::NAN),
            ceil: r.ceil().to_integer(),
        }
    }
}

/// A real-valued bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValue {
    pub value: f64,
    pub ceil: i64,
    /// Whether the parameters satisfy the hypotheses under which the bound
    /// is proved.
    pub in_stated_range: bool,
}

impl BoundValue {
    fn new(value: f64, in_stated_range: bool) -> Self {
        // guard against 14.999999999 style rounding before taking the ceiling
        let snapped = if (value - value.round()).abs() < 1e-9 {
            value.round()
        } else {
            value
        };
        BoundValue {
            value,
            ceil: snapped.ceil() as i64,
            in_stated_range,
        }
    }
}

/// Plotkin-type bound `4/M^2 sum_{i<j} D_ij` (`M^2 - 1` for odd `M`).
pub fn plotkin_lower(d: &DistanceRequirementMatrix) -> Ratio<i64> {
    let m = d.size() as i64;
    if m < 2 {
        return Ratio::zero();
    }
    let denom = if m % 2 == 0 { m * m } else { m * m - 1 };
    Ratio::new(4 * d.upper_sum() as i64, denom)
}

/// Size of the radius-`d` Hamming ball in `{0,1}^r`; zero for negative `d`.
pub fn hamming_ball_volume(r: usize, d: i64) -> BigUint {
    if d < 0 {
        return BigUint::zero();
    }
    let top = (d as usize).min(r);
    let mut term = BigUint::one();
    let mut total = BigUint::one();
    for i in 1..=top {
        term = term * BigUint::from(r - i + 1) / BigUint::from(i);
        total += &term;
    }
    total
}

const GV_SEARCH_LIMIT: usize = 1 << 16;

/// Gilbert-Varshamov-type upper bound for the given ordering: the least `r`
/// with `2^r > max_j sum_{i<j} Vol(r, D_{pi(i) pi(j)} - 1)`.
pub fn gv_upper(d: &DistanceRequirementMatrix, order: &[usize]) -> Result<usize> {
    check_permutation(order, d.size())?;
    let max_demand = d.max_entry();
    for r in 0..GV_SEARCH_LIMIT {
        let volumes: Vec<BigUint> = (0..=max_demand)
            .map(|demand| hamming_ball_volume(r, demand as i64 - 1))
            .collect();
        let worst = (0..order.len())
            .map(|j| {
                (0..j)
                    .map(|i| &volumes[d.get(order[i], order[j])])
                    .fold(BigUint::zero(), |acc, v| acc + v)
            })
            .max()
            .unwrap_or_default();
        if BigUint::one() << r > worst {
            return Ok(r);
        }
    }
    Err(FccError::Feasibility(format!(
        "no r below {GV_SEARCH_LIMIT} satisfies the GV inequality"
    )))
}

pub const MAX_GREEDY_LEN: usize = 26;

/// Sequential greedy D-code: for each index in `order`, the lexicographically
/// smallest word of length `r` meeting every demand towards the words already
/// placed. `None` means the sweep ran out of words, which does not prove that
/// no D-code of length `r` exists. Words are returned in index order.
pub fn gv_greedy_construct(
    d: &DistanceRequirementMatrix,
    r: usize,
    order: &[usize],
) -> Result<Option<Vec<BitVector>>> {
    check_permutation(order, d.size())?;
    if r > MAX_GREEDY_LEN {
        return Err(FccError::Feasibility(format!(
            "greedy sweep over 2^{r} words exceeds the limit 2^{MAX_GREEDY_LEN}"
        )));
    }
    let mut placed: Vec<(usize, u64)> = Vec::with_capacity(order.len());
    for &j in order {
        let pick = (0u64..1 << r).find(|&v| {
            placed
                .iter()
                .all(|&(i, w)| (v ^ w).count_ones() as usize >= d.get(i, j))
        });
        match pick {
            Some(v) => placed.push((j, v)),
            None => return Ok(None),
        }
    }
    placed.sort_by_key(|&(i, _)| i);
    Ok(Some(
        placed
            .into_iter()
            .map(|(_, v)| BitVector::from_u64(v, r))
            .collect(),
    ))
}

/// Hadamard-code based bound `N(M, D) <= (2D - 2) / (1 - 2 sqrt(ln D / D))`,
/// valid for `D >= 10` and `M <= D^2`.
pub fn hadamard_upper(m: usize, d: usize) -> Result<f64> {
    if d < 10 {
        return Err(FccError::Domain(format!(
            "Hadamard bound needs D >= 10, got {d}"
        )));
    }
    if m > d * d {
        return Err(FccError::Domain(format!(
            "Hadamard bound needs M <= D^2, got M = {m}, D = {d}"
        )));
    }
    let df = d as f64;
    Ok((2.0 * df - 2.0) / (1.0 - 2.0 * (df.ln() / df).sqrt()))
}

/// `4t - (4/3) sqrt(6t + 2) + 2`, stated for `t >= 5`.
pub fn closed_form_wt_lower(t: usize) -> BoundValue {
    let tf = t as f64;
    BoundValue::new(4.0 * tf - 4.0 / 3.0 * (6.0 * tf + 2.0).sqrt() + 2.0, t >= 5)
}

/// Lower bound for the weight-distribution function with bin width `T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistributionLowerBound {
    pub bound: BoundValue,
    /// The bound holds for message lengths strictly above this value.
    pub min_k_exclusive: f64,
}

/// `4t - (4/3) sqrt(T (6t - T + 3)) + 2`, valid for `k > sqrt(T (6t - T + 3))`.
/// The radicand is negative for `T > 6t + 3`, where the bound is undefined.
pub fn closed_form_dist_lower(t: usize, bin_width: usize) -> Result<DistributionLowerBound> {
    if bin_width == 0 {
        return Err(FccError::arg("bin width must be at least 1"));
    }
    if bin_width > 6 * t + 3 {
        return Err(FccError::Domain(format!(
            "T = {bin_width} exceeds 6t + 3 = {}; the bound is undefined",
            6 * t + 3
        )));
    }
    let radicand = (bin_width * (6 * t + 3 - bin_width)) as f64;
    let root = radicand.sqrt();
    Ok(DistributionLowerBound {
        bound: BoundValue::new(4.0 * t as f64 - 4.0 / 3.0 * root + 2.0, true),
        min_k_exclusive: root,
    })
}

/// Symbol-pair weight bound `8t/3 - (8/9) sqrt(6t - 4) - 4/3`, stated for
/// `t >= 6`.
pub fn pair_weight_lower(t: usize) -> BoundValue {
    let tf = t as f64;
    let radicand = (6.0 * tf - 4.0).max(0.0);
    BoundValue::new(
        8.0 * tf / 3.0 - 8.0 / 9.0 * radicand.sqrt() - 4.0 / 3.0,
        t >= 6,
    )
}

/// Earlier symbol-pair weight bound `(20t^3 - 20t) / (9 (t + 1)^2)`.
pub fn prior_pair_weight_lower(t: usize) -> Ratio<i64> {
    let t = t as i64;
    Ratio::new(20 * t * t * t - 20 * t, 9 * (t + 1) * (t + 1))
}

/// Earlier weight-function lower bound `10(t - 1)/3`.
pub fn prior_wt_lower(t: usize) -> Ratio<i64> {
    Ratio::new(10 * (t as i64 - 1), 3)
}

/// Earlier weight-function upper bound `(4t - 2) / (1 - 2 sqrt(ln(2t)/(2t)))`,
/// i.e. the Hadamard bound at `D = 2t`. `None` where the denominator is not
/// positive (`t <= 4`).
pub fn prior_wt_upper(t: usize) -> Option<f64> {
    if t == 0 {
        return None;
    }
    let d = 2.0 * t as f64;
    let denom = 1.0 - 2.0 * (d.ln() / d).sqrt();
    (denom > 0.0).then(|| (2.0 * d - 2.0) / denom)
}

/// Sum of `|i - j|` over ordered pairs `i, j` of `B = U_{a in A} [aT, aT+T-1]`
/// lying in different bins.
pub fn s_statistic(bins: &[usize], bin_width: usize) -> u64 {
    let mut members: Vec<usize> = Vec::with_capacity(bins.len() * bin_width);
    for &a in bins {
        members.extend(a * bin_width..(a + 1) * bin_width);
    }
    let mut total = 0u64;
    for &i in &members {
        for &j in &members {
            if i / bin_width != j / bin_width {
                total += i.abs_diff(j) as u64;
            }
        }
    }
    total
}

/// Closed form of [`s_statistic`] for `m` consecutive bins:
/// `((mT-1) mT (mT+1) - m (T-1) T (T+1)) / 3`.
pub fn s_statistic_consecutive(m: usize, bin_width: usize) -> u64 {
    let (m, t) = (m as u64, bin_width as u64);
    let n = m * t;
    if n == 0 {
        return 0;
    }
    ((n - 1) * n * (n + 1) - m * (t - 1) * t * (t + 1)) / 3
}

/// Bounds collected for one `(k, t, T)` instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub k: usize,
    pub t: usize,
    #[serde(rename = "T", skip_serializing_if = "Option::is_none")]
    pub bin_width: Option<usize>,
    pub plotkin: RationalValue,
    pub gv_upper: usize,
    /// `N(k + 1, 2t)` bound; absent outside `2t >= 10`, `k + 1 <= 4t^2`.
    pub hadamard_upper: Option<f64>,
    /// Absent where the closed form is undefined (`T > 6t + 3`).
    pub closed_form_lower: Option<BoundValue>,
    /// `10(t - 1)/3` for the weight function; absent for distributions.
    pub prior_lower: Option<RationalValue>,
    pub trivial_lower: usize,
    /// Largest of the lower bounds whose hypotheses hold.
    pub effective_lower: i64,
}

pub fn bounds_report(k: usize, t: usize, bin_width: Option<usize>) -> Result<BoundsReport> {
    if k == 0 || t == 0 {
        return Err(FccError::arg("k and t must be positive"));
    }
    let (drm, closed, prior_lower) = match bin_width {
        None => {
            let c = closed_form_wt_lower(t);
            let c = BoundValue {
                in_stated_range: c.in_stated_range && k > t,
                ..c
            };
            (weight_drm(k, t), Some(c), Some(prior_wt_lower(t).into()))
        }
        Some(w) => {
            let drm = distribution_drm(k, t, w)?;
            let c = closed_form_dist_lower(t, w).ok().map(|dist| BoundValue {
                in_stated_range: (k as f64) > dist.min_k_exclusive,
                ..dist.bound
            });
            (drm, c, None)
        }
    };
    let identity: Vec<usize> = (0..drm.size()).collect();
    let plotkin = plotkin_lower(&drm);
    let gv = gv_upper(&drm, &identity)?;
    let hadamard = hadamard_upper(k + 1, 2 * t).ok();
    // the trivial bound needs at least two function values
    let trivial = if drm.max_entry() > 0 { 2 * t } else { 0 };
    let mut effective = (trivial as i64).max(plotkin.ceil().to_integer());
    if let Some(c) = closed.filter(|c| c.in_stated_range) {
        effective = effective.max(c.ceil);
    }
    Ok(BoundsReport {
        k,
        t,
        bin_width,
        plotkin: plotkin.into(),
        gv_upper: gv,
        hadamard_upper: hadamard,
        closed_form_lower: closed,
        prior_lower,
        trivial_lower: trivial,
        effective_lower: effective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(m: usize, d: usize) -> DistanceRequirementMatrix {
        let rows = (0..m)
            .map(|i| (0..m).map(|j| if i == j { 0 } else { d }).collect())
            .collect();
        DistanceRequirementMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn plotkin_examples() {
        assert_eq!(plotkin_lower(&uniform(2, 7)), Ratio::from_integer(7));
        assert_eq!(plotkin_lower(&uniform(4, 5)), Ratio::new(15, 2));
        // odd M: 4/(9-1) * 3 * 4
        assert_eq!(plotkin_lower(&uniform(3, 4)), Ratio::from_integer(6));
    }

    #[test]
    fn ball_volume() {
        assert_eq!(hamming_ball_volume(5, -1), BigUint::zero());
        assert_eq!(hamming_ball_volume(5, 0), BigUint::one());
        assert_eq!(hamming_ball_volume(5, 2), BigUint::from(16u32));
        assert_eq!(hamming_ball_volume(3, 10), BigUint::from(8u32));
    }

    /// Oracle: least r with 2^r > Vol(r, D - 1), by direct u128 summation.
    fn two_point_oracle(d: usize) -> usize {
        (0..)
            .find(|&r: &usize| {
                let vol: u128 = (0..d.min(r + 1))
                    .map(|i| (0..i).fold(1u128, |acc, j| acc * (r - j) as u128 / (j + 1) as u128))
                    .sum();
                (1u128 << r) > vol
            })
            .unwrap()
    }

    #[test]
    fn gv_two_point_matches_oracle() {
        for d in 1..=20 {
            assert_eq!(
                gv_upper(&uniform(2, d), &[0, 1]).unwrap(),
                two_point_oracle(d),
                "D = {d}"
            );
        }
        assert_eq!(gv_upper(&uniform(5, 0), &[0, 1, 2, 3, 4]).unwrap(), 0);
    }

    #[test]
    fn gv_is_symmetric_under_reversal_for_banded_matrices() {
        for m in 2..=8 {
            for t in 1..=3 {
                let d = weight_drm(m - 1, t);
                let id: Vec<usize> = (0..m).collect();
                let rev: Vec<usize> = (0..m).rev().collect();
                assert_eq!(gv_upper(&d, &id).unwrap(), gv_upper(&d, &rev).unwrap());
            }
        }
    }

    #[test]
    fn greedy_examples() {
        let p = gv_greedy_construct(&uniform(2, 3), 3, &[0, 1])
            .unwrap()
            .unwrap();
        assert_eq!(p[0].to_string(), "000");
        assert_eq!(p[1].to_string(), "111");
        let zeros = gv_greedy_construct(&uniform(4, 0), 2, &[0, 1, 2, 3])
            .unwrap()
            .unwrap();
        assert!(zeros.iter().all(|v| v.len() == 2));
        assert_eq!(
            gv_greedy_construct(&uniform(3, 3), 3, &[0, 1, 2]).unwrap(),
            None
        );
    }

    #[test]
    fn greedy_succeeds_at_gv_length() {
        let d = weight_drm(5, 1);
        let order: Vec<usize> = (0..6).collect();
        let r = gv_upper(&d, &order).unwrap();
        let words = gv_greedy_construct(&d, r, &order).unwrap().unwrap();
        for i in 0..6 {
            for j in 0..6 {
                assert!(words[i].distance_unchecked(&words[j]) >= d.get(i, j));
            }
        }
    }

    #[test]
    fn hadamard_values() {
        let v = hadamard_upper(100, 10).unwrap();
        assert!((v - 446.707_569_084_602_6).abs() < 1e-9);
        let at_2t = hadamard_upper(2500, 50).unwrap();
        assert!((at_2t - prior_wt_upper(25).unwrap()).abs() < 1e-9);
        assert!(matches!(hadamard_upper(101, 10), Err(FccError::Domain(_))));
        assert!(hadamard_upper(4, 9).is_err());
    }

    #[test]
    fn closed_forms() {
        let w = closed_form_wt_lower(5);
        assert!((w.value - 14.457_527_667_343_493).abs() < 1e-9);
        assert_eq!(w.ceil, 15);
        assert!(w.in_stated_range);
        assert!(!closed_form_wt_lower(4).in_stated_range);

        let d = closed_form_dist_lower(7, 3).unwrap();
        assert!((d.bound.value - 15.033_370_452_904_234).abs() < 1e-9);
        assert!((d.min_k_exclusive - 126f64.sqrt()).abs() < 1e-12);
        assert!(closed_form_dist_lower(1, 10).is_err());

        let p = pair_weight_lower(6);
        assert!((p.value - 9.638_351_778_228_995).abs() < 1e-9);
    }

    #[test]
    fn closed_form_at_unit_bin_width_is_the_weight_bound() {
        for t in 1..200 {
            let a = closed_form_wt_lower(t).value;
            let b = closed_form_dist_lower(t, 1).unwrap().bound.value;
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn new_weight_bound_beats_the_old_one() {
        for t in 5..=1_000_000usize {
            let old = 10.0 * (t as f64 - 1.0) / 3.0;
            assert!(closed_form_wt_lower(t).value > old, "t = {t}");
        }
    }

    #[test]
    fn wide_bins_fall_below_the_trivial_bound() {
        for t in 1..=1000usize {
            let v = closed_form_dist_lower(t, 2 * t).unwrap().bound.value;
            assert!(v < 2.0 * t as f64, "t = {t}");
        }
    }

    #[test]
    fn pair_bound_growth() {
        let t = 100_000usize;
        let ratio = pair_weight_lower(t).value / (8.0 * t as f64 / 3.0);
        assert!((ratio - 1.0).abs() < 0.01);
    }

    #[test]
    fn prior_upper_undefined_for_small_t() {
        assert!(prior_wt_upper(3).is_none());
        assert!(prior_wt_upper(4).is_none());
        assert!((prior_wt_upper(5).unwrap() - 446.707_569_084_602_6).abs() < 1e-9);
    }

    #[test]
    fn s_statistic_examples() {
        assert_eq!(s_statistic(&[4], 3), 0);
        assert_eq!(s_statistic(&[0, 1], 1), 2);
        for m in 1..=6 {
            for t in 1..=5 {
                let window: Vec<usize> = (0..m).collect();
                assert_eq!(
                    s_statistic(&window, t),
                    s_statistic_consecutive(m, t),
                    "m={m} T={t}"
                );
            }
        }
    }

    #[test]
    fn report_for_weight_instance() {
        let r = bounds_report(10, 5, None).unwrap();
        assert_eq!(r.trivial_lower, 10);
        let closed = r.closed_form_lower.unwrap();
        assert_eq!(closed.ceil, 15);
        assert!(closed.in_stated_range);
        assert!(r.effective_lower >= 15);
        assert!(r.hadamard_upper.is_some());
        assert!((r.effective_lower as usize) <= r.gv_upper);
        let small = bounds_report(4, 1, None).unwrap();
        assert!(!small.closed_form_lower.unwrap().in_stated_range);
        assert!(small.hadamard_upper.is_none());
    }

    #[test]
    fn report_for_distribution_instance() {
        let r = bounds_report(12, 2, Some(3)).unwrap();
        assert_eq!(r.bin_width, Some(3));
        assert!(r.prior_lower.is_none());
        assert!(r.effective_lower as usize <= r.gv_upper);
        // a single bin has no demands
        let flat = bounds_report(3, 1, Some(10)).unwrap();
        assert_eq!(flat.trivial_lower, 0);
        assert_eq!(flat.gv_upper, 0);
        assert!(flat.closed_form_lower.is_none());
    }
}
