//! Encoders for the Hamming weight function and the weight-distribution
//! function, built from Gray-ordered systematic linear codes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::BitVector;
use crate::error::{FccError, Result};
use crate::linear::{
    belov_for_distance, ceil_log2, doubled_punctured_simplex, gray_order, systematize,
    GeneratorMatrix,
};

/// Which function a table protects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Weight,
    /// `floor(wt(u) / T)` with bin width `T`.
    Distribution {
        bin_width: usize,
    },
}

impl Mode {
    /// Function value of a message of weight `w`.
    pub fn value(&self, w: usize) -> usize {
        match *self {
            Mode::Weight => w,
            Mode::Distribution { bin_width } => w / bin_width,
        }
    }

    pub fn bin_width(&self) -> Option<usize> {
        match *self {
            Mode::Weight => None,
            Mode::Distribution { bin_width } => Some(bin_width),
        }
    }
}

/// Linear code used by the weight encoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeChoice {
    /// Doubled punctured simplex when `t + 1` is a power of two, Belov-type
    /// otherwise.
    Auto,
    Dps,
    Belov,
}

impl FromStr for CodeChoice {
    type Err = FccError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(CodeChoice::Auto),
            "dps" => Ok(CodeChoice::Dps),
            "belov" => Ok(CodeChoice::Belov),
            other => Err(FccError::arg(format!("unknown code choice {other:?}"))),
        }
    }
}

impl fmt::Display for CodeChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeChoice::Auto => "auto",
            CodeChoice::Dps => "dps",
            CodeChoice::Belov => "belov",
        })
    }
}

/// How a table was built. Not needed to encode or verify.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionInfo {
    /// Code family of the linear code, `"dps"` or `"belov"`.
    pub family: String,
    /// `[n, k, d]` of the linear code.
    pub code: [usize; 3],
    /// Closed-form redundancy for the parameters, which can differ from
    /// `r` when `T` does not divide `2t + 1`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub formula_r: Option<i64>,
}

/// Weight-indexed redundancy: message `u` is encoded as `(u, table[wt(u)])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedundancyTable {
    mode: Mode,
    k: usize,
    t: usize,
    r: usize,
    table: Vec<BitVector>,
    info: Option<ConstructionInfo>,
}

impl RedundancyTable {
    /// Checks that there is one word per weight `0..=k`, all of one length.
    pub fn new(mode: Mode, k: usize, t: usize, table: Vec<BitVector>) -> Result<Self> {
        if k == 0 {
            return Err(FccError::arg("message length must be positive"));
        }
        if let Mode::Distribution { bin_width: 0 } = mode {
            return Err(FccError::arg("bin width must be at least 1"));
        }
        if table.len() != k + 1 {
            return Err(FccError::Dimension {
                left: k + 1,
                right: table.len(),
            });
        }
        let r = table[0].len();
        if let Some(bad) = table.iter().find(|p| p.len() != r) {
            return Err(FccError::Dimension {
                left: r,
                right: bad.len(),
            });
        }
        Ok(RedundancyTable {
            mode,
            k,
            t,
            r,
            table,
            info: None,
        })
    }

    fn with_info(mut self, info: ConstructionInfo) -> Self {
        self.info = Some(info);
        self
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Redundancy length.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn entries(&self) -> &[BitVector] {
        &self.table
    }

    /// Redundancy attached to messages of weight `w`.
    pub fn redundancy(&self, w: usize) -> &BitVector {
        &self.table[w]
    }

    pub fn info(&self) -> Option<&ConstructionInfo> {
        self.info.as_ref()
    }

    /// Function value of a message of weight `w`.
    pub fn value(&self, w: usize) -> usize {
        self.mode.value(w)
    }

    /// `(u, p_{wt(u)})`.
    pub fn encode(&self, u: &BitVector) -> Result<BitVector> {
        if u.len() != self.k {
            return Err(FccError::Dimension {
                left: self.k,
                right: u.len(),
            });
        }
        Ok(u.concat(&self.table[u.weight()]))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&TableFile::from(self)).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: TableFile = serde_json::from_str(text)
            .map_err(|e| FccError::parse(format!("encoder table: {e}")))?;
        file.try_into()
    }
}

/// Same as [`RedundancyTable::encode`].
pub fn encode(table: &RedundancyTable, u: &BitVector) -> Result<BitVector> {
    table.encode(u)
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    mode: String,
    k: usize,
    t: usize,
    #[serde(rename = "T", skip_serializing_if = "Option::is_none", default)]
    bin_width: Option<usize>,
    r: usize,
    table: Vec<BitVector>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    construction: Option<ConstructionInfo>,
}

impl From<&RedundancyTable> for TableFile {
    fn from(t: &RedundancyTable) -> Self {
        TableFile {
            mode: match t.mode {
                Mode::Weight => "weight".into(),
                Mode::Distribution { .. } => "distribution".into(),
            },
            k: t.k,
            t: t.t,
            bin_width: t.mode.bin_width(),
            r: t.r,
            table: t.table.clone(),
            construction: t.info.clone(),
        }
    }
}

impl TryFrom<TableFile> for RedundancyTable {
    type Error = FccError;

    fn try_from(file: TableFile) -> Result<Self> {
        let mode = match (file.mode.as_str(), file.bin_width) {
            ("weight", None) => Mode::Weight,
            ("distribution", Some(bin_width)) => Mode::Distribution { bin_width },
            ("weight", Some(_)) => return Err(FccError::parse("weight tables take no T")),
            ("distribution", None) => return Err(FccError::parse("distribution tables need T")),
            (other, _) => return Err(FccError::parse(format!("unknown mode {other:?}"))),
        };
        let mut table = RedundancyTable::new(mode, file.k, file.t, file.table)?;
        if table.r != file.r {
            return Err(FccError::parse(format!(
                "declared r = {} but entries have length {}",
                file.r, table.r
            )));
        }
        table.info = file.construction;
        Ok(table)
    }
}

/// Inner code at design distance `d`: the doubled punctured simplex code
/// when `d = 2^m - 1`, otherwise the Belov-type code.
fn code_for_distance(d: usize, choice: CodeChoice) -> Result<(GeneratorMatrix, &'static str)> {
    let m = ceil_log2(d);
    let dps_optimal = (d + 1).is_power_of_two();
    match choice {
        CodeChoice::Dps => Ok((doubled_punctured_simplex(m.max(2))?, "dps")),
        CodeChoice::Auto if dps_optimal => Ok((doubled_punctured_simplex(m.max(2))?, "dps")),
        _ => Ok((belov_for_distance(d)?, "belov")),
    }
}

/// Parity parts of the Gray-ordered code, repeated cyclically to `count`
/// entries.
fn gray_parities(g: &GeneratorMatrix, count: usize) -> Result<Vec<BitVector>> {
    let (sys, _) = systematize(g)?;
    let ordered = gray_order(&sys)?;
    Ok((0..count)
        .map(|i| ordered.parity(i % ordered.len()).clone())
        .collect())
}

fn code_params(g: &GeneratorMatrix) -> [usize; 3] {
    [g.n(), g.k(), g.claimed_distance().unwrap_or(0)]
}

/// Weight-function encoder: `p_i = b_{i mod M}` for the Gray-ordered
/// codewords `(a_i, b_i)` of a `[n, ceil(log2(2t+1)), >= 2t+1]` code.
/// Redundancy `n - ceil(log2(2t+1))`.
pub fn weight_encoder(k: usize, t: usize, choice: CodeChoice) -> Result<RedundancyTable> {
    if t == 0 {
        return Err(FccError::arg("t must be at least 1"));
    }
    if k <= t {
        return Err(FccError::arg(format!(
            "weight encoder needs k > t, got k = {k}, t = {t}"
        )));
    }
    let (g, family) = code_for_distance(2 * t + 1, choice)?;
    let table = gray_parities(&g, k + 1)?;
    let info = ConstructionInfo {
        family: family.into(),
        code: code_params(&g),
        formula_r: None,
    };
    Ok(RedundancyTable::new(Mode::Weight, k, t, table)?.with_info(info))
}

/// Distribution encoder for either regime of `T`.
pub fn distribution_encoder(k: usize, t: usize, bin_width: usize) -> Result<RedundancyTable> {
    if bin_width == 0 {
        return Err(FccError::arg("bin width must be at least 1"));
    }
    if bin_width <= t {
        distribution_encoder_small_t(k, t, bin_width)
    } else {
        distribution_encoder_large_t(k, t, bin_width)
    }
}

/// Entry for weight `w` is `(q_{floor(w/T)}, p_{w mod T})`.
fn compose(k: usize, bin_width: usize, q: impl Fn(usize) -> BitVector) -> Vec<BitVector> {
    let p = |j: usize| BitVector::zeros(bin_width - 1 - j).concat(&BitVector::ones(j));
    (0..=k)
        .map(|w| q(w / bin_width).concat(&p(w % bin_width)))
        .collect()
}

/// Distribution encoder for `t + 1 <= T <= 2t + 1`: alternating constant
/// blocks of length `2t - T + 1` and unary within-bin parts of length
/// `T - 1`, for redundancy `2t`.
pub fn distribution_encoder_large_t(
    k: usize,
    t: usize,
    bin_width: usize,
) -> Result<RedundancyTable> {
    if t == 0 || k == 0 {
        return Err(FccError::arg("k and t must be positive"));
    }
    if !(t + 1..=2 * t + 1).contains(&bin_width) {
        return Err(FccError::arg(format!(
            "large-T encoder needs t + 1 <= T <= 2t + 1, got T = {bin_width}, t = {t}"
        )));
    }
    let block = 2 * t + 1 - bin_width;
    let table = compose(k, bin_width, |b| {
        if b % 2 == 0 {
            BitVector::ones(block)
        } else {
            BitVector::zeros(block)
        }
    });
    RedundancyTable::new(Mode::Distribution { bin_width }, k, t, table)
}

/// Distribution encoder for `T <= t`: with `z = ceil((2t+1)/T)`, the bin
/// parts are `T`-fold repetitions of a weight-encoder table at design
/// distance `z`, so `d(q_i, q_j) >= T (z - |i - j|) >= 2t + 1 - T |i - j|`.
pub fn distribution_encoder_small_t(
    k: usize,
    t: usize,
    bin_width: usize,
) -> Result<RedundancyTable> {
    if t == 0 || k == 0 {
        return Err(FccError::arg("k and t must be positive"));
    }
    if bin_width == 0 || bin_width > t {
        return Err(FccError::arg(format!(
            "small-T encoder needs 1 <= T <= t, got T = {bin_width}, t = {t}"
        )));
    }
    let z = (2 * t + 1).div_ceil(bin_width);
    let (g, family) = code_for_distance(z, CodeChoice::Auto)?;
    let bins = k / bin_width + 1;
    let inner = gray_parities(&g, bins)?;
    let table = compose(k, bin_width, |b| inner[b].repeat(bin_width));

    let m = g.k() as i64;
    let p = (g.n() + 2 - 2 * z) as i64;
    let (t_i, bw) = (t as i64, bin_width as i64);
    let info = ConstructionInfo {
        family: family.into(),
        code: code_params(&g),
        formula_r: Some(4 * t_i + (p - 1) * bw - m * bw + 1),
    };
    Ok(RedundancyTable::new(Mode::Distribution { bin_width }, k, t, table)?.with_info(info))
}
