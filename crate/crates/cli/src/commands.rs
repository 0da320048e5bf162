use std::fs;
use std::path::Path;

use anyhow::Context;
use fcc_core::bits::{hamming_distance, symbol_pair_distance};
use fcc_core::bounds::{
    bounds_report, closed_form_wt_lower, prior_wt_lower, prior_wt_upper, RationalValue,
};
use fcc_core::construct::{distribution_encoder, weight_encoder, CodeChoice};
use fcc_core::drm::{distribution_drm, weight_drm, DistanceRequirementMatrix};
use fcc_core::gray::reflected_gray;
use fcc_core::linear::{
    belov, doubled_punctured_simplex, griesmer_bound, min_distance, simplex, BelovParams,
    GeneratorMatrix,
};
use fcc_core::solver::{ordering_search, solve_nd};
use fcc_core::verify::{verify_full, verify_representatives};
use fcc_core::{channel, BitVector, FccError, RedundancyTable};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cli::{CodeArg, CodeFamily, Command, ConstructKind, DrmKind};

/// How a command finished, beyond its printed result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A verification ran and found a counterexample.
    CheckFailed,
    /// The solver gave up at `r_max`.
    Unknown,
}

pub struct Outcome {
    pub result: Value,
    pub status: Status,
}

impl Outcome {
    fn ok(result: impl Serialize) -> anyhow::Result<Self> {
        Ok(Outcome {
            result: serde_json::to_value(result)?,
            status: Status::Ok,
        })
    }
}

pub fn run(command: &Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Gray { n } => {
            let gray = reflected_gray(*n)?;
            Outcome::ok(json!({ "n": n, "sequence": gray.sequence }))
        }
        Command::Code { family } => code(family),
        Command::Drm { kind } => drm(kind),
        Command::Bounds { k, t, bin_width } => Outcome::ok(bounds_report(*k, *t, *bin_width)?),
        Command::Construct { kind } => construct(kind),
        Command::Verify { table, full } => verify(table, *full),
        Command::Simulate {
            table,
            trials,
            seed,
        } => {
            let table = load_table(table)?;
            let report = channel::monte_carlo(&table, *trials, *seed)?;
            Outcome::ok(json!({
                "mode": mode_name(&table),
                "k": table.k(),
                "t": table.t(),
                "r": table.r(),
                "trials": report.trials,
                "seed": report.seed,
                "successes": report.successes,
                "success_rate": report.success_rate,
            }))
        }
        Command::Solve {
            drm,
            r_max,
            orderings,
        } => solve(drm, *r_max, *orderings),
        Command::Pairdist { x, y } => {
            let x: BitVector = x.parse()?;
            let y: BitVector = y.parse()?;
            Outcome::ok(json!({
                "hamming": hamming_distance(&x, &y)?,
                "symbol_pair": symbol_pair_distance(&x, &y)?,
            }))
        }
        Command::Reproduce { k, r_max } => reproduce(*k, *r_max),
    }
}

fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn code(family: &CodeFamily) -> anyhow::Result<Outcome> {
    let (name, g, opts, params): (_, GeneratorMatrix, _, Option<BelovParams>) = match family {
        CodeFamily::Simplex { m, opts } => ("simplex", simplex(*m)?, opts, None),
        CodeFamily::Dps { m, opts } => ("dps", doubled_punctured_simplex(*m)?, opts, None),
        CodeFamily::Belov { t, opts } => {
            if *t == 0 {
                return Err(FccError::Argument("t must be at least 1".into()).into());
            }
            let params = BelovParams::for_distance(2 * t + 1)?;
            ("belov", belov(*t)?, opts, Some(params))
        }
    };
    let d = g.claimed_distance().unwrap_or(0);
    let verified = if opts.verify {
        let found = min_distance(&g)?;
        if found != d {
            return Err(FccError::InternalConsistency(format!(
                "enumerated distance {found} differs from claimed {d}"
            ))
            .into());
        }
        Some(found)
    } else {
        None
    };
    if let Some(out) = &opts.out {
        write_file(out, &g.to_matrix_text())?;
    }
    let griesmer = griesmer_bound(g.k(), d);
    Outcome::ok(json!({
        "family": name,
        "n": g.n(),
        "k": g.k(),
        "d": d,
        "griesmer_bound": griesmer,
        "meets_griesmer": g.n() == griesmer,
        "verified_distance": verified,
        "belov": params,
        "rows": g.rows(),
    }))
}

fn drm(kind: &DrmKind) -> anyhow::Result<Outcome> {
    let (d, out) = match kind {
        DrmKind::Weight { k, t, out } => {
            if *k == 0 || *t == 0 {
                return Err(FccError::Argument("k and t must be positive".into()).into());
            }
            (weight_drm(*k, *t), out)
        }
        DrmKind::Dist {
            k,
            t,
            bin_width,
            out,
        } => {
            if *k == 0 || *t == 0 {
                return Err(FccError::Argument("k and t must be positive".into()).into());
            }
            (distribution_drm(*k, *t, *bin_width)?, out)
        }
    };
    if let Some(out) = out {
        write_file(out, &d.to_text())?;
    }
    let rows: Vec<&[usize]> = (0..d.size()).map(|i| d.row(i)).collect();
    Outcome::ok(json!({
        "size": d.size(),
        "bandwidth": d.bandwidth(),
        "max_entry": d.max_entry(),
        "rows": rows,
    }))
}

fn construct(kind: &ConstructKind) -> anyhow::Result<Outcome> {
    let (table, out) = match kind {
        ConstructKind::Wt { k, t, code, out } => {
            let choice = match code {
                CodeArg::Auto => CodeChoice::Auto,
                CodeArg::Dps => CodeChoice::Dps,
                CodeArg::Belov => CodeChoice::Belov,
            };
            (weight_encoder(*k, *t, choice)?, out)
        }
        ConstructKind::Dist {
            k,
            t,
            bin_width,
            out,
        } => (distribution_encoder(*k, *t, *bin_width)?, out),
    };
    let text = table.to_json();
    if let Some(out) = out {
        write_file(out, &text)?;
    }
    Outcome::ok(serde_json::from_str::<Value>(&text)?)
}

/// Reads an encoder table, either a bare table file or the JSON output of
/// `construct`.
pub fn load_table(path: &Path) -> anyhow::Result<RedundancyTable> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| FccError::Parse(format!("encoder table: {e}")))?;
    let inner = match value.get("result") {
        Some(result) if value.get("config").is_some() => result.to_string(),
        _ => text,
    };
    Ok(RedundancyTable::from_json(&inner)?)
}

fn mode_name(table: &RedundancyTable) -> &'static str {
    match table.mode() {
        fcc_core::Mode::Weight => "weight",
        fcc_core::Mode::Distribution { .. } => "distribution",
    }
}

fn verify(path: &Path, full: bool) -> anyhow::Result<Outcome> {
    let table = load_table(path)?;
    let verdict = if full {
        verify_full(&table)?
    } else {
        verify_representatives(&table)
    };
    let status = if verdict.passed {
        Status::Ok
    } else {
        Status::CheckFailed
    };
    Ok(Outcome {
        result: json!({
            "method": if full { "full" } else { "representatives" },
            "mode": mode_name(&table),
            "k": table.k(),
            "t": table.t(),
            "T": table.mode().bin_width(),
            "r": table.r(),
            "passed": verdict.passed,
            "pairs_checked": verdict.pairs_checked,
            "counterexample": verdict.counterexample,
        }),
        status,
    })
}

fn solve(path: &Path, r_max: usize, orderings: bool) -> anyhow::Result<Outcome> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let d = DistanceRequirementMatrix::from_text(&text)?;
    let res = if orderings {
        ordering_search(&d, r_max)?
    } else {
        solve_nd(&d, r_max)?
    };
    let status = if res.is_unknown() {
        Status::Unknown
    } else {
        Status::Ok
    };
    let mut result = serde_json::to_value(&res)?;
    if res.is_unknown() {
        result["n_value"] = json!(format!("unknown above {r_max}"));
    }
    Ok(Outcome { result, status })
}

#[derive(Serialize)]
struct ReproduceRow {
    t: usize,
    k: usize,
    constructed_r: usize,
    code: String,
    closed_form_lower: f64,
    closed_form_ceil: i64,
    closed_form_in_range: bool,
    prior_lower: RationalValue,
    /// Absent where the formula's denominator is not positive.
    prior_upper: Option<f64>,
    exact_n: Option<usize>,
    lower: i64,
    lower_source: &'static str,
}

pub const REPRODUCE_T: [usize; 5] = [1, 2, 3, 5, 7];

fn reproduce(k: Option<usize>, r_max: usize) -> anyhow::Result<Outcome> {
    let mut rows = Vec::new();
    for t in REPRODUCE_T {
        let k = k.unwrap_or(3 * t + 1);
        let table = weight_encoder(k, t, CodeChoice::Auto)?;
        let info = table.info().expect("encoder records its code");
        let closed = closed_form_wt_lower(t);
        let prior = prior_wt_lower(t);
        let exact_n = if t <= 2 {
            solve_nd(&weight_drm(k, t), r_max)?.n_value
        } else {
            None
        };
        let (lower, lower_source) = match exact_n {
            Some(n) => (n as i64, "exact"),
            None => {
                let mut best = (2 * t as i64, "trivial");
                if closed.in_stated_range && closed.ceil > best.0 {
                    best = (closed.ceil, "closed-form");
                }
                let p = prior.ceil().to_integer();
                if p > best.0 {
                    best = (p, "prior");
                }
                best
            }
        };
        let [n, m, d] = info.code;
        rows.push(ReproduceRow {
            t,
            k,
            constructed_r: table.r(),
            code: format!("[{n},{m},{d}] {}", info.family),
            closed_form_lower: closed.value,
            closed_form_ceil: closed.ceil,
            closed_form_in_range: closed.in_stated_range,
            prior_lower: prior.into(),
            prior_upper: prior_wt_upper(t),
            exact_n,
            lower,
            lower_source,
        });
    }
    Outcome::ok(rows)
}
