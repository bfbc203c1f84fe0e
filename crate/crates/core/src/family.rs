//! Parametrized families of double coil knots and expanding-family verdicts.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{
    coil_hyperbolicity_certificate, coil_k, coil_lambda_interval, coil_volume_interval, constants,
    disk_obstruction_check, BoundsError, Condition,
};
use crate::diagram::{gen_double_coil, generalized_twist_regions, twist_regions, CoilSpec};
use crate::slope::Slope;

/// Diagrams above this many crossings are not drawn; their rows carry the
/// crossing count from the formula and no twist-region count.
pub const DEFAULT_DIAGRAM_CAP: u64 = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("EmptyRange: the index window contains no members")]
    EmptyRange,
    #[error("NoCertifiedRows: no member of the family has a hyperbolicity certificate")]
    NoCertifiedRows,
    #[error("ConfigError: {0}")]
    Config(String),
}

impl FamilyError {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyError::EmptyRange => "EmptyRange",
            FamilyError::NoCertifiedRows => "NoCertifiedRows",
            FamilyError::Config(_) => "ConfigError",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SlopeSequence {
    /// `F(i+1)/F(i+2)`: 1/2, 2/3, 3/5, 5/8, ... with continued-fraction
    /// length `i`.
    Fibonacci,
    /// `i/(2i+1)`: 1/3, 2/5, 3/7, ... with length at most 2.
    OddDenominators,
    /// Slopes listed explicitly; index `i` picks the `i`-th (from 1).
    CustomList(Vec<Slope>),
}

impl SlopeSequence {
    pub fn slope(&self, index: u64) -> Option<Slope> {
        match self {
            SlopeSequence::Fibonacci => {
                let (mut a, mut b) = (1u64, 2u64);
                for _ in 1..index {
                    let c = a.checked_add(b)?;
                    a = b;
                    b = c;
                }
                Slope::new(a as i64, b as i64).ok()
            }
            SlopeSequence::OddDenominators => {
                let q = index.checked_mul(2)?.checked_add(1)?;
                Slope::new(index as i64, q as i64).ok()
            }
            SlopeSequence::CustomList(list) => list
                .get(usize::try_from(index).ok()?.checked_sub(1)?)
                .copied(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilyKind {
    /// Fixed `p/q` and `n2`; the index is `n1`.
    FixedSlopeVaryTwists { p: i64, q: i64, n2: i64 },
    /// `n1 = n2 = n`; the index picks the slope.
    VarySlopeFixedTwists { sequence: SlopeSequence, n: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoilFamily {
    pub kind: FamilyKind,
    pub start: i64,
    pub end: i64,
    pub step: i64,
}

impl CoilFamily {
    pub fn indices(&self) -> Vec<i64> {
        if self.step <= 0 || self.start > self.end {
            return Vec::new();
        }
        (self.start..=self.end)
            .step_by(self.step as usize)
            .collect()
    }

    /// The member at an index, or why there is none.
    pub fn member(&self, index: i64) -> Result<CoilSpec, String> {
        match &self.kind {
            FamilyKind::FixedSlopeVaryTwists { p, q, n2 } => Ok(CoilSpec::new(*p, *q, index, *n2)),
            FamilyKind::VarySlopeFixedTwists { sequence, n } => {
                let s = u64::try_from(index)
                    .ok()
                    .and_then(|i| sequence.slope(i))
                    .ok_or_else(|| format!("no slope at index {index}"))?;
                Ok(CoilSpec::new(s.numerator(), s.denominator(), *n, *n))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyRow {
    pub index: i64,
    pub spec: CoilSpec,
    pub k: u64,
    pub crossings: u64,
    /// `t(D)` of the generated diagram; `None` above the diagram cap.
    pub twist_regions: Option<usize>,
    pub generalized_twist_regions: usize,
    pub condition: Condition,
    pub volume_lower: f64,
    pub volume_upper: f64,
    pub lambda_lower: f64,
    pub lambda_upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UncertifiedMember {
    pub index: i64,
    pub spec: Option<CoilSpec>,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    Constant,
    StrictlyIncreasing,
    StrictlyDecreasing,
    Mixed,
}

fn trend(values: &[f64]) -> Trend {
    let pairs: Vec<(f64, f64)> = values.windows(2).map(|w| (w[0], w[1])).collect();
    if pairs.iter().all(|(a, b)| a == b) {
        Trend::Constant
    } else if pairs.iter().all(|(a, b)| b > a) {
        Trend::StrictlyIncreasing
    } else if pairs.iter().all(|(a, b)| b < a) {
        Trend::StrictlyDecreasing
    } else {
        Trend::Mixed
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilySummary {
    pub sup_volume_upper: f64,
    pub inf_volume_lower: f64,
    pub volume_lower_trend: Trend,
    pub inf_lambda_lower: f64,
    pub sup_lambda_upper: f64,
    pub lambda_upper_trend: Trend,
    pub k_trend: Trend,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    ExpandingCertified,
    NotExpandingCertified,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyReport {
    pub family: CoilFamily,
    pub rows: Vec<FamilyRow>,
    pub uncertified: Vec<UncertifiedMember>,
    pub summary: Option<FamilySummary>,
    pub verdict: Option<Verdict>,
}

fn analyze_member(index: i64, spec: CoilSpec, cap: u64) -> Result<FamilyRow, UncertifiedMember> {
    let fail = |reason: String| UncertifiedMember {
        index,
        spec: Some(spec),
        reason,
    };
    let k = coil_k(&spec).map_err(|e| fail(e.to_string()))?;
    let cert = coil_hyperbolicity_certificate(k, spec.n1, spec.n2);
    let volume = coil_volume_interval(&spec).map_err(|e| fail(e.to_string()))?;
    let lambda = coil_lambda_interval(&spec).map_err(|e| fail(e.to_string()))?;
    let crossings = spec.crossing_count();
    let (twist, generalized) = if crossings <= cap {
        let d = gen_double_coil(spec).map_err(|e| fail(e.to_string()))?;
        (
            Some(twist_regions(&d).count()),
            generalized_twist_regions(&d).count,
        )
    } else {
        // two twisted ribbons by construction
        (None, 2)
    };
    Ok(FamilyRow {
        index,
        spec,
        k,
        crossings,
        twist_regions: twist,
        generalized_twist_regions: generalized,
        condition: cert.condition,
        volume_lower: volume.lower,
        volume_upper: volume.upper,
        lambda_lower: lambda.lower,
        lambda_upper: lambda.upper,
    })
}

/// Evaluates every member (in parallel) and assembles rows in index order.
pub fn analyze_family(f: &CoilFamily) -> Result<FamilyReport, FamilyError> {
    analyze_family_with_cap(f, DEFAULT_DIAGRAM_CAP)
}

pub fn analyze_family_with_cap(f: &CoilFamily, cap: u64) -> Result<FamilyReport, FamilyError> {
    let indices = f.indices();
    if indices.is_empty() {
        return Err(FamilyError::EmptyRange);
    }
    let results: Vec<Result<FamilyRow, UncertifiedMember>> = indices
        .par_iter()
        .map(|&i| match f.member(i) {
            Ok(spec) => analyze_member(i, spec, cap),
            Err(reason) => Err(UncertifiedMember {
                index: i,
                spec: None,
                reason,
            }),
        })
        .collect();
    let mut rows = Vec::new();
    let mut uncertified = Vec::new();
    for r in results {
        match r {
            Ok(row) => rows.push(row),
            Err(u) => uncertified.push(u),
        }
    }
    let mut report = FamilyReport {
        family: f.clone(),
        summary: summarize(&rows),
        rows,
        uncertified,
        verdict: None,
    };
    report.verdict = expanding_verdict(&report).ok();
    Ok(report)
}

fn summarize(rows: &[FamilyRow]) -> Option<FamilySummary> {
    if rows.is_empty() {
        return None;
    }
    let col = |f: fn(&FamilyRow) -> f64| rows.iter().map(f).collect::<Vec<f64>>();
    let max = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
    let vu = col(|r| r.volume_upper);
    let vl = col(|r| r.volume_lower);
    let ll = col(|r| r.lambda_lower);
    let lu = col(|r| r.lambda_upper);
    Some(FamilySummary {
        sup_volume_upper: max(&vu),
        inf_volume_lower: min(&vl),
        volume_lower_trend: trend(&vl),
        inf_lambda_lower: min(&ll),
        sup_lambda_upper: max(&lu),
        lambda_upper_trend: trend(&lu),
        k_trend: trend(&col(|r| r.k as f64)),
    })
}

/// Whether the infinite family the report samples has `k` bounded.
fn kind_bounds_k(kind: &FamilyKind) -> bool {
    match kind {
        FamilyKind::FixedSlopeVaryTwists { .. } => true,
        FamilyKind::VarySlopeFixedTwists { sequence, .. } => match sequence {
            SlopeSequence::Fibonacci => false,
            SlopeSequence::OddDenominators => true,
            // a finite list is a finite family
            SlopeSequence::CustomList(_) => true,
        },
    }
}

/// Bounded volume (decided by the family kind: the upper bound is `4k·v8`)
/// certifies expansion with `inf λ1 >= A1/sup^2 > 0`. Unbounded `k` makes
/// the volume lower bound grow linearly, so `λ1 <= A2/vol -> 0`; this
/// verdict additionally needs the sampled λ1 uppers to be strictly falling.
pub fn expanding_verdict(r: &FamilyReport) -> Result<Verdict, FamilyError> {
    let summary = r.summary.as_ref().ok_or(FamilyError::NoCertifiedRows)?;
    if kind_bounds_k(&r.family.kind) {
        return Ok(Verdict::ExpandingCertified);
    }
    if r.rows.len() >= 2
        && summary.k_trend == Trend::StrictlyIncreasing
        && summary.lambda_upper_trend == Trend::StrictlyDecreasing
    {
        return Ok(Verdict::NotExpandingCertified);
    }
    Ok(Verdict::Inconclusive)
}

/// Uniform λ1 lower bound that an expanding verdict rests on.
pub fn uniform_lambda_lower(r: &FamilyReport) -> Option<f64> {
    let s = r.summary.as_ref()?;
    Some(constants::lambda_floor_numerator() / (s.sup_volume_upper * s.sup_volume_upper))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwistGrowthRow {
    pub n1: i64,
    pub crossings: u64,
    pub twist_regions: usize,
    pub volume_upper: f64,
    pub disk_obstruction: bool,
}

/// Fixed slope and `n2`, growing `n1`: diagram size and `t(D)` grow while
/// the volume upper bound stays put.
pub fn twist_growth_experiment(
    p: i64,
    q: i64,
    n2: i64,
    n1_range: std::ops::RangeInclusive<i64>,
) -> Result<Vec<TwistGrowthRow>, BoundsError> {
    let specs: Vec<CoilSpec> = n1_range.map(|n1| CoilSpec::new(p, q, n1, n2)).collect();
    specs
        .par_iter()
        .map(|spec| {
            let v = coil_volume_interval(spec)?;
            let d = gen_double_coil(*spec)?;
            Ok(TwistGrowthRow {
                n1: spec.n1,
                crossings: d.crossing_count() as u64,
                twist_regions: twist_regions(&d).count(),
                volume_upper: v.upper,
                disk_obstruction: disk_obstruction_check(spec.n2),
            })
        })
        .collect()
}

pub const FAMILY_CSV_HEADER: &str = "index,p,q,n1,n2,k,crossings,twist_regions,generalized_twist_regions,certificate,volume_lower,volume_upper,lambda_lower,lambda_upper";

impl FamilyReport {
    pub fn to_csv(&self, fmt_num: impl Fn(f64) -> String) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{FAMILY_CSV_HEADER}");
        for r in &self.rows {
            let twist = r.twist_regions.map(|t| t.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{:?},{},{},{},{}",
                r.index,
                r.spec.p,
                r.spec.q,
                r.spec.n1,
                r.spec.n2,
                r.k,
                r.crossings,
                twist,
                r.generalized_twist_regions,
                r.condition,
                fmt_num(r.volume_lower),
                fmt_num(r.volume_upper),
                fmt_num(r.lambda_lower),
                fmt_num(r.lambda_upper),
            );
        }
        out
    }
}

/// Reads a family from `key = value` lines (`#` starts a comment).
///
/// Keys: `kind` (`fixed-slope` or `vary-slope`), `p`, `q`, `n1` (or `n`),
/// `n2`, `start`, `end`, `step`, `sequence` (`fibonacci`,
/// `odd-denominators`, `custom-list`) and `slopes` (comma-separated, for
/// `custom-list`).
pub fn parse_family_config(text: &str) -> Result<CoilFamily, FamilyError> {
    let bad = |m: String| FamilyError::Config(m);
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| bad(format!("line {}: expected key = value", lineno + 1)))?;
        let key = k.trim().to_ascii_lowercase().replace('_', "-");
        if map.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err(bad(format!("duplicate key `{key}`")));
        }
    }
    let int = |key: &str| -> Result<Option<i64>, FamilyError> {
        map.get(key)
            .map(|v| {
                v.parse::<i64>()
                    .map_err(|_| bad(format!("`{key}` is not an integer: {v}")))
            })
            .transpose()
    };
    let need = |key: &str| int(key)?.ok_or_else(|| bad(format!("missing `{key}`")));
    let kind = match map.get("kind").map(String::as_str) {
        Some("fixed-slope") => FamilyKind::FixedSlopeVaryTwists {
            p: need("p")?,
            q: need("q")?,
            n2: need("n2")?,
        },
        Some("vary-slope") => {
            let n = match (int("n")?, int("n1")?, int("n2")?) {
                (Some(n), _, _) => n,
                (None, Some(a), Some(b)) if a == b => a,
                (None, Some(a), None) | (None, None, Some(a)) => a,
                _ => return Err(bad("vary-slope needs `n` (or equal n1 and n2)".into())),
            };
            let sequence = match map.get("sequence").map(String::as_str) {
                Some("fibonacci") => SlopeSequence::Fibonacci,
                Some("odd-denominators") => SlopeSequence::OddDenominators,
                Some("custom-list") => {
                    let list = map
                        .get("slopes")
                        .ok_or_else(|| bad("missing `slopes`".into()))?;
                    let slopes = list
                        .split(',')
                        .map(|s| s.trim().parse::<Slope>().map_err(|e| bad(e.to_string())))
                        .collect::<Result<Vec<_>, _>>()?;
                    SlopeSequence::CustomList(slopes)
                }
                other => return Err(bad(format!("unknown sequence {other:?}"))),
            };
            FamilyKind::VarySlopeFixedTwists { sequence, n }
        }
        other => return Err(bad(format!("unknown kind {other:?}"))),
    };
    let default_end = match &kind {
        FamilyKind::VarySlopeFixedTwists {
            sequence: SlopeSequence::CustomList(l),
            ..
        } => Some(l.len() as i64),
        _ => None,
    };
    let start = int("start")?.unwrap_or(1);
    let end = match int("end")? {
        Some(e) => e,
        None => default_end.ok_or_else(|| bad("missing `end`".into()))?,
    };
    let step = int("step")?.unwrap_or(1);
    if step <= 0 {
        return Err(bad("`step` must be positive".into()));
    }
    Ok(CoilFamily {
        kind,
        start,
        end,
        step,
    })
}
