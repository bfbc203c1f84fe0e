//! Volume and spectral-gap estimates for double coil knots and their
//! parent links.
//!
//! All evaluation is in `f64`. Integer thresholds (`|n| >= 4`,
//! `k|n| >= 80`, `|n| >= 6`) are decided on integers, never on a rounded
//! float.

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{CoilSpec, DiagramError};
use crate::slope::{canonical_coil_slope, cfrac_length, Slope, SlopeError};

/// Fixed constants. `V3` and `V8` are the volumes of the regular ideal
/// tetrahedron and octahedron.
pub mod constants {
    pub const V3: f64 = 1.014_941_606_409_653_6;
    pub const V8: f64 = 3.663_862_376_708_876;
    pub const PARENT_DEFICIT: f64 = 1.3536;
    /// `4·sqrt(6·sqrt 2)/147`, per unit of `k|n|`.
    pub fn cusp_arc_coefficient() -> f64 {
        4.0 * (6.0 * 2f64.sqrt()).sqrt() / 147.0
    }
    /// `32·sqrt 2/7203`.
    pub fn ell_coefficient() -> f64 {
        32.0 * 2f64.sqrt() / 7203.0
    }
    /// `A1 = pi^2/2^50`.
    pub fn lambda_floor_numerator() -> f64 {
        std::f64::consts::PI.powi(2) / 2f64.powi(50)
    }
    /// `A2`.
    pub const LAMBDA_CEILING_COEFFICIENT: f64 = 12650.0;
    /// Every closed orientable hyperbolic 3-manifold has volume above `pi/2^25`.
    pub fn volume_floor() -> f64 {
        std::f64::consts::PI / 2f64.powi(25)
    }
    /// Smallest volume of a hyperbolic knot complement.
    pub const FIGURE8_VOLUME: f64 = 2.0 * V3;
    /// Coil complements have Heegaard genus at most this.
    pub const COIL_HEEGAARD_GENUS: u32 = 3;
}

use constants::*;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("NonHyperbolicSlope: {0} reduces to 0 or 1/0")]
    NonHyperbolicSlope(Slope),
    #[error("SlopeTooShort: length {0} is not above 2π")]
    SlopeTooShort(f64),
    #[error("NoHyperbolicityCertificate: k = {k}, n1 = {n1}, n2 = {n2}")]
    NoHyperbolicityCertificate { k: u64, n1: i64, n2: i64 },
    #[error("VolumeBelowFloor: {0} is not above π/2^25")]
    VolumeBelowFloor(f64),
    #[error("PreconditionViolation: {0}")]
    Precondition(String),
    #[error(transparent)]
    Spec(#[from] DiagramError),
    #[error(transparent)]
    Slope(SlopeError),
}

impl From<SlopeError> for BoundsError {
    fn from(e: SlopeError) -> Self {
        match e {
            SlopeError::NonHyperbolicSlope(s) => BoundsError::NonHyperbolicSlope(s),
            other => BoundsError::Slope(other),
        }
    }
}

impl BoundsError {
    pub fn name(&self) -> &'static str {
        match self {
            BoundsError::NonHyperbolicSlope(_) => "NonHyperbolicSlope",
            BoundsError::SlopeTooShort(_) => "SlopeTooShort",
            BoundsError::NoHyperbolicityCertificate { .. } => "NoHyperbolicityCertificate",
            BoundsError::VolumeBelowFloor(_) => "VolumeBelowFloor",
            BoundsError::Precondition(_) => "PreconditionViolation",
            BoundsError::Spec(e) => e.name(),
            BoundsError::Slope(e) => e.name(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VolumeInterval {
    pub lower: f64,
    pub upper: f64,
    /// The upper bound is strict.
    pub strict_upper: bool,
    pub method: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralInterval {
    pub lower: f64,
    pub upper: f64,
    pub method: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Condition {
    TwistsAtLeast4,
    KTimesNAtLeast80,
    Both,
    None,
}

/// One checked inequality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HyperbolicityCertificate {
    pub condition: Condition,
    pub witnesses: Vec<Witness>,
}

impl HyperbolicityCertificate {
    pub fn is_certified(&self) -> bool {
        self.condition != Condition::None
    }
}

/// `[4k·v3 - 1.3536, 4k·v8]` for the parent link of `s`, with `k` the
/// continued-fraction length of the representative in `(0, 1)`.
pub fn parent_volume_interval(s: Slope) -> Result<VolumeInterval, BoundsError> {
    let s = canonical_coil_slope(s)?;
    let k = cfrac_length(s)? as f64;
    Ok(VolumeInterval {
        lower: 4.0 * k * V3 - PARENT_DEFICIT,
        upper: 4.0 * k * V8,
        strict_upper: false,
        method: vec!["parent-link-volume".into()],
    })
}

/// `max(1/4 + 4n^2, 32·sqrt2·k^2·n^2/7203)` with `n = min(|n1|, |n2|)`.
/// This is a squared length.
pub fn ell_param(k: u64, n1: i64, n2: i64) -> Result<f64, BoundsError> {
    if k == 0 || n1 == 0 || n2 == 0 {
        return Err(BoundsError::Precondition(
            "need k >= 1 and non-zero twists".into(),
        ));
    }
    let n = n1.unsigned_abs().min(n2.unsigned_abs()) as f64;
    let k = k as f64;
    Ok((0.25 + 4.0 * n * n).max(ell_coefficient() * k * k * n * n))
}

/// `(1 - (2π/ell_min)^2)^{3/2}` for a shortest filling slope of length
/// `ell_min > 2π`.
pub fn dehn_filling_factor(ell_min: f64) -> Result<f64, BoundsError> {
    if ell_min.is_nan() || ell_min <= 2.0 * PI {
        return Err(BoundsError::SlopeTooShort(ell_min));
    }
    Ok((1.0 - (2.0 * PI / ell_min).powi(2)).powf(1.5))
}

/// `sqrt(1/4 + 4n^2)`.
pub fn slope_length_lower(n: i64) -> f64 {
    let n = n as f64;
    (0.25 + 4.0 * n * n).sqrt()
}

/// `4·sqrt(6·sqrt2)·k·|n|/147`.
pub fn cusp_slope_length_lower(k: u64, n: i64) -> f64 {
    cusp_arc_coefficient() * k as f64 * n.unsigned_abs() as f64
}

pub fn coil_hyperbolicity_certificate(k: u64, n1: i64, n2: i64) -> HyperbolicityCertificate {
    let (a1, a2) = (n1.unsigned_abs(), n2.unsigned_abs());
    let twists = a1 >= 4 && a2 >= 4;
    let products = k * a1 >= 80 && k * a2 >= 80;
    let condition = match (twists, products) {
        (true, true) => Condition::Both,
        (true, false) => Condition::TwistsAtLeast4,
        (false, true) => Condition::KTimesNAtLeast80,
        (false, false) => Condition::None,
    };
    let two_pi = 2.0 * PI;
    let mut witnesses = Vec::new();
    for (i, (n, a)) in [(n1, a1), (n2, a2)].into_iter().enumerate() {
        let i = i + 1;
        witnesses.push(Witness {
            name: format!("|n{i}| >= 4"),
            value: a as f64,
            threshold: 4.0,
            holds: a >= 4,
        });
        witnesses.push(Witness {
            name: format!("k|n{i}| >= 80"),
            value: (k * a) as f64,
            threshold: 80.0,
            holds: k * a >= 80,
        });
        let len = slope_length_lower(n);
        witnesses.push(Witness {
            name: format!("sqrt(1/4 + 4 n{i}^2) > 2pi"),
            value: len,
            threshold: two_pi,
            holds: len > two_pi,
        });
        let cusp = cusp_slope_length_lower(k, n);
        witnesses.push(Witness {
            name: format!("cusp length of 1/n{i} > 2pi"),
            value: cusp,
            threshold: two_pi,
            holds: cusp > two_pi,
        });
    }
    HyperbolicityCertificate {
        condition,
        witnesses,
    }
}

/// Continued-fraction length of a coil spec's slope.
pub fn coil_k(spec: &CoilSpec) -> Result<u64, BoundsError> {
    spec.validate()?;
    Ok(cfrac_length(spec.slope())? as u64)
}

fn certified(spec: &CoilSpec) -> Result<(u64, HyperbolicityCertificate), BoundsError> {
    let k = coil_k(spec)?;
    let cert = coil_hyperbolicity_certificate(k, spec.n1, spec.n2);
    if !cert.is_certified() {
        return Err(BoundsError::NoHyperbolicityCertificate {
            k,
            n1: spec.n1,
            n2: spec.n2,
        });
    }
    Ok((k, cert))
}

fn condition_tag(c: Condition) -> &'static str {
    match c {
        Condition::TwistsAtLeast4 => "certificate:twists-at-least-4",
        Condition::KTimesNAtLeast80 => "certificate:k-times-n-at-least-80",
        Condition::Both => "certificate:both",
        Condition::None => "certificate:none",
    }
}

/// `[(1 - 4π^2/ℓ)^{3/2}·(4k·v3 - 1.3536), 4k·v8)`.
pub fn coil_volume_interval(spec: &CoilSpec) -> Result<VolumeInterval, BoundsError> {
    let (k, cert) = certified(spec)?;
    let ell = ell_param(k, spec.n1, spec.n2)?;
    let factor = dehn_filling_factor(ell.sqrt())?;
    let kf = k as f64;
    Ok(VolumeInterval {
        lower: factor * (4.0 * kf * V3 - PARENT_DEFICIT),
        upper: 4.0 * kf * V8,
        strict_upper: true,
        method: vec![
            "parent-link-volume".into(),
            "dehn-filling-decay".into(),
            condition_tag(cert.condition).into(),
        ],
    })
}

/// `A1/vol^2` with `A1 = π^2/2^50`.
pub fn lambda_lower(vol: f64) -> Result<f64, BoundsError> {
    if vol.is_nan() || vol <= volume_floor() {
        return Err(BoundsError::VolumeBelowFloor(vol));
    }
    Ok(lambda_floor_numerator() / (vol * vol))
}

fn check_genus_volume(g: u32, vol: f64) -> Result<(), BoundsError> {
    if g == 0 || vol.is_nan() || vol <= 0.0 {
        return Err(BoundsError::Precondition(format!(
            "need g >= 1 and vol > 0, got {g}, {vol}"
        )));
    }
    Ok(())
}

/// `8π(g - 1)/vol`.
pub fn cheeger_upper(g: u32, vol: f64) -> Result<f64, BoundsError> {
    check_genus_volume(g, vol)?;
    Ok(8.0 * PI * (g - 1) as f64 / vol)
}

/// `4h + 10h^2`.
pub fn buser_upper(h: f64) -> Result<f64, BoundsError> {
    if h.is_nan() || h < 0.0 {
        return Err(BoundsError::Precondition(format!("need h >= 0, got {h}")));
    }
    Ok(4.0 * h + 10.0 * h * h)
}

/// `32π(g - 1)/vol + 640π^2(g - 1)^2/vol^2`, written out rather than
/// composed so the identity with [`buser_upper`] ∘ [`cheeger_upper`] is a
/// real check.
pub fn lambda_upper(g: u32, vol: f64) -> Result<f64, BoundsError> {
    check_genus_volume(g, vol)?;
    let g1 = (g - 1) as f64;
    Ok(32.0 * PI * g1 / vol + 640.0 * PI * PI * g1 * g1 / (vol * vol))
}

/// `[A1/V.upper^2, A2/V.lower]`: the volume bound endpoints stand in for
/// the unknown true volume, which keeps both ends valid since both
/// expressions decrease in the volume.
pub fn coil_lambda_interval(spec: &CoilSpec) -> Result<SpectralInterval, BoundsError> {
    let v = coil_volume_interval(spec)?;
    if v.lower <= 0.0 {
        return Err(BoundsError::Precondition(
            "volume lower bound is not positive".into(),
        ));
    }
    let mut method = v.method.clone();
    method.extend([
        "A1=pi^2/2^50".to_string(),
        "A2=12650".to_string(),
        format!("heegaard-genus<={COIL_HEEGAARD_GENUS}"),
        "volume-endpoint-substitution".to_string(),
    ]);
    Ok(SpectralInterval {
        lower: lambda_lower(v.upper)?,
        upper: LAMBDA_CEILING_COEFFICIENT / v.lower,
        method,
    })
}

/// Whether a `1/n2` filling is long enough (`sqrt(1/4 + 4n^2) > 12`,
/// i.e. `|n| >= 6`) to rule out the punctured disk of total length at
/// most 12.
pub fn disk_obstruction_check(n2: i64) -> bool {
    // 1/4 + 4n^2 > 144  <=>  1 + 16n^2 > 576
    let n = n2.unsigned_abs() as u128;
    1 + 16 * n * n > 576
}

/// The machine-readable bound report for one coil spec.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoilReport {
    pub spec: CoilSpec,
    pub k: u64,
    pub ell: f64,
    pub certificate: HyperbolicityCertificate,
    pub volume: ReportVolume,
    pub lambda: ReportLambda,
    pub methods: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportVolume {
    pub lower: f64,
    pub upper: f64,
    pub strict_upper: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportLambda {
    pub lower: f64,
    pub upper: f64,
}

pub const REPORT_CSV_HEADER: &str =
    "p,q,n1,n2,k,ell,certificate,volume_lower,volume_upper,strict_upper,lambda_lower,lambda_upper";

impl CoilReport {
    pub fn csv_row(&self, fmt_num: impl Fn(f64) -> String) -> String {
        format!(
            "{},{},{},{},{},{},{:?},{},{},{},{},{}",
            self.spec.p,
            self.spec.q,
            self.spec.n1,
            self.spec.n2,
            self.k,
            fmt_num(self.ell),
            self.certificate.condition,
            fmt_num(self.volume.lower),
            fmt_num(self.volume.upper),
            self.volume.strict_upper,
            fmt_num(self.lambda.lower),
            fmt_num(self.lambda.upper),
        )
    }
}

pub fn coil_report(spec: &CoilSpec) -> Result<CoilReport, BoundsError> {
    let (k, certificate) = certified(spec)?;
    let v = coil_volume_interval(spec)?;
    let l = coil_lambda_interval(spec)?;
    Ok(CoilReport {
        spec: *spec,
        k,
        ell: ell_param(k, spec.n1, spec.n2)?,
        certificate,
        volume: ReportVolume {
            lower: v.lower,
            upper: v.upper,
            strict_upper: v.strict_upper,
        },
        lambda: ReportLambda {
            lower: l.lower,
            upper: l.upper,
        },
        methods: l.method,
    })
}
