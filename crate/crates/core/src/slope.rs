//! Exact slopes on the framed 4-punctured sphere and their canonical
//! continued-fraction expansions.
//!
//! Everything here is integer arithmetic. A [`Slope`] is a reduced fraction
//! `p/q` with `q >= 0`; the point at infinity is stored as `1/0`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopeError {
    #[error("ZeroOverZero: 0/0 is not a slope")]
    ZeroOverZero,
    #[error("NonHyperbolicSlope: {0} reduces to 0 or 1/0 modulo 1")]
    NonHyperbolicSlope(Slope),
    #[error("NotInUnitInterval: {0} is not of the form p/q with 0 < p < q")]
    NotInUnitInterval(Slope),
    #[error("InvalidContinuedFraction: {0}")]
    InvalidContinuedFraction(String),
    #[error("SyntaxError: cannot parse {0:?}")]
    Syntax(String),
    #[error("Overflow: value does not fit in 64 bits")]
    Overflow,
}

impl SlopeError {
    /// Stable error name, as printed by the command line tool.
    pub fn name(&self) -> &'static str {
        match self {
            SlopeError::ZeroOverZero => "ZeroOverZero",
            SlopeError::NonHyperbolicSlope(_) => "NonHyperbolicSlope",
            SlopeError::NotInUnitInterval(_) => "NotInUnitInterval",
            SlopeError::InvalidContinuedFraction(_) => "InvalidContinuedFraction",
            SlopeError::Syntax(_) => "SyntaxError",
            SlopeError::Overflow => "Overflow",
        }
    }
}

/// A reduced element of `Q ∪ {1/0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Slope {
    numerator: i64,
    denominator: i64,
}

impl Slope {
    pub const INFINITY: Slope = Slope {
        numerator: 1,
        denominator: 0,
    };
    pub const ZERO: Slope = Slope {
        numerator: 0,
        denominator: 1,
    };

    /// Reduces `numerator/denominator`, normalizing the sign onto the
    /// numerator and every `n/0` onto `1/0`.
    pub fn new(numerator: i64, denominator: i64) -> Result<Slope, SlopeError> {
        if numerator == 0 && denominator == 0 {
            return Err(SlopeError::ZeroOverZero);
        }
        if denominator == 0 {
            return Ok(Slope::INFINITY);
        }
        let g = numerator.gcd(&denominator);
        let (mut n, mut d) = (numerator / g, denominator / g);
        if d < 0 {
            n = n.checked_neg().ok_or(SlopeError::Overflow)?;
            d = d.checked_neg().ok_or(SlopeError::Overflow)?;
        }
        Ok(Slope {
            numerator: n,
            denominator: d,
        })
    }

    pub fn numerator(&self) -> i64 {
        self.numerator
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn is_infinite(&self) -> bool {
        self.denominator == 0
    }

    /// True for `p/q` with `0 < p < q`.
    pub fn in_unit_interval(&self) -> bool {
        self.numerator > 0 && self.numerator < self.denominator
    }

    fn require_unit(self) -> Result<Slope, SlopeError> {
        if self.in_unit_interval() {
            Ok(self)
        } else {
            Err(SlopeError::NotInUnitInterval(self))
        }
    }
}

/// Reduces a fraction to a [`Slope`].
pub fn reduce_slope(numerator: i64, denominator: i64) -> Result<Slope, SlopeError> {
    Slope::new(numerator, denominator)
}

/// The representative of `s + Z` with `0 < p < q`.
///
/// Integer slopes and `1/0` have no such representative; their parent links
/// are not hyperbolic.
pub fn canonical_coil_slope(s: Slope) -> Result<Slope, SlopeError> {
    if s.is_infinite() {
        return Err(SlopeError::NonHyperbolicSlope(s));
    }
    let q = s.denominator;
    let p = s.numerator.rem_euclid(q);
    if p == 0 {
        return Err(SlopeError::NonHyperbolicSlope(s));
    }
    Ok(Slope {
        numerator: p,
        denominator: q,
    })
}

/// Canonical representative of `-p/q`, namely `(q - p)/q`.
pub fn mirror_slope(s: Slope) -> Result<Slope, SlopeError> {
    let s = s.require_unit()?;
    Ok(Slope {
        numerator: s.denominator - s.numerator,
        denominator: s.denominator,
    })
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl FromStr for Slope {
    type Err = SlopeError;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(text: &str) -> Result<Slope, SlopeError> {
        let t = text.trim();
        let syntax = || SlopeError::Syntax(text.to_string());
        match t.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| syntax())?;
                let d: i64 = d.trim().parse().map_err(|_| syntax())?;
                Slope::new(n, d)
            }
            None => {
                let n: i64 = t.parse().map_err(|_| syntax())?;
                Slope::new(n, 1)
            }
        }
    }
}

impl TryFrom<String> for Slope {
    type Error = SlopeError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        value.parse()
    }
}

impl From<Slope> for String {
    fn from(s: Slope) -> String {
        s.to_string()
    }
}

/// Canonical positive continued fraction `1/(a1 + 1/(a2 + ... + 1/ak))`.
///
/// All terms are positive and the last term is at least 2 whenever there
/// is more than one term, which makes the expansion unique.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct ContinuedFraction {
    terms: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(terms: Vec<u64>) -> Result<ContinuedFraction, SlopeError> {
        if terms.is_empty() {
            return Err(SlopeError::InvalidContinuedFraction("no terms".into()));
        }
        if terms.contains(&0) {
            return Err(SlopeError::InvalidContinuedFraction(
                "terms must be positive".into(),
            ));
        }
        if terms.len() == 1 && terms[0] < 2 || terms.len() > 1 && *terms.last().unwrap() < 2 {
            // [1] is the integer slope 1/1 and [.., a, 1] duplicates [.., a+1].
            return Err(SlopeError::InvalidContinuedFraction(
                "last term must be at least 2".into(),
            ));
        }
        Ok(ContinuedFraction { terms })
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    /// Number of terms `k`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sum of the terms: the crossing number of the standard alternating
    /// 2-bridge diagram.
    pub fn term_sum(&self) -> u64 {
        self.terms.iter().sum()
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for ContinuedFraction {
    type Err = SlopeError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| SlopeError::Syntax(text.to_string()))?;
        let terms = inner
            .split(',')
            .map(|a| a.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| SlopeError::Syntax(text.to_string()))?;
        ContinuedFraction::new(terms)
    }
}

impl TryFrom<Vec<u64>> for ContinuedFraction {
    type Error = SlopeError;
    fn try_from(value: Vec<u64>) -> Result<Self, Self::Error> {
        ContinuedFraction::new(value)
    }
}

impl From<ContinuedFraction> for Vec<u64> {
    fn from(c: ContinuedFraction) -> Vec<u64> {
        c.terms
    }
}

/// Euclidean algorithm on `q/p`.
pub fn cfrac_expand(s: Slope) -> Result<ContinuedFraction, SlopeError> {
    let s = s.require_unit()?;
    let (mut num, mut den) = (s.numerator as u64, s.denominator as u64);
    let mut terms = Vec::new();
    // invariant: the remaining value is num/den with 0 < num < den
    while num != 0 {
        terms.push(den / num);
        let r = den % num;
        den = num;
        num = r;
    }
    Ok(ContinuedFraction { terms })
}

/// Exact value of a continued fraction, always in `(0, 1)`.
pub fn cfrac_eval(c: &ContinuedFraction) -> Slope {
    cfrac_eval_checked(c).expect("continued fraction value overflows i64")
}

pub fn cfrac_eval_checked(c: &ContinuedFraction) -> Result<Slope, SlopeError> {
    // fold from the tail: x = 1/(a + x)
    let (mut num, mut den): (u128, u128) = (0, 1);
    for &a in c.terms.iter().rev() {
        let next_den = (a as u128)
            .checked_mul(den)
            .and_then(|v| v.checked_add(num))
            .ok_or(SlopeError::Overflow)?;
        num = den;
        den = next_den;
    }
    let num = i64::try_from(num).map_err(|_| SlopeError::Overflow)?;
    let den = i64::try_from(den).map_err(|_| SlopeError::Overflow)?;
    Slope::new(num, den)
}

/// Convenience: `k` for a slope `p/q` with `0 < p < q`.
pub fn cfrac_length(s: Slope) -> Result<usize, SlopeError> {
    Ok(cfrac_expand(s)?.len())
}
