//! Curves and arcs on the 4-punctured sphere.
//!
//! The sphere is the pillowcase: two unit squares glued along their
//! boundary, punctures at the corners. The vertical edges are the arcs of
//! `D1` (left, `x = 0`) and `D2` (right, `x = 1`); the horizontal edges are
//! `A` (bottom) and `A'` (top). It is the quotient of the torus
//! `R^2 / (2Z)^2` by `v -> -v`, which is how the brute-force oracle counts
//! intersections: straight lines in the torus are automatically in minimal
//! position.

use std::fmt::Write as _;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::slope::{Slope, SlopeError};

pub const DEFAULT_ORACLE_CAP: i64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("OracleCapExceeded: denominator {denominator} is above the cap {cap}")]
    OracleCapExceeded { denominator: i64, cap: i64 },
    #[error("UnsupportedTwistCurve: twists are only supported about 1/0, got {0}")]
    UnsupportedTwistCurve(Slope),
    #[error(transparent)]
    Slope(#[from] SlopeError),
}

impl CurveError {
    pub fn name(&self) -> &'static str {
        match self {
            CurveError::OracleCapExceeded { .. } => "OracleCapExceeded",
            CurveError::UnsupportedTwistCurve(_) => "UnsupportedTwistCurve",
            CurveError::Slope(e) => e.name(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FramingArc {
    D1,
    D2,
    A,
    #[serde(rename = "A'")]
    APrime,
}

impl FramingArc {
    const ALL: [FramingArc; 4] = [
        FramingArc::D1,
        FramingArc::D2,
        FramingArc::A,
        FramingArc::APrime,
    ];

    fn index(self) -> usize {
        self as usize
    }
}

/// The `index`-th tick along an arc, counted from the bottom (`D1`, `D2`)
/// or from the left (`A`, `A'`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Tick {
    pub arc: FramingArc,
    pub index: usize,
}

/// A straight piece of the curve on one face of the pillowcase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Chord {
    pub from: Tick,
    pub to: Tick,
    pub front: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FramedCurve {
    pub slope: Slope,
    /// Parallel copies; more than one only for a non-reduced `(p, q)`.
    pub copies: u64,
    /// Ticks on `D1, D2, A, A'`.
    pub tick_counts: [u64; 4],
    pub chords: Vec<Chord>,
}

type Q = Ratio<i128>;

fn q(n: i128) -> Q {
    Q::from_integer(n)
}

/// Folds a torus coordinate onto `[0, 1]`.
fn fold(x: Q) -> Q {
    let r = x - q(2) * (x / q(2)).floor();
    if r > q(1) {
        q(2) - r
    } else {
        r
    }
}

/// Parameters in `(0, span)` where `base + t·dir` meets an integer multiple
/// of `step`.
fn hits(base: Q, dir: i128, span: Q, step: i128) -> Vec<Q> {
    if dir == 0 {
        return Vec::new();
    }
    let (lo, hi) = if dir > 0 {
        (base, base + span * q(dir))
    } else {
        (base + span * q(dir), base)
    };
    let first = (lo / q(step)).floor().to_integer();
    let last = (hi / q(step)).ceil().to_integer();
    (first..=last)
        .map(|m| (q(m * step) - base) / q(dir))
        .filter(|t| *t > q(0) && *t < span)
        .collect()
}

fn direction(s: Slope) -> (i128, i128) {
    (s.denominator() as i128, s.numerator() as i128)
}

/// Connect-the-dots realization of the curve of slope `s`.
pub fn curve_coordinates(s: Slope) -> FramedCurve {
    realize(s, 1)
}

/// `(p, q)` need not be coprime: the result has `gcd(p, q)` parallel copies
/// of the reduced curve.
pub fn multicurve_coordinates(p: i64, q: i64) -> Result<FramedCurve, SlopeError> {
    let s = Slope::new(p, q)?;
    let g = p.unsigned_abs().gcd(&q.unsigned_abs());
    Ok(realize(s, g.max(1)))
}

fn realize(s: Slope, copies: u64) -> FramedCurve {
    let (dx, dy) = direction(s);
    // crossings with a vertical (x) or horizontal (y) grid line
    let mut raw: Vec<(FramingArc, Q, usize)> = Vec::new();
    let mut pieces: Vec<(usize, usize, bool)> = Vec::new();
    for i in 0..copies {
        // levels dy·x - dx·y in (0, 1), never an integer, so the line misses
        // every puncture
        let level = Ratio::new(2 * i as i128 + 1, 2 * copies as i128);
        let base = if dx != 0 {
            (q(0), -level / q(dx))
        } else {
            (level / q(dy), q(0))
        };
        let point = |t: Q| (base.0 + t * q(dx), base.1 + t * q(dy));
        // the start point already sits on a grid line
        let mut ts = vec![q(0)];
        ts.extend(hits(base.0, dx, q(2), 1));
        ts.extend(hits(base.1, dy, q(2), 1));
        ts.sort();
        ts.dedup();
        let first = raw.len();
        for &t in &ts {
            let (x, y) = point(t);
            let on_vertical = x.is_integer();
            let (arc, along) = if on_vertical {
                let even = x.to_integer().rem_euclid(2) == 0;
                (if even { FramingArc::D1 } else { FramingArc::D2 }, fold(y))
            } else {
                let even = y.to_integer().rem_euclid(2) == 0;
                (
                    if even {
                        FramingArc::A
                    } else {
                        FramingArc::APrime
                    },
                    fold(x),
                )
            };
            raw.push((arc, along, 0));
        }
        let m = ts.len();
        for j in 0..m {
            let t0 = ts[j];
            let t1 = if j + 1 < m { ts[j + 1] } else { q(2) };
            let (mx, my) = point((t0 + t1) / q(2));
            let front = (mx.floor().to_integer() + my.floor().to_integer()).rem_euclid(2) == 0;
            pieces.push((first + j, first + (j + 1) % m, front));
        }
    }
    // rank ticks along each arc
    let mut counts = [0u64; 4];
    for arc in FramingArc::ALL {
        let mut on: Vec<usize> = (0..raw.len()).filter(|&i| raw[i].0 == arc).collect();
        on.sort_by(|&a, &b| raw[a].1.cmp(&raw[b].1));
        counts[arc.index()] = on.len() as u64;
        for (rank, i) in on.into_iter().enumerate() {
            raw[i].2 = rank;
        }
    }
    let tick = |i: usize| Tick {
        arc: raw[i].0,
        index: raw[i].2,
    };
    let chords = pieces
        .into_iter()
        .map(|(a, b, front)| Chord {
            from: tick(a),
            to: tick(b),
            front,
        })
        .collect();
    FramedCurve {
        slope: s,
        copies,
        tick_counts: counts,
        chords,
    }
}

impl FramedCurve {
    /// Connected components, traced through the chords alone: each tick
    /// has one front chord and one back chord.
    pub fn trace_components(&self) -> usize {
        use std::collections::HashMap;
        let mut by_tick: HashMap<(Tick, bool), usize> = HashMap::new();
        for (i, c) in self.chords.iter().enumerate() {
            by_tick.insert((c.from, c.front), i);
            by_tick.insert((c.to, c.front), i);
        }
        let mut seen = vec![false; self.chords.len()];
        let mut components = 0;
        for start in 0..self.chords.len() {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut i = start;
            let mut at = self.chords[i].to;
            while !seen[i] {
                seen[i] = true;
                let c = self.chords[i];
                let next = by_tick[&(at, !c.front)];
                let n = self.chords[next];
                at = if n.from == at { n.to } else { n.from };
                i = next;
            }
        }
        components
    }

    /// The front face with the framing arcs, front chords solid and back
    /// chords dashed.
    pub fn render_svg(&self) -> String {
        let size = 320.0;
        let pad = 40.0;
        let side = size - 2.0 * pad;
        let tick_point = |t: Tick| {
            let n = self.tick_counts[t.arc.index()] as f64;
            let f = (t.index as f64 + 1.0) / (n + 1.0);
            let (x, y) = match t.arc {
                FramingArc::D1 => (0.0, f),
                FramingArc::D2 => (1.0, f),
                FramingArc::A => (f, 0.0),
                FramingArc::APrime => (f, 1.0),
            };
            (pad + side * x, size - pad - side * y)
        };
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
        );
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        );
        let _ = writeln!(
            out,
            r##"<rect class="pillowcase" x="{pad}" y="{pad}" width="{side}" height="{side}" fill="none" stroke="#888"/>"##
        );
        for (label, x, y) in [
            ("D1", pad - 30.0, size / 2.0),
            ("D2", size - pad + 8.0, size / 2.0),
            ("A", size / 2.0, size - pad + 24.0),
            ("A'", size / 2.0, pad - 12.0),
        ] {
            let _ = writeln!(
                out,
                r#"<text x="{x}" y="{y}" font-size="14">{label}</text>"#
            );
        }
        let _ = writeln!(
            out,
            r##"<g class="curve" fill="none" stroke="#1f77b4" stroke-width="2">"##
        );
        for c in &self.chords {
            let (a, b) = (tick_point(c.from), tick_point(c.to));
            let dash = if c.front {
                ""
            } else {
                r#" stroke-dasharray="5,4""#
            };
            let _ = writeln!(
                out,
                r#"<polyline points="{:.2},{:.2} {:.2},{:.2}"{dash}/>"#,
                a.0, a.1, b.0, b.1
            );
        }
        out.push_str("</g>\n</svg>\n");
        out
    }
}

fn det(a: Slope, b: Slope) -> u64 {
    let v = a.numerator() as i128 * b.denominator() as i128
        - b.numerator() as i128 * a.denominator() as i128;
    v.unsigned_abs() as u64
}

/// `2·|p1 q2 - p2 q1|`.
pub fn curve_curve_intersection(s1: Slope, s2: Slope) -> u64 {
    2 * det(s1, s2)
}

/// `|p_arc q_curve - q_arc p_curve|`.
pub fn arc_curve_intersection(arc: Slope, curve: Slope) -> u64 {
    det(arc, curve)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntersectionMode {
    CurveCurve,
    ArcCurve,
}

/// A closed segment in the torus cover, translated into `[0, 2]^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub a: (Ratio<i128>, Ratio<i128>),
    pub b: (Ratio<i128>, Ratio<i128>),
}

/// Straight representatives cut into the fundamental domain `[0, 2)^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeTrace {
    pub segments: Vec<Segment>,
}

impl LatticeTrace {
    /// Preimage of the closed curve of slope `s`: two parallel lines at
    /// levels `±level`.
    pub fn curve(s: Slope, level: Ratio<i128>) -> LatticeTrace {
        let (dx, dy) = direction(s);
        let mut segments = Vec::new();
        for lv in [level, -level] {
            let base = if dx != 0 {
                (q(0), -lv / q(dx))
            } else {
                (lv / q(dy), q(0))
            };
            segments.extend(cut(base, (dx, dy), q(2)));
        }
        LatticeTrace { segments }
    }

    /// Preimage of the arc of slope `s`: the segments from the puncture at
    /// the origin to `±(q, p)`.
    pub fn arc(s: Slope) -> LatticeTrace {
        let (dx, dy) = direction(s);
        let mut segments = cut((q(0), q(0)), (dx, dy), q(1));
        segments.extend(cut((q(0), q(0)), (-dx, -dy), q(1)));
        LatticeTrace { segments }
    }

    /// Transverse crossings with `other`, each point of the torus counted
    /// once (half-open domain).
    pub fn crossings(&self, other: &LatticeTrace) -> u64 {
        // clear denominators once; everything below is exact integer math
        let all = self.segments.iter().chain(&other.segments);
        let scale = all
            .flat_map(|s| [s.a.0, s.a.1, s.b.0, s.b.1])
            .fold(1i128, |l, c| l.lcm(c.denom()));
        let mine: Vec<IntSegment> = self
            .segments
            .iter()
            .map(|s| IntSegment::new(s, scale))
            .collect();
        let theirs: Vec<IntSegment> = other
            .segments
            .iter()
            .map(|s| IntSegment::new(s, scale))
            .collect();
        let side = 2 * scale;
        let mut count = 0;
        for s in &mine {
            for t in &theirs {
                if s.boxes_overlap(t) && s.meets_in_domain(t, side) {
                    count += 1;
                }
            }
        }
        count
    }
}

type Point = (i128, i128);

/// A segment with coordinates multiplied by a common denominator.
struct IntSegment {
    a: Point,
    b: Point,
    lo: Point,
    hi: Point,
}

impl IntSegment {
    fn new(s: &Segment, scale: i128) -> IntSegment {
        let int = |c: Q| (c * q(scale)).to_integer();
        let a = (int(s.a.0), int(s.a.1));
        let b = (int(s.b.0), int(s.b.1));
        IntSegment {
            a,
            b,
            lo: (a.0.min(b.0), a.1.min(b.1)),
            hi: (a.0.max(b.0), a.1.max(b.1)),
        }
    }

    fn boxes_overlap(&self, t: &IntSegment) -> bool {
        self.lo.0 <= t.hi.0 && t.lo.0 <= self.hi.0 && self.lo.1 <= t.hi.1 && t.lo.1 <= self.hi.1
    }

    /// Whether the segments meet at a point of `[0, side)^2`.
    fn meets_in_domain(&self, t: &IntSegment, side: i128) -> bool {
        let cross = |u: Point, v: Point| u.0 * v.1 - u.1 * v.0;
        let r = (self.b.0 - self.a.0, self.b.1 - self.a.1);
        let w = (t.b.0 - t.a.0, t.b.1 - t.a.1);
        let mut den = cross(r, w);
        if den == 0 {
            // parallel pieces lie on distinct lines by the choice of levels
            return false;
        }
        let ca = (t.a.0 - self.a.0, t.a.1 - self.a.1);
        let (mut un, mut vn) = (cross(ca, w), cross(ca, r));
        if den < 0 {
            (den, un, vn) = (-den, -un, -vn);
        }
        if !(0..=den).contains(&un) || !(0..=den).contains(&vn) {
            return false;
        }
        // the meeting point times den
        let x = self.a.0 * den + un * r.0;
        let y = self.a.1 * den + un * r.1;
        (0..side * den).contains(&x) && (0..side * den).contains(&y)
    }
}

fn cut(base: (Q, Q), dir: (i128, i128), span: Q) -> Vec<Segment> {
    let mut ts = vec![q(0), span];
    ts.extend(hits(base.0, dir.0, span, 2));
    ts.extend(hits(base.1, dir.1, span, 2));
    ts.sort();
    ts.dedup();
    let point = |t: Q| (base.0 + t * q(dir.0), base.1 + t * q(dir.1));
    ts.windows(2)
        .map(|w| {
            let (mx, my) = point((w[0] + w[1]) / q(2));
            let shift = (q(2) * (mx / q(2)).floor(), q(2) * (my / q(2)).floor());
            let (a, b) = (point(w[0]), point(w[1]));
            Segment {
                a: (a.0 - shift.0, a.1 - shift.1),
                b: (b.0 - shift.0, b.1 - shift.1),
            }
        })
        .collect()
}

/// A level `dy·x - dx·y` for the curve that is not an integer and, when
/// `avoid` is given, differs from `±avoid` mod 2.
fn level_for(avoid: Option<Q>) -> Q {
    (1..)
        .map(|i| Ratio::new(2 * i + 1, 4 * i + 7))
        .find(|&c| match avoid {
            None => true,
            Some(a) => {
                let d1 = c - a;
                let d2 = c + a;
                !(d1 / q(2)).is_integer() && !(d2 / q(2)).is_integer()
            }
        })
        .expect("levels are unbounded")
}

/// Counts intersections of straight representatives in the torus cover and
/// halves the result for the pillowcase.
pub fn brute_force_intersection(
    s1: Slope,
    s2: Slope,
    mode: IntersectionMode,
    cap: i64,
) -> Result<u64, CurveError> {
    for s in [s1, s2] {
        if s.denominator() > cap {
            return Err(CurveError::OracleCapExceeded {
                denominator: s.denominator(),
                cap,
            });
        }
    }
    let first_level = level_for(None);
    let second = LatticeTrace::curve(s2, level_for(Some(first_level)));
    let first = match mode {
        IntersectionMode::CurveCurve => LatticeTrace::curve(s1, first_level),
        IntersectionMode::ArcCurve => LatticeTrace::arc(s1),
    };
    let total = first.crossings(&second);
    debug_assert!(total % 2 == 0, "preimage points come in pairs");
    Ok(total / 2)
}

/// Full Dehn twists about the curve of slope `1/0`: `p/q -> (p + count·q)/q`.
pub fn dehn_twist(s: Slope, about: Slope, count: i64) -> Result<Slope, CurveError> {
    if about != Slope::INFINITY {
        return Err(CurveError::UnsupportedTwistCurve(about));
    }
    let p = count
        .checked_mul(s.denominator())
        .and_then(|v| v.checked_add(s.numerator()))
        .ok_or(SlopeError::Overflow)?;
    Ok(Slope::new(p, s.denominator())?)
}
