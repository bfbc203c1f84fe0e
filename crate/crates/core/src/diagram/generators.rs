use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::morse::{MorseBuilder, Over};
use super::{assemble, CrossingCircle, DiagramError, Family, PlanarDiagram, Provenance};
use crate::slope::{ContinuedFraction, Slope};

/// Parameters `(p, q, n1, n2)` of a double coil knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoilSpec {
    pub p: i64,
    pub q: i64,
    pub n1: i64,
    pub n2: i64,
}

impl CoilSpec {
    pub fn new(p: i64, q: i64, n1: i64, n2: i64) -> CoilSpec {
        CoilSpec { p, q, n1, n2 }
    }

    /// Checks `0 < p < q`, non-zero twists and `gcd(p, q) = 1`.
    pub fn validate(&self) -> Result<(), DiagramError> {
        if !(self.q >= 2 && 0 < self.p && self.p < self.q) {
            return Err(DiagramError::Precondition(format!(
                "need 0 < p < q, got p = {}, q = {}",
                self.p, self.q
            )));
        }
        if self.n1 == 0 || self.n2 == 0 {
            return Err(DiagramError::Precondition(
                "twist counts must be non-zero".into(),
            ));
        }
        let g = self.p.gcd(&self.q);
        if g != 1 {
            return Err(DiagramError::NotAKnot {
                p: self.p,
                q: self.q,
                gcd: g,
            });
        }
        Ok(())
    }

    pub fn slope(&self) -> Slope {
        Slope::new(self.p, self.q).expect("q is non-zero")
    }

    /// `q(q-1)(|n1| + |n2|)`.
    pub fn crossing_count(&self) -> u64 {
        let q = self.q as u64;
        q * (q - 1) * (self.n1.unsigned_abs() + self.n2.unsigned_abs())
    }
}

/// Handedness multiplier for the second twist box. The boxes face each other
/// across the diagram, so equal counts in a common frame would give the
/// trefoil for `(1, 2, 1, 1)`; measuring the second box in the mirrored
/// frame makes equal signs give the figure-8 knot instead.
const SECOND_BOX_HANDEDNESS: i8 = -1;

/// Over-strand choice for the middle and side twists of the 4-plat.
const MIDDLE: Over = Over::Falling;
const SIDE: Over = Over::Rising;

#[derive(Debug, Clone, Copy)]
enum BoxFill {
    Twists(i64, i8),
    Circle,
}

/// The curve of slope `p/q` drawn as a plane diagram: `q` nested arcs on the
/// left, the `q` lower strands pass the first box, strands `p..p+q` pass the
/// second, then two nested families of caps close it off. The pieces
/// between the boxes are crossing-free.
fn coil_layout(
    p: usize,
    q: usize,
    first: BoxFill,
    second: BoxFill,
) -> Result<(MorseBuilder, [Option<super::EdgeEnd>; 2]), DiagramError> {
    let mut b = MorseBuilder::new();
    for j in 0..q {
        b.cup(j);
    }
    let mut markers = [None, None];
    for (slot, (lo, fill)) in [(0, first), (p, second)].into_iter().enumerate() {
        match fill {
            BoxFill::Twists(n, h) => b.full_twists(lo, q, n, h > 0),
            BoxFill::Circle => markers[slot] = Some(b.crossing_circle(lo, q)),
        }
    }
    for i in 0..q - p {
        b.cap(q + p - 1 - i)?;
    }
    for i in 0..p {
        b.cap(p - 1 - i)?;
    }
    debug_assert_eq!(b.width(), 0);
    Ok((b, markers))
}

fn check_slope(s: Slope) -> Result<(usize, usize), DiagramError> {
    let (p, q) = (s.numerator(), s.denominator());
    if !(q >= 2 && 0 < p && p < q) {
        return Err(DiagramError::Precondition(format!(
            "need 0 < p < q, got {s}"
        )));
    }
    Ok((p as usize, q as usize))
}

/// The standard alternating 4-plat: terms alternate between the middle
/// pair of strands and the lower pair, starting in the middle.
fn four_plat(b: &mut MorseBuilder, terms: &[u64]) {
    b.cup(0);
    b.cup(2);
    for (i, &a) in terms.iter().enumerate() {
        let (pos, over) = if i % 2 == 0 { (1, MIDDLE) } else { (0, SIDE) };
        for _ in 0..a {
            b.cross(pos, over);
        }
    }
}

fn close_four_plat(b: &mut MorseBuilder, terms: usize) -> Result<(), DiagramError> {
    if terms % 2 == 1 {
        b.cap(2)?;
    } else {
        b.cap(1)?;
    }
    b.cap(0)
}

pub fn gen_two_bridge(c: &ContinuedFraction) -> PlanarDiagram {
    let mut b = MorseBuilder::new();
    four_plat(&mut b, c.terms());
    close_four_plat(&mut b, c.len()).expect("4-plat closes up");
    let graph = b.finish().expect("4-plat closes up");
    let diagram = assemble(&graph, false).expect("4-plat is planar").diagram;
    diagram.with_provenance(Some(Provenance {
        family: Family::TwoBridge { cfrac: c.clone() },
        circles: Vec::new(),
        fillings: Vec::new(),
    }))
}

/// The 4-plat of `p/q` with a clasp around the pair where the next twist
/// region would go.
pub fn gen_clasped_two_bridge(s: Slope) -> Result<PlanarDiagram, DiagramError> {
    check_slope(s)?;
    let cf =
        crate::slope::cfrac_expand(s).map_err(|e| DiagramError::Precondition(e.to_string()))?;
    let k = cf.len();
    let mut b = MorseBuilder::new();
    four_plat(&mut b, cf.terms());
    let lo = if k % 2 == 0 { 1 } else { 0 };
    let marker = b.crossing_circle(lo, 2);
    close_four_plat(&mut b, k + 1)?;
    let assembled = assemble(&b.finish()?, false)?;
    let clasp = assembled.component_at(marker);
    Ok(assembled.diagram.with_provenance(Some(Provenance {
        family: Family::ClaspedTwoBridge { slope: s },
        circles: vec![CrossingCircle {
            name: "clasp".into(),
            component: clasp,
            strands: 2,
            handedness: 1,
        }],
        fillings: Vec::new(),
    })))
}

pub fn gen_double_coil(spec: CoilSpec) -> Result<PlanarDiagram, DiagramError> {
    spec.validate()?;
    let (b, _) = coil_layout(
        spec.p as usize,
        spec.q as usize,
        BoxFill::Twists(spec.n1, 1),
        BoxFill::Twists(spec.n2, SECOND_BOX_HANDEDNESS),
    )?;
    let diagram = assemble(&b.finish()?, false)?.diagram;
    Ok(diagram.with_provenance(Some(Provenance {
        family: Family::DoubleCoil { spec },
        circles: Vec::new(),
        fillings: Vec::new(),
    })))
}

/// The slope-`p/q` curve with crossing circles `C1`, `C2` around the two
/// bundles of `q` strands.
pub fn gen_augmented(s: Slope) -> Result<PlanarDiagram, DiagramError> {
    let (p, q) = check_slope(s)?;
    let (b, markers) = coil_layout(p, q, BoxFill::Circle, BoxFill::Circle)?;
    let assembled = assemble(&b.finish()?, false)?;
    let circles = markers
        .iter()
        .zip(["C1", "C2"])
        .zip([1, SECOND_BOX_HANDEDNESS])
        .map(|((m, name), handedness)| CrossingCircle {
            name: name.into(),
            component: assembled.component_at(m.expect("circle marker")),
            strands: q,
            handedness,
        })
        .collect();
    Ok(assembled.diagram.with_provenance(Some(Provenance {
        family: Family::Augmented { slope: s },
        circles,
        fillings: Vec::new(),
    })))
}
