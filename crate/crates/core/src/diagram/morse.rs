//! Builds diagrams by sweeping left to right over a row of strand positions.
//!
//! Positions are numbered bottom to top. Strands flow in the +x direction
//! while the sweep runs, so a full twist of parallel strands can be read off
//! the crossing types directly.

use super::{DiagramError, EdgeEnd, PortGraph};

/// Which strand of a crossing lies on top. The rising strand runs from the
/// lower-left to the upper-right; the falling strand from upper-left to
/// lower-right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Over {
    Rising,
    Falling,
}

impl Over {
    /// With both strands flowing rightwards, the falling strand over gives a
    /// positive crossing.
    pub(crate) fn right_handed(positive: bool) -> Over {
        if positive {
            Over::Falling
        } else {
            Over::Rising
        }
    }
}

// crossing slots, counterclockwise: lower-left, lower-right, upper-right,
// upper-left; strands run 0-2 (rising) and 1-3 (falling)
const SW: u8 = 0;
const SE: u8 = 1;
const NE: u8 = 2;
const NW: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Far {
    Slot(EdgeEnd),
    Token(usize),
    /// An external port supplied by the caller.
    Outside(usize),
}

/// Where an open strand end leads once the sweep is over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Loose {
    Slot(EdgeEnd),
    Outside(usize),
}

#[derive(Debug, Default)]
pub(crate) struct MorseBuilder {
    positions: Vec<usize>,
    far: Vec<Far>,
    over_parity: Vec<u8>,
    link: Vec<[Option<EdgeEnd>; 4]>,
    /// Outside ports that attach to a crossing slot.
    outside_slots: Vec<(usize, EdgeEnd)>,
}

impl MorseBuilder {
    pub(crate) fn new() -> MorseBuilder {
        MorseBuilder::default()
    }

    /// Starts with `n` open strands whose far ends are outside ports
    /// `0..n`, bottom to top.
    pub(crate) fn with_inputs(n: usize) -> MorseBuilder {
        let mut b = MorseBuilder::new();
        for i in 0..n {
            let t = b.token(Far::Outside(i));
            b.positions.push(t);
        }
        b
    }

    pub(crate) fn width(&self) -> usize {
        self.positions.len()
    }

    pub(crate) fn crossing_count(&self) -> usize {
        self.link.len()
    }

    fn token(&mut self, far: Far) -> usize {
        self.far.push(far);
        self.far.len() - 1
    }

    fn join_slots(&mut self, a: EdgeEnd, b: EdgeEnd) {
        self.link[a.crossing][a.slot as usize] = Some(b);
        self.link[b.crossing][b.slot as usize] = Some(a);
    }

    /// Connects whatever lies at the far end of token `t` to slot `x`.
    fn attach(&mut self, t: usize, x: EdgeEnd) {
        match self.far[t] {
            Far::Slot(y) => self.join_slots(x, y),
            Far::Token(u) => self.far[u] = Far::Slot(x),
            Far::Outside(o) => self.outside_slots.push((o, x)),
        }
    }

    /// Opens a new arc at positions `i, i+1`.
    pub(crate) fn cup(&mut self, i: usize) {
        let u = self.far.len();
        let v = u + 1;
        self.far.push(Far::Token(v));
        self.far.push(Far::Token(u));
        self.positions.insert(i, v);
        self.positions.insert(i, u);
    }

    /// Closes positions `i, i+1` with an arc.
    pub(crate) fn cap(&mut self, i: usize) -> Result<(), DiagramError> {
        let a = self.positions.remove(i);
        let b = self.positions.remove(i);
        match (self.far[a], self.far[b]) {
            (Far::Slot(x), Far::Slot(y)) => self.join_slots(x, y),
            (Far::Slot(x), Far::Token(v)) | (Far::Token(v), Far::Slot(x)) => {
                self.far[v] = Far::Slot(x)
            }
            (Far::Token(u), Far::Token(v)) => {
                if u == b {
                    return Err(DiagramError::Precondition(
                        "closed a crossingless loop".into(),
                    ));
                }
                self.far[u] = Far::Token(v);
                self.far[v] = Far::Token(u);
            }
            (Far::Outside(o), Far::Slot(x)) | (Far::Slot(x), Far::Outside(o)) => {
                self.outside_slots.push((o, x))
            }
            (Far::Outside(o), Far::Token(v)) | (Far::Token(v), Far::Outside(o)) => {
                self.far[v] = Far::Outside(o)
            }
            (Far::Outside(_), Far::Outside(_)) => {
                return Err(DiagramError::Precondition(
                    "capped two outside strands together".into(),
                ))
            }
        }
        Ok(())
    }

    /// Crosses the strands at positions `i` and `i+1`. Returns the crossing
    /// index; the rising strand enters at the lower-left slot.
    pub(crate) fn cross(&mut self, i: usize, over: Over) -> usize {
        let c = self.link.len();
        self.link.push([None; 4]);
        self.over_parity.push(match over {
            Over::Rising => 0,
            Over::Falling => 1,
        });
        let lower = self.positions[i];
        let upper = self.positions[i + 1];
        self.attach(
            lower,
            EdgeEnd {
                crossing: c,
                slot: SW,
            },
        );
        self.attach(
            upper,
            EdgeEnd {
                crossing: c,
                slot: NW,
            },
        );
        let new_lower = self.token(Far::Slot(EdgeEnd {
            crossing: c,
            slot: SE,
        }));
        let new_upper = self.token(Far::Slot(EdgeEnd {
            crossing: c,
            slot: NE,
        }));
        self.positions[i] = new_lower;
        self.positions[i + 1] = new_upper;
        c
    }

    /// Positive (`n > 0`) or negative full twists on positions
    /// `lo..lo+width`, as `(σ_1 ⋯ σ_{w-1})^w` per twist.
    pub(crate) fn full_twists(&mut self, lo: usize, width: usize, n: i64, right_handed: bool) {
        let over = Over::right_handed((n > 0) == right_handed);
        for _ in 0..n.unsigned_abs() * width as u64 {
            for j in 0..width.saturating_sub(1) {
                self.cross(lo + j, over);
            }
        }
    }

    /// A crossing circle around positions `lo..lo+width`: it passes over the
    /// strands going up and under them coming back. Returns a crossing on
    /// the circle and the slot the circle occupies there.
    pub(crate) fn crossing_circle(&mut self, lo: usize, width: usize) -> EdgeEnd {
        self.cup(lo);
        let mut marker = None;
        for j in 0..width {
            let c = self.cross(lo + 1 + j, Over::Rising);
            marker.get_or_insert(EdgeEnd {
                crossing: c,
                slot: SW,
            });
        }
        for j in (0..width).rev() {
            self.cross(lo + 1 + j, Over::Rising);
        }
        // the circle now sits at lo+1 again, next to its other end at lo
        self.cap(lo).expect("circle crosses every strand");
        marker.expect("circle around at least one strand")
    }

    /// Remaining open strands, bottom to top, and where each leads.
    pub(crate) fn loose_ends(&self) -> Vec<Loose> {
        self.positions
            .iter()
            .map(|&t| match self.far[t] {
                Far::Slot(x) => Loose::Slot(x),
                Far::Outside(o) => Loose::Outside(o),
                Far::Token(_) => panic!("open strand with no crossing"),
            })
            .collect()
    }

    pub(crate) fn outside_slots(&self) -> &[(usize, EdgeEnd)] {
        &self.outside_slots
    }

    /// Raw slot links, for splicing into another graph. Unfilled slots are
    /// the ones leading outside.
    pub(crate) fn raw(&self) -> (&[u8], &[[Option<EdgeEnd>; 4]]) {
        (&self.over_parity, &self.link)
    }

    pub(crate) fn finish(self) -> Result<PortGraph, DiagramError> {
        if !self.positions.is_empty() {
            return Err(DiagramError::Precondition(format!(
                "{} strands left open",
                self.positions.len()
            )));
        }
        let link = self
            .link
            .iter()
            .map(|slots| slots.map(|s| s.expect("every slot joined once closed")))
            .collect();
        Ok(PortGraph {
            over_parity: self.over_parity,
            link,
        })
    }
}
