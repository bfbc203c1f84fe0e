//! Planar knot and link diagrams.
//!
//! A [`PlanarDiagram`] is a 4-valent plane graph. Each crossing lists its
//! four incident edges counterclockwise, starting from the incoming
//! under-strand, which is exactly the PD-code convention. The cyclic order
//! is the rotation system of the embedding; faces, twist regions and
//! rendering all read it from there.
//!
//! Edges are numbered consecutively along each component in the direction
//! of travel, so `emit_pd` is a direct dump.

mod faces;
mod fill;
mod generators;
mod morse;
mod pd;
mod render;
mod twist;

use std::collections::{BTreeMap, VecDeque};
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::slope::{ContinuedFraction, Slope};

pub use faces::{faces, Dart, Face};
pub use fill::fill_crossing_circle;
pub use generators::{
    gen_augmented, gen_clasped_two_bridge, gen_double_coil, gen_two_bridge, CoilSpec,
};
pub use pd::{emit_pd, parse_pd, parse_pd_terms};
pub use render::{render_svg, RenderOptions};
pub use twist::{generalized_twist_regions, twist_regions, GeneralizedCount, TwistRegionPartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("SyntaxError: {0}")]
    Syntax(String),
    #[error("NonQuadrivalent: crossing {crossing} has {arity} edge-ends")]
    NonQuadrivalent { crossing: usize, arity: usize },
    #[error("EdgePairingError: {0}")]
    EdgePairing(String),
    #[error("NonPlanarRotation: V - E + F = {euler}, expected {expected}")]
    NonPlanarRotation { euler: i64, expected: i64 },
    #[error("InconsistentOrientation: component through edge {0} cannot be oriented")]
    InconsistentOrientation(usize),
    #[error("NotAKnot: gcd({p}, {q}) = {gcd}")]
    NotAKnot { p: i64, q: i64, gcd: i64 },
    #[error("NotACrossingCircle: {0}")]
    NotACrossingCircle(String),
    #[error("PreconditionViolation: {0}")]
    Precondition(String),
}

impl DiagramError {
    pub fn name(&self) -> &'static str {
        match self {
            DiagramError::Syntax(_) => "SyntaxError",
            DiagramError::NonQuadrivalent { .. } => "NonQuadrivalent",
            DiagramError::EdgePairing(_) => "EdgePairingError",
            DiagramError::NonPlanarRotation { .. } => "NonPlanarRotation",
            DiagramError::InconsistentOrientation(_) => "InconsistentOrientation",
            DiagramError::NotAKnot { .. } => "NotAKnot",
            DiagramError::NotACrossingCircle(_) => "NotACrossingCircle",
            DiagramError::Precondition(_) => "PreconditionViolation",
        }
    }
}

/// One end of an edge: a crossing and a slot `0..4` in its rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeEnd {
    pub crossing: usize,
    pub slot: u8,
}

impl EdgeEnd {
    pub(crate) fn through(self) -> EdgeEnd {
        EdgeEnd {
            crossing: self.crossing,
            slot: (self.slot + 2) % 4,
        }
    }
}

/// Which generator produced a diagram, and the crossing circles it carries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub family: Family,
    /// Unfilled crossing circles (or the clasp), by component id.
    pub circles: Vec<CrossingCircle>,
    /// Circles already replaced by full twists.
    pub fillings: Vec<Filling>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    TwoBridge { cfrac: ContinuedFraction },
    ClaspedTwoBridge { slope: Slope },
    DoubleCoil { spec: CoilSpec },
    Augmented { slope: Slope },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingCircle {
    /// `C1`, `C2` or `clasp`.
    pub name: String,
    pub component: usize,
    /// Number of strands through the spanning disk.
    pub strands: usize,
    /// +1 when positive twist counts are right-handed full twists for this
    /// circle, -1 when they are left-handed.
    pub handedness: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filling {
    pub name: String,
    pub twists: i64,
    pub strands: usize,
}

/// Unoriented combinatorial form: every slot is linked to a partner slot.
/// Strands run through opposite slots; `over_parity[c]` says which pair
/// (slots 0/2 or 1/3) carries the over-strand.
#[derive(Debug, Clone, Default)]
pub(crate) struct PortGraph {
    pub over_parity: Vec<u8>,
    pub link: Vec<[EdgeEnd; 4]>,
}

impl PortGraph {
    pub(crate) fn partner(&self, p: EdgeEnd) -> EdgeEnd {
        self.link[p.crossing][p.slot as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDiagram {
    crossings: Vec<[usize; 4]>,
    /// `[tail, head]` for each edge.
    edge_ends: Vec<[EdgeEnd; 2]>,
    component_starts: Vec<usize>,
    edge_component: Vec<usize>,
    provenance: Option<Provenance>,
}

/// Result of [`assemble`]: the diagram plus how each input slot moved.
pub(crate) struct Assembled {
    pub diagram: PlanarDiagram,
    /// `rotation[c]`: input slot `s` became slot `(s + 4 - rotation[c]) % 4`.
    pub rotation: Vec<u8>,
}

impl Assembled {
    pub(crate) fn component_at(&self, p: EdgeEnd) -> usize {
        let slot = (p.slot + 4 - self.rotation[p.crossing]) % 4;
        let e = self.diagram.crossings[p.crossing][slot as usize];
        self.diagram.edge_component[e]
    }
}

/// Orients every component, rotates each crossing so that slot 0 is the
/// incoming under-strand, renumbers edges along components and checks the
/// rotation system is spherical.
///
/// `forced_heads[c]`, when given, demands that input slot 0 of crossing `c`
/// is an incoming end (the PD convention); otherwise components are
/// oriented from their smallest slot.
pub(crate) fn assemble(graph: &PortGraph, forced_heads: bool) -> Result<Assembled, DiagramError> {
    let n = graph.link.len();
    for c in 0..n {
        for s in 0..4u8 {
            let p = EdgeEnd {
                crossing: c,
                slot: s,
            };
            let q = graph.partner(p);
            if q.crossing >= n || q.slot > 3 || graph.partner(q) != p || q == p {
                return Err(DiagramError::EdgePairing(format!(
                    "slot {s} of crossing {c} is not paired"
                )));
            }
        }
    }

    let idx = |p: EdgeEnd| p.crossing * 4 + p.slot as usize;
    let mut seen = vec![false; 4 * n];
    // arrival ports of each component, in travel order
    let mut cycles: Vec<Vec<EdgeEnd>> = Vec::new();
    for c in 0..n {
        for s in 0..4u8 {
            let start = EdgeEnd {
                crossing: c,
                slot: s,
            };
            if seen[idx(start)] {
                continue;
            }
            let mut arrivals = Vec::new();
            let mut p = start;
            loop {
                seen[idx(p)] = true;
                seen[idx(p.through())] = true;
                arrivals.push(p);
                p = graph.partner(p.through());
                if p == start {
                    break;
                }
                if seen[idx(p)] {
                    return Err(DiagramError::EdgePairing(format!(
                        "strand through crossing {} does not close up",
                        p.crossing
                    )));
                }
            }
            if forced_heads {
                let mut forward = 0;
                let mut backward = 0;
                for a in &arrivals {
                    if graph.over_parity[a.crossing] != 0 {
                        // slots 0/2 are the under-strand
                        match a.slot {
                            0 => forward += 1,
                            2 => backward += 1,
                            _ => {}
                        }
                    }
                }
                if forward > 0 && backward > 0 {
                    return Err(DiagramError::InconsistentOrientation(cycles.len()));
                }
                if backward > 0 {
                    arrivals = reverse_cycle(&arrivals);
                }
            }
            cycles.push(arrivals);
        }
    }

    // edge j of a cycle arrives at arrivals[j] and leaves from the
    // through-port of arrivals[j - 1]
    let edge_count: usize = cycles.iter().map(Vec::len).sum();
    let mut edge_of_head = vec![usize::MAX; 4 * n];
    let mut edge_of_tail = vec![usize::MAX; 4 * n];
    let mut component_starts = Vec::with_capacity(cycles.len());
    let mut edge_component = Vec::with_capacity(edge_count);
    let mut next = 0;
    for (ci, cyc) in cycles.iter().enumerate() {
        component_starts.push(next);
        let m = cyc.len();
        for j in 0..m {
            let head = cyc[j];
            let tail = cyc[(j + m - 1) % m].through();
            edge_of_head[idx(head)] = next;
            edge_of_tail[idx(tail)] = next;
            edge_component.push(ci);
            next += 1;
        }
    }

    let mut rotation = vec![0u8; n];
    let mut crossings = vec![[0usize; 4]; n];
    let mut edge_ends = vec![
        [EdgeEnd {
            crossing: 0,
            slot: 0
        }; 2];
        edge_count
    ];
    for c in 0..n {
        let under = 1 - graph.over_parity[c];
        let r = if edge_of_head[idx(EdgeEnd {
            crossing: c,
            slot: under,
        })] != usize::MAX
        {
            under
        } else {
            under + 2
        };
        rotation[c] = r;
        for i in 0..4u8 {
            let old = EdgeEnd {
                crossing: c,
                slot: (r + i) % 4,
            };
            let new = EdgeEnd {
                crossing: c,
                slot: i,
            };
            let h = edge_of_head[idx(old)];
            if h != usize::MAX {
                crossings[c][i as usize] = h;
                edge_ends[h][1] = new;
            } else {
                let t = edge_of_tail[idx(old)];
                crossings[c][i as usize] = t;
                edge_ends[t][0] = new;
            }
        }
    }

    let diagram = PlanarDiagram {
        crossings,
        edge_ends,
        component_starts,
        edge_component,
        provenance: None,
    };
    diagram.check_planar()?;
    Ok(Assembled { diagram, rotation })
}

/// Travelling backwards we arrive at the through-ports of the forward
/// arrivals, in reverse order.
fn reverse_cycle(arrivals: &[EdgeEnd]) -> Vec<EdgeEnd> {
    arrivals.iter().rev().map(|p| p.through()).collect()
}

impl PlanarDiagram {
    pub fn empty() -> PlanarDiagram {
        PlanarDiagram {
            crossings: Vec::new(),
            edge_ends: Vec::new(),
            component_starts: Vec::new(),
            edge_component: Vec::new(),
            provenance: None,
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ends.len()
    }

    pub fn component_count(&self) -> usize {
        self.component_starts.len()
    }

    /// Edge ids around each crossing, counterclockwise from the incoming
    /// under-strand.
    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    /// `[tail, head]` of an edge.
    pub fn edge_ends(&self, edge: usize) -> [EdgeEnd; 2] {
        self.edge_ends[edge]
    }

    pub fn component_of_edge(&self, edge: usize) -> usize {
        self.edge_component[edge]
    }

    /// Edge ids of a component, in travel order.
    pub fn component_edges(&self, component: usize) -> Range<usize> {
        let start = self.component_starts[component];
        let end = self
            .component_starts
            .get(component + 1)
            .copied()
            .unwrap_or(self.edge_ends.len());
        start..end
    }

    /// Slot (1 or 3) at which the over-strand enters.
    pub fn over_incoming_slot(&self, crossing: usize) -> u8 {
        let e = self.crossings[crossing][1];
        if self.edge_ends[e][1] == (EdgeEnd { crossing, slot: 1 }) {
            1
        } else {
            3
        }
    }

    /// Components of the (under, over) strands at a crossing.
    pub fn crossing_components(&self, crossing: usize) -> (usize, usize) {
        let x = self.crossings[crossing];
        (self.edge_component[x[0]], self.edge_component[x[1]])
    }

    /// +1 for a right-handed (positive) crossing, -1 otherwise.
    pub fn crossing_sign(&self, crossing: usize) -> i8 {
        // with the under-strand heading north, slot 1 is east; an
        // over-strand entering there heads west, a left-handed crossing
        if self.over_incoming_slot(crossing) == 3 {
            1
        } else {
            -1
        }
    }

    pub fn writhe(&self) -> i64 {
        (0..self.crossing_count())
            .map(|c| self.crossing_sign(c) as i64)
            .sum()
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn with_provenance(mut self, provenance: Option<Provenance>) -> PlanarDiagram {
        self.provenance = provenance;
        self
    }

    /// Over (`true`) / under passes met along a component.
    pub fn passes(&self, component: usize) -> Vec<bool> {
        self.component_edges(component)
            .map(|e| self.edge_ends[e][1].slot % 2 == 1)
            .collect()
    }

    /// Along every component the passes alternate over, under, over, ...
    pub fn is_alternating(&self) -> bool {
        (0..self.component_count()).all(|c| {
            let passes = self.passes(c);
            let m = passes.len();
            (0..m).all(|i| passes[i] != passes[(i + 1) % m])
        })
    }

    pub(crate) fn to_port_graph(&self) -> PortGraph {
        let n = self.crossings.len();
        let mut link = vec![
            [EdgeEnd {
                crossing: 0,
                slot: 0
            }; 4];
            n
        ];
        for ends in &self.edge_ends {
            let [t, h] = *ends;
            link[t.crossing][t.slot as usize] = h;
            link[h.crossing][h.slot as usize] = t;
        }
        PortGraph {
            over_parity: vec![1; n],
            link,
        }
    }

    /// Number of connected pieces of the underlying graph.
    pub fn graph_pieces(&self) -> usize {
        let n = self.crossings.len();
        let mut piece = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if piece[start] != usize::MAX {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            piece[start] = count;
            while let Some(c) = queue.pop_front() {
                for &e in &self.crossings[c] {
                    for end in self.edge_ends[e] {
                        if piece[end.crossing] == usize::MAX {
                            piece[end.crossing] = count;
                            queue.push_back(end.crossing);
                        }
                    }
                }
            }
            count += 1;
        }
        count
    }

    /// `V - E + F` must be 2 on every connected piece.
    fn check_planar(&self) -> Result<(), DiagramError> {
        let v = self.crossing_count() as i64;
        let e = self.edge_count() as i64;
        if v == 0 {
            return Ok(());
        }
        let f = faces(self).len() as i64;
        let expected = 2 * self.graph_pieces() as i64;
        if v - e + f != expected {
            return Err(DiagramError::NonPlanarRotation {
                euler: v - e + f,
                expected,
            });
        }
        Ok(())
    }

    /// `V - E + F` with the empty diagram counted as the sphere (one face).
    pub fn euler_characteristic(&self) -> i64 {
        let v = self.crossing_count() as i64;
        let e = self.edge_count() as i64;
        let f = if v == 0 { 1 } else { faces(self).len() as i64 };
        v - e + f
    }

    /// A relabeling-invariant code of the unoriented diagram: two diagrams
    /// have equal codes iff they differ by renumbering crossings and edges,
    /// rotating crossings and reorienting components.
    pub fn canonical_code(&self) -> Vec<u32> {
        let n = self.crossing_count();
        let graph = self.to_port_graph();
        let mut piece_codes: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        let mut piece_of = vec![usize::MAX; n];
        for c in 0..n {
            if piece_of[c] != usize::MAX {
                continue;
            }
            let (_, members) = bfs_code(
                self,
                &graph,
                EdgeEnd {
                    crossing: c,
                    slot: 0,
                },
            );
            let mut best: Option<Vec<u32>> = None;
            for &m in &members {
                piece_of[m] = c;
                for s in 0..4u8 {
                    let (code, _) = bfs_code(
                        self,
                        &graph,
                        EdgeEnd {
                            crossing: m,
                            slot: s,
                        },
                    );
                    if best.as_ref().is_none_or(|b| code < *b) {
                        best = Some(code);
                    }
                }
            }
            piece_codes.insert(c, best.expect("piece has a crossing"));
        }
        let mut codes: Vec<Vec<u32>> = piece_codes.into_values().collect();
        codes.sort();
        let mut out = vec![n as u32];
        for code in codes {
            out.push(u32::MAX);
            out.extend(code);
        }
        out
    }

    pub fn is_isomorphic(&self, other: &PlanarDiagram) -> bool {
        self.crossing_count() == other.crossing_count()
            && self.component_count() == other.component_count()
            && self.canonical_code() == other.canonical_code()
    }
}

/// Breadth-first relabeling from a starting slot; each crossing is read
/// counterclockwise from the slot it was reached through.
fn bfs_code(d: &PlanarDiagram, graph: &PortGraph, start: EdgeEnd) -> (Vec<u32>, Vec<usize>) {
    let n = d.crossing_count();
    let mut number = vec![u32::MAX; n];
    let mut reference = vec![0u8; n];
    let mut order = Vec::new();
    number[start.crossing] = 0;
    reference[start.crossing] = start.slot;
    order.push(start.crossing);
    let mut code = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        head += 1;
        let r = reference[c];
        // slots 1 and 3 carry the over-strand
        code.push((r % 2) as u32);
        for i in 0..4u8 {
            let p = EdgeEnd {
                crossing: c,
                slot: (r + i) % 4,
            };
            let q = graph.partner(p);
            if number[q.crossing] == u32::MAX {
                number[q.crossing] = order.len() as u32;
                reference[q.crossing] = q.slot;
                order.push(q.crossing);
            }
            code.push(number[q.crossing]);
            code.push(((q.slot + 4 - reference[q.crossing]) % 4) as u32);
        }
    }
    (code, order)
}
