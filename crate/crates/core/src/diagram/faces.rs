use serde::Serialize;

use super::{EdgeEnd, PlanarDiagram};

/// An edge traversed in one direction; `forward` follows the orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Dart {
    pub edge: usize,
    pub forward: bool,
}

/// A face as the cyclic sequence of darts along its boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Crossings at the corners of the face, in boundary order.
    pub fn corners(&self, d: &PlanarDiagram) -> Vec<usize> {
        self.darts
            .iter()
            .map(|&dart| arrival(d, dart).crossing)
            .collect()
    }

    /// Two sides meeting at two distinct crossings.
    pub fn is_bigon(&self, d: &PlanarDiagram) -> bool {
        let c = self.corners(d);
        c.len() == 2 && c[0] != c[1]
    }
}

fn arrival(d: &PlanarDiagram, dart: Dart) -> EdgeEnd {
    let [tail, head] = d.edge_ends(dart.edge);
    if dart.forward {
        head
    } else {
        tail
    }
}

/// Faces as orbits of darts: arrive at a crossing, turn to the next slot
/// counterclockwise, leave along it.
pub fn faces(d: &PlanarDiagram) -> Vec<Face> {
    let e = d.edge_count();
    let dart_index = |dart: Dart| 2 * dart.edge + usize::from(!dart.forward);
    let mut seen = vec![false; 2 * e];
    let mut out = Vec::new();
    for start_edge in 0..e {
        for forward in [true, false] {
            let start = Dart {
                edge: start_edge,
                forward,
            };
            if seen[dart_index(start)] {
                continue;
            }
            let mut darts = Vec::new();
            let mut dart = start;
            while !seen[dart_index(dart)] {
                seen[dart_index(dart)] = true;
                darts.push(dart);
                let at = arrival(d, dart);
                let slot = (at.slot + 1) % 4;
                let next_edge = d.crossings()[at.crossing][slot as usize];
                let leave = EdgeEnd {
                    crossing: at.crossing,
                    slot,
                };
                dart = Dart {
                    edge: next_edge,
                    forward: d.edge_ends(next_edge)[0] == leave,
                };
            }
            out.push(Face { darts });
        }
    }
    out
}
