//! Replacing a crossing circle and the strands through it by full twists.

use std::collections::HashMap;

use super::morse::{Loose, MorseBuilder};
use super::{assemble, DiagramError, EdgeEnd, Filling, PlanarDiagram, PortGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Old(EdgeEnd),
    Braid(EdgeEnd),
    /// Input or output terminal at a braid position; side 0 faces the old
    /// diagram, side 1 the braid.
    Term {
        output: bool,
        pos: usize,
        side: u8,
    },
}

struct CircleShape {
    /// Crossings where the circle passes over strand j, in circle order.
    over: Vec<usize>,
    /// Crossing where the circle passes under strand j.
    under: Vec<usize>,
    /// Slot of strand j's outer edge at `over[j]` and at `under[j]`.
    a_slot: Vec<u8>,
    b_slot: Vec<u8>,
    /// Braid position of strand j.
    pos: Vec<usize>,
}

fn not_circle(msg: impl Into<String>) -> DiagramError {
    DiagramError::NotACrossingCircle(msg.into())
}

fn shape(d: &PlanarDiagram, circle: usize, strands: usize) -> Result<CircleShape, DiagramError> {
    let edges: Vec<usize> = d.component_edges(circle).collect();
    let heads: Vec<EdgeEnd> = edges.iter().map(|&e| d.edge_ends(e)[1]).collect();
    let m = heads.len();
    if m != 2 * strands {
        return Err(not_circle(format!(
            "component {circle} has {m} crossings, expected {}",
            2 * strands
        )));
    }
    for h in &heads {
        let (u, o) = d.crossing_components(h.crossing);
        if u == circle && o == circle {
            return Err(not_circle("circle crosses itself"));
        }
    }
    let over: Vec<bool> = heads.iter().map(|h| h.slot % 2 == 1).collect();
    let start = (0..m)
        .find(|&i| over[i] && !over[(i + m - 1) % m])
        .ok_or_else(|| not_circle("circle never changes level"))?;
    let at = |i: usize| heads[(start + i) % m];
    if !(0..strands).all(|j| over[(start + j) % m] && !over[(start + strands + j) % m]) {
        return Err(not_circle("passes are not all over, then all under"));
    }

    let mut s = CircleShape {
        over: Vec::new(),
        under: Vec::new(),
        a_slot: Vec::new(),
        b_slot: Vec::new(),
        pos: Vec::new(),
    };
    let mut frame = None;
    for j in 0..strands {
        let o = at(j);
        let u = at(2 * strands - 1 - j);
        let ox = d.crossings()[o.crossing];
        let ux = d.crossings()[u.crossing];
        // at o the strand is the under pair 0/2; at u it is the over pair 1/3
        let shared: Vec<(u8, u8)> = [0u8, 2]
            .iter()
            .flat_map(|&so| [1u8, 3].map(move |su| (so, su)))
            .filter(|&(so, su)| ox[so as usize] == ux[su as usize])
            .collect();
        let &[(m_at_o, m_at_u)] = shared.as_slice() else {
            return Err(not_circle(format!(
                "strand {j} does not pass straight through"
            )));
        };
        // flow runs from the over side to the under side, towards m
        let positive = (o.slot + 2) % 4 == (m_at_o + 1) % 4;
        if *frame.get_or_insert(positive) != positive {
            return Err(not_circle("strands pass the circle in opposite senses"));
        }
        s.over.push(o.crossing);
        s.under.push(u.crossing);
        s.a_slot.push((m_at_o + 2) % 4);
        s.b_slot.push((m_at_u + 2) % 4);
    }
    let positive = frame.unwrap_or(true);
    s.pos = (0..strands)
        .map(|j| if positive { j } else { strands - 1 - j })
        .collect();
    Ok(s)
}

/// Dehn-fills a provenance-marked crossing circle with `n` full twists on
/// the strands it encircles; `n = 0` just deletes the circle.
pub fn fill_crossing_circle(
    d: &PlanarDiagram,
    circle: usize,
    n: i64,
) -> Result<PlanarDiagram, DiagramError> {
    let prov = d
        .provenance()
        .ok_or_else(|| not_circle("diagram has no generator provenance"))?;
    let info = prov
        .circles
        .iter()
        .find(|c| c.component == circle)
        .ok_or_else(|| not_circle(format!("component {circle} is not a crossing circle")))?
        .clone();
    let w = info.strands;
    let s = shape(d, circle, w)?;

    let old = d.to_port_graph();
    let removed: Vec<bool> = {
        let mut r = vec![false; d.crossing_count()];
        for &c in s.over.iter().chain(&s.under) {
            r[c] = true;
        }
        r
    };
    let mut kept_index = vec![usize::MAX; d.crossing_count()];
    let mut kept = 0;
    for c in 0..d.crossing_count() {
        if !removed[c] {
            kept_index[c] = kept;
            kept += 1;
        }
    }

    let mut braid = MorseBuilder::with_inputs(w);
    braid.full_twists(0, w, n, info.handedness > 0);

    // wiring between every kind of node
    let mut wire: HashMap<Node, Node> = HashMap::new();
    let mut join = |a: Node, b: Node| {
        wire.insert(a, b);
        wire.insert(b, a);
    };
    let mut terminal_of: HashMap<EdgeEnd, Node> = HashMap::new();
    for j in 0..w {
        let a = EdgeEnd {
            crossing: s.over[j],
            slot: s.a_slot[j],
        };
        let b = EdgeEnd {
            crossing: s.under[j],
            slot: s.b_slot[j],
        };
        terminal_of.insert(
            a,
            Node::Term {
                output: false,
                pos: s.pos[j],
                side: 0,
            },
        );
        terminal_of.insert(
            b,
            Node::Term {
                output: true,
                pos: s.pos[j],
                side: 0,
            },
        );
    }
    for c in (0..d.crossing_count()).filter(|&c| !removed[c]) {
        for slot in 0..4u8 {
            let p = EdgeEnd { crossing: c, slot };
            let q = old.partner(p);
            let target = if removed[q.crossing] {
                *terminal_of
                    .get(&q)
                    .ok_or_else(|| not_circle("circle meets another removed strand"))?
            } else {
                Node::Old(q)
            };
            join(Node::Old(p), target);
        }
    }
    for (&end, &t) in &terminal_of {
        let q = old.partner(end);
        if removed[q.crossing] {
            let other = *terminal_of
                .get(&q)
                .ok_or_else(|| not_circle("bad strand"))?;
            join(t, other);
        }
    }
    let (parity, links) = braid.raw();
    for (c, slots) in links.iter().enumerate() {
        for (slot, partner) in slots.iter().enumerate() {
            if let Some(q) = partner {
                join(
                    Node::Braid(EdgeEnd {
                        crossing: c,
                        slot: slot as u8,
                    }),
                    Node::Braid(*q),
                );
            }
        }
    }
    for &(o, x) in braid.outside_slots() {
        join(
            Node::Term {
                output: false,
                pos: o,
                side: 1,
            },
            Node::Braid(x),
        );
    }
    for (pos, loose) in braid.loose_ends().into_iter().enumerate() {
        let out = Node::Term {
            output: true,
            pos,
            side: 1,
        };
        match loose {
            Loose::Slot(x) => join(out, Node::Braid(x)),
            Loose::Outside(o) => join(
                out,
                Node::Term {
                    output: false,
                    pos: o,
                    side: 1,
                },
            ),
        }
    }

    let braid_offset = kept;
    let real = |node: Node| match node {
        Node::Old(p) => Some(EdgeEnd {
            crossing: kept_index[p.crossing],
            slot: p.slot,
        }),
        Node::Braid(p) => Some(EdgeEnd {
            crossing: braid_offset + p.crossing,
            slot: p.slot,
        }),
        Node::Term { .. } => None,
    };
    let resolve = |from: Node| -> Result<EdgeEnd, DiagramError> {
        let mut cur = wire[&from];
        for _ in 0..=4 * w + 2 {
            if let Some(p) = real(cur) {
                return Ok(p);
            }
            let Node::Term { output, pos, side } = cur else {
                unreachable!()
            };
            cur = wire[&Node::Term {
                output,
                pos,
                side: 1 - side,
            }];
        }
        Err(DiagramError::Precondition(
            "filling leaves a crossingless loop".into(),
        ))
    };

    let total = kept + braid.crossing_count();
    let mut graph = PortGraph {
        over_parity: vec![1; kept],
        link: vec![
            [EdgeEnd {
                crossing: 0,
                slot: 0
            }; 4];
            total
        ],
    };
    graph.over_parity.extend_from_slice(parity);
    for c in (0..d.crossing_count()).filter(|&c| !removed[c]) {
        for slot in 0..4u8 {
            let p = EdgeEnd { crossing: c, slot };
            graph.link[kept_index[c]][slot as usize] = resolve(Node::Old(p))?;
        }
    }
    for c in 0..braid.crossing_count() {
        for slot in 0..4u8 {
            let p = EdgeEnd { crossing: c, slot };
            graph.link[braid_offset + c][slot as usize] = resolve(Node::Braid(p))?;
        }
    }

    // a crossingless component formed entirely of terminals would vanish
    let crossingless = (0..w).any(|pos| {
        let mut cur = Node::Term {
            output: false,
            pos,
            side: 0,
        };
        for _ in 0..=4 * w + 2 {
            match wire[&cur] {
                Node::Term { output, pos, side } => {
                    cur = Node::Term {
                        output,
                        pos,
                        side: 1 - side,
                    };
                }
                _ => return false,
            }
        }
        true
    });
    if crossingless {
        return Err(DiagramError::Precondition(
            "filling leaves a crossingless loop".into(),
        ));
    }

    let assembled = assemble(&graph, false)?;
    let mut prov = prov.clone();
    let mut circles = Vec::new();
    for mut c in prov.circles.drain(..) {
        if c.component == circle {
            continue;
        }
        let e = d.component_edges(c.component).start;
        let head = d.edge_ends(e)[1];
        if removed[head.crossing] {
            return Err(not_circle("circles share crossings"));
        }
        c.component = assembled.component_at(EdgeEnd {
            crossing: kept_index[head.crossing],
            slot: head.slot,
        });
        circles.push(c);
    }
    prov.circles = circles;
    prov.fillings.push(Filling {
        name: info.name,
        twists: n,
        strands: w,
    });
    Ok(assembled.diagram.with_provenance(Some(prov)))
}
