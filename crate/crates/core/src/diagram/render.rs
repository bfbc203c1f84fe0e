//! SVG drawing from a barycentric (Tutte) layout of the diagram's
//! subdivision: crossings, edge midpoints and face centres, with one face
//! pinned to a circle as the outside.

use std::fmt::Write as _;

use super::{faces, EdgeEnd, PlanarDiagram};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    /// 0 picks the largest face as the outer face; `n > 0` picks face
    /// `n - 1` (mod the face count) instead.
    pub seed_layout: usize,
    /// Width and height of the canvas.
    pub size: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            seed_layout: 0,
            size: 480.0,
        }
    }
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

/// Fraction of the midpoint-to-crossing segment drawn before a crossing.
const REACH: f64 = 0.78;

struct Layout {
    crossing: Vec<(f64, f64)>,
    midpoint: Vec<(f64, f64)>,
}

fn layout(d: &PlanarDiagram, seed: usize) -> Layout {
    let v = d.crossing_count();
    let e = d.edge_count();
    let fs = faces(d);
    let outer = if seed == 0 {
        // largest face, first on ties
        (0..fs.len()).fold(0, |best, i| {
            if fs[i].len() > fs[best].len() {
                i
            } else {
                best
            }
        })
    } else {
        (seed - 1) % fs.len()
    };
    // vertex ids: crossings, then midpoints, then face centres
    let n = v + e + fs.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut add = |a: usize, b: usize| {
        adj[a].push(b);
        adj[b].push(a);
    };
    for edge in 0..e {
        for end in d.edge_ends(edge) {
            add(v + edge, end.crossing);
        }
    }
    for (fi, face) in fs.iter().enumerate() {
        if fi == outer {
            continue;
        }
        for (dart, corner) in face.darts.iter().zip(face.corners(d)) {
            add(v + e + fi, v + dart.edge);
            add(v + e + fi, corner);
        }
    }

    let mut pos = vec![(0.0, 0.0); n];
    let mut fixed = vec![false; n];
    fixed[v + e + outer] = true;
    let mut boundary = Vec::new();
    for (dart, corner) in fs[outer].darts.iter().zip(fs[outer].corners(d)) {
        for id in [v + dart.edge, corner] {
            if !fixed[id] {
                fixed[id] = true;
                boundary.push(id);
            }
        }
    }
    let m = boundary.len() as f64;
    for (i, &id) in boundary.iter().enumerate() {
        let t = std::f64::consts::TAU * i as f64 / m;
        pos[id] = (t.cos(), t.sin());
    }

    // Gauss-Seidel on the barycentric equations
    for _ in 0..20_000 {
        let mut moved: f64 = 0.0;
        for id in 0..n {
            if fixed[id] || adj[id].is_empty() {
                continue;
            }
            let k = adj[id].len() as f64;
            let (sx, sy) = adj[id]
                .iter()
                .fold((0.0, 0.0), |(x, y), &j| (x + pos[j].0, y + pos[j].1));
            let new = (sx / k, sy / k);
            moved = moved.max((new.0 - pos[id].0).abs() + (new.1 - pos[id].1).abs());
            pos[id] = new;
        }
        if moved < 1e-10 {
            break;
        }
    }
    Layout {
        crossing: pos[..v].to_vec(),
        midpoint: pos[v..v + e].to_vec(),
    }
}

fn lerp(a: (f64, f64), b: (f64, f64), t: f64) -> (f64, f64) {
    (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t)
}

/// A standalone SVG 1.1 document: one `<g class="component">` per link
/// component and one `<g class="crossing">` glyph per crossing, carrying the
/// over-strand; under-strands stop short of the crossing.
pub fn render_svg(d: &PlanarDiagram, options: &RenderOptions) -> String {
    let size = options.size;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    if d.crossing_count() == 0 {
        out.push_str("</svg>\n");
        return out;
    }
    let lay = layout(d, options.seed_layout);
    let half = size / 2.0;
    let scale = half * 0.9;
    let xy = |p: (f64, f64)| (half + scale * p.0, half - scale * p.1);
    let near =
        |edge: usize, end: EdgeEnd| xy(lerp(lay.midpoint[edge], lay.crossing[end.crossing], REACH));

    for comp in 0..d.component_count() {
        let color = PALETTE[comp % PALETTE.len()];
        let _ = writeln!(
            out,
            r#"<g class="component" id="component-{comp}" fill="none" stroke="{color}" stroke-width="3" stroke-linecap="round">"#
        );
        for edge in d.component_edges(comp) {
            let [tail, head] = d.edge_ends(edge);
            let a = near(edge, tail);
            let m = xy(lay.midpoint[edge]);
            let b = near(edge, head);
            let _ = writeln!(
                out,
                r#"<polyline points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}"/>"#,
                a.0, a.1, m.0, m.1, b.0, b.1
            );
        }
        out.push_str("</g>\n");
    }
    for (c, x) in d.crossings().iter().enumerate() {
        let comp = d.component_of_edge(x[1]);
        let color = PALETTE[comp % PALETTE.len()];
        let here = EdgeEnd {
            crossing: c,
            slot: 1,
        };
        let there = EdgeEnd {
            crossing: c,
            slot: 3,
        };
        let a = near(x[1], here);
        let o = xy(lay.crossing[c]);
        let b = near(x[3], there);
        let _ = writeln!(
            out,
            r#"<g class="crossing" id="crossing-{c}" fill="none" stroke="{color}" stroke-width="3" stroke-linecap="round"><polyline points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}"/></g>"#,
            a.0, a.1, o.0, o.1, b.0, b.1
        );
    }
    out.push_str("</svg>\n");
    out
}
