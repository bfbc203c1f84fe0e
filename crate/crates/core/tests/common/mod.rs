//! Shared helpers for integration tests.
#![allow(dead_code)]

use doublecoil::PlanarDiagram;

/// Knot determinant from the colouring matrix: one row per crossing,
/// `2·over - under_in - under_out`, over arcs (maximal over-strands).
/// Computed independently of the library's face and twist code.
pub fn determinant(d: &PlanarDiagram) -> u128 {
    let n = d.crossing_count();
    if n == 0 {
        return 1;
    }
    let e = d.edge_count();
    // arcs: edges glued through the over-strand slots 1/3
    let mut parent: Vec<usize> = (0..e).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for x in d.crossings() {
        let (a, b) = (find(&mut parent, x[1]), find(&mut parent, x[3]));
        parent[a] = b;
    }
    let mut arc_id = std::collections::HashMap::new();
    for edge in 0..e {
        let r = find(&mut parent, edge);
        let next = arc_id.len();
        arc_id.entry(r).or_insert(next);
    }
    let arcs = arc_id.len();
    let mut m = vec![vec![0i128; arcs]; n];
    for (c, x) in d.crossings().iter().enumerate() {
        let arc = |edge: usize, parent: &mut Vec<usize>| arc_id[&find(parent, edge)];
        let over = arc(x[1], &mut parent);
        let u0 = arc(x[0], &mut parent);
        let u2 = arc(x[2], &mut parent);
        m[c][over] += 2;
        m[c][u0] -= 1;
        m[c][u2] -= 1;
    }
    // delete the last row and column
    let k = n.min(arcs) - 1;
    let mut a: Vec<Vec<i128>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
    bareiss(&mut a).unsigned_abs()
}

fn bareiss(a: &mut [Vec<i128>]) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}
