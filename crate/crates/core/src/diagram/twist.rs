use serde::Serialize;

use super::{faces, Family, PlanarDiagram};

/// Crossings grouped into maximal bigon chains; lone crossings are their own
/// region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistRegionPartition {
    /// Each region sorted, regions ordered by smallest crossing.
    pub regions: Vec<Vec<usize>>,
}

impl TwistRegionPartition {
    pub fn count(&self) -> usize {
        self.regions.len()
    }

    /// Region sizes in region order.
    pub fn sizes(&self) -> Vec<usize> {
        self.regions.iter().map(Vec::len).collect()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub fn twist_regions(d: &PlanarDiagram) -> TwistRegionPartition {
    let n = d.crossing_count();
    let mut uf = UnionFind((0..n).collect());
    for face in faces(d) {
        if face.is_bigon(d) {
            let c = face.corners(d);
            uf.union(c[0], c[1]);
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for c in 0..n {
        let r = uf.find(c);
        groups[r].push(c);
    }
    TwistRegionPartition {
        regions: groups.into_iter().filter(|g| !g.is_empty()).collect(),
    }
}

/// Generalized twist region count, and whether it is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GeneralizedCount {
    pub count: usize,
    /// False when the value is only the greedy upper bound.
    pub exact: bool,
}

/// Exact for generator diagrams, an upper bound otherwise.
///
/// Twist regions on two strands of an alternating 2-bridge diagram cannot
/// merge: neighbouring regions twist different strand pairs with opposite
/// handedness, so each stays its own generalized region. A double coil, or
/// an augmented link with both circles filled, has its crossings in exactly
/// two twisted ribbons by construction. Anything else gets the bigon-chain
/// partition, which is always a valid partition into generalized regions.
pub fn generalized_twist_regions(d: &PlanarDiagram) -> GeneralizedCount {
    let fallback = GeneralizedCount {
        count: twist_regions(d).count(),
        exact: false,
    };
    let Some(prov) = d.provenance() else {
        return fallback;
    };
    match &prov.family {
        Family::TwoBridge { .. } => GeneralizedCount {
            exact: true,
            ..fallback
        },
        Family::DoubleCoil { .. } => GeneralizedCount {
            count: 2,
            exact: true,
        },
        Family::Augmented { .. } if prov.circles.is_empty() => {
            let count = prov.fillings.iter().filter(|f| f.twists != 0).count();
            GeneralizedCount { count, exact: true }
        }
        _ => fallback,
    }
}
