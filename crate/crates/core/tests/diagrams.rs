mod common;

use doublecoil::diagram::{parse_pd_terms, Family};
use doublecoil::*;
use proptest::prelude::*;

const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
const FIGURE8: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";

fn cf(terms: &[u64]) -> ContinuedFraction {
    ContinuedFraction::new(terms.to_vec()).unwrap()
}

fn slope(p: i64, q: i64) -> Slope {
    Slope::new(p, q).unwrap()
}

#[test]
fn parse_trefoil() {
    let d = parse_pd(TREFOIL).unwrap();
    assert_eq!((d.crossing_count(), d.component_count()), (3, 1));
    assert_eq!(faces(&d).len(), 5);
    assert_eq!(twist_regions(&d).sizes(), vec![3]);
    assert!(d.is_alternating());
    assert_eq!(common::determinant(&d), 3);
}

#[test]
fn parse_figure8() {
    let d = parse_pd(FIGURE8).unwrap();
    assert_eq!(twist_regions(&d).sizes(), vec![2, 2]);
    assert_eq!(common::determinant(&d), 5);
    assert_eq!(d.writhe(), 0);
}

#[test]
fn empty_diagram() {
    let d = parse_pd("").unwrap();
    assert_eq!(d.crossing_count(), 0);
    // a single face and nothing else
    assert_eq!(d.euler_characteristic(), 1);
    assert_eq!(twist_regions(&d).count(), 0);
    assert_eq!(emit_pd(&d), "");
    assert_eq!(parse_pd("  \n ").unwrap().crossing_count(), 0);
}

#[test]
fn one_crossing_unknot_has_three_faces() {
    let d = parse_pd("X(1,1,2,2)").unwrap();
    assert_eq!(faces(&d).len(), 3);
    assert_eq!(d.euler_characteristic(), 2);
    assert_eq!(twist_regions(&d).count(), 1);
}

#[test]
fn parse_errors() {
    let name = |t: &str| parse_pd(t).unwrap_err().name();
    assert_eq!(name("X(1,2,3)"), "SyntaxError");
    assert_eq!(name("X(1,2,3,4,5)"), "SyntaxError");
    assert_eq!(name("Y(1,2,3,4)"), "SyntaxError");
    assert_eq!(name("X(1,2,3,0) X(1,2,3,0)"), "SyntaxError");
    assert_eq!(name("X(1,2,3,4)X(1,2,3,4)"), "SyntaxError");
    assert_eq!(name("X(1,1,1,2)"), "EdgePairingError");
    assert_eq!(name("X(1,2,3,4)"), "EdgePairingError");
    assert_eq!(name("X(3,1,4,2) X(4,2,1,3)"), "NonPlanarRotation");
    assert_eq!(name("X(1,2,3,4) X(1,4,3,2)"), "InconsistentOrientation");
    let err = parse_pd_terms(&[vec![1, 2, 1]]).unwrap_err();
    assert_eq!(err.name(), "NonQuadrivalent");
}

#[test]
fn consecutive_overpasses_are_not_alternating() {
    // the trefoil with its first crossing switched
    let d = parse_pd("X(4,2,5,1) X(3,6,4,1) X(5,2,6,3)").unwrap();
    assert!(!d.is_alternating());
}

#[test]
fn two_bridge_examples() {
    let d = gen_two_bridge(&cf(&[2, 2]));
    assert_eq!(d.crossing_count(), 4);
    assert_eq!(twist_regions(&d).count(), 2);
    assert!(d.is_alternating());
    assert_eq!(common::determinant(&d), 5);

    let hopf = gen_two_bridge(&cf(&[2]));
    assert_eq!((hopf.crossing_count(), hopf.component_count()), (2, 2));
    assert_eq!(twist_regions(&hopf).count(), 1);

    let d = gen_two_bridge(&cf(&[1, 1, 2]));
    assert_eq!(d.crossing_count(), 4);
    assert!(d.is_alternating());
    assert_eq!(common::determinant(&d), 5);
}

#[test]
fn two_bridge_twist_regions_by_leading_term() {
    // A leading 1 merges into the next twist region: [1, a2, ...] draws
    // the same diagram as [a2 + 1, ...].
    for q in 2..=40i64 {
        for p in 1..q {
            let s = slope(p, q);
            if s.numerator() != p {
                continue;
            }
            let c = cfrac_expand(s).unwrap();
            let d = gen_two_bridge(&c);
            let lead_one = usize::from(c.terms()[0] == 1);
            assert_eq!(twist_regions(&d).count(), c.len() - lead_one, "{s}");
            assert_eq!(d.crossing_count() as u64, c.term_sum());
            assert!(d.is_alternating());
            assert_eq!(common::determinant(&d), q as u128, "{s}");
        }
    }
}

#[test]
fn clasped_examples() {
    let d = gen_clasped_two_bridge(slope(2, 5)).unwrap();
    let prov = d.provenance().unwrap();
    assert!(matches!(prov.family, Family::ClaspedTwoBridge { .. }));
    assert_eq!(prov.circles.len(), 1);
    assert_eq!(prov.circles[0].name, "clasp");
    assert_eq!(d.crossing_count(), 4 + 4);
    // two twist regions of the 4-plat plus the clasp's own pair of bigons
    assert_eq!(twist_regions(&d).count(), 4);

    let d = gen_clasped_two_bridge(slope(1, 2)).unwrap();
    assert_eq!(d.component_count(), 2);
    assert_eq!(d.crossing_count(), 2 + 4);

    let err = gen_clasped_two_bridge(Slope::ZERO).unwrap_err();
    assert_eq!(err.name(), "PreconditionViolation");
}

#[test]
fn filling_the_clasp_adds_a_twist_region() {
    // [2, 2] with the clasp filled by one full twist is [2, 2, 2]
    let d = gen_clasped_two_bridge(slope(2, 5)).unwrap();
    let clasp = d.provenance().unwrap().circles[0].component;
    let filled = fill_crossing_circle(&d, clasp, 1).unwrap();
    assert_eq!(filled.crossing_count(), 6);
    // 5/12 has an even denominator, so this is a two-component link
    assert_eq!(filled.component_count(), 2);
    assert_eq!(common::determinant(&filled), 12);
    let back = fill_crossing_circle(&d, clasp, -1).unwrap();
    assert_eq!(common::determinant(&back), 8);
}

#[test]
fn double_coil_examples() {
    let d = gen_double_coil(CoilSpec::new(1, 2, 1, 1)).unwrap();
    assert_eq!(d.crossing_count(), 4);
    assert_eq!(d.component_count(), 1);
    assert_eq!(common::determinant(&d), 5);
    assert_eq!(twist_regions(&d).sizes(), vec![2, 2]);

    // opposite signs give the trefoil
    let d = gen_double_coil(CoilSpec::new(1, 2, 1, -1)).unwrap();
    assert_eq!(common::determinant(&d), 3);

    let d = gen_double_coil(CoilSpec::new(3, 5, 1, 1)).unwrap();
    assert_eq!((d.crossing_count(), d.component_count()), (40, 1));

    let err = gen_double_coil(CoilSpec::new(2, 4, 1, 1)).unwrap_err();
    assert_eq!(err.name(), "NotAKnot");
    let err = gen_double_coil(CoilSpec::new(3, 2, 1, 1)).unwrap_err();
    assert_eq!(err.name(), "PreconditionViolation");
}

#[test]
fn augmented_links() {
    for q in 2..=12i64 {
        for p in 1..q {
            let s = slope(p, q);
            if s.numerator() != p {
                continue;
            }
            let d = gen_augmented(s).unwrap();
            assert_eq!(d.component_count(), 3, "{s}");
            assert_eq!(d.crossing_count() as i64, 4 * q, "{s}");
            let names: Vec<&str> = d
                .provenance()
                .unwrap()
                .circles
                .iter()
                .map(|c| c.name.as_str())
                .collect();
            assert_eq!(names, ["C1", "C2"]);
        }
    }
}

#[test]
fn zero_filling_deletes_the_circle() {
    let d = gen_augmented(slope(2, 5)).unwrap();
    let c1 = d.provenance().unwrap().circles[0].component;
    let f = fill_crossing_circle(&d, c1, 0).unwrap();
    assert_eq!(f.crossing_count(), d.crossing_count() - 10);
    assert_eq!(f.component_count(), 2);
    assert_eq!(f.provenance().unwrap().circles.len(), 1);
}

#[test]
fn filling_a_non_circle_fails() {
    let d = gen_augmented(slope(2, 5)).unwrap();
    let circles: Vec<usize> = d
        .provenance()
        .unwrap()
        .circles
        .iter()
        .map(|c| c.component)
        .collect();
    let knot = (0..3).find(|c| !circles.contains(c)).unwrap();
    let err = fill_crossing_circle(&d, knot, 1).unwrap_err();
    assert_eq!(err.name(), "NotACrossingCircle");
    let plain = parse_pd(TREFOIL).unwrap();
    assert_eq!(
        fill_crossing_circle(&plain, 0, 1).unwrap_err().name(),
        "NotACrossingCircle"
    );
}

#[test]
fn generalized_counts() {
    let d = gen_double_coil(CoilSpec::new(3, 5, 2, 2)).unwrap();
    assert_eq!(generalized_twist_regions(&d).count, 2);
    assert!(generalized_twist_regions(&d).exact);
    assert_eq!(
        generalized_twist_regions(&gen_two_bridge(&cf(&[5]))).count,
        1
    );
    let d = gen_double_coil(CoilSpec::new(1, 2, 1, 1)).unwrap();
    assert_eq!(generalized_twist_regions(&d).count, 2);

    let aug = gen_augmented(slope(3, 5)).unwrap();
    let c = aug.provenance().unwrap().circles[0].component;
    let once = fill_crossing_circle(&aug, c, 2).unwrap();
    let c = once.provenance().unwrap().circles[0].component;
    let twice = fill_crossing_circle(&once, c, -3).unwrap();
    assert_eq!(generalized_twist_regions(&twice).count, 2);

    let g = generalized_twist_regions(&parse_pd(FIGURE8).unwrap());
    assert_eq!((g.count, g.exact), (2, false));
}

#[test]
fn render_documents() {
    let empty = render_svg(&PlanarDiagram::empty(), &RenderOptions::default());
    assert!(empty.contains("<svg") && empty.trim_end().ends_with("</svg>"));
    assert_eq!(empty.matches("class=\"crossing\"").count(), 0);

    let t = parse_pd(TREFOIL).unwrap();
    let svg = render_svg(&t, &RenderOptions::default());
    assert_eq!(svg.matches("class=\"crossing\"").count(), 3);
    assert!(svg.contains(r#"version="1.1""#));
    assert_eq!(svg, render_svg(&t, &RenderOptions::default()));

    let aug = gen_augmented(slope(2, 5)).unwrap();
    let svg = render_svg(&aug, &RenderOptions::default());
    assert_eq!(svg.matches("class=\"component\"").count(), 3);
    let strokes: std::collections::BTreeSet<&str> = svg
        .lines()
        .filter(|l| l.contains("class=\"component\""))
        .map(|l| {
            l.split("stroke=\"")
                .nth(1)
                .unwrap()
                .split('"')
                .next()
                .unwrap()
        })
        .collect();
    assert_eq!(strokes.len(), 3);
}

#[test]
fn layout_is_finite() {
    let d = gen_double_coil(CoilSpec::new(2, 5, 1, 2)).unwrap();
    for seed in 0..4 {
        let svg = render_svg(
            &d,
            &RenderOptions {
                seed_layout: seed,
                size: 400.0,
            },
        );
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }
}

fn relabel(text: &str, perm_seed: u64) -> String {
    // shuffle term order and map labels through an injective affine map
    let mut terms: Vec<&str> = text.split_whitespace().collect();
    let n = terms.len();
    if n > 1 {
        terms.rotate_left((perm_seed as usize) % n);
        if perm_seed % 2 == 1 {
            terms.swap(0, n - 1);
        }
    }
    terms
        .iter()
        .map(|t| {
            let inner = &t[2..t.len() - 1];
            let labels: Vec<String> = inner
                .split(',')
                .map(|l| (l.parse::<u64>().unwrap() * 7 + perm_seed).to_string())
                .collect();
            format!("X({})", labels.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn generated() -> impl Strategy<Value = PlanarDiagram> {
    prop_oneof![
        (1u64..6, 0usize..4).prop_flat_map(|(len, _)| {
            proptest::collection::vec(1u64..5, len as usize).prop_map(|mut t| {
                if let Some(last) = t.last_mut() {
                    *last = (*last).max(2);
                }
                gen_two_bridge(&ContinuedFraction::new(t).unwrap())
            })
        }),
        (2i64..6, 1i64..6, -3i64..=3, -3i64..=3).prop_filter_map("coil", |(q, p, a, b)| {
            gen_double_coil(CoilSpec::new(p, q, a, b)).ok()
        }),
        (2i64..9, 1i64..9).prop_filter_map("augmented", |(q, p)| {
            Slope::new(p, q).ok().and_then(|s| gen_augmented(s).ok())
        }),
        (2i64..9, 1i64..9).prop_filter_map("clasped", |(q, p)| {
            Slope::new(p, q)
                .ok()
                .and_then(|s| gen_clasped_two_bridge(s).ok())
        }),
    ]
}

proptest! {
    #[test]
    fn pd_round_trip(d in generated()) {
        prop_assume!(d.crossing_count() <= 200);
        let back = parse_pd(&emit_pd(&d)).unwrap();
        prop_assert!(back.is_isomorphic(&d));
        prop_assert_eq!(back.euler_characteristic(), 2 * d.graph_pieces() as i64);
    }

    #[test]
    fn euler_for_generated(d in generated()) {
        prop_assert_eq!(d.euler_characteristic(), 2 * d.graph_pieces() as i64);
        prop_assert_eq!(d.edge_count(), 2 * d.crossing_count());
    }

    #[test]
    fn twist_regions_survive_relabeling(d in generated(), seed in 0u64..50) {
        let text = relabel(&emit_pd(&d), seed);
        let e = parse_pd(&text).unwrap();
        prop_assert!(e.is_isomorphic(&d));
        let mut a = twist_regions(&d).sizes();
        let mut b = twist_regions(&e).sizes();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }
}
