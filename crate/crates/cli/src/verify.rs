//! The built-in oracle and property sweep behind `verify`.

use doublecoil::bounds::constants::V3;
use doublecoil::diagram::DiagramError;
use doublecoil::*;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub cases: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

type Sweep = Result<u64, String>;

fn coprime(max_q: i64) -> Vec<(i64, i64)> {
    (2..=max_q)
        .flat_map(|q| (1..q).filter(move |&p| gcd(p, q) == 1).map(move |p| (p, q)))
        .collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn sl(p: i64, q: i64) -> Slope {
    Slope::new(p, q).expect("non-zero denominator")
}

fn cfrac_round_trip() -> Sweep {
    let pairs = coprime(500);
    for &(p, q) in &pairs {
        let c = cfrac_expand(sl(p, q)).map_err(|e| e.to_string())?;
        if cfrac_eval(&c) != sl(p, q) {
            return Err(format!("{p}/{q} -> {c}"));
        }
    }
    Ok(pairs.len() as u64)
}

fn oracle(cap: i64) -> Sweep {
    // slopes p/q with |p| <= q <= cap, plus 1/0
    let mut slopes = vec![Slope::INFINITY];
    for q in 1..=cap {
        slopes.extend((-q..=q).filter(|&p| gcd(p, q) == 1).map(|p| sl(p, q)));
    }
    let mut n = 0;
    for &a in &slopes {
        for &b in &slopes {
            for (mode, closed) in [
                (IntersectionMode::CurveCurve, curve_curve_intersection(a, b)),
                (IntersectionMode::ArcCurve, arc_curve_intersection(a, b)),
            ] {
                let brute = brute_force_intersection(a, b, mode, cap).map_err(|e| e.to_string())?;
                if brute != closed {
                    return Err(format!(
                        "{a} vs {b} ({mode:?}): oracle {brute}, formula {closed}"
                    ));
                }
                n += 1;
            }
        }
    }
    Ok(n)
}

fn arc_at_least_q() -> Sweep {
    let pairs = coprime(100);
    for &(p, q) in &pairs {
        if arc_curve_intersection(Slope::INFINITY, sl(p, q)) < q as u64 {
            return Err(format!("{p}/{q}"));
        }
    }
    Ok(pairs.len() as u64)
}

fn two_bridge_diagrams() -> Sweep {
    let pairs = coprime(100);
    for &(p, q) in &pairs {
        let c = cfrac_expand(sl(p, q)).map_err(|e| e.to_string())?;
        let d = gen_two_bridge(&c);
        // a leading 1 continues the next term's twisting
        let expected = c.len() - usize::from(c.terms()[0] == 1);
        let t = twist_regions(&d).count();
        if d.crossing_count() as u64 != c.term_sum() || !d.is_alternating() || t != expected {
            return Err(format!(
                "{p}/{q} = {c}: {} crossings, {t} regions",
                d.crossing_count()
            ));
        }
    }
    Ok(pairs.len() as u64)
}

fn pd_round_trips() -> Sweep {
    let mut n = 0;
    let mut check = |d: PlanarDiagram, tag: String| -> Result<(), String> {
        let back = parse_pd(&emit_pd(&d)).map_err(|e| format!("{tag}: {e}"))?;
        if !back.is_isomorphic(&d) || back.euler_characteristic() != 2 * d.graph_pieces() as i64 {
            return Err(tag);
        }
        n += 1;
        Ok(())
    };
    for (p, q) in coprime(6) {
        for n1 in [-2, 1, 3] {
            for n2 in [-1, 2] {
                let d = gen_double_coil(CoilSpec::new(p, q, n1, n2)).map_err(|e| e.to_string())?;
                check(d, format!("coil ({p},{q},{n1},{n2})"))?;
            }
        }
        check(
            gen_augmented(sl(p, q)).map_err(|e| e.to_string())?,
            format!("augmented {p}/{q}"),
        )?;
        check(
            gen_clasped_two_bridge(sl(p, q)).map_err(|e| e.to_string())?,
            format!("clasped {p}/{q}"),
        )?;
    }
    Ok(n)
}

fn fill_matches_generator() -> Sweep {
    let mut n = 0;
    let twists = [-2, -1, 1, 2];
    for (p, q) in coprime(6) {
        let aug = gen_augmented(sl(p, q)).map_err(|e| e.to_string())?;
        let circle = |d: &PlanarDiagram| -> Result<usize, DiagramError> {
            let prov = d
                .provenance()
                .ok_or(DiagramError::NotACrossingCircle("none".into()))?;
            Ok(prov.circles[0].component)
        };
        for n1 in twists {
            let once = fill_crossing_circle(&aug, circle(&aug).map_err(|e| e.to_string())?, n1)
                .map_err(|e| e.to_string())?;
            for n2 in twists {
                let c = circle(&once).map_err(|e| e.to_string())?;
                let filled = fill_crossing_circle(&once, c, n2).map_err(|e| e.to_string())?;
                let direct =
                    gen_double_coil(CoilSpec::new(p, q, n1, n2)).map_err(|e| e.to_string())?;
                if !filled.is_isomorphic(&direct) {
                    return Err(format!("({p},{q},{n1},{n2})"));
                }
                n += 1;
            }
        }
    }
    Ok(n)
}

fn mirror_intervals() -> Sweep {
    let pairs = coprime(300);
    for &(p, q) in &pairs {
        let a = parent_volume_interval(sl(p, q)).map_err(|e| e.to_string())?;
        let b = parent_volume_interval(sl(q - p, q)).map_err(|e| e.to_string())?;
        if a.lower.max(b.lower) > a.upper.min(b.upper) {
            return Err(format!("{p}/{q}"));
        }
    }
    Ok(pairs.len() as u64)
}

fn composition() -> Sweep {
    let mut n = 0;
    let mut vols = vec![2.0 * V3];
    vols.extend((0..=60).map(|i| 10f64.powf(i as f64 / 20.0)));
    for g in 1..=10 {
        for &v in &vols {
            let a = lambda_upper(g, v).map_err(|e| e.to_string())?;
            let b = buser_upper(cheeger_upper(g, v).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            if (a - b).abs() > 1e-12 * a.abs().max(b.abs()) {
                return Err(format!("g={g} vol={v}"));
            }
            n += 1;
        }
    }
    Ok(n)
}

fn thresholds() -> Sweep {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut n = 0;
    for k in 1..=200u64 {
        for m in 1..=200 / k as i64 {
            if (cusp_slope_length_lower(k, m) > two_pi) != (k * m as u64 >= 80) {
                return Err(format!("k={k} n={m}"));
            }
            n += 1;
        }
    }
    for m in -1000..=1000i64 {
        let a = m.unsigned_abs();
        if (slope_length_lower(m) > two_pi) != (a >= 4) || disk_obstruction_check(m) != (a >= 6) {
            return Err(format!("n={m}"));
        }
        n += 1;
    }
    Ok(n)
}

/// Runs every check on the current rayon pool; results keep this order.
pub fn run_all(oracle_cap: i64) -> Vec<Check> {
    type Job = Box<dyn Fn() -> Sweep + Send + Sync>;
    let jobs: Vec<(&'static str, Job)> = vec![
        ("cfrac-round-trip", Box::new(cfrac_round_trip)),
        ("intersection-oracle", Box::new(move || oracle(oracle_cap))),
        ("arc-meets-curve-q-times", Box::new(arc_at_least_q)),
        ("two-bridge-diagrams", Box::new(two_bridge_diagrams)),
        ("pd-round-trip", Box::new(pd_round_trips)),
        (
            "filling-matches-generator",
            Box::new(fill_matches_generator),
        ),
        ("mirror-volume-intervals", Box::new(mirror_intervals)),
        ("buser-cheeger-composition", Box::new(composition)),
        ("threshold-sharpness", Box::new(thresholds)),
    ];
    jobs.par_iter()
        .map(|(name, job)| match job() {
            Ok(cases) => Check {
                name,
                cases,
                passed: true,
                detail: None,
            },
            Err(detail) => Check {
                name,
                cases: 0,
                passed: false,
                detail: Some(detail),
            },
        })
        .collect()
}

/// Statistics and round-trip checks for one PD code.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PdSummary {
    pub crossings: usize,
    pub components: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub twist_regions: usize,
    pub writhe: i64,
    pub alternating: bool,
    pub round_trip: bool,
}

pub fn check_pd(text: &str) -> Result<PdSummary, DiagramError> {
    let d = parse_pd(text)?;
    let back = parse_pd(&emit_pd(&d))?;
    Ok(PdSummary {
        crossings: d.crossing_count(),
        components: d.component_count(),
        faces: faces(&d).len(),
        euler_characteristic: d.euler_characteristic(),
        twist_regions: twist_regions(&d).count(),
        writhe: d.writhe(),
        alternating: d.is_alternating(),
        round_trip: back.is_isomorphic(&d),
    })
}
