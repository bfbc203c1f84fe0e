//! PD-code text: whitespace-separated `X(a,b,c,d)` terms.

use std::collections::HashMap;

use super::{assemble, DiagramError, EdgeEnd, PlanarDiagram, PortGraph};

fn syntax(msg: impl Into<String>) -> DiagramError {
    DiagramError::Syntax(msg.into())
}

/// Parses PD text. Arity violations are syntax errors here; the tuple entry
/// point [`parse_pd_terms`] reports them as non-quadrivalent crossings.
pub fn parse_pd(text: &str) -> Result<PlanarDiagram, DiagramError> {
    let mut terms = Vec::new();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix("X(")
            .ok_or_else(|| syntax(format!("expected `X(` at `{}`", preview(rest))))?;
        let close = body.find(')').ok_or_else(|| syntax("unclosed `X(`"))?;
        let labels = body[..close]
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<u64>()
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| syntax(format!("bad edge label `{t}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if labels.len() != 4 {
            return Err(syntax(format!(
                "crossing {} has {} labels, expected 4",
                terms.len(),
                labels.len()
            )));
        }
        terms.push(labels);
        let after = &body[close + 1..];
        if !after.is_empty() && !after.starts_with(char::is_whitespace) {
            return Err(syntax(format!(
                "expected whitespace at `{}`",
                preview(after)
            )));
        }
        rest = after.trim_start();
    }
    parse_pd_terms(&terms)
}

fn preview(s: &str) -> String {
    s.chars().take(12).collect()
}

pub fn parse_pd_terms(terms: &[Vec<u64>]) -> Result<PlanarDiagram, DiagramError> {
    let mut occurrences: HashMap<u64, Vec<EdgeEnd>> = HashMap::new();
    for (c, term) in terms.iter().enumerate() {
        if term.len() != 4 {
            return Err(DiagramError::NonQuadrivalent {
                crossing: c,
                arity: term.len(),
            });
        }
        for (s, &label) in term.iter().enumerate() {
            occurrences.entry(label).or_default().push(EdgeEnd {
                crossing: c,
                slot: s as u8,
            });
        }
    }
    let mut link = vec![
        [EdgeEnd {
            crossing: 0,
            slot: 0
        }; 4];
        terms.len()
    ];
    let mut labels: Vec<_> = occurrences.into_iter().collect();
    labels.sort_unstable_by_key(|(l, _)| *l);
    for (label, ends) in labels {
        let &[a, b] = ends.as_slice() else {
            return Err(DiagramError::EdgePairing(format!(
                "label {label} appears {} times",
                ends.len()
            )));
        };
        link[a.crossing][a.slot as usize] = b;
        link[b.crossing][b.slot as usize] = a;
    }
    let graph = PortGraph {
        over_parity: vec![1; terms.len()],
        link,
    };
    Ok(assemble(&graph, true)?.diagram)
}

pub fn emit_pd(d: &PlanarDiagram) -> String {
    d.crossings()
        .iter()
        .map(|x| format!("X({},{},{},{})", x[0] + 1, x[1] + 1, x[2] + 1, x[3] + 1))
        .collect::<Vec<_>>()
        .join(" ")
}
