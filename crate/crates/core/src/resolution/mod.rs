//! Embedded resolution of plane-curve germs by point blow-ups, and the
//! intersection form of the double cover branched along the result.
//!
//! Replaying `y³ + z⁵` (the branch curve of `x² + y³ + z⁵`) produces eight
//! exceptional curves whose double cover has the E8 intersection form.

mod engine;
mod germ;
mod graph;

use serde::Serialize;
use thiserror::Error;

pub use engine::{blow_up, detect_targets, ChartPoint, ResolutionState, Target, TargetReason, TraceStep};
pub use germ::{parse_germ, Germ, GermPoly, MAX_EXPONENT};
pub use graph::{
    double_cover_transform, intersection_matrix, rochlin_check, signature, Cycle, DivisorGraph, IntersectionMatrix,
    Ordering, RochlinReport,
};

/// Blow-ups allowed before `resolve` gives up.
pub const MAX_BLOWUPS: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("germ must involve at most two variables, found {variables:?} (at position {position})")]
    Arity { position: usize, variables: Vec<String> },
    #[error("unsupported germ: {0}")]
    Unsupported(String),
    #[error("no chart point with index {0}")]
    NoSuchPoint(usize),
    #[error("no cycle with id {0}")]
    UnknownCycle(usize),
    #[error("cycle {0} is not compact")]
    NonCompact(String),
    #[error("cover rule not applicable to {cycle}: {reason}")]
    RuleNotApplicable { cycle: String, reason: String },
    #[error("consistency failure at blow-up {step}: {message}")]
    Consistency { step: usize, message: String },
    #[error("resolution did not finish within {0} blow-ups")]
    NoTermination(usize),
    #[error("{0}")]
    Matrix(String),
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub graph: DivisorGraph,
    pub trace: Vec<TraceStep>,
}

/// Blows up until every remaining point is a normal crossing that is not
/// between two odd-multiplicity curves.
pub fn resolve(germ: &Germ) -> Result<Resolution, ResolutionError> {
    let mut state = ResolutionState::new(germ)?;
    let mut trace = Vec::new();
    loop {
        let targets = detect_targets(&state);
        let Some(target) = targets.first() else { break };
        if state.blowups() >= MAX_BLOWUPS {
            return Err(ResolutionError::NoTermination(MAX_BLOWUPS));
        }
        let step = blow_up(&mut state, target.point, Some(target.reason))?
            .ok_or_else(|| ResolutionError::Consistency {
                step: state.blowups() + 1,
                message: "target point is smooth".into(),
            })?;
        trace.push(step);
    }
    Ok(Resolution { graph: state.graph, trace })
}

/// Multiplicities of the exceptional curves of the (2,3,5) run, in order.
pub const E8_MULTIPLICITIES: [u64; 8] = [3, 5, 9, 15, 24, 20, 16, 12];

/// Resolves `y³ + z⁵` and checks the bookkeeping along the way.
pub fn resolve_235() -> Result<Resolution, ResolutionError> {
    let germ = parse_germ("y^3+z^5").expect("literal germ");
    let res = resolve(&germ)?;
    if res.trace.len() != 8 {
        return Err(ResolutionError::Consistency {
            step: res.trace.len(),
            message: format!("expected 8 blow-ups, made {}", res.trace.len()),
        });
    }
    let mut expected = E8_MULTIPLICITIES.to_vec();
    let mut got: Vec<u64> = res.trace.iter().map(|s| s.multiplicity).collect();
    for (i, (&g, &e)) in got.iter().zip(&E8_MULTIPLICITIES).enumerate().take(4) {
        if g != e {
            return Err(ResolutionError::Consistency { step: i + 1, message: format!("multiplicity {g}, expected {e}") });
        }
    }
    got.sort_unstable();
    expected.sort_unstable();
    if got != expected {
        return Err(ResolutionError::Consistency { step: 8, message: format!("multiplicities {got:?}") });
    }
    for c in res.graph.cycles().iter().filter(|c| c.compact) {
        let want = if c.is_odd() { -4 } else { -1 };
        if c.self_intersection != Some(want) {
            return Err(ResolutionError::Consistency {
                step: c.name.trim_start_matches('E').parse().unwrap_or(0),
                message: format!("{} has self-intersection {:?}, expected {want}", c.name, c.self_intersection),
            });
        }
    }
    Ok(res)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleSummary {
    pub name: String,
    pub mult: u64,
    #[serde(rename = "self")]
    pub self_intersection: i64,
}

/// Everything reported about a resolved germ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionReport {
    /// Compact exceptional curves downstairs, in matrix order.
    pub cycles: Vec<CycleSummary>,
    /// Index pairs into `cycles`.
    pub edges: Vec<[usize; 2]>,
    /// Whether the double-cover rules applied; if not, `matrix` is the
    /// downstairs intersection form.
    pub cover_applied: bool,
    pub cover_error: Option<String>,
    pub matrix: Vec<Vec<i64>>,
    pub determinant: String,
    pub signature: i64,
    pub negative_definite: bool,
    /// Only meaningful for the closed-up double cover, so absent when the
    /// cover rules did not apply.
    pub rochlin: Option<RochlinReport>,
    pub trace: Vec<TraceStep>,
}

pub fn report(resolution: &Resolution, ordering: &Ordering) -> Result<ResolutionReport, ResolutionError> {
    let graph = &resolution.graph;
    let (upstairs, cover_error) = match double_cover_transform(graph) {
        Ok(g) => (Some(g), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let m = intersection_matrix(upstairs.as_ref().unwrap_or(graph), ordering)?;
    let cycles = m
        .ids
        .iter()
        .map(|&id| {
            let c = graph.cycle(id);
            CycleSummary {
                name: c.name.clone(),
                mult: c.multiplicity.unwrap_or(0),
                self_intersection: c.self_intersection.unwrap_or(0),
            }
        })
        .collect();
    let edges = m.adjacency().into_iter().map(|(i, j)| [i, j]).collect();
    let sig = signature(&m)?;
    Ok(ResolutionReport {
        cycles,
        edges,
        cover_applied: upstairs.is_some(),
        cover_error,
        negative_definite: sig == -(m.len() as i64),
        determinant: m.determinant().to_string(),
        matrix: m.entries,
        signature: sig,
        rochlin: upstairs.is_some().then(|| rochlin_check(sig)),
        trace: resolution.trace.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e8_run() {
        let res = resolve_235().unwrap();
        let r = report(&res, &Ordering::Canonical).unwrap();
        let mults: Vec<u64> = r.cycles.iter().map(|c| c.mult).collect();
        assert_eq!(mults, vec![3, 12, 9, 24, 15, 20, 5, 16]);
        assert!(r.cover_applied);
        assert_eq!(r.edges, vec![[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [4, 7], [5, 6]]);
        assert!(r.matrix.iter().enumerate().all(|(i, row)| row[i] == -2));
        assert_eq!(r.determinant, "1");
        assert_eq!(r.signature, -8);
        assert!(r.rochlin.unwrap().contradiction);
    }

    #[test]
    fn cusp() {
        let res = resolve(&parse_germ("y^2+z^3").unwrap()).unwrap();
        let r = report(&res, &Ordering::Canonical).unwrap();
        assert_eq!(res.trace.len(), 3);
        assert!(!r.cover_applied);
        assert!(r.negative_definite);
        assert_eq!(r.rochlin, None);
        let got: Vec<(u64, i64)> = r.cycles.iter().map(|c| (c.mult, c.self_intersection)).collect();
        assert_eq!(got, vec![(2, -3), (3, -2), (6, -1)]);
    }
}
