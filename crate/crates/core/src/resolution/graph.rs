use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::ResolutionError;
use crate::linalg::{determinant, signature_of};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub id: usize,
    pub name: String,
    /// Dropped (`None`) after the cover transform.
    pub multiplicity: Option<u64>,
    /// Only meaningful for compact cycles.
    pub self_intersection: Option<i64>,
    pub compact: bool,
}

impl Cycle {
    pub fn is_odd(&self) -> bool {
        self.multiplicity.is_some_and(|m| m % 2 == 1)
    }

    pub fn is_even(&self) -> bool {
        self.multiplicity.is_some_and(|m| m % 2 == 0)
    }
}

/// Curves in the resolution with their pairwise intersection counts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DivisorGraph {
    cycles: Vec<Cycle>,
    edges: BTreeMap<(usize, usize), u32>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl DivisorGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a cycle and returns its id.
    pub fn add_cycle(&mut self, name: impl Into<String>, multiplicity: u64, self_intersection: Option<i64>, compact: bool) -> usize {
        let id = self.cycles.len();
        self.cycles.push(Cycle {
            id,
            name: name.into(),
            multiplicity: Some(multiplicity),
            self_intersection,
            compact,
        });
        id
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn cycle(&self, id: usize) -> &Cycle {
        &self.cycles[id]
    }

    pub fn cycle_mut(&mut self, id: usize) -> &mut Cycle {
        &mut self.cycles[id]
    }

    pub fn compact_ids(&self) -> Vec<usize> {
        self.cycles.iter().filter(|c| c.compact).map(|c| c.id).collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.edges.iter().map(|(k, v)| (*k, *v))
    }

    pub fn intersection(&self, a: usize, b: usize) -> u32 {
        self.edges.get(&key(a, b)).copied().unwrap_or(0)
    }

    pub fn add_intersection(&mut self, a: usize, b: usize) {
        assert_ne!(a, b, "a cycle cannot meet itself here");
        *self.edges.entry(key(a, b)).or_insert(0) += 1;
    }

    pub fn clear_edges(&mut self) {
        self.edges.clear();
    }

    pub fn neighbours(&self, id: usize) -> Vec<usize> {
        self.edges
            .keys()
            .filter_map(|&(a, b)| {
                if a == id {
                    Some(b)
                } else if b == id {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    fn compact_neighbours(&self, id: usize) -> Vec<usize> {
        self.neighbours(id).into_iter().filter(|&n| self.cycles[n].compact).collect()
    }
}

/// Replaces the branch data downstairs by the curves of the double cover.
///
/// Two local models are known: an odd cycle of self-intersection −4, and an
/// even (branch) cycle of self-intersection −1 crossed by at most two odd
/// curves. Both lift to cycles of self-intersection −2.
pub fn double_cover_transform(graph: &DivisorGraph) -> Result<DivisorGraph, ResolutionError> {
    let mut out = graph.clone();
    for c in graph.cycles.iter().filter(|c| c.compact) {
        let not_applicable = |reason: String| ResolutionError::RuleNotApplicable { cycle: c.name.clone(), reason };
        let s = c.self_intersection.ok_or_else(|| not_applicable("no self-intersection".into()))?;
        if c.is_odd() {
            if s != -4 {
                return Err(not_applicable(format!("odd cycle has self-intersection {s}, expected -4")));
            }
        } else if c.is_even() {
            if s != -1 {
                return Err(not_applicable(format!("even cycle has self-intersection {s}, expected -1")));
            }
            let odd: u32 = graph
                .neighbours(c.id)
                .into_iter()
                .filter(|&n| graph.cycles[n].is_odd())
                .map(|n| graph.intersection(c.id, n))
                .sum();
            if odd > 2 {
                return Err(not_applicable(format!("even cycle meets odd cycles {odd} times")));
            }
        } else {
            return Err(not_applicable("multiplicity unknown".into()));
        }
        out.cycles[c.id].self_intersection = Some(-2);
    }
    for c in &mut out.cycles {
        c.multiplicity = None;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ordering {
    /// Long arm, trivalent node, remaining arms by decreasing length.
    Canonical,
    /// Order of creation.
    Creation,
    Explicit(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionMatrix {
    pub ids: Vec<usize>,
    pub entries: Vec<Vec<i64>>,
}

impl IntersectionMatrix {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&self.entries).expect("square by construction")
    }

    /// Unordered index pairs `(i, j)`, `i < j`, with a nonzero entry.
    pub fn adjacency(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.entries[i][j] != 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Compact cycles of a tree with one trivalent node, in canonical order;
/// `None` when the compact part has a different shape.
fn canonical_order(graph: &DivisorGraph) -> Option<Vec<usize>> {
    let ids = graph.compact_ids();
    let degree = |id: usize| graph.compact_neighbours(id).len();
    let nodes: Vec<usize> = ids.iter().copied().filter(|&i| degree(i) >= 3).collect();
    if nodes.len() != 1 || degree(nodes[0]) != 3 {
        return None;
    }
    let node = nodes[0];
    let mut arms: Vec<Vec<usize>> = Vec::new();
    for start in graph.compact_neighbours(node) {
        let mut arm = vec![start];
        let mut prev = node;
        let mut cur = start;
        loop {
            let next: Vec<usize> = graph.compact_neighbours(cur).into_iter().filter(|&n| n != prev).collect();
            match next.as_slice() {
                [] => break,
                [n] => {
                    prev = cur;
                    cur = *n;
                    arm.push(cur);
                }
                _ => return None,
            }
        }
        arms.push(arm);
    }
    if arms.iter().map(Vec::len).sum::<usize>() + 1 != ids.len() {
        return None;
    }
    arms.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let mut order: Vec<usize> = arms[0].iter().rev().copied().collect();
    order.push(node);
    for arm in &arms[1..] {
        order.extend(arm);
    }
    Some(order)
}

pub fn intersection_matrix(graph: &DivisorGraph, ordering: &Ordering) -> Result<IntersectionMatrix, ResolutionError> {
    let ids = match ordering {
        Ordering::Canonical => canonical_order(graph).unwrap_or_else(|| graph.compact_ids()),
        Ordering::Creation => graph.compact_ids(),
        Ordering::Explicit(ids) => {
            for &id in ids {
                let c = graph.cycles.get(id).ok_or(ResolutionError::UnknownCycle(id))?;
                if !c.compact {
                    return Err(ResolutionError::NonCompact(c.name.clone()));
                }
            }
            ids.clone()
        }
    };
    let entries = ids
        .iter()
        .map(|&a| {
            ids.iter()
                .map(|&b| {
                    if a == b {
                        graph.cycles[a].self_intersection.unwrap_or(0)
                    } else {
                        graph.intersection(a, b) as i64
                    }
                })
                .collect()
        })
        .collect();
    Ok(IntersectionMatrix { ids, entries })
}

/// Positive minus negative inertia, by exact congruence diagonalisation.
pub fn signature(m: &IntersectionMatrix) -> Result<i64, ResolutionError> {
    signature_of(&m.entries).map_err(|e| ResolutionError::Matrix(e.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RochlinReport {
    pub divisible_by_16: bool,
    /// A closed smooth spin 4-manifold with this signature cannot exist.
    pub contradiction: bool,
}

pub fn rochlin_check(signature: i64) -> RochlinReport {
    let divisible_by_16 = signature.rem_euclid(16) == 0;
    RochlinReport { divisible_by_16, contradiction: !divisible_by_16 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(selfs: &[i64]) -> DivisorGraph {
        let mut g = DivisorGraph::new();
        for (i, &s) in selfs.iter().enumerate() {
            g.add_cycle(format!("E{i}"), 2, Some(s), true);
        }
        for i in 1..selfs.len() {
            g.add_intersection(i - 1, i);
        }
        g
    }

    #[test]
    fn small_matrices() {
        let empty = intersection_matrix(&DivisorGraph::new(), &Ordering::Canonical).unwrap();
        assert!(empty.is_empty());
        assert_eq!(signature(&empty).unwrap(), 0);

        let mut two = DivisorGraph::new();
        two.add_cycle("a", 2, Some(-2), true);
        two.add_cycle("b", 2, Some(-2), true);
        let m = intersection_matrix(&two, &Ordering::Canonical).unwrap();
        assert_eq!(m.entries, vec![vec![-2, 0], vec![0, -2]]);
        assert_eq!(signature(&m).unwrap(), -2);
    }

    #[test]
    fn signature_examples() {
        let id = IntersectionMatrix { ids: vec![0, 1], entries: vec![vec![1, 0], vec![0, 1]] };
        assert_eq!(signature(&id).unwrap(), 2);
        let hyper = IntersectionMatrix { ids: vec![0, 1], entries: vec![vec![1, 0], vec![0, -1]] };
        assert_eq!(signature(&hyper).unwrap(), 0);
        let bad = IntersectionMatrix { ids: vec![0, 1], entries: vec![vec![1, 2], vec![0, -1]] };
        assert!(matches!(signature(&bad), Err(ResolutionError::Matrix(_))));
    }

    #[test]
    fn rochlin() {
        assert_eq!(rochlin_check(-8), RochlinReport { divisible_by_16: false, contradiction: true });
        assert_eq!(rochlin_check(-16), RochlinReport { divisible_by_16: true, contradiction: false });
        assert_eq!(rochlin_check(0), RochlinReport { divisible_by_16: true, contradiction: false });
    }

    #[test]
    fn cover_rules() {
        let mut single = DivisorGraph::new();
        single.add_cycle("E", 2, Some(-1), true);
        let lifted = double_cover_transform(&single).unwrap();
        assert_eq!(lifted.cycle(0).self_intersection, Some(-2));
        assert_eq!(lifted.cycle(0).multiplicity, None);

        let mut odd = DivisorGraph::new();
        odd.add_cycle("E", 3, Some(-3), true);
        assert!(matches!(double_cover_transform(&odd), Err(ResolutionError::RuleNotApplicable { .. })));
    }

    #[test]
    fn explicit_ordering_rejects_noncompact() {
        let mut g = chain(&[-2, -2]);
        let c = g.add_cycle("C", 1, None, false);
        assert!(matches!(
            intersection_matrix(&g, &Ordering::Explicit(vec![0, c])),
            Err(ResolutionError::NonCompact(_))
        ));
        let m = intersection_matrix(&g, &Ordering::Explicit(vec![1, 0])).unwrap();
        assert_eq!(m.ids, vec![1, 0]);
    }

    #[test]
    fn canonical_order_of_a_t_shape() {
        // arms of length 1, 2, 3 around node 0
        let mut g = DivisorGraph::new();
        for i in 0..7 {
            g.add_cycle(format!("E{i}"), 2, Some(-2), true);
        }
        for (a, b) in [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)] {
            g.add_intersection(a, b);
        }
        let m = intersection_matrix(&g, &Ordering::Canonical).unwrap();
        assert_eq!(m.ids, vec![6, 5, 4, 0, 2, 3, 1]);
    }
}
