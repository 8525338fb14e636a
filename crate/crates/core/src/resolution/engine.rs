use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::germ::{Germ, GermPoly};
use super::graph::DivisorGraph;
use super::ResolutionError;

/// Largest constant term whose divisors are tried as tangent-cone roots.
const ROOT_SEARCH_LIMIT: u64 = 1_000_000;

/// The origin of a local chart together with the curves through it.
///
/// The germ factors as `u^a v^b g` where `{u=0}` is `u_comp` with
/// multiplicity `a` (likewise `v`), and `g` is the strict transform of the
/// original curve, which passes through the point iff `g(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartPoint {
    pub germ: Germ,
    pub u_comp: Option<usize>,
    pub v_comp: Option<usize>,
}

impl ChartPoint {
    fn strict(&self) -> GermPoly {
        self.germ.strict_part()
    }

    fn strict_order(&self) -> u32 {
        self.strict().order().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetReason {
    SingularBranch,
    Tangency,
    TriplePoint,
    OddOdd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Target {
    pub point: usize,
    pub reason: TargetReason,
    /// Names of the curves through the point.
    pub components: Vec<String>,
    pub multiplicities: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub step: usize,
    pub reason: Option<TargetReason>,
    pub point: String,
    pub chart_a: String,
    pub chart_b: String,
    pub cycle: String,
    pub multiplicity: u64,
}

#[derive(Clone, Debug)]
pub struct ResolutionState {
    pub graph: DivisorGraph,
    pub points: Vec<ChartPoint>,
    residual: Option<usize>,
    blowups: usize,
}

impl ResolutionState {
    /// Starts from a germ at the origin; monomial factors become
    /// non-compact axis curves.
    pub fn new(germ: &Germ) -> Result<Self, ResolutionError> {
        let mut graph = DivisorGraph::new();
        let [a, b] = germ.content();
        let strict = germ.strict_part();
        let residual = if strict.coeff(&[0, 0]).is_zero() {
            Some(graph.add_cycle("C", 1, None, false))
        } else {
            None
        };
        let axis = |graph: &mut DivisorGraph, var: &str, e: u32| {
            (e > 0).then(|| graph.add_cycle(format!("{{{var}=0}}"), e as u64, None, false))
        };
        let u_comp = axis(&mut graph, &germ.vars[0], a);
        let v_comp = axis(&mut graph, &germ.vars[1], b);
        let mut state = Self {
            graph,
            points: vec![ChartPoint { germ: germ.clone(), u_comp, v_comp }],
            residual,
            blowups: 0,
        };
        state.points.retain(|p| state_keeps(&state.residual, p));
        state.rebuild_edges()?;
        Ok(state)
    }

    pub fn blowups(&self) -> usize {
        self.blowups
    }

    pub fn residual(&self) -> Option<usize> {
        self.residual
    }

    /// Curves through a point, axes first.
    pub fn components(&self, p: &ChartPoint) -> Vec<usize> {
        point_components(&self.residual, p)
    }

    fn rebuild_edges(&mut self) -> Result<(), ResolutionError> {
        self.graph.clear_edges();
        for p in &self.points {
            let comps = self.components(p);
            for i in 0..comps.len() {
                for j in i + 1..comps.len() {
                    if comps[i] == comps[j] {
                        return Err(ResolutionError::Unsupported(format!(
                            "branch {} meets itself at {}",
                            self.graph.cycle(comps[i]).name,
                            p.germ
                        )));
                    }
                    self.graph.add_intersection(comps[i], comps[j]);
                }
            }
        }
        Ok(())
    }
}

fn point_components(residual: &Option<usize>, p: &ChartPoint) -> Vec<usize> {
    let mut out: Vec<usize> = p.u_comp.into_iter().chain(p.v_comp).collect();
    if !p.germ.is_unit() {
        let strict = p.strict();
        if strict.coeff(&[0, 0]).is_zero() {
            out.extend(residual);
        }
    }
    out
}

fn state_keeps(residual: &Option<usize>, p: &ChartPoint) -> bool {
    point_components(residual, p).len() >= 2 || p.strict_order() >= 2
}

/// Points that still need blowing up, most urgent reason first.
pub fn detect_targets(state: &ResolutionState) -> Vec<Target> {
    let mut out = Vec::new();
    for (i, p) in state.points.iter().enumerate() {
        let comps = state.components(p);
        let strict = p.strict();
        let ord = strict.order().unwrap_or(0);
        let mults: Vec<u64> = comps.iter().map(|&c| state.graph.cycle(c).multiplicity.unwrap_or(0)).collect();
        let reason = if ord >= 2 {
            Some(TargetReason::SingularBranch)
        } else if ord == 1 && tangent_to_axis(p, &strict) {
            Some(TargetReason::Tangency)
        } else if comps.len() >= 3 {
            Some(TargetReason::TriplePoint)
        } else if comps.len() == 2 && mults.iter().all(|m| m % 2 == 1) {
            Some(TargetReason::OddOdd)
        } else {
            None
        };
        if let Some(reason) = reason {
            out.push(Target {
                point: i,
                reason,
                components: comps.iter().map(|&c| state.graph.cycle(c).name.clone()).collect(),
                multiplicities: mults,
            });
        }
    }
    out.sort_by_key(|t| (t.reason, t.point));
    out
}

/// A smooth strict transform whose tangent line is an axis carrying a curve.
fn tangent_to_axis(p: &ChartPoint, strict: &GermPoly) -> bool {
    let du = strict.coeff(&[1, 0]);
    let dv = strict.coeff(&[0, 1]);
    // tangent line du·u + dv·v = 0 equals {u=0} iff dv = 0
    (dv.is_zero() && p.u_comp.is_some()) || (du.is_zero() && p.v_comp.is_some())
}

/// Roots of `Σ c_j t^j` in the integers, with multiplicity, when every root
/// is an integer; `None` otherwise.
fn integer_roots(coeffs: &[BigInt]) -> Result<Option<Vec<(BigInt, u32)>>, ResolutionError> {
    let mut poly: Vec<BigInt> = coeffs.to_vec();
    while poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
    }
    let low = poly.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let mut poly: Vec<BigInt> = poly[low..].to_vec();
    let constant = match poly.first() {
        Some(c) => c.abs(),
        None => return Ok(Some(Vec::new())),
    };
    let limit = constant
        .to_u64()
        .filter(|&c| c <= ROOT_SEARCH_LIMIT)
        .ok_or_else(|| ResolutionError::Unsupported("tangent cone coefficients too large".into()))?;
    let mut roots = Vec::new();
    for d in (1..=limit).filter(|d| limit % d == 0) {
        for cand in [BigInt::from(d), -BigInt::from(d)] {
            let mut mult = 0;
            while poly.len() > 1 {
                match divide_linear(&poly, &cand) {
                    Some(q) => {
                        poly = q;
                        mult += 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                roots.push((cand, mult));
            }
        }
    }
    roots.sort();
    Ok((poly.len() == 1).then_some(roots))
}

/// Quotient by `(t − r)` when it divides exactly.
fn divide_linear(poly: &[BigInt], r: &BigInt) -> Option<Vec<BigInt>> {
    let n = poly.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for j in (1..=n).rev() {
        carry = &poly[j] + &carry * r;
        q[j - 1] = carry.clone();
    }
    (&poly[0] + &carry * r).is_zero().then_some(q)
}

/// Blows up `state.points[index]`, replacing it by the points of the new
/// exceptional curve that still lie on two or more curves.
///
/// Chart A is `v = u·q`, coordinates `(u, q_n)`, exceptional curve `{u=0}`;
/// chart B is `u = p·v`, coordinates `(p_n, v)`, exceptional curve `{v=0}`.
/// Returns `None` (and changes nothing) when the germ is a unit there.
pub fn blow_up(
    state: &mut ResolutionState,
    index: usize,
    reason: Option<TargetReason>,
) -> Result<Option<TraceStep>, ResolutionError> {
    let p = state.points.get(index).cloned().ok_or(ResolutionError::NoSuchPoint(index))?;
    if p.germ.is_unit() {
        return Ok(None);
    }
    let n = state.blowups + 1;
    let m = p.germ.vanishing_order() as u64;
    let [u_name, v_name] = p.germ.vars.clone();
    let q_name = format!("q_{n}");
    let p_name = format!("p_{n}");
    let u = GermPoly::var(0);
    let v = GermPoly::var(1);

    let ga = p.germ.poly.compose(&[u.clone(), &u * &v]);
    let gb = p.germ.poly.compose(&[&u * &v, v.clone()]);
    let chart_a = Germ::new([u_name.clone(), q_name.clone()], ga.clone());
    let chart_b = Germ::new([p_name, v_name], gb);

    let strict = p.strict();
    let d = strict.order().unwrap_or(0);
    let cone = strict.homogeneous_part(d);
    let mut f = vec![BigInt::zero(); d as usize + 1];
    for (e, c) in cone.terms() {
        f[e[1] as usize] = c.clone();
    }
    let roots = integer_roots(&f)?.ok_or_else(|| {
        ResolutionError::Unsupported(format!("tangent cone of {} has non-integer slopes", p.germ))
    })?;

    // bookkeeping on the graph
    for c in state.components(&p) {
        let cycle = state.graph.cycle_mut(c);
        if cycle.compact {
            cycle.self_intersection = cycle.self_intersection.map(|s| s - 1);
        }
    }
    let e = state.graph.add_cycle(format!("E{n}"), m, Some(-1), true);

    let mut new_points = vec![ChartPoint { germ: chart_a.clone(), u_comp: Some(e), v_comp: p.v_comp }];
    for (t0, _) in roots.iter().filter(|(t, _)| !t.is_zero()) {
        let shifted = ga.compose(&[u.clone(), &v + &GermPoly::constant(t0.clone())]);
        let germ = Germ::new([u_name.clone(), q_name.clone()], shifted);
        let v_comp = match germ.content()[1] {
            0 => None,
            1 => state.residual,
            k => {
                return Err(ResolutionError::Unsupported(format!(
                    "strict transform meets {} with multiplicity {k}",
                    state.graph.cycle(e).name
                )))
            }
        };
        new_points.push(ChartPoint { germ, u_comp: Some(e), v_comp });
    }
    new_points.push(ChartPoint { germ: chart_b.clone(), u_comp: p.u_comp, v_comp: Some(e) });

    for q in &new_points {
        let [a, b] = q.germ.content();
        let expect = |c: Option<usize>| c.map(|c| state.graph.cycle(c).multiplicity.unwrap_or(0)).unwrap_or(0);
        if a as u64 != expect(q.u_comp) || b as u64 != expect(q.v_comp) {
            return Err(ResolutionError::Consistency {
                step: n,
                message: format!("monomial factor of {} disagrees with the curve multiplicities", q.germ),
            });
        }
    }
    let residual = state.residual;
    new_points.retain(|q| state_keeps(&residual, q));
    state.points.splice(index..=index, new_points);
    state.blowups = n;
    state.rebuild_edges()?;
    Ok(Some(TraceStep {
        step: n,
        reason,
        point: p.germ.to_string(),
        chart_a: chart_a.to_string(),
        chart_b: chart_b.to_string(),
        cycle: state.graph.cycle(e).name.clone(),
        multiplicity: m,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::parse_germ;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn roots() {
        // (t+1)^2 (t-3) t
        let r = integer_roots(&ints(&[0, -3, -5, -1, 1])).unwrap().unwrap();
        assert_eq!(r, vec![(BigInt::from(-1), 2), (BigInt::from(3), 1)]);
        assert_eq!(integer_roots(&ints(&[1, 0, 1])).unwrap(), None);
        assert_eq!(integer_roots(&ints(&[5])).unwrap(), Some(vec![]));
        assert_eq!(integer_roots(&ints(&[-2, 0, 1])).unwrap(), None);
    }

    #[test]
    fn first_blowups_of_the_235_germ() {
        let mut s = ResolutionState::new(&parse_germ("y^3+z^5").unwrap()).unwrap();
        let t = detect_targets(&s);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].reason, TargetReason::SingularBranch);
        let step = blow_up(&mut s, 0, None).unwrap().unwrap();
        assert_eq!(step.multiplicity, 3);
        assert_eq!(step.chart_b, "z^3(p_1^3+z^2)");
        assert_eq!(s.points.len(), 1);

        blow_up(&mut s, 0, None).unwrap();
        let t = detect_targets(&s);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].reason, TargetReason::Tangency);
    }

    #[test]
    fn unit_germ_is_a_no_op() {
        let mut s = ResolutionState::new(&parse_germ("1+y").unwrap()).unwrap();
        assert!(s.points.is_empty());
        s.points.push(ChartPoint { germ: parse_germ("1+y").unwrap(), u_comp: None, v_comp: None });
        assert_eq!(blow_up(&mut s, 0, None).unwrap(), None);
        assert!(matches!(blow_up(&mut s, 5, None), Err(ResolutionError::NoSuchPoint(5))));
    }

    #[test]
    fn irrational_slopes_are_unsupported() {
        let mut s = ResolutionState::new(&parse_germ("y^2+z^2").unwrap()).unwrap();
        assert!(matches!(blow_up(&mut s, 0, None), Err(ResolutionError::Unsupported(_))));
    }
}
