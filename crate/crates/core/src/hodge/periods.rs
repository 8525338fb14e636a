//! Circulations of harmonic 1-cochains around the holes of a planar domain.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::mesh::SimplicialSurface;

use super::{build_complex, combinatorial_laplacian, BoundaryCondition, HodgeError};

/// Periods of a harmonic basis around the hole loops.
#[derive(Clone, Debug)]
pub struct PeriodMatrix {
    /// Inner boundary cycles, each oriented counterclockwise in the plane.
    pub holes: Vec<Vec<usize>>,
    /// `exact[i][j]` is the circulation of basis form `j` around hole `i`.
    pub exact: Vec<Vec<BigRational>>,
    pub values: Vec<Vec<f64>>,
}

fn signed_area(surface: &SimplicialSurface, cycle: &[usize]) -> f64 {
    let p = surface.vertices();
    let n = cycle.len();
    (0..n)
        .map(|i| {
            let (a, b) = (p[cycle[i]], p[cycle[(i + 1) % n]]);
            a[0] * b[1] - b[0] * a[1]
        })
        .sum::<f64>()
        / 2.0
}

fn check_planar(surface: &SimplicialSurface) -> Result<(), HodgeError> {
    let z0 = surface.vertices().first().map_or(0.0, |p| p[2]);
    match surface.vertices().iter().position(|p| (p[2] - z0).abs() > 1e-12) {
        Some(vertex) => Err(HodgeError::NotPlanar { vertex }),
        None => Ok(()),
    }
}

/// Inner boundary cycles of a planar domain, oriented counterclockwise.
///
/// The outer boundary is the loop with the largest absolute signed area.
pub fn hole_loops(surface: &SimplicialSurface) -> Result<Vec<Vec<usize>>, HodgeError> {
    check_planar(surface)?;
    let loops = surface.boundary_loops();
    let Some(outer) = loops
        .iter()
        .enumerate()
        .max_by(|a, b| signed_area(surface, a.1).abs().total_cmp(&signed_area(surface, b.1).abs()))
        .map(|(i, _)| i)
    else {
        return Ok(Vec::new());
    };
    Ok(loops
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| i != outer)
        .map(|(_, mut cycle)| {
            if signed_area(surface, &cycle) < 0.0 {
                cycle.reverse();
            }
            cycle
        })
        .collect())
}

/// Edge sign for traversing `a -> b` relative to the stored orientation
/// (smaller index to larger).
fn traversal(surface: &SimplicialSurface, a: usize, b: usize) -> (usize, i32) {
    let e = surface.edge_index(a, b).expect("loop edge exists");
    (e, if a < b { 1 } else { -1 })
}

/// Sum of a 1-cochain along a closed vertex loop.
pub fn loop_circulation(surface: &SimplicialSurface, cochain: &[f64], cycle: &[usize]) -> f64 {
    let n = cycle.len();
    (0..n)
        .map(|i| {
            let (e, s) = traversal(surface, cycle[i], cycle[(i + 1) % n]);
            s as f64 * cochain[e]
        })
        .sum()
}

/// Midpoint-rule discretisation of a planar vector field as a 1-cochain:
/// the value on edge `a -> b` is `V(mid) · (p_b - p_a)`.
pub fn sample_one_form(surface: &SimplicialSurface, field: impl Fn(f64, f64) -> (f64, f64)) -> Vec<f64> {
    let p = surface.vertices();
    surface
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (p[e.0], p[e.1]);
            let (vx, vy) = field((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0);
            vx * (b[0] - a[0]) + vy * (b[1] - a[1])
        })
        .collect()
}

/// Period matrix of the harmonic 1-cochains (absolute conditions) of a
/// planar domain with holes.
///
/// The harmonic space is the exact rational null space of `Δ₁`. A
/// rank-deficient result is an error, never a silent success.
pub fn circulation_periods(base: &SimplicialSurface) -> Result<PeriodMatrix, HodgeError> {
    let holes = hole_loops(base)?;
    let g = holes.len();
    if g == 0 {
        return Ok(PeriodMatrix {
            holes,
            exact: Vec::new(),
            values: Vec::new(),
        });
    }
    let complex = build_complex(base, BoundaryCondition::Absolute)?;
    let lap = combinatorial_laplacian(&complex, 1)?;
    let basis = lap.nullspace();
    if basis.len() != g {
        return Err(HodgeError::HarmonicDimension {
            found: basis.len(),
            expected: g,
        });
    }
    let mut exact = vec![vec![BigRational::zero(); g]; g];
    for (i, cycle) in holes.iter().enumerate() {
        let n = cycle.len();
        for k in 0..n {
            let (e, s) = traversal(base, cycle[k], cycle[(k + 1) % n]);
            for (j, form) in basis.iter().enumerate() {
                if s > 0 {
                    exact[i][j] += &form[e];
                } else {
                    exact[i][j] -= &form[e];
                }
            }
        }
    }
    let rank = rational_rank(&exact);
    if rank < g {
        return Err(HodgeError::SingularPeriods { rank, holes: g });
    }
    let values = exact
        .iter()
        .map(|row| row.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect())
        .collect();
    Ok(PeriodMatrix { holes, exact, values })
}

fn rational_rank(m: &[Vec<BigRational>]) -> usize {
    let mut a = m.to_vec();
    let (nr, nc) = (a.len(), a.first().map_or(0, Vec::len));
    let mut rank = 0;
    for col in 0..nc {
        let Some(p) = (rank..nr).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..nr {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &a[rank][col];
            for j in col..nc {
                let v = &f * &a[rank][j];
                a[i][j] -= v;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::holed_rectangle;
    use std::f64::consts::PI;

    #[test]
    fn disk_has_empty_period_matrix() {
        let p = circulation_periods(&holed_rectangle(0, 1)).unwrap();
        assert!(p.values.is_empty() && p.holes.is_empty());
    }

    #[test]
    fn hole_loops_are_counterclockwise() {
        let s = holed_rectangle(2, 1);
        let holes = hole_loops(&s).unwrap();
        assert_eq!(holes.len(), 2);
        for h in &holes {
            assert!(signed_area(&s, h) > 0.0);
        }
    }

    #[test]
    fn angular_field_winds_once_around_annulus_hole() {
        let s = holed_rectangle(1, 1);
        let holes = hole_loops(&s).unwrap();
        let v = sample_one_form(&s, |x, y| (-y / (2.0 * PI * (x * x + y * y)), x / (2.0 * PI * (x * x + y * y))));
        let w = loop_circulation(&s, &v, &holes[0]);
        assert!((w - 1.0).abs() < 0.05, "winding {w}");
    }

    #[test]
    fn annulus_period_is_nonzero() {
        let p = circulation_periods(&holed_rectangle(1, 1)).unwrap();
        assert_eq!(p.values.len(), 1);
        assert!(p.values[0][0].abs() > 1e-9);
    }
}
