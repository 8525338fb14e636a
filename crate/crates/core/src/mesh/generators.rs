//! Canonical meshes used by the tests and the CLI.

use std::collections::BTreeMap;

use super::{Point3, SimplicialSurface};

fn build(vertices: Vec<Point3>, triangles: Vec<[usize; 3]>) -> SimplicialSurface {
    SimplicialSurface::new(vertices, triangles).expect("generator produced an invalid mesh")
}

/// Regular tetrahedron inscribed in the cube `[-1, 1]^3`.
pub fn tetrahedron() -> SimplicialSurface {
    let v = vec![[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];
    let t = vec![[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]];
    build(v, t)
}

/// Unit octahedron with vertices `±x, ±y, ±z` (indices 0..6 in that order).
pub fn octahedron() -> SimplicialSurface {
    let v = vec![
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    let t = vec![
        [0, 2, 4],
        [2, 1, 4],
        [1, 3, 4],
        [3, 0, 4],
        [2, 0, 5],
        [1, 2, 5],
        [3, 1, 5],
        [0, 3, 5],
    ];
    build(v, t)
}

/// Regular icosahedron on the unit sphere.
pub fn icosahedron() -> SimplicialSurface {
    let (v, t) = icosahedron_raw();
    build(v, t)
}

fn icosahedron_raw() -> (Vec<Point3>, Vec<[usize; 3]>) {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let raw = [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    let v = raw.iter().map(normalize).collect();
    let t = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    (v, t)
}

/// Icosahedron refined `levels` times by 1-to-4 splits, new vertices
/// projected to the unit sphere. Level 0 is the icosahedron.
pub fn icosphere(levels: u32) -> SimplicialSurface {
    let (mut v, mut t) = icosahedron_raw();
    for _ in 0..levels {
        let mut mid: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut next = Vec::with_capacity(t.len() * 4);
        let mut midpoint = |a: usize, b: usize, v: &mut Vec<Point3>| -> usize {
            let key = (a.min(b), a.max(b));
            *mid.entry(key).or_insert_with(|| {
                let p = [
                    (v[a][0] + v[b][0]) / 2.0,
                    (v[a][1] + v[b][1]) / 2.0,
                    (v[a][2] + v[b][2]) / 2.0,
                ];
                v.push(normalize(&p));
                v.len() - 1
            })
        };
        for &[a, b, c] in &t {
            let ab = midpoint(a, b, &mut v);
            let bc = midpoint(b, c, &mut v);
            let ca = midpoint(c, a, &mut v);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        t = next;
    }
    build(v, t)
}

/// Planar rectangle with `holes` square holes, triangulated on a grid.
///
/// Holes have side 1 and are centred on the x-axis at `x = 2i - (holes - 1)`
/// (so two holes sit at `x = ±1`). Every hole is separated from its neighbours
/// and from the outer boundary by a band of width 1. Grid cells have side
/// `0.5 / resolution`. With `holes == 0` the result is a disk `[-1.5, 1.5]^2`.
pub fn holed_rectangle(holes: usize, resolution: usize) -> SimplicialSurface {
    assert!(resolution >= 1, "resolution must be positive");
    let n = resolution;
    let h = 0.5 / n as f64;
    let half_width = if holes == 0 { 1.5 } else { holes as f64 + 0.5 };
    let nx = if holes == 0 { 6 * n } else { 2 * n * (2 * holes + 1) };
    let ny = 6 * n;
    let centers: Vec<f64> = (0..holes)
        .map(|i| 2.0 * i as f64 - (holes as f64 - 1.0))
        .collect();
    let in_hole = |i: usize, j: usize| {
        let cx = -half_width + (i as f64 + 0.5) * h;
        let cy = -1.5 + (j as f64 + 0.5) * h;
        centers.iter().any(|&x| (cx - x).abs() < 0.5 && cy.abs() < 0.5)
    };
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut vertices = Vec::new();
    let mut triangles = Vec::new();
    let mut vid = |i: usize, j: usize, vertices: &mut Vec<Point3>| -> usize {
        *index.entry((j, i)).or_insert_with(|| {
            vertices.push([-half_width + i as f64 * h, -1.5 + j as f64 * h, 0.0]);
            vertices.len() - 1
        })
    };
    for j in 0..ny {
        for i in 0..nx {
            if in_hole(i, j) {
                continue;
            }
            let a = vid(i, j, &mut vertices);
            let b = vid(i + 1, j, &mut vertices);
            let c = vid(i + 1, j + 1, &mut vertices);
            let d = vid(i, j + 1, &mut vertices);
            // alternate diagonals so no corner cell joins two boundary vertices
            if (i + j) % 2 == 0 {
                triangles.push([a, b, c]);
                triangles.push([a, c, d]);
            } else {
                triangles.push([a, b, d]);
                triangles.push([b, c, d]);
            }
        }
    }
    build(vertices, triangles)
}

/// Two triangles with no shared vertex.
pub fn two_disjoint_triangles() -> SimplicialSurface {
    let v = vec![
        [0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [5.0, 0.0, 0.0],
        [6.0, 0.0, 0.0],
        [5.0, 1.0, 0.0],
    ];
    build(v, vec![[0, 1, 2], [3, 4, 5]])
}

fn normalize(p: &Point3) -> Point3 {
    let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    [p[0] / n, p[1] / n, p[2] / n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::euler_characteristic;

    #[test]
    fn icosphere_levels() {
        for level in 0..3 {
            let s = icosphere(level);
            assert_eq!(s.num_faces(), 20 * 4usize.pow(level));
            assert_eq!(euler_characteristic(&s), 2);
        }
    }

    #[test]
    fn holed_rectangles_have_expected_topology() {
        for g in 0..4 {
            for res in 1..3 {
                let s = holed_rectangle(g, res);
                assert_eq!(euler_characteristic(&s), 1 - g as i64, "g={g} res={res}");
                assert_eq!(s.boundary_loops().len(), g + 1);
            }
        }
    }
}
