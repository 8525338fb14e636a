//! Oriented triangle meshes: Euler characteristic, angle defects,
//! spherical excess and the two subdivision moves.

mod generators;
mod off;
mod spherical;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use thiserror::Error;

pub use generators::{holed_rectangle, icosahedron, icosphere, octahedron, tetrahedron, two_disjoint_triangles};
pub use off::{parse_off, read_off, write_off};
pub use spherical::{spherical_excess, GeodesicTriangle};

pub type Point3 = [f64; 3];

#[derive(Debug, Error, PartialEq)]
pub enum MeshError {
    #[error("triangle {face} references vertex {vertex}, but only {count} vertices exist")]
    VertexOutOfRange { face: usize, vertex: usize, count: usize },
    #[error("triangle {face} repeats a vertex index")]
    DegenerateTriangle { face: usize },
    #[error("triangle {face} has collinear vertex positions")]
    CollinearTriangle { face: usize },
    #[error("vertex {vertex} is not used by any triangle")]
    IsolatedVertex { vertex: usize },
    #[error("edge ({a},{b}) is shared by {count} triangles")]
    NonManifoldEdge { a: usize, b: usize, count: usize },
    #[error("edge ({a},{b}) is traversed in the same direction by both incident triangles")]
    InconsistentOrientation { a: usize, b: usize },
    #[error("boundary is not a union of disjoint simple cycles at vertex {vertex}")]
    BoundaryNotSimple { vertex: usize },
    #[error("vertex {vertex} lies on the boundary")]
    BoundaryVertex { vertex: usize },
    #[error("vertex {vertex} does not exist")]
    NoSuchVertex { vertex: usize },
    #[error("zero-length edge at vertex {vertex}")]
    ZeroLengthEdge { vertex: usize },
    #[error("surface has {loops} boundary loop(s); a closed surface is required")]
    NotClosed { loops: usize },
    #[error("edge ({a},{b}) does not exist")]
    NoSuchEdge { a: usize, b: usize },
    #[error("face {face} does not exist")]
    NoSuchFace { face: usize },
    #[error("invalid geodesic triangle: {0}")]
    InvalidTriangle(String),
    #[error("angle sum {sum} does not exceed pi; not a spherical triangle")]
    NotSpherical { sum: f64 },
    #[error("OFF parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("I/O error: {0}")]
    Io(String),
}

/// Unordered vertex pair, stored with the smaller index first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }
}

/// Oriented triangulated surface, closed or with boundary.
///
/// Construction validates the manifold and orientation invariants; after that
/// the surface is immutable.
#[derive(Clone, Debug)]
pub struct SimplicialSurface {
    vertices: Vec<Point3>,
    triangles: Vec<[usize; 3]>,
    edges: Vec<Edge>,
    edge_faces: Vec<Vec<usize>>,
    edge_index: BTreeMap<Edge, usize>,
}

impl SimplicialSurface {
    pub fn new(vertices: Vec<Point3>, triangles: Vec<[usize; 3]>) -> Result<Self, MeshError> {
        let count = vertices.len();
        let mut used = vec![false; count];
        for (f, t) in triangles.iter().enumerate() {
            for &v in t {
                if v >= count {
                    return Err(MeshError::VertexOutOfRange { face: f, vertex: v, count });
                }
                used[v] = true;
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(MeshError::DegenerateTriangle { face: f });
            }
            if is_collinear(&vertices[t[0]], &vertices[t[1]], &vertices[t[2]]) {
                return Err(MeshError::CollinearTriangle { face: f });
            }
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(MeshError::IsolatedVertex { vertex: v });
        }

        // directed half-edges per unordered edge
        let mut incidence: BTreeMap<Edge, Vec<(usize, usize, usize)>> = BTreeMap::new();
        for (f, t) in triangles.iter().enumerate() {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                incidence.entry(Edge::new(a, b)).or_default().push((f, a, b));
            }
        }
        let mut edges = Vec::with_capacity(incidence.len());
        let mut edge_faces = Vec::with_capacity(incidence.len());
        let mut boundary_out = vec![0usize; count];
        let mut boundary_in = vec![0usize; count];
        for (edge, halves) in &incidence {
            match halves.as_slice() {
                [(_, a, b)] => {
                    boundary_out[*a] += 1;
                    boundary_in[*b] += 1;
                }
                [(_, a1, _), (_, a2, _)] => {
                    if a1 == a2 {
                        return Err(MeshError::InconsistentOrientation { a: edge.0, b: edge.1 });
                    }
                }
                _ => {
                    return Err(MeshError::NonManifoldEdge {
                        a: edge.0,
                        b: edge.1,
                        count: halves.len(),
                    })
                }
            }
            edges.push(*edge);
            edge_faces.push(halves.iter().map(|h| h.0).collect());
        }
        for v in 0..count {
            if boundary_out[v] > 1 || boundary_in[v] != boundary_out[v] {
                return Err(MeshError::BoundaryNotSimple { vertex: v });
            }
        }
        let edge_index = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        Ok(Self {
            vertices,
            triangles,
            edges,
            edge_faces,
            edge_index,
        })
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Edges in sorted order; an edge's position here is its index.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&Edge::new(a, b)).copied()
    }

    /// Faces incident to edge `e` (one for boundary edges, two otherwise).
    pub fn edge_faces(&self, e: usize) -> &[usize] {
        &self.edge_faces[e]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_boundary_edge(&self, e: usize) -> bool {
        self.edge_faces[e].len() == 1
    }

    pub fn is_closed(&self) -> bool {
        self.edge_faces.iter().all(|f| f.len() == 2)
    }

    pub fn boundary_vertices(&self) -> Vec<bool> {
        let mut on = vec![false; self.vertices.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            if self.is_boundary_edge(e) {
                on[edge.0] = true;
                on[edge.1] = true;
            }
        }
        on
    }

    /// Boundary cycles as vertex sequences, each traversed in the direction
    /// induced by the surface orientation. Loops start at their smallest vertex
    /// and are listed by that vertex.
    pub fn boundary_loops(&self) -> Vec<Vec<usize>> {
        let mut next = BTreeMap::new();
        for (e, faces) in self.edge_faces.iter().enumerate() {
            if faces.len() == 1 {
                let t = self.triangles[faces[0]];
                let edge = self.edges[e];
                for k in 0..3 {
                    let (a, b) = (t[k], t[(k + 1) % 3]);
                    if Edge::new(a, b) == edge {
                        next.insert(a, b);
                    }
                }
            }
        }
        let mut loops = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for &start in next.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut cur = next[&start];
            while cur != start {
                cycle.push(cur);
                seen.insert(cur);
                cur = next[&cur];
            }
            loops.push(cycle);
        }
        loops
    }

    /// Interior angle of triangle `face` at its corner `corner` (0..3).
    pub fn corner_angle(&self, face: usize, corner: usize) -> Result<f64, MeshError> {
        let t = self.triangles[face];
        let p = self.vertices[t[corner]];
        let a = sub(&self.vertices[t[(corner + 1) % 3]], &p);
        let b = sub(&self.vertices[t[(corner + 2) % 3]], &p);
        let (na, nb) = (norm(&a), norm(&b));
        if na == 0.0 || nb == 0.0 {
            return Err(MeshError::ZeroLengthEdge { vertex: t[corner] });
        }
        Ok((dot(&a, &b) / (na * nb)).clamp(-1.0, 1.0).acos())
    }
}

/// `V - E + F`.
pub fn euler_characteristic(surface: &SimplicialSurface) -> i64 {
    surface.num_vertices() as i64 - surface.num_edges() as i64 + surface.num_faces() as i64
}

/// `2π` minus the sum of the incident corner angles at an interior vertex.
pub fn angle_defect(surface: &SimplicialSurface, vertex: usize) -> Result<f64, MeshError> {
    if vertex >= surface.num_vertices() {
        return Err(MeshError::NoSuchVertex { vertex });
    }
    if surface.boundary_vertices()[vertex] {
        return Err(MeshError::BoundaryVertex { vertex });
    }
    let mut total = 0.0;
    for (f, t) in surface.triangles().iter().enumerate() {
        if let Some(corner) = t.iter().position(|&v| v == vertex) {
            total += surface.corner_angle(f, corner)?;
        }
    }
    Ok(2.0 * PI - total)
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct DefectSum {
    pub defect_sum: f64,
    pub two_pi_chi: f64,
    pub residual: f64,
}

/// Total angle defect of a closed surface against `2π χ`.
pub fn defect_sum_check(surface: &SimplicialSurface) -> Result<DefectSum, MeshError> {
    if !surface.is_closed() {
        return Err(MeshError::NotClosed {
            loops: surface.boundary_loops().len(),
        });
    }
    // accumulate per vertex in index order so the sum is reproducible
    let mut corner_sums = vec![0.0; surface.num_vertices()];
    for (f, t) in surface.triangles().iter().enumerate() {
        for (corner, &v) in t.iter().enumerate() {
            corner_sums[v] += surface.corner_angle(f, corner)?;
        }
    }
    let defect_sum: f64 = corner_sums.iter().map(|s| 2.0 * PI - s).sum();
    let two_pi_chi = 2.0 * PI * euler_characteristic(surface) as f64;
    Ok(DefectSum {
        defect_sum,
        two_pi_chi,
        residual: (defect_sum - two_pi_chi).abs(),
    })
}

/// A combinatorial refinement that leaves χ unchanged.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subdivision {
    /// Insert the midpoint of edge `(a, b)` and split both incident faces.
    EdgeSplit { a: usize, b: usize },
    /// Insert the centroid of a face and join it to the three corners.
    FaceSplit { face: usize },
}

pub fn subdivide(surface: &SimplicialSurface, mv: Subdivision) -> Result<SimplicialSurface, MeshError> {
    let mut vertices = surface.vertices.clone();
    let mut triangles = Vec::with_capacity(surface.num_faces() + 2);
    match mv {
        Subdivision::EdgeSplit { a, b } => {
            let e = surface.edge_index(a, b).ok_or(MeshError::NoSuchEdge { a, b })?;
            let m = vertices.len();
            vertices.push(midpoint(&surface.vertices[a], &surface.vertices[b]));
            let split = surface.edge_faces(e);
            for (f, &t) in surface.triangles.iter().enumerate() {
                if !split.contains(&f) {
                    triangles.push(t);
                    continue;
                }
                // rotate so the split edge is t[0] -> t[1]
                let k = (0..3)
                    .find(|&k| Edge::new(t[k], t[(k + 1) % 3]) == Edge::new(a, b))
                    .expect("incident face contains the edge");
                let (p, q, r) = (t[k], t[(k + 1) % 3], t[(k + 2) % 3]);
                triangles.push([p, m, r]);
                triangles.push([m, q, r]);
            }
        }
        Subdivision::FaceSplit { face } => {
            let t = *surface
                .triangles
                .get(face)
                .ok_or(MeshError::NoSuchFace { face })?;
            let c = vertices.len();
            let [p, q, r] = t.map(|v| surface.vertices[v]);
            vertices.push([
                (p[0] + q[0] + r[0]) / 3.0,
                (p[1] + q[1] + r[1]) / 3.0,
                (p[2] + q[2] + r[2]) / 3.0,
            ]);
            for (f, &tri) in surface.triangles.iter().enumerate() {
                if f == face {
                    triangles.push([t[0], t[1], c]);
                    triangles.push([t[1], t[2], c]);
                    triangles.push([t[2], t[0], c]);
                } else {
                    triangles.push(tri);
                }
            }
        }
    }
    SimplicialSurface::new(vertices, triangles)
}

fn sub(a: &Point3, b: &Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: &Point3, b: &Point3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: &Point3) -> f64 {
    dot(a, a).sqrt()
}

fn cross(a: &Point3, b: &Point3) -> Point3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn midpoint(a: &Point3, b: &Point3) -> Point3 {
    [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0, (a[2] + b[2]) / 2.0]
}

fn is_collinear(p: &Point3, q: &Point3, r: &Point3) -> bool {
    let u = sub(q, p);
    let v = sub(r, p);
    let scale = dot(&u, &u).max(dot(&v, &v));
    norm(&cross(&u, &v)) <= 1e-12 * scale
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn octahedron_counts() {
        let s = octahedron();
        assert_eq!((s.num_vertices(), s.num_edges(), s.num_faces()), (6, 12, 8));
        assert_eq!(euler_characteristic(&s), 2);
        assert!(s.is_closed());
    }

    #[test]
    fn regular_solid_defects() {
        let t = tetrahedron();
        assert!(approx(angle_defect(&t, 0).unwrap(), PI));
        let o = octahedron();
        assert!(approx(angle_defect(&o, 3).unwrap(), 2.0 * PI / 3.0));
        let i = icosahedron();
        assert!(approx(angle_defect(&i, 7).unwrap(), PI / 3.0));
    }

    #[test]
    fn defect_sums_on_platonic_solids() {
        for s in [tetrahedron(), octahedron(), icosahedron()] {
            let d = defect_sum_check(&s).unwrap();
            assert!(approx(d.defect_sum, 4.0 * PI));
            assert!(d.residual <= 1e-9);
        }
    }

    #[test]
    fn boundary_vertex_has_no_defect() {
        let disk = holed_rectangle(0, 1);
        let on = disk.boundary_vertices();
        let v = on.iter().position(|&b| b).unwrap();
        assert_eq!(angle_defect(&disk, v), Err(MeshError::BoundaryVertex { vertex: v }));
        assert!(matches!(defect_sum_check(&disk), Err(MeshError::NotClosed { loops: 1 })));
    }

    #[test]
    fn rejects_non_manifold_edge() {
        let v = vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]];
        let t = vec![[0, 1, 2], [1, 0, 3], [0, 1, 4]];
        assert_eq!(
            SimplicialSurface::new(v, t).unwrap_err(),
            MeshError::NonManifoldEdge { a: 0, b: 1, count: 3 }
        );
    }

    #[test]
    fn rejects_inconsistent_orientation() {
        let v = vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, -1.0, 0.0]];
        let t = vec![[0, 1, 2], [0, 1, 3]];
        assert_eq!(
            SimplicialSurface::new(v, t).unwrap_err(),
            MeshError::InconsistentOrientation { a: 0, b: 1 }
        );
    }

    #[test]
    fn rejects_degenerate_and_collinear() {
        let v = vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0]];
        assert_eq!(
            SimplicialSurface::new(v.clone(), vec![[0, 1, 1]]).unwrap_err(),
            MeshError::DegenerateTriangle { face: 0 }
        );
        assert_eq!(
            SimplicialSurface::new(v, vec![[0, 1, 2]]).unwrap_err(),
            MeshError::CollinearTriangle { face: 0 }
        );
    }

    #[test]
    fn subdivision_moves_keep_chi() {
        let o = octahedron();
        let e = o.edges()[0];
        let split = subdivide(&o, Subdivision::EdgeSplit { a: e.0, b: e.1 }).unwrap();
        assert_eq!((split.num_vertices(), split.num_edges(), split.num_faces()), (7, 15, 10));
        assert_eq!(euler_characteristic(&split), 2);
        let face = subdivide(&o, Subdivision::FaceSplit { face: 3 }).unwrap();
        assert_eq!((face.num_vertices(), face.num_edges(), face.num_faces()), (7, 15, 10));
        assert_eq!(euler_characteristic(&face), 2);
        assert!(face.is_closed());
    }

    #[test]
    fn subdivision_lookup_errors() {
        let o = octahedron();
        assert_eq!(
            subdivide(&o, Subdivision::FaceSplit { face: 99 }).unwrap_err(),
            MeshError::NoSuchFace { face: 99 }
        );
        // 0 and 1 are antipodal on the octahedron
        assert_eq!(
            subdivide(&o, Subdivision::EdgeSplit { a: 0, b: 1 }).unwrap_err(),
            MeshError::NoSuchEdge { a: 0, b: 1 }
        );
    }

    #[test]
    fn boundary_edge_split_stays_valid() {
        let disk = holed_rectangle(1, 1);
        let e = (0..disk.num_edges()).find(|&e| disk.is_boundary_edge(e)).unwrap();
        let Edge(a, b) = disk.edges()[e];
        let s = subdivide(&disk, Subdivision::EdgeSplit { a, b }).unwrap();
        assert_eq!(euler_characteristic(&s), 0);
        assert_eq!(s.boundary_loops().len(), 2);
    }
}
