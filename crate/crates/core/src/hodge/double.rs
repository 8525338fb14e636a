use crate::mesh::SimplicialSurface;

use super::HodgeError;

/// Two copies of a bounded surface glued along the boundary.
#[derive(Clone, Debug)]
pub struct DoubledSurface {
    pub surface: SimplicialSurface,
    /// Vertex permutation swapping the two copies; fixes boundary vertices.
    pub involution: Vec<usize>,
    pub base: SimplicialSurface,
}

impl DoubledSurface {
    /// Vertices of the doubled surface that belong to the first copy
    /// (boundary vertices included).
    pub fn base_vertex_count(&self) -> usize {
        self.base.num_vertices()
    }
}

/// Glue `base` to a mirrored copy of itself along the boundary.
///
/// The second copy has reversed face orientation so the result is oriented;
/// its interior vertices are displaced by -1 in z so that no face of the
/// double is degenerate.
pub fn double_surface(base: &SimplicialSurface) -> Result<DoubledSurface, HodgeError> {
    if base.is_closed() {
        return Err(HodgeError::ClosedInput);
    }
    let on_boundary = base.boundary_vertices();
    let nv = base.num_vertices();
    let mut vertices = base.vertices().to_vec();
    let mut mirror = vec![0usize; nv];
    for v in 0..nv {
        if on_boundary[v] {
            mirror[v] = v;
        } else {
            let p = base.vertices()[v];
            mirror[v] = vertices.len();
            vertices.push([p[0], p[1], p[2] - 1.0]);
        }
    }
    let mut triangles = base.triangles().to_vec();
    for t in base.triangles() {
        triangles.push([mirror[t[0]], mirror[t[2]], mirror[t[1]]]);
    }
    let mut involution: Vec<usize> = (0..vertices.len()).collect();
    for v in 0..nv {
        involution[v] = mirror[v];
        involution[mirror[v]] = v;
    }
    let surface = SimplicialSurface::new(vertices, triangles)
        .unwrap_or_else(|e| unreachable!("doubling a valid surface produced {e}"));
    Ok(DoubledSurface {
        surface,
        involution,
        base: base.clone(),
    })
}
