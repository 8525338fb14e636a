//! OFF reader and writer (triangles only).
//!
//! Layout: `OFF`, then `V F E` (E may be 0; it is recomputed), then V lines of
//! coordinates, then F lines `3 i j k` with zero-based indices. Blank lines
//! and `#` comments are skipped.

use std::fmt::Write as _;
use std::path::Path;

use super::{MeshError, SimplicialSurface};

pub fn parse_off(text: &str) -> Result<SimplicialSurface, MeshError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line: usize, message: &str| MeshError::Parse {
        line,
        message: message.to_string(),
    };

    let (line, header) = lines.next().ok_or_else(|| err(1, "empty file"))?;
    if header != "OFF" {
        return Err(err(line, "expected literal OFF"));
    }
    let (line, counts) = lines.next().ok_or_else(|| err(line + 1, "missing counts line"))?;
    let counts: Vec<usize> = counts
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| err(line, "counts must be nonnegative integers"))?;
    let [nv, nf, _ne] = counts[..] else {
        return Err(err(line, "expected `V F E`"));
    };

    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (line, l) = lines.next().ok_or_else(|| err(0, "unexpected end of file in vertex list"))?;
        let xyz: Vec<f64> = l
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| err(line, "vertex coordinates must be decimal numbers"))?;
        let [x, y, z] = xyz[..] else {
            return Err(err(line, "vertex line needs three coordinates"));
        };
        vertices.push([x, y, z]);
    }
    let mut triangles = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (line, l) = lines.next().ok_or_else(|| err(0, "unexpected end of file in face list"))?;
        let idx: Vec<usize> = l
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| err(line, "face indices must be nonnegative integers"))?;
        let [3, i, j, k] = idx[..] else {
            return Err(err(line, "face line must be `3 i j k`"));
        };
        triangles.push([i, j, k]);
    }
    if let Some((line, _)) = lines.next() {
        return Err(err(line, "trailing data after face list"));
    }
    SimplicialSurface::new(vertices, triangles)
}

pub fn read_off(path: impl AsRef<Path>) -> Result<SimplicialSurface, MeshError> {
    let text = std::fs::read_to_string(path.as_ref()).map_err(|e| MeshError::Io(e.to_string()))?;
    parse_off(&text)
}

pub fn write_off(surface: &SimplicialSurface) -> String {
    let mut out = String::from("OFF\n");
    let _ = writeln!(out, "{} {} {}", surface.num_vertices(), surface.num_faces(), surface.num_edges());
    for p in surface.vertices() {
        let _ = writeln!(out, "{} {} {}", p[0], p[1], p[2]);
    }
    for t in surface.triangles() {
        let _ = writeln!(out, "3 {} {} {}", t[0], t[1], t[2]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{euler_characteristic, icosphere, octahedron};

    #[test]
    fn round_trip_preserves_mesh() {
        for s in [octahedron(), icosphere(1)] {
            let back = parse_off(&write_off(&s)).unwrap();
            assert_eq!(back.vertices(), s.vertices());
            assert_eq!(back.triangles(), s.triangles());
            assert_eq!(euler_characteristic(&back), 2);
        }
    }

    #[test]
    fn edge_count_zero_is_recomputed() {
        let text = "OFF\n# tetra\n4 4 0\n1 1 1\n1 -1 -1\n-1 1 -1\n-1 -1 1\n3 0 1 2\n3 0 3 1\n3 0 2 3\n3 1 3 2\n";
        let s = parse_off(text).unwrap();
        assert_eq!(s.num_edges(), 6);
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(parse_off("PLY\n"), Err(MeshError::Parse { line: 1, .. })));
        assert!(matches!(
            parse_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n4 0 1 2 0\n"),
            Err(MeshError::Parse { line: 6, .. })
        ));
        assert!(matches!(
            parse_off("OFF\n3 1 0\n0 0 0\n1 0 x\n0 1 0\n3 0 1 2\n"),
            Err(MeshError::Parse { line: 4, .. })
        ));
    }
}
