use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use super::LatticeError;

/// Interior enumeration is attempted only when the bounding box has at most
/// this many lattice points.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

/// Simple lattice polygon with counterclockwise vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolygon {
    vertices: Vec<(i64, i64)>,
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

fn on_segment(p: (i64, i64), a: (i64, i64), b: (i64, i64)) -> bool {
    cross(a, b, p) == 0 && p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

fn segments_meet(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> bool {
    let d1 = cross(c, d, a).signum();
    let d2 = cross(c, d, b).signum();
    let d3 = cross(a, b, c).signum();
    let d4 = cross(a, b, d).signum();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    on_segment(a, c, d) || on_segment(b, c, d) || on_segment(c, a, b) || on_segment(d, a, b)
}

impl LatticePolygon {
    pub fn new(vertices: Vec<(i64, i64)>) -> Result<Self, LatticeError> {
        let n = vertices.len();
        if n < 3 {
            return Err(LatticeError::TooFewVertices(n));
        }
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(LatticeError::RepeatedVertex(i, (i + 1) % n));
            }
        }
        let edge = |i: usize| (vertices[i], vertices[(i + 1) % n]);
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = edge(i);
                let (c, d) = edge(j);
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    // shared endpoint is fine; doubling back along the same line is not
                    let (p, q, r) = if j == i + 1 { (a, b, d) } else { (c, d, b) };
                    let back = cross(p, q, r) == 0
                        && ((q.0 - p.0) as i128 * (r.0 - q.0) as i128 + (q.1 - p.1) as i128 * (r.1 - q.1) as i128) < 0;
                    if back {
                        return Err(LatticeError::SelfIntersecting(i, j));
                    }
                } else if segments_meet(a, b, c, d) {
                    return Err(LatticeError::SelfIntersecting(i, j));
                }
            }
        }
        let poly = Self { vertices };
        let twice = poly.twice_signed_area();
        if twice <= 0 {
            return Err(LatticeError::NotCounterclockwise(twice));
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    /// Shoelace sum `Σ (x_i y_{i+1} - x_{i+1} y_i)`.
    pub fn twice_signed_area(&self) -> i128 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                a.0 as i128 * b.1 as i128 - b.0 as i128 * a.1 as i128
            })
            .sum()
    }

    /// Lattice points on the boundary: `Σ gcd(|Δx|, |Δy|)`.
    pub fn boundary_points(&self) -> BigInt {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                let dx = BigInt::from((b.0 as i128 - a.0 as i128).abs());
                let dy = BigInt::from((b.1 as i128 - a.1 as i128).abs());
                dx.gcd(&dy)
            })
            .sum()
    }

    fn bounding_box_points(&self) -> u128 {
        let (mut x0, mut x1, mut y0, mut y1) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
        for &(x, y) in &self.vertices {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        ((x1 as i128 - x0 as i128 + 1) * (y1 as i128 - y0 as i128 + 1)) as u128
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PickReport {
    #[serde(serialize_with = "ser_display")]
    pub area: BigRational,
    #[serde(serialize_with = "ser_display")]
    pub boundary: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub interior: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub total: BigInt,
    /// Whether the interior count was confirmed by enumeration.
    pub enumerated: bool,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Counts by shoelace area, gcd boundary sums and Pick's identity
/// `I = A - B/2 + 1`, confirmed by enumeration when the bounding box is small.
pub fn pick_count(poly: &LatticePolygon) -> Result<PickReport, LatticeError> {
    let twice = BigInt::from(poly.twice_signed_area());
    let area = BigRational::new(twice.clone(), BigInt::from(2));
    let boundary = poly.boundary_points();
    // 2I = 2A - B + 2
    let interior = (twice - &boundary + BigInt::from(2)) / BigInt::from(2);
    let mut enumerated = false;
    if poly.bounding_box_points() <= ENUMERATION_LIMIT {
        let brute = BigInt::from(count_interior_brute(poly));
        if brute != interior {
            return Err(LatticeError::PickMismatch {
                pick: interior.to_string(),
                enumerated: brute.to_string(),
            });
        }
        enumerated = true;
    }
    let total = &interior + &boundary;
    Ok(PickReport {
        area,
        boundary,
        interior,
        total,
        enumerated,
    })
}

/// Interior lattice points by testing every point of the bounding box.
pub fn count_interior_brute(poly: &LatticePolygon) -> u64 {
    let v = poly.vertices();
    let n = v.len();
    let xs = v.iter().map(|p| p.0);
    let ys = v.iter().map(|p| p.1);
    let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
    let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
    let mut count = 0;
    for x in x0..=x1 {
        for y in y0..=y1 {
            let p = (x, y);
            if (0..n).any(|i| on_segment(p, v[i], v[(i + 1) % n])) {
                continue;
            }
            // crossing number with a half-open rule on edge endpoints
            let mut inside = false;
            for i in 0..n {
                let (a, b) = (v[i], v[(i + 1) % n]);
                if (a.1 > y) != (b.1 > y) {
                    let c = cross(a, b, p);
                    // p is left of a->b when c > 0; for an upward edge that is a crossing to the right
                    if (b.1 > a.1 && c > 0) || (b.1 < a.1 && c < 0) {
                        inside = !inside;
                    }
                }
            }
            if inside {
                count += 1;
            }
        }
    }
    count
}

/// One `x,y` integer pair per line; blank lines are skipped.
pub fn parse_polygon_csv(text: &str) -> Result<LatticePolygon, LatticeError> {
    let mut vertices = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').map(str::trim).collect();
        let [x, y] = parts[..] else {
            return Err(LatticeError::Parse(format!("line {}: expected `x,y`", no + 1)));
        };
        let parse = |s: &str| {
            s.parse::<i64>()
                .map_err(|_| LatticeError::Parse(format!("line {}: `{s}` is not an integer", no + 1)))
        };
        vertices.push((parse(x)?, parse(y)?));
    }
    LatticePolygon::new(vertices)
}
