use std::f64::consts::PI;

use indexkit::hodge::double_surface;
use indexkit::mesh::{
    angle_defect, defect_sum_check, euler_characteristic, holed_rectangle, icosahedron, icosphere, octahedron,
    parse_off, spherical_excess, subdivide, tetrahedron, write_off, GeodesicTriangle, MeshError, SimplicialSurface,
    Subdivision,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus() -> Vec<(&'static str, SimplicialSurface)> {
    vec![
        ("tetrahedron", tetrahedron()),
        ("octahedron", octahedron()),
        ("icosahedron", icosahedron()),
        ("icosphere-2", icosphere(2)),
        ("torus", double_surface(&holed_rectangle(1, 1)).unwrap().surface),
        ("genus-2", double_surface(&holed_rectangle(2, 1)).unwrap().surface),
    ]
}

#[test]
fn defect_sums_match_two_pi_chi() {
    for (name, s) in corpus() {
        let d = defect_sum_check(&s).unwrap();
        assert!(d.residual <= 1e-9, "{name}: {d:?}");
    }
    let g2 = double_surface(&holed_rectangle(2, 1)).unwrap().surface;
    assert!((defect_sum_check(&g2).unwrap().defect_sum + 4.0 * PI).abs() < 1e-9);
    assert!(matches!(defect_sum_check(&holed_rectangle(1, 1)), Err(MeshError::NotClosed { .. })));
}

#[test]
fn regular_vertex_defects() {
    for (s, expected) in [(tetrahedron(), PI), (octahedron(), 2.0 * PI / 3.0), (icosahedron(), PI / 3.0)] {
        for v in 0..s.num_vertices() {
            assert!((angle_defect(&s, v).unwrap() - expected).abs() < 1e-12);
        }
    }
}

#[test]
fn counts_of_known_surfaces() {
    let o = octahedron();
    assert_eq!((o.num_vertices(), o.num_edges(), o.num_faces()), (6, 12, 8));
    assert_eq!(euler_characteristic(&o), 2);
    let g2 = double_surface(&holed_rectangle(2, 1)).unwrap().surface;
    assert_eq!(euler_characteristic(&g2), -2);
}

/// Area of the spherical triangle spanned by unit vectors `a, b, c` on the
/// sphere of radius `r`, by midpoint quadrature over (θ, φ).
fn quadrature_area(a: [f64; 3], b: [f64; 3], c: [f64; 3], r: f64, n: usize) -> f64 {
    let cross = |u: [f64; 3], v: [f64; 3]| [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
    let dot = |u: [f64; 3], v: [f64; 3]| u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    // inward normals of the three great circles
    let planes = [(cross(a, b), c), (cross(b, c), a), (cross(c, a), b)];
    let planes: Vec<[f64; 3]> = planes
        .iter()
        .map(|&(nrm, other)| if dot(nrm, other) > 0.0 { nrm } else { [-nrm[0], -nrm[1], -nrm[2]] })
        .collect();
    let (dt, dp) = (PI / n as f64, 2.0 * PI / (2 * n) as f64);
    let mut area = 0.0;
    for i in 0..n {
        let theta = (i as f64 + 0.5) * dt;
        for j in 0..2 * n {
            let phi = (j as f64 + 0.5) * dp;
            let x = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
            if planes.iter().all(|&p| dot(p, x) >= 0.0) {
                area += r * r * theta.sin() * dt * dp;
            }
        }
    }
    area
}

#[test]
fn spherical_excess_against_quadrature() {
    // a face of the regular tetrahedron projected to the sphere has all angles 2π/3
    let s = 1.0 / 3f64.sqrt();
    let (a, b, c) = ([s, s, s], [s, -s, -s], [-s, s, -s]);
    let oracle = quadrature_area(a, b, c, 2.0, 1200);
    let t = GeodesicTriangle::new(2.0 * PI / 3.0, 2.0 * PI / 3.0, 2.0 * PI / 3.0, 2.0).unwrap();
    let excess = spherical_excess(&t).unwrap();
    assert!((excess - 4.0 * PI).abs() < 1e-12);
    assert!((excess - oracle).abs() / excess < 5e-3, "{excess} vs {oracle}");

    // the octant
    let oracle = quadrature_area([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], 1.0, 1200);
    let oct = spherical_excess(&GeodesicTriangle::new(PI / 2.0, PI / 2.0, PI / 2.0, 1.0).unwrap()).unwrap();
    assert!((oct - PI / 2.0).abs() < 1e-12);
    assert!((oct - oracle).abs() / oct < 5e-3);
}

#[test]
fn planar_limit_and_invalid_triangles() {
    let eps = 1e-9;
    let t = GeodesicTriangle::new(PI / 3.0, PI / 3.0, PI / 3.0 + eps, 1.0).unwrap();
    let a = spherical_excess(&t).unwrap();
    assert!(a > 0.0 && a < 1e-8);
    let flat = GeodesicTriangle::new(PI / 3.0, PI / 3.0, PI / 3.0, 1.0).unwrap();
    assert!(matches!(spherical_excess(&flat), Err(MeshError::NotSpherical { .. })));
}

fn random_move(s: &SimplicialSurface, rng: &mut ChaCha8Rng) -> Subdivision {
    if rng.gen_bool(0.5) {
        let e = s.edges()[rng.gen_range(0..s.num_edges())];
        Subdivision::EdgeSplit { a: e.0, b: e.1 }
    } else {
        Subdivision::FaceSplit { face: rng.gen_range(0..s.num_faces()) }
    }
}

#[test]
fn chi_invariant_under_a_thousand_moves() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut s = octahedron();
    for _ in 0..1000 {
        s = subdivide(&s, random_move(&s, &mut rng)).unwrap();
        assert_eq!(euler_characteristic(&s), 2);
    }
    assert_eq!(s.num_vertices(), 1006);
    assert!(defect_sum_check(&s).unwrap().residual < 1e-9);

    let mut b = holed_rectangle(2, 1);
    for _ in 0..200 {
        b = subdivide(&b, random_move(&b, &mut rng)).unwrap();
        assert_eq!(euler_characteristic(&b), -1);
    }
}

#[test]
fn off_round_trip() {
    for (name, s) in corpus() {
        let text = write_off(&s);
        let back = parse_off(&text).unwrap();
        assert_eq!(back.triangles(), s.triangles(), "{name}");
        assert_eq!(back.vertices(), s.vertices(), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_subdivision_sequences_keep_chi(seed in any::<u64>(), steps in 1usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = icosahedron();
        for _ in 0..steps {
            s = subdivide(&s, random_move(&s, &mut rng)).unwrap();
        }
        prop_assert_eq!(euler_characteristic(&s), 2);
        prop_assert!(defect_sum_check(&s).unwrap().residual < 1e-9);
    }

    #[test]
    fn excess_is_additive_on_octant_splits(t in 0.05f64..0.95) {
        // split the octant by the geodesic from the north pole to a point on the equator
        let phi = t * std::f64::consts::FRAC_PI_2;
        let whole = spherical_excess(&GeodesicTriangle::new(PI / 2.0, PI / 2.0, PI / 2.0, 1.0).unwrap()).unwrap();
        let left = spherical_excess(&GeodesicTriangle::new(phi, PI / 2.0, PI / 2.0, 1.0).unwrap()).unwrap();
        let right = spherical_excess(&GeodesicTriangle::new(PI / 2.0 - phi, PI / 2.0, PI / 2.0, 1.0).unwrap()).unwrap();
        prop_assert!((left + right - whole).abs() < 1e-12);
    }
}
