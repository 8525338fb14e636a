use std::f64::consts::PI;

use super::MeshError;

/// Triangle on a round sphere of radius `radius`, given by its interior angles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeodesicTriangle {
    pub angles: [f64; 3],
    pub radius: f64,
}

impl GeodesicTriangle {
    pub fn new(alpha: f64, beta: f64, gamma: f64, radius: f64) -> Result<Self, MeshError> {
        for a in [alpha, beta, gamma] {
            if !(a > 0.0 && a < PI) {
                return Err(MeshError::InvalidTriangle(format!("angle {a} outside (0, pi)")));
            }
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(MeshError::InvalidTriangle(format!("radius {radius} must be positive")));
        }
        Ok(Self {
            angles: [alpha, beta, gamma],
            radius,
        })
    }
}

/// Area `R² (α + β + γ - π)` of a spherical triangle.
pub fn spherical_excess(t: &GeodesicTriangle) -> Result<f64, MeshError> {
    let sum: f64 = t.angles.iter().sum();
    if sum <= PI {
        return Err(MeshError::NotSpherical { sum });
    }
    Ok(t.radius * t.radius * (sum - PI))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn octant() {
        let t = GeodesicTriangle::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2, 1.0).unwrap();
        assert!((spherical_excess(&t).unwrap() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn eight_octants_cover_the_sphere() {
        let r = 3.0;
        let t = GeodesicTriangle::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2, r).unwrap();
        let total = 8.0 * spherical_excess(&t).unwrap();
        assert!((total - 4.0 * PI * r * r).abs() < 1e-12);
    }

    #[test]
    fn octant_split_is_additive() {
        // bisect the octant through the pole vertex: the geodesic meets the
        // equator at a right angle, giving two (π/4, π/2, π/2) triangles
        let whole = GeodesicTriangle::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2, 1.0).unwrap();
        let half = GeodesicTriangle::new(PI / 4.0, FRAC_PI_2, FRAC_PI_2, 1.0).unwrap();
        let sum = 2.0 * spherical_excess(&half).unwrap();
        assert!((sum - spherical_excess(&whole).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn planar_limit_and_errors() {
        let eps = 1e-9;
        let t = GeodesicTriangle::new(PI / 3.0, PI / 3.0, PI / 3.0 + eps, 1.0).unwrap();
        let a = spherical_excess(&t).unwrap();
        assert!(a > 0.0 && a < 1e-8);
        let flat = GeodesicTriangle::new(PI / 3.0, PI / 3.0, PI / 3.0 - eps, 1.0).unwrap();
        assert!(matches!(spherical_excess(&flat), Err(MeshError::NotSpherical { .. })));
        assert!(GeodesicTriangle::new(PI, 1.0, 1.0, 1.0).is_err());
        assert!(GeodesicTriangle::new(1.0, 1.0, 1.0, 0.0).is_err());
    }
}
