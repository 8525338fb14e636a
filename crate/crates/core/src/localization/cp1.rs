use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{KPoly, LocalizationError};

pub const MIN_QUADRATURE_STEPS: usize = 16;

/// `c₀ + c₁·h` on CP¹, where `h` is the normalised curvature class (`∫h = 1`)
/// and `h² = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedClass {
    pub c0: KPoly,
    pub c1: KPoly,
}

impl TruncatedClass {
    pub fn new(c0: KPoly, c1: KPoly) -> Self {
        Self { c0, c1 }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            c0: &self.c0 * &other.c0,
            c1: &(&self.c0 * &other.c1) + &(&self.c1 * &other.c0),
        }
    }

    /// `∫_{CP¹}`: picks out the coefficient of `h`.
    pub fn integrate(&self) -> KPoly {
        self.c1.clone()
    }

    /// `ch(L_k) = 1 + k·h`, since `F_k = k·F₁`.
    pub fn chern_character_line() -> Self {
        Self::new(KPoly::one(), KPoly::var(0))
    }

    /// `td(T) = 1 + c₁(T)/2 = 1 + h`, as `T ≅ L₂`.
    pub fn todd_tangent() -> Self {
        Self::new(KPoly::one(), KPoly::one())
    }
}

/// `ch(L_k)·td(T CP¹)`.
pub fn cp1_class() -> TruncatedClass {
    TruncatedClass::chern_character_line().mul(&TruncatedClass::todd_tangent())
}

/// Dimension of the space of degree-`k` polynomials in two variables.
pub fn cp1_index(k: &BigInt) -> BigInt {
    let v = cp1_class().integrate().eval(&[BigRational::from_integer(k.clone())]);
    v.to_integer()
}

/// Trapezoid rule for `(1/2π)∮_{|z|=R} Im(z̄ dz)/(1+|z|²)`, the normalised
/// circulation of the connection form of `L₁` in the affine chart.
pub fn curvature_quadrature(radius: f64, steps: usize) -> Result<f64, LocalizationError> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(LocalizationError::Domain(format!("radius must be positive, got {radius}")));
    }
    if steps < MIN_QUADRATURE_STEPS {
        return Err(LocalizationError::Domain(format!(
            "need at least {MIN_QUADRATURE_STEPS} steps, got {steps}"
        )));
    }
    let h = 2.0 * PI / steps as f64;
    let integrand = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let (x, y) = (radius * c, radius * s);
        let (dx, dy) = (-radius * s, radius * c);
        // Im(conj(z)·dz) = x·dy − y·dx
        (x * dy - y * dx) / (1.0 + x * x + y * y)
    };
    // periodic integrand: the trapezoid endpoints coincide
    let total: f64 = (0..steps).map(|i| integrand(i as f64 * h)).sum::<f64>() * h;
    Ok(total / (2.0 * PI))
}
