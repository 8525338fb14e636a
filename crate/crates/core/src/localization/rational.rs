use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::Poly;

/// Polynomials in `α₁, α₂, k` (in that variable order).
pub type WeightPoly = Poly<BigRational, 3>;

pub const VARIABLE_NAMES: [&str; 3] = ["a1", "a2", "k"];

pub fn alpha1() -> WeightPoly {
    WeightPoly::var(0)
}

pub fn alpha2() -> WeightPoly {
    WeightPoly::var(1)
}

pub fn k_var() -> WeightPoly {
    WeightPoly::var(2)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A quotient of two weight polynomials.
///
/// Kept in canonical form: integer coefficients with no common content, and
/// the denominator's leading term positive. Common polynomial factors are not
/// removed automatically (see [`MultivariateRational::cancel`]), so equality
/// is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct MultivariateRational {
    num: WeightPoly,
    den: WeightPoly,
}

impl MultivariateRational {
    /// Returns `None` when the denominator is zero.
    pub fn new(num: WeightPoly, den: WeightPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let mut r = Self { num, den };
        r.normalize();
        Some(r)
    }

    pub fn from_poly(p: WeightPoly) -> Self {
        Self::new(p, WeightPoly::one()).expect("unit denominator")
    }

    pub fn zero() -> Self {
        Self::from_poly(WeightPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(WeightPoly::one())
    }

    pub fn numerator(&self) -> &WeightPoly {
        &self.num
    }

    pub fn denominator(&self) -> &WeightPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = WeightPoly::one();
            return;
        }
        let coeffs = || self.num.terms().chain(self.den.terms()).map(|(_, c)| c);
        let lcm = coeffs().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let gcd = coeffs()
            .map(|c| (c * &lcm).to_integer())
            .fold(BigInt::zero(), |acc, n| acc.gcd(&n));
        let mut factor = BigRational::new(lcm, gcd);
        if self.den.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            factor = -factor;
        }
        if !factor.is_one() {
            self.num = self.num.scale(&factor);
            self.den = self.den.scale(&factor);
        }
    }

    /// The polynomial this quotient equals, if the denominator divides the
    /// numerator exactly.
    pub fn as_polynomial(&self) -> Option<WeightPoly> {
        self.num.div_exact(&self.den)
    }

    /// Cancel `factor` from numerator and denominator when it divides both.
    pub fn cancel(&self, factor: &WeightPoly) -> Option<Self> {
        let n = self.num.div_exact(factor)?;
        let d = self.den.div_exact(factor)?;
        Self::new(n, d)
    }

    /// Cancels each of `factors` as often as it divides both sides.
    pub fn reduce_by(&self, factors: &[WeightPoly]) -> Self {
        let mut out = self.clone();
        for f in factors {
            while let Some(r) = out.cancel(f) {
                out = r;
            }
        }
        out
    }

    pub fn recip(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Substitute numbers for `α₁, α₂`, leaving `k` symbolic.
    pub fn specialize_alphas(&self, a1: &BigRational, a2: &BigRational) -> Option<Self> {
        let subs = [
            WeightPoly::constant(a1.clone()),
            WeightPoly::constant(a2.clone()),
            k_var(),
        ];
        Self::new(self.num.compose(&subs), self.den.compose(&subs))
    }
}

impl PartialEq for MultivariateRational {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for MultivariateRational {}

impl fmt::Display for MultivariateRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.display_with(&VARIABLE_NAMES, "*");
        if self.den == WeightPoly::one() {
            return f.write_str(&num);
        }
        let den = self.den.display_with(&VARIABLE_NAMES, "*");
        let num = if self.num.num_terms() > 1 { format!("({num})") } else { num };
        let den = if self.den.num_terms() > 1 || den.contains('*') { format!("({den})") } else { den };
        write!(f, "{num}/{den}")
    }
}

impl Add for &MultivariateRational {
    type Output = MultivariateRational;
    fn add(self, rhs: Self) -> MultivariateRational {
        if self.den == rhs.den {
            return MultivariateRational::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        MultivariateRational::new(num, &self.den * &rhs.den).unwrap()
    }
}

impl Sub for &MultivariateRational {
    type Output = MultivariateRational;
    fn sub(self, rhs: Self) -> MultivariateRational {
        self + &(-rhs)
    }
}

impl Neg for &MultivariateRational {
    type Output = MultivariateRational;
    fn neg(self) -> MultivariateRational {
        MultivariateRational::new(-&self.num, self.den.clone()).unwrap()
    }
}

impl Mul for &MultivariateRational {
    type Output = MultivariateRational;
    fn mul(self, rhs: Self) -> MultivariateRational {
        MultivariateRational::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Div for &MultivariateRational {
    type Output = Option<MultivariateRational>;
    fn div(self, rhs: Self) -> Option<MultivariateRational> {
        MultivariateRational::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64, d: i64) -> WeightPoly {
        WeightPoly::constant(rat(n, d))
    }

    #[test]
    fn canonical_form_clears_content_and_sign() {
        // (a1/2) / (-a2/3) = -3a1 / 2a2
        let r = MultivariateRational::new(alpha1().scale(&rat(1, 2)), alpha2().scale(&rat(-1, 3))).unwrap();
        assert_eq!(r.numerator(), &alpha1().scale(&rat(-3, 1)));
        assert_eq!(r.denominator(), &alpha2().scale(&rat(2, 1)));
        let again = MultivariateRational::new(r.numerator().clone(), r.denominator().clone()).unwrap();
        assert_eq!(again.numerator(), r.numerator());
        assert_eq!(again.denominator(), r.denominator());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(MultivariateRational::new(alpha1(), WeightPoly::zero()).is_none());
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let x = &alpha1() - &alpha2();
        let a = MultivariateRational::new(&x * &alpha1(), &x * &alpha2()).unwrap();
        let b = MultivariateRational::new(alpha1(), alpha2()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.cancel(&x).unwrap().numerator(), b.numerator());
        assert_ne!(a, MultivariateRational::new(alpha2(), alpha1()).unwrap());
    }

    #[test]
    fn field_operations() {
        let a = MultivariateRational::new(c(1, 1), alpha1()).unwrap();
        let b = MultivariateRational::new(c(1, 1), alpha2()).unwrap();
        let s = &a + &b;
        let expected = MultivariateRational::new(&alpha1() + &alpha2(), &alpha1() * &alpha2()).unwrap();
        assert_eq!(s, expected);
        assert!((&s - &expected).is_zero());
        assert_eq!((&s / &s).unwrap(), MultivariateRational::one());
        assert!((&s / &MultivariateRational::zero()).is_none());
    }

    #[test]
    fn display() {
        let r = MultivariateRational::new(&alpha1() + &k_var(), alpha2()).unwrap();
        assert_eq!(r.to_string(), "(a1+k)/a2");
        let r = MultivariateRational::new(alpha1(), &alpha1() * &alpha2().scale(&rat(3, 1))).unwrap();
        assert_eq!(r.to_string(), "a1/(3*a1*a2)");
        assert_eq!(r.reduce_by(&[alpha1()]).to_string(), "1/(3*a2)");
        assert_eq!(MultivariateRational::zero().to_string(), "0");
    }
}
