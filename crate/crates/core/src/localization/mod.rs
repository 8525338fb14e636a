//! Fixed-point localisation on weighted projective spaces.
//!
//! A [`WeightedModel`] is the space `(x₀,…,x_n) ~ (λ^{w₀}x₀,…,λ^{w_n}x_n)` with
//! a line bundle of weight `w_f`, acted on by a torus whose characters are
//! `a = (α₁, α₂, …, 0)`. Everything is exact: weights are polynomials in
//! `α₁, α₂, k` with rational coefficients.

mod cp1;
mod rational;

use thiserror::Error;

use num_rational::BigRational;
use num_traits::One;

pub use cp1::{cp1_class, cp1_index, curvature_quadrature, TruncatedClass, MIN_QUADRATURE_STEPS};
pub use rational::{alpha1, alpha2, k_var, rat, MultivariateRational, WeightPoly, VARIABLE_NAMES};

use crate::poly::Poly;

/// Polynomials in `k` alone.
pub type KPoly = Poly<BigRational, 1>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LocalizationError {
    #[error("weight {index} must be at least 1")]
    BadWeight { index: usize },
    #[error("only complex dimensions 1 and 2 are supported, got {0}")]
    UnsupportedDimension(usize),
    #[error("fiber weight may only depend on k")]
    BadFiber,
    #[error("fixed point {label} has a zero tangent weight")]
    DegenerateFixedPoint { label: String },
    #[error("localised sum is not a polynomial in k: {0}")]
    Inconsistent(String),
    #[error("{0}")]
    Domain(String),
}

/// Weighted projective space of complex dimension 1 or 2 with a line bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedModel {
    weights: Vec<u32>,
    fiber: WeightPoly,
}

impl WeightedModel {
    pub fn new(weights: Vec<u32>, fiber: WeightPoly) -> Result<Self, LocalizationError> {
        let dim = weights.len().saturating_sub(1);
        if !(1..=2).contains(&dim) {
            return Err(LocalizationError::UnsupportedDimension(dim));
        }
        if let Some(index) = weights.iter().position(|&w| w == 0) {
            return Err(LocalizationError::BadWeight { index });
        }
        if fiber.terms().any(|(e, _)| e[0] != 0 || e[1] != 0) {
            return Err(LocalizationError::BadFiber);
        }
        Ok(Self { weights, fiber })
    }

    /// `P(5,1,1)` with the bundle of weight `5k`: the jackpot count.
    pub fn jackpot() -> Self {
        Self::new(vec![5, 1, 1], k_var().scale(&rat(5, 1))).unwrap()
    }

    /// `CP²` with `O(k)`.
    pub fn projective_plane() -> Self {
        Self::new(vec![1, 1, 1], k_var()).unwrap()
    }

    /// `CP¹` with `O(k)`.
    pub fn projective_line() -> Self {
        Self::new(vec![1, 1], k_var()).unwrap()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn fiber(&self) -> &WeightPoly {
        &self.fiber
    }

    pub fn dimension(&self) -> usize {
        self.weights.len() - 1
    }

    /// Torus character of coordinate `i`: `α₁, α₂, …` with the last one 0.
    pub fn character(&self, i: usize) -> WeightPoly {
        if i == self.dimension() {
            WeightPoly::zero()
        } else {
            WeightPoly::var(i)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointDatum {
    /// e.g. `[1,0,0]`.
    pub label: String,
    pub tangent_weights: Vec<WeightPoly>,
    pub fiber_weight: WeightPoly,
    pub orbifold_order: u32,
}

fn label(dim: usize, j: usize) -> String {
    let parts: Vec<&str> = (0..=dim).map(|i| if i == j { "1" } else { "0" }).collect();
    format!("[{}]", parts.join(","))
}

/// Tangent and fiber characters at each coordinate point.
///
/// In the chart `x_j = 1` the residual `λ` must satisfy `λ^{w_j} t^{a_j} = 1`,
/// so coordinate `i` picks up `(w_i/w_j)a_j − a_i` and the fiber
/// `(w_f/w_j)a_j`; the chart is a quotient by a group of order `w_j`.
pub fn fixed_point_data(model: &WeightedModel) -> Vec<FixedPointDatum> {
    let dim = model.dimension();
    (0..=dim)
        .map(|j| {
            let wj = rat(model.weights[j] as i64, 1);
            let aj = model.character(j);
            let tangent_weights = (0..=dim)
                .filter(|&i| i != j)
                .map(|i| {
                    let wi = rat(model.weights[i] as i64, 1);
                    &aj.scale(&(wi / &wj)) - &model.character(i)
                })
                .collect();
            let fiber_weight = (&model.fiber * &aj).scale(&(BigRational::one() / &wj));
            FixedPointDatum {
                label: label(dim, j),
                tangent_weights,
                fiber_weight,
                orbifold_order: model.weights[j],
            }
        })
        .collect()
}

/// Product of the tangent weights.
pub fn euler_class(d: &FixedPointDatum) -> Result<WeightPoly, LocalizationError> {
    if d.tangent_weights.iter().any(WeightPoly::is_zero) {
        return Err(LocalizationError::DegenerateFixedPoint { label: d.label.clone() });
    }
    Ok(d.tangent_weights.iter().fold(WeightPoly::one(), |acc, w| &acc * w))
}

/// `(ch₀, ch₂, …)` of the fiber representation, truncated at the dimension.
pub fn chern_character(d: &FixedPointDatum) -> Vec<WeightPoly> {
    let dim = d.tangent_weights.len();
    let mut out = vec![WeightPoly::one()];
    let mut power = WeightPoly::one();
    let mut factorial = BigRational::one();
    for n in 1..=dim {
        power = &power * &d.fiber_weight;
        factorial *= rat(n as i64, 1);
        out.push(power.scale(&(BigRational::one() / &factorial)));
    }
    out
}

/// Todd class of the tangent representation, truncated at the dimension:
/// `1 + x/2` for a line, `1 + (x₁+x₂)/2 + (x₁²+x₂²+3x₁x₂)/12` for rank two.
pub fn todd_class(d: &FixedPointDatum) -> Result<Vec<WeightPoly>, LocalizationError> {
    let x = &d.tangent_weights;
    match x.len() {
        1 => Ok(vec![WeightPoly::one(), x[0].scale(&rat(1, 2))]),
        2 => {
            let c1 = &x[0] + &x[1];
            let c2 = &x[0] * &x[1];
            let td4 = &(&c1 * &c1) + &c2;
            Ok(vec![WeightPoly::one(), c1.scale(&rat(1, 2)), td4.scale(&rat(1, 12))])
        }
        n => Err(LocalizationError::UnsupportedDimension(n)),
    }
}

#[derive(Clone, Debug)]
pub struct PointContribution {
    pub label: String,
    /// `(1/ord)·[ch·td]_top / e`.
    pub term: MultivariateRational,
    /// The same split by the degree of the Chern character factor.
    pub graded: Vec<MultivariateRational>,
}

#[derive(Clone, Debug)]
pub struct LocalizedIndex {
    pub polynomial: KPoly,
    /// `graded[i]` collects the `ch_{2i}` contributions; they sum to `polynomial`.
    pub graded: Vec<KPoly>,
    pub per_point: Vec<PointContribution>,
}

fn to_k_polynomial(sum: &MultivariateRational) -> Result<KPoly, LocalizationError> {
    let p = sum
        .as_polynomial()
        .ok_or_else(|| LocalizationError::Inconsistent(sum.to_string()))?;
    if p.degree_in(0).unwrap_or(0) > 0 || p.degree_in(1).unwrap_or(0) > 0 {
        return Err(LocalizationError::Inconsistent(sum.to_string()));
    }
    Ok(KPoly::from_terms(p.terms().map(|(e, c)| ([e[2]], c.clone()))))
}

fn sum_all<'a>(terms: impl Iterator<Item = &'a MultivariateRational>) -> MultivariateRational {
    terms.fold(MultivariateRational::zero(), |acc, t| &acc + t)
}

/// `Σ_p (1/ord_p)·[ch(L)td(TX)]_top / e(T_p)`, reduced to a polynomial in `k`.
pub fn localized_index(model: &WeightedModel) -> Result<LocalizedIndex, LocalizationError> {
    let dim = model.dimension();
    let mut per_point = Vec::new();
    for d in fixed_point_data(model) {
        let e = euler_class(&d)?.scale(&rat(d.orbifold_order as i64, 1));
        let ch = chern_character(&d);
        let td = todd_class(&d)?;
        let graded: Vec<MultivariateRational> = (0..=dim)
            .map(|i| {
                MultivariateRational::new(&ch[i] * &td[dim - i], e.clone())
                    .expect("nonzero euler class")
                    .reduce_by(&d.tangent_weights)
            })
            .collect();
        let term = sum_all(graded.iter()).reduce_by(&d.tangent_weights);
        per_point.push(PointContribution { label: d.label, term, graded });
    }
    let polynomial = to_k_polynomial(&sum_all(per_point.iter().map(|p| &p.term)))?;
    let graded = (0..=dim)
        .map(|i| to_k_polynomial(&sum_all(per_point.iter().map(|p| &p.graded[i]))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LocalizedIndex { polynomial, graded, per_point })
}

/// Value of a `k`-polynomial at an integer.
pub fn eval_k(p: &KPoly, k: i64) -> BigRational {
    p.eval(&[rat(k, 1)])
}

/// Parses a fiber weight such as `5k`, `k`, `3` or `2k+1`.
pub fn parse_fiber(s: &str) -> Result<WeightPoly, LocalizationError> {
    let bad = || LocalizationError::Domain(format!("cannot parse fiber weight {s:?}"));
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(bad());
    }
    let mut out = WeightPoly::zero();
    let mut rest = cleaned.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'-' => (-1, &rest[1..]),
            b'+' => (1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body[1.min(body.len())..]
            .find(['+', '-'])
            .map(|i| i + 1)
            .unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let (digits, has_k) = match term.strip_suffix('k') {
            Some(d) => (d.trim_end_matches('*'), true),
            None => (term, false),
        };
        let coeff: i64 = if digits.is_empty() {
            if has_k { 1 } else { return Err(bad()) }
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let mono = if has_k { k_var() } else { WeightPoly::one() };
        out = &out + &mono.scale(&rat(sign * coeff, 1));
    }
    Ok(out)
}
