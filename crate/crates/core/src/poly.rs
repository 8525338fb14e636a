//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent arrays, so iteration order is
//! lexicographic in the exponents (first variable most significant) and every
//! polynomial has exactly one representation.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Num, Signed};

/// Coefficient rings used here: `BigInt` and `BigRational`.
pub trait Coeff: Clone + Num + Signed + fmt::Display + PartialOrd {}
impl<T: Clone + Num + Signed + fmt::Display + PartialOrd> Coeff for T {}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<C, const N: usize> {
    terms: BTreeMap<[u32; N], C>,
}

impl<C: Coeff, const N: usize> Default for Poly<C, N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff, const N: usize> Poly<C, N> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, [0; N])
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn monomial(c: C, exps: [u32; N]) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { terms }
    }

    /// The polynomial `x_i`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        Self::monomial(C::one(), e)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ([u32; N], C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exps: [u32; N], c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[u32; N], &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32; N]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<(&[u32; N], &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Smallest total degree of any term (the vanishing order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum of the exponents (the largest monomial factor).
    pub fn monomial_content(&self) -> [u32; N] {
        let mut m = [u32::MAX; N];
        for e in self.terms.keys() {
            for i in 0..N {
                m[i] = m[i].min(e[i]);
            }
        }
        if self.terms.is_empty() {
            [0; N]
        } else {
            m
        }
    }

    /// Divide by the monomial `x^exps`; panics unless every term is divisible.
    pub fn div_monomial(&self, exps: [u32; N]) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut out = *e;
                    for i in 0..N {
                        out[i] = e[i].checked_sub(exps[i]).expect("monomial does not divide");
                    }
                    (out, c.clone())
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, exps: [u32; N]) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut out = *e;
                    for i in 0..N {
                        out[i] += exps[i];
                    }
                    (out, c.clone())
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v.clone() * c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Substitute polynomials for every variable.
    pub fn compose<const M: usize>(&self, subs: &[Poly<C, M>; N]) -> Poly<C, M> {
        let mut out = Poly::<C, M>::zero();
        for (e, c) in &self.terms {
            let mut term = Poly::<C, M>::constant(c.clone());
            for i in 0..N {
                if e[i] > 0 {
                    term = &term * &subs[i].pow(e[i]);
                }
            }
            out = &out + &term;
        }
        out
    }

    pub fn eval(&self, point: &[C; N]) -> C {
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..N {
                for _ in 0..e[i] {
                    t = t * point[i].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder (lexicographic long division).
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lead_e, lead_c) = divisor.leading()?;
        let (lead_e, lead_c) = (*lead_e, lead_c.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((e, c)) = rem.leading() {
            let mut qe = [0; N];
            for i in 0..N {
                qe[i] = e[i].checked_sub(lead_e[i])?;
            }
            let qc = c.clone() / lead_c.clone();
            if qc.clone() * lead_c.clone() != *c {
                return None;
            }
            let step = Self::monomial(qc, qe);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Some(quot)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D, N> {
        Poly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Writes the polynomial with the given variable names, highest term
    /// first. Exponents of 10 or more are braced (`x^{15}`).
    pub fn display_with(&self, names: &[&str; N], separator: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if k > 0 {
                s.push(if negative { '-' } else { '+' });
            } else if negative {
                s.push('-');
            }
            let mag = c.abs();
            let is_const = e.iter().all(|&x| x == 0);
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || is_const {
                parts.push(mag.to_string());
            }
            for i in 0..N {
                match e[i] {
                    0 => {}
                    1 => parts.push(names[i].to_string()),
                    p if p < 10 => parts.push(format!("{}^{p}", names[i])),
                    p => parts.push(format!("{}^{{{p}}}", names[i])),
                }
            }
            let _ = write!(s, "{}", parts.join(separator));
        }
        s
    }
}

impl<C: Coeff, const N: usize> Add for &Poly<C, N> {
    type Output = Poly<C, N>;
    fn add(self, rhs: Self) -> Poly<C, N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<C: Coeff, const N: usize> Sub for &Poly<C, N> {
    type Output = Poly<C, N>;
    fn sub(self, rhs: Self) -> Poly<C, N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<C: Coeff, const N: usize> Mul for &Poly<C, N> {
    type Output = Poly<C, N>;
    fn mul(self, rhs: Self) -> Poly<C, N> {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = *e1;
                for i in 0..N {
                    e[i] += e2[i];
                }
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coeff, const N: usize> Neg for &Poly<C, N> {
    type Output = Poly<C, N>;
    fn neg(self) -> Poly<C, N> {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff, const N: usize> $tr for Poly<C, N> {
            type Output = Poly<C, N>;
            fn $m(self, rhs: Self) -> Poly<C, N> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
