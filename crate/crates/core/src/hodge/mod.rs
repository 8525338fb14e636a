//! Simplicial cochain complexes of surfaces and their Hodge theory.
//!
//! Boundary matrices are integer; ranks and Betti numbers are exact. Laplacian
//! spectra (for heat supertraces) come from the Jacobi eigensolver.

mod double;
mod periods;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{symmetric_eigenvalues, EigenError, IntMatrix, JacobiOptions};
use crate::mesh::SimplicialSurface;

pub use double::{double_surface, DoubledSurface};
pub use periods::{circulation_periods, hole_loops, loop_circulation, sample_one_form, PeriodMatrix};

/// Largest complex (total simplex count) the dense eigensolver accepts.
pub const MAX_SPECTRAL_SIMPLICES: usize = 2000;

#[derive(Debug, Error, PartialEq)]
pub enum HodgeError {
    #[error("boundary condition {condition:?} does not apply to a {kind} surface")]
    ConditionMismatch {
        condition: BoundaryCondition,
        kind: &'static str,
    },
    #[error("boundary matrices do not compose to zero")]
    NotAComplex,
    #[error("boundary matrix entry {value} outside {{-1, 0, 1}}")]
    BadEntry { value: i64 },
    #[error("boundary matrix shapes do not chain: {0}")]
    Shape(String),
    #[error("weights must be positive and match simplex counts")]
    BadWeights,
    #[error("degree {0} is not 0, 1 or 2")]
    BadDegree(usize),
    #[error("heat parameter t = {0} must be positive")]
    BadTime(f64),
    #[error("complex has {simplices} simplices; spectral methods are capped at {cap}")]
    TooLarge { simplices: usize, cap: usize },
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error("surface is closed; doubling needs a boundary")]
    ClosedInput,
    #[error("surface is not planar (vertex {vertex} leaves the z = const plane)")]
    NotPlanar { vertex: usize },
    #[error("period matrix has rank {rank} < {holes}; circulation map is not an isomorphism")]
    SingularPeriods { rank: usize, holes: usize },
    #[error("harmonic space has dimension {found}, expected {expected} holes")]
    HarmonicDimension { found: usize, expected: usize },
}

/// How cochains are constrained on the boundary of the surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryCondition {
    /// Closed surface, no boundary.
    None,
    /// Full cochain complex (Neumann analogue).
    Absolute,
    /// Cochains vanishing on boundary simplices (Dirichlet analogue).
    Relative,
}

/// `C_2 --∂₂--> C_1 --∂₁--> C_0` with per-simplex inner-product weights.
///
/// The coboundaries are the transposes: `d₀ = ∂₁ᵀ`, `d₁ = ∂₂ᵀ`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    boundary_1: IntMatrix,
    boundary_2: IntMatrix,
    weights: [Vec<f64>; 3],
}

impl ChainComplex {
    /// Validates shapes, entries and `∂₁∂₂ = 0`. Weights default to 1.
    pub fn new(boundary_1: IntMatrix, boundary_2: IntMatrix) -> Result<Self, HodgeError> {
        if boundary_1.cols() != boundary_2.rows() {
            return Err(HodgeError::Shape(format!(
                "∂₁ is {}x{}, ∂₂ is {}x{}",
                boundary_1.rows(),
                boundary_1.cols(),
                boundary_2.rows(),
                boundary_2.cols()
            )));
        }
        for m in [&boundary_1, &boundary_2] {
            for i in 0..m.rows() {
                if let Some((_, v)) = m.row(i).find(|(_, v)| v.abs() > 1) {
                    return Err(HodgeError::BadEntry { value: v });
                }
            }
        }
        if !boundary_1.mul(&boundary_2).is_zero() {
            return Err(HodgeError::NotAComplex);
        }
        let weights = [
            vec![1.0; boundary_1.rows()],
            vec![1.0; boundary_1.cols()],
            vec![1.0; boundary_2.cols()],
        ];
        Ok(Self {
            boundary_1,
            boundary_2,
            weights,
        })
    }

    pub fn with_weights(mut self, weights: [Vec<f64>; 3]) -> Result<Self, HodgeError> {
        for (k, w) in weights.iter().enumerate() {
            if w.len() != self.dim(k) || w.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
                return Err(HodgeError::BadWeights);
            }
        }
        self.weights = weights;
        Ok(self)
    }

    pub fn boundary_1(&self) -> &IntMatrix {
        &self.boundary_1
    }

    pub fn boundary_2(&self) -> &IntMatrix {
        &self.boundary_2
    }

    pub fn weights(&self) -> &[Vec<f64>; 3] {
        &self.weights
    }

    /// Number of `k`-simplices (dimension of `C_k`).
    pub fn dim(&self, k: usize) -> usize {
        match k {
            0 => self.boundary_1.rows(),
            1 => self.boundary_1.cols(),
            2 => self.boundary_2.cols(),
            _ => 0,
        }
    }

    pub fn total_simplices(&self) -> usize {
        self.dim(0) + self.dim(1) + self.dim(2)
    }

    /// `Σ (-1)^k dim C_k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dim(0) as i64 - self.dim(1) as i64 + self.dim(2) as i64
    }
}

/// Cochain complex of a surface under the given boundary condition.
///
/// Edges are oriented from the smaller to the larger vertex index; faces by
/// their vertex order.
pub fn build_complex(surface: &SimplicialSurface, condition: BoundaryCondition) -> Result<ChainComplex, HodgeError> {
    let closed = surface.is_closed();
    match (condition, closed) {
        (BoundaryCondition::None, false) => {
            return Err(HodgeError::ConditionMismatch {
                condition,
                kind: "bounded",
            })
        }
        (BoundaryCondition::Absolute | BoundaryCondition::Relative, true) => {
            return Err(HodgeError::ConditionMismatch { condition, kind: "closed" })
        }
        _ => {}
    }
    let (nv, ne, nf) = (surface.num_vertices(), surface.num_edges(), surface.num_faces());
    let mut b1 = IntMatrix::zeros(nv, ne);
    for (e, edge) in surface.edges().iter().enumerate() {
        b1.set(edge.0, e, -1);
        b1.set(edge.1, e, 1);
    }
    let mut b2 = IntMatrix::zeros(ne, nf);
    for (f, t) in surface.triangles().iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            let e = surface.edge_index(a, b).expect("face edge exists");
            b2.set(e, f, if a < b { 1 } else { -1 });
        }
    }
    if condition == BoundaryCondition::Relative {
        let on_boundary = surface.boundary_vertices();
        let verts: Vec<usize> = (0..nv).filter(|&v| !on_boundary[v]).collect();
        let edges: Vec<usize> = (0..ne).filter(|&e| !surface.is_boundary_edge(e)).collect();
        let faces: Vec<usize> = (0..nf).collect();
        b1 = b1.submatrix(&verts, &edges);
        b2 = b2.submatrix(&edges, &faces);
    }
    ChainComplex::new(b1, b2)
}

/// `(b₀, b₁, b₂)` from exact ranks: `b_k = dim C_k - rank ∂_k - rank ∂_{k+1}`.
pub fn betti_numbers(complex: &ChainComplex) -> [usize; 3] {
    let r1 = complex.boundary_1.rank();
    let r2 = complex.boundary_2.rank();
    [complex.dim(0) - r1, complex.dim(1) - r1 - r2, complex.dim(2) - r2]
}

/// Combinatorial Laplacian `Δ_k = d_kᵀ d_k + d_{k-1} d_{k-1}ᵀ` as an exact
/// integer matrix (unit weights).
pub fn combinatorial_laplacian(complex: &ChainComplex, degree: usize) -> Result<IntMatrix, HodgeError> {
    let d0 = complex.boundary_1.transpose();
    let d1 = complex.boundary_2.transpose();
    Ok(match degree {
        0 => complex.boundary_1.mul(&d0),
        1 => d1.transpose().mul(&d1).add(&d0.mul(&complex.boundary_1)),
        2 => d1.mul(&complex.boundary_2),
        k => return Err(HodgeError::BadDegree(k)),
    })
}

/// Hodge Laplacian of degree `k` in symmetric form.
///
/// With weights `W_k`, the adjoint of `d` is `W_k⁻¹ dᵀ W_{k+1}`; the returned
/// matrix is `W_k^{1/2} Δ_k W_k^{-1/2}`, which is symmetric and has the same
/// spectrum. For unit weights this is the combinatorial Laplacian.
pub fn hodge_laplacian(complex: &ChainComplex, degree: usize) -> Result<Vec<Vec<f64>>, HodgeError> {
    let n = complex.dim(degree);
    if degree > 2 {
        return Err(HodgeError::BadDegree(degree));
    }
    let w = &complex.weights;
    let mut out = vec![vec![0.0; n]; n];
    // up part: W_k^{-1/2} d_kᵀ W_{k+1} d_k W_k^{-1/2}, with d_k = ∂_{k+1}ᵀ
    let up = match degree {
        0 => Some(&complex.boundary_1),
        1 => Some(&complex.boundary_2),
        _ => None,
    };
    if let Some(b) = up {
        // b is dim(k) x dim(k+1); d_k = bᵀ
        let bt = b.transpose();
        for c in 0..b.cols() {
            let entries: Vec<(usize, i64)> = bt.row(c).collect();
            for &(i, a) in &entries {
                for &(j, bb) in &entries {
                    out[i][j] += (a * bb) as f64 * w[degree + 1][c] / (w[degree][i] * w[degree][j]).sqrt();
                }
            }
        }
    }
    // down part: W_k^{1/2} d_{k-1} W_{k-1}^{-1} d_{k-1}ᵀ W_k^{1/2}, with d_{k-1} = ∂_kᵀ
    let down = match degree {
        1 => Some(&complex.boundary_1),
        2 => Some(&complex.boundary_2),
        _ => None,
    };
    if let Some(b) = down {
        // b is dim(k-1) x dim(k)
        for r in 0..b.rows() {
            let entries: Vec<(usize, i64)> = b.row(r).collect();
            for &(i, a) in &entries {
                for &(j, bb) in &entries {
                    out[i][j] += (a * bb) as f64 * (w[degree][i] * w[degree][j]).sqrt() / w[degree - 1][r];
                }
            }
        }
    }
    Ok(out)
}

/// Laplacian eigenvalues in each degree, ascending.
#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    pub eigenvalues: [Vec<f64>; 3],
}

impl Spectrum {
    /// Eigendecomposes the three Laplacians (concurrently; each solve is
    /// deterministic, so the result does not depend on scheduling).
    pub fn compute(complex: &ChainComplex) -> Result<Self, HodgeError> {
        let simplices = complex.total_simplices();
        if simplices > MAX_SPECTRAL_SIMPLICES {
            return Err(HodgeError::TooLarge {
                simplices,
                cap: MAX_SPECTRAL_SIMPLICES,
            });
        }
        let results: Vec<Result<Vec<f64>, HodgeError>> = (0..3usize)
            .into_par_iter()
            .map(|k| {
                let lap = hodge_laplacian(complex, k)?;
                Ok(symmetric_eigenvalues(&lap, JacobiOptions::default())?)
            })
            .collect();
        let mut it = results.into_iter();
        let mut next = || it.next().expect("three degrees");
        Ok(Self {
            eigenvalues: [next()?, next()?, next()?],
        })
    }

    /// `Σ_k (-1)^k Tr exp(-t Δ_k)`.
    pub fn supertrace(&self, t: f64) -> Result<f64, HodgeError> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(HodgeError::BadTime(t));
        }
        let trace = |ev: &[f64]| ev.iter().map(|&l| (-t * l).exp()).sum::<f64>();
        Ok(trace(&self.eigenvalues[0]) - trace(&self.eigenvalues[1]) + trace(&self.eigenvalues[2]))
    }

    /// Eigenvalues below `tol` in degree `k`.
    pub fn nullity(&self, k: usize, tol: f64) -> usize {
        self.eigenvalues[k].iter().filter(|&&l| l.abs() < tol).count()
    }
}

pub fn heat_supertrace(complex: &ChainComplex, t: f64) -> Result<f64, HodgeError> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(HodgeError::BadTime(t));
    }
    Spectrum::compute(complex)?.supertrace(t)
}

/// Kernel and cokernel of the collapsed operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CollapsedIndex {
    pub kernel: usize,
    pub cokernel: usize,
    pub index: i64,
}

/// The collapsed operator `D = d₀ ⊕ d₁ᵀ : C⁰ ⊕ C² → C¹`.
pub fn collapsed_operator(complex: &ChainComplex) -> IntMatrix {
    // d₀ = ∂₁ᵀ (E x V), d₁ᵀ = ∂₂ (E x F)
    complex.boundary_1.transpose().hcat(&complex.boundary_2)
}

/// `dim ker D - dim coker D` for the collapsed operator, from its exact rank.
pub fn collapsed_index(complex: &ChainComplex) -> CollapsedIndex {
    let d = collapsed_operator(complex);
    let rank = d.rank();
    let kernel = d.cols() - rank;
    let cokernel = d.rows() - rank;
    CollapsedIndex {
        kernel,
        cokernel,
        index: kernel as i64 - cokernel as i64,
    }
}

/// Betti numbers, index and spectra of one complex.
#[derive(Clone, Debug, Serialize)]
pub struct HodgeReport {
    pub betti: [usize; 3],
    pub index: i64,
    pub eigenvalues: [Vec<f64>; 3],
}

pub fn hodge_report(complex: &ChainComplex) -> Result<HodgeReport, HodgeError> {
    let betti = betti_numbers(complex);
    let spectrum = Spectrum::compute(complex)?;
    Ok(HodgeReport {
        betti,
        index: betti[0] as i64 - betti[1] as i64 + betti[2] as i64,
        eigenvalues: spectrum.eigenvalues,
    })
}
