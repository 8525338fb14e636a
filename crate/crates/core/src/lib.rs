//! Desk-scale computations around the index theorem.
//!
//! * [`mesh`]: triangle meshes, Euler characteristic, discrete Gauss-Bonnet.
//! * [`hodge`]: cochain complexes, Betti numbers, Hodge Laplacians, heat
//!   supertraces, doubling and circulation periods.
//! * [`lattice`]: the jackpot count, slack normalisation, Pick's theorem.
//! * [`localization`]: exact fixed-point localisation for weighted projective
//!   planes and the CP¹ toy model.
//! * [`resolution`]: blow-up resolution of plane-curve germs, the E8
//!   intersection form, signature and the Rochlin check.

pub mod hodge;
pub mod lattice;
pub mod linalg;
pub mod localization;
pub mod mesh;
pub mod poly;
pub mod resolution;
