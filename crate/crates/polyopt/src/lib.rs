//! Moment relaxations and sums-of-squares certificates for polynomial
//! optimization and generalized moment problems, with an embedded
//! primal-dual conic interior-point solver.

pub mod poly;

pub use poly::{basis_size, canonical_basis, Monomial, PolyError, Polynomial, SemialgebraicSet};
