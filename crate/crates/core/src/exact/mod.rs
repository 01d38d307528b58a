//! Exact coefficient arithmetic, sparse graded polynomials and integer
//! lattice algebra.

mod coeff;
mod involution;
mod lattice;
mod matrix;
mod poly;
mod ring;

pub use coeff::{Coefficient, Integer, Mod2, Mod4};
pub use involution::InvolutionQuotient;
pub use lattice::Lattice;
pub use matrix::{inverse_mod2, quotient_rank_mod2, rank_mod2, span_membership, IntMatrix, Membership};
pub use poly::{PolyRing, SparsePoly};
pub use ring::CommRing;
