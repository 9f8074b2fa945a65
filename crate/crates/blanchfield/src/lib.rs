//! Exact computation of Blanchfield pairings of colored links.
//!
//! Input is a family of generalized Seifert matrices (one per sign vector)
//! or a boundary Seifert matrix; from it the crate assembles the C-complex
//! matrix `H` over `Λ_S = Z[t_i^{±1}, (1-t_i)^{-1}]`, computes the torsion
//! order Δ of the presented module, and evaluates the torsion pairing
//! `λ_H(v, w) = Δ^{-2} · v_0^T H conj(w_0)` with values in `Q/Λ_S`, together
//! with its transform calculus (stabilizations, block sums, unit scalings,
//! mirrors, connected sums). All arithmetic is exact: sparse integer Laurent
//! polynomials, reduced fractions, and Gaussian elimination over the fraction
//! field. There is no floating point anywhere.

pub mod error;
pub mod gcd;
pub mod laurent;
pub mod linalg;
pub mod moves;
pub mod pairing;
pub mod ratfunc;
pub mod seifert;
pub mod text;

pub use error::{Error, Result};
pub use laurent::{ExpVec, LaurentPoly, LsUnit};
pub use linalg::RfMatrix;
pub use pairing::{BlForm, TorsionData};
pub use ratfunc::{QmodLs, RatFunc};
pub use seifert::{BoundarySeifert, CMatrix, IntMatrix, SeifertFamily, SignVec};
