//! Exact arithmetic and dense linear algebra.
//!
//! Every interpolation question in this crate reduces to "does this matrix
//! have a nonzero right kernel over the rationals?". The matrices are dense
//! and small (a few hundred columns at most), but their entries are large
//! rationals, so the routines here work in three layers:
//!
//! * [`rank_exact`] and [`kernel_basis`] run Gauss-Jordan elimination over
//!   [`BigRational`], choosing the pivot of smallest bit length in each column.
//! * [`rank_mod_p`] reduces modulo a word-sized prime. It can only under-count
//!   the rank, so a full-rank answer modulo `p` is a proof of full rank.
//! * [`kernel_vector`] uses a modular echelon form to pick pivots, solves the
//!   resulting square system by p-adic lifting, and checks the lifted vector
//!   against the original matrix exactly. Nothing it returns is unverified.

mod lifting;
mod matrix;
mod modp;
mod rational;

pub use lifting::{kernel_vector, kernel_vector_with_attempts, kernel_vector_with_prime};
pub use matrix::{kernel_basis, rank_exact, DenseMatrix, RatMatrix};
pub use modp::{is_prime, random_prime, rank_mod_p, PrimeFieldElement, PrimeModulus};
pub use rational::{bit_length, format_rational, parse_rational, BigRational};

