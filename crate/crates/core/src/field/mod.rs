//! Exact scalars, dense matrices, polynomials and canonical forms over ℚ and 𝔽_p.

mod canonical;
mod gaussian;
mod matrix;
mod poly;
mod scalar;

pub use canonical::{canonical_form, companion, invariant_factor_blocks, CanonicalForm, InvariantBlock};
pub use gaussian::{arg_compare, GaussianDoc, GaussianRational, Phase};
pub use matrix::{image_sum_basis, ExactMatrix, Rref, Subspace};
pub use poly::{charpoly, factor, interpolate, poly_key_cmp, square_free, Poly};
pub use scalar::{FieldSpec, Scalar};
