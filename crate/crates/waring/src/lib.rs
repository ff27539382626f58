//! Decomposition of homogeneous polynomials (symmetric tensors) into minimal
//! sums of powers of linear forms, together with the rank bounds, eigenvector
//! counts and uniqueness classifications that govern when such a decomposition
//! can be computed.
//!
//! The pipeline is: build a flattening matrix (catalecticant or Koszul), take
//! its kernel over exact rationals, cut out the base locus of the kernel as a
//! zero-dimensional polynomial system, solve that system, and recover the
//! coefficients of the decomposition by linear algebra. Failures at each stage
//! are reported structurally and double as rank lower bounds.

pub mod bounds;
pub mod decompose;
pub mod flatten;
mod groebner;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod solve;

pub use decompose::{
    catalecticant_pipeline, decompose, generate_random_rank_r, koszul_general_pipeline, verify,
    DecomposeError, Decomposition, FailureReport, FailureStage, InputError, Method, WaringOutput,
};
pub use flatten::{catalecticant, koszul_flattening, koszul_matrix};
pub use flatten::{FlatteningKind, FlatteningMatrix, KoszulMatrix};
pub use linalg::{kernel, rank_of, solve_linear, KernelBasis, LinearSolution};
pub use matrix::DenseMatrix;
pub use poly::{monomial_index, multidegree_of, pow_linear_form, HomPoly, LinearForm, Multidegree};
pub use scalar::Scalar;
pub use solve::{
    base_locus, eigen_ideal, power_iteration_eigenvectors, solve_zero_dimensional, BaseLocus,
    LocusPoint, LocusStatus, PolyIdeal, ProjectivePoint, TensorMap,
};

/// Exact arbitrary-precision rational scalar, the primary field for kernel
/// and ideal computations.
pub type Rational = num_rational::BigRational;

/// Double-precision scalar used for root finding and numeric fallbacks.
pub type Float = f64;

/// Complex double scalar used when a base locus has non-real points.
pub type Complex = num_complex::Complex64;

/// Polynomial over exact rationals.
pub type RationalPoly = HomPoly<Rational>;

/// Polynomial over double floats.
pub type FloatPoly = HomPoly<Float>;

/// Seed used by the CLI and test harnesses when none is given.
pub const DEFAULT_SEED: u64 = 42;
