//! Exact computation of Poincare-Dulac normal forms for polynomial vector
//! fields, Lie point symmetry checks, small-divisor diagnostics, and
//! convergence certificates, all over Gaussian rational coefficients.

pub mod certify;
pub mod cli;
pub mod error;
pub mod field;
pub mod integrals;
pub mod io;
pub mod matrix;
pub mod multiindex;
pub mod normal_form;
pub mod poly;
pub mod precision;
pub mod samples;
pub mod scalar;
pub mod shape;
pub mod small_divisors;
pub mod symmetry;

pub use certify::{
    certify_theorem1, certify_theorem2, corollary_2d, CertificateReport, HypothesisStatus,
    Verdict,
};
pub use error::{ArithmeticError, Error, ParseError, Result};
pub use field::VectorField;
pub use integrals::{common_linear_integrals, IntegralBasis};
pub use io::FieldSpecDocument;
pub use matrix::ExactMatrix;
pub use multiindex::MultiIndex;
pub use normal_form::{
    eigenbasis_for_block_rotation, homological_apply, is_resonant, normalize, pushforward,
    solve_homological, EigenData, NormalizationResult,
};
pub use poly::ScalarPoly;
pub use samples::{build_example_rotation2d, build_example_so3};
pub use scalar::{GaussianRational, Scalar};
pub use shape::{
    check_condition_a, field_proportionality, fit_nf_shape, fit_nf_shape_any,
    matrix_proportionality, Proportionality, ShapeFit,
};
pub use small_divisors::{check_omega, OmegaOptions, OmegaReport, OmegaVariant, OmegaVerdict};
pub use symmetry::{check_symmetry, transport_symmetry};

/// Working coefficient field of the library.
pub type Coeff = GaussianRational;
/// Exact matrix over the working coefficient field.
pub type Matrix = ExactMatrix<Coeff>;
/// Scalar polynomial over the working coefficient field.
pub type Poly = ScalarPoly<Coeff>;
/// Vector field over the working coefficient field.
pub type Field = VectorField<Coeff>;
/// Eigen data over the working coefficient field.
pub type Eigen = EigenData<Coeff>;
