//! Shared helpers for the integration suites: seeded random fields and
//! spectra with small exact coefficients.

#![allow(dead_code)]

use dulac::{Coeff, Field, Matrix, MultiIndex};
use rand::Rng;

/// Small nonzero eigenvalue pool: rationals and Gaussian rationals.
pub fn eigenvalue_pool() -> Vec<Coeff> {
    vec![
        Coeff::integer(1),
        Coeff::integer(-1),
        Coeff::integer(2),
        Coeff::integer(-2),
        Coeff::integer(3),
        Coeff::ratio(1, 2),
        Coeff::ratio(-3, 2),
        Coeff::i(),
        -Coeff::i(),
        Coeff::imaginary(2, 1),
        Coeff::new(
            num_rational::BigRational::new(1.into(), 1.into()),
            num_rational::BigRational::new(1.into(), 1.into()),
        ),
    ]
}

/// Small coefficient pool for nonlinear terms.
pub fn coeff_pool() -> Vec<Coeff> {
    vec![
        Coeff::integer(1),
        Coeff::integer(-1),
        Coeff::integer(2),
        Coeff::integer(-3),
        Coeff::ratio(1, 2),
        Coeff::ratio(-2, 3),
        Coeff::i(),
        -Coeff::i(),
        Coeff::imaginary(1, 2),
    ]
}

pub fn random_eigenvalues(rng: &mut impl Rng, n: usize) -> Vec<Coeff> {
    let pool = eigenvalue_pool();
    (0..n).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect()
}

/// A random field with the given diagonal linear part and sparse nonlinear
/// terms of degrees `2..=max_degree`.
pub fn random_diagonal_field(
    rng: &mut impl Rng,
    eigenvalues: &[Coeff],
    max_degree: u32,
    max_terms: usize,
    truncation: u32,
) -> Field {
    let n = eigenvalues.len();
    let monomials: Vec<MultiIndex> = MultiIndex::all_up_to(n, max_degree)
        .into_iter()
        .filter(|q| q.degree() >= 2)
        .collect();
    let coeffs = coeff_pool();
    let count = rng.gen_range(0..=max_terms);
    let terms: Vec<(usize, MultiIndex, Coeff)> = (0..count)
        .map(|_| {
            (
                rng.gen_range(0..n),
                monomials[rng.gen_range(0..monomials.len())].clone(),
                coeffs[rng.gen_range(0..coeffs.len())].clone(),
            )
        })
        .collect();
    let mut field = Field::from_linear(Matrix::diagonal(eigenvalues), truncation).unwrap();
    for (j, q, c) in terms {
        let single = Field::from_parts(
            Matrix::zero(n, n),
            vec![(j, q, c)],
            truncation,
        )
        .unwrap();
        field = field.add(&single).unwrap();
    }
    field
}

/// A random field with a general (possibly non-diagonal) small-integer
/// linear part, for bracket-axiom tests.
pub fn random_general_field(
    rng: &mut impl Rng,
    n: usize,
    max_degree: u32,
    max_terms: usize,
    truncation: u32,
) -> Field {
    let linear = Matrix::from_fn(n, n, |_, _| Coeff::integer(rng.gen_range(-2i64..=2)));
    let monomials: Vec<MultiIndex> = MultiIndex::all_up_to(n, max_degree)
        .into_iter()
        .filter(|q| q.degree() >= 2)
        .collect();
    let coeffs = coeff_pool();
    let mut field = Field::from_linear(linear, truncation).unwrap();
    for _ in 0..rng.gen_range(0..=max_terms) {
        let single = Field::from_parts(
            Matrix::zero(n, n),
            vec![(
                rng.gen_range(0..n),
                monomials[rng.gen_range(0..monomials.len())].clone(),
                coeffs[rng.gen_range(0..coeffs.len())].clone(),
            )],
            truncation,
        )
        .unwrap();
        field = field.add(&single).unwrap();
    }
    field
}
