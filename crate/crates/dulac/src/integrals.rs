//! Common polynomial constants of motion of two linear flows: the exact
//! kernel of the stacked directional-derivative operators on polynomials of
//! bounded degree.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::multiindex::MultiIndex;
use crate::poly::ScalarPoly;
use crate::scalar::Scalar;

/// Basis of common polynomial constants of motion up to a degree bound.
/// Every element has zero constant term and is annihilated by both
/// directional derivatives exactly. An empty basis certifies absence up to
/// the bound.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegralBasis<S> {
    pub degree_bound: u32,
    pub basis: Vec<ScalarPoly<S>>,
}

impl<S: Scalar> IntegralBasis<S> {
    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// `kappa -> (Mu).grad kappa`: the directional derivative of a scalar
/// polynomial along the linear flow of `M`. Preserves total degree.
pub fn linear_directional_derivative<S: Scalar>(
    m: &ExactMatrix<S>,
    kappa: &ScalarPoly<S>,
) -> Result<ScalarPoly<S>> {
    if m.rows() != kappa.dim() || !m.is_square() {
        return Err(Error::dimension(
            "matrix does not match polynomial dimension".to_string(),
        ));
    }
    let dim = kappa.dim();
    let mut out = ScalarPoly::zero(dim, kappa.truncation());
    for (q, c) in kappa.terms() {
        for i in 0..dim {
            let e = q.exponent(i);
            if e == 0 {
                continue;
            }
            let factor = S::from_i64(i64::from(e));
            for l in 0..dim {
                let entry = m.get(i, l);
                if entry.is_zero() {
                    continue;
                }
                // (Mu)_i * d/du_i of u^q contributes on u^{q - e_i + e_l}.
                let target = q
                    .sub_unit(i)
                    .expect("exponent checked nonzero")
                    .add_unit(l);
                out.add_term(target, c.clone() * factor.clone() * entry.clone());
            }
        }
    }
    Ok(out)
}

/// Common polynomial constants of motion of the linear flows `u' = diag(a) u`
/// and `u' = M u`, over polynomials of degree `1..=n`. Both operators
/// preserve total degree, so the kernel splits by degree; basis elements are
/// returned in ascending degree, each in the deterministic echelon
/// normalization of [`ExactMatrix::kernel_basis`].
pub fn common_linear_integrals<S: Scalar>(
    a: &[S],
    m: &ExactMatrix<S>,
    n: u32,
) -> Result<IntegralBasis<S>> {
    if m.rows() != a.len() || !m.is_square() {
        return Err(Error::dimension(format!(
            "matrix shape {}x{} does not match eigenvalue count {}",
            m.rows(),
            m.cols(),
            a.len()
        )));
    }
    if n < 1 {
        return Err(Error::precondition("degree bound must be at least 1"));
    }
    let dim = a.len();
    let diag = ExactMatrix::diagonal(a);
    let mut basis = Vec::new();
    for d in 1..=n {
        let monomials = MultiIndex::all_of_degree(dim, d);
        let index: BTreeMap<&MultiIndex, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, q)| (q, i))
            .collect();
        let count = monomials.len();
        // Stack the coefficient matrices of both operators on the degree-d
        // monomial basis.
        let mut stacked = ExactMatrix::zero(2 * count, count);
        for (col, q) in monomials.iter().enumerate() {
            let mono = ScalarPoly::monomial(dim, d, q.clone(), S::one())?;
            for (block, operator) in [&diag, m].into_iter().enumerate() {
                let image = linear_directional_derivative(operator, &mono)?;
                for (target, coeff) in image.terms() {
                    let row = block * count + index[target];
                    stacked.set(row, col, coeff.clone());
                }
            }
        }
        for vector in stacked.kernel_basis() {
            let kappa = ScalarPoly::from_terms(
                dim,
                n,
                monomials
                    .iter()
                    .zip(&vector)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(q, c)| (q.clone(), c.clone())),
            )?;
            basis.push(kappa);
        }
    }
    Ok(IntegralBasis {
        degree_bound: n,
        basis,
    })
}
