//! Structural tests on vector fields: scalar-multiple shape (condition "A"),
//! the two-matrix normal-form shape `Au + alpha(u)Au + mu(u)Mu`, and constant
//! proportionality between matrices or fields.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::matrix::ExactMatrix;
use crate::multiindex::MultiIndex;
use crate::poly::ScalarPoly;
use crate::scalar::Scalar;

/// Outcome of a constant-proportionality test `X = lambda * Y`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Proportionality<S> {
    pub lambda: S,
    /// Set when both inputs are zero, where any factor works.
    pub ambiguous: bool,
}

fn proportionality_of_coefficients<S: Scalar>(
    xs: &[S],
    ys: &[S],
) -> Option<Proportionality<S>> {
    let lead = ys.iter().position(|y| !y.is_zero());
    match lead {
        None => {
            if xs.iter().all(Zero::is_zero) {
                Some(Proportionality {
                    lambda: S::zero(),
                    ambiguous: true,
                })
            } else {
                None
            }
        }
        Some(idx) => {
            let lambda = xs[idx]
                .checked_div(&ys[idx])
                .expect("leading coefficient is nonzero");
            for (x, y) in xs.iter().zip(ys) {
                if *x != y.clone() * lambda.clone() {
                    return None;
                }
            }
            Some(Proportionality {
                lambda,
                ambiguous: false,
            })
        }
    }
}

/// `Some(lambda)` with `X = lambda * Y` exactly (entrywise), `None` when no
/// constant works. Both zero yields `lambda = 0` flagged ambiguous.
pub fn matrix_proportionality<S: Scalar>(
    x: &ExactMatrix<S>,
    y: &ExactMatrix<S>,
) -> Result<Option<Proportionality<S>>> {
    if x.rows() != y.rows() || x.cols() != y.cols() {
        return Err(Error::dimension(format!(
            "matrix shapes {}x{} and {}x{} differ",
            x.rows(),
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    let xs: Vec<S> = x.entries().cloned().collect();
    let ys: Vec<S> = y.entries().cloned().collect();
    Ok(proportionality_of_coefficients(&xs, &ys))
}

/// Constant proportionality of two vector fields, compared coefficientwise
/// over linear and nonlinear terms at a common truncation.
pub fn field_proportionality<S: Scalar>(
    x: &VectorField<S>,
    y: &VectorField<S>,
) -> Result<Option<Proportionality<S>>> {
    if x.dim() != y.dim() {
        return Err(Error::dimension(format!(
            "field dimensions {} and {} differ",
            x.dim(),
            y.dim()
        )));
    }
    let cap = x.truncation().min(y.truncation());
    let xt = x.truncate_to(cap);
    let yt = y.truncate_to(cap);
    // Collect the union of supports in a deterministic order.
    let mut keys: Vec<(usize, MultiIndex)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for field in [&xt, &yt] {
        for (j, q, _) in field.nonlinear_terms() {
            if seen.insert((j, q.clone())) {
                keys.push((j, q.clone()));
            }
        }
    }
    keys.sort();
    let mut xs: Vec<S> = xt.linear_part().entries().cloned().collect();
    let mut ys: Vec<S> = yt.linear_part().entries().cloned().collect();
    for (j, q) in &keys {
        xs.push(coefficient_of(&xt, *j, q));
        ys.push(coefficient_of(&yt, *j, q));
    }
    Ok(proportionality_of_coefficients(&xs, &ys))
}

fn coefficient_of<S: Scalar>(f: &VectorField<S>, j: usize, q: &MultiIndex) -> S {
    f.nonlinear_terms()
        .find(|(jj, qq, _)| *jj == j && *qq == q)
        .map(|(_, _, c)| c.clone())
        .unwrap_or_else(S::zero)
}

/// `alpha(u) * (M u)` as a vector field at the given cap.
pub fn scalar_times_linear<S: Scalar>(
    alpha: &ScalarPoly<S>,
    m: &ExactMatrix<S>,
    cap: u32,
) -> Result<VectorField<S>> {
    let dim = m.rows();
    if alpha.dim() != dim || !m.is_square() {
        return Err(Error::dimension(
            "scalar factor dimension does not match matrix".to_string(),
        ));
    }
    let mut components = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut row = ScalarPoly::zero(dim, cap);
        for i in 0..dim {
            let e = m.get(j, i);
            if !e.is_zero() {
                row.add_term(MultiIndex::unit(dim, i), e.clone());
            }
        }
        components.push(alpha.mul_with_cap(&row, cap)?);
    }
    VectorField::from_component_polys(components, cap)
}

/// Solve, degree by degree, for homogeneous scalar polynomials multiplying
/// the linear fields `blocks[b] = M_b u`, so that their sum reproduces the
/// nonlinear part of `h` exactly. Returns one polynomial per block, or
/// `None` when some degree is unsolvable. Underdetermined degrees take the
/// deterministic free-variables-zero echelon solution.
fn fit_scalar_blocks<S: Scalar>(
    h: &VectorField<S>,
    blocks: &[&ExactMatrix<S>],
) -> Result<Option<Vec<ScalarPoly<S>>>> {
    let dim = h.dim();
    let n_trunc = h.truncation();
    let factor_cap = n_trunc.saturating_sub(1);
    let mut factors: Vec<ScalarPoly<S>> = blocks
        .iter()
        .map(|_| ScalarPoly::zero(dim, factor_cap))
        .collect();

    for d in 2..=n_trunc {
        let unknown_monomials = MultiIndex::all_of_degree(dim, d - 1);
        let equation_monomials = MultiIndex::all_of_degree(dim, d);
        let col_count = blocks.len() * unknown_monomials.len();
        let row_count = dim * equation_monomials.len();
        let eq_index: BTreeMap<&MultiIndex, usize> = equation_monomials
            .iter()
            .enumerate()
            .map(|(i, q)| (q, i))
            .collect();

        let mut matrix: ExactMatrix<S> = ExactMatrix::zero(row_count, col_count);
        for (b, block) in blocks.iter().enumerate() {
            for (p_idx, p) in unknown_monomials.iter().enumerate() {
                let col = b * unknown_monomials.len() + p_idx;
                for j in 0..dim {
                    for i in 0..dim {
                        let entry = block.get(j, i);
                        if entry.is_zero() {
                            continue;
                        }
                        let q = p.add_unit(i);
                        let row = j * equation_monomials.len() + eq_index[&q];
                        let cell = matrix.get(row, col).clone() + entry.clone();
                        matrix.set(row, col, cell);
                    }
                }
            }
        }

        let mut rhs = vec![S::zero(); row_count];
        let mut any_nonzero = false;
        for (j, q, c) in h.nonlinear_terms() {
            if q.degree() == d {
                rhs[j * equation_monomials.len() + eq_index[&q]] = c.clone();
                any_nonzero = true;
            }
        }
        if !any_nonzero {
            continue;
        }
        match matrix.solve(&rhs)? {
            None => return Ok(None),
            Some(solution) => {
                for (b, factor) in factors.iter_mut().enumerate() {
                    for (p_idx, p) in unknown_monomials.iter().enumerate() {
                        let value = solution[b * unknown_monomials.len() + p_idx].clone();
                        factor.add_term(p.clone(), value);
                    }
                }
            }
        }
    }
    Ok(Some(factors))
}

/// Scalar series `alpha` with `fhat = Au + alpha(u) Au` exactly up to the
/// truncation of `fhat`, or `None` when no such series exists. The linear
/// part must be nonzero.
pub fn check_condition_a<S: Scalar>(fhat: &VectorField<S>) -> Result<Option<ScalarPoly<S>>> {
    let a = fhat.linear_part();
    if a.is_zero() {
        return Err(Error::precondition(
            "condition-A test requires a nonzero linear part",
        ));
    }
    match fit_scalar_blocks(fhat, &[a])? {
        None => Ok(None),
        Some(mut factors) => Ok(Some(factors.remove(0))),
    }
}

/// A successful decomposition `h = Au + alpha(u) Au + mu(u) Mu`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShapeFit<S> {
    pub base: ExactMatrix<S>,
    pub candidate: ExactMatrix<S>,
    pub alpha: ScalarPoly<S>,
    pub mu: ScalarPoly<S>,
    /// `h - (Au + alpha Au + mu Mu)`; zero for every returned fit.
    pub residual: VectorField<S>,
}

/// Decompose `h = Au + alpha(u) Au + mu(u) Mu` with `A` the linear part of
/// `h` and `M` the supplied candidate, solving degree by degree. `M` must
/// not be a constant multiple of `A`.
pub fn fit_nf_shape<S: Scalar>(
    h: &VectorField<S>,
    m: &ExactMatrix<S>,
) -> Result<Option<ShapeFit<S>>> {
    let a = h.linear_part().clone();
    if m.rows() != h.dim() || !m.is_square() {
        return Err(Error::dimension(
            "candidate matrix does not match field dimension".to_string(),
        ));
    }
    if matrix_proportionality(m, &a)?.is_some() {
        return Err(Error::precondition(
            "candidate matrix is proportional to the linear part",
        ));
    }
    let factors = match fit_scalar_blocks(h, &[&a, m])? {
        None => return Ok(None),
        Some(f) => f,
    };
    let (alpha, mu) = (factors[0].clone(), factors[1].clone());
    let cap = h.truncation();
    let reconstruction = VectorField::from_linear(a.clone(), cap)?
        .add(&scalar_times_linear(&alpha, &a, cap)?)?
        .add(&scalar_times_linear(&mu, m, cap)?)?;
    let residual = h.sub(&reconstruction)?;
    debug_assert!(residual.is_zero());
    Ok(Some(ShapeFit {
        base: a,
        candidate: m.clone(),
        alpha,
        mu,
        residual,
    }))
}

/// Try candidate matrices in order and return the first exact fit together
/// with its index; candidates proportional to the linear part are skipped.
pub fn fit_nf_shape_any<S: Scalar>(
    h: &VectorField<S>,
    candidates: &[ExactMatrix<S>],
) -> Result<Option<(usize, ShapeFit<S>)>> {
    for (idx, m) in candidates.iter().enumerate() {
        match fit_nf_shape(h, m) {
            Ok(Some(fit)) => return Ok(Some((idx, fit))),
            Ok(None) => continue,
            Err(Error::Precondition(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}
