//! Degree-by-degree normalization of polynomial vector fields whose linear
//! part is diagonal (or exactly diagonalizable over the coefficient field):
//! resonance tests, the homological operator, near-identity pushforwards,
//! and the normalization driver.

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::matrix::ExactMatrix;
use crate::multiindex::MultiIndex;
use crate::poly::ScalarPoly;
use crate::scalar::{GaussianRational, Scalar};

/// Eigenvalues of the linear part, with an optional exact change of basis
/// `P` such that `P^{-1} A P` is the diagonal of those eigenvalues.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EigenData<S> {
    values: Vec<S>,
    basis: Option<ExactMatrix<S>>,
}

impl<S: Scalar> EigenData<S> {
    /// Eigen data for a field whose linear part is already diagonal.
    pub fn diagonal(values: Vec<S>) -> Self {
        EigenData {
            values,
            basis: None,
        }
    }

    pub fn with_basis(values: Vec<S>, basis: ExactMatrix<S>) -> Result<Self> {
        if basis.rows() != values.len() || !basis.is_square() {
            return Err(Error::dimension(
                "change-of-basis matrix does not match eigenvalue count".to_string(),
            ));
        }
        Ok(EigenData {
            values,
            basis: Some(basis),
        })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn basis(&self) -> Option<&ExactMatrix<S>> {
        self.basis.as_ref()
    }

    /// Apply the frame change `u = P w` to a field without checking its
    /// linear part against the stated eigenvalues; used to carry symmetries
    /// (whose linear parts differ from the normalized field's) through the
    /// same coordinates.
    pub fn apply_frame(&self, field: &VectorField<S>) -> Result<VectorField<S>> {
        if self.dim() != field.dim() {
            return Err(Error::dimension(format!(
                "eigen data dimension {} does not match field dimension {}",
                self.dim(),
                field.dim()
            )));
        }
        match &self.basis {
            None => Ok(field.clone()),
            Some(p) => {
                let p_inv = p
                    .inverse()
                    .map_err(|_| Error::EigenMismatch("basis matrix is singular".to_string()))?;
                field.conjugated_by(p, &p_inv)
            }
        }
    }

    /// Verify consistency against a linear part `a` and return the field
    /// expressed in eigencoordinates. Errors unless `P^{-1} A P` (or `A`
    /// itself when no basis is given) equals the stated diagonal exactly.
    pub fn into_eigen_frame(&self, field: &VectorField<S>) -> Result<VectorField<S>> {
        if self.dim() != field.dim() {
            return Err(Error::dimension(format!(
                "eigen data dimension {} does not match field dimension {}",
                self.dim(),
                field.dim()
            )));
        }
        let diag = ExactMatrix::diagonal(&self.values);
        match &self.basis {
            None => {
                if field.linear_part() != &diag {
                    return Err(Error::EigenMismatch(
                        "linear part is not the stated diagonal and no basis was supplied"
                            .to_string(),
                    ));
                }
                Ok(field.clone())
            }
            Some(p) => {
                let p_inv = p
                    .inverse()
                    .map_err(|_| Error::EigenMismatch("basis matrix is singular".to_string()))?;
                let conjugated = p_inv.mul(field.linear_part())?.mul(p)?;
                if conjugated != diag {
                    return Err(Error::EigenMismatch(
                        "P^-1 A P is not the stated diagonal".to_string(),
                    ));
                }
                field.conjugated_by(p, &p_inv)
            }
        }
    }
}

/// The scalar product `(q, a) = sum q_i a_i`.
pub fn inner_product<S: Scalar>(q: &MultiIndex, a: &[S]) -> S {
    let mut acc = S::zero();
    for (i, &e) in q.exponents().iter().enumerate() {
        if e > 0 {
            acc = acc + a[i].clone() * S::from_i64(i64::from(e));
        }
    }
    acc
}

/// The eigenvalue `(q, a) - a_j` of the homological operator on the monomial
/// `u^q e_j` (0-based `j`).
pub fn resonance_divisor<S: Scalar>(q: &MultiIndex, j: usize, a: &[S]) -> S {
    inner_product(q, a) - a[j].clone()
}

/// True iff `(q, a) = a_j` exactly, i.e. the monomial `u^q e_j` survives in
/// any normal form with respect to `diag(a)`. `j` is 0-based.
pub fn is_resonant<S: Scalar>(q: &MultiIndex, j: usize, a: &[S]) -> bool {
    resonance_divisor(q, j, a).is_zero()
}

/// The homological operator `h -> (Au).grad h - A h` for `A = diag(a)`,
/// computed monomial-by-monomial: the term `c u^q e_j` maps to
/// `((q,a) - a_j) c u^q e_j`.
pub fn homological_apply<S: Scalar>(a: &[S], h: &VectorField<S>) -> Result<VectorField<S>> {
    if a.len() != h.dim() {
        return Err(Error::dimension(format!(
            "eigenvalue count {} does not match field dimension {}",
            a.len(),
            h.dim()
        )));
    }
    let mut components: Vec<ScalarPoly<S>> = (0..h.dim())
        .map(|_| ScalarPoly::zero(h.dim(), h.truncation()))
        .collect();
    for j in 0..h.dim() {
        for (q, c) in h.component_poly(j).terms() {
            let factor = resonance_divisor(q, j, a);
            if !factor.is_zero() {
                components[j].add_term(q.clone(), c.clone() * factor);
            }
        }
    }
    VectorField::from_component_polys(components, h.truncation())
}

/// Split a homogeneous slice `F_d` as `A(generator) + remainder` where the
/// generator carries `c / ((q,a) - a_j)` on every nonresonant monomial and
/// the remainder collects exactly the resonant ones.
pub fn solve_homological<S: Scalar>(
    a: &[S],
    f_d: &VectorField<S>,
) -> Result<(VectorField<S>, VectorField<S>)> {
    if a.len() != f_d.dim() {
        return Err(Error::dimension(format!(
            "eigenvalue count {} does not match field dimension {}",
            a.len(),
            f_d.dim()
        )));
    }
    if !f_d.linear_part().is_zero() {
        return Err(Error::precondition(
            "homological solve expects a homogeneous slice of degree >= 2",
        ));
    }
    let degrees: Vec<u32> = {
        let mut ds: Vec<u32> = f_d.nonlinear_terms().map(|(_, q, _)| q.degree()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    };
    if degrees.len() > 1 {
        return Err(Error::precondition(
            "homological solve expects a homogeneous slice",
        ));
    }
    let dim = f_d.dim();
    let trunc = f_d.truncation();
    let mut generator = VectorField::zero(dim, trunc);
    let mut remainder = VectorField::zero(dim, trunc);
    let mut gen_terms = Vec::new();
    let mut rem_terms = Vec::new();
    for (j, q, c) in f_d.nonlinear_terms() {
        let divisor = resonance_divisor(q, j, a);
        if divisor.is_zero() {
            rem_terms.push((j, q.clone(), c.clone()));
        } else {
            gen_terms.push((j, q.clone(), c.checked_div(&divisor)?));
        }
    }
    if !gen_terms.is_empty() {
        generator = VectorField::from_parts(ExactMatrix::zero(dim, dim), gen_terms, trunc)?;
    }
    if !rem_terms.is_empty() {
        remainder = VectorField::from_parts(ExactMatrix::zero(dim, dim), rem_terms, trunc)?;
    }
    Ok((generator, remainder))
}

/// The field of the system in coordinates `v` where `u = v + generator(v)`,
/// truncated at degree `n` (or at the cap of `f` when lower):
/// `(I + D generator)^{-1} f(v + generator(v))`, with the inverse Jacobian
/// expanded as a terminating Neumann series. The generator must be
/// homogeneous of some degree `d >= 2`, so the linear part is preserved
/// exactly.
pub fn pushforward<S: Scalar>(
    f: &VectorField<S>,
    generator: &VectorField<S>,
    n: u32,
) -> Result<VectorField<S>> {
    if f.dim() != generator.dim() {
        return Err(Error::dimension(format!(
            "field dimension {} does not match generator dimension {}",
            f.dim(),
            generator.dim()
        )));
    }
    let cap = n.min(f.truncation());
    if generator.is_zero() {
        return Ok(f.truncate_to(cap));
    }
    if !generator.linear_part().is_zero() {
        return Err(Error::precondition(
            "generator must have zero linear part",
        ));
    }
    let gen_degree = generator
        .nonlinear_terms()
        .map(|(_, q, _)| q.degree())
        .max()
        .expect("nonzero generator has terms");
    if !generator.is_homogeneous_of_degree(gen_degree) || gen_degree < 2 {
        return Err(Error::precondition(
            "generator must be homogeneous of degree >= 2",
        ));
    }

    let dim = f.dim();
    // phi_i(v) = v_i + generator_i(v)
    let subs: Vec<ScalarPoly<S>> = (0..dim)
        .map(|i| {
            let mut p = generator.component_poly(i).truncate_to(cap).with_cap(cap);
            p.add_term(MultiIndex::unit(dim, i), S::one());
            p
        })
        .collect();
    let composed = f.substitute(&subs, cap)?;

    // Neumann series for (I + D generator)^{-1}: entries of D generator have
    // degree gen_degree - 1 >= 1, so powers eventually vanish under the cap.
    let jac_cap = cap.saturating_sub(1);
    let jacobian: Vec<Vec<ScalarPoly<S>>> = (0..dim)
        .map(|j| {
            let gj = generator.component_poly(j);
            (0..dim)
                .map(|i| gj.partial_derivative(i).truncate_to(jac_cap).with_cap(jac_cap))
                .collect()
        })
        .collect();

    let mut result = composed.clone();
    let mut power: Vec<Vec<ScalarPoly<S>>> = jacobian.clone();
    let mut negate = true;
    loop {
        if power.iter().all(|row| row.iter().all(ScalarPoly::is_zero)) {
            break;
        }
        for (j, row) in power.iter().enumerate() {
            for (i, entry) in row.iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                let contribution = entry.mul_with_cap(&composed[i], cap)?;
                result[j] = if negate {
                    result[j].sub(&contribution)?
                } else {
                    result[j].add(&contribution)?
                };
            }
        }
        // power <- power * jacobian
        let mut next = vec![vec![ScalarPoly::zero(dim, jac_cap); dim]; dim];
        for (j, row) in power.iter().enumerate() {
            for (i, entry) in row.iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                for k in 0..dim {
                    if jacobian[i][k].is_zero() {
                        continue;
                    }
                    let product = entry.mul_with_cap(&jacobian[i][k], jac_cap)?;
                    next[j][k] = next[j][k].add(&product)?;
                }
            }
        }
        power = next;
        negate = !negate;
    }

    let out = VectorField::from_component_polys(result, cap)?;
    debug_assert_eq!(out.linear_part(), f.linear_part());
    Ok(out)
}

/// Result of a normalization: the normal form, the per-degree generators of
/// the near-identity changes (index 0 holds degree 2), the eigen data used,
/// and the truncation degree. All fields are expressed in eigencoordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalizationResult<S> {
    pub normal_form: VectorField<S>,
    pub generators: Vec<VectorField<S>>,
    pub eigen: EigenData<S>,
    pub truncation: u32,
}

impl<S: Scalar> NormalizationResult<S> {
    /// Generator used at degree `d` (2-based).
    pub fn generator(&self, d: u32) -> Option<&VectorField<S>> {
        d.checked_sub(2)
            .and_then(|idx| self.generators.get(idx as usize))
    }

    /// Re-apply the stored coordinate changes (eigen frame first, then each
    /// degree's pushforward in order). For the field that produced this
    /// result, the replay reproduces the normal form exactly; any other
    /// field (a symmetry, say) is transported through the same coordinates.
    pub fn replay(&self, f: &VectorField<S>) -> Result<VectorField<S>> {
        let mut current = self.eigen.apply_frame(f)?.truncate_to(self.truncation);
        for generator in &self.generators {
            current = pushforward(&current, generator, self.truncation)?;
        }
        Ok(current)
    }

    /// Transport another field through the same coordinate changes. Used to
    /// carry symmetries along the normalization.
    pub fn transport(&self, g: &VectorField<S>) -> Result<VectorField<S>> {
        self.replay(g)
    }
}

/// Poincare-Dulac normalization up to degree `n`: for each degree `d` from 2
/// to `n`, split the degree-`d` slice into a generator and its resonant
/// remainder, then push the whole field forward through `u = v + gen(v)`.
/// The returned normal form has only resonant nonlinear terms; generators
/// contain only nonresonant monomials (the minimal-generator convention).
pub fn normalize<S: Scalar>(
    f: &VectorField<S>,
    eigen: &EigenData<S>,
    n: u32,
) -> Result<NormalizationResult<S>> {
    if n < 2 {
        return Err(Error::precondition("normalization degree must be >= 2"));
    }
    if f.truncation() < n {
        return Err(Error::precondition(format!(
            "field truncation {} is below the requested degree {n}",
            f.truncation()
        )));
    }
    let mut current = eigen.into_eigen_frame(f)?.truncate_to(n);
    let a = eigen.values();
    let mut generators = Vec::with_capacity((n - 1) as usize);
    for d in 2..=n {
        let slice = current.homogeneous_part(d)?;
        let (generator, _resonant) = solve_homological(a, &slice)?;
        if !generator.is_zero() {
            current = pushforward(&current, &generator, n)?;
        }
        generators.push(generator);
    }
    debug_assert!(current
        .nonlinear_terms()
        .all(|(j, q, _)| is_resonant(q, j, a)));
    Ok(NormalizationResult {
        normal_form: current,
        generators,
        eigen: eigen.clone(),
        truncation: n,
    })
}

/// The `2m x 2m` block rotation matrix `[[0, I], [-I, 0]]`.
pub fn block_rotation_matrix(m: usize) -> ExactMatrix<GaussianRational> {
    let n = 2 * m;
    let mut a = ExactMatrix::zero(n, n);
    for j in 0..m {
        a.set(j, m + j, GaussianRational::integer(1));
        a.set(m + j, j, GaussianRational::integer(-1));
    }
    a
}

/// Exact eigen data for the block rotation matrix: eigenvalues `i` (m times)
/// then `-i` (m times), with basis columns `e_j + i e_{m+j}` and
/// `e_j - i e_{m+j}`.
pub fn eigenbasis_for_block_rotation(m: usize) -> EigenData<GaussianRational> {
    let n = 2 * m;
    let i_unit = GaussianRational::i();
    let mut values = vec![i_unit.clone(); m];
    values.extend(vec![-i_unit.clone(); m]);
    let mut p = ExactMatrix::zero(n, n);
    for j in 0..m {
        p.set(j, j, GaussianRational::integer(1));
        p.set(m + j, j, i_unit.clone());
        p.set(j, m + j, GaussianRational::integer(1));
        p.set(m + j, m + j, -i_unit.clone());
    }
    EigenData::with_basis(values, p).expect("block rotation basis is square")
}
