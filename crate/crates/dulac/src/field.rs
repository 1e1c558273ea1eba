//! Polynomial vector fields `f(u) = Au + F(u)` with exact coefficients and
//! the Lie-Poisson bracket.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::multiindex::MultiIndex;
use crate::poly::ScalarPoly;
use crate::scalar::Scalar;

/// An `n`-component polynomial map with `f(0) = 0`, truncated at total
/// degree `trunc`: an exact linear part `A` plus a sparse map of nonlinear
/// terms of degrees `2..=trunc`, keyed by `(component, exponent vector)` in
/// graded-lex order. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField<S> {
    dim: usize,
    trunc: u32,
    linear: ExactMatrix<S>,
    terms: BTreeMap<(usize, MultiIndex), S>,
}

impl<S: Scalar> VectorField<S> {
    pub fn zero(dim: usize, trunc: u32) -> Self {
        VectorField {
            dim,
            trunc,
            linear: ExactMatrix::zero(dim, dim),
            terms: BTreeMap::new(),
        }
    }

    /// The purely linear field `u -> Au`.
    pub fn from_linear(a: ExactMatrix<S>, trunc: u32) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::dimension("linear part must be square".to_string()));
        }
        Ok(VectorField {
            dim: a.rows(),
            trunc,
            linear: a,
            terms: BTreeMap::new(),
        })
    }

    /// Build from a linear part and nonlinear terms. Every term must have an
    /// exponent vector of length `n` and total degree in `2..=trunc`.
    pub fn from_parts(
        a: ExactMatrix<S>,
        nonlinear: impl IntoIterator<Item = (usize, MultiIndex, S)>,
        trunc: u32,
    ) -> Result<Self> {
        let mut field = Self::from_linear(a, trunc)?;
        for (component, q, c) in nonlinear {
            if component >= field.dim {
                return Err(Error::dimension(format!(
                    "component {component} out of range for dimension {}",
                    field.dim
                )));
            }
            if q.len() != field.dim {
                return Err(Error::dimension(format!(
                    "exponent vector length {} does not match dimension {}",
                    q.len(),
                    field.dim
                )));
            }
            let d = q.degree();
            if d < 2 || d > trunc {
                return Err(Error::degree(format!(
                    "nonlinear term degree {d} outside 2..={trunc}"
                )));
            }
            field.add_term(component, q, c);
        }
        Ok(field)
    }

    /// Reassemble a field from per-component polynomials. Degree-0 terms are
    /// rejected (`f(0) = 0` by construction); degree-1 terms populate the
    /// linear part; degrees above `trunc` are dropped.
    pub fn from_component_polys(polys: Vec<ScalarPoly<S>>, trunc: u32) -> Result<Self> {
        let dim = polys.len();
        if polys.iter().any(|p| p.dim() != dim) {
            return Err(Error::dimension(
                "component polynomial dimension does not match component count".to_string(),
            ));
        }
        let mut field = Self::zero(dim, trunc);
        for (j, poly) in polys.iter().enumerate() {
            for (q, c) in poly.terms() {
                match q.degree() {
                    0 => {
                        return Err(Error::degree(
                            "constant term in a vector field component".to_string(),
                        ))
                    }
                    1 => {
                        let i = q
                            .exponents()
                            .iter()
                            .position(|&e| e == 1)
                            .expect("degree-1 index has a unit exponent");
                        let entry = field.linear.get(j, i).clone() + c.clone();
                        field.linear.set(j, i, entry);
                    }
                    d if d <= trunc => field.add_term(j, q.clone(), c.clone()),
                    _ => {}
                }
            }
        }
        Ok(field)
    }

    fn add_term(&mut self, component: usize, q: MultiIndex, c: S) {
        if c.is_zero() || q.degree() > self.trunc {
            return;
        }
        match self.terms.entry((component, q)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn linear_part(&self) -> &ExactMatrix<S> {
        &self.linear
    }

    /// Iterator over nonlinear terms `(component, exponents, coefficient)`
    /// in (component, graded-lex) order.
    pub fn nonlinear_terms(&self) -> impl Iterator<Item = (usize, &MultiIndex, &S)> {
        self.terms.iter().map(|((j, q), c)| (*j, q, c))
    }

    pub fn is_zero(&self) -> bool {
        self.linear.is_zero() && self.terms.is_empty()
    }

    pub fn is_linear(&self) -> bool {
        self.terms.is_empty()
    }

    /// Copy with the linear part zeroed out.
    pub fn nonlinear_part(&self) -> Self {
        VectorField {
            dim: self.dim,
            trunc: self.trunc,
            linear: ExactMatrix::zero(self.dim, self.dim),
            terms: self.terms.clone(),
        }
    }

    /// Component `j` as a scalar polynomial, linear part included.
    pub fn component_poly(&self, j: usize) -> ScalarPoly<S> {
        let mut p = ScalarPoly::zero(self.dim, self.trunc);
        for i in 0..self.dim {
            let a = self.linear.get(j, i);
            if !a.is_zero() {
                p.add_term(MultiIndex::unit(self.dim, i), a.clone());
            }
        }
        for ((comp, q), c) in &self.terms {
            if *comp == j {
                p.add_term(q.clone(), c.clone());
            }
        }
        p
    }

    pub fn component_polys(&self) -> Vec<ScalarPoly<S>> {
        (0..self.dim).map(|j| self.component_poly(j)).collect()
    }

    /// Lower the cap to `min(self.trunc, trunc)`, dropping terms above it.
    pub fn truncate_to(&self, trunc: u32) -> Self {
        let cap = self.trunc.min(trunc);
        VectorField {
            dim: self.dim,
            trunc: cap,
            linear: self.linear.clone(),
            terms: self
                .terms
                .iter()
                .filter(|((_, q), _)| q.degree() <= cap)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_dim(&self, rhs: &Self) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::dimension(format!(
                "field dimensions {} and {} differ",
                self.dim, rhs.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let cap = self.trunc.min(rhs.trunc);
        let mut out = self.truncate_to(cap);
        let linear = out.linear.add(&rhs.linear)?;
        out.linear = linear;
        for ((j, q), c) in &rhs.terms {
            if q.degree() <= cap {
                out.add_term(*j, q.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        VectorField {
            dim: self.dim,
            trunc: self.trunc,
            linear: self.linear.scale(&-S::one()),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &S) -> Self {
        if factor.is_zero() {
            return Self::zero(self.dim, self.trunc);
        }
        VectorField {
            dim: self.dim,
            trunc: self.trunc,
            linear: self.linear.scale(factor),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.clone() * factor.clone()))
                .collect(),
        }
    }

    /// Lie-Poisson bracket `{f,g}_k = (f.grad)g_k - (g.grad)f_k`, exact and
    /// truncated at `min` of the operand caps: every dropped contribution to
    /// a kept degree would require terms above an operand's cap, so the kept
    /// degrees are sound.
    pub fn lie_bracket(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let cap = self.trunc.min(rhs.trunc);
        let f: Vec<_> = self.component_polys();
        let g: Vec<_> = rhs.component_polys();
        let mut out_components = Vec::with_capacity(self.dim);
        for k in 0..self.dim {
            let mut acc = ScalarPoly::zero(self.dim, cap);
            for i in 0..self.dim {
                let fg = f[i].mul_with_cap(&g[k].partial_derivative(i), cap)?;
                let gf = g[i].mul_with_cap(&f[k].partial_derivative(i), cap)?;
                acc = acc.add(&fg)?.sub(&gf)?;
            }
            out_components.push(acc);
        }
        Self::from_component_polys(out_components, cap)
    }

    /// Exact evaluation of the truncated polynomial map at a point.
    pub fn evaluate(&self, point: &[S]) -> Result<Vec<S>> {
        if point.len() != self.dim {
            return Err(Error::dimension(format!(
                "point length {} does not match dimension {}",
                point.len(),
                self.dim
            )));
        }
        (0..self.dim)
            .map(|j| self.component_poly(j).evaluate(point))
            .collect()
    }

    /// The field consisting of exactly the degree-`d` terms (`d = 1` yields
    /// the linear part).
    pub fn homogeneous_part(&self, d: u32) -> Result<Self> {
        if d < 1 || d > self.trunc {
            return Err(Error::degree(format!(
                "degree {d} outside 1..={}",
                self.trunc
            )));
        }
        if d == 1 {
            return Self::from_linear(self.linear.clone(), self.trunc);
        }
        let mut out = Self::zero(self.dim, self.trunc);
        for ((j, q), c) in &self.terms {
            if q.degree() == d {
                out.add_term(*j, q.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// True when all terms (including the linear part) are homogeneous of
    /// degree `d`; the zero field qualifies vacuously.
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        let linear_ok = d == 1 || self.linear.is_zero();
        linear_ok && self.terms.keys().all(|(_, q)| q.degree() == d)
    }

    /// Substitute `subs[i]` for variable `u_i` in every component, truncating
    /// at `cap`. Returns raw component polynomials in the ambient dimension
    /// of the substitutions.
    pub fn substitute(&self, subs: &[ScalarPoly<S>], cap: u32) -> Result<Vec<ScalarPoly<S>>> {
        (0..self.dim)
            .map(|j| self.component_poly(j).substitute(subs, cap))
            .collect()
    }

    /// The field in coordinates `u = P w`: `w -> P^{-1} f(P w)`. A linear
    /// change of coordinates preserves degrees, so the cap carries over.
    pub fn conjugated_by(&self, p: &ExactMatrix<S>, p_inv: &ExactMatrix<S>) -> Result<Self> {
        if p.rows() != self.dim || !p.is_square() || p_inv.rows() != self.dim {
            return Err(Error::dimension(
                "change-of-basis matrix does not match field dimension".to_string(),
            ));
        }
        let subs: Vec<ScalarPoly<S>> = (0..self.dim)
            .map(|i| {
                let mut row = ScalarPoly::zero(self.dim, self.trunc);
                for l in 0..self.dim {
                    let e = p.get(i, l);
                    if !e.is_zero() {
                        row.add_term(MultiIndex::unit(self.dim, l), e.clone());
                    }
                }
                row
            })
            .collect();
        let images = self.substitute(&subs, self.trunc)?;
        let mut out_components = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let mut acc = ScalarPoly::zero(self.dim, self.trunc);
            for i in 0..self.dim {
                let e = p_inv.get(j, i);
                if !e.is_zero() {
                    acc = acc.add(&images[i].scale(e))?;
                }
            }
            out_components.push(acc);
        }
        Self::from_component_polys(out_components, self.trunc)
    }
}

impl<S: Scalar> fmt::Display for VectorField<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.dim {
            writeln!(f, "f{} = {}", j + 1, self.component_poly(j))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;
    use proptest::prelude::*;

    type F = VectorField<GaussianRational>;
    type M = ExactMatrix<GaussianRational>;

    fn int(x: i64) -> GaussianRational {
        GaussianRational::integer(x)
    }

    fn rotation_matrix() -> M {
        M::from_rows(vec![
            vec![int(0), int(1)],
            vec![int(-1), int(0)],
        ])
        .unwrap()
    }

    /// f = Au + (x^2+y^2)(x, y) with A the 2-d rotation block.
    fn rotation_cubic(trunc: u32) -> F {
        F::from_parts(
            rotation_matrix(),
            vec![
                (0, MultiIndex::new(vec![3, 0]), int(1)),
                (0, MultiIndex::new(vec![1, 2]), int(1)),
                (1, MultiIndex::new(vec![2, 1]), int(1)),
                (1, MultiIndex::new(vec![0, 3]), int(1)),
            ],
            trunc,
        )
        .unwrap()
    }

    /// g = (x^2+y^2)(x, y), zero linear part.
    fn rotation_symmetry(trunc: u32) -> F {
        F::from_parts(
            M::zero(2, 2),
            vec![
                (0, MultiIndex::new(vec![3, 0]), int(1)),
                (0, MultiIndex::new(vec![1, 2]), int(1)),
                (1, MultiIndex::new(vec![2, 1]), int(1)),
                (1, MultiIndex::new(vec![0, 3]), int(1)),
            ],
            trunc,
        )
        .unwrap()
    }

    #[test]
    fn bracket_of_linear_with_itself_is_zero() {
        let f = F::from_linear(rotation_matrix(), 4).unwrap();
        assert!(f.lie_bracket(&f).unwrap().is_zero());
    }

    #[test]
    fn bracket_in_one_variable() {
        // f = u^2, g = u^3: {f,g} = u^2*3u^2 - u^3*2u = u^4.
        let f = F::from_parts(
            M::zero(1, 1),
            vec![(0, MultiIndex::new(vec![2]), int(1))],
            6,
        )
        .unwrap();
        let g = F::from_parts(
            M::zero(1, 1),
            vec![(0, MultiIndex::new(vec![3]), int(1))],
            6,
        )
        .unwrap();
        let expected = F::from_parts(
            M::zero(1, 1),
            vec![(0, MultiIndex::new(vec![4]), int(1))],
            6,
        )
        .unwrap();
        assert_eq!(f.lie_bracket(&g).unwrap(), expected);
    }

    #[test]
    fn rotation_field_commutes_with_its_cubic_symmetry() {
        let f = F::from_linear(rotation_matrix(), 5).unwrap();
        let g = rotation_symmetry(5);
        assert!(f.lie_bracket(&g).unwrap().is_zero());
        let full = rotation_cubic(5);
        assert!(full.lie_bracket(&rotation_symmetry(5)).unwrap().is_zero());
    }

    #[test]
    fn evaluation_examples() {
        let diag = F::from_linear(M::diagonal(&[int(1), int(2)]), 3).unwrap();
        assert_eq!(
            diag.evaluate(&[int(1), int(1)]).unwrap(),
            vec![int(1), int(2)]
        );

        let sq = F::from_parts(
            M::zero(1, 1),
            vec![(0, MultiIndex::new(vec![2]), int(1))],
            3,
        )
        .unwrap();
        assert_eq!(sq.evaluate(&[int(3)]).unwrap(), vec![int(9)]);

        let rot = rotation_cubic(4);
        assert_eq!(
            rot.evaluate(&[int(1), int(0)]).unwrap(),
            vec![int(1), int(-1)]
        );
    }

    #[test]
    fn homogeneous_slices() {
        let a = M::diagonal(&[int(1), int(2)]);
        let f = F::from_parts(
            a.clone(),
            vec![(1, MultiIndex::new(vec![2, 0]), int(1))],
            4,
        )
        .unwrap();
        assert_eq!(
            f.homogeneous_part(1).unwrap(),
            F::from_linear(a, 4).unwrap()
        );
        let quad = f.homogeneous_part(2).unwrap();
        assert!(quad.linear_part().is_zero());
        assert_eq!(quad.nonlinear_terms().count(), 1);
        assert!(f.homogeneous_part(3).unwrap().is_zero());
        assert!(f.homogeneous_part(5).is_err());

        // Slices reassemble the field exactly.
        let mut sum = F::zero(2, 4);
        for d in 1..=4 {
            sum = sum.add(&f.homogeneous_part(d).unwrap()).unwrap();
        }
        assert_eq!(sum, f);
    }

    #[test]
    fn constant_terms_are_rejected() {
        let p = ScalarPoly::constant(1, 3, int(1));
        assert!(F::from_component_polys(vec![p], 3).is_err());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let f = rotation_cubic(4);
        let g = F::zero(3, 4);
        assert!(f.lie_bracket(&g).is_err());
        assert!(f.evaluate(&[int(1)]).is_err());
    }

    fn small_field(dim: usize, trunc: u32) -> impl Strategy<Value = F> {
        let linear = proptest::collection::vec(-3i64..=3, dim * dim);
        let monomials = MultiIndex::all_up_to(dim, trunc)
            .into_iter()
            .filter(|q| q.degree() >= 2)
            .collect::<Vec<_>>();
        let nterms = proptest::collection::vec(
            (0..dim, 0..monomials.len(), -3i64..=3),
            0..=4,
        );
        (linear, nterms).prop_map(move |(lin, terms)| {
            let mut a = M::zero(dim, dim);
            for (idx, v) in lin.into_iter().enumerate() {
                a.set(idx / dim, idx % dim, int(v));
            }
            let mut f = F::from_linear(a, trunc).unwrap();
            for (j, qi, c) in terms {
                f.add_term(j, monomials[qi].clone(), int(c));
            }
            f
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn bracket_is_antisymmetric(
            f in small_field(2, 5),
            g in small_field(2, 5),
        ) {
            let fg = f.lie_bracket(&g).unwrap();
            let gf = g.lie_bracket(&f).unwrap();
            prop_assert_eq!(fg, gf.neg());
        }

        #[test]
        fn bracket_is_bilinear(
            f in small_field(2, 5),
            g in small_field(2, 5),
            h in small_field(2, 5),
        ) {
            let lhs = f.lie_bracket(&g.add(&h).unwrap()).unwrap();
            let rhs = f
                .lie_bracket(&g)
                .unwrap()
                .add(&f.lie_bracket(&h).unwrap())
                .unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn bracket_grading(
            f in small_field(2, 6),
            g in small_field(2, 6),
        ) {
            // Bracket of homogeneous degrees d1, d2 is homogeneous of degree
            // d1 + d2 - 1 or zero.
            for d1 in 1..=3u32 {
                for d2 in 1..=3u32 {
                    let fd = f.homogeneous_part(d1).unwrap();
                    let gd = g.homogeneous_part(d2).unwrap();
                    let br = fd.lie_bracket(&gd).unwrap();
                    prop_assert!(br.is_homogeneous_of_degree(d1 + d2 - 1));
                }
            }
        }
    }

    #[test]
    fn core_operations_work_over_plain_rationals() {
        // The core is generic over the exact scalar type; spot-check the
        // second instantiation.
        use num_rational::BigRational;
        type RF = VectorField<BigRational>;
        let one = || BigRational::from_integer(1.into());
        let a = ExactMatrix::from_rows(vec![
            vec![one(), BigRational::from_integer(0.into())],
            vec![BigRational::from_integer(0.into()), BigRational::from_integer(2.into())],
        ])
        .unwrap();
        let f = RF::from_parts(
            a.clone(),
            vec![(1, MultiIndex::new(vec![2, 0]), one())],
            4,
        )
        .unwrap();
        let linear = RF::from_linear(a, 4).unwrap();
        let bracket = linear.lie_bracket(&f).unwrap();
        // {Au, u1^2 e2} = ((2,0).(1,2) - 2) u1^2 e2 = 0.
        assert!(bracket.is_zero());
        assert_eq!(
            f.evaluate(&[one(), one()]).unwrap(),
            vec![one(), BigRational::from_integer(3.into())]
        );
    }

    #[test]
    fn jacobi_identity_at_sufficient_truncation() {
        // Deterministic spot check at a truncation where nothing is dropped.
        let f = rotation_cubic(9);
        let g = rotation_symmetry(9);
        let h = F::from_parts(
            rotation_matrix(),
            vec![
                (0, MultiIndex::new(vec![2, 0]), int(2)),
                (1, MultiIndex::new(vec![1, 1]), int(-1)),
            ],
            9,
        )
        .unwrap();
        let cyc = f
            .lie_bracket(&g.lie_bracket(&h).unwrap())
            .unwrap()
            .add(&g.lie_bracket(&h.lie_bracket(&f).unwrap()).unwrap())
            .unwrap()
            .add(&h.lie_bracket(&f.lie_bracket(&g).unwrap()).unwrap())
            .unwrap();
        assert!(cyc.is_zero());
    }
}
