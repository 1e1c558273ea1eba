//! Truncated multivariate scalar polynomials with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;


use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::scalar::Scalar;

/// A polynomial in `dim` variables, truncated at total degree `trunc`.
///
/// `trunc` is a cap: terms above it are dropped by every operation, so a
/// value of this type stands for a power series known up to that degree.
/// Zero coefficients are never stored, so structural equality coincides with
/// mathematical equality at equal caps. Term order is the graded-lex order of
/// [`MultiIndex`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarPoly<S> {
    dim: usize,
    trunc: u32,
    terms: BTreeMap<MultiIndex, S>,
}

impl<S: Scalar> ScalarPoly<S> {
    pub fn zero(dim: usize, trunc: u32) -> Self {
        ScalarPoly {
            dim,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, trunc: u32, value: S) -> Self {
        let mut p = Self::zero(dim, trunc);
        p.add_term(MultiIndex::zero(dim), value);
        p
    }

    pub fn monomial(dim: usize, trunc: u32, index: MultiIndex, coeff: S) -> Result<Self> {
        if index.len() != dim {
            return Err(Error::dimension(format!(
                "exponent vector length {} does not match dimension {dim}",
                index.len()
            )));
        }
        let mut p = Self::zero(dim, trunc);
        p.add_term(index, coeff);
        Ok(p)
    }

    /// The variable `u_i` (0-based) as a polynomial.
    pub fn variable(dim: usize, trunc: u32, i: usize) -> Self {
        let mut p = Self::zero(dim, trunc);
        p.add_term(MultiIndex::unit(dim, i), S::one());
        p
    }

    /// Build from (index, coefficient) pairs, accumulating duplicates.
    /// Errors on an index of the wrong length or degree above the cap.
    pub fn from_terms(
        dim: usize,
        trunc: u32,
        terms: impl IntoIterator<Item = (MultiIndex, S)>,
    ) -> Result<Self> {
        let mut p = Self::zero(dim, trunc);
        for (q, c) in terms {
            if q.len() != dim {
                return Err(Error::dimension(format!(
                    "exponent vector length {} does not match dimension {dim}",
                    q.len()
                )));
            }
            if q.degree() > trunc {
                return Err(Error::degree(format!(
                    "term of degree {} above truncation {trunc}",
                    q.degree()
                )));
            }
            p.add_term(q, c);
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, q: &MultiIndex) -> S {
        self.terms.get(q).cloned().unwrap_or_else(S::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> S {
        self.coefficient(&MultiIndex::zero(self.dim))
    }

    /// Largest degree with a nonzero term, or `None` for the zero polynomial.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    /// True when all nonzero terms share total degree `d` (vacuously true
    /// for the zero polynomial).
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|q| q.degree() == d)
    }

    /// Accumulate one term, dropping anything above the cap and purging a
    /// resulting zero.
    pub fn add_term(&mut self, q: MultiIndex, c: S) {
        debug_assert_eq!(q.len(), self.dim);
        if c.is_zero() || q.degree() > self.trunc {
            return;
        }
        match self.terms.entry(q) {
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

    /// Lower the cap to `min(self.trunc, trunc)`, dropping terms above it.
    pub fn truncate_to(&self, trunc: u32) -> Self {
        let cap = self.trunc.min(trunc);
        ScalarPoly {
            dim: self.dim,
            trunc: cap,
            terms: self
                .terms
                .iter()
                .filter(|(q, _)| q.degree() <= cap)
                .map(|(q, c)| (q.clone(), c.clone()))
                .collect(),
        }
    }

    /// Copy with the cap raised to `trunc` (terms unchanged). Only sound when
    /// the caller knows the polynomial is exact, e.g. freshly constructed.
    pub fn with_cap(&self, trunc: u32) -> Self {
        ScalarPoly {
            dim: self.dim,
            trunc,
            terms: self.terms.clone(),
        }
    }

    fn check_dim(&self, rhs: &Self) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::dimension(format!(
                "polynomial dimensions {} and {} differ",
                self.dim, rhs.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let cap = self.trunc.min(rhs.trunc);
        let mut out = Self::zero(self.dim, cap);
        for (q, c) in self.terms.iter().chain(rhs.terms.iter()) {
            out.add_term(q.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        ScalarPoly {
            dim: self.dim,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(q, c)| (q.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &S) -> Self {
        let mut out = Self::zero(self.dim, self.trunc);
        for (q, c) in &self.terms {
            out.add_term(q.clone(), c.clone() * factor.clone());
        }
        out
    }

    /// Product truncated at `min` of the operand caps.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.mul_with_cap(rhs, self.trunc.min(rhs.trunc))
    }

    /// Product truncated at an explicit cap; the caller is responsible for
    /// the soundness of degrees above the operands' own caps.
    pub fn mul_with_cap(&self, rhs: &Self, cap: u32) -> Result<Self> {
        self.check_dim(rhs)?;
        let mut out = Self::zero(self.dim, cap);
        for (qa, ca) in &self.terms {
            if qa.degree() > cap {
                continue;
            }
            for (qb, cb) in &rhs.terms {
                if qa.degree() + qb.degree() > cap {
                    continue;
                }
                out.add_term(qa.add(qb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exponent: u32) -> Self {
        self.pow_with_cap(exponent, self.trunc)
    }

    pub fn pow_with_cap(&self, exponent: u32, cap: u32) -> Self {
        let mut acc = Self::constant(self.dim, cap, S::one());
        for _ in 0..exponent {
            acc = acc
                .mul_with_cap(self, cap)
                .expect("power of a polynomial with itself");
        }
        acc
    }

    /// Partial derivative with respect to `u_i` (0-based). The cap carries
    /// over unchanged.
    pub fn partial_derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.dim, self.trunc);
        for (q, c) in &self.terms {
            if let Some(down) = q.sub_unit(i) {
                let factor = S::from_i64(i64::from(q.exponent(i)));
                out.add_term(down, c.clone() * factor);
            }
        }
        out
    }

    /// The homogeneous slice of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        ScalarPoly {
            dim: self.dim,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|(q, _)| q.degree() == d)
                .map(|(q, c)| (q.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact evaluation at a point.
    pub fn evaluate(&self, point: &[S]) -> Result<S> {
        if point.len() != self.dim {
            return Err(Error::dimension(format!(
                "point length {} does not match dimension {}",
                point.len(),
                self.dim
            )));
        }
        let mut acc = S::zero();
        for (q, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in q.exponents().iter().enumerate() {
                for _ in 0..e {
                    term = term * point[i].clone();
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Substitute `subs[i]` for variable `u_i`, truncating at `cap`. All
    /// substituted polynomials must share one ambient dimension, which
    /// becomes the dimension of the result.
    pub fn substitute(&self, subs: &[Self], cap: u32) -> Result<Self> {
        if subs.len() != self.dim {
            return Err(Error::dimension(format!(
                "{} substitutions for {} variables",
                subs.len(),
                self.dim
            )));
        }
        let out_dim = subs.first().map_or(0, ScalarPoly::dim);
        if subs.iter().any(|s| s.dim() != out_dim) {
            return Err(Error::dimension(
                "substituted polynomials have mixed dimensions".to_string(),
            ));
        }
        // Power tables per variable, built lazily up to the needed exponent.
        let mut powers: Vec<Vec<Self>> = subs
            .iter()
            .map(|s| vec![Self::constant(out_dim, cap, S::one()), s.truncate_to(cap).with_cap(cap)])
            .collect();
        let mut out = Self::zero(out_dim, cap);
        for (q, c) in &self.terms {
            let mut term = Self::constant(out_dim, cap, c.clone());
            for (i, &e) in q.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i]
                        .last()
                        .unwrap()
                        .mul_with_cap(&powers[i][1], cap)?;
                    powers[i].push(next);
                }
                term = term.mul_with_cap(&powers[i][e as usize], cap)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

impl<S: Scalar> fmt::Display for ScalarPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (q, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            if q.degree() == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*{q}")?;
            }
            first = false;
        }
        Ok(())
    }
}
