//! Builders for the worked rotation-invariant example systems: the planar
//! rotation family and its six-dimensional block-rotation analogue with
//! diagonal group action.

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::multiindex::MultiIndex;
use crate::normal_form::block_rotation_matrix;
use crate::poly::ScalarPoly;
use crate::scalar::GaussianRational;

type Coeff = GaussianRational;
type Field = VectorField<Coeff>;
type Poly = ScalarPoly<Coeff>;

/// `x^2 + y^2` as a polynomial in the `2m` variables `(x_1..x_m, y_1..y_m)`.
fn radius_squared(m: usize, trunc: u32) -> Poly {
    let n = 2 * m;
    let mut p = Poly::zero(n, trunc);
    for i in 0..n {
        let mut q = MultiIndex::zero(n);
        q = q.add_unit(i).add_unit(i);
        p.add_term(q, Coeff::integer(1));
    }
    p
}

/// Multiply a scalar polynomial onto the identity field: `p(u) * u`.
fn scalar_times_identity(p: &Poly, trunc: u32) -> Result<Field> {
    let n = p.dim();
    let components = (0..n)
        .map(|i| p.mul_with_cap(&Poly::variable(n, trunc, i), trunc))
        .collect::<Result<Vec<_>>>()?;
    VectorField::from_component_polys(components, trunc)
}

/// The planar rotation family: `f = Au + (x^2+y^2)^k (x, y)` with
/// `A = [[0,1],[-1,0]]`, and the symmetry `g = (x^2+y^2)^k (x, y)` with zero
/// linear part. By construction `{f, g} = 0`. Requires `n >= 2k + 1` so the
/// truncation holds the nonlinear terms.
pub fn build_example_rotation2d(k: u32, n: u32) -> Result<(Field, Field)> {
    if k < 1 {
        return Err(Error::precondition("k must be at least 1"));
    }
    if n < 2 * k + 1 {
        return Err(Error::degree(format!(
            "truncation {n} cannot hold the degree-{} terms",
            2 * k + 1
        )));
    }
    let r2k = radius_squared(1, n).pow_with_cap(k, n);
    let g = scalar_times_identity(&r2k, n)?;
    let f = Field::from_linear(block_rotation_matrix(1), n)?.add(&g)?;
    Ok((f, g))
}

/// The six-dimensional block-rotation family with diagonal `SO(3)` action:
/// `f = Au + p(u) u` where `A` is the `6x6` block rotation and `p` is a
/// polynomial of degree `2k` in the quadratic invariants
/// `rho = (x.x, y.y, x.y)`; the symmetry candidate is `g = (x^2+y^2)^k u`.
///
/// `p_choice`, when given, is a polynomial in three variables (standing for
/// the invariants, in that order) homogeneous of degree `k`, so that the
/// substituted `p(u)` is homogeneous of degree `2k`; the default is
/// `(rho_1 + rho_2)^k = (x^2+y^2)^k`. Returns the two fields and the three
/// invariant polynomials.
pub fn build_example_so3(
    k: u32,
    p_choice: Option<&Poly>,
    n: u32,
) -> Result<(Field, Field, Vec<Poly>)> {
    if k < 1 {
        return Err(Error::precondition("k must be at least 1"));
    }
    if n < 2 * k + 1 {
        return Err(Error::degree(format!(
            "truncation {n} cannot hold the degree-{} terms",
            2 * k + 1
        )));
    }
    let m = 3;
    let dim = 2 * m;

    // The quadratic invariants of the diagonal action.
    let mut x_dot_x = Poly::zero(dim, n);
    let mut y_dot_y = Poly::zero(dim, n);
    let mut x_dot_y = Poly::zero(dim, n);
    for i in 0..m {
        x_dot_x.add_term(MultiIndex::zero(dim).add_unit(i).add_unit(i), Coeff::integer(1));
        y_dot_y.add_term(
            MultiIndex::zero(dim).add_unit(m + i).add_unit(m + i),
            Coeff::integer(1),
        );
        x_dot_y.add_term(
            MultiIndex::zero(dim).add_unit(i).add_unit(m + i),
            Coeff::integer(1),
        );
    }
    let invariants = vec![x_dot_x.clone(), y_dot_y.clone(), x_dot_y.clone()];

    let p_in_u = match p_choice {
        None => radius_squared(m, n).pow_with_cap(k, n),
        Some(p) => {
            if p.dim() != 3 {
                return Err(Error::dimension(
                    "p must be a polynomial in the three invariants".to_string(),
                ));
            }
            if !p.is_homogeneous_of_degree(k) || p.is_zero() {
                return Err(Error::degree(format!(
                    "p must be nonzero and homogeneous of degree {k} in the invariants"
                )));
            }
            p.substitute(&invariants, n)?
        }
    };

    let f = Field::from_linear(block_rotation_matrix(m), n)?
        .add(&scalar_times_identity(&p_in_u, n)?)?;
    let r2k = radius_squared(m, n).pow_with_cap(k, n);
    let g = scalar_times_identity(&r2k, n)?;
    Ok((f, g, invariants))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrals::linear_directional_derivative;
    use crate::symmetry::check_symmetry;

    fn int(x: i64) -> Coeff {
        Coeff::integer(x)
    }

    #[test]
    fn rotation_family_construction() {
        let (f, g) = build_example_rotation2d(1, 6).unwrap();
        assert_eq!(f.linear_part(), &block_rotation_matrix(1));
        assert!(g.linear_part().is_zero());
        // Nonlinear terms live exactly at degree 2k + 1.
        assert!(f.nonlinear_terms().all(|(_, q, _)| q.degree() == 3));
        assert!(check_symmetry(&f, &g, 6).unwrap().is_zero());

        let (f2, g2) = build_example_rotation2d(2, 7).unwrap();
        assert!(f2.nonlinear_terms().all(|(_, q, _)| q.degree() == 5));
        assert!(check_symmetry(&f2, &g2, 7).unwrap().is_zero());

        assert!(build_example_rotation2d(2, 4).is_err());
        assert!(build_example_rotation2d(0, 6).is_err());
    }

    #[test]
    fn so3_family_symmetry_residual_is_zero() {
        let (f, g, _) = build_example_so3(1, None, 5).unwrap();
        assert_eq!(f.dim(), 6);
        assert!(check_symmetry(&f, &g, 5).unwrap().is_zero());
        assert!(g.linear_part().is_zero());
    }

    #[test]
    fn so3_invariants_flow_under_the_block_rotation() {
        // Along u' = Au: (x.x)' = 2 x.y, (y.y)' = -2 x.y, (x.y)' = y.y - x.x.
        let (_, _, invariants) = build_example_so3(1, None, 5).unwrap();
        let a = block_rotation_matrix(3);
        let d_xx = linear_directional_derivative(&a, &invariants[0]).unwrap();
        let d_yy = linear_directional_derivative(&a, &invariants[1]).unwrap();
        let d_xy = linear_directional_derivative(&a, &invariants[2]).unwrap();
        assert_eq!(d_xx, invariants[2].scale(&int(2)));
        assert_eq!(d_yy, invariants[2].scale(&int(-2)));
        assert_eq!(d_xy, invariants[1].sub(&invariants[0]).unwrap());
    }

    #[test]
    fn so3_custom_invariant_polynomial() {
        // p = rho_3 (= x.y), homogeneous of degree 1 in the invariants.
        let p = Poly::from_terms(
            3,
            2,
            vec![(MultiIndex::new(vec![0, 0, 1]), int(1))],
        )
        .unwrap();
        let (f, g, invariants) = build_example_so3(1, Some(&p), 5).unwrap();
        assert!(check_symmetry(&f, &g, 5).unwrap().is_zero());
        // The substituted field uses x.y itself.
        let expected = scalar_times_identity(&invariants[2], 5).unwrap();
        assert_eq!(f.nonlinear_part(), expected);

        // Wrong homogeneity degree is rejected.
        let bad = Poly::from_terms(
            3,
            3,
            vec![(MultiIndex::new(vec![1, 1, 0]), int(1))],
        )
        .unwrap();
        assert!(build_example_so3(1, Some(&bad), 5).is_err());
    }
}
