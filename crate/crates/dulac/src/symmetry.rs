//! Lie point symmetry checks and symmetry transport through a stored
//! normalization.

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::normal_form::NormalizationResult;
use crate::scalar::Scalar;

/// The symmetry residual `{f, g}` truncated at degree `n`. A zero residual
/// certifies that `g` generates a Lie point symmetry of `u' = f(u)` up to
/// that degree. `n` must not exceed either operand's truncation (the bracket
/// is only sound there).
pub fn check_symmetry<S: Scalar>(
    f: &VectorField<S>,
    g: &VectorField<S>,
    n: u32,
) -> Result<VectorField<S>> {
    if n > f.truncation() || n > g.truncation() {
        return Err(Error::precondition(format!(
            "degree {n} exceeds a truncation ({} / {})",
            f.truncation(),
            g.truncation()
        )));
    }
    Ok(f.lie_bracket(g)?.truncate_to(n))
}

/// Carry a field through the coordinate changes stored in a normalization
/// (eigen frame first, then each degree's near-identity change, in order).
/// Near-identity changes preserve the linear part, so the transported field
/// has linear part `P^{-1} B P` (or `B` itself when no basis was involved).
pub fn transport_symmetry<S: Scalar>(
    g: &VectorField<S>,
    nr: &NormalizationResult<S>,
) -> Result<VectorField<S>> {
    if g.truncation() < nr.truncation {
        return Err(Error::precondition(format!(
            "symmetry truncation {} is below the normalization degree {}",
            g.truncation(),
            nr.truncation
        )));
    }
    nr.transport(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ExactMatrix;
    use crate::multiindex::MultiIndex;
    use crate::normal_form::{eigenbasis_for_block_rotation, normalize, EigenData};
    use crate::scalar::GaussianRational;

    type F = VectorField<GaussianRational>;
    type M = ExactMatrix<GaussianRational>;

    fn int(x: i64) -> GaussianRational {
        GaussianRational::integer(x)
    }

    fn rotation_pair(trunc: u32) -> (F, F) {
        let a = M::from_rows(vec![vec![int(0), int(1)], vec![int(-1), int(0)]]).unwrap();
        let cubic = vec![
            (0, MultiIndex::new(vec![3, 0]), int(1)),
            (0, MultiIndex::new(vec![1, 2]), int(1)),
            (1, MultiIndex::new(vec![2, 1]), int(1)),
            (1, MultiIndex::new(vec![0, 3]), int(1)),
        ];
        let f = F::from_parts(a, cubic.clone(), trunc).unwrap();
        let g = F::from_parts(M::zero(2, 2), cubic, trunc).unwrap();
        (f, g)
    }

    #[test]
    fn field_commutes_with_itself() {
        let (f, _) = rotation_pair(5);
        assert!(check_symmetry(&f, &f, 5).unwrap().is_zero());
    }

    #[test]
    fn rotation_family_symmetry_residual_is_zero() {
        let (f, g) = rotation_pair(5);
        assert!(check_symmetry(&f, &g, 5).unwrap().is_zero());
    }

    #[test]
    fn broken_symmetry_has_the_expected_residual() {
        // f = (u1, 2u2), g = (u2, 0): {f,g} = (u2, 0).
        let f = F::from_linear(M::diagonal(&[int(1), int(2)]), 4).unwrap();
        let g = F::from_parts(
            M::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(0)]]).unwrap(),
            vec![],
            4,
        )
        .unwrap();
        let residual = check_symmetry(&f, &g, 4).unwrap();
        let expected = F::from_parts(
            M::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(0)]]).unwrap(),
            vec![],
            4,
        )
        .unwrap();
        assert_eq!(residual, expected);
    }

    #[test]
    fn transport_with_trivial_normalization_is_identity() {
        // A field already in normal form stores only zero generators.
        let a = vec![int(1), int(2)];
        let f = F::from_parts(
            M::diagonal(&a),
            vec![(1, MultiIndex::new(vec![2, 0]), int(1))],
            5,
        )
        .unwrap();
        let nr = normalize(&f, &EigenData::diagonal(a), 5).unwrap();
        let g = F::from_linear(M::diagonal(&[int(3), int(6)]), 5).unwrap();
        assert_eq!(transport_symmetry(&g, &nr).unwrap(), g);
    }

    #[test]
    fn transport_preserves_commutation() {
        let (f, g) = rotation_pair(6);
        let eigen = eigenbasis_for_block_rotation(1);
        let nr = normalize(&f, &eigen, 6).unwrap();
        let g_t = transport_symmetry(&g, &nr).unwrap();
        // The transported pair still commutes at the shared truncation.
        let residual = nr.normal_form.lie_bracket(&g_t).unwrap();
        assert!(residual.is_zero());
        // The linear part transports to P^{-1} B P = 0 here.
        assert!(g_t.linear_part().is_zero());
    }

    #[test]
    fn transport_commutes_with_bracket() {
        let (f, g) = rotation_pair(6);
        let h = F::from_parts(
            M::from_rows(vec![vec![int(0), int(1)], vec![int(-1), int(0)]]).unwrap(),
            vec![(0, MultiIndex::new(vec![2, 0]), int(1))],
            6,
        )
        .unwrap();
        let eigen = eigenbasis_for_block_rotation(1);
        let nr = normalize(&f, &eigen, 6).unwrap();
        // Transport then bracket equals bracket then transport, up to the
        // sound truncation of both routes.
        let lhs = transport_symmetry(&g, &nr)
            .unwrap()
            .lie_bracket(&transport_symmetry(&h, &nr).unwrap())
            .unwrap();
        let rhs = transport_symmetry(&g.lie_bracket(&h).unwrap(), &nr).unwrap();
        let cap = lhs.truncation().min(rhs.truncation());
        assert_eq!(lhs.truncate_to(cap), rhs.truncate_to(cap));
    }
}
