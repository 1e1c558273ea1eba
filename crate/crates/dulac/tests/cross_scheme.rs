//! Cross-scheme oracle: normalization by direct substitution (the library
//! route, built on polynomial composition and a Neumann-series Jacobian
//! inverse) must produce the same normal form as a Lie-series route built
//! only on iterated brackets. With generators constrained to the
//! nonresonant span, the normal form of a diagonal linear part is unique,
//! so exact agreement checks both pipelines at once.

mod common;

use dulac::normal_form::{is_resonant, normalize, solve_homological, EigenData};
use dulac::{Coeff, Field};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `exp(ad_W) h = sum_m ad_W^m h / m!` truncated at `cap`; terminates
/// because `W` is homogeneous of degree >= 2, so each bracket raises the
/// minimum degree.
fn exp_ad(w: &Field, h: &Field, cap: u32) -> Field {
    let mut result = h.truncate_to(cap);
    let mut term = h.truncate_to(cap);
    let mut m: i64 = 1;
    loop {
        term = w.lie_bracket(&term).unwrap().truncate_to(cap);
        if term.is_zero() {
            break;
        }
        let scaled = term.scale(&Coeff::ratio(1, m));
        result = result.add(&scaled).unwrap();
        term = scaled;
        m += 1;
    }
    result
}

fn lie_series_normalize(f: &Field, a: &[Coeff], n: u32) -> Field {
    let mut current = f.truncate_to(n);
    for d in 2..=n {
        let slice = current.homogeneous_part(d).unwrap();
        let (w, _) = solve_homological(a, &slice).unwrap();
        if !w.is_zero() {
            current = exp_ad(&w, &current, n);
        }
    }
    current
}

#[test]
fn direct_substitution_matches_lie_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    for case in 0..30 {
        let nvars = rng.gen_range(1..=3);
        let eigenvalues = common::random_eigenvalues(&mut rng, nvars);
        let field = common::random_diagonal_field(&mut rng, &eigenvalues, 4, 5, 7);
        let direct = normalize(&field, &EigenData::diagonal(eigenvalues.clone()), 7)
            .unwrap()
            .normal_form;
        let lie = lie_series_normalize(&field, &eigenvalues, 7);
        for (j, q, _) in lie.nonlinear_terms() {
            assert!(
                is_resonant(q, j, &eigenvalues),
                "case {case}: Lie route left a nonresonant term"
            );
        }
        assert_eq!(direct, lie, "case {case}: schemes disagree (a={eigenvalues:?})");
    }
}
