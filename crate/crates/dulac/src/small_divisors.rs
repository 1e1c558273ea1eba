//! Small-divisor diagnostics: per-horizon minima of `|(q,a)|` (or the
//! shifted `|(q,a) - a_j|`) over the exponent lattice, with partial sums of
//! `sum 2^-k ln omega_k` rendered at high precision.
//!
//! A finite computation can never prove the full summability condition, so
//! the verdict only ever states what held up to the requested horizon.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::precision::{decimal_fixed, ln_rational, sqrt_decimal};
use crate::scalar::Scalar;

/// Which divisor is minimized.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OmegaVariant {
    /// `|(q, a)|` over `(q, a) != 0`.
    Paper,
    /// `|(q, a) - a_j|` over all components `j` with a nonzero value; the
    /// divisor that actually appears in the homological equations.
    Shifted,
}

impl OmegaVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            OmegaVariant::Paper => "paper",
            OmegaVariant::Shifted => "shifted",
        }
    }
}

/// Options for [`check_omega`].
#[derive(Clone, Debug)]
pub struct OmegaOptions {
    pub k_max: u32,
    pub variant: OmegaVariant,
    /// Require every exponent `q_i >= 1` (the literal reading) instead of
    /// the default `q >= 0`, `sum q_i >= 1`.
    pub strict_positive: bool,
    /// Abort when the lattice holds more points than this.
    pub budget: u64,
    /// Worker threads for the lattice sweep; results are independent of the
    /// count by construction.
    pub threads: usize,
    /// Decimal digits for reported approximations.
    pub precision: usize,
    /// Lower bound the partial sums must stay above for the
    /// `holds-at-horizon` verdict.
    pub threshold: BigRational,
}

impl Default for OmegaOptions {
    fn default() -> Self {
        OmegaOptions {
            k_max: 8,
            variant: OmegaVariant::Paper,
            strict_positive: false,
            budget: 10_000_000,
            threads: 1,
            precision: 50,
            threshold: -BigRational::from_integer(BigInt::from(1_000_000)),
        }
    }
}

/// The minimum for one horizon `k`: the exact squared modulus, the exponent
/// vector achieving it, and (for the shifted variant) the component index.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OmegaRecord {
    pub k: u32,
    pub omega_sq: BigRational,
    pub minimizer: MultiIndex,
    pub component: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OmegaVerdict {
    HoldsAtHorizon,
    Violated,
    Indeterminate,
}

impl OmegaVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            OmegaVerdict::HoldsAtHorizon => "holds-at-horizon",
            OmegaVerdict::Violated => "violated",
            OmegaVerdict::Indeterminate => "indeterminate",
        }
    }
}

/// Outcome of the small-divisor sweep.
#[derive(Clone, Debug)]
pub struct OmegaReport<S> {
    pub eigenvalues: Vec<S>,
    pub variant: OmegaVariant,
    pub strict_positive: bool,
    pub k_max: u32,
    /// One entry per horizon `k = 1..=k_max`; `None` when no admissible
    /// lattice point exists at that horizon.
    pub records: Vec<Option<OmegaRecord>>,
    /// Exact rational approximations (error below `10^-precision`) of the
    /// partial sums `sum_{k<=K} 2^-k ln omega_k`, one per horizon, skipping
    /// horizons without a record.
    pub partial_sums: Vec<BigRational>,
    /// Fixed-point decimal renderings of the partial sums.
    pub partial_sum_decimals: Vec<String>,
    pub precision: usize,
    pub verdict: OmegaVerdict,
}

impl<S: Scalar> OmegaReport<S> {
    /// Decimal rendering of `omega_k` (the square root of the stored exact
    /// squared modulus) for horizon `k`.
    pub fn omega_decimal(&self, k: u32) -> Result<Option<String>> {
        match &self.records[(k - 1) as usize] {
            None => Ok(None),
            Some(r) => Ok(Some(sqrt_decimal(&r.omega_sq, self.precision)?)),
        }
    }
}

/// Number of lattice points `q` with `1 <= sum q_i < 2^k` (and `q_i >= 1`
/// for the strict variant), as a big integer.
fn lattice_count(n: usize, k: u32, strict: bool) -> BigUint {
    // Points with sum <= b in n nonnegative coordinates: C(b + n, n).
    fn binomial(top: u64, k: u64) -> BigUint {
        let mut acc = BigUint::one();
        for i in 0..k {
            acc = acc * BigUint::from(top - i) / BigUint::from(i + 1);
        }
        acc
    }
    let bound = (1u64 << k) - 1;
    if strict {
        if bound < n as u64 {
            return BigUint::zero();
        }
        binomial(bound, n as u64)
    } else {
        binomial(bound + n as u64, n as u64) - BigUint::one()
    }
}

/// Smallest `k` with `sum < 2^k`, for `sum >= 1`.
fn first_horizon(sum: u32) -> u32 {
    let mut k = 1;
    while (1u64 << k) <= u64::from(sum) {
        k += 1;
    }
    k
}

type Candidate = (BigRational, MultiIndex, Option<usize>);

/// Keep the candidate with the smaller squared modulus, breaking ties by
/// graded-lex order of the exponent vector and then by component. The merge
/// is a total order, so the result does not depend on visit order.
fn merge(slot: &mut Option<Candidate>, candidate: Candidate) {
    match slot {
        None => *slot = Some(candidate),
        Some(best) => {
            let better = candidate.0 < best.0
                || (candidate.0 == best.0
                    && (candidate.1 < best.1
                        || (candidate.1 == best.1 && candidate.2 < best.2)));
            if better {
                *slot = Some(candidate);
            }
        }
    }
}

fn scan_lattice<S: Scalar>(
    a: &[S],
    opts: &OmegaOptions,
    first_exponent: u32,
) -> Vec<Option<Candidate>> {
    let n = a.len();
    let bound = (1u64 << opts.k_max) - 1;
    let mut best: Vec<Option<Candidate>> = vec![None; opts.k_max as usize];
    let min_exp = u32::from(opts.strict_positive);
    let mut exps = vec![0u32; n];
    exps[0] = first_exponent;

    fn recurse<S: Scalar>(
        a: &[S],
        opts: &OmegaOptions,
        exps: &mut Vec<u32>,
        pos: usize,
        remaining: u64,
        min_exp: u32,
        best: &mut [Option<Candidate>],
    ) {
        if pos == exps.len() {
            let q = MultiIndex::new(exps.clone());
            let sum = q.degree();
            if sum == 0 {
                return;
            }
            let k0 = first_horizon(sum);
            if k0 > opts.k_max {
                return;
            }
            let inner = crate::normal_form::inner_product(&q, a);
            match opts.variant {
                OmegaVariant::Paper => {
                    if !inner.is_zero() {
                        merge(&mut best[(k0 - 1) as usize], (inner.abs_sq(), q, None));
                    }
                }
                OmegaVariant::Shifted => {
                    for (j, aj) in a.iter().enumerate() {
                        let value = inner.clone() - aj.clone();
                        if !value.is_zero() {
                            merge(
                                &mut best[(k0 - 1) as usize],
                                (value.abs_sq(), q.clone(), Some(j)),
                            );
                        }
                    }
                }
            }
            return;
        }
        let high = remaining.min(u64::from(u32::MAX)) as u32;
        for v in min_exp..=high {
            exps[pos] = v;
            recurse(a, opts, exps, pos + 1, remaining - u64::from(v), min_exp, best);
        }
        exps[pos] = 0;
    }

    if u64::from(first_exponent) <= bound && first_exponent >= min_exp {
        recurse(
            a,
            opts,
            &mut exps,
            1,
            bound - u64::from(first_exponent),
            min_exp,
            &mut best,
        );
    }
    best
}

/// Sweep the lattice `1 <= sum q_i < 2^k` for every `k <= k_max` and report
/// the per-horizon minima, partial sums, and a horizon-limited verdict.
pub fn check_omega<S: Scalar>(a: &[S], opts: &OmegaOptions) -> Result<OmegaReport<S>> {
    if a.is_empty() {
        return Err(Error::precondition("eigenvalue vector is empty"));
    }
    if a.iter().all(Zero::is_zero) {
        return Err(Error::precondition(
            "all eigenvalues are zero; every divisor vanishes",
        ));
    }
    if opts.k_max < 1 {
        return Err(Error::precondition("k_max must be at least 1"));
    }
    if opts.k_max > 40 {
        return Err(Error::precondition("k_max above 40 is not supported"));
    }
    let count = lattice_count(a.len(), opts.k_max, opts.strict_positive);
    if count > BigUint::from(opts.budget) {
        return Err(Error::BudgetExceeded(format!(
            "lattice holds {count} points, budget is {}",
            opts.budget
        )));
    }

    let bound = (1u64 << opts.k_max) - 1;
    let first_range: Vec<u32> = if a.len() == 1 {
        (u32::from(opts.strict_positive).max(1)..=bound as u32).collect()
    } else {
        (u32::from(opts.strict_positive)..=bound as u32).collect()
    };
    let threads = opts.threads.max(1).min(first_range.len().max(1));

    let mut best: Vec<Option<Candidate>> = vec![None; opts.k_max as usize];
    if threads <= 1 {
        for &e in &first_range {
            for (slot, candidate) in best.iter_mut().zip(scan_lattice(a, opts, e)) {
                if let Some(c) = candidate {
                    merge(slot, c);
                }
            }
        }
    } else {
        let chunks: Vec<&[u32]> = first_range.chunks(first_range.len().div_ceil(threads)).collect();
        let partials: Vec<Vec<Option<Candidate>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|chunk| {
                    scope.spawn(move || {
                        let mut local: Vec<Option<Candidate>> =
                            vec![None; opts.k_max as usize];
                        for &e in chunk {
                            for (slot, candidate) in
                                local.iter_mut().zip(scan_lattice(a, opts, e))
                            {
                                if let Some(c) = candidate {
                                    merge(slot, c);
                                }
                            }
                        }
                        local
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for partial in partials {
            for (slot, candidate) in best.iter_mut().zip(partial) {
                if let Some(c) = candidate {
                    merge(slot, c);
                }
            }
        }
    }

    // Prefix-min across horizons: the candidate set grows with k.
    let mut records: Vec<Option<OmegaRecord>> = Vec::with_capacity(opts.k_max as usize);
    let mut running: Option<Candidate> = None;
    for (idx, slot) in best.into_iter().enumerate() {
        if let Some(c) = slot {
            merge(&mut running, c);
        }
        records.push(running.clone().map(|(omega_sq, minimizer, component)| {
            OmegaRecord {
                k: idx as u32 + 1,
                omega_sq,
                minimizer,
                component,
            }
        }));
    }

    // Partial sums: S_K = sum_{k<=K} 2^-k * ln(omega_sq_k) / 2.
    let ln_digits = opts.precision + 10;
    let mut partial_sums = Vec::with_capacity(opts.k_max as usize);
    let mut acc = BigRational::zero();
    for record in &records {
        if let Some(r) = record {
            if !r.omega_sq.is_one() {
                let ln_sq = ln_rational(&r.omega_sq, ln_digits)?;
                let weight = BigRational::new(
                    BigInt::one(),
                    BigInt::from(2u32).pow(r.k + 1),
                );
                acc += ln_sq * weight;
            }
        }
        partial_sums.push(acc.clone());
    }
    let partial_sum_decimals: Vec<String> = partial_sums
        .iter()
        .map(|s| decimal_fixed(s, opts.precision))
        .collect();

    let verdict = if records.last().is_none_or(Option::is_none) {
        OmegaVerdict::Indeterminate
    } else if partial_sums.iter().any(|s| *s < opts.threshold) {
        OmegaVerdict::Violated
    } else if records.iter().any(Option::is_none) {
        OmegaVerdict::Indeterminate
    } else {
        OmegaVerdict::HoldsAtHorizon
    };

    Ok(OmegaReport {
        eigenvalues: a.to_vec(),
        variant: opts.variant,
        strict_positive: opts.strict_positive,
        k_max: opts.k_max,
        records,
        partial_sums,
        partial_sum_decimals,
        precision: opts.precision,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;

    fn int(x: i64) -> GaussianRational {
        GaussianRational::integer(x)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Brute-force oracle: re-enumerate the full lattice for one horizon.
    fn oracle_min(
        a: &[GaussianRational],
        k: u32,
        variant: OmegaVariant,
        strict: bool,
    ) -> Option<BigRational> {
        let n = a.len();
        let bound = (1u32 << k) - 1;
        let mut best: Option<BigRational> = None;
        let mut exps = vec![0u32; n];
        loop {
            let q = MultiIndex::new(exps.clone());
            let sum = q.degree();
            let admissible = sum >= 1
                && sum <= bound
                && (!strict || exps.iter().all(|&e| e >= 1));
            if admissible {
                let inner = crate::normal_form::inner_product(&q, a);
                let values: Vec<GaussianRational> = match variant {
                    OmegaVariant::Paper => vec![inner],
                    OmegaVariant::Shifted => {
                        a.iter().map(|aj| inner.clone() - aj.clone()).collect()
                    }
                };
                for v in values {
                    if !v.is_zero() {
                        let sq = v.abs_sq();
                        if best.as_ref().is_none_or(|b| sq < *b) {
                            best = Some(sq);
                        }
                    }
                }
            }
            // Odometer over exponent vectors with entries <= bound.
            let mut pos = 0;
            loop {
                if pos == n {
                    return best;
                }
                if exps[pos] < bound {
                    exps[pos] += 1;
                    break;
                }
                exps[pos] = 0;
                pos += 1;
            }
        }
    }

    fn opts(k_max: u32) -> OmegaOptions {
        OmegaOptions {
            k_max,
            precision: 50,
            ..OmegaOptions::default()
        }
    }

    #[test]
    fn pure_rotation_has_unit_divisors() {
        let a = vec![GaussianRational::i(), -GaussianRational::i()];
        let report = check_omega(&a, &opts(5)).unwrap();
        for record in report.records.iter().flatten() {
            assert_eq!(record.omega_sq, rat(1, 1));
        }
        for sum in &report.partial_sums {
            assert!(sum.is_zero());
        }
        assert_eq!(report.verdict, OmegaVerdict::HoldsAtHorizon);
    }

    #[test]
    fn integer_spectrum_minimizer() {
        let a = vec![int(1), int(2)];
        let report = check_omega(&a, &opts(4)).unwrap();
        let r1 = report.records[0].as_ref().unwrap();
        assert_eq!(r1.omega_sq, rat(1, 1));
        assert_eq!(r1.minimizer, MultiIndex::new(vec![1, 0]));
    }

    #[test]
    fn half_integer_spectrum_reaches_one_half() {
        let a = vec![
            GaussianRational::integer(1),
            GaussianRational::ratio(-3, 2),
        ];
        let report = check_omega(&a, &opts(4)).unwrap();
        assert_eq!(report.records[0].as_ref().unwrap().omega_sq, rat(1, 1));
        for k in 2..=4u32 {
            let r = report.records[(k - 1) as usize].as_ref().unwrap();
            assert_eq!(r.omega_sq, rat(1, 4), "omega_k^2 at k={k}");
            assert_eq!(r.minimizer, MultiIndex::new(vec![1, 1]));
        }
    }

    #[test]
    fn matches_brute_force_oracle() {
        let spectra: Vec<Vec<GaussianRational>> = vec![
            vec![GaussianRational::i(), -GaussianRational::i()],
            vec![int(1), int(2)],
            vec![int(1), GaussianRational::ratio(-3, 2)],
            vec![GaussianRational::ratio(2, 3), int(-1), int(2)],
            vec![GaussianRational::new(rat(1, 2), rat(1, 3)), int(1)],
        ];
        for a in spectra {
            for variant in [OmegaVariant::Paper, OmegaVariant::Shifted] {
                for strict in [false, true] {
                    let options = OmegaOptions {
                        k_max: 3,
                        variant,
                        strict_positive: strict,
                        ..opts(3)
                    };
                    let report = check_omega(&a, &options).unwrap();
                    for k in 1..=3u32 {
                        let expected = oracle_min(&a, k, variant, strict);
                        let got = report.records[(k - 1) as usize]
                            .as_ref()
                            .map(|r| r.omega_sq.clone());
                        assert_eq!(got, expected, "a={a:?} k={k} {variant:?} strict={strict}");
                    }
                }
            }
        }
    }

    #[test]
    fn omega_is_nonincreasing_and_minimizers_verify() {
        let a = vec![int(2), GaussianRational::ratio(-5, 3), GaussianRational::i()];
        let report = check_omega(&a, &opts(4)).unwrap();
        let mut previous: Option<BigRational> = None;
        for record in report.records.iter().flatten() {
            if let Some(p) = &previous {
                assert!(record.omega_sq <= *p);
            }
            // Each recorded minimizer satisfies its own constraint set.
            assert!(record.minimizer.degree() >= 1);
            assert!(u64::from(record.minimizer.degree()) < (1u64 << record.k));
            let inner = crate::normal_form::inner_product(&record.minimizer, &a);
            assert!(!inner.is_zero());
            assert_eq!(inner.abs_sq(), record.omega_sq);
            previous = Some(record.omega_sq.clone());
        }
    }

    #[test]
    fn strict_variant_handles_empty_horizons() {
        let a = vec![int(1), int(-1), int(2)];
        let options = OmegaOptions {
            strict_positive: true,
            ..opts(3)
        };
        let report = check_omega(&a, &options).unwrap();
        // k=1 requires sum q < 2 with all q_i >= 1: impossible for n=3.
        assert!(report.records[0].is_none());
        assert!(report.records[2].is_some());
        assert_eq!(report.verdict, OmegaVerdict::Indeterminate);
    }

    #[test]
    fn budget_guard_trips() {
        let a = vec![int(1); 6];
        let options = OmegaOptions {
            k_max: 8,
            budget: 1000,
            ..opts(8)
        };
        assert!(matches!(
            check_omega(&a, &options),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let a = vec![int(1), GaussianRational::ratio(-3, 2)];
        let single = check_omega(&a, &opts(5)).unwrap();
        let multi = check_omega(
            &a,
            &OmegaOptions {
                threads: 4,
                ..opts(5)
            },
        )
        .unwrap();
        assert_eq!(single.records, multi.records);
        assert_eq!(single.partial_sum_decimals, multi.partial_sum_decimals);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(check_omega(&Vec::<GaussianRational>::new(), &opts(3)).is_err());
        assert!(check_omega(&[int(0), int(0)], &opts(3)).is_err());
    }
}
