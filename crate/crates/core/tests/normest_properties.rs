mod common;

use num_complex::Complex64;
use proptest::prelude::*;

use common::{complex_entries, gaussian};
use lpsum::constructions::{diagonal_scalar, diagonal_vector, fourier_vector, random_sign};
use lpsum::exponents::{lambda_exponent, DomainVector, ExtExponent};
use lpsum::normest::{
    ascend, brute_force_norm, dual_maximizer, estimate_norm, EstimatorConfig, NormEstimate,
};
use lpsum::par::Execution;
use lpsum::tensors::{contract_except, evaluate, lq_norm, MultilinearSpec};

const PS: [&str; 8] = ["1", "4/3", "3/2", "2", "3", "4", "8", "inf"];

fn exponent_from(i: usize) -> ExtExponent {
    PS[i % PS.len()].parse().unwrap()
}

fn domain_from(ix: &[usize]) -> DomainVector {
    DomainVector::new(ix.iter().map(|&i| exponent_from(i)).collect()).unwrap()
}

fn objective(t: &lpsum::tensors::CoefficientTensor, xs: &[Vec<Complex64>]) -> f64 {
    let refs: Vec<&[Complex64]> = xs.iter().map(Vec::as_slice).collect();
    evaluate(t, &refs).unwrap()[0].norm()
}

fn assert_bit_equal(a: &NormEstimate, b: &NormEstimate) {
    assert_eq!(a.value.to_bits(), b.value.to_bits());
    assert_eq!(a.best_restart, b.best_restart);
    for (x, y) in a.maximizer.iter().flatten().zip(b.maximizer.iter().flatten()) {
        assert_eq!((x.re.to_bits(), x.im.to_bits()), (y.re.to_bits(), y.im.to_bits()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ascent_is_monotone(dims in prop::collection::vec(1usize..=5, 1..=3), pix in prop::collection::vec(0usize..8, 3), seed in any::<u64>()) {
        let t = gaussian(dims.clone(), 0, seed);
        let ps = domain_from(&pix[..dims.len()]);
        let start: Vec<Vec<Complex64>> = dims.iter().zip(ps.ps()).enumerate().map(|(j, (&n, p))| {
            let x = complex_entries(n, seed ^ (j as u64 + 7));
            let norm = lq_norm(&x, *p);
            x.into_iter().map(|z| z / norm).collect()
        }).collect();
        let run = ascend(&t, &ps, start, 200, 1e-12).unwrap();
        for w in run.history.windows(2) {
            prop_assert!(w[1] >= w[0] - 1e-12 * w[0].max(1.0), "{} after {}", w[1], w[0]);
        }
        prop_assert!((run.value - objective(&t, &run.xs)).abs() <= 1e-12 * run.value.max(1.0));
    }

    #[test]
    fn converged_estimate_is_slotwise_stationary(dims in prop::collection::vec(1usize..=4, 1..=3), pix in prop::collection::vec(0usize..8, 3), seed in any::<u64>()) {
        let t = gaussian(dims.clone(), 0, seed);
        let ps = domain_from(&pix[..dims.len()]);
        let spec = MultilinearSpec::scalar(ps.clone());
        let cfg = EstimatorConfig::default().with_restarts(8).with_seed(seed);
        let est = estimate_norm(&t, &spec, &cfg).unwrap();
        prop_assume!(est.converged);
        let refs: Vec<&[Complex64]> = est.maximizer.iter().map(Vec::as_slice).collect();
        for (j, p) in ps.ps().iter().enumerate() {
            let c = contract_except(&t, &refs, j).unwrap();
            let (best, _) = dual_maximizer(&c, *p);
            // one more slot update cannot beat the converged value by more than the sweep tolerance
            prop_assert!(best - est.value <= 1e-10 * est.value.max(1e-300), "slot {j}: {best} vs {}", est.value);
        }
    }

    #[test]
    fn estimate_is_deterministic(dims in prop::collection::vec(1usize..=4, 1..=3), target in 0usize..3, pix in prop::collection::vec(0usize..8, 3), seed in any::<u64>()) {
        let t = gaussian(dims.clone(), target, seed);
        let ps = domain_from(&pix[..dims.len()]);
        let spec = if target > 0 {
            MultilinearSpec::lu_valued(ps, exponent_from(pix[0] + 1), ExtExponent::infinity()).unwrap()
        } else {
            MultilinearSpec::scalar(ps)
        };
        let cfg = EstimatorConfig::default().with_restarts(12).with_seed(seed);
        let a = estimate_norm(&t, &spec, &cfg).unwrap();
        let b = estimate_norm(&t, &spec, &cfg).unwrap();
        let c = estimate_norm(&t, &spec, &EstimatorConfig { execution: Execution::Sequential, ..cfg }).unwrap();
        assert_bit_equal(&a, &b);
        assert_bit_equal(&a, &c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn estimate_never_exceeds_oracle(dims in prop::collection::vec(1usize..=3, 1..=2), target in 0usize..3, pix in prop::collection::vec(0usize..8, 3), seed in any::<u64>()) {
        let t = gaussian(dims.clone(), target, seed);
        let ps = domain_from(&pix[..dims.len()]);
        let spec = if target > 0 {
            MultilinearSpec::lu_valued(ps, exponent_from(pix[2]), ExtExponent::infinity()).unwrap()
        } else {
            MultilinearSpec::scalar(ps)
        };
        let est = estimate_norm(&t, &spec, &EstimatorConfig::default()).unwrap().value;
        let oracle = brute_force_norm(&t, &spec, 8).unwrap();
        prop_assert!(est <= oracle + 1e-6, "{est} > {oracle}");
    }

    #[test]
    fn scalarization_matches_direct_oracle(pix in prop::collection::vec(0usize..8, 2), u in 0usize..8, seed in any::<u64>()) {
        let t = gaussian(vec![2, 2], 2, seed);
        let spec = MultilinearSpec::lu_valued(domain_from(&pix), exponent_from(u), ExtExponent::infinity()).unwrap();
        let est = estimate_norm(&t, &spec, &EstimatorConfig::default()).unwrap().value;
        let oracle = brute_force_norm(&t, &spec, 12).unwrap();
        prop_assert!((est - oracle).abs() <= 1e-6 * oracle.max(1.0), "{est} vs {oracle}");
    }

    #[test]
    fn constructions_respect_their_bounds(kind in 0usize..4, n in 1usize..=9, pix in prop::collection::vec(4usize..8, 2), u in prop::sample::select(vec!["1", "4/3", "3/2", "2"]), seed in any::<u64>()) {
        let ps = domain_from(&pix);
        let u: ExtExponent = u.parse().unwrap();
        let out = match kind {
            0 => diagonal_scalar(n, &ps),
            1 => diagonal_vector(n, &ps, u),
            2 => fourier_vector(n, &ps, u),
            _ => random_sign(n, &ps, seed),
        };
        prop_assume!(out.is_ok());
        let out = out.unwrap();
        let est = estimate_norm(&out.tensor, &out.spec, &EstimatorConfig::default().with_restarts(16)).unwrap().value;
        prop_assert!(est <= out.norm_upper_bound * (1.0 + 1e-9), "{est} > {}", out.norm_upper_bound);
    }

    #[test]
    fn diagonal_estimate_equals_bound(n in 1usize..=12, pix in prop::collection::vec(0usize..8, 1..=3)) {
        let ps = domain_from(&pix);
        prop_assume!(lambda_exponent(ExtExponent::one(), &ps).is_ok());
        let out = diagonal_scalar(n, &ps).unwrap();
        let est = estimate_norm(&out.tensor, &out.spec, &EstimatorConfig::default()).unwrap().value;
        prop_assert!((est / out.norm_upper_bound - 1.0).abs() <= 1e-9, "{est} vs {}", out.norm_upper_bound);
    }
}
