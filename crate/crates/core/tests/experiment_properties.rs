use proptest::prelude::*;

use lpsum::constructions::Family;
use lpsum::exponents::{DomainVector, ExtExponent, Rational};
use lpsum::experiments::{
    fit_growth, mixed_sum_check, optimality_slope, sweep, ExperimentConfig, FamilySpec,
    NormSource, DEFAULT_N_GRID, DIVERGENCE_SLOPE,
};
use lpsum::normest::EstimatorConfig;

fn parse(s: &str) -> ExtExponent {
    s.parse().unwrap()
}

/// Families whose predicted exponent is known to be optimal.
fn optimal_family(k: usize) -> FamilySpec {
    match k % 4 {
        0 => FamilySpec::new(Family::Diagonal, "4,4".parse().unwrap()),
        1 => FamilySpec::new(Family::DiagonalVector, "8,8".parse().unwrap())
            .with_u(parse("2"))
            .with_q(parse("inf")),
        2 => FamilySpec::new(Family::DiagonalVector, "4,4".parse().unwrap())
            .with_u(parse("1"))
            .with_q(parse("4")),
        _ => FamilySpec::new(Family::Fourier, "8,8".parse().unwrap())
            .with_u(parse("1"))
            .with_q(parse("4/3")),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn ratios_nonincreasing_above_rho(k in 0usize..4, stretch in 0i128..=4) {
        let fam = optimal_family(k);
        let rho = fam.predicted().unwrap().rho;
        // t = ρ·(1 + stretch/8)
        let t = rho.scaled(Rational::new(8 + stretch, 8)).unwrap();
        let cfg = ExperimentConfig {
            estimator: EstimatorConfig::default().with_restarts(16),
            ..Default::default()
        };
        let res = sweep(&fam, t, &DEFAULT_N_GRID, NormSource::Estimate, &cfg).unwrap();
        prop_assert!(res.is_nonincreasing(), "{k} at {t}: {:?}", res.ratio_values);
    }

    #[test]
    fn below_rho_ratios_diverge(k in 0usize..4) {
        let fam = optimal_family(k);
        let rho = fam.predicted().unwrap().rho;
        let t = rho.scaled(Rational::new(9, 10)).unwrap();
        let fit = optimality_slope(&fam, t, &DEFAULT_N_GRID, &ExperimentConfig::default()).unwrap();
        prop_assert!(fit.slope >= DIVERGENCE_SLOPE, "{k}: slope {}", fit.slope);
    }

    #[test]
    fn mixed_sums_stay_below_constant(m in 1usize..=2, n in 1usize..=3, pix in prop::collection::vec(prop::sample::select(vec!["5", "8", "16", "inf"]), 2), seed in any::<u64>()) {
        let ps = DomainVector::new(pix[..m].iter().map(|s| parse(s)).collect()).unwrap();
        let cfg = ExperimentConfig::default().with_seed(seed);
        let worst = mixed_sum_check(&ps, parse("2"), 6, n, NormSource::BruteForce, &cfg).unwrap();
        let ceiling = 2f64.sqrt().powi(m as i32 - 1) * 1.05;
        prop_assert!(worst <= ceiling, "{worst} > {ceiling}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn growth_fit_tolerates_small_noise(slope in -2.0f64..2.0, scale in 0.01f64..100.0, noise in prop::collection::vec(-0.01f64..0.01, 4)) {
        let ys: Vec<f64> = DEFAULT_N_GRID.iter().zip(&noise).map(|(&n, e)| scale * (n as f64).powf(slope) * (1.0 + e)).collect();
        let fit = fit_growth(&DEFAULT_N_GRID, &ys).unwrap();
        prop_assert!((fit.slope - slope).abs() <= 0.02, "{} vs {slope}", fit.slope);
        prop_assert!(fit.max_residual <= 0.02);
        prop_assert!((fit.intercept - scale.ln()).abs() <= 0.05);
    }
}
