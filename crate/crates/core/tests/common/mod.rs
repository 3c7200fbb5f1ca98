#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use lpsum::exponents::{DomainVector, ExtExponent, Rational};
use lpsum::tensors::CoefficientTensor;

/// Reciprocal `k/d` in `[0, 1]` with a small denominator.
pub fn recip() -> impl Strategy<Value = Rational> {
    (1i128..=12).prop_flat_map(|d| (0..=d).prop_map(move |k| Rational::new(k, d)))
}

/// Reciprocal `k/d` in `[lo, hi]`.
pub fn recip_between(lo: Rational, hi: Rational) -> impl Strategy<Value = Rational> {
    recip().prop_map(move |t| lo + (hi - lo) * t)
}

pub fn exponent() -> impl Strategy<Value = ExtExponent> {
    recip().prop_map(|r| ExtExponent::from_recip(r).unwrap())
}

pub fn domain(max_m: usize) -> impl Strategy<Value = DomainVector> {
    prop::collection::vec(exponent(), 1..=max_m).prop_map(|ps| DomainVector::new(ps).unwrap())
}

/// `m` reciprocals in `[0, 1]` summing to `s`, split by the weights `w`.
pub fn split(s: Rational, w: &[u8]) -> DomainVector {
    let m = w.len();
    let one = Rational::from_integer(1);
    let total: i128 = w.iter().map(|&x| x as i128 + 1).sum();
    let mut rs: Vec<Rational> = w.iter().map(|&x| s * Rational::new(x as i128 + 1, total)).collect();
    // push overflow above 1 into the other slots
    for i in 0..m {
        if rs[i] > one {
            let extra = rs[i] - one;
            rs[i] = one;
            let j = (i + 1) % m;
            rs[j] += extra;
        }
    }
    assert!(rs.iter().all(|r| *r <= one), "cannot split {s} over {m} slots");
    DomainVector::new(rs.into_iter().map(|r| ExtExponent::from_recip(r).unwrap()).collect()).unwrap()
}

pub fn complex_entries(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
        .collect()
}

/// Random complex Gaussian tensor with the given shape.
pub fn gaussian(dims: Vec<usize>, target: usize, seed: u64) -> CoefficientTensor {
    let len = dims.iter().product::<usize>() * target.max(1);
    CoefficientTensor::new(dims, target, complex_entries(len, seed)).unwrap()
}

/// Shape with `1..=max_m` slots of size `1..=max_n`, plus an optional target.
pub fn shape(max_m: usize, max_n: usize, max_target: usize) -> impl Strategy<Value = (Vec<usize>, usize)> {
    (prop::collection::vec(1..=max_n, 1..=max_m), 0..=max_target)
}
