//! Extremal families with analytic upper bounds on their norms.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exponents::{lambda_exponent, ratio_to_f64, DomainVector, ExponentError, ExtExponent};
use crate::tensors::{CoefficientTensor, MultilinearSpec, Result, TensorError};

#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionOutput {
    pub tensor: CoefficientTensor,
    pub spec: MultilinearSpec,
    pub norm_upper_bound: f64,
    pub norm_upper_bound_formula: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Diagonal,
    DiagonalVector,
    Fourier,
    RandomSign,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Diagonal => "diagonal",
            Family::DiagonalVector => "diagonal-vector",
            Family::Fourier => "fourier",
            Family::RandomSign => "random-sign",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "diagonal" => Ok(Family::Diagonal),
            "diagonal-vector" => Ok(Family::DiagonalVector),
            "fourier" => Ok(Family::Fourier),
            "random-sign" => Ok(Family::RandomSign),
            _ => Err(format!("unknown family {s:?}")),
        }
    }
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn on_diagonal(idx: &[usize]) -> Option<usize> {
    let i = idx[0];
    idx.iter().all(|&k| k == i).then_some(i)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(TensorError::Invalid("n must be at least 1".into()));
    }
    Ok(())
}

/// `Φ_n(x¹, …, x^m) = Σ_i x¹_i ⋯ x^m_i` with `‖Φ_n‖ ≤ n^{1/λ}`, attained at
/// the uniform vectors `n^{−1/p_j}(1, …, 1)`.
pub fn diagonal_scalar(n: usize, ps: &DomainVector) -> Result<ConstructionOutput> {
    check_n(n)?;
    let lambda = lambda_exponent(ExtExponent::one(), ps)?;
    let tensor = CoefficientTensor::from_fn(vec![n; ps.m()], 0, |idx, _| {
        on_diagonal(idx).map_or(zero(), |_| one())
    })?;
    Ok(ConstructionOutput {
        tensor,
        spec: MultilinearSpec::scalar(ps.clone()),
        norm_upper_bound: (n as f64).powf(lambda.recip_f64()),
        norm_upper_bound_formula: format!("n^(1/lambda), lambda = {lambda}"),
    })
}

/// `T(x¹, …, x^m) = Σ_j x¹_j ⋯ x^m_j e_j` into `ℓ_u`, with
/// `‖T‖ ≤ n^{1/u − Σ1/p_j}`. Coefficients are measured in `ℓ_u`; use
/// [`MultilinearSpec::with_q`] for a larger `q`.
pub fn diagonal_vector(n: usize, ps: &DomainVector, u: ExtExponent) -> Result<ConstructionOutput> {
    check_n(n)?;
    let s = ps.sum_recip();
    if s >= u.recip() {
        return Err(ExponentError::PreconditionViolated(format!(
            "sum of 1/p_j = {s} must be below 1/u = {}",
            u.recip()
        ))
        .into());
    }
    let tensor = CoefficientTensor::from_fn(vec![n; ps.m()], n, |idx, k| {
        if on_diagonal(idx) == Some(k) {
            one()
        } else {
            zero()
        }
    })?;
    Ok(ConstructionOutput {
        tensor,
        spec: MultilinearSpec::lu_valued(ps.clone(), u, u)?,
        norm_upper_bound: (n as f64).powf(ratio_to_f64(u.recip() - s)),
        norm_upper_bound_formula: "n^(1/u - sum 1/p_j)".into(),
    })
}

/// Index convention inside `e^{2πi k l / n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FourierIndexing {
    #[default]
    OneBased,
    ZeroBased,
}

/// `a_{kl} = e^{2πi k l / n}`.
pub fn fourier_matrix(n: usize, indexing: FourierIndexing) -> Vec<Vec<Complex64>> {
    let shift = match indexing {
        FourierIndexing::OneBased => 1,
        FourierIndexing::ZeroBased => 0,
    };
    (0..n)
        .map(|k| {
            (0..n)
                .map(|l| {
                    // reduce k·l mod n first so the angle stays exact for large n
                    let kl = ((k + shift) * (l + shift)) % n;
                    Complex64::from_polar(1.0, TAU * kl as f64 / n as f64)
                })
                .collect()
        })
        .collect()
}

/// `T(x¹, …, x^m) = Σ_i Σ_j a_{ij} x¹_j ⋯ x^m_j e_i` with `a` the Fourier
/// matrix, so `T(e_i, …, e_i)` is column `i`. `‖T‖ ≤ n^{1/2 + 1/u − Σ1/p_j}`.
pub fn fourier_vector(n: usize, ps: &DomainVector, u: ExtExponent) -> Result<ConstructionOutput> {
    fourier_vector_with(n, ps, u, FourierIndexing::OneBased)
}

pub fn fourier_vector_with(
    n: usize,
    ps: &DomainVector,
    u: ExtExponent,
    indexing: FourierIndexing,
) -> Result<ConstructionOutput> {
    check_n(n)?;
    let s = ps.sum_recip();
    let half = crate::exponents::Rational::new(1, 2);
    if s >= half {
        return Err(ExponentError::PreconditionViolated(format!(
            "sum of 1/p_j = {s} must be below 1/2"
        ))
        .into());
    }
    if u > ExtExponent::two() {
        return Err(ExponentError::PreconditionViolated(format!("need u ≤ 2, got {u}")).into());
    }
    let a = fourier_matrix(n, indexing);
    let tensor = CoefficientTensor::from_fn(vec![n; ps.m()], n, |idx, k| {
        on_diagonal(idx).map_or(zero(), |i| a[k][i])
    })?;
    Ok(ConstructionOutput {
        tensor,
        spec: MultilinearSpec::lu_valued(ps.clone(), u, u)?,
        norm_upper_bound: (n as f64).powf(ratio_to_f64(half + u.recip() - s)),
        norm_upper_bound_formula: "n^(1/2 + 1/u - sum 1/p_j)".into(),
    })
}

/// Full `n^m` tensor of independent Rademacher signs.
pub fn random_sign_tensor(n: usize, m: usize, rng_seed: u64) -> Result<CoefficientTensor> {
    check_n(n)?;
    if m == 0 {
        return Err(TensorError::Invalid("m must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    CoefficientTensor::from_fn(vec![n; m], 0, |_, _| {
        if rng.random::<bool>() {
            one()
        } else {
            -one()
        }
    })
}

/// Random signs packaged with the trivial bound `‖T‖ ≤ Σ|a| = n^m`.
pub fn random_sign(n: usize, ps: &DomainVector, rng_seed: u64) -> Result<ConstructionOutput> {
    let tensor = random_sign_tensor(n, ps.m(), rng_seed)?;
    Ok(ConstructionOutput {
        tensor,
        spec: MultilinearSpec::scalar(ps.clone()),
        norm_upper_bound: (n as f64).powi(ps.m() as i32),
        norm_upper_bound_formula: "n^m (coefficient l1 sum)".into(),
    })
}
