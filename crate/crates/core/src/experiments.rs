//! Dimension sweeps over the extremal families, log–log growth fits and
//! Monte-Carlo checks of the mixed-sum and random-form estimates.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;
use thiserror::Error;

use crate::constructions::{
    diagonal_scalar, diagonal_vector, fourier_vector, random_sign, random_sign_tensor,
    ConstructionOutput, Family,
};
use crate::exponents::{
    lambda_exponent, lp_valued_exponent, praciano_exponent, ratio_to_f64, DomainVector,
    ExponentError, ExponentResult, ExtExponent, Rational,
};
use crate::normest::{
    brute_force_norm_with, estimate_norm, BruteForceConfig, EstimatorConfig, NormError,
};
use crate::par;
use crate::tensors::{coefficient_sum, mixed_sum, CoefficientTensor, MultilinearSpec, TensorError};

/// Absolute tolerance on fitted slopes.
pub const SLOPE_TOL: f64 = 0.05;
/// Minimum slope that counts as divergence.
pub const DIVERGENCE_SLOPE: f64 = 0.02;
/// Multiplicative slack on ratio bounds.
pub const RATIO_SLACK: f64 = 1.05;

pub const DEFAULT_N_GRID: [usize; 4] = [4, 8, 16, 32];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Exponent(#[from] ExponentError),
    #[error(transparent)]
    Tensor(TensorError),
    #[error(transparent)]
    Norm(NormError),
    #[error("degenerate data: {0}")]
    Degenerate(String),
    #[error("invalid experiment: {0}")]
    Invalid(String),
}

impl From<TensorError> for ExperimentError {
    fn from(e: TensorError) -> Self {
        match e {
            TensorError::Exponent(e) => ExperimentError::Exponent(e),
            e => ExperimentError::Tensor(e),
        }
    }
}

impl From<NormError> for ExperimentError {
    fn from(e: NormError) -> Self {
        match e {
            NormError::Tensor(e) => e.into(),
            e => ExperimentError::Norm(e),
        }
    }
}

pub type Result<T> = std::result::Result<T, ExperimentError>;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthFit {
    pub slope: f64,
    pub intercept: f64,
    /// Largest absolute residual in log space.
    pub max_residual: f64,
}

/// Least-squares line through `(ln x, ln y)`.
pub fn fit_growth(xs: &[usize], ys: &[f64]) -> Result<GrowthFit> {
    if xs.len() != ys.len() {
        return Err(ExperimentError::Invalid(format!(
            "{} x values but {} y values",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 3 {
        return Err(ExperimentError::Invalid("need at least 3 points".into()));
    }
    if xs[0] == 0 || xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ExperimentError::Invalid(
            "x values must be positive and strictly increasing".into(),
        ));
    }
    if let Some(y) = ys.iter().find(|y| !(**y > 0.0) || !y.is_finite()) {
        return Err(ExperimentError::Degenerate(format!("non-positive value {y}")));
    }
    let lx: Vec<f64> = xs.iter().map(|&x| (x as f64).ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| (y - intercept - slope * x).abs())
        .fold(0.0, f64::max);
    Ok(GrowthFit {
        slope,
        intercept,
        max_residual,
    })
}

/// Where the denominator of a ratio came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormSource {
    Estimate,
    AnalyticBound,
    BruteForce,
}

impl NormSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            NormSource::Estimate => "estimate",
            NormSource::AnalyticBound => "analytic-bound",
            NormSource::BruteForce => "brute-force",
        }
    }
}

/// Norm computation settings shared by every experiment.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ExperimentConfig {
    pub estimator: EstimatorConfig,
    pub brute_force: BruteForceConfig,
}

impl ExperimentConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.estimator = self.estimator.with_seed(seed);
        self
    }

    pub fn with_execution(mut self, execution: par::Execution) -> Self {
        self.estimator.execution = execution;
        self
    }
}

/// `‖T‖` from the requested source. The analytic bound dominates the true
/// norm, hence also any estimate.
pub fn norm_from(
    tensor: &CoefficientTensor,
    spec: &MultilinearSpec,
    bound: Option<f64>,
    source: NormSource,
    cfg: &ExperimentConfig,
) -> Result<f64> {
    match source {
        NormSource::Estimate => Ok(estimate_norm(tensor, spec, &cfg.estimator)?.value),
        NormSource::BruteForce => Ok(brute_force_norm_with(tensor, spec, &cfg.brute_force)?),
        NormSource::AnalyticBound => bound.ok_or_else(|| {
            ExperimentError::Invalid("no analytic norm bound for this tensor".into())
        }),
    }
}

/// `(Σ‖a‖_q^t)^{1/t} / ‖T‖`, or 0 for the zero map.
pub fn verify_inequality(
    tensor: &CoefficientTensor,
    spec: &MultilinearSpec,
    bound: Option<f64>,
    t: ExtExponent,
    source: NormSource,
    cfg: &ExperimentConfig,
) -> Result<f64> {
    let lhs = coefficient_sum(tensor, spec, t);
    if lhs == 0.0 {
        return Ok(0.0);
    }
    let norm = norm_from(tensor, spec, bound, source, cfg)?;
    Ok(lhs / norm)
}

/// A construction family together with its fixed parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub ps: DomainVector,
    /// Target `ℓ_u`; required by the vector-valued families.
    pub u: Option<ExtExponent>,
    /// Coefficient norm `ℓ_q`; defaults to `u`.
    pub q: Option<ExtExponent>,
    pub seed: u64,
}

impl FamilySpec {
    pub fn new(family: Family, ps: DomainVector) -> Self {
        Self {
            family,
            ps,
            u: None,
            q: None,
            seed: 42,
        }
    }

    pub fn with_u(mut self, u: ExtExponent) -> Self {
        self.u = Some(u);
        self
    }

    pub fn with_q(mut self, q: ExtExponent) -> Self {
        self.q = Some(q);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn require_u(&self) -> Result<ExtExponent> {
        self.u.ok_or_else(|| {
            ExperimentError::Invalid(format!("family {} needs u", self.family.as_str()))
        })
    }

    /// Coefficient exponent in effect.
    pub fn coefficient_q(&self) -> Result<Option<ExtExponent>> {
        match self.family {
            Family::Diagonal | Family::RandomSign => Ok(None),
            _ => Ok(Some(self.q.unwrap_or(self.require_u()?))),
        }
    }

    pub fn build(&self, n: usize) -> Result<ConstructionOutput> {
        let mut out = match self.family {
            Family::Diagonal => diagonal_scalar(n, &self.ps)?,
            Family::DiagonalVector => diagonal_vector(n, &self.ps, self.require_u()?)?,
            Family::Fourier => fourier_vector(n, &self.ps, self.require_u()?)?,
            Family::RandomSign => random_sign(n, &self.ps, mix_seed(self.seed, &[n as u64]))?,
        };
        if let Some(q) = self.coefficient_q()? {
            out.spec = out.spec.with_q(q)?;
        }
        Ok(out)
    }

    /// The exponent calculus prediction this family is designed to witness.
    pub fn predicted(&self) -> Result<ExponentResult> {
        match self.family {
            Family::Diagonal | Family::RandomSign => Ok(praciano_exponent(&self.ps)?),
            Family::DiagonalVector | Family::Fourier => {
                let u = self.require_u()?;
                let q = self.q.unwrap_or(u);
                Ok(lp_valued_exponent(u, q, &self.ps)?)
            }
        }
    }

    /// Growth exponent of `ratio = lhs / analytic bound` in `n`.
    pub fn expected_slope(&self, t: ExtExponent) -> Result<f64> {
        let s = self.ps.sum_recip();
        let m = self.ps.m() as i128;
        let half = Rational::new(1, 2);
        let exponent = match self.family {
            Family::Diagonal => {
                t.recip() - lambda_exponent(ExtExponent::one(), &self.ps)?.recip()
            }
            Family::DiagonalVector => t.recip() - (self.require_u()?.recip() - s),
            Family::Fourier => {
                let q = self.coefficient_q()?.unwrap_or(ExtExponent::two());
                t.recip() + q.recip() - (half + self.require_u()?.recip() - s)
            }
            Family::RandomSign => Rational::from_integer(m) * t.recip() - Rational::from_integer(m),
        };
        Ok(ratio_to_f64(exponent))
    }

    pub fn params(&self) -> BTreeMap<String, String> {
        let mut p = BTreeMap::new();
        p.insert("p".into(), self.ps.to_string());
        if let Some(u) = self.u {
            p.insert("u".into(), u.to_string());
        }
        if let Ok(Some(q)) = self.coefficient_q() {
            p.insert("q".into(), q.to_string());
        }
        if self.family == Family::RandomSign {
            p.insert("seed".into(), self.seed.to_string());
        }
        p
    }
}

/// SplitMix64 finalizer folded over `parts`.
fn mix_seed(seed: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(seed, |acc, &x| {
        let mut z = acc ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub n_values: Vec<usize>,
    pub lhs_values: Vec<f64>,
    pub norm_values: Vec<f64>,
    pub ratio_values: Vec<f64>,
    pub norm_source: NormSource,
}

impl SweepResult {
    /// `ratio_values` against `n_values`.
    pub fn fit(&self) -> Result<GrowthFit> {
        fit_growth(&self.n_values, &self.ratio_values)
    }

    /// Each ratio stays within [`RATIO_SLACK`] of its predecessor.
    pub fn is_nonincreasing(&self) -> bool {
        self.ratio_values
            .windows(2)
            .all(|w| w[1] <= w[0] * RATIO_SLACK)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,lhs,norm,ratio\n");
        for i in 0..self.n_values.len() {
            s.push_str(&format!(
                "{},{:e},{:e},{:e}\n",
                self.n_values[i], self.lhs_values[i], self.norm_values[i], self.ratio_values[i]
            ));
        }
        s
    }
}

fn check_grid(n_grid: &[usize], min: usize) -> Result<()> {
    if n_grid.len() < min {
        return Err(ExperimentError::Invalid(format!(
            "need at least {min} dimensions, got {}",
            n_grid.len()
        )));
    }
    if n_grid[0] == 0 || n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ExperimentError::Invalid(
            "dimensions must be positive and strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Coefficient sums and norms of `family` over `n_grid`.
pub fn sweep(
    family: &FamilySpec,
    t: ExtExponent,
    n_grid: &[usize],
    source: NormSource,
    cfg: &ExperimentConfig,
) -> Result<SweepResult> {
    check_grid(n_grid, 3)?;
    let rows = par::map_indexed(cfg.estimator.execution, n_grid.len(), |i| {
        let out = family.build(n_grid[i])?;
        let lhs = coefficient_sum(&out.tensor, &out.spec, t);
        let norm = norm_from(&out.tensor, &out.spec, Some(out.norm_upper_bound), source, cfg)?;
        Ok::<_, ExperimentError>((lhs, norm))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let (lhs_values, norm_values): (Vec<f64>, Vec<f64>) = rows.into_iter().unzip();
    if let Some(v) = lhs_values.iter().chain(&norm_values).find(|v| !(**v > 0.0)) {
        return Err(ExperimentError::Degenerate(format!("non-positive value {v} in sweep")));
    }
    Ok(SweepResult {
        n_values: n_grid.to_vec(),
        ratio_values: lhs_values.iter().zip(&norm_values).map(|(l, n)| l / n).collect(),
        lhs_values,
        norm_values,
        norm_source: source,
    })
}

/// Log–log slope of `lhs / analytic bound` over `n_grid`.
pub fn optimality_slope(
    family: &FamilySpec,
    t: ExtExponent,
    n_grid: &[usize],
    cfg: &ExperimentConfig,
) -> Result<GrowthFit> {
    check_grid(n_grid, 4)?;
    sweep(family, t, n_grid, NormSource::AnalyticBound, cfg)?.fit()
}

/// `max_j mixed_sum(j, q, λ) / norm` with `1/λ = 1 − Σ1/p_j`.
pub fn mixed_sum_ratio(
    tensor: &CoefficientTensor,
    spec: &MultilinearSpec,
    q: ExtExponent,
    norm: f64,
) -> Result<f64> {
    let lambda = lambda_exponent(ExtExponent::one(), &spec.ps)?;
    let mut worst = 0.0f64;
    for j in 0..tensor.m() {
        worst = worst.max(mixed_sum(tensor, spec, j, q, lambda)?.value);
    }
    Ok(if worst == 0.0 { 0.0 } else { worst / norm })
}

/// Real Gaussian scalar tensor with all dimensions equal to `n`.
pub fn gaussian_tensor(n: usize, m: usize, seed: u64) -> Result<CoefficientTensor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(CoefficientTensor::from_fn(vec![n; m], 0, |_, _| {
        Complex64::new(StandardNormal.sample(&mut rng), 0.0)
    })?)
}

/// Worst mixed-sum ratio over `trials` seeded Gaussian scalar tensors.
pub fn mixed_sum_check(
    ps: &DomainVector,
    q: ExtExponent,
    trials: usize,
    n: usize,
    source: NormSource,
    cfg: &ExperimentConfig,
) -> Result<f64> {
    let s = ps.sum_recip();
    if s >= Rational::from_integer(1) - q.recip() {
        return Err(ExponentError::PreconditionViolated(format!(
            "sum of 1/p_j = {s} must be below 1 - 1/q = {}",
            Rational::from_integer(1) - q.recip()
        ))
        .into());
    }
    if source == NormSource::AnalyticBound {
        return Err(ExperimentError::Invalid("random tensors carry no analytic bound".into()));
    }
    let spec = MultilinearSpec::scalar(ps.clone());
    let seed = cfg.estimator.seed;
    let inner = ExperimentConfig {
        estimator: EstimatorConfig {
            execution: par::Execution::Sequential,
            ..cfg.estimator
        },
        ..*cfg
    };
    let ratios = par::map_indexed(cfg.estimator.execution, trials, |k| {
        let t = gaussian_tensor(n, ps.m(), mix_seed(seed, &[k as u64]))?;
        let norm = norm_from(&t, &spec, None, source, &inner)?;
        mixed_sum_ratio(&t, &spec, q, norm)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(ratios.into_iter().fold(0.0, f64::max))
}

/// `1/λ + (m−1)/2`, the growth bound for random-sign forms.
pub fn chevet_bound_exponent(ps: &DomainVector) -> Result<f64> {
    let lambda = lambda_exponent(ExtExponent::one(), ps)?;
    Ok(lambda.recip_f64() + (ps.m() as f64 - 1.0) / 2.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChevetReport {
    pub n_values: Vec<usize>,
    pub mean_norms: Vec<f64>,
    pub fit: GrowthFit,
    pub bound_exponent: f64,
}

/// Mean estimated norm of `samples` random-sign forms per dimension, with the
/// fitted growth slope.
pub fn chevet_growth(
    ps: &DomainVector,
    n_grid: &[usize],
    samples: usize,
    cfg: &ExperimentConfig,
) -> Result<ChevetReport> {
    let two = ExtExponent::two();
    if let Some(p) = ps.ps().iter().find(|p| **p <= two) {
        return Err(ExponentError::PreconditionViolated(format!(
            "every p_j must exceed 2, got {p}"
        ))
        .into());
    }
    if samples == 0 {
        return Err(ExperimentError::Invalid("need at least one sample".into()));
    }
    check_grid(n_grid, 3)?;
    let spec = MultilinearSpec::scalar(ps.clone());
    let seed = cfg.estimator.seed;
    let inner = EstimatorConfig {
        execution: par::Execution::Sequential,
        ..cfg.estimator
    };
    let jobs: Vec<(usize, usize)> = n_grid
        .iter()
        .flat_map(|&n| (0..samples).map(move |s| (n, s)))
        .collect();
    let norms = par::map_indexed(cfg.estimator.execution, jobs.len(), |i| {
        let (n, s) = jobs[i];
        let t = random_sign_tensor(n, ps.m(), mix_seed(seed, &[n as u64, s as u64]))?;
        Ok::<_, ExperimentError>(estimate_norm(&t, &spec, &inner)?.value)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mean_norms: Vec<f64> = norms
        .chunks(samples)
        .map(|c| c.iter().sum::<f64>() / samples as f64)
        .collect();
    Ok(ChevetReport {
        n_values: n_grid.to_vec(),
        fit: fit_growth(n_grid, &mean_norms)?,
        mean_norms,
        bound_exponent: chevet_bound_exponent(ps)?,
    })
}

/// Summary emitted alongside sweep CSVs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub t: String,
    pub slope: f64,
    pub expected_exponent: f64,
    pub pass: bool,
}
