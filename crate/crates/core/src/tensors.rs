//! Dense coefficient tensors of m-linear maps.
//!
//! Entries are stored row-major over `(i₁, …, i_m)`; vector-valued maps carry
//! one extra trailing axis of length `target_dim` that varies fastest.

use std::borrow::Cow;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exponents::{DomainVector, ExponentError, ExtExponent};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TensorError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range for arity {m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("invalid tensor: {0}")]
    Invalid(String),
    #[error("malformed tensor JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Exponent(#[from] ExponentError),
}

pub type Result<T> = std::result::Result<T, TensorError>;

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTensor {
    dims: Vec<usize>,
    target_dim: usize,
    entries: Vec<Complex64>,
}

impl CoefficientTensor {
    pub fn new(dims: Vec<usize>, target_dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(TensorError::Invalid(format!("dims {dims:?}")));
        }
        let expected = dims.iter().product::<usize>() * target_dim.max(1);
        if entries.len() != expected {
            return Err(TensorError::DimensionMismatch(format!(
                "{} entries for dims {dims:?} × {}",
                entries.len(),
                target_dim.max(1)
            )));
        }
        if entries.iter().any(|z| !z.is_finite()) {
            return Err(TensorError::Invalid("non-finite entry".into()));
        }
        Ok(Self {
            dims,
            target_dim,
            entries,
        })
    }

    pub fn zeros(dims: Vec<usize>, target_dim: usize) -> Result<Self> {
        let len = dims.iter().product::<usize>() * target_dim.max(1);
        Self::new(dims, target_dim, vec![Complex64::new(0.0, 0.0); len])
    }

    /// Builds a tensor from a function of the multi-index and output coordinate.
    pub fn from_fn<F>(dims: Vec<usize>, target_dim: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&[usize], usize) -> Complex64,
    {
        let fiber = target_dim.max(1);
        let count: usize = dims.iter().product();
        let mut entries = Vec::with_capacity(count * fiber);
        let mut idx = vec![0usize; dims.len()];
        for _ in 0..count {
            for k in 0..fiber {
                entries.push(f(&idx, k));
            }
            increment(&mut idx, &dims);
        }
        Self::new(dims, target_dim, entries)
    }

    pub fn m(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn is_vector_valued(&self) -> bool {
        self.target_dim > 0
    }

    /// Length of each coefficient: 1 for scalar maps.
    pub fn fiber_len(&self) -> usize {
        self.target_dim.max(1)
    }

    pub fn num_coefficients(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &[Complex64]> {
        self.entries.chunks_exact(self.fiber_len())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|z| z.norm_sqr() == 0.0)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            dims: self.dims.clone(),
            target_dim: self.target_dim,
            entries: self.entries.iter().map(|z| z * c).collect(),
        }
    }

    /// Reinterprets the output axis as one more domain axis.
    pub(crate) fn flatten_target(&self) -> Self {
        let mut dims = self.dims.clone();
        if self.is_vector_valued() {
            dims.push(self.target_dim);
        }
        Self {
            dims,
            target_dim: 0,
            entries: self.entries.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TensorJson::from(self)).expect("finite entries serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: TensorJson =
            serde_json::from_str(s).map_err(|e| TensorError::Json(e.to_string()))?;
        raw.try_into()
    }
}

fn increment(idx: &mut [usize], dims: &[usize]) {
    for a in (0..idx.len()).rev() {
        idx[a] += 1;
        if idx[a] < dims[a] {
            return;
        }
        idx[a] = 0;
    }
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    m: usize,
    dims: Vec<usize>,
    target_dim: usize,
    entries: Vec<[f64; 2]>,
}

impl From<&CoefficientTensor> for TensorJson {
    fn from(t: &CoefficientTensor) -> Self {
        Self {
            m: t.m(),
            dims: t.dims.clone(),
            target_dim: t.target_dim,
            entries: t.entries.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<TensorJson> for CoefficientTensor {
    type Error = TensorError;

    fn try_from(raw: TensorJson) -> Result<Self> {
        if raw.m != raw.dims.len() {
            return Err(TensorError::Json(format!(
                "m = {} but {} dims",
                raw.m,
                raw.dims.len()
            )));
        }
        let entries = raw
            .entries
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        CoefficientTensor::new(raw.dims, raw.target_dim, entries)
            .map_err(|e| TensorError::Json(e.to_string()))
    }
}

/// The space a map takes values in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Scalar,
    /// `ℓ_u`-valued.
    Lu(ExtExponent),
}

/// Domain exponents, target space, and the `ℓ_q` norm used on coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearSpec {
    pub ps: DomainVector,
    pub target: Target,
    pub q: ExtExponent,
}

impl MultilinearSpec {
    pub fn scalar(ps: DomainVector) -> Self {
        Self {
            ps,
            target: Target::Scalar,
            q: ExtExponent::two(),
        }
    }

    pub fn lu_valued(ps: DomainVector, u: ExtExponent, q: ExtExponent) -> Result<Self> {
        if u > q {
            return Err(TensorError::Invalid(format!("need u ≤ q, got u = {u}, q = {q}")));
        }
        Ok(Self {
            ps,
            target: Target::Lu(u),
            q,
        })
    }

    pub fn with_q(&self, q: ExtExponent) -> Result<Self> {
        match self.target {
            Target::Scalar => Ok(Self { q, ..self.clone() }),
            Target::Lu(u) => Self::lu_valued(self.ps.clone(), u, q),
        }
    }

    pub fn m(&self) -> usize {
        self.ps.m()
    }

    pub fn u(&self) -> Option<ExtExponent> {
        match self.target {
            Target::Scalar => None,
            Target::Lu(u) => Some(u),
        }
    }

    pub(crate) fn check(&self, t: &CoefficientTensor) -> Result<()> {
        if t.m() != self.m() {
            return Err(TensorError::DimensionMismatch(format!(
                "tensor has arity {} but {} domain exponents were given",
                t.m(),
                self.m()
            )));
        }
        if t.is_vector_valued() != self.u().is_some() {
            return Err(TensorError::DimensionMismatch(
                "scalar/vector target does not match the tensor".into(),
            ));
        }
        Ok(())
    }
}

/// `(Σ |v_i|^q)^{1/q}`, or the max modulus for `q = ∞`.
pub fn lq_norm(v: &[Complex64], q: ExtExponent) -> f64 {
    power_norm(v.iter().map(|z| z.norm()), q.recip_f64())
}

/// ℓ_q norm of nonnegative reals given `1/q`. Scaled by the max entry so large
/// exponents neither overflow nor underflow.
pub(crate) fn power_norm<I>(abs: I, recip_q: f64) -> f64
where
    I: Iterator<Item = f64> + Clone,
{
    let max = abs.clone().fold(0.0f64, f64::max);
    if recip_q == 0.0 || max == 0.0 {
        return max;
    }
    if recip_q == 1.0 {
        return abs.sum();
    }
    let q = 1.0 / recip_q;
    let s: f64 = abs.map(|a| (a / max).powf(q)).sum();
    max * s.powf(recip_q)
}

/// Contracts one axis of a row-major buffer against `x`, removing the axis.
pub(crate) fn contract_axis(
    buf: &[Complex64],
    shape: &[usize],
    axis: usize,
    x: &[Complex64],
) -> Vec<Complex64> {
    let outer: usize = shape[..axis].iter().product();
    let len = shape[axis];
    let inner: usize = shape[axis + 1..].iter().product();
    debug_assert_eq!(x.len(), len);
    let mut out = vec![Complex64::new(0.0, 0.0); outer * inner];
    for o in 0..outer {
        let dst = &mut out[o * inner..(o + 1) * inner];
        let block = &buf[o * len * inner..(o + 1) * len * inner];
        for (i, xi) in x.iter().enumerate() {
            if xi.norm_sqr() == 0.0 {
                continue;
            }
            let row = &block[i * inner..(i + 1) * inner];
            for (d, a) in dst.iter_mut().zip(row) {
                *d += a * xi;
            }
        }
    }
    out
}

fn full_shape(t: &CoefficientTensor) -> Vec<usize> {
    let mut shape = t.dims.clone();
    shape.push(t.fiber_len());
    shape
}

fn check_args(t: &CoefficientTensor, xs: &[&[Complex64]], skip: Option<usize>) -> Result<()> {
    if xs.len() != t.m() {
        return Err(TensorError::DimensionMismatch(format!(
            "{} vectors for arity {}",
            xs.len(),
            t.m()
        )));
    }
    for (j, (x, &n)) in xs.iter().zip(&t.dims).enumerate() {
        if Some(j) != skip && x.len() != n {
            return Err(TensorError::DimensionMismatch(format!(
                "slot {j} has length {} but dimension {n}",
                x.len()
            )));
        }
    }
    Ok(())
}

/// `T(x¹, …, x^m) = Σ a_{i₁…i_m} x¹_{i₁}⋯x^m_{i_m}`, one value per output
/// coordinate (a single value for scalar maps).
pub fn evaluate(t: &CoefficientTensor, xs: &[&[Complex64]]) -> Result<Vec<Complex64>> {
    check_args(t, xs, None)?;
    let mut shape = full_shape(t);
    let mut buf = contract_axis(&t.entries, &shape, 0, xs[0]);
    shape.remove(0);
    for x in &xs[1..] {
        buf = contract_axis(&buf, &shape, 0, x);
        shape.remove(0);
    }
    Ok(buf)
}

/// The coefficient vector of slot `j` with every other slot fixed, so that
/// `T(…, y, …) = Σ_i c_i y_i`. Scalar tensors only; `xs[j]` is ignored.
pub fn contract_except(
    t: &CoefficientTensor,
    xs: &[&[Complex64]],
    j: usize,
) -> Result<Vec<Complex64>> {
    if t.is_vector_valued() {
        return Err(TensorError::Invalid("contract_except needs a scalar tensor".into()));
    }
    if j >= t.m() {
        return Err(TensorError::IndexOutOfRange { index: j, m: t.m() });
    }
    check_args(t, xs, Some(j))?;
    let mut shape = t.dims.clone();
    let mut buf = Cow::Borrowed(t.entries.as_slice());
    for x in &xs[..j] {
        buf = Cow::Owned(contract_axis(&buf, &shape, 0, x));
        shape.remove(0);
    }
    for x in xs[j + 1..].iter().rev() {
        let last = shape.len() - 1;
        buf = Cow::Owned(contract_axis(&buf, &shape, last, x));
        shape.pop();
    }
    Ok(buf.into_owned())
}

/// Norm of one coefficient: modulus for scalars, `ℓ_q` norm for vectors.
fn coefficient_norms(t: &CoefficientTensor, spec: &MultilinearSpec) -> Vec<f64> {
    if t.is_vector_valued() {
        t.coefficients().map(|c| lq_norm(c, spec.q)).collect()
    } else {
        t.entries.iter().map(|z| z.norm()).collect()
    }
}

/// `(Σ ‖a_{i₁…i_m}‖_{ℓ_q}^t)^{1/t}`.
pub fn coefficient_sum(t: &CoefficientTensor, spec: &MultilinearSpec, exp: ExtExponent) -> f64 {
    let norms = coefficient_norms(t, spec);
    power_norm(norms.iter().copied(), exp.recip_f64())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MixedSumReport {
    /// Zero-based slot whose index is held fixed.
    pub slot: usize,
    pub inner_exponent: ExtExponent,
    pub outer_exponent: ExtExponent,
    pub value: f64,
}

/// Fix the index of `slot`, take the `ℓ_q` sum over all other indices, then
/// the `ℓ_λ` sum over the fixed index.
pub fn mixed_sum(
    t: &CoefficientTensor,
    spec: &MultilinearSpec,
    slot: usize,
    q: ExtExponent,
    lambda: ExtExponent,
) -> Result<MixedSumReport> {
    if slot >= t.m() {
        return Err(TensorError::IndexOutOfRange { index: slot, m: t.m() });
    }
    let norms = coefficient_norms(t, spec);
    let len = t.dims[slot];
    let inner: usize = t.dims[slot + 1..].iter().product();
    let mut slabs = vec![Vec::with_capacity(norms.len() / len); len];
    for (flat, v) in norms.into_iter().enumerate() {
        slabs[(flat / inner) % len].push(v);
    }
    let rq = q.recip_f64();
    let inner_sums: Vec<f64> = slabs
        .iter()
        .map(|s| power_norm(s.iter().copied(), rq))
        .collect();
    Ok(MixedSumReport {
        slot,
        inner_exponent: q,
        outer_exponent: lambda,
        value: power_norm(inner_sums.iter().copied(), lambda.recip_f64()),
    })
}

/// `name,value` CSV with a header row.
pub fn report_csv<'a, I>(rows: I) -> String
where
    I: IntoIterator<Item = (&'a str, f64)>,
{
    let mut out = String::from("name,value\n");
    for (name, value) in rows {
        out.push_str(&format!("{name},{value}\n"));
    }
    out
}
