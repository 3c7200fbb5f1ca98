//! Lower bounds on `‖T‖ = sup ‖T(x₁, …, x_m)‖` over products of `ℓ_p` balls.
//!
//! [`estimate_norm`] runs alternating maximization: with all slots but one
//! fixed, `T` is a linear functional of the free slot and Hölder duality gives
//! its exact maximizer. Each slot update therefore never decreases the
//! objective. Random restarts guard against local maxima.
//!
//! [`brute_force_norm`] is a slow grid search used as an independent oracle
//! on tiny instances.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

use num_traits::One;

use crate::exponents::{ratio_to_f64, DomainVector, ExtExponent, Rational};
use crate::par::{self, Execution};
use crate::tensors::{
    contract_axis, contract_except, evaluate, lq_norm, CoefficientTensor, MultilinearSpec, Target,
    TensorError,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NormError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("tensor is not vector-valued")]
    NotVectorValued,
    #[error("too large for brute force: {0}")]
    TooLarge(String),
    #[error("invalid estimator config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, NormError>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimatorConfig {
    pub restarts: usize,
    pub max_sweeps: usize,
    /// A sweep that improves the objective by less than `rel_tol · value`
    /// counts as converged.
    pub rel_tol: f64,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_sweeps: 200,
            rel_tol: 1e-10,
            seed: 42,
            execution: Execution::default(),
        }
    }
}

impl EstimatorConfig {
    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn with_restarts(self, restarts: usize) -> Self {
        Self { restarts, ..self }
    }

    fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(NormError::Config("restarts must be at least 1".into()));
        }
        if !(self.rel_tol > 0.0) {
            return Err(NormError::Config("rel_tol must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormEstimate {
    pub value: f64,
    /// One unit vector per slot; vector-valued maps get a trailing dual vector
    /// for the output.
    pub maximizer: Vec<Vec<Complex64>>,
    pub restarts_used: usize,
    /// Index of the restart that produced `value`.
    pub best_restart: usize,
    pub converged: bool,
    /// Sweeps taken by the winning restart.
    pub iterations: usize,
}

/// Maximizes `|Σ c_i x_i|` over the unit ball of `ℓ_p`. The maximum is
/// `‖c‖_{p′}`.
pub fn dual_maximizer(c: &[Complex64], p: ExtExponent) -> (f64, Vec<Complex64>) {
    let n = c.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut x = vec![zero; n];
    let value = lq_norm(c, p.conjugate());
    if value == 0.0 || n == 0 {
        if n > 0 {
            x[0] = Complex64::new(1.0, 0.0);
        }
        return (0.0, x);
    }
    let phase = |z: Complex64| {
        if z.norm_sqr() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            (z / z.norm()).conj()
        }
    };
    if p.is_infinite() {
        for (xi, ci) in x.iter_mut().zip(c) {
            *xi = phase(*ci);
        }
    } else if p == ExtExponent::one() {
        // lowest index among the maximal moduli
        let mut best = 0;
        for (i, ci) in c.iter().enumerate() {
            if ci.norm() > c[best].norm() {
                best = i;
            }
        }
        x[best] = phase(c[best]);
    } else {
        // x_i = conj(sgn c_i) (|c_i| / ‖c‖_{p′})^{p′−1}, with p′ − 1 = 1/(p − 1)
        let r = p.recip();
        let power = ratio_to_f64(r / (Rational::one() - r));
        for (xi, ci) in x.iter_mut().zip(c) {
            *xi = phase(*ci) * (ci.norm() / value).powf(power);
        }
        let norm = lq_norm(&x, p);
        if norm > 1.0 {
            x.iter_mut().for_each(|z| *z /= norm);
        }
    }
    (value, x)
}

/// The `(m+1)`-linear scalar form `b_{i₁…i_m k} = (a_{i₁…i_m})_k` on
/// `ℓ_{p₁} × ⋯ × ℓ_{p_m} × ℓ_{u′}`, which has the same norm as the
/// `ℓ_u`-valued map.
pub fn scalarize(
    t: &CoefficientTensor,
    spec: &MultilinearSpec,
) -> Result<(CoefficientTensor, DomainVector)> {
    let Target::Lu(u) = spec.target else {
        return Err(NormError::NotVectorValued);
    };
    if !t.is_vector_valued() {
        return Err(NormError::NotVectorValued);
    }
    spec.check(t)?;
    Ok((t.flatten_target(), spec.ps.with_slot(u.conjugate())))
}

/// One alternating-ascent run from a given start.
#[derive(Clone, Debug)]
pub struct AscentRun {
    pub value: f64,
    pub xs: Vec<Vec<Complex64>>,
    pub sweeps: usize,
    pub converged: bool,
    /// Objective after every slot update, starting with the initial value.
    pub history: Vec<f64>,
}

fn objective(t: &CoefficientTensor, xs: &[Vec<Complex64>]) -> f64 {
    let refs: Vec<&[Complex64]> = xs.iter().map(Vec::as_slice).collect();
    evaluate(t, &refs).map(|v| v[0].norm()).unwrap_or(0.0)
}

/// Cycles through the slots of a scalar tensor, replacing each by its exact
/// Hölder maximizer, until a sweep gains less than `rel_tol` (relative).
pub fn ascend(
    t: &CoefficientTensor,
    ps: &DomainVector,
    start: Vec<Vec<Complex64>>,
    max_sweeps: usize,
    rel_tol: f64,
) -> Result<AscentRun> {
    if t.is_vector_valued() {
        return Err(TensorError::Invalid("ascend needs a scalar tensor".into()).into());
    }
    if ps.m() != t.m() || start.len() != t.m() {
        return Err(TensorError::DimensionMismatch(format!(
            "arity {} with {} exponents and {} start vectors",
            t.m(),
            ps.m(),
            start.len()
        ))
        .into());
    }
    let mut xs = start;
    let mut value = objective(t, &xs);
    let mut history = vec![value];
    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < max_sweeps {
        let before = value;
        for (j, &p) in ps.ps().iter().enumerate() {
            let refs: Vec<&[Complex64]> = xs.iter().map(Vec::as_slice).collect();
            let c = contract_except(t, &refs, j)?;
            let (v, x) = dual_maximizer(&c, p);
            xs[j] = x;
            value = v;
            history.push(v);
        }
        sweeps += 1;
        if value - before <= rel_tol * value {
            converged = true;
            break;
        }
    }
    // Report the attained objective, not the dual-norm formula.
    let value = objective(t, &xs);
    Ok(AscentRun {
        value,
        xs,
        sweeps,
        converged,
        history,
    })
}

/// A complex Gaussian vector scaled onto the unit sphere of `ℓ_p`.
fn random_start(rng: &mut ChaCha8Rng, n: usize, p: ExtExponent) -> Vec<Complex64> {
    let mut x: Vec<Complex64> = (0..n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
        .collect();
    let norm = lq_norm(&x, p);
    if norm > 0.0 {
        x.iter_mut().for_each(|z| *z /= norm);
    }
    x
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// Certified lower bound on `‖T‖`, the best of `cfg.restarts` alternating
/// ascents. Vector-valued maps are scalarized first.
pub fn estimate_norm(
    t: &CoefficientTensor,
    spec: &MultilinearSpec,
    cfg: &EstimatorConfig,
) -> Result<NormEstimate> {
    cfg.validate()?;
    spec.check(t)?;
    let (work, ps) = if t.is_vector_valued() {
        scalarize(t, spec)?
    } else {
        (t.clone(), spec.ps.clone())
    };
    if work.is_zero() {
        let maximizer = work
            .dims()
            .iter()
            .map(|&n| dual_maximizer(&vec![Complex64::new(0.0, 0.0); n], ExtExponent::one()).1)
            .collect();
        return Ok(NormEstimate {
            value: 0.0,
            maximizer,
            restarts_used: cfg.restarts,
            best_restart: 0,
            converged: true,
            iterations: 0,
        });
    }
    let runs = par::map_indexed(cfg.execution, cfg.restarts, |r| {
        let mut rng = restart_rng(cfg.seed, r);
        let start = work
            .dims()
            .iter()
            .zip(ps.ps())
            .map(|(&n, &p)| random_start(&mut rng, n, p))
            .collect();
        ascend(&work, &ps, start, cfg.max_sweeps, cfg.rel_tol)
    });
    let mut best: Option<(usize, AscentRun)> = None;
    for (r, run) in runs.into_iter().enumerate() {
        let run = run?;
        if best.as_ref().map_or(true, |(_, b)| run.value > b.value) {
            best = Some((r, run));
        }
    }
    let (best_restart, run) = best.expect("at least one restart");
    Ok(NormEstimate {
        value: run.value,
        maximizer: run.xs,
        restarts_used: cfg.restarts,
        best_restart,
        converged: run.converged,
        iterations: run.sweeps,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BruteForceConfig {
    /// Grid points per continuous coordinate.
    pub grid_density: usize,
    /// Refuse tensors with more coefficients than this.
    pub max_coefficients: usize,
    /// Above this many grid points, a seeded random sample of this size
    /// replaces the full grid.
    pub max_grid_points: usize,
    /// Best grid points that get a local pattern-search polish.
    pub polish_starts: usize,
}

impl Default for BruteForceConfig {
    fn default() -> Self {
        Self {
            grid_density: 8,
            max_coefficients: 64,
            max_grid_points: 200_000,
            polish_starts: 12,
        }
    }
}

/// How one searched slot is parametrized over the extreme points of its ball.
#[derive(Clone, Copy, Debug)]
enum SlotKind {
    /// `p = 1`: a unit mass at one of `n` coordinates.
    Vertex,
    /// `p = ∞`: unimodular entries, `n − 1` free phases.
    Torus,
    /// `1 < p < ∞`: `n − 1` hyperspherical angles and `n − 1` phases.
    Sphere(f64),
}

#[derive(Clone, Debug)]
struct SlotParam {
    kind: SlotKind,
    n: usize,
}

impl SlotParam {
    fn new(p: ExtExponent, n: usize) -> Self {
        let kind = if p.is_infinite() {
            SlotKind::Torus
        } else if p == ExtExponent::one() {
            SlotKind::Vertex
        } else {
            SlotKind::Sphere(p.recip_f64())
        };
        Self { kind, n }
    }

    fn continuous(&self) -> usize {
        match self.kind {
            SlotKind::Vertex => 0,
            SlotKind::Torus => self.n - 1,
            SlotKind::Sphere(_) => 2 * (self.n - 1),
        }
    }

    fn discrete(&self) -> usize {
        match self.kind {
            SlotKind::Vertex => self.n,
            _ => 1,
        }
    }

    /// Grid range for continuous coordinate `k`: angles come first.
    fn is_angle(&self, k: usize) -> bool {
        matches!(self.kind, SlotKind::Sphere(_)) && k < self.n - 1
    }

    fn vector(&self, choice: usize, coords: &[f64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        match self.kind {
            SlotKind::Vertex => x[choice] = Complex64::new(1.0, 0.0),
            SlotKind::Torus => {
                x[0] = Complex64::new(1.0, 0.0);
                for i in 1..n {
                    x[i] = Complex64::from_polar(1.0, coords[i - 1]);
                }
            }
            SlotKind::Sphere(recip_p) => {
                let (angles, phases) = coords.split_at(n - 1);
                // nonnegative point s on the unit ℓ₂ sphere; |x_i| = s_i^{2/p}
                let mut tail = 1.0;
                for i in 0..n {
                    let s = if i + 1 < n {
                        let v = tail * angles[i].cos();
                        tail *= angles[i].sin();
                        v
                    } else {
                        tail
                    };
                    let r = s.abs().powf(2.0 * recip_p);
                    let phi = if i == 0 { 0.0 } else { phases[i - 1] };
                    x[i] = Complex64::from_polar(r, phi);
                }
            }
        }
        x
    }
}

/// The searched problem: free slots followed by one axis whose norm is taken
/// in closed form.
struct Oracle {
    entries: Vec<Complex64>,
    shape: Vec<usize>,
    slots: Vec<SlotParam>,
    final_exponent: ExtExponent,
}

impl Oracle {
    fn eval(&self, choices: &[usize], coords: &[f64]) -> f64 {
        let mut buf: Vec<Complex64> = self.entries.clone();
        let mut shape = self.shape.clone();
        let mut offset = 0;
        for (slot, &choice) in self.slots.iter().zip(choices) {
            let k = slot.continuous();
            let x = slot.vector(choice, &coords[offset..offset + k]);
            offset += k;
            buf = contract_axis(&buf, &shape, 0, &x);
            shape.remove(0);
        }
        lq_norm(&buf, self.final_exponent)
    }

    fn polish(&self, choices: &[usize], start: &[f64], step0: f64) -> f64 {
        let mut x = start.to_vec();
        let mut best = self.eval(choices, &x);
        let mut step = step0;
        while step > 1e-10 {
            let mut improved = false;
            for k in 0..x.len() {
                for dir in [1.0, -1.0] {
                    let old = x[k];
                    x[k] = old + dir * step;
                    let v = self.eval(choices, &x);
                    if v > best {
                        best = v;
                        improved = true;
                    } else {
                        x[k] = old;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        self.gradient_ascent(choices, &mut x, best)
    }

    /// Finite-difference steepest ascent with an adaptive step, for ridges the
    /// coordinate search crawls along.
    fn gradient_ascent(&self, choices: &[usize], x: &mut Vec<f64>, mut best: f64) -> f64 {
        const H: f64 = 1e-6;
        let mut step = 1e-3;
        let mut grad = vec![0.0; x.len()];
        for _ in 0..500 {
            for k in 0..x.len() {
                let old = x[k];
                x[k] = old + H;
                let up = self.eval(choices, x);
                x[k] = old - H;
                let down = self.eval(choices, x);
                x[k] = old;
                grad[k] = (up - down) / (2.0 * H);
            }
            let gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
            if gnorm < 1e-13 {
                break;
            }
            let mut moved = false;
            while step > 1e-14 {
                let trial: Vec<f64> = x.iter().zip(&grad).map(|(a, g)| a + step * g / gnorm).collect();
                let v = self.eval(choices, &trial);
                if v > best {
                    best = v;
                    *x = trial;
                    step *= 2.0;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if !moved {
                break;
            }
        }
        best
    }
}

/// Row-major entries with `axis` transposed to the end.
fn move_axis_last(entries: &[Complex64], shape: &[usize], axis: usize) -> Vec<Complex64> {
    let outer: usize = shape[..axis].iter().product();
    let len = shape[axis];
    let inner: usize = shape[axis + 1..].iter().product();
    let mut out = Vec::with_capacity(entries.len());
    for o in 0..outer {
        for i in 0..inner {
            for k in 0..len {
                out.push(entries[(o * len + k) * inner + i]);
            }
        }
    }
    out
}

/// Grid-search oracle for `‖T‖` with default settings apart from the grid
/// density.
pub fn brute_force_norm(
    t: &CoefficientTensor,
    spec: &MultilinearSpec,
    grid_density: usize,
) -> Result<f64> {
    brute_force_norm_with(
        t,
        spec,
        &BruteForceConfig {
            grid_density,
            ..BruteForceConfig::default()
        },
    )
}

/// Searches the extreme points of all balls but one on a grid, where an `ℓ_u`
/// output counts as a slot paired with the `ℓ_{u′}` ball. The remaining slot,
/// the one with the most free coordinates, is maximized in closed form. The
/// best grid points are then polished by pattern search and gradient ascent.
pub fn brute_force_norm_with(
    t: &CoefficientTensor,
    spec: &MultilinearSpec,
    cfg: &BruteForceConfig,
) -> Result<f64> {
    spec.check(t)?;
    if t.num_coefficients() > cfg.max_coefficients {
        return Err(NormError::TooLarge(format!(
            "{} coefficients exceed the cap of {}",
            t.num_coefficients(),
            cfg.max_coefficients
        )));
    }
    let g = cfg.grid_density.max(2);
    // An ℓ_u output is one more slot paired against the u′ ball. The slot with
    // the most free coordinates is the one maximized in closed form.
    let mut axes: Vec<(usize, ExtExponent)> = t.dims().iter().copied().zip(spec.ps.ps().iter().copied()).collect();
    if let Target::Lu(u) = spec.target {
        axes.push((t.target_dim(), u.conjugate()));
    }
    let closed = (0..axes.len())
        .rev()
        .max_by_key(|&k| SlotParam::new(axes[k].1, axes[k].0).continuous())
        .expect("at least one axis");
    let shape: Vec<usize> = axes.iter().map(|a| a.0).collect();
    let entries = move_axis_last(t.entries(), &shape, closed);
    let final_exponent = axes[closed].1.conjugate();
    axes.remove(closed);
    let mut shape = shape;
    let last = shape.remove(closed);
    shape.push(last);
    let slots: Vec<SlotParam> = axes.iter().map(|&(n, p)| SlotParam::new(p, n)).collect();
    let oracle = Oracle {
        entries,
        shape,
        slots,
        final_exponent,
    };

    // (is_angle) per continuous coordinate, in slot order
    let coord_kinds: Vec<bool> = oracle
        .slots
        .iter()
        .flat_map(|s| (0..s.continuous()).map(move |k| s.is_angle(k)))
        .collect();
    let radices: Vec<usize> = oracle.slots.iter().map(SlotParam::discrete).collect();
    let n_discrete: usize = radices.iter().product();
    let grid_value = |is_angle: bool, k: usize| {
        if is_angle {
            std::f64::consts::FRAC_PI_2 * k as f64 / (g - 1) as f64
        } else {
            std::f64::consts::TAU * k as f64 / g as f64
        }
    };
    let n_coords = coord_kinds.len();
    let full = (g as f64).powi(n_coords as i32) * n_discrete as f64;

    let decode_choices = |mut d: usize| {
        let mut out = vec![0usize; radices.len()];
        for (o, &r) in out.iter_mut().zip(&radices).rev() {
            *o = d % r;
            d /= r;
        }
        out
    };

    let mut candidates: Vec<(f64, Vec<usize>, Vec<f64>)> = Vec::new();
    let mut keep = |v: f64, ch: Vec<usize>, x: Vec<f64>| {
        candidates.push((v, ch, x));
        if candidates.len() > 4 * cfg.polish_starts {
            candidates.sort_by(|a, b| b.0.total_cmp(&a.0));
            candidates.truncate(cfg.polish_starts);
        }
    };
    if full <= cfg.max_grid_points as f64 {
        let per = g.pow(n_coords as u32);
        for d in 0..n_discrete {
            let ch = decode_choices(d);
            for flat in 0..per {
                let mut rest = flat;
                let x: Vec<f64> = coord_kinds
                    .iter()
                    .map(|&a| {
                        let k = rest % g;
                        rest /= g;
                        grid_value(a, k)
                    })
                    .collect();
                keep(oracle.eval(&ch, &x), ch.clone(), x);
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6f72_6163_6c65);
        for _ in 0..cfg.max_grid_points {
            let ch: Vec<usize> = radices.iter().map(|&r| rng.random_range(0..r)).collect();
            let x: Vec<f64> = coord_kinds
                .iter()
                .map(|&a| {
                    let jitter = if a { 0.0 } else { rng.random::<f64>() * std::f64::consts::TAU / g as f64 };
                    grid_value(a, rng.random_range(0..g)) + jitter
                })
                .collect();
            keep(oracle.eval(&ch, &x), ch, x);
        }
    }
    candidates.sort_by(|a, b| b.0.total_cmp(&a.0));
    candidates.truncate(cfg.polish_starts);
    let step0 = std::f64::consts::FRAC_PI_2 / (g - 1) as f64;
    let best = candidates
        .iter()
        .map(|(v, ch, x)| {
            if x.is_empty() {
                *v
            } else {
                oracle.polish(ch, x, step0).max(*v)
            }
        })
        .fold(0.0, f64::max);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn e(s: &str) -> ExtExponent {
        s.parse().unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn spec(ps: &str) -> MultilinearSpec {
        MultilinearSpec::scalar(ps.parse().unwrap())
    }

    #[test]
    fn dual_maximizer_examples() {
        for p in ["1", "4/3", "2", "5", "inf"] {
            let (v, x) = dual_maximizer(&[c(1.0), c(0.0), c(0.0)], e(p));
            assert_relative_eq!(v, 1.0);
            assert_relative_eq!((x[0] - c(1.0)).norm(), 0.0, epsilon = 1e-15);
        }
        assert_relative_eq!(dual_maximizer(&[c(1.0), c(1.0)], e("2")).0, 2f64.sqrt());
        assert_relative_eq!(dual_maximizer(&[c(1.0), c(1.0)], e("1")).0, 1.0);
        let (v, x) = dual_maximizer(&[c(0.0); 3], e("3"));
        assert_eq!(v, 0.0);
        assert_eq!(x[0], c(1.0));
    }

    #[test]
    fn dual_maximizer_attains_value_in_ball() {
        let cv = [Complex64::new(0.3, -1.2), c(2.0), Complex64::new(0.0, 0.5), c(-0.1)];
        for p in ["1", "6/5", "3/2", "2", "3", "10", "inf"] {
            let p = e(p);
            let (v, x) = dual_maximizer(&cv, p);
            let dot: Complex64 = cv.iter().zip(&x).map(|(a, b)| a * b).sum();
            assert_relative_eq!(dot.norm(), v, max_relative = 1e-12);
            assert!(lq_norm(&x, p) <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn p_one_ties_break_low() {
        let (_, x) = dual_maximizer(&[c(0.5), c(-2.0), Complex64::new(0.0, 2.0)], e("1"));
        assert_eq!(x[1], c(-1.0));
        assert_eq!(x[2], c(0.0));
    }

    #[test]
    fn scalarize_diagonal() {
        let n = 3;
        let t = CoefficientTensor::from_fn(vec![n, n], n, |i, k| c(if i[0] == i[1] && i[0] == k { 1.0 } else { 0.0 })).unwrap();
        let sp = MultilinearSpec::lu_valued("4,4".parse().unwrap(), e("3/2"), e("2")).unwrap();
        let (b, ps) = scalarize(&t, &sp).unwrap();
        assert_eq!(b.dims(), &[3, 3, 3]);
        assert_eq!(ps.ps()[2], e("3"));
        assert_eq!(b.entries()[0], c(1.0));
        assert_eq!(b.entries()[13], c(1.0));
        assert_eq!(b.entries()[1], c(0.0));
        assert!(matches!(
            scalarize(&CoefficientTensor::zeros(vec![2], 0).unwrap(), &spec("2")),
            Err(NormError::NotVectorValued)
        ));
    }

    #[test]
    fn rank_one_is_separable() {
        let b = [c(1.0), Complex64::new(0.0, -2.0), c(0.5)];
        let cc = [c(3.0), c(-1.0)];
        let t = CoefficientTensor::from_fn(vec![3, 2], 0, |i, _| b[i[0]] * cc[i[1]]).unwrap();
        for (p1, p2) in [("2", "2"), ("3", "3/2"), ("inf", "4"), ("1", "inf")] {
            let sp = spec(&format!("{p1},{p2}"));
            let est = estimate_norm(&t, &sp, &EstimatorConfig::default().with_restarts(8)).unwrap();
            let expected = lq_norm(&b, e(p1).conjugate()) * lq_norm(&cc, e(p2).conjugate());
            assert_relative_eq!(est.value, expected, max_relative = 1e-9);
        }
    }

    #[test]
    fn zero_tensor_is_converged_zero() {
        let t = CoefficientTensor::zeros(vec![2, 3], 0).unwrap();
        let est = estimate_norm(&t, &spec("2,2"), &EstimatorConfig::default()).unwrap();
        assert_eq!(est.value, 0.0);
        assert!(est.converged);
        assert_eq!(est.maximizer.len(), 2);
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let t = CoefficientTensor::zeros(vec![2, 2], 0).unwrap();
        assert!(matches!(
            estimate_norm(&t, &spec("4"), &EstimatorConfig::default()),
            Err(NormError::Tensor(TensorError::DimensionMismatch(_)))
        ));
        let cfg = EstimatorConfig { restarts: 0, ..Default::default() };
        assert!(estimate_norm(&t, &spec("4,4"), &cfg).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let id = CoefficientTensor::from_fn(vec![2, 2], 0, |i, _| c(if i[0] == i[1] { 1.0 } else { 0.0 })).unwrap();
        assert_relative_eq!(brute_force_norm(&id, &spec("inf,inf"), 8).unwrap(), 2.0, max_relative = 1e-9);
        let ones = CoefficientTensor::from_fn(vec![2, 2], 0, |_, _| c(1.0)).unwrap();
        assert_relative_eq!(brute_force_norm(&ones, &spec("2,2"), 8).unwrap(), 2.0, max_relative = 1e-9);
        let big = CoefficientTensor::zeros(vec![9, 9], 0).unwrap();
        assert!(matches!(brute_force_norm(&big, &spec("2,2"), 4), Err(NormError::TooLarge(_))));
    }

    #[test]
    fn brute_force_vector_valued_matches_direct_norm() {
        // T(x) = (x₁, x₂) into ℓ_u: the norm of id ℓ_p → ℓ_u on two coordinates.
        let t = CoefficientTensor::from_fn(vec![2], 2, |i, k| c(if i[0] == k { 1.0 } else { 0.0 })).unwrap();
        let sp = MultilinearSpec::lu_valued("4".parse().unwrap(), e("2"), e("2")).unwrap();
        // ‖id: ℓ₄² → ℓ₂²‖ = 2^{1/2 − 1/4}
        assert_relative_eq!(brute_force_norm(&t, &sp, 10).unwrap(), 2f64.powf(0.25), max_relative = 1e-9);
    }
}
