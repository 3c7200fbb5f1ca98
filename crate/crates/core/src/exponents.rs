//! Closed-form exponent calculus.
//!
//! Every exponent lives in `[1, ∞]` and is stored through its reciprocal in
//! `[0, 1]`, so `∞` is just the reciprocal `0` and all region boundaries are
//! exact rational comparisons.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational used for all exponent arithmetic.
pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExponentError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("no case applies: {0}")]
    OutOfRegion(String),
    #[error("cannot parse exponent {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, ExponentError>;

fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// An exponent `p ∈ [1, ∞]`, held as `1/p`.
///
/// Ordering follows `p`, not the reciprocal: `ExtExponent::infinity()` is the
/// largest value.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtExponent {
    recip: Rational,
}

impl ExtExponent {
    pub fn from_recip(recip: Rational) -> Result<Self> {
        if recip.is_negative() || recip > Rational::one() {
            return Err(ExponentError::InvalidParams(format!(
                "reciprocal {recip} outside [0, 1]"
            )));
        }
        Ok(Self { recip })
    }

    /// The exponent `num/den`; must be at least 1.
    pub fn ratio(num: i128, den: i128) -> Result<Self> {
        if den == 0 || num == 0 {
            return Err(ExponentError::InvalidParams(format!("{num}/{den}")));
        }
        Self::from_recip(rat(den, num))
    }

    pub fn integer(p: i128) -> Result<Self> {
        Self::ratio(p, 1)
    }

    pub fn from_value(p: Rational) -> Result<Self> {
        if p.is_zero() {
            return Err(ExponentError::InvalidParams("exponent 0".into()));
        }
        Self::from_recip(p.recip())
    }

    pub fn infinity() -> Self {
        Self {
            recip: Rational::zero(),
        }
    }

    pub fn one() -> Self {
        Self {
            recip: Rational::one(),
        }
    }

    pub fn two() -> Self {
        Self { recip: rat(1, 2) }
    }

    pub fn recip(&self) -> Rational {
        self.recip
    }

    pub fn is_infinite(&self) -> bool {
        self.recip.is_zero()
    }

    /// `p` itself, or `None` for `∞`.
    pub fn value(&self) -> Option<Rational> {
        (!self.is_infinite()).then(|| self.recip.recip())
    }

    /// The conjugate exponent `p′` with `1/p + 1/p′ = 1`.
    pub fn conjugate(&self) -> Self {
        Self {
            recip: Rational::one() - self.recip,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self.value() {
            Some(v) => ratio_to_f64(v),
            None => f64::INFINITY,
        }
    }

    pub fn recip_f64(&self) -> f64 {
        ratio_to_f64(self.recip)
    }

    /// Scales the exponent by a positive rational factor, e.g. `0.9·ρ`.
    /// The result must still be at least 1.
    pub fn scaled(&self, factor: Rational) -> Result<Self> {
        if !factor.is_positive() {
            return Err(ExponentError::InvalidParams(format!("factor {factor}")));
        }
        Self::from_recip(self.recip / factor)
    }
}

pub fn ratio_to_f64(r: Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

impl Ord for ExtExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        other.recip.cmp(&self.recip)
    }
}

impl PartialOrd for ExtExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            None => f.write_str("inf"),
            Some(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for ExtExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtExponent({self})")
    }
}

impl Serialize for ExtExponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtExponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a nonnegative rational written as `a/b`, an integer or a decimal.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || ExponentError::Parse(s.to_string());
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| err())?;
        let d: i128 = d.trim().parse().map_err(|_| err())?;
        if d == 0 {
            return Err(err());
        }
        return Ok(rat(n, d));
    }
    let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    if frac.len() > 18 {
        return Err(err());
    }
    let digits = format!("{whole}{frac}");
    let n: i128 = digits.parse().map_err(|_| err())?;
    Ok(rat(n, 10i128.pow(frac.len() as u32)))
}

impl FromStr for ExtExponent {
    type Err = ExponentError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity" | "∞") {
            return Ok(Self::infinity());
        }
        let v = parse_rational(t)?;
        if v < Rational::one() {
            return Err(ExponentError::InvalidParams(format!(
                "exponent {s} is below 1"
            )));
        }
        Self::from_value(v)
    }
}

/// Domain exponents `(p₁, …, p_m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DomainVector {
    ps: Vec<ExtExponent>,
}

impl DomainVector {
    pub fn new(ps: Vec<ExtExponent>) -> Result<Self> {
        if ps.is_empty() {
            return Err(ExponentError::InvalidParams(
                "domain vector needs at least one exponent".into(),
            ));
        }
        Ok(Self { ps })
    }

    /// `m` copies of `p`.
    pub fn uniform(p: ExtExponent, m: usize) -> Result<Self> {
        Self::new(vec![p; m])
    }

    pub fn m(&self) -> usize {
        self.ps.len()
    }

    pub fn ps(&self) -> &[ExtExponent] {
        &self.ps
    }

    pub fn sum_recip(&self) -> Rational {
        self.ps.iter().map(ExtExponent::recip).sum()
    }

    /// Appends one more slot, as when a vector-valued map is scalarized.
    pub fn with_slot(&self, p: ExtExponent) -> Self {
        let mut ps = self.ps.clone();
        ps.push(p);
        Self { ps }
    }
}

impl FromStr for DomainVector {
    type Err = ExponentError;

    fn from_str(s: &str) -> Result<Self> {
        let ps = s
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<ExtExponent>>>()?;
        Self::new(ps)
    }
}

impl fmt::Display for DomainVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.ps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Region of the exponent tables a result was computed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseLabel {
    #[serde(rename = "I_A")]
    IA,
    #[serde(rename = "I_B")]
    IB,
    #[serde(rename = "II_A")]
    IIA,
    #[serde(rename = "II_B")]
    IIB,
    #[serde(rename = "III")]
    III,
    #[serde(rename = "LAMBDA_REGIME")]
    LambdaRegime,
    #[serde(rename = "MU_REGIME")]
    MuRegime,
    #[serde(rename = "KW_I_A")]
    KwapienIA,
    #[serde(rename = "KW_I_B")]
    KwapienIB,
    #[serde(rename = "KW_II_A")]
    KwapienIIA,
    #[serde(rename = "KW_II_B")]
    KwapienIIB,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::IA => "I_A",
            CaseLabel::IB => "I_B",
            CaseLabel::IIA => "II_A",
            CaseLabel::IIB => "II_B",
            CaseLabel::III => "III",
            CaseLabel::LambdaRegime => "LAMBDA_REGIME",
            CaseLabel::MuRegime => "MU_REGIME",
            CaseLabel::KwapienIA => "KW_I_A",
            CaseLabel::KwapienIB => "KW_I_B",
            CaseLabel::KwapienIIA => "KW_II_A",
            CaseLabel::KwapienIIB => "KW_II_B",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentResult {
    pub rho: ExtExponent,
    pub case: CaseLabel,
    /// Metadata only; never feeds back into `rho`.
    pub optimality_known: bool,
    pub applicability: bool,
}

impl ExponentResult {
    fn new(rho: ExtExponent, case: CaseLabel, optimality_known: bool) -> Self {
        Self {
            rho,
            case,
            optimality_known,
            applicability: true,
        }
    }
}

/// `1/λ = 1/r − Σ 1/p_j`.
pub fn lambda_exponent(r: ExtExponent, ps: &DomainVector) -> Result<ExtExponent> {
    let s = ps.sum_recip();
    if s >= r.recip() {
        return Err(ExponentError::PreconditionViolated(format!(
            "sum of 1/p_j = {s} must be strictly below 1/r = {}",
            r.recip()
        )));
    }
    ExtExponent::from_recip(r.recip() - s)
}

/// `1/μ = 1/(mλ) + (m−1)/(mq)`.
pub fn mu_exponent(lambda: ExtExponent, q: ExtExponent, m: usize) -> Result<ExtExponent> {
    if m == 0 {
        return Err(ExponentError::InvalidParams("m must be at least 1".into()));
    }
    let m = int(m as i128);
    ExtExponent::from_recip(lambda.recip() / m + (m - 1) * q.recip() / m)
}

/// The exponent for `v∘T` when `v` is `(r,1)`-summing into a cotype `q` space.
pub fn multilinear_exponent(
    r: ExtExponent,
    q: ExtExponent,
    ps: &DomainVector,
) -> Result<ExponentResult> {
    if r > q {
        return Err(ExponentError::InvalidParams(format!(
            "need r ≤ q, got r = {r}, q = {q}"
        )));
    }
    let lambda = lambda_exponent(r, ps)?;
    if lambda >= q {
        Ok(ExponentResult::new(lambda, CaseLabel::LambdaRegime, false))
    } else {
        let mu = mu_exponent(lambda, q, ps.m())?;
        Ok(ExponentResult::new(mu, CaseLabel::MuRegime, false))
    }
}

/// Optimal `r` with `ℓ_u ↪ ℓ_q` being `(r,1)`-summing.
pub fn bennett_carl_r(u: ExtExponent, q: ExtExponent) -> Result<ExtExponent> {
    if u > q {
        return Err(ExponentError::InvalidParams(format!(
            "need u ≤ q, got u = {u}, q = {q}"
        )));
    }
    if q >= ExtExponent::two() {
        Ok(u)
    } else {
        ExtExponent::from_recip(rat(1, 2) + u.recip() - q.recip())
    }
}

/// Optimal `r` for which every operator `ℓ₁ → ℓ_q` is `(r,1)`-summing:
/// `1/r = 1 − |1/q − 1/2|`.
pub fn kwapien_r(q: ExtExponent) -> ExtExponent {
    let d = (q.recip() - rat(1, 2)).abs();
    ExtExponent {
        recip: Rational::one() - d,
    }
}

/// Scalar-valued forms: `r = 1`, `q = 2`. Both regimes are optimal.
pub fn praciano_exponent(ps: &DomainVector) -> Result<ExponentResult> {
    let s = ps.sum_recip();
    if s >= Rational::one() {
        return Err(ExponentError::PreconditionViolated(format!(
            "sum of 1/p_j = {s} ≥ 1: the diagonal form has infinitely many unit \
             coefficients, so no summability exponent exists"
        )));
    }
    let mut res = multilinear_exponent(ExtExponent::one(), ExtExponent::two(), ps)?;
    res.optimality_known = true;
    Ok(res)
}

/// The closed-form ρ of one `ℓ_u`-valued region, evaluated at `s = Σ 1/p_j`
/// without checking that `s` lies in the region. Returns the reciprocal `1/ρ`.
pub fn lp_case_recip(case: CaseLabel, u: ExtExponent, q: ExtExponent, s: Rational, m: usize) -> Option<Rational> {
    let m = int(m as i128);
    let half = rat(1, 2);
    let (iu, iq) = (u.recip(), q.recip());
    let r = match case {
        // 2m / (m + 2(1/u − 1/q − s))
        CaseLabel::IA => (m + int(2) * (iu - iq - s)) / (int(2) * m),
        // 2 / (1 + 2(1/u − 1/q − s))
        CaseLabel::IB => (Rational::one() + int(2) * (iu - iq - s)) / 2,
        CaseLabel::IIA => (m + int(2) * (iu - half - s)) / (int(2) * m),
        CaseLabel::IIB | CaseLabel::III => iu - s,
        _ => return None,
    };
    Some(r)
}

fn lp_family(u: ExtExponent, q: ExtExponent) -> Result<u8> {
    if u > q {
        return Err(ExponentError::InvalidParams(format!(
            "need u ≤ q, got u = {u}, q = {q}"
        )));
    }
    let two = ExtExponent::two();
    Ok(if u >= two {
        3
    } else if q >= two {
        2
    } else {
        1
    })
}

/// Whether the point `(u, q, s)` lies in one of the regions whose exponent
/// is proven optimal: I_A, II_B, III, and I_B restricted to `s < 1/2`.
fn lp_optimality_known(u: ExtExponent, q: ExtExponent, s: Rational) -> bool {
    let two = ExtExponent::two();
    let half = rat(1, 2);
    let (iu, iq) = (u.recip(), q.recip());
    let in_i = q <= two;
    let in_ii = u <= two && two <= q;
    let in_iii = two <= u;
    let i_a = in_i && s < iu - iq;
    let i_b_opt = in_i && iu - iq <= s && s < half;
    let ii_b = in_ii && iu - half <= s && s < iu;
    let iii = in_iii && s < iu;
    i_a || i_b_opt || ii_b || iii
}

fn lp_valued_from_sum(
    u: ExtExponent,
    q: ExtExponent,
    s: Rational,
    m: usize,
) -> Result<ExponentResult> {
    let family = lp_family(u, q)?;
    let half = rat(1, 2);
    let (iu, iq) = (u.recip(), q.recip());
    let case = match family {
        1 if s < iu - iq => CaseLabel::IA,
        1 if s < half + iu - iq => CaseLabel::IB,
        2 if s < iu - half => CaseLabel::IIA,
        2 if s < iu => CaseLabel::IIB,
        3 if s < iu => CaseLabel::III,
        _ => {
            return Err(ExponentError::OutOfRegion(format!(
                "u = {u}, q = {q}, sum of 1/p_j = {s}"
            )))
        }
    };
    let recip = lp_case_recip(case, u, q, s, m).expect("ℓu case");
    Ok(ExponentResult::new(
        ExtExponent::from_recip(recip)?,
        case,
        lp_optimality_known(u, q, s),
    ))
}

/// ρ for `ℓ_u`-valued m-linear maps with coefficients measured in `ℓ_q`.
pub fn lp_valued_exponent(
    u: ExtExponent,
    q: ExtExponent,
    ps: &DomainVector,
) -> Result<ExponentResult> {
    lp_valued_from_sum(u, q, ps.sum_recip(), ps.m())
}

/// `p > x` for a finite threshold `x`.
fn exceeds(p: ExtExponent, x: Rational) -> bool {
    p.value().map_or(true, |v| v > x)
}

/// ρ for m-homogeneous polynomials `ℓ_p → ℓ_u`, classified by the
/// thresholds on `p` directly.
pub fn polynomial_exponent(
    u: ExtExponent,
    q: ExtExponent,
    p: ExtExponent,
    m: usize,
) -> Result<ExponentResult> {
    if m == 0 {
        return Err(ExponentError::InvalidParams("m must be at least 1".into()));
    }
    let family = lp_family(u, q)?;
    let mm = int(m as i128);
    let out = || {
        ExponentError::OutOfRegion(format!("u = {u}, q = {q}, p = {p}, m = {m}"))
    };
    // u = ∞ only reaches family 3, where p > m·u is impossible.
    let Some(uv) = u.value() else {
        return Err(out());
    };
    let case = match family {
        1 => {
            let qv = q.value().expect("q ≤ 2 in family I");
            // mqu/(q−u); infinite when u = q
            let upper = (qv != uv).then(|| mm * qv * uv / (qv - uv));
            let lower = int(2) * mm * uv * qv / (uv * qv + int(2) * qv - int(2) * uv);
            match upper {
                Some(x) if exceeds(p, x) => CaseLabel::IA,
                _ if exceeds(p, lower) => CaseLabel::IB,
                _ => return Err(out()),
            }
        }
        2 => {
            let lower = mm * uv;
            // 2mu/(2−u), infinite when u = 2
            let upper = (uv != int(2)).then(|| int(2) * mm * uv / (int(2) - uv));
            match upper {
                Some(x) if exceeds(p, x) => CaseLabel::IIA,
                _ if exceeds(p, lower) => CaseLabel::IIB,
                _ => return Err(out()),
            }
        }
        _ => {
            if exceeds(p, mm * uv) {
                CaseLabel::III
            } else {
                return Err(out());
            }
        }
    };
    let s = mm * p.recip();
    let recip = lp_case_recip(case, u, q, s, m).expect("ℓu case");
    Ok(ExponentResult::new(
        ExtExponent::from_recip(recip)?,
        case,
        lp_optimality_known(u, q, s),
    ))
}

/// The closed-form ρ of one Kwapień region at `s = Σ 1/p_j`, as `1/ρ`.
pub fn kwapien_case_recip(case: CaseLabel, q: ExtExponent, s: Rational, m: usize) -> Option<Rational> {
    let m = int(m as i128);
    let half = rat(1, 2);
    let iq = q.recip();
    let r = match case {
        // 2m / (m + 2 − 2(1/q + s))
        CaseLabel::KwapienIA => (m + 2 - int(2) * (iq + s)) / (int(2) * m),
        // 2 / (3 − 2(1/q + s))
        CaseLabel::KwapienIB => (int(3) - int(2) * (iq + s)) / 2,
        // m / (1/2 + m/q − s)
        CaseLabel::KwapienIIA => (half + m * iq - s) / m,
        // 1 / (1/2 + 1/q − s)
        CaseLabel::KwapienIIB => half + iq - s,
        _ => return None,
    };
    Some(r)
}

/// ρ for `v∘T` with `T` into `ℓ₁` and `v: ℓ₁ → ℓ_q` arbitrary.
pub fn kwapien_exponent(q: ExtExponent, ps: &DomainVector) -> Result<ExponentResult> {
    let s = ps.sum_recip();
    let half = rat(1, 2);
    let iq = q.recip();
    let case = if q < ExtExponent::two() {
        if s < Rational::one() - iq {
            CaseLabel::KwapienIA
        } else if s < rat(3, 2) - iq {
            CaseLabel::KwapienIB
        } else {
            return Err(ExponentError::OutOfRegion(format!("q = {q}, sum of 1/p_j = {s}")));
        }
    } else if s < half {
        CaseLabel::KwapienIIA
    } else if s < half + iq {
        CaseLabel::KwapienIIB
    } else {
        return Err(ExponentError::OutOfRegion(format!("q = {q}, sum of 1/p_j = {s}")));
    };
    let recip = kwapien_case_recip(case, q, s, ps.m()).expect("kwapien case");
    Ok(ExponentResult::new(ExtExponent::from_recip(recip)?, case, false))
}

/// Diagonal coefficients `P(e_i)` of an m-homogeneous polynomial on `ℓ_p`
/// are `p/(p−m)`-summable; on `c₀` the exponent is 1.
pub fn zalduendo_exponent(p: ExtExponent, m: usize) -> Result<ExtExponent> {
    let mm = int(m as i128);
    if m == 0 || p.value().is_some_and(|v| v <= mm) {
        return Err(ExponentError::PreconditionViolated(format!(
            "need m < p, got p = {p}, m = {m}"
        )));
    }
    // 1 / (p/(p−m)) = 1 − m/p
    ExtExponent::from_recip(Rational::one() - mm * p.recip())
}

/// Cotype of `ℓ_q`, `max{q, 2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cotype {
    pub value: ExtExponent,
    /// `false` for `q = ∞`, where no finite cotype exists.
    pub finite: bool,
}

pub fn cotype_of_lq(q: ExtExponent) -> Cotype {
    Cotype {
        value: q.max(ExtExponent::two()),
        finite: !q.is_infinite(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> ExtExponent {
        s.parse().unwrap()
    }

    fn dv(s: &str) -> DomainVector {
        s.parse().unwrap()
    }

    #[test]
    fn conjugate_is_involution() {
        for s in ["1", "4/3", "2", "3", "inf"] {
            let p = e(s);
            assert_eq!(p.conjugate().conjugate(), p);
            assert_eq!(p.recip() + p.conjugate().recip(), Rational::one());
        }
        assert_eq!(e("1").conjugate(), ExtExponent::infinity());
    }

    #[test]
    fn parses_all_forms() {
        assert_eq!(e("1.5"), e("3/2"));
        assert_eq!(e("  inf "), ExtExponent::infinity());
        assert_eq!(e("4").to_string(), "4");
        assert_eq!(e("8/6").to_string(), "4/3");
        assert!("0.5".parse::<ExtExponent>().is_err());
        assert!("abc".parse::<ExtExponent>().is_err());
        assert!("1/0".parse::<ExtExponent>().is_err());
        assert!("-2".parse::<ExtExponent>().is_err());
    }

    #[test]
    fn ordering_follows_exponent() {
        assert!(e("2") < e("3"));
        assert!(e("100") < ExtExponent::infinity());
        assert_eq!(e("2").max(e("5")), e("5"));
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_exponent(e("1"), &dv("inf,inf")).unwrap(), e("1"));
        assert_eq!(lambda_exponent(e("1"), &dv("4,4")).unwrap(), e("2"));
        assert!(matches!(
            lambda_exponent(e("1"), &dv("2,2")),
            Err(ExponentError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu_exponent(e("1"), e("2"), 2).unwrap(), e("4/3"));
        assert_eq!(mu_exponent(e("1"), e("2"), 3).unwrap(), e("3/2"));
        for s in ["1", "3/2", "7", "inf"] {
            assert_eq!(mu_exponent(e(s), e(s), 4).unwrap(), e(s));
        }
        assert!(mu_exponent(e("1"), e("2"), 0).is_err());
    }

    #[test]
    fn multilinear_examples() {
        let r = multilinear_exponent(e("1"), e("2"), &dv("4,4")).unwrap();
        assert_eq!((r.rho, r.case), (e("2"), CaseLabel::LambdaRegime));
        for m in 1..=6usize {
            let ps = DomainVector::uniform(ExtExponent::infinity(), m).unwrap();
            let r = multilinear_exponent(e("1"), e("2"), &ps).unwrap();
            let expected = ExtExponent::ratio(2 * m as i128, m as i128 + 1).unwrap();
            assert_eq!(r.rho, expected);
            // λ = 1 < q for every m, so even m = 1 takes the μ branch (μ = λ there).
            assert_eq!(r.case, CaseLabel::MuRegime);
        }
        let r = multilinear_exponent(e("1"), e("2"), &dv("8,8")).unwrap();
        assert_eq!((r.rho, r.case), (e("8/5"), CaseLabel::MuRegime));
        assert!(matches!(
            multilinear_exponent(e("3"), e("2"), &dv("8,8")),
            Err(ExponentError::InvalidParams(_))
        ));
    }

    #[test]
    fn bennett_carl_examples() {
        assert_eq!(bennett_carl_r(e("2"), e("inf")).unwrap(), e("2"));
        assert_eq!(bennett_carl_r(e("1"), e("4/3")).unwrap(), e("4/3"));
        assert_eq!(bennett_carl_r(e("1"), e("2")).unwrap(), e("1"));
        assert!(bennett_carl_r(e("3"), e("2")).is_err());
    }

    #[test]
    fn praciano_examples() {
        assert_eq!(praciano_exponent(&dv("inf,inf")).unwrap().rho, e("4/3"));
        let r = praciano_exponent(&dv("4,4")).unwrap();
        assert_eq!((r.rho, r.case), (e("2"), CaseLabel::LambdaRegime));
        assert!(r.optimality_known);
        let err = praciano_exponent(&dv("2,2")).unwrap_err();
        assert!(err.to_string().contains("infinitely many"));
    }

    #[test]
    fn lp_valued_examples() {
        for m in 1..=6usize {
            let ps = DomainVector::uniform(ExtExponent::infinity(), m).unwrap();
            let r = lp_valued_exponent(e("1"), e("2"), &ps).unwrap();
            assert_eq!(r.rho, ExtExponent::ratio(2 * m as i128, m as i128 + 1).unwrap());
            assert_eq!(r.case, CaseLabel::IIA);
        }
        let r = lp_valued_exponent(e("2"), e("inf"), &dv("8,8")).unwrap();
        assert_eq!((r.rho, r.case), (e("4"), CaseLabel::III));
        assert!(r.optimality_known);

        // 1/u − 1/2 = 1/2 exactly: II_B is selected and II_A agrees there.
        let r = lp_valued_exponent(e("1"), e("2"), &dv("4,4")).unwrap();
        assert_eq!((r.rho, r.case), (e("2"), CaseLabel::IIB));
        let a = lp_case_recip(CaseLabel::IIA, e("1"), e("2"), rat(1, 2), 2).unwrap();
        assert_eq!(a, rat(1, 2));
    }

    #[test]
    fn lp_valued_out_of_region() {
        assert!(matches!(
            lp_valued_exponent(e("2"), e("3"), &dv("4,4")),
            Err(ExponentError::OutOfRegion(_))
        ));
        assert!(matches!(
            lp_valued_exponent(e("1"), e("4"), &dv("1,inf")),
            Err(ExponentError::OutOfRegion(_))
        ));
        assert!(matches!(
            lp_valued_exponent(e("3"), e("2"), &dv("4,4")),
            Err(ExponentError::InvalidParams(_))
        ));
    }

    #[test]
    fn lp_valued_optimality_flags() {
        // I_B with s < 1/2 is optimal, with s ≥ 1/2 it is not known.
        let r = lp_valued_exponent(e("1"), e("4/3"), &dv("8,8")).unwrap();
        assert_eq!((r.rho, r.case, r.optimality_known), (e("2"), CaseLabel::IB, true));
        let r = lp_valued_exponent(e("1"), e("4/3"), &dv("4,4")).unwrap();
        assert_eq!(r.case, CaseLabel::IB);
        assert!(!r.optimality_known);
        // II_A with q > 2 is not covered.
        let r = lp_valued_exponent(e("1"), e("4"), &dv("inf,inf")).unwrap();
        assert_eq!(r.case, CaseLabel::IIA);
        assert!(!r.optimality_known);
    }

    #[test]
    fn polynomial_examples() {
        let r = polynomial_exponent(e("1"), e("2"), e("inf"), 2).unwrap();
        assert_eq!((r.rho, r.case, r.optimality_known), (e("4/3"), CaseLabel::IIA, true));
        let r = polynomial_exponent(e("2"), e("2"), e("inf"), 2).unwrap();
        assert_eq!((r.rho, r.case), (e("2"), CaseLabel::III));
        assert_eq!(polynomial_exponent(e("2"), e("inf"), e("8"), 2).unwrap().rho, e("4"));
        assert!(matches!(
            polynomial_exponent(e("2"), e("inf"), e("4"), 2),
            Err(ExponentError::OutOfRegion(_))
        ));
    }

    #[test]
    fn kwapien_examples() {
        assert_eq!(kwapien_r(e("2")), e("1"));
        assert_eq!(kwapien_r(e("1")), e("2"));
        assert_eq!(kwapien_r(e("inf")), e("2"));
        let r = kwapien_exponent(e("2"), &dv("inf,inf")).unwrap();
        assert_eq!(r.rho, e("4/3"));
        for m in 1..=5usize {
            let ps = DomainVector::uniform(ExtExponent::infinity(), m).unwrap();
            let r = kwapien_exponent(e("inf"), &ps).unwrap();
            assert_eq!((r.rho, r.case), (ExtExponent::integer(2 * m as i128).unwrap(), CaseLabel::KwapienIIA));
        }
        assert!(matches!(
            kwapien_exponent(e("inf"), &dv("2,2")),
            Err(ExponentError::OutOfRegion(_))
        ));
    }

    #[test]
    fn kwapien_reference_values() {
        // q ≤ 2: ℓ_q has cotype 2; q ≥ 2: cotype q.
        for q in ["1", "4/3", "3/2", "2", "3", "6"] {
            for ps in ["inf,inf", "8,8", "4,8", "3,inf", "4,4", "inf,inf,6"] {
                let q = e(q);
                let ps = dv(ps);
                let cot = cotype_of_lq(q).value;
                let via_main = multilinear_exponent(kwapien_r(q), cot, &ps);
                let direct = kwapien_exponent(q, &ps);
                match (via_main, direct) {
                    (Ok(a), Ok(b)) => assert_eq!(a.rho, b.rho, "q={q} ps={ps}"),
                    (Err(_), Err(_)) => {}
                    (a, b) => panic!("q={q} ps={ps}: {a:?} vs {b:?}"),
                }
            }
        }
    }

    #[test]
    fn zalduendo_examples() {
        for m in 1..5 {
            assert_eq!(zalduendo_exponent(ExtExponent::infinity(), m).unwrap(), e("1"));
        }
        assert_eq!(zalduendo_exponent(e("4"), 2).unwrap(), e("2"));
        assert_eq!(zalduendo_exponent(e("3"), 2).unwrap(), e("3"));
        assert!(zalduendo_exponent(e("2"), 2).is_err());
    }

    #[test]
    fn cotype_examples() {
        assert_eq!(cotype_of_lq(e("1")).value, e("2"));
        assert_eq!(cotype_of_lq(e("2")).value, e("2"));
        assert_eq!(cotype_of_lq(e("5")).value, e("5"));
        let c = cotype_of_lq(ExtExponent::infinity());
        assert!(c.value.is_infinite() && !c.finite);
    }
}
