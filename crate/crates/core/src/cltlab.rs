//! Exact path-length distributions and their Gaussian limit.
//!
//! `X_{p,q}` is the number of jumps of a path chosen uniformly from all
//! unrestricted paths starting at `(p, q)`. Its law is read off
//! `F_{p,q}` and splits as `X = A + B` with independent
//! `P(A = k) ∝ C(lo, k)` and `P(B = k) ∝ C(hi, k) C(lo + k, k)`, where
//! `lo = min(p, q)` and `hi = max(p, q)`.
//!
//! Along the ray `p = n`, `q = c n` the law centres at `a n` with
//! `a = (c - 1 + sqrt(c^2 + 6c + 1)) / 4` and its log-weights curve like
//! `-chi t^2` in the standardized coordinate `t = (k - a n) / sqrt(n)`.
//!
//! Everything up to the final comparison is exact; only the reported
//! diagnostics are floating point.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{guard, Error, Result};
use crate::exactmath::{binom, ratio_to_f64, Count, ExactRatio};
use crate::genfunc::path_length_poly;

/// Largest `p + q` for exact distributions.
pub const MAX_EXACT_ORDER: u64 = 2000;

/// Exponent used for tail mass in reports.
pub const DEFAULT_TAIL_EXPONENT: f64 = 0.1;

#[derive(Clone, Debug, PartialEq)]
pub struct DistSummary {
    pub p: u64,
    pub q: u64,
    /// `u((p,q), k)` for `k = 0..=p+q`.
    pub counts: Vec<Count>,
    pub total: Count,
    /// `probs[k] = counts[k] / total`, in lowest terms.
    pub probs: Vec<ExactRatio>,
    pub mean_exact: ExactRatio,
    pub var_exact: ExactRatio,
    /// `None` at the origin, where the asymptotic formulas divide by zero.
    pub mean_asymp: Option<f64>,
    pub var_asymp: Option<f64>,
    pub ks_distance: Option<f64>,
    pub tail_mass: Option<f64>,
}

/// Centre and curvature parameters along the ray `q = c p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsympParams {
    pub c: f64,
    pub a: f64,
    pub chi: f64,
}

impl AsympParams {
    pub fn new(c: f64) -> Result<Self> {
        Ok(Self {
            c,
            a: a_param(c)?,
            chi: chi_param(c)?,
        })
    }
}

fn check_c(c: f64) -> Result<()> {
    if c.is_nan() || c < 1.0 {
        return Err(Error::InvalidArgument(format!("ray slope c = {c} must be >= 1")));
    }
    Ok(())
}

fn root_disc(c: f64) -> f64 {
    (c * c + 6.0 * c + 1.0).sqrt()
}

pub fn a_param(c: f64) -> Result<f64> {
    check_c(c)?;
    Ok((c - 1.0 + root_disc(c)) / 4.0)
}

/// The quadratic coefficient of the log-weights in `t`:
/// `(2c^2 + 10c^3 - 10c^4 - 2c^5 + (2c^2 + 4c^3 + 2c^4) sqrt(1 + c(6 + c))) / (8c^4)`.
pub fn chi_param(c: f64) -> Result<f64> {
    check_c(c)?;
    let s = (1.0 + c * (6.0 + c)).sqrt();
    let (c2, c3, c4, c5) = (c * c, c * c * c, c.powi(4), c.powi(5));
    Ok((2.0 * c2 + 10.0 * c3 - 10.0 * c4 - 2.0 * c5 + (2.0 * c2 + 4.0 * c3 + 2.0 * c4) * s) / (8.0 * c4))
}

/// `2 chi(c) Var(B)/n`, which equals one when `chi` and the variance formula
/// describe the same Gaussian.
pub fn chi_consistency(c: f64) -> Result<f64> {
    let chi = chi_param(c)?;
    Ok(2.0 * chi * ((c - 1.0) / 8.0 + (c + 1.0).powi(2) / (8.0 * root_disc(c))))
}

/// Slope coefficient `c'` of the step ratio `1 - c' t / sqrt(n)`.
pub fn ratio_slope(c: f64) -> Result<f64> {
    check_c(c)?;
    let s = root_disc(c);
    Ok(8.0 * s / ((1.0 + c).powi(2) + (c - 1.0) * s))
}

fn check_not_origin(p: u64, q: u64) -> Result<()> {
    if p == 0 && q == 0 {
        return Err(Error::InvalidArgument(
            "asymptotic formulas are undefined at the origin".into(),
        ));
    }
    Ok(())
}

pub fn asymp_mean(p: u64, q: u64) -> Result<f64> {
    check_not_origin(p, q)?;
    let (p, q) = (p as f64, q as f64);
    Ok((q + p + (p * p + 6.0 * p * q + q * q).sqrt()) / 4.0)
}

pub fn asymp_var(p: u64, q: u64) -> Result<f64> {
    check_not_origin(p, q)?;
    let (p, q) = (p as f64, q as f64);
    let s = (p * p + 6.0 * p * q + q * q).sqrt();
    Ok((p + q) / 8.0 + (p + q).powi(2) / (8.0 * s))
}

fn ratio(num: BigUint, den: &BigUint) -> ExactRatio {
    BigRational::new(BigInt::from(num), BigInt::from(den.clone()))
}

fn check_order(p: u64, q: u64) -> Result<()> {
    if p + q > MAX_EXACT_ORDER {
        return Err(guard(
            "sweep-size",
            format!("p + q = {} exceeds the limit {MAX_EXACT_ORDER}", p + q),
        ));
    }
    Ok(())
}

/// Exact mean and variance of a law given by non-negative integer weights.
pub fn moments_from_weights(weights: &[Count]) -> (ExactRatio, ExactRatio) {
    let total: Count = weights.iter().sum();
    let mut first = Count::zero();
    let mut second = Count::zero();
    for (k, w) in weights.iter().enumerate() {
        first += w * k;
        second += w * (k * k);
    }
    let mean = ratio(first, &total);
    let var = ratio(second, &total) - &mean * &mean;
    (mean, var)
}

/// Exact mean and variance of a law given by probabilities.
pub fn moments(probs: &[ExactRatio]) -> (ExactRatio, ExactRatio) {
    let mut mean = ExactRatio::zero();
    let mut second = ExactRatio::zero();
    for (k, pk) in probs.iter().enumerate() {
        let k = ExactRatio::from_integer(k.into());
        mean += pk * &k;
        second += pk * &k * &k;
    }
    let var = second - &mean * &mean;
    (mean, var)
}

/// Law of `X_{p,q}` with exact moments from `F'(1)/F(1)` and
/// `F''(1)/F(1) + mean - mean^2`.
pub fn exact_distribution(p: u64, q: u64) -> Result<DistSummary> {
    check_order(p, q)?;
    let f = path_length_poly(p, q);
    let counts = f.counts();
    let total = f.total();
    let probs = counts.iter().map(|c| ratio(c.clone(), &total)).collect();
    let d1 = f.poly.derivative();
    let d2 = d1.derivative();
    let total_int = BigInt::from(total.clone());
    let mean = BigRational::new(d1.eval_at_one(), total_int.clone());
    let fact2 = BigRational::new(d2.eval_at_one(), total_int);
    let var = fact2 + &mean - &mean * &mean;
    let origin = p == 0 && q == 0;
    Ok(DistSummary {
        p,
        q,
        counts,
        total,
        probs,
        mean_exact: mean,
        var_exact: var,
        mean_asymp: (!origin).then(|| asymp_mean(p, q).expect("not the origin")),
        var_asymp: (!origin).then(|| asymp_var(p, q).expect("not the origin")),
        ks_distance: None,
        tail_mass: None,
    })
}

impl DistSummary {
    pub fn mean_f64(&self) -> f64 {
        ratio_to_f64(&self.mean_exact)
    }

    pub fn var_f64(&self) -> f64 {
        ratio_to_f64(&self.var_exact)
    }

    /// Largest gap between the exact CDF and the normal CDF with the exact
    /// mean and variance, taken at the half-integer breakpoints `k + 1/2`.
    pub fn ks_distance(&self) -> Result<f64> {
        if self.var_exact.is_zero() {
            return Err(Error::Degenerate(format!(
                "X_({},{}) is a point mass",
                self.p, self.q
            )));
        }
        let normal = Normal::new(self.mean_f64(), self.var_f64().sqrt())
            .map_err(|e| Error::Degenerate(e.to_string()))?;
        let mut cum = Count::zero();
        let mut worst: f64 = 0.0;
        for (k, c) in self.counts.iter().enumerate() {
            cum += c;
            let exact = ratio_to_f64(&ratio(cum.clone(), &self.total));
            worst = worst.max((exact - normal.cdf(k as f64 + 0.5)).abs());
        }
        Ok(worst)
    }
}

pub fn ks_distance(p: u64, q: u64) -> Result<f64> {
    exact_distribution(p, q)?.ks_distance()
}

/// Weights `C(hi, k) C(lo + k, k)` of `B`, for `k = 0..=hi`.
pub fn b_weights(p: u64, q: u64) -> Vec<Count> {
    let (lo, hi) = (p.min(q), p.max(q));
    (0..=hi)
        .map(|k| binom(hi, k as i64) * binom(lo + k, k as i64))
        .collect()
}

fn normalize(weights: &[Count]) -> Vec<ExactRatio> {
    let total: Count = weights.iter().sum();
    weights.iter().map(|w| ratio(w.clone(), &total)).collect()
}

/// Laws of the independent summands `A` and `B` of `X_{p,q}`.
pub fn component_distributions(p: u64, q: u64) -> (Vec<ExactRatio>, Vec<ExactRatio>) {
    let lo = p.min(q);
    let a: Vec<Count> = (0..=lo).map(|k| binom(lo, k as i64)).collect();
    (normalize(&a), normalize(&b_weights(p, q)))
}

/// Law of the sum of two independent integer-valued variables.
pub fn convolve(a: &[ExactRatio], b: &[ExactRatio]) -> Vec<ExactRatio> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ExactRatio::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioCheck {
    /// `P(B = k + 1) / P(B = k)`.
    pub exact_ratio: f64,
    /// `1 - c' t / sqrt(n)`.
    pub first_order: f64,
    pub t: f64,
}

/// Step ratio of the law of `B` against its first-order expansion around the
/// centre, with `n = p` and `c = q / p`.
pub fn ratio_expansion_check(p: u64, q: u64, k: u64) -> Result<RatioCheck> {
    if p == 0 || q < p {
        return Err(Error::InvalidArgument(format!(
            "({p},{q}) is not on a ray q = c p with c >= 1"
        )));
    }
    if k == 0 || k > q {
        return Err(Error::InvalidArgument(format!(
            "k = {k} is outside the support 1..={q}"
        )));
    }
    let w = |k: u64| binom(q, k as i64) * binom(p + k, k as i64);
    let exact = ratio_to_f64(&ratio(w(k + 1), &w(k)));
    let n = p as f64;
    let c = q as f64 / n;
    let t = (k as f64 - a_param(c)? * n) / n.sqrt();
    Ok(RatioCheck {
        exact_ratio: exact,
        first_order: 1.0 - ratio_slope(c)? * t / n.sqrt(),
        t,
    })
}

/// `P(|t| > n^exponent)` for `K ~ B`, `t = (K - a n) / sqrt(n)`, `n = p`.
pub fn tail_mass(p: u64, q: u64, exponent: f64) -> Result<f64> {
    if p == 0 || q < p {
        return Err(Error::InvalidArgument(format!(
            "({p},{q}) is not on a ray q = c p with c >= 1"
        )));
    }
    check_order(p, q)?;
    let n = p as f64;
    let centre = a_param(q as f64 / n)? * n;
    let band = n.powf(exponent) * n.sqrt();
    let weights = b_weights(p, q);
    let total: Count = weights.iter().sum();
    let outside: Count = weights
        .iter()
        .enumerate()
        .filter(|(k, _)| (*k as f64 - centre).abs() > band)
        .map(|(_, w)| w)
        .sum();
    Ok(ratio_to_f64(&ratio(outside, &total)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvatureCheck {
    /// `-(n/2)` times the central second difference of `ln w` at `k0`.
    pub numeric: f64,
    /// `chi(c)`.
    pub predicted: f64,
    pub k0: u64,
    /// Central first difference of `ln w` at `k0`, per unit of `k`.
    pub first_difference: f64,
    /// Slope of `ln w` per unit of `t` at the exact centre `a n`, from the
    /// first difference corrected by the second.
    pub centre_slope: f64,
}

fn ray_q(n: u64, c: f64) -> Result<u64> {
    check_c(c)?;
    let q = c * n as f64;
    if (q - q.round()).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "c n = {q} is not an integer"
        )));
    }
    Ok(q.round() as u64)
}

/// Finite-difference check of the quadratic log-weight expansion of `B`
/// at `p = n`, `q = c n`, around `k0 = round(a n)`.
pub fn curvature_check(n: u64, c: f64) -> Result<CurvatureCheck> {
    if n < 20 {
        return Err(Error::InvalidArgument(format!("n = {n} is below the minimum 20")));
    }
    let q = ray_q(n, c)?;
    let params = AsympParams::new(c)?;
    let centre = params.a * n as f64;
    let k0 = centre.round() as u64;
    if k0 == 0 || k0 + 1 > q {
        return Err(Error::InvalidArgument(format!(
            "k0 = {k0} sits on the boundary of the support 0..={q}"
        )));
    }
    let w = |k: u64| binom(q, k as i64) * binom(n + k, k as i64);
    let (lo, mid, hi) = (w(k0 - 1), w(k0), w(k0 + 1));
    let up = ratio_to_f64(&ratio(hi, &mid)).ln();
    let down = ratio_to_f64(&ratio(mid, &lo)).ln();
    let second = up - down;
    let first = (up + down) / 2.0;
    let nf = n as f64;
    Ok(CurvatureCheck {
        numeric: -(nf / 2.0) * second,
        predicted: params.chi,
        k0,
        first_difference: first,
        centre_slope: nf.sqrt() * (first + (centre - k0 as f64) * second),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub n: u64,
    pub p: u64,
    pub q: u64,
    pub mean_exact: ExactRatio,
    pub mean_asymp: f64,
    pub var_exact: ExactRatio,
    pub var_asymp: f64,
    pub ks: f64,
    pub tail_mass: f64,
}

impl ReportRow {
    pub fn mean_rel_error(&self) -> f64 {
        (ratio_to_f64(&self.mean_exact) - self.mean_asymp).abs() / self.mean_asymp
    }

    pub fn var_rel_error(&self) -> f64 {
        (ratio_to_f64(&self.var_exact) - self.var_asymp).abs() / self.var_asymp
    }
}

fn report_row(c: f64, n: u64) -> Result<ReportRow> {
    let q = ray_q(n, c)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let mut d = exact_distribution(n, q)?;
    let ks = d.ks_distance()?;
    let tail = tail_mass(n, q, DEFAULT_TAIL_EXPONENT)?;
    d.ks_distance = Some(ks);
    d.tail_mass = Some(tail);
    Ok(ReportRow {
        n,
        p: n,
        q,
        mean_asymp: d.mean_asymp.expect("n > 0"),
        var_asymp: d.var_asymp.expect("n > 0"),
        mean_exact: d.mean_exact,
        var_exact: d.var_exact,
        ks,
        tail_mass: tail,
    })
}

/// One row per `n` (in input order) along `p = n`, `q = c n`; rows are
/// computed in parallel.
pub fn convergence_report(c: f64, n_list: &[u64]) -> Result<Vec<ReportRow>> {
    check_c(c)?;
    n_list.par_iter().map(|&n| report_row(c, n)).collect()
}

/// `true` if `xs` is strictly decreasing.
pub fn strictly_decreasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[1] < w[0])
}

/// Exact probabilities sum to one.
pub fn is_normalized(probs: &[ExactRatio]) -> bool {
    probs.iter().sum::<ExactRatio>().is_one()
}
