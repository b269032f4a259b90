//! Growth constants of P-recursive sequences.
//!
//! Sequences are iterated in floating point far past the range where exact
//! rationals are practical, keeping only log-magnitudes and one-step
//! ratios. The model fitted is
//!
//! ```text
//! f(n) ~ c_0 λ^n n^θ (1 + c_1/n + c_2/n² + …)
//! ```
//!
//! Writing `ln(1 + c_1/n + …) = Σ_k d_k / n^k`, each log-ratio satisfies
//! `ln(f(n+1)/f(n)) - θ ln(1 + 1/n) = ln λ + Σ_k d_k ((n+1)^-k - n^-k)`,
//! which is linear in `ln λ` and the `d_k` once θ is fixed. Fitting ratios
//! rather than `ln f(n)` keeps an error in `λ` from being multiplied by `n`.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::recurrence::PRecurrence;
use crate::rational::Rational;
use crate::{Error, Result};

/// Terms computed exactly before switching to floating point.
const EXACT_PREFIX: usize = 64;

/// Number of `d_k` terms in the fit.
const CORRECTION_TERMS: usize = 6;

/// RMS residual above which no candidate exponent is accepted.
const DIVERGENCE_THRESHOLD: f64 = 1e-7;

/// The exponent grid: integers and half-integers from -4 to 1.
pub fn theta_grid() -> Vec<f64> {
    (0..=10).map(|i| -4.0 + 0.5 * i as f64).collect()
}

/// `ln |f(n)|` and `ln |f(n+1)/f(n)|` for `n = start..`.
#[derive(Clone, Debug)]
pub struct LogSequence {
    start: usize,
    logs: Vec<f64>,
    log_ratios: Vec<f64>,
}

impl LogSequence {
    /// `log_ratios[i]` is `ln |f(start+i+1) / f(start+i)|`.
    pub fn from_parts(start: usize, log_start: f64, log_ratios: Vec<f64>) -> Self {
        let mut logs = Vec::with_capacity(log_ratios.len() + 1);
        let mut acc = KahanSum::new(log_start);
        logs.push(log_start);
        for &r in &log_ratios {
            acc.add(r);
            logs.push(acc.value());
        }
        LogSequence {
            start,
            logs,
            log_ratios,
        }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn n_max(&self) -> usize {
        self.start + self.log_ratios.len()
    }

    pub fn log(&self, n: usize) -> Option<f64> {
        n.checked_sub(self.start).and_then(|i| self.logs.get(i)).copied()
    }

    pub fn log_ratio(&self, n: usize) -> Option<f64> {
        n.checked_sub(self.start).and_then(|i| self.log_ratios.get(i)).copied()
    }

    pub fn ratio(&self, n: usize) -> Option<f64> {
        self.log_ratio(n).map(f64::exp)
    }
}

struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    fn new(start: f64) -> Self {
        KahanSum {
            sum: start,
            compensation: 0.0,
        }
    }

    fn add(&mut self, x: f64) {
        let y = x - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

fn ln_abs_int(x: &BigInt) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x.abs() >> shift).to_f64().expect("fits in 64 bits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn ln_abs(r: &Rational) -> f64 {
    ln_abs_int(r.numer()) - ln_abs_int(r.denom())
}

fn mantissa(r: &Rational, log: f64) -> f64 {
    let m = (ln_abs(r) - log).exp();
    if r.is_negative() {
        -m
    } else {
        m
    }
}

/// Iterates `rec` from `initial` up to `n_max`. The sequence is followed
/// from its first nonzero term after the exact prefix; every later term
/// must be nonzero.
pub fn iterate(rec: &PRecurrence, initial: &[Rational], n_max: usize) -> Result<LogSequence> {
    let order = rec.order();
    let exact_upto = n_max.min(EXACT_PREFIX.max(rec.offset() + order));
    let exact = rec.extend(initial, exact_upto)?;
    let start = exact
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(Error::Divergent)?;
    if exact[start..].iter().any(Zero::is_zero) {
        return Err(Error::Divergent);
    }
    let mut ratios: Vec<f64> = exact[start..]
        .windows(2)
        .map(|w| ln_abs(&w[1]) - ln_abs(&w[0]))
        .collect();
    let log_start = ln_abs(&exact[start]);

    // A window of the last `order` terms, all divided by the magnitude of
    // the newest one.
    let last = exact.len() - 1;
    let scale = ln_abs(&exact[last]);
    let mut window: Vec<f64> = exact[exact.len() - order..]
        .iter()
        .map(|c| if c.is_zero() { 0.0 } else { mantissa(c, scale) })
        .collect();
    let polys: Vec<_> = rec.polys().to_vec();
    for t in exact.len()..=n_max {
        let n = t - order;
        let lead = polys[order].eval_f64(t as f64);
        if lead == 0.0 {
            return Err(Error::LeadingVanishes(t));
        }
        let rest: f64 = (0..order)
            .map(|i| polys[i].eval_f64((n + i) as f64) * window[i])
            .sum();
        let next = -rest / lead;
        let prev = window[order - 1];
        if !next.is_finite() || next == 0.0 || prev == 0.0 {
            return Err(Error::Overflow(t));
        }
        ratios.push((next / prev).abs().ln());
        let norm = next.abs();
        for w in window.iter_mut() {
            *w /= norm;
        }
        window.rotate_left(1);
        window[order - 1] = next / norm;
    }
    Ok(LogSequence::from_parts(start, log_start, ratios))
}

/// A growth-rate estimate with an error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LambdaEstimate {
    pub value: f64,
    pub error: f64,
}

/// Richardson extrapolation in `h = 1/n` of the ratios at `n_max`,
/// `n_max/2`, `n_max/4`, …. The error bound is the change between the last
/// two diagonal entries plus a floating-point floor.
pub fn lambda_from_ratios(seq: &LogSequence) -> Result<LambdaEstimate> {
    let n_max = seq.n_max() - 1;
    let mut points = Vec::new();
    let mut n = n_max;
    while n >= seq.start().max(32) && points.len() < 5 {
        points.push(seq.ratio(n).ok_or(Error::Divergent)?);
        n /= 2;
    }
    if points.is_empty() {
        return Err(Error::InsufficientTerms {
            need: 33,
            have: seq.n_max() + 1,
        });
    }
    points.reverse();
    // table[i][j]: j extrapolation steps ending at point i.
    let mut table: Vec<Vec<f64>> = Vec::new();
    for (i, &p) in points.iter().enumerate() {
        let mut row = vec![p];
        for j in 1..=i {
            let factor = (1u64 << j) as f64;
            let value = (factor * row[j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
            row.push(value);
        }
        table.push(row);
    }
    let k = table.len() - 1;
    let value = table[k][k];
    let change = if k == 0 {
        value.abs()
    } else {
        (value - table[k - 1][k - 1]).abs()
    };
    Ok(LambdaEstimate {
        value,
        error: change + 1e-12 * value.abs(),
    })
}

pub fn estimate_lambda(rec: &PRecurrence, initial: &[Rational], n_max: usize) -> Result<LambdaEstimate> {
    lambda_from_ratios(&iterate(rec, initial, n_max)?)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthModel {
    pub lambda: f64,
    pub theta: f64,
    /// `c_0, c_1, c_2`.
    pub corrections: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitReport {
    pub model: GrowthModel,
    /// RMS residual for each candidate exponent, in candidate order.
    pub residuals: Vec<f64>,
}

struct Fit {
    log_lambda: f64,
    d: Vec<f64>,
    rms: f64,
}

fn sample_points(lo: usize, hi: usize, count: usize) -> Vec<usize> {
    let mut points: Vec<usize> = (0..count)
        .map(|i| {
            let t = i as f64 / (count - 1) as f64;
            ((lo as f64).ln() * (1.0 - t) + (hi as f64).ln() * t).exp().round() as usize
        })
        .collect();
    points.dedup();
    points
}

fn fit_theta(seq: &LogSequence, points: &[usize], log_lambda: f64, theta: f64) -> Option<Fit> {
    let lo = points[0] as f64;
    let rows = points.len();
    let cols = CORRECTION_TERMS + 1;
    let mut a = DMatrix::<f64>::zeros(rows, cols);
    let mut b = DVector::<f64>::zeros(rows);
    for (r, &n) in points.iter().enumerate() {
        let nf = n as f64;
        b[r] = seq.log_ratio(n)? - log_lambda - theta * (1.0 / nf).ln_1p();
        a[(r, 0)] = 1.0;
        for k in 1..=CORRECTION_TERMS {
            // Scaled by lo^k so that the columns are of comparable size.
            let k = k as i32;
            a[(r, k as usize)] = (lo / (nf + 1.0)).powi(k) - (lo / nf).powi(k);
        }
    }
    let svd = a.clone().svd(true, true);
    let x = svd.solve(&b, 1e-14).ok()?;
    let residual = &a * &x - &b;
    let rms = (residual.norm_squared() / rows as f64).sqrt();
    let d = (1..=CORRECTION_TERMS)
        .map(|k| x[k] * lo.powi(k as i32))
        .collect();
    Some(Fit {
        log_lambda: log_lambda + x[0],
        d,
        rms,
    })
}

/// Fits the model for every candidate exponent and keeps the one with the
/// smallest residual. Log-ratios from `n_max/50`, clamped to `50..=300`,
/// up to `n_max` are used; `c_0` is matched at the lower end. Higher lower
/// ends leave the `1/n²` term too small to resolve in double precision.
pub fn fit_model(seq: &LogSequence, lambda: f64, thetas: &[f64]) -> Result<FitReport> {
    let hi = seq.n_max() - 1;
    let lo = (hi / 50).clamp(50, 300).max(seq.start() + 1);
    if hi < 4 * lo || thetas.is_empty() || lambda <= 0.0 {
        return Err(Error::Divergent);
    }
    let points = sample_points(lo, hi, 160);
    let fits: Vec<Option<Fit>> = thetas
        .iter()
        .map(|&t| fit_theta(seq, &points, lambda.ln(), t))
        .collect();
    let residuals: Vec<f64> = fits
        .iter()
        .map(|f| f.as_ref().map_or(f64::INFINITY, |f| f.rms))
        .collect();
    let (best, rms) = residuals
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty");
    if !rms.is_finite() || rms > DIVERGENCE_THRESHOLD {
        return Err(Error::Divergent);
    }
    let fit = fits[best].as_ref().expect("finite residual");
    let theta = thetas[best];
    let anchor = lo as f64;
    let tail: f64 = fit
        .d
        .iter()
        .enumerate()
        .map(|(k, d)| d / anchor.powi(k as i32 + 1))
        .sum();
    let log_c0 = seq.log(lo).ok_or(Error::Divergent)? - anchor * fit.log_lambda - theta * anchor.ln() - tail;
    let (d1, d2) = (fit.d[0], fit.d[1]);
    Ok(FitReport {
        model: GrowthModel {
            lambda: fit.log_lambda.exp(),
            theta,
            corrections: vec![log_c0.exp(), d1, d2 + d1 * d1 / 2.0],
        },
        residuals,
    })
}

/// The JSON report for one sequence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticReport {
    pub lambda: f64,
    pub theta: f64,
    pub corrections: Vec<f64>,
    pub n_max: usize,
    pub residuals: Vec<f64>,
}

/// Iterates to `n_max`, extrapolates `λ`, and fits the model on the
/// standard exponent grid.
pub fn analyze(rec: &PRecurrence, initial: &[Rational], n_max: usize) -> Result<AsymptoticReport> {
    let seq = iterate(rec, initial, n_max)?;
    let lambda = lambda_from_ratios(&seq)?;
    let fit = fit_model(&seq, lambda.value, &theta_grid())?;
    Ok(AsymptoticReport {
        lambda: fit.model.lambda,
        theta: fit.model.theta,
        corrections: fit.model.corrections,
        n_max,
        residuals: fit.residuals,
    })
}
