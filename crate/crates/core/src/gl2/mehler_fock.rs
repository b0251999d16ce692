//! Generalized Mehler–Fock transform of order m on (1, ∞):
//!
//!   F(s) = N(s) ∫₁^∞ P^m_{−1/2+is}(u) f(u) du,   f(u) = ∫₀^∞ P^m_{−1/2+is}(u) F(s) ds,
//!
//! with N(s) = (s/π) sinh(πs) |Γ(½ − m + is)|² (s tanh(πs) at m = 0).
//! Integrals in u are done in χ = arccosh u by composite Simpson.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use super::conical::{conical_chi_table, ConicalEvaluator};
use crate::error::{Error, Result};
use crate::math::{c, grid_weights, linspace, ln_gamma, re, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightConvention {
    /// (s/π) sinh(πs) |Γ(½ − m + is)|².
    Squared,
    /// (s/π) sinh(πs) Γ(½ − m + is), complex and unsquared.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MehlerFockConfig {
    pub m: i32,
    pub s_min: f64,
    pub s_max: f64,
    pub s_points: usize,
    pub u_max: f64,
    pub chi_step: f64,
    pub weight: WeightConvention,
    /// Tail estimates above tolerance × max|output| are errors.
    pub tail_tolerance: f64,
    pub evaluator: ConicalEvaluator,
}

impl Default for MehlerFockConfig {
    fn default() -> Self {
        Self {
            m: 0,
            s_min: 1e-3,
            s_max: 12.0,
            s_points: 2048,
            u_max: 40.0,
            chi_step: 5e-3,
            weight: WeightConvention::Squared,
            tail_tolerance: 1e-4,
            evaluator: ConicalEvaluator::default(),
        }
    }
}

impl MehlerFockConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.s_min > 0.0) || !(self.s_max > self.s_min) || self.s_points < 3 {
            return Err(Error::Invalid("s grid needs 0 < s_min < s_max and at least 3 points".into()));
        }
        if !(self.u_max > 1.0) || !(self.chi_step > 0.0) || !self.u_max.is_finite() {
            return Err(Error::Invalid("u grid needs u_max > 1 and a positive χ step".into()));
        }
        if !(self.tail_tolerance > 0.0) {
            return Err(Error::Invalid("tail tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Sampled transform together with its estimated truncation tail.
#[derive(Debug, Clone, PartialEq)]
pub struct Transform {
    pub grid: Vec<f64>,
    pub values: Vec<C64>,
    pub tail: f64,
}

/// N(s) for the chosen convention.
pub fn transform_weight(m: i32, s: f64, convention: WeightConvention) -> C64 {
    let lg = ln_gamma(c(0.5 - m as f64, s));
    // ln((s/π) sinh πs) without overflow
    let ln_pre = (s / PI).ln() + PI * s + (-(-2.0 * PI * s).exp()).ln_1p() - 2f64.ln();
    match convention {
        WeightConvention::Squared => re((ln_pre + 2.0 * lg.re).exp()),
        WeightConvention::Literal => (re(ln_pre) + lg).exp(),
    }
}

/// P^m_{−1/2+is}(cosh χ) for every s (rows) and χ (columns).
pub fn kernel_table(m: i32, s_grid: &[f64], chis: &[f64], ev: &ConicalEvaluator) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(s_grid.len() * chis.len());
    for &s in s_grid {
        for st in conical_chi_table(s, m, chis, ev)? {
            let v = st.value();
            if !v.is_finite() {
                return Err(Error::NonFinite);
            }
            out.push(v);
        }
    }
    Ok(out)
}

fn uniform_chi_grid(u_max: f64, step: f64) -> Vec<f64> {
    let top = u_max.acosh();
    let mut n = (top / step).ceil() as usize + 1;
    if n % 2 == 0 {
        n += 1;
    }
    linspace(0.0, top, n.max(3))
}

/// Least-squares line through (x, y); returns (slope, intercept, rms).
fn line_fit(pts: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let icpt = my - slope * mx;
    let rms = (pts.iter().map(|p| (p.1 - icpt - slope * p.0).powi(2)).sum::<f64>() / n).sqrt();
    (slope, icpt, rms)
}

/// Bound on ∫_{U}^∞ |f| du from samples of f on the far part of its grid.
/// Chooses an exponential or a power law, whichever fits ln|f| better;
/// a power decay no faster than u^{−1/2} is not integrable against P.
pub fn forward_tail(us: &[f64], fs: &[f64]) -> Result<f64> {
    let n = us.len();
    let start = n - (n / 4).max(4).min(n);
    let pts: Vec<(f64, f64, f64)> = us[start..]
        .iter()
        .zip(&fs[start..])
        .filter(|(_, f)| f.abs() > 0.0)
        .map(|(u, f)| (*u, u.ln(), f.abs().ln()))
        .collect();
    if pts.len() < 3 {
        return Ok(0.0);
    }
    let exp_pts: Vec<(f64, f64)> = pts.iter().map(|p| (p.0, p.2)).collect();
    let pow_pts: Vec<(f64, f64)> = pts.iter().map(|p| (p.1, p.2)).collect();
    let (ke, _, re_) = line_fit(&exp_pts);
    let (kp, _, rp) = line_fit(&pow_pts);
    let u_end = us[n - 1];
    let f_end = fs[n - 1].abs().max(pts.last().map_or(0.0, |p| p.2.exp()));
    if re_ <= rp && ke < 0.0 {
        return Ok(f_end / -ke);
    }
    if kp >= -0.5 {
        return Err(Error::NotIntegrable(alloc::format!("|f| decays like u^{kp:.3}, no faster than u^(-1/2)")));
    }
    Ok(f_end * u_end / (-kp - 1.0).max(1e-3))
}

/// Bound on ∫_{S}^∞ |F| ds from an exponential fit of the far tenth of
/// the s grid; a non-decaying F gives an infinite bound.
pub fn inverse_tail(ss: &[f64], fs: &[C64]) -> f64 {
    let n = ss.len();
    let start = n - (n / 10).max(4).min(n);
    let pts: Vec<(f64, f64)> = ss[start..]
        .iter()
        .zip(&fs[start..])
        .filter(|(_, f)| f.norm() > 0.0)
        .map(|(s, f)| (*s, f.norm().ln()))
        .collect();
    if pts.len() < 3 {
        return 0.0;
    }
    let (k, _, _) = line_fit(&pts);
    let f_end = fs[n - 1].norm();
    if k < 0.0 {
        f_end / -k
    } else {
        f64::INFINITY
    }
}

/// A transform engine with precomputed grids and kernel.
#[derive(Debug, Clone)]
pub struct MehlerFock {
    config: MehlerFockConfig,
    s_grid: Vec<f64>,
    s_weights: Vec<f64>,
    chi_grid: Vec<f64>,
    chi_weights: Vec<f64>,
    u_grid: Vec<f64>,
    kernel: Vec<f64>,
    norm: Vec<C64>,
}

impl MehlerFock {
    pub fn new(config: MehlerFockConfig) -> Result<Self> {
        config.validate()?;
        let s_grid = linspace(config.s_min, config.s_max, config.s_points);
        let s_weights = grid_weights(&s_grid);
        let chi_grid = uniform_chi_grid(config.u_max, config.chi_step);
        let chi_weights = grid_weights(&chi_grid);
        let u_grid = chi_grid.iter().map(|x| x.cosh()).collect();
        let kernel = kernel_table(config.m, &s_grid, &chi_grid, &config.evaluator)?;
        let norm = s_grid.iter().map(|&s| transform_weight(config.m, s, config.weight)).collect();
        Ok(Self { config, s_grid, s_weights, chi_grid, chi_weights, u_grid, kernel, norm })
    }

    pub fn config(&self) -> &MehlerFockConfig {
        &self.config
    }

    pub fn s_grid(&self) -> &[f64] {
        &self.s_grid
    }

    /// u = cosh χ on the internal uniform χ grid.
    pub fn u_grid(&self) -> &[f64] {
        &self.u_grid
    }

    pub fn weights(&self) -> &[C64] {
        &self.norm
    }

    fn row(&self, j: usize) -> &[f64] {
        let n = self.chi_grid.len();
        &self.kernel[j * n..(j + 1) * n]
    }

    fn kernel_edge(&self) -> f64 {
        let n = self.chi_grid.len();
        (0..self.s_grid.len()).map(|j| self.kernel[j * n + n - 1].abs()).fold(0.0, f64::max)
    }

    /// Forward transform of samples of f on [`Self::u_grid`].
    pub fn forward_samples(&self, f: &[f64]) -> Result<Transform> {
        if f.len() != self.u_grid.len() {
            return Err(Error::DimensionMismatch { expected: self.u_grid.len(), found: f.len() });
        }
        if f.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let integrand: Vec<f64> = (0..f.len()).map(|i| f[i] * self.chi_grid[i].sinh() * self.chi_weights[i]).collect();
        let values: Vec<C64> = (0..self.s_grid.len())
            .map(|j| self.norm[j] * self.row(j).iter().zip(&integrand).map(|(k, g)| k * g).sum::<f64>())
            .collect();
        let max_norm = self.norm.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let tail = max_norm * self.kernel_edge() * forward_tail(&self.u_grid, f)?;
        let scale = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if tail > self.config.tail_tolerance * scale.max(1e-300) && tail > 0.0 {
            return Err(Error::Truncation { tail, tolerance: self.config.tail_tolerance * scale });
        }
        Ok(Transform { grid: self.s_grid.clone(), values, tail })
    }

    pub fn forward(&self, f: impl Fn(f64) -> f64) -> Result<Transform> {
        let samples: Vec<f64> = self.u_grid.iter().map(|&u| f(u)).collect();
        self.forward_samples(&samples)
    }

    /// Inverse transform of samples of F on [`Self::s_grid`], returned on
    /// [`Self::u_grid`]. The gap [0, s_min] is closed by a trapezoid
    /// against F(0) = 0.
    pub fn inverse_samples(&self, big_f: &[C64]) -> Result<Transform> {
        if big_f.len() != self.s_grid.len() {
            return Err(Error::DimensionMismatch { expected: self.s_grid.len(), found: big_f.len() });
        }
        if big_f.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let n = self.chi_grid.len();
        let mut values = vec![C64::new(0.0, 0.0); n];
        for j in 0..self.s_grid.len() {
            let mut w = self.s_weights[j];
            if j == 0 {
                w += 0.5 * self.s_grid[0];
            }
            let coef = big_f[j] * w;
            for (v, k) in values.iter_mut().zip(self.row(j)) {
                *v += coef * k;
            }
        }
        let bound = (0..n).map(|i| self.kernel[(self.s_grid.len() - 1) * n + i].abs()).fold(0.0, f64::max);
        let tail = bound * inverse_tail(&self.s_grid, big_f);
        let scale = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if tail > self.config.tail_tolerance * scale.max(1e-300) && tail > 0.0 {
            return Err(Error::Truncation { tail, tolerance: self.config.tail_tolerance * scale });
        }
        Ok(Transform { grid: self.u_grid.clone(), values, tail })
    }

    pub fn inverse(&self, big_f: impl Fn(f64) -> C64) -> Result<Transform> {
        let samples: Vec<C64> = self.s_grid.iter().map(|&s| big_f(s)).collect();
        self.inverse_samples(&samples)
    }

    /// ∫|f|² du over the u grid.
    pub fn u_norm_sq(&self, f: &[C64]) -> f64 {
        (0..f.len()).map(|i| f[i].norm_sqr() * self.chi_grid[i].sinh() * self.chi_weights[i]).sum()
    }

    /// ∫|F|²/N ds over the s grid (plus the [0, s_min] trapezoid).
    pub fn s_norm_sq(&self, big_f: &[C64]) -> f64 {
        let mut acc = 0.0;
        for j in 0..big_f.len() {
            let mut w = self.s_weights[j];
            if j == 0 {
                w += 0.5 * self.s_grid[0];
            }
            acc += w * big_f[j].norm_sqr() / self.norm[j].norm();
        }
        acc
    }

    /// ∫|f|² du against ∫|F|²/N ds for F = forward(f).
    pub fn plancherel(&self, f: impl Fn(f64) -> f64) -> Result<PlancherelReport> {
        let samples: Vec<f64> = self.u_grid.iter().map(|&u| f(u)).collect();
        let big_f = self.forward_samples(&samples)?;
        let u_side = self.u_norm_sq(&samples.iter().map(|&x| re(x)).collect::<Vec<_>>());
        let s_side = self.s_norm_sq(&big_f.values);
        Ok(PlancherelReport { u_side, s_side, ratio: s_side / u_side })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlancherelReport {
    pub u_side: f64,
    pub s_side: f64,
    pub ratio: f64,
}

/// Relative L² distance on the u grid, ‖a − b‖ / ‖b‖.
pub fn relative_l2(engine: &MehlerFock, a: &[C64], b: &[C64]) -> f64 {
    let diff: Vec<C64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    (engine.u_norm_sq(&diff) / engine.u_norm_sq(b).max(1e-300)).sqrt()
}

/// Forward transform of (u, f) samples onto an arbitrary s grid, with the
/// u integral done directly on the sample grid.
pub fn mehler_fock_forward(us: &[f64], fs: &[f64], m: i32, s_grid: &[f64], config: &MehlerFockConfig) -> Result<Transform> {
    if us.len() != fs.len() {
        return Err(Error::DimensionMismatch { expected: us.len(), found: fs.len() });
    }
    if us.len() < 3 || us.windows(2).any(|w| !(w[1] > w[0])) || !(us[0] >= 1.0) {
        return Err(Error::Invalid("u samples must be increasing, start at u ≥ 1, and number at least 3".into()));
    }
    if fs.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let chis: Vec<f64> = us.iter().map(|u| u.acosh()).collect();
    let kernel = kernel_table(m, s_grid, &chis, &config.evaluator)?;
    // trapezoid in χ with du = sinh χ dχ; spectrally accurate for f smooth in χ
    let w: Vec<f64> = grid_weights(&chis).iter().zip(&chis).map(|(w, x)| w * x.sinh()).collect();
    let n = us.len();
    let values: Vec<C64> = s_grid
        .iter()
        .enumerate()
        .map(|(j, &s)| {
            let integral: f64 = (0..n).map(|i| kernel[j * n + i] * fs[i] * w[i]).sum();
            transform_weight(m, s, config.weight) * integral
        })
        .collect();
    let edge = s_grid.iter().enumerate().map(|(j, _)| kernel[j * n + n - 1].abs()).fold(0.0, f64::max);
    let max_norm = s_grid.iter().map(|&s| transform_weight(m, s, config.weight).norm()).fold(0.0, f64::max);
    let tail = max_norm * edge * forward_tail(us, fs)?;
    let scale = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if tail > config.tail_tolerance * scale.max(1e-300) && tail > 0.0 {
        return Err(Error::Truncation { tail, tolerance: config.tail_tolerance * scale });
    }
    Ok(Transform { grid: s_grid.to_vec(), values, tail })
}

/// Inverse transform of (s, F) samples onto arbitrary u points.
pub fn mehler_fock_inverse(ss: &[f64], big_f: &[C64], m: i32, u_grid: &[f64], config: &MehlerFockConfig) -> Result<Transform> {
    if ss.len() != big_f.len() {
        return Err(Error::DimensionMismatch { expected: ss.len(), found: big_f.len() });
    }
    if ss.len() < 3 || ss.windows(2).any(|w| !(w[1] > w[0])) || !(ss[0] >= 0.0) {
        return Err(Error::Invalid("s samples must be increasing, non-negative and number at least 3".into()));
    }
    if u_grid.windows(2).any(|w| w[1] < w[0]) || u_grid.iter().any(|u| !(*u >= 1.0)) {
        return Err(Error::Invalid("u points must be sorted and ≥ 1".into()));
    }
    if big_f.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let chis: Vec<f64> = u_grid.iter().map(|u| u.acosh()).collect();
    let kernel = kernel_table(m, ss, &chis, &config.evaluator)?;
    let w = grid_weights(ss);
    let n = chis.len();
    let mut values = vec![C64::new(0.0, 0.0); n];
    for j in 0..ss.len() {
        let mut wj = w[j];
        if j == 0 {
            wj += 0.5 * ss[0];
        }
        for i in 0..n {
            values[i] += big_f[j] * (wj * kernel[j * n + i]);
        }
    }
    let last = ss.len() - 1;
    let bound = (0..n).map(|i| kernel[last * n + i].abs()).fold(0.0, f64::max);
    let tail = bound * inverse_tail(ss, big_f);
    let scale = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if tail > config.tail_tolerance * scale.max(1e-300) && tail > 0.0 {
        return Err(Error::Truncation { tail, tolerance: config.tail_tolerance * scale });
    }
    Ok(Transform { grid: u_grid.to_vec(), values, tail })
}

/// P^{1/2}_{−1/2+is}(cosh χ) = √(2/(π sinh χ)) cos(sχ).
pub fn half_order_kernel(s: f64, chi: f64) -> f64 {
    (2.0 / (PI * chi.sinh())).sqrt() * (s * chi).cos()
}

/// The order-½ transform of f(cosh χ) = e^{−χ²}/√(sinh χ) at the given s,
/// where N = 1 and the transform is the cosine transform of e^{−χ²}:
/// e^{−s²/4}/√2.
pub fn half_order_transform(s: f64, chi_max: f64, step: f64) -> f64 {
    let chis = uniform_chi_grid(chi_max.cosh(), step);
    let w = grid_weights(&chis);
    let mut acc = 0.0;
    for (i, &chi) in chis.iter().enumerate().skip(1) {
        let f = (-chi * chi).exp() / chi.sinh().sqrt();
        acc += w[i] * half_order_kernel(s, chi) * f * chi.sinh();
    }
    // integrand → √(2/π) at χ = 0
    acc + w[0] * (2.0 / PI).sqrt()
}
