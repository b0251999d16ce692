//! Conical (Mehler) functions P^m_{−1/2+is}(u) for u ≥ 1 and integer m.
//!
//! Three evaluation paths: the hypergeometric series around u = 1, the
//! Mehler integral for m = 0, and an RK4 march of the Legendre equation
//! in χ = arccosh u started from the series. Negative orders use
//! P^{−m} = (−1)^m P^m / ∏_{j<m}((j+½)² + s²).

use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::math::gauss_legendre;
use crate::ode::{march_linear, ScaledState};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicalMethod {
    /// Series near 1, Mehler integral or ODE march, whichever applies.
    Auto,
    /// Mehler's integral; m = 0 only.
    MehlerIntegral,
    /// Series start followed by an RK4 march in χ.
    OdeMarch,
    /// Hypergeometric series; only close to u = 1.
    SeriesNear1,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicalEvaluator {
    pub method: ConicalMethod,
    pub accuracy: f64,
}

impl Default for ConicalEvaluator {
    fn default() -> Self {
        Self { method: ConicalMethod::Auto, accuracy: 1e-10 }
    }
}

impl ConicalEvaluator {
    pub fn new(method: ConicalMethod, accuracy: f64) -> Result<Self> {
        if !(accuracy >= 1e-12) {
            return Err(Error::Invalid("conical accuracy below 1e-12 is not attainable".into()));
        }
        Ok(Self { method, accuracy })
    }

    /// RK4 step in χ for this accuracy and spectral parameter.
    pub fn step(&self, s: f64, m: i32) -> f64 {
        let scale = (self.accuracy / 1e-10).powf(0.25).min(4.0);
        let freq = s.max(1.0).max(m.unsigned_abs() as f64);
        (1e-3f64).min(0.01 / freq) * scale
    }
}

/// P, dP/du and d²P/du² at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicalDerivs {
    pub p: f64,
    pub dp: f64,
    pub d2p: f64,
}

/// ∏_{j<m} ((j+½)² + s²).
pub fn pochhammer_pair(s: f64, m: u32) -> f64 {
    (0..m).map(|j| (j as f64 + 0.5).powi(2) + s * s).product()
}

/// |Γ(½+m+is)/Γ(½+is)|, the norm that makes the ladder coefficients
/// √((m ± ½)² + s²).
pub fn ladder_norm(s: f64, m: i32) -> f64 {
    if m >= 0 {
        pochhammer_pair(s, m as u32).sqrt()
    } else {
        1.0 / pochhammer_pair(s, m.unsigned_abs()).sqrt()
    }
}

fn negative_order_factor(s: f64, m: i32) -> f64 {
    if m >= 0 {
        return 1.0;
    }
    let k = m.unsigned_abs();
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    sign / pochhammer_pair(s, k)
}

/// Largest χ at which the series is used: |z| ≤ 1/4 and s√|z| ≤ 3.5 with
/// z = (1 − cosh χ)/2.
pub fn series_radius(s: f64) -> f64 {
    let root = (0.5f64).min(3.5 / s.max(1e-300));
    2.0 * root.asinh()
}

/// Hypergeometric series for m ≥ 0 at x = cosh χ, returning derivatives in x.
pub fn series_near_one(s: f64, m: u32, x: f64) -> Result<ConicalDerivs> {
    if x < 1.0 {
        return Err(Error::Domain(x));
    }
    let z = 0.5 * (1.0 - x);
    if z < -0.5 {
        return Err(Error::Domain(x));
    }
    let mf = m as f64;
    let (mut f, mut f1, mut f2) = (0.0, 0.0, 0.0);
    // c_k z^k with c_{k+1} = c_k ((k+m+½)² + s²) / ((k+m+1)(k+1))
    let mut ck = 1.0;
    let mut converged = false;
    for k in 0..2000 {
        let kf = k as f64;
        let zk = if k == 0 { 1.0 } else { z.powi(k) };
        f += ck * zk;
        if k >= 1 {
            f1 += ck * kf * z.powi(k - 1);
        }
        if k >= 2 {
            f2 += ck * kf * (kf - 1.0) * z.powi(k - 2);
        }
        let next = ck * ((kf + mf + 0.5).powi(2) + s * s) / ((kf + mf + 1.0) * (kf + 1.0));
        let mag = (ck * zk).abs() * (1.0 + kf * kf);
        if k > 4 && mag < 1e-18 * f.abs().max(1e-300) {
            converged = true;
            break;
        }
        ck = next;
    }
    if !converged {
        return Err(Error::IllConditioned("hypergeometric series did not converge".into()));
    }
    let mut fact = 1.0;
    for j in 1..=m {
        fact *= j as f64;
    }
    let c = (-0.5f64).powi(m as i32) * pochhammer_pair(s, m) / fact;
    let r = x * x - 1.0;
    let (w, w1, w2) = match m {
        0 => (1.0, 0.0, 0.0),
        _ => {
            let w = r.powf(mf / 2.0);
            let w1 = mf * x * r.powf(mf / 2.0 - 1.0);
            let w2 = mf * r.powf(mf / 2.0 - 1.0) + mf * (mf - 2.0) * x * x * r.powf(mf / 2.0 - 2.0);
            (w, w1, if m == 2 { 2.0 } else { w2 })
        }
    };
    let p = c * w * f;
    let dp = c * (w1 * f - 0.5 * w * f1);
    let d2p = c * (w2 * f - w1 * f1 + 0.25 * w * f2);
    Ok(ConicalDerivs { p, dp, d2p })
}

/// Mehler's integral P_{−½+is}(cosh χ) = (√2/π) ∫₀^χ cos(sτ)/√(cosh χ − cosh τ) dτ,
/// computed with τ = χ − σ² to remove the endpoint singularity.
pub fn mehler_integral(s: f64, chi: f64) -> Result<f64> {
    if chi < 0.0 {
        return Err(Error::Domain(chi));
    }
    if chi == 0.0 {
        return Ok(1.0);
    }
    let top = chi.sqrt();
    let panels = ((s * chi / 2.0).ceil() as usize + 4).max(4);
    let (nodes, weights) = gauss_legendre(24);
    let width = top / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * width;
        for (x, w) in nodes.iter().zip(&weights) {
            let sigma = mid + 0.5 * width * x;
            let sq = sigma * sigma;
            let denom = (2.0 * (chi - 0.5 * sq).sinh() * (0.5 * sq).sinh()).sqrt();
            acc += w * 0.5 * width * 2.0 * sigma * (s * (chi - sq)).cos() / denom;
        }
    }
    Ok(acc * 2f64.sqrt() / PI)
}

/// Values (scaled) and χ-derivatives of P^m (m ≥ 0) at increasing χ
/// targets, from the series inside its radius and the RK4 march beyond.
fn march_nonnegative(s: f64, m: u32, chis: &[f64], ev: &ConicalEvaluator) -> Result<Vec<ScaledState>> {
    let lam = 0.25 + s * s;
    let m2 = (m as f64).powi(2);
    let radius = series_radius(s);
    let mut out = Vec::with_capacity(chis.len());
    let mut rest = Vec::new();
    for &chi in chis {
        if chi < 0.0 || !chi.is_finite() {
            return Err(Error::Domain(chi));
        }
        if chi <= radius {
            let x = chi.cosh();
            let d = series_near_one(s, m, x)?;
            out.push(ScaledState { x: chi, y: d.p, dy: d.dp * chi.sinh(), exp2: 0 });
        } else {
            rest.push(chi);
        }
    }
    if !rest.is_empty() {
        let x0 = radius.cosh();
        let start = series_near_one(s, m, x0)?;
        let coeffs = |chi: f64| {
            let sh = chi.sinh();
            (chi.cosh() / sh, lam - m2 / (sh * sh))
        };
        let marched = march_linear(coeffs, radius, start.p, start.dp * radius.sinh(), &rest, ev.step(s, m as i32))?;
        out.extend(marched);
    }
    Ok(out)
}

/// P^m_{−1/2+is}(cosh χ) and dP/dχ at sorted χ values, as scaled states.
pub fn conical_chi_table(s: f64, m: i32, chis: &[f64], ev: &ConicalEvaluator) -> Result<Vec<ScaledState>> {
    if chis.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Invalid("χ targets must be increasing".into()));
    }
    let factor = negative_order_factor(s, m);
    let mut states = march_nonnegative(s, m.unsigned_abs(), chis, ev)?;
    for st in &mut states {
        st.y *= factor;
        st.dy *= factor;
    }
    Ok(states)
}

/// P^m_{−1/2+is}(u).
pub fn conical_p(s: f64, m: i32, u: f64, ev: &ConicalEvaluator) -> Result<f64> {
    if !(u >= 1.0) {
        return Err(Error::Domain(u));
    }
    let chi = u.acosh();
    match ev.method {
        ConicalMethod::MehlerIntegral => {
            if m != 0 {
                return Err(Error::Unsupported("the Mehler integral covers m = 0 only".into()));
            }
            mehler_integral(s, chi)
        }
        ConicalMethod::SeriesNear1 => {
            if chi > series_radius(s) {
                return Err(Error::Domain(u));
            }
            Ok(series_near_one(s, m.unsigned_abs(), u)?.p * negative_order_factor(s, m))
        }
        ConicalMethod::OdeMarch | ConicalMethod::Auto => {
            let st = conical_chi_table(s, m, &[chi], ev)?[0];
            let v = st.value();
            if !v.is_finite() {
                return Err(Error::NonFinite);
            }
            Ok(v)
        }
    }
}

/// (mantissa, binary exponent) of P^m_{−1/2+is}(u), usable where the value
/// itself would overflow.
pub fn conical_p_scaled(s: f64, m: i32, u: f64, ev: &ConicalEvaluator) -> Result<(f64, i32)> {
    if !(u >= 1.0) {
        return Err(Error::Domain(u));
    }
    let st = conical_chi_table(s, m, &[u.acosh()], ev)?[0];
    Ok((st.y, st.exp2))
}

/// P, dP/du, d²P/du²; the second derivative comes from the Legendre
/// equation (1−u²)P'' − 2uP' + (ν(ν+1) − m²/(1−u²))P = 0.
pub fn conical_p_derivs(s: f64, m: i32, u: f64, ev: &ConicalEvaluator) -> Result<ConicalDerivs> {
    if !(u >= 1.0) {
        return Err(Error::Domain(u));
    }
    let chi = u.acosh();
    if chi <= series_radius(s) {
        let d = series_near_one(s, m.unsigned_abs(), u)?;
        let f = negative_order_factor(s, m);
        return Ok(ConicalDerivs { p: d.p * f, dp: d.dp * f, d2p: d.d2p * f });
    }
    let st = conical_chi_table(s, m, &[chi], ev)?[0];
    let p = st.value();
    let dp = st.derivative() / chi.sinh();
    Ok(ConicalDerivs { p, dp, d2p: legendre_second_derivative(s, m, u, p, dp) })
}

pub fn legendre_second_derivative(s: f64, m: i32, u: f64, p: f64, dp: f64) -> f64 {
    let nu_nu1 = -(0.25 + s * s);
    let one_minus = 1.0 - u * u;
    (2.0 * u * dp - (nu_nu1 - (m * m) as f64 / one_minus) * p) / one_minus
}

/// Residual of the Legendre equation, relative to the size of its terms.
pub fn legendre_residual(s: f64, m: i32, u: f64, d: &ConicalDerivs) -> f64 {
    let nu_nu1 = -(0.25 + s * s);
    let one_minus = 1.0 - u * u;
    let terms = [one_minus * d.d2p, -2.0 * u * d.dp, (nu_nu1 - (m * m) as f64 / one_minus) * d.p];
    let scale = terms.iter().fold(0.0f64, |a, t| a.max(t.abs())).max(1e-300);
    terms.iter().sum::<f64>().abs() / scale
}

/// Fitted exponent γ in f ∼ (u−1)^γ near u = 1 for the solution of the
/// Legendre equation with real degree ν that decays at infinity.
pub fn case2_exponent(nu: f64, m: i32) -> Result<f64> {
    if !(nu > -0.5) {
        return Err(Error::Domain(nu));
    }
    let lam = -nu * (nu + 1.0);
    let m2 = (m * m) as f64;
    // in ξ = ln χ: f_ξξ = (1 − χ coth χ) f_ξ − χ²(λ − m² csch²χ) f
    let coeffs = |xi: f64| {
        let chi = xi.exp();
        let sh = chi.sinh();
        let ccoth = chi * chi.cosh() / sh;
        (ccoth - 1.0, chi * chi * (lam - m2 / (sh * sh)))
    };
    let chi_start: f64 = 7.0;
    // Q ∼ e^{−(ν+1)χ}; dQ/dξ = χ dQ/dχ
    let y0 = (-(nu + 1.0) * chi_start).exp();
    let dy0 = -(nu + 1.0) * chi_start * y0;
    let targets: Vec<f64> = (0..=20).map(|k| (1e-3f64).ln() - k as f64 * (10f64.ln() / 20.0)).collect();
    let states = march_linear(coeffs, chi_start.ln(), y0, dy0, &targets, 1e-3)?;
    // least-squares slope of ln|f| against ln(u − 1)
    let pts: Vec<(f64, f64)> = states
        .iter()
        .map(|st| {
            let chi = st.x.exp();
            let um1 = 2.0 * (0.5 * chi).sinh().powi(2);
            (um1.ln(), st.y.abs().ln() + st.exp2 as f64 * core::f64::consts::LN_2)
        })
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}
