//! The two d = 2 bases.
//!
//! Compact: ψ_{r,s,m} = q^{−3/4+ir/4} e^{imθ} P^m_{−1/2+is}(u) / N_m with
//! u = (q₁₁+q₂₂)/(2√q) and N_m = |Γ(½+m+is)/Γ(½+is)|, so that the ladders
//! act with coefficients of modulus √((m ± ½)² + s²).
//!
//! Noncompact: ψ_{r,s,t} = q^{−3/4+ir/3} (q₁₁/q₂₂)^{it/2} f(q₁₂/√q), where f
//! solves (1+x²)f'' + 2xf' + (λ − t²/(1+x²))f = 0 with λ = ¼ + s².

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::conical::{conical_p_derivs, ladder_norm, ConicalEvaluator};
use super::so21::{chi_theta_of_metric, so21_metric_chart};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::math::{c, re, C64};
use crate::ode::march_linear;
use crate::operator::{det_power_jet, traceless_t, QuadraticForm, WaveFunction};
use crate::spd::{random_spd, rng_for, MetricPoint};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisLabelCompact {
    pub r: f64,
    pub s: f64,
    pub m: i32,
}

impl BasisLabelCompact {
    pub fn new(r: f64, s: f64, m: i32) -> Result<Self> {
        if !(s > 0.0) || !r.is_finite() || !s.is_finite() {
            return Err(Error::Invalid(format!("compact label needs finite r and s > 0, got r={r}, s={s}")));
        }
        Ok(Self { r, s, m })
    }

    /// ν = −½ + is.
    pub fn nu(&self) -> C64 {
        c(-0.5, self.s)
    }

    /// Casimir eigenvalue ¼ + s².
    pub fn lambda(&self) -> f64 {
        0.25 + self.s * self.s
    }

    pub fn shifted(&self, dm: i32) -> Self {
        Self { m: self.m + dm, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisLabelNoncompact {
    pub r: f64,
    pub s: f64,
    pub t: f64,
}

impl BasisLabelNoncompact {
    pub fn new(r: f64, s: f64, t: f64) -> Result<Self> {
        if !(s > 0.0) || !r.is_finite() || !s.is_finite() || !t.is_finite() {
            return Err(Error::Invalid(format!("noncompact label needs finite r, t and s > 0, got r={r}, s={s}, t={t}")));
        }
        Ok(Self { r, s, t })
    }

    pub fn lambda(&self) -> f64 {
        0.25 + self.s * self.s
    }
}

/// Jet of the compact basis function on the d = 2 metric chart.
pub fn compact_jet(label: &BasisLabelCompact, x: &[f64], ev: &ConicalEvaluator) -> Result<Jet> {
    let p = MetricPoint::from_chart(2, x.to_vec())?;
    let v = Jet::variables(p.chart());
    let det = &(&v[0] * &v[2]) - &(&v[1] * &v[1]);
    let u = &(&v[0] + &v[2]) / &det.sqrt().scale(re(2.0));
    let uv = u.value().re;
    let d = conical_p_derivs(label.s, label.m, uv.max(1.0), ev)?;
    let norm = ladder_norm(label.s, label.m);
    let pj = u.compose(re(d.p / norm), re(d.dp / norm), re(d.d2p / norm));
    let radial = det_power_jet(x, 2, c(-0.75, label.r / 4.0))?;
    let out = &radial * &pj;
    if label.m == 0 {
        return Ok(out);
    }
    let (_, theta) = chi_theta_of_metric(x)?;
    let phase = theta.scale(c(0.0, label.m as f64)).exp();
    Ok(&out * &phase)
}

/// Value of the compact basis function at a metric point.
pub fn basis_compact(label: &BasisLabelCompact, q: &MetricPoint) -> Result<C64> {
    if q.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: q.dim() });
    }
    Ok(compact_jet(label, q.chart(), &ConicalEvaluator::default())?.value())
}

pub fn compact_wavefunction(label: BasisLabelCompact, ev: ConicalEvaluator) -> WaveFunction {
    WaveFunction::new(3, format!("psi(r={}, s={}, m={})", label.r, label.s, label.m), move |x| compact_jet(&label, x, &ev))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Solution f of the imaginary-axis Legendre equation in x = q₁₂/√q,
/// marched in y = asinh x from y = 0 with f(0) = 1, f'(0) = 0 (even) or
/// f(0) = 0, f'(0) = 1 (odd).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoncompactProfile {
    pub s: f64,
    pub t: f64,
    pub parity: Parity,
    pub step: f64,
}

impl NoncompactProfile {
    pub fn new(s: f64, t: f64, parity: Parity) -> Self {
        Self { s, t, parity, step: 1e-3 / s.max(t.abs()).max(1.0) }
    }

    fn lambda(&self) -> f64 {
        0.25 + self.s * self.s
    }

    /// (f, f_y) at sorted y ≥ 0.
    fn march(&self, ys: &[f64]) -> Result<Vec<(f64, f64)>> {
        let (lam, t2) = (self.lambda(), self.t * self.t);
        let coeffs = |y: f64| {
            let ch = y.cosh();
            (y.tanh(), lam - t2 / (ch * ch))
        };
        let (f0, df0) = match self.parity {
            Parity::Even => (1.0, 0.0),
            Parity::Odd => (0.0, 1.0),
        };
        let states = march_linear(coeffs, 0.0, f0, df0, ys, self.step)?;
        Ok(states.iter().map(|st| (st.value(), st.derivative())).collect())
    }

    /// (f, f', f'') in x.
    pub fn eval(&self, x: f64) -> Result<(f64, f64, f64)> {
        if !x.is_finite() {
            return Err(Error::NonFinite);
        }
        let y = x.abs().asinh();
        let (f, fy) = self.march(&[y])?[0];
        let sign = if x < 0.0 { -1.0 } else { 1.0 };
        let fx = fy / y.cosh();
        let (f, fx) = match self.parity {
            Parity::Even => (f, sign * fx),
            Parity::Odd => (sign * f, fx),
        };
        let one = 1.0 + x * x;
        let fxx = (-2.0 * x * fx - (self.lambda() - self.t * self.t / one) * f) / one;
        Ok((f, fx, fxx))
    }

    /// √(g² + (g_y/s)²) with g = √(cosh y)·f, sampled at sorted y ≥ 0;
    /// flat at large y when |f| decays like |x|^{−1/2}.
    pub fn envelope(&self, ys: &[f64]) -> Result<Vec<f64>> {
        let vals = self.march(ys)?;
        Ok(ys
            .iter()
            .zip(vals)
            .map(|(&y, (f, fy))| {
                let w = y.cosh().sqrt();
                let g = w * f;
                let gy = w * fy + 0.5 * y.tanh() * g;
                (g * g + (gy / self.s).powi(2)).sqrt()
            })
            .collect())
    }
}

/// Jet of the noncompact basis function.
pub fn noncompact_jet(label: &BasisLabelNoncompact, profile: &NoncompactProfile, x: &[f64]) -> Result<Jet> {
    let p = MetricPoint::from_chart(2, x.to_vec())?;
    let v = Jet::variables(p.chart());
    let det = &(&v[0] * &v[2]) - &(&v[1] * &v[1]);
    let xi = &v[1] / &det.sqrt();
    let (f, fx, fxx) = profile.eval(xi.value().re)?;
    let fj = xi.compose(re(f), re(fx), re(fxx));
    let ratio = (&v[0] / &v[2]).powc(c(0.0, label.t / 2.0));
    let radial = det_power_jet(x, 2, c(-0.75, label.r / 3.0))?;
    Ok(&(&radial * &ratio) * &fj)
}

pub fn basis_noncompact(label: &BasisLabelNoncompact, q: &MetricPoint) -> Result<C64> {
    if q.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: q.dim() });
    }
    let profile = NoncompactProfile::new(label.s, label.t, Parity::Even);
    Ok(noncompact_jet(label, &profile, q.chart())?.value())
}

pub fn noncompact_wavefunction(label: BasisLabelNoncompact, parity: Parity) -> WaveFunction {
    let profile = NoncompactProfile::new(label.s, label.t, parity);
    WaveFunction::new(3, format!("psi(r={}, s={}, t={})", label.r, label.s, label.t), move |x| {
        noncompact_jet(&label, &profile, x)
    })
}

/// C₂ written as 𝒯₁²𝒯₂¹ + 𝒯² + i𝒯 with 𝒯 = 𝒯₁¹.
pub fn noncompact_casimir() -> QuadraticForm {
    let t = |a, b| traceless_t(a, b, 2).expect("in range");
    let big = t(0, 0);
    let mut q = QuadraticForm::default();
    q.push_product(re(1.0), &t(0, 1), &t(1, 0));
    q.push_product(re(1.0), &big, &big);
    q.push_linear(c(0.0, 1.0), &big);
    q
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderDirection {
    Raise,
    Lower,
}

impl LadderDirection {
    pub fn step(&self) -> i32 {
        match self {
            Self::Raise => 1,
            Self::Lower => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderFit {
    pub from: BasisLabelCompact,
    pub to: BasisLabelCompact,
    pub coefficient: C64,
    pub magnitude: f64,
    pub phase: f64,
    pub expected: f64,
    /// ‖L±ψ − c ψ'‖ / ‖L±ψ‖ over the sample points.
    pub residual: f64,
}

/// Default sample points for ladder fits: moderate random SPD matrices.
pub fn ladder_sample_points(count: usize, seed: u64) -> Vec<Vec<f64>> {
    (0..count)
        .map(|k| {
            let mut rng = rng_for(seed, 7, k as u64);
            random_spd(&mut rng, 2, 0.6, false).chart().to_vec()
        })
        .collect()
}

/// Applies L± to ψ_{r,s,m} and fits L±ψ ≈ c ψ_{r,s,m±1} over the points.
pub fn ladder_apply(label: &BasisLabelCompact, direction: LadderDirection, points: &[Vec<f64>]) -> Result<LadderFit> {
    let ev = ConicalEvaluator::default();
    let alg = so21_metric_chart();
    let op = match direction {
        LadderDirection::Raise => &alg.raise,
        LadderDirection::Lower => &alg.lower,
    };
    let to = label.shifted(direction.step());
    let mut a = Vec::with_capacity(points.len());
    let mut b = Vec::with_capacity(points.len());
    for x in points {
        a.push(op.apply(&compact_jet(label, x, &ev)?, x)?.value());
        b.push(compact_jet(&to, x, &ev)?.value());
    }
    let bb: f64 = b.iter().map(|z| z.norm_sqr()).sum();
    let aa: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    if !(bb > 1e-200) || points.len() < 2 {
        return Err(Error::IllConditioned("ladder target vanishes on the sample points".into()));
    }
    let coefficient: C64 = b.iter().zip(&a).map(|(bz, az)| bz.conj() * az).sum::<C64>() / bb;
    let res: f64 = a.iter().zip(&b).map(|(az, bz)| (az - coefficient * bz).norm_sqr()).sum();
    let mf = label.m as f64 + 0.5 * direction.step() as f64;
    Ok(LadderFit {
        from: *label,
        to,
        coefficient,
        magnitude: coefficient.norm(),
        phase: coefficient.arg(),
        expected: (mf * mf + label.s * label.s).sqrt(),
        residual: (res / aa.max(1e-300)).sqrt(),
    })
}
