//! The d = 2 apparatus: hyperboloid coordinates, so(2,1) generators,
//! conical functions, the compact and noncompact bases, ladders and the
//! generalized Mehler–Fock transform.

pub mod basis;
pub mod conical;
pub mod mehler_fock;
pub mod so21;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::spd::MetricPoint;

/// (χ, θ) on the unit hyperboloid u² − v² − w² = 1, with the determinant
/// carried separately.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperboloidPoint {
    pub chi: f64,
    pub theta: f64,
    pub q: f64,
}

impl HyperboloidPoint {
    pub fn new(chi: f64, theta: f64, q: f64) -> Result<Self> {
        if !(chi >= 0.0) || !(q > 0.0) || !theta.is_finite() {
            return Err(Error::Domain(chi));
        }
        Ok(Self { chi, theta, q })
    }

    pub fn from_metric(p: &MetricPoint) -> Result<Self> {
        let (u, v, w) = p.uvw_scaled()?;
        Ok(Self { chi: u.max(1.0).acosh(), theta: w.atan2(v), q: p.det() })
    }

    /// (u, v, w) = (cosh χ, sinh χ cos θ, sinh χ sin θ).
    pub fn uvw(&self) -> (f64, f64, f64) {
        let sh = self.chi.sinh();
        (self.chi.cosh(), sh * self.theta.cos(), sh * self.theta.sin())
    }

    /// The metric with U = √q u, V = √q v, W = √q w.
    pub fn to_metric(&self) -> Result<MetricPoint> {
        let (u, v, w) = self.uvw();
        let r = self.q.sqrt();
        let (uu, vv, ww) = (r * u, r * v, r * w);
        MetricPoint::from_chart(2, alloc::vec![uu + vv, ww, uu - vv])
    }
}

/// (ln q, q₁₁/q₂₂, q₁₂/√q).
pub fn ratio_coordinates(x: &[f64]) -> (f64, f64, f64) {
    let det = x[0] * x[2] - x[1] * x[1];
    (det.ln(), x[0] / x[2], x[1] / det.sqrt())
}

/// det ∂(ln q, q₁₁/q₂₂, q₁₂/√q)/∂(q₁₁, q₁₂, q₂₂) = 2(q₁₁/q₂₂) q^{−3/2}.
pub fn ratio_jacobian(p: &MetricPoint) -> f64 {
    let x = p.chart();
    2.0 * (x[0] / x[2]) * p.det().powf(-1.5)
}

/// The same Jacobian determinant by central differences.
pub fn ratio_jacobian_fd(p: &MetricPoint, h: f64) -> f64 {
    let x = p.chart();
    let mut jac = [[0.0; 3]; 3];
    for k in 0..3 {
        let mut xp = [x[0], x[1], x[2]];
        let mut xm = xp;
        let step = h * x[k].abs().max(1.0);
        xp[k] += step;
        xm[k] -= step;
        let a = ratio_coordinates(&xp);
        let b = ratio_coordinates(&xm);
        jac[0][k] = (a.0 - b.0) / (2.0 * step);
        jac[1][k] = (a.1 - b.1) / (2.0 * step);
        jac[2][k] = (a.2 - b.2) / (2.0 * step);
    }
    jac[0][0] * (jac[1][1] * jac[2][2] - jac[1][2] * jac[2][1]) - jac[0][1] * (jac[1][0] * jac[2][2] - jac[1][2] * jac[2][0])
        + jac[0][2] * (jac[1][0] * jac[2][1] - jac[1][1] * jac[2][0])
}

/// Density of q^{−3/2} ∏dq_ab with respect to d(ln q) d(q₁₁/q₂₂) d(q₁₂/√q):
/// 1/(2ρ) with ρ = q₁₁/q₂₂, i.e. the measure is ½ d(ln q) d(ln ρ) d(q₁₂/√q).
pub fn ratio_chart_density(p: &MetricPoint) -> f64 {
    p.det().powf(-1.5) / ratio_jacobian(p)
}
