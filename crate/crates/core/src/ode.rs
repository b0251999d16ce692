//! Classical RK4 for linear second-order equations y'' = −p(x)y' − q(x)y,
//! marching to a sorted list of targets with a bounded step and keeping a
//! binary exponent so that growing solutions never overflow.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Solution sample: y = mantissa·2^exp, y' = dmantissa·2^exp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledState {
    pub x: f64,
    pub y: f64,
    pub dy: f64,
    pub exp2: i32,
}

impl ScaledState {
    pub fn value(&self) -> f64 {
        self.y * 2f64.powi(self.exp2)
    }

    pub fn derivative(&self) -> f64 {
        self.dy * 2f64.powi(self.exp2)
    }
}

/// Marches from (x0, y0, dy0) through `targets` (monotone in the
/// direction of travel) with steps of at most `h`.
pub fn march_linear<F>(coeffs: F, x0: f64, y0: f64, dy0: f64, targets: &[f64], h: f64) -> Result<Vec<ScaledState>>
where
    F: Fn(f64) -> (f64, f64),
{
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Invalid("step must be positive".into()));
    }
    let rhs = |x: f64, y: f64, dy: f64| {
        let (p, q) = coeffs(x);
        -p * dy - q * y
    };
    let mut out = Vec::with_capacity(targets.len());
    let (mut x, mut y, mut dy, mut exp2) = (x0, y0, dy0, 0i32);
    for &target in targets {
        let dir = if target >= x { 1.0 } else { -1.0 };
        if let Some(prev) = out.last().map(|s: &ScaledState| s.x) {
            if (target - prev) * dir < 0.0 {
                return Err(Error::Invalid("targets must be monotone".into()));
            }
        }
        let span = (target - x).abs();
        let steps = (span / h).ceil() as usize;
        let step = if steps == 0 { 0.0 } else { dir * span / steps as f64 };
        for _ in 0..steps {
            let k1y = dy;
            let k1v = rhs(x, y, dy);
            let k2y = dy + 0.5 * step * k1v;
            let k2v = rhs(x + 0.5 * step, y + 0.5 * step * k1y, k2y);
            let k3y = dy + 0.5 * step * k2v;
            let k3v = rhs(x + 0.5 * step, y + 0.5 * step * k2y, k3y);
            let k4y = dy + step * k3v;
            let k4v = rhs(x + step, y + step * k3y, k4y);
            y += step / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
            dy += step / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            x += step;
            let mag = y.abs().max(dy.abs());
            if mag > 1e150 {
                y *= 2f64.powi(-500);
                dy *= 2f64.powi(-500);
                exp2 += 500;
            }
            if !y.is_finite() || !dy.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        x = target;
        out.push(ScaledState { x, y, dy, exp2 });
    }
    Ok(out)
}
