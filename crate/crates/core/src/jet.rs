//! Second-order jets over a fixed coordinate chart: value, gradient and
//! Hessian of a complex function germ. Applying a first-order operator to
//! a jet consumes one order; two applications of first-order operators to
//! an order-2 jet give an exact value.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::math::{re, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    order: u8,
    value: C64,
    grad: Vec<C64>,
    hess: Vec<C64>,
}

impl Jet {
    pub fn constant(n: usize, value: C64) -> Self {
        Self { order: 2, value, grad: vec![C64::new(0.0, 0.0); n], hess: vec![C64::new(0.0, 0.0); n * n] }
    }

    pub fn real_constant(n: usize, value: f64) -> Self {
        Self::constant(n, re(value))
    }

    /// The coordinate function x_k evaluated at `x`.
    pub fn variable(n: usize, k: usize, x: f64) -> Self {
        let mut j = Self::real_constant(n, x);
        j.grad[k] = re(1.0);
        j
    }

    /// All coordinate functions at `point`.
    pub fn variables(point: &[f64]) -> Vec<Self> {
        let n = point.len();
        point.iter().enumerate().map(|(k, &x)| Self::variable(n, k, x)).collect()
    }

    /// Full second-order jet from parts; the Hessian must be symmetric to
    /// 1e-12 relative and is stored exactly symmetrized.
    pub fn from_parts(value: C64, grad: Vec<C64>, hess: Vec<C64>) -> Result<Self> {
        let n = grad.len();
        if hess.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: hess.len() });
        }
        let scale = hess.iter().fold(1.0f64, |m, z| m.max(z.norm()));
        let mut h = hess;
        for i in 0..n {
            for j in 0..i {
                let (a, b) = (h[i * n + j], h[j * n + i]);
                if (a - b).norm() > 1e-12 * scale {
                    return Err(Error::NotSymmetric((a - b).norm()));
                }
                let m = (a + b) * 0.5;
                h[i * n + j] = m;
                h[j * n + i] = m;
            }
        }
        let jet = Self { order: 2, value, grad, hess: h };
        if !jet.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(jet)
    }

    /// First-order jet (Hessian unknown).
    pub fn first_order(value: C64, grad: Vec<C64>) -> Self {
        let n = grad.len();
        Self { order: 1, value, grad, hess: vec![C64::new(0.0, 0.0); n * n] }
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.grad.len()
    }

    pub fn value(&self) -> C64 {
        self.value
    }

    pub fn grad(&self) -> &[C64] {
        &self.grad
    }

    pub fn hess(&self) -> &[C64] {
        &self.hess
    }

    pub fn h(&self, i: usize, j: usize) -> C64 {
        self.hess[i * self.dim() + j]
    }

    /// True when value and all stored derivatives vanish.
    pub fn is_zero(&self) -> bool {
        let z = C64::new(0.0, 0.0);
        self.value == z && self.grad.iter().all(|g| *g == z) && self.hess.iter().all(|h| *h == z)
    }

    pub fn is_finite(&self) -> bool {
        let fin = |z: &C64| z.re.is_finite() && z.im.is_finite();
        fin(&self.value) && self.grad.iter().all(fin) && self.hess.iter().all(fin)
    }

    /// Lowers the claimed order (data beyond it is zeroed).
    pub fn truncate(mut self, order: u8) -> Self {
        if order < self.order {
            self.order = order;
            if order < 2 {
                self.hess.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
            }
            if order < 1 {
                self.grad.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
            }
        }
        self
    }

    pub fn require(&self, need: u8) -> Result<()> {
        if self.order < need {
            return Err(Error::JetOrder { have: self.order, need });
        }
        Ok(())
    }

    /// ∂ψ/∂x_k as a jet one order lower.
    pub fn partial(&self, k: usize) -> Result<Self> {
        self.require(1)?;
        let n = self.dim();
        let value = self.grad[k];
        let grad = (0..n).map(|j| self.hess[k * n + j]).collect();
        Ok(Self { order: self.order - 1, value, grad, hess: vec![C64::new(0.0, 0.0); n * n] }.truncate(self.order - 1))
    }

    /// Σ_k v_k ∂_k f in one pass; zero v_k are skipped and do not lower
    /// the order. Same result as summing `v_k * f.partial(k)`.
    pub fn directional(v: &[Jet], f: &Jet) -> Result<Self> {
        let n = f.dim();
        let z = C64::new(0.0, 0.0);
        let mut order = f.order.saturating_sub(1);
        let mut value = z;
        let mut grad = vec![z; n];
        for (k, vk) in v.iter().enumerate() {
            // the Hessian of v_k never enters, so only scan it when it decides
            // the order or the error
            let flat = vk.value == z && vk.grad.iter().all(|g| *g == z);
            if flat && (f.order > 0 && vk.order >= order || vk.is_zero()) {
                continue;
            }
            f.require(1)?;
            order = order.min(vk.order);
            if flat {
                continue;
            }
            value += vk.value * f.grad[k];
            for j in 0..n {
                grad[j] += vk.grad[j] * f.grad[k] + vk.value * f.hess[k * n + j];
            }
        }
        Ok(Self { order, value, grad, hess: vec![z; n * n] }.truncate(order))
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            order: self.order,
            value: self.value * c,
            grad: self.grad.iter().map(|g| g * c).collect(),
            hess: self.hess.iter().map(|h| h * c).collect(),
        }
    }

    pub fn add_scalar(&self, c: C64) -> Self {
        let mut j = self.clone();
        j.value += c;
        j
    }

    /// g(ψ) given g, g', g'' at ψ's value.
    pub fn compose(&self, f0: C64, f1: C64, f2: C64) -> Self {
        let n = self.dim();
        let grad: Vec<C64> = self.grad.iter().map(|g| g * f1).collect();
        let mut hess = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                hess[i * n + j] = self.hess[i * n + j] * f1 + self.grad[i] * self.grad[j] * f2;
            }
        }
        Self { order: self.order, value: f0, grad, hess }
    }

    pub fn exp(&self) -> Self {
        let e = self.value.exp();
        self.compose(e, e, e)
    }

    pub fn ln(&self) -> Self {
        let v = self.value;
        self.compose(v.ln(), v.inv(), -(v * v).inv())
    }

    /// Principal-branch power ψ^p.
    pub fn powc(&self, p: C64) -> Self {
        let v = self.value;
        let f0 = v.powc(p);
        let f1 = p * f0 / v;
        let f2 = p * (p - 1.0) * f0 / (v * v);
        self.compose(f0, f1, f2)
    }

    pub fn powf(&self, p: f64) -> Self {
        self.powc(re(p))
    }

    pub fn powi(&self, m: i32) -> Self {
        let v = self.value;
        let mf = m as f64;
        let f1 = if m == 0 { re(0.0) } else { v.powi(m - 1) * mf };
        let f2 = if m == 0 || m == 1 { re(0.0) } else { v.powi(m - 2) * (mf * (mf - 1.0)) };
        self.compose(v.powi(m), f1, f2)
    }

    pub fn sqrt(&self) -> Self {
        self.powf(0.5)
    }

    pub fn recip(&self) -> Self {
        let v = self.value;
        let r = v.inv();
        self.compose(r, -r * r, r * r * r * 2.0)
    }

    pub fn sin(&self) -> Self {
        let v = self.value;
        self.compose(v.sin(), v.cos(), -v.sin())
    }

    pub fn cos(&self) -> Self {
        let v = self.value;
        self.compose(v.cos(), -v.sin(), -v.cos())
    }

    pub fn cosh(&self) -> Self {
        let v = self.value;
        self.compose(v.cosh(), v.sinh(), v.cosh())
    }

    pub fn sinh(&self) -> Self {
        let v = self.value;
        self.compose(v.sinh(), v.cosh(), v.sinh())
    }

    /// F(g₁,…,g_m) given F's value, gradient and (row-major) Hessian at the
    /// inner values.
    pub fn compose_multi(f0: C64, fg: &[C64], fh: &[C64], inner: &[Jet]) -> Self {
        let m = inner.len();
        let n = inner[0].dim();
        let order = inner.iter().map(Jet::order).min().unwrap_or(2);
        let mut grad = vec![C64::new(0.0, 0.0); n];
        let mut hess = vec![C64::new(0.0, 0.0); n * n];
        for a in 0..m {
            for i in 0..n {
                grad[i] += fg[a] * inner[a].grad[i];
            }
            for i in 0..n * n {
                hess[i] += fg[a] * inner[a].hess[i];
            }
            for b in 0..m {
                let f = fh[a * m + b];
                if f == C64::new(0.0, 0.0) {
                    continue;
                }
                for i in 0..n {
                    for j in 0..n {
                        hess[i * n + j] += f * inner[a].grad[i] * inner[b].grad[j];
                    }
                }
            }
        }
        // symmetrize exactly; the accumulation order above is not symmetric
        for i in 0..n {
            for j in 0..i {
                let s = (hess[i * n + j] + hess[j * n + i]) * 0.5;
                hess[i * n + j] = s;
                hess[j * n + i] = s;
            }
        }
        Self { order, value: f0, grad, hess }.truncate(order)
    }

    fn zip(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        Self {
            order: self.order.min(other.order),
            value: f(self.value, other.value),
            grad: self.grad.iter().zip(&other.grad).map(|(a, b)| f(*a, *b)).collect(),
            hess: self.hess.iter().zip(&other.hess).map(|(a, b)| f(*a, *b)).collect(),
        }
    }
}

/// Determinant of a d×d matrix of jets (row-major) by elimination without
/// pivoting; intended for positive-definite inputs.
pub fn det(entries: &[Jet], d: usize) -> Jet {
    let mut a: Vec<Jet> = entries.to_vec();
    let n = a[0].dim();
    let mut det = Jet::real_constant(n, 1.0);
    for k in 0..d {
        let pivot = a[k * d + k].clone();
        det = &det * &pivot;
        if k + 1 == d {
            break;
        }
        let inv = pivot.recip();
        for i in k + 1..d {
            let f = &a[i * d + k] * &inv;
            for j in k + 1..d {
                let t = &f * &a[k * d + j];
                a[i * d + j] = &a[i * d + j] - &t;
            }
        }
    }
    det
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(re(-1.0))
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let n = self.dim();
        let (a, b) = (self, rhs);
        let grad = (0..n).map(|i| a.grad[i] * b.value + a.value * b.grad[i]).collect();
        let mut hess = vec![C64::new(0.0, 0.0); n * n];
        let order = a.order.min(b.order);
        for i in (0..n).take(if order < 2 { 0 } else { n }) {
            for j in 0..n {
                hess[i * n + j] = a.hess[i * n + j] * b.value
                    + a.value * b.hess[i * n + j]
                    + (a.grad[i] * b.grad[j] + b.grad[i] * a.grad[j]);
            }
        }
        Jet { order, value: a.value * b.value, grad, hess }
    }
}

impl Div for &Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Jet) -> Jet {
        self * &rhs.recip()
    }
}

macro_rules! by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                (&self).$m(&rhs)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);
by_value!(Div, div);
