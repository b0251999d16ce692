//! Scalar helpers: complex type alias, complex log-gamma, Gauss–Legendre
//! rules and a few quadrature primitives shared across modules.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;
use core::f64::consts::PI;
use num_complex::Complex;

pub type C64 = Complex<f64>;

pub const I: C64 = C64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal branch of log Γ(z) for complex z (Lanczos, g = 7).
pub fn ln_gamma(z: C64) -> C64 {
    if z.re < 0.5 {
        // reflection: Γ(z)Γ(1−z) = π / sin(πz)
        let s = (z * PI).sin();
        return re(PI.ln()) - s.ln() - ln_gamma(re(1.0) - z);
    }
    let z = z - 1.0;
    let mut acc = re(LANCZOS[0]);
    for (k, &coef) in LANCZOS.iter().enumerate().skip(1) {
        acc += re(coef) / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    re(0.5 * (2.0 * PI).ln()) + (z + 0.5) * t.ln() - t + acc.ln()
}

pub fn gamma(z: C64) -> C64 {
    ln_gamma(z).exp()
}

/// Gauss–Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre rule: `panels` equal panels on [a, b], `order`
/// nodes each.
pub fn composite_gauss(a: f64, b: f64, panels: usize, order: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(order);
    let width = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let lo = a + p as f64 * width;
        for (xi, wi) in x.iter().zip(&w) {
            nodes.push(lo + 0.5 * width * (xi + 1.0));
            weights.push(0.5 * width * wi);
        }
    }
    (nodes, weights)
}

/// Quadrature weights for samples on an increasing grid: composite Simpson
/// on uniform grids (trapezoid closing the last interval when the count is
/// even), plain trapezoid otherwise.
pub fn grid_weights(grid: &[f64]) -> Vec<f64> {
    let n = grid.len();
    let mut w = alloc::vec![0.0; n];
    if n < 2 {
        return w;
    }
    let h = grid[1] - grid[0];
    let uniform = grid
        .windows(2)
        .all(|p| ((p[1] - p[0]) - h).abs() <= 1e-9 * h.abs().max(1e-300));
    if uniform && n >= 3 {
        let simpson_end = if n % 2 == 1 { n - 1 } else { n - 2 };
        let mut i = 0;
        while i < simpson_end {
            w[i] += h / 3.0;
            w[i + 1] += 4.0 * h / 3.0;
            w[i + 2] += h / 3.0;
            i += 2;
        }
        if simpson_end < n - 1 {
            w[n - 2] += 0.5 * h;
            w[n - 1] += 0.5 * h;
        }
    } else {
        for i in 0..n - 1 {
            let dx = grid[i + 1] - grid[i];
            w[i] += 0.5 * dx;
            w[i + 1] += 0.5 * dx;
        }
    }
    w
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return alloc::vec![a];
    }
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}
