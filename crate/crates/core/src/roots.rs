//! Restricted root data of sl(d,R): roots ε_i − ε_j, the positive and
//! simple systems, the Weyl group S_d, ρ, and dual norms on 𝔞*.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::str::FromStr;

use crate::error::{Error, Result};

/// The root ε_i − ε_j (0-based, i ≠ j).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.i < self.j
    }

    pub fn vector(&self, d: usize) -> Vec<f64> {
        let mut v = vec![0.0; d];
        v[self.i] = 1.0;
        v[self.j] = -1.0;
        v
    }

    /// α(H) = t_i − t_j.
    pub fn eval(&self, h: &[f64]) -> f64 {
        h[self.i] - h[self.j]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedRootSystem {
    dim: usize,
}

impl RestrictedRootSystem {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Invalid(format!("root system needs d >= 2, got {dim}")));
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.dim - 1
    }

    pub fn roots(&self) -> Vec<Root> {
        let d = self.dim;
        let mut out = Vec::with_capacity(d * (d - 1));
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    out.push(Root { i, j });
                }
            }
        }
        out
    }

    pub fn positives(&self) -> Vec<Root> {
        self.roots().into_iter().filter(Root::is_positive).collect()
    }

    pub fn simples(&self) -> Vec<Root> {
        (0..self.dim - 1).map(|k| Root { i: k, j: k + 1 }).collect()
    }

    /// Every restricted root of the split form has multiplicity one.
    pub fn multiplicity(&self, _root: Root) -> usize {
        1
    }

    /// Coefficients of a root in the simple basis; nonnegative for
    /// positive roots, nonpositive for negative ones.
    pub fn simple_coefficients(&self, root: Root) -> Vec<i64> {
        let mut c = vec![0; self.dim - 1];
        let (lo, hi, sign) = if root.i < root.j { (root.i, root.j, 1) } else { (root.j, root.i, -1) };
        for k in lo..hi {
            c[k] = sign;
        }
        c
    }

    pub fn rho(&self) -> SpectralParameter {
        rho(self.dim)
    }

    /// Human-readable description of the positive chamber.
    pub fn chamber_description(&self) -> String {
        let terms: Vec<String> = (1..=self.dim).map(|k| format!("t{k}")).collect();
        format!("{} (sum zero)", terms.join(" > "))
    }
}

/// ρ = ((d−1)/2, (d−3)/2, …, −(d−1)/2).
pub fn rho(d: usize) -> SpectralParameter {
    let entries = (0..d).map(|i| (d as f64 - 1.0) / 2.0 - i as f64).collect();
    SpectralParameter { entries }
}

fn check_trace(entries: &[f64]) -> Result<()> {
    if entries.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let sum: f64 = entries.iter().sum();
    let scale = entries.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    if sum.abs() > 1e-14 * scale * entries.len() as f64 {
        return Err(Error::Invalid(format!("entries must sum to zero, got {sum:e}")));
    }
    Ok(())
}

/// H ∈ 𝔞: a trace-zero real vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CartanVector {
    entries: Vec<f64>,
}

impl CartanVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        check_trace(&entries)?;
        Ok(Self { entries })
    }

    /// Projects onto the trace-zero hyperplane.
    pub fn projected(mut entries: Vec<f64>) -> Self {
        let mean = entries.iter().sum::<f64>() / entries.len() as f64;
        entries.iter_mut().for_each(|x| *x -= mean);
        Self { entries }
    }

    pub fn zero(d: usize) -> Self {
        Self { entries: vec![0.0; d] }
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_regular(&self) -> bool {
        let e = &self.entries;
        (0..e.len()).all(|i| (i + 1..e.len()).all(|j| e[i] != e[j]))
    }

    /// Strictly decreasing entries.
    pub fn in_positive_chamber(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] > w[1])
    }

    /// Weakly decreasing entries.
    pub fn in_closed_chamber(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] >= w[1])
    }

    /// Smallest |t_i − t_j| over i < j.
    pub fn wall_distance(&self) -> f64 {
        let e = &self.entries;
        let mut m = f64::INFINITY;
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                m = m.min((e[i] - e[j]).abs());
            }
        }
        m
    }
}

/// λ ∈ 𝔞*: a trace-zero real vector, meaningful up to permutation.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralParameter {
    entries: Vec<f64>,
}

impl SpectralParameter {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        check_trace(&entries)?;
        Ok(Self { entries })
    }

    pub fn zero(d: usize) -> Self {
        Self { entries: vec![0.0; d] }
    }

    /// (s, −s) for d = 2.
    pub fn rank_one(s: f64) -> Self {
        Self { entries: vec![s, -s] }
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// λ(H) = Σ λ_i t_i.
    pub fn pair(&self, h: &[f64]) -> f64 {
        self.entries.iter().zip(h).map(|(a, b)| a * b).sum()
    }

    pub fn negated(&self) -> Self {
        Self { entries: self.entries.iter().map(|x| -x).collect() }
    }

    /// Dominant representative: entries sorted into decreasing order.
    pub fn dominant(&self) -> Self {
        let mut e = self.entries.clone();
        e.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
        Self { entries: e }
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self { entries: perm.iter().map(|&p| self.entries[p]).collect() }
    }

    pub fn dual_norm_sq(&self, normalization: Normalization) -> f64 {
        dual_norm_sq(self, normalization)
    }
}

/// All distinct permutations of λ's entries.
pub fn weyl_orbit(lambda: &SpectralParameter) -> Vec<SpectralParameter> {
    let mut e = lambda.entries.clone();
    e.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    let mut out = vec![SpectralParameter { entries: e.clone() }];
    while next_permutation(&mut e) {
        out.push(SpectralParameter { entries: e.clone() });
    }
    out
}

/// Lexicographic successor; false when `v` is the last permutation.
fn next_permutation(v: &mut [f64]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The Weyl group S_d as (permutation, sign) pairs, in lexicographic order.
pub fn weyl_group(d: usize) -> Vec<(Vec<usize>, f64)> {
    let mut perm: Vec<usize> = (0..d).collect();
    let mut out = Vec::new();
    loop {
        out.push((perm.clone(), permutation_sign(&perm)));
        let n = perm.len();
        let mut i = n;
        while i > 1 && perm[i - 2] >= perm[i - 1] {
            i -= 1;
        }
        if i <= 1 {
            break;
        }
        let mut j = n - 1;
        while perm[j] <= perm[i - 2] {
            j -= 1;
        }
        perm.swap(i - 2, j);
        perm[i - 1..].reverse();
    }
    out
}

pub fn permutation_sign(perm: &[usize]) -> f64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1.0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Inner product carried to 𝔞* from a form on 𝔞.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Dual of Tr(XY).
    Trace,
    /// Dual of 2d·Tr(XY).
    Killing,
    /// Scaled so that the Laplacian spectrum starts at 1/4 for d = 2 and
    /// 1/3 for d = 3: |λ|² = Σλ_i² / (d(d−1)).
    CasimirMatched,
}

impl Normalization {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Trace => "trace",
            Self::Killing => "killing",
            Self::CasimirMatched => "casimir-matched",
        }
    }

    /// Factor κ with |λ|² = κ Σ λ_i².
    pub fn factor(&self, d: usize) -> f64 {
        let d = d as f64;
        match self {
            Self::Trace => 1.0,
            Self::Killing => 1.0 / (2.0 * d),
            Self::CasimirMatched => 1.0 / (d * (d - 1.0)),
        }
    }
}

impl FromStr for Normalization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trace" => Ok(Self::Trace),
            "killing" => Ok(Self::Killing),
            "casimir-matched" | "casimir" => Ok(Self::CasimirMatched),
            other => Err(Error::Invalid(format!("unknown normalization '{other}'"))),
        }
    }
}

pub fn dual_norm_sq(lambda: &SpectralParameter, normalization: Normalization) -> f64 {
    let sum: f64 = lambda.entries.iter().map(|x| x * x).sum();
    sum * normalization.factor(lambda.dim())
}

/// ρ(H) = ½ Σ_{i<j} (t_i − t_j).
pub fn rho_of(h: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..h.len() {
        for j in i + 1..h.len() {
            acc += h[i] - h[j];
        }
    }
    0.5 * acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_examples() {
        assert_eq!(rho(2).entries(), &[0.5, -0.5]);
        assert_eq!(rho(3).entries(), &[1.0, 0.0, -1.0]);
        assert_eq!(rho(4).entries(), &[1.5, 0.5, -0.5, -1.5]);
    }

    #[test]
    fn rho_is_half_sum_of_positive_roots() {
        for d in 2..6 {
            let sys = RestrictedRootSystem::new(d).unwrap();
            let mut half = vec![0.0; d];
            for r in sys.positives() {
                for (h, v) in half.iter_mut().zip(r.vector(d)) {
                    *h += 0.5 * v;
                }
            }
            assert_eq!(half, rho(d).entries());
        }
    }

    #[test]
    fn counts_and_expansions() {
        let sys = RestrictedRootSystem::new(4).unwrap();
        assert_eq!(sys.roots().len(), 12);
        assert_eq!(sys.positives().len(), 6);
        assert_eq!(sys.simples().len(), sys.rank());
        for r in sys.positives() {
            let c = sys.simple_coefficients(r);
            assert!(c.iter().all(|&x| x >= 0));
            let mut v = vec![0.0; 4];
            for (k, &ck) in c.iter().enumerate() {
                let s = sys.simples()[k].vector(4);
                for i in 0..4 {
                    v[i] += ck as f64 * s[i];
                }
            }
            assert_eq!(v, r.vector(4));
        }
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(weyl_orbit(&SpectralParameter::zero(3)).len(), 1);
        assert_eq!(weyl_orbit(&SpectralParameter::rank_one(0.7)).len(), 2);
        let l = SpectralParameter::new(vec![1.0, 0.5, -1.5]).unwrap();
        assert_eq!(weyl_orbit(&l).len(), 6);
        let l = SpectralParameter::new(vec![1.0, 1.0, -2.0]).unwrap();
        assert_eq!(weyl_orbit(&l).len(), 3);
        assert_eq!(weyl_orbit(&l.dominant()), weyl_orbit(&l));
    }

    #[test]
    fn weyl_group_signs() {
        let g = weyl_group(3);
        assert_eq!(g.len(), 6);
        assert_eq!(g.iter().map(|p| p.1).sum::<f64>(), 0.0);
        assert_eq!(g[0], (vec![0, 1, 2], 1.0));
        assert_eq!(g[1], (vec![0, 2, 1], -1.0));
    }

    #[test]
    fn norms() {
        let r2 = rho(2);
        let r3 = rho(3);
        assert!((dual_norm_sq(&r2, Normalization::CasimirMatched) - 0.25).abs() < 1e-15);
        assert!((dual_norm_sq(&r3, Normalization::CasimirMatched) - 1.0 / 3.0).abs() < 1e-15);
        assert!((dual_norm_sq(&r3, Normalization::Killing) - 1.0 / 3.0).abs() < 1e-15);
        assert!((dual_norm_sq(&r2, Normalization::Killing) - 0.125).abs() < 1e-15);
        assert!("bogus".parse::<Normalization>().is_err());
    }

    #[test]
    fn trace_zero_enforced() {
        assert!(CartanVector::new(vec![1.0, 0.5]).is_err());
        let h = CartanVector::new(vec![0.7, -0.2, -0.5]).unwrap();
        assert!(h.is_regular() && h.in_positive_chamber());
        assert!((rho_of(h.entries()) - rho(3).pair(h.entries())).abs() < 1e-15);
    }
}
