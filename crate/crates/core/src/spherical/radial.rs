//! Radial parts of invariant operators on A, applied by finite
//! differences in the ambient coordinates t ∈ ℝᵈ (D_i = ∂/∂t_i).

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::sekiguchi::SekiguchiFamily;
use super::{SphericalEvaluator, SphericalValue};
use crate::error::{Error, Result};
use crate::jet::{self, Jet};
use crate::math::{c, re, C64};
use crate::operator::casimir;
use crate::roots::{dual_norm_sq, rho, Normalization, SpectralParameter};

/// Fornberg's weights for derivatives 0..=m at `z` from nodes `x`;
/// `out[k][j]` multiplies f(x_j) in the k-th derivative.
pub fn fornberg_weights(z: f64, x: &[f64], m: usize) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut w = vec![vec![0.0; n]; m + 1];
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    w[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    w[k][i] = c1 * (k as f64 * w[k - 1][i - 1] - c5 * w[k][i - 1]) / c2;
                }
                w[0][i] = -c1 * c5 * w[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                w[k][j] = (c4 * w[k][j] - k as f64 * w[k - 1][j]) / c3;
            }
            w[0][j] *= c4 / c3;
        }
        c1 = c2;
    }
    w
}

/// A central stencil: offsets in units of `step` with first and second
/// derivative weights already divided by the step powers.
#[derive(Debug, Clone, PartialEq)]
pub struct Stencil {
    pub step: f64,
    pub offsets: Vec<f64>,
    pub first: Vec<f64>,
    pub second: Vec<f64>,
}

impl Stencil {
    pub fn central(order: usize, step: f64) -> Result<Self> {
        if order < 2 || order % 2 == 1 || !(step > 0.0) {
            return Err(Error::Invalid("stencil order must be even and the step positive".into()));
        }
        let half = order as i64 / 2;
        let offsets: Vec<f64> = (-half..=half).map(|k| k as f64).collect();
        let w = fornberg_weights(0.0, &offsets, 2);
        Ok(Self {
            step,
            first: w[1].iter().map(|v| v / step).collect(),
            second: w[2].iter().map(|v| v / (step * step)).collect(),
            offsets,
        })
    }

    /// Fourth-order central differences.
    pub fn central4(step: f64) -> Self {
        Self::central(4, step).expect("valid stencil")
    }

    pub fn order(&self) -> usize {
        self.offsets.len() - 1
    }
}

pub type Profile<'a> = &'a dyn Fn(&[f64]) -> Result<C64>;

/// Σ over the tensor grid of first-derivative stencils in the listed
/// (distinct) directions: D_{i₁}⋯D_{i_k} f(t).
pub fn mixed_derivative(f: Profile, t: &[f64], dirs: &[usize], st: &Stencil) -> Result<C64> {
    if dirs.is_empty() {
        return f(t);
    }
    let taps: Vec<(f64, f64)> =
        st.offsets.iter().zip(&st.first).filter(|(_, w)| **w != 0.0).map(|(o, w)| (*o * st.step, *w)).collect();
    let k = dirs.len();
    let mut idx = vec![0usize; k];
    let mut acc = C64::new(0.0, 0.0);
    let mut x = t.to_vec();
    loop {
        let mut weight = 1.0;
        x.copy_from_slice(t);
        for (slot, &dir) in idx.iter().zip(dirs) {
            x[dir] += taps[*slot].0;
            weight *= taps[*slot].1;
        }
        acc += f(&x)? * weight;
        let mut p = 0;
        loop {
            if p == k {
                return Ok(acc);
            }
            idx[p] += 1;
            if idx[p] < taps.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

/// D_i² f(t).
pub fn second_derivative(f: Profile, t: &[f64], dir: usize, st: &Stencil) -> Result<C64> {
    let mut x = t.to_vec();
    let mut acc = C64::new(0.0, 0.0);
    for (o, w) in st.offsets.iter().zip(&st.second) {
        x[dir] = t[dir] + o * st.step;
        acc += f(&x)? * *w;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialKind {
    /// R_N(Δ) = Δ_A − 2ρ·∇, eigenfunctions e^{(iλ+ρ)H}.
    Iwasawa,
    /// R_K(Δ) = Δ_A + Σ_{i<j} coth(t_i − t_j)(D_i − D_j).
    Cartan,
    /// Coefficient of ζ^{d−k} in the generating function.
    Sekiguchi(usize),
}

#[derive(Debug, Clone)]
pub struct RadialOperator {
    pub kind: RadialKind,
    pub d: usize,
    pub stencil: Stencil,
    pub wall_margin: f64,
    pub normalization: Normalization,
    family: Option<SekiguchiFamily>,
}

/// Smallest |t_i − t_j|.
pub fn wall_gap(t: &[f64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            gap = gap.min((t[i] - t[j]).abs());
        }
    }
    gap
}

impl RadialOperator {
    pub fn new(kind: RadialKind, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Invalid("radial operators need d ≥ 2".into()));
        }
        let family = match kind {
            RadialKind::Sekiguchi(k) => {
                if k == 0 || k > d {
                    return Err(Error::Invalid("Sekiguchi index must lie in 1..=d".into()));
                }
                Some(SekiguchiFamily::new(d)?)
            }
            _ => None,
        };
        Ok(Self {
            kind,
            d,
            stencil: Stencil::central4(1e-3),
            wall_margin: 0.2,
            normalization: Normalization::CasimirMatched,
            family,
        })
    }

    pub fn with_stencil(mut self, stencil: Stencil) -> Self {
        self.stencil = stencil;
        self
    }

    pub fn with_normalization(mut self, n: Normalization) -> Self {
        self.normalization = n;
        self
    }

    pub fn with_wall_margin(mut self, margin: f64) -> Self {
        self.wall_margin = margin;
        self
    }

    fn check_point(&self, t: &[f64]) -> Result<()> {
        if t.len() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, found: t.len() });
        }
        if !matches!(self.kind, RadialKind::Iwasawa) {
            let gap = wall_gap(t);
            if gap <= self.wall_margin {
                return Err(Error::WallProximity { margin: self.wall_margin, gap });
            }
        }
        Ok(())
    }

    /// The operator applied to `f` at `t`. The Laplacian pictures carry
    /// the normalization factor; Sekiguchi operators do not.
    pub fn apply(&self, f: Profile, t: &[f64]) -> Result<C64> {
        self.check_point(t)?;
        let st = &self.stencil;
        let d = self.d;
        match self.kind {
            RadialKind::Cartan => {
                let mut acc = C64::new(0.0, 0.0);
                let mut first = Vec::with_capacity(d);
                for i in 0..d {
                    acc += second_derivative(f, t, i, st)?;
                    first.push(mixed_derivative(f, t, &[i], st)?);
                }
                for i in 0..d {
                    for j in i + 1..d {
                        let coth = 1.0 / (t[i] - t[j]).tanh();
                        acc += (first[i] - first[j]) * coth;
                    }
                }
                Ok(acc * self.normalization.factor(d))
            }
            RadialKind::Iwasawa => {
                let r = rho(d);
                let mut acc = C64::new(0.0, 0.0);
                for i in 0..d {
                    acc += second_derivative(f, t, i, st)?;
                    acc -= mixed_derivative(f, t, &[i], st)? * (2.0 * r.entries()[i]);
                }
                Ok(acc * self.normalization.factor(d))
            }
            RadialKind::Sekiguchi(k) => {
                let fam = self.family.as_ref().expect("built with the family");
                let mut acc = C64::new(0.0, 0.0);
                let mut dirs = Vec::with_capacity(d);
                for (mask, coef) in fam.coefficients(k, t)? {
                    if coef == 0.0 {
                        continue;
                    }
                    dirs.clear();
                    dirs.extend((0..d).filter(|i| mask & (1 << i) != 0));
                    acc += mixed_derivative(f, t, &dirs, st)? * coef;
                }
                Ok(acc)
            }
        }
    }
}

/// The Cartan-picture Laplacian with casimir-matched normalization.
pub fn cartan_radial_laplacian(d: usize) -> Result<RadialOperator> {
    RadialOperator::new(RadialKind::Cartan, d)
}

/// Σ_{i<j}(D_iD_j − ½coth(t_i − t_j)(D_i − D_j)) − ½|ρ|², |ρ|² in the trace
/// form.
pub fn seki3(f: Profile, t: &[f64], st: &Stencil) -> Result<C64> {
    let d = t.len();
    let rho2 = dual_norm_sq(&rho(d), Normalization::Trace);
    let mut first = Vec::with_capacity(d);
    for i in 0..d {
        first.push(mixed_derivative(f, t, &[i], st)?);
    }
    let mut acc = f(t)? * (-0.5 * rho2);
    for i in 0..d {
        for j in i + 1..d {
            acc += mixed_derivative(f, t, &[i, j], st)?;
            acc -= (first[i] - first[j]) * (0.5 / (t[i] - t[j]).tanh());
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialCheck {
    /// Largest |Δφ + (|λ|² + |ρ|²)φ| / |φ| over the grid.
    pub residual: f64,
    /// Mean of Δφ/φ over the grid.
    pub eigenvalue: C64,
    /// −(|λ|² + |ρ|²) in the chosen normalization.
    pub expected: f64,
    /// Largest quadrature error of φ on the grid.
    pub quadrature_error: f64,
}

/// Applies the seki3 operator to φ_λ restricted to A and converts to the
/// normalized Laplacian, Δ = −2κ(Δ₂ + ½|ρ|²) with κ the normalization
/// factor relative to the trace form.
pub fn radial_laplacian_check(ev: &SphericalEvaluator, grid: &[Vec<f64>], normalization: Normalization, stencil: &Stencil, wall_margin: f64) -> Result<RadialCheck> {
    let d = ev.dim();
    let kappa = normalization.factor(d);
    let rho2_tr = dual_norm_sq(&rho(d), Normalization::Trace);
    let expected = -(dual_norm_sq(ev.lambda(), normalization) + dual_norm_sq(&rho(d), normalization));
    if grid.is_empty() {
        return Err(Error::Invalid("empty grid".into()));
    }
    let mut residual: f64 = 0.0;
    let mut sum = C64::new(0.0, 0.0);
    let mut qerr: f64 = 0.0;
    for t in grid {
        if t.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: t.len() });
        }
        let gap = wall_gap(t);
        if gap <= wall_margin {
            return Err(Error::WallProximity { margin: wall_margin, gap });
        }
        let f = |x: &[f64]| ev.eval_cartan(x).map(|v| v.value);
        let phi: SphericalValue = ev.eval_cartan(t)?;
        qerr = qerr.max(phi.error);
        let d2 = seki3(&f, t, stencil)?;
        let lap = (d2 + phi.value * (0.5 * rho2_tr)) * (-2.0 * kappa);
        let ratio = lap / phi.value;
        residual = residual.max((lap - phi.value * expected).norm() / phi.value.norm());
        sum += ratio;
    }
    Ok(RadialCheck { residual, eigenvalue: sum / grid.len() as f64, expected, quadrature_error: qerr })
}

/// One exponent μ of the Harish-Chandra check.
#[derive(Debug, Clone, PartialEq)]
pub struct HarishChandraRow {
    pub mu: Vec<f64>,
    /// −2κ C₂F/F at each point, F = e^{(μ−ρ)H}.
    pub measured: Vec<f64>,
    /// |μ|² − |ρ|² in the chosen normalization.
    pub expected: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarishChandraReport {
    pub d: usize,
    pub normalization: Normalization,
    /// Fitted c in C₂ = c·Δ, which should equal −1/(2κ).
    pub conversion: f64,
    pub rows: Vec<HarishChandraRow>,
}

impl HarishChandraReport {
    pub fn max_residual(&self) -> f64 {
        self.rows.iter().map(|r| r.residual).fold(0.0, f64::max)
    }
}

/// H(q) on the metric chart as jets: H_i = ½ ln(m_i/m_{i−1}) from the
/// leading principal minors, projected to trace zero.
pub fn iwasawa_h_jets(x: &[f64], d: usize) -> Result<Vec<Jet>> {
    let p = crate::spd::MetricPoint::from_chart(d, x.to_vec())?;
    let v = Jet::variables(p.chart());
    let entry = |a: usize, b: usize| v[crate::spd::chart_index(a.min(b), a.max(b), d)].clone();
    let mut logs = Vec::with_capacity(d + 1);
    logs.push(Jet::real_constant(v.len(), 0.0));
    for k in 1..=d {
        let mut block = Vec::with_capacity(k * k);
        for a in 0..k {
            for b in 0..k {
                block.push(entry(a, b));
            }
        }
        logs.push(jet::det(&block, k).ln());
    }
    let h: Vec<Jet> = (0..d).map(|i| (&logs[i + 1] - &logs[i]).scale(re(0.5))).collect();
    let mean = logs[d].scale(re(0.5 / d as f64));
    Ok(h.iter().map(|hi| hi - &mean).collect())
}

/// Casimir C₂ on e^{(μ−ρ)H(q)} for real μ, compared with the eigenvalue
/// Γ(Δ) = Δ_A − |ρ|² gives on e^{μH}. On the metric chart the radial part
/// of C₂ is −½(Δ_A + 2ρ·∇) in the trace form, so the shift enters with
/// the opposite sign to the Iwasawa picture of [`RadialKind::Iwasawa`].
pub fn harish_chandra_check(d: usize, mus: &[SpectralParameter], points: &[Vec<f64>], normalization: Normalization) -> Result<HarishChandraReport> {
    let kappa = normalization.factor(d);
    let r = rho(d);
    let c2 = casimir(d);
    let mut rows = Vec::with_capacity(mus.len());
    let (mut num, mut den) = (0.0, 0.0);
    for mu in mus {
        if mu.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: mu.dim() });
        }
        let expected = dual_norm_sq(mu, normalization) - dual_norm_sq(&r, normalization);
        let mut measured = Vec::with_capacity(points.len());
        let mut residual: f64 = 0.0;
        for x in points {
            let h = iwasawa_h_jets(x, d)?;
            let mut arg = Jet::real_constant(h[0].dim(), 0.0);
            for (i, hi) in h.iter().enumerate() {
                arg = &arg + &hi.scale(re(mu.entries()[i] - r.entries()[i]));
            }
            let f = arg.exp();
            let ratio = c2.apply(&f, x)? / f.value();
            let m = -2.0 * kappa * ratio.re;
            residual = residual.max((m - expected).abs().max(ratio.im.abs()));
            measured.push(m);
            num += ratio.re * expected;
            den += expected * expected;
        }
        rows.push(HarishChandraRow { mu: mu.entries().to_vec(), measured, expected, residual });
    }
    let conversion = if den > 0.0 { num / den } else { f64::NAN };
    Ok(HarishChandraReport { d, normalization, conversion, rows })
}

/// |e^{−ρ}R_N(Δ)(e^{ρ}e^{μH}) − (|μ|² − |ρ|²)e^{μH}| / |e^{μH}| by finite
/// differences at `t`, in the chosen normalization.
pub fn isomorphism_residual(d: usize, mu: &[f64], t: &[f64], normalization: Normalization) -> Result<f64> {
    let op = RadialOperator::new(RadialKind::Iwasawa, d)?.with_normalization(normalization).with_stencil(Stencil::central4(1e-2));
    let r = rho(d);
    let f = |x: &[f64]| -> Result<C64> {
        let e: f64 = x.iter().enumerate().map(|(i, xi)| (r.entries()[i] + mu[i]) * xi).sum();
        Ok(c(e.exp(), 0.0))
    };
    let base: f64 = t.iter().zip(mu).map(|(a, b)| a * b).sum::<f64>().exp();
    let rho_part: f64 = t.iter().zip(r.entries()).map(|(a, b)| a * b).sum::<f64>().exp();
    let out = op.apply(&f, t)? / rho_part;
    let m = SpectralParameter::new(mu.to_vec())?;
    let expected = dual_norm_sq(&m, normalization) - dual_norm_sq(&r, normalization);
    Ok((out - c(expected * base, 0.0)).norm() / base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2::conical::{conical_p_derivs, ConicalEvaluator};
    use crate::spherical::Quadrature;

    #[test]
    fn fornberg_matches_textbook() {
        let st = Stencil::central4(1.0);
        let e1 = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0];
        let e2 = [-1.0 / 12.0, 4.0 / 3.0, -2.5, 4.0 / 3.0, -1.0 / 12.0];
        for k in 0..5 {
            assert!((st.first[k] - e1[k]).abs() < 1e-14);
            assert!((st.second[k] - e2[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn cartan_d2_reduces_to_legendre_operator() {
        // t = (x, −x): L_tr f = ½f_xx + coth(2x)f_x, and in χ = t₁ − t₂ the
        // casimir-matched operator is F'' + coth χ F'.
        let op = cartan_radial_laplacian(2).unwrap().with_normalization(Normalization::Trace);
        let g = |chi: f64| (0.3 * chi).sin() + chi * chi;
        let f = |x: &[f64]| -> Result<C64> { Ok(c(g(x[0] - x[1]), 0.0)) };
        for x in [0.3, 0.8, 1.7] {
            let chi = 2.0 * x;
            let (g1, g2) = (0.3 * (0.3 * chi).cos() + 2.0 * chi, -0.09 * (0.3 * chi).sin() + 2.0);
            let tr = op.apply(&f, &[x, -x]).unwrap();
            assert!((tr.re - 2.0 * (g2 + g1 / chi.tanh())).abs() < 1e-7);
            let cm = op.clone().with_normalization(Normalization::CasimirMatched).apply(&f, &[x, -x]).unwrap();
            assert!((cm.re - (g2 + g1 / chi.tanh())).abs() < 1e-7);
        }
        let one = |_: &[f64]| -> Result<C64> { Ok(c(1.0, 0.0)) };
        assert!(op.apply(&one, &[0.5, -0.5]).unwrap().norm() < 1e-9);
        assert!(matches!(op.apply(&one, &[0.05, -0.05]), Err(Error::WallProximity { .. })));
    }

    #[test]
    fn cartan_on_conical_function() {
        let s = 0.5;
        let ev = ConicalEvaluator::default();
        let f = |x: &[f64]| -> Result<C64> { Ok(c(conical_p_derivs(s, 0, (x[0] - x[1]).cosh(), &ev)?.p, 0.0)) };
        let op = cartan_radial_laplacian(2).unwrap();
        for chi in [0.6, 1.5, 3.0] {
            let t = [chi / 2.0, -chi / 2.0];
            let ratio = op.apply(&f, &t).unwrap() / f(&t).unwrap();
            assert!((ratio.re + (0.25 + s * s)).abs() < 1e-6, "{chi}: {ratio}");
        }
    }

    #[test]
    fn iwasawa_eigen_relation() {
        for d in [2usize, 3] {
            let lambda: Vec<f64> = if d == 2 { vec![0.5, -0.5] } else { vec![0.4, 0.3, -0.7] };
            let r = rho(d);
            let op = RadialOperator::new(RadialKind::Iwasawa, d).unwrap();
            let f = |x: &[f64]| -> Result<C64> {
                let mut z = C64::new(0.0, 0.0);
                for i in 0..d {
                    z += c(r.entries()[i], lambda[i]) * x[i];
                }
                Ok(z.exp())
            };
            let t: Vec<f64> = (0..d).map(|i| 0.3 - 0.2 * i as f64).collect();
            let ratio = op.apply(&f, &t).unwrap() / f(&t).unwrap();
            let lam = SpectralParameter::new(lambda.clone()).unwrap();
            let cm = Normalization::CasimirMatched;
            let expected = -(dual_norm_sq(&lam, cm) + dual_norm_sq(&r, cm));
            assert!((ratio - c(expected, 0.0)).norm() < 1e-8, "{d}: {ratio} vs {expected}");
        }
    }

    #[test]
    fn spherical_eigenvalue_d2() {
        let ev = SphericalEvaluator::new(SpectralParameter::rank_one(1.0), Quadrature::So2Trapezoid { nodes: 512 }).unwrap();
        let grid: Vec<Vec<f64>> = [0.4, 0.9, 1.6].iter().map(|x| vec![*x, -*x]).collect();
        let out = radial_laplacian_check(&ev, &grid, Normalization::CasimirMatched, &Stencil::central4(1e-3), 0.2).unwrap();
        assert!(out.residual < 1e-3, "{out:?}");
        assert!((out.expected + 1.25).abs() < 1e-14);
    }

    #[test]
    fn harish_chandra_constants() {
        let mus = [SpectralParameter::new(vec![0.6, -0.1, -0.5]).unwrap(), SpectralParameter::new(vec![1.2, 0.2, -1.4]).unwrap()];
        let pts = [vec![1.3, 0.2, -0.1, 0.9, 0.3, 1.1], vec![2.0, 0.5, 0.4, 1.0, 0.0, 0.8]];
        let rep = harish_chandra_check(3, &mus, &pts, Normalization::CasimirMatched).unwrap();
        assert!(rep.max_residual() < 1e-10, "{rep:?}");
        assert!((rep.conversion + 3.0).abs() < 1e-10, "{}", rep.conversion);
    }

    #[test]
    fn isomorphism_is_flat_minus_rho() {
        for n in [Normalization::Trace, Normalization::Killing, Normalization::CasimirMatched] {
            let r = isomorphism_residual(3, &[0.8, -0.2, -0.6], &[0.1, 0.4, -0.5], n).unwrap();
            assert!(r < 1e-7, "{r}");
        }
    }

    #[test]
    fn spherical_eigenvalue_d3_at_zero() {
        let ev = SphericalEvaluator::new(SpectralParameter::zero(3), Quadrature::HaarMc { samples: 100_000, seed: 3 }).unwrap();
        let grid = vec![vec![0.6, 0.0, -0.6], vec![1.0, 0.1, -1.1]];
        let out = radial_laplacian_check(&ev, &grid, Normalization::CasimirMatched, &Stencil::central4(1e-3), 0.2).unwrap();
        assert!((out.eigenvalue.re + 1.0 / 3.0).abs() < 5e-2, "{out:?}");
    }
}
