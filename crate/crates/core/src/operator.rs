//! First-order differential operators c₀(x) + Σ c_k(x) ∂/∂x_k over a
//! coordinate chart, with coefficients given as jets so that commutators
//! are computed from exact derivatives of the coefficients.
//!
//! On the metric chart (x_k = q_ab, a ≤ b) this module builds the
//! momentum p̂^{ab}, the gl(d,R) generators T_a^b, their trace and
//! traceless parts, and the quadratic kinetic operator.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;
use core::f64::consts::PI;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::jet::{self, Jet};
use crate::math::{c, gauss_legendre, re, C64, I};
use crate::spd::{chart_dim, chart_index, chart_pair, random_spd, rng_for, MetricPoint};

/// Coefficients of a first-order operator at one point.
#[derive(Debug, Clone)]
pub struct OpJets {
    pub scalar: Jet,
    pub vector: Vec<Jet>,
}

type CoeffFn = dyn Fn(&[f64]) -> Result<OpJets> + Send + Sync;
type WaveFn = dyn Fn(&[f64]) -> Result<Jet> + Send + Sync;

#[derive(Clone)]
pub struct FirstOrderOperator {
    n: usize,
    label: String,
    coeffs: Arc<CoeffFn>,
}

impl core::fmt::Debug for FirstOrderOperator {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FirstOrderOperator").field("n", &self.n).field("label", &self.label).finish()
    }
}

impl FirstOrderOperator {
    pub fn new(
        n: usize,
        label: impl Into<String>,
        coeffs: impl Fn(&[f64]) -> Result<OpJets> + Send + Sync + 'static,
    ) -> Self {
        Self { n, label: label.into(), coeffs: Arc::new(coeffs) }
    }

    /// Multiplication by a function.
    pub fn multiplication(
        n: usize,
        label: impl Into<String>,
        f: impl Fn(&[f64]) -> Result<Jet> + Send + Sync + 'static,
    ) -> Self {
        Self::new(n, label, move |x| {
            Ok(OpJets { scalar: f(x)?, vector: vec![Jet::real_constant(n, 0.0); n] })
        })
    }

    pub fn zero(n: usize) -> Self {
        Self::multiplication(n, "0", move |_| Ok(Jet::real_constant(n, 0.0)))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn coefficients(&self, x: &[f64]) -> Result<OpJets> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        (self.coeffs)(x)
    }

    /// Aψ as a jet; the result order is one less than ψ's (and capped by
    /// the coefficient order).
    pub fn apply(&self, psi: &Jet, x: &[f64]) -> Result<Jet> {
        if psi.dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: psi.dim() });
        }
        let co = self.coefficients(x)?;
        let mut out = &co.scalar * psi;
        let needs_derivative = co.vector.iter().any(|v| v.value() != re(0.0) || v.grad().iter().any(|g| *g != re(0.0)));
        if needs_derivative {
            psi.require(1)?;
            out = out.truncate(psi.order() - 1);
            for (k, a) in co.vector.iter().enumerate() {
                if !a.is_zero() {
                    out = &out + &(a * &psi.partial(k)?);
                }
            }
        }
        Ok(out)
    }

    pub fn apply_wave(&self, wf: &WaveFunction, x: &[f64]) -> Result<Jet> {
        self.apply(&wf.eval(x)?, x)
    }

    /// Σ c_i A_i.
    pub fn combination(terms: &[(C64, &FirstOrderOperator)]) -> Self {
        let n = terms.first().map_or(0, |t| t.1.n);
        let label = terms
            .iter()
            .map(|(c, op)| format!("({}{:+}i){}", c.re, c.im, op.label))
            .collect::<Vec<_>>()
            .join(" + ");
        let owned: Vec<(C64, FirstOrderOperator)> = terms.iter().map(|(c, op)| (*c, (*op).clone())).collect();
        Self::new(n, label, move |x| {
            let mut scalar = Jet::real_constant(n, 0.0);
            let mut vector = vec![Jet::real_constant(n, 0.0); n];
            for (cf, op) in &owned {
                let co = op.coefficients(x)?;
                scalar = &scalar + &co.scalar.scale(*cf);
                for k in 0..n {
                    vector[k] = &vector[k] + &co.vector[k].scale(*cf);
                }
            }
            Ok(OpJets { scalar, vector })
        })
    }

    pub fn scaled(&self, k: C64) -> Self {
        Self::combination(&[(k, self)])
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self::combination(&[(re(1.0), self), (re(1.0), other)])
    }

    pub fn minus(&self, other: &Self) -> Self {
        Self::combination(&[(re(1.0), self), (re(-1.0), other)])
    }
}

/// [A, B], computed on coefficients:
/// scalar a·∇b₀ − b·∇a₀, vector a·∇b_k − b·∇a_k.
pub fn commutator(a: &FirstOrderOperator, b: &FirstOrderOperator) -> FirstOrderOperator {
    let n = a.n;
    let (a, b) = (a.clone(), b.clone());
    let label = format!("[{}, {}]", a.label, b.label);
    FirstOrderOperator::new(n, label, move |x| {
        let ca = a.coefficients(x)?;
        let cb = b.coefficients(x)?;
        let directional = Jet::directional;
        let scalar = &directional(&ca.vector, &cb.scalar)? - &directional(&cb.vector, &ca.scalar)?;
        let mut vector = Vec::with_capacity(n);
        for k in 0..n {
            vector.push(&directional(&ca.vector, &cb.vector[k])? - &directional(&cb.vector, &ca.vector[k])?);
        }
        Ok(OpJets { scalar, vector })
    })
}

/// A function germ source: point ↦ jet.
#[derive(Clone)]
pub struct WaveFunction {
    n: usize,
    pub label: String,
    f: Arc<WaveFn>,
}

impl core::fmt::Debug for WaveFunction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("WaveFunction").field("n", &self.n).field("label", &self.label).finish()
    }
}

impl WaveFunction {
    pub fn new(n: usize, label: impl Into<String>, f: impl Fn(&[f64]) -> Result<Jet> + Send + Sync + 'static) -> Self {
        Self { n, label: label.into(), f: Arc::new(f) }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn eval(&self, x: &[f64]) -> Result<Jet> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        (self.f)(x)
    }
}

/// Σ c_i A_i B_i + Σ e_j E_j + κ, applied through jets (value only).
#[derive(Clone, Debug, Default)]
pub struct QuadraticForm {
    pub quadratic: Vec<(C64, FirstOrderOperator, FirstOrderOperator)>,
    pub linear: Vec<(C64, FirstOrderOperator)>,
    pub constant: C64,
}

impl QuadraticForm {
    pub fn push_product(&mut self, c: C64, a: &FirstOrderOperator, b: &FirstOrderOperator) {
        self.quadratic.push((c, a.clone(), b.clone()));
    }

    pub fn push_linear(&mut self, c: C64, a: &FirstOrderOperator) {
        self.linear.push((c, a.clone()));
    }

    /// Value of the operator applied to an order-2 jet.
    pub fn apply(&self, psi: &Jet, x: &[f64]) -> Result<C64> {
        psi.require(2)?;
        let mut acc = psi.value() * self.constant;
        for (cf, a, b) in &self.quadratic {
            acc += a.apply(&b.apply(psi, x)?, x)?.value() * cf;
        }
        for (cf, e) in &self.linear {
            acc += e.apply(psi, x)?.value() * cf;
        }
        Ok(acc)
    }

    pub fn apply_wave(&self, wf: &WaveFunction, x: &[f64]) -> Result<C64> {
        self.apply(&wf.eval(x)?, x)
    }

    pub fn combine(parts: &[(C64, &QuadraticForm)]) -> Self {
        let mut out = Self::default();
        for (k, q) in parts {
            out.quadratic.extend(q.quadratic.iter().map(|(c, a, b)| (c * k, a.clone(), b.clone())));
            out.linear.extend(q.linear.iter().map(|(c, a)| (c * k, a.clone())));
            out.constant += q.constant * k;
        }
        out
    }
}

fn check_index(a: usize, b: usize, d: usize) -> Result<()> {
    if a >= d || b >= d {
        return Err(Error::IndexOutOfRange { a, b, dim: d });
    }
    Ok(())
}

fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// Multiplication by the coordinate q_ab (0-based indices).
pub fn coordinate(a: usize, b: usize, d: usize) -> Result<FirstOrderOperator> {
    check_index(a, b, d)?;
    let n = chart_dim(d);
    let k = chart_index(a, b, d);
    Ok(FirstOrderOperator::multiplication(n, format!("q{}{}", a + 1, b + 1), move |x| {
        Ok(Jet::variable(n, k, x[k]))
    }))
}

/// p̂^{ab} = −i(1 + δ_ab) ∂/∂q_ab.
pub fn momentum(a: usize, b: usize, d: usize) -> Result<FirstOrderOperator> {
    check_index(a, b, d)?;
    let n = chart_dim(d);
    let k = chart_index(a, b, d);
    let coef = c(0.0, -(1.0 + delta(a, b)));
    Ok(FirstOrderOperator::new(n, format!("p{}{}", a + 1, b + 1), move |_| {
        let mut vector = vec![Jet::real_constant(n, 0.0); n];
        vector[k] = Jet::constant(n, coef);
        Ok(OpJets { scalar: Jet::real_constant(n, 0.0), vector })
    }))
}

/// T_a^b = q_ac p̂^{cb} − i(d+1)/2 δ_ab.
pub fn generator_t(a: usize, b: usize, d: usize) -> Result<FirstOrderOperator> {
    check_index(a, b, d)?;
    let n = chart_dim(d);
    let shift = c(0.0, -(d as f64 + 1.0) / 2.0 * delta(a, b));
    Ok(FirstOrderOperator::new(n, format!("T{}^{}", a + 1, b + 1), move |x| {
        let mut vector = vec![Jet::real_constant(n, 0.0); n];
        for cc in 0..d {
            let k = chart_index(cc, b, d);
            let qa = chart_index(a, cc, d);
            let coef = c(0.0, -(1.0 + delta(cc, b)));
            vector[k] = &vector[k] + &Jet::variable(n, qa, x[qa]).scale(coef);
        }
        Ok(OpJets { scalar: Jet::constant(n, shift), vector })
    }))
}

/// 𝕋 = Σ_a T_a^a.
pub fn trace_t(d: usize) -> FirstOrderOperator {
    let ts: Vec<FirstOrderOperator> = (0..d).map(|a| generator_t(a, a, d).expect("in range")).collect();
    let terms: Vec<(C64, &FirstOrderOperator)> = ts.iter().map(|t| (re(1.0), t)).collect();
    FirstOrderOperator::combination(&terms).with_label("TT")
}

/// 𝒯_a^b = T_a^b − δ_ab 𝕋/d.
pub fn traceless_t(a: usize, b: usize, d: usize) -> Result<FirstOrderOperator> {
    let t = generator_t(a, b, d)?;
    let label = format!("calT{}^{}", a + 1, b + 1);
    if a != b {
        return Ok(t.with_label(label));
    }
    Ok(FirstOrderOperator::combination(&[(re(1.0), &t), (re(-1.0 / d as f64), &trace_t(d))]).with_label(label))
}

/// The jet of q^r = det(q)^r on the metric chart.
pub fn det_power_jet(x: &[f64], d: usize, r: C64) -> Result<Jet> {
    let p = MetricPoint::from_chart(d, x.to_vec())?;
    let vars = Jet::variables(p.chart());
    let mut m = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            m.push(vars[chart_index(a, b, d)].clone());
        }
    }
    Ok(jet::det(&m, d).powc(r))
}

/// q^r as a wavefunction.
pub fn det_power(d: usize, r: C64) -> WaveFunction {
    WaveFunction::new(chart_dim(d), format!("q^({}{:+}i)", r.re, r.im), move |x| det_power_jet(x, d, r))
}

/// Multiplication by q^r.
pub fn det_power_operator(d: usize, r: C64) -> FirstOrderOperator {
    FirstOrderOperator::multiplication(chart_dim(d), format!("q^({}{:+}i)", r.re, r.im), move |x| {
        det_power_jet(x, d, r)
    })
}

/// Singlet ψ₀ = q^{−(d+1)/4}, annihilated by every T_a^b.
pub fn singlet(d: usize) -> WaveFunction {
    det_power(d, re(-(d as f64 + 1.0) / 4.0))
}

/// 𝕋-eigenfunction ψ_r = q^{−(d+1)/4 + ir/(2d)} with eigenvalue r.
pub fn trace_eigenfunction(d: usize, r: f64) -> WaveFunction {
    det_power(d, c(-(d as f64 + 1.0) / 4.0, r / (2.0 * d as f64)))
}

/// Kinetic operator T_a^b T_b^a − ½ 𝕋².
pub fn kinetic_operator(d: usize) -> QuadraticForm {
    let mut form = QuadraticForm::default();
    for a in 0..d {
        for b in 0..d {
            form.push_product(re(1.0), &generator_t(a, b, d).expect("in range"), &generator_t(b, a, d).expect("in range"));
        }
    }
    let tt = trace_t(d);
    form.push_product(re(-0.5), &tt, &tt);
    form
}

/// C₂ = ½ 𝒯_a^b 𝒯_b^a.
pub fn casimir(d: usize) -> QuadraticForm {
    let mut form = QuadraticForm::default();
    for a in 0..d {
        for b in 0..d {
            form.push_product(re(0.5), &traceless_t(a, b, d).expect("in range"), &traceless_t(b, a, d).expect("in range"));
        }
    }
    form
}

/// 𝕋².
pub fn trace_squared(d: usize) -> QuadraticForm {
    let mut form = QuadraticForm::default();
    let tt = trace_t(d);
    form.push_product(re(1.0), &tt, &tt);
    form
}

/// 2C₂ + (1/d − 1/2)𝕋², the decomposition of the kinetic operator.
pub fn kinetic_decomposed(d: usize) -> QuadraticForm {
    QuadraticForm::combine(&[(re(2.0), &casimir(d)), (re(1.0 / d as f64 - 0.5), &trace_squared(d))])
}

/// A random order-2 germ with standard normal complex entries.
pub fn random_germ<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Jet {
    let mut z = || c(StandardNormal.sample(rng), StandardNormal.sample(rng));
    let value = z();
    let grad = (0..n).map(|_| z()).collect();
    let mut hess = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in i..n {
            let h = z();
            hess[i * n + j] = h;
            hess[j * n + i] = h;
        }
    }
    Jet::from_parts(value, grad, hess).expect("finite symmetric germ")
}

/// Residual of two operators on a set of germs, relative to their size.
pub fn operator_residual(lhs: &FirstOrderOperator, rhs: &FirstOrderOperator, x: &[f64], germs: &[Jet]) -> Result<f64> {
    let (cl, cr) = (lhs.coefficients(x)?, rhs.coefficients(x)?);
    let value = |co: &OpJets, g: &Jet| -> Result<C64> {
        let mut v = co.scalar.value() * g.value();
        for (k, a) in co.vector.iter().enumerate() {
            if a.value() != re(0.0) {
                g.require(1)?;
                v += a.value() * g.grad()[k];
            }
        }
        Ok(v)
    };
    let mut worst: f64 = 0.0;
    for g in germs {
        let l = value(&cl, g)?;
        let r = value(&cr, g)?;
        let scale = l.norm().max(r.norm()).max(g.value().norm()).max(1.0);
        worst = worst.max((l - r).norm() / scale);
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyResidual {
    pub family: String,
    pub max_residual: f64,
    pub checks: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraReport {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub families: Vec<FamilyResidual>,
    pub failures: Vec<String>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.families.iter().fold(0.0, |m, f| m.max(f.max_residual))
    }
}

struct Family {
    name: &'static str,
    relations: Vec<(FirstOrderOperator, FirstOrderOperator)>,
}

fn algebra_families(d: usize) -> Vec<Family> {
    let t = |a, b| generator_t(a, b, d).expect("in range");
    let ct = |a, b| traceless_t(a, b, d).expect("in range");
    let q = |a, b| coordinate(a, b, d).expect("in range");
    let p = |a, b| momentum(a, b, d).expect("in range");
    let n = chart_dim(d);
    let mut gl = Vec::new();
    for a in 0..d {
        for b in 0..d {
            for cc in 0..d {
                for dd in 0..d {
                    // [T_a^b, T_c^d] = i(δ_ad T_c^b − δ_bc T_a^d)
                    let lhs = commutator(&t(a, b), &t(cc, dd));
                    let rhs = FirstOrderOperator::combination(&[
                        (c(0.0, delta(a, dd)), &t(cc, b)),
                        (c(0.0, -delta(b, cc)), &t(a, dd)),
                    ]);
                    gl.push((lhs, rhs));
                }
            }
        }
    }
    let mut tr = Vec::new();
    for a in 0..d {
        for b in 0..d {
            for cc in 0..d {
                for dd in 0..d {
                    // [T_a^b, q_cd] = −i(δ_bc q_ad + δ_bd q_ca)
                    let lhs = commutator(&t(a, b), &q(cc, dd));
                    let rhs = FirstOrderOperator::combination(&[
                        (c(0.0, -delta(b, cc)), &q(a, dd)),
                        (c(0.0, -delta(b, dd)), &q(cc, a)),
                    ]);
                    tr.push((lhs, rhs));
                    // [T_a^b, p^cd] = i(δ_ac p^bd + δ_ad p^cb)
                    let lhs = commutator(&t(a, b), &p(cc, dd));
                    let rhs = FirstOrderOperator::combination(&[
                        (c(0.0, delta(a, cc)), &p(b, dd)),
                        (c(0.0, delta(a, dd)), &p(cc, b)),
                    ]);
                    tr.push((lhs, rhs));
                }
            }
        }
    }
    let mut sc = Vec::new();
    let tt = trace_t(d);
    let r = c(0.3, 0.7);
    let qr = det_power_operator(d, r);
    for a in 0..d {
        for b in 0..d {
            sc.push((commutator(&ct(a, b), &qr), FirstOrderOperator::zero(n)));
            sc.push((commutator(&ct(a, b), &tt), FirstOrderOperator::zero(n)));
            if a <= b {
                sc.push((commutator(&tt, &q(a, b)), q(a, b).scaled(c(0.0, -2.0))));
            }
        }
    }
    sc.push((commutator(&tt, &qr), qr.scaled(c(0.0, -2.0 * d as f64) * r)));
    vec![
        Family { name: "gl-relations", relations: gl },
        Family { name: "transformation-laws", relations: tr },
        Family { name: "scaling-laws", relations: sc },
    ]
}

/// Checks the gl(d,R) relations, the transformation laws of q and p and
/// the scaling laws of 𝕋 and 𝒯 at `trials` random points.
pub fn verify_algebra(d: usize, trials: usize, tol: f64, seed: u64) -> Result<AlgebraReport> {
    if d == 0 {
        return Err(Error::Invalid("dimension must be at least 1".into()));
    }
    let n = chart_dim(d);
    let families = algebra_families(d);
    let mut out: Vec<FamilyResidual> =
        families.iter().map(|f| FamilyResidual { family: f.name.into(), max_residual: 0.0, checks: 0 }).collect();
    let mut failures = Vec::new();
    for trial in 0..trials {
        let mut rng = rng_for(seed, 1, trial as u64);
        let point = random_spd(&mut rng, d, 0.5, false);
        let germs: Vec<Jet> = (0..5).map(|_| random_germ(&mut rng, n)).collect();
        for (fam, res) in families.iter().zip(out.iter_mut()) {
            for (i, (lhs, rhs)) in fam.relations.iter().enumerate() {
                match operator_residual(lhs, rhs, point.chart(), &germs) {
                    Ok(r) => {
                        res.max_residual = res.max_residual.max(r);
                        res.checks += 1;
                        if !(r < tol) && failures.len() < 32 {
                            failures.push(format!("{} #{i} ({}) trial {trial}: residual {r:e}", fam.name, lhs.label()));
                        }
                    }
                    Err(e) => failures.push(format!("{} #{i} trial {trial}: {e}", fam.name)),
                }
            }
        }
    }
    Ok(AlgebraReport { dim: d, trials, seed, tolerance: tol, families: out, failures })
}

/// The d = 1 eigenfunction φ_r(q) = q^{ir}/√(2πq) of t̂ = −i(q d/dq + ½).
pub fn d1_wavefunction(r: f64) -> WaveFunction {
    WaveFunction::new(1, format!("phi_{r}"), move |x| {
        if !(x[0] > 0.0) {
            return Err(Error::NotPositiveDefinite { index: 1, value: x[0] });
        }
        let q = Jet::variable(1, 0, x[0]);
        Ok(q.powc(c(-0.5, r)).scale(re(1.0 / (2.0 * PI).sqrt())))
    })
}

/// t̂ = −i(q d/dq + ½), equal to T_1^1 / 2 on the d = 1 chart.
pub fn dilatation() -> FirstOrderOperator {
    generator_t(0, 0, 1).expect("in range").scaled(re(0.5)).with_label("t")
}

/// Window-normalized overlap ∫ φ_r* φ_s w(ln q) dq / ∫ |φ_r|² w(ln q) dq
/// with w(t) = exp(−t²/(2σ²)); tends to exp(−σ²(r−s)²/2).
pub fn d1_overlap(r: f64, s: f64, sigma: f64) -> f64 {
    // in t = ln q: dq |φ|² = dt/(2π), so the integrand is e^{i(s−r)t} w(t)/(2π)
    let (nodes, weights) = gauss_legendre(64);
    let panels = 64;
    let (a, b) = (-12.0 * sigma, 12.0 * sigma);
    let hpan = (b - a) / panels as f64;
    let mut num = C64::new(0.0, 0.0);
    let mut den = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * hpan;
        for (x, w) in nodes.iter().zip(&weights) {
            let t = mid + 0.5 * hpan * x;
            let win = (-t * t / (2.0 * sigma * sigma)).exp() * w * 0.5 * hpan;
            let q = t.exp();
            let phi_r = d1_value(r, q);
            let phi_s = d1_value(s, q);
            // dq = q dt
            num += phi_r.conj() * phi_s * win * q;
            den += phi_r.norm_sqr() * win * q;
        }
    }
    (num / den).re
}

fn d1_value(r: f64, q: f64) -> C64 {
    (I * r * q.ln()).exp() / (2.0 * PI * q).sqrt()
}

/// φ_r together with the worse of its normalization and eigenvalue
/// residuals at a few sample points.
pub fn d1_toy(r: f64) -> Result<(WaveFunction, f64)> {
    let wf = d1_wavefunction(r);
    let t = dilatation();
    let mut worst = (d1_overlap(r, r, 2.0) - 1.0).abs();
    for &q in &[0.1, 0.5, 1.0, 3.0, 40.0] {
        let psi = wf.eval(&[q])?;
        let tpsi = t.apply(&psi, &[q])?;
        worst = worst.max((tpsi.value() - psi.value() * r).norm() / psi.value().norm());
    }
    Ok((wf, worst))
}

/// Chart coordinates listed as (a, b) pairs, for reports.
pub fn chart_labels(d: usize) -> Vec<(usize, usize)> {
    (0..chart_dim(d)).map(|k| chart_pair(k, d)).collect()
}
