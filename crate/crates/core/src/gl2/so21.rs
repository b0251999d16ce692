//! so(2,1) generators L₀, L₁, L₂ and the ladders L± = L₁ ± iL₂, both in
//! the (χ, θ) chart and through the traceless generators on the metric
//! chart (L₁ = 𝒯₁¹, L₂ = ½(𝒯₁² + 𝒯₂¹), L₀ = ½(𝒯₁² − 𝒯₂¹)).

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::math::{c, re, C64, I};
use crate::operator::{casimir, traceless_t, FirstOrderOperator, OpJets, QuadraticForm};

/// The three generators and two ladders of one chart.
#[derive(Debug, Clone)]
pub struct So21 {
    pub l0: FirstOrderOperator,
    pub l1: FirstOrderOperator,
    pub l2: FirstOrderOperator,
    pub raise: FirstOrderOperator,
    pub lower: FirstOrderOperator,
}

impl So21 {
    fn from_generators(l0: FirstOrderOperator, l1: FirstOrderOperator, l2: FirstOrderOperator) -> Self {
        let raise = FirstOrderOperator::combination(&[(re(1.0), &l1), (I, &l2)]).with_label("L+");
        let lower = FirstOrderOperator::combination(&[(re(1.0), &l1), (-I, &l2)]).with_label("L-");
        Self { l0, l1, l2, raise, lower }
    }

    /// C₂ = L₁² + L₂² − L₀².
    pub fn casimir(&self) -> QuadraticForm {
        let mut q = QuadraticForm::default();
        q.push_product(re(1.0), &self.l1, &self.l1);
        q.push_product(re(1.0), &self.l2, &self.l2);
        q.push_product(re(-1.0), &self.l0, &self.l0);
        q
    }

    /// L₋L₊ − C − L₀(L₀ + 1) with a caller-supplied Casimir; zero as an
    /// operator identity.
    pub fn enveloping_defect(&self, c2: &QuadraticForm) -> QuadraticForm {
        let mut q = QuadraticForm::default();
        q.push_product(re(1.0), &self.lower, &self.raise);
        q.push_product(re(-1.0), &self.l0, &self.l0);
        q.push_linear(re(-1.0), &self.l0);
        QuadraticForm::combine(&[(re(1.0), &q), (re(-1.0), c2)])
    }

    /// L₋L₊ − C + L₀(L₀ + 1): the sign-flipped form, which does not vanish.
    pub fn enveloping_defect_flipped(&self, c2: &QuadraticForm) -> QuadraticForm {
        let mut q = QuadraticForm::default();
        q.push_product(re(1.0), &self.lower, &self.raise);
        q.push_product(re(1.0), &self.l0, &self.l0);
        q.push_linear(re(1.0), &self.l0);
        QuadraticForm::combine(&[(re(1.0), &q), (re(-1.0), c2)])
    }
}

fn chi_theta_jets(x: &[f64]) -> Result<(Jet, Jet)> {
    if !(x[0] > 0.0) {
        return Err(Error::Domain(x[0]));
    }
    let v = Jet::variables(x);
    Ok((v[0].clone(), v[1].clone()))
}

/// Generators on the (χ, θ) chart:
/// L₀ = −i∂θ, L₁ = −i(cos θ ∂χ − coth χ sin θ ∂θ),
/// L₂ = −i(sin θ ∂χ + coth χ cos θ ∂θ).
pub fn so21_generators() -> So21 {
    let zero = || Jet::real_constant(2, 0.0);
    let l0 = FirstOrderOperator::new(2, "L0", move |x| {
        chi_theta_jets(x)?;
        Ok(OpJets { scalar: zero(), vector: vec![zero(), Jet::constant(2, c(0.0, -1.0))] })
    });
    let l1 = FirstOrderOperator::new(2, "L1", move |x| {
        let (chi, th) = chi_theta_jets(x)?;
        let coth = &chi.cosh() / &chi.sinh();
        Ok(OpJets {
            scalar: zero(),
            vector: vec![th.cos().scale(c(0.0, -1.0)), (&coth * &th.sin()).scale(I)],
        })
    });
    let l2 = FirstOrderOperator::new(2, "L2", move |x| {
        let (chi, th) = chi_theta_jets(x)?;
        let coth = &chi.cosh() / &chi.sinh();
        Ok(OpJets {
            scalar: zero(),
            vector: vec![th.sin().scale(c(0.0, -1.0)), (&coth * &th.cos()).scale(c(0.0, -1.0))],
        })
    });
    So21::from_generators(l0, l1, l2)
}

/// The same algebra realized on the d = 2 metric chart.
pub fn so21_metric_chart() -> So21 {
    let t = |a, b| traceless_t(a, b, 2).expect("in range");
    let l1 = t(0, 0).with_label("L1");
    let l2 = FirstOrderOperator::combination(&[(re(0.5), &t(0, 1)), (re(0.5), &t(1, 0))]).with_label("L2");
    let l0 = FirstOrderOperator::combination(&[(re(0.5), &t(0, 1)), (re(-0.5), &t(1, 0))]).with_label("L0");
    So21::from_generators(l0, l1, l2)
}

/// ½𝒯_a^b𝒯_b^a on the metric chart.
pub fn metric_casimir() -> QuadraticForm {
    casimir(2)
}

/// (χ(q), θ(q)) as jets on the metric chart, with cosh χ = (q₁₁+q₂₂)/(2√q)
/// and e^{iθ} = (V + iW)/√(V² + W²).
pub fn chi_theta_of_metric(x: &[f64]) -> Result<(Jet, Jet)> {
    let p = crate::spd::MetricPoint::from_chart(2, x.to_vec())?;
    let v = Jet::variables(p.chart());
    let (q11, q12, q22) = (&v[0], &v[1], &v[2]);
    let det = &(q11 * q22) - &(q12 * q12);
    let big_u = (q11 + q22).scale(re(0.5));
    let big_v = (q11 - q22).scale(re(0.5));
    let u = &big_u / &det.sqrt();
    let uv = u.value().re;
    if !(uv > 1.0 + 1e-12) {
        return Err(Error::Domain(uv));
    }
    let r = uv * uv - 1.0;
    let chi = u.compose(re(uv.acosh()), re(1.0 / r.sqrt()), re(-uv / (r * r.sqrt())));
    let z = &big_v + &q12.scale(I);
    let mod2 = &(&big_v * &big_v) + &(q12 * q12);
    let i_theta = &z.ln() - &mod2.ln().scale(re(0.5));
    Ok((chi, i_theta.scale(-I)))
}

/// Pulls a (χ, θ) germ back to the metric chart.
pub fn pull_back(germ: &Jet, x: &[f64]) -> Result<Jet> {
    let (chi, theta) = chi_theta_of_metric(x)?;
    let fh = germ.hess().to_vec();
    Ok(Jet::compose_multi(germ.value(), germ.grad(), &fh, &[chi, theta]))
}

/// Residuals |L_k F − (pushed L_k)(F∘π)| for k = 0, 1, 2 at one metric
/// point and one germ on the (χ, θ) chart.
pub fn pushforward_residuals(x: &[f64], germ: &Jet) -> Result<[f64; 3]> {
    let (chi, theta) = chi_theta_of_metric(x)?;
    let point = [chi.value().re, theta.value().re];
    let hyper = so21_generators();
    let metric = so21_metric_chart();
    let pulled = pull_back(germ, x)?;
    let mut out = [0.0; 3];
    let pairs: [(&FirstOrderOperator, &FirstOrderOperator); 3] =
        [(&hyper.l0, &metric.l0), (&hyper.l1, &metric.l1), (&hyper.l2, &metric.l2)];
    for (k, (h, m)) in pairs.iter().enumerate() {
        let a = h.apply(germ, &point)?.value();
        let b = m.apply(&pulled, x)?.value();
        out[k] = (a - b).norm() / a.norm().max(b.norm()).max(1.0);
    }
    Ok(out)
}

/// Max residual of the so(2,1) relations [L₀,L₁] = iL₂, [L₀,L₂] = −iL₁,
/// [L₁,L₂] = −iL₀, [L₀,L±] = ±L±, [L₊,L₋] = −2L₀ on the given germs.
pub fn algebra_residuals(alg: &So21, x: &[f64], germs: &[Jet]) -> Result<Vec<(&'static str, f64)>> {
    use crate::operator::{commutator, operator_residual};
    let cases: [(&str, FirstOrderOperator, FirstOrderOperator); 6] = [
        ("[L0,L1]=iL2", commutator(&alg.l0, &alg.l1), alg.l2.scaled(I)),
        ("[L0,L2]=-iL1", commutator(&alg.l0, &alg.l2), alg.l1.scaled(-I)),
        ("[L1,L2]=-iL0", commutator(&alg.l1, &alg.l2), alg.l0.scaled(-I)),
        ("[L0,L+]=L+", commutator(&alg.l0, &alg.raise), alg.raise.clone()),
        ("[L0,L-]=-L-", commutator(&alg.l0, &alg.lower), alg.lower.scaled(re(-1.0))),
        ("[L+,L-]=-2L0", commutator(&alg.raise, &alg.lower), alg.l0.scaled(re(-2.0))),
    ];
    let mut out = Vec::with_capacity(cases.len());
    for (name, lhs, rhs) in cases.iter() {
        out.push((*name, operator_residual(lhs, rhs, x, germs)?));
    }
    Ok(out)
}

/// e^{imθ} f(χ) under L₀ returns m; a direct check for tests and reports.
pub fn l0_on_mode(m: i32, chi: f64, theta: f64) -> Result<C64> {
    let l0 = so21_generators().l0;
    let v = Jet::variables(&[chi, theta]);
    let psi = &v[1].scale(c(0.0, m as f64)).exp() * &v[0].cosh();
    let out = l0.apply(&psi, &[chi, theta])?;
    Ok(out.value() / psi.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::random_germ;
    use crate::spd::rng_for;

    #[test]
    fn hyperbolic_chart_algebra() {
        let alg = so21_generators();
        let mut rng = rng_for(2, 0, 0);
        let germs: Vec<Jet> = (0..4).map(|_| random_germ(&mut rng, 2)).collect();
        for (name, r) in algebra_residuals(&alg, &[0.7, 1.9], &germs).unwrap() {
            assert!(r < 1e-12, "{name}: {r}");
        }
        assert!(so21_generators().l1.coefficients(&[0.0, 1.0]).is_err());
    }

    #[test]
    fn metric_chart_algebra() {
        let alg = so21_metric_chart();
        let mut rng = rng_for(2, 0, 1);
        let germs: Vec<Jet> = (0..4).map(|_| random_germ(&mut rng, 3)).collect();
        for (name, r) in algebra_residuals(&alg, &[1.4, 0.3, 0.8], &germs).unwrap() {
            assert!(r < 1e-12, "{name}: {r}");
        }
    }

    #[test]
    fn pushforward_matches() {
        let mut rng = rng_for(2, 0, 2);
        let germ = random_germ(&mut rng, 2);
        let r = pushforward_residuals(&[1.4, 0.3, 0.8], &germ).unwrap();
        assert!(r.iter().all(|x| *x < 1e-10), "{r:?}");
    }

    #[test]
    fn l0_counts_m() {
        for m in -2..3 {
            let e = l0_on_mode(m, 0.9, 0.4).unwrap();
            assert!((e - re(m as f64)).norm() < 1e-14);
        }
    }

    #[test]
    fn enveloping_identity() {
        let alg = so21_generators();
        let mut rng = rng_for(2, 0, 3);
        let x = [0.9, 0.4];
        for _ in 0..3 {
            let g = random_germ(&mut rng, 2);
            let d = alg.enveloping_defect(&alg.casimir()).apply(&g, &x).unwrap();
            assert!(d.norm() < 1e-12);
            let f = alg.enveloping_defect_flipped(&alg.casimir()).apply(&g, &x).unwrap();
            assert!(f.norm() > 1e-3);
        }
    }
}
