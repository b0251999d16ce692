//! Worked examples for every public operation, checked against hand
//! computations or independent formulas.

use std::f64::consts::{E, LN_2};

use rand::Rng;

use symspace_core::decomp::{cartan, iwasawa, polar};
use symspace_core::gl2::basis::{
    basis_compact, compact_jet, ladder_apply, ladder_sample_points, noncompact_jet, BasisLabelCompact,
    BasisLabelNoncompact, LadderDirection, NoncompactProfile, Parity,
};
use symspace_core::gl2::conical::{conical_p, mehler_integral, ConicalEvaluator};
use symspace_core::gl2::mehler_fock::{relative_l2, MehlerFock, MehlerFockConfig};
use symspace_core::gl2::so21::so21_metric_chart;
use symspace_core::linalg::Matrix;
use symspace_core::math::{c, re, C64};
use symspace_core::operator::{
    commutator, coordinate, d1_overlap, d1_toy, det_power, generator_t, kinetic_decomposed, kinetic_operator, momentum,
    random_germ, singlet, trace_eigenfunction, trace_t, traceless_t, verify_algebra,
};
use symspace_core::roots::{dual_norm_sq, rho, weyl_orbit, Normalization, SpectralParameter};
use symspace_core::spd::{
    act, haar_orthogonal, measure_density, random_orthogonal, random_sl, random_spd, rng_for, GroupElement, HaarSampler, MetricPoint,
};
use symspace_core::spherical::{Quadrature, SphericalEvaluator};

fn mat(rows: &[&[f64]]) -> Matrix {
    Matrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn max_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.sub(b).norm_max()
}

// ---- metric points and the group action

#[test]
fn act_by_identity_and_diagonal() {
    let q = random_spd(&mut rng_for(1, 0, 0), 3, 0.5, false);
    let same = act(&GroupElement::identity(3), &q).unwrap();
    assert!(max_diff(&same.to_matrix(), &q.to_matrix()) < 1e-15);

    let g = GroupElement::special(Matrix::diagonal(&[2.0, 0.5])).unwrap();
    let out = act(&g, &MetricPoint::identity(2)).unwrap();
    assert!(max_diff(&out.to_matrix(), &Matrix::diagonal(&[4.0, 0.25])) < 1e-15);
    assert!((out.det() - 1.0).abs() < 1e-15);
}

#[test]
fn act_preserves_unit_determinant() {
    for k in 0..20 {
        let g = random_sl(&mut rng_for(2, 0, k), 3, 0.6);
        let out = act(&g, &MetricPoint::identity(3)).unwrap();
        assert!((out.det() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn density_examples() {
    assert_eq!(measure_density(&MetricPoint::identity(2)).unwrap(), 1.0);
    let q = MetricPoint::from_matrix(&Matrix::diagonal(&[4.0, 1.0])).unwrap();
    assert!((measure_density(&q).unwrap() - 0.125).abs() < 1e-15);
}

#[test]
fn haar_examples() {
    // O(1) = {±1}
    let mut s = HaarSampler::new(5, 0);
    let n = 10_000;
    let plus = (0..n).filter(|_| haar_orthogonal(&mut s, 1).matrix()[(0, 0)] > 0.0).count();
    assert!((plus as f64 / n as f64 - 0.5).abs() < 0.02);

    // mean of O₁₁ on O(2) within 3σ of zero; Var O₁₁ = 1/2
    let mut s = HaarSampler::new(6, 0);
    let mean = (0..n).map(|_| haar_orthogonal(&mut s, 2).matrix()[(0, 0)]).sum::<f64>() / n as f64;
    assert!(mean.abs() < 3.0 * (0.5 / n as f64).sqrt(), "{mean}");

    let mut s = HaarSampler::new(7, 0);
    for _ in 0..200 {
        let o = haar_orthogonal(&mut s, 3);
        let m = o.matrix();
        assert!(max_diff(&(m * &m.transpose()), &Matrix::identity(3)) < 1e-12);
    }
}

// ---- operator algebra

#[test]
fn canonical_commutators() {
    let d = 2;
    let x = random_spd(&mut rng_for(3, 0, 0), d, 0.5, false).chart().to_vec();
    let g = random_germ(&mut rng_for(3, 1, 0), 3);
    let apply = |a: (usize, usize), b: (usize, usize)| {
        commutator(&momentum(a.0, a.1, d).unwrap(), &coordinate(b.0, b.1, d).unwrap()).apply(&g, &x).unwrap().value()
    };
    assert!((apply((0, 0), (0, 0)) - g.value() * c(0.0, -2.0)).norm() < 1e-12);
    assert!((apply((0, 1), (0, 1)) - g.value() * c(0.0, -1.0)).norm() < 1e-12);
    assert!(apply((0, 1), (0, 0)).norm() < 1e-12);
}

#[test]
fn generator_examples() {
    for d in [2usize, 3] {
        let psi0 = singlet(d);
        for k in 0..50 {
            let x = random_spd(&mut rng_for(4, d as u64, k), d, 0.5, false).chart().to_vec();
            let j = psi0.eval(&x).unwrap();
            for a in 0..d {
                for b in 0..d {
                    let t = generator_t(a, b, d).unwrap().apply(&j, &x).unwrap();
                    assert!(t.value().norm() < 1e-10 * j.value().norm());
                }
            }
        }
    }
    // T q^r = −2i(r + (d+1)/4) δ q^r
    let (d, r) = (3, c(0.3, 0.7));
    let x = random_spd(&mut rng_for(4, 9, 0), d, 0.5, false).chart().to_vec();
    let j = det_power(d, r).eval(&x).unwrap();
    let want = c(0.0, -2.0) * (r + 1.0);
    for a in 0..d {
        for b in 0..d {
            let v = generator_t(a, b, d).unwrap().apply(&j, &x).unwrap().value();
            let expect = if a == b { j.value() * want } else { C64::new(0.0, 0.0) };
            assert!((v - expect).norm() < 1e-10 * j.value().norm());
        }
    }
    let psi = trace_eigenfunction(d, 1.7).eval(&x).unwrap();
    let v = trace_t(d).apply(&psi, &x).unwrap().value();
    assert!((v - psi.value() * 1.7).norm() < 1e-10 * psi.value().norm());
}

#[test]
fn commutator_examples() {
    let d = 2;
    let x = random_spd(&mut rng_for(5, 0, 0), d, 0.5, false).chart().to_vec();
    let germs: Vec<_> = (0..5).map(|k| random_germ(&mut rng_for(5, 1, k), 3)).collect();
    let t = |a, b| generator_t(a, b, d).unwrap();
    let lhs = commutator(&t(0, 0), &t(0, 1));
    for g in &germs {
        let a = lhs.apply(g, &x).unwrap().value();
        let b = t(0, 1).apply(g, &x).unwrap().value() * c(0.0, -1.0);
        assert!((a - b).norm() < 1e-12 * b.norm().max(1.0));
        let s = commutator(&trace_t(d), &coordinate(0, 1, d).unwrap()).apply(g, &x).unwrap().value();
        let q01 = coordinate(0, 1, d).unwrap().apply(g, &x).unwrap().value();
        assert!((s - q01 * c(0.0, -2.0)).norm() < 1e-12 * q01.norm().max(1.0));
        let z = commutator(&t(1, 0), &t(1, 0)).apply(g, &x).unwrap().value();
        assert_eq!(z, C64::new(0.0, 0.0));
    }
}

#[test]
fn verify_algebra_d1_to_d3() {
    for d in 1..=3 {
        let rep = verify_algebra(d, 100, 1e-9, 11).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.max_residual() < 1e-9);
    }
}

#[test]
fn kinetic_examples() {
    // d = 2: kinetic = 2C₂ on germs
    let k2 = kinetic_operator(2);
    let dec = kinetic_decomposed(2);
    let x = random_spd(&mut rng_for(6, 0, 0), 2, 0.5, false).chart().to_vec();
    for k in 0..20 {
        let g = random_germ(&mut rng_for(6, 1, k), 3);
        let a = k2.apply(&g, &x).unwrap();
        let b = dec.apply(&g, &x).unwrap();
        assert!((a - b).norm() < 1e-9 * a.norm().max(1.0));
    }
    // ψ_{r,s,m}: eigenvalue 2(¼ + s²)
    let label = BasisLabelCompact::new(0.4, 1.3, 1).unwrap();
    let ev = ConicalEvaluator::default();
    for x in ladder_sample_points(4, 2) {
        let j = compact_jet(&label, &x, &ev).unwrap();
        let v = k2.apply(&j, &x).unwrap();
        assert!((v - j.value() * 2.0 * label.lambda()).norm() < 1e-6 * j.value().norm());
    }
    // d = 3, q^r: T_a^b q^r = κδ q^r with κ = −2i(r+1), so Σ T_a^b T_b^a = 3κ², 𝕋 = 3κ
    let r = c(0.2, -0.5);
    let x3 = random_spd(&mut rng_for(6, 3, 0), 3, 0.5, false).chart().to_vec();
    let j = det_power(3, r).eval(&x3).unwrap();
    let kappa = c(0.0, -2.0) * (r + 1.0);
    let want = kappa * kappa * 3.0 - kappa * kappa * 4.5;
    let v = kinetic_operator(3).apply(&j, &x3).unwrap();
    assert!((v - j.value() * want).norm() < 1e-9 * (j.value() * want).norm());
}

#[test]
fn d1_examples() {
    assert!((d1_overlap(0.7, 0.7, 2.0) - 1.0).abs() < 1e-6);
    let sigma = 2.0;
    assert!(d1_overlap(0.0, 5.0 / sigma, sigma).abs() < 1e-3);
    let (_, res) = d1_toy(1.3).unwrap();
    assert!(res < 1e-6);
}

// ---- roots

#[test]
fn rho_and_norms() {
    assert_eq!(rho(2).entries(), &[0.5, -0.5]);
    assert_eq!(rho(3).entries(), &[1.0, 0.0, -1.0]);
    assert_eq!(rho(4).entries(), &[1.5, 0.5, -0.5, -1.5]);
    assert_eq!(weyl_orbit(&SpectralParameter::zero(3)).len(), 1);
    assert_eq!(weyl_orbit(&SpectralParameter::rank_one(0.4)).len(), 2);
    assert_eq!(weyl_orbit(&SpectralParameter::new(vec![0.9, 0.2, -1.1]).unwrap()).len(), 6);
    assert!((dual_norm_sq(&rho(2), Normalization::CasimirMatched) - 0.25).abs() < 1e-15);
    assert!((dual_norm_sq(&rho(3), Normalization::CasimirMatched) - 1.0 / 3.0).abs() < 1e-15);
    assert!((dual_norm_sq(&rho(3), Normalization::Killing) - 1.0 / 3.0).abs() < 1e-15);
}

// ---- decompositions

#[test]
fn iwasawa_examples() {
    let o = haar_orthogonal(&mut HaarSampler::new(8, 0), 3);
    let o = if o.det() < 0.0 {
        let mut m = o.matrix().clone();
        m.negate_column(0);
        GroupElement::special(m).unwrap()
    } else {
        GroupElement::special(o.matrix().clone()).unwrap()
    };
    let f = iwasawa(&o).unwrap();
    assert!(f.h.entries().iter().all(|h| h.abs() < 1e-12));
    assert!(max_diff(f.n.matrix(), &Matrix::identity(3)) < 1e-12);

    let f = iwasawa(&GroupElement::special(mat(&[&[1.0, 0.0], &[1.0, 1.0]])).unwrap()).unwrap();
    let r = 0.5f64.sqrt();
    assert!(max_diff(f.o.matrix(), &mat(&[&[r, -r], &[r, r]])) < 1e-14);
    assert!((f.h.entries()[0] - 0.5 * LN_2).abs() < 1e-14 && (f.h.entries()[1] + 0.5 * LN_2).abs() < 1e-14);
    assert!(max_diff(f.n.matrix(), &mat(&[&[1.0, 0.5], &[0.0, 1.0]])) < 1e-14);

    let f = iwasawa(&GroupElement::special(Matrix::diagonal(&[E, 1.0 / E])).unwrap()).unwrap();
    assert!(max_diff(f.o.matrix(), &Matrix::identity(2)) < 1e-15);
    assert!((f.h.entries()[0] - 1.0).abs() < 1e-15);
}

#[test]
fn cartan_and_polar_examples() {
    let f = cartan(&GroupElement::identity(3)).unwrap();
    assert!(f.aplus.entries().iter().all(|a| a.abs() < 1e-15));
    let f = cartan(&GroupElement::special(Matrix::diagonal(&[3.0, 1.0 / 3.0])).unwrap()).unwrap();
    assert!((f.aplus.entries()[0] - 3f64.ln()).abs() < 1e-14);
    assert!((f.aplus.entries()[1] + 3f64.ln()).abs() < 1e-14);

    let f = polar(&MetricPoint::identity(2)).unwrap();
    assert!(f.a.entries().iter().all(|a| a.abs() < 1e-15));
    let f = polar(&MetricPoint::from_matrix(&Matrix::diagonal(&[4.0, 0.25])).unwrap()).unwrap();
    let mut a = f.a.entries().to_vec();
    a.sort_by(|x, y| y.total_cmp(x));
    assert!((a[0] - LN_2).abs() < 1e-15 && (a[1] + LN_2).abs() < 1e-15);
}

#[test]
fn cartan_of_spd_matches_polar() {
    for k in 0..20 {
        // q = o e^{2a} õ with known a
        let mut rng = rng_for(9, 0, k);
        let o = random_orthogonal(&mut rng, 3, true);
        let raw: Vec<f64> = (0..3).map(|_| rng.random_range(-0.8..0.8)).collect();
        let mean = raw.iter().sum::<f64>() / 3.0;
        let a: Vec<f64> = raw.iter().map(|x| x - mean).collect();
        let e2a = Matrix::diagonal(&a.iter().map(|x| (2.0 * x).exp()).collect::<Vec<_>>());
        let qm = &(o.matrix() * &e2a) * &o.matrix().transpose();
        let q = MetricPoint::from_matrix(&qm.add(&qm.transpose()).scale(0.5)).unwrap();
        let g = GroupElement::normalized(q.to_matrix()).unwrap();
        let cf = cartan(&g).unwrap();
        let mut two_a: Vec<f64> = a.iter().map(|x| 2.0 * x).collect();
        two_a.sort_by(|x, y| y.total_cmp(x));
        let mut pa: Vec<f64> = polar(&q).unwrap().a.entries().iter().map(|x| 2.0 * x).collect();
        pa.sort_by(|x, y| y.total_cmp(x));
        for i in 0..3 {
            assert!((cf.aplus.entries()[i] - two_a[i]).abs() < 1e-10);
            assert!((pa[i] - two_a[i]).abs() < 1e-10);
        }
        // O₁ and O₂ᵀ agree up to column signs
        let prod = &cf.o1.matrix().transpose() * &cf.o2.matrix().transpose();
        for i in 0..3 {
            assert!((prod[(i, i)].abs() - 1.0).abs() < 1e-8);
        }
    }
}

// ---- spherical functions

#[test]
fn spherical_examples() {
    let ev = SphericalEvaluator::new(SpectralParameter::rank_one(1.0), Quadrature::So2Trapezoid { nodes: 512 }).unwrap();
    assert_eq!(ev.eval(&GroupElement::identity(2)).unwrap().value, c(1.0, 0.0));
    let cev = ConicalEvaluator::default();
    for chi in [0.3, 1.0, 2.5] {
        let phi = ev.eval_cartan(&[chi / 2.0, -chi / 2.0]).unwrap().value;
        assert!((phi - re(conical_p(1.0, 0, chi.cosh(), &cev).unwrap())).norm() < 1e-5);
    }
    // |φ| ≤ 1 + 3σ under Monte Carlo at d = 3
    let mc = SphericalEvaluator::new(SpectralParameter::new(vec![0.5, 0.3, -0.8]).unwrap(), Quadrature::HaarMc { samples: 2000, seed: 4 })
        .unwrap();
    for k in 0..100 {
        let g = random_sl(&mut rng_for(10, 0, k), 3, 0.5);
        let v = mc.eval(&g).unwrap();
        assert!(v.value.norm() <= 1.0 + 3.0 * v.error + 1e-12);
    }
}

// ---- d = 2 explicit apparatus

#[test]
fn conical_examples() {
    let ev = ConicalEvaluator::default();
    for s in [0.5, 1.0, 2.0] {
        assert!((conical_p(s, 0, 1.0, &ev).unwrap() - 1.0).abs() < 1e-14);
        assert!((conical_p(s, 0, 2.0f64.cosh(), &ev).unwrap() - mehler_integral(s, 2.0).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn compact_basis_examples() {
    // on diag(e^x, e^{−x}) the argument is cosh x and the phase is 1
    let label = BasisLabelCompact::new(0.0, 0.8, 0).unwrap();
    let x = 0.9f64;
    let q = MetricPoint::from_matrix(&Matrix::diagonal(&[x.exp(), (-x).exp()])).unwrap();
    let v = basis_compact(&label, &q).unwrap();
    let p = conical_p(0.8, 0, x.cosh(), &ConicalEvaluator::default()).unwrap();
    assert!((v - re(p)).norm() < 1e-10, "{v} vs {p}");

    // 𝕋 eigenvalue r
    let label = BasisLabelCompact::new(0.7, 1.1, -1).unwrap();
    let ev = ConicalEvaluator::default();
    for k in 0..20 {
        let x = random_spd(&mut rng_for(12, 0, k), 2, 0.5, false).chart().to_vec();
        let j = compact_jet(&label, &x, &ev).unwrap();
        let v = trace_t(2).apply(&j, &x).unwrap().value();
        assert!((v - j.value() * 0.7).norm() < 1e-8 * j.value().norm());
    }
}

#[test]
fn ladder_examples() {
    let pts = ladder_sample_points(8, 3);
    let fit = ladder_apply(&BasisLabelCompact::new(0.1, 1.0, 0).unwrap(), LadderDirection::Raise, &pts).unwrap();
    assert!((fit.magnitude - 1.118034).abs() < 1e-5);
    let fit = ladder_apply(&BasisLabelCompact::new(0.1, 0.5, 0).unwrap(), LadderDirection::Raise, &pts).unwrap();
    assert!((fit.magnitude - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-5);

    // L₋L₊ on an m = 0 state is ¼ + s² (C₂ + L₀(L₀+1) with L₀ = 0)
    let s = 1.4;
    let label = BasisLabelCompact::new(0.3, s, 0).unwrap();
    let alg = so21_metric_chart();
    let ev = ConicalEvaluator::default();
    for x in ladder_sample_points(4, 8) {
        let j = compact_jet(&label, &x, &ev).unwrap();
        let mut form = symspace_core::operator::QuadraticForm::default();
        form.push_product(re(1.0), &alg.lower, &alg.raise);
        let v = form.apply(&j, &x).unwrap();
        assert!((v - j.value() * (0.25 + s * s)).norm() < 1e-6 * j.value().norm());
    }
}

#[test]
fn noncompact_examples() {
    let label = BasisLabelNoncompact::new(0.2, 0.9, 1.3).unwrap();
    let prof = NoncompactProfile::new(label.s, label.t, Parity::Odd);
    let big = traceless_t(0, 0, 2).unwrap();
    for k in 0..10 {
        let x = random_spd(&mut rng_for(13, 0, k), 2, 0.5, false).chart().to_vec();
        let j = noncompact_jet(&label, &prof, &x).unwrap();
        let v = big.apply(&j, &x).unwrap().value();
        assert!((v - j.value() * 1.3).norm() < 1e-8 * j.value().norm());
    }
    // [𝒯, q₁₁] = −iq₁₁, [𝒯, q₂₂] = iq₂₂, [𝒯, q₁₂] = 0
    let x = random_spd(&mut rng_for(13, 1, 0), 2, 0.5, false).chart().to_vec();
    let g = random_germ(&mut rng_for(13, 2, 0), 3);
    for ((a, b), k) in [((0, 0), c(0.0, -1.0)), ((1, 1), c(0.0, 1.0)), ((0, 1), c(0.0, 0.0))] {
        let q = coordinate(a, b, 2).unwrap();
        let lhs = commutator(&big, &q).apply(&g, &x).unwrap().value();
        let rhs = q.apply(&g, &x).unwrap().value() * k;
        assert!((lhs - rhs).norm() < 1e-12 * g.value().norm().max(1.0));
    }
}

#[test]
fn mehler_fock_examples() {
    let engine = MehlerFock::new(MehlerFockConfig::default()).unwrap();
    let zero = engine.forward(|_| 0.0).unwrap();
    assert!(zero.values.iter().all(|z| z.norm() == 0.0));
    let back = engine.inverse(|_| C64::new(0.0, 0.0)).unwrap();
    assert!(back.values.iter().all(|z| z.norm() == 0.0));

    for f in [|u: f64| (-(u - 1.0)).exp(), |u: f64| (-2.0 * (u - 1.0)).exp() / (1.0 + u)] {
        let orig: Vec<C64> = engine.u_grid().iter().map(|&u| re(f(u))).collect();
        let big = engine.forward(f).unwrap();
        let back = engine.inverse_samples(&big.values).unwrap();
        assert!(relative_l2(&engine, &back.values, &orig) < 1e-3);
    }
}
