//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails if any criterion misses its tolerance or its time budget.

use std::time::{Duration, Instant};

use symspace_core::decomp::{cartan, h_function, iwasawa, polar};
use symspace_core::gl2::basis::{compact_jet, ladder_apply, ladder_sample_points, BasisLabelCompact, LadderDirection};
use symspace_core::gl2::conical::{conical_p, ConicalEvaluator};
use symspace_core::gl2::mehler_fock::{relative_l2, MehlerFock, MehlerFockConfig};
use symspace_core::gl2::so21::{so21_generators, so21_metric_chart};
use symspace_core::jet::Jet;
use symspace_core::math::{c, re, C64};
use symspace_core::operator::{
    casimir, det_power, generator_t, kinetic_decomposed, kinetic_operator, random_germ, singlet, trace_eigenfunction, trace_t,
    verify_algebra,
};
use symspace_core::roots::{Normalization, SpectralParameter};
use symspace_core::spd::{random_orthogonal, random_sl, random_spd, rng_for, GroupElement};
use symspace_core::spherical::radial::{harish_chandra_check, isomorphism_residual, radial_laplacian_check, Stencil};
use symspace_core::spherical::sekiguchi::{commutator_residual, seki3_agreement};
use symspace_core::spherical::{check_properties, PropertyConfig, Quadrature, SphericalEvaluator};

struct Outcome {
    passed: bool,
    detail: String,
}

fn run(id: u32, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let ok = out.passed && took <= budget;
    println!(
        "criterion {id:>2} {:<4} {name}: {} [{:.2}s of {:.0}s]",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        took.as_secs_f64(),
        budget.as_secs_f64()
    );
    ok
}

fn rel(a: &symspace_core::linalg::Matrix, b: &symspace_core::linalg::Matrix) -> f64 {
    a.sub(b).norm_frobenius() / b.norm_frobenius()
}

fn algebra() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut passed = true;
    for d in [2, 3, 4] {
        let rep = verify_algebra(d, 100, 1e-9, 1).expect("algebra suite runs");
        worst = worst.max(rep.max_residual());
        passed &= rep.passed();
    }
    Outcome { passed, detail: format!("max relative residual {worst:.2e} (< 1e-9)") }
}

fn singlet_and_scaling() -> Outcome {
    let mut annihilation: f64 = 0.0;
    let mut eigen: f64 = 0.0;
    for d in [2usize, 3] {
        let psi0 = singlet(d);
        for k in 0..50 {
            let x = random_spd(&mut rng_for(2, d as u64, k), d, 0.5, false);
            let j = psi0.eval(x.chart()).unwrap();
            for a in 0..d {
                for b in 0..d {
                    let v = generator_t(a, b, d).unwrap().apply(&j, x.chart()).unwrap().value();
                    annihilation = annihilation.max(v.norm() / j.value().norm());
                }
            }
        }
        for k in 0..5u64 {
            let mut rng = rng_for(3, d as u64, k);
            let z = random_germ(&mut rng, 1).value();
            let x = random_spd(&mut rng, d, 0.5, false);
            let q = det_power(d, z).eval(x.chart()).unwrap();
            for a in 0..d {
                for b in 0..d {
                    let v = generator_t(a, b, d).unwrap().apply(&q, x.chart()).unwrap().value();
                    let expected = if a == b { c(0.0, -2.0) * (z + (d as f64 + 1.0) / 4.0) * q.value() } else { re(0.0) };
                    eigen = eigen.max((v - expected).norm() / q.value().norm());
                }
            }
            let psi = trace_eigenfunction(d, z.re).eval(x.chart()).unwrap();
            let t = trace_t(d).apply(&psi, x.chart()).unwrap().value();
            eigen = eigen.max((t - psi.value() * z.re).norm() / psi.value().norm());
        }
    }
    Outcome {
        passed: annihilation < 1e-10 && eigen < 1e-10,
        detail: format!("|Tψ0|/|ψ0| {annihilation:.2e}, q^r and 𝕋 eigen residual {eigen:.2e} (< 1e-10)"),
    }
}

fn decompositions() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut h_orth: f64 = 0.0;
    for k in 0..1000u64 {
        let d = 2 + (k % 4) as usize;
        let mut rng = rng_for(4, 0, k);
        let g = random_sl(&mut rng, d, 0.7);
        worst = worst.max(rel(&iwasawa(&g).unwrap().reconstruct(), g.matrix()));
        worst = worst.max(rel(&cartan(&g).unwrap().reconstruct(), g.matrix()));
        // det = 1 only means something to cond·ε, so keep cond ≤ 1e4
        let q = loop {
            let q = random_spd(&mut rng, d, 0.7, true);
            let (vals, _) = q.to_matrix().symmetric_eigen();
            let (lo, hi) = vals.iter().fold((f64::MAX, 0.0f64), |(a, b), v| (a.min(*v), b.max(*v)));
            if hi / lo <= 1e4 {
                break q;
            }
        };
        worst = worst.max(rel(&polar(&q).unwrap().reconstruct(), &q.to_matrix()));
        let o = random_orthogonal(&mut rng, d, true);
        h_orth = h_orth.max(h_function(o.matrix()).unwrap().iter().fold(0.0, |m, v| m.max(v.abs())));
    }
    Outcome {
        passed: worst < 1e-11 && h_orth < 1e-12,
        detail: format!("round trip {worst:.2e} (< 1e-11), |H(O)| {h_orth:.2e} (< 1e-12)"),
    }
}

fn spherical_properties() -> Outcome {
    let ev2 = SphericalEvaluator::new(SpectralParameter::rank_one(0.9), Quadrature::So2Trapezoid { nodes: 512 }).unwrap();
    let cfg2 = PropertyConfig { samples: 8, gram_sets: 20, ..PropertyConfig::default() };
    let r2 = check_properties(&ev2, &cfg2).unwrap();
    let exact_one = ev2.eval(&GroupElement::identity(2)).unwrap().value == c(1.0, 0.0);
    let lam3 = SpectralParameter::new(vec![0.8, 0.1, -0.9]).unwrap();
    let ev3 = SphericalEvaluator::new(lam3, Quadrature::HaarMc { samples: 100_000, seed: 9 }).unwrap();
    let cfg3 = PropertyConfig { samples: 5, gram_sets: 1, ..PropertyConfig::default() };
    let r3 = check_properties(&ev3, &cfg3).unwrap();
    let mut detail = String::new();
    for r in r2.results.iter().chain(&r3.results) {
        if !r.passed {
            detail.push_str(&format!("{} {:.2e}>{:.2e}; ", r.name, r.residual, r.bound));
        }
    }
    let worst2 = r2.results.iter().map(|r| r.residual).fold(0.0, f64::max);
    detail.push_str(&format!("d=2 worst residual {worst2:.2e}, φ(e)=1 exact {exact_one}; d=3 all within 3σ {}", r3.passed()));
    Outcome { passed: r2.passed() && r3.passed() && exact_one, detail }
}

fn cross_validation() -> Outcome {
    let cev = ConicalEvaluator::default();
    let mut worst: f64 = 0.0;
    for s in [0.5, 1.0, 2.0] {
        let ev = SphericalEvaluator::new(SpectralParameter::rank_one(s), Quadrature::So2Trapezoid { nodes: 512 }).unwrap();
        for k in 0..30 {
            let chi = 0.1 + 2.9 * k as f64 / 29.0;
            let phi = ev.eval_cartan(&[chi / 2.0, -chi / 2.0]).unwrap().value;
            let p = conical_p(s, 0, chi.cosh(), &cev).unwrap();
            worst = worst.max((phi - re(p)).norm());
        }
    }
    Outcome { passed: worst < 1e-5, detail: format!("max |φ − P| {worst:.2e} (< 1e-5)") }
}

fn casimir_spectrum() -> Outcome {
    let ev = ConicalEvaluator::default();
    let c2 = casimir(2);
    let mut worst: f64 = 0.0;
    for (r, s, m) in [(0.3, 0.5, 0), (0.0, 1.0, 1), (-0.8, 2.0, -2), (1.1, 1.5, 2)] {
        let label = BasisLabelCompact::new(r, s, m).unwrap();
        for x in ladder_sample_points(6, 21) {
            let j = compact_jet(&label, &x, &ev).unwrap();
            let v = c2.apply(&j, &x).unwrap();
            worst = worst.max((v - j.value() * (0.25 + s * s)).norm() / j.value().norm());
        }
    }
    let ev3 = SphericalEvaluator::new(SpectralParameter::zero(3), Quadrature::HaarMc { samples: 100_000, seed: 3 }).unwrap();
    let grid = vec![vec![0.6, 0.0, -0.6], vec![1.0, 0.1, -1.1], vec![0.9, -0.2, -0.7]];
    let chk = radial_laplacian_check(&ev3, &grid, Normalization::CasimirMatched, &Stencil::central4(1e-3), 0.2).unwrap();
    let floor = -chk.eigenvalue.re;
    let gap = (floor - 1.0 / 3.0).abs();
    Outcome {
        passed: worst < 1e-6 && gap < 5e-2,
        detail: format!("C₂ residual {worst:.2e} (< 1e-6); d=3 floor {floor:.4} vs 1/3, gap {gap:.2e} (< 5e-2)"),
    }
}

fn ladders() -> Outcome {
    let pts = ladder_sample_points(8, 5);
    let mut worst: f64 = 0.0;
    for s in [0.5, 1.0, 2.0] {
        for m in -2..=2 {
            for dir in [LadderDirection::Raise, LadderDirection::Lower] {
                let fit = ladder_apply(&BasisLabelCompact::new(0.4, s, m).unwrap(), dir, &pts).unwrap();
                worst = worst.max((fit.magnitude - fit.expected).abs());
            }
        }
    }
    // L₋L₊ − C₂ − L₀(L₀+1) on jets in both charts
    let mut env: f64 = 0.0;
    let mut literal: f64 = f64::INFINITY;
    for (alg, x, n) in [(so21_generators(), vec![0.9, 0.4], 2usize), (so21_metric_chart(), vec![1.4, 0.3, 0.8], 3)] {
        let c2 = alg.casimir();
        for k in 0..5 {
            let g: Jet = random_germ(&mut rng_for(7, n as u64, k), n);
            env = env.max(alg.enveloping_defect(&c2).apply(&g, &x).unwrap().norm() / g.value().norm().max(1.0));
            literal = literal.min(alg.enveloping_defect_flipped(&c2).apply(&g, &x).unwrap().norm());
        }
    }
    Outcome {
        passed: worst < 1e-5 && env < 1e-10,
        detail: format!(
            "ladder |c| error {worst:.2e} (< 1e-5); L₋L₊ = C₂ + L₀(L₀+1) residual {env:.2e} (< 1e-10); the form C₂ − L₀(L₀+1) misses by ≥ {literal:.2e}"
        ),
    }
}

type RealFn = Box<dyn Fn(f64) -> f64>;
type Profile = Box<dyn Fn(&[f64]) -> symspace_core::Result<C64>>;

fn mehler_fock() -> Outcome {
    let engine = MehlerFock::new(MehlerFockConfig::default()).unwrap();
    let fs: [(&str, RealFn); 3] = [
        ("e^{-(u-1)}", Box::new(|u: f64| (-(u - 1.0)).exp())),
        ("(u-1)e^{-(u-1)}", Box::new(|u: f64| (u - 1.0) * (-(u - 1.0)).exp())),
        ("u^{-1}e^{-2(u-1)}", Box::new(|u: f64| (-2.0 * (u - 1.0)).exp() / u)),
    ];
    let mut worst: f64 = 0.0;
    let mut ratio_err: f64 = 0.0;
    for (_, f) in &fs {
        let orig: Vec<C64> = engine.u_grid().iter().map(|&u| re(f(u))).collect();
        let big = engine.forward(f).unwrap();
        let back = engine.inverse_samples(&big.values).unwrap();
        worst = worst.max(relative_l2(&engine, &back.values, &orig));
        let again = engine.forward_samples(&back.values.iter().map(|z| z.re).collect::<Vec<_>>()).unwrap();
        let s_err = again.values.iter().zip(&big.values).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
            / big.values.iter().map(|b| b.norm_sqr()).sum::<f64>().sqrt();
        worst = worst.max(s_err);
        ratio_err = ratio_err.max((engine.plancherel(f).unwrap().ratio - 1.0).abs());
    }
    Outcome {
        passed: worst < 1e-3 && ratio_err < 1e-2,
        detail: format!("round-trip L² error {worst:.2e} (< 1e-3), Plancherel |ratio − 1| {ratio_err:.2e} (< 1e-2)"),
    }
}

fn sekiguchi() -> Outcome {
    let f2 = |x: &[f64]| -> symspace_core::Result<C64> { Ok(re((0.4 * x[0]).sin() * (0.3 * x[1] + x[0] * x[1]).exp())) };
    let pts = vec![vec![0.7, -0.5], vec![1.5, 0.2], vec![-0.3, 0.6]];
    let seki = seki3_agreement(2, &f2, &pts, &Stencil::central4(1e-3)).unwrap();
    let tests: Vec<Profile> = vec![
        Box::new(|x: &[f64]| Ok(re((-0.3 * x.iter().map(|v| v * v).sum::<f64>()).exp()))),
        Box::new(|x: &[f64]| Ok(re(x.iter().map(|v| (0.4 * v).cosh()).product::<f64>()))),
        Box::new(|x: &[f64]| Ok(re(x.iter().map(|v| v.powi(4)).sum::<f64>()))),
        Box::new(|x: &[f64]| {
            let e = |a: f64, b: f64, c: f64| (0.5 * a + 0.2 * b - 0.4 * c).exp();
            Ok(re(e(x[0], x[1], x[2]) + e(x[0], x[2], x[1]) + e(x[1], x[0], x[2]) + e(x[1], x[2], x[0]) + e(x[2], x[0], x[1]) + e(x[2], x[1], x[0])))
        }),
        Box::new(|x: &[f64]| Ok(re((x[0] * x[1] + x[1] * x[2] + x[2] * x[0]).sin()))),
    ];
    let mut comm: f64 = 0.0;
    for f in &tests {
        comm = comm.max(commutator_residual(2, 3, 3, f.as_ref(), &[0.9, 0.1, -0.8], 0.04).unwrap());
    }
    let mut iso: f64 = 0.0;
    for d in [2usize, 3] {
        let mus: Vec<SpectralParameter> = if d == 2 {
            vec![SpectralParameter::rank_one(0.3), SpectralParameter::rank_one(1.7)]
        } else {
            vec![SpectralParameter::new(vec![0.6, -0.1, -0.5]).unwrap(), SpectralParameter::new(vec![1.2, 0.2, -1.4]).unwrap()]
        };
        let pts: Vec<Vec<f64>> = (0..5).map(|k| random_spd(&mut rng_for(8, d as u64, k), d, 0.5, false).chart().to_vec()).collect();
        for n in [Normalization::Trace, Normalization::Killing, Normalization::CasimirMatched] {
            iso = iso.max(harish_chandra_check(d, &mus, &pts, n).unwrap().max_residual());
        }
    }
    let fd = isomorphism_residual(3, &[0.8, -0.2, -0.6], &[0.1, 0.4, -0.5], Normalization::CasimirMatched).unwrap();
    Outcome {
        passed: seki < 1e-6 && comm < 1e-4 && iso < 1e-8,
        detail: format!(
            "Δ₂ vs closed form {seki:.2e} (< 1e-6), [Δ₂,Δ₃] {comm:.2e} (< 1e-4), Γ(Δ) = Δ_A − |ρ|² on jets {iso:.2e} (< 1e-8), by differences {fd:.2e}"
        ),
    }
}

fn kinetic() -> Outcome {
    let ev = ConicalEvaluator::default();
    let k2 = kinetic_operator(2);
    let mut d2: f64 = 0.0;
    for (r, s, m) in [(0.3, 0.5, 0), (-0.6, 1.2, 1), (0.9, 2.0, -1)] {
        let label = BasisLabelCompact::new(r, s, m).unwrap();
        for x in ladder_sample_points(5, 31) {
            let j = compact_jet(&label, &x, &ev).unwrap();
            let v = k2.apply(&j, &x).unwrap();
            d2 = d2.max((v - j.value() * (2.0 * (0.25 + s * s))).norm() / j.value().norm());
        }
    }
    let (k3, k3d) = (kinetic_operator(3), kinetic_decomposed(3));
    let mut d3: f64 = 0.0;
    for k in 0..20 {
        let mut rng = rng_for(10, 3, k);
        let x = random_spd(&mut rng, 3, 0.5, false);
        let g = random_germ(&mut rng, 6);
        let a = k3.apply(&g, x.chart()).unwrap();
        let b = k3d.apply(&g, x.chart()).unwrap();
        d3 = d3.max((a - b).norm() / a.norm().max(b.norm()).max(1.0));
    }
    Outcome { passed: d2 < 1e-6 && d3 < 1e-9, detail: format!("d=2 eigen residual {d2:.2e} (< 1e-6), d=3 identity {d3:.2e} (< 1e-9)") }
}

#[test]
fn acceptance() {
    let s = Duration::from_secs;
    let results = [
        run(1, "algebra suite", s(10), algebra),
        run(2, "singlet and scaling eigenfunctions", s(1), singlet_and_scaling),
        run(3, "decomposition round trips", s(5), decompositions),
        run(4, "spherical properties", s(60), spherical_properties),
        run(5, "spherical vs conical cross-validation", s(30), cross_validation),
        run(6, "Casimir spectrum", s(120), casimir_spectrum),
        run(7, "ladder coefficients", s(10), ladders),
        run(8, "Mehler–Fock", s(60), mehler_fock),
        run(9, "Sekiguchi family", s(60), sekiguchi),
        run(10, "kinetic identity", s(5), kinetic),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
