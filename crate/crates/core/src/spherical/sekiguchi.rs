//! Sekiguchi's generating function
//!
//!   Δ(ζ) = δ(H)⁻¹ Σ_{s∈W} det(s) e^{2ρ(sH)} ∏ᵢ (ζ + D_{s(i)} + (d+1−2i)/2)
//!        = ζ^d + Δ₁ζ^{d−1} + … + Δ_d,
//!
//! expanded into squarefree monomials in the D_i.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::radial::{mixed_derivative, seki3, wall_gap, Profile, RadialKind, RadialOperator, Stencil};
use crate::error::{Error, Result};
use crate::math::{c, C64};
use crate::roots::weyl_group;

#[derive(Debug, Clone)]
struct WeylTerm {
    sign: f64,
    /// 2ρ(sH) = Σ_j exponent[j] t_j.
    exponent: Vec<f64>,
    /// Per k: (D-mask, constant) pairs.
    monomials: Vec<Vec<(u32, f64)>>,
}

#[derive(Debug, Clone)]
pub struct SekiguchiFamily {
    d: usize,
    terms: Vec<WeylTerm>,
}

/// e_k of the given numbers.
fn elementary(values: &[f64], k: usize) -> f64 {
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for v in values {
        for j in (1..=k).rev() {
            e[j] += e[j - 1] * v;
        }
    }
    e[k]
}

impl SekiguchiFamily {
    pub fn new(d: usize) -> Result<Self> {
        if !(2..=5).contains(&d) {
            return Err(Error::Unsupported(alloc::format!("Sekiguchi family for d = {d}; the Weyl sum is kept to d ≤ 5")));
        }
        let shifts: Vec<f64> = (0..d).map(|i| (d as f64 - 1.0) / 2.0 - i as f64).collect();
        let mut terms = Vec::new();
        for (perm, sign) in weyl_group(d) {
            let mut exponent = vec![0.0; d];
            for (i, &p) in perm.iter().enumerate() {
                exponent[p] += 2.0 * shifts[i];
            }
            let mut monomials = vec![Vec::new(); d + 1];
            // S ⊆ positions carrying D_{s(i)}; the rest contribute ζ + c_i
            for set in 0u32..(1 << d) {
                let size = set.count_ones() as usize;
                let rest: Vec<f64> = (0..d).filter(|i| set & (1 << i) == 0).map(|i| shifts[i]).collect();
                let mut mask = 0u32;
                for i in 0..d {
                    if set & (1 << i) != 0 {
                        mask |= 1 << perm[i];
                    }
                }
                for (k, slot) in monomials.iter_mut().enumerate().skip(size) {
                    let coef = elementary(&rest, k - size);
                    if coef != 0.0 {
                        slot.push((mask, coef));
                    }
                }
            }
            terms.push(WeylTerm { sign, exponent, monomials });
        }
        Ok(Self { d, terms })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Coefficient functions of Δ_k at t, one per D-mask.
    pub fn coefficients(&self, k: usize, t: &[f64]) -> Result<Vec<(u32, f64)>> {
        if k > self.d {
            return Err(Error::Invalid("Sekiguchi index exceeds d".into()));
        }
        if t.len() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, found: t.len() });
        }
        let mut delta = 1.0;
        for i in 0..self.d {
            for j in i + 1..self.d {
                delta *= 2.0 * (t[i] - t[j]).sinh();
            }
        }
        if delta == 0.0 || !delta.is_finite() {
            return Err(Error::WallProximity { margin: 0.0, gap: wall_gap(t) });
        }
        let mut acc = vec![0.0; 1 << self.d];
        for term in &self.terms {
            let e: f64 = term.exponent.iter().zip(t).map(|(a, b)| a * b).sum();
            let w = term.sign * e.exp() / delta;
            for (mask, coef) in &term.monomials[k] {
                acc[*mask as usize] += w * coef;
            }
        }
        Ok(acc.into_iter().enumerate().filter(|(_, v)| *v != 0.0).map(|(m, v)| (m as u32, v)).collect())
    }

    /// Δ(ζ)f at t: Σ_k ζ^{d−k} Δ_k f.
    pub fn generating(&self, zeta: C64, f: Profile, t: &[f64], st: &Stencil) -> Result<C64> {
        let mut cache: Vec<Option<C64>> = vec![None; 1 << self.d];
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..=self.d {
            let mut dk = C64::new(0.0, 0.0);
            for (mask, coef) in self.coefficients(k, t)? {
                let v = match cache[mask as usize] {
                    Some(v) => v,
                    None => {
                        let dirs: Vec<usize> = (0..self.d).filter(|i| mask & (1 << i) != 0).collect();
                        let v = mixed_derivative(f, t, &dirs, st)?;
                        cache[mask as usize] = Some(v);
                        v
                    }
                };
                dk += v * coef;
            }
            acc += dk * zeta.powu((self.d - k) as u32);
        }
        Ok(acc)
    }
}

/// Δ₁, …, Δ_d as radial operators.
pub fn sekiguchi_family(d: usize) -> Result<Vec<RadialOperator>> {
    (1..=d).map(|k| RadialOperator::new(RadialKind::Sekiguchi(k), d)).collect()
}

/// Largest |Δ₂f − seki3 f| over the points: the generating-function
/// coefficient against the closed form.
pub fn seki3_agreement(d: usize, f: Profile, points: &[Vec<f64>], st: &Stencil) -> Result<f64> {
    let op = RadialOperator::new(RadialKind::Sekiguchi(2), d)?.with_stencil(st.clone());
    let mut worst: f64 = 0.0;
    for t in points {
        let a = op.apply(f, t)?;
        let b = seki3(f, t, st)?;
        worst = worst.max((a - b).norm() / b.norm().max(1.0));
    }
    Ok(worst)
}

/// |Δ_iΔ_j f − Δ_jΔ_i f| at t by nested differences, Richardson-combined
/// from steps h and h/2.
pub fn commutator_residual(i: usize, j: usize, d: usize, f: Profile, t: &[f64], h: f64) -> Result<f64> {
    let at = |step: f64| -> Result<C64> {
        let st = Stencil::central4(step);
        let a = RadialOperator::new(RadialKind::Sekiguchi(i), d)?.with_stencil(st.clone()).with_wall_margin(0.0);
        let b = RadialOperator::new(RadialKind::Sekiguchi(j), d)?.with_stencil(st).with_wall_margin(0.0);
        let bf = |x: &[f64]| b.apply(f, x);
        let af = |x: &[f64]| a.apply(f, x);
        Ok(a.apply(&bf, t)? - b.apply(&af, t)?)
    };
    let coarse = at(h)?;
    let fine = at(h / 2.0)?;
    Ok(((fine * 16.0 - coarse) / 15.0).norm())
}

/// ∏ᵢ(ζ + v_i).
pub fn characteristic(zeta: C64, v: &[C64]) -> C64 {
    v.iter().fold(c(1.0, 0.0), |acc, x| acc * (zeta + x))
}
