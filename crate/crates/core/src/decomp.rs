//! Iwasawa g = O·exp(H)·N, Cartan g = O₁·exp(a⁺)·O₂ and polar
//! q = o·exp(2a)·oᵀ decompositions for SL(d,R).

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::roots::CartanVector;
use crate::spd::{GroupElement, MetricPoint};

#[derive(Debug, Clone, PartialEq)]
pub struct IwasawaFactors {
    pub o: GroupElement,
    pub h: CartanVector,
    pub n: GroupElement,
}

impl IwasawaFactors {
    pub fn reconstruct(&self) -> Matrix {
        let a = Matrix::diagonal(&self.h.entries().iter().map(|x| x.exp()).collect::<Vec<_>>());
        &(self.o.matrix() * &a) * self.n.matrix()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CartanFactors {
    pub o1: GroupElement,
    pub aplus: CartanVector,
    pub o2: GroupElement,
}

impl CartanFactors {
    pub fn reconstruct(&self) -> Matrix {
        let a = Matrix::diagonal(&self.aplus.entries().iter().map(|x| x.exp()).collect::<Vec<_>>());
        &(self.o1.matrix() * &a) * self.o2.matrix()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolarFactors {
    pub o: GroupElement,
    pub a: CartanVector,
}

impl PolarFactors {
    pub fn reconstruct(&self) -> Matrix {
        let a = Matrix::diagonal(&self.a.entries().iter().map(|x| (2.0 * x).exp()).collect::<Vec<_>>());
        &(self.o.matrix() * &a) * &self.o.matrix().transpose()
    }
}

fn require_special(g: &GroupElement) -> Result<()> {
    if !g.is_unimodular() {
        return Err(Error::NotUnimodular { det: g.det() });
    }
    Ok(())
}

pub fn iwasawa(g: &GroupElement) -> Result<IwasawaFactors> {
    require_special(g)?;
    let d = g.dim();
    let (q, r) = g.matrix().qr_positive();
    let mut h = Vec::with_capacity(d);
    let mut n = r.clone();
    for i in 0..d {
        let rii = r[(i, i)];
        if !(rii > 0.0) {
            return Err(Error::Singular);
        }
        h.push(rii.ln());
        for j in 0..d {
            n[(i, j)] = if j == i { 1.0 } else { r[(i, j)] / rii };
        }
    }
    Ok(IwasawaFactors {
        o: GroupElement::new(q)?,
        h: CartanVector::projected(h),
        n: GroupElement::new(n)?,
    })
}

/// H(g) from the upper Cholesky factor of gᵀg; agrees with
/// [`iwasawa`] and skips forming O and N.
pub fn h_function(g: &Matrix) -> Result<Vec<f64>> {
    let m = &g.transpose() * g;
    cholesky_log_diag(&m)
}

/// ½ ln of the squared diagonal of the upper Cholesky factor of an SPD
/// matrix, i.e. ln R_ii with m = RᵀR.
pub fn cholesky_log_diag(m: &Matrix) -> Result<Vec<f64>> {
    let d = m.rows();
    let mut r = Matrix::zeros(d, d);
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        let mut s = m[(i, i)];
        for k in 0..i {
            s -= r[(k, i)] * r[(k, i)];
        }
        if !(s > 0.0) {
            return Err(Error::Singular);
        }
        let rii = s.sqrt();
        r[(i, i)] = rii;
        out.push(rii.ln());
        for j in i + 1..d {
            let mut t = m[(i, j)];
            for k in 0..i {
                t -= r[(k, i)] * r[(k, j)];
            }
            r[(i, j)] = t / rii;
        }
    }
    Ok(out)
}

pub fn cartan(g: &GroupElement) -> Result<CartanFactors> {
    require_special(g)?;
    let d = g.dim();
    let (mut u, sigma, mut v) = g.matrix().svd();
    if sigma.iter().any(|s| !(*s > 0.0)) {
        return Err(Error::Singular);
    }
    if u.det() < 0.0 {
        // flip the same column of U and V; the product is unchanged
        u.negate_column(d - 1);
        v.negate_column(d - 1);
    }
    let aplus = CartanVector::projected(sigma.iter().map(|s| s.ln()).collect());
    Ok(CartanFactors { o1: GroupElement::new(u)?, aplus, o2: GroupElement::new(v.transpose())? })
}

pub fn polar(q: &MetricPoint) -> Result<PolarFactors> {
    let det = q.det();
    if (det - 1.0).abs() > 1e-8 {
        return Err(Error::NotUnimodular { det });
    }
    let d = q.dim();
    let (vals, vecs) = q.to_matrix().symmetric_eigen();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| vals[b].partial_cmp(&vals[a]).unwrap_or(core::cmp::Ordering::Equal));
    let mut o = Matrix::zeros(d, d);
    let mut a = Vec::with_capacity(d);
    for (new, &old) in order.iter().enumerate() {
        if !(vals[old] > 0.0) {
            return Err(Error::NotPositiveDefinite { index: new + 1, value: vals[old] });
        }
        a.push(0.5 * vals[old].ln());
        for k in 0..d {
            o[(k, new)] = vecs[(k, old)];
        }
    }
    if o.det() < 0.0 {
        o.negate_column(d - 1);
    }
    Ok(PolarFactors { o: GroupElement::new(o)?, a: CartanVector::projected(a) })
}

/// q = (n·exp(H))(n·exp(H))ᵀ for unit upper triangular n.
pub fn na_point(n: &Matrix, h: &CartanVector) -> Result<MetricPoint> {
    let a = Matrix::diagonal(&h.entries().iter().map(|x| x.exp()).collect::<Vec<_>>());
    let na = n * &a;
    MetricPoint::from_matrix(&(&na * &na.transpose()))
}
