//! Points of the positive-definite cone, group elements and the
//! congruence action q ↦ g q gᵀ, the invariant measure density and Haar
//! sampling on O(d) / SO(d).

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Number of independent entries of a symmetric d×d matrix.
pub const fn chart_dim(d: usize) -> usize {
    d * (d + 1) / 2
}

/// Position of q_ab (either order) in the row-major upper-triangle chart.
pub fn chart_index(a: usize, b: usize, d: usize) -> usize {
    let (i, j) = if a <= b { (a, b) } else { (b, a) };
    i * d - i * (i + 1) / 2 + j
}

/// Inverse of [`chart_index`]: the pair (a, b) with a ≤ b.
pub fn chart_pair(k: usize, d: usize) -> (usize, usize) {
    let mut k = k;
    for a in 0..d {
        let row = d - a;
        if k < row {
            return (a, a + k);
        }
        k -= row;
    }
    panic!("chart index out of range");
}

/// A symmetric positive-definite d×d matrix stored by its upper triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricPoint {
    dim: usize,
    entries: Vec<f64>,
}

impl MetricPoint {
    /// Builds from independent entries in chart order and checks
    /// positivity with Sylvester's criterion.
    pub fn from_chart(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != chart_dim(dim) {
            return Err(Error::DimensionMismatch { expected: chart_dim(dim), found: entries.len() });
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let p = Self { dim, entries };
        p.sylvester()?;
        Ok(p)
    }

    /// Builds from a full matrix, which must be symmetric to 1e-12 relative.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch { expected: m.rows(), found: m.cols() });
        }
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let asym = m.max_asymmetry();
        if asym > 1e-12 * m.norm_max().max(1.0) {
            return Err(Error::NotSymmetric(asym));
        }
        let d = m.rows();
        let mut entries = Vec::with_capacity(chart_dim(d));
        for a in 0..d {
            for b in a..d {
                entries.push(0.5 * (m[(a, b)] + m[(b, a)]));
            }
        }
        Self::from_chart(d, entries)
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_matrix(&Matrix::identity(dim)).expect("identity is positive definite")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn chart(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.entries[chart_index(a, b, self.dim)]
    }

    pub fn to_matrix(&self) -> Matrix {
        let d = self.dim;
        let mut m = Matrix::zeros(d, d);
        for a in 0..d {
            for b in 0..d {
                m[(a, b)] = self.get(a, b);
            }
        }
        m
    }

    pub fn det(&self) -> f64 {
        self.to_matrix().det()
    }

    /// Leading principal minors, in order of size.
    pub fn leading_minors(&self) -> Vec<f64> {
        let m = self.to_matrix();
        (1..=self.dim)
            .map(|k| {
                let mut sub = Matrix::zeros(k, k);
                for i in 0..k {
                    for j in 0..k {
                        sub[(i, j)] = m[(i, j)];
                    }
                }
                sub.det()
            })
            .collect()
    }

    fn sylvester(&self) -> Result<()> {
        let scale = self.entries.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
        for (k, minor) in self.leading_minors().into_iter().enumerate() {
            if !(minor > 1e-12 * scale.powi(k as i32 + 1)) {
                return Err(Error::NotPositiveDefinite { index: k + 1, value: minor });
            }
        }
        Ok(())
    }

    /// (U, V, W) with q = U² − V² − W². Only for d = 2.
    pub fn uvw(&self) -> Result<(f64, f64, f64)> {
        if self.dim != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: self.dim });
        }
        let (q11, q12, q22) = (self.entries[0], self.entries[1], self.entries[2]);
        Ok((0.5 * (q11 + q22), 0.5 * (q11 - q22), q12))
    }

    /// (u, v, w) = (U, V, W)/√q on the unit hyperboloid. Only for d = 2.
    pub fn uvw_scaled(&self) -> Result<(f64, f64, f64)> {
        let (u, v, w) = self.uvw()?;
        let s = self.det().sqrt();
        Ok((u / s, v / s, w / s))
    }
}

/// An invertible real matrix, optionally tagged as an element of SL(d,R).
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    matrix: Matrix,
    unimodular: bool,
}

impl GroupElement {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.rows(), found: matrix.cols() });
        }
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        let det = matrix.det();
        if det == 0.0 || !det.is_finite() {
            return Err(Error::Singular);
        }
        let unimodular = (det - 1.0).abs() < 1e-12;
        Ok(Self { matrix, unimodular })
    }

    /// Requires det g = 1 to within 1e-12.
    pub fn special(matrix: Matrix) -> Result<Self> {
        let g = Self::new(matrix)?;
        if !g.unimodular {
            return Err(Error::NotUnimodular { det: g.matrix.det() });
        }
        Ok(g)
    }

    /// Rescales g by |det g|^{-1/d} so that det = ±1; fails if the result
    /// has det −1 (even d with negative determinant).
    pub fn normalized(matrix: Matrix) -> Result<Self> {
        let g = Self::new(matrix)?;
        let d = g.dim();
        let det = g.matrix.det();
        let mut scale = det.abs().powf(-1.0 / d as f64);
        if det < 0.0 {
            if d % 2 == 0 {
                return Err(Error::NotUnimodular { det });
            }
            scale = -scale;
        }
        let mut m = g.matrix.scale(scale);
        // one Newton-style touch-up to land within 1e-12
        let det = m.det();
        m = m.scale(det.powf(-1.0 / d as f64));
        Self::special(m)
    }

    pub fn identity(dim: usize) -> Self {
        Self { matrix: Matrix::identity(dim), unimodular: true }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_unimodular(&self) -> bool {
        self.unimodular
    }

    pub fn det(&self) -> f64 {
        self.matrix.det()
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        let m = &self.matrix * &other.matrix;
        let unimodular = self.unimodular && other.unimodular;
        Ok(Self { matrix: m, unimodular })
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(Self { matrix: self.matrix.inverse()?, unimodular: self.unimodular })
    }

    pub fn transpose(&self) -> Self {
        Self { matrix: self.matrix.transpose(), unimodular: self.unimodular }
    }
}

/// q ↦ g q gᵀ.
pub fn act(g: &GroupElement, q: &MetricPoint) -> Result<MetricPoint> {
    if g.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: q.dim() });
    }
    let m = g.matrix();
    let out = &(m * &q.to_matrix()) * &m.transpose();
    // symmetrize explicitly; the product is symmetric up to rounding
    let d = q.dim();
    let mut entries = Vec::with_capacity(chart_dim(d));
    for a in 0..d {
        for b in a..d {
            entries.push(0.5 * (out[(a, b)] + out[(b, a)]));
        }
    }
    MetricPoint::from_chart(d, entries)
}

/// GL(d)-invariant density det(q)^{-(d+1)/2} relative to ∏ dq_ab.
pub fn measure_density(q: &MetricPoint) -> Result<f64> {
    let det = q.det();
    if !(det > 0.0) {
        return Err(Error::NotPositiveDefinite { index: q.dim(), value: det });
    }
    Ok(det.powf(-(q.dim() as f64 + 1.0) / 2.0))
}

/// Reproducible Haar sampler: draw `index` of stream `stream` under `seed`
/// is a pure function of the triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HaarSampler {
    pub seed: u64,
    pub stream: u64,
    next: u64,
}

impl HaarSampler {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream, next: 0 }
    }

    /// Index of the next draw handed out by [`haar_orthogonal`].
    pub fn position(&self) -> u64 {
        self.next
    }

    /// Random generator dedicated to one draw.
    pub fn rng(&self, index: u64) -> ChaCha8Rng {
        rng_for(self.seed, self.stream, index)
    }

    /// The `index`-th orthogonal matrix of this stream; `special` restricts
    /// to SO(d).
    pub fn draw(&self, index: u64, d: usize, special: bool) -> GroupElement {
        let mut rng = self.rng(index);
        random_orthogonal(&mut rng, d, special)
    }
}

pub fn rng_for(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos((index as u128) << 20);
    rng
}

/// Next Haar-distributed element of O(d) from the sampler's stream.
pub fn haar_orthogonal(sampler: &mut HaarSampler, d: usize) -> GroupElement {
    let g = sampler.draw(sampler.next, d, false);
    sampler.next += 1;
    g
}

/// Next Haar-distributed element of SO(d).
pub fn haar_special_orthogonal(sampler: &mut HaarSampler, d: usize) -> GroupElement {
    let g = sampler.draw(sampler.next, d, true);
    sampler.next += 1;
    g
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = StandardNormal.sample(rng);
        }
    }
    m
}

pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, d: usize, special: bool) -> GroupElement {
    let z = gaussian_matrix(rng, d, d);
    let (mut q, _) = z.qr_positive();
    let mut unimodular = false;
    if special {
        if q.det() < 0.0 {
            q.negate_column(0);
        }
        unimodular = true;
    } else if (q.det() - 1.0).abs() < 1e-12 {
        unimodular = true;
    }
    GroupElement { matrix: q, unimodular }
}

/// Random element of SL(d,R): a Gaussian matrix with entries of width
/// `spread`, added to the identity and normalized to unit determinant.
pub fn random_sl<R: Rng + ?Sized>(rng: &mut R, d: usize, spread: f64) -> GroupElement {
    loop {
        let z = gaussian_matrix(rng, d, d).scale(spread).add(&Matrix::identity(d));
        let det = z.det();
        if det.abs() < 1e-3 {
            continue;
        }
        let mut m = z;
        if det < 0.0 {
            m.negate_column(0);
        }
        if let Ok(g) = GroupElement::normalized(m) {
            return g;
        }
    }
}

/// Random SPD point g gᵀ from a random GL element with entries of width
/// `spread` around the identity; `unit_det` rescales to det 1.
pub fn random_spd<R: Rng + ?Sized>(rng: &mut R, d: usize, spread: f64, unit_det: bool) -> MetricPoint {
    loop {
        let z = gaussian_matrix(rng, d, d).scale(spread).add(&Matrix::identity(d));
        let mut q = &z * &z.transpose();
        let det = q.det();
        if !(det > 1e-6) {
            continue;
        }
        if unit_det {
            q = q.scale(det.powf(-1.0 / d as f64));
        }
        if let Ok(p) = MetricPoint::from_matrix(&q) {
            return p;
        }
    }
}
