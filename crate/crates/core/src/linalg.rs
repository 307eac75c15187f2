//! Complex 2×2 matrices and 2-vectors.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Column 2-vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec2(pub [C64; 2]);

impl Vec2 {
    pub fn new(a: C64, b: C64) -> Self {
        Vec2([a, b])
    }

    pub fn basis(i: usize) -> Self {
        let mut v = Vec2([ZERO; 2]);
        v.0[i] = ONE;
        v
    }

    /// Hermitian inner product `<self|other>`, antilinear in `self`.
    pub fn dot(&self, other: &Vec2) -> C64 {
        self.0[0].conj() * other.0[0] + self.0[1].conj() * other.0[1]
    }

    /// Outer product `|self><other|`.
    pub fn outer(&self, other: &Vec2) -> Mat2 {
        Mat2::new(
            self.0[0] * other.0[0].conj(),
            self.0[0] * other.0[1].conj(),
            self.0[1] * other.0[0].conj(),
            self.0[1] * other.0[1].conj(),
        )
    }

    pub fn conj(&self) -> Vec2 {
        Vec2([self.0[0].conj(), self.0[1].conj()])
    }

    pub fn scale(&self, c: C64) -> Vec2 {
        Vec2([self.0[0] * c, self.0[1] * c])
    }

    pub fn norm(&self) -> f64 {
        (self.0[0].norm_sqr() + self.0[1].norm_sqr()).sqrt()
    }

    /// Max-norm distance.
    pub fn dist_max(&self, other: &Vec2) -> f64 {
        (self.0[0] - other.0[0])
            .norm()
            .max((self.0[1] - other.0[1]).norm())
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2([self.0[0] + o.0[0], self.0[1] + o.0[1]])
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2([self.0[0] - o.0[0], self.0[1] - o.0[1]])
    }
}

impl Index<usize> for Vec2 {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

/// Row-major complex 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn zero() -> Self {
        Mat2([[ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        Mat2::diag(ONE, ONE)
    }

    pub fn diag(a: C64, d: C64) -> Self {
        Mat2::new(a, ZERO, ZERO, d)
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn dagger(&self) -> Mat2 {
        let m = &self.0;
        Mat2::new(
            m[0][0].conj(),
            m[1][0].conj(),
            m[0][1].conj(),
            m[1][1].conj(),
        )
    }

    /// Entrywise complex conjugation.
    pub fn conj(&self) -> Mat2 {
        let m = &self.0;
        Mat2::new(
            m[0][0].conj(),
            m[0][1].conj(),
            m[1][0].conj(),
            m[1][1].conj(),
        )
    }

    pub fn transpose(&self) -> Mat2 {
        let m = &self.0;
        Mat2::new(m[0][0], m[1][0], m[0][1], m[1][1])
    }

    /// Inverse by the adjugate formula; `None` when the determinant is zero.
    pub fn inverse(&self) -> Option<Mat2> {
        let det = self.det();
        if det == ZERO {
            return None;
        }
        let m = &self.0;
        let inv = det.inv();
        Some(Mat2::new(
            m[1][1] * inv,
            -m[0][1] * inv,
            -m[1][0] * inv,
            m[0][0] * inv,
        ))
    }

    pub fn scale(&self, c: C64) -> Mat2 {
        let m = &self.0;
        Mat2::new(m[0][0] * c, m[0][1] * c, m[1][0] * c, m[1][1] * c)
    }

    pub fn scale_real(&self, c: f64) -> Mat2 {
        self.scale(C64::new(c, 0.0))
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        let m = &self.0;
        Vec2([
            m[0][0] * v.0[0] + m[0][1] * v.0[1],
            m[1][0] * v.0[0] + m[1][1] * v.0[1],
        ])
    }

    pub fn commutator(&self, other: &Mat2) -> Mat2 {
        *self * *other - *other * *self
    }

    pub fn anticommutator(&self, other: &Mat2) -> Mat2 {
        *self * *other + *other * *self
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius distance.
    pub fn dist(&self, other: &Mat2) -> f64 {
        (*self - *other).norm()
    }

    pub fn is_hermitian_exact(&self) -> bool {
        *self == self.dagger()
    }

    /// Eigenvalues of a Hermitian matrix in ascending order.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let m = &self.0;
        let a = m[0][0].re;
        let d = m[1][1].re;
        let half_gap = (((a - d) / 2.0).powi(2) + m[0][1].norm_sqr()).sqrt();
        let mid = (a + d) / 2.0;
        [mid - half_gap, mid + half_gap]
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + (-o)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale_real(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Index<(usize, usize)> for Mat2 {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat2 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}
