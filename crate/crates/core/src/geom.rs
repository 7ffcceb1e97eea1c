//! Fixed-size vector algebra shared by every module.
//!
//! Planar bodies are stored in the `z = 0` plane of the same [`Vec3`]
//! representation, so dot products, clipping and hull code are written once.
//! Transcendental functions come from `libm` because the crate is `no_std`.

use core::cmp::Ordering;
use core::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default absolute tolerance for coincidence and parallelism predicates.
pub const EPS_GEO: f64 = 1e-9;

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}
#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}
#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}
#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}
#[inline]
pub fn cbrt(x: f64) -> f64 {
    libm::cbrt(x)
}
#[inline]
pub fn acos(x: f64) -> f64 {
    libm::acos(x.clamp(-1.0, 1.0))
}

pub const TAU: f64 = core::f64::consts::TAU;
pub const PI: f64 = core::f64::consts::PI;

/// Wraps an angle into `[0, 2π)`.
pub fn wrap_angle(phi: f64) -> f64 {
    let r = libm::fmod(phi, TAU);
    if r < 0.0 {
        r + TAU
    } else if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Ambient dimension of a body.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub fn new(n: usize) -> Result<Self> {
        match n {
            2 => Ok(Dim::Two),
            3 => Ok(Dim::Three),
            other => Err(Error::UnsupportedDimension(other)),
        }
    }

    #[inline]
    pub fn get(self) -> usize {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    #[inline]
    pub const fn planar(x: f64, y: f64) -> Self {
        Vec3 { x, y, z: 0.0 }
    }

    /// Unit vector at angle `phi` in the plane.
    #[inline]
    pub fn from_angle(phi: f64) -> Self {
        Vec3::planar(cos(phi), sin(phi))
    }

    /// Builds a point from a coordinate slice of length 2 or 3.
    pub fn from_slice(c: &[f64]) -> Result<Self> {
        match *c {
            [x, y] => Ok(Vec3::planar(x, y)),
            [x, y, z] => Ok(Vec3::new(x, y, z)),
            _ => Err(Error::UnsupportedDimension(c.len())),
        }
    }

    /// The first `dim` coordinates.
    pub fn to_vec(self, dim: Dim) -> Vec<f64> {
        match dim {
            Dim::Two => alloc::vec![self.x, self.y],
            Dim::Three => alloc::vec![self.x, self.y, self.z],
        }
    }

    #[inline]
    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    /// z-component of the cross product of the planar parts.
    #[inline]
    pub fn cross2(self, o: Vec3) -> f64 {
        self.x * o.y - self.y * o.x
    }

    /// Counter-clockwise quarter turn in the plane.
    #[inline]
    pub fn perp(self) -> Vec3 {
        Vec3::planar(-self.y, self.x)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        sqrt(self.norm_sq())
    }

    #[inline]
    pub fn dist(self, o: Vec3) -> f64 {
        (self - o).norm()
    }

    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(self / n)
        } else {
            None
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    /// Lexicographic order on (x, y, z).
    pub fn lex_cmp(&self, o: &Vec3) -> Ordering {
        self.x
            .total_cmp(&o.x)
            .then(self.y.total_cmp(&o.y))
            .then(self.z.total_cmp(&o.z))
    }

    pub fn lerp(self, o: Vec3, t: f64) -> Vec3 {
        self + (o - self) * t
    }

    pub fn midpoint(self, o: Vec3) -> Vec3 {
        (self + o) * 0.5
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    #[inline]
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    #[inline]
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    #[inline]
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for Vec3 {
    #[inline]
    fn sub_assign(&mut self, o: Vec3) {
        *self = *self - o;
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    #[inline]
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl core::iter::Sum for Vec3 {
    fn sum<I: Iterator<Item = Vec3>>(iter: I) -> Vec3 {
        iter.fold(Vec3::ZERO, |a, b| a + b)
    }
}

/// Generalized vector product of `d - 1` row vectors in R^d (d = 2 or 3).
///
/// The result is orthogonal to every row and its length is the
/// `(d-1)`-volume of the parallelotope they span.
pub fn generalized_cross(rows: &[Vec3]) -> Vec3 {
    match rows {
        // | e1 e2 ; rx ry | = (ry, -rx)
        [r] => Vec3::planar(r.y, -r.x),
        [a, b] => a.cross(*b),
        _ => panic!("generalized_cross expects 1 or 2 rows"),
    }
}

/// Deterministic orthonormal basis of the hyperplane orthogonal to `theta`.
///
/// Gram-Schmidt is run on the coordinate axes least aligned with `theta`, so
/// the basis depends only on `theta`. In the plane a single axis is returned;
/// in space the pair is ordered so that `e1 x e2 = theta`.
pub fn orthonormal_complement(theta: Vec3, dim: Dim) -> [Vec3; 2] {
    match dim {
        Dim::Two => {
            // least aligned of the two axes
            let axis = if theta.x.abs() <= theta.y.abs() {
                Vec3::X
            } else {
                Vec3::Y
            };
            let e1 = (axis - theta * axis.dot(theta)).normalized().unwrap_or(Vec3::X);
            [e1, Vec3::ZERO]
        }
        Dim::Three => {
            let mut axes = [(theta.x.abs(), Vec3::X), (theta.y.abs(), Vec3::Y), (theta.z.abs(), Vec3::Z)];
            axes.sort_by(|a, b| a.0.total_cmp(&b.0));
            let a1 = axes[0].1;
            let a2 = axes[1].1;
            let e1 = (a1 - theta * a1.dot(theta)).normalized().unwrap_or(Vec3::X);
            let e2 = (a2 - theta * a2.dot(theta) - e1 * a2.dot(e1))
                .normalized()
                .unwrap_or(Vec3::Y);
            if e1.cross(e2).dot(theta) < 0.0 {
                [e2, e1]
            } else {
                [e1, e2]
            }
        }
    }
}

/// Symmetric eigen-decomposition by cyclic Jacobi rotations.
///
/// `m` is a row-major `n x n` symmetric matrix. Returns eigenvalues in
/// ascending order and the matching eigenvectors as rows.
pub fn symmetric_eigen(m: &[f64], n: usize) -> (Vec<f64>, Vec<Vec<f64>>) {
    let mut a: Vec<f64> = m.to_vec();
    let mut v = alloc::vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i * n + j] * a[i * n + j];
            }
        }
        let scale: f64 = (0..n).map(|i| a[i * n + i] * a[i * n + i]).sum::<f64>() + off;
        if off <= 1e-32 * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / sqrt(1.0 + t * t);
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = order
        .iter()
        .map(|&i| (0..n).map(|k| v[k * n + i]).collect())
        .collect();
    (values, vectors)
}

/// Least-squares point `x` minimizing `sum (n_k . x - h_k)^2` over the first
/// `dim` coordinates.
///
/// Returns the point together with the eigenvalue ratio `min/max` of the
/// normal matrix, which measures how well the planes pin the point down.
pub fn least_squares_point(planes: &[(Vec3, f64)], dim: Dim) -> (Vec3, f64) {
    let n = dim.get();
    let mut ata = alloc::vec![0.0; n * n];
    let mut atb = alloc::vec![0.0; n];
    for &(nrm, h) in planes {
        for i in 0..n {
            atb[i] += nrm[i] * h;
            for j in 0..n {
                ata[i * n + j] += nrm[i] * nrm[j];
            }
        }
    }
    let (vals, vecs) = symmetric_eigen(&ata, n);
    let max = vals[n - 1].abs();
    let ratio = if max > 0.0 { vals[0].abs() / max } else { 0.0 };
    let mut x = [0.0; 3];
    for (lambda, vec) in vals.iter().zip(&vecs) {
        if lambda.abs() <= 1e-14 * max || max == 0.0 {
            continue;
        }
        let coef = vec.iter().zip(&atb).map(|(a, b)| a * b).sum::<f64>() / lambda;
        for i in 0..n {
            x[i] += coef * vec[i];
        }
    }
    (Vec3::new(x[0], x[1], x[2]), ratio)
}
