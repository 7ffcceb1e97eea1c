//! Convex polytopes in the plane and in space.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geom::{generalized_cross, Dim, Vec3, EPS_GEO};
use crate::hull::{hull_2d, hull_3d};

/// A boundary facet: vertex cycle (counter-clockwise seen from outside),
/// outward unit normal and plane offset `normal . x = offset`.
#[derive(Clone, Debug, PartialEq)]
pub struct Facet {
    pub cycle: Vec<usize>,
    pub normal: Vec3,
    pub offset: f64,
}

/// Convex polytope with vertices in canonical order.
///
/// In the plane vertices run counter-clockwise from the lexicographically
/// smallest one and facets are the edges `(i, i+1)`. In space vertices are
/// sorted lexicographically and every facet cycle starts at its smallest
/// index.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: Dim,
    vertices: Vec<Vec3>,
    facets: Vec<Facet>,
    triangulation: Vec<usize>,
    edges: Vec<(usize, usize)>,
    volume: f64,
    centroid: Vec3,
    diameter: f64,
    density: Option<f64>,
    eps: f64,
}

/// Builds the convex hull of `points` given as coordinate slices of length `dim`.
pub fn build_polytope(points: &[Vec<f64>], dim: usize) -> Result<Polytope> {
    let dim = Dim::new(dim)?;
    let pts = points
        .iter()
        .map(|p| {
            if p.len() != dim.get() {
                return Err(Error::InvalidInput("point length does not match dimension"));
            }
            Vec3::from_slice(p)
        })
        .collect::<Result<Vec<_>>>()?;
    Polytope::new(&pts, dim)
}

impl Polytope {
    /// Hull of `points` with the default tolerance.
    pub fn new(points: &[Vec3], dim: Dim) -> Result<Self> {
        Self::with_eps(points, dim, EPS_GEO)
    }

    /// Hull of `points`; `eps` is the absolute tolerance used for
    /// coincidence and coplanarity.
    pub fn with_eps(points: &[Vec3], dim: Dim, eps: f64) -> Result<Self> {
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidInput("non-finite coordinate"));
        }
        match dim {
            Dim::Two => {
                let flat: Vec<Vec3> = points.iter().map(|p| Vec3::planar(p.x, p.y)).collect();
                let verts = hull_2d(&flat, eps)?;
                let n = verts.len();
                let facets = (0..n)
                    .map(|i| {
                        let a = verts[i];
                        let b = verts[(i + 1) % n];
                        let normal = generalized_cross(&[b - a]).normalized().unwrap();
                        Facet {
                            cycle: alloc::vec![i, (i + 1) % n],
                            normal,
                            offset: normal.dot(a),
                        }
                    })
                    .collect();
                Ok(Self::assemble(dim, verts, facets, eps))
            }
            Dim::Three => {
                let (verts, hf) = hull_3d(points, eps)?;
                let facets = hf
                    .into_iter()
                    .map(|f| {
                        let offset = f.cycle.iter().map(|&i| f.normal.dot(verts[i])).sum::<f64>()
                            / f.cycle.len() as f64;
                        Facet {
                            cycle: f.cycle,
                            normal: f.normal,
                            offset,
                        }
                    })
                    .collect();
                Ok(Self::assemble(dim, verts, facets, eps))
            }
        }
    }

    fn assemble(dim: Dim, vertices: Vec<Vec3>, facets: Vec<Facet>, eps: f64) -> Self {
        let mut triangulation = Vec::new();
        let mut edges = Vec::new();
        for f in &facets {
            match dim {
                Dim::Two => triangulation.extend_from_slice(&f.cycle),
                Dim::Three => {
                    for k in 1..f.cycle.len() - 1 {
                        triangulation.extend_from_slice(&[f.cycle[0], f.cycle[k], f.cycle[k + 1]]);
                    }
                }
            }
            let m = f.cycle.len();
            let pairs = if dim == Dim::Two { 1 } else { m };
            for k in 0..pairs {
                let (a, b) = (f.cycle[k], f.cycle[(k + 1) % m]);
                edges.push((a.min(b), a.max(b)));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let mut diameter: f64 = 0.0;
        for (i, a) in vertices.iter().enumerate() {
            for b in &vertices[i + 1..] {
                diameter = diameter.max(a.dist(*b));
            }
        }
        let mut p = Polytope {
            dim,
            vertices,
            facets,
            triangulation,
            edges,
            volume: 0.0,
            centroid: Vec3::ZERO,
            diameter,
            density: None,
            eps,
        };
        p.volume = p.boundary_volume();
        p.centroid = p.simplex_centroid();
        p
    }

    /// Returns a copy carrying the density `delta`, which must lie in (0, 1).
    pub fn with_density(mut self, delta: f64) -> Result<Self> {
        check_density(delta)?;
        self.density = Some(delta);
        Ok(self)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }
    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }
    /// Boundary simplices flattened with stride `d` (edges in the plane,
    /// triangles in space).
    pub fn triangulation(&self) -> &[usize] {
        &self.triangulation
    }
    /// Sorted list of edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
    pub fn volume(&self) -> f64 {
        self.volume
    }
    pub fn centroid(&self) -> Vec3 {
        self.centroid
    }
    pub fn diameter(&self) -> f64 {
        self.diameter
    }
    pub fn density(&self) -> Option<f64> {
        self.density
    }
    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Mean of the vertices, an interior point used as integration anchor.
    pub fn vertex_mean(&self) -> Vec3 {
        self.vertices.iter().copied().sum::<Vec3>() / self.vertices.len() as f64
    }

    /// Range `(min, max)` of `v . theta` over the vertices.
    pub fn extent_along(&self, theta: Vec3) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in &self.vertices {
            let s = v.dot(theta);
            lo = lo.min(s);
            hi = hi.max(s);
        }
        (lo, hi)
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bounding_box(&self) -> (Vec3, Vec3) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices {
            lo = Vec3::new(lo.x.min(v.x), lo.y.min(v.y), lo.z.min(v.z));
            hi = Vec3::new(hi.x.max(v.x), hi.y.max(v.y), hi.z.max(v.z));
        }
        (lo, hi)
    }

    /// Membership test `N_i . x <= offset_i + tol` for every facet.
    pub fn contains(&self, x: Vec3, tol: f64) -> bool {
        self.facets.iter().all(|f| f.normal.dot(x) <= f.offset + tol)
    }

    /// Volume via the boundary simplex formula
    /// `|P| = (1/d) sum (w_1 - o) . N~ / (d-1)!` with `N~` the generalized
    /// cross product of the simplex edge vectors.
    fn boundary_volume(&self) -> f64 {
        let d = self.dim.get();
        let o = self.vertex_mean();
        let fact = if d == 3 { 2.0 } else { 1.0 };
        let mut v = 0.0;
        for s in self.triangulation.chunks_exact(d) {
            v += (self.vertices[s[0]] - o).dot(self.simplex_normal(s)) / fact;
        }
        v / d as f64
    }

    /// Centroid from the signed simplices spanned by the vertex mean and the
    /// boundary simplices.
    fn simplex_centroid(&self) -> Vec3 {
        let d = self.dim.get();
        let o = self.vertex_mean();
        let mut acc = Vec3::ZERO;
        let mut vol = 0.0;
        for s in self.triangulation.chunks_exact(d) {
            let w = (self.vertices[s[0]] - o).dot(self.simplex_normal(s));
            let c = s.iter().map(|&i| self.vertices[i] - o).sum::<Vec3>() / (d + 1) as f64;
            acc += c * w;
            vol += w;
        }
        o + acc / vol
    }

    fn simplex_normal(&self, s: &[usize]) -> Vec3 {
        let w0 = self.vertices[s[0]];
        match s.len() {
            2 => generalized_cross(&[self.vertices[s[1]] - w0]),
            _ => generalized_cross(&[self.vertices[s[1]] - w0, self.vertices[s[2]] - w0]),
        }
    }

    /// Volume by decomposition into signed simplices from the vertex mean,
    /// computed with explicit determinants; an independent check of
    /// [`Polytope::volume`].
    pub fn simplex_volume(&self) -> f64 {
        let d = self.dim.get();
        let o = self.vertex_mean();
        let mut vol = 0.0;
        for s in self.triangulation.chunks_exact(d) {
            let a = self.vertices[s[0]] - o;
            let b = self.vertices[s[1]] - o;
            vol += if d == 2 {
                a.cross2(b) / 2.0
            } else {
                a.dot(b.cross(self.vertices[s[2]] - o)) / 6.0
            };
        }
        vol
    }

    /// Applies `x -> R x + t` to every vertex and rebuilds.
    pub fn transformed(&self, rot: &[[f64; 3]; 3], t: Vec3) -> Result<Self> {
        let pts: Vec<Vec3> = self
            .vertices
            .iter()
            .map(|v| apply(rot, *v) + t)
            .collect();
        let mut p = Self::with_eps(&pts, self.dim, self.eps)?;
        p.density = self.density;
        Ok(p)
    }
}

pub(crate) fn apply(rot: &[[f64; 3]; 3], v: Vec3) -> Vec3 {
    Vec3::new(
        rot[0][0] * v.x + rot[0][1] * v.y + rot[0][2] * v.z,
        rot[1][0] * v.x + rot[1][1] * v.y + rot[1][2] * v.z,
        rot[2][0] * v.x + rot[2][1] * v.y + rot[2][2] * v.z,
    )
}

pub(crate) fn check_density(delta: f64) -> Result<()> {
    if delta.is_finite() && delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidDensity(delta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> Polytope {
        let mut v = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    v.push(alloc::vec![x, y, z]);
                }
            }
        }
        v.push(alloc::vec![0.5, 0.5, 0.5]);
        build_polytope(&v, 3).unwrap()
    }

    #[test]
    fn unit_square() {
        let p = build_polytope(
            &[
                alloc::vec![1.0, 1.0],
                alloc::vec![0.0, 0.0],
                alloc::vec![0.0, 1.0],
                alloc::vec![1.0, 0.0],
            ],
            2,
        )
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.edges().len(), 4);
        assert_eq!(p.vertices()[0], Vec3::planar(0.0, 0.0));
        assert!((p.volume() - 1.0).abs() < 1e-15);
        assert!(p.centroid().dist(Vec3::planar(0.5, 0.5)) < 1e-15);
        for f in p.facets() {
            for v in p.vertices() {
                assert!(f.normal.dot(*v) <= f.offset + 1e-12);
            }
        }
    }

    #[test]
    fn cube_drops_centre() {
        let p = cube();
        assert_eq!(p.vertices().len(), 8);
        assert_eq!(p.facets().len(), 6);
        assert_eq!(p.edges().len(), 12);
        assert!((p.volume() - 1.0).abs() < 1e-14);
        assert!((p.simplex_volume() - 1.0).abs() < 1e-14);
        assert!(p.centroid().dist(Vec3::new(0.5, 0.5, 0.5)) < 1e-14);
        assert!((p.diameter() - libm::sqrt(3.0)).abs() < 1e-14);
    }

    #[test]
    fn simplices() {
        let t = build_polytope(
            &[
                alloc::vec![0.0, 0.0, 0.0],
                alloc::vec![1.0, 0.0, 0.0],
                alloc::vec![0.0, 1.0, 0.0],
                alloc::vec![0.0, 0.0, 1.0],
            ],
            3,
        )
        .unwrap();
        assert!((t.volume() - 1.0 / 6.0).abs() < 1e-15);
        assert!(t.centroid().dist(Vec3::new(0.25, 0.25, 0.25)) < 1e-15);
        let tri = build_polytope(
            &[alloc::vec![0.0, 0.0], alloc::vec![1.0, 0.0], alloc::vec![0.0, 1.0]],
            2,
        )
        .unwrap();
        assert!(tri.centroid().dist(Vec3::planar(1.0 / 3.0, 1.0 / 3.0)) < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            build_polytope(&[alloc::vec![0.0]], 1).unwrap_err(),
            Error::UnsupportedDimension(1)
        );
        assert!(cube().with_density(1.0).is_err());
        assert!(cube().with_density(0.3).is_ok());
    }
}
