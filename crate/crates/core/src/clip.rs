//! Half-space clipping, hyperplane sections and their moments.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geom::{orthonormal_complement, Dim, Vec3};
use crate::hull::hull_2d;
use crate::polytope::Polytope;

/// A hyperplane `{x . theta = offset}` with submerged side `x . theta >= offset`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneSpec {
    pub theta: Vec3,
    pub offset: f64,
}

impl PlaneSpec {
    /// Fails unless `theta` has unit length within 1e-12.
    pub fn new(theta: Vec3, offset: f64) -> Result<Self> {
        if !theta.is_finite() || !offset.is_finite() || (theta.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput("plane direction must be a unit vector"));
        }
        Ok(PlaneSpec { theta, offset })
    }
}

/// A line (plane, in space) inside a section, written in frame coordinates
/// as `{v : a . v + c = 0}` with `a` a unit vector of the frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubPlane {
    pub a: Vec3,
    pub c: f64,
}

impl SubPlane {
    pub fn new(a: Vec3, c: f64) -> Result<Self> {
        if !a.is_finite() || (a.norm() - 1.0).abs() > 1e-12 || a.z != 0.0 {
            return Err(Error::InvalidInput("sub-plane direction must be a unit frame vector"));
        }
        Ok(SubPlane { a, c })
    }

    /// The sub-plane with direction `a` through the point `g`.
    pub fn through(a: Vec3, g: Vec3) -> Result<Self> {
        Self::new(a, -a.dot(g))
    }
}

/// The submerged part `P ∩ {x . theta >= h}`.
#[derive(Clone, Debug)]
pub struct Cap {
    pub polytope: Polytope,
    pub source_theta: Vec3,
    pub source_offset: f64,
}

/// The (d-1)-dimensional section `P ∩ {x . theta = h}` in an orthonormal
/// frame of `theta`-perp anchored at `h theta`.
///
/// Frame coordinates are stored in the `x` (and `y`) components of a
/// [`Vec3`]. For a planar body the polygon is the pair of chord endpoints.
#[derive(Clone, Debug)]
pub struct Section {
    pub dim: Dim,
    pub theta: Vec3,
    pub offset: f64,
    pub origin: Vec3,
    pub frame: [Vec3; 2],
    pub polygon: Vec<Vec3>,
    pub area: f64,
    pub centroid: Vec3,
    pub second_moment: [[f64; 2]; 2],
}

impl Section {
    /// Maps frame coordinates back to ambient space.
    pub fn to_world(&self, p: Vec3) -> Vec3 {
        self.origin + self.frame[0] * p.x + self.frame[1] * p.y
    }

    pub fn centroid_world(&self) -> Vec3 {
        self.to_world(self.centroid)
    }

    /// Vertices (chord endpoints in the plane) in ambient coordinates.
    pub fn polygon_world(&self) -> Vec<Vec3> {
        self.polygon.iter().map(|p| self.to_world(*p)).collect()
    }
}

/// Clips `p` to the closed half-space `x . theta >= offset`.
pub fn clip(p: &Polytope, plane: &PlaneSpec) -> Result<Cap> {
    let theta = plane.theta;
    let h = plane.offset;
    let (lo, hi) = p.extent_along(theta);
    if h >= hi {
        return Err(Error::EmptyCap);
    }
    if h <= lo {
        return Err(Error::FullBody);
    }
    let verts = p.vertices();
    let s: Vec<f64> = verts.iter().map(|v| v.dot(theta)).collect();
    let mut pts: Vec<Vec3> = verts
        .iter()
        .zip(&s)
        .filter(|(_, &si)| si >= h)
        .map(|(v, _)| *v)
        .collect();
    let eps = p.eps();
    for &(i, j) in p.edges() {
        if (s[i] - h) * (s[j] - h) < 0.0 {
            let u = edge_point(verts[i], verts[j], s[i], s[j], h);
            if pts.iter().all(|q| q.dist(u) > eps) {
                pts.push(u);
            }
        }
    }
    let cap = Polytope::with_eps(&pts, p.dim(), eps).map_err(|e| match e {
        Error::DegenerateInput(_) => Error::EmptyCap,
        other => other,
    })?;
    Ok(Cap {
        polytope: cap,
        source_theta: theta,
        source_offset: h,
    })
}

/// Point where the segment `v1 v2` meets the level `h`:
/// `u = ((h - v1.theta) / ((v2 - v1).theta)) (v2 - v1) + v1`.
#[inline]
pub fn edge_point(v1: Vec3, v2: Vec3, s1: f64, s2: f64, h: f64) -> Vec3 {
    (v2 - v1) * ((h - s1) / (s2 - s1)) + v1
}

/// Section of `p` by the plane, with area, centroid and second moments
/// computed exactly over a fan triangulation.
pub fn section(p: &Polytope, plane: &PlaneSpec) -> Result<Section> {
    let theta = plane.theta;
    let h = plane.offset;
    let dim = p.dim();
    let (lo, hi) = p.extent_along(theta);
    if !(h > lo && h < hi) {
        return Err(Error::EmptySection);
    }
    let verts = p.vertices();
    let s: Vec<f64> = verts.iter().map(|v| v.dot(theta)).collect();
    let origin = theta * h;
    let frame = orthonormal_complement(theta, dim);
    let mut pts: Vec<Vec3> = Vec::new();
    for (v, &si) in verts.iter().zip(&s) {
        if si == h {
            pts.push(*v);
        }
    }
    for &(i, j) in p.edges() {
        if (s[i] - h) * (s[j] - h) < 0.0 {
            pts.push(edge_point(verts[i], verts[j], s[i], s[j], h));
        }
    }
    let local: Vec<Vec3> = pts
        .iter()
        .map(|q| {
            let r = *q - origin;
            match dim {
                Dim::Two => Vec3::planar(r.dot(frame[0]), 0.0),
                Dim::Three => Vec3::planar(r.dot(frame[0]), r.dot(frame[1])),
            }
        })
        .collect();
    let (polygon, area, centroid, second_moment) = match dim {
        Dim::Two => {
            let t0 = local.iter().map(|q| q.x).fold(f64::INFINITY, f64::min);
            let t1 = local.iter().map(|q| q.x).fold(f64::NEG_INFINITY, f64::max);
            let len = t1 - t0;
            if !(len > p.eps()) {
                return Err(Error::EmptySection);
            }
            let m = (t1 * t1 * t1 - t0 * t0 * t0) / 3.0;
            (
                alloc::vec![Vec3::planar(t0, 0.0), Vec3::planar(t1, 0.0)],
                len,
                Vec3::planar((t0 + t1) / 2.0, 0.0),
                [[m, 0.0], [0.0, 0.0]],
            )
        }
        Dim::Three => {
            let poly = hull_2d(&local, p.eps()).map_err(|_| Error::EmptySection)?;
            let (area, c, m) = polygon_moments(&poly);
            if !(area > 0.0) {
                return Err(Error::EmptySection);
            }
            (poly, area, c, m)
        }
    };
    Ok(Section {
        dim,
        theta,
        offset: h,
        origin,
        frame,
        polygon,
        area,
        centroid,
        second_moment,
    })
}

/// Area, centroid and `∫ v_i v_j dv` of a counter-clockwise convex polygon.
fn polygon_moments(poly: &[Vec3]) -> (f64, Vec3, [[f64; 2]; 2]) {
    let p0 = poly[0];
    let mut area = 0.0;
    let mut first = Vec3::ZERO;
    let mut m = [[0.0; 2]; 2];
    for k in 1..poly.len() - 1 {
        let tri = [p0, poly[k], poly[k + 1]];
        let a = (tri[1] - tri[0]).cross2(tri[2] - tri[0]) / 2.0;
        area += a;
        let sum = tri[0] + tri[1] + tri[2];
        first += sum * (a / 3.0);
        for i in 0..2 {
            for j in 0..2 {
                let sq: f64 = tri.iter().map(|q| q[i] * q[j]).sum();
                m[i][j] += a / 12.0 * (sq + sum[i] * sum[j]);
            }
        }
    }
    (area, first / area, m)
}

/// `∫_S dist²(Π, v) dv` for the sub-plane `Π = {a . v + c = 0}`, integrated
/// exactly over a fan triangulation of the section.
pub fn section_second_moment(s: &Section, sub: &SubPlane) -> f64 {
    let f = |q: Vec3| sub.a.dot(q) + sub.c;
    match s.dim {
        Dim::Two => {
            let len = s.polygon[1].x - s.polygon[0].x;
            let (f0, f1) = (f(s.polygon[0]), f(s.polygon[1]));
            len / 3.0 * (f0 * f0 + f0 * f1 + f1 * f1)
        }
        Dim::Three => {
            let p0 = s.polygon[0];
            let mut total = 0.0;
            for k in 1..s.polygon.len() - 1 {
                let tri = [p0, s.polygon[k], s.polygon[k + 1]];
                let a = (tri[1] - tri[0]).cross2(tri[2] - tri[0]) / 2.0;
                let fk = [f(tri[0]), f(tri[1]), f(tri[2])];
                let sq = fk[0] * fk[0] + fk[1] * fk[1] + fk[2] * fk[2];
                let mixed = fk[0] * fk[1] + fk[0] * fk[2] + fk[1] * fk[2];
                total += a / 6.0 * (sq + mixed);
            }
            total
        }
    }
}

/// Cap volume `V(h)` and section area `A(h) = -V'(h)` along a fixed
/// direction, evaluated facet by facet without rebuilding a hull.
pub struct LevelFunction<'a> {
    p: &'a Polytope,
    theta: Vec3,
    s: Vec<f64>,
    anchor: Vec3,
    facet_base: Vec<f64>,
}

impl<'a> LevelFunction<'a> {
    pub fn new(p: &'a Polytope, theta: Vec3) -> Self {
        let anchor = p.vertex_mean();
        let s = p.vertices().iter().map(|v| v.dot(theta)).collect();
        let facet_base = p
            .facets()
            .iter()
            .map(|f| f.offset - anchor.dot(f.normal))
            .collect();
        LevelFunction {
            p,
            theta,
            s,
            anchor,
            facet_base,
        }
    }

    pub fn theta(&self) -> Vec3 {
        self.theta
    }

    /// Vertex heights `v . theta`.
    pub fn heights(&self) -> &[f64] {
        &self.s
    }

    /// Returns `(V(h), A(h))`.
    pub fn eval(&self, h: f64) -> (f64, f64) {
        let verts = self.p.vertices();
        let dim = self.p.dim();
        let mut vol = 0.0;
        let mut flux = Vec3::ZERO;
        let mut buf: Vec<Vec3> = Vec::with_capacity(16);
        for (f, &base) in self.p.facets().iter().zip(&self.facet_base) {
            let measure = match dim {
                Dim::Two => {
                    let (i, j) = (f.cycle[0], f.cycle[1]);
                    let (si, sj) = (self.s[i] - h, self.s[j] - h);
                    let len = verts[i].dist(verts[j]);
                    if si >= 0.0 && sj >= 0.0 {
                        len
                    } else if si < 0.0 && sj < 0.0 {
                        0.0
                    } else {
                        let t = si.max(sj) / (si - sj).abs();
                        len * t
                    }
                }
                Dim::Three => {
                    buf.clear();
                    let m = f.cycle.len();
                    for k in 0..m {
                        let (i, j) = (f.cycle[k], f.cycle[(k + 1) % m]);
                        let (si, sj) = (self.s[i] - h, self.s[j] - h);
                        if si >= 0.0 {
                            buf.push(verts[i]);
                        }
                        if (si >= 0.0) != (sj >= 0.0) {
                            buf.push(edge_point(verts[i], verts[j], self.s[i], self.s[j], h));
                        }
                    }
                    if buf.len() < 3 {
                        0.0
                    } else {
                        let o = buf[0];
                        let mut va = Vec3::ZERO;
                        for k in 1..buf.len() - 1 {
                            va += (buf[k] - o).cross(buf[k + 1] - o);
                        }
                        va.dot(f.normal) / 2.0
                    }
                }
            };
            vol += base * measure;
            flux += f.normal * measure;
        }
        let area = flux.dot(self.theta).max(0.0);
        vol += (self.anchor.dot(self.theta) - h) * area;
        (vol / dim.get() as f64, area)
    }

    /// Sorted indices (into [`Polytope::edges`]) of edges crossed strictly by
    /// the level `h`.
    pub fn edge_set(&self, h: f64) -> Vec<usize> {
        self.p
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &(i, j))| (self.s[i] - h) * (self.s[j] - h) < 0.0)
            .map(|(k, _)| k)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::build_polytope;

    fn square() -> Polytope {
        build_polytope(
            &[
                alloc::vec![0.0, 0.0],
                alloc::vec![1.0, 0.0],
                alloc::vec![1.0, 1.0],
                alloc::vec![0.0, 1.0],
            ],
            2,
        )
        .unwrap()
    }

    fn cube() -> Polytope {
        let mut v = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    v.push(alloc::vec![x, y, z]);
                }
            }
        }
        build_polytope(&v, 3).unwrap()
    }

    #[test]
    fn square_cap_and_section() {
        let p = square();
        let plane = PlaneSpec::new(Vec3::planar(0.0, 1.0), 0.75).unwrap();
        let cap = clip(&p, &plane).unwrap();
        assert!((cap.polytope.volume() - 0.25).abs() < 1e-15);
        let s = section(&p, &plane).unwrap();
        assert!((s.area - 1.0).abs() < 1e-15);
        assert!(s.centroid_world().dist(Vec3::planar(0.5, 0.75)) < 1e-15);
        let lf = LevelFunction::new(&p, plane.theta);
        let (v, a) = lf.eval(0.75);
        assert!((v - 0.25).abs() < 1e-15);
        assert!((a - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cube_half_and_hexagon() {
        let p = cube();
        let plane = PlaneSpec::new(Vec3::Z, 0.5).unwrap();
        assert!((clip(&p, &plane).unwrap().polytope.volume() - 0.5).abs() < 1e-15);
        let s = section(&p, &plane).unwrap();
        assert!((s.area - 1.0).abs() < 1e-15);
        assert!(s.centroid_world().dist(Vec3::new(0.5, 0.5, 0.5)) < 1e-15);

        let t = Vec3::new(1.0, 1.0, 1.0).normalized().unwrap();
        let plane = PlaneSpec::new(t, libm::sqrt(3.0) / 2.0).unwrap();
        let s = section(&p, &plane).unwrap();
        assert_eq!(s.polygon.len(), 6);
        assert!((s.area - 3.0 * libm::sqrt(3.0) / 4.0).abs() < 1e-14);
        let lf = LevelFunction::new(&p, t);
        let (v, a) = lf.eval(plane.offset);
        assert!((v - 0.5).abs() < 1e-14);
        assert!((a - s.area).abs() < 1e-14);
    }

    #[test]
    fn level_function_matches_clip() {
        let p = cube();
        let t = Vec3::new(0.3, -0.5, 0.8).normalized().unwrap();
        let lf = LevelFunction::new(&p, t);
        let (lo, hi) = p.extent_along(t);
        for k in 1..20 {
            let h = lo + (hi - lo) * k as f64 / 20.0;
            let cap = clip(&p, &PlaneSpec { theta: t, offset: h }).unwrap();
            let (v, a) = lf.eval(h);
            assert!((v - cap.polytope.volume()).abs() < 1e-14, "{v} vs {}", cap.polytope.volume());
            let s = section(&p, &PlaneSpec { theta: t, offset: h }).unwrap();
            assert!((a - s.area).abs() < 1e-13);
        }
    }

    #[test]
    fn triangle_corner_cap() {
        let p = build_polytope(
            &[alloc::vec![0.0, 0.0], alloc::vec![1.0, 0.0], alloc::vec![0.0, 1.0]],
            2,
        )
        .unwrap();
        let cap = clip(&p, &PlaneSpec::new(Vec3::planar(0.0, -1.0), -0.5).unwrap()).unwrap();
        assert_eq!(cap.polytope.vertices().len(), 4);
        assert!((cap.polytope.volume() - 0.375).abs() < 1e-15);
    }

    #[test]
    fn misses() {
        let p = square();
        let up = Vec3::planar(0.0, 1.0);
        assert_eq!(clip(&p, &PlaneSpec { theta: up, offset: 1.0 }).unwrap_err(), Error::EmptyCap);
        assert_eq!(clip(&p, &PlaneSpec { theta: up, offset: 0.0 }).unwrap_err(), Error::FullBody);
        assert_eq!(section(&p, &PlaneSpec { theta: up, offset: 2.0 }).unwrap_err(), Error::EmptySection);
    }

    #[test]
    fn second_moments() {
        let p = square();
        let s = section(&p, &PlaneSpec { theta: Vec3::planar(0.0, 1.0), offset: 0.5 }).unwrap();
        let sub = SubPlane::through(Vec3::planar(1.0, 0.0), s.centroid).unwrap();
        assert!((section_second_moment(&s, &sub) - 1.0 / 12.0).abs() < 1e-15);
        let s = section(&cube(), &PlaneSpec { theta: Vec3::Z, offset: 0.5 }).unwrap();
        let sub = SubPlane::through(Vec3::planar(1.0, 0.0), s.centroid).unwrap();
        assert!((section_second_moment(&s, &sub) - 1.0 / 12.0).abs() < 1e-15);
    }
}
