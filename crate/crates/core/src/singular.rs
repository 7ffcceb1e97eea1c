//! Singular directions of the flotation surface (liquid plane through a
//! vertex) and recovery of the vertices from them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::flotation::FlotationAccess;
use crate::geom::{cos, least_squares_point, sin, Dim, Vec3, PI, TAU};

/// Arc `t -> start cos t + dir sin t`, `t in [0, angle]`, of a great circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreatCircleArc {
    pub start: Vec3,
    pub dir: Vec3,
    pub angle: f64,
}

impl GreatCircleArc {
    /// `dir` is orthonormalized against `start`.
    pub fn new(start: Vec3, dir: Vec3, angle: f64) -> Result<Self> {
        let start = start.normalized().ok_or(Error::InvalidInput("zero start direction"))?;
        let dir = (dir - start * dir.dot(start))
            .normalized()
            .ok_or(Error::InvalidInput("arc direction parallel to start"))?;
        if !(angle > 0.0 && angle.is_finite()) {
            return Err(Error::InvalidInput("arc angle must be positive"));
        }
        Ok(GreatCircleArc { start, dir, angle })
    }

    /// Shorter arc from `a` to `b`.
    pub fn between(a: Vec3, b: Vec3) -> Result<Self> {
        let a = a.normalized().ok_or(Error::InvalidInput("zero direction"))?;
        let b = b.normalized().ok_or(Error::InvalidInput("zero direction"))?;
        let angle = crate::geom::acos(a.dot(b));
        Self::new(a, b, angle)
    }

    /// The full unit circle of the plane.
    pub fn full_circle_2d() -> Self {
        GreatCircleArc {
            start: Vec3::X,
            dir: Vec3::Y,
            angle: TAU,
        }
    }

    pub fn point(&self, t: f64) -> Vec3 {
        self.start * cos(t) + self.dir * sin(t)
    }
}

/// A direction at which the patch label changes.
#[derive(Clone, Debug, PartialEq)]
pub struct Crossing {
    pub theta: Vec3,
    pub h: f64,
    pub before: Vec<usize>,
    pub after: Vec<usize>,
}

impl Crossing {
    /// Labels that change across the crossing. For an edge-set label this is
    /// the set of edges at the crossed vertex.
    pub fn signature(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for x in &self.before {
            if self.after.binary_search(x).is_err() {
                out.push(*x);
            }
        }
        for x in &self.after {
            if self.before.binary_search(x).is_err() {
                out.push(*x);
            }
        }
        out.sort_unstable();
        out
    }
}

/// A vertex estimated from the planes `{x . theta_k = h_k}` of a group of
/// crossings.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexEstimate {
    pub point: Vec3,
    /// Indices into the crossing list.
    pub members: Vec<usize>,
    /// `max_k |point . theta_k - h_k|`.
    pub residual: f64,
}

/// Crossings found on a set of paths and the vertices recovered from them.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularSet {
    pub crossings: Vec<Crossing>,
    pub groups: Vec<VertexEstimate>,
}

const ANGLE_TOL: f64 = 1e-10;

/// Walks `path` in `steps` equal steps, bisecting every change of the patch
/// label down to an angular width of 1e-10.
pub fn detect_singular_directions(
    access: &impl FlotationAccess,
    path: &GreatCircleArc,
    steps: usize,
) -> Result<Vec<Crossing>> {
    if steps < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: steps });
    }
    let mut out = Vec::new();
    let dt = path.angle / steps as f64;
    let mut prev = access.patch_label(path.point(0.0))?;
    for k in 1..=steps {
        let t1 = if k == steps { path.angle } else { dt * k as f64 };
        let t0 = dt * (k - 1) as f64;
        let cur = access.patch_label(path.point(t1))?;
        if cur != prev {
            // depth-first, left half first, so crossings come out in path order
            let mut stack = alloc::vec![(t0, prev.clone(), t1, cur.clone())];
            while let Some((a, la, b, lb)) = stack.pop() {
                if b - a <= ANGLE_TOL {
                    let theta = path.point(0.5 * (a + b));
                    out.push(Crossing {
                        theta,
                        h: access.level(theta)?,
                        before: la,
                        after: lb,
                    });
                    continue;
                }
                let m = 0.5 * (a + b);
                let lm = access.patch_label(path.point(m))?;
                if lm != lb {
                    stack.push((m, lm.clone(), b, lb));
                }
                if lm != la {
                    stack.push((a, la, m, lm));
                }
            }
        }
        prev = cur;
    }
    Ok(out)
}

/// Default scan paths. In the plane: the full circle. In space: three
/// pencils of great circles through mutually orthogonal axes, rotated away
/// from the coordinate axes, each with 24 circles.
pub fn default_paths(dim: Dim) -> Vec<GreatCircleArc> {
    match dim {
        Dim::Two => alloc::vec![GreatCircleArc::full_circle_2d()],
        Dim::Three => {
            let rot = euler(0.3, 0.7, 1.1);
            let axes = [rot[0], rot[1], rot[2]];
            let m = 24;
            let mut paths = Vec::new();
            for k in 0..3 {
                let a = axes[k];
                let u = axes[(k + 1) % 3];
                let w = axes[(k + 2) % 3];
                for j in 0..m {
                    let psi = (j as f64 + 0.5) * PI / m as f64;
                    paths.push(GreatCircleArc {
                        start: a,
                        dir: u * cos(psi) + w * sin(psi),
                        angle: TAU,
                    });
                }
            }
            paths
        }
    }
}

fn euler(a: f64, b: f64, c: f64) -> [Vec3; 3] {
    let rz = |t: f64, v: Vec3| Vec3::new(cos(t) * v.x - sin(t) * v.y, sin(t) * v.x + cos(t) * v.y, v.z);
    let rx = |t: f64, v: Vec3| Vec3::new(v.x, cos(t) * v.y - sin(t) * v.z, sin(t) * v.y + cos(t) * v.z);
    let f = |v: Vec3| rz(c, rx(b, rz(a, v)));
    [f(Vec3::X), f(Vec3::Y), f(Vec3::Z)]
}

/// Crossings over several paths, concatenated in path order.
pub fn scan_paths(
    access: &impl FlotationAccess,
    paths: &[GreatCircleArc],
    steps: usize,
) -> Result<Vec<Crossing>> {
    let mut out = Vec::new();
    for p in paths {
        out.extend(detect_singular_directions(access, p, steps)?);
    }
    Ok(out)
}

const MIN_RATIO: f64 = 1e-8;

/// Recovers vertices from crossings using only the planes
/// `{x . theta_k = h_k}` and the label signatures.
///
/// Crossings are grouped by the set of labels that change (the edges at the
/// crossed vertex); each group is solved by least squares. Groups whose
/// fitted points coincide within `1e-7 extent` are merged.
pub fn recover_vertices(access: &impl FlotationAccess, crossings: &[Crossing]) -> Result<Vec<VertexEstimate>> {
    let dim = access.dim();
    let d = dim.get();
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (k, c) in crossings.iter().enumerate() {
        groups.entry(c.signature()).or_default().push(k);
    }
    let mut est: Vec<VertexEstimate> = Vec::new();
    for members in groups.into_values() {
        est.push(fit(crossings, members, dim, d)?);
    }
    let tol = 1e-7 * access.extent();
    let mut merged: Vec<VertexEstimate> = Vec::new();
    for e in est {
        match merged.iter_mut().find(|m| m.point.dist(e.point) <= tol) {
            Some(m) => {
                let mut members = core::mem::take(&mut m.members);
                members.extend(e.members);
                members.sort_unstable();
                *m = fit(crossings, members, dim, d)?;
            }
            None => merged.push(e),
        }
    }
    merged.sort_by(|a, b| a.point.lex_cmp(&b.point));
    Ok(merged)
}

fn fit(crossings: &[Crossing], members: Vec<usize>, dim: Dim, d: usize) -> Result<VertexEstimate> {
    let planes: Vec<(Vec3, f64)> = members.iter().map(|&k| (crossings[k].theta, crossings[k].h)).collect();
    if planes.len() < d {
        return Err(Error::InsufficientData {
            needed: d,
            got: planes.len(),
        });
    }
    let (point, ratio) = least_squares_point(&planes, dim);
    if ratio < MIN_RATIO {
        return Err(Error::DegenerateCluster { ratio });
    }
    let residual = planes
        .iter()
        .map(|(t, h)| (point.dot(*t) - h).abs())
        .fold(0.0, f64::max);
    Ok(VertexEstimate {
        point,
        members,
        residual,
    })
}

/// Scans `paths` and recovers the vertices.
pub fn singular_set(access: &impl FlotationAccess, paths: &[GreatCircleArc], steps: usize) -> Result<SingularSet> {
    let crossings = scan_paths(access, paths, steps)?;
    let groups = recover_vertices(access, &crossings)?;
    Ok(SingularSet { crossings, groups })
}
