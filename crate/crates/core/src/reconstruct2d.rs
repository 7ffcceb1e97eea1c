//! Polygon reconstruction from a planar flotation curve, and the
//! half-density counterexample pair.

use alloc::vec::Vec;

use crate::arcs2d::{compute_w, CurvePiece, FlotationCurve, HyperbolicArc};
use crate::error::{Error, Result};
use crate::flotation::{solve_level, FlotationAccess};
use crate::geom::{atan2, Dim, Vec3, TAU};
use crate::hull::hull_2d;
use crate::polytope::Polytope;

/// A liquid chord through a given boundary point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Chord {
    pub theta: Vec3,
    pub h: f64,
    /// Contact point with the flotation curve, the chord midpoint.
    pub contact: Vec3,
    /// The given point and the opposite endpoint `2 contact - x`.
    pub endpoints: [Vec3; 2],
}

const CHORD_GRID: usize = 2048;

/// The two liquid chords through the boundary point `x`: the tangent lines
/// from `x` to the flotation curve.
pub fn chords_through_point(access: &impl FlotationAccess, x: Vec3) -> Result<(Chord, Chord)> {
    if access.dim() != Dim::Two {
        return Err(Error::UnsupportedDimension(access.dim().get()));
    }
    let f = |phi: f64| -> Result<f64> {
        let t = Vec3::from_angle(phi);
        Ok(access.level(t)? - x.dot(t))
    };
    let dt = TAU / CHORD_GRID as f64;
    let mut roots: Vec<f64> = Vec::new();
    let mut f0 = f(0.0)?;
    for k in 1..=CHORD_GRID {
        let (a, b) = (dt * (k - 1) as f64, dt * k as f64);
        let f1 = f(b)?;
        if f0 == 0.0 {
            roots.push(a);
        } else if f0 * f1 < 0.0 {
            roots.push(refine_root(access, x, a, b, f0)?);
        }
        f0 = f1;
    }
    let scale = access.extent();
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    if roots.len() > 2 && (roots[0] + TAU - roots[roots.len() - 1]).abs() < 1e-9 {
        roots.pop();
    }
    if roots.len() != 2 {
        return Err(Error::InvalidInput("point does not lie on exactly two liquid chords"));
    }
    let make = |phi: f64| -> Result<Chord> {
        let theta = Vec3::from_angle(phi);
        let contact = access.contact(theta)?;
        Ok(Chord {
            theta,
            h: access.level(theta)?,
            contact,
            endpoints: [x, contact * 2.0 - x],
        })
    };
    let c1 = make(roots[0])?;
    let c2 = make(roots[1])?;
    if (c1.theta + c2.theta).norm() < 1e-7 && (c1.h + c2.h).abs() < 1e-7 * scale.max(1e-300) {
        return Err(Error::CoincidentChords);
    }
    Ok((c1, c2))
}

fn refine_root(access: &impl FlotationAccess, x: Vec3, mut a: f64, mut b: f64, fa: f64) -> Result<f64> {
    let f = |phi: f64| -> Result<f64> {
        let t = Vec3::from_angle(phi);
        Ok(access.level(t)? - x.dot(t))
    };
    let mut fa = fa;
    while b - a > 1e-12 {
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    let mut phi = 0.5 * (a + b);
    for _ in 0..3 {
        let t = Vec3::from_angle(phi);
        let g = access.contact(t)?;
        let df = (g - x).dot(t.perp());
        let val = access.level(t)? - x.dot(t);
        if df == 0.0 {
            break;
        }
        let next = phi - val / df;
        if (next - phi).abs() > 1e-9 {
            break;
        }
        phi = next;
    }
    Ok(phi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Complete,
    Partial,
}

/// Result of a reconstruction.
#[derive(Clone, Debug, PartialEq)]
pub struct ReconstructionReport {
    /// Counter-clockwise vertices of the reconstructed polygon.
    pub polygon: Vec<Vec3>,
    /// Side segments traced by chord endpoints along the asymptotes, which
    /// lie on the boundary of W.
    pub recovered_from_w: Vec<[Vec3; 2]>,
    /// Segments of parallel sides swept while chords pivot about a corner
    /// point.
    pub chased_segments: Vec<[Vec3; 2]>,
    pub w: Vec<Vec3>,
    pub hausdorff_to_truth: Option<f64>,
    pub status: Status,
}

impl ReconstructionReport {
    /// Fills the diagnostic distance to a known polygon.
    pub fn compare_to(&mut self, truth: &Polytope) {
        self.hausdorff_to_truth = Some(hausdorff(&self.polygon, truth.vertices()));
    }
}

/// Reconstructs the polygon whose flotation curve at density `delta` is
/// `curve`.
///
/// Every arc contributes the two side pieces swept by its chord endpoints;
/// every corner point contributes the two pieces of the parallel sides swept
/// while the chord pivots, bracketed by the one-sided tangent chords of the
/// neighbouring arcs. The polygon is the closure (convex hull) of all pieces.
pub fn reconstruct(curve: &FlotationCurve, delta: f64) -> Result<ReconstructionReport> {
    reconstruct_with_tol(curve, delta, 1e-9)
}

/// [`reconstruct`] with relative tolerance `tol` for merging vertices and
/// testing that the segments cover the perimeter.
pub(crate) fn reconstruct_with_tol(curve: &FlotationCurve, delta: f64, tol: f64) -> Result<ReconstructionReport> {
    if (delta - 0.5).abs() < 1e-12 {
        return Err(Error::HalfDensity);
    }
    crate::polytope::check_density(delta)?;
    let w = compute_w(curve)?;
    let m = curve.pieces.len();
    let bound = 3 * m;
    let mut from_w = Vec::new();
    let mut chased = Vec::new();
    let mut partial = false;
    for (k, piece) in curve.pieces.iter().enumerate() {
        match piece {
            CurvePiece::Arc(a) => {
                let e0 = a.chord_endpoints(a.angle_range.start);
                let e1 = a.chord_endpoints(a.angle_range.end);
                from_w.push([e0[0], e1[0]]);
                from_w.push([e0[1], e1[1]]);
            }
            CurvePiece::Corner(c) => {
                // chase to the anchoring arcs on both sides
                let (prev, steps_back) = anchor(curve, k, m - 1, bound)?;
                let (next, steps_fwd) = anchor(curve, k, 1, bound)?;
                if steps_back > 1 || steps_fwd > 1 {
                    partial = true;
                    continue;
                }
                let s = c.pencil_range.start;
                let e = c.pencil_range.end;
                let es = prev.chord_endpoints(s);
                let ee = next.chord_endpoints(e);
                let side = |x: Vec3, phi: f64| (x - c.point).dot(Vec3::from_angle(phi).perp()) > 0.0;
                let (s_plus, s_minus) = if side(es[0], s) { (es[0], es[1]) } else { (es[1], es[0]) };
                let (e_plus, e_minus) = if side(ee[0], e) { (ee[0], ee[1]) } else { (ee[1], ee[0]) };
                chased.push([s_plus, e_plus]);
                chased.push([s_minus, e_minus]);
            }
        }
    }
    let scale = curve.scale();
    let pts: Vec<Vec3> = from_w.iter().chain(&chased).flat_map(|s| [s[0], s[1]]).collect();
    let tol = tol * (1.0 + scale);
    let polygon = merge_close(hull_2d(&pts, tol)?, tol);
    let covered = perimeter_covered(&polygon, from_w.iter().chain(&chased), tol);
    let status = if covered && !partial {
        Status::Complete
    } else {
        Status::Partial
    };
    Ok(ReconstructionReport {
        polygon,
        recovered_from_w: from_w,
        chased_segments: chased,
        w,
        hausdorff_to_truth: None,
        status,
    })
}

/// Replaces runs of consecutive vertices within `tol` by their mean.
fn merge_close(poly: Vec<Vec3>, tol: f64) -> Vec<Vec3> {
    let n = poly.len();
    // start the scan at a vertex that begins a run
    let Some(s) = (0..n).find(|&i| poly[(i + n - 1) % n].dist(poly[i]) > tol) else {
        return poly;
    };
    let mut out: Vec<Vec3> = Vec::new();
    let mut run = (poly[s], 1.0);
    for k in 1..=n {
        let x = poly[(s + k) % n];
        let prev = poly[(s + k - 1) % n];
        if k < n && x.dist(prev) <= tol {
            run = (run.0 + x, run.1 + 1.0);
        } else {
            out.push(run.0 / run.1);
            run = (x, 1.0);
        }
    }
    out
}

/// Walks from piece `k` in steps of `stride` (mod m) to the nearest arc.
fn anchor(curve: &FlotationCurve, k: usize, stride: usize, bound: usize) -> Result<(HyperbolicArc, usize)> {
    let m = curve.pieces.len();
    let mut j = k;
    for steps in 1..=bound {
        j = (j + stride) % m;
        if let CurvePiece::Arc(a) = curve.pieces[j] {
            return Ok((a, steps));
        }
    }
    Err(Error::ChaseNonTermination { bound })
}

fn perimeter_covered<'a>(poly: &[Vec3], segs: impl Iterator<Item = &'a [Vec3; 2]> + Clone, tol: f64) -> bool {
    let n = poly.len();
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let len = a.dist(b);
        let u = (b - a) / len;
        let mut iv: Vec<(f64, f64)> = segs
            .clone()
            .filter(|s| s.iter().all(|q| (*q - a).cross2(u).abs() <= tol))
            .map(|s| {
                let t0 = (s[0] - a).dot(u);
                let t1 = (s[1] - a).dot(u);
                (t0.min(t1), t0.max(t1))
            })
            .filter(|(t0, t1)| *t1 >= -tol && *t0 <= len + tol)
            .collect();
        iv.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut reach = 0.0;
        for (t0, t1) in iv {
            if t0 > reach + tol {
                return false;
            }
            reach = f64::max(reach, t1);
        }
        if reach < len - tol {
            return false;
        }
    }
    true
}

fn dist_to_convex(x: Vec3, poly: &[Vec3]) -> f64 {
    let n = poly.len();
    let inside = (0..n).all(|i| (poly[(i + 1) % n] - poly[i]).cross2(x - poly[i]) >= 0.0);
    if inside {
        return 0.0;
    }
    (0..n)
        .map(|i| {
            let a = poly[i];
            let b = poly[(i + 1) % n];
            let ab = b - a;
            let t = ((x - a).dot(ab) / ab.norm_sq()).clamp(0.0, 1.0);
            x.dist(a + ab * t)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Hausdorff distance between two counter-clockwise convex polygons; the
/// maximum is attained at a vertex.
pub fn hausdorff(a: &[Vec3], b: &[Vec3]) -> f64 {
    let ab = a.iter().map(|x| dist_to_convex(*x, b)).fold(0.0, f64::max);
    let ba = b.iter().map(|x| dist_to_convex(*x, a)).fold(0.0, f64::max);
    ab.max(ba)
}

/// Builds the pair `(P, Q)` with equal flotation curves at density 1/2.
///
/// `base` must have exactly one pair of parallel sides of equal length, and
/// the half-density chords crossing them must pivot at the centre of the
/// parallelogram they span. `Q` raises a tent of height `epsilon` on each
/// of the two sides; the tents are centrally symmetric about that centre.
pub fn make_counterexample(base: &Polytope, epsilon: f64) -> Result<(Polytope, Polytope)> {
    if base.dim() != Dim::Two {
        return Err(Error::UnsupportedDimension(base.dim().get()));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidInput("epsilon must be positive"));
    }
    let v = base.vertices();
    let n = v.len();
    let scale = base.diameter();
    let tol = 1e-9 * scale;
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let di = v[(i + 1) % n] - v[i];
            let dj = v[(j + 1) % n] - v[j];
            let parallel = di.cross2(dj).abs() <= tol * di.norm().max(dj.norm());
            if parallel && di.dot(dj) < 0.0 && (di.norm() - dj.norm()).abs() <= tol {
                pairs.push((i, j));
            }
        }
    }
    let (i, j) = match pairs[..] {
        [] => return Err(Error::NoParallelPair),
        [p] => p,
        _ => return Err(Error::MultipleParallelPairs),
    };
    let a = v[i];
    let b = v[(i + 1) % n];
    let c = v[j];
    let d = v[(j + 1) % n];
    let centre = (a + b + c + d) * 0.25;
    let mi = a.midpoint(b);
    let mj = c.midpoint(d);
    let theta = (mj - mi).perp().normalized().ok_or(Error::NoParallelPair)?;
    let h = solve_level(base, theta, 0.5)?.h;
    let offset = (h - centre.dot(theta)).abs();
    if offset > 1e-9 * scale {
        return Err(Error::UnbalancedBase { offset });
    }
    let out_i = (b - a).perp() * -1.0;
    let out_i = out_i.normalized().unwrap();
    let out_j = (d - c).perp() * -1.0;
    let out_j = out_j.normalized().unwrap();
    let mut q = Vec::with_capacity(n + 2);
    for k in 0..n {
        q.push(v[k]);
        if k == i {
            q.push(mi + out_i * epsilon);
        }
        if k == j {
            q.push(mj + out_j * epsilon);
        }
    }
    let m = q.len();
    for k in 0..m {
        let turn = (q[(k + 1) % m] - q[k]).cross2(q[(k + 2) % m] - q[(k + 1) % m]);
        if turn <= 1e-12 * scale * scale {
            return Err(Error::ConvexityLoss);
        }
    }
    let qp = Polytope::with_eps(&q, Dim::Two, base.eps())?;
    if qp.vertices().len() != m {
        return Err(Error::ConvexityLoss);
    }
    let p = base.clone().with_density(0.5)?;
    Ok((p, qp.with_density(0.5)?))
}

/// Angle of a direction in `[0, 2π)`.
pub fn direction_angle(theta: Vec3) -> f64 {
    crate::geom::wrap_angle(atan2(theta.y, theta.x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs2d::decompose_flotation_2d;
    use crate::flotation::PolytopeFlotation;
    use crate::polytope::build_polytope;

    fn poly(pts: &[[f64; 2]]) -> Polytope {
        let v: Vec<Vec<f64>> = pts.iter().map(|p| alloc::vec![p[0], p[1]]).collect();
        build_polytope(&v, 2).unwrap()
    }

    #[test]
    fn square_round_trip() {
        let p = poly(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        let d = decompose_flotation_2d(&p, 0.25).unwrap();
        let mut r = reconstruct(&d.curve, 0.25).unwrap();
        r.compare_to(&p);
        assert_eq!(r.status, Status::Complete);
        assert!(r.hausdorff_to_truth.unwrap() < 1e-9);
        assert_eq!(reconstruct(&d.curve, 0.5).unwrap_err(), Error::HalfDensity);
    }

    #[test]
    fn corner_chords() {
        let p = poly(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        let acc = PolytopeFlotation::new(&p, 0.25).unwrap();
        let (c1, c2) = chords_through_point(&acc, Vec3::ZERO).unwrap();
        assert!(c1.theta.dist(c2.theta) > 0.1);
        let half = PolytopeFlotation::new(&p, 0.5).unwrap();
        assert_eq!(
            chords_through_point(&half, Vec3::ZERO).unwrap_err(),
            Error::CoincidentChords
        );
    }

    #[test]
    fn counterexample_errors() {
        let tri = poly(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(make_counterexample(&tri, 0.1).unwrap_err(), Error::NoParallelPair);
        let sq = poly(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        assert_eq!(make_counterexample(&sq, 0.1).unwrap_err(), Error::MultipleParallelPairs);
        let hex = poly(&[[0.0, 0.0], [3.0, 0.0], [4.0, 1.0], [3.0, 2.0], [0.0, 2.0], [-1.0, 0.5]]);
        assert_eq!(make_counterexample(&hex, 5.0).unwrap_err(), Error::ConvexityLoss);
        let (_, q) = make_counterexample(&hex, 0.4).unwrap();
        assert_eq!(q.vertices().len(), 8);
        let lopsided = poly(&[[0.0, 0.0], [3.0, 0.0], [4.0, 1.0], [3.0, 2.0], [0.0, 2.0], [-0.5, 1.0]]);
        assert!(matches!(
            make_counterexample(&lopsided, 0.1).unwrap_err(),
            Error::UnbalancedBase { .. }
        ));
    }
}
