//! Planar flotation curves as hyperbolic arcs and corner points.
//!
//! While the liquid chord crosses a fixed pair of non-parallel sides it cuts
//! a triangle of constant area off the wedge between their lines, so the
//! chords envelope a hyperbola with the side lines as asymptotes. While it
//! crosses two parallel sides every chord passes through one point.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::flotation::{contact_point, solve_level, FlotationAccess};
use crate::geom::{sqrt, wrap_angle, Dim, Vec3, TAU};
use crate::hull::hull_2d;
use crate::polytope::Polytope;

/// Angular tolerance when testing whether an angle lies in a range.
const RANGE_TOL: f64 = 1e-9;

/// Angular range `[start, end]` with `start` in `[0, 2π)` and `end >= start`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleRange {
    pub start: f64,
    pub end: f64,
}

impl AngleRange {
    pub fn new(start: f64, end: f64) -> Self {
        let s = wrap_angle(start);
        let mut e = end - (start - s);
        while e < s {
            e += TAU;
        }
        AngleRange { start: s, end: e }
    }

    pub fn width(&self) -> f64 {
        self.end - self.start
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.start + self.end)
    }

    /// Offset of `phi` from `start` if it lies within the range up to `tol`.
    pub fn locate(&self, phi: f64, tol: f64) -> Option<f64> {
        let t = wrap_angle(phi - self.start);
        if t <= self.width() + tol {
            Some(t)
        } else if t >= TAU - tol {
            Some(t - TAU)
        } else {
            None
        }
    }

    pub fn contains(&self, phi: f64) -> bool {
        self.locate(phi, RANGE_TOL).is_some()
    }
}

/// Piece of the flotation curve enveloped by chords crossing two
/// non-parallel sides. Points are `apex + s d1 + t d2` with `s, t > 0` and
/// `s t sinα = area_const / 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HyperbolicArc {
    pub apex: Vec3,
    pub directions: [Vec3; 2],
    /// Area of the triangle cut from the wedge by every chord of the arc.
    pub area_const: f64,
    pub angle_range: AngleRange,
}

impl HyperbolicArc {
    pub fn sin_alpha(&self) -> f64 {
        self.directions[0].cross2(self.directions[1]).abs()
    }

    /// Intercepts `(a, b)` of the chord with normal angle `phi` along the
    /// two asymptote directions, and its offset `h`.
    pub fn chord(&self, phi: f64) -> (f64, f64, f64) {
        let theta = Vec3::from_angle(phi);
        let k = 2.0 * self.area_const / self.sin_alpha();
        let p = self.directions[0].dot(theta);
        let q = self.directions[1].dot(theta);
        let o = self.apex.dot(theta);
        let c = p.signum() * sqrt((k * p * q).max(0.0));
        (c / p, c / q, o + c)
    }

    /// Chord endpoints on the two asymptotes.
    pub fn chord_endpoints(&self, phi: f64) -> [Vec3; 2] {
        let (a, b, _) = self.chord(phi);
        [
            self.apex + self.directions[0] * a,
            self.apex + self.directions[1] * b,
        ]
    }

    /// Support value `h(phi)` without range check.
    pub fn support_unchecked(&self, phi: f64) -> f64 {
        self.chord(phi).2
    }

    /// Envelope point (chord midpoint) without range check.
    pub fn point_unchecked(&self, phi: f64) -> Vec3 {
        let (a, b, _) = self.chord(phi);
        self.apex + (self.directions[0] * a + self.directions[1] * b) * 0.5
    }

    /// Tangent line direction of the curve at `phi`.
    pub fn tangent(&self, phi: f64) -> Vec3 {
        let (a, b, _) = self.chord(phi);
        (self.directions[0] * a - self.directions[1] * b)
            .normalized()
            .unwrap_or(Vec3::ZERO)
    }

    /// Shear-normalized apex coordinates `(u, w)` of `x`, with
    /// `u w = area_const / 2` on the arc.
    pub fn apex_coordinates(&self, x: Vec3) -> (f64, f64) {
        let [d1, d2] = self.directions;
        let r = x - self.apex;
        let det = d1.cross2(d2);
        let s = r.cross2(d2) / det;
        let t = d1.cross2(r) / det;
        let k = sqrt(self.sin_alpha());
        (s * k, t * k)
    }
}

/// Envelope point of `arc` at normal angle `phi`.
pub fn eval_arc(arc: &HyperbolicArc, phi: f64) -> Result<Vec3> {
    if !arc.angle_range.contains(phi) {
        return Err(Error::OutOfRange(phi));
    }
    Ok(arc.point_unchecked(phi))
}

/// Point through which every chord with normal in `pencil_range` passes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CornerPoint {
    pub point: Vec3,
    pub pencil_range: AngleRange,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CurvePiece {
    Arc(HyperbolicArc),
    Corner(CornerPoint),
}

impl CurvePiece {
    pub fn range(&self) -> AngleRange {
        match self {
            CurvePiece::Arc(a) => a.angle_range,
            CurvePiece::Corner(c) => c.pencil_range,
        }
    }

    fn support_unchecked(&self, phi: f64) -> f64 {
        match self {
            CurvePiece::Arc(a) => a.support_unchecked(phi),
            CurvePiece::Corner(c) => c.point.dot(Vec3::from_angle(phi)),
        }
    }

    fn point_unchecked(&self, phi: f64) -> Vec3 {
        match self {
            CurvePiece::Arc(a) => a.point_unchecked(phi),
            CurvePiece::Corner(c) => c.point,
        }
    }
}

/// The planar flotation curve as cyclically ordered pieces whose ranges
/// tile the circle. Carries no information about the polygon beyond the
/// curve itself.
#[derive(Clone, Debug, PartialEq)]
pub struct FlotationCurve {
    pub delta: f64,
    pub pieces: Vec<CurvePiece>,
}

impl FlotationCurve {
    /// Index of the piece whose range contains `phi`.
    pub fn piece_at(&self, phi: f64) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (k, p) in self.pieces.iter().enumerate() {
            if let Some(t) = p.range().locate(phi, 0.0) {
                return Some(k).filter(|_| t >= 0.0);
            }
            if let Some(t) = p.range().locate(phi, RANGE_TOL) {
                let gap = if t < 0.0 { -t } else { t - p.range().width() };
                if best.is_none_or(|(_, g)| gap < g) {
                    best = Some((k, gap));
                }
            }
        }
        best.map(|(k, _)| k)
    }

    /// Support value of the curve at normal angle `phi`.
    pub fn support(&self, phi: f64) -> Result<f64> {
        let k = self.piece_at(phi).ok_or(Error::OutOfRange(phi))?;
        Ok(self.pieces[k].support_unchecked(phi))
    }

    /// Contact point of the liquid line with normal angle `phi`.
    pub fn contact(&self, phi: f64) -> Result<Vec3> {
        let k = self.piece_at(phi).ok_or(Error::OutOfRange(phi))?;
        Ok(self.pieces[k].point_unchecked(phi))
    }

    pub fn arcs(&self) -> impl Iterator<Item = &HyperbolicArc> {
        self.pieces.iter().filter_map(|p| match p {
            CurvePiece::Arc(a) => Some(a),
            _ => None,
        })
    }

    pub fn corners(&self) -> impl Iterator<Item = &CornerPoint> {
        self.pieces.iter().filter_map(|p| match p {
            CurvePiece::Corner(c) => Some(c),
            _ => None,
        })
    }

    /// Length scale from the apexes and corner points.
    pub fn scale(&self) -> f64 {
        let pts: Vec<Vec3> = self
            .pieces
            .iter()
            .map(|p| match p {
                CurvePiece::Arc(a) => a.point_unchecked(a.angle_range.mid()),
                CurvePiece::Corner(c) => c.point,
            })
            .collect();
        let mut s: f64 = 0.0;
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                s = s.max(a.dist(*b));
            }
        }
        for a in self.arcs() {
            s = s.max(sqrt(a.area_const));
        }
        s
    }
}

impl FlotationAccess for FlotationCurve {
    fn dim(&self) -> Dim {
        Dim::Two
    }
    fn delta(&self) -> f64 {
        self.delta
    }
    fn level(&self, theta: Vec3) -> Result<f64> {
        self.support(crate::geom::atan2(theta.y, theta.x))
    }
    fn contact(&self, theta: Vec3) -> Result<Vec3> {
        FlotationCurve::contact(self, crate::geom::atan2(theta.y, theta.x))
    }
    fn patch_label(&self, theta: Vec3) -> Result<Vec<usize>> {
        let phi = crate::geom::atan2(theta.y, theta.x);
        Ok(alloc::vec![self.piece_at(phi).ok_or(Error::OutOfRange(phi))?])
    }
    fn extent(&self) -> f64 {
        self.scale()
    }
}

/// Joint between consecutive arcs: directly (smooth) or across a corner
/// point, with the angle between the one-sided tangent lines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Joint {
    pub angle: f64,
    pub corner: bool,
    pub tangent_gap: f64,
}

/// Decomposition of the flotation curve of a polygon.
#[derive(Clone, Debug, PartialEq)]
pub struct ArcDecomposition {
    pub curve: FlotationCurve,
    /// Side indices `(i, j)`, `i < j`, crossed by the chords of each piece;
    /// side `i` joins vertices `i` and `i + 1`.
    pub side_pairs: Vec<(usize, usize)>,
    pub joints: Vec<Joint>,
    /// Intersection of the asymptote quarter-planes; empty when the arcs do
    /// not bound a region.
    pub w: Vec<Vec3>,
    /// Set when the curve has no arcs (every chord passes through one point).
    pub degenerate: bool,
}

const SCAN_STEPS: usize = 2048;

fn side_of_edge(e: (usize, usize), n: usize) -> usize {
    if e.0 == 0 && e.1 == n - 1 {
        n - 1
    } else {
        e.0
    }
}

fn side_pair(p: &Polytope, phi: f64, delta: f64) -> Result<(usize, usize)> {
    let l = solve_level(p, Vec3::from_angle(phi), delta)?;
    let n = p.vertices().len();
    let mut sides: Vec<usize> = l.edge_set.iter().map(|&k| side_of_edge(p.edges()[k], n)).collect();
    sides.sort_unstable();
    match sides[..] {
        [a, b] => Ok((a, b)),
        _ => Err(Error::SingularDirection),
    }
}

/// Events: normal angles at which the chord passes through a vertex,
/// located by scanning, bisection and Newton polishing.
fn events(p: &Polytope, delta: f64) -> Result<Vec<f64>> {
    let n = p.vertices().len();
    let dt = TAU / SCAN_STEPS as f64;
    let label = |phi: f64| side_pair(p, phi, delta);
    let mut out = Vec::new();
    let mut prev = label(0.0)?;
    for k in 1..=SCAN_STEPS {
        let t1 = dt * k as f64;
        let cur = label(t1)?;
        if cur != prev {
            let mut stack = alloc::vec![(dt * (k - 1) as f64, prev, t1, cur)];
            while let Some((a, la, b, lb)) = stack.pop() {
                if b - a <= 1e-9 {
                    out.push(polish(p, delta, 0.5 * (a + b), la, lb, n)?);
                    continue;
                }
                let m = 0.5 * (a + b);
                let lm = label(m)?;
                if lm != lb {
                    stack.push((m, lm, b, lb));
                }
                if lm != la {
                    stack.push((a, la, m, lm));
                }
            }
        }
        prev = cur;
    }
    let mut out: Vec<f64> = out.into_iter().map(wrap_angle).collect();
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    Ok(out)
}

fn polish(p: &Polytope, delta: f64, phi: f64, la: (usize, usize), lb: (usize, usize), n: usize) -> Result<f64> {
    let before = [la.0, la.1];
    let after = [lb.0, lb.1];
    let gone: Vec<usize> = before.iter().copied().filter(|s| !after.contains(s)).collect();
    let new: Vec<usize> = after.iter().copied().filter(|s| !before.contains(s)).collect();
    let (Some(&g), Some(&m)) = (gone.first(), new.first()) else {
        return Ok(phi);
    };
    let v = if (g + 1) % n == m {
        p.vertices()[m]
    } else if (m + 1) % n == g {
        p.vertices()[g]
    } else {
        return Ok(phi);
    };
    let mut x = phi;
    for _ in 0..6 {
        let s = contact_point(p, Vec3::from_angle(x), delta)?;
        let f = s.h - v.dot(s.theta);
        let df = (s.contact - v).dot(Vec3::from_angle(x).perp());
        if df == 0.0 {
            break;
        }
        let step = f / df;
        if step.abs() > 1e-6 {
            break;
        }
        x -= step;
        if step.abs() < 1e-16 {
            break;
        }
    }
    Ok(if (x - phi).abs() < 1e-8 { x } else { phi })
}

fn line_intersection(p1: Vec3, d1: Vec3, p2: Vec3, d2: Vec3) -> Vec3 {
    let t = (p2 - p1).cross2(d2) / d1.cross2(d2);
    p1 + d1 * t
}

fn shoelace(poly: &[Vec3]) -> f64 {
    let o = poly[0];
    let mut a = 0.0;
    for k in 1..poly.len().saturating_sub(1) {
        a += (poly[k] - o).cross2(poly[k + 1] - o);
    }
    a / 2.0
}

fn build_arc(p: &Polytope, delta: f64, a: usize, b: usize, range: AngleRange) -> Result<HyperbolicArc> {
    let v = p.vertices();
    let n = v.len();
    let ua = (v[(a + 1) % n] - v[a]).normalized().unwrap();
    let ub = (v[(b + 1) % n] - v[b]).normalized().unwrap();
    let apex = if (a + 1) % n == b {
        v[b]
    } else if (b + 1) % n == a {
        v[a]
    } else {
        line_intersection(v[a], ua, v[b], ub)
    };
    let mid_a = v[a].midpoint(v[(a + 1) % n]);
    let mid_b = v[b].midpoint(v[(b + 1) % n]);
    let d1 = (mid_a - apex).normalized().ok_or(Error::DegenerateInput("apex on side midpoint"))?;
    let d2 = (mid_b - apex).normalized().ok_or(Error::DegenerateInput("apex on side midpoint"))?;

    let phi = range.mid();
    let theta = Vec3::from_angle(phi);
    let h = solve_level(p, theta, delta)?.h;
    let apex_side = apex.dot(theta) - h;
    // chain of vertices between the two sides on the apex side of the chord
    let after_a = (a + 1) % n;
    let mut chain = Vec::new();
    let (from, to) = if (v[after_a].dot(theta) - h) * apex_side > 0.0 {
        (after_a, b)
    } else {
        ((b + 1) % n, a)
    };
    let mut k = from;
    loop {
        chain.push(v[k]);
        if k == to {
            break;
        }
        k = (k + 1) % n;
    }
    let mut poly = alloc::vec![apex];
    poly.extend(chain);
    let v0 = if poly.len() >= 3 { shoelace(&poly).abs() } else { 0.0 };
    let body = if apex_side > 0.0 { delta } else { 1.0 - delta } * p.volume();
    Ok(HyperbolicArc {
        apex,
        directions: [d1, d2],
        area_const: v0 + body,
        angle_range: range,
    })
}

/// Decomposes the flotation curve of the polygon `p` at density `delta`.
pub fn decompose_flotation_2d(p: &Polytope, delta: f64) -> Result<ArcDecomposition> {
    if p.dim() != Dim::Two {
        return Err(Error::UnsupportedDimension(p.dim().get()));
    }
    crate::polytope::check_density(delta)?;
    let ev = events(p, delta)?;
    if ev.is_empty() {
        return Err(Error::DegenerateInput("no vertex crossings found"));
    }
    let v = p.vertices();
    let n = v.len();
    let mut pieces = Vec::new();
    let mut side_pairs = Vec::new();
    for k in 0..ev.len() {
        let start = ev[k];
        let end = if k + 1 < ev.len() { ev[k + 1] } else { ev[0] + TAU };
        let range = AngleRange::new(start, end);
        let (a, b) = side_pair(p, range.mid(), delta)?;
        let ua = (v[(a + 1) % n] - v[a]).normalized().unwrap();
        let ub = (v[(b + 1) % n] - v[b]).normalized().unwrap();
        let piece = if ua.cross2(ub).abs() < 1e-12 {
            let c = contact_point(p, Vec3::from_angle(range.mid()), delta)?;
            CurvePiece::Corner(CornerPoint {
                point: c.contact,
                pencil_range: range,
            })
        } else {
            CurvePiece::Arc(build_arc(p, delta, a, b, range)?)
        };
        pieces.push(piece);
        side_pairs.push((a, b));
    }
    let curve = FlotationCurve { delta, pieces };
    let joints = joints(&curve);
    let degenerate = curve.arcs().next().is_none();
    let w = if degenerate { Vec::new() } else { compute_w(&curve).unwrap_or_default() };
    Ok(ArcDecomposition {
        curve,
        side_pairs,
        joints,
        w,
        degenerate,
    })
}

fn line_gap(a: Vec3, b: Vec3) -> f64 {
    // angle between lines, in [0, π/2]
    let c = a.cross2(b).abs();
    let d = a.dot(b).abs();
    crate::geom::atan2(c, d)
}

fn joints(curve: &FlotationCurve) -> Vec<Joint> {
    let m = curve.pieces.len();
    let mut out = Vec::new();
    for k in 0..m {
        let CurvePiece::Arc(a) = curve.pieces[k] else {
            continue;
        };
        let end = a.angle_range.end;
        let t0 = a.tangent(end);
        let mut j = (k + 1) % m;
        let mut corner = false;
        let mut guard = 0;
        while let CurvePiece::Corner(_) = curve.pieces[j] {
            corner = true;
            j = (j + 1) % m;
            guard += 1;
            if guard > m {
                return out;
            }
        }
        let CurvePiece::Arc(b) = curve.pieces[j] else {
            continue;
        };
        let t1 = b.tangent(b.angle_range.start);
        out.push(Joint {
            angle: wrap_angle(end),
            corner,
            tangent_gap: line_gap(t0, t1),
        });
    }
    out
}

/// Clips a convex polygon to `{x : n . x <= c}`.
fn clip_halfplane(poly: &[Vec3], n: Vec3, c: f64) -> Vec<Vec3> {
    let m = poly.len();
    let mut out = Vec::with_capacity(m + 1);
    for k in 0..m {
        let a = poly[k];
        let b = poly[(k + 1) % m];
        let fa = n.dot(a) - c;
        let fb = n.dot(b) - c;
        if fa <= 0.0 {
            out.push(a);
        }
        if (fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0) {
            out.push(a + (b - a) * (fa / (fa - fb)));
        }
    }
    out
}

/// Intersection of the quarter-planes bounded by the asymptotes of every arc.
pub fn compute_w(curve: &FlotationCurve) -> Result<Vec<Vec3>> {
    let mut planes: Vec<(Vec3, f64)> = Vec::new();
    for a in curve.arcs() {
        let [d1, d2] = a.directions;
        for (d, other) in [(d1, d2), (d2, d1)] {
            let mut nrm = d.perp();
            if nrm.dot(other) > 0.0 {
                nrm = -nrm;
            }
            planes.push((nrm, nrm.dot(a.apex)));
        }
    }
    if planes.is_empty() {
        return Err(Error::UnboundedRegion);
    }
    let scale = curve.scale();
    let anchor = curve.arcs().next().map(|a| a.apex).unwrap_or(Vec3::ZERO);
    let big = 1e3 * (1.0 + scale + anchor.max_abs());
    let mut poly = alloc::vec![
        Vec3::planar(-big, -big),
        Vec3::planar(big, -big),
        Vec3::planar(big, big),
        Vec3::planar(-big, big),
    ];
    for (nrm, c) in &planes {
        poly = clip_halfplane(&poly, *nrm, *c);
        if poly.len() < 3 {
            return Err(Error::UnboundedRegion);
        }
    }
    if poly.iter().any(|q| q.max_abs() >= big * (1.0 - 1e-9)) {
        return Err(Error::UnboundedRegion);
    }
    hull_2d(&poly, 1e-12 * (1.0 + scale)).map_err(|_| Error::UnboundedRegion)
}
