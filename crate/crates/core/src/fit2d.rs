//! Reconstruction from dense samples of a planar flotation curve.
//!
//! The tangent lines `{x . theta = h}` of a hyperbola with centre `O` and
//! asymptote directions `d1, d2` satisfy `(h - O.theta)^2 = k (d1.theta)(d2.theta)`,
//! which is linear in five unknowns once expanded. Arcs are found as maximal
//! runs of sample windows that fit one such conic; corner points as runs of
//! stationary contact points.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

use crate::arcs2d::{AngleRange, CornerPoint, CurvePiece, FlotationCurve, HyperbolicArc};
use crate::error::{Error, Result};
use crate::flotation::FlotationSample;
use crate::geom::{atan2, sqrt, symmetric_eigen, wrap_angle, Vec3, TAU};
use crate::reconstruct2d::{reconstruct_with_tol, ReconstructionReport};

/// One observed tangent line of the curve and its contact point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub theta: Vec3,
    pub h: f64,
    pub contact: Vec3,
}

impl From<&FlotationSample> for CurvePoint {
    fn from(s: &FlotationSample) -> Self {
        CurvePoint {
            theta: s.theta,
            h: s.h,
            contact: s.contact,
        }
    }
}

const WINDOW: usize = 8;
const MIN_SAMPLES: usize = 64;
/// Relative distance under which consecutive contacts count as one point.
const STATIONARY_TOL: f64 = 1e-9;
/// Relative tangent-line residual of a window lying on a single arc.
const CLEAN_TOL: f64 = 1e-11;
/// Samples dropped at each end of an arc run; a window reaching one sample
/// past a smooth joint can still pass the clean test.
const TRIM: usize = 2;
/// Relative tolerance for two fitted asymptotes being the same line.
const LINE_TOL: f64 = 1e-3;

/// Conic in normalized coordinates: `h'^2 = 2 h' o.theta + theta^T n theta`.
#[derive(Clone, Copy, Debug)]
struct Conic {
    o: [f64; 2],
    n: [f64; 3],
}

#[derive(Clone, Copy, Debug)]
struct Frame {
    origin: Vec3,
    scale: f64,
}

impl Frame {
    fn local_h(&self, p: &CurvePoint) -> f64 {
        (p.h - self.origin.dot(p.theta)) / self.scale
    }
}

/// Least-squares conic through the tangent lines of `pts`. Each sample also
/// contributes the derivative of the relation along the circle, with
/// `h' = contact . theta_perp`.
fn fit_conic(pts: &[CurvePoint], f: &Frame) -> Option<Conic> {
    let m = pts.len();
    if m < 3 {
        return None;
    }
    let mut a = DMatrix::<f64>::zeros(2 * m, 5);
    let mut b = DVector::<f64>::zeros(2 * m);
    for (i, p) in pts.iter().enumerate() {
        let (c, s) = (p.theta.x, p.theta.y);
        let h = f.local_h(p);
        let dh = (p.contact - f.origin).dot(p.theta.perp()) / f.scale;
        a[(2 * i, 0)] = 2.0 * h * c;
        a[(2 * i, 1)] = 2.0 * h * s;
        a[(2 * i, 2)] = c * c;
        a[(2 * i, 3)] = 2.0 * c * s;
        a[(2 * i, 4)] = s * s;
        b[2 * i] = h * h;
        a[(2 * i + 1, 0)] = 2.0 * (dh * c - h * s);
        a[(2 * i + 1, 1)] = 2.0 * (dh * s + h * c);
        a[(2 * i + 1, 2)] = -2.0 * c * s;
        a[(2 * i + 1, 3)] = 2.0 * (c * c - s * s);
        a[(2 * i + 1, 4)] = 2.0 * c * s;
        b[2 * i + 1] = 2.0 * h * dh;
    }
    let x = a.svd(true, true).solve(&b, 0.0).ok()?;
    if x.iter().any(|v| !v.is_finite()) {
        return None;
    }
    Some(Conic {
        o: [x[0], x[1]],
        n: [x[2], x[3], x[4]],
    })
}

/// Distance between the sampled tangent line and the conic's tangent line of
/// the same normal, in units of the frame scale.
fn residual(c: &Conic, p: &CurvePoint, f: &Frame) -> f64 {
    let (co, si) = (p.theta.x, p.theta.y);
    let h = f.local_h(p);
    let ot = c.o[0] * co + c.o[1] * si;
    let q = c.n[0] * co * co + 2.0 * c.n[1] * co * si + c.n[2] * si * si;
    let r = h * h - 2.0 * h * ot - q;
    let g = 2.0 * (h - ot);
    if g == 0.0 {
        f64::INFINITY
    } else {
        (r / g).abs()
    }
}

fn to_arc(c: &Conic, f: &Frame, inside: Vec3) -> Result<HyperbolicArc> {
    let apex = f.origin + Vec3::planar(c.o[0], c.o[1]) * f.scale;
    let s2 = f.scale * f.scale;
    let m = [
        (c.n[0] + c.o[0] * c.o[0]) * s2,
        (c.n[1] + c.o[0] * c.o[1]) * s2,
        (c.n[1] + c.o[0] * c.o[1]) * s2,
        (c.n[2] + c.o[1] * c.o[1]) * s2,
    ];
    let (val, vec) = symmetric_eigen(&m, 2);
    let bad = Error::InvalidInput("samples do not fit a hyperbolic arc");
    if !(val[0] < 0.0 && val[1] > 0.0) {
        return Err(bad);
    }
    let e_neg = Vec3::planar(vec[0][0], vec[0][1]);
    let e_pos = Vec3::planar(vec[1][0], vec[1][1]);
    let (a, b) = (sqrt(val[1]), sqrt(-val[0]));
    // normals along which the quadratic form vanishes are normal to the asymptotes
    let mut d1 = (e_pos * b + e_neg * a).perp().normalized().ok_or(bad.clone())?;
    let mut d2 = (e_pos * b - e_neg * a).perp().normalized().ok_or(bad.clone())?;
    let r = inside - apex;
    let det = d1.cross2(d2);
    if det.abs() < 1e-12 {
        return Err(bad);
    }
    let (s, t) = (r.cross2(d2) / det, d1.cross2(r) / det);
    if s < 0.0 {
        d1 = -d1;
    }
    if t < 0.0 {
        d2 = -d2;
    }
    let cos_a = d1.dot(d2);
    let mq = |u: Vec3, v: Vec3| u.x * (m[0] * v.x + m[1] * v.y) + u.y * (m[2] * v.x + m[3] * v.y);
    let k = 2.0 * mq(d1, d2) / (1.0 + cos_a * cos_a);
    if !(k > 0.0) {
        return Err(bad);
    }
    let sin_a = d1.cross2(d2).abs();
    Ok(HyperbolicArc {
        apex,
        directions: [d1, d2],
        area_const: 0.5 * k * sin_a,
        angle_range: AngleRange::new(0.0, 0.0),
    })
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    /// `fit` is absent for an arc bridged from its neighbours' asymptotes.
    Arc { arc: HyperbolicArc, fit: Option<(Conic, Frame)> },
    Corner(Vec3),
}

/// Consecutive samples `lo..=hi` (rotated order, `hi` may exceed `n` on the
/// closing gap) explained by one piece. An inferred corner without samples
/// of its own spans the gap between its neighbours.
#[derive(Clone, Copy, Debug)]
struct Run {
    kind: Kind,
    lo: usize,
    hi: usize,
    inferred: bool,
}

/// Relative residual accepted for a piece inferred from its neighbours.
const BRIDGE_TOL: f64 = 1e-6;
/// Relative residual under which a neighbouring sample joins a fitted arc.
const GROW_TOL: f64 = 1e-10;

fn fit_arc(members: &[CurvePoint], scale: f64) -> Option<(HyperbolicArc, Conic, Frame)> {
    let frame = Frame {
        origin: members.iter().fold(Vec3::ZERO, |s, p| s + p.contact) / members.len() as f64,
        scale,
    };
    let conic = fit_conic(members, &frame)?;
    let mut arc = to_arc(&conic, &frame, members[members.len() / 2].contact).ok()?;
    let angle = |t: Vec3| atan2(t.y, t.x);
    arc.angle_range = AngleRange::new(angle(members[0].theta), angle(members[members.len() - 1].theta));
    Some((arc, conic, frame))
}

/// Fits arcs and corner points to samples of a flotation curve at density
/// `delta`. Samples need not be sorted; every arc should span at least five
/// samples and every corner pencil at least two.
pub fn fit_flotation_curve(samples: &[CurvePoint], delta: f64) -> Result<FlotationCurve> {
    crate::polytope::check_density(delta)?;
    let n = samples.len();
    if n < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            needed: MIN_SAMPLES,
            got: n,
        });
    }
    let mut sorted: Vec<(f64, CurvePoint)> = samples
        .iter()
        .map(|p| {
            let t = p.theta.normalized().unwrap_or(Vec3::X);
            (wrap_angle(atan2(t.y, t.x)), CurvePoint { theta: t, ..*p })
        })
        .collect();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut lo = Vec3::planar(f64::INFINITY, f64::INFINITY);
    let mut hi = Vec3::planar(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (_, p) in &sorted {
        lo = Vec3::planar(lo.x.min(p.contact.x), lo.y.min(p.contact.y));
        hi = Vec3::planar(hi.x.max(p.contact.x), hi.y.max(p.contact.y));
    }
    let scale = lo.dist(hi).max(f64::MIN_POSITIVE);
    let frame = Frame {
        origin: lo.midpoint(hi),
        scale,
    };

    let stationary: Vec<bool> = (0..n)
        .map(|i| sorted[i].1.contact.dist(sorted[(i + 1) % n].1.contact) <= STATIONARY_TOL * scale)
        .collect();
    let corner0: Vec<bool> = (0..n).map(|i| stationary[i] || stationary[(i + n - 1) % n]).collect();
    if corner0.iter().all(|c| *c) {
        return Err(Error::InvalidInput("flotation curve is a single point"));
    }
    let clean0: Vec<bool> = (0..n)
        .map(|i| {
            if (0..WINDOW).any(|k| corner0[(i + k) % n]) {
                return false;
            }
            let w: Vec<CurvePoint> = (0..WINDOW).map(|k| sorted[(i + k) % n].1).collect();
            match fit_conic(&w, &frame) {
                Some(c) => w.iter().all(|p| residual(&c, p, &frame) <= CLEAN_TOL),
                None => false,
            }
        })
        .collect();
    if clean0.iter().all(|c| *c) {
        return Err(Error::InvalidInput("samples lie on a single conic"));
    }
    let Some(s0) = (0..n).find(|&i| clean0[i] && !clean0[(i + n - 1) % n]) else {
        return Err(Error::InvalidInput("no sample window fits a hyperbolic arc"));
    };

    // rotate so that index 0 starts a chain of clean windows
    let pts: Vec<CurvePoint> = (0..n).map(|i| sorted[(s0 + i) % n].1).collect();
    // unwrapped angle of rotated sample i, increasing in i
    let psi = |i: usize| sorted[(s0 + i) % n].0 + TAU * ((s0 + i) / n) as f64;
    let corner: Vec<bool> = (0..n).map(|i| corner0[(s0 + i) % n]).collect();
    let clean: Vec<bool> = (0..n).map(|i| clean0[(s0 + i) % n]).collect();

    let mut runs: Vec<Run> = Vec::new();
    let mut i = 0;
    while i < n {
        if corner[i] {
            let mut j = i;
            while j + 1 < n && corner[j + 1] {
                j += 1;
            }
            let point = (i..=j).fold(Vec3::ZERO, |s, k| s + pts[k].contact) / (j - i + 1) as f64;
            runs.push(Run {
                kind: Kind::Corner(point),
                lo: i,
                hi: j,
                inferred: false,
            });
            i = j + 1;
        } else if clean[i] {
            let mut j = i;
            while j + 1 < n && clean[j + 1] {
                j += 1;
            }
            let (a, b) = (i + TRIM, (j + WINDOW - 1 - TRIM).min(n - 1));
            if b >= a + 5 {
                if let Some((arc, conic, frame)) = fit_arc(&pts[a..=b], scale) {
                    runs.push(Run {
                        kind: Kind::Arc { arc, fit: Some((conic, frame)) },
                        lo: a,
                        hi: b,
                        inferred: false,
                    });
                }
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    runs.sort_by_key(|r| r.lo);
    for k in 1..runs.len() {
        if runs[k].lo <= runs[k - 1].hi {
            runs[k].lo = runs[k - 1].hi + 1;
        }
    }
    runs.retain(|r| r.lo <= r.hi);

    // a spurious unclean window can split one arc in two
    let mut merged: Vec<Run> = Vec::with_capacity(runs.len());
    for r in runs {
        if let (Some(last), Kind::Arc { fit: Some((conic, frame)), .. }) = (merged.last_mut(), r.kind) {
            if let Kind::Arc { fit: Some((c0, f0)), .. } = last.kind {
                let joint = (last.lo..=r.hi).filter(|&i| !corner[i]);
                let same = (last.hi + 1..r.lo).all(|i| !corner[i])
                    && joint.clone().all(|i| residual(&c0, &pts[i], &f0) <= GROW_TOL)
                    && joint.clone().all(|i| residual(&conic, &pts[i], &frame) <= GROW_TOL);
                if same {
                    if let Some((arc, conic, frame)) = fit_arc(&pts[last.lo..=r.hi], scale) {
                        *last = Run {
                            kind: Kind::Arc { arc, fit: Some((conic, frame)) },
                            hi: r.hi,
                            ..*last
                        };
                        continue;
                    }
                }
            }
        }
        merged.push(r);
    }
    let mut runs = merged;

    // grow arcs over neighbouring samples on the same conic
    let m = runs.len();
    for k in 0..m {
        if let Kind::Arc { fit: Some((conic, frame)), .. } = runs[k].kind {
            let fits = |i: usize| !corner[i % n] && residual(&conic, &pts[i % n], &frame) <= GROW_TOL;
            let limit = if k + 1 < m { runs[k + 1].lo } else { n + runs[0].lo };
            while runs[k].hi + 1 < limit && fits(runs[k].hi + 1) {
                runs[k].hi += 1;
            }
            let floor = if k > 0 { runs[k - 1].hi + 1 } else { 0 };
            while runs[k].lo > floor && fits(runs[k].lo - 1) {
                runs[k].lo -= 1;
            }
        }
    }

    // fill gaps: a missed arc from its own samples, or a missed corner where
    // two arcs that share no asymptote meet
    let mut filled: Vec<Run> = Vec::with_capacity(m + 4);
    for k in 0..m {
        let r0 = runs[k];
        let r1 = if k + 1 < m {
            runs[k + 1]
        } else {
            Run {
                lo: runs[0].lo + n,
                hi: runs[0].hi + n,
                ..runs[0]
            }
        };
        filled.push(r0);
        let gap: Vec<usize> = (r0.hi + 1..r1.lo).filter(|&i| !corner[i % n]).collect();
        if gap.len() >= 5 {
            let members: Vec<CurvePoint> = gap.iter().map(|&i| pts[i % n]).collect();
            if let Some((arc, conic, frame)) = fit_arc(&members, scale) {
                if members.iter().all(|p| residual(&conic, p, &frame) <= GROW_TOL) {
                    filled.push(Run {
                        kind: Kind::Arc { arc, fit: Some((conic, frame)) },
                        lo: gap[0],
                        hi: gap[gap.len() - 1],
                        inferred: false,
                    });
                    continue;
                }
            }
            return Err(Error::InvalidInput("samples between two arcs fit no single arc"));
        }
        if let (Kind::Arc { arc: x, .. }, Kind::Arc { arc: y, .. }) = (r0.kind, r1.kind) {
            if event_vertex(&x, &y, scale).is_none() {
                let members: Vec<CurvePoint> = gap.iter().map(|&i| pts[i % n]).collect();
                let worst = |f: &dyn Fn(&CurvePoint) -> f64| members.iter().map(f).fold(0.0, f64::max) / scale;
                let mut best: Option<(f64, Run)> = None;
                let mut offer = |res: f64, run: Run| {
                    if best.as_ref().is_none_or(|(r, _)| res < *r) {
                        best = Some((res, run));
                    }
                };
                // an arc too short to fit on its own shares one asymptote
                // with each neighbour
                if !members.is_empty() {
                    for i in 0..2 {
                        for j in 0..2 {
                            if let Some(arc) = bridge_arc(&x, i, &y, j, &members) {
                                let res = worst(&|p| {
                                    (arc.support_unchecked(atan2(p.theta.y, p.theta.x)) - p.h).abs()
                                });
                                let run = Run {
                                    kind: Kind::Arc { arc, fit: None },
                                    lo: gap[0],
                                    hi: gap[gap.len() - 1],
                                    inferred: false,
                                };
                                offer(res, run);
                            }
                        }
                    }
                }
                let dphi = TAU / n as f64;
                let (a, b) = (psi(r0.hi) - dphi, psi(r1.lo) + dphi);
                let g = |p: f64| {
                    let (u, w) = y.apex_coordinates(x.point_unchecked(p));
                    u * w - 0.5 * y.area_const
                };
                if let Some(phi) = bracket_root(g, a, b) {
                    let point = x.point_unchecked(phi);
                    let res = worst(&|p| (p.h - point.dot(p.theta)).abs());
                    let run = Run {
                        kind: Kind::Corner(point),
                        lo: r0.hi,
                        hi: r1.lo,
                        inferred: true,
                    };
                    offer(res, run);
                }
                match best {
                    Some((res, run)) if res <= BRIDGE_TOL => filled.push(run),
                    _ => return Err(Error::InvalidInput("samples do not resolve every piece of the curve")),
                }
            }
        }
    }
    let runs = filled;
    let m = runs.len();
    if m < 3 {
        return Err(Error::InvalidInput("samples do not resolve enough curve pieces"));
    }

    let dphi = TAU / n as f64;
    let mut bounds = Vec::with_capacity(m);
    for k in 0..m {
        let r0 = &runs[k];
        let r1 = &runs[(k + 1) % m];
        let shift = if k + 1 == m { n } else { 0 };
        let a = psi(if r0.inferred { r0.lo } else { r0.hi });
        let b = psi(shift + if r1.inferred { r1.hi } else { r1.lo });
        let (lo, hi) = (a - dphi, b + dphi);
        let phi = match (r0.kind, r1.kind) {
            (Kind::Arc { arc: x, .. }, Kind::Arc { arc: y, .. }) => {
                let v = event_vertex(&x, &y, scale)
                    .ok_or(Error::InvalidInput("samples do not resolve every piece of the curve"))?;
                bracket_root(|p| x.support_unchecked(p) - v.dot(Vec3::from_angle(p)), lo, hi)
            }
            (Kind::Arc { arc, .. }, Kind::Corner(point)) | (Kind::Corner(point), Kind::Arc { arc, .. }) => {
                let t = |p: f64| (arc.point_unchecked(p) - point).dot(Vec3::from_angle(p).perp());
                bracket_root(t, lo, hi)
            }
            (Kind::Corner(p0), Kind::Corner(p1)) => {
                let nrm = (p1 - p0).perp();
                let ang = atan2(nrm.y, nrm.x);
                let mid = 0.5 * (a + b);
                let near = |x: f64| {
                    let d = wrap_angle(x - mid);
                    if d > TAU / 2.0 {
                        d - TAU
                    } else {
                        d
                    }
                };
                let d0 = near(ang);
                let d1 = near(ang + TAU / 2.0);
                Some(mid + if d0.abs() < d1.abs() { d0 } else { d1 })
            }
        };
        bounds.push(phi.unwrap_or(0.5 * (a + b)));
    }

    let mut pieces = Vec::with_capacity(m);
    for k in 0..m {
        let range = AngleRange::new(bounds[(k + m - 1) % m], bounds[k]);
        pieces.push(match runs[k].kind {
            Kind::Arc { arc, .. } => CurvePiece::Arc(HyperbolicArc {
                angle_range: range,
                ..arc
            }),
            Kind::Corner(point) => CurvePiece::Corner(CornerPoint {
                point,
                pencil_range: range,
            }),
        });
    }
    // pieces start at index 0 of the rotated order; put them in angle order
    let first = (0..m)
        .min_by(|&a, &b| pieces[a].range().start.total_cmp(&pieces[b].range().start))
        .unwrap_or(0);
    pieces.rotate_left(first);
    Ok(FlotationCurve { delta, pieces })
}

/// Arc on asymptote `i` of `x` and asymptote `j` of `y` whose area constant
/// best fits the tangent lines of `members`.
fn bridge_arc(x: &HyperbolicArc, i: usize, y: &HyperbolicArc, j: usize, members: &[CurvePoint]) -> Option<HyperbolicArc> {
    let (p, u) = (x.apex, x.directions[i]);
    let (q, w) = (y.apex, y.directions[j]);
    let det = u.cross2(w);
    if det.abs() < 1e-9 {
        return None;
    }
    let apex = p + u * ((q - p).cross2(w) / det);
    let r = members[members.len() / 2].contact - apex;
    let d1 = if r.cross2(w) / det < 0.0 { -u } else { u };
    let d2 = if u.cross2(r) / det < 0.0 { -w } else { w };
    let mut k = 0.0;
    for m in members {
        let pq = d1.dot(m.theta) * d2.dot(m.theta);
        if !(pq > 0.0) {
            return None;
        }
        let c = m.h - apex.dot(m.theta);
        k += c * c / pq;
    }
    k /= members.len() as f64;
    Some(HyperbolicArc {
        apex,
        directions: [d1, d2],
        area_const: 0.5 * k * d1.cross2(d2).abs(),
        angle_range: AngleRange::new(
            atan2(members[0].theta.y, members[0].theta.x),
            atan2(members[members.len() - 1].theta.y, members[members.len() - 1].theta.x),
        ),
    })
}

/// Vertex crossed at the joint of two arcs: the intersection of the two
/// asymptotes that are not shared. Lines are compared near the curve, since
/// fitted apexes far from it are poorly determined along their asymptotes.
fn event_vertex(x: &HyperbolicArc, y: &HyperbolicArc, scale: f64) -> Option<Vec3> {
    let near = x.point_unchecked(x.angle_range.mid()).midpoint(y.point_unchecked(y.angle_range.mid()));
    let mismatch = |i: usize, j: usize| {
        let (p, u) = (x.apex, x.directions[i]);
        let (q, w) = (y.apex, y.directions[j]);
        let foot = p + u * (near - p).dot(u);
        u.cross2(w).abs() + (foot - q).cross2(w).abs() / scale
    };
    let (i, j) = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .min_by(|a, b| mismatch(a.0, a.1).total_cmp(&mismatch(b.0, b.1)))?;
    if mismatch(i, j) > LINE_TOL {
        return None;
    }
    let (p, u) = (x.apex, x.directions[1 - i]);
    let (q, w) = (y.apex, y.directions[1 - j]);
    let det = u.cross2(w);
    if det.abs() < 1e-12 {
        return None;
    }
    let t = (q - p).cross2(w) / det;
    Some(p + u * t)
}

fn bracket_root(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Option<f64> {
    let mut flo = f(lo);
    if flo == 0.0 {
        return Some(lo);
    }
    if flo * f(hi) > 0.0 {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-15 * (1.0 + mid.abs()) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Relative tolerance of reconstruction from fitted arcs.
pub const SAMPLE_TOL: f64 = 1e-4;

/// Fits the curve to the samples, then reconstructs the polygon.
pub fn reconstruct_from_samples(samples: &[CurvePoint], delta: f64) -> Result<ReconstructionReport> {
    if (delta - 0.5).abs() < 1e-12 {
        return Err(Error::HalfDensity);
    }
    let curve = fit_flotation_curve(samples, delta)?;
    reconstruct_with_tol(&curve, delta, SAMPLE_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::directions::circle_directions;
    use crate::flotation::sample_flotation;
    use crate::polytope::build_polytope;
    use crate::reconstruct2d::Status;

    fn samples(pts: &[[f64; 2]], delta: f64, n: usize) -> (crate::Polytope, Vec<CurvePoint>) {
        let v: Vec<Vec<f64>> = pts.iter().map(|p| alloc::vec![p[0], p[1]]).collect();
        let p = build_polytope(&v, 2).unwrap();
        let s = sample_flotation(&p, delta, &circle_directions(n)).unwrap();
        (p, s.iter().map(CurvePoint::from).collect())
    }

    #[test]
    fn square_from_samples() {
        let (p, s) = samples(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]], 0.25, 2048);
        let curve = fit_flotation_curve(&s, 0.25).unwrap();
        assert_eq!(curve.arcs().count(), 4);
        assert_eq!(curve.corners().count(), 4);
        for a in curve.arcs() {
            assert!((a.area_const - 0.25).abs() < 1e-6, "{}", a.area_const);
        }
        let mut r = reconstruct_from_samples(&s, 0.25).unwrap();
        r.compare_to(&p);
        assert_eq!(r.status, Status::Complete);
        assert!(r.hausdorff_to_truth.unwrap() < 1e-4);
    }

    #[test]
    fn pentagon_from_samples() {
        let (p, s) = samples(&[[0.0, 0.0], [2.0, 0.2], [2.5, 1.4], [1.1, 2.3], [-0.4, 1.2]], 0.3, 4096);
        let mut r = reconstruct_from_samples(&s, 0.3).unwrap();
        r.compare_to(&p);
        assert!(r.hausdorff_to_truth.unwrap() < 1e-4 * p.diameter(), "{:?}", r.hausdorff_to_truth);
    }
}
