//! Liquid levels and the flotation surface.

use alloc::vec::Vec;

use crate::clip::{section, LevelFunction, PlaneSpec};
use crate::error::{Error, Result};
use crate::geom::{Dim, Vec3};
use crate::polytope::{check_density, Polytope};

/// Solved liquid level `t_P(theta, delta)` for one direction.
#[derive(Clone, Debug, PartialEq)]
pub struct LiquidLevel {
    pub theta: Vec3,
    pub h: f64,
    /// `|V(h) - delta |P|| / |P|`.
    pub residual: f64,
    /// Sorted indices into [`Polytope::edges`] of the edges cut by the plane.
    pub edge_set: Vec<usize>,
}

/// A point of the flotation surface: the section centroid at the solved level.
#[derive(Clone, Debug, PartialEq)]
pub struct FlotationSample {
    pub theta: Vec3,
    pub h: f64,
    pub contact: Vec3,
    pub residual: f64,
    pub edge_set: Vec<usize>,
}

/// Normalizes a direction for a body of dimension `dim`.
pub fn unit_direction(theta: Vec3, dim: Dim) -> Result<Vec3> {
    let t = match dim {
        Dim::Two => Vec3::planar(theta.x, theta.y),
        Dim::Three => theta,
    };
    if !t.is_finite() {
        return Err(Error::InvalidInput("non-finite direction"));
    }
    t.normalized().ok_or(Error::InvalidInput("zero direction"))
}

const NEWTON_STEPS: usize = 10;
const TARGET_RESIDUAL: f64 = 1e-12;

/// Solves `|P ∩ {x . theta >= h}| = delta |P|` for `h`.
///
/// Bisection on `[min v.theta, max v.theta]` down to `1e-6 diam`, then Newton
/// steps with `V'(h) = -A(h)` kept inside the bracket.
pub fn solve_level(p: &Polytope, theta: Vec3, delta: f64) -> Result<LiquidLevel> {
    check_density(delta)?;
    let theta = unit_direction(theta, p.dim())?;
    let lf = LevelFunction::new(p, theta);
    let h = solve_with(&lf, p, delta)?;
    let residual = (lf.eval(h).0 - delta * p.volume()).abs() / p.volume();
    Ok(LiquidLevel {
        theta,
        h,
        residual,
        edge_set: lf.edge_set(h),
    })
}

pub(crate) fn solve_with(lf: &LevelFunction<'_>, p: &Polytope, delta: f64) -> Result<f64> {
    let vol = p.volume();
    let target = delta * vol;
    let s = lf.heights();
    let mut lo = s.iter().copied().fold(f64::INFINITY, f64::min);
    let mut hi = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = 1e-6 * p.diameter();
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        let v = lf.eval(mid).0;
        if v == target {
            return Ok(mid);
        }
        if v > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut h = 0.5 * (lo + hi);
    let mut best = (f64::INFINITY, h);
    for _ in 0..NEWTON_STEPS {
        let (v, a) = lf.eval(h);
        let r = v - target;
        if r.abs() < best.0 {
            best = (r.abs(), h);
        }
        if r == 0.0 {
            break;
        }
        if r > 0.0 {
            lo = h;
        } else {
            hi = h;
        }
        let mut next = h + r / a;
        if !(a > 0.0) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        } else if next < lo || next > hi {
            // rounding can push a converged step just past the bracket
            let over = (lo - next).max(next - hi);
            next = if over <= hi - lo { next.clamp(lo, hi) } else { 0.5 * (lo + hi) };
        }
        if next == h {
            break;
        }
        h = next;
    }
    let (v, _) = lf.eval(h);
    if (v - target).abs() < best.0 {
        best = ((v - target).abs(), h);
    }
    let residual = best.0 / vol;
    if residual > TARGET_RESIDUAL {
        return Err(Error::NoConvergence { residual });
    }
    Ok(best.1)
}

/// Flotation-surface point for `theta`: the centroid of the liquid section.
pub fn contact_point(p: &Polytope, theta: Vec3, delta: f64) -> Result<FlotationSample> {
    let level = solve_level(p, theta, delta)?;
    let s = section(
        p,
        &PlaneSpec {
            theta: level.theta,
            offset: level.h,
        },
    )?;
    Ok(FlotationSample {
        theta: level.theta,
        h: level.h,
        contact: s.centroid_world(),
        residual: level.residual,
        edge_set: level.edge_set,
    })
}

/// One sample per direction, in input order.
pub fn sample_flotation(p: &Polytope, delta: f64, directions: &[Vec3]) -> Result<Vec<FlotationSample>> {
    directions.iter().map(|t| contact_point(p, *t, delta)).collect()
}

/// `max |h(theta) + h(-theta)|` over the directions.
pub fn antisymmetry_defect(p: &Polytope, delta: f64, directions: &[Vec3]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for t in directions {
        let a = solve_level(p, *t, delta)?.h;
        let b = solve_level(p, -*t, delta)?.h;
        worst = worst.max((a + b).abs());
    }
    Ok(worst)
}

/// Read access to a flotation surface without access to the body's
/// coordinates: the support value, contact point and a combinatorial label
/// of the analytic patch containing a direction.
pub trait FlotationAccess {
    fn dim(&self) -> Dim;
    fn delta(&self) -> f64;
    /// Support value `h(theta)` of the flotation surface.
    fn level(&self, theta: Vec3) -> Result<f64>;
    /// Contact point of the liquid level with the flotation surface.
    fn contact(&self, theta: Vec3) -> Result<Vec3>;
    /// Label that is constant on each analytic patch and changes exactly
    /// when the liquid plane crosses a vertex.
    fn patch_label(&self, theta: Vec3) -> Result<Vec<usize>>;
    /// Length scale of the body, used for relative tolerances.
    fn extent(&self) -> f64;
}

/// [`FlotationAccess`] backed by a polytope and density.
#[derive(Clone, Copy, Debug)]
pub struct PolytopeFlotation<'a> {
    p: &'a Polytope,
    delta: f64,
}

impl<'a> PolytopeFlotation<'a> {
    pub fn new(p: &'a Polytope, delta: f64) -> Result<Self> {
        check_density(delta)?;
        Ok(PolytopeFlotation { p, delta })
    }
}

impl FlotationAccess for PolytopeFlotation<'_> {
    fn dim(&self) -> Dim {
        self.p.dim()
    }
    fn delta(&self) -> f64 {
        self.delta
    }
    fn level(&self, theta: Vec3) -> Result<f64> {
        Ok(solve_level(self.p, theta, self.delta)?.h)
    }
    fn contact(&self, theta: Vec3) -> Result<Vec3> {
        Ok(contact_point(self.p, theta, self.delta)?.contact)
    }
    fn patch_label(&self, theta: Vec3) -> Result<Vec<usize>> {
        Ok(solve_level(self.p, theta, self.delta)?.edge_set)
    }
    fn extent(&self) -> f64 {
        self.p.diameter()
    }
}
