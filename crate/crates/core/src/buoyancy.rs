//! Buoyancy surface and numerical checks of the Dupin relations.

use alloc::vec::Vec;

use crate::clip::{clip, section, section_second_moment, PlaneSpec, SubPlane};
use crate::error::{Error, Result};
use crate::flotation::{solve_level, unit_direction};
use crate::geom::{atan2, Dim, Vec3};
use crate::polytope::Polytope;

/// Centroid of the submerged cap for one direction.
#[derive(Clone, Debug, PartialEq)]
pub struct BuoyancySample {
    pub theta: Vec3,
    pub center: Vec3,
    pub h: f64,
}

/// `g(theta)`: centroid of `P ∩ {x . theta >= t_P(theta, delta)}`.
pub fn buoyancy_point(p: &Polytope, theta: Vec3, delta: f64) -> Result<BuoyancySample> {
    let level = solve_level(p, theta, delta)?;
    let cap = clip(
        p,
        &PlaneSpec {
            theta: level.theta,
            offset: level.h,
        },
    )?;
    Ok(BuoyancySample {
        theta: level.theta,
        center: cap.polytope.centroid(),
        h: level.h,
    })
}

/// One buoyancy sample per direction, in input order.
pub fn sample_buoyancy(p: &Polytope, delta: f64, directions: &[Vec3]) -> Result<Vec<BuoyancySample>> {
    directions.iter().map(|t| buoyancy_point(p, *t, delta)).collect()
}

/// `max |theta_i . (c_{i+1} - c_{i-1})| / |c_{i+1} - c_{i-1}|` over the
/// interior samples of a path.
pub fn dupin1_residual(samples: &[BuoyancySample]) -> Result<f64> {
    if samples.len() < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            got: samples.len(),
        });
    }
    let mut worst: f64 = 0.0;
    for w in samples.windows(3) {
        let t = w[2].center - w[0].center;
        let n = t.norm();
        if n > 0.0 {
            worst = worst.max(w[1].theta.dot(t).abs() / n);
        }
    }
    Ok(worst)
}

/// Distance between the contact point (section centroid) and the gradient
/// of the homogeneous extension `H(x) = |x| h(x/|x|)`, estimated by central
/// differences of step `step`. Fails with `SingularDirection` when a stencil
/// point lies on a different analytic patch.
pub fn dupin2_residual(p: &Polytope, theta: Vec3, delta: f64, step: f64) -> Result<f64> {
    let theta = unit_direction(theta, p.dim())?;
    let center = solve_level(p, theta, delta)?;
    let s = section(
        p,
        &PlaneSpec {
            theta,
            offset: center.h,
        },
    )?;
    let axes: &[Vec3] = match p.dim() {
        Dim::Two => &[Vec3::X, Vec3::Y],
        Dim::Three => &[Vec3::X, Vec3::Y, Vec3::Z],
    };
    let mut grad = Vec3::ZERO;
    for (a, e) in axes.iter().enumerate() {
        let mut val = [0.0; 2];
        for (k, sign) in [1.0, -1.0].iter().enumerate() {
            let x = theta + *e * (sign * step);
            let l = solve_level(p, x, delta)?;
            if l.edge_set != center.edge_set {
                return Err(Error::SingularDirection);
            }
            val[k] = x.norm() * l.h;
        }
        let d = (val[0] - val[1]) / (2.0 * step);
        grad += match a {
            0 => Vec3::X * d,
            1 => Vec3::Y * d,
            _ => Vec3::Z * d,
        };
    }
    Ok(grad.dist(s.centroid_world()))
}

fn circumradius(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    let ab = a.dist(b);
    let bc = b.dist(c);
    let ca = c.dist(a);
    let area2 = (b - a).cross2(c - a).abs();
    ab * bc * ca / (2.0 * area2)
}

/// Radius of curvature of the planar buoyancy curve at `theta`, as
/// `(R_curve, R_formula)`.
///
/// `R_curve` is the circumradius of the samples at `phi - s, phi, phi + s`
/// extrapolated from steps `s` and `s/2`; `R_formula = L^3 / (12 delta |P|)`
/// with `L` the chord length.
pub fn dupin3_check_2d(p: &Polytope, delta: f64, theta: Vec3) -> Result<(f64, f64)> {
    if p.dim() != Dim::Two {
        return Err(Error::UnsupportedDimension(p.dim().get()));
    }
    let theta = unit_direction(theta, Dim::Two)?;
    let phi = atan2(theta.y, theta.x);
    let level = solve_level(p, theta, delta)?;
    let mut s = 1e-2;
    loop {
        let same = [-s, s]
            .iter()
            .map(|ds| solve_level(p, Vec3::from_angle(phi + ds), delta))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|l| l.edge_set == level.edge_set);
        if same {
            break;
        }
        s /= 2.0;
        if s < 1e-4 {
            return Err(Error::SingularDirection);
        }
    }
    let radius = |step: f64| -> Result<f64> {
        let a = buoyancy_point(p, Vec3::from_angle(phi - step), delta)?.center;
        let b = buoyancy_point(p, Vec3::from_angle(phi), delta)?.center;
        let c = buoyancy_point(p, Vec3::from_angle(phi + step), delta)?.center;
        Ok(circumradius(a, b, c))
    };
    let r0 = radius(s)?;
    let r1 = radius(s / 2.0)?;
    let r_curve = (4.0 * r1 - r0) / 3.0;
    let sec = section(
        p,
        &PlaneSpec {
            theta,
            offset: level.h,
        },
    )?;
    let l = sec.area;
    let r_formula = l * l * l / (12.0 * delta * p.volume());
    Ok((r_curve, r_formula))
}

/// Second moment of the liquid section about the sub-plane with unit frame
/// direction `a` through the section centroid, as `(lhs, rhs)`: `lhs` by
/// direct integration of the squared distance, `rhs` from the expansion
/// `sum a_i a_j ∫ v_i v_j - c^2 |S|` with `c = -a . g`.
pub fn moment_identity_check(p: &Polytope, theta: Vec3, delta: f64, a: Vec3) -> Result<(f64, f64)> {
    let level = solve_level(p, theta, delta)?;
    let s = section(
        p,
        &PlaneSpec {
            theta: level.theta,
            offset: level.h,
        },
    )?;
    let a = match p.dim() {
        Dim::Two => Vec3::planar(if a.x < 0.0 { -1.0 } else { 1.0 }, 0.0),
        Dim::Three => a,
    };
    let sub = SubPlane::through(a, s.centroid)?;
    let lhs = section_second_moment(&s, &sub);
    let m = s.second_moment;
    let av = [a.x, a.y];
    let mut quad = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            quad += av[i] * av[j] * m[i][j];
        }
    }
    let rhs = quad - sub.c * sub.c * s.area;
    Ok((lhs, rhs))
}

/// Relative defect of `|P| g(P) = delta |P| g(theta) + (1 - delta)|P| g'(theta)`
/// where `g'` is the centroid of the unsubmerged part.
pub fn complement_defect(p: &Polytope, theta: Vec3, delta: f64) -> Result<f64> {
    let level = solve_level(p, theta, delta)?;
    let wet = clip(
        p,
        &PlaneSpec {
            theta: level.theta,
            offset: level.h,
        },
    )?
    .polytope;
    let dry = clip(
        p,
        &PlaneSpec {
            theta: -level.theta,
            offset: -level.h,
        },
    )?
    .polytope;
    let lhs = p.centroid() * p.volume();
    let rhs = wet.centroid() * wet.volume() + dry.centroid() * dry.volume();
    let scale = p.volume() * (p.centroid().norm() + p.diameter());
    Ok(lhs.dist(rhs) / scale)
}
