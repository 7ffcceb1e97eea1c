//! Invariant suite behind the `verify` command.

use floatgeo_core::directions::random_directions;
use floatgeo_core::{
    antisymmetry_defect, buoyancy_point, clip, complement_defect, contact_point, decompose_flotation_2d,
    dupin1_residual, dupin2_residual, dupin3_check_2d, moment_identity_check, solve_level, Dim, Error, PlaneSpec,
    Polytope, Vec3,
};

use crate::error::CliResult;
use crate::schema::{CheckDoc, VerifyDoc};
use crate::sweep::sweep;

/// Check name, tolerance and what the residual measures.
pub const TOLERANCES: &[(&str, f64, &str)] = &[
    ("cap_volume", 1e-12, "|vol(cap) - delta |P|| / |P|"),
    ("dupin1_tangent", 1e-6, "|theta . g'| / |g'| by central differences of step 1e-4"),
    ("dupin2_gradient", 1e-5, "|grad H - section centroid| / diam"),
    ("dupin3_curvature", 1e-2, "|R_curve - R_formula| / R_formula, planar only"),
    ("moment_identity", 1e-12, "direct vs expanded section second moment, relative"),
    ("complement_identity", 1e-12, "|P| g(P) against the wet and dry parts, relative"),
    ("antisymmetry_half_density", 1e-11, "|h(theta) + h(-theta)| / diam at delta 1/2"),
    ("hyperbola_law", 1e-9, "relative spread of u w along each arc, planar only"),
];

const STENCIL: f64 = 1e-4;
const DIFF_STEP: f64 = 1e-4;

pub fn tolerance(name: &str) -> f64 {
    TOLERANCES.iter().find(|t| t.0 == name).map(|t| t.1).unwrap_or(0.0)
}

fn check(name: &str, residuals: &[Option<f64>]) -> CheckDoc {
    let used: Vec<f64> = residuals.iter().flatten().copied().collect();
    let residual = used.iter().copied().fold(0.0, f64::max);
    let tolerance = tolerance(name);
    CheckDoc {
        name: name.into(),
        residual,
        tolerance,
        samples: used.len(),
        pass: residual <= tolerance,
    }
}

/// Skips directions whose stencil straddles a vertex.
fn regular(r: floatgeo_core::Result<f64>) -> floatgeo_core::Result<Option<f64>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::SingularDirection) => Ok(None),
        Err(e) => Err(e),
    }
}

fn tangents(theta: Vec3) -> Vec<Vec3> {
    if theta.z == 0.0 && theta.x.hypot(theta.y) > 0.999 {
        return vec![theta.perp()];
    }
    let helper = if theta.x.abs() < 0.9 { Vec3::X } else { Vec3::Y };
    let u = theta.cross(helper).normalized().unwrap();
    vec![u, theta.cross(u)]
}

pub fn run(p: &Polytope, delta: f64, samples: usize, seed: u64, threads: usize) -> CliResult<VerifyDoc> {
    let dim = p.dim();
    let dirs = random_directions(dim, samples, seed);
    let vol = p.volume();
    let diam = p.diameter();
    let mut checks = Vec::new();

    let r = sweep(&dirs, threads, |&t| {
        let l = solve_level(p, t, delta)?;
        let cap = clip(p, &PlaneSpec { theta: l.theta, offset: l.h })?;
        Ok(Some((cap.polytope.volume() - delta * vol).abs() / vol))
    })?;
    checks.push(check("cap_volume", &r));

    let r = sweep(&dirs, threads, |&t| {
        let t = t.normalized().unwrap();
        let mut worst: f64 = 0.0;
        for u in tangents(t) {
            let path: Vec<Vec3> = [-STENCIL, 0.0, STENCIL]
                .iter()
                .map(|s| t * s.cos() + u * s.sin())
                .collect();
            let b = path
                .iter()
                .map(|d| buoyancy_point(p, *d, delta))
                .collect::<floatgeo_core::Result<Vec<_>>>()?;
            worst = worst.max(dupin1_residual(&b)?);
        }
        Ok(Some(worst))
    })?;
    checks.push(check("dupin1_tangent", &r));

    let r = sweep(&dirs, threads, |&t| {
        Ok(regular(dupin2_residual(p, t, delta, DIFF_STEP))?.map(|v| v / diam))
    })?;
    checks.push(check("dupin2_gradient", &r));

    if dim == Dim::Two {
        let r = sweep(&dirs, threads, |&t| {
            regular(dupin3_check_2d(p, delta, t).map(|(rc, rf)| (rc - rf).abs() / rf))
        })?;
        checks.push(check("dupin3_curvature", &r));
    }

    let frames = random_directions(Dim::Two, samples, seed ^ 0x5eed);
    let pairs: Vec<(Vec3, Vec3)> = dirs.iter().copied().zip(frames).collect();
    let r = sweep(&pairs, threads, |&(t, a)| {
        let (lhs, rhs) = moment_identity_check(p, t, delta, a)?;
        Ok(Some((lhs - rhs).abs() / lhs.abs().max(f64::MIN_POSITIVE)))
    })?;
    checks.push(check("moment_identity", &r));

    let r = sweep(&dirs, threads, |&t| Ok(Some(complement_defect(p, t, delta)?)))?;
    checks.push(check("complement_identity", &r));

    let r = sweep(&dirs, threads, |&t| Ok(Some(antisymmetry_defect(p, 0.5, &[t])? / diam)))?;
    checks.push(check("antisymmetry_half_density", &r));

    if dim == Dim::Two {
        let dec = decompose_flotation_2d(p, delta)?;
        let mut r = Vec::new();
        for arc in dec.curve.arcs() {
            let range = arc.angle_range;
            let uw = (1..10)
                .map(|k| {
                    let phi = range.start + range.width() * k as f64 / 10.0;
                    let x = contact_point(p, Vec3::from_angle(phi), delta)?.contact;
                    let (u, w) = arc.apex_coordinates(x);
                    Ok(u * w)
                })
                .collect::<floatgeo_core::Result<Vec<f64>>>()?;
            let mean = uw.iter().sum::<f64>() / uw.len() as f64;
            r.push(Some(uw.iter().map(|v| (v - mean).abs() / mean.abs()).fold(0.0, f64::max)));
        }
        checks.push(check("hyperbola_law", &r));
    }

    Ok(VerifyDoc {
        delta,
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}
