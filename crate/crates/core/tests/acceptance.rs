//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::time::Instant;

use floatgeo_core::directions::{circle_directions, random_directions};
use floatgeo_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

struct Fixture {
    name: String,
    p: Polytope,
}

fn fixtures() -> Vec<Fixture> {
    let mut out = vec![
        Fixture { name: "unit square".into(), p: common::unit_square() },
        Fixture { name: "unit cube".into(), p: common::unit_cube() },
        Fixture { name: "regular triangle".into(), p: common::regular_triangle() },
        Fixture { name: "regular tetrahedron".into(), p: common::regular_tetrahedron() },
    ];
    for k in 0..20u64 {
        let dim = if k < 10 { 2 } else { 3 };
        out.push(Fixture {
            name: format!("random hull {dim}d #{k}"),
            p: common::random_hull(dim, 12, 100 + k),
        });
    }
    out
}

fn planar(fx: &[Fixture]) -> impl Iterator<Item = &Fixture> {
    fx.iter().filter(|f| f.p.dim() == Dim::Two)
}

type Outcome = std::result::Result<String, String>;

/// Random directions that avoid singular ones, as judged by `ok`.
fn nonsingular(dim: Dim, want: usize, seed: u64, mut ok: impl FnMut(Vec3) -> bool) -> Vec<Vec3> {
    let mut out = Vec::new();
    let mut batch = seed;
    while out.len() < want {
        for t in random_directions(dim, want, batch) {
            if out.len() < want && ok(t) {
                out.push(t);
            }
        }
        batch += 1_000_003;
    }
    out
}

fn cap_volume(fx: &[Fixture]) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (k, f) in fx.iter().enumerate() {
        let vol = f.p.volume();
        for &d in &[0.1, 0.25, 0.5, 0.75] {
            for t in random_directions(f.p.dim(), 500, 7 + k as u64) {
                let l = solve_level(&f.p, t, d).map_err(|e| format!("{}: {e}", f.name))?;
                let cap = clip(&f.p, &PlaneSpec { theta: l.theta, offset: l.h }).map_err(|e| format!("{}: {e}", f.name))?;
                worst = worst.max((cap.polytope.volume() - d * vol).abs() / vol);
                count += 1;
            }
        }
    }
    let msg = format!("{count} caps, worst |vol(cap) - delta|P|| / |P| = {worst:.2e} (tol 1e-12)");
    if worst <= 1e-12 { Ok(msg) } else { Err(msg) }
}

fn dupin2(fx: &[Fixture]) -> Outcome {
    let mut worst: f64 = 0.0;
    for (k, f) in fx.iter().enumerate() {
        let diam = f.p.diameter();
        let mut res = Vec::new();
        nonsingular(f.p.dim(), 200, 11 + k as u64, |t| match dupin2_residual(&f.p, t, 0.3, 1e-4) {
            Ok(r) => {
                res.push(r / diam);
                true
            }
            Err(Error::SingularDirection) => false,
            Err(e) => panic!("{}: {e}", f.name),
        });
        worst = res.iter().fold(worst, |a, &b| a.max(b));
    }
    let msg = format!("{} fixtures x 200 directions at delta 0.3, worst |grad H - centroid| / diam = {worst:.2e} (tol 1e-5)", fx.len());
    if worst <= 1e-5 { Ok(msg) } else { Err(msg) }
}

fn dupin3(fx: &[Fixture]) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for (k, f) in planar(fx).enumerate() {
        for &d in &[0.1, 0.25, 0.5, 0.75] {
            let mut rel = Vec::new();
            nonsingular(Dim::Two, 50, 31 + k as u64, |t| match dupin3_check_2d(&f.p, d, t) {
                Ok((rc, rf)) => {
                    rel.push((rc - rf).abs() / rf);
                    true
                }
                Err(Error::SingularDirection) => false,
                Err(e) => panic!("{}: {e}", f.name),
            });
            n += rel.len();
            worst = rel.iter().fold(worst, |a, &b| a.max(b));
        }
    }
    let (rc, rf) = dupin3_check_2d(&common::unit_square(), 0.25, Vec3::planar(0.0, 1.0)).map_err(|e| e.to_string())?;
    let square = (rc - 1.0 / 3.0).abs() / (1.0 / 3.0);
    let msg = format!(
        "{n} angles, worst |R_curve - R_formula| / R_formula = {worst:.2e} (tol 1e-2); square R = {rc:.6} (formula {rf:.6}, off {square:.2e})"
    );
    if worst <= 1e-2 && square <= 1e-2 { Ok(msg) } else { Err(msg) }
}

fn hyperbola(fx: &[Fixture]) -> Outcome {
    // corner fan of the unit square at delta 1/4: chords cut the triangle at
    // (1, 1) for normal angles in [atan(1/2), atan(2)]
    let sq = common::unit_square();
    let (lo, hi) = (0.5f64.atan(), 2.0f64.atan());
    let mut fan: f64 = 0.0;
    for k in 1..100 {
        let phi = lo + (hi - lo) * k as f64 / 100.0;
        let x = contact_point(&sq, Vec3::from_angle(phi), 0.25).map_err(|e| e.to_string())?.contact;
        fan = fan.max(((1.0 - x.x) * (1.0 - x.y) - 0.125).abs());
    }
    let mut spread: f64 = 0.0;
    let mut arcs = 0;
    for f in planar(fx) {
        for &d in &[0.1, 0.25, 0.3] {
            let dec = decompose_flotation_2d(&f.p, d).map_err(|e| format!("{}: {e}", f.name))?;
            for arc in dec.curve.arcs() {
                arcs += 1;
                let r = arc.angle_range;
                let uw: Vec<f64> = (1..20)
                    .map(|k| {
                        let phi = r.start + r.width() * k as f64 / 20.0;
                        let x = contact_point(&f.p, Vec3::from_angle(phi), d).unwrap().contact;
                        let (u, w) = arc.apex_coordinates(x);
                        u * w
                    })
                    .collect();
                let mean = uw.iter().sum::<f64>() / uw.len() as f64;
                let s = uw.iter().map(|v| (v - mean).abs() / mean.abs()).fold(0.0, f64::max);
                spread = spread.max(s);
            }
        }
    }
    let msg = format!("square fan |uw - 1/8| = {fan:.2e} (tol 1e-8); {arcs} arcs, worst relative spread of uw = {spread:.2e} (tol 1e-9)");
    if fan <= 1e-8 && spread <= 1e-9 { Ok(msg) } else { Err(msg) }
}

fn antisymmetry(fx: &[Fixture]) -> Outcome {
    let mut half: f64 = 0.0;
    let mut quarter = f64::INFINITY;
    for (k, f) in fx.iter().enumerate() {
        let dirs = random_directions(f.p.dim(), 200, 51 + k as u64);
        half = half.max(antisymmetry_defect(&f.p, 0.5, &dirs).map_err(|e| e.to_string())?);
        let q = antisymmetry_defect(&f.p, 0.25, &dirs).map_err(|e| e.to_string())?;
        quarter = quarter.min(q / f.p.diameter());
    }
    let msg = format!("defect at 1/2: {half:.2e} (tol 1e-11); smallest defect at 1/4: {quarter:.2e} diam (need >= 1e-3)");
    if half <= 1e-11 && quarter >= 1e-3 { Ok(msg) } else { Err(msg) }
}

fn round_trip() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut chase = 0;
    let mut bad = Vec::new();
    for seed in 0..20u64 {
        let n = 5 + (seed as usize % 5);
        let p = common::random_polygon(n, seed % 2 == 1, seed);
        for &d in &[0.2, 0.3, 0.45] {
            let dec = decompose_flotation_2d(&p, d).map_err(|e| format!("seed {seed}: {e}"))?;
            match reconstruct(&dec.curve, d) {
                Ok(mut r) => {
                    r.compare_to(&p);
                    let e = r.hausdorff_to_truth.unwrap() / p.diameter();
                    worst = worst.max(e);
                    if r.polygon.len() != n || e > 1e-6 {
                        bad.push(format!("seed {seed} delta {d}: {} vertices, error {e:.1e}", r.polygon.len()));
                    }
                }
                Err(e @ Error::ChaseNonTermination { .. }) => {
                    chase += 1;
                    bad.push(format!("seed {seed} delta {d}: {e}"));
                }
                Err(e) => bad.push(format!("seed {seed} delta {d}: {e}")),
            }
        }
    }
    let msg = format!("60 reconstructions, worst error {worst:.2e} diam (tol 1e-6), {chase} chase failures");
    if bad.is_empty() { Ok(msg) } else { Err(format!("{msg}; {}", bad.join("; "))) }
}

fn counterexample() -> Outcome {
    let base = common::poly(&[&[0.0, 0.0], &[3.0, 0.0], &[4.0, 1.0], &[3.0, 2.0], &[0.0, 2.0], &[-1.0, 0.5]]);
    let (p, q) = make_counterexample(&base, 0.4).map_err(|e| e.to_string())?;
    let diam = p.diameter().max(q.diameter());
    let dirs = circle_directions(3600);
    let gap = |d: f64| -> std::result::Result<f64, String> {
        let mut m: f64 = 0.0;
        for t in &dirs {
            let a = solve_level(&p, *t, d).map_err(|e| e.to_string())?.h;
            let b = solve_level(&q, *t, d).map_err(|e| e.to_string())?.h;
            m = m.max((a - b).abs());
        }
        Ok(m / diam)
    };
    let half = gap(0.5)?;
    let other = gap(0.3)?;
    let hd = hausdorff(p.vertices(), q.vertices()) / diam;
    let msg = format!("sup |h_P - h_Q| at 1/2 = {half:.2e} diam (tol 1e-8); Hausdorff = {hd:.3} diam (need >= 0.05); at 0.3 = {other:.2e} diam (need > 1e-3)");
    if half <= 1e-8 && hd >= 0.05 && other > 1e-3 { Ok(msg) } else { Err(msg) }
}

fn vertex_recovery() -> Outcome {
    let mut bodies = vec![("cube".to_string(), common::unit_cube())];
    for k in 0..5u64 {
        bodies.push((format!("random 3-polytope #{k}"), common::random_hull(3, 10, 200 + k)));
    }
    let paths = default_paths(Dim::Three);
    let mut worst: f64 = 0.0;
    let mut total = 0;
    for (name, p) in &bodies {
        let acc = PolytopeFlotation::new(p, 0.3).map_err(|e| e.to_string())?;
        let set = singular_set(&acc, &paths, 360).map_err(|e| format!("{name}: {e}"))?;
        for v in p.vertices() {
            let best = set.groups.iter().map(|g| g.point.dist(*v)).fold(f64::INFINITY, f64::min);
            worst = worst.max(best / p.diameter());
            total += 1;
        }
    }
    let cube = common::unit_cube();
    let acc = PolytopeFlotation::new(&cube, 0.5).map_err(|e| e.to_string())?;
    let half = singular_set(&acc, &paths, 360);
    let degenerate = matches!(half, Err(Error::DegenerateCluster { .. }));
    let msg = format!(
        "{total} vertices over {} bodies, worst recovery error {worst:.2e} diam (tol 1e-4); cube at 1/2: {}",
        bodies.len(),
        match &half {
            Err(e) => e.to_string(),
            Ok(s) => format!("{} groups, no degeneracy reported", s.groups.len()),
        }
    );
    if worst <= 1e-4 && degenerate { Ok(msg) } else { Err(msg) }
}

fn moment_identity(fx: &[Fixture]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    let mut worst: f64 = 0.0;
    for k in 0..100 {
        let f = &fx[k % fx.len()];
        let theta = random_directions(f.p.dim(), 1, 1000 + k as u64)[0];
        let a = match f.p.dim() {
            Dim::Two => Vec3::planar(if rng.random::<bool>() { 1.0 } else { -1.0 }, 0.0),
            Dim::Three => {
                let phi = TAU * rng.random::<f64>();
                Vec3::new(phi.cos(), phi.sin(), 0.0)
            }
        };
        let delta = 0.1 + 0.8 * rng.random::<f64>();
        let (lhs, rhs) = moment_identity_check(&f.p, theta, delta, a).map_err(|e| format!("{}: {e}", f.name))?;
        worst = worst.max((lhs - rhs).abs() / lhs.abs());
    }
    let msg = format!("100 triples, worst relative gap {worst:.2e} (tol 1e-12)");
    if worst <= 1e-12 { Ok(msg) } else { Err(msg) }
}

fn oracle(fx: &[Fixture]) -> Outcome {
    const N: usize = 1_000_000;
    let mut worst: f64 = 0.0;
    let mut checks = 0;
    let mut bad = Vec::new();
    let mut note = |name: &str, what: &str, est: McEstimate, exact: f64| {
        let z = (est.value - exact).abs() / est.stderr.max(1e-300);
        worst = worst.max(z);
        checks += 1;
        if !est.agrees(exact, 3.0) {
            bad.push(format!("{name} {what}: {z:.2} sigma"));
        }
    };
    for (k, f) in fx.iter().enumerate() {
        let seed = 500 + 10 * k as u64;
        note(&f.name, "volume", mc_volume(&f.p, N, seed), f.p.volume());
        let c = f.p.centroid();
        let est = mc_centroid(&f.p, N, seed + 1);
        let dims = f.p.dim().get();
        for (i, e) in est.iter().take(dims).enumerate() {
            note(&f.name, &format!("centroid[{i}]"), *e, [c.x, c.y, c.z][i]);
        }
        // second moment of the liquid section about a centroidal sub-plane
        let theta = random_directions(f.p.dim(), 1, seed + 2)[0];
        let l = solve_level(&f.p, theta, 0.3).map_err(|e| e.to_string())?;
        let s = section(&f.p, &PlaneSpec { theta: l.theta, offset: l.h }).map_err(|e| e.to_string())?;
        let a = match f.p.dim() {
            Dim::Two => Vec3::planar(1.0, 0.0),
            Dim::Three => Vec3::from_angle(0.25 * PI),
        };
        let sub = SubPlane::through(a, s.centroid).map_err(|e| e.to_string())?;
        let exact = section_second_moment(&s, &sub);
        let est = mc_section_integral(&s, |v| (sub.a.dot(v) + sub.c).powi(2), N, seed + 3);
        note(&f.name, "section moment", est, exact);
    }
    let msg = format!("{checks} estimates at n = 1e6, worst deviation {worst:.2} sigma (tol 3)");
    if bad.is_empty() { Ok(msg) } else { Err(format!("{msg}; {}", bad.join("; "))) }
}

fn main() {
    let fx = fixtures();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("cap volume", Box::new(|| cap_volume(&fx))),
        ("gradient of support equals section centroid", Box::new(|| dupin2(&fx))),
        ("buoyancy curvature radius", Box::new(|| dupin3(&fx))),
        ("hyperbola law", Box::new(|| hyperbola(&fx))),
        ("antisymmetry criterion", Box::new(|| antisymmetry(&fx))),
        ("round-trip reconstruction", Box::new(round_trip)),
        ("counterexample pair", Box::new(counterexample)),
        ("vertex recovery in space", Box::new(vertex_recovery)),
        ("second-moment identity", Box::new(|| moment_identity(&fx))),
        ("oracle equivalence", Box::new(|| oracle(&fx))),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(m) => println!("criterion {:2} PASS {name}: {m} [{secs:.1}s]", k + 1),
            Err(m) => {
                failed += 1;
                println!("criterion {:2} FAIL {name}: {m} [{secs:.1}s]", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
