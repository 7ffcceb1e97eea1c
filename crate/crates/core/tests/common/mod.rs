#![allow(dead_code)]

use floatgeo_core::{build_polytope, Polytope};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

pub fn poly(pts: &[&[f64]]) -> Polytope {
    let v: Vec<Vec<f64>> = pts.iter().map(|p| p.to_vec()).collect();
    build_polytope(&v, pts[0].len()).unwrap()
}

pub fn unit_square() -> Polytope {
    poly(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]])
}

pub fn unit_cube() -> Polytope {
    let mut v = Vec::new();
    for i in 0..8 {
        v.push(vec![(i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64]);
    }
    build_polytope(&v, 3).unwrap()
}

pub fn regular_triangle() -> Polytope {
    let v: Vec<Vec<f64>> = (0..3)
        .map(|k| {
            let a = PI / 2.0 + TAU * k as f64 / 3.0;
            vec![a.cos(), a.sin()]
        })
        .collect();
    build_polytope(&v, 2).unwrap()
}

pub fn regular_tetrahedron() -> Polytope {
    poly(&[
        &[1.0, 1.0, 1.0],
        &[1.0, -1.0, -1.0],
        &[-1.0, 1.0, -1.0],
        &[-1.0, -1.0, 1.0],
    ])
}

/// Hull of `n` uniform points in the unit box.
pub fn random_hull(dim: usize, n: usize, seed: u64) -> Polytope {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..dim).map(|_| rng.random::<f64>()).collect())
        .collect();
    build_polytope(&v, dim).unwrap()
}

/// Random convex polygon with `n` vertices built from sorted edge
/// directions. With `parallel`, one edge gets an antiparallel partner and no
/// other pair is parallel.
pub fn random_polygon(n: usize, parallel: bool, seed: u64) -> Polytope {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'retry: loop {
        let free = if parallel { n - 1 } else { n };
        let mut ang: Vec<f64> = (0..free).map(|_| rng.random::<f64>() * TAU).collect();
        if parallel {
            ang.push((ang[0] + PI) % TAU);
        }
        ang.sort_by(f64::total_cmp);
        for i in 0..n {
            let gap = (ang[(i + 1) % n] - ang[i]).rem_euclid(TAU);
            if gap < 0.15 {
                continue 'retry;
            }
            for j in (i + 1)..n {
                let d = (ang[j] - ang[i]).rem_euclid(PI);
                let near_pi = d.min(PI - d);
                let is_pair = parallel && ((ang[j] - ang[i]).abs() - PI).abs() < 1e-12;
                if !is_pair && near_pi < 0.05 {
                    continue 'retry;
                }
            }
        }
        let u: Vec<[f64; 2]> = ang.iter().map(|a| [a.cos(), a.sin()]).collect();
        let mut len: Vec<f64> = (0..n).map(|_| 0.5 + rng.random::<f64>()).collect();
        // close the polygon by solving for the lengths of two edges
        let (k1, k2) = (n - 1, n / 2 - 1);
        let (mut rx, mut ry) = (0.0, 0.0);
        for i in 0..n {
            if i != k1 && i != k2 {
                rx -= len[i] * u[i][0];
                ry -= len[i] * u[i][1];
            }
        }
        let det = u[k1][0] * u[k2][1] - u[k1][1] * u[k2][0];
        if det.abs() < 0.2 {
            continue;
        }
        len[k1] = (rx * u[k2][1] - ry * u[k2][0]) / det;
        len[k2] = (u[k1][0] * ry - u[k1][1] * rx) / det;
        if len[k1] < 0.3 || len[k2] < 0.3 {
            continue;
        }
        let mut p = [0.0, 0.0];
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(vec![p[0], p[1]]);
            p[0] += len[i] * u[i][0];
            p[1] += len[i] * u[i][1];
        }
        match build_polytope(&v, 2) {
            Ok(poly) if poly.vertices().len() == n => return poly,
            _ => continue,
        }
    }
}
