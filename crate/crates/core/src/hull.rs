//! Convex hulls in the plane (monotone chain) and in space (incremental
//! insertion with an `eps` visibility test, coplanar triangles merged into
//! polygonal facets afterwards).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geom::{orthonormal_complement, Dim, Vec3};

/// Counter-clockwise hull of planar points, starting at the lexicographically
/// smallest vertex. Points within `eps` of a hull edge are dropped.
pub fn hull_2d(points: &[Vec3], eps: f64) -> Result<Vec<Vec3>> {
    let idx = hull_2d_indices(points, eps)?;
    Ok(idx.into_iter().map(|i| points[i]).collect())
}

/// Same as [`hull_2d`] but returns indices into `points`.
pub fn hull_2d_indices(points: &[Vec3], eps: f64) -> Result<Vec<usize>> {
    if points.len() < 3 {
        return Err(Error::DegenerateInput("need at least three points"));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].lex_cmp(&points[b]));
    order.dedup_by(|a, b| points[*a] == points[*b]);

    // exact monotone chain first; tolerance is applied to the finished cycle
    let turn = |o: usize, a: usize, b: usize| (points[a] - points[o]).cross2(points[b] - points[o]);
    let mut hull: Vec<usize> = Vec::with_capacity(2 * order.len());
    for pass in 0..2 {
        let base = hull.len();
        let seq: Vec<usize> = if pass == 0 {
            order.clone()
        } else {
            order.iter().rev().copied().collect()
        };
        for i in seq {
            while hull.len() >= base + 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], i) <= 0.0 {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }

    // drop vertices that nearly coincide with a neighbour or lie within eps
    // of the segment joining their neighbours
    loop {
        let n = hull.len();
        if n < 3 {
            return Err(Error::DegenerateInput("points are collinear"));
        }
        let redundant = (0..n).find(|&k| {
            let p = points[hull[(k + n - 1) % n]];
            let x = points[hull[k]];
            let q = points[hull[(k + 1) % n]];
            if x.dist(p) <= eps {
                return true;
            }
            let pq = q - p;
            let len = pq.norm();
            len > eps && (x - p).cross2(pq) <= eps * len
        });
        match redundant {
            Some(k) => {
                hull.remove(k);
            }
            None => break,
        }
    }
    let n = hull.len();
    let first = (0..n)
        .min_by(|&a, &b| points[hull[a]].lex_cmp(&points[hull[b]]))
        .unwrap_or(0);
    hull.rotate_left(first);
    Ok(hull)
}

/// A facet of a spatial hull: vertex cycle (counter-clockwise seen from
/// outside) and outward unit normal.
#[derive(Clone, Debug)]
pub struct HullFacet {
    pub cycle: Vec<usize>,
    pub normal: Vec3,
}

#[derive(Clone, Copy, Debug)]
struct Tri {
    v: [usize; 3],
    n: Vec3,
    off: f64,
    alive: bool,
}

fn make_tri(pts: &[Vec3], a: usize, b: usize, c: usize) -> Tri {
    let n = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
    let n = n.normalized().unwrap_or(Vec3::ZERO);
    Tri {
        v: [a, b, c],
        n,
        off: n.dot(pts[a]),
        alive: true,
    }
}

/// Spatial convex hull. Returns the hull vertices (lexicographically sorted)
/// and polygonal facets indexing into them.
pub fn hull_3d(points: &[Vec3], eps: f64) -> Result<(Vec<Vec3>, Vec<HullFacet>)> {
    let mut pts: Vec<Vec3> = points.to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    let mut uniq: Vec<Vec3> = Vec::with_capacity(pts.len());
    for p in pts {
        if !p.is_finite() {
            return Err(Error::InvalidInput("non-finite coordinate"));
        }
        if uniq.iter().all(|q| q.dist(p) > eps) {
            uniq.push(p);
        }
    }
    let pts = uniq;
    if pts.len() < 4 {
        return Err(Error::DegenerateInput("need at least four distinct points"));
    }

    // initial simplex from extreme points, deterministic
    let i0 = 0;
    let i1 = argmax(&pts, |p| p.dist(pts[i0]));
    let dir = (pts[i1] - pts[i0]).normalized().ok_or(Error::DegenerateInput("coincident points"))?;
    let i2 = argmax(&pts, |p| {
        let d = *p - pts[i0];
        (d - dir * d.dot(dir)).norm()
    });
    let line_dist = {
        let d = pts[i2] - pts[i0];
        (d - dir * d.dot(dir)).norm()
    };
    if line_dist <= eps {
        return Err(Error::DegenerateInput("points are collinear"));
    }
    let plane_n = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]).normalized().unwrap();
    let i3 = argmax(&pts, |p| (*p - pts[i0]).dot(plane_n).abs());
    if (pts[i3] - pts[i0]).dot(plane_n).abs() <= eps {
        return Err(Error::DegenerateInput("points lie in a plane"));
    }

    let interior = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) * 0.25;
    let mut tris: Vec<Tri> = Vec::new();
    for (a, b, c) in [(i0, i1, i2), (i0, i1, i3), (i0, i2, i3), (i1, i2, i3)] {
        let mut t = make_tri(&pts, a, b, c);
        if t.n.dot(interior) - t.off > 0.0 {
            t = make_tri(&pts, a, c, b);
        }
        tris.push(t);
    }
    let mut edge_owner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (k, t) in tris.iter().enumerate() {
        for e in 0..3 {
            edge_owner.insert((t.v[e], t.v[(e + 1) % 3]), k);
        }
    }

    for p_idx in 0..pts.len() {
        if p_idx == i0 || p_idx == i1 || p_idx == i2 || p_idx == i3 {
            continue;
        }
        let p = pts[p_idx];
        let visible: Vec<usize> = tris
            .iter()
            .enumerate()
            .filter(|(_, t)| t.alive && t.n.dot(p) - t.off > eps)
            .map(|(k, _)| k)
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut is_visible = alloc::vec![false; tris.len()];
        for &k in &visible {
            is_visible[k] = true;
        }
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        for &k in &visible {
            let v = tris[k].v;
            for e in 0..3 {
                let (a, b) = (v[e], v[(e + 1) % 3]);
                let across = edge_owner.get(&(b, a)).copied();
                match across {
                    Some(o) if is_visible[o] => {}
                    _ => horizon.push((a, b)),
                }
            }
        }
        for &k in &visible {
            tris[k].alive = false;
            let v = tris[k].v;
            for e in 0..3 {
                let key = (v[e], v[(e + 1) % 3]);
                if edge_owner.get(&key) == Some(&k) {
                    edge_owner.remove(&key);
                }
            }
        }
        for (a, b) in horizon {
            let t = make_tri(&pts, a, b, p_idx);
            let k = tris.len();
            tris.push(t);
            edge_owner.insert((a, b), k);
            edge_owner.insert((b, p_idx), k);
            edge_owner.insert((p_idx, a), k);
        }
    }

    // merge coplanar triangles into facets
    let live: Vec<Tri> = tris.into_iter().filter(|t| t.alive && t.n != Vec3::ZERO).collect();
    let mut groups: Vec<(Vec3, f64, Vec<usize>)> = Vec::new();
    for t in &live {
        let found = groups.iter_mut().find(|(n, off, _)| {
            n.dot(t.n) > 0.5 && t.v.iter().all(|&i| (n.dot(pts[i]) - off).abs() <= eps)
        });
        match found {
            Some((_, _, members)) => members.extend_from_slice(&t.v),
            None => groups.push((t.n, t.off, t.v.to_vec())),
        }
    }

    let mut facets_global: Vec<(Vec<usize>, Vec3)> = Vec::new();
    for (n, _, mut members) in groups {
        members.sort_unstable();
        members.dedup();
        let [e1, e2] = orthonormal_complement(n, Dim::Three);
        let local: Vec<Vec3> = members
            .iter()
            .map(|&i| Vec3::planar(pts[i].dot(e1), pts[i].dot(e2)))
            .collect();
        let cyc = match hull_2d_indices(&local, eps) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let cycle: Vec<usize> = cyc.into_iter().map(|k| members[k]).collect();
        let normal = newell_normal(&pts, &cycle).unwrap_or(n);
        facets_global.push((cycle, normal));
    }

    // keep only vertices used by facets, reindexed in lexicographic order
    let mut used = alloc::vec![false; pts.len()];
    for (c, _) in &facets_global {
        for &i in c {
            used[i] = true;
        }
    }
    let mut remap = alloc::vec![usize::MAX; pts.len()];
    let mut verts = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        if used[i] {
            remap[i] = verts.len();
            verts.push(*p);
        }
    }
    let mut facets: Vec<HullFacet> = facets_global
        .into_iter()
        .map(|(c, normal)| {
            let mut cycle: Vec<usize> = c.into_iter().map(|i| remap[i]).collect();
            let start = (0..cycle.len()).min_by_key(|&k| cycle[k]).unwrap_or(0);
            cycle.rotate_left(start);
            HullFacet { cycle, normal }
        })
        .collect();
    facets.sort_by(|a, b| a.cycle.cmp(&b.cycle));
    if facets.len() < 4 {
        return Err(Error::DegenerateInput("hull has fewer than four facets"));
    }
    Ok((verts, facets))
}

fn argmax(pts: &[Vec3], f: impl Fn(&Vec3) -> f64) -> usize {
    let mut best = 0;
    let mut best_val = f64::NEG_INFINITY;
    for (i, p) in pts.iter().enumerate() {
        let v = f(p);
        if v > best_val {
            best_val = v;
            best = i;
        }
    }
    best
}

fn newell_normal(pts: &[Vec3], cycle: &[usize]) -> Option<Vec3> {
    let o = pts[cycle[0]];
    let mut s = Vec3::ZERO;
    for k in 1..cycle.len() - 1 {
        s += (pts[cycle[k]] - o).cross(pts[cycle[k + 1]] - o);
    }
    s.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> Vec<Vec3> {
        let mut v = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    v.push(Vec3::new(x, y, z));
                }
            }
        }
        v
    }

    #[test]
    fn square_with_collinear_and_interior_points() {
        let pts = [
            Vec3::planar(0.0, 0.0),
            Vec3::planar(0.5, 0.0),
            Vec3::planar(1.0, 0.0),
            Vec3::planar(1.0, 1.0),
            Vec3::planar(0.0, 1.0),
            Vec3::planar(0.5, 0.5),
        ];
        let h = hull_2d(&pts, 1e-9).unwrap();
        assert_eq!(
            h,
            [
                Vec3::planar(0.0, 0.0),
                Vec3::planar(1.0, 0.0),
                Vec3::planar(1.0, 1.0),
                Vec3::planar(0.0, 1.0)
            ]
        );
    }

    #[test]
    fn collinear_points_are_degenerate() {
        let pts = [Vec3::planar(0.0, 0.0), Vec3::planar(1.0, 1.0), Vec3::planar(2.0, 2.0)];
        assert!(matches!(hull_2d(&pts, 1e-9), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn cube_with_centre_and_edge_points() {
        let mut pts = cube();
        pts.push(Vec3::new(0.5, 0.5, 0.5));
        pts.push(Vec3::new(0.5, 0.0, 0.0));
        pts.push(Vec3::new(0.5, 0.5, 1.0));
        let (v, f) = hull_3d(&pts, 1e-9).unwrap();
        assert_eq!(v.len(), 8);
        assert_eq!(f.len(), 6);
        for facet in &f {
            assert_eq!(facet.cycle.len(), 4);
            for &i in &facet.cycle {
                for p in &v {
                    assert!(facet.normal.dot(*p - v[i]) <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn planar_points_in_space_are_degenerate() {
        let pts = [
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(1.0, 1.0, 0.0),
        ];
        assert!(matches!(hull_3d(&pts, 1e-9), Err(Error::DegenerateInput(_))));
    }
}
