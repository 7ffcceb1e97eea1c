//! Rejection-sampling oracle used to cross-check exact volumes, centroids
//! and moments. Deterministic for a given seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clip::Section;
use crate::geom::{sqrt, Dim, Vec3};
use crate::polytope::Polytope;

/// Monte-Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    pub stderr: f64,
}

impl McEstimate {
    /// Whether `exact` lies within `k` standard errors of the estimate.
    pub fn agrees(&self, exact: f64, k: f64) -> bool {
        (self.value - exact).abs() <= k * self.stderr
    }
}

struct BoxSampler {
    lo: Vec3,
    span: Vec3,
    dim: Dim,
    rng: ChaCha8Rng,
}

impl BoxSampler {
    fn new(lo: Vec3, hi: Vec3, dim: Dim, seed: u64) -> Self {
        BoxSampler {
            lo,
            span: hi - lo,
            dim,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn measure(&self) -> f64 {
        match self.dim {
            Dim::Two => self.span.x * self.span.y,
            Dim::Three => self.span.x * self.span.y * self.span.z,
        }
    }

    fn next(&mut self) -> Vec3 {
        let x = self.lo.x + self.span.x * self.rng.random::<f64>();
        let y = self.lo.y + self.span.y * self.rng.random::<f64>();
        let z = match self.dim {
            Dim::Two => 0.0,
            Dim::Three => self.lo.z + self.span.z * self.rng.random::<f64>(),
        };
        Vec3::new(x, y, z)
    }
}

/// Integral of `f` over `{x in P : pred(x)}` with `n` uniform samples in
/// the bounding box of `P`.
pub fn mc_oracle(
    p: &Polytope,
    pred: impl Fn(Vec3) -> bool,
    f: impl Fn(Vec3) -> f64,
    n: usize,
    seed: u64,
) -> McEstimate {
    let (lo, hi) = p.bounding_box();
    let mut s = BoxSampler::new(lo, hi, p.dim(), seed);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..n {
        let x = s.next();
        if p.contains(x, 0.0) && pred(x) {
            let v = f(x);
            sum += v;
            sum_sq += v * v;
        }
    }
    finish(sum, sum_sq, n, s.measure())
}

fn finish(sum: f64, sum_sq: f64, n: usize, measure: f64) -> McEstimate {
    let nf = n as f64;
    let mean = sum / nf;
    let var = (sum_sq / nf - mean * mean).max(0.0);
    McEstimate {
        value: measure * mean,
        stderr: measure * sqrt(var / nf),
    }
}

/// Volume of `P`.
pub fn mc_volume(p: &Polytope, n: usize, seed: u64) -> McEstimate {
    mc_oracle(p, |_| true, |_| 1.0, n, seed)
}

/// Integral of `f` over `P`.
pub fn mc_integral(p: &Polytope, f: impl Fn(Vec3) -> f64, n: usize, seed: u64) -> McEstimate {
    mc_oracle(p, |_| true, f, n, seed)
}

/// Centroid of `P` as the mean of the accepted samples, one estimate per
/// coordinate.
pub fn mc_centroid(p: &Polytope, n: usize, seed: u64) -> [McEstimate; 3] {
    let (lo, hi) = p.bounding_box();
    let mut s = BoxSampler::new(lo, hi, p.dim(), seed);
    let mut k = 0usize;
    let mut sum = Vec3::ZERO;
    let mut sq = Vec3::ZERO;
    for _ in 0..n {
        let x = s.next();
        if p.contains(x, 0.0) {
            k += 1;
            sum += x;
            sq += Vec3::new(x.x * x.x, x.y * x.y, x.z * x.z);
        }
    }
    let kf = k.max(1) as f64;
    let mean = sum / kf;
    let est = |m: f64, q: f64| McEstimate {
        value: m,
        stderr: sqrt(((q / kf) - m * m).max(0.0) / kf),
    };
    [
        est(mean.x, sq.x),
        est(mean.y, sq.y),
        est(mean.z, sq.z),
    ]
}

/// Integral of `f` (in frame coordinates) over a section, sampling its
/// frame bounding box.
pub fn mc_section_integral(
    s: &Section,
    f: impl Fn(Vec3) -> f64,
    n: usize,
    seed: u64,
) -> McEstimate {
    let mut lo = s.polygon[0];
    let mut hi = s.polygon[0];
    for q in &s.polygon {
        lo = Vec3::new(lo.x.min(q.x), lo.y.min(q.y), 0.0);
        hi = Vec3::new(hi.x.max(q.x), hi.y.max(q.y), 0.0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = hi - lo;
    let (measure, planar) = match s.dim {
        Dim::Two => (span.x, false),
        Dim::Three => (span.x * span.y, true),
    };
    let m = s.polygon.len();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..n {
        let x = lo.x + span.x * rng.random::<f64>();
        let q = if planar {
            Vec3::planar(x, lo.y + span.y * rng.random::<f64>())
        } else {
            Vec3::planar(x, 0.0)
        };
        let inside = !planar
            || (0..m).all(|k| {
                let a = s.polygon[k];
                let b = s.polygon[(k + 1) % m];
                (b - a).cross2(q - a) >= 0.0
            });
        if inside {
            let v = f(q);
            sum += v;
            sum_sq += v * v;
        }
    }
    finish(sum, sum_sq, n, measure)
}
