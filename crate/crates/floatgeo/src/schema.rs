//! JSON documents read and written by the CLI.
//!
//! Numbers are written as shortest round-trip decimals, so every document
//! parses back to the exact values it was written from.

use floatgeo_core::{
    AngleRange, ArcDecomposition, BuoyancySample, CornerPoint, CurvePiece, CurvePoint, Dim, FlotationCurve,
    FlotationSample, HyperbolicArc, Polytope, ReconstructionReport, SingularSet, Status, Vec3,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

fn coords(v: Vec3, dim: Dim) -> Vec<f64> {
    v.to_vec(dim)
}

fn point(c: &[f64]) -> CliResult<Vec3> {
    Ok(Vec3::from_slice(c)?)
}

fn xy(v: Vec3) -> [f64; 2] {
    [v.x, v.y]
}

/// `{"dim": 2|3, "vertices": [[x, ...], ...], "density": d}`. Vertices may
/// be an unordered point cloud; written documents carry the hull.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolytopeDoc {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<f64>,
}

impl PolytopeDoc {
    pub fn from_polytope(p: &Polytope) -> Self {
        PolytopeDoc {
            dim: p.dim().get(),
            vertices: p.vertices().iter().map(|v| coords(*v, p.dim())).collect(),
            density: p.density(),
        }
    }

    pub fn to_polytope(&self, eps: f64) -> CliResult<Polytope> {
        let dim = Dim::new(self.dim)?;
        if let Some(v) = self.vertices.iter().find(|v| v.len() != self.dim) {
            return Err(CliError::Invalid(format!(
                "vertex has {} coordinates but dim is {}",
                v.len(),
                self.dim
            )));
        }
        let pts = self.vertices.iter().map(|v| point(v)).collect::<CliResult<Vec<_>>>()?;
        let p = Polytope::with_eps(&pts, dim, eps)?;
        Ok(match self.density {
            Some(d) => p.with_density(d)?,
            None => p,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlotationRow {
    pub theta: Vec<f64>,
    pub h: f64,
    pub contact: Vec<f64>,
    pub residual: f64,
}

/// Sampled flotation surface.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlotationDoc {
    pub dim: usize,
    pub delta: f64,
    pub samples: Vec<FlotationRow>,
}

impl FlotationDoc {
    pub fn new(dim: Dim, delta: f64, samples: &[FlotationSample]) -> Self {
        FlotationDoc {
            dim: dim.get(),
            delta,
            samples: samples
                .iter()
                .map(|s| FlotationRow {
                    theta: coords(s.theta, dim),
                    h: s.h,
                    contact: coords(s.contact, dim),
                    residual: s.residual,
                })
                .collect(),
        }
    }

    pub fn curve_points(&self) -> CliResult<Vec<CurvePoint>> {
        if self.dim != 2 {
            return Err(CliError::Invalid("flotation samples must be planar".into()));
        }
        self.samples
            .iter()
            .map(|s| {
                Ok(CurvePoint {
                    theta: point(&s.theta)?,
                    h: s.h,
                    contact: point(&s.contact)?,
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuoyancyRow {
    pub theta: Vec<f64>,
    pub h: f64,
    pub center: Vec<f64>,
}

/// Sampled buoyancy surface.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuoyancyDoc {
    pub dim: usize,
    pub delta: f64,
    pub samples: Vec<BuoyancyRow>,
}

impl BuoyancyDoc {
    pub fn new(dim: Dim, delta: f64, samples: &[BuoyancySample]) -> Self {
        BuoyancyDoc {
            dim: dim.get(),
            delta,
            samples: samples
                .iter()
                .map(|s| BuoyancyRow {
                    theta: coords(s.theta, dim),
                    h: s.h,
                    center: coords(s.center, dim),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossingRow {
    pub theta: Vec<f64>,
    pub h: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexRow {
    pub v: Vec<f64>,
    pub residual: f64,
}

/// Singular directions found along the scan paths and the vertices fitted
/// to them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossingDoc {
    pub crossings: Vec<CrossingRow>,
    pub vertices: Vec<VertexRow>,
}

impl CrossingDoc {
    pub fn new(dim: Dim, set: &SingularSet) -> Self {
        CrossingDoc {
            crossings: set
                .crossings
                .iter()
                .map(|c| CrossingRow {
                    theta: coords(c.theta, dim),
                    h: c.h,
                })
                .collect(),
            vertices: set
                .groups
                .iter()
                .map(|g| VertexRow {
                    v: coords(g.point, dim),
                    residual: g.residual,
                })
                .collect(),
        }
    }
}

/// One piece of a planar flotation curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PieceDoc {
    Arc {
        apex: [f64; 2],
        directions: [[f64; 2]; 2],
        area_const: f64,
        angle_range: [f64; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        side_pair: Option<[usize; 2]>,
    },
    Corner {
        point: [f64; 2],
        angle_range: [f64; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        side_pair: Option<[usize; 2]>,
    },
}

impl PieceDoc {
    fn new(piece: &CurvePiece, side_pair: Option<(usize, usize)>) -> Self {
        let side_pair = side_pair.map(|(i, j)| [i, j]);
        match piece {
            CurvePiece::Arc(a) => PieceDoc::Arc {
                apex: xy(a.apex),
                directions: [xy(a.directions[0]), xy(a.directions[1])],
                area_const: a.area_const,
                angle_range: [a.angle_range.start, a.angle_range.end],
                side_pair,
            },
            CurvePiece::Corner(c) => PieceDoc::Corner {
                point: xy(c.point),
                angle_range: [c.pencil_range.start, c.pencil_range.end],
                side_pair,
            },
        }
    }

    fn to_piece(&self) -> CurvePiece {
        let v = |c: [f64; 2]| Vec3::planar(c[0], c[1]);
        let range = |r: [f64; 2]| AngleRange { start: r[0], end: r[1] };
        match self {
            PieceDoc::Arc {
                apex,
                directions,
                area_const,
                angle_range,
                ..
            } => CurvePiece::Arc(HyperbolicArc {
                apex: v(*apex),
                directions: [v(directions[0]), v(directions[1])],
                area_const: *area_const,
                angle_range: range(*angle_range),
            }),
            PieceDoc::Corner { point, angle_range, .. } => CurvePiece::Corner(CornerPoint {
                point: v(*point),
                pencil_range: range(*angle_range),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JointDoc {
    pub angle: f64,
    pub corner: bool,
    pub tangent_gap: f64,
}

/// Planar flotation curve as cyclically ordered pieces. The decomposition
/// adds the joints and the polygon `w` bounded by the asymptotes; readers
/// only need `delta` and `pieces`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveDoc {
    pub delta: f64,
    pub pieces: Vec<PieceDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub joints: Vec<JointDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub w: Vec<[f64; 2]>,
    #[serde(default)]
    pub degenerate: bool,
}

impl CurveDoc {
    pub fn from_decomposition(d: &ArcDecomposition) -> Self {
        CurveDoc {
            delta: d.curve.delta,
            pieces: d
                .curve
                .pieces
                .iter()
                .enumerate()
                .map(|(k, p)| PieceDoc::new(p, d.side_pairs.get(k).copied()))
                .collect(),
            joints: d
                .joints
                .iter()
                .map(|j| JointDoc {
                    angle: j.angle,
                    corner: j.corner,
                    tangent_gap: j.tangent_gap,
                })
                .collect(),
            w: d.w.iter().map(|v| xy(*v)).collect(),
            degenerate: d.degenerate,
        }
    }

    pub fn to_curve(&self) -> FlotationCurve {
        FlotationCurve {
            delta: self.delta,
            pieces: self.pieces.iter().map(PieceDoc::to_piece).collect(),
        }
    }
}

/// Reconstructed polygon. The polytope fields come first so the document
/// also reads as a [`PolytopeDoc`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionDoc {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    pub density: f64,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hausdorff_to_truth: Option<f64>,
    pub recovered_from_w: Vec<[[f64; 2]; 2]>,
    pub chased_segments: Vec<[[f64; 2]; 2]>,
    pub w: Vec<[f64; 2]>,
}

impl ReconstructionDoc {
    pub fn new(r: &ReconstructionReport, delta: f64) -> Self {
        let seg = |s: &[Vec3; 2]| [xy(s[0]), xy(s[1])];
        ReconstructionDoc {
            dim: 2,
            vertices: r.polygon.iter().map(|v| vec![v.x, v.y]).collect(),
            density: delta,
            status: match r.status {
                Status::Complete => "complete",
                Status::Partial => "partial",
            }
            .into(),
            hausdorff_to_truth: r.hausdorff_to_truth,
            recovered_from_w: r.recovered_from_w.iter().map(seg).collect(),
            chased_segments: r.chased_segments.iter().map(seg).collect(),
            w: r.w.iter().map(|v| xy(*v)).collect(),
        }
    }
}

/// Two polygons with equal flotation curves at density 1/2.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairDoc {
    pub epsilon: f64,
    pub p: PolytopeDoc,
    pub q: PolytopeDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub pass: bool,
}

/// Residuals of the invariant suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub delta: f64,
    pub pass: bool,
    pub checks: Vec<CheckDoc>,
}
