//! Flotation and buoyancy surfaces of convex polytopes.
//!
//! The crate is `no_std` with `alloc`. It solves liquid levels, samples the
//! flotation and buoyancy surfaces, checks the Dupin relations, decomposes
//! planar flotation curves into hyperbolic arcs, reconstructs polygons from
//! them and builds the half-density counterexample pair.

#![no_std]

extern crate alloc;

pub mod directions;
pub mod error;
pub mod fit2d;
pub mod flotation;
pub mod geom;
pub mod hull;
pub mod montecarlo;
pub mod arcs2d;
pub mod buoyancy;
pub mod clip;
pub mod polytope;
pub mod reconstruct2d;
pub mod singular;

pub use error::{Error, Result};
pub use geom::{Dim, Vec3, EPS_GEO};
pub use polytope::{build_polytope, Facet, Polytope};
pub use clip::{clip, section, section_second_moment, Cap, LevelFunction, PlaneSpec, Section, SubPlane};
pub use montecarlo::{mc_centroid, mc_integral, mc_oracle, mc_section_integral, mc_volume, McEstimate};
pub use flotation::{
    antisymmetry_defect, contact_point, sample_flotation, solve_level, FlotationAccess, FlotationSample, LiquidLevel,
    PolytopeFlotation,
};
pub use singular::{
    default_paths, detect_singular_directions, recover_vertices, scan_paths, singular_set, Crossing, GreatCircleArc,
    SingularSet, VertexEstimate,
};
pub use buoyancy::{
    buoyancy_point, complement_defect, dupin1_residual, dupin2_residual, dupin3_check_2d, moment_identity_check,
    sample_buoyancy, BuoyancySample,
};
pub use arcs2d::{
    compute_w, decompose_flotation_2d, eval_arc, AngleRange, ArcDecomposition, CornerPoint, CurvePiece, FlotationCurve,
    HyperbolicArc, Joint,
};
pub use reconstruct2d::{
    chords_through_point, hausdorff, make_counterexample, reconstruct, Chord, ReconstructionReport, Status,
};
pub use fit2d::{fit_flotation_curve, reconstruct_from_samples, CurvePoint};
