use thiserror::Error;

/// Errors raised by the geometry, flotation and reconstruction routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported dimension {0}; only 2 and 3 are implemented")]
    UnsupportedDimension(usize),
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
    #[error("density {0} is outside the open interval (0, 1)")]
    InvalidDensity(f64),
    #[error("the cutting plane leaves no submerged interior")]
    EmptyCap,
    #[error("the cutting plane submerges the whole body")]
    FullBody,
    #[error("the plane does not meet the interior of the body")]
    EmptySection,
    #[error("liquid level solver did not converge (relative residual {residual:e})")]
    NoConvergence { residual: f64 },
    #[error("too few samples: need at least {needed}, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("liquid chord passes through a vertex")]
    SingularDirection,
    #[error("angle {0} lies outside the arc's range")]
    OutOfRange(f64),
    #[error("cluster has {got} planes, at least {needed} are required")]
    InsufficientData { needed: usize, got: usize },
    #[error("planes of a crossing cluster do not pin down a point (rank deficient, eigenvalue ratio {ratio:e})")]
    DegenerateCluster { ratio: f64 },
    #[error("the asymptote quarter-planes do not bound a polygon")]
    UnboundedRegion,
    #[error("both liquid chords through the point coincide, which happens exactly at density 1/2")]
    CoincidentChords,
    #[error("density 1/2 does not determine a polygon: centrally symmetric bodies all share a one-point flotation curve")]
    HalfDensity,
    #[error("segment chase exceeded {bound} steps")]
    ChaseNonTermination { bound: usize },
    #[error("counterexample construction lost convexity; use a smaller epsilon")]
    ConvexityLoss,
    #[error("base polygon has no pair of parallel sides of equal length")]
    NoParallelPair,
    #[error("base polygon has more than one pair of parallel sides of equal length")]
    MultipleParallelPairs,
    #[error("half-density chords across the parallel sides pivot at {offset:e} from the parallelogram centre; the end caps must have equal area")]
    UnbalancedBase { offset: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
