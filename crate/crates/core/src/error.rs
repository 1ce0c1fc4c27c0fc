use thiserror::Error;

/// Failure modes of the numerical pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid bounds: x_min = {x_min}, x_max = {x_max}, n = {n} (need x_min < x_max and n >= 16)")]
    InvalidBounds { x_min: f64, x_max: f64, n: usize },

    #[error("grid mismatch between operands")]
    GridMismatch,

    #[error("non-finite sample at index {index}")]
    NonFinite { index: usize },

    #[error("valid region too small: {len} contiguous points, need at least {needed}")]
    RegionTooSmall { len: usize, needed: usize },

    #[error("validity mask is not one contiguous region")]
    NonContiguousMask,

    #[error("validity mask is empty")]
    EmptyMask,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("state does not fit the box: boundary amplitude is {ratio:e} of the peak (limit 1e-8)")]
    BoxTooSmall { ratio: f64 },

    #[error("grid too coarse: {points_per_sigma:.3} points per sigma (need at least 8)")]
    ResolutionTooCoarse { points_per_sigma: f64 },

    #[error("evolved state overflows the box: boundary amplitude is {ratio:e} of the peak (limit 1e-8)")]
    BoxOverflow { ratio: f64 },

    #[error("zero chirp: the phase difference is linear and has no stationary point")]
    ZeroChirp,

    #[error("overlap magnitude {magnitude:e} too small to fix a phase convention")]
    VanishingOverlap { magnitude: f64 },

    #[error("overlap is not real: Im/|s| = {relative_imag:e}")]
    NonRealOverlap { relative_imag: f64 },

    #[error("antiparallel states: overlap {s} <= -1 + 1e-6, superposition not normalizable")]
    AntiparallelDegenerate { s: f64 },

    #[error("density outside the phase mask is {fraction:e} of the total (limit 1e-8)")]
    SupportEscapesMask { fraction: f64 },

    #[error("no stationary point of the phase difference")]
    NoStationaryPoint,

    #[error("{count} stationary points found; the analysis requires exactly one")]
    MultipleStationaryPoints { count: usize },

    #[error("degenerate curvature |gamma| = {gamma:e} at x = {mu}")]
    DegenerateCurvature { mu: f64, gamma: f64 },

    #[error(
        "quadrature under-resolved: {samples_per_fringe:.3} samples per fringe at the window edge (need at least 4)"
    )]
    UnderResolved { samples_per_fringe: f64 },

    #[error("stationary point x = {mu} lies outside the phase mask")]
    MuOutsideMask { mu: f64 },

    #[error("zero probability density at the stationary point")]
    ZeroDensity,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
