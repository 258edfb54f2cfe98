//! Crate-wide error type. Every failure carries the numbers that triggered
//! it so callers can report without re-deriving context.

/// Errors produced by body construction, angle solvers, and integral
/// evaluation.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// p(phi) dips to or below zero somewhere; the origin is not interior.
    #[error("support function not positive: min p = {min:.6e} at phi = {phi:.6}")]
    PositivityViolation { min: f64, phi: f64 },

    /// p + p'' dips to or below the safety margin; the parametrized boundary
    /// would not be convex.
    #[error("support function not convex: min (p + p'') = {min:.6e} at phi = {phi:.6}")]
    ConvexityViolation { min: f64, phi: f64 },

    /// Truncated Fourier projection deviates from the sampled data by more
    /// than the requested tolerance.
    #[error("projection error {error:.6e} exceeds tolerance {tol:.6e}")]
    ProjectionError { error: f64, tol: f64 },

    /// Visual angle is undefined for interior points.
    #[error("point ({x}, {y}) lies inside the body")]
    PointInsideBody { x: f64, y: f64 },

    /// Point sits on the boundary within tolerance; the two tangent lines
    /// collapse and the angle solver cannot separate them.
    #[error("point ({x}, {y}) is on the boundary within tolerance; tangency is degenerate")]
    DegenerateTangency { x: f64, y: f64 },

    /// Circle-restricted operations need the circle to enclose the body.
    #[error("circle radius {r} does not enclose the body (max support {max_p:.6})")]
    CircleTooSmall { r: f64, max_p: f64 },

    /// A bracketed solve found no sign change. Indicates a scan bug or
    /// violated precondition rather than bad user input.
    #[error("no sign change found while solving {context}")]
    NoBracket { context: &'static str },

    /// Truncation tail of an exterior integral exceeds the accepted fraction
    /// of the value; enlarge the radial cutoff.
    #[error("tail estimate {tail:.6e} exceeds {fraction} of integral value {value:.6e}")]
    TailTooLarge { tail: f64, value: f64, fraction: f64 },

    /// Weight function fails the cubic-order check near zero, so the
    /// exterior integral and its moment series would diverge.
    #[error("weight function '{name}' fails the O(w^3) vanishing check near w = 0")]
    SingularAtZero { name: String },

    /// Isotopic constructions require an opening angle strictly inside
    /// (0, pi).
    #[error("alpha = {alpha} outside the open interval (0, pi)")]
    AlphaOutOfRange { alpha: f64 },

    /// Curve-speed radicand went negative even after one resampling pass.
    #[error("negative radicand {value:.6e} in curve speed at phi = {phi:.6}")]
    NegativeRadicand { phi: f64, value: f64 },

    /// Angle fractions must be alpha = pi - (m/n) pi with m odd, 0 < m < n,
    /// and gcd(m, n) = 1.
    #[error("invalid angle fraction: m = {m}, n = {n} (need m odd, coprime, 0 < m < n)")]
    RationalityViolation { m: u32, n: u32 },

    /// Harmonic support must sit on multiples of n for the reduced series.
    #[error("harmonic k = {k} is not a multiple of {n}")]
    PeriodicityViolation { n: u32, k: usize },

    /// Circle-dependent identities require a detected isotopic circle.
    #[error("no isotopic circle at alpha = {alpha:.6}: deviation {deviation:.6e} > {tol:.6e}")]
    NoIsotopicCircle { alpha: f64, deviation: f64, tol: f64 },

    /// Body description could not be parsed or validated.
    #[error("invalid body data: {0}")]
    InvalidBody(String),
}

pub type Result<T> = std::result::Result<T, Error>;
