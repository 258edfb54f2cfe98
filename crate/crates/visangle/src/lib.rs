//! Planar compact convex sets as truncated Fourier series of their support
//! functions, and the integral geometry of their visual angles.
//!
//! A convex body is stored as the coefficients of
//! `p(phi) = a0 + sum_k (a_k cos k phi + b_k sin k phi)`; construction
//! verifies positivity and strict convexity (`p + p'' > 0`). On top of that
//! representation the crate computes:
//!
//! * visual angles from exterior points and from enclosing circles, with
//!   derivatives along the circle ([`angle`]);
//! * integrals of functions of the visual angle over the whole exterior,
//!   their closed-form evaluations, and the uniqueness experiment that
//!   singles out `w - sin w` ([`crofton`]);
//! * curves of constant visual angle, their lengths, areas, limits, and the
//!   circle identities and inequalities they satisfy ([`isotopic`]).
//!
//! ```
//! use visangle::FourierSupport;
//!
//! let body = FourierSupport::new(1.0, &[(2, 0.1, 0.0)]).unwrap();
//! let m = body.metrics();
//! assert!((m.perimeter - 2.0 * std::f64::consts::PI).abs() < 1e-12);
//! assert!(m.isoperimetric_deficit() > 0.0);
//! ```

#![forbid(unsafe_code)]
#![warn(clippy::all)]

pub mod angle;
pub mod crofton;
pub mod error;
pub mod isotopic;
pub mod numeric;
pub mod support;

pub use angle::{
    circle_mean_estimates, visual_angle_on_circle, visual_angle_point, visual_angle_polar,
    w_phi_diagnostics, w_phi_on_circle, CircleMeanEstimates, CircleParametrization, Point,
    VisualAngleSample,
};
pub use crofton::{
    cgr_rhs, crofton_check, exterior_integral, moments, uniqueness_experiment, AngleWeight,
    CroftonCheck, ExteriorConfig, ExteriorIntegral, UniquenessExperiment, UniquenessSample,
    WeightMoments,
};
pub use error::{Error, Result};
pub use isotopic::{
    area_series, constant_width_disc_test, construct_quarter, curve, curve_point, detect_circle,
    hurwitz_g, limits, perimeter_identity, pp1_integral, AreaSeries, CircleFit, CircleIdentities,
    DiscTestReport, IsotopicCurve, IsotopicLimits, Pp1Integral, QuarterConstruction,
    RationalAngle,
};
pub use support::{BodyKind, BodyMetrics, ConstantWidthCheck, FourierSupport, RotatedSupport};

/// Compile and run every code snippet in the README and the user guide
/// (`book/`).
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/support-functions.md")]
    mod support_functions {}
    #[doc = include_str!("../../../book/src/visual-angle.md")]
    mod visual_angle {}
    #[doc = include_str!("../../../book/src/exterior-integrals.md")]
    mod exterior_integrals {}
    #[doc = include_str!("../../../book/src/isotopic-curves.md")]
    mod isotopic_curves {}
    #[doc = include_str!("../../../book/src/isotopic-circles.md")]
    mod isotopic_circles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
