//! Visual angle of a convex body from exterior viewpoints.
//!
//! Two independent solvers compute the angle w under which a body is seen:
//!
//! * [`visual_angle_point`] intersects the pencil of support lines with an
//!   arbitrary exterior point (tangent-line root finding);
//! * [`visual_angle_on_circle`] solves the tangency relation
//!   `p^2 + p1^2 + 2 p p1 cos w = R^2 sin^2 w`, with `p1 = p(phi + pi - w)`,
//!   for viewpoints on a circle of radius R enclosing the body.
//!
//! The solvers agree to solver tolerance wherever both apply; the property
//! suite pins that down.

use crate::error::{Error, Result};
use crate::numeric;
use crate::support::FourierSupport;
use std::f64::consts::PI;

/// Absolute tolerance for angle root finding (radians).
pub const ANGLE_XTOL: f64 = 1e-12;

/// Step used by the finite-difference cross-check of w_phi.
pub const W_PHI_FD_STEP: f64 = 1e-5;

/// Relative disagreement between implicit and finite-difference w_phi that
/// counts as a diagnostic.
pub const W_PHI_FD_RTOL: f64 = 1e-4;

/// Beyond `HYBRID_RADIUS_FACTOR * max_support` the circle solver takes over
/// from the tangent solver in [`visual_angle_polar`].
pub const HYBRID_RADIUS_FACTOR: f64 = 1.05;

/// A point of the plane.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn polar(r: f64, theta: f64) -> Self {
        Point {
            x: r * theta.cos(),
            y: r * theta.sin(),
        }
    }
}

/// One visual-angle evaluation.
///
/// `phi` is the body-adapted parameter: the normal direction of the first
/// of the two tangent lines through the viewpoint, so the second tangent
/// normal is `phi + pi - w`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct VisualAngleSample {
    /// distance of the viewpoint from the origin
    pub r: f64,
    /// polar angle of the viewpoint
    pub theta: f64,
    /// normal direction of the first tangent line, in [0, 2 pi)
    pub phi: f64,
    /// visual angle, in (0, pi)
    pub w: f64,
}

/// Visual angle of `body` seen from an arbitrary exterior point.
///
/// The support-line excess h(psi) = P . u(psi) - p(psi) is positive exactly
/// on the arc of normals (phi, phi + pi - w); the two tangent normals are
/// its zero crossings and w is read off the arc length.
pub fn visual_angle_point(body: &FourierSupport, point: Point) -> Result<VisualAngleSample> {
    let Point { x, y } = point;
    let r = x.hypot(y);
    let theta = y.atan2(x);
    let h = |psi: f64| {
        let (s, c) = psi.sin_cos();
        x * c + y * s - body.p(psi)
    };
    let cells = 4 * (64.max(8 * body.k_max()));
    let cell = 2.0 * PI / cells as f64;
    let vals: Vec<f64> = (0..cells).map(|i| h(i as f64 * cell)).collect();
    let imax = (0..cells)
        .max_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap())
        .unwrap();
    let scale = body.a0() + r;
    let boundary_tol = 1e-12 * scale;

    let (phi1, phi2) = if vals[imax] > 0.0 {
        // positive arc is grid-visible; walk outward from the peak node to
        // the nearest non-positive nodes and refine both crossings. The walk
        // hands the root solver the exact endpoint floats whose signs it
        // checked, so a tangency sitting on a grid node (where h is zero to
        // within an ulp) cannot flip sign between walk and solve.
        let mut hi = imax as f64 * cell;
        let mut lo = hi - cell;
        let mut steps = 0;
        while h(lo) > 0.0 {
            hi = lo;
            lo -= cell;
            steps += 1;
            if steps > cells {
                return Err(Error::NoBracket {
                    context: "tangent-line scan (no negative support excess)",
                });
            }
        }
        let phi1 =
            numeric::solve_bracketed(h, lo, hi, ANGLE_XTOL).ok_or(Error::NoBracket {
                context: "first tangent normal",
            })?;
        let mut lo = imax as f64 * cell;
        let mut hi = lo + cell;
        steps = 0;
        while h(hi) > 0.0 {
            lo = hi;
            hi += cell;
            steps += 1;
            if steps > cells {
                return Err(Error::NoBracket {
                    context: "tangent-line scan (no negative support excess)",
                });
            }
        }
        let phi2 =
            numeric::solve_bracketed(h, lo, hi, ANGLE_XTOL).ok_or(Error::NoBracket {
                context: "second tangent normal",
            })?;
        (phi1, phi2)
    } else {
        // all grid nodes non-positive: the point is inside, on the boundary,
        // or just outside with a positive arc thinner than one grid cell
        let peak_guess = imax as f64 * cell;
        let (psi_peak, h_peak) =
            numeric::golden_max(&h, peak_guess - cell, peak_guess + cell, 1e-13);
        if h_peak < -boundary_tol {
            return Err(Error::PointInsideBody { x, y });
        }
        if h_peak <= boundary_tol {
            return Err(Error::DegenerateTangency { x, y });
        }
        let phi1 = numeric::solve_bracketed(&h, psi_peak - cell, psi_peak, ANGLE_XTOL)
            .ok_or(Error::NoBracket {
                context: "first tangent normal (thin arc)",
            })?;
        let phi2 = numeric::solve_bracketed(&h, psi_peak, psi_peak + cell, ANGLE_XTOL)
            .ok_or(Error::NoBracket {
                context: "second tangent normal (thin arc)",
            })?;
        (phi1, phi2)
    };

    let arc = phi2 - phi1;
    let w = PI - arc;
    if !(w > 0.0 && w < PI) {
        return Err(Error::DegenerateTangency { x, y });
    }
    Ok(VisualAngleSample {
        r,
        theta,
        phi: phi1.rem_euclid(2.0 * PI),
        w,
    })
}

/// Visual angle seen from the point of the circle of radius `r` associated
/// with body parameter `phi` (the viewpoint where the support line with
/// normal `phi` meets the circle, taken in the direct sense).
///
/// Solves `G(w) = p^2 + p1^2 + 2 p p1 cos w - r^2 sin^2 w = 0` on (0, pi);
/// the root is unique because the second tangent normal is. The arccos form
/// `acos(p/r) + acos(p1/r) = pi - w` is asserted on the result.
pub fn visual_angle_on_circle(body: &FourierSupport, r: f64, phi: f64) -> Result<VisualAngleSample> {
    let w = solve_w_on_circle(body, r, phi)?;
    let p = body.p(phi);
    Ok(VisualAngleSample {
        r,
        theta: (phi + (p / r).acos()).rem_euclid(2.0 * PI),
        phi: phi.rem_euclid(2.0 * PI),
        w,
    })
}

fn solve_w_on_circle(body: &FourierSupport, r: f64, phi: f64) -> Result<f64> {
    let max_p = body.max_support();
    if !(r > max_p) {
        return Err(Error::CircleTooSmall { r, max_p });
    }
    let p = body.p(phi);
    let g = |w: f64| {
        let p1 = body.p(phi + PI - w);
        let (sw, cw) = w.sin_cos();
        p * p + p1 * p1 + 2.0 * p * p1 * cw - r * r * sw * sw
    };
    let w_hi = PI - 1e-7;
    // disc closed form seeds a tight bracket; G > 0 left of the root and
    // G < 0 right of it
    let seed = 2.0 * (body.a0() / r).min(1.0).asin();
    let lo = 0.5 * seed;
    let hi = (1.8 * seed + 1e-3).min(w_hi);
    let w = if lo < hi && g(lo) > 0.0 && g(hi) < 0.0 {
        numeric::solve_bracketed(g, lo, hi, ANGLE_XTOL)
    } else {
        scan_for_root(g, w_hi)
    }
    .ok_or(Error::NoBracket {
        context: "fundamental tangency relation in w",
    })?;
    debug_assert!(
        {
            let p1 = body.p(phi + PI - w);
            ((p / r).acos() + (p1 / r).acos() - (PI - w)).abs() < 1e-8
        },
        "arccos form of the tangency relation violated"
    );
    Ok(w)
}

fn scan_for_root<F: Fn(f64) -> f64 + Copy>(g: F, w_hi: f64) -> Option<f64> {
    let mut prev_w = 0.0;
    let mut prev_g = g(0.0); // equals width^2 > 0
    for j in 1..=64 {
        let wj = w_hi * j as f64 / 64.0;
        let gj = g(wj);
        if (gj > 0.0) != (prev_g > 0.0) {
            return numeric::solve_bracketed(g, prev_w, wj, ANGLE_XTOL);
        }
        prev_w = wj;
        prev_g = gj;
    }
    None
}

/// d w / d phi along the circle of radius `r`, by implicit differentiation
/// of the tangency relation:
///
/// ```text
/// w_phi = [p p' + p1 p1' + (p' p1 + p p1') cos w]
///       / [r^2 sin w cos w + p1 p1' + p p1' cos w + p p1 sin w]
/// ```
///
/// A central finite difference of [`visual_angle_on_circle`] guards the
/// formula: every call in debug builds, a deterministic 1% sample in
/// release builds. Disagreement beyond [`W_PHI_FD_RTOL`] indicates a broken
/// derivative and panics in debug builds.
pub fn w_phi_on_circle(body: &FourierSupport, r: f64, phi: f64) -> Result<f64> {
    let w = solve_w_on_circle(body, r, phi)?;
    let value = w_phi_implicit(body, r, phi, w);
    let check = if cfg!(debug_assertions) {
        true
    } else {
        // deterministic 1% sample keyed on the input bits
        (r.to_bits() ^ phi.to_bits()) % 128 == 0
    };
    if check {
        let fd = w_phi_finite_difference(body, r, phi)?;
        let denom = fd.abs().max(1e-8);
        debug_assert!(
            (value - fd).abs() / denom <= W_PHI_FD_RTOL || fd.abs() < 1e-10,
            "implicit w_phi {value} disagrees with finite difference {fd} at r={r}, phi={phi}"
        );
    }
    Ok(value)
}

fn w_phi_implicit(body: &FourierSupport, r: f64, phi: f64, w: f64) -> f64 {
    let [p, dp, _] = body.eval_all(phi);
    let [p1, dp1, _] = body.eval_all(phi + PI - w);
    let (sw, cw) = w.sin_cos();
    let num = p * dp + p1 * dp1 + (dp * p1 + p * dp1) * cw;
    let den = r * r * sw * cw + p1 * dp1 + p * dp1 * cw + p * p1 * sw;
    num / den
}

fn w_phi_finite_difference(body: &FourierSupport, r: f64, phi: f64) -> Result<f64> {
    let h = W_PHI_FD_STEP;
    let above = solve_w_on_circle(body, r, phi + h)?;
    let below = solve_w_on_circle(body, r, phi - h)?;
    Ok((above - below) / (2.0 * h))
}

/// All w_phi estimates side by side, for auditing the derivative formula.
#[derive(Debug, Clone, Copy)]
pub struct WphiDiagnostics {
    /// implicit differentiation (the value the crate uses)
    pub implicit: f64,
    /// variant whose denominator drops the cos w / sin w factors on the
    /// mixed terms; agrees with `implicit` only as r grows
    pub simplified_denominator: f64,
    /// central finite difference of the circle solver (ground truth)
    pub finite_difference: f64,
}

/// Compute all three w_phi estimates at one sample.
pub fn w_phi_diagnostics(body: &FourierSupport, r: f64, phi: f64) -> Result<WphiDiagnostics> {
    let w = solve_w_on_circle(body, r, phi)?;
    let [p, dp, _] = body.eval_all(phi);
    let [p1, dp1, _] = body.eval_all(phi + PI - w);
    let (sw, cw) = w.sin_cos();
    let num = p * dp + p1 * dp1 + (dp * p1 + p * dp1) * cw;
    let den_simplified = r * r * sw * cw + p1 * dp1 + p * dp1 + p * p1;
    Ok(WphiDiagnostics {
        implicit: w_phi_implicit(body, r, phi, w),
        simplified_denominator: num / den_simplified,
        finite_difference: w_phi_finite_difference(body, r, phi)?,
    })
}

/// Hybrid visual angle at a polar viewpoint (r, theta): tangent solver near
/// the body, circle solver once r clears the body comfortably. Both branches
/// return the same angle to solver tolerance.
pub fn visual_angle_polar(body: &FourierSupport, r: f64, theta: f64) -> Result<VisualAngleSample> {
    if r > HYBRID_RADIUS_FACTOR * body.max_support() {
        let phi = phi_of_theta_any(body, r, theta)?;
        visual_angle_on_circle(body, r, phi)
    } else {
        visual_angle_point(body, Point::polar(r, theta))
    }
}

/// Some body parameter phi whose circle point sits at polar angle theta.
/// Does not require theta(phi) to be injective; any preimage determines the
/// same viewpoint and hence the same visual angle.
pub(crate) fn phi_of_theta_any(body: &FourierSupport, r: f64, theta: f64) -> Result<f64> {
    let max_p = body.max_support();
    if !(r > max_p) {
        return Err(Error::CircleTooSmall { r, max_p });
    }
    let lifted = |phi: f64| phi + (body.p(phi) / r).acos();
    let t0 = lifted(0.0);
    let target = t0 + (theta - t0).rem_euclid(2.0 * PI);
    let phi = numeric::solve_bracketed(
        |phi| lifted(phi) - target,
        0.0,
        2.0 * PI,
        ANGLE_XTOL,
    )
    .ok_or(Error::NoBracket {
        context: "polar-angle inversion",
    })?;
    Ok(phi.rem_euclid(2.0 * PI))
}

/// The body parametrization of an enclosing circle.
///
/// Each body parameter phi marks the viewpoint where the support line with
/// normal phi meets the circle in the direct sense; its polar angle is
/// `theta(phi) = phi + acos(p(phi)/r)`. Construction verifies that this map
/// is a strictly increasing bijection (Jacobian `1 - p'/sqrt(r^2 - p^2)`
/// positive), so both directions are well defined.
#[derive(Debug, Clone)]
pub struct CircleParametrization<'a> {
    body: &'a FourierSupport,
    r: f64,
}

impl<'a> CircleParametrization<'a> {
    pub fn new(body: &'a FourierSupport, r: f64) -> Result<Self> {
        let max_p = body.max_support();
        if !(r > max_p) {
            return Err(Error::CircleTooSmall { r, max_p });
        }
        let n = (16 * body.k_max()).max(1024);
        for i in 0..n {
            let phi = 2.0 * PI * i as f64 / n as f64;
            let [p, dp, _] = body.eval_all(phi);
            if 1.0 - dp / (r * r - p * p).sqrt() <= 0.0 {
                // the polar angle would backtrack; a larger circle fixes it
                return Err(Error::CircleTooSmall { r, max_p });
            }
        }
        Ok(CircleParametrization { body, r })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Viewpoint for body parameter phi.
    pub fn point(&self, phi: f64) -> Point {
        let [p, _, _] = self.body.eval_all(phi);
        let (s, c) = phi.sin_cos();
        let t = (self.r * self.r - p * p).sqrt();
        Point {
            x: p * c - t * s,
            y: p * s + t * c,
        }
    }

    /// Polar angle of the viewpoint for body parameter phi.
    pub fn theta(&self, phi: f64) -> f64 {
        phi + (self.body.p(phi) / self.r).acos()
    }

    /// d theta / d phi; positive by construction.
    pub fn jacobian(&self, phi: f64) -> f64 {
        let [p, dp, _] = self.body.eval_all(phi);
        1.0 - dp / (self.r * self.r - p * p).sqrt()
    }

    /// Body parameter whose viewpoint has the given polar angle.
    pub fn phi_of_theta(&self, theta: f64) -> f64 {
        phi_of_theta_any(self.body, self.r, theta)
            .expect("validated at construction")
    }
}

/// Mean-value integrals of the visual angle over an enclosing circle.
///
/// As r grows, `double_perimeter_*` converge to 2L and, for centrally
/// symmetric bodies, `eight_area_*` converge to 8F. The `_phi` and `_theta`
/// fields integrate in the body parameter and in the polar angle
/// respectively; the theta forms use the exact Jacobian, so the two disagree
/// only at finite r.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct CircleMeanEstimates {
    pub r: f64,
    pub n: usize,
    /// r * integral of w d phi
    pub double_perimeter_phi: f64,
    /// r * integral of w d theta
    pub double_perimeter_theta: f64,
    /// integral of r^2 (w^2 - w_phi^2) d phi
    pub eight_area_phi: f64,
    /// integral of r^2 (w^2 - w_theta^2) d theta
    pub eight_area_theta: f64,
}

/// Trapezoid sums of the visual-angle means over the circle of radius `r`,
/// sampled at `n >= 512` uniform body parameters.
pub fn circle_mean_estimates(
    body: &FourierSupport,
    r: f64,
    n: usize,
) -> Result<CircleMeanEstimates> {
    assert!(n >= 512, "need at least 512 nodes for the circle means");
    // validated parametrization: guarantees the theta-substitution below is
    // an honest change of variables
    let param = CircleParametrization::new(body, r)?;
    let mut sum_w = 0.0;
    let mut sum_w_theta = 0.0;
    let mut sum_area = 0.0;
    let mut sum_area_theta = 0.0;
    for i in 0..n {
        let phi = 2.0 * PI * i as f64 / n as f64;
        let w = solve_w_on_circle(body, r, phi)?;
        let w_phi = w_phi_implicit(body, r, phi, w);
        let jac = param.jacobian(phi);
        sum_w += w;
        sum_w_theta += w * jac;
        sum_area += w * w - w_phi * w_phi;
        let w_theta = w_phi / jac;
        sum_area_theta += (w * w - w_theta * w_theta) * jac;
    }
    let h = 2.0 * PI / n as f64;
    Ok(CircleMeanEstimates {
        r,
        n,
        double_perimeter_phi: r * sum_w * h,
        double_perimeter_theta: r * sum_w_theta * h,
        eight_area_phi: r * r * sum_area * h,
        eight_area_theta: r * r * sum_area_theta * h,
    })
}
