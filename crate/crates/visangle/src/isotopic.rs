//! Curves of constant visual angle and the circles among them.
//!
//! For a fixed angle alpha in (0, pi), the viewpoints that see the body
//! under visual angle alpha form a closed convex curve around it. The curve
//! is parametrized by the normal direction phi of the first tangent line:
//!
//! ```text
//! X = -(p sin(phi - alpha) + p1 sin phi) / sin alpha
//! Y =  (p cos(phi - alpha) + p1 cos phi) / sin alpha,   p1 = p(phi + pi - alpha)
//! ```
//!
//! This module computes these curves, their lengths and areas, the limits
//! as alpha tends to 0, and the special theory of the curves that happen to
//! be circles: detection, construction from square-root bodies, the Hurwitz
//! coefficients, and the identities and inequalities a circle forces.

use crate::angle::Point;
use crate::error::{Error, Result};
use crate::numeric;
use crate::support::FourierSupport;
use std::f64::consts::PI;

/// Relative deviation below which a fitted circle counts as genuine.
pub const CIRCLE_TOL: f64 = 1e-6;

/// A sampled constant-angle curve.
#[derive(Debug, Clone)]
pub struct IsotopicCurve {
    pub alpha: f64,
    /// curve points on a uniform phi grid
    pub points: Vec<Point>,
    /// squared-speed radicand at each grid node; nonnegative for a valid body
    pub radicand: Vec<f64>,
    /// arc length, by quadrature of sqrt(radicand)/sin alpha
    pub length: f64,
    /// enclosed area, by the shoelace rule over the sampled polygon
    pub area: f64,
}

/// The curve point for one body parameter.
pub fn curve_point(body: &FourierSupport, alpha: f64, phi: f64) -> Point {
    let p = body.p(phi);
    let p1 = body.p(phi + PI - alpha);
    let sa = alpha.sin();
    Point {
        x: -(p * (phi - alpha).sin() + p1 * phi.sin()) / sa,
        y: (p * (phi - alpha).cos() + p1 * phi.cos()) / sa,
    }
}

fn radicand_at(body: &FourierSupport, alpha: f64, phi: f64) -> f64 {
    let [p, dp, _] = body.eval_all(phi);
    let [p1, dp1, _] = body.eval_all(phi + PI - alpha);
    let (sa, ca) = alpha.sin_cos();
    p * p + p1 * p1 + dp * dp + dp1 * dp1
        + 2.0 * (p * p1 + dp * dp1) * ca
        + 2.0 * (p * dp1 - dp * p1) * sa
}

/// Sample the constant-angle curve on `n >= 512` uniform parameters.
///
/// A negative radicand signals numerical trouble; the curve is resampled
/// once at doubled resolution before giving up.
pub fn curve(body: &FourierSupport, alpha: f64, n: usize) -> Result<IsotopicCurve> {
    if !(alpha > 0.0 && alpha < PI) {
        return Err(Error::AlphaOutOfRange { alpha });
    }
    assert!(n >= 512, "need at least 512 curve samples");
    match sample_curve(body, alpha, n) {
        Ok(curve) => Ok(curve),
        Err(_) => sample_curve(body, alpha, 2 * n),
    }
}

fn sample_curve(body: &FourierSupport, alpha: f64, n: usize) -> Result<IsotopicCurve> {
    let grid = numeric::periodic_grid(n, 2.0 * PI);
    let mut points = Vec::with_capacity(n);
    let mut radicand = Vec::with_capacity(n);
    for &phi in &grid {
        let delta = radicand_at(body, alpha, phi);
        if delta < 0.0 {
            return Err(Error::NegativeRadicand {
                phi,
                value: delta,
            });
        }
        points.push(curve_point(body, alpha, phi));
        radicand.push(delta);
    }
    let sa = alpha.sin();
    let length = numeric::trapezoid_periodic(
        &radicand.iter().map(|d| d.sqrt() / sa).collect::<Vec<_>>(),
        2.0 * PI,
    );
    let mut area = 0.0;
    for i in 0..n {
        let a = points[i];
        let b = points[(i + 1) % n];
        area += a.x * b.y - b.x * a.y;
    }
    area *= 0.5;
    debug_assert!(
        length * length + 1e-9 >= 4.0 * PI * area,
        "isoperimetric inequality violated by the sampled curve"
    );
    #[cfg(debug_assertions)]
    for i in 0..16 {
        let sample = crate::visual_angle_point(body, points[i * n / 16])
            .expect("curve points are exterior");
        debug_assert!(
            (sample.w - alpha).abs() < 1e-8,
            "curve point sees the body under {} instead of {alpha}",
            sample.w
        );
    }
    Ok(IsotopicCurve {
        alpha,
        points,
        radicand,
        length,
        area,
    })
}

/// The alpha -> 0 behaviour of the curves.
///
/// `length_limit` is `lim L(alpha) sin alpha`, `area_limit` is
/// `lim F(alpha) sin^2 alpha`; both come from closed forms in the width
/// function `a = p(phi) + p(phi + pi)`. The scaled curves converge to
/// `a(phi) (-sin phi, cos phi)`, whose isoperimetric ratio
/// `length_limit^2 / (4 pi area_limit)` equals 1 exactly for bodies of
/// constant width. The empirical fields extrapolate actual curves from
/// alpha in {0.2, 0.1, 0.05} as an independent check.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct IsotopicLimits {
    pub length_limit: f64,
    pub area_limit: f64,
    pub isoperimetric_ratio: f64,
    pub empirical_length_limit: f64,
    pub empirical_area_limit: f64,
}

pub fn limits(body: &FourierSupport) -> Result<IsotopicLimits> {
    let length_limit = numeric::integrate_periodic(1024, 2.0 * PI, |phi| {
        let a = body.width(phi);
        let da = body.dp(phi) + body.dp(phi + PI);
        a.hypot(da)
    });
    // (1/2) integral of a^2 = L^2/pi + 2 pi sum over even k of c_k^2
    let perimeter = body.metrics().perimeter;
    let mut even_sum = 0.0;
    for k in (2..=body.k_max()).step_by(2) {
        even_sum += body.amplitude(k).powi(2);
    }
    let area_limit = perimeter * perimeter / PI + 2.0 * PI * even_sum;
    debug_assert!(
        {
            let quad = 0.5 * numeric::integrate_periodic(1024, 2.0 * PI, |phi| {
                body.width(phi).powi(2)
            });
            (quad - area_limit).abs() <= 1e-10 * area_limit
        },
        "width Parseval identity failed"
    );
    let isoperimetric_ratio = length_limit * length_limit / (4.0 * PI * area_limit);

    let mut scaled_lengths = Vec::new();
    let mut scaled_areas = Vec::new();
    for &alpha in &[0.2, 0.1, 0.05] {
        let c = curve(body, alpha, 1024)?;
        scaled_lengths.push((alpha, c.length * alpha.sin()));
        scaled_areas.push((alpha, c.area * alpha.sin().powi(2)));
    }
    Ok(IsotopicLimits {
        length_limit,
        area_limit,
        isoperimetric_ratio,
        empirical_length_limit: numeric::lagrange_extrapolate(&scaled_lengths, 0.0),
        empirical_area_limit: numeric::lagrange_extrapolate(&scaled_areas, 0.0),
    })
}

/// A circle fitted to a constant-angle curve.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct CircleFit {
    pub alpha: f64,
    /// circle center in the body's frame
    pub center: [f64; 2],
    pub radius: f64,
    /// max over phi of | |P - center| - radius | / radius
    pub deviation: f64,
}

/// Fit a circle to the constant-angle curve.
///
/// The squared distance of the curve from the origin is
/// `(p^2 + p1^2 + 2 p p1 cos alpha) / sin^2 alpha`, so the origin fit needs
/// no curve sampling: the radius is the root-mean-square distance and the
/// deviation is the worst relative radial error. With `search` set, a
/// derivative-free minimizer moves the center by translating the body,
/// confined to a box of half-width a0/2.
pub fn detect_circle(body: &FourierSupport, alpha: f64, search: bool) -> Result<CircleFit> {
    if !(alpha > 0.0 && alpha < PI) {
        return Err(Error::AlphaOutOfRange { alpha });
    }
    if !search {
        let (radius, deviation) = origin_fit(body, alpha);
        return Ok(CircleFit {
            alpha,
            center: [0.0, 0.0],
            radius,
            deviation,
        });
    }
    let box_half = 0.5 * body.a0();
    let objective = |u: f64, v: f64| {
        let mut penalty = 0.0;
        for t in [u, v] {
            let excess = (t.abs() - box_half).max(0.0);
            penalty += 1e3 * excess * excess;
        }
        match body.translate(u, v) {
            Ok(moved) => origin_fit(&moved, alpha).1 + penalty,
            Err(_) => 1e9 + penalty,
        }
    };
    let (shift, _) = numeric::nelder_mead_2d(objective, [0.0, 0.0], 0.05 * body.a0(), 1e-9, 400);
    let moved = body
        .translate(shift[0], shift[1])
        .expect("minimizer stays inside the feasible box");
    let (radius, deviation) = origin_fit(&moved, alpha);
    Ok(CircleFit {
        alpha,
        // translating the body by s moves its curve by s, so the circle
        // sits at -s in the original frame
        center: [-shift[0], -shift[1]],
        radius,
        deviation,
    })
}

fn origin_fit(body: &FourierSupport, alpha: f64) -> (f64, f64) {
    let n = (16 * body.k_max()).max(512);
    let (sa, ca) = alpha.sin_cos();
    let distances: Vec<f64> = numeric::periodic_grid(n, 2.0 * PI)
        .into_iter()
        .map(|phi| {
            let p = body.p(phi);
            let p1 = body.p(phi + PI - alpha);
            ((p * p + p1 * p1 + 2.0 * p * p1 * ca) / (sa * sa)).sqrt()
        })
        .collect();
    let radius = (distances.iter().map(|d| d * d).sum::<f64>() / n as f64).sqrt();
    let deviation = distances
        .iter()
        .map(|d| (d - radius).abs())
        .fold(0.0_f64, f64::max)
        / radius;
    (radius, deviation)
}

/// A body built so that its pi/2 curve is a circle.
#[derive(Debug, Clone)]
pub struct QuarterConstruction {
    pub body: FourierSupport,
    /// sup error of the Fourier projection of sqrt(c0 + c2 cos 2phi + c6 cos 6phi)
    pub projection_error: f64,
    /// the verified circle at alpha = pi/2
    pub fit: CircleFit,
}

/// Construct the body with `p^2 = c0 + c2 cos 2phi + c6 cos 6phi`.
///
/// Since p(phi)^2 + p(phi + pi/2)^2 = 2 c0 is constant, the quarter-angle
/// curve is a circle of radius sqrt(2 c0); this is asserted via
/// [`detect_circle`] and a failure (from truncation or a near-degenerate
/// profile) surfaces as [`Error::NoIsotopicCircle`].
pub fn construct_quarter(c0: f64, c2: f64, c6: f64) -> Result<QuarterConstruction> {
    let (body, projection_error) = FourierSupport::quarter_symmetric(c0, c2, c6)?;
    let fit = detect_circle(&body, PI / 2.0, false)?;
    if fit.deviation > CIRCLE_TOL {
        return Err(Error::NoIsotopicCircle {
            alpha: PI / 2.0,
            deviation: fit.deviation,
            tol: CIRCLE_TOL,
        });
    }
    debug_assert!((fit.radius - (2.0 * c0).sqrt()).abs() < 1e-3 * fit.radius);
    Ok(QuarterConstruction {
        body,
        projection_error,
        fit,
    })
}

/// Hurwitz's coefficient
/// `g_k(alpha) = 1 + ((-1)^k / 2)((k+1) cos(k-1)alpha - (k-1) cos(k+1)alpha)`.
pub fn hurwitz_g(k: usize, alpha: f64) -> f64 {
    let kf = k as f64;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    1.0 + 0.5
        * sign
        * ((kf + 1.0) * ((kf - 1.0) * alpha).cos() - (kf - 1.0) * ((kf + 1.0) * alpha).cos())
}

/// An angle of the form `alpha = pi - (m/n) pi` with m odd and coprime to n.
#[derive(Debug, Clone, Copy)]
pub struct RationalAngle {
    pub m: u32,
    pub n: u32,
    pub alpha: f64,
}

impl RationalAngle {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m == 0 || n == 0 || m % 2 == 0 || gcd(m, n) != 1 {
            return Err(Error::RationalityViolation { m, n });
        }
        if m >= n {
            return Err(Error::AlphaOutOfRange {
                alpha: PI - (m as f64 / n as f64) * PI,
            });
        }
        Ok(RationalAngle {
            m,
            n,
            alpha: PI * ((n - m) as f64) / n as f64,
        })
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Harmonics must live on multiples of n for the rational-angle series.
fn validate_periodicity(body: &FourierSupport, n: u32) -> Result<()> {
    for k in 1..=body.k_max() {
        if body.amplitude(k) > 1e-13 && k % n as usize != 0 {
            return Err(Error::PeriodicityViolation { n, k });
        }
    }
    Ok(())
}

/// The scaled-area series at a rational angle, both printed sign variants.
///
/// Predicts `F(alpha) sin^2(alpha/2)` as
/// `F + (pi / 4 cos^2(alpha/2)) sum_k (2 (k^2 -+ 1) cos^2(alpha/2) + g_k(alpha)) c_k^2`.
/// The two variants circulate in print; the sampled-curve area arbitrates
/// which one is right, per run, and both discrepancies are reported.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct AreaSeries {
    pub alpha: f64,
    pub m: u32,
    pub n: u32,
    /// F(alpha) sin^2(alpha/2) from the sampled curve (the oracle)
    pub scaled_area: f64,
    /// prediction with the 2(k^2 - 1) coefficient
    pub minus_variant: f64,
    /// prediction with the 2(k^2 + 1) coefficient
    pub plus_variant: f64,
    /// whether the minus variant is the closer one
    pub minus_selected: bool,
    /// the selected prediction
    pub prediction: f64,
    pub minus_discrepancy: f64,
    pub plus_discrepancy: f64,
}

pub fn area_series(body: &FourierSupport, m: u32, n: u32) -> Result<AreaSeries> {
    let angle = RationalAngle::new(m, n)?;
    validate_periodicity(body, n)?;
    let alpha = angle.alpha;
    let cos2_half = (0.5 * alpha).cos().powi(2);
    let area = body.metrics().area;
    let mut minus_variant = area;
    let mut plus_variant = area;
    for k in 2..=body.k_max() {
        let ck2 = body.amplitude(k).powi(2);
        if ck2 == 0.0 {
            continue;
        }
        let kf = (k * k) as f64;
        let g = hurwitz_g(k, alpha);
        let scale = PI / (4.0 * cos2_half) * ck2;
        minus_variant += scale * (2.0 * (kf - 1.0) * cos2_half + g);
        plus_variant += scale * (2.0 * (kf + 1.0) * cos2_half + g);
    }
    let sampled = curve(body, alpha, 2048)?;
    let scaled_area = sampled.area * (0.5 * alpha).sin().powi(2);
    let minus_discrepancy = (minus_variant - scaled_area).abs() / scaled_area.abs();
    let plus_discrepancy = (plus_variant - scaled_area).abs() / scaled_area.abs();
    let minus_selected = minus_discrepancy <= plus_discrepancy;
    Ok(AreaSeries {
        alpha,
        m,
        n,
        scaled_area,
        minus_variant,
        plus_variant,
        minus_selected,
        prediction: if minus_selected {
            minus_variant
        } else {
            plus_variant
        },
        minus_discrepancy,
        plus_discrepancy,
    })
}

/// The correlation integral of the support function with itself across the
/// angle, in closed form and by quadrature.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct Pp1Integral {
    /// `L^2/2pi - pi sum_k (-1)^(k+1) c_k^2 cos(k alpha)`
    pub closed_form: f64,
    /// direct quadrature of `p(phi) p(phi + pi - alpha)`
    pub quadrature: f64,
}

pub fn pp1_integral(body: &FourierSupport, alpha: f64) -> Pp1Integral {
    let mut closed = body.metrics().perimeter.powi(2) / (2.0 * PI);
    for k in 1..=body.k_max() {
        let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
        closed -= PI * sign * body.amplitude(k).powi(2) * (k as f64 * alpha).cos();
    }
    let quadrature =
        numeric::integrate_periodic(1024, 2.0 * PI, |phi| body.p(phi) * body.p(phi + PI - alpha));
    Pp1Integral {
        closed_form: closed,
        quadrature,
    }
}

/// The perimeter identity and inequalities forced by an isotopic circle.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct CircleIdentities {
    pub alpha: f64,
    pub radius: f64,
    /// left side: `L^2 + 2 pi^2 sum_{mu even} c_{mu n}^2
    ///            + 2 pi^2 tan^2(alpha/2) sum_{mu odd} c_{mu n}^2`
    pub lhs: f64,
    /// right side: `(2 pi R)^2 sin^2(alpha/2)`
    pub rhs: f64,
    pub residual: f64,
    pub perimeter: f64,
    /// `2 pi R sin(alpha/2)`; the perimeter may not exceed it
    pub perimeter_bound: f64,
    pub area: f64,
    /// `pi R^2 sin^2(alpha/2)`; the area may not exceed it
    pub area_bound: f64,
}

/// Check the perimeter identity at a rational angle whose curve is a circle.
///
/// Requires the circle to genuinely exist: the origin-centered fit must
/// reach deviation at most [`CIRCLE_TOL`].
pub fn perimeter_identity(body: &FourierSupport, m: u32, n: u32) -> Result<CircleIdentities> {
    let angle = RationalAngle::new(m, n)?;
    validate_periodicity(body, n)?;
    let alpha = angle.alpha;
    let fit = detect_circle(body, alpha, false)?;
    if fit.deviation > CIRCLE_TOL {
        return Err(Error::NoIsotopicCircle {
            alpha,
            deviation: fit.deviation,
            tol: CIRCLE_TOL,
        });
    }
    let metrics = body.metrics();
    let (sin_half, cos_half) = (0.5 * alpha).sin_cos();
    let tan2_half = (sin_half / cos_half).powi(2);
    let mut even_sum = 0.0;
    let mut odd_sum = 0.0;
    let mut mu = 1;
    while (mu * n as usize) <= body.k_max() {
        let ck2 = body.amplitude(mu * n as usize).powi(2);
        if mu % 2 == 0 {
            even_sum += ck2;
        } else {
            odd_sum += ck2;
        }
        mu += 1;
    }
    let lhs = metrics.perimeter.powi(2)
        + 2.0 * PI * PI * even_sum
        + 2.0 * PI * PI * tan2_half * odd_sum;
    let rhs = (2.0 * PI * fit.radius * sin_half).powi(2);
    Ok(CircleIdentities {
        alpha,
        radius: fit.radius,
        lhs,
        rhs,
        residual: (lhs - rhs).abs() / rhs,
        perimeter: metrics.perimeter,
        perimeter_bound: 2.0 * PI * fit.radius * sin_half,
        area: metrics.area,
        area_bound: PI * fit.radius.powi(2) * sin_half * sin_half,
    })
}

/// Falsification harness for "constant width with an isotopic circle
/// implies disc".
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct DiscTestReport {
    /// smallest circle deviation over the alpha sweep (center search on)
    pub min_deviation: f64,
    pub alpha_at_min: f64,
    /// deviation measured the same way on the comparison disc
    pub noise_floor: f64,
    /// true iff a non-disc body fit a circle down at the noise floor —
    /// which never happens: among constant-width bodies only the disc has
    /// circular isotopic curves
    pub counterexample: bool,
}

/// Sweep [`detect_circle`] over 64 angles for a constant-width body.
///
/// The comparison disc of the same mean width calibrates the numerical
/// noise floor; a deviation within 10x of that floor on a body with actual
/// harmonics would be a genuine circular isotopic curve, which constant
/// width rules out for everything but the disc.
pub fn constant_width_disc_test(body: &FourierSupport) -> Result<DiscTestReport> {
    let check = body.is_constant_width(1e-9);
    if !check.is_constant_width {
        return Err(Error::InvalidBody(format!(
            "disc test requires constant width; largest even amplitude {}",
            check.max_even_amplitude
        )));
    }
    let disc = FourierSupport::disc(body.a0())?;
    let mut min_deviation = f64::INFINITY;
    let mut alpha_at_min = 0.0;
    let mut noise_floor = 0.0_f64;
    for i in 0..64 {
        let alpha = PI * (i as f64 + 0.5) / 64.0;
        let dev = detect_circle(body, alpha, true)?.deviation;
        if dev < min_deviation {
            min_deviation = dev;
            alpha_at_min = alpha;
        }
        noise_floor = noise_floor.max(detect_circle(&disc, alpha, true)?.deviation);
    }
    let noise_floor = noise_floor.max(1e-14);
    let is_disc = body.k_max() == 0;
    Ok(DiscTestReport {
        min_deviation,
        alpha_at_min,
        noise_floor,
        counterexample: !is_disc && min_deviation <= 10.0 * noise_floor,
    })
}
