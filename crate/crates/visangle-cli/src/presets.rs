//! Built-in demonstrations: each preset reruns one headline result with
//! its published tolerances and reports pass/fail per identity.

use crate::report::{Check, RunReport};
use std::f64::consts::PI;
use visangle::{
    area_series, circle_mean_estimates, constant_width_disc_test, construct_quarter, curve,
    limits, perimeter_identity, pp1_integral, uniqueness_experiment, AngleWeight, ExteriorConfig,
    FourierSupport, Result,
};

pub const PRESET_NAMES: [&str; 6] = ["thm21", "thm31", "thm41", "thm51", "thm52", "thm53"];

pub fn run_preset(name: &str) -> Result<RunReport> {
    match name {
        "thm21" => uniqueness_demo(),
        "thm31" => far_field_demo(),
        "thm41" => shrinking_angle_demo(),
        "thm51" => constant_width_demo(),
        "thm52" => quarter_circle_demo(),
        "thm53" => perimeter_identity_demo(),
        other => Err(visangle::Error::InvalidBody(format!(
            "unknown preset {other:?}; expected one of {PRESET_NAMES:?}"
        ))),
    }
}

/// Only the deficit weight w - sin w fits I = a L^2 + b F with
/// (a, b) = (1/2, -pi) across the family p = 1 + t cos(m phi).
fn uniqueness_demo() -> Result<RunReport> {
    let config = ExteriorConfig::default();
    let ms = [2, 3, 4, 5];
    let deficit = uniqueness_experiment(&ms, 0.08, &AngleWeight::crofton(), &config)?;
    let sin3 = uniqueness_experiment(&ms, 0.08, &AngleWeight::sin_cubed(), &config)?;
    let checks = vec![
        Check::near("perimeter-sq coefficient", deficit.perimeter_sq_coeff, 0.5, 1e-3),
        Check::near("area coefficient", deficit.area_coeff, -PI, 1e-2),
        Check::residual("deficit-weight fit residual", deficit.residual, 1e-3),
        Check::at_least(
            "sin^3 residual / deficit residual",
            sin3.residual / deficit.residual,
            10.0,
        ),
    ];
    Ok(RunReport::new("preset thm21")
        .with_data(serde_json::json!({
            "deficit_fit": deficit,
            "sin3_fit": sin3,
        }))
        .with_checks(checks))
}

/// R * mean(w) -> 2L and R^2 * mean(w^2 - w_phi^2) -> 8F on distant circles.
fn far_field_demo() -> Result<RunReport> {
    let body = FourierSupport::perturbed(3, 0.1)?;
    let two_l = 2.0 * body.metrics().perimeter;
    let near = circle_mean_estimates(&body, 100.0 * body.max_support(), 2048)?;
    let far = circle_mean_estimates(&body, 200.0 * body.max_support(), 2048)?;
    let e_near = (near.double_perimeter_phi - two_l).abs() / two_l;
    let e_far = (far.double_perimeter_phi - two_l).abs() / two_l;

    let symmetric = FourierSupport::new(1.0, &[(2, 0.1, 0.0)])?;
    let eight_f = 8.0 * symmetric.metrics().area;
    let sym = circle_mean_estimates(&symmetric, 200.0 * symmetric.max_support(), 2048)?;

    let checks = vec![
        Check::residual("2L error at R = 100 max p", e_near, 1e-2),
        Check::at_most("2L error ratio (R doubled)", e_far / e_near, 1.0),
        Check::residual(
            "8F error at R = 200 max p",
            (sym.eight_area_phi - eight_f).abs() / eight_f,
            1e-2,
        ),
        Check::residual(
            "theta-integral 2L error at R = 200 max p",
            (far.double_perimeter_theta - two_l).abs() / two_l,
            1e-2,
        ),
    ];
    Ok(RunReport::new("preset thm31")
        .with_data(serde_json::json!({
            "asymmetric": {"near": near, "far": far, "two_perimeters": two_l},
            "symmetric": {"far": sym, "eight_areas": eight_f},
        }))
        .with_checks(checks))
}

/// L(alpha)^2 / 4 pi F(alpha) -> 1 exactly for constant width, > 1 otherwise.
fn shrinking_angle_demo() -> Result<RunReport> {
    let cw = FourierSupport::new(1.0, &[(3, 0.05, 0.0)])?;
    let mut deficits = Vec::new();
    for alpha in [0.2, 0.1, 0.05] {
        let c = curve(&cw, alpha, 1024)?;
        deficits.push(c.length * c.length / (4.0 * PI * c.area) - 1.0);
    }
    let cw_limits = limits(&cw)?;
    let oval = FourierSupport::new(1.0, &[(2, 0.1, 0.0)])?;
    let oval_limits = limits(&oval)?;
    let empirical_ratio = oval_limits.empirical_length_limit.powi(2)
        / (4.0 * PI * oval_limits.empirical_area_limit);

    let checks = vec![
        Check::at_most(
            "constant width: curve ratio deficit shrinks",
            (deficits[2] / deficits[1]).max(deficits[1] / deficits[0]),
            1.0,
        ),
        Check::residual(
            "constant width: limit ratio - 1",
            cw_limits.isoperimetric_ratio - 1.0,
            1e-10,
        ),
        Check::at_least("oval: limit ratio", oval_limits.isoperimetric_ratio, 1.0),
        Check::near(
            "oval: extrapolated ratio",
            empirical_ratio,
            oval_limits.isoperimetric_ratio,
            1e-2,
        ),
    ];
    Ok(RunReport::new("preset thm41")
        .with_data(serde_json::json!({
            "constant_width": {"limits": cw_limits, "curve_ratio_deficits": deficits},
            "oval": {"limits": oval_limits, "extrapolated_ratio": empirical_ratio},
        }))
        .with_checks(checks))
}

/// A constant-width body other than the disc never has an isotopic circle.
fn constant_width_demo() -> Result<RunReport> {
    let body = FourierSupport::new(1.0, &[(3, 0.05, 0.0)])?;
    let report = constant_width_disc_test(&body)?;
    let checks = vec![
        Check::at_least(
            "min circle deviation / disc noise floor",
            report.min_deviation / report.noise_floor,
            10.0,
        ),
        Check::at_most("counterexample found", f64::from(report.counterexample), 0.0),
    ];
    Ok(RunReport::new("preset thm51")
        .with_body(body.descriptor())
        .with_data(serde_json::to_value(report).expect("report serializes"))
        .with_checks(checks))
}

/// The quarter-angle construction: p^2(phi) + p^2(phi + pi/2) constant
/// forces a circle at alpha = pi/2, with sharp area and perimeter bounds.
fn quarter_circle_demo() -> Result<RunReport> {
    let q = construct_quarter(21.5, 2.5, 1.0)?;
    let series = area_series(&q.body, 1, 2)?;
    let metrics = q.body.metrics();
    let half = (0.5 * q.fit.alpha).sin();
    let checks = vec![
        Check::residual("circle deviation at alpha = pi/2", q.fit.deviation, 1e-6),
        Check::near("circle radius", q.fit.radius, 43.0_f64.sqrt(), 1e-3),
        Check::at_most("area vs pi R^2 sin^2(alpha/2)", metrics.area, PI * 43.0 * half * half),
        Check::at_most(
            "perimeter vs 2 pi R sin(alpha/2)",
            metrics.perimeter,
            2.0 * PI * q.fit.radius * half,
        ),
        Check::residual(
            "scaled-area series vs sampled curve",
            series.minus_discrepancy.min(series.plus_discrepancy),
            1e-4,
        ),
    ];
    Ok(RunReport::new("preset thm52")
        .with_body(q.body.descriptor())
        .with_data(serde_json::json!({
            "fit": q.fit,
            "projection_error": q.projection_error,
            "area_series": series,
        }))
        .with_checks(checks))
}

/// The perimeter identity tying L, the harmonics, and the circle radius.
fn perimeter_identity_demo() -> Result<RunReport> {
    let q = construct_quarter(21.5, 2.5, 1.0)?;
    let ids = perimeter_identity(&q.body, 1, 2)?;
    let pp1 = pp1_integral(&q.body, ids.alpha);
    let checks = vec![
        Check::residual("perimeter identity residual", ids.residual, 1e-4),
        Check::at_most("perimeter vs 2 pi R sin(alpha/2)", ids.perimeter, ids.perimeter_bound),
        Check::at_most("area vs pi R^2 sin^2(alpha/2)", ids.area, ids.area_bound),
        Check::residual(
            "support correlation: closed form vs quadrature",
            (pp1.closed_form - pp1.quadrature).abs() / pp1.closed_form.abs(),
            1e-10,
        ),
    ];
    Ok(RunReport::new("preset thm53")
        .with_body(q.body.descriptor())
        .with_data(serde_json::json!({
            "identities": ids,
            "support_correlation": pp1,
        }))
        .with_checks(checks))
}
