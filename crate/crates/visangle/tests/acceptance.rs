//! End-to-end acceptance gate: every headline identity, limit, and
//! inequality at its stated tolerance, one pass/fail line per criterion.
//!
//! Run with `--nocapture` to see the lines as they print; the test fails
//! at the end if any criterion failed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::time::Instant;
use visangle::{
    cgr_rhs, circle_mean_estimates, constant_width_disc_test, construct_quarter, curve,
    detect_circle, exterior_integral, hurwitz_g, limits, perimeter_identity, pp1_integral,
    uniqueness_experiment, visual_angle_on_circle, visual_angle_point, visual_angle_polar,
    AngleWeight, ExteriorConfig, FourierSupport, Point,
};

struct Gate {
    results: Vec<(String, bool, String)>,
}

impl Gate {
    fn new() -> Self {
        Gate {
            results: Vec::new(),
        }
    }

    fn check(&mut self, id: &str, pass: bool, detail: String) {
        println!("{} {:<44} {detail}", if pass { "PASS" } else { "FAIL" }, id);
        self.results.push((id.to_string(), pass, detail));
    }

    fn finish(self) {
        let failures: Vec<_> = self
            .results
            .iter()
            .filter(|(_, pass, _)| !pass)
            .collect();
        assert!(
            failures.is_empty(),
            "{} acceptance criteria failed: {:#?}",
            failures.len(),
            failures
        );
    }
}

fn suite() -> Vec<(&'static str, FourierSupport)> {
    vec![
        ("disc", FourierSupport::disc(1.0).unwrap()),
        ("perturbed(2,0.2)", FourierSupport::perturbed(2, 0.2).unwrap()),
        ("perturbed(3,0.1)", FourierSupport::perturbed(3, 0.1).unwrap()),
        (
            "perturbed(5,0.03)",
            FourierSupport::perturbed(5, 0.03).unwrap(),
        ),
        (
            "quarter",
            FourierSupport::quarter_symmetric(21.5, 2.5, 1.0).unwrap().0,
        ),
    ]
}

#[test]
fn acceptance() {
    let mut gate = Gate::new();
    let config = ExteriorConfig::default();

    // 1 + 3: the visual-angle integral against both the closed form and
    // the harmonic series, for the deficit weight and for w^3
    let cubic = AngleWeight::cubic();
    for (name, body) in suite() {
        let weight = AngleWeight::crofton();
        let start = Instant::now();
        let integral = exterior_integral(&body, &weight, &config).unwrap();
        let elapsed = start.elapsed().as_secs_f64();
        let metrics = body.metrics();
        let closed = 0.5 * metrics.perimeter.powi(2) - PI * metrics.area;
        let rel = (integral.value - closed).abs() / closed;
        gate.check(
            &format!("1. deficit integral [{name}]"),
            rel <= 1e-3 && elapsed < 30.0,
            format!("rel err {rel:.2e} (tol 1e-3), {elapsed:.2}s (limit 30s)"),
        );

        let series = cgr_rhs(&body, &weight);
        let rel = (integral.value - series).abs() / series.abs();
        gate.check(
            &format!("3. series oracle, deficit weight [{name}]"),
            rel <= 1e-3,
            format!("quadrature {:.6} vs series {series:.6}, rel {rel:.2e}", integral.value),
        );

        let integral = exterior_integral(&body, &cubic, &config).unwrap();
        let series = cgr_rhs(&body, &cubic);
        let rel = (integral.value - series).abs() / series.abs();
        gate.check(
            &format!("3. series oracle, cubic weight [{name}]"),
            rel <= 1e-3,
            format!("quadrature {:.6} vs series {series:.6}, rel {rel:.2e}", integral.value),
        );
    }

    // 2: the two disc identities with value 4 pi^2
    let disc = FourierSupport::disc(1.0).unwrap();
    for (weight, target, label) in [
        (AngleWeight::sin_cubed(), 4.0 * PI * PI, "perimeter^2"),
        (AngleWeight::disc_area(), 4.0 * PI * PI, "4 pi area"),
    ] {
        let integral = exterior_integral(&disc, &weight, &config).unwrap();
        let rel = (integral.value - target).abs() / target;
        gate.check(
            &format!("2. disc identity [{}]", weight.name()),
            rel <= 1e-3,
            format!("{label}: {:.6} vs {target:.6}, rel {rel:.2e}", integral.value),
        );
    }

    // 4: only the deficit weight fits (1/2) L^2 - pi F across the family
    let crofton_fit =
        uniqueness_experiment(&[2, 3, 4, 5], 0.08, &AngleWeight::crofton(), &config).unwrap();
    let a_err = (crofton_fit.perimeter_sq_coeff - 0.5).abs();
    let b_err = (crofton_fit.area_coeff + PI).abs();
    gate.check(
        "4. uniqueness: deficit weight fit",
        a_err <= 1e-3 && b_err <= 1e-2 && crofton_fit.residual <= 1e-3,
        format!(
            "(a,b) = ({:.5}, {:.5}), residual {:.2e}",
            crofton_fit.perimeter_sq_coeff, crofton_fit.area_coeff, crofton_fit.residual
        ),
    );
    let sin3_fit =
        uniqueness_experiment(&[2, 3, 4, 5], 0.08, &AngleWeight::sin_cubed(), &config).unwrap();
    gate.check(
        "4. uniqueness: sin^3 weight misfits",
        sin3_fit.residual >= 10.0 * crofton_fit.residual,
        format!(
            "sin^3 residual {:.2e} vs deficit residual {:.2e}",
            sin3_fit.residual, crofton_fit.residual
        ),
    );

    // 5: far-field means reproduce 2L and 8F, in both parametrizations
    let body = FourierSupport::perturbed(3, 0.1).unwrap();
    let two_l = 2.0 * body.metrics().perimeter;
    let est100 = circle_mean_estimates(&body, 100.0 * body.max_support(), 2048).unwrap();
    let est200 = circle_mean_estimates(&body, 200.0 * body.max_support(), 2048).unwrap();
    let e100 = (est100.double_perimeter_phi - two_l).abs() / two_l;
    let e200 = (est200.double_perimeter_phi - two_l).abs() / two_l;
    gate.check(
        "5. R * mean w -> 2L, error decreasing",
        e100 <= 1e-2 && e200 < e100,
        format!("rel err {e100:.2e} at R=100 max p, {e200:.2e} at 200 max p"),
    );
    let symmetric = FourierSupport::new(1.0, &[(2, 0.1, 0.0)]).unwrap();
    let eight_f = 8.0 * symmetric.metrics().area;
    let est = circle_mean_estimates(&symmetric, 200.0 * symmetric.max_support(), 2048).unwrap();
    let rel = (est.eight_area_phi - eight_f).abs() / eight_f;
    gate.check(
        "5. R^2 * mean(w^2 - w_phi^2) -> 8F",
        rel <= 1e-2,
        format!("{:.6} vs {eight_f:.6}, rel {rel:.2e}", est.eight_area_phi),
    );
    // the two parametrizations measure different finite-R quantities
    // (d theta = (1 - p'/sqrt(R^2-p^2)) d phi) but share every limit
    let theta100 = (est100.double_perimeter_theta - two_l).abs() / two_l;
    let theta200 = (est200.double_perimeter_theta - two_l).abs() / two_l;
    let gap100 = (est100.double_perimeter_phi - est100.double_perimeter_theta).abs() / two_l;
    let gap200 = (est200.double_perimeter_phi - est200.double_perimeter_theta).abs() / two_l;
    gate.check(
        "5. phi- and theta-integrals agree in the limit",
        theta100 <= 1e-2 && theta200 < theta100 && gap200 < gap100,
        format!(
            "theta err {theta100:.2e} -> {theta200:.2e}, phi-theta gap {gap100:.2e} -> {gap200:.2e}"
        ),
    );

    // 6: shrinking-angle limits of the curve family
    let cw = FourierSupport::new(1.0, &[(3, 0.05, 0.0)]).unwrap();
    let deficits: Vec<f64> = [0.2, 0.1, 0.05]
        .iter()
        .map(|&alpha| {
            let c = curve(&cw, alpha, 1024).unwrap();
            (c.length * c.length / (4.0 * PI * c.area) - 1.0).abs()
        })
        .collect();
    let cw_limits = limits(&cw).unwrap();
    gate.check(
        "6. constant width: ratio -> 1",
        deficits[1] < deficits[0]
            && deficits[2] < deficits[1]
            && (cw_limits.isoperimetric_ratio - 1.0).abs() <= 1e-10,
        format!(
            "curve deficits {:.2e} > {:.2e} > {:.2e}; closed-form ratio - 1 = {:.2e}",
            deficits[0],
            deficits[1],
            deficits[2],
            (cw_limits.isoperimetric_ratio - 1.0).abs()
        ),
    );
    let oval_limits = limits(&symmetric).unwrap();
    let empirical_ratio = oval_limits.empirical_length_limit.powi(2)
        / (4.0 * PI * oval_limits.empirical_area_limit);
    let gap = (oval_limits.isoperimetric_ratio - empirical_ratio).abs();
    gate.check(
        "6. oval: ratio > 1, matches extrapolation",
        oval_limits.isoperimetric_ratio > 1.0 && gap <= 1e-2,
        format!(
            "closed form {:.6}, extrapolated {empirical_ratio:.6}, gap {gap:.2e}",
            oval_limits.isoperimetric_ratio
        ),
    );

    // 7: the constructed quarter-angle circle
    let quarter = construct_quarter(21.5, 2.5, 1.0).unwrap();
    let radius_err = (quarter.fit.radius - 43.0_f64.sqrt()).abs();
    gate.check(
        "7. quarter-angle circle detected",
        quarter.fit.deviation <= 1e-6 && radius_err <= 1e-3,
        format!(
            "deviation {:.2e} (tol 1e-6), R = {:.4} vs sqrt(43) = {:.4}",
            quarter.fit.deviation,
            quarter.fit.radius,
            43.0_f64.sqrt()
        ),
    );

    // 8: the inequalities and identities the circle forces
    let ids = perimeter_identity(&quarter.body, 1, 2).unwrap();
    let pp1 = pp1_integral(&quarter.body, PI / 2.0);
    let pp1_rel = (pp1.closed_form - pp1.quadrature).abs() / pp1.closed_form.abs();
    gate.check(
        "8. area and perimeter bounds + identities",
        ids.area <= 21.5 * PI
            && ids.perimeter <= ids.perimeter_bound
            && (ids.perimeter_bound - PI * 86.0_f64.sqrt()).abs() <= 1e-3
            && ids.residual <= 1e-4
            && pp1_rel <= 1e-10,
        format!(
            "F = {:.4} <= {:.4}, L = {:.4} <= {:.4}, identity residual {:.2e}, \
             correlation residual {pp1_rel:.2e}",
            ids.area,
            21.5 * PI,
            ids.perimeter,
            ids.perimeter_bound,
            ids.residual
        ),
    );

    // 9: no random constant-width body comes close to an isotopic circle
    let mut rng = ChaCha8Rng::seed_from_u64(0xd15c);
    let mut worst_margin = f64::INFINITY;
    let mut any_counterexample = false;
    for _ in 0..10 {
        let t3 = rng.gen_range(0.0..2.0 * PI);
        let r3 = rng.gen_range(0.03..0.06);
        let t5 = rng.gen_range(0.0..2.0 * PI);
        let r5 = rng.gen_range(0.002..0.01);
        let body = FourierSupport::new(
            1.0,
            &[
                (3, r3 * t3.cos(), r3 * t3.sin()),
                (5, r5 * t5.cos(), r5 * t5.sin()),
            ],
        )
        .unwrap();
        let report = constant_width_disc_test(&body).unwrap();
        worst_margin = worst_margin.min(report.min_deviation / report.noise_floor);
        any_counterexample |= report.counterexample;
    }
    gate.check(
        "9. constant width never fits a circle",
        !any_counterexample && worst_margin > 10.0,
        format!("worst deviation/floor ratio {worst_margin:.1} (needs > 10)"),
    );

    // 10: the solver and formula agreements behind everything above
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    let mut max_gap = 0.0_f64;
    for _ in 0..100 {
        let k = rng.gen_range(2..=6usize);
        let bound = 0.45 / ((k * k - 1) as f64);
        let body = FourierSupport::new(
            1.0,
            &[
                (1, rng.gen_range(-0.1..0.1), rng.gen_range(-0.1..0.1)),
                (k, rng.gen_range(-bound..bound), rng.gen_range(-bound..bound)),
            ],
        )
        .unwrap();
        let r = body.max_support() * rng.gen_range(1.06..20.0);
        let phi = rng.gen_range(0.0..2.0 * PI);
        let on_circle = visual_angle_on_circle(&body, r, phi).unwrap();
        let at_point = visual_angle_point(&body, Point::polar(r, on_circle.theta)).unwrap();
        let polar = visual_angle_polar(&body, r, on_circle.theta).unwrap();
        max_gap = max_gap
            .max((at_point.w - on_circle.w).abs())
            .max((polar.w - on_circle.w).abs());
    }
    gate.check(
        "10. tangent vs fundamental-relation solvers",
        max_gap <= 1e-9,
        format!("max |w - w| over 100 seeded viewpoints: {max_gap:.2e}"),
    );

    let body = FourierSupport::perturbed(2, 0.15).unwrap();
    let mut monotone = true;
    for i in 0..20 {
        let r1 = body.max_support() * (1.05 + 0.5 * i as f64);
        let r2 = body.max_support() * (1.05 + 0.5 * (i + 1) as f64);
        let w1 = visual_angle_on_circle(&body, r1, 0.7).unwrap().w;
        let w2 = visual_angle_on_circle(&body, r2, 0.7).unwrap().w;
        monotone &= w2 < w1;
    }
    gate.check(
        "10. visual angle monotone in distance",
        monotone,
        "w strictly decreasing along a 20-step radius ladder".to_string(),
    );

    let mut hurwitz_err = 0.0_f64;
    for n in 2..=6u32 {
        for m in (1..n).step_by(2) {
            if gcd(m, n) != 1 {
                continue;
            }
            let alpha = PI - (m as f64 / n as f64) * PI;
            for mu in 1..=8usize {
                let sign = if mu % 2 == 0 { 1.0 } else { -1.0 };
                hurwitz_err = hurwitz_err
                    .max((hurwitz_g(mu * n as usize, alpha) - (1.0 + sign * alpha.cos())).abs());
            }
        }
    }
    gate.check(
        "10. Hurwitz reduction at rational angles",
        hurwitz_err <= 1e-12,
        format!("max |g - reduced form| = {hurwitz_err:.2e}"),
    );

    let mut deficit_err = 0.0_f64;
    for (_, body) in suite() {
        let closed = body.metrics().isoperimetric_deficit();
        let n = 4096;
        let h = 2.0 * PI / n as f64;
        let mut perimeter = 0.0;
        let mut area = 0.0;
        for i in 0..n {
            let [p, dp, _] = body.eval_all(i as f64 * h);
            perimeter += p * h;
            area += 0.5 * (p * p - dp * dp) * h;
        }
        let quad = perimeter * perimeter - 4.0 * PI * area;
        deficit_err = deficit_err.max((closed - quad).abs() / perimeter.powi(2));
    }
    gate.check(
        "10. deficit formula vs quadrature",
        deficit_err <= 1e-10,
        format!("max scaled gap {deficit_err:.2e}"),
    );

    // sanity cross-link: the detector agrees with the construction's claim
    let fit = detect_circle(&quarter.body, PI / 2.0, true).unwrap();
    gate.check(
        "7. center search confirms the origin fit",
        fit.deviation <= 1e-6 && fit.center[0].abs() < 1e-3 && fit.center[1].abs() < 1e-3,
        format!(
            "deviation {:.2e}, center ({:.1e}, {:.1e})",
            fit.deviation, fit.center[0], fit.center[1]
        ),
    );

    gate.finish();
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
