//! Planar compact convex bodies represented by truncated Fourier support
//! functions
//!
//! ```text
//! p(phi) = a0 + sum_k (a_k cos k phi + b_k sin k phi),   k = 1..=k_max
//! ```
//!
//! Construction validates positivity (p > 0, so the origin is interior) and
//! convexity (p + p'' > 0) on a dense grid; all other operations may assume
//! a valid body. Angles are radians throughout.

use crate::error::{Error, Result};
use crate::numeric;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Default truncation order for Fourier projection of sampled data.
pub const DEFAULT_PROJECTION_KMAX: usize = 16;

/// Validation margin: p and p + p'' must stay above `MARGIN_FACTOR * a0`.
pub const MARGIN_FACTOR: f64 = 1e-9;

/// Support function of a planar compact convex set, truncated Fourier form.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSupport {
    a0: f64,
    /// cosine coefficients a_k, index 0 holds k = 1
    cos_coeffs: Vec<f64>,
    /// sine coefficients b_k, index 0 holds k = 1
    sin_coeffs: Vec<f64>,
    /// cached max_phi p(phi); equals the farthest boundary distance
    max_p: f64,
}

/// Perimeter and area of a body. `perimeter^2 >= 4 pi area` always holds,
/// with equality only for discs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BodyMetrics {
    pub perimeter: f64,
    pub area: f64,
}

impl BodyMetrics {
    /// Isoperimetric deficit `L^2 - 4 pi F`; zero exactly for discs.
    pub fn isoperimetric_deficit(&self) -> f64 {
        self.perimeter * self.perimeter - 4.0 * PI * self.area
    }
}

/// Result of the constant-width test: the width function is constant iff
/// every even harmonic with k >= 2 vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantWidthCheck {
    pub is_constant_width: bool,
    /// largest amplitude sqrt(a_k^2 + b_k^2) over even k >= 2
    pub max_even_amplitude: f64,
}

/// Named body families used by tests, presets, and the CLI.
#[derive(Debug, Clone, PartialEq)]
pub enum BodyKind {
    /// Disc of the given radius centered at the origin.
    Disc { radius: f64 },
    /// p = 1 + t cos(m phi); convex iff 0 < t < 1/(m^2 - 1).
    Perturbed { m: usize, t: f64 },
    /// Constant-width body: mean a0 plus odd harmonics only.
    ConstantWidth {
        a0: f64,
        harmonics: Vec<(usize, f64, f64)>,
    },
    /// p = sqrt(c0 + c2 cos 2phi + c6 cos 6phi), projected onto the
    /// truncated basis. Needs c0 > |c2| + |c6|.
    QuarterSymmetric { c0: f64, c2: f64, c6: f64 },
}

/// Build one of the named body families.
pub fn generate(kind: &BodyKind) -> Result<FourierSupport> {
    match kind {
        BodyKind::Disc { radius } => FourierSupport::disc(*radius),
        BodyKind::Perturbed { m, t } => FourierSupport::perturbed(*m, *t),
        BodyKind::ConstantWidth { a0, harmonics } => {
            FourierSupport::constant_width(*a0, harmonics)
        }
        BodyKind::QuarterSymmetric { c0, c2, c6 } => {
            FourierSupport::quarter_symmetric(*c0, *c2, *c6).map(|(body, _)| body)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct BodyFile {
    a0: f64,
    harmonics: Vec<HarmonicFile>,
}

#[derive(Serialize, Deserialize)]
struct HarmonicFile {
    k: usize,
    a: f64,
    b: f64,
}

impl FourierSupport {
    /// Build and validate a body from its mean `a0` and sparse harmonics
    /// `(k, a_k, b_k)`.
    pub fn new(a0: f64, harmonics: &[(usize, f64, f64)]) -> Result<Self> {
        if !a0.is_finite() {
            return Err(Error::InvalidBody("a0 must be finite".into()));
        }
        let mut k_max = 0;
        for &(k, a, b) in harmonics {
            if k == 0 {
                return Err(Error::InvalidBody(
                    "harmonic index k = 0 is not allowed; use a0".into(),
                ));
            }
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::InvalidBody("coefficients must be finite".into()));
            }
            k_max = k_max.max(k);
        }
        let mut cos_coeffs = vec![0.0; k_max];
        let mut sin_coeffs = vec![0.0; k_max];
        let mut seen = vec![false; k_max + 1];
        for &(k, a, b) in harmonics {
            if seen[k] {
                return Err(Error::InvalidBody(format!("duplicate harmonic k = {k}")));
            }
            seen[k] = true;
            cos_coeffs[k - 1] = a;
            sin_coeffs[k - 1] = b;
        }
        Self::from_dense(a0, cos_coeffs, sin_coeffs)
    }

    /// Build and validate from dense coefficient vectors (index 0 is k = 1).
    pub fn from_dense(a0: f64, mut cos_coeffs: Vec<f64>, mut sin_coeffs: Vec<f64>) -> Result<Self> {
        assert_eq!(cos_coeffs.len(), sin_coeffs.len());
        while let (Some(&a), Some(&b)) = (cos_coeffs.last(), sin_coeffs.last()) {
            if a == 0.0 && b == 0.0 {
                cos_coeffs.pop();
                sin_coeffs.pop();
            } else {
                break;
            }
        }
        let mut body = FourierSupport {
            a0,
            cos_coeffs,
            sin_coeffs,
            max_p: 0.0,
        };
        body.validate()?;
        body.max_p = body.compute_max_support();
        Ok(body)
    }

    /// Disc of radius r centered at the origin.
    pub fn disc(radius: f64) -> Result<Self> {
        Self::new(radius, &[])
    }

    /// One-harmonic perturbation p = 1 + t cos(m phi).
    pub fn perturbed(m: usize, t: f64) -> Result<Self> {
        Self::new(1.0, &[(m, t, 0.0)])
    }

    /// Constant-width body: mean plus odd harmonics.
    pub fn constant_width(a0: f64, harmonics: &[(usize, f64, f64)]) -> Result<Self> {
        for &(k, _, _) in harmonics {
            if k % 2 == 0 {
                return Err(Error::InvalidBody(format!(
                    "constant-width bodies only admit odd harmonics, got k = {k}"
                )));
            }
        }
        Self::new(a0, harmonics)
    }

    /// Projection of p = sqrt(c0 + c2 cos 2phi + c6 cos 6phi) onto the
    /// truncated basis. Returns the body and the projection sup-error.
    ///
    /// p^2 + p(. + pi/2)^2 = 2 c0 holds identically for this family, which
    /// is what makes its quarter-turn isotopic set a circle.
    pub fn quarter_symmetric(c0: f64, c2: f64, c6: f64) -> Result<(Self, f64)> {
        if !(c0 > c2.abs() + c6.abs()) {
            return Err(Error::InvalidBody(
                "need c0 > |c2| + |c6| so the radicand stays positive".into(),
            ));
        }
        let g = |phi: f64| (c0 + c2 * (2.0 * phi).cos() + c6 * (6.0 * phi).cos()).sqrt();
        let n = 2048;
        let samples: Vec<f64> = numeric::periodic_grid(n, 2.0 * PI)
            .into_iter()
            .map(g)
            .collect();
        // loose cap: convexity is the real gate; callers read the returned
        // sup-error when they need the actual figure
        let tol = 1e-3 * c0.sqrt();
        Self::from_samples(&samples, DEFAULT_PROJECTION_KMAX, tol)
    }

    /// Least-squares Fourier projection of support samples on a uniform
    /// grid over one period. Needs `samples.len() >= 4 * k_max`. Returns the
    /// validated body and the max deviation |g - p| on the sample grid.
    pub fn from_samples(samples: &[f64], k_max: usize, tol: f64) -> Result<(Self, f64)> {
        let n = samples.len();
        if n < 4 * k_max.max(1) {
            return Err(Error::InvalidBody(format!(
                "need at least 4 * k_max = {} samples, got {n}",
                4 * k_max.max(1)
            )));
        }
        let nf = n as f64;
        let a0 = samples.iter().sum::<f64>() / nf;
        let mut cos_coeffs = vec![0.0; k_max];
        let mut sin_coeffs = vec![0.0; k_max];
        for k in 1..=k_max {
            let mut ca = 0.0;
            let mut sa = 0.0;
            for (j, &g) in samples.iter().enumerate() {
                let ang = 2.0 * PI * (k * j) as f64 / nf;
                ca += g * ang.cos();
                sa += g * ang.sin();
            }
            cos_coeffs[k - 1] = 2.0 * ca / nf;
            sin_coeffs[k - 1] = 2.0 * sa / nf;
        }
        let body = Self::from_dense(a0, cos_coeffs, sin_coeffs)?;
        let mut err = 0.0f64;
        for (j, &g) in samples.iter().enumerate() {
            let phi = 2.0 * PI * j as f64 / nf;
            err = err.max((g - body.p(phi)).abs());
        }
        if err > tol {
            return Err(Error::ProjectionError { error: err, tol });
        }
        Ok((body, err))
    }

    /// Parse the canonical JSON form
    /// `{"a0": 1.0, "harmonics": [{"k": 2, "a": 0.1, "b": 0.0}]}`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: BodyFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidBody(e.to_string()))?;
        let harmonics: Vec<(usize, f64, f64)> =
            file.harmonics.iter().map(|h| (h.k, h.a, h.b)).collect();
        Self::new(file.a0, &harmonics)
    }

    /// Serialize to the canonical JSON form, harmonics ordered by k and
    /// zero rows dropped.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_body_file()).expect("body serialization")
    }

    /// Body descriptor as a JSON value, for embedding in reports.
    pub fn descriptor(&self) -> serde_json::Value {
        serde_json::to_value(self.to_body_file()).expect("body serialization")
    }

    fn to_body_file(&self) -> BodyFile {
        let mut harmonics = Vec::new();
        for k in 1..=self.k_max() {
            let (a, b) = self.harmonic(k);
            if a != 0.0 || b != 0.0 {
                harmonics.push(HarmonicFile { k, a, b });
            }
        }
        BodyFile { a0: self.a0, harmonics }
    }

    fn validate(&self) -> Result<()> {
        if !(self.a0 > 0.0) {
            return Err(Error::PositivityViolation {
                min: self.a0,
                phi: 0.0,
            });
        }
        let n = (16 * self.k_max()).max(1024);
        let margin = MARGIN_FACTOR * self.a0;
        let mut min_p = f64::INFINITY;
        let mut min_p_phi = 0.0;
        let mut min_c = f64::INFINITY;
        let mut min_c_phi = 0.0;
        for i in 0..n {
            let phi = 2.0 * PI * i as f64 / n as f64;
            let [p, _, ddp] = self.eval_all(phi);
            if p < min_p {
                min_p = p;
                min_p_phi = phi;
            }
            let c = p + ddp;
            if c < min_c {
                min_c = c;
                min_c_phi = phi;
            }
        }
        if min_p <= margin {
            return Err(Error::PositivityViolation {
                min: min_p,
                phi: min_p_phi,
            });
        }
        if min_c <= margin {
            return Err(Error::ConvexityViolation {
                min: min_c,
                phi: min_c_phi,
            });
        }
        Ok(())
    }

    /// Mean value a0; the perimeter is 2 pi a0.
    pub fn a0(&self) -> f64 {
        self.a0
    }

    /// Largest harmonic index carried (trailing zero rows are trimmed).
    pub fn k_max(&self) -> usize {
        self.cos_coeffs.len()
    }

    /// Coefficients (a_k, b_k); zero for k beyond the truncation.
    pub fn harmonic(&self, k: usize) -> (f64, f64) {
        if k == 0 || k > self.k_max() {
            (0.0, 0.0)
        } else {
            (self.cos_coeffs[k - 1], self.sin_coeffs[k - 1])
        }
    }

    /// Amplitude sqrt(a_k^2 + b_k^2).
    pub fn amplitude(&self, k: usize) -> f64 {
        let (a, b) = self.harmonic(k);
        a.hypot(b)
    }

    /// p, p', p'' in one pass, sharing the angle recurrence.
    pub fn eval_all(&self, phi: f64) -> [f64; 3] {
        let (s1, c1) = phi.sin_cos();
        let mut ck = c1;
        let mut sk = s1;
        let mut p = self.a0;
        let mut dp = 0.0;
        let mut ddp = 0.0;
        for k in 1..=self.k_max() {
            let a = self.cos_coeffs[k - 1];
            let b = self.sin_coeffs[k - 1];
            let kf = k as f64;
            p += a * ck + b * sk;
            dp += kf * (b * ck - a * sk);
            ddp -= kf * kf * (a * ck + b * sk);
            let next_c = ck * c1 - sk * s1;
            let next_s = sk * c1 + ck * s1;
            ck = next_c;
            sk = next_s;
        }
        [p, dp, ddp]
    }

    /// Support value p(phi).
    pub fn p(&self, phi: f64) -> f64 {
        self.eval_all(phi)[0]
    }

    /// First derivative p'(phi).
    pub fn dp(&self, phi: f64) -> f64 {
        self.eval_all(phi)[1]
    }

    /// Second derivative p''(phi).
    pub fn ddp(&self, phi: f64) -> f64 {
        self.eval_all(phi)[2]
    }

    /// Derivative of the given order (0, 1, or 2).
    pub fn eval(&self, phi: f64, order: usize) -> f64 {
        assert!(order <= 2, "derivative order must be 0, 1, or 2");
        self.eval_all(phi)[order]
    }

    /// Width a(phi) = p(phi) + p(phi + pi): distance between the two
    /// parallel support lines with normal direction phi.
    pub fn width(&self, phi: f64) -> f64 {
        self.p(phi) + self.p(phi + PI)
    }

    /// Boundary point with outward normal direction phi.
    pub fn boundary_point(&self, phi: f64) -> [f64; 2] {
        let [p, dp, _] = self.eval_all(phi);
        let (s, c) = phi.sin_cos();
        [p * c - dp * s, p * s + dp * c]
    }

    /// Cached max over phi of p(phi). This also equals the distance from the
    /// origin to the farthest boundary point, so any circle with R > max_p
    /// strictly encloses the body.
    pub fn max_support(&self) -> f64 {
        self.max_p
    }

    fn compute_max_support(&self) -> f64 {
        let n = (16 * self.k_max()).max(1024);
        let mut best = f64::NEG_INFINITY;
        let mut best_phi = 0.0;
        for i in 0..n {
            let phi = 2.0 * PI * i as f64 / n as f64;
            let p = self.p(phi);
            if p > best {
                best = p;
                best_phi = phi;
            }
        }
        let h = 2.0 * PI / n as f64;
        let (_, refined) = numeric::golden_max(
            |phi| self.p(phi),
            best_phi - h,
            best_phi + h,
            1e-12,
        );
        refined.max(best)
    }

    /// Perimeter L = 2 pi a0 and area
    /// F = pi a0^2 + (pi/2) sum_k (1 - k^2)(a_k^2 + b_k^2).
    pub fn metrics(&self) -> BodyMetrics {
        let mut area = PI * self.a0 * self.a0;
        for k in 1..=self.k_max() {
            let (a, b) = self.harmonic(k);
            let kf = k as f64;
            area += 0.5 * PI * (1.0 - kf * kf) * (a * a + b * b);
        }
        BodyMetrics {
            perimeter: 2.0 * PI * self.a0,
            area,
        }
    }

    /// Constant width holds iff all even harmonics k >= 2 vanish
    /// (relative to `tol * a0`).
    pub fn is_constant_width(&self, tol: f64) -> ConstantWidthCheck {
        let mut max_even = 0.0f64;
        let mut k = 2;
        while k <= self.k_max() {
            max_even = max_even.max(self.amplitude(k));
            k += 2;
        }
        ConstantWidthCheck {
            is_constant_width: max_even <= tol * self.a0,
            max_even_amplitude: max_even,
        }
    }

    /// Coefficients of p1(phi) = p(phi + pi - delta), the rotated support
    /// that pairs with p in the tangency relations.
    pub fn rotate(&self, delta: f64) -> RotatedSupport {
        let k_max = self.k_max();
        let mut cos_coeffs = vec![0.0; k_max];
        let mut sin_coeffs = vec![0.0; k_max];
        for k in 1..=k_max {
            let (a, b) = self.harmonic(k);
            let (skd, ckd) = (k as f64 * delta).sin_cos();
            let sign = if k % 2 == 0 { -1.0 } else { 1.0 }; // (-1)^(k+1)
            cos_coeffs[k - 1] = sign * (-a * ckd + b * skd);
            sin_coeffs[k - 1] = sign * (-a * skd - b * ckd);
        }
        RotatedSupport {
            delta,
            inner: FourierSupport {
                a0: self.a0,
                cos_coeffs,
                sin_coeffs,
                max_p: self.max_p,
            },
        }
    }

    /// Support function of the same body translated by (dx, dy):
    /// p(phi) + dx cos phi + dy sin phi. Fails if the origin leaves the
    /// interior.
    pub fn translate(&self, dx: f64, dy: f64) -> Result<Self> {
        let k_max = self.k_max().max(1);
        let mut cos_coeffs = vec![0.0; k_max];
        let mut sin_coeffs = vec![0.0; k_max];
        for k in 1..=self.k_max() {
            let (a, b) = self.harmonic(k);
            cos_coeffs[k - 1] = a;
            sin_coeffs[k - 1] = b;
        }
        cos_coeffs[0] += dx;
        sin_coeffs[0] += dy;
        Self::from_dense(self.a0, cos_coeffs, sin_coeffs)
    }
}

/// Rotated support p1(phi) = p(phi + pi - delta) with its own explicit
/// coefficients `A_k = (-1)^(k+1) (-a_k cos k delta + b_k sin k delta)`,
/// `B_k = (-1)^(k+1) (-a_k sin k delta - b_k cos k delta)`.
///
/// Rotation preserves amplitudes: A_k^2 + B_k^2 = a_k^2 + b_k^2.
#[derive(Debug, Clone)]
pub struct RotatedSupport {
    delta: f64,
    inner: FourierSupport,
}

impl RotatedSupport {
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Coefficients (A_k, B_k).
    pub fn harmonic(&self, k: usize) -> (f64, f64) {
        self.inner.harmonic(k)
    }

    /// Evaluate p1(phi); equals p(phi + pi - delta) by construction.
    pub fn p(&self, phi: f64) -> f64 {
        self.inner.p(phi)
    }

    /// View the rotated coefficients as a support function in their own
    /// right (the same body rotated, so validity carries over).
    pub fn as_support(&self) -> &FourierSupport {
        &self.inner
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn disc_metrics_are_circle_metrics() {
        let disc = FourierSupport::disc(1.5).unwrap();
        let m = disc.metrics();
        assert_abs_diff_eq!(m.perimeter, 3.0 * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(m.area, 2.25 * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(m.isoperimetric_deficit(), 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(disc.max_support(), 1.5, epsilon = 1e-12);
    }

    #[test]
    fn perturbed_metrics_match_closed_form() {
        let body = FourierSupport::perturbed(3, 0.1).unwrap();
        let m = body.metrics();
        assert_abs_diff_eq!(m.perimeter, 2.0 * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(m.area, PI - 0.5 * PI * 8.0 * 0.01, epsilon = 1e-12);
        // deficit closed form: 2 pi^2 (k^2 - 1) c_k^2
        assert_relative_eq!(
            m.isoperimetric_deficit(),
            2.0 * PI * PI * 8.0 * 0.01,
            max_relative = 1e-12
        );
    }

    #[test]
    fn metrics_agree_with_direct_quadrature() {
        let body = FourierSupport::new(1.3, &[(1, 0.1, -0.05), (2, 0.08, 0.02), (5, 0.0, 0.01)])
            .unwrap();
        let m = body.metrics();
        let l = numeric::integrate_periodic(4096, 2.0 * PI, |phi| body.p(phi));
        let f = numeric::integrate_periodic(4096, 2.0 * PI, |phi| {
            let [p, dp, _] = body.eval_all(phi);
            0.5 * (p * p - dp * dp)
        });
        assert_relative_eq!(m.perimeter, l, max_relative = 1e-12);
        assert_relative_eq!(m.area, f, max_relative = 1e-12);
    }

    #[test]
    fn convexity_bound_for_single_harmonic_is_sharp() {
        assert!(FourierSupport::perturbed(2, 0.2).is_ok());
        let err = FourierSupport::perturbed(2, 0.5).unwrap_err();
        assert!(matches!(err, Error::ConvexityViolation { .. }), "{err}");
        // exactly at 1/(m^2-1) the margin rejects it too
        assert!(FourierSupport::perturbed(3, 1.0 / 8.0).is_err());
        assert!(FourierSupport::perturbed(3, 0.124).is_ok());
    }

    #[test]
    fn positivity_is_checked_before_convexity() {
        // k = 1 harmonics never affect p + p'', but large ones push the
        // origin outside the body
        let err = FourierSupport::new(1.0, &[(1, 1.2, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::PositivityViolation { .. }), "{err}");
        assert!(FourierSupport::new(1.0, &[(1, 0.9, 0.0)]).is_ok());
    }

    #[test]
    fn rotation_matches_shifted_evaluation_on_a_grid() {
        let body =
            FourierSupport::new(1.0, &[(2, 0.05, -0.03), (3, 0.02, 0.04), (5, 0.0, 0.01)]).unwrap();
        for &delta in &[0.0, 0.7, PI / 2.0, 2.9] {
            let rot = body.rotate(delta);
            for phi in numeric::periodic_grid(64, 2.0 * PI) {
                assert_abs_diff_eq!(rot.p(phi), body.p(phi + PI - delta), epsilon = 1e-12);
            }
            for k in 1..=body.k_max() {
                assert_abs_diff_eq!(
                    body.amplitude(k),
                    rot.as_support().amplitude(k),
                    epsilon = 1e-14
                );
            }
        }
    }

    #[test]
    fn half_turn_rotation_flips_odd_harmonics() {
        // p = 1 + 0.9 cos phi is a unit disc centered at (0.9, 0); its
        // antipodal support is 1 - 0.9 cos phi
        let body = FourierSupport::new(1.0, &[(1, 0.9, 0.0)]).unwrap();
        let rot = body.rotate(0.0);
        let (a1, b1) = rot.harmonic(1);
        assert_abs_diff_eq!(a1, -0.9, epsilon = 1e-14);
        assert_abs_diff_eq!(b1, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn derivatives_match_difference_quotients() {
        let body = FourierSupport::new(2.0, &[(2, 0.1, 0.2), (4, 0.02, -0.01)]).unwrap();
        for phi in numeric::periodic_grid(17, 2.0 * PI) {
            let [_, dp, ddp] = body.eval_all(phi);
            let fd1 = numeric::central_diff(|x| body.p(x), phi, 1e-6);
            let fd2 = numeric::central_diff(|x| body.dp(x), phi, 1e-6);
            assert_abs_diff_eq!(dp, fd1, epsilon = 1e-8);
            assert_abs_diff_eq!(ddp, fd2, epsilon = 1e-7);
        }
    }

    #[test]
    fn width_keeps_even_harmonics_only() {
        let body =
            FourierSupport::new(1.0, &[(2, 0.05, 0.01), (3, 0.03, 0.0), (4, 0.01, -0.02)]).unwrap();
        for phi in numeric::periodic_grid(32, 2.0 * PI) {
            let mut expected = 2.0 * body.a0();
            for k in (2..=body.k_max()).step_by(2) {
                let (a, b) = body.harmonic(k);
                expected += 2.0 * (a * (k as f64 * phi).cos() + b * (k as f64 * phi).sin());
            }
            assert_abs_diff_eq!(body.width(phi), expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn constant_width_detection() {
        let cw = FourierSupport::new(1.0, &[(3, 0.05, 0.0), (5, 0.0, 0.01)]).unwrap();
        let check = cw.is_constant_width(1e-12);
        assert!(check.is_constant_width);
        for phi in numeric::periodic_grid(16, 2.0 * PI) {
            assert_abs_diff_eq!(cw.width(phi), 2.0, epsilon = 1e-12);
        }
        let not_cw = FourierSupport::perturbed(2, 0.1).unwrap();
        let check = not_cw.is_constant_width(1e-12);
        assert!(!check.is_constant_width);
        assert_abs_diff_eq!(check.max_even_amplitude, 0.1, epsilon = 1e-14);
    }

    #[test]
    fn projection_recovers_trig_polynomial_exactly() {
        let body = FourierSupport::new(1.1, &[(2, 0.08, -0.02), (6, 0.002, 0.004)]).unwrap();
        let samples: Vec<f64> = numeric::periodic_grid(256, 2.0 * PI)
            .into_iter()
            .map(|phi| body.p(phi))
            .collect();
        let (proj, err) = FourierSupport::from_samples(&samples, 8, 1e-10).unwrap();
        assert!(err < 1e-12, "projection error {err}");
        for k in 1..=8 {
            let (a, b) = body.harmonic(k);
            let (pa, pb) = proj.harmonic(k);
            assert_abs_diff_eq!(a, pa, epsilon = 1e-12);
            assert_abs_diff_eq!(b, pb, epsilon = 1e-12);
        }
    }

    #[test]
    fn projection_needs_enough_samples() {
        let samples = vec![1.0; 32];
        let err = FourierSupport::from_samples(&samples, 16, 1e-6).unwrap_err();
        assert!(matches!(err, Error::InvalidBody(_)), "{err}");
    }

    #[test]
    fn quarter_symmetric_square_sum_is_constant() {
        let (body, err) = FourierSupport::quarter_symmetric(21.5, 2.5, 1.0).unwrap();
        assert!(err < 1e-4, "projection error {err}");
        // p^2 + p(. + pi/2)^2 = 2 c0, up to truncation
        for phi in numeric::periodic_grid(64, 2.0 * PI) {
            let s = body.p(phi).powi(2) + body.p(phi + PI / 2.0).powi(2);
            assert_abs_diff_eq!(s, 43.0, epsilon = 1e-3);
        }
        // degenerate radicand rejected
        assert!(FourierSupport::quarter_symmetric(1.0, 0.9, 0.2).is_err());
        // positive radicand but the c6 curvature overwhelms convexity
        let steep = FourierSupport::quarter_symmetric(1.0, 0.0, 0.9);
        assert!(
            matches!(steep, Err(Error::ConvexityViolation { .. })),
            "expected rejection, got {steep:?}"
        );
    }

    #[test]
    fn json_round_trip_preserves_coefficients() {
        let body = FourierSupport::new(1.0, &[(2, 0.1, 0.0), (5, -0.01, 0.02)]).unwrap();
        let text = body.to_json_string();
        let back = FourierSupport::from_json_str(&text).unwrap();
        assert_eq!(body, back);
        let err = FourierSupport::from_json_str("{\"a0\": bogus}").unwrap_err();
        assert!(matches!(err, Error::InvalidBody(_)));
    }

    #[test]
    fn translation_shifts_boundary_and_keeps_metrics() {
        let body = FourierSupport::new(1.0, &[(2, 0.1, 0.05)]).unwrap();
        let moved = body.translate(0.3, -0.2).unwrap();
        let (m0, m1) = (body.metrics(), moved.metrics());
        assert_abs_diff_eq!(m0.perimeter, m1.perimeter, epsilon = 1e-12);
        assert_abs_diff_eq!(m0.area, m1.area, epsilon = 1e-12);
        for phi in numeric::periodic_grid(16, 2.0 * PI) {
            let [x0, y0] = body.boundary_point(phi);
            let [x1, y1] = moved.boundary_point(phi);
            assert_abs_diff_eq!(x1 - x0, 0.3, epsilon = 1e-12);
            assert_abs_diff_eq!(y1 - y0, -0.2, epsilon = 1e-12);
        }
        // translating too far pushes the origin out of the body
        assert!(body.translate(2.0, 0.0).is_err());
    }

    #[test]
    fn generate_covers_named_families() {
        assert!(generate(&BodyKind::Disc { radius: 2.0 }).is_ok());
        assert!(generate(&BodyKind::Perturbed { m: 5, t: 0.03 }).is_ok());
        assert!(generate(&BodyKind::ConstantWidth {
            a0: 1.0,
            harmonics: vec![(3, 0.05, 0.0)],
        })
        .is_ok());
        assert!(generate(&BodyKind::ConstantWidth {
            a0: 1.0,
            harmonics: vec![(2, 0.05, 0.0)],
        })
        .is_err());
        assert!(generate(&BodyKind::QuarterSymmetric {
            c0: 21.5,
            c2: 2.5,
            c6: 1.0,
        })
        .is_ok());
    }

    #[test]
    fn max_support_sees_off_grid_peaks() {
        let body = FourierSupport::perturbed(2, 0.2).unwrap();
        assert_abs_diff_eq!(body.max_support(), 1.2, epsilon = 1e-10);
    }
}
