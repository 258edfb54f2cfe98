//! Shared numerical kernels: periodic trapezoid sums, Gauss-Legendre
//! quadrature, bracketed root finding, and small derivative-free searches.
//!
//! Everything here is deterministic: fixed evaluation order, no threading,
//! so repeated runs produce bit-identical results.

/// Integral over one period of a periodic function sampled at `n` uniform
/// nodes starting at 0. For smooth periodic integrands the uniform rule is
/// spectrally accurate, which is why all angular integrals in this crate
/// use it.
pub fn integrate_periodic<F: FnMut(f64) -> f64>(n: usize, period: f64, mut f: F) -> f64 {
    assert!(n > 0);
    let h = period / n as f64;
    let mut acc = 0.0;
    for i in 0..n {
        acc += f(i as f64 * h);
    }
    acc * h
}

/// Uniform sample of one period, `n` nodes starting at 0.
pub fn periodic_grid(n: usize, period: f64) -> Vec<f64> {
    (0..n).map(|i| i as f64 * period / n as f64).collect()
}

/// Trapezoid sum of already-sampled periodic values over one period.
pub fn trapezoid_periodic(values: &[f64], period: f64) -> f64 {
    let n = values.len();
    assert!(n > 0);
    values.iter().sum::<f64>() * period / n as f64
}

/// Gauss-Legendre rule on [-1, 1], mapped to arbitrary intervals on use.
///
/// Nodes are Newton-refined roots of the Legendre polynomial; for the orders
/// used here (<= 64) they match published tables to machine precision.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    /// nodes on the reference interval [-1, 1]
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 2, "Gauss-Legendre order must be at least 2");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            // standard asymptotic initial guess for the i-th largest root
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..64 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[n - 1 - i] = x;
            nodes[i] = -x;
            weights[n - 1 - i] = w;
            weights[i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Integral of `f` on [a, b] with a single panel.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }

    /// Integral of `f` on [a, b] split into `panels` equal panels.
    pub fn integrate_composite<F: FnMut(f64) -> f64>(
        &self,
        a: f64,
        b: f64,
        panels: usize,
        mut f: F,
    ) -> f64 {
        assert!(panels > 0);
        let h = (b - a) / panels as f64;
        let mut acc = 0.0;
        for i in 0..panels {
            acc += self.integrate(a + i as f64 * h, a + (i + 1) as f64 * h, &mut f);
        }
        acc
    }
}

/// P_n(x) and its derivative via the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let pk = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = pk;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Root of `f` inside a sign-changing bracket [a, b], refined to `xtol`.
///
/// Secant steps with the Illinois anti-stall correction, falling back to
/// bisection whenever the proposal hugs an endpoint. Returns `None` when the
/// bracket does not actually change sign.
pub fn solve_bracketed<F: FnMut(f64) -> f64>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    xtol: f64,
) -> Option<f64> {
    let mut fa = f(a);
    if fa == 0.0 {
        return Some(a);
    }
    let mut fb = f(b);
    if fb == 0.0 {
        return Some(b);
    }
    if (fa > 0.0) == (fb > 0.0) {
        return None;
    }
    let mut last_side = 0i8;
    for _ in 0..256 {
        if (b - a).abs() <= xtol {
            break;
        }
        let span = b - a;
        let mut x = if fb != fa {
            (a * fb - b * fa) / (fb - fa)
        } else {
            a + 0.5 * span
        };
        if !x.is_finite() || (x - a) / span < 0.01 || (b - x) / span < 0.01 {
            x = a + 0.5 * span;
        }
        let fx = f(x);
        if fx == 0.0 {
            return Some(x);
        }
        if (fx > 0.0) == (fa > 0.0) {
            a = x;
            fa = fx;
            if last_side == -1 {
                fb *= 0.5;
            }
            last_side = -1;
        } else {
            b = x;
            fb = fx;
            if last_side == 1 {
                fa *= 0.5;
            }
            last_side = 1;
        }
    }
    Some(0.5 * (a + b))
}

/// Maximum of a unimodal function on [a, b] by golden-section search.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > xtol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Polynomial extrapolation through `points` evaluated at `x` (Lagrange form).
pub fn lagrange_extrapolate(points: &[(f64, f64)], x: f64) -> f64 {
    let mut acc = 0.0;
    for (i, &(xi, yi)) in points.iter().enumerate() {
        let mut l = 1.0;
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i != j {
                l *= (x - xj) / (xi - xj);
            }
        }
        acc += yi * l;
    }
    acc
}

/// Symmetric difference quotient with step `h`.
pub fn central_diff<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Derivative-free 2-D minimizer (Nelder-Mead with a 3-vertex simplex).
///
/// Stops when the simplex diameter falls below `xtol` or after `max_iter`
/// reflections. Returns the best vertex and its value.
pub fn nelder_mead_2d<F: FnMut(f64, f64) -> f64>(
    mut f: F,
    start: [f64; 2],
    step: f64,
    xtol: f64,
    max_iter: usize,
) -> ([f64; 2], f64) {
    let mut v = [
        start,
        [start[0] + step, start[1]],
        [start[0], start[1] + step],
    ];
    let mut fv = [f(v[0][0], v[0][1]), f(v[1][0], v[1][1]), f(v[2][0], v[2][1])];
    for _ in 0..max_iter {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&i, &j| fv[i].partial_cmp(&fv[j]).unwrap());
        let (best, mid, worst) = (idx[0], idx[1], idx[2]);
        let diam = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| (v[i][0] - v[j][0]).hypot(v[i][1] - v[j][1]))
            .fold(0.0f64, f64::max);
        if diam < xtol {
            break;
        }
        let cen = [
            0.5 * (v[best][0] + v[mid][0]),
            0.5 * (v[best][1] + v[mid][1]),
        ];
        let refl = [2.0 * cen[0] - v[worst][0], 2.0 * cen[1] - v[worst][1]];
        let fr = f(refl[0], refl[1]);
        if fr < fv[best] {
            let exp = [3.0 * cen[0] - 2.0 * v[worst][0], 3.0 * cen[1] - 2.0 * v[worst][1]];
            let fe = f(exp[0], exp[1]);
            if fe < fr {
                v[worst] = exp;
                fv[worst] = fe;
            } else {
                v[worst] = refl;
                fv[worst] = fr;
            }
        } else if fr < fv[mid] {
            v[worst] = refl;
            fv[worst] = fr;
        } else {
            let con = [
                0.5 * (cen[0] + v[worst][0]),
                0.5 * (cen[1] + v[worst][1]),
            ];
            let fc = f(con[0], con[1]);
            if fc < fv[worst] {
                v[worst] = con;
                fv[worst] = fc;
            } else {
                for i in 0..3 {
                    if i != best {
                        v[i] = [
                            0.5 * (v[i][0] + v[best][0]),
                            0.5 * (v[i][1] + v[best][1]),
                        ];
                        fv[i] = f(v[i][0], v[i][1]);
                    }
                }
            }
        }
    }
    let mut best = 0;
    for i in 1..3 {
        if fv[i] < fv[best] {
            best = i;
        }
    }
    (v[best], fv[best])
}
