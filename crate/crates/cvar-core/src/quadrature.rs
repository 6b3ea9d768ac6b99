//! Composite-trapezoid quadrature of quantile integrals.

/// Default grid resolution for the oracle integrals.
pub const DEFAULT_GRID_POINTS: usize = 100_000;

/// `(1/α) ∫_{1−α}^{1} q(v) dv` by composite trapezoid on a uniform grid.
/// Deterministic; accuracy is set by the grid resolution and the
/// smoothness of the quantile function.
pub fn quantile_integral_cvar(quantile: impl Fn(f64) -> f64, alpha: f64, points: usize) -> f64 {
    debug_assert!(alpha > 0.0 && alpha <= 1.0);
    let n = points.max(2);
    let lo = 1.0 - alpha;
    let h = alpha / (n - 1) as f64;
    let mut acc = 0.5 * (quantile(lo) + quantile(1.0));
    for i in 1..n - 1 {
        acc += quantile(lo + h * i as f64);
    }
    acc * h / alpha
}

/// Cumulative trapezoid of `f` over `[lo, hi]` (plain mean value times
/// width), used for normalization checks.
pub fn trapezoid(f: impl Fn(f64) -> f64, lo: f64, hi: f64, points: usize) -> f64 {
    let n = points.max(2);
    let h = (hi - lo) / (n - 1) as f64;
    let mut acc = 0.5 * (f(lo) + f(hi));
    for i in 1..n - 1 {
        acc += f(lo + h * i as f64);
    }
    acc * h
}
