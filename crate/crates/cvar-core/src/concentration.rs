use crate::error::CvarError;
use crate::sample::{empirical_cvar, SortedSample};

/// Risk level and confidence parameter shared by the concentration bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiskParams {
    pub alpha: f64,
    pub delta: f64,
}

impl RiskParams {
    pub fn new(alpha: f64, delta: f64) -> Result<Self, CvarError> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(CvarError::InvalidAlpha(alpha));
        }
        if !(delta > 0.0 && delta <= 0.5) {
            return Err(CvarError::InvalidDelta(delta));
        }
        Ok(Self { alpha, delta })
    }
}

/// One-sided DKW radius `√(ln(1/δ) / 2n)`.
pub fn dkw_radius(delta: f64, n: usize) -> f64 {
    ((1.0 / delta).ln() / (2.0 * n as f64)).sqrt()
}

/// Order-statistic upper confidence bound on CVaR_α: with probability at
/// least 1−δ,
///
/// ```text
/// CVaR_α(X) ≤ Z_{n+1} − (1/α) Σ_{i=1}^{n} (Z_{i+1} − Z_i) (i/n − √(ln(1/δ)/2n) − (1−α))⁺
/// ```
///
/// where Z_{n+1} = b is the declared upper support.
pub fn thomas_upper_bound(sample: &SortedSample, params: RiskParams) -> Result<f64, CvarError> {
    let b = sample.support_hi().ok_or(CvarError::MissingSupport {
        bound: "order-statistic upper",
        side: "upper",
    })?;
    let z = sample.values();
    let n = z.len();
    let shift = dkw_radius(params.delta, n);
    let mut acc = 0.0;
    for i in 1..=n {
        let next = if i == n { b } else { z[i] };
        let coeff = (i as f64 / n as f64 - shift - (1.0 - params.alpha)).max(0.0);
        acc += (next - z[i - 1]) * coeff;
    }
    Ok(b - acc / params.alpha)
}

/// Order-statistic lower confidence bound on CVaR_α: with probability at
/// least 1−δ,
///
/// ```text
/// CVaR_α(X) ≥ Z_n − (1/α) Σ_{i=0}^{n−1} (Z_{i+1} − Z_i) (min{1, i/n + √(ln(1/δ)/2n)} − (1−α))⁺
/// ```
///
/// where Z_0 = a is the declared lower support.
pub fn thomas_lower_bound(sample: &SortedSample, params: RiskParams) -> Result<f64, CvarError> {
    let a = sample.support_lo().ok_or(CvarError::MissingSupport {
        bound: "order-statistic lower",
        side: "lower",
    })?;
    let z = sample.values();
    let n = z.len();
    let shift = dkw_radius(params.delta, n);
    let mut acc = 0.0;
    for i in 0..n {
        let prev = if i == 0 { a } else { z[i - 1] };
        let coeff = ((i as f64 / n as f64 + shift).min(1.0) - (1.0 - params.alpha)).max(0.0);
        acc += (z[i] - prev) * coeff;
    }
    Ok(z[n - 1] - acc / params.alpha)
}

/// Two-sided interval around the empirical CVaR built from support-range
/// deviation radii; each side holds with probability at least 1−δ.
/// Requires both support bounds and (for the stated guarantee) a
/// continuous distribution.
pub fn brown_bounds(sample: &SortedSample, params: RiskParams) -> Result<(f64, f64), CvarError> {
    let a = sample.support_lo().ok_or(CvarError::MissingSupport {
        bound: "interval",
        side: "lower",
    })?;
    let b = sample.support_hi().ok_or(CvarError::MissingSupport {
        bound: "interval",
        side: "upper",
    })?;
    let n = sample.len() as f64;
    let center = empirical_cvar(sample, params.alpha)?;
    let up = (b - a) * (5.0 * (3.0 / params.delta).ln() / (params.alpha * n)).sqrt();
    let down = (b - a) / params.alpha * ((1.0 / params.delta).ln() / (2.0 * n)).sqrt();
    Ok((center - down, center + up))
}

/// ECDF concentration bounds on CVaR_α expressed directly through the
/// empirical CVaR, with ε = √(ln(1/δ)/2n):
///
/// - upper: `(1−ε/α) Ĉ_{α−ε} + (ε/α) b` when α > ε, else `b`;
/// - lower: `(1+ε/α) Ĉ_{α+ε} − (ε/α) Ĉ_ε` when α+ε < 1,
///   else `(1/α) [(α+ε−1) a + Ê[X] − ε Ĉ_ε]`.
///
/// Each side holds with probability greater than 1−δ. A support bound is
/// required only by the branch that uses it.
pub fn ecdf_concentration_bounds(
    sample: &SortedSample,
    params: RiskParams,
) -> Result<(f64, f64), CvarError> {
    let alpha = params.alpha;
    let n = sample.len();
    // a radius past 1 carries no information; clamping keeps the CVaR
    // levels below valid and the vacuous limits equal to the supports
    let eps = dkw_radius(params.delta, n).min(1.0);

    let upper = {
        let b = sample.support_hi().ok_or(CvarError::MissingSupport {
            bound: "ecdf upper",
            side: "upper",
        })?;
        if alpha > eps {
            (1.0 - eps / alpha) * empirical_cvar(sample, alpha - eps)? + (eps / alpha) * b
        } else {
            b
        }
    };

    let lower = if alpha + eps < 1.0 {
        (1.0 + eps / alpha) * empirical_cvar(sample, alpha + eps)?
            - (eps / alpha) * empirical_cvar(sample, eps)?
    } else {
        let a = sample.support_lo().ok_or(CvarError::MissingSupport {
            bound: "ecdf lower",
            side: "lower",
        })?;
        ((alpha + eps - 1.0) * a + sample.mean() - eps * empirical_cvar(sample, eps)?) / alpha
    };

    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(alpha: f64, delta: f64) -> RiskParams {
        RiskParams::new(alpha, delta).unwrap()
    }

    #[test]
    fn constant_sample_at_support_edges() {
        let hi = SortedSample::new(vec![2.0; 8], None, Some(2.0)).unwrap();
        assert_eq!(
            thomas_upper_bound(&hi, params(0.3, 0.05)).unwrap(),
            2.0,
            "all mass at upper support"
        );
        let lo = SortedSample::new(vec![-1.0; 8], Some(-1.0), None).unwrap();
        assert_eq!(thomas_lower_bound(&lo, params(0.3, 0.05)).unwrap(), -1.0);
    }

    #[test]
    fn missing_support_is_an_error() {
        let s = SortedSample::new(vec![0.1, 0.9], Some(0.0), None).unwrap();
        assert!(thomas_upper_bound(&s, params(0.5, 0.1)).is_err());
        assert!(brown_bounds(&s, params(0.5, 0.1)).is_err());
        assert!(thomas_lower_bound(&s, params(0.5, 0.1)).is_ok());
    }

    #[test]
    fn upper_gap_shrinks_with_n() {
        // replicate a fixed base sample; the gap to the empirical CVaR
        // shrinks like the DKW radius
        let base: Vec<f64> = (0..10).map(|i| i as f64 / 10.0).collect();
        let p = params(0.25, 0.05);
        let mut gaps = Vec::new();
        for reps in [10, 100, 1000] {
            let mut v = Vec::new();
            for _ in 0..reps {
                v.extend_from_slice(&base);
            }
            let s = SortedSample::new(v, Some(0.0), Some(1.0)).unwrap();
            let emp = empirical_cvar(&s, p.alpha).unwrap();
            gaps.push(thomas_upper_bound(&s, p).unwrap() - emp);
        }
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2]);
        assert!(gaps[2] > 0.0);
    }

    #[test]
    fn brown_radii_scale_inverse_sqrt_n() {
        let p = params(0.2, 0.05);
        let v100: Vec<f64> = (0..100).map(|i| i as f64 / 100.0).collect();
        let v400: Vec<f64> = (0..400).map(|i| (i / 4) as f64 / 100.0).collect();
        let s100 = SortedSample::new(v100, Some(0.0), Some(1.0)).unwrap();
        let s400 = SortedSample::new(v400, Some(0.0), Some(1.0)).unwrap();
        let (lo100, hi100) = brown_bounds(&s100, p).unwrap();
        let (lo400, hi400) = brown_bounds(&s400, p).unwrap();
        let c100 = empirical_cvar(&s100, p.alpha).unwrap();
        let c400 = empirical_cvar(&s400, p.alpha).unwrap();
        assert!(((hi400 - c400) / (hi100 - c100) - 0.5).abs() < 1e-12);
        assert!(((c400 - lo400) / (c100 - lo100) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn degenerate_range_collapses_interval() {
        let s = SortedSample::new(vec![3.0; 5], Some(3.0), Some(3.0)).unwrap();
        let (lo, hi) = brown_bounds(&s, params(0.4, 0.1)).unwrap();
        assert_eq!(lo, 3.0);
        assert_eq!(hi, 3.0);
    }

    #[test]
    fn ordering_lower_cvar_upper() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = params(0.2, 0.1);
        for _ in 0..50 {
            let values: Vec<f64> = (0..80).map(|_| rng.random_range(0.0..1.0)).collect();
            let s = SortedSample::new(values, Some(0.0), Some(1.0)).unwrap();
            let emp = empirical_cvar(&s, p.alpha).unwrap();
            let up = thomas_upper_bound(&s, p).unwrap();
            let lo = thomas_lower_bound(&s, p).unwrap();
            assert!(lo <= emp + 1e-12 && emp <= up + 1e-12);
        }
    }

    #[test]
    fn ecdf_bounds_coincide_with_order_statistic_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let n = rng.random_range(5..200);
            let values: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..3.0)).collect();
            let s = SortedSample::new(values, Some(-2.0), Some(3.0)).unwrap();
            for alpha in [0.05, 0.25, 0.7] {
                for delta in [0.05, 0.4] {
                    let p = params(alpha, delta);
                    let (lo, hi) = ecdf_concentration_bounds(&s, p).unwrap();
                    let tu = thomas_upper_bound(&s, p).unwrap();
                    let tl = thomas_lower_bound(&s, p).unwrap();
                    assert!((hi - tu).abs() < 1e-10, "upper n={n} α={alpha} δ={delta}");
                    assert!((lo - tl).abs() < 1e-10, "lower n={n} α={alpha} δ={delta}");
                }
            }
        }
    }

    #[test]
    fn forced_branch_returns_support() {
        // α ≤ ε forces the upper bound to the support bound
        let s = SortedSample::new(vec![0.2, 0.4], Some(0.0), Some(1.0)).unwrap();
        let p = params(0.05, 0.5);
        let (_, hi) = ecdf_concentration_bounds(&s, p).unwrap();
        assert_eq!(hi, 1.0);
    }

    #[test]
    fn bounds_converge_to_empirical_cvar() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let p = params(0.3, 0.05);
        let mut widths = Vec::new();
        for n in [100usize, 1000, 10000] {
            let values: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
            let s = SortedSample::new(values, Some(0.0), Some(1.0)).unwrap();
            let (lo, hi) = ecdf_concentration_bounds(&s, p).unwrap();
            let emp = empirical_cvar(&s, p.alpha).unwrap();
            assert!(lo <= emp && emp <= hi);
            widths.push(hi - lo);
        }
        assert!(widths[0] > widths[1] && widths[1] > widths[2]);
        assert!(widths[2] < 0.1);
    }
}
