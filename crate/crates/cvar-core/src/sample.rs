use crate::error::CvarError;

/// A sample of loss values held in ascending order, with optional known
/// support bounds. Input type for every estimator and concentration bound
/// in this crate.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedSample {
    values: Vec<f64>,
    support_lo: Option<f64>,
    support_hi: Option<f64>,
}

impl SortedSample {
    /// Builds a sample from values in any order; sorts ascending and
    /// validates against the declared support.
    pub fn new(
        mut values: Vec<f64>,
        support_lo: Option<f64>,
        support_hi: Option<f64>,
    ) -> Result<Self, CvarError> {
        if values.is_empty() {
            return Err(CvarError::EmptySample);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(CvarError::UnsortedSample);
        }
        values.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
        Self::from_sorted(values, support_lo, support_hi)
    }

    /// Builds a sample from values already in ascending order.
    pub fn from_sorted(
        values: Vec<f64>,
        support_lo: Option<f64>,
        support_hi: Option<f64>,
    ) -> Result<Self, CvarError> {
        if values.is_empty() {
            return Err(CvarError::EmptySample);
        }
        if values.iter().any(|v| !v.is_finite()) || values.windows(2).any(|w| w[0] > w[1]) {
            return Err(CvarError::UnsortedSample);
        }
        let lo = support_lo.unwrap_or(f64::NEG_INFINITY);
        let hi = support_hi.unwrap_or(f64::INFINITY);
        if let Some(v) = values.iter().find(|v| **v < lo || **v > hi) {
            return Err(CvarError::SupportViolation { value: *v, lo, hi });
        }
        Ok(Self {
            values,
            support_lo,
            support_hi,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn support_lo(&self) -> Option<f64> {
        self.support_lo
    }

    pub fn support_hi(&self) -> Option<f64> {
        self.support_hi
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().expect("non-empty")
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

fn check_alpha(alpha: f64) -> Result<(), CvarError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(CvarError::InvalidAlpha(alpha));
    }
    Ok(())
}

/// Empirical CVaR at level `alpha` in order-statistic form:
///
/// ```text
/// Ĉ_α = Z_n − (1/α) Σ_{i=1}^{n−1} (Z_{i+1} − Z_i) (i/n − (1−α))⁺
/// ```
///
/// which equals the infimum form `inf_w { w + (1/(nα)) Σ (X_i − w)⁺ }`
/// evaluated on the empirical distribution. At `alpha = 1` this is the
/// sample mean.
pub fn empirical_cvar(sample: &SortedSample, alpha: f64) -> Result<f64, CvarError> {
    check_alpha(alpha)?;
    let z = sample.values();
    let n = z.len();
    let mut acc = 0.0;
    for i in 1..n {
        let coeff = (i as f64 / n as f64 - (1.0 - alpha)).max(0.0);
        if coeff > 0.0 {
            acc += (z[i] - z[i - 1]) * coeff;
        }
    }
    Ok(z[n - 1] - acc / alpha)
}

/// Empirical VaR at level `alpha`: the smallest sample value whose ECDF
/// value strictly exceeds 1−α.
pub fn empirical_var(sample: &SortedSample, alpha: f64) -> Result<f64, CvarError> {
    check_alpha(alpha)?;
    let z = sample.values();
    let n = z.len();
    // smallest i (1-based) with i/n > 1−α
    let mut idx = ((n as f64) * (1.0 - alpha)).floor() as usize + 1;
    if (idx as f64) / (n as f64) <= 1.0 - alpha {
        idx += 1; // guards the exact-boundary case under rounding
    }
    idx = idx.min(n);
    Ok(z[idx - 1])
}
