use crate::error::CvarError;

/// A right-continuous step CDF given by knots `(x, F(x))` with strictly
/// increasing x, non-decreasing F in [0,1], and final F equal to 1.
///
/// Carrier for empirical CDFs and for the envelope constructions that
/// sandwich an intractable distribution between computable ones.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteCdf {
    knots: Vec<(f64, f64)>,
}

impl DiscreteCdf {
    pub fn new(knots: Vec<(f64, f64)>) -> Result<Self, CvarError> {
        if knots.is_empty() {
            return Err(CvarError::InvalidCdf("no knots"));
        }
        if knots.iter().any(|(x, f)| !x.is_finite() || !f.is_finite()) {
            return Err(CvarError::InvalidCdf("non-finite knot"));
        }
        if knots.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(CvarError::InvalidCdf("knot x-values must strictly increase"));
        }
        if knots.iter().any(|(_, f)| *f < 0.0 || *f > 1.0) {
            return Err(CvarError::InvalidCdf("F values must lie in [0,1]"));
        }
        if knots.windows(2).any(|w| w[0].1 > w[1].1) {
            return Err(CvarError::InvalidCdf("F values must be non-decreasing"));
        }
        let last = knots.last().expect("non-empty").1;
        if (last - 1.0).abs() > 1e-12 {
            return Err(CvarError::InvalidCdf("final F must equal 1"));
        }
        Ok(Self { knots })
    }

    /// Builds the ECDF of a sample: atoms of mass 1/n at each value, with
    /// ties merged.
    pub fn ecdf(sorted_values: &[f64]) -> Result<Self, CvarError> {
        if sorted_values.is_empty() {
            return Err(CvarError::EmptySample);
        }
        let n = sorted_values.len() as f64;
        let mut knots: Vec<(f64, f64)> = Vec::new();
        for (i, &v) in sorted_values.iter().enumerate() {
            let f = (i + 1) as f64 / n;
            match knots.last_mut() {
                Some(last) if last.0 == v => last.1 = f,
                _ => knots.push((v, f)),
            }
        }
        if let Some(last) = knots.last_mut() {
            last.1 = 1.0;
        }
        Self::new(knots)
    }

    /// A single atom at `x`.
    pub fn point_mass(x: f64) -> Result<Self, CvarError> {
        Self::new(vec![(x, 1.0)])
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    /// F(x), right-continuous.
    pub fn eval(&self, x: f64) -> f64 {
        match self.knots.partition_point(|(k, _)| *k <= x) {
            0 => 0.0,
            i => self.knots[i - 1].1,
        }
    }

    /// Quantile `inf { x : F(x) > 1−α }` (strict inequality, ties resolved
    /// by the step CDF with no interpolation).
    pub fn var(&self, alpha: f64) -> Result<f64, CvarError> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(CvarError::InvalidAlpha(alpha));
        }
        let level = 1.0 - alpha;
        let knot = self
            .knots
            .iter()
            .find(|(_, f)| *f > level)
            .expect("final F is 1 > 1-alpha for alpha > 0");
        Ok(knot.0)
    }

    /// CVaR at level `alpha`: the quantile integral `(1/α)∫_{1−α}^1 F⁻¹`,
    /// exact for a step CDF.
    pub fn cvar(&self, alpha: f64) -> Result<f64, CvarError> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(CvarError::InvalidAlpha(alpha));
        }
        let tail_lo = 1.0 - alpha;
        let mut acc = 0.0;
        let mut prev_f = 0.0f64;
        for &(x, f) in &self.knots {
            let overlap = (f.min(1.0) - prev_f.max(tail_lo)).max(0.0);
            acc += x * overlap;
            prev_f = f;
        }
        Ok(acc / alpha)
    }

    pub fn mean(&self) -> f64 {
        let mut acc = 0.0;
        let mut prev_f = 0.0f64;
        for &(x, f) in &self.knots {
            acc += x * (f - prev_f);
            prev_f = f;
        }
        acc
    }

    /// Largest pointwise gap `sup_x (self(x) − other(x))`, evaluated over
    /// the union of knot locations (exact for step CDFs).
    pub fn sup_gap_above(&self, other: &DiscreteCdf) -> f64 {
        let mut gap: f64 = 0.0;
        for &(x, f) in &self.knots {
            gap = gap.max(f - other.eval(x));
        }
        for &(x, _) in &other.knots {
            gap = gap.max(self.eval(x) - other.eval(x));
        }
        gap
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_mass_cvar_is_the_atom() {
        let cdf = DiscreteCdf::point_mass(3.25).unwrap();
        for alpha in [0.05, 0.5, 1.0] {
            assert!((cdf.cvar(alpha).unwrap() - 3.25).abs() < 1e-12);
            assert_eq!(cdf.var(alpha).unwrap(), 3.25);
        }
        assert_eq!(cdf.mean(), 3.25);
    }

    #[test]
    fn ecdf_matches_sample_estimators() {
        use crate::sample::{empirical_cvar, empirical_var, SortedSample};
        let values = vec![-1.0, 0.5, 0.5, 2.0, 3.5, 3.5, 3.5, 9.0];
        let s = SortedSample::new(values.clone(), None, None).unwrap();
        let cdf = DiscreteCdf::ecdf(s.values()).unwrap();
        for alpha in [0.1, 0.25, 0.5, 0.9, 1.0] {
            let a = empirical_cvar(&s, alpha).unwrap();
            let b = cdf.cvar(alpha).unwrap();
            assert!((a - b).abs() < 1e-12, "alpha={alpha}: {a} vs {b}");
            assert_eq!(empirical_var(&s, alpha).unwrap(), cdf.var(alpha).unwrap());
        }
        assert!((cdf.mean() - s.mean()).abs() < 1e-12);
    }

    #[test]
    fn validation_rejects_malformed_cdfs() {
        assert!(DiscreteCdf::new(vec![]).is_err());
        assert!(DiscreteCdf::new(vec![(0.0, 0.5)]).is_err());
        assert!(DiscreteCdf::new(vec![(0.0, 0.7), (1.0, 0.5), (2.0, 1.0)]).is_err());
        assert!(DiscreteCdf::new(vec![(0.0, 0.5), (0.0, 1.0)]).is_err());
        assert!(DiscreteCdf::new(vec![(0.0, -0.1), (1.0, 1.0)]).is_err());
    }

    #[test]
    fn eval_is_right_continuous() {
        let cdf = DiscreteCdf::new(vec![(0.0, 0.25), (1.0, 1.0)]).unwrap();
        assert_eq!(cdf.eval(-0.1), 0.0);
        assert_eq!(cdf.eval(0.0), 0.25);
        assert_eq!(cdf.eval(0.999), 0.25);
        assert_eq!(cdf.eval(1.0), 1.0);
    }
}
