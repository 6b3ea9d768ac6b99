use crate::cdf::DiscreteCdf;
use crate::error::CvarError;

/// A function tabulated on a strictly increasing grid. Evaluation is
/// right-continuous step interpolation, and zero left of the grid, which
/// matches the `g(−∞) = 0` requirement of the envelope constructions.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl GridFunction {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self, CvarError> {
        if xs.is_empty() || xs.len() != ys.len() {
            return Err(CvarError::InvalidGrid("grid and values must align"));
        }
        if xs.iter().chain(ys.iter()).any(|v| !v.is_finite()) {
            return Err(CvarError::InvalidGrid("non-finite grid entry"));
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CvarError::InvalidGrid("grid must strictly increase"));
        }
        Ok(Self { xs, ys })
    }

    pub fn constant(xs: Vec<f64>, value: f64) -> Result<Self, CvarError> {
        let n = xs.len();
        Self::new(xs, vec![value; n])
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    /// Step evaluation: the value at the largest grid point ≤ x, zero
    /// before the grid starts.
    pub fn eval(&self, x: f64) -> f64 {
        match self.xs.partition_point(|k| *k <= x) {
            0 => 0.0,
            i => self.ys[i - 1],
        }
    }

    fn is_nonnegative(&self) -> bool {
        self.ys.iter().all(|y| *y >= 0.0)
    }

    fn is_nondecreasing(&self) -> bool {
        self.ys.windows(2).all(|w| w[0] <= w[1])
    }
}

/// Envelope CDF `F_{Y^L}(y) = min(1, F_Y(y) + g(y))` for a non-negative,
/// non-decreasing discrepancy function g. Whenever `F_X ≤ F_Y + g`
/// pointwise, the CVaR of the result lower-bounds the CVaR of X at every
/// level, so the envelope turns a non-uniform CDF discrepancy into a
/// computable bound.
pub fn envelope_cdf_lower(cdf_y: &DiscreteCdf, g: &GridFunction) -> Result<DiscreteCdf, CvarError> {
    if !g.is_nonnegative() {
        return Err(CvarError::InvalidGrid("g must be non-negative"));
    }
    if !g.is_nondecreasing() {
        return Err(CvarError::InvalidGrid("g must be non-decreasing"));
    }
    // union of knot locations keeps every jump of both step functions
    let mut xs: Vec<f64> = cdf_y
        .knots()
        .iter()
        .map(|(x, _)| *x)
        .chain(g.xs().iter().copied())
        .collect();
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite grid"));
    xs.dedup();
    let first_knot = cdf_y.knots()[0].0;

    let mut knots: Vec<(f64, f64)> = Vec::with_capacity(xs.len());
    for x in xs {
        // left of Y's support the raised value is not a jump of F_{Y^L}
        // until mass appears, except where g itself rises above 0
        let f = (cdf_y.eval(x) + g.eval(x)).min(1.0);
        if f == 0.0 && x < first_knot {
            continue;
        }
        knots.push((x, f));
    }
    if let Some(last) = knots.last_mut() {
        last.1 = 1.0;
    }
    DiscreteCdf::new(knots)
}

/// Envelope construction from a density-level discrepancy: a non-negative
/// bound h on `|f_X − f_Y|` is integrated (cumulative trapezoid over the
/// grid) into a g admissible for [`envelope_cdf_lower`].
pub fn envelope_cdf_from_density_gap(
    cdf_y: &DiscreteCdf,
    h: &GridFunction,
) -> Result<DiscreteCdf, CvarError> {
    if !h.is_nonnegative() {
        return Err(CvarError::InvalidGrid("h must be non-negative"));
    }
    let xs = h.xs().to_vec();
    let hs = h.ys();
    let mut g = Vec::with_capacity(xs.len());
    let mut acc = 0.0;
    g.push(0.0);
    for i in 1..xs.len() {
        acc += 0.5 * (hs[i] + hs[i - 1]) * (xs[i] - xs[i - 1]);
        g.push(acc);
    }
    envelope_cdf_lower(cdf_y, &GridFunction::new(xs, g)?)
}
