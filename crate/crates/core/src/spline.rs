//! Natural cubic smoothing spline with GCV-selected smoothing.
//!
//! The fit minimizes `sum (y_i - f(x_i))^2 + lambda * integral f''^2` over
//! natural cubic splines with knots at the data sites (the Reinsch /
//! Green-Silverman formulation). The smoothing parameter is chosen by
//! generalized cross-validation over a log-spaced grid.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// A fitted natural cubic spline: values and second derivatives at the
/// knots.
#[derive(Debug, Clone)]
pub struct SmoothingSpline {
    knots: Vec<f64>,
    values: Vec<f64>,
    second_derivs: Vec<f64>,
    lambda: f64,
}

impl SmoothingSpline {
    /// Fits the spline to `(x, y)` with the GCV-optimal smoothing parameter.
    /// `x` must be strictly increasing with at least 4 points.
    pub fn fit(x: &[f64], y: &[f64]) -> Result<SmoothingSpline> {
        let n = x.len();
        if n < 4 {
            return Err(Error::Spline(format!(
                "need at least 4 points, got {n}"
            )));
        }
        if y.len() != n {
            return Err(Error::Spline(format!(
                "x has {n} points, y has {}",
                y.len()
            )));
        }
        if !x.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::Spline("x must be strictly increasing".into()));
        }
        if !(x.iter().all(|v| v.is_finite()) && y.iter().all(|v| v.is_finite())) {
            return Err(Error::Spline("non-finite input".into()));
        }

        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        // Q: n x (n-2); R: (n-2) x (n-2) tridiagonal (Green & Silverman).
        let m = n - 2;
        let mut q = DMatrix::<f64>::zeros(n, m);
        let mut r = DMatrix::<f64>::zeros(m, m);
        for c in 0..m {
            let j = c + 1; // interior knot index
            q[(j - 1, c)] = 1.0 / h[j - 1];
            q[(j, c)] = -1.0 / h[j - 1] - 1.0 / h[j];
            q[(j + 1, c)] = 1.0 / h[j];
            r[(c, c)] = (h[j - 1] + h[j]) / 3.0;
            if c + 1 < m {
                r[(c, c + 1)] = h[j] / 6.0;
                r[(c + 1, c)] = h[j] / 6.0;
            }
        }
        let r_inv = r
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Spline("penalty matrix is singular".into()))?;
        // K = Q R^-1 Q^T is the roughness penalty in terms of fitted values.
        let k = &q * &r_inv * q.transpose();

        let yv = DMatrix::from_column_slice(n, 1, y);
        let identity = DMatrix::<f64>::identity(n, n);

        // Sweep lambda on a log grid scaled so the effective degrees of
        // freedom cover the full range; pick the GCV minimum.
        let scale = n as f64 / k.trace().max(f64::MIN_POSITIVE);
        let mut best: Option<(f64, f64)> = None; // (gcv, lambda)
        for step in 0..41 {
            let lambda = scale * 10f64.powf(-6.0 + 12.0 * step as f64 / 40.0);
            let a_inv = (&identity + &k * lambda)
                .try_inverse()
                .ok_or_else(|| Error::Spline("ill-conditioned smoother".into()))?;
            let fitted = &a_inv * &yv;
            let rss: f64 = (0..n).map(|i| (y[i] - fitted[(i, 0)]).powi(2)).sum();
            let trace = a_inv.trace();
            let denom = (n as f64 - trace).max(1e-9);
            let gcv = n as f64 * rss / (denom * denom);
            if best.map_or(true, |(g, _)| gcv < g) {
                best = Some((gcv, lambda));
            }
        }
        let (_, lambda) = best.expect("lambda grid is non-empty");

        let a_inv = (&identity + &k * lambda)
            .try_inverse()
            .ok_or_else(|| Error::Spline("ill-conditioned smoother".into()))?;
        let fitted = &a_inv * &yv;
        let values: Vec<f64> = (0..n).map(|i| fitted[(i, 0)]).collect();
        let gamma = &r_inv * q.transpose() * &fitted;
        // Natural boundary conditions: zero curvature at the end knots.
        let mut second_derivs = vec![0.0; n];
        for c in 0..m {
            second_derivs[c + 1] = gamma[(c, 0)];
        }
        Ok(SmoothingSpline {
            knots: x.to_vec(),
            values,
            second_derivs,
            lambda,
        })
    }

    /// Chosen smoothing parameter.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Fitted values at the knots.
    pub fn fitted(&self) -> &[f64] {
        &self.values
    }

    /// Evaluates the spline. Outside the knot span the natural spline
    /// continues linearly.
    pub fn eval(&self, x: f64) -> f64 {
        let knots = &self.knots;
        let n = knots.len();
        if x <= knots[0] {
            let slope = self.segment_slope_at_start();
            return self.values[0] + slope * (x - knots[0]);
        }
        if x >= knots[n - 1] {
            let slope = self.segment_slope_at_end();
            return self.values[n - 1] + slope * (x - knots[n - 1]);
        }
        let i = match knots.binary_search_by(|k| k.partial_cmp(&x).unwrap()) {
            Ok(i) => return self.values[i],
            Err(i) => i - 1,
        };
        let h = knots[i + 1] - knots[i];
        let a = (knots[i + 1] - x) / h;
        let b = (x - knots[i]) / h;
        a * self.values[i]
            + b * self.values[i + 1]
            + ((a.powi(3) - a) * self.second_derivs[i]
                + (b.powi(3) - b) * self.second_derivs[i + 1])
                * h
                * h
                / 6.0
    }

    fn segment_slope_at_start(&self) -> f64 {
        let h = self.knots[1] - self.knots[0];
        (self.values[1] - self.values[0]) / h - h * self.second_derivs[1] / 6.0
    }

    fn segment_slope_at_end(&self) -> f64 {
        let n = self.knots.len();
        let h = self.knots[n - 1] - self.knots[n - 2];
        (self.values[n - 1] - self.values[n - 2]) / h + h * self.second_derivs[n - 2] / 6.0
    }
}
