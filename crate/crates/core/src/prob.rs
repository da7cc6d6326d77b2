//! Probability kernels used by the models. Not a statistics library; only
//! what the observers need.

use crate::error::{ModelError, Result};

const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// Gaussian density. `sd` must be strictly positive (`+inf` is accepted and
/// yields a density of zero everywhere, the uninformative limit).
pub fn normal_pdf(x: f64, mean: f64, sd: f64) -> Result<f64> {
    if !(sd > 0.0) {
        return Err(ModelError::invalid(format!("normal_pdf: sd must be > 0, got {sd}")));
    }
    Ok(normal_pdf_unchecked(x, mean, sd))
}

#[inline]
pub(crate) fn normal_pdf_unchecked(x: f64, mean: f64, sd: f64) -> f64 {
    let z = (x - mean) / sd;
    (-0.5 * z * z).exp() / (sd * SQRT_2PI)
}

/// Standard normal CDF.
#[inline]
pub fn normal_cdf(x: f64, mean: f64, sd: f64) -> f64 {
    0.5 * libm::erfc(-(x - mean) / (sd * std::f64::consts::SQRT_2))
}

/// Logistic function 1 / (1 + e^{-x}).
#[inline]
pub fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// tanh(x)/x with the removable singularity at 0 filled by its series.
#[inline]
pub fn tanh_over_x(x: f64) -> f64 {
    if x.abs() < 1e-6 {
        // tanh(x)/x = 1 - x^2/3 + O(x^4)
        1.0 - x * x / 3.0
    } else {
        x.tanh() / x
    }
}

/// Composite Simpson quadrature on [a, b] with n panels (n rounded up to even).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = if n % 2 == 0 { n } else { n + 1 };
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}
