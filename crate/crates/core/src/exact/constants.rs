use super::ExactError;

/// `c*`: root of `x ln(2e/x) = 1` on `[2, 10]`, found by bisection until
/// `|g| ≤ tol` or the bracket stops shrinking.
pub fn devroye_constant(tol: f64) -> Result<f64, ExactError> {
    if !(tol > 0.0) {
        return Err(ExactError::BadTolerance);
    }
    let g = |x: f64| x * (2.0 * std::f64::consts::E / x).ln() - 1.0;
    let (mut lo, mut hi) = (2.0f64, 10.0f64);
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let v = g(mid);
        if v.abs() <= tol || mid == lo || mid == hi {
            break;
        }
        if v > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(mid)
}

/// Constants in the height asymptotics.
///
/// * `cstar`: root of `x ln(2e/x) = 1`, `x ≥ 2`
/// * `alpha = log2(3/2)`
/// * `big_c = 1 + √(8√2 − 11)`
/// * `xi = (1 + √2 + √(2√2 − 1))/2 = 1 + √(2C)/2`
/// * `beta = log2(xi)`
/// * `d = 2/(√(2C) − 1) = 1/(ξ − 3/2)`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub cstar: f64,
    pub alpha: f64,
    pub beta: f64,
    pub xi: f64,
    pub big_c: f64,
    pub d: f64,
}

impl Constants {
    pub fn compute() -> Self {
        let sqrt2 = std::f64::consts::SQRT_2;
        let big_c = 1.0 + (8.0 * sqrt2 - 11.0).sqrt();
        let xi = 0.5 * (1.0 + sqrt2 + (2.0 * sqrt2 - 1.0).sqrt());
        Constants {
            cstar: devroye_constant(1e-13).expect("positive tolerance"),
            alpha: 1.5f64.log2(),
            beta: xi.log2(),
            xi,
            big_c,
            d: 2.0 / ((2.0 * big_c).sqrt() - 1.0),
        }
    }
}

impl Default for Constants {
    fn default() -> Self {
        Constants::compute()
    }
}
