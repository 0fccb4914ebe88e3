use std::f64::consts::E;

use crate::error::{Error, Result};

const MAX_ITER: usize = 50;

/// Principal branch of the Lambert W function on `x >= 0`, the inverse of
/// `w -> w e^w`.
///
/// Halley iteration on `w e^w - x`. For very large arguments `w e^w`
/// overflows, so Newton iteration on the logarithmic form
/// `w + ln w - ln x` is used instead.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::LambertDomain(x));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }
    if x > 1e100 {
        return log_newton(x);
    }

    let mut w = initial_guess(x);
    for _ in 0..MAX_ITER {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs().max(f64::MIN_POSITIVE) {
            return Ok(w);
        }
    }
    let residual = w * w.exp() - x;
    if residual.abs() <= 1e-14 * x.max(1.0) {
        Ok(w)
    } else {
        Err(Error::LambertConvergence(x))
    }
}

fn initial_guess(x: f64) -> f64 {
    if x < 0.25 {
        // W(x) = x - x^2 + O(x^3)
        x * (1.0 - x)
    } else if x < E {
        x.ln_1p()
    } else {
        let l = x.ln();
        l - l.ln()
    }
}

fn log_newton(x: f64) -> Result<f64> {
    let lx = x.ln();
    let mut w = lx - lx.ln();
    for _ in 0..MAX_ITER {
        let step = (w + w.ln() - lx) / (1.0 + 1.0 / w);
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w {
            return Ok(w);
        }
    }
    Err(Error::LambertConvergence(x))
}
