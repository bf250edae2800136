//! Zeroth-order MacDonald function and related constants.
//!
//! `k0` uses two regimes: the ascending series that pairs `I0` with the
//! logarithm for `x <= 2`, and Steed's continued fraction (CF2, the
//! Temme/Thompson–Barnett form) for `x > 2`. Both are accurate to a few
//! ulps over the range the quadrature code needs.

use thiserror::Error;

/// Euler–Mascheroni constant, 17 significant digits.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_86;

/// Boundary between the series and continued-fraction regimes.
const SERIES_LIMIT: f64 = 2.0;
const MAX_TERMS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SpecfunError {
    #[error("argument {0} outside the domain (0, inf)")]
    Domain(f64),
}

/// Zeroth-order modified Bessel function of the second kind, `K0(x)`.
///
/// Returns `0.0` once the true value drops below the smallest normal
/// double.
pub fn k0(x: f64) -> Result<f64, SpecfunError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecfunError::Domain(x));
    }
    let value = if x <= SERIES_LIMIT {
        k0_series(x)
    } else {
        k0_continued_fraction(x)
    };
    if value < f64::MIN_POSITIVE {
        Ok(0.0)
    } else {
        Ok(value)
    }
}

/// Small-argument logarithmic form `-log(e^γ a r / 2)`.
pub fn k0_log_form(a: f64, r: f64) -> Result<f64, SpecfunError> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(SpecfunError::Domain(a));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(SpecfunError::Domain(r));
    }
    Ok(-(0.5 * EULER_GAMMA.exp() * a * r).ln())
}

// K0(x) = -(ln(x/2) + γ) I0(x) + Σ_{k≥1} H_k (x²/4)^k / (k!)²
fn k0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut i0 = 1.0;
    let mut tail = 0.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        tail += harmonic * term;
        if term < f64::EPSILON * 1e-3 * i0 {
            break;
        }
    }
    -((0.5 * x).ln() + EULER_GAMMA) * i0 + tail
}

fn k0_continued_fraction(x: f64) -> f64 {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_TERMS {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < f64::EPSILON * 0.5 {
            break;
        }
    }
    (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp() / s
}
