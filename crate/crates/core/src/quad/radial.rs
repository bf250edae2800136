use std::cell::Cell;
use std::f64::consts::TAU;

use super::gauss_kronrod::{gk15, integrate, Tolerance};
use super::{PairingReport, QuadError};
use crate::testfn::BumpFunction;

/// Which side of the pairing the test function enters with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TestSide {
    /// `⟨f, φ⟩`
    #[default]
    Value,
    /// `⟨f, Δφ⟩`, i.e. the distributional Laplacian moved onto `φ`.
    Laplacian,
}

// Reported error stays below 1e-10·(1 + |value|).
const OUTER_TOL: Tolerance = Tolerance {
    abs: 1e-11,
    rel: 1e-11,
};
const ANGULAR_TOL: Tolerance = Tolerance {
    abs: 1e-14,
    rel: 1e-13,
};
const MAX_GRADING_DEPTH: i32 = 400;

/// Geometric breakpoints `r_max·2^-k` toward the origin, deep enough that
/// the innermost panel `[0, h]` contributes below `floor`.
fn graded_breaks<F: FnMut(f64) -> f64>(g: &mut F, r_max: f64, floor: f64) -> Vec<f64> {
    let mut breaks = vec![r_max];
    let mut h = r_max;
    for _ in 0..MAX_GRADING_DEPTH {
        h *= 0.5;
        breaks.push(h);
        if h < r_max * 1e-6 {
            let inner = gk15(g, 0.0, h);
            if inner.value.abs() + inner.error < floor {
                break;
            }
        }
    }
    breaks.push(0.0);
    breaks.reverse();
    breaks
}

/// `∫₀^{r_max} g(r)·2πr dr` for a radial integrand with at worst a
/// logarithmic singularity at the origin.
pub fn integrate_radial<G>(g: G, r_max: f64) -> Result<PairingReport, QuadError>
where
    G: Fn(f64) -> f64,
{
    if !(r_max > 0.0) || !r_max.is_finite() {
        return Err(QuadError::Domain(format!("r_max must be positive, got {r_max}")));
    }
    radial_on_breaks(&g, 0.0, r_max, &[])
}

/// Radial integral over `[lo, hi]` with extra interior kinks; grades toward
/// zero when `lo == 0`.
fn radial_on_breaks<G>(g: &G, lo: f64, hi: f64, kinks: &[f64]) -> Result<PairingReport, QuadError>
where
    G: Fn(f64) -> f64 + ?Sized,
{
    let mut integrand = |r: f64| g(r) * TAU * r;
    let mut breaks = if lo == 0.0 {
        let first = kinks
            .iter()
            .copied()
            .filter(|&k| k > 0.0 && k < hi)
            .fold(hi, f64::min);
        let mut b = graded_breaks(&mut integrand, first, OUTER_TOL.abs * 1e-3);
        b.push(hi);
        b
    } else {
        let n = 8;
        (0..=n)
            .map(|i| lo + (hi - lo) * i as f64 / n as f64)
            .collect()
    };
    breaks.extend(kinks.iter().copied().filter(|&k| k > lo && k < hi));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let res = integrate(&mut integrand, &breaks, OUTER_TOL)?;
    Ok(PairingReport::from_table(res.value, res.error, res.history))
}

/// Average of `h` over the circle of radius `r` about the origin,
/// restricted to where it meets the support disk of `phi`.
fn angular_average<H>(h: &H, phi: &BumpFunction, r: f64) -> Result<f64, QuadError>
where
    H: Fn([f64; 2]) -> f64,
{
    let c = phi.center();
    let d = phi.center_distance();
    let rr = phi.radius();
    let on_circle = |theta: f64| h([r * theta.cos(), r * theta.sin()]);
    let (lo, hi, panels) = if r + d <= rr {
        (0.0, TAU, 8)
    } else if (r - d).abs() >= rr {
        return Ok(0.0);
    } else {
        let cos_w = ((r * r + d * d - rr * rr) / (2.0 * r * d)).clamp(-1.0, 1.0);
        let w = cos_w.acos();
        let mid = c[1].atan2(c[0]);
        (mid - w, mid + w, 4)
    };
    let breaks: Vec<f64> = (0..=panels)
        .map(|i| lo + (hi - lo) * i as f64 / panels as f64)
        .collect();
    let res = integrate(on_circle, &breaks, ANGULAR_TOL)?;
    Ok(res.value / TAU)
}

/// `∫ w(|x|)·ψ(x) d²x` where `ψ` is `φ` or `Δφ`. `r_limit` truncates the
/// radial range (used by mollifiers whose weight is negligible beyond it).
pub(crate) fn pair_radial_weight<W>(
    w: &W,
    phi: &BumpFunction,
    side: TestSide,
    r_limit: Option<f64>,
) -> Result<PairingReport, QuadError>
where
    W: Fn(f64) -> f64 + ?Sized,
{
    let limit = r_limit.unwrap_or(f64::INFINITY);
    if phi.is_origin_centered() {
        let hi = phi.radius().min(limit);
        let profile = |r: f64| match side {
            TestSide::Value => phi.radial_value(r),
            TestSide::Laplacian => phi.radial_laplacian(r),
        };
        return radial_on_breaks(&|r: f64| w(r) * profile(r), 0.0, hi, &[]);
    }

    let d = phi.center_distance();
    let rr = phi.radius();
    let lo = if d >= rr { d - rr } else { 0.0 };
    let hi = (d + rr).min(limit);
    if hi <= lo {
        return Ok(PairingReport::exact(0.0));
    }
    let field = |x: [f64; 2]| match side {
        TestSide::Value => phi.value(x),
        TestSide::Laplacian => phi.laplacian(x),
    };
    let failure: Cell<Option<QuadError>> = Cell::new(None);
    let g = |r: f64| {
        if r <= 0.0 {
            return 0.0;
        }
        match angular_average(&field, phi, r) {
            Ok(avg) => w(r) * avg,
            Err(e) => {
                failure.set(Some(e));
                0.0
            }
        }
    };
    let kinks: Vec<f64> = if d < rr { vec![rr - d] } else { vec![] };
    let report = radial_on_breaks(&g, lo, hi, &kinks)?;
    match failure.take() {
        Some(e) => Err(e),
        None => Ok(report),
    }
}

/// `⟨f, φ⟩` (or `⟨f, Δφ⟩`) for a regular radial function `f(|x|)`.
pub fn pair_regular<F>(f: F, phi: &BumpFunction, side: TestSide) -> Result<PairingReport, QuadError>
where
    F: Fn(f64) -> f64,
{
    pair_radial_weight(&f, phi, side, None)
}

/// `⟨c·δ, φ⟩ = c·φ(0)`.
pub fn pair_delta(c: f64, phi: &BumpFunction) -> f64 {
    c * phi.at_origin()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;
    use crate::specfun::k0;
    use crate::testfn::{make_bump, ORIGIN};

    #[test]
    fn unit_disk_area() {
        let rep = integrate_radial(|r| if r <= 1.0 { 1.0 } else { 0.0 }, 1.0).unwrap();
        assert!((rep.value - PI).abs() < 1e-12);
        assert!(rep.abs_error_estimate <= 1e-10 * (1.0 + rep.value.abs()));
    }

    #[test]
    fn log_moment_closed_form() {
        // 2π ∫₀¹ r ln r dr = 2π·[r²(2 ln r - 1)/4]₀¹ = -π/2
        let rep = integrate_radial(|r: f64| r.ln(), 1.0).unwrap();
        assert!((rep.value + PI / 2.0).abs() < 1e-11, "{}", rep.value);
    }

    #[test]
    fn k0_squared_moment() {
        // ∫₀^∞ r K0(r)² dr = 1/2
        let rep = integrate_radial(|r: f64| k0(r).unwrap().powi(2), 50.0).unwrap();
        assert!((rep.value - PI).abs() < 1e-10, "{}", rep.value);
    }

    #[test]
    fn domain_error_on_bad_radius() {
        assert!(integrate_radial(|_| 1.0, 0.0).is_err());
        assert!(integrate_radial(|_| 1.0, -2.0).is_err());
    }

    #[test]
    fn disjoint_supports_pair_to_zero() {
        let phi = make_bump(1.0, 1.0, [5.0, 0.0]).unwrap();
        let rep = pair_regular(|r| if r <= 1.0 { 1.0 } else { 0.0 }, &phi, TestSide::Value).unwrap();
        assert_eq!(rep.value, 0.0);
        assert_eq!(pair_delta(-3.0, &phi), 0.0);
    }

    #[test]
    fn delta_pairing() {
        let phi = make_bump(1.0, 1.0, ORIGIN).unwrap();
        assert_eq!(pair_delta(1.0, &phi), 1.0);
    }

    #[test]
    fn polar_route_matches_radial_route_for_shifted_constant() {
        // ⟨1, φ⟩ does not depend on where φ sits
        let centered = make_bump(1.0, 1.0, ORIGIN).unwrap();
        let shifted = make_bump(1.0, 1.0, [0.3, 0.2]).unwrap();
        let a = pair_regular(|_| 1.0, &centered, TestSide::Value).unwrap();
        let b = pair_regular(|_| 1.0, &shifted, TestSide::Value).unwrap();
        assert!((a.value - b.value).abs() < 1e-10, "{} vs {}", a.value, b.value);
    }

    #[test]
    fn laplacian_of_test_function_integrates_to_zero() {
        for phi in BumpFunction::suite() {
            let rep = pair_regular(|_| 1.0, &phi, TestSide::Laplacian).unwrap();
            assert!(rep.value.abs() < 1e-9, "{phi:?}: {}", rep.value);
        }
    }

    #[test]
    fn fundamental_solution_on_unit_bump() {
        let phi = make_bump(1.0, 1.0, ORIGIN).unwrap();
        let rep = pair_regular(|r: f64| r.ln(), &phi, TestSide::Laplacian).unwrap();
        assert!((rep.value - TAU).abs() < 1e-9, "{}", rep.value);
    }
}
