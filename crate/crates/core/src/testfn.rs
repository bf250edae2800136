//! Radial bump test functions on the plane.
//!
//! `φ(x) = A·exp(1 - 1/(1 - u²))` with `u = |x - c|/R` inside the disk of
//! radius `R`, and exactly zero outside it. Writing the profile as
//! `A·f(s)` with `s = u²` gives closed forms for the gradient and the
//! Laplacian:
//!
//! ```text
//! ∇φ = 2A f'(s) (x - c) / R²
//! Δφ = 4A (s f''(s) + f'(s)) / R²
//! ```

use thiserror::Error;

/// A point in the plane.
pub type Point = [f64; 2];

pub const ORIGIN: Point = [0.0, 0.0];

// exp(x) is exactly zero in f64 below this exponent.
const EXP_UNDERFLOW: f64 = -746.0;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum TestFnError {
    #[error("bump radius must be positive and finite, got {0}")]
    Radius(f64),
    #[error("bump amplitude must be finite, got {0}")]
    Amplitude(f64),
    #[error("bump center must be finite")]
    Center,
    #[error("rescaling factor must be nonzero and finite, got {0}")]
    Scale(f64),
}

/// Which derivative `BumpFunction::eval` returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Value,
    Gradient,
    Laplacian,
}

/// Result of `BumpFunction::eval`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Evaluation {
    Scalar(f64),
    Vector([f64; 2]),
}

impl Evaluation {
    pub fn scalar(self) -> Option<f64> {
        match self {
            Evaluation::Scalar(v) => Some(v),
            Evaluation::Vector(_) => None,
        }
    }

    pub fn vector(self) -> Option<[f64; 2]> {
        match self {
            Evaluation::Vector(v) => Some(v),
            Evaluation::Scalar(_) => None,
        }
    }
}

/// Smooth, compactly supported radial bump.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpFunction {
    amplitude: f64,
    radius: f64,
    center: Point,
}

/// Profile `f(s) = exp(1 - 1/(1-s))` and its first two derivatives.
fn profile(s: f64) -> Option<(f64, f64, f64)> {
    let t = 1.0 - s;
    if !(t > 0.0) {
        return None;
    }
    let exponent = 1.0 - 1.0 / t;
    if exponent < EXP_UNDERFLOW {
        return None;
    }
    let f = exponent.exp();
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    let d1 = -f * inv2;
    let d2 = f * inv2 * inv * (inv - 2.0);
    Some((f, d1, d2))
}

impl BumpFunction {
    pub fn new(amplitude: f64, radius: f64, center: Point) -> Result<Self, TestFnError> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(TestFnError::Radius(radius));
        }
        if !amplitude.is_finite() {
            return Err(TestFnError::Amplitude(amplitude));
        }
        if !center.iter().all(|c| c.is_finite()) {
            return Err(TestFnError::Center);
        }
        Ok(Self {
            amplitude,
            radius,
            center,
        })
    }

    /// Origin-centered bump.
    pub fn centered(amplitude: f64, radius: f64) -> Result<Self, TestFnError> {
        Self::new(amplitude, radius, ORIGIN)
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn is_origin_centered(&self) -> bool {
        self.center == ORIGIN
    }

    /// Distance from the origin to the center.
    pub fn center_distance(&self) -> f64 {
        self.center[0].hypot(self.center[1])
    }

    /// True when the origin lies in the open support disk.
    pub fn contains_origin(&self) -> bool {
        self.center_distance() < self.radius
    }

    fn offset(&self, x: Point) -> [f64; 2] {
        [x[0] - self.center[0], x[1] - self.center[1]]
    }

    pub fn value(&self, x: Point) -> f64 {
        let d = self.offset(x);
        let s = (d[0] * d[0] + d[1] * d[1]) / (self.radius * self.radius);
        profile(s).map_or(0.0, |(f, _, _)| self.amplitude * f)
    }

    pub fn gradient(&self, x: Point) -> [f64; 2] {
        let d = self.offset(x);
        let r2 = self.radius * self.radius;
        let s = (d[0] * d[0] + d[1] * d[1]) / r2;
        match profile(s) {
            Some((_, d1, _)) => {
                let k = 2.0 * self.amplitude * d1 / r2;
                [k * d[0], k * d[1]]
            }
            None => [0.0, 0.0],
        }
    }

    pub fn laplacian(&self, x: Point) -> f64 {
        let d = self.offset(x);
        let r2 = self.radius * self.radius;
        let s = (d[0] * d[0] + d[1] * d[1]) / r2;
        profile(s).map_or(0.0, |(_, d1, d2)| {
            4.0 * self.amplitude * (s * d2 + d1) / r2
        })
    }

    /// Value at distance `r` from the center (radial profile).
    pub fn radial_value(&self, r: f64) -> f64 {
        let s = (r / self.radius).powi(2);
        profile(s).map_or(0.0, |(f, _, _)| self.amplitude * f)
    }

    /// Laplacian at distance `r` from the center.
    pub fn radial_laplacian(&self, r: f64) -> f64 {
        let r2 = self.radius * self.radius;
        let s = r * r / r2;
        profile(s).map_or(0.0, |(_, d1, d2)| {
            4.0 * self.amplitude * (s * d2 + d1) / r2
        })
    }

    pub fn eval(&self, x: Point, order: Order) -> Evaluation {
        match order {
            Order::Value => Evaluation::Scalar(self.value(x)),
            Order::Gradient => Evaluation::Vector(self.gradient(x)),
            Order::Laplacian => Evaluation::Scalar(self.laplacian(x)),
        }
    }

    /// `⟨δ, φ⟩ = φ(0)`.
    pub fn at_origin(&self) -> f64 {
        self.value(ORIGIN)
    }

    /// `φ_L(x) = φ(L·x)`: center `c/L`, radius `R/|L|`.
    pub fn rescale(&self, scale: f64) -> Result<Self, TestFnError> {
        if scale == 0.0 || !scale.is_finite() {
            return Err(TestFnError::Scale(scale));
        }
        if scale == 1.0 {
            return Ok(*self);
        }
        Self::new(
            self.amplitude,
            self.radius / scale.abs(),
            [self.center[0] / scale, self.center[1] / scale],
        )
    }

    /// The test-function battery used by the verification suites:
    /// amplitudes {1, 2} × radii {0.5, 1, 2, 5} at the origin, two
    /// off-center bumps whose support contains the origin, and one whose
    /// support misses it.
    pub fn suite() -> Vec<BumpFunction> {
        let mut out = Vec::new();
        for amplitude in [1.0, 2.0] {
            for radius in [0.5, 1.0, 2.0, 5.0] {
                out.push(BumpFunction::centered(amplitude, radius).expect("valid bump"));
            }
        }
        out.extend(Self::off_center_suite());
        out
    }

    pub fn off_center_suite() -> Vec<BumpFunction> {
        vec![
            BumpFunction::new(1.0, 1.0, [0.3, 0.2]).expect("valid bump"),
            BumpFunction::new(2.0, 2.0, [-0.5, 0.75]).expect("valid bump"),
            BumpFunction::new(1.0, 1.0, [5.0, 0.0]).expect("valid bump"),
        ]
    }
}

/// Convenience constructor mirroring the `make_bump` operation.
pub fn make_bump(amplitude: f64, radius: f64, center: Point) -> Result<BumpFunction, TestFnError> {
    BumpFunction::new(amplitude, radius, center)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn center_and_boundary() {
        let phi = make_bump(1.0, 1.0, ORIGIN).unwrap();
        assert_eq!(phi.value(ORIGIN), 1.0);
        assert_eq!(phi.value([1.0, 0.0]), 0.0);
        assert_eq!(phi.value([0.6, 0.8]), 0.0);
        assert_eq!(phi.value([3.0, -2.0]), 0.0);
    }

    #[test]
    fn formula_at_interior_point() {
        let phi = make_bump(2.0, 3.0, ORIGIN).unwrap();
        let expected = 2.0 * (-1.0f64 / 3.0).exp();
        assert_relative_eq!(phi.value([1.5, 0.0]), expected, max_relative = 1e-15);
        assert_relative_eq!(phi.value([0.0, -1.5]), expected, max_relative = 1e-15);
    }

    #[test]
    fn derivatives_at_center_and_outside() {
        let phi = make_bump(1.0, 1.0, ORIGIN).unwrap();
        assert_eq!(phi.eval(ORIGIN, Order::Gradient).vector(), Some([0.0, 0.0]));
        assert_eq!(phi.eval(ORIGIN, Order::Laplacian).scalar(), Some(-4.0));
        let out = [2.0, 0.0];
        assert_eq!(phi.eval(out, Order::Value).scalar(), Some(0.0));
        assert_eq!(phi.eval(out, Order::Gradient).vector(), Some([0.0, 0.0]));
        assert_eq!(phi.eval(out, Order::Laplacian).scalar(), Some(0.0));
    }

    #[test]
    fn laplacian_matches_finite_differences() {
        let h = 1e-4;
        for phi in BumpFunction::suite() {
            let c = phi.center();
            let rr = phi.radius();
            for i in 0..9 {
                for j in 0..9 {
                    let x = [
                        c[0] + rr * (-0.8 + 0.2 * i as f64),
                        c[1] + rr * (-0.8 + 0.2 * j as f64),
                    ];
                    if (x[0] - c[0]).hypot(x[1] - c[1]) > 0.6 * rr {
                        continue;
                    }
                    let fd = (phi.value([x[0] + h, x[1]])
                        + phi.value([x[0] - h, x[1]])
                        + phi.value([x[0], x[1] + h])
                        + phi.value([x[0], x[1] - h])
                        - 4.0 * phi.value(x))
                        / (h * h);
                    let exact = phi.laplacian(x);
                    assert!((fd - exact).abs() <= 1e-6, "{phi:?} at {x:?}: {fd} vs {exact}");
                }
            }
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let phi = make_bump(1.5, 2.0, [0.1, -0.3]).unwrap();
        let h = 1e-6;
        for x in [[0.2, 0.1], [-1.0, 0.5], [0.9, -1.2]] {
            let g = phi.gradient(x);
            let gx = (phi.value([x[0] + h, x[1]]) - phi.value([x[0] - h, x[1]])) / (2.0 * h);
            let gy = (phi.value([x[0], x[1] + h]) - phi.value([x[0], x[1] - h])) / (2.0 * h);
            assert!((g[0] - gx).abs() < 1e-8 && (g[1] - gy).abs() < 1e-8);
        }
    }

    #[test]
    fn bounded_derivatives_near_support_edge() {
        // fourth differences stay bounded on a grid graded toward u = 1
        let phi = make_bump(1.0, 1.0, ORIGIN).unwrap();
        let h = 1e-3;
        for k in 1..40 {
            let r = 1.0 - 0.5f64.powi(k).max(2.0 * h);
            let d4 = (phi.radial_value(r + 2.0 * h) - 4.0 * phi.radial_value(r + h)
                + 6.0 * phi.radial_value(r)
                - 4.0 * phi.radial_value(r - h)
                + phi.radial_value(r - 2.0 * h))
                / h.powi(4);
            assert!(d4.is_finite() && d4.abs() < 1e4, "r = {r}, d4 = {d4}");
        }
        assert_eq!(phi.laplacian([1.0 - 1e-300, 0.0]), 0.0);
    }

    #[test]
    fn rescale_identity_and_substitution() {
        let phi = make_bump(1.0, 1.0, ORIGIN).unwrap();
        assert_eq!(phi.rescale(1.0).unwrap(), phi);
        let phi2 = phi.rescale(2.0).unwrap();
        assert_relative_eq!(phi2.value([0.4, 0.0]), phi.value([0.8, 0.0]), max_relative = 1e-15);
        assert_eq!(phi2.radius(), 0.5);
        let reflected = phi.rescale(-1.0).unwrap();
        for x in [[0.1, 0.2], [-0.5, 0.3], [0.7, 0.0]] {
            assert_eq!(reflected.value(x), phi.value(x));
        }
        let off = make_bump(1.0, 1.0, [0.4, 0.2]).unwrap();
        let off3 = off.rescale(-3.0).unwrap();
        let x = [0.05, -0.1];
        assert_relative_eq!(off3.value(x), off.value([-0.15, 0.3]), max_relative = 1e-14);
        assert!(phi.rescale(0.0).is_err());
    }

    #[test]
    fn delta_pairing_linear_and_scale_invariant() {
        for phi in BumpFunction::suite().into_iter().filter(|p| p.is_origin_centered()) {
            let doubled = make_bump(2.0 * phi.amplitude(), phi.radius(), ORIGIN).unwrap();
            assert_eq!(doubled.at_origin(), 2.0 * phi.at_origin());
            for s in [0.25, -2.0, 7.0] {
                assert_eq!(phi.rescale(s).unwrap().at_origin(), phi.at_origin());
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert!(make_bump(1.0, 0.0, ORIGIN).is_err());
        assert!(make_bump(1.0, -1.0, ORIGIN).is_err());
        assert!(make_bump(f64::NAN, 1.0, ORIGIN).is_err());
        assert!(make_bump(1.0, 1.0, [f64::INFINITY, 0.0]).is_err());
    }
}
