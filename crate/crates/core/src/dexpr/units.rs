//! Length dimensions for coefficients that end up inside a logarithm.

use std::ops::{Div, Mul};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimensionError {
    #[error("logarithm of a quantity with dimension length^{0}")]
    LogOfDimensional(i32),
    #[error("logarithm of a non-positive quantity")]
    LogOfNonPositive,
}

/// A real value tagged with the exponent of length in its dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    value: f64,
    length_exponent: i32,
}

impl Quantity {
    pub fn dimensionless(value: f64) -> Self {
        Self { value, length_exponent: 0 }
    }

    pub fn length(value: f64) -> Self {
        Self { value, length_exponent: 1 }
    }

    pub fn per_length(value: f64) -> Self {
        Self { value, length_exponent: -1 }
    }

    pub fn value(self) -> f64 {
        self.value
    }

    pub fn length_exponent(self) -> i32 {
        self.length_exponent
    }

    pub fn is_dimensionless(self) -> bool {
        self.length_exponent == 0
    }

    pub fn abs(self) -> Self {
        Self { value: self.value.abs(), ..self }
    }

    pub fn ln(self) -> Result<f64, DimensionError> {
        if !self.is_dimensionless() {
            return Err(DimensionError::LogOfDimensional(self.length_exponent));
        }
        if !(self.value > 0.0) {
            return Err(DimensionError::LogOfNonPositive);
        }
        Ok(self.value.ln())
    }
}

impl Mul for Quantity {
    type Output = Quantity;

    fn mul(self, rhs: Quantity) -> Quantity {
        Quantity {
            value: self.value * rhs.value,
            length_exponent: self.length_exponent + rhs.length_exponent,
        }
    }
}

impl Div for Quantity {
    type Output = Quantity;

    fn div(self, rhs: Quantity) -> Quantity {
        Quantity {
            value: self.value / rhs.value,
            length_exponent: self.length_exponent - rhs.length_exponent,
        }
    }
}

/// `−log(½e^γ·a·|L|)` with `a` per length and `L` a length.
pub fn anomalous_log(a: f64, length_scale: f64) -> Result<f64, DimensionError> {
    let half_e_gamma = Quantity::dimensionless(0.5 * crate::specfun::EULER_GAMMA.exp());
    let arg = half_e_gamma * Quantity::per_length(a) * Quantity::length(length_scale).abs();
    arg.ln().map(|v| -v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::k0_log_form;

    #[test]
    fn log_needs_a_dimensionless_argument() {
        let a = Quantity::per_length(3.0);
        assert_eq!(a.ln(), Err(DimensionError::LogOfDimensional(-1)));
        assert!((a * Quantity::length(2.0)).ln().is_ok());
        assert_eq!((Quantity::length(1.0) / a).length_exponent(), 2);
        assert_eq!(Quantity::dimensionless(-1.0).ln(), Err(DimensionError::LogOfNonPositive));
    }

    #[test]
    fn anomalous_log_matches_the_log_form() {
        for (a, l) in [(1.0, 1.0), (2.5, 0.3), (0.1, -4.0)] {
            let expected = k0_log_form(a, f64::abs(l)).unwrap();
            assert!((anomalous_log(a, l).unwrap() - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn dropping_the_length_scale_breaks_the_dimension_check() {
        let half_e_gamma = Quantity::dimensionless(0.5 * crate::specfun::EULER_GAMMA.exp());
        let without_l = half_e_gamma * Quantity::per_length(1.0);
        assert!(matches!(without_l.ln(), Err(DimensionError::LogOfDimensional(-1))));
    }
}
