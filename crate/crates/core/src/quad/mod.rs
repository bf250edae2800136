//! Weak pairings `⟨T, φ⟩` computed by quadrature.
//!
//! Regular radial distributions are paired with bump test functions by a
//! radial reduction when the bump is centered at the origin, and by a
//! polar tensor rule about the origin otherwise. Both routes grade the
//! mesh geometrically toward `r = 0` so that logarithmic singularities
//! are resolved. Singular products `f·δ` are probed classically through
//! mollified delta families, and [`fit_log_divergence`] extracts the
//! logarithmic structure of the resulting sequences.

mod fit;
pub(crate) mod gauss_kronrod;
mod mollifier;
mod radial;

use serde::Serialize;
use thiserror::Error;

use crate::testfn::TestFnError;

pub use fit::{fit_log_divergence, fit_log_divergence_with, FitModel, LogFitResult};
pub use mollifier::{pair_mollified_product, MollifierFamily, Profile, DEFAULT_EPSILON_EXPONENTS};
pub use radial::{integrate_radial, pair_delta, pair_regular, TestSide};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("quadrature did not converge: error estimate {error:e} above tolerance {tolerance:e}")]
    NonConvergence { error: f64, tolerance: f64 },
    #[error("integrand produced a non-finite value")]
    NonFinite,
    #[error("invalid argument: {0}")]
    Domain(String),
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
    #[error(transparent)]
    TestFunction(#[from] TestFnError),
}

/// Value of a weak pairing with its error estimate and convergence table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairingReport {
    pub value: f64,
    pub abs_error_estimate: f64,
    /// `(parameter, partial value)` rows; for adaptive quadrature the
    /// parameter is the panel count after each refinement sweep.
    pub table: Vec<(f64, f64)>,
}

impl PairingReport {
    pub(crate) fn from_table(value: f64, error: f64, table: Vec<(f64, f64)>) -> Self {
        let last_increment = match table.as_slice() {
            [.., (_, prev), (_, last)] => (last - prev).abs(),
            _ => 0.0,
        };
        Self {
            value,
            abs_error_estimate: error.max(last_increment),
            table,
        }
    }

    /// Exact value with no quadrature behind it.
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            abs_error_estimate: 0.0,
            table: vec![(0.0, value)],
        }
    }

    /// `Σ cᵢ·reportᵢ`; the table lists the running sum term by term and
    /// closes with a total row.
    pub fn linear_combination<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (f64, &'a PairingReport)>,
    {
        let mut value = 0.0;
        let mut error = 0.0;
        let mut table = Vec::new();
        for (i, (c, report)) in terms.into_iter().enumerate() {
            value += c * report.value;
            error += c.abs() * report.abs_error_estimate;
            table.push((i as f64, value));
        }
        table.push((table.len() as f64, value));
        Self {
            value,
            abs_error_estimate: error,
            table,
        }
    }
}
