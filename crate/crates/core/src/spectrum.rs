//! Bound states of `H = -(ħ²/2m)Δ - αδ` in two dimensions.
//!
//! The bound-state condition reads `ħ²π/m + α·ln(e^γ b|L|/2) = 0` for the
//! decay rate `b` of `ψ_b = (b/√π)K0(b|x|)`, with energy `E = -ħ²b²/(2m)`.
//! Solving it gives
//!
//! ```text
//! E(L) = -(2ħ²/(m L²))·exp(-2γ - 2πħ²/(mα)),   L ≠ 0
//! ```
//!
//! a family of energies indexed by the length scale `L`. [`solve_eeq`]
//! finds `b` by bracketed root finding and [`closed_form_energy`] evaluates
//! the formula directly; the two are kept independent so they can check
//! each other.

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::specfun::EULER_GAMMA;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("hbar must be positive and finite, got {0}")]
    Hbar(f64),
    #[error("mass must be positive and finite, got {0}")]
    Mass(f64),
    #[error("coupling alpha must be nonzero and finite, got {0}")]
    Alpha(f64),
    #[error("length scale L must be nonzero and finite, got {0}")]
    LengthScale(f64),
    #[error("decay rate b must be positive and finite, got {0}")]
    DecayRate(f64),
    #[error("bound-state energy must be negative and finite, got {0}")]
    Energy(f64),
    #[error("could not bracket the bound-state condition: {0}")]
    Bracket(String),
}

/// `ħ`, `m` and `α`; everything but the length scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coupling {
    hbar: f64,
    mass: f64,
    alpha: f64,
}

impl Coupling {
    pub fn new(hbar: f64, mass: f64, alpha: f64) -> Result<Self, SpectrumError> {
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(SpectrumError::Hbar(hbar));
        }
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(SpectrumError::Mass(mass));
        }
        if alpha == 0.0 || !alpha.is_finite() {
            return Err(SpectrumError::Alpha(alpha));
        }
        Ok(Self { hbar, mass, alpha })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `ħ²/m`.
    pub fn kinetic_scale(&self) -> f64 {
        self.hbar * self.hbar / self.mass
    }

    pub fn with_length_scale(self, length_scale: f64) -> Result<PhysicalParams, SpectrumError> {
        PhysicalParams::from_coupling(self, length_scale)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalParams {
    #[serde(flatten)]
    coupling: Coupling,
    length_scale: f64,
}

impl PhysicalParams {
    pub fn new(hbar: f64, mass: f64, alpha: f64, length_scale: f64) -> Result<Self, SpectrumError> {
        Self::from_coupling(Coupling::new(hbar, mass, alpha)?, length_scale)
    }

    pub fn from_coupling(coupling: Coupling, length_scale: f64) -> Result<Self, SpectrumError> {
        if length_scale == 0.0 || !length_scale.is_finite() {
            return Err(SpectrumError::LengthScale(length_scale));
        }
        Ok(Self {
            coupling,
            length_scale,
        })
    }

    pub fn coupling(&self) -> Coupling {
        self.coupling
    }

    pub fn hbar(&self) -> f64 {
        self.coupling.hbar
    }

    pub fn mass(&self) -> f64 {
        self.coupling.mass
    }

    pub fn alpha(&self) -> f64 {
        self.coupling.alpha
    }

    pub fn length_scale(&self) -> f64 {
        self.length_scale
    }

    pub fn kinetic_scale(&self) -> f64 {
        self.coupling.kinetic_scale()
    }

    /// Left-hand side of the bound-state condition,
    /// `ħ²π/m + α·ln(e^γ b|L|/2)`.
    pub fn condition(&self, b: f64) -> f64 {
        self.kinetic_scale() * PI
            + self.alpha() * (0.5 * EULER_GAMMA.exp() * b * self.length_scale.abs()).ln()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundState {
    pub b: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CSpectrumFamily {
    pub members: Vec<(f64, f64)>,
}

/// `E = -ħ²b²/(2m)`.
pub fn energy_from_b(b: f64, params: &PhysicalParams) -> Result<f64, SpectrumError> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(SpectrumError::DecayRate(b));
    }
    Ok(-params.kinetic_scale() * b * b / 2.0)
}

/// `b = √(2m|E|)/ħ`.
pub fn b_from_energy(energy: f64, params: &PhysicalParams) -> Result<f64, SpectrumError> {
    if !(energy < 0.0) || !energy.is_finite() {
        return Err(SpectrumError::Energy(energy));
    }
    Ok((2.0 * params.mass() * -energy).sqrt() / params.hbar())
}

const MAX_BRACKET_STEPS: usize = 4096;
const MAX_ROOT_STEPS: usize = 200;
const ROOT_RTOL: f64 = 1e-14;

/// Solves the bound-state condition for `b` and returns `(b, E)`.
///
/// The condition is monotone in `ln b`, so a bracket is grown by doubling
/// (or halving) from `b₀ = 2e^{-γ}/|L|`, where it equals `ħ²π/m > 0`, and
/// then closed by bisection with secant steps in `ln b`.
pub fn solve_eeq(params: &PhysicalParams) -> Result<BoundState, SpectrumError> {
    let g = |t: f64| params.condition(t.exp());
    let t0 = (2.0 * (-EULER_GAMMA).exp() / params.length_scale().abs()).ln();
    let g0 = g(t0);
    assert!(g0 > 0.0, "condition at b0 equals hbar^2 pi / m > 0");

    // α > 0: g increases with b, so the root lies below b0.
    let step = if params.alpha() > 0.0 {
        -std::f64::consts::LN_2
    } else {
        std::f64::consts::LN_2
    };
    let mut inside = t0;
    let mut outside = t0;
    let mut found = false;
    for _ in 0..MAX_BRACKET_STEPS {
        inside = outside;
        outside += step;
        if !outside.exp().is_normal() {
            break;
        }
        if g(outside) <= 0.0 {
            found = true;
            break;
        }
    }
    if !found {
        return Err(SpectrumError::Bracket(format!(
            "no sign change before b left the representable range (alpha = {})",
            params.alpha()
        )));
    }
    // invariant: g(pos) > 0 >= g(neg)
    let (mut pos, mut neg) = (inside, outside);
    let (mut g_pos, mut g_neg) = (g(pos), g(outside));
    let mut t = neg;
    // consecutive updates of the same bracket end; two in a row forces bisection
    let mut streak: i32 = 0;
    for _ in 0..MAX_ROOT_STEPS {
        if g_neg == 0.0 {
            t = neg;
            break;
        }
        let secant = neg - g_neg * (neg - pos) / (g_neg - g_pos);
        let (lo, hi) = (pos.min(neg), pos.max(neg));
        t = if streak.abs() < 2 && secant > lo && secant < hi {
            secant
        } else {
            0.5 * (pos + neg)
        };
        let gt = g(t);
        if gt > 0.0 {
            pos = t;
            g_pos = gt;
            streak = streak.max(0) + 1;
        } else {
            neg = t;
            g_neg = gt;
            streak = streak.min(0) - 1;
        }
        // |Δ ln b| ≈ |g|/|α|; a relative tolerance on b is absolute in ln b
        if (pos - neg).abs() <= ROOT_RTOL || gt.abs() <= 0.1 * ROOT_RTOL * params.alpha().abs() {
            break;
        }
    }
    let b = t.exp();
    let energy = energy_from_b(b, params)?;
    Ok(BoundState { b, energy })
}

/// `E = -(2ħ²/(mL²))·exp(-2γ - 2πħ²/(mα))`.
pub fn closed_form_energy(params: &PhysicalParams) -> f64 {
    let l2 = params.length_scale().powi(2);
    -(2.0 * params.kinetic_scale() / l2)
        * (-2.0 * EULER_GAMMA - 2.0 * PI * params.kinetic_scale() / params.alpha()).exp()
}

/// Energies for each length scale in `length_scales`.
pub fn c_spectrum(coupling: &Coupling, length_scales: &[f64]) -> Result<CSpectrumFamily, SpectrumError> {
    let members = length_scales
        .iter()
        .map(|&l| {
            let params = coupling.with_length_scale(l)?;
            Ok((l, closed_form_energy(&params)))
        })
        .collect::<Result<Vec<_>, SpectrumError>>()?;
    Ok(CSpectrumFamily { members })
}

/// Comparison with the point spectrum of the self-adjoint-extension
/// treatment at `ħ²/m = 2`, `L = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AghhComparison {
    pub alpha: f64,
    /// `-4·exp(-2γ - 4π/α)` from the closed form with `ħ = 1`, `m = 1/2`, `L = 1`.
    pub c_spectrum_value: f64,
    /// Reference coupling `𝛂 = 1/α`.
    pub reference_alpha: f64,
    /// `-4·exp(2ψ(1) - 4π𝛂)` with `ψ(1) = -γ`.
    pub reference_value: f64,
    pub relative_difference: f64,
    pub note: &'static str,
}

pub const SCATTERING_LENGTH_NOTE: &str =
    "reference coupling is the reciprocal of alpha; (-2*pi*alpha_ref)^-1 is the scattering length";

pub fn aghh_check(alpha: f64) -> Result<AghhComparison, SpectrumError> {
    let params = PhysicalParams::new(1.0, 0.5, alpha, 1.0)?;
    let c_spectrum_value = closed_form_energy(&params);
    let reference_alpha = 1.0 / alpha;
    let digamma_one = -EULER_GAMMA;
    let reference_value = -4.0 * (2.0 * digamma_one - 4.0 * PI * reference_alpha).exp();
    let relative_difference = ((c_spectrum_value - reference_value) / reference_value).abs();
    Ok(AghhComparison {
        alpha,
        c_spectrum_value,
        reference_alpha,
        reference_value,
        relative_difference,
        note: SCATTERING_LENGTH_NOTE,
    })
}
