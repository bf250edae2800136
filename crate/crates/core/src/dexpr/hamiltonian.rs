use serde::Serialize;

use super::canonical::Canonical;
use super::rewrite::{laplacian_expr, normalize, rewrite_singular_products, RewriteTrace};
use super::{DistExpr, ExprError, RegularPart};
use crate::quad::PairingReport;
use crate::spectrum::PhysicalParams;
use crate::testfn::BumpFunction;

pub(crate) const DELTA_COEFFICIENT_NOTE: &str = "Δψ_b carries the δ coefficient −2√π·b; \
     the alternative grouping ħ²b/(m√π) for the δ term of Hψ_b contradicts the bound-state \
     condition ħ²π/m + α·log(½e^γ·b·|L|) = 0 and the weak-Laplacian quadrature, and is not used";

/// `Hψ_b` before and after rewriting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HamiltonianForm {
    pub b: f64,
    /// `−(ħ²/2m)·Δψ_b − α·ψ_b·δ` as built.
    #[serde(serialize_with = "as_text")]
    pub expr: DistExpr,
    pub canonical: Canonical,
    /// `E = −ħ²b²/(2m)`.
    pub psi_coefficient: f64,
    /// `(b/√π)·[ħ²π/m + α·log(½e^γ·b·|L|)]`.
    pub delta_coefficient: f64,
    pub trace: RewriteTrace,
}

fn as_text<S: serde::Serializer>(e: &DistExpr, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(e)
}

/// Builds `Hψ_b` and rewrites it to `E·ψ_b + c_δ(b)·δ`.
pub fn apply_hamiltonian(b: f64, params: &PhysicalParams) -> Result<HamiltonianForm, ExprError> {
    let psi = DistExpr::psi(b)?;
    let kinetic = -params.hbar() * params.hbar() / (2.0 * params.mass());
    let expr = DistExpr::Sum(vec![
        DistExpr::times(kinetic, DistExpr::lap(psi))?,
        DistExpr::times(-params.alpha(), DistExpr::Product(RegularPart::Psi(b)))?,
    ]);
    let (after_lap, mut trace) = laplacian_expr(&expr)?;
    let (after_products, more) = rewrite_singular_products(&after_lap, params.length_scale())?;
    trace.extend(more);
    trace.note(DELTA_COEFFICIENT_NOTE);
    let canonical = Canonical::from_expr(&after_products)?;
    Ok(HamiltonianForm {
        b,
        expr,
        psi_coefficient: canonical.psi_coefficient(b),
        delta_coefficient: canonical.delta_coefficient(),
        canonical,
        trace,
    })
}

/// `⟨e, φ⟩` for an expression without length-dependent products.
pub fn weak_pair_expr(e: &DistExpr, phi: &BumpFunction) -> Result<PairingReport, ExprError> {
    weak_pair_expr_with_scale(e, phi, None)
}

/// `⟨e, φ⟩` after normalizing with length scale `L` (if given).
pub fn weak_pair_expr_with_scale(
    e: &DistExpr,
    phi: &BumpFunction,
    length_scale: Option<f64>,
) -> Result<PairingReport, ExprError> {
    let (canonical, _) = normalize(e, length_scale)?;
    Ok(canonical.pair(phi)?)
}
