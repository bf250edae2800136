//! The rewrite rules, one local rewrite per node shape.
//!
//! Every redex is a `ScaleArg`, `Laplacian` or `Product` node, and the rule
//! that fires is determined by the node and its immediate child. Scaled
//! products `K0(a|x|)·δ` and `ψ_b·δ` have no scaling rule: their value depends
//! on the length scale `L`, which a rescaling would have to move as well, so
//! they are only reduced after the product itself has been rewritten.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use super::units::anomalous_log;
use super::{DistExpr, ExprError, RegularPart};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleFamily {
    Scaling,
    Laplacian,
    SingularProduct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    ScaleDelta,
    ScaleLog,
    ScaleLogScaled,
    ScaleK0,
    ScalePsi,
    ScaleLaplacian,
    ScaleSum,
    ScaleScalar,
    ScaleCompose,
    ScaleLogProduct,
    LaplacianLog,
    LaplacianLogScaled,
    LaplacianK0,
    LaplacianPsi,
    LaplacianSum,
    LaplacianScalar,
    LogTimesDelta,
    LogScaledTimesDelta,
    K0TimesDelta,
    PsiTimesDelta,
}

impl Rule {
    pub const ALL: [Rule; 20] = [
        Rule::ScaleDelta,
        Rule::ScaleLog,
        Rule::ScaleLogScaled,
        Rule::ScaleK0,
        Rule::ScalePsi,
        Rule::ScaleLaplacian,
        Rule::ScaleSum,
        Rule::ScaleScalar,
        Rule::ScaleCompose,
        Rule::ScaleLogProduct,
        Rule::LaplacianLog,
        Rule::LaplacianLogScaled,
        Rule::LaplacianK0,
        Rule::LaplacianPsi,
        Rule::LaplacianSum,
        Rule::LaplacianScalar,
        Rule::LogTimesDelta,
        Rule::LogScaledTimesDelta,
        Rule::K0TimesDelta,
        Rule::PsiTimesDelta,
    ];

    pub fn family(self) -> RuleFamily {
        use Rule::*;
        match self {
            ScaleDelta | ScaleLog | ScaleLogScaled | ScaleK0 | ScalePsi | ScaleLaplacian
            | ScaleSum | ScaleScalar | ScaleCompose | ScaleLogProduct => RuleFamily::Scaling,
            LaplacianLog | LaplacianLogScaled | LaplacianK0 | LaplacianPsi | LaplacianSum
            | LaplacianScalar => RuleFamily::Laplacian,
            LogTimesDelta | LogScaledTimesDelta | K0TimesDelta | PsiTimesDelta => {
                RuleFamily::SingularProduct
            }
        }
    }

    pub fn name(self) -> &'static str {
        use Rule::*;
        match self {
            ScaleDelta => "scale_delta",
            ScaleLog => "scale_log",
            ScaleLogScaled => "scale_log_scaled",
            ScaleK0 => "scale_k0",
            ScalePsi => "scale_psi",
            ScaleLaplacian => "scale_laplacian",
            ScaleSum => "scale_sum",
            ScaleScalar => "scale_scalar",
            ScaleCompose => "scale_compose",
            ScaleLogProduct => "scale_log_product",
            LaplacianLog => "laplacian_log",
            LaplacianLogScaled => "laplacian_log_scaled",
            LaplacianK0 => "laplacian_k0",
            LaplacianPsi => "laplacian_psi",
            LaplacianSum => "laplacian_sum",
            LaplacianScalar => "laplacian_scalar",
            LogTimesDelta => "log_times_delta",
            LogScaledTimesDelta => "log_scaled_times_delta",
            K0TimesDelta => "k0_times_delta",
            PsiTimesDelta => "psi_times_delta",
        }
    }

    /// The identity the rule implements.
    pub fn identity(self) -> &'static str {
        use Rule::*;
        match self {
            ScaleDelta => "δ(s·x) = s⁻²·δ(x)",
            ScaleLog => "log|s·x| = log(|x|/|s|⁻¹)",
            ScaleLogScaled => "log(|s·x|/L) = log(|x|/(L/|s|))",
            ScaleK0 => "K0(a|s·x|) = K0(a|s|·|x|)",
            ScalePsi => "ψ_b(s·x) = |s|⁻¹·ψ_{b|s|}(x)",
            ScaleLaplacian => "(ΔT)(s·x) = s⁻²·Δ[T(s·x)]",
            ScaleSum => "(T + U)(s·x) = T(s·x) + U(s·x)",
            ScaleScalar => "(c·T)(s·x) = c·T(s·x)",
            ScaleCompose => "T(s·(t·x)) = T(st·x)",
            ScaleLogProduct => "(f·δ)(s·x) = s⁻²·f(s·x)·δ(x) for logarithmic f",
            LaplacianLog => "Δ log|x| = 2π·δ",
            LaplacianLogScaled => "Δ log(|x|/L) = 2π·δ",
            LaplacianK0 => "Δ K0(a|x|) = a²·K0(a|x|) − 2π·δ",
            LaplacianPsi => "Δψ_b = b²·ψ_b − 2√π·b·δ",
            LaplacianSum => "Δ(T + U) = ΔT + ΔU",
            LaplacianScalar => "Δ(c·T) = c·ΔT",
            LogTimesDelta => "log|x|·δ = 0",
            LogScaledTimesDelta => "log(|x|/L)·δ = 0",
            K0TimesDelta => "K0(a|x|)·δ = −log(½e^γ·a·|L|)·δ",
            PsiTimesDelta => "ψ_b·δ = −(b/√π)·log(½e^γ·b·|L|)·δ",
        }
    }
}

/// Which rule families are active, and the length scale for products.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleSet {
    pub scaling: bool,
    pub laplacian: bool,
    pub singular: bool,
    pub length_scale: Option<f64>,
}

impl RuleSet {
    pub fn all(length_scale: Option<f64>) -> Self {
        Self {
            scaling: true,
            laplacian: true,
            singular: true,
            length_scale,
        }
    }

    pub fn only(family: RuleFamily, length_scale: Option<f64>) -> Self {
        Self {
            scaling: family == RuleFamily::Scaling,
            laplacian: family == RuleFamily::Laplacian,
            singular: family == RuleFamily::SingularProduct,
            length_scale,
        }
    }

    pub fn enables(&self, family: RuleFamily) -> bool {
        match family {
            RuleFamily::Scaling => self.scaling,
            RuleFamily::Laplacian => self.laplacian,
            RuleFamily::SingularProduct => self.singular,
        }
    }
}

fn mul(c: f64, e: DistExpr) -> DistExpr {
    DistExpr::ScalarMul(c, Box::new(e))
}

fn scale(s: f64, e: DistExpr) -> DistExpr {
    DistExpr::ScaleArg(s, Box::new(e))
}

fn lap(e: DistExpr) -> DistExpr {
    DistExpr::Laplacian(Box::new(e))
}

/// The rule matching `node` (if any is enabled) and the rewritten node.
pub(crate) fn rewrite_node(
    node: &DistExpr,
    rules: &RuleSet,
) -> Result<Option<(Rule, DistExpr)>, ExprError> {
    let found = match node {
        DistExpr::ScaleArg(s, child) => scaling(*s, child),
        DistExpr::Laplacian(child) => laplacian(child),
        DistExpr::Product(part) => return singular(*part, rules),
        _ => None,
    };
    Ok(found.filter(|(rule, _)| rules.enables(rule.family())))
}

fn scaling(s: f64, child: &DistExpr) -> Option<(Rule, DistExpr)> {
    let abs = s.abs();
    let out = match child {
        DistExpr::Delta => (Rule::ScaleDelta, mul(1.0 / (s * s), DistExpr::Delta)),
        DistExpr::LogRadial => (Rule::ScaleLog, DistExpr::LogRadialScaled(1.0 / abs)),
        DistExpr::LogRadialScaled(l) => (Rule::ScaleLogScaled, DistExpr::LogRadialScaled(l / abs)),
        DistExpr::K0Radial(a) => (Rule::ScaleK0, DistExpr::K0Radial(a * abs)),
        DistExpr::Psi(b) => (Rule::ScalePsi, mul(1.0 / abs, DistExpr::Psi(b * abs))),
        DistExpr::Laplacian(inner) => (
            Rule::ScaleLaplacian,
            mul(1.0 / (s * s), lap(scale(s, (**inner).clone()))),
        ),
        DistExpr::Sum(terms) => (
            Rule::ScaleSum,
            DistExpr::Sum(terms.iter().map(|t| scale(s, t.clone())).collect()),
        ),
        DistExpr::ScalarMul(c, inner) => (Rule::ScaleScalar, mul(*c, scale(s, (**inner).clone()))),
        DistExpr::ScaleArg(t, inner) => (Rule::ScaleCompose, scale(s * t, (**inner).clone())),
        DistExpr::Product(RegularPart::Log) => (
            Rule::ScaleLogProduct,
            mul(1.0 / (s * s), DistExpr::Product(RegularPart::LogScaled(1.0 / abs))),
        ),
        DistExpr::Product(RegularPart::LogScaled(l)) => (
            Rule::ScaleLogProduct,
            mul(1.0 / (s * s), DistExpr::Product(RegularPart::LogScaled(l / abs))),
        ),
        DistExpr::Product(RegularPart::K0(_) | RegularPart::Psi(_)) => return None,
    };
    Some(out)
}

fn laplacian(child: &DistExpr) -> Option<(Rule, DistExpr)> {
    let out = match child {
        DistExpr::LogRadial => (Rule::LaplacianLog, mul(TAU, DistExpr::Delta)),
        DistExpr::LogRadialScaled(_) => (Rule::LaplacianLogScaled, mul(TAU, DistExpr::Delta)),
        DistExpr::K0Radial(a) => (
            Rule::LaplacianK0,
            DistExpr::Sum(vec![mul(a * a, DistExpr::K0Radial(*a)), mul(-TAU, DistExpr::Delta)]),
        ),
        DistExpr::Psi(b) => (
            Rule::LaplacianPsi,
            DistExpr::Sum(vec![
                mul(b * b, DistExpr::Psi(*b)),
                mul(-2.0 * PI.sqrt() * b, DistExpr::Delta),
            ]),
        ),
        DistExpr::Sum(terms) => (
            Rule::LaplacianSum,
            DistExpr::Sum(terms.iter().map(|t| lap(t.clone())).collect()),
        ),
        DistExpr::ScalarMul(c, inner) => (Rule::LaplacianScalar, mul(*c, lap((**inner).clone()))),
        _ => return None,
    };
    Some(out)
}

fn singular(part: RegularPart, rules: &RuleSet) -> Result<Option<(Rule, DistExpr)>, ExprError> {
    if !rules.singular {
        return Ok(None);
    }
    let out = match (part, rules.length_scale) {
        (RegularPart::Log, _) => (Rule::LogTimesDelta, DistExpr::zero()),
        (RegularPart::LogScaled(_), _) => (Rule::LogScaledTimesDelta, DistExpr::zero()),
        (RegularPart::K0(a), Some(l)) => (Rule::K0TimesDelta, mul(anomalous_log(a, l)?, DistExpr::Delta)),
        (RegularPart::Psi(b), Some(l)) => (
            Rule::PsiTimesDelta,
            mul(b / PI.sqrt() * anomalous_log(b, l)?, DistExpr::Delta),
        ),
        (RegularPart::K0(_) | RegularPart::Psi(_), None) => return Ok(None),
    };
    Ok(Some(out))
}
