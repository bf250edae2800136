//! Distribution expressions on the plane and their rewrite system.
//!
//! An expression is a finite linear combination of
//!
//! | node                 | meaning                         | text              |
//! |----------------------|---------------------------------|-------------------|
//! | `Delta`              | `δ` at the origin               | `delta`           |
//! | `LogRadial`          | `log|x|`                        | `log_r`           |
//! | `LogRadialScaled(L)` | `log(|x|/L)`                    | `log_r_over(L)`   |
//! | `K0Radial(a)`        | `K0(a|x|)`                      | `K0(a*r)`         |
//! | `Psi(b)`             | `(b/√π)·K0(b|x|)`               | `psi(b)`          |
//! | `Product(f)`         | `f·δ` for a regular factor `f`  | `K0(2*r)*delta`   |
//! | `Laplacian(e)`       | distributional `Δe`             | `lap(e)`          |
//! | `ScaleArg(s, e)`     | `e(s·x)`                        | `scale(s, e)`     |
//!
//! combined with sums and real scalar multiples. The rewrite rules in
//! [`rules`] remove `ScaleArg`, `Laplacian` and `Product` nodes; what is
//! left is collected into a [`Canonical`] linear form.

mod canonical;
pub mod generate;
mod hamiltonian;
mod parse;
mod rewrite;
pub mod rules;
pub mod units;

use std::fmt;

use thiserror::Error;

pub use canonical::{Atom, Canonical};
pub use hamiltonian::{
    apply_hamiltonian, weak_pair_expr, weak_pair_expr_with_scale, HamiltonianForm,
};
pub use parse::{parse_expr, ParseError};
pub use rewrite::{
    laplacian_expr, normalize, rewrite_singular_products, scale_expr, RewriteTrace, Rewriter,
    Strategy, TraceStep,
};
pub use rules::Rule;

use crate::quad::QuadError;
use units::DimensionError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("{0}")]
    Constraint(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("no rule rewrites the Laplacian of `{0}`")]
    UnsupportedLaplacian(String),
    #[error("singular product `{0}` needs a length scale L to be rewritten")]
    MissingLengthScale(String),
    #[error("`{0}` depends on the length scale L and cannot be rescaled on its own")]
    AnomalousScaling(String),
    #[error("expression is not in canonical form: `{0}` remains")]
    NotCanonical(String),
    #[error("rewriting did not terminate after {0} steps")]
    NoTermination(usize),
    #[error(transparent)]
    Dimension(#[from] DimensionError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

/// Regular radial factor of a `Product` with `δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegularPart {
    Log,
    LogScaled(f64),
    K0(f64),
    Psi(f64),
}

impl RegularPart {
    pub fn to_expr(self) -> DistExpr {
        match self {
            RegularPart::Log => DistExpr::LogRadial,
            RegularPart::LogScaled(l) => DistExpr::LogRadialScaled(l),
            RegularPart::K0(a) => DistExpr::K0Radial(a),
            RegularPart::Psi(b) => DistExpr::Psi(b),
        }
    }

    /// The regular part of a node, if it is one.
    pub fn from_expr(e: &DistExpr) -> Option<Self> {
        match *e {
            DistExpr::LogRadial => Some(RegularPart::Log),
            DistExpr::LogRadialScaled(l) => Some(RegularPart::LogScaled(l)),
            DistExpr::K0Radial(a) => Some(RegularPart::K0(a)),
            DistExpr::Psi(b) => Some(RegularPart::Psi(b)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DistExpr {
    Delta,
    K0Radial(f64),
    LogRadial,
    LogRadialScaled(f64),
    Psi(f64),
    Product(RegularPart),
    Laplacian(Box<DistExpr>),
    ScaleArg(f64, Box<DistExpr>),
    Sum(Vec<DistExpr>),
    ScalarMul(f64, Box<DistExpr>),
}

fn positive(name: &str, v: f64) -> Result<f64, ExprError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(ExprError::Constraint(format!("{name} must be positive, got {v}")))
    }
}

fn nonzero(name: &str, v: f64) -> Result<f64, ExprError> {
    if v != 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(ExprError::Constraint(format!("{name} must be nonzero, got {v}")))
    }
}

impl DistExpr {
    pub fn k0(a: f64) -> Result<Self, ExprError> {
        Ok(DistExpr::K0Radial(positive("K0 coefficient a", a)?))
    }

    pub fn psi(b: f64) -> Result<Self, ExprError> {
        Ok(DistExpr::Psi(positive("psi decay rate b", b)?))
    }

    pub fn log_over(l: f64) -> Result<Self, ExprError> {
        Ok(DistExpr::LogRadialScaled(nonzero("log length scale L", l)?))
    }

    /// `f·δ`; `factor` must be a regular radial node.
    pub fn product(factor: &DistExpr) -> Result<Self, ExprError> {
        RegularPart::from_expr(factor).map(DistExpr::Product).ok_or_else(|| {
            ExprError::Constraint(format!(
                "only a regular radial factor can multiply delta, got `{factor}`"
            ))
        })
    }

    pub fn lap(e: DistExpr) -> Self {
        DistExpr::Laplacian(Box::new(e))
    }

    pub fn scaled(s: f64, e: DistExpr) -> Result<Self, ExprError> {
        Ok(DistExpr::ScaleArg(nonzero("scale factor s", s)?, Box::new(e)))
    }

    pub fn times(c: f64, e: DistExpr) -> Result<Self, ExprError> {
        if !c.is_finite() {
            return Err(ExprError::Constraint(format!("coefficient must be finite, got {c}")));
        }
        Ok(DistExpr::ScalarMul(c, Box::new(e)))
    }

    /// The zero distribution, written `0·δ`.
    pub fn zero() -> Self {
        DistExpr::ScalarMul(0.0, Box::new(DistExpr::Delta))
    }

    /// Checks every parameter constraint in the tree.
    pub fn validate(&self) -> Result<(), ExprError> {
        match self {
            DistExpr::Delta | DistExpr::LogRadial => Ok(()),
            DistExpr::K0Radial(a) => positive("K0 coefficient a", *a).map(|_| ()),
            DistExpr::Psi(b) => positive("psi decay rate b", *b).map(|_| ()),
            DistExpr::LogRadialScaled(l) => nonzero("log length scale L", *l).map(|_| ()),
            DistExpr::Product(part) => part.to_expr().validate(),
            DistExpr::Laplacian(e) => e.validate(),
            DistExpr::ScaleArg(s, e) => {
                nonzero("scale factor s", *s)?;
                e.validate()
            }
            DistExpr::Sum(terms) => terms.iter().try_for_each(DistExpr::validate),
            DistExpr::ScalarMul(c, e) => {
                if !c.is_finite() {
                    return Err(ExprError::Constraint(format!("coefficient must be finite, got {c}")));
                }
                e.validate()
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            DistExpr::Laplacian(e) | DistExpr::ScaleArg(_, e) | DistExpr::ScalarMul(_, e) => {
                1 + e.size()
            }
            DistExpr::Sum(terms) => 1 + terms.iter().map(DistExpr::size).sum::<usize>(),
            _ => 1,
        }
    }

    pub fn contains(&self, pred: &dyn Fn(&DistExpr) -> bool) -> bool {
        if pred(self) {
            return true;
        }
        match self {
            DistExpr::Laplacian(e) | DistExpr::ScaleArg(_, e) | DistExpr::ScalarMul(_, e) => {
                e.contains(pred)
            }
            DistExpr::Sum(terms) => terms.iter().any(|t| t.contains(pred)),
            _ => false,
        }
    }
}

impl std::ops::Add for DistExpr {
    type Output = DistExpr;

    fn add(self, rhs: DistExpr) -> DistExpr {
        DistExpr::Sum(vec![self, rhs])
    }
}

impl fmt::Display for RegularPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_expr().fmt(f)
    }
}

impl fmt::Display for DistExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistExpr::Delta => write!(f, "delta"),
            DistExpr::LogRadial => write!(f, "log_r"),
            DistExpr::LogRadialScaled(l) => write!(f, "log_r_over({l})"),
            DistExpr::K0Radial(a) => write!(f, "K0({a}*r)"),
            DistExpr::Psi(b) => write!(f, "psi({b})"),
            DistExpr::Product(part) => write!(f, "{part}*delta"),
            DistExpr::Laplacian(e) => write!(f, "lap({e})"),
            DistExpr::ScaleArg(s, e) => write!(f, "scale({s}, {e})"),
            DistExpr::ScalarMul(c, e) => write_scalar_mul(f, *c, e),
            DistExpr::Sum(terms) => {
                for (i, term) in terms.iter().enumerate() {
                    match term {
                        DistExpr::ScalarMul(c, e) if i > 0 && c.is_sign_negative() => {
                            write!(f, " - ")?;
                            write_scalar_mul(f, -c, e)?;
                        }
                        DistExpr::Sum(_) => {
                            if i > 0 {
                                write!(f, " + ")?;
                            }
                            write!(f, "({term})")?;
                        }
                        _ => {
                            if i > 0 {
                                write!(f, " + ")?;
                            }
                            write!(f, "{term}")?;
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

fn write_scalar_mul(f: &mut fmt::Formatter<'_>, c: f64, e: &DistExpr) -> fmt::Result {
    match e {
        DistExpr::Sum(_) => write!(f, "{c}*({e})"),
        _ => write!(f, "{c}*{e}"),
    }
}
