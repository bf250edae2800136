use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use super::{DistExpr, ExprError};
use crate::quad::{pair_delta, pair_regular, PairingReport, QuadError, TestSide};
use crate::specfun::k0;
use crate::testfn::BumpFunction;

// Parameters closer than this (relative) name the same atom.
const PARAM_RTOL: f64 = 1e-12;

/// Basis distributions of the canonical form. `K0(a|x|)` is stored as
/// `(√π/a)·ψ_a`, and `log(|x|/L)` depends on `|L|` only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "param", rename_all = "snake_case")]
pub enum Atom {
    Psi(f64),
    LogRadial,
    LogRadialScaled(f64),
    Delta,
}

impl Atom {
    fn rank(self) -> u8 {
        match self {
            Atom::Psi(_) => 0,
            Atom::LogRadial => 1,
            Atom::LogRadialScaled(_) => 2,
            Atom::Delta => 3,
        }
    }

    fn param(self) -> f64 {
        match self {
            Atom::Psi(p) | Atom::LogRadialScaled(p) => p,
            Atom::LogRadial | Atom::Delta => 0.0,
        }
    }

    fn same(self, other: Atom) -> bool {
        self.rank() == other.rank()
            && (self.param() - other.param()).abs()
                <= PARAM_RTOL * self.param().abs().max(other.param().abs())
    }

    fn order(a: &Atom, b: &Atom) -> Ordering {
        a.rank().cmp(&b.rank()).then(a.param().total_cmp(&b.param()))
    }

    pub fn to_expr(self) -> DistExpr {
        match self {
            Atom::Psi(b) => DistExpr::Psi(b),
            Atom::LogRadial => DistExpr::LogRadial,
            Atom::LogRadialScaled(l) => DistExpr::LogRadialScaled(l),
            Atom::Delta => DistExpr::Delta,
        }
    }

    /// `⟨atom, φ⟩` by quadrature, or exactly for `δ`.
    pub fn pair(self, phi: &BumpFunction) -> Result<PairingReport, QuadError> {
        match self {
            Atom::Psi(b) => pair_regular(
                |r: f64| b / PI.sqrt() * k0(b * r).unwrap_or(f64::NAN),
                phi,
                TestSide::Value,
            ),
            Atom::LogRadial => pair_regular(f64::ln, phi, TestSide::Value),
            Atom::LogRadialScaled(l) => pair_regular(|r: f64| (r / l).ln(), phi, TestSide::Value),
            Atom::Delta => Ok(PairingReport::exact(pair_delta(1.0, phi))),
        }
    }
}

/// A finite linear combination of [`Atom`]s, sorted, with equal atoms merged.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Canonical {
    terms: Vec<(Atom, f64)>,
}

impl Canonical {
    pub fn from_terms(terms: impl IntoIterator<Item = (Atom, f64)>) -> Self {
        let mut terms: Vec<(Atom, f64)> = terms
            .into_iter()
            .map(|(a, c)| match a {
                Atom::LogRadialScaled(l) => (Atom::LogRadialScaled(l.abs()), c),
                _ => (a, c),
            })
            .collect();
        terms.sort_by(|x, y| Atom::order(&x.0, &y.0));
        let mut merged: Vec<(Atom, f64)> = Vec::with_capacity(terms.len());
        for (atom, c) in terms {
            match merged.last_mut() {
                Some((last, acc)) if last.same(atom) => *acc += c,
                _ => merged.push((atom, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0.0);
        Self { terms: merged }
    }

    /// Collects an expression built only from atoms, sums and scalar multiples.
    pub fn from_expr(e: &DistExpr) -> Result<Self, ExprError> {
        let mut terms = Vec::new();
        accumulate(e, 1.0, &mut terms)?;
        Ok(Self::from_terms(terms))
    }

    pub fn terms(&self) -> &[(Atom, f64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, atom: Atom) -> f64 {
        self.terms
            .iter()
            .filter(|(a, _)| a.same(atom))
            .map(|&(_, c)| c)
            .sum()
    }

    pub fn delta_coefficient(&self) -> f64 {
        self.coefficient(Atom::Delta)
    }

    pub fn psi_coefficient(&self, b: f64) -> f64 {
        self.coefficient(Atom::Psi(b))
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::from_terms(self.terms.iter().map(|&(a, k)| (a, c * k)))
    }

    pub fn plus(&self, other: &Canonical) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).copied())
    }

    /// Coefficientwise comparison: every atom's coefficients differ by at
    /// most `tol·max(1, |c|)`.
    pub fn approx_eq(&self, other: &Canonical, tol: f64) -> bool {
        let mut all: Vec<(Atom, f64, f64)> = self
            .terms
            .iter()
            .map(|&(a, c)| (a, c, c.abs()))
            .chain(other.terms.iter().map(|&(a, c)| (a, -c, c.abs())))
            .collect();
        all.sort_by(|x, y| Atom::order(&x.0, &y.0));
        let mut groups: Vec<(Atom, f64, f64)> = Vec::new();
        for (atom, d, m) in all {
            match groups.last_mut() {
                Some((last, acc, mag)) if last.same(atom) => {
                    *acc += d;
                    *mag = mag.max(m);
                }
                _ => groups.push((atom, d, m)),
            }
        }
        groups.iter().all(|&(_, d, m)| d.abs() <= tol * m.max(1.0))
    }

    pub fn to_expr(&self) -> DistExpr {
        let mut parts: Vec<DistExpr> = self
            .terms
            .iter()
            .map(|&(a, c)| DistExpr::ScalarMul(c, Box::new(a.to_expr())))
            .collect();
        match parts.len() {
            0 => DistExpr::zero(),
            1 => parts.pop().expect("one term"),
            _ => DistExpr::Sum(parts),
        }
    }

    /// `⟨Σ cᵢ·atomᵢ, φ⟩`.
    pub fn pair(&self, phi: &BumpFunction) -> Result<PairingReport, QuadError> {
        let reports = self
            .terms
            .iter()
            .map(|&(a, _)| a.pair(phi))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PairingReport::linear_combination(
            self.terms.iter().map(|&(_, c)| c).zip(&reports),
        ))
    }
}

fn accumulate(e: &DistExpr, coef: f64, out: &mut Vec<(Atom, f64)>) -> Result<(), ExprError> {
    match e {
        DistExpr::Delta => out.push((Atom::Delta, coef)),
        DistExpr::Psi(b) => out.push((Atom::Psi(*b), coef)),
        DistExpr::K0Radial(a) => out.push((Atom::Psi(*a), coef * PI.sqrt() / a)),
        DistExpr::LogRadial => out.push((Atom::LogRadial, coef)),
        DistExpr::LogRadialScaled(l) => out.push((Atom::LogRadialScaled(*l), coef)),
        DistExpr::ScalarMul(c, inner) => accumulate(inner, coef * c, out)?,
        DistExpr::Sum(terms) => {
            for t in terms {
                accumulate(t, coef, out)?;
            }
        }
        other => return Err(ExprError::NotCanonical(other.to_string())),
    }
    Ok(())
}

impl fmt::Display for Canonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_expr().fmt(f)
    }
}
