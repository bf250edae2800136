//! Check suites shared by the command-line `verify` command and the
//! acceptance tests.
//!
//! Each check yields one or more [`CheckRow`]s. Checks run in parallel but
//! rows are reported in a fixed order, so a report is a pure function of
//! the suite name.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::dexpr::generate::corpus;
use crate::dexpr::{
    apply_hamiltonian, normalize, parse_expr, scale_expr, weak_pair_expr, DistExpr, ExprError,
};
use crate::quad::{
    fit_log_divergence, integrate_radial, pair_mollified_product, pair_regular, MollifierFamily,
    Profile, TestSide,
};
use crate::specfun::k0;
use crate::spectrum::{solve_eeq, PhysicalParams};
use crate::testfn::BumpFunction;

pub const SCHEMA_VERSION: u32 = 1;

/// Seed of the generated expression corpus.
pub const CORPUS_SEED: u64 = 20_240_601;
pub const CORPUS_SIZE: usize = 100;
pub const CORPUS_DEPTH: u32 = 4;
pub const PSI_RATES: [f64; 3] = [0.5, 1.0, 2.0];
pub const CONFLUENCE_SEEDS: [u64; 3] = [1, 2, 3];
pub const CONFLUENCE_LENGTH: f64 = 1.5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub reference: String,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRow {
    pub fn new(
        name: impl Into<String>,
        reference: impl Into<String>,
        measured: f64,
        expected: f64,
        tolerance: f64,
    ) -> Self {
        let pass = measured.is_finite() && (measured - expected).abs() <= tolerance;
        Self {
            name: name.into(),
            reference: reference.into(),
            measured,
            expected,
            tolerance,
            pass,
            detail: None,
        }
    }

    pub fn failed(
        name: impl Into<String>,
        reference: impl Into<String>,
        expected: f64,
        tolerance: f64,
        error: impl fmt::Display,
    ) -> Self {
        Self {
            detail: Some(error.to_string()),
            ..Self::new(name, reference, f64::NAN, expected, tolerance)
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub rows: Vec<CheckRow>,
    pub summary: Summary,
}

impl RunReport {
    pub fn new(command: impl Into<String>, rows: Vec<CheckRow>) -> Self {
        let passed = rows.iter().filter(|r| r.pass).count();
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            summary: Summary {
                total: rows.len(),
                passed,
                failed: rows.len() - passed,
            },
            rows,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Rewrite,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Rewrite => "rewrite",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "identities" => Ok(Suite::Identities),
            "rewrite" => Ok(Suite::Rewrite),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite `{other}` (expected identities, rewrite or all)")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

type Check = Box<dyn Fn() -> Vec<CheckRow> + Send + Sync>;

fn run_checks(checks: Vec<Check>) -> Vec<CheckRow> {
    checks
        .par_iter()
        .map(|c| c())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

pub fn run_suite(suite: Suite) -> RunReport {
    let rows = match suite {
        Suite::Identities => run_checks(identity_checks()),
        Suite::Rewrite => run_checks(rewrite_checks()),
        Suite::All => {
            let mut checks = identity_checks();
            checks.extend(rewrite_checks());
            run_checks(checks)
        }
    };
    RunReport::new(format!("verify --suite {}", suite.name()), rows)
}

fn phi_label(phi: &BumpFunction) -> String {
    let c = phi.center();
    format!("A={},R={},c=({},{})", phi.amplitude(), phi.radius(), c[0], c[1])
}

fn psi(b: f64) -> impl Fn(f64) -> f64 {
    move |r: f64| b / PI.sqrt() * k0(b * r).unwrap_or(f64::NAN)
}

pub fn fundamental_solution_row(phi: &BumpFunction) -> CheckRow {
    let name = format!("fundamental_solution[{}]", phi_label(phi));
    let reference = "⟨log|x|, Δφ⟩ = 2π·φ(0)";
    let expected = TAU * phi.at_origin();
    let tol = 1e-8 * phi.at_origin().abs().max(1.0);
    match pair_regular(f64::ln, phi, TestSide::Laplacian) {
        Ok(rep) => CheckRow::new(name, reference, rep.value, expected, tol),
        Err(e) => CheckRow::failed(name, reference, expected, tol, e),
    }
}

pub fn normalization_row(b: f64) -> CheckRow {
    let name = format!("normalization[b={b}]");
    let reference = "‖ψ_b‖² = 1";
    let f = psi(b);
    match integrate_radial(|r| f(r).powi(2), 40.0 / b) {
        Ok(rep) => CheckRow::new(name, reference, rep.value, 1.0, 1e-8),
        Err(e) => CheckRow::failed(name, reference, 1.0, 1e-8, e),
    }
}

/// `⟨ψ_b, Δφ⟩ − b²⟨ψ_b, φ⟩` against `−2√π·b·φ(0)`.
pub fn weak_laplacian_row(b: f64, phi: &BumpFunction) -> CheckRow {
    let name = format!("weak_laplacian_psi[b={b},{}]", phi_label(phi));
    let reference = "⟨ψ_b, Δφ⟩ − b²⟨ψ_b, φ⟩ = −2√π·b·φ(0)";
    let expected = -2.0 * PI.sqrt() * b * phi.at_origin();
    let measured = pair_regular(psi(b), phi, TestSide::Laplacian)
        .and_then(|lap| Ok(lap.value - b * b * pair_regular(psi(b), phi, TestSide::Value)?.value));
    match measured {
        Ok(v) => CheckRow::new(name, reference, v, expected, 1e-6),
        Err(e) => CheckRow::failed(name, reference, expected, 1e-6, e),
    }
}

/// Numeric `⟨ψ_b, Δφ⟩` against the canonical form of `lap(psi(b))` paired with `φ`.
pub fn symbolic_laplacian_row(b: f64, phi: &BumpFunction) -> CheckRow {
    let name = format!("symbolic_vs_numeric_laplacian[b={b},{}]", phi_label(phi));
    let reference = "Δψ_b = b²·ψ_b − 2√π·b·δ";
    let symbolic = weak_pair_expr(&DistExpr::lap(DistExpr::Psi(b)), phi);
    let numeric = pair_regular(psi(b), phi, TestSide::Laplacian);
    match (symbolic, numeric) {
        (Ok(s), Ok(n)) => CheckRow::new(name, reference, n.value, s.value, 1e-6),
        (Err(e), _) => CheckRow::failed(name, reference, f64::NAN, 1e-6, e),
        (_, Err(e)) => CheckRow::failed(name, reference, f64::NAN, 1e-6, e),
    }
}

/// `⟨Hψ_{b*}, φ⟩` with the kinetic part by quadrature and the potential part
/// by the product rule, against `E·⟨ψ_{b*}, φ⟩`.
pub fn eigenvalue_row(params: &PhysicalParams, phi: &BumpFunction) -> CheckRow {
    let name = format!(
        "eigenvalue[hbar={},m={},alpha={},L={},{}]",
        params.hbar(),
        params.mass(),
        params.alpha(),
        params.length_scale(),
        phi_label(phi)
    );
    let reference = "⟨Hψ_b*, φ⟩ = E·⟨ψ_b*, φ⟩";
    let run = || -> Result<(f64, f64, f64), String> {
        let state = solve_eeq(params).map_err(|e| e.to_string())?;
        let b = state.b;
        let form = apply_hamiltonian(b, params).map_err(|e| e.to_string())?;
        let (potential, _) = normalize(
            &DistExpr::times(-params.alpha(), DistExpr::product(&DistExpr::Psi(b)).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?,
            Some(params.length_scale()),
        )
        .map_err(|e| e.to_string())?;
        let kinetic = -params.hbar().powi(2) / (2.0 * params.mass());
        let lap = pair_regular(psi(b), phi, TestSide::Laplacian).map_err(|e| e.to_string())?;
        let value = pair_regular(psi(b), phi, TestSide::Value).map_err(|e| e.to_string())?;
        let h_pair = kinetic * lap.value + potential.delta_coefficient() * phi.at_origin();
        debug_assert!((form.psi_coefficient - state.energy).abs() <= 1e-12 * state.energy.abs());
        Ok((h_pair, state.energy * value.value, state.energy))
    };
    match run() {
        Ok((measured, expected, energy)) => {
            CheckRow::new(name, reference, measured, expected, 1e-6 * energy.abs())
        }
        Err(e) => CheckRow::failed(name, reference, f64::NAN, f64::NAN, e),
    }
}

/// Fitted slope of `⟨log|x|·δ_ε, φ⟩` against `ln ε`, which should be `φ(0)`.
pub fn log_slope_row(profile: Profile, phi: &BumpFunction) -> CheckRow {
    let name = format!("log_divergence_slope[{},{}]", profile.name(), phi_label(phi));
    let reference = "⟨log|x|·δ_ε, φ⟩ ≈ φ(0)·(log ε + c_η)";
    let expected = phi.at_origin();
    let tol = 0.01 * expected.abs();
    let family = MollifierFamily::with_default_epsilons(profile);
    let fit = pair_mollified_product(f64::ln, &family, phi)
        .and_then(|data| fit_log_divergence(&data, phi.at_origin(), None));
    match fit {
        Ok(f) => CheckRow::new(name, reference, f.slope, expected, tol),
        Err(e) => CheckRow::failed(name, reference, expected, tol, e),
    }
}

/// Mollified products vanish when the support of `φ` misses the origin.
pub fn mollified_support_row(profile: Profile, phi: &BumpFunction) -> CheckRow {
    let name = format!("mollified_support[{},{}]", profile.name(), phi_label(phi));
    let reference = "⟨f·δ_ε, φ⟩ = 0 when 0 ∉ supp φ";
    let family = MollifierFamily::with_default_epsilons(profile);
    match pair_mollified_product(f64::ln, &family, phi) {
        Ok(data) => {
            let worst = data.iter().map(|&(_, v)| v.abs()).fold(0.0, f64::max);
            CheckRow::new(name, reference, worst, 0.0, 0.0)
        }
        Err(e) => CheckRow::failed(name, reference, 0.0, 0.0, e),
    }
}

/// Largest relative spread of the fitted `K0(a|x|)·δ_ε` scale constant
/// across bump radii {0.5, 1, 2}.
pub fn k0_scale_agreement_row(profile: Profile, a: f64) -> CheckRow {
    let name = format!("k0_scale_constant_agreement[{},a={a}]", profile.name());
    let reference = "⟨K0(a|x|)·δ_ε, φ⟩ ≈ −φ(0)·log(½e^γ·a·ε/c), c independent of φ";
    let family = MollifierFamily::with_default_epsilons(profile);
    let constants: Result<Vec<f64>, _> = [0.5, 1.0, 2.0]
        .iter()
        .map(|&radius| {
            let phi = BumpFunction::centered(1.0, radius)?;
            let data = pair_mollified_product(|r| k0(a * r).unwrap_or(f64::NAN), &family, &phi)?;
            Ok::<f64, crate::quad::QuadError>(
                fit_log_divergence(&data, phi.at_origin(), Some(a))?.effective_scale_constant,
            )
        })
        .collect();
    match constants {
        Ok(cs) => {
            let spread = cs.iter().map(|c| (c - cs[0]).abs() / cs[0]).fold(0.0, f64::max);
            CheckRow::new(name, reference, spread, 0.0, 0.01)
                .with_detail(format!("scale constants {cs:?}"))
        }
        Err(e) => CheckRow::failed(name, reference, 0.0, 0.01, e),
    }
}

fn identity_checks() -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    for phi in BumpFunction::suite() {
        checks.push(Box::new(move || vec![fundamental_solution_row(&phi)]));
    }
    for b in PSI_RATES {
        checks.push(Box::new(move || vec![normalization_row(b)]));
    }
    for b in PSI_RATES {
        for phi in BumpFunction::suite() {
            checks.push(Box::new(move || {
                vec![weak_laplacian_row(b, &phi), symbolic_laplacian_row(b, &phi)]
            }));
        }
    }
    let param_sets = [(1.0, 1.0, 1.0, 1.0), (1.0, 0.5, 4.0 * PI, -1.0)];
    for (hbar, mass, alpha, l) in param_sets {
        for phi in BumpFunction::suite() {
            checks.push(Box::new(move || {
                let params = PhysicalParams::new(hbar, mass, alpha, l).expect("valid parameters");
                vec![eigenvalue_row(&params, &phi)]
            }));
        }
    }
    for profile in [Profile::Gaussian, Profile::Bump] {
        for phi in BumpFunction::suite() {
            if phi.at_origin() != 0.0 {
                checks.push(Box::new(move || vec![log_slope_row(profile, &phi)]));
            } else {
                checks.push(Box::new(move || vec![mollified_support_row(profile, &phi)]));
            }
        }
        checks.push(Box::new(move || vec![k0_scale_agreement_row(profile, 1.0)]));
    }
    checks
}

/// Number of corpus expressions whose printed form does not parse back
/// to the same tree.
pub fn round_trip_failures(exprs: &[DistExpr]) -> Vec<String> {
    exprs
        .iter()
        .filter_map(|e| {
            let text = e.to_string();
            let first = match parse_expr(&text) {
                Ok(p) => p,
                Err(err) => return Some(format!("{text}: {err}")),
            };
            match parse_expr(&first.to_string()) {
                Ok(second) if second == first => None,
                Ok(second) => Some(format!("{text} reparsed as {second}")),
                Err(err) => Some(format!("{first}: {err}")),
            }
        })
        .collect()
}

fn same_outcome(
    a: &Result<crate::dexpr::Canonical, ExprError>,
    b: &Result<crate::dexpr::Canonical, ExprError>,
    tol: f64,
) -> bool {
    match (a, b) {
        (Ok(x), Ok(y)) => x.approx_eq(y, tol),
        (Err(x), Err(y)) => std::mem::discriminant(x) == std::mem::discriminant(y),
        _ => false,
    }
}

/// Expressions whose canonical form depends on the redex order.
pub fn confluence_failures(exprs: &[DistExpr], seeds: &[u64], length_scale: f64) -> Vec<String> {
    use crate::dexpr::{Rewriter, Strategy};
    exprs
        .par_iter()
        .filter_map(|e| {
            let run = |s: Strategy| {
                Rewriter::all_rules(Some(length_scale))
                    .with_strategy(s)
                    .run(e)
                    .and_then(|(out, _)| normalize(&out, Some(length_scale)).map(|(c, _)| c))
            };
            let reference = run(Strategy::Innermost);
            let others = std::iter::once(Strategy::Outermost).chain(seeds.iter().map(|&k| Strategy::Random(k)));
            for s in others {
                let got = run(s);
                if !same_outcome(&reference, &got, 1e-10) {
                    return Some(format!("{e}: {reference:?} vs {s:?} {got:?}"));
                }
            }
            None
        })
        .collect()
}

/// Pairs `(e₁, e₂)` for which `N(c₁e₁ + c₂e₂) ≠ c₁N(e₁) + c₂N(e₂)`.
pub fn linearity_failures(exprs: &[DistExpr], length_scale: f64) -> Vec<String> {
    let coefficients = [(2.0, -0.5), (-1.0, 3.0), (0.25, 1.0)];
    exprs
        .par_chunks(2)
        .enumerate()
        .filter_map(|(i, pair)| {
            let [e1, e2] = pair else { return None };
            let (c1, c2) = coefficients[i % coefficients.len()];
            let combined = DistExpr::Sum(vec![
                DistExpr::ScalarMul(c1, Box::new(e1.clone())),
                DistExpr::ScalarMul(c2, Box::new(e2.clone())),
            ]);
            let lhs = normalize(&combined, Some(length_scale)).map(|(c, _)| c);
            let rhs = normalize(e1, Some(length_scale)).and_then(|(n1, _)| {
                normalize(e2, Some(length_scale)).map(|(n2, _)| n1.scaled(c1).plus(&n2.scaled(c2)))
            });
            (!same_outcome(&lhs, &rhs, 1e-10)).then(|| format!("{c1}*({e1}) + {c2}*({e2})"))
        })
        .collect()
}

fn count_row(name: &str, reference: &str, failures: Vec<String>) -> CheckRow {
    let row = CheckRow::new(name, reference, failures.len() as f64, 0.0, 0.0);
    match failures.first() {
        Some(first) => row.with_detail(format!("first failure: {first}")),
        None => row,
    }
}

/// `s²·⟨scale_expr(e, s), φ(s·)⟩` against `⟨e, φ⟩`.
pub fn substitution_row(src: &str, s: f64, phi: &BumpFunction) -> CheckRow {
    let name = format!("scale_substitution[{src},s={s},{}]", phi_label(phi));
    let reference = "s²·⟨T(s·x), φ(s·x)⟩ = ⟨T, φ⟩";
    let run = || -> Result<(f64, f64), String> {
        let e = parse_expr(src).map_err(|e| e.to_string())?;
        let (scaled, _) = scale_expr(&e, s).map_err(|e| e.to_string())?;
        let phi_s = phi.rescale(s).map_err(|e| e.to_string())?;
        let lhs = s * s * weak_pair_expr(&scaled, &phi_s).map_err(|e| e.to_string())?.value;
        let rhs = weak_pair_expr(&e, phi).map_err(|e| e.to_string())?.value;
        Ok((lhs, rhs))
    };
    match run() {
        Ok((lhs, rhs)) => CheckRow::new(name, reference, lhs, rhs, 1e-8 * rhs.abs().max(1.0)),
        Err(e) => CheckRow::failed(name, reference, f64::NAN, 1e-8, e),
    }
}

/// `s²·⟨scale_expr(H, s), φ⟩` against `⟨H, φ⟩` for the operator terms
/// `−(ħ²/2m)·Δ log|x| − α·δ`, both homogeneous of degree −2.
pub fn hamiltonian_scale_row(params: &PhysicalParams, s: f64, phi: &BumpFunction) -> CheckRow {
    let name = format!("hamiltonian_scale_invariance[s={s},{}]", phi_label(phi));
    let reference = "s²·⟨H(s·x), φ⟩ = ⟨H, φ⟩";
    let run = || -> Result<(f64, f64), ExprError> {
        let kinetic = -params.hbar().powi(2) / (2.0 * params.mass());
        let h = DistExpr::Sum(vec![
            DistExpr::times(kinetic, DistExpr::lap(DistExpr::LogRadial))?,
            DistExpr::times(-params.alpha(), DistExpr::Delta)?,
        ]);
        let (scaled, _) = scale_expr(&h, s)?;
        Ok((s * s * weak_pair_expr(&scaled, phi)?.value, weak_pair_expr(&h, phi)?.value))
    };
    match run() {
        Ok((lhs, rhs)) => CheckRow::new(name, reference, lhs, rhs, 1e-8 * rhs.abs().max(1.0)),
        Err(e) => CheckRow::failed(name, reference, f64::NAN, 1e-8, e),
    }
}

fn rule_example_rows() -> Vec<CheckRow> {
    let gamma = crate::specfun::EULER_GAMMA;
    let delta_coef = |src: &str, l: Option<f64>| -> f64 {
        parse_expr(src)
            .map_err(ExprError::from)
            .and_then(|e| normalize(&e, l))
            .map(|(c, _)| c.delta_coefficient())
            .unwrap_or(f64::NAN)
    };
    let k0_root = 2.0 * (-gamma).exp() / 0.8;
    vec![
        CheckRow::new("rule[scale(2, delta)]", "δ(2x) = ¼·δ(x)", delta_coef("scale(2, delta)", None), 0.25, 0.0),
        CheckRow::new("rule[lap(log_r)]", "Δ log|x| = 2π·δ", delta_coef("lap(log_r)", None), TAU, 1e-15),
        CheckRow::new("rule[lap(K0(2*r))]", "Δ K0(a|x|) = a²·K0(a|x|) − 2π·δ", delta_coef("lap(K0(2*r))", None), -TAU, 1e-15),
        CheckRow::new("rule[log_r*delta]", "log|x|·δ = 0", delta_coef("log_r*delta", Some(1.0)), 0.0, 0.0),
        CheckRow::new(
            "rule[K0(1*r)*delta,L=1]",
            "K0(a|x|)·δ = −log(½e^γ·a·|L|)·δ",
            delta_coef("K0(1*r)*delta", Some(1.0)),
            -(0.5 * gamma.exp()).ln(),
            1e-15,
        ),
        CheckRow::new(
            "rule[K0(2e^-γ/L*r)*delta,L=0.8]",
            "K0(a|x|)·δ = 0 when ½e^γ·a·|L| = 1",
            delta_coef(&format!("K0({k0_root}*r)*delta"), Some(0.8)),
            0.0,
            1e-15,
        ),
    ]
}

fn rewrite_checks() -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    checks.push(Box::new(|| {
        let exprs = corpus(CORPUS_SEED, CORPUS_SIZE, CORPUS_DEPTH);
        vec![count_row(
            "parse_round_trip[corpus=100]",
            "parse(print(parse(s))) = parse(s)",
            round_trip_failures(&exprs),
        )]
    }));
    checks.push(Box::new(|| {
        let exprs = corpus(CORPUS_SEED, CORPUS_SIZE, CORPUS_DEPTH);
        vec![count_row(
            "confluence[corpus=100,orders=5]",
            "canonical form is independent of redex order",
            confluence_failures(&exprs, &CONFLUENCE_SEEDS, CONFLUENCE_LENGTH),
        )]
    }));
    checks.push(Box::new(|| {
        let exprs = corpus(CORPUS_SEED + 1, 2 * CORPUS_SIZE, CORPUS_DEPTH);
        vec![count_row(
            "linearity[pairs=100]",
            "N(c₁e₁ + c₂e₂) = c₁N(e₁) + c₂N(e₂)",
            linearity_failures(&exprs, CONFLUENCE_LENGTH),
        )]
    }));
    checks.push(Box::new(rule_example_rows));
    for s in [2.0, -0.5, 3.0] {
        for phi in [BumpFunction::centered(1.0, 1.0), BumpFunction::centered(2.0, 2.0)] {
            let phi = phi.expect("valid bump");
            checks.push(Box::new(move || {
                let params = PhysicalParams::new(1.0, 1.0, 1.0, 1.0).expect("valid parameters");
                vec![
                    substitution_row("psi(1) + 2*K0(1.5*r) - 0.5*lap(log_r) + delta", s, &phi),
                    substitution_row("log_r_over(2) + lap(psi(0.5))", s, &phi),
                    hamiltonian_scale_row(&params, s, &phi),
                ]
            }));
        }
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_matches_rows() {
        let rows = vec![
            CheckRow::new("a", "", 1.0, 1.0, 0.0),
            CheckRow::new("b", "", 1.0, 2.0, 0.5),
            CheckRow::failed("c", "", 0.0, 1.0, "boom"),
        ];
        let report = RunReport::new("x", rows);
        assert_eq!(report.summary, Summary { total: 3, passed: 1, failed: 2 });
        assert!(!report.all_passed());
        assert_eq!(report.schema_version, SCHEMA_VERSION);
    }

    #[test]
    fn suite_names() {
        for s in [Suite::Identities, Suite::Rewrite, Suite::All] {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nosuch".parse::<Suite>().is_err());
    }

    #[test]
    fn nan_never_passes() {
        assert!(!CheckRow::new("n", "", f64::NAN, f64::NAN, f64::INFINITY).pass);
    }
}
