use serde::Serialize;

use dirac2d::dexpr::{normalize, parse_expr, DistExpr, ExprError, RegularPart};
use dirac2d::quad::{
    fit_log_divergence, pair_mollified_product, MollifierFamily, Profile, QuadError,
};
use dirac2d::specfun::{k0, k0_log_form};
use dirac2d::spectrum::{aghh_check, closed_form_energy, solve_eeq, Coupling};
use dirac2d::testfn::make_bump;
use dirac2d::verify::CheckRow;

use crate::report::{opt_real, real, TableRow};

/// Failure that is the caller's fault (exit status 2).
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

const SPECTRUM_RTOL: f64 = 1e-12;
const AGHH_RTOL: f64 = 1e-14;

impl TableRow for CheckRow {
    const COLUMNS: &'static [&'static str] =
        &["pass", "name", "reference", "measured", "expected", "tolerance", "detail"];

    fn fields(&self) -> Vec<String> {
        vec![
            if self.pass { "PASS" } else { "FAIL" }.to_string(),
            self.name.clone(),
            self.reference.clone(),
            real(self.measured),
            real(self.expected),
            real(self.tolerance),
            self.detail.clone().unwrap_or_default(),
        ]
    }

    fn passed(&self) -> bool {
        self.pass
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    #[serde(rename = "L")]
    pub length_scale: f64,
    pub b: f64,
    pub e_rootfind: f64,
    pub e_closed_form: f64,
    pub rel_diff: f64,
    pub aghh_reference: Option<f64>,
    pub aghh_rel_diff: Option<f64>,
    pub pass: bool,
}

impl TableRow for SpectrumRow {
    const COLUMNS: &'static [&'static str] = &[
        "L",
        "b",
        "E_rootfind",
        "E_closed_form",
        "rel_diff",
        "aghh_reference",
        "aghh_rel_diff",
        "pass",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            real(self.length_scale),
            real(self.b),
            real(self.e_rootfind),
            real(self.e_closed_form),
            real(self.rel_diff),
            opt_real(self.aghh_reference),
            opt_real(self.aghh_rel_diff),
            self.pass.to_string(),
        ]
    }

    fn passed(&self) -> bool {
        self.pass
    }
}

pub fn spectrum(coupling: &Coupling, lengths: &[f64]) -> Result<Vec<SpectrumRow>, UsageError> {
    if lengths.contains(&0.0) {
        return Err(UsageError("length scale L must be nonzero; the range contains 0".into()));
    }
    let kinetic = coupling.hbar() * coupling.hbar() / coupling.mass();
    let corollary = (kinetic - 2.0).abs() <= 1e-12 * 2.0;
    lengths
        .iter()
        .map(|&l| {
            let params = coupling.with_length_scale(l)?;
            let state = solve_eeq(&params)?;
            let exact = closed_form_energy(&params);
            let rel_diff = ((state.energy - exact) / exact).abs();
            let aghh = if corollary && l.abs() == 1.0 {
                Some(aghh_check(coupling.alpha())?)
            } else {
                None
            };
            let aghh_rel_diff = aghh.as_ref().map(|a| {
                let d = ((exact - a.reference_value) / a.reference_value).abs();
                d.max(a.relative_difference)
            });
            let pass = rel_diff <= SPECTRUM_RTOL && aghh_rel_diff.is_none_or(|d| d <= AGHH_RTOL);
            Ok(SpectrumRow {
                length_scale: l,
                b: state.b,
                e_rootfind: state.energy,
                e_closed_form: exact,
                rel_diff,
                aghh_reference: aghh.map(|a| a.reference_value),
                aghh_rel_diff,
                pass,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct K0Row {
    pub x: f64,
    pub k0: Option<f64>,
    pub log_form: Option<f64>,
    pub pass: bool,
}

impl TableRow for K0Row {
    const COLUMNS: &'static [&'static str] = &["x", "k0", "log_form", "pass"];

    fn fields(&self) -> Vec<String> {
        vec![real(self.x), opt_real(self.k0), opt_real(self.log_form), self.pass.to_string()]
    }

    fn passed(&self) -> bool {
        self.pass
    }
}

pub fn k0_table(xs: &[f64]) -> Result<Vec<K0Row>, UsageError> {
    xs.iter()
        .map(|&x| {
            let v = k0(x)?;
            let lf = k0_log_form(1.0, x)?;
            Ok(K0Row {
                x,
                k0: Some(v),
                log_form: Some(lf),
                pass: v.is_finite(),
            })
        })
        .collect()
}

/// Long-format row of a `pair` report.
#[derive(Debug, Clone, Serialize)]
pub struct PairRow {
    pub section: &'static str,
    pub label: String,
    pub parameter: Option<f64>,
    pub value: Option<f64>,
    pub pass: bool,
}

impl PairRow {
    fn info(section: &'static str, label: impl Into<String>, parameter: Option<f64>) -> Self {
        Self {
            section,
            label: label.into(),
            parameter,
            value: None,
            pass: true,
        }
    }

    fn number(section: &'static str, label: impl Into<String>, parameter: Option<f64>, value: f64) -> Self {
        Self {
            section,
            label: label.into(),
            parameter,
            value: Some(value),
            pass: value.is_finite(),
        }
    }

    fn failure(section: &'static str, label: impl Into<String>) -> Self {
        Self {
            section,
            label: label.into(),
            parameter: None,
            value: None,
            pass: false,
        }
    }
}

impl TableRow for PairRow {
    const COLUMNS: &'static [&'static str] = &["section", "label", "parameter", "value", "pass"];

    fn fields(&self) -> Vec<String> {
        vec![
            self.section.to_string(),
            self.label.clone(),
            opt_real(self.parameter),
            opt_real(self.value),
            self.pass.to_string(),
        ]
    }

    fn passed(&self) -> bool {
        self.pass
    }
}

pub struct PairRequest<'a> {
    pub expr: &'a str,
    pub amplitude: f64,
    pub radius: f64,
    pub center: [f64; 2],
    pub length_scale: Option<f64>,
    pub profile: Profile,
}

fn products(e: &DistExpr, out: &mut Vec<RegularPart>) {
    match e {
        DistExpr::Product(p) => {
            if !out.contains(p) {
                out.push(*p);
            }
        }
        DistExpr::Laplacian(c) | DistExpr::ScaleArg(_, c) | DistExpr::ScalarMul(_, c) => products(c, out),
        DistExpr::Sum(ts) => ts.iter().for_each(|t| products(t, out)),
        _ => {}
    }
}

/// `(f(r), divisor, coupling)` for the classical probe of `f·δ`: the data are
/// divided by `divisor` before fitting.
type Radial = Box<dyn Fn(f64) -> f64 + Sync>;

fn probe(part: RegularPart) -> (Radial, f64, Option<f64>) {
    let kf = |a: f64| move |r: f64| k0(a * r).unwrap_or(f64::NAN);
    match part {
        RegularPart::Log => (Box::new(f64::ln), 1.0, None),
        RegularPart::LogScaled(l) => (Box::new(move |r: f64| (r / l.abs()).ln()), 1.0, None),
        RegularPart::K0(a) => (Box::new(kf(a)), 1.0, Some(a)),
        RegularPart::Psi(b) => {
            let c = b / std::f64::consts::PI.sqrt();
            (Box::new(move |r: f64| c * kf(b)(r)), c, Some(b))
        }
    }
}

pub fn pair(req: &PairRequest) -> Result<Vec<PairRow>, UsageError> {
    let e = parse_expr(req.expr)?;
    let phi = make_bump(req.amplitude, req.radius, req.center)?;
    let (canonical, trace) = match normalize(&e, req.length_scale) {
        Ok(ok) => ok,
        Err(ExprError::MissingLengthScale(p)) => {
            return Err(UsageError(format!("`{p}` needs a length scale; pass --L")))
        }
        Err(err) => return Err(err.into()),
    };

    let mut rows = vec![PairRow::info("input", e.to_string(), None)];
    for (i, step) in trace.steps.iter().enumerate() {
        rows.push(PairRow::info(
            "trace",
            format!("{} [{}]: {} => {}", step.rule.name(), step.identity, step.before, step.after),
            Some(i as f64 + 1.0),
        ));
    }
    for note in &trace.notes {
        rows.push(PairRow::info("note", note.clone(), None));
    }
    rows.push(PairRow::info("canonical", canonical.to_string(), None));
    match canonical.pair(&phi) {
        Ok(rep) => {
            rows.push(PairRow::number("pairing", "value", None, rep.value));
            rows.push(PairRow::number("pairing", "abs_error_estimate", None, rep.abs_error_estimate));
            rows.push(PairRow::number("pairing", "phi(0)", None, phi.at_origin()));
        }
        Err(err) => rows.push(PairRow::failure("pairing", err.to_string())),
    }

    let mut parts = Vec::new();
    products(&e, &mut parts);
    let family = MollifierFamily::with_default_epsilons(req.profile);
    for part in parts {
        let label = DistExpr::Product(part).to_string();
        let (f, divisor, coupling) = probe(part);
        let data = match pair_mollified_product(&f, &family, &phi) {
            Ok(d) => d,
            Err(err) => {
                rows.push(PairRow::failure("mollified", format!("{label}: {err}")));
                continue;
            }
        };
        for &(eps, v) in &data {
            rows.push(PairRow::number("mollified", format!("{label} [{}]", req.profile.name()), Some(eps), v));
        }
        let scaled: Vec<(f64, f64)> = data.iter().map(|&(eps, v)| (eps, v / divisor)).collect();
        match fit_log_divergence(&scaled, phi.at_origin(), coupling) {
            Ok(fit) => {
                let tag = |name: &str| format!("{label}: {name}");
                rows.push(PairRow::number("fit", tag("slope"), None, fit.slope * divisor));
                rows.push(PairRow::number("fit", tag("intercept"), None, fit.intercept * divisor));
                rows.push(PairRow::number(
                    "fit",
                    tag("effective_scale_constant"),
                    None,
                    fit.effective_scale_constant,
                ));
                rows.push(PairRow::number("fit", tag("residual"), None, fit.residual * divisor));
            }
            Err(QuadError::DegenerateFit(msg)) => {
                rows.push(PairRow::failure("fit", format!("{label}: degenerate fit: {msg}")))
            }
            Err(err) => rows.push(PairRow::failure("fit", format!("{label}: {err}"))),
        }
    }
    Ok(rows)
}
