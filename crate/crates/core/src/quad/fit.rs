use serde::Serialize;

use super::QuadError;
use crate::specfun::EULER_GAMMA;

/// Model fitted to `(ε, value)` data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FitModel {
    /// `value = slope·ln ε + intercept`
    Line,
    /// `value = slope·ln ε + intercept + ε²(p·ln ε + q)`; the ε² terms absorb
    /// the leading test-function curvature so the line is the ε → 0 part.
    #[default]
    CurvatureCorrected,
}

impl FitModel {
    fn columns(self) -> usize {
        match self {
            FitModel::Line => 2,
            FitModel::CurvatureCorrected => 4,
        }
    }

    fn basis(self, eps: f64) -> [f64; 4] {
        let l = eps.ln();
        let e2 = eps * eps;
        match self {
            FitModel::Line => [l, 1.0, 0.0, 0.0],
            FitModel::CurvatureCorrected => [l, 1.0, e2 * l, e2],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogFitResult {
    pub slope: f64,
    pub intercept: f64,
    /// `c` in `value ≈ -φ(0)·ln(e^γ a ε / (2c))` (coupling `a` supplied), or
    /// in `value ≈ φ(0)·ln(ε/c)` for pure-logarithm data.
    pub effective_scale_constant: f64,
    /// Max absolute deviation of the fitted model from the data.
    pub residual: f64,
    pub model: FitModel,
}

/// Fits the default (curvature-corrected) model; see [`fit_log_divergence_with`].
pub fn fit_log_divergence(
    data: &[(f64, f64)],
    phi0: f64,
    coupling: Option<f64>,
) -> Result<LogFitResult, QuadError> {
    fit_log_divergence_with(data, phi0, coupling, FitModel::default())
}

/// Least-squares fit of `value` against `ln ε`.
///
/// With `coupling = Some(a)` the data are read as `⟨K0(a|x|)·δ_ε, φ⟩` and
/// `c = exp(intercept/φ0 + ln(e^γ a / 2))`; with `None` they are read as
/// `⟨log|x|·δ_ε, φ⟩` and `c = exp(-intercept/φ0)`.
pub fn fit_log_divergence_with(
    data: &[(f64, f64)],
    phi0: f64,
    coupling: Option<f64>,
    model: FitModel,
) -> Result<LogFitResult, QuadError> {
    if data.len() < 4 {
        return Err(QuadError::DegenerateFit(format!(
            "need at least 4 points, got {}",
            data.len()
        )));
    }
    if phi0 == 0.0 || !phi0.is_finite() {
        return Err(QuadError::Domain(format!("phi(0) must be nonzero, got {phi0}")));
    }
    if data.iter().any(|&(e, v)| !(e > 0.0) || !e.is_finite() || !v.is_finite()) {
        return Err(QuadError::Domain("epsilons must be positive, values finite".into()));
    }
    let mut eps: Vec<f64> = data.iter().map(|&(e, _)| e).collect();
    eps.sort_by(f64::total_cmp);
    if eps.windows(2).any(|w| w[0] == w[1]) {
        return Err(QuadError::DegenerateFit("epsilon values are not distinct".into()));
    }
    if eps[eps.len() - 1] / eps[0] < 100.0 {
        return Err(QuadError::DegenerateFit("epsilons span less than two decades".into()));
    }
    if let Some(a) = coupling {
        if !(a > 0.0) || !a.is_finite() {
            return Err(QuadError::Domain(format!("coupling a must be positive, got {a}")));
        }
    }

    let n = model.columns();
    let rows: Vec<Vec<f64>> = data.iter().map(|&(e, _)| model.basis(e)[..n].to_vec()).collect();
    let rhs: Vec<f64> = data.iter().map(|&(_, v)| v).collect();
    let coef = least_squares(rows.clone(), rhs.clone())?;

    let residual = rows
        .iter()
        .zip(&rhs)
        .map(|(row, y)| (row.iter().zip(&coef).map(|(a, c)| a * c).sum::<f64>() - y).abs())
        .fold(0.0, f64::max);
    let (slope, intercept) = (coef[0], coef[1]);
    let log_c = match coupling {
        Some(a) => intercept / phi0 + (0.5 * EULER_GAMMA.exp() * a).ln(),
        None => -intercept / phi0,
    };
    Ok(LogFitResult {
        slope,
        intercept,
        effective_scale_constant: log_c.exp(),
        residual,
        model,
    })
}

/// Householder QR solve of an overdetermined system; columns are scaled
/// to unit norm first.
fn least_squares(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>, QuadError> {
    let m = a.len();
    let n = a[0].len();
    let scale: Vec<f64> = (0..n)
        .map(|j| a.iter().map(|row| row[j] * row[j]).sum::<f64>().sqrt())
        .collect();
    if scale.contains(&0.0) {
        return Err(QuadError::DegenerateFit("zero column in design matrix".into()));
    }
    for row in a.iter_mut() {
        for j in 0..n {
            row[j] /= scale[j];
        }
    }
    for k in 0..n {
        let norm = (k..m).map(|i| a[i][k] * a[i][k]).sum::<f64>().sqrt();
        if norm < 1e-13 {
            return Err(QuadError::DegenerateFit("design matrix is rank deficient".into()));
        }
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..m).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        for j in k..n {
            let dot: f64 = (k..m).map(|i| v[i - k] * a[i][j]).sum();
            let f = 2.0 * dot / vnorm2;
            for i in k..m {
                a[i][j] -= f * v[i - k];
            }
        }
        let dot: f64 = (k..m).map(|i| v[i - k] * b[i]).sum();
        let f = 2.0 * dot / vnorm2;
        for i in k..m {
            b[i] -= f * v[i - k];
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = ((k + 1)..n).map(|j| a[k][j] * x[j]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    Ok(x.iter().zip(&scale).map(|(xi, s)| xi / s).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps_grid() -> Vec<f64> {
        (4..=14).map(|k| 0.5f64.powi(k)).collect()
    }

    #[test]
    fn exact_line_is_recovered() {
        let data: Vec<(f64, f64)> = eps_grid().into_iter().map(|e| (e, 2.0 * e.ln() + 3.0)).collect();
        for model in [FitModel::Line, FitModel::CurvatureCorrected] {
            let fit = fit_log_divergence_with(&data, 1.0, None, model).unwrap();
            assert!((fit.slope - 2.0).abs() < 1e-12, "{model:?} {fit:?}");
            assert!((fit.intercept - 3.0).abs() < 1e-11, "{model:?} {fit:?}");
            assert!(fit.residual < 1e-11);
        }
    }

    #[test]
    fn curvature_terms_are_absorbed() {
        let data: Vec<(f64, f64)> = eps_grid()
            .into_iter()
            .map(|e| (e, -e.ln() + 0.25 + e * e * (3.0 * e.ln() - 7.0)))
            .collect();
        let fit = fit_log_divergence(&data, 1.0, None).unwrap();
        assert!((fit.slope + 1.0).abs() < 1e-9);
        assert!((fit.intercept - 0.25).abs() < 1e-9);
        let line = fit_log_divergence_with(&data, 1.0, None, FitModel::Line).unwrap();
        assert!((line.intercept - 0.25).abs() > 1e-3);
    }

    #[test]
    fn scale_constant_conventions() {
        // value = -ln(e^γ a ε / (2c)) with a = 3, c = 1.7
        let (a, c) = (3.0, 1.7);
        let data: Vec<(f64, f64)> = eps_grid()
            .into_iter()
            .map(|e| (e, -(0.5 * EULER_GAMMA.exp() * a * e / c).ln()))
            .collect();
        let fit = fit_log_divergence(&data, 1.0, Some(a)).unwrap();
        assert!((fit.effective_scale_constant - c).abs() < 1e-9);
        // value = φ0 ln(ε/c)
        let data: Vec<(f64, f64)> = eps_grid().into_iter().map(|e| (e, 2.0 * (e / c).ln())).collect();
        let fit = fit_log_divergence(&data, 2.0, None).unwrap();
        assert!((fit.effective_scale_constant - c).abs() < 1e-9);
    }

    #[test]
    fn degenerate_inputs() {
        let same = vec![(0.1, 1.0); 5];
        assert!(matches!(
            fit_log_divergence(&same, 1.0, None),
            Err(QuadError::DegenerateFit(_))
        ));
        let short = vec![(0.1, 1.0), (0.01, 2.0), (0.001, 3.0)];
        assert!(fit_log_divergence(&short, 1.0, None).is_err());
        let narrow: Vec<(f64, f64)> = (0..6).map(|k| (0.1 + 0.01 * k as f64, 1.0)).collect();
        assert!(fit_log_divergence(&narrow, 1.0, None).is_err());
        let ok: Vec<(f64, f64)> = eps_grid().into_iter().map(|e| (e, e.ln())).collect();
        assert!(fit_log_divergence(&ok, 0.0, None).is_err());
    }
}
