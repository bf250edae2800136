use std::f64::consts::PI;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use super::radial::{integrate_radial, pair_radial_weight, TestSide};
use super::QuadError;
use crate::testfn::BumpFunction;

/// `ε_k = 2^-k` for these `k`.
pub const DEFAULT_EPSILON_EXPONENTS: std::ops::RangeInclusive<i32> = 4..=14;

// Gaussian weight beyond |u| = 9 is below e^-81.
const GAUSSIAN_CUTOFF: f64 = 9.0;

/// Unit profile `η` of a delta family `δ_ε(x) = ε⁻² η(x/ε)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// `η(u) = e^{-|u|²}/π`
    Gaussian,
    /// `η(u) = exp(1 - 1/(1-|u|²))/Z` on the unit disk
    Bump,
}

impl Profile {
    pub fn name(self) -> &'static str {
        match self {
            Profile::Gaussian => "gaussian",
            Profile::Bump => "bump",
        }
    }

    /// `η` as a function of `|u|`.
    pub fn unit(self, u: f64) -> f64 {
        match self {
            Profile::Gaussian => (-u * u).exp() / PI,
            Profile::Bump => {
                if u >= 1.0 {
                    return 0.0;
                }
                let t = 1.0 - u * u;
                (1.0 - 1.0 / t).exp() / bump_normalization()
            }
        }
    }

    /// Radius (in units of ε) beyond which `η` is zero or negligible.
    pub fn cutoff(self) -> f64 {
        match self {
            Profile::Gaussian => GAUSSIAN_CUTOFF,
            Profile::Bump => 1.0,
        }
    }
}

fn bump_normalization() -> f64 {
    static NORM: OnceLock<f64> = OnceLock::new();
    *NORM.get_or_init(|| {
        integrate_radial(
            |u: f64| {
                if u >= 1.0 {
                    0.0
                } else {
                    (1.0 - 1.0 / (1.0 - u * u)).exp()
                }
            },
            1.0,
        )
        .expect("bump profile integral converges")
        .value
    })
}

/// A delta family sampled at a strictly decreasing list of widths.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MollifierFamily {
    profile: Profile,
    epsilons: Vec<f64>,
}

impl MollifierFamily {
    pub fn new(profile: Profile, epsilons: Vec<f64>) -> Result<Self, QuadError> {
        if epsilons.is_empty() {
            return Err(QuadError::Domain("empty epsilon sequence".into()));
        }
        if epsilons.iter().any(|&e| !(e > 0.0) || !e.is_finite()) {
            return Err(QuadError::Domain("epsilons must be positive and finite".into()));
        }
        if epsilons.windows(2).any(|w| w[1] >= w[0]) {
            return Err(QuadError::Domain("epsilons must be strictly decreasing".into()));
        }
        Ok(Self { profile, epsilons })
    }

    /// `ε_k = 2^-k`, `k = 4..=14`.
    pub fn with_default_epsilons(profile: Profile) -> Self {
        let epsilons = DEFAULT_EPSILON_EXPONENTS.map(|k| 0.5f64.powi(k)).collect();
        Self { profile, epsilons }
    }

    pub fn profile(&self) -> Profile {
        self.profile
    }

    pub fn epsilons(&self) -> &[f64] {
        &self.epsilons
    }

    /// `δ_ε` at distance `r` from the origin.
    pub fn density(&self, eps: f64, r: f64) -> f64 {
        self.profile.unit(r / eps) / (eps * eps)
    }

    /// `∫ δ_ε d²x`, by quadrature.
    pub fn mass(&self, eps: f64) -> Result<f64, QuadError> {
        let reach = eps * self.profile.cutoff();
        Ok(integrate_radial(|r| self.density(eps, r), reach)?.value)
    }
}

/// `⟨f·δ_ε, φ⟩` for each `ε` of the family, in family order.
pub fn pair_mollified_product<F>(
    f: F,
    family: &MollifierFamily,
    phi: &BumpFunction,
) -> Result<Vec<(f64, f64)>, QuadError>
where
    F: Fn(f64) -> f64 + Sync,
{
    if let Some(&eps) = family.epsilons().iter().find(|&&e| e >= phi.radius()) {
        return Err(QuadError::Domain(format!(
            "epsilon {eps} is not below the test-function radius {}",
            phi.radius()
        )));
    }
    family
        .epsilons()
        .par_iter()
        .map(|&eps| {
            let weight = |r: f64| f(r) * family.density(eps, r);
            let reach = eps * family.profile().cutoff();
            pair_radial_weight(&weight, phi, TestSide::Value, Some(reach)).map(|rep| (eps, rep.value))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfn::make_bump;

    #[test]
    fn families_have_unit_mass() {
        for profile in [Profile::Gaussian, Profile::Bump] {
            let fam = MollifierFamily::with_default_epsilons(profile);
            for &eps in fam.epsilons() {
                let m = fam.mass(eps).unwrap();
                assert!((m - 1.0).abs() < 1e-10, "{profile:?} eps={eps}: {m}");
            }
        }
    }

    #[test]
    fn exact_scaling_relation() {
        let fam = MollifierFamily::with_default_epsilons(Profile::Bump);
        for &eps in fam.epsilons() {
            for u in [0.0, 0.3, 0.7, 0.99] {
                let lhs = fam.density(eps, u * eps);
                let rhs = Profile::Bump.unit(u) / (eps * eps);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn rejects_bad_sequences() {
        assert!(MollifierFamily::new(Profile::Gaussian, vec![0.1, 0.2]).is_err());
        assert!(MollifierFamily::new(Profile::Gaussian, vec![0.1, 0.1]).is_err());
        assert!(MollifierFamily::new(Profile::Gaussian, vec![0.1, -0.01]).is_err());
        assert!(MollifierFamily::new(Profile::Gaussian, vec![]).is_err());
    }

    #[test]
    fn epsilon_must_fit_inside_support() {
        let phi = make_bump(1.0, 0.05, [0.0, 0.0]).unwrap();
        let fam = MollifierFamily::with_default_epsilons(Profile::Gaussian);
        assert!(pair_mollified_product(|_| 1.0, &fam, &phi).is_err());
    }

    #[test]
    fn constant_factor_converges_to_point_value() {
        let phi = make_bump(2.0, 1.0, [0.0, 0.0]).unwrap();
        for profile in [Profile::Gaussian, Profile::Bump] {
            let fam = MollifierFamily::with_default_epsilons(profile);
            let rows = pair_mollified_product(|_| 1.0, &fam, &phi).unwrap();
            let (_, last) = *rows.last().unwrap();
            assert!((last - 2.0).abs() < 1e-7, "{profile:?}: {last}");
            // error shrinks monotonically with ε
            for w in rows.windows(2) {
                assert!((w[1].1 - 2.0).abs() <= (w[0].1 - 2.0).abs());
            }
        }
    }

    #[test]
    fn off_center_constant_matches_point_value() {
        let phi = make_bump(1.0, 1.0, [0.3, 0.2]).unwrap();
        let fam = MollifierFamily::new(Profile::Gaussian, vec![1e-3]).unwrap();
        let rows = pair_mollified_product(|_| 1.0, &fam, &phi).unwrap();
        assert!((rows[0].1 - phi.at_origin()).abs() < 1e-4, "{rows:?}");
    }
}
