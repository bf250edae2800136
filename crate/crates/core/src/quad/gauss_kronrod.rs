//! Adaptive 7/15-point Gauss–Kronrod integration over a list of panels.

use super::QuadError;

// Kronrod abscissae (non-negative half), Kronrod weights, Gauss weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One panel: Kronrod estimate and `|K15 - G7|`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Panel {
    pub a: f64,
    pub b: f64,
    pub value: f64,
    pub error: f64,
}

pub(crate) fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Tolerance policy: the accepted error is `abs + rel·|value|`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    fn bound(&self, value: f64) -> f64 {
        self.abs + self.rel * value.abs()
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Integral {
    pub value: f64,
    pub error: f64,
    /// `(panel count, running value)` after each refinement sweep.
    pub history: Vec<(f64, f64)>,
}

const MAX_SWEEPS: usize = 60;
const MAX_PANELS: usize = 200_000;

/// Integrates `f` over consecutive panels given by `breaks` (sorted).
///
/// Each sweep bisects every panel whose error exceeds its equal share of
/// the remaining tolerance; the untouched panels then hold at most half
/// of the budget.
pub(crate) fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    breaks: &[f64],
    tol: Tolerance,
) -> Result<Integral, QuadError> {
    let mut panels: Vec<Panel> = breaks
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| gk15(&mut f, w[0], w[1]))
        .collect();
    let mut history = Vec::new();
    for _ in 0..MAX_SWEEPS {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        history.push((panels.len() as f64, value));
        if !value.is_finite() || !error.is_finite() {
            return Err(QuadError::NonFinite);
        }
        let bound = tol.bound(value);
        if error <= bound {
            return Ok(Integral {
                value,
                error,
                history,
            });
        }
        let share = 0.5 * bound / panels.len() as f64;
        let mut next = Vec::with_capacity(panels.len() * 2);
        for p in panels {
            let mid = 0.5 * (p.a + p.b);
            if p.error > share && mid > p.a && mid < p.b {
                next.push(gk15(&mut f, p.a, mid));
                next.push(gk15(&mut f, mid, p.b));
            } else {
                next.push(p);
            }
        }
        if next.len() > MAX_PANELS {
            return Err(QuadError::NonConvergence {
                error,
                tolerance: bound,
            });
        }
        panels = next;
    }
    let value: f64 = panels.iter().map(|p| p.value).sum();
    let error: f64 = panels.iter().map(|p| p.error).sum();
    Err(QuadError::NonConvergence {
        error,
        tolerance: tol.bound(value),
    })
}
