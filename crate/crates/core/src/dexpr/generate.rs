//! Seeded random expressions for round-trip and confluence checks.
//!
//! Parameters come from short decimal grids so printed expressions stay
//! readable. Laplacians are only generated over regular subexpressions
//! (no `δ`, no products, no nested Laplacians), which is exactly the
//! fragment the rule set reduces to canonical form.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DistExpr, RegularPart};

const RATES: [f64; 6] = [0.25, 0.5, 1.0, 1.5, 2.0, 3.0];
const LENGTHS: [f64; 5] = [0.5, 1.0, 2.0, -1.0, -3.0];
const SCALES: [f64; 6] = [-2.0, -0.5, 0.5, 2.0, 3.0, -1.0];
const COEFFICIENTS: [f64; 9] = [-3.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 2.5, 4.0];

#[derive(Debug, Clone, Copy)]
struct Context {
    singular: bool,
    laplacian: bool,
}

fn pick<R: Rng>(rng: &mut R, xs: &[f64]) -> f64 {
    *xs.choose(rng).expect("non-empty grid")
}

fn regular_part<R: Rng>(rng: &mut R) -> RegularPart {
    match rng.gen_range(0..4) {
        0 => RegularPart::Log,
        1 => RegularPart::LogScaled(pick(rng, &LENGTHS)),
        2 => RegularPart::K0(pick(rng, &RATES)),
        _ => RegularPart::Psi(pick(rng, &RATES)),
    }
}

fn leaf<R: Rng>(rng: &mut R, ctx: Context) -> DistExpr {
    if ctx.singular {
        match rng.gen_range(0..6) {
            0 => return DistExpr::Delta,
            1 => return DistExpr::Product(regular_part(rng)),
            _ => {}
        }
    }
    regular_part(rng).to_expr()
}

fn node<R: Rng>(rng: &mut R, depth: u32, ctx: Context) -> DistExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng, ctx);
    }
    let choice = rng.gen_range(0..if ctx.laplacian { 4 } else { 3 });
    match choice {
        0 => {
            let n = rng.gen_range(2..=3);
            DistExpr::Sum((0..n).map(|_| node(rng, depth - 1, ctx)).collect())
        }
        1 => DistExpr::ScalarMul(pick(rng, &COEFFICIENTS), Box::new(node(rng, depth - 1, ctx))),
        2 => DistExpr::ScaleArg(pick(rng, &SCALES), Box::new(node(rng, depth - 1, ctx))),
        _ => {
            let inner = Context {
                singular: false,
                laplacian: false,
            };
            DistExpr::Laplacian(Box::new(node(rng, depth - 1, inner)))
        }
    }
}

/// A random expression of depth at most `depth`.
pub fn random_expr<R: Rng>(rng: &mut R, depth: u32) -> DistExpr {
    node(
        rng,
        depth,
        Context {
            singular: true,
            laplacian: true,
        },
    )
}

/// `n` expressions from a fixed seed.
pub fn corpus(seed: u64, n: usize, depth: u32) -> Vec<DistExpr> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_expr(&mut rng, depth)).collect()
}
