use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::canonical::Canonical;
use super::rules::{rewrite_node, Rule, RuleFamily, RuleSet};
use super::{DistExpr, ExprError, RegularPart};

const MAX_STEPS: usize = 10_000;

pub(crate) const ABS_LENGTH_NOTE: &str =
    "the length scale enters logarithms through |L|, so L and -L give the same result";

/// How the next redex is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Leftmost redex with no redex below it.
    #[default]
    Innermost,
    /// Leftmost redex with no redex above it.
    Outermost,
    /// Uniformly random redex from a seeded stream.
    Random(u64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceStep {
    pub rule: Rule,
    pub identity: &'static str,
    pub before: String,
    pub after: String,
}

/// The rule applications that took an expression to its result, each
/// recorded on the rewritten subterm.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RewriteTrace {
    pub steps: Vec<TraceStep>,
    pub notes: Vec<String>,
}

impl RewriteTrace {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn rules(&self) -> impl Iterator<Item = Rule> + '_ {
        self.steps.iter().map(|s| s.rule)
    }

    pub fn note(&mut self, text: impl Into<String>) {
        let text = text.into();
        if !self.notes.contains(&text) {
            self.notes.push(text);
        }
    }

    pub fn extend(&mut self, other: RewriteTrace) {
        self.steps.extend(other.steps);
        for n in other.notes {
            self.note(n);
        }
    }
}

/// Applies a [`RuleSet`] until no redex is left.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rewriter {
    rules: RuleSet,
    strategy: Strategy,
}

struct Redex {
    path: Vec<usize>,
    rule: Rule,
    replacement: DistExpr,
}

impl Rewriter {
    pub fn new(rules: RuleSet, strategy: Strategy) -> Self {
        Self { rules, strategy }
    }

    pub fn all_rules(length_scale: Option<f64>) -> Self {
        Self::new(RuleSet::all(length_scale), Strategy::Innermost)
    }

    pub fn with_strategy(self, strategy: Strategy) -> Self {
        Self { strategy, ..self }
    }

    pub fn run(&self, e: &DistExpr) -> Result<(DistExpr, RewriteTrace), ExprError> {
        e.validate()?;
        let mut rng = match self.strategy {
            Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut current = e.clone();
        let mut trace = RewriteTrace::default();
        for _ in 0..MAX_STEPS {
            let mut found = Vec::new();
            collect(&current, &self.rules, &mut Vec::new(), &mut found)?;
            if found.is_empty() {
                return Ok((current, trace));
            }
            let pick = match (&mut rng, self.strategy) {
                (Some(rng), _) => rng.gen_range(0..found.len()),
                (None, Strategy::Outermost) => outermost(&found),
                _ => 0,
            };
            let Redex { path, rule, replacement } = found.swap_remove(pick);
            let slot = node_at(&mut current, &path);
            if matches!(rule, Rule::K0TimesDelta | Rule::PsiTimesDelta) {
                trace.note(ABS_LENGTH_NOTE);
            }
            trace.steps.push(TraceStep {
                rule,
                identity: rule.identity(),
                before: slot.to_string(),
                after: replacement.to_string(),
            });
            *slot = replacement;
        }
        Err(ExprError::NoTermination(MAX_STEPS))
    }
}

/// Redexes in post-order, so the first entry is the leftmost innermost one.
fn collect(
    e: &DistExpr,
    rules: &RuleSet,
    path: &mut Vec<usize>,
    out: &mut Vec<Redex>,
) -> Result<(), ExprError> {
    match e {
        DistExpr::Laplacian(c) | DistExpr::ScaleArg(_, c) | DistExpr::ScalarMul(_, c) => {
            path.push(0);
            collect(c, rules, path, out)?;
            path.pop();
        }
        DistExpr::Sum(terms) => {
            for (i, t) in terms.iter().enumerate() {
                path.push(i);
                collect(t, rules, path, out)?;
                path.pop();
            }
        }
        _ => {}
    }
    if let Some((rule, replacement)) = rewrite_node(e, rules)? {
        out.push(Redex {
            path: path.clone(),
            rule,
            replacement,
        });
    }
    Ok(())
}

fn outermost(found: &[Redex]) -> usize {
    found
        .iter()
        .position(|r| {
            !found
                .iter()
                .any(|o| o.path.len() < r.path.len() && r.path.starts_with(&o.path))
        })
        .unwrap_or(0)
}

fn node_at<'a>(e: &'a mut DistExpr, path: &[usize]) -> &'a mut DistExpr {
    match path.split_first() {
        None => e,
        Some((&i, rest)) => match e {
            DistExpr::Laplacian(c) | DistExpr::ScaleArg(_, c) | DistExpr::ScalarMul(_, c) => {
                node_at(c, rest)
            }
            DistExpr::Sum(terms) => node_at(&mut terms[i], rest),
            _ => unreachable!("redex path leads through a leaf"),
        },
    }
}

/// `e(s·x)` with every `ScaleArg` pushed into coefficients and parameters.
pub fn scale_expr(e: &DistExpr, s: f64) -> Result<(DistExpr, RewriteTrace), ExprError> {
    let wrapped = DistExpr::scaled(s, e.clone())?;
    e.validate()?;
    if s == 1.0 {
        return Ok((e.clone(), RewriteTrace::default()));
    }
    let (out, trace) = Rewriter::new(RuleSet::only(RuleFamily::Scaling, None), Strategy::Innermost)
        .run(&wrapped)?;
    if let Some(bad) = find(&out, &|n| matches!(n, DistExpr::ScaleArg(..))) {
        return Err(ExprError::AnomalousScaling(bad.to_string()));
    }
    Ok((out, trace))
}

/// Rewrites every `Laplacian` node by the distributional Laplacian rules.
pub fn laplacian_expr(e: &DistExpr) -> Result<(DistExpr, RewriteTrace), ExprError> {
    let (out, trace) =
        Rewriter::new(RuleSet::only(RuleFamily::Laplacian, None), Strategy::Innermost).run(e)?;
    if let Some(DistExpr::Laplacian(child)) = find(&out, &|n| matches!(n, DistExpr::Laplacian(_))) {
        return Err(ExprError::UnsupportedLaplacian(child.to_string()));
    }
    Ok((out, trace))
}

/// Replaces every `f·δ` product by its finite assignment with length scale `L`.
pub fn rewrite_singular_products(
    e: &DistExpr,
    length_scale: f64,
) -> Result<(DistExpr, RewriteTrace), ExprError> {
    if length_scale == 0.0 || !length_scale.is_finite() {
        return Err(ExprError::Constraint(format!(
            "length scale L must be nonzero, got {length_scale}"
        )));
    }
    Rewriter::new(
        RuleSet::only(RuleFamily::SingularProduct, Some(length_scale)),
        Strategy::Innermost,
    )
    .run(e)
}

/// Applies all rules and collects the result into canonical form.
pub fn normalize(
    e: &DistExpr,
    length_scale: Option<f64>,
) -> Result<(Canonical, RewriteTrace), ExprError> {
    normalize_with(e, length_scale, Strategy::Innermost)
}

pub(crate) fn normalize_with(
    e: &DistExpr,
    length_scale: Option<f64>,
    strategy: Strategy,
) -> Result<(Canonical, RewriteTrace), ExprError> {
    if let Some(l) = length_scale {
        if l == 0.0 || !l.is_finite() {
            return Err(ExprError::Constraint(format!("length scale L must be nonzero, got {l}")));
        }
    }
    let (out, trace) = Rewriter::new(RuleSet::all(length_scale), strategy).run(e)?;
    if let Some(DistExpr::Laplacian(child)) = find(&out, &|n| matches!(n, DistExpr::Laplacian(_))) {
        return Err(ExprError::UnsupportedLaplacian(child.to_string()));
    }
    if let Some(p) = find(&out, &|n| {
        matches!(n, DistExpr::Product(RegularPart::K0(_) | RegularPart::Psi(_)))
    }) {
        return Err(ExprError::MissingLengthScale(p.to_string()));
    }
    Ok((Canonical::from_expr(&out)?, trace))
}

fn find<'a>(e: &'a DistExpr, pred: &dyn Fn(&DistExpr) -> bool) -> Option<&'a DistExpr> {
    if pred(e) {
        return Some(e);
    }
    match e {
        DistExpr::Laplacian(c) | DistExpr::ScaleArg(_, c) | DistExpr::ScalarMul(_, c) => find(c, pred),
        DistExpr::Sum(terms) => terms.iter().find_map(|t| find(t, pred)),
        _ => None,
    }
}
