//! Deciding whether a graph satisfies a set of GGDs.
//!
//! For every source match that satisfies the source constraints, the target
//! pattern is matched with the shared variables pinned to the source match,
//! and the first target match satisfying the target constraints settles it.
//! A source match without such an extension is reported as a [`Violation`].
//! An empty target pattern has a single (empty) extension, so the rule
//! reduces to checking the target constraints on the source match.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::constraint::{evaluate_set, EvalError, GraphMatch};
use crate::distance::DistanceRegistry;
use crate::ggd::Ggd;
use crate::graph::PropertyGraph;
use crate::matcher::{find_matches, find_matches_parallel, find_matches_seeded, MatchError};
use crate::pattern::Binding;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ValidationError {
    #[error("rule `{rule}`: {source}")]
    Eval { rule: String, source: EvalError },
    #[error("rule `{rule}`: {source}")]
    Match { rule: String, source: MatchError },
}

impl ValidationError {
    pub fn rule(&self) -> &str {
        match self {
            ValidationError::Eval { rule, .. } | ValidationError::Match { rule, .. } => rule,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationReason {
    /// No target match extends the source match.
    NoTargetMatch,
    /// Target matches exist, but none satisfies the target constraints.
    TargetConstraintsFailed,
}

impl ViolationReason {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationReason::NoTargetMatch => "no_target_match",
            ViolationReason::TargetConstraintsFailed => "target_constraints_failed",
        }
    }
}

impl fmt::Display for ViolationReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub ggd_name: String,
    pub source_binding: Binding,
    pub reason: ViolationReason,
    pub inspected_targets: usize,
    /// Some target constraint failed because a property was absent.
    pub missing_property: bool,
    /// Size of the graph when the violation was found; see [`PropertyGraph::len`].
    pub graph_version: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counters {
    pub source_matches: usize,
    pub source_matches_satisfying: usize,
    pub target_matches_inspected: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GgdValidation {
    pub verdict: Verdict,
    pub violations: Vec<Violation>,
    pub counters: Counters,
}

/// Result of checking one source match.
#[derive(Debug, Clone, PartialEq)]
pub enum MatchCheck {
    /// The source constraints do not hold; the rule imposes nothing.
    Skipped,
    Satisfied { inspected: usize },
    Violated(Violation),
}

/// Runs the target side for a source match that already satisfies the source
/// constraints. Returns `None` when some extension satisfies the target
/// constraints, together with the number of target matches inspected.
pub fn check_target(
    g: &PropertyGraph,
    ggd: &Ggd,
    source_binding: &Binding,
    registry: &DistanceRegistry,
) -> Result<(Option<Violation>, usize), ValidationError> {
    let rule = || ggd.name().to_string();
    let target = ggd.target();
    let seed = source_binding.restrict(|v| target.kind_of(v).is_some());
    let matches = find_matches_seeded(target, g, &seed).map_err(|source| ValidationError::Match { rule: rule(), source })?;
    let mut inspected = 0;
    let mut missing_property = false;
    for h_t in matches {
        inspected += 1;
        let merged = source_binding.merged(&h_t);
        let out = evaluate_set(ggd.target_constraints(), &GraphMatch { graph: g, binding: &merged }, registry)
            .map_err(|source| ValidationError::Eval { rule: rule(), source })?;
        if out.holds {
            return Ok((None, inspected));
        }
        missing_property |= out.missing_property;
    }
    let reason = if inspected == 0 { ViolationReason::NoTargetMatch } else { ViolationReason::TargetConstraintsFailed };
    let violation = Violation {
        ggd_name: ggd.name().to_string(),
        source_binding: source_binding.clone(),
        reason,
        inspected_targets: inspected,
        missing_property,
        graph_version: g.len(),
    };
    Ok((Some(violation), inspected))
}

/// Checks one source match against the whole rule.
pub fn check_source_match(
    g: &PropertyGraph,
    ggd: &Ggd,
    source_binding: &Binding,
    registry: &DistanceRegistry,
) -> Result<MatchCheck, ValidationError> {
    let source_ok = evaluate_set(ggd.source_constraints(), &GraphMatch { graph: g, binding: source_binding }, registry)
        .map_err(|source| ValidationError::Eval { rule: ggd.name().to_string(), source })?;
    if !source_ok.holds {
        return Ok(MatchCheck::Skipped);
    }
    Ok(match check_target(g, ggd, source_binding, registry)? {
        (None, inspected) => MatchCheck::Satisfied { inspected },
        (Some(v), _) => MatchCheck::Violated(v),
    })
}

fn summarize(checks: Vec<MatchCheck>) -> GgdValidation {
    let mut counters = Counters { source_matches: checks.len(), ..Counters::default() };
    let mut violations = Vec::new();
    for check in checks {
        match check {
            MatchCheck::Skipped => {}
            MatchCheck::Satisfied { inspected } => {
                counters.source_matches_satisfying += 1;
                counters.target_matches_inspected += inspected;
            }
            MatchCheck::Violated(v) => {
                counters.source_matches_satisfying += 1;
                counters.target_matches_inspected += v.inspected_targets;
                violations.push(v);
            }
        }
    }
    let verdict = if violations.is_empty() { Verdict::Holds } else { Verdict::Violated };
    GgdValidation { verdict, violations, counters }
}

/// Decides `g ⊨ ggd`, listing every violating source match in enumeration order.
pub fn validate_ggd(g: &PropertyGraph, ggd: &Ggd, registry: &DistanceRegistry) -> Result<GgdValidation, ValidationError> {
    let checks = find_matches(ggd.source(), g)
        .map(|h_s| check_source_match(g, ggd, &h_s, registry))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(summarize(checks))
}

/// Same result as [`validate_ggd`], computed on the current rayon pool.
pub fn validate_ggd_parallel(
    g: &PropertyGraph,
    ggd: &Ggd,
    registry: &DistanceRegistry,
    threads: usize,
) -> Result<GgdValidation, ValidationError> {
    let sources = find_matches_parallel(ggd.source(), g, threads);
    let results: Vec<Result<MatchCheck, ValidationError>> =
        sources.par_iter().map(|h_s| check_source_match(g, ggd, h_s, registry)).collect();
    // first error in enumeration order, independent of scheduling
    let checks = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(summarize(checks))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RuleReport {
    pub name: String,
    pub outcome: Result<GgdValidation, ValidationError>,
}

impl RuleReport {
    pub fn holds(&self) -> bool {
        matches!(&self.outcome, Ok(v) if v.verdict == Verdict::Holds)
    }

    pub fn violations(&self) -> &[Violation] {
        match &self.outcome {
            Ok(v) => &v.violations,
            Err(_) => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub rules: Vec<RuleReport>,
}

impl ValidationReport {
    /// `G ⊨ Σ`: every rule was evaluated and holds.
    pub fn holds(&self) -> bool {
        self.rules.iter().all(RuleReport::holds)
    }

    pub fn has_errors(&self) -> bool {
        self.rules.iter().any(|r| r.outcome.is_err())
    }

    pub fn violations(&self) -> impl Iterator<Item = &Violation> {
        self.rules.iter().flat_map(|r| r.violations())
    }

    pub fn rule(&self, name: &str) -> Option<&RuleReport> {
        self.rules.iter().find(|r| r.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationOptions {
    pub parallelism: usize,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions { parallelism: 1 }
    }
}

/// Validates every rule in declaration order. A rule error is recorded in its
/// entry and does not stop the other rules.
pub fn validate_set(g: &PropertyGraph, rules: &[Ggd], registry: &DistanceRegistry) -> ValidationReport {
    validate_set_with(g, rules, registry, ValidationOptions::default())
}

pub fn validate_set_with(
    g: &PropertyGraph,
    rules: &[Ggd],
    registry: &DistanceRegistry,
    options: ValidationOptions,
) -> ValidationReport {
    let threads = options.parallelism.max(1);
    let run = |ggd: &Ggd| RuleReport {
        name: ggd.name().to_string(),
        outcome: if threads == 1 {
            validate_ggd(g, ggd, registry)
        } else {
            validate_ggd_parallel(g, ggd, registry, threads)
        },
    };
    if threads == 1 {
        return ValidationReport { rules: rules.iter().map(run).collect() };
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| ValidationReport { rules: rules.par_iter().map(run).collect() }),
        Err(_) => ValidationReport { rules: rules.iter().map(run).collect() },
    }
}
