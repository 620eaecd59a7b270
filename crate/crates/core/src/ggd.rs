//! Graph generating dependencies.

use std::fmt;

use thiserror::Error;

use crate::constraint::Constraint;
use crate::distance::DistanceRegistry;
use crate::graph::ObjectKind;
use crate::pattern::GraphPattern;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GgdError {
    #[error("rule `{rule}`: the source pattern must not be empty")]
    EmptySource { rule: String },
    #[error("rule `{rule}`: {side} constraint `{constraint}` refers to undeclared variable `{var}`")]
    Scope { rule: String, side: Side, constraint: String, var: String },
    #[error("rule `{rule}`: variable `{var}` is a {source_kind} in the source pattern but a {target_kind} in the target pattern")]
    KindMismatch { rule: String, var: String, source_kind: ObjectKind, target_kind: ObjectKind },
    #[error("rule `{rule}`: unknown distance function `{distance}`")]
    UnknownDistance { rule: String, distance: String },
    #[error("rule `{rule}`: threshold {threshold} must be finite and non-negative")]
    InvalidThreshold { rule: String, threshold: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Source,
    Target,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Source => "source",
            Side::Target => "target",
        })
    }
}

/// `source, source_constraints -> target, target_constraints`.
///
/// Every source match satisfying the source constraints must extend to a
/// target match (agreeing on shared variables) satisfying the target
/// constraints. Target constraints may mention any source variable, even one
/// absent from the target pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct Ggd {
    name: String,
    source: GraphPattern,
    source_constraints: Vec<Constraint>,
    target: GraphPattern,
    target_constraints: Vec<Constraint>,
}

impl Ggd {
    pub fn new(
        name: impl Into<String>,
        source: GraphPattern,
        source_constraints: Vec<Constraint>,
        target: GraphPattern,
        target_constraints: Vec<Constraint>,
    ) -> Result<Ggd, GgdError> {
        let ggd = Ggd { name: name.into(), source, source_constraints, target, target_constraints };
        ggd.check()?;
        Ok(ggd)
    }

    fn check(&self) -> Result<(), GgdError> {
        let rule = || self.name.clone();
        if self.source.is_empty() {
            return Err(GgdError::EmptySource { rule: rule() });
        }
        for var in self.target.variables() {
            if let (Some(source_kind), Some(target_kind)) = (self.source.kind_of(var), self.target.kind_of(var)) {
                if source_kind != target_kind {
                    return Err(GgdError::KindMismatch { rule: rule(), var: var.to_string(), source_kind, target_kind });
                }
            }
        }
        let sides = [(Side::Source, &self.source_constraints), (Side::Target, &self.target_constraints)];
        for (side, constraints) in sides {
            for c in constraints {
                for var in c.variables() {
                    let declared = self.source.kind_of(var).is_some()
                        || (side == Side::Target && self.target.kind_of(var).is_some());
                    if !declared {
                        return Err(GgdError::Scope {
                            rule: rule(),
                            side,
                            constraint: c.to_string(),
                            var: var.to_string(),
                        });
                    }
                }
                if let Some(t) = c.threshold() {
                    if !(t.is_finite() && t >= 0.0) {
                        return Err(GgdError::InvalidThreshold { rule: rule(), threshold: t.to_string() });
                    }
                }
            }
        }
        Ok(())
    }

    /// Fails if any constraint names a distance missing from `registry`.
    pub fn check_distances(&self, registry: &DistanceRegistry) -> Result<(), GgdError> {
        for c in self.source_constraints.iter().chain(&self.target_constraints) {
            if let Some(d) = c.distance_name() {
                if !registry.contains(d) {
                    return Err(GgdError::UnknownDistance { rule: self.name.clone(), distance: d.to_string() });
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &GraphPattern {
        &self.source
    }

    pub fn source_constraints(&self) -> &[Constraint] {
        &self.source_constraints
    }

    pub fn target(&self) -> &GraphPattern {
        &self.target
    }

    pub fn target_constraints(&self) -> &[Constraint] {
        &self.target_constraints
    }

    /// Target pattern variables that also occur in the source pattern.
    pub fn shared_variables(&self) -> impl Iterator<Item = &str> {
        self.target.variables().filter(|v| self.source.kind_of(v).is_some())
    }

    /// Target pattern variables that do not occur in the source pattern.
    pub fn fresh_variables(&self) -> impl Iterator<Item = &str> {
        self.target.variables().filter(|v| self.source.kind_of(v).is_none())
    }
}
