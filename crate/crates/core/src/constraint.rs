//! Differential constraints and their satisfaction over a binding.
//!
//! Three forms exist: a property compared against a constant through a
//! distance function, two properties compared through a distance function,
//! and (in)equality of the bound objects themselves. A distance constraint is
//! only satisfied when every property it reads exists; this holds for all six
//! operators, `!=` included.

use std::fmt;

use thiserror::Error;

use crate::distance::{DistanceError, DistanceRegistry};
use crate::graph::{GraphError, ObjectId, PropertyGraph, Value};
use crate::pattern::Binding;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompareOp {
    Eq,
    Lt,
    Gt,
    Le,
    Ge,
    Ne,
}

impl CompareOp {
    pub const ALL: [CompareOp; 6] = [CompareOp::Eq, CompareOp::Lt, CompareOp::Gt, CompareOp::Le, CompareOp::Ge, CompareOp::Ne];

    /// `distance op threshold`.
    pub fn holds(self, distance: f64, threshold: f64) -> bool {
        match self {
            CompareOp::Eq => distance == threshold,
            CompareOp::Lt => distance < threshold,
            CompareOp::Gt => distance > threshold,
            CompareOp::Le => distance <= threshold,
            CompareOp::Ge => distance >= threshold,
            CompareOp::Ne => distance != threshold,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            CompareOp::Eq => "=",
            CompareOp::Lt => "<",
            CompareOp::Gt => ">",
            CompareOp::Le => "<=",
            CompareOp::Ge => ">=",
            CompareOp::Ne => "!=",
        }
    }
}

impl fmt::Display for CompareOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `var.key`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PropertyRef {
    pub var: String,
    pub key: String,
}

impl PropertyRef {
    pub fn new(var: impl Into<String>, key: impl Into<String>) -> Self {
        PropertyRef { var: var.into(), key: key.into() }
    }
}

impl fmt::Display for PropertyRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.", self.var)?;
        if is_identifier(&self.key) {
            f.write_str(&self.key)
        } else {
            write!(f, "{}", quote(&self.key))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Constraint {
    /// `distance(prop, constant) op threshold`, or with the constant written
    /// first when `constant_first` is set.
    VarConst {
        prop: PropertyRef,
        distance: String,
        op: CompareOp,
        constant: Value,
        threshold: f64,
        constant_first: bool,
    },
    /// `distance(left, right) op threshold`
    VarVar { left: PropertyRef, right: PropertyRef, distance: String, op: CompareOp, threshold: f64 },
    /// `left = right`, or `left != right` when negated.
    Identity { left: String, right: String, negated: bool },
}

impl Constraint {
    pub fn var_const(
        var: impl Into<String>,
        key: impl Into<String>,
        distance: impl Into<String>,
        op: CompareOp,
        constant: impl Into<Value>,
        threshold: f64,
    ) -> Self {
        Constraint::VarConst {
            prop: PropertyRef::new(var, key),
            distance: distance.into(),
            op,
            constant: constant.into(),
            threshold,
            constant_first: false,
        }
    }

    pub fn var_var(left: PropertyRef, right: PropertyRef, distance: impl Into<String>, op: CompareOp, threshold: f64) -> Self {
        Constraint::VarVar { left, right, distance: distance.into(), op, threshold }
    }

    pub fn same(left: impl Into<String>, right: impl Into<String>) -> Self {
        Constraint::Identity { left: left.into(), right: right.into(), negated: false }
    }

    pub fn distinct(left: impl Into<String>, right: impl Into<String>) -> Self {
        Constraint::Identity { left: left.into(), right: right.into(), negated: true }
    }

    pub fn variables(&self) -> Vec<&str> {
        match self {
            Constraint::VarConst { prop, .. } => vec![&prop.var],
            Constraint::VarVar { left, right, .. } => vec![&left.var, &right.var],
            Constraint::Identity { left, right, .. } => vec![left, right],
        }
    }

    pub fn distance_name(&self) -> Option<&str> {
        match self {
            Constraint::VarConst { distance, .. } | Constraint::VarVar { distance, .. } => Some(distance),
            Constraint::Identity { .. } => None,
        }
    }

    pub fn threshold(&self) -> Option<f64> {
        match self {
            Constraint::VarConst { threshold, .. } | Constraint::VarVar { threshold, .. } => Some(*threshold),
            Constraint::Identity { .. } => None,
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::VarConst { prop, distance, op, constant, threshold, constant_first } => {
                let c = literal(constant);
                if *constant_first {
                    write!(f, "{distance}({c}, {prop}) {op} {threshold:?}")
                } else {
                    write!(f, "{distance}({prop}, {c}) {op} {threshold:?}")
                }
            }
            Constraint::VarVar { left, right, distance, op, threshold } => {
                write!(f, "{distance}({left}, {right}) {op} {threshold:?}")
            }
            Constraint::Identity { left, right, negated } => {
                write!(f, "{left} {} {right}", if *negated { "!=" } else { "=" })
            }
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !matches!(s, "true" | "false" | "GGD" | "SOURCE" | "TARGET" | "WHERE")
}

pub(crate) fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if c.is_control() => out.push_str(&format!("\\u{{{:x}}}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Literal syntax of a value, as accepted back by the rule parser.
pub(crate) fn literal(v: &Value) -> String {
    match v {
        Value::Text(s) => quote(s),
        Value::Integer(i) => i.to_string(),
        Value::Real(r) => {
            let s = format!("{r:?}");
            if s.contains(['.', 'e', 'E']) {
                s
            } else {
                format!("{s}.0")
            }
        }
        Value::Boolean(b) => b.to_string(),
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("variable `{0}` is not bound")]
    UnboundVariable(String),
    #[error(transparent)]
    Distance(#[from] DistanceError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An object as seen by constraint evaluation: either an object of the graph
/// or a not-yet-created object of a repair plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObjectRef {
    Existing(ObjectId),
    Planned(crate::graph::ObjectKind, usize),
}

/// Read access to the bound objects of a (possibly hypothetical) match.
pub trait MatchView {
    fn object(&self, var: &str) -> Result<ObjectRef, EvalError>;
    fn property(&self, var: &str, key: &str) -> Result<Option<&Value>, EvalError>;
}

/// A binding over an existing graph.
pub struct GraphMatch<'a> {
    pub graph: &'a PropertyGraph,
    pub binding: &'a Binding,
}

impl MatchView for GraphMatch<'_> {
    fn object(&self, var: &str) -> Result<ObjectRef, EvalError> {
        self.binding
            .get(var)
            .map(ObjectRef::Existing)
            .ok_or_else(|| EvalError::UnboundVariable(var.to_string()))
    }

    fn property(&self, var: &str, key: &str) -> Result<Option<&Value>, EvalError> {
        let id = self.binding.get(var).ok_or_else(|| EvalError::UnboundVariable(var.to_string()))?;
        Ok(self.graph.get_property(id, key)?)
    }
}

/// Outcome of one constraint, distinguishing a plain failure from a failure
/// caused by an absent property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Satisfaction {
    Holds,
    Fails,
    MissingProperty,
}

impl Satisfaction {
    pub fn holds(self) -> bool {
        self == Satisfaction::Holds
    }
}

pub fn evaluate(c: &Constraint, m: &impl MatchView, registry: &DistanceRegistry) -> Result<Satisfaction, EvalError> {
    let verdict = |ok: bool| if ok { Satisfaction::Holds } else { Satisfaction::Fails };
    match c {
        Constraint::VarConst { prop, distance, op, constant, threshold, constant_first } => {
            let f = registry.get(distance)?;
            let Some(value) = m.property(&prop.var, &prop.key)? else {
                return Ok(Satisfaction::MissingProperty);
            };
            let d = if *constant_first { f.eval(constant, value)? } else { f.eval(value, constant)? };
            Ok(verdict(op.holds(d, *threshold)))
        }
        Constraint::VarVar { left, right, distance, op, threshold } => {
            let f = registry.get(distance)?;
            let a = m.property(&left.var, &left.key)?;
            let b = m.property(&right.var, &right.key)?;
            match (a, b) {
                (Some(a), Some(b)) => Ok(verdict(op.holds(f.eval(a, b)?, *threshold))),
                _ => Ok(Satisfaction::MissingProperty),
            }
        }
        Constraint::Identity { left, right, negated } => {
            let same = m.object(left)? == m.object(right)?;
            Ok(verdict(same != *negated))
        }
    }
}

pub fn eval_constraint(c: &Constraint, b: &Binding, g: &PropertyGraph, registry: &DistanceRegistry) -> Result<bool, EvalError> {
    Ok(evaluate(c, &GraphMatch { graph: g, binding: b }, registry)?.holds())
}

/// Summary of a conjunction: whether it holds and whether any member failed
/// because a property was absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SetOutcome {
    pub holds: bool,
    pub missing_property: bool,
}

/// Evaluates every member (no short circuit), so rule errors surface
/// regardless of order.
pub fn evaluate_set(cs: &[Constraint], m: &impl MatchView, registry: &DistanceRegistry) -> Result<SetOutcome, EvalError> {
    let mut out = SetOutcome { holds: true, missing_property: false };
    for c in cs {
        match evaluate(c, m, registry)? {
            Satisfaction::Holds => {}
            Satisfaction::Fails => out.holds = false,
            Satisfaction::MissingProperty => {
                out.holds = false;
                out.missing_property = true;
            }
        }
    }
    Ok(out)
}

pub fn eval_constraint_set(cs: &[Constraint], b: &Binding, g: &PropertyGraph, registry: &DistanceRegistry) -> Result<bool, EvalError> {
    Ok(evaluate_set(cs, &GraphMatch { graph: g, binding: b }, registry)?.holds)
}
