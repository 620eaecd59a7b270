//! Add-only repair of GGD violations.
//!
//! A violation is repaired by instantiating the target pattern: shared
//! variables keep their source objects, fresh variables that a target
//! identity constraint equates with an already resolved object reuse it, and
//! the remaining fresh variables become new vertices and edges. Properties of
//! new objects are filled in from forcing constraints (`d(x.k, c) = 0`,
//! `d(x.k, y.l) <= 0`, ...). Every target constraint is then checked against
//! the planned result; whatever still fails blocks the repair. Existing
//! objects are never modified, so a violation that can only be fixed by
//! editing or merging existing data is reported as unrepairable.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::constraint::{evaluate, CompareOp, Constraint, EvalError, MatchView, ObjectRef, Satisfaction};
use crate::distance::DistanceRegistry;
use crate::ggd::Ggd;
use crate::graph::{GraphError, Labels, ObjectId, ObjectKind, Properties, PropertyGraph, Value};
use crate::pattern::{Binding, Label};
use crate::validation::{check_target, validate_set_with, ValidationError, ValidationOptions, Violation};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepairError {
    #[error("violation of rule `{rule}` refers to a different graph state")]
    StaleViolation { rule: String },
    #[error("violation of rule `{violation_rule}` does not belong to rule `{rule}`")]
    RuleMismatch { rule: String, violation_rule: String },
    #[error("the repair plan for rule `{rule}` is blocked and cannot be applied")]
    Unrepairable { rule: String },
    #[error("the round cap must be at least 1")]
    InvalidRoundCap,
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Where a planned object lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Slot {
    Existing(ObjectId),
    NewVertex(usize),
    NewEdge(usize),
}

impl Slot {
    fn kind(self) -> ObjectKind {
        match self {
            Slot::Existing(id) => id.kind(),
            Slot::NewVertex(_) => ObjectKind::Vertex,
            Slot::NewEdge(_) => ObjectKind::Edge,
        }
    }

    fn object_ref(self) -> ObjectRef {
        match self {
            Slot::Existing(id) => ObjectRef::Existing(id),
            Slot::NewVertex(i) => ObjectRef::Planned(ObjectKind::Vertex, i),
            Slot::NewEdge(i) => ObjectRef::Planned(ObjectKind::Edge, i),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlannedVertex {
    /// Target variables bound to this vertex, first one created it.
    pub vars: Vec<String>,
    pub labels: Labels,
    pub properties: Properties,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlannedEdge {
    pub vars: Vec<String>,
    pub src: Slot,
    pub dst: Slot,
    pub labels: Labels,
    pub properties: Properties,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Blocker {
    /// The target pattern cannot be laid over the resolved objects.
    Structure { var: String, message: String },
    /// A target constraint is false on the planned result.
    Constraint { constraint: String, missing_property: bool },
    /// A target constraint could not be evaluated on the planned result.
    Evaluation { constraint: String, message: String },
}

impl fmt::Display for Blocker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Blocker::Structure { var, message } => write!(f, "`{var}`: {message}"),
            Blocker::Constraint { constraint, missing_property: true } => {
                write!(f, "`{constraint}` fails: a property is missing")
            }
            Blocker::Constraint { constraint, .. } => write!(f, "`{constraint}` fails on existing data"),
            Blocker::Evaluation { constraint, message } => write!(f, "`{constraint}`: {message}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepairPlan {
    pub rule: String,
    pub source_binding: Binding,
    /// Target variables resolved to objects already in the graph.
    pub aliased: BTreeMap<String, ObjectId>,
    pub new_vertices: Vec<PlannedVertex>,
    pub new_edges: Vec<PlannedEdge>,
    pub warnings: Vec<String>,
    pub blockers: Vec<Blocker>,
    pub graph_version: usize,
    ggd: Ggd,
}

impl RepairPlan {
    pub fn is_repairable(&self) -> bool {
        self.blockers.is_empty()
    }

    pub fn ggd(&self) -> &Ggd {
        &self.ggd
    }

    fn existing_ids(&self) -> impl Iterator<Item = ObjectId> + '_ {
        let endpoints = self.new_edges.iter().flat_map(|e| [e.src, e.dst]).filter_map(|s| match s {
            Slot::Existing(id) => Some(id),
            _ => None,
        });
        self.source_binding.iter().map(|(_, id)| id).chain(self.aliased.values().copied()).chain(endpoints)
    }
}

struct Planner<'a> {
    g: &'a PropertyGraph,
    ggd: &'a Ggd,
    source_binding: &'a Binding,
    slots: BTreeMap<String, Slot>,
    vertices: Vec<PlannedVertex>,
    edges: Vec<PlannedEdge>,
    warnings: Vec<String>,
    blockers: Vec<Blocker>,
}

impl<'a> Planner<'a> {
    fn kind_of(&self, var: &str) -> Option<ObjectKind> {
        self.ggd.target().kind_of(var).or_else(|| self.ggd.source().kind_of(var))
    }

    fn block(&mut self, var: &str, message: impl Into<String>) {
        self.blockers.push(Blocker::Structure { var: var.to_string(), message: message.into() });
    }

    /// Binds `var` to `slot`, recording a blocker on conflict. Returns whether
    /// anything changed.
    fn bind(&mut self, var: &str, slot: Slot) -> bool {
        match self.slots.get(var) {
            Some(&current) if current == slot => false,
            Some(_) => {
                self.block(var, "is forced onto two different objects");
                false
            }
            None => {
                self.slots.insert(var.to_string(), slot);
                match slot {
                    Slot::NewVertex(i) => self.vertices[i].vars.push(var.to_string()),
                    Slot::NewEdge(i) => self.edges[i].vars.push(var.to_string()),
                    Slot::Existing(_) => {}
                }
                true
            }
        }
    }

    /// Propagates identity constraints and the endpoints of edges already
    /// resolved to existing edges, until nothing changes.
    fn propagate(&mut self) {
        loop {
            let mut changed = false;
            for c in self.ggd.target_constraints() {
                let Constraint::Identity { left, right, negated: false } = c else { continue };
                let (l, r) = (self.slots.get(left).copied(), self.slots.get(right).copied());
                let (from, var) = match (l, r) {
                    (Some(s), None) => (s, right),
                    (None, Some(s)) => (s, left),
                    _ => continue,
                };
                if Some(from.kind()) != self.kind_of(var) {
                    if !self.blockers.iter().any(|b| matches!(b, Blocker::Structure { var: v, .. } if v == var)) {
                        self.block(var, "is equated with an object of the other kind");
                    }
                    continue;
                }
                changed |= self.bind(var, from);
            }
            for pe in self.ggd.target().edges() {
                let Some(Slot::Existing(e)) = self.slots.get(&pe.name).copied() else { continue };
                let Ok((s, d)) = self.g.endpoints(e) else { continue };
                for (end, id) in [(&pe.src, s), (&pe.dst, d)] {
                    if !self.slots.contains_key(end.as_str()) {
                        changed |= self.bind(end, Slot::Existing(id));
                    }
                }
            }
            if !changed {
                return;
            }
        }
    }

    fn new_vertex(&mut self, var: &str) {
        self.vertices.push(PlannedVertex { vars: Vec::new(), labels: Labels::new(), properties: Properties::new() });
        self.bind(var, Slot::NewVertex(self.vertices.len() - 1));
    }

    fn new_edge(&mut self, var: &str) {
        let pe = self.ggd.target().edge(var).expect("edge variable").clone();
        let (Some(&src), Some(&dst)) = (self.slots.get(&pe.src), self.slots.get(&pe.dst)) else {
            self.block(var, "has an unresolved endpoint");
            return;
        };
        self.edges.push(PlannedEdge { vars: Vec::new(), src, dst, labels: Labels::new(), properties: Properties::new() });
        self.bind(var, Slot::NewEdge(self.edges.len() - 1));
    }

    fn resolve(&mut self) {
        for var in self.ggd.shared_variables() {
            if let Some(id) = self.source_binding.get(var) {
                self.slots.insert(var.to_string(), Slot::Existing(id));
            }
        }
        // source variables outside the target pattern can still anchor identities
        for (var, id) in self.source_binding.iter() {
            self.slots.entry(var.to_string()).or_insert(Slot::Existing(id));
        }
        self.propagate();
        let fresh_vertices: Vec<String> =
            self.ggd.target().vertices().iter().map(|v| v.name.clone()).filter(|v| self.ggd.source().kind_of(v).is_none()).collect();
        for var in &fresh_vertices {
            if !self.slots.contains_key(var) {
                self.new_vertex(var);
                self.propagate();
            }
        }
        let fresh_edges: Vec<String> =
            self.ggd.target().edges().iter().map(|e| e.name.clone()).filter(|e| self.ggd.source().kind_of(e).is_none()).collect();
        for var in &fresh_edges {
            if !self.slots.contains_key(var) {
                self.new_edge(var);
                self.propagate();
            }
        }
    }

    /// Target labels go onto new objects and must already be present on
    /// existing ones; edges must connect the objects their endpoints resolve to.
    fn check_structure(&mut self) {
        let target = self.ggd.target();
        let mut labelled: Vec<(String, Label)> =
            target.vertices().iter().map(|v| (v.name.clone(), v.label.clone())).collect();
        labelled.extend(target.edges().iter().map(|e| (e.name.clone(), e.label.clone())));
        for (var, label) in labelled {
            let Some(&slot) = self.slots.get(&var) else { continue };
            match (slot, label) {
                (Slot::Existing(id), label) => {
                    let ok = self.g.labels(id).map(|l| label.matches(l)).unwrap_or(false);
                    if !ok {
                        self.block(&var, format!("is bound to {id}, which does not carry label {label}"));
                    }
                }
                (Slot::NewVertex(i), Label::Named(l)) => {
                    self.vertices[i].labels.insert(l);
                }
                (Slot::NewEdge(i), Label::Named(l)) => {
                    self.edges[i].labels.insert(l);
                }
                (Slot::NewVertex(_), Label::Wildcard) | (Slot::NewEdge(_), Label::Wildcard) => {}
            }
        }
        for v in &self.vertices {
            if v.labels.is_empty() {
                self.warnings.push(format!("new vertex for `{}` has no label", v.vars[0]));
            }
        }
        for e in &self.edges {
            if e.labels.is_empty() {
                self.warnings.push(format!("new edge for `{}` has no label", e.vars[0]));
            }
        }
        let mut broken = Vec::new();
        for pe in target.edges() {
            let (Some(&edge), Some(&src), Some(&dst)) =
                (self.slots.get(&pe.name), self.slots.get(&pe.src), self.slots.get(&pe.dst))
            else {
                continue;
            };
            let actual = match edge {
                Slot::Existing(e) => match self.g.endpoints(e) {
                    Ok((s, d)) => (Slot::Existing(s), Slot::Existing(d)),
                    Err(_) => continue,
                },
                Slot::NewEdge(i) => (self.edges[i].src, self.edges[i].dst),
                Slot::NewVertex(_) => continue,
            };
            if actual != (src, dst) {
                broken.push(pe.name.clone());
            }
        }
        for var in broken {
            self.block(&var, "cannot connect the objects its endpoints are bound to");
        }
    }

    fn property(&self, var: &str, key: &str) -> Option<&Value> {
        match *self.slots.get(var)? {
            Slot::Existing(id) => self.g.get_property(id, key).ok().flatten(),
            Slot::NewVertex(i) => self.vertices[i].properties.get(key),
            Slot::NewEdge(i) => self.edges[i].properties.get(key),
        }
    }

    fn assign(&mut self, var: &str, key: &str, value: Value) -> bool {
        let props = match self.slots.get(var) {
            Some(Slot::NewVertex(i)) => &mut self.vertices[*i].properties,
            Some(Slot::NewEdge(i)) => &mut self.edges[*i].properties,
            _ => return false,
        };
        if props.contains_key(key) {
            return false;
        }
        props.insert(key.to_string(), value);
        true
    }

    /// Fills unset properties of new objects from constraints that pin them to
    /// a constant or to another known property at distance zero. Positive
    /// thresholds are never inverted.
    fn synthesize(&mut self) {
        let forcing = |op: CompareOp, t: f64| matches!(op, CompareOp::Eq | CompareOp::Le) && t == 0.0;
        loop {
            let mut changed = false;
            for c in self.ggd.target_constraints() {
                match c {
                    Constraint::VarConst { prop, op, constant, threshold, .. } if forcing(*op, *threshold) => {
                        changed |= self.assign(&prop.var, &prop.key, constant.clone());
                    }
                    Constraint::VarVar { left, right, op, threshold, .. } if forcing(*op, *threshold) => {
                        let (l, r) = (self.property(&left.var, &left.key).cloned(), self.property(&right.var, &right.key).cloned());
                        match (l, r) {
                            (Some(v), None) => changed |= self.assign(&right.var, &right.key, v),
                            (None, Some(v)) => changed |= self.assign(&left.var, &left.key, v),
                            _ => {}
                        }
                    }
                    _ => {}
                }
            }
            if !changed {
                return;
            }
        }
    }

    fn verify(&mut self, registry: &DistanceRegistry) {
        let mut found = Vec::new();
        for c in self.ggd.target_constraints() {
            let blocker = match evaluate(c, &*self, registry) {
                Ok(Satisfaction::Holds) => continue,
                Ok(Satisfaction::Fails) => Blocker::Constraint { constraint: c.to_string(), missing_property: false },
                Ok(Satisfaction::MissingProperty) => Blocker::Constraint { constraint: c.to_string(), missing_property: true },
                Err(e) => Blocker::Evaluation { constraint: c.to_string(), message: e.to_string() },
            };
            found.push(blocker);
        }
        self.blockers.extend(found);
    }
}

impl MatchView for Planner<'_> {
    fn object(&self, var: &str) -> Result<ObjectRef, EvalError> {
        self.slots.get(var).map(|s| s.object_ref()).ok_or_else(|| EvalError::UnboundVariable(var.to_string()))
    }

    fn property(&self, var: &str, key: &str) -> Result<Option<&Value>, EvalError> {
        if !self.slots.contains_key(var) {
            return Err(EvalError::UnboundVariable(var.to_string()));
        }
        Ok(Planner::property(self, var, key))
    }
}

/// Plans the repair of one violation of `ggd` found on `g`.
pub fn plan_repair(
    g: &PropertyGraph,
    ggd: &Ggd,
    violation: &Violation,
    registry: &DistanceRegistry,
) -> Result<RepairPlan, RepairError> {
    if violation.ggd_name != ggd.name() {
        return Err(RepairError::RuleMismatch { rule: ggd.name().to_string(), violation_rule: violation.ggd_name.clone() });
    }
    if violation.graph_version != g.len() || violation.source_binding.iter().any(|(_, id)| !g.contains(id)) {
        return Err(RepairError::StaleViolation { rule: ggd.name().to_string() });
    }
    let mut p = Planner {
        g,
        ggd,
        source_binding: &violation.source_binding,
        slots: BTreeMap::new(),
        vertices: Vec::new(),
        edges: Vec::new(),
        warnings: Vec::new(),
        blockers: Vec::new(),
    };
    p.resolve();
    p.check_structure();
    if p.blockers.is_empty() {
        p.synthesize();
        p.verify(registry);
    }
    let aliased = ggd
        .target()
        .variables()
        .filter_map(|v| match p.slots.get(v) {
            Some(Slot::Existing(id)) if ggd.source().kind_of(v).is_none() => Some((v.to_string(), *id)),
            _ => None,
        })
        .collect();
    Ok(RepairPlan {
        rule: ggd.name().to_string(),
        source_binding: violation.source_binding.clone(),
        aliased,
        new_vertices: p.vertices,
        new_edges: p.edges,
        warnings: p.warnings,
        blockers: p.blockers,
        graph_version: violation.graph_version,
        ggd: ggd.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CreatedObject {
    pub vars: Vec<String>,
    pub id: ObjectId,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AppliedRepair {
    pub rule: String,
    pub round: usize,
    pub source_binding: Binding,
    pub aliased: BTreeMap<String, ObjectId>,
    pub created: Vec<CreatedObject>,
    pub warnings: Vec<String>,
}

/// Applies repairable plans in order. A plan whose violation has meanwhile
/// been fixed by an earlier plan is skipped, so the returned list may be
/// shorter than `plans`.
pub fn apply_plans(
    g: &mut PropertyGraph,
    plans: &[RepairPlan],
    registry: &DistanceRegistry,
) -> Result<Vec<AppliedRepair>, RepairError> {
    apply_plans_in_round(g, plans, registry, 1)
}

fn apply_plans_in_round(
    g: &mut PropertyGraph,
    plans: &[RepairPlan],
    registry: &DistanceRegistry,
    round: usize,
) -> Result<Vec<AppliedRepair>, RepairError> {
    if let Some(p) = plans.iter().find(|p| !p.is_repairable()) {
        return Err(RepairError::Unrepairable { rule: p.rule.clone() });
    }
    if let Some(p) = plans.iter().find(|p| p.graph_version > g.len() || p.existing_ids().any(|id| !g.contains(id))) {
        return Err(RepairError::StaleViolation { rule: p.rule.clone() });
    }
    let mut applied = Vec::new();
    for plan in plans {
        let (still_violated, _) = check_target(g, &plan.ggd, &plan.source_binding, registry)?;
        if still_violated.is_none() {
            continue;
        }
        let mut created = Vec::new();
        let mut vertex_ids = Vec::new();
        for v in &plan.new_vertices {
            let id = g.add_vertex(v.labels.clone(), v.properties.clone())?;
            vertex_ids.push(id);
            created.push(CreatedObject { vars: v.vars.clone(), id });
        }
        let resolve = |s: Slot| match s {
            Slot::Existing(id) => id,
            Slot::NewVertex(i) => vertex_ids[i],
            Slot::NewEdge(_) => unreachable!("edge endpoints are vertices"),
        };
        for e in &plan.new_edges {
            let id = g.add_edge(resolve(e.src), resolve(e.dst), e.labels.clone(), e.properties.clone())?;
            created.push(CreatedObject { vars: e.vars.clone(), id });
        }
        applied.push(AppliedRepair {
            rule: plan.rule.clone(),
            round,
            source_binding: plan.source_binding.clone(),
            aliased: plan.aliased.clone(),
            created,
            warnings: plan.warnings.clone(),
        });
    }
    Ok(applied)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepairOutcome {
    /// Rounds run, including the final round that found nothing to apply.
    pub rounds_executed: usize,
    pub applied: Vec<AppliedRepair>,
    /// Blocked plans from the last round.
    pub unrepairable: Vec<RepairPlan>,
    /// The last round applied nothing.
    pub converged: bool,
    pub hit_round_cap: bool,
}

impl RepairOutcome {
    pub fn plans_applied(&self) -> usize {
        self.applied.len()
    }

    /// Ids of all objects added, in creation order.
    pub fn generated(&self) -> Vec<ObjectId> {
        self.applied.iter().flat_map(|a| a.created.iter().map(|c| c.id)).collect()
    }

    pub fn is_clean(&self) -> bool {
        self.converged && self.unrepairable.is_empty()
    }
}

/// Repeats validate, plan, apply until a round applies nothing or
/// `max_rounds` rounds have run. Rules with unbounded generation (each new
/// object triggering the rule again) stop at the cap.
pub fn repair_to_fixpoint(
    g: &mut PropertyGraph,
    rules: &[Ggd],
    registry: &DistanceRegistry,
    max_rounds: usize,
    options: ValidationOptions,
) -> Result<RepairOutcome, RepairError> {
    if max_rounds == 0 {
        return Err(RepairError::InvalidRoundCap);
    }
    let mut outcome =
        RepairOutcome { rounds_executed: 0, applied: Vec::new(), unrepairable: Vec::new(), converged: false, hit_round_cap: false };
    for round in 1..=max_rounds {
        outcome.rounds_executed = round;
        let report = validate_set_with(g, rules, registry, options);
        let mut plans = Vec::new();
        let mut blocked = Vec::new();
        for (ggd, rule_report) in rules.iter().zip(&report.rules) {
            let result = rule_report.outcome.as_ref().map_err(|e| RepairError::Validation(e.clone()))?;
            for v in &result.violations {
                let plan = plan_repair(g, ggd, v, registry)?;
                if plan.is_repairable() {
                    plans.push(plan);
                } else {
                    blocked.push(plan);
                }
            }
        }
        let applied = apply_plans_in_round(g, &plans, registry, round)?;
        outcome.unrepairable = blocked;
        if applied.is_empty() {
            outcome.converged = true;
            return Ok(outcome);
        }
        outcome.applied.extend(applied);
    }
    outcome.hit_round_cap = true;
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_ggd_file;
    use crate::graph::{labels, props};
    use crate::validation::{validate_ggd, Verdict};

    fn rules(src: &str) -> Vec<Ggd> {
        parse_ggd_file(src, &DistanceRegistry::new()).unwrap()
    }

    fn plan_first(g: &PropertyGraph, r: &Ggd) -> RepairPlan {
        let reg = DistanceRegistry::new();
        let v = validate_ggd(g, r, &reg).unwrap().violations.remove(0);
        plan_repair(g, r, &v, &reg).unwrap()
    }

    #[test]
    fn new_vertex_gets_forced_properties() {
        let mut g = PropertyGraph::new();
        g.add_vertex(labels(["purchase"]), props([("amount", Value::from(12i64)), ("item", "lamp".into())])).unwrap();
        let r = rules(
            "GGD summary { SOURCE { (p:purchase) } => TARGET { (p)-[e:summarizedBy]->(s:summary) }
              WHERE { exact(s.amount, p.amount) = 0, exact(s.item, p.item) = 0, exact(s.kind, \"purchase\") = 0 } }",
        );
        let plan = plan_first(&g, &r[0]);
        assert!(plan.is_repairable(), "{:?}", plan.blockers);
        assert_eq!(plan.new_vertices.len(), 1);
        assert_eq!(plan.new_vertices[0].properties, props([("amount", Value::from(12i64)), ("item", "lamp".into()), ("kind", "purchase".into())]));
        let applied = apply_plans(&mut g, &[plan], &DistanceRegistry::new()).unwrap();
        assert_eq!(applied[0].created.len(), 2);
        assert_eq!(validate_ggd(&g, &r[0], &DistanceRegistry::new()).unwrap().verdict, Verdict::Holds);
    }

    #[test]
    fn identity_only_violation_is_unrepairable() {
        let mut g = PropertyGraph::new();
        let p = g.add_vertex(labels(["person"]), Properties::new()).unwrap();
        let c = g.add_vertex(labels(["city"]), Properties::new()).unwrap();
        let i = g.add_vertex(labels(["city"]), Properties::new()).unwrap();
        g.add_edge(p, c, labels(["worksIn"]), Properties::new()).unwrap();
        g.add_edge(p, i, labels(["livesIn"]), Properties::new()).unwrap();
        let r = rules("GGD s { SOURCE { (p:person)-[w:worksIn]->(c:city), (p)-[l:livesIn]->(i:city) } => TARGET { } WHERE { c = i } }");
        let plan = plan_first(&g, &r[0]);
        assert!(!plan.is_repairable());
        assert!(matches!(&plan.blockers[0], Blocker::Constraint { missing_property: false, .. }));
        let before = g.clone();
        assert!(matches!(apply_plans(&mut g, &[plan], &DistanceRegistry::new()), Err(RepairError::Unrepairable { .. })));
        assert_eq!(g, before);
    }

    #[test]
    fn fresh_variable_aliases_existing_object() {
        let mut g = PropertyGraph::new();
        let a = g.add_vertex(labels(["a"]), Properties::new()).unwrap();
        g.add_vertex(labels(["b"]), Properties::new()).unwrap();
        let r = rules("GGD r { SOURCE { (x:a) } => TARGET { (x)-[e:self]->(y) } WHERE { y = x } }");
        let plan = plan_first(&g, &r[0]);
        assert!(plan.new_vertices.is_empty());
        assert_eq!(plan.aliased.get("y"), Some(&a));
        apply_plans(&mut g, &[plan], &DistanceRegistry::new()).unwrap();
        assert_eq!(g.endpoints(ObjectId::edge(0)).unwrap(), (a, a));
    }

    #[test]
    fn unsatisfiable_inequality_on_new_object_blocks() {
        let mut g = PropertyGraph::new();
        g.add_vertex(labels(["a"]), Properties::new()).unwrap();
        let r = rules("GGD r { SOURCE { (x:a) } => TARGET { (x)-[e:r]->(y:b) } WHERE { absdiff(y.n, 3) > 1 } }");
        let plan = plan_first(&g, &r[0]);
        assert!(matches!(&plan.blockers[..], [Blocker::Constraint { missing_property: true, .. }]));
    }

    #[test]
    fn stale_violations_are_rejected() {
        let mut g = PropertyGraph::new();
        g.add_vertex(labels(["a"]), Properties::new()).unwrap();
        let r = rules("GGD r { SOURCE { (x:a) } => TARGET { (x)-[e:r]->(y:b) } }");
        let reg = DistanceRegistry::new();
        let v = validate_ggd(&g, &r[0], &reg).unwrap().violations.remove(0);
        g.add_vertex(labels(["c"]), Properties::new()).unwrap();
        assert!(matches!(plan_repair(&g, &r[0], &v, &reg), Err(RepairError::StaleViolation { .. })));
    }

    #[test]
    fn fixpoint_converges_and_counts_confirming_round() {
        let mut g = PropertyGraph::new();
        g.add_vertex(labels(["person"]), props([("name", "Ann")])).unwrap();
        g.add_vertex(labels(["person"]), props([("name", "Ann")])).unwrap();
        let r = rules(
            "GGD er { SOURCE { (a:person), (b:person) } WHERE { exact(a.name, b.name) = 0, a != b } => TARGET { (a)-[s:sameAs]->(b) } }",
        );
        let reg = DistanceRegistry::new();
        let out = repair_to_fixpoint(&mut g, &r, &reg, 10, ValidationOptions::default()).unwrap();
        assert!(out.converged && !out.hit_round_cap);
        assert_eq!(out.rounds_executed, 2);
        assert_eq!(out.plans_applied(), 2);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn unbounded_generation_hits_the_cap() {
        let mut g = PropertyGraph::new();
        g.add_vertex(labels(["n"]), Properties::new()).unwrap();
        let r = rules("GGD grow { SOURCE { (a:n) } => TARGET { (a)-[e:next]->(b:n) } }");
        let out = repair_to_fixpoint(&mut g, &r, &DistanceRegistry::new(), 3, ValidationOptions::default()).unwrap();
        assert!(!out.converged && out.hit_round_cap);
        assert_eq!(out.rounds_executed, 3);
        // only the newest vertex lacks a successor after each round
        assert_eq!(g.vertex_count(), 4);
    }

    #[test]
    fn zero_round_cap_is_an_error() {
        let mut g = PropertyGraph::new();
        assert_eq!(
            repair_to_fixpoint(&mut g, &[], &DistanceRegistry::new(), 0, ValidationOptions::default()),
            Err(RepairError::InvalidRoundCap)
        );
    }
}
