//! JSON reports for validation, repair and matching.
//!
//! Objects are referred to by their external ids. Keys keep a fixed order and
//! lists follow enumeration order, so identical inputs give byte-identical
//! output.

use serde_json::{json, Map, Value as Json};

use crate::graph::{ObjectId, ObjectKind, PropertyGraph};
use crate::graph_io::{to_json, IdMap};
use crate::pattern::Binding;
use crate::repair::{Blocker, RepairOutcome, RepairPlan};
use crate::validation::{RuleReport, ValidationReport, Verdict, Violation};

pub fn binding_json(b: &Binding, ids: &IdMap) -> Json {
    let map: Map<String, Json> = b.iter().map(|(var, id)| (var.to_string(), Json::from(ids.name(id).into_owned()))).collect();
    Json::Object(map)
}

fn violation_json(v: &Violation, ids: &IdMap) -> Json {
    let mut annotations = Vec::new();
    if v.missing_property {
        annotations.push("missing-property");
    }
    json!({
        "source_binding": binding_json(&v.source_binding, ids),
        "reason": v.reason.as_str(),
        "inspected_targets": v.inspected_targets,
        "annotations": annotations,
    })
}

fn rule_json(r: &RuleReport, ids: &IdMap) -> Json {
    match &r.outcome {
        Ok(v) => json!({
            "name": r.name,
            "verdict": match v.verdict { Verdict::Holds => "holds", Verdict::Violated => "violated" },
            "counters": {
                "source_matches": v.counters.source_matches,
                "source_matches_satisfying": v.counters.source_matches_satisfying,
                "target_matches_inspected": v.counters.target_matches_inspected,
            },
            "violations": v.violations.iter().map(|x| violation_json(x, ids)).collect::<Vec<_>>(),
        }),
        Err(e) => json!({
            "name": r.name,
            "verdict": "error",
            "error": e.to_string(),
            "violations": [],
        }),
    }
}

/// `"valid"`, `"violated"`, or `"error"` when some rule could not be evaluated.
pub fn overall_verdict(report: &ValidationReport) -> &'static str {
    if report.has_errors() {
        "error"
    } else if report.holds() {
        "valid"
    } else {
        "violated"
    }
}

pub fn validation_json(report: &ValidationReport, ids: &IdMap) -> Json {
    let count = |v: Verdict| report.rules.iter().filter(|r| matches!(&r.outcome, Ok(x) if x.verdict == v)).count();
    json!({
        "verdict": overall_verdict(report),
        "summary": {
            "rules": report.rules.len(),
            "holds": count(Verdict::Holds),
            "violated": count(Verdict::Violated),
            "errors": report.rules.iter().filter(|r| r.outcome.is_err()).count(),
            "violations": report.violations().count(),
        },
        "rules": report.rules.iter().map(|r| rule_json(r, ids)).collect::<Vec<_>>(),
    })
}

fn object_json(g: &PropertyGraph, id: ObjectId, ids: &IdMap) -> Json {
    let mut out = Map::new();
    out.insert("id".into(), Json::from(ids.name(id).into_owned()));
    let kind = match id.kind() {
        ObjectKind::Vertex => "vertex",
        ObjectKind::Edge => "edge",
    };
    out.insert("kind".into(), Json::from(kind));
    if let Ok(labels) = g.labels(id) {
        out.insert("labels".into(), json!(labels));
    }
    if let Ok(props) = g.properties(id) {
        let props: Map<String, Json> = props.iter().map(|(k, v)| (k.clone(), to_json(v))).collect();
        out.insert("properties".into(), Json::Object(props));
    }
    if let Ok((s, d)) = g.endpoints(id) {
        out.insert("src".into(), Json::from(ids.name(s).into_owned()));
        out.insert("dst".into(), Json::from(ids.name(d).into_owned()));
    }
    Json::Object(out)
}

fn blocker_json(b: &Blocker) -> Json {
    match b {
        Blocker::Structure { var, message } => json!({"kind": "structure", "var": var, "message": message}),
        Blocker::Constraint { constraint, missing_property } => {
            json!({"kind": "constraint", "constraint": constraint, "missing_property": missing_property})
        }
        Blocker::Evaluation { constraint, message } => {
            json!({"kind": "evaluation", "constraint": constraint, "message": message})
        }
    }
}

fn unrepairable_json(p: &RepairPlan, ids: &IdMap) -> Json {
    json!({
        "rule": p.rule,
        "source_binding": binding_json(&p.source_binding, ids),
        "blocking": p.blockers.iter().map(blocker_json).collect::<Vec<_>>(),
    })
}

/// Repair section; `g` and `ids` describe the repaired graph with generated
/// objects already named.
pub fn repair_json(outcome: &RepairOutcome, g: &PropertyGraph, ids: &IdMap) -> Json {
    let applied: Vec<Json> = outcome
        .applied
        .iter()
        .map(|a| {
            let created: Vec<Json> = a
                .created
                .iter()
                .map(|c| {
                    let mut o = object_json(g, c.id, ids);
                    o.as_object_mut().expect("object").insert("vars".into(), json!(c.vars));
                    o
                })
                .collect();
            let aliased: Map<String, Json> =
                a.aliased.iter().map(|(k, id)| (k.clone(), Json::from(ids.name(*id).into_owned()))).collect();
            json!({
                "rule": a.rule,
                "round": a.round,
                "source_binding": binding_json(&a.source_binding, ids),
                "created": created,
                "aliased": aliased,
                "warnings": a.warnings,
            })
        })
        .collect();
    json!({
        "converged": outcome.converged,
        "hit_round_cap": outcome.hit_round_cap,
        "rounds_executed": outcome.rounds_executed,
        "plans_applied": outcome.plans_applied(),
        "objects_created": outcome.generated().len(),
        "applied": applied,
        "unrepairable": outcome.unrepairable.iter().map(|p| unrepairable_json(p, ids)).collect::<Vec<_>>(),
    })
}

/// Validation of the repaired graph plus the repair section.
pub fn repair_report_json(final_validation: &ValidationReport, outcome: &RepairOutcome, g: &PropertyGraph, ids: &IdMap) -> Json {
    let mut out = validation_json(final_validation, ids);
    out.as_object_mut().expect("object").insert("repair".into(), repair_json(outcome, g, ids));
    out
}

pub fn match_json(rule: &str, side: &str, bindings: &[Binding], ids: &IdMap) -> Json {
    json!({
        "count": bindings.len(),
        "rule": rule,
        "side": side,
        "bindings": bindings.iter().map(|b| binding_json(b, ids)).collect::<Vec<_>>(),
    })
}

/// Pretty-printed with a trailing newline.
pub fn render(report: &Json) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}
