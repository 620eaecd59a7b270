//! Reference implementations used as test oracles, and seeded generators.
//!
//! The oracles share nothing with the library beyond the public data types:
//! matches come from enumerating every assignment of objects to variables,
//! and distances come from `strsim` and plain arithmetic.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use ggd_core::constraint::{CompareOp, Constraint, PropertyRef};
use ggd_core::graph::{Labels, ObjectId, ObjectKind, Properties, PropertyGraph, Value};
use ggd_core::pattern::{Binding, GraphPattern, Label};
use ggd_core::Ggd;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Assignment = BTreeMap<String, ObjectId>;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn to_assignment(b: &Binding) -> Assignment {
    b.iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn label_ok(label: &Label, labels: &Labels) -> bool {
    match label {
        Label::Wildcard => true,
        Label::Named(l) => labels.contains(l),
    }
}

fn is_match(p: &GraphPattern, g: &PropertyGraph, a: &Assignment) -> bool {
    for v in p.vertices() {
        let id = a[&v.name];
        if !id.is_vertex() || !label_ok(&v.label, g.labels(id).unwrap()) {
            return false;
        }
    }
    for e in p.edges() {
        let id = a[&e.name];
        if !id.is_edge() || !label_ok(&e.label, g.labels(id).unwrap()) {
            return false;
        }
        if g.endpoints(id).unwrap() != (a[&e.src], a[&e.dst]) {
            return false;
        }
    }
    true
}

/// All homomorphic matches of `p`, by enumerating the full product of
/// candidate objects. Variables in `fixed` are held at the given object.
pub fn naive_matches(p: &GraphPattern, g: &PropertyGraph, fixed: &Assignment) -> Vec<Assignment> {
    let vars: Vec<(String, ObjectKind)> = p
        .vertices()
        .iter()
        .map(|v| (v.name.clone(), ObjectKind::Vertex))
        .chain(p.edges().iter().map(|e| (e.name.clone(), ObjectKind::Edge)))
        .collect();
    let vertices: Vec<ObjectId> = g.vertex_ids().collect();
    let edges: Vec<ObjectId> = g.edge_ids().collect();
    let mut out = Vec::new();
    let mut current = Assignment::new();
    fn go(
        i: usize,
        vars: &[(String, ObjectKind)],
        pools: (&[ObjectId], &[ObjectId]),
        fixed: &Assignment,
        current: &mut Assignment,
        out: &mut Vec<Assignment>,
        p: &GraphPattern,
        g: &PropertyGraph,
    ) {
        if i == vars.len() {
            if is_match(p, g, current) {
                out.push(current.clone());
            }
            return;
        }
        let (name, kind) = &vars[i];
        let candidates: Vec<ObjectId> = match fixed.get(name) {
            Some(&id) => vec![id],
            None if *kind == ObjectKind::Vertex => pools.0.to_vec(),
            None => pools.1.to_vec(),
        };
        for id in candidates {
            current.insert(name.clone(), id);
            go(i + 1, vars, pools, fixed, current, out, p, g);
        }
        current.remove(name);
    }
    go(0, &vars, (&vertices, &edges), fixed, &mut current, &mut out, p, g);
    out.sort();
    out
}

pub fn oracle_levenshtein(a: &str, b: &str) -> usize {
    strsim::levenshtein(a, b)
}

/// `None` when the distance does not apply to the values.
fn oracle_distance(name: &str, a: &Value, b: &Value) -> Option<f64> {
    match (name, a, b) {
        ("levenshtein", Value::Text(x), Value::Text(y)) => Some(oracle_levenshtein(x, y) as f64),
        ("levenshtein_ci", Value::Text(x), Value::Text(y)) => {
            Some(oracle_levenshtein(&x.to_lowercase(), &y.to_lowercase()) as f64)
        }
        ("absdiff", Value::Integer(x), Value::Integer(y)) => Some((*x as i128 - *y as i128).unsigned_abs() as f64),
        ("absdiff", Value::Integer(x), Value::Real(y)) => Some((*x as f64 - y).abs()),
        ("absdiff", Value::Real(x), Value::Integer(y)) => Some((x - *y as f64).abs()),
        ("absdiff", Value::Real(x), Value::Real(y)) => Some((x - y).abs()),
        ("exact", x, y) => Some(if x == y { 0.0 } else { 1.0 }),
        _ => None,
    }
}

fn oracle_op(op: CompareOp, d: f64, t: f64) -> bool {
    match op {
        CompareOp::Eq => d == t,
        CompareOp::Lt => d < t,
        CompareOp::Gt => d > t,
        CompareOp::Le => d <= t,
        CompareOp::Ge => d >= t,
        CompareOp::Ne => d != t,
    }
}

/// Constraint satisfaction straight from the definition. `None` signals a
/// rule error (distance not applicable to the values).
pub fn oracle_constraint(c: &Constraint, a: &Assignment, g: &PropertyGraph) -> Option<bool> {
    let prop = |r: &PropertyRef| g.properties(a[&r.var]).unwrap().get(&r.key).cloned();
    match c {
        Constraint::VarConst { prop: r, distance, op, constant, threshold, constant_first } => {
            let Some(v) = prop(r) else { return Some(false) };
            let d = if *constant_first { oracle_distance(distance, constant, &v)? } else { oracle_distance(distance, &v, constant)? };
            Some(oracle_op(*op, d, *threshold))
        }
        Constraint::VarVar { left, right, distance, op, threshold } => {
            let (Some(x), Some(y)) = (prop(left), prop(right)) else { return Some(false) };
            Some(oracle_op(*op, oracle_distance(distance, &x, &y)?, *threshold))
        }
        Constraint::Identity { left, right, negated } => Some((a[left] == a[right]) != *negated),
    }
}

pub fn oracle_all(cs: &[Constraint], a: &Assignment, g: &PropertyGraph) -> Option<bool> {
    let mut ok = true;
    for c in cs {
        ok &= oracle_constraint(c, a, g)?;
    }
    Some(ok)
}

/// Whether `source` (satisfying the source side) extends to a target match
/// satisfying the target constraints.
pub fn oracle_target_satisfied(ggd: &Ggd, g: &PropertyGraph, source: &Assignment) -> Option<bool> {
    let fixed: Assignment =
        source.iter().filter(|(k, _)| ggd.target().kind_of(k).is_some()).map(|(k, v)| (k.clone(), *v)).collect();
    for t in naive_matches(ggd.target(), g, &fixed) {
        let mut merged = source.clone();
        merged.extend(t);
        if oracle_all(ggd.target_constraints(), &merged, g)? {
            return Some(true);
        }
    }
    Some(false)
}

/// Source matches (satisfying the source constraints) that do not extend.
/// `None` if some constraint could not be evaluated.
pub fn oracle_violations(ggd: &Ggd, g: &PropertyGraph) -> Option<Vec<Assignment>> {
    let mut out = Vec::new();
    for s in naive_matches(ggd.source(), g, &Assignment::new()) {
        if !oracle_all(ggd.source_constraints(), &s, g)? {
            continue;
        }
        if !oracle_target_satisfied(ggd, g, &s)? {
            out.push(s);
        }
    }
    Some(out)
}

pub const TEXTS: [&str; 6] = ["ab", "abc", "b", "ba", "", "abd"];

fn random_props(rng: &mut ChaCha8Rng) -> Properties {
    let mut p = Properties::new();
    if rng.gen_bool(0.7) {
        p.insert("k".into(), Value::Integer(rng.gen_range(0..4)));
    }
    if rng.gen_bool(0.7) {
        p.insert("s".into(), Value::Text(TEXTS.choose(rng).unwrap().to_string()));
    }
    p
}

fn random_labels(rng: &mut ChaCha8Rng, names: [&str; 2]) -> Labels {
    match rng.gen_range(0..8) {
        0 => Labels::new(),
        1 => names.iter().map(|s| s.to_string()).collect(),
        n => [names[n % 2].to_string()].into_iter().collect(),
    }
}

/// At most `max_v` vertices and `max_e` edges, labels from {A, B} and {r, s},
/// integer property `k` and text property `s`, each present with p = 0.7.
pub fn random_graph(rng: &mut ChaCha8Rng, max_v: usize, max_e: usize) -> PropertyGraph {
    let mut g = PropertyGraph::new();
    let nv = rng.gen_range(1..=max_v);
    let ne = rng.gen_range(0..=max_e);
    let vs: Vec<ObjectId> =
        (0..nv).map(|_| g.add_vertex(random_labels(rng, ["A", "B"]), random_props(rng)).unwrap()).collect();
    for _ in 0..ne {
        let (s, d) = (*vs.choose(rng).unwrap(), *vs.choose(rng).unwrap());
        g.add_edge(s, d, random_labels(rng, ["r", "s"]), random_props(rng)).unwrap();
    }
    g
}

fn random_label(rng: &mut ChaCha8Rng, names: [&str; 2]) -> Label {
    if rng.gen_bool(0.25) {
        Label::Wildcard
    } else {
        Label::named(*names.choose(rng).unwrap())
    }
}

/// With `forcing`, half the constraints pin a value exactly (`= 0` / `<= 0`).
fn random_constraint(rng: &mut ChaCha8Rng, vars: &[(String, ObjectKind)], forcing: bool) -> Constraint {
    let var = |rng: &mut ChaCha8Rng| vars.choose(rng).unwrap().0.clone();
    let (op, threshold) = if forcing && rng.gen_bool(0.5) {
        (*[CompareOp::Eq, CompareOp::Le].choose(rng).unwrap(), 0.0)
    } else {
        (*CompareOp::ALL.choose(rng).unwrap(), rng.gen_range(0..3) as f64)
    };
    let numeric = rng.gen_bool(0.5);
    let (key, distance) = if numeric {
        ("k", *["absdiff", "exact"].choose(rng).unwrap())
    } else {
        ("s", *["levenshtein", "exact"].choose(rng).unwrap())
    };
    match rng.gen_range(0..5) {
        0 | 1 => {
            let constant = if numeric {
                Value::Integer(rng.gen_range(0..4))
            } else {
                Value::Text(TEXTS.choose(rng).unwrap().to_string())
            };
            let mut c = Constraint::var_const(var(rng), key, distance, op, constant, threshold);
            if let Constraint::VarConst { constant_first, .. } = &mut c {
                *constant_first = rng.gen_bool(0.2);
            }
            c
        }
        2 | 3 => Constraint::var_var(PropertyRef::new(var(rng), key), PropertyRef::new(var(rng), key), distance, op, threshold),
        _ => {
            let (l, r) = (var(rng), var(rng));
            if rng.gen_bool(0.5) {
                Constraint::same(l, r)
            } else {
                Constraint::distinct(l, r)
            }
        }
    }
}

/// A rule with at most three source and three target variables.
pub fn random_ggd(rng: &mut ChaCha8Rng, name: &str) -> Ggd {
    let n_s = rng.gen_range(1..=3);
    let n_sv = rng.gen_range(1..=n_s);
    let mut source = GraphPattern::new();
    let mut src_vars: Vec<(String, ObjectKind)> = Vec::new();
    let mut src_vertices = Vec::new();
    for i in 0..n_sv {
        let name = format!("x{i}");
        source.add_vertex(name.clone(), random_label(rng, ["A", "B"])).unwrap();
        src_vertices.push(name.clone());
        src_vars.push((name, ObjectKind::Vertex));
    }
    for i in 0..(n_s - n_sv) {
        let name = format!("ex{i}");
        let (s, d) = (src_vertices.choose(rng).unwrap().clone(), src_vertices.choose(rng).unwrap().clone());
        source.add_edge(name.clone(), s, d, random_label(rng, ["r", "s"])).unwrap();
        src_vars.push((name, ObjectKind::Edge));
    }

    let n_t = rng.gen_range(0..=3);
    let mut target = GraphPattern::new();
    let mut tgt_vars: Vec<(String, ObjectKind)> = Vec::new();
    let mut tgt_vertices: Vec<String> = Vec::new();
    let mut fresh = 0;
    let mut attempts = 0;
    while tgt_vars.len() < n_t && attempts < 20 {
        attempts += 1;
        match rng.gen_range(0..4) {
            0 => {
                let v = src_vertices.choose(rng).unwrap().clone();
                if tgt_vertices.contains(&v) {
                    continue;
                }
                let label = match rng.gen_range(0..10) {
                    0..=4 => Label::Wildcard,
                    5..=7 => source.label_of(&v).unwrap().clone(),
                    _ => random_label(rng, ["A", "B"]),
                };
                target.add_vertex(v.clone(), label).unwrap();
                tgt_vertices.push(v.clone());
                tgt_vars.push((v, ObjectKind::Vertex));
            }
            1 => {
                let v = format!("y{fresh}");
                fresh += 1;
                target.add_vertex(v.clone(), random_label(rng, ["A", "B"])).unwrap();
                tgt_vertices.push(v.clone());
                tgt_vars.push((v, ObjectKind::Vertex));
            }
            2 => {
                if tgt_vertices.is_empty() {
                    continue;
                }
                let e = format!("ey{fresh}");
                fresh += 1;
                let (s, d) = (tgt_vertices.choose(rng).unwrap().clone(), tgt_vertices.choose(rng).unwrap().clone());
                target.add_edge(e.clone(), s, d, random_label(rng, ["r", "s"])).unwrap();
                tgt_vars.push((e, ObjectKind::Edge));
            }
            _ => {
                let candidates: Vec<_> = source
                    .edges()
                    .iter()
                    .filter(|e| tgt_vertices.contains(&e.src) && tgt_vertices.contains(&e.dst))
                    .filter(|e| target.kind_of(&e.name).is_none())
                    .cloned()
                    .collect();
                let Some(e) = candidates.choose(rng) else { continue };
                let label = if rng.gen_bool(0.6) { Label::Wildcard } else { e.label.clone() };
                target.add_edge(e.name.clone(), e.src.clone(), e.dst.clone(), label).unwrap();
                tgt_vars.push((e.name.clone(), ObjectKind::Edge));
            }
        }
    }

    let source_constraints = (0..rng.gen_range(0..=2)).map(|_| random_constraint(rng, &src_vars, false)).collect();
    // fresh variables are weighted up so that many violations are repairable
    let mut visible = src_vars.clone();
    for fresh in tgt_vars.iter().filter(|(v, _)| source.kind_of(v).is_none()) {
        visible.extend(std::iter::repeat(fresh.clone()).take(3));
    }
    let target_constraints = (0..rng.gen_range(0..=2)).map(|_| random_constraint(rng, &visible, true)).collect();
    Ggd::new(name, source, source_constraints, target, target_constraints).expect("generated rule is well formed")
}
