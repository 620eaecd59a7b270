//! Homomorphism search for graph patterns.
//!
//! A pattern is compiled into a static plan, a sequence of steps each of which
//! binds one or two variables:
//!
//! * `Resolve`: an edge variable fixed by the seed; binds or checks its endpoints.
//! * `Close`: an edge whose endpoints are both bound; walks the source's out-edges.
//! * `Expand`: an edge with exactly one bound endpoint; walks the bound vertex's
//!   adjacency and binds the edge together with the opposite endpoint.
//! * `Scan`: a vertex with no bound neighbour; walks the label index (or all
//!   vertices for a wildcard), pruned by label-aware adjacency requirements.
//!
//! The plan starts from the most selective vertex and prefers connected
//! extension, so a connected pattern scans the vertex set only once. The
//! enumeration itself is an explicit-stack backtracking iterator, so callers
//! that only need the first match stop early.
//!
//! Matches are homomorphisms: two variables may bind the same object.

use std::ops::Range;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{ObjectId, ObjectKind, PropertyGraph};
use crate::pattern::{Binding, GraphPattern, Label};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchError {
    #[error("seed binds `{var}` to a {found} but the pattern declares it as a {expected}")]
    SeedKindMismatch { var: String, expected: ObjectKind, found: ObjectKind },
    #[error("seed variable `{0}` does not occur in the pattern")]
    UnknownSeedVariable(String),
    #[error("seed refers to {0}, which is not part of the graph")]
    UnknownObject(ObjectId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Scan { var: usize },
    Expand { edge: usize, from: usize, to: usize, outgoing: bool },
    Close { edge: usize },
    Resolve { edge: usize, bind_src: bool, bind_dst: bool },
}

/// Adjacency requirement used to prune scanned vertices: the data vertex must
/// have at least one incident edge in the given direction whose labels match.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Requirement {
    label: Label,
    outgoing: bool,
}

#[derive(Debug, Clone)]
struct Plan {
    steps: Vec<Step>,
    requirements: Vec<Vec<Requirement>>,
}

impl Plan {
    fn build(pattern: &GraphPattern, graph: &PropertyGraph, seeded_v: &[bool], seeded_e: &[bool]) -> Plan {
        let vertices = pattern.vertices();
        let edges = pattern.edges();
        let src_of = |e: usize| pattern.vertex_index(&edges[e].src).expect("validated pattern");
        let dst_of = |e: usize| pattern.vertex_index(&edges[e].dst).expect("validated pattern");
        let estimate = |v: usize| match &vertices[v].label {
            Label::Wildcard => graph.vertex_count(),
            Label::Named(l) => graph.vertices_with_label(l).len(),
        };

        let mut bound_v = seeded_v.to_vec();
        let mut bound_e = seeded_e.to_vec();
        let mut steps = Vec::new();

        for e in 0..edges.len() {
            if bound_e[e] {
                let (s, d) = (src_of(e), dst_of(e));
                let bind_src = !bound_v[s];
                bound_v[s] = true;
                let bind_dst = !bound_v[d];
                bound_v[d] = true;
                steps.push(Step::Resolve { edge: e, bind_src, bind_dst });
            }
        }

        loop {
            let mut closed = false;
            for e in 0..edges.len() {
                if !bound_e[e] && bound_v[src_of(e)] && bound_v[dst_of(e)] {
                    bound_e[e] = true;
                    steps.push(Step::Close { edge: e });
                    closed = true;
                }
            }
            if closed {
                continue;
            }

            let expansion = (0..edges.len())
                .filter(|&e| !bound_e[e])
                .filter_map(|e| {
                    let (s, d) = (src_of(e), dst_of(e));
                    match (bound_v[s], bound_v[d]) {
                        (true, false) => Some((estimate(d), e, s, d, true)),
                        (false, true) => Some((estimate(s), e, d, s, false)),
                        _ => None,
                    }
                })
                .min_by_key(|&(cost, e, ..)| (cost, e));
            if let Some((_, edge, from, to, outgoing)) = expansion {
                bound_e[edge] = true;
                bound_v[to] = true;
                steps.push(Step::Expand { edge, from, to, outgoing });
                continue;
            }

            let scan = (0..vertices.len()).filter(|&v| !bound_v[v]).min_by_key(|&v| (estimate(v), v));
            match scan {
                Some(var) => {
                    bound_v[var] = true;
                    steps.push(Step::Scan { var });
                }
                None => break,
            }
        }

        let mut requirements = vec![Vec::new(); vertices.len()];
        for (e, edge) in edges.iter().enumerate() {
            for (v, outgoing) in [(src_of(e), true), (dst_of(e), false)] {
                let req = Requirement { label: edge.label.clone(), outgoing };
                if !requirements[v].contains(&req) {
                    requirements[v].push(req);
                }
            }
        }

        Plan { steps, requirements }
    }
}

#[derive(Debug, Clone, Copy)]
enum Items<'g> {
    Slice(&'g [u32]),
    Range(u32),
    Once,
}

#[derive(Debug, Clone, Copy)]
struct Cursor<'g> {
    items: Items<'g>,
    pos: usize,
    end: usize,
}

impl<'g> Cursor<'g> {
    const IDLE: Cursor<'static> = Cursor { items: Items::Once, pos: 0, end: 0 };

    fn new(items: Items<'g>) -> Self {
        let end = match items {
            Items::Slice(s) => s.len(),
            Items::Range(n) => n as usize,
            Items::Once => 1,
        };
        Cursor { items, pos: 0, end }
    }

    fn next(&mut self) -> Option<u32> {
        if self.pos >= self.end {
            return None;
        }
        let item = match self.items {
            Items::Slice(s) => s[self.pos],
            Items::Range(_) => self.pos as u32,
            Items::Once => 0,
        };
        self.pos += 1;
        Some(item)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

/// Lazy stream of the homomorphisms of a pattern into a graph.
///
/// Enumeration order is deterministic for a given graph construction order.
pub struct Matches<'a> {
    graph: &'a PropertyGraph,
    pattern: &'a GraphPattern,
    plan: Plan,
    vslots: Vec<u32>,
    eslots: Vec<u32>,
    cursors: Vec<Cursor<'a>>,
    depth: usize,
    state: State,
    first_range: Option<Range<usize>>,
}

impl<'a> Matches<'a> {
    fn new(pattern: &'a GraphPattern, graph: &'a PropertyGraph, seed: &Binding) -> Result<Self, MatchError> {
        let nv = pattern.vertices().len();
        let ne = pattern.edges().len();
        let mut vslots = vec![0u32; nv];
        let mut eslots = vec![0u32; ne];
        let mut seeded_v = vec![false; nv];
        let mut seeded_e = vec![false; ne];
        let mut consistent = true;

        for (var, id) in seed.iter() {
            let expected = pattern.kind_of(var).ok_or_else(|| MatchError::UnknownSeedVariable(var.to_string()))?;
            if expected != id.kind() {
                return Err(MatchError::SeedKindMismatch { var: var.to_string(), expected, found: id.kind() });
            }
            if !graph.contains(id) {
                return Err(MatchError::UnknownObject(id));
            }
            match expected {
                ObjectKind::Vertex => {
                    let i = pattern.vertex_index(var).expect("kind checked");
                    vslots[i] = id.index();
                    seeded_v[i] = true;
                    consistent &= pattern.vertices()[i].label.matches(graph.vertex_labels_raw(id.index()));
                }
                ObjectKind::Edge => {
                    let i = pattern.edge_index(var).expect("kind checked");
                    eslots[i] = id.index();
                    seeded_e[i] = true;
                    consistent &= pattern.edges()[i].label.matches(graph.edge_labels_raw(id.index()));
                }
            }
        }

        let plan = Plan::build(pattern, graph, &seeded_v, &seeded_e);
        let depth_count = plan.steps.len();
        Ok(Matches {
            graph,
            pattern,
            plan,
            vslots,
            eslots,
            cursors: vec![Cursor::IDLE; depth_count],
            depth: 0,
            state: if consistent { State::Fresh } else { State::Done },
            first_range: None,
        })
    }

    fn emit(&self) -> Binding {
        let vs = self.pattern.vertices().iter().zip(&self.vslots).map(|(v, &i)| (v.name.as_str(), ObjectId::vertex(i)));
        let es = self.pattern.edges().iter().zip(&self.eslots).map(|(e, &i)| (e.name.as_str(), ObjectId::edge(i)));
        vs.chain(es).collect()
    }

    fn edge_ends(&self, edge: usize) -> (usize, usize) {
        let pe = &self.pattern.edges()[edge];
        (
            self.pattern.vertex_index(&pe.src).expect("validated pattern"),
            self.pattern.vertex_index(&pe.dst).expect("validated pattern"),
        )
    }

    /// Number of candidates the first step will walk; used to partition work.
    fn first_step_len(&self) -> usize {
        match self.plan.steps.first() {
            Some(&step) => self.cursor_for(step).end,
            None => 0,
        }
    }

    fn cursor_for(&self, step: Step) -> Cursor<'a> {
        let g = self.graph;
        let items = match step {
            Step::Scan { var } => match &self.pattern.vertices()[var].label {
                Label::Wildcard => Items::Range(g.vertex_count() as u32),
                Label::Named(l) => Items::Slice(g.vertices_with_label(l)),
            },
            Step::Expand { from, outgoing, .. } => {
                let v = self.vslots[from];
                Items::Slice(if outgoing { g.out_edges_raw(v) } else { g.in_edges_raw(v) })
            }
            Step::Close { edge } => Items::Slice(g.out_edges_raw(self.vslots[self.edge_ends(edge).0])),
            Step::Resolve { .. } => Items::Once,
        };
        Cursor::new(items)
    }

    fn enter(&mut self, level: usize) {
        let mut cursor = self.cursor_for(self.plan.steps[level]);
        if level == 0 {
            if let Some(range) = &self.first_range {
                cursor.pos = range.start.min(cursor.end);
                cursor.end = range.end.min(cursor.end);
            }
        }
        self.cursors[level] = cursor;
    }

    fn satisfies_requirements(&self, var: usize, v: u32) -> bool {
        let g = self.graph;
        self.plan.requirements[var].iter().all(|req| {
            let adj = if req.outgoing { g.out_edges_raw(v) } else { g.in_edges_raw(v) };
            match &req.label {
                Label::Wildcard => !adj.is_empty(),
                label => adj.iter().any(|&e| label.matches(g.edge_labels_raw(e))),
            }
        })
    }

    /// Moves the cursor at `level` to its next admissible candidate and writes
    /// the bound slots. Returns false once exhausted.
    fn advance(&mut self, level: usize) -> bool {
        let g = self.graph;
        let step = self.plan.steps[level];
        while let Some(item) = self.cursors[level].next() {
            match step {
                Step::Scan { var } => {
                    if self.pattern.vertices()[var].label.matches(g.vertex_labels_raw(item))
                        && self.satisfies_requirements(var, item)
                    {
                        self.vslots[var] = item;
                        return true;
                    }
                }
                Step::Expand { edge, to, outgoing, .. } => {
                    if !self.pattern.edges()[edge].label.matches(g.edge_labels_raw(item)) {
                        continue;
                    }
                    let (s, d) = g.edge_endpoints_raw(item);
                    let other = if outgoing { d } else { s };
                    if self.pattern.vertices()[to].label.matches(g.vertex_labels_raw(other)) {
                        self.eslots[edge] = item;
                        self.vslots[to] = other;
                        return true;
                    }
                }
                Step::Close { edge } => {
                    let (_, dst_var) = self.edge_ends(edge);
                    let (_, d) = g.edge_endpoints_raw(item);
                    if d == self.vslots[dst_var] && self.pattern.edges()[edge].label.matches(g.edge_labels_raw(item)) {
                        self.eslots[edge] = item;
                        return true;
                    }
                }
                Step::Resolve { edge, bind_src, bind_dst } => {
                    let (sv, dv) = self.edge_ends(edge);
                    let (s, d) = g.edge_endpoints_raw(self.eslots[edge]);
                    if bind_src {
                        if !self.pattern.vertices()[sv].label.matches(g.vertex_labels_raw(s)) {
                            continue;
                        }
                        self.vslots[sv] = s;
                    } else if self.vslots[sv] != s {
                        continue;
                    }
                    if bind_dst {
                        if !self.pattern.vertices()[dv].label.matches(g.vertex_labels_raw(d)) {
                            continue;
                        }
                        self.vslots[dv] = d;
                    } else if self.vslots[dv] != d {
                        continue;
                    }
                    return true;
                }
            }
        }
        false
    }
}

impl Iterator for Matches<'_> {
    type Item = Binding;

    fn next(&mut self) -> Option<Binding> {
        let depth_count = self.plan.steps.len();
        match self.state {
            State::Done => return None,
            State::Fresh => {
                self.state = State::Running;
                if depth_count == 0 {
                    self.state = State::Done;
                    let in_range = self.first_range.as_ref().map_or(true, |r| r.contains(&0));
                    return in_range.then(|| self.emit());
                }
                self.depth = 0;
                self.enter(0);
            }
            State::Running => {}
        }
        loop {
            if self.advance(self.depth) {
                if self.depth + 1 == depth_count {
                    return Some(self.emit());
                }
                self.depth += 1;
                self.enter(self.depth);
            } else if self.depth == 0 {
                self.state = State::Done;
                return None;
            } else {
                self.depth -= 1;
            }
        }
    }
}

/// All matches of `pattern` in `graph`. An empty pattern has exactly one
/// match, the empty binding.
pub fn find_matches<'a>(pattern: &'a GraphPattern, graph: &'a PropertyGraph) -> Matches<'a> {
    Matches::new(pattern, graph, &Binding::new()).expect("empty seed is always valid")
}

/// Matches of `pattern` that agree with `seed` on every seeded variable.
///
/// Every seed variable must occur in the pattern with the same kind.
pub fn find_matches_seeded<'a>(
    pattern: &'a GraphPattern,
    graph: &'a PropertyGraph,
    seed: &Binding,
) -> Result<Matches<'a>, MatchError> {
    Matches::new(pattern, graph, seed)
}

/// Collects all matches using up to `threads` workers on the global rayon
/// pool (or the pool installed by the caller). The result is identical, order
/// included, to collecting [`find_matches`].
pub fn find_matches_parallel(pattern: &GraphPattern, graph: &PropertyGraph, threads: usize) -> Vec<Binding> {
    let probe = find_matches(pattern, graph);
    let total = probe.first_step_len();
    if threads <= 1 || total < 2 {
        return probe.collect();
    }
    let chunk = total.div_ceil(threads * 4).max(1);
    let ranges: Vec<Range<usize>> = (0..total).step_by(chunk).map(|s| s..(s + chunk).min(total)).collect();
    ranges
        .into_par_iter()
        .map(|range| {
            let mut part = find_matches(pattern, graph);
            part.first_range = Some(range);
            part.collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}
