//! In-memory property graph.
//!
//! Vertices and edges live in two disjoint id spaces. Every object carries a
//! (possibly empty) set of labels and a partial map from property keys to
//! [`Value`]s. The graph is add-only: objects are never removed, so an id is
//! never reused and `len()` doubles as a version stamp.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectKind {
    Vertex,
    Edge,
}

impl fmt::Display for ObjectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectKind::Vertex => f.write_str("vertex"),
            ObjectKind::Edge => f.write_str("edge"),
        }
    }
}

/// Identifier of a vertex or an edge inside one [`PropertyGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectId {
    kind: ObjectKind,
    index: u32,
}

impl ObjectId {
    pub fn vertex(index: u32) -> Self {
        ObjectId { kind: ObjectKind::Vertex, index }
    }

    pub fn edge(index: u32) -> Self {
        ObjectId { kind: ObjectKind::Edge, index }
    }

    pub fn kind(self) -> ObjectKind {
        self.kind
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn is_vertex(self) -> bool {
        self.kind == ObjectKind::Vertex
    }

    pub fn is_edge(self) -> bool {
        self.kind == ObjectKind::Edge
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ObjectKind::Vertex => write!(f, "v{}", self.index),
            ObjectKind::Edge => write!(f, "e{}", self.index),
        }
    }
}

/// Variant tag of a [`Value`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ValueKind {
    Text,
    Integer,
    Real,
    Boolean,
}

impl fmt::Display for ValueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ValueKind::Text => "text",
            ValueKind::Integer => "integer",
            ValueKind::Real => "real",
            ValueKind::Boolean => "boolean",
        };
        f.write_str(s)
    }
}

/// A property value. Reals are always finite; use [`Value::real`] to build one
/// from an arbitrary `f64`.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Text(String),
    Integer(i64),
    Real(f64),
    Boolean(bool),
}

impl Value {
    pub fn real(x: f64) -> Result<Value, GraphError> {
        if x.is_finite() {
            Ok(Value::Real(x))
        } else {
            Err(GraphError::NonFiniteReal(x))
        }
    }

    pub fn kind(&self) -> ValueKind {
        match self {
            Value::Text(_) => ValueKind::Text,
            Value::Integer(_) => ValueKind::Integer,
            Value::Real(_) => ValueKind::Real,
            Value::Boolean(_) => ValueKind::Boolean,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Value::Text(s) => Some(s),
            _ => None,
        }
    }

    /// Numeric view; integers are promoted to reals.
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Integer(i) => Some(*i as f64),
            Value::Real(r) => Some(*r),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Text(s) => write!(f, "{s:?}"),
            Value::Integer(i) => write!(f, "{i}"),
            Value::Real(r) => write!(f, "{r:?}"),
            Value::Boolean(b) => write!(f, "{b}"),
        }
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl From<i64> for Value {
    fn from(i: i64) -> Self {
        Value::Integer(i)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Boolean(b)
    }
}

pub type Labels = BTreeSet<String>;
pub type Properties = BTreeMap<String, Value>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("edge endpoint {0} is not a vertex of this graph")]
    UnknownEndpoint(ObjectId),
    #[error("object {0} is not part of this graph")]
    UnknownObject(ObjectId),
    #[error("real property values must be finite, got {0}")]
    NonFiniteReal(f64),
}

#[derive(Debug, Clone, Default, PartialEq)]
struct VertexRecord {
    labels: Labels,
    properties: Properties,
    out_edges: Vec<u32>,
    in_edges: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq)]
struct EdgeRecord {
    src: u32,
    dst: u32,
    labels: Labels,
    properties: Properties,
}

/// Directed multigraph with labelled, attributed vertices and edges.
///
/// Self-loops and parallel edges are allowed. Adjacency lists and the label
/// indexes keep insertion order, which makes match enumeration deterministic.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PropertyGraph {
    vertices: Vec<VertexRecord>,
    edges: Vec<EdgeRecord>,
    vertex_label_index: HashMap<String, Vec<u32>>,
    edge_label_index: HashMap<String, Vec<u32>>,
}

impl PropertyGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, labels: Labels, properties: Properties) -> Result<ObjectId, GraphError> {
        check_values(&properties)?;
        let index = self.vertices.len() as u32;
        for label in &labels {
            self.vertex_label_index.entry(label.clone()).or_default().push(index);
        }
        self.vertices.push(VertexRecord { labels, properties, ..Default::default() });
        Ok(ObjectId::vertex(index))
    }

    pub fn add_edge(
        &mut self,
        src: ObjectId,
        dst: ObjectId,
        labels: Labels,
        properties: Properties,
    ) -> Result<ObjectId, GraphError> {
        for endpoint in [src, dst] {
            if !endpoint.is_vertex() || !self.contains(endpoint) {
                return Err(GraphError::UnknownEndpoint(endpoint));
            }
        }
        check_values(&properties)?;
        let index = self.edges.len() as u32;
        for label in &labels {
            self.edge_label_index.entry(label.clone()).or_default().push(index);
        }
        self.vertices[src.index as usize].out_edges.push(index);
        self.vertices[dst.index as usize].in_edges.push(index);
        self.edges.push(EdgeRecord { src: src.index, dst: dst.index, labels, properties });
        Ok(ObjectId::edge(index))
    }

    pub fn contains(&self, id: ObjectId) -> bool {
        match id.kind {
            ObjectKind::Vertex => (id.index as usize) < self.vertices.len(),
            ObjectKind::Edge => (id.index as usize) < self.edges.len(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Total number of objects. Since the graph only grows, this also serves
    /// as a version stamp for staleness checks.
    pub fn len(&self) -> usize {
        self.vertices.len() + self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = ObjectId> + '_ {
        (0..self.vertices.len() as u32).map(ObjectId::vertex)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = ObjectId> + '_ {
        (0..self.edges.len() as u32).map(ObjectId::edge)
    }

    pub fn labels(&self, id: ObjectId) -> Result<&Labels, GraphError> {
        match id.kind {
            ObjectKind::Vertex => self.vertices.get(id.index as usize).map(|v| &v.labels),
            ObjectKind::Edge => self.edges.get(id.index as usize).map(|e| &e.labels),
        }
        .ok_or(GraphError::UnknownObject(id))
    }

    pub fn properties(&self, id: ObjectId) -> Result<&Properties, GraphError> {
        match id.kind {
            ObjectKind::Vertex => self.vertices.get(id.index as usize).map(|v| &v.properties),
            ObjectKind::Edge => self.edges.get(id.index as usize).map(|e| &e.properties),
        }
        .ok_or(GraphError::UnknownObject(id))
    }

    /// `Ok(None)` when the object exists but has no value for `key`.
    pub fn get_property(&self, id: ObjectId, key: &str) -> Result<Option<&Value>, GraphError> {
        Ok(self.properties(id)?.get(key))
    }

    /// Source and target vertex of an edge.
    pub fn endpoints(&self, edge: ObjectId) -> Result<(ObjectId, ObjectId), GraphError> {
        if !edge.is_edge() {
            return Err(GraphError::UnknownObject(edge));
        }
        let e = self.edges.get(edge.index as usize).ok_or(GraphError::UnknownObject(edge))?;
        Ok((ObjectId::vertex(e.src), ObjectId::vertex(e.dst)))
    }

    pub(crate) fn edge_endpoints_raw(&self, edge: u32) -> (u32, u32) {
        let e = &self.edges[edge as usize];
        (e.src, e.dst)
    }

    pub(crate) fn vertex_labels_raw(&self, v: u32) -> &Labels {
        &self.vertices[v as usize].labels
    }

    pub(crate) fn edge_labels_raw(&self, e: u32) -> &Labels {
        &self.edges[e as usize].labels
    }

    pub(crate) fn out_edges_raw(&self, v: u32) -> &[u32] {
        &self.vertices[v as usize].out_edges
    }

    pub(crate) fn in_edges_raw(&self, v: u32) -> &[u32] {
        &self.vertices[v as usize].in_edges
    }

    pub(crate) fn vertices_with_label(&self, label: &str) -> &[u32] {
        self.vertex_label_index.get(label).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn out_edges(&self, v: ObjectId) -> Result<impl Iterator<Item = ObjectId> + '_, GraphError> {
        if !v.is_vertex() || !self.contains(v) {
            return Err(GraphError::UnknownObject(v));
        }
        Ok(self.out_edges_raw(v.index).iter().map(|&e| ObjectId::edge(e)))
    }

    pub fn in_edges(&self, v: ObjectId) -> Result<impl Iterator<Item = ObjectId> + '_, GraphError> {
        if !v.is_vertex() || !self.contains(v) {
            return Err(GraphError::UnknownObject(v));
        }
        Ok(self.in_edges_raw(v.index).iter().map(|&e| ObjectId::edge(e)))
    }

    pub fn edges_with_label(&self, label: &str) -> impl Iterator<Item = ObjectId> + '_ {
        self.edge_label_index
            .get(label)
            .into_iter()
            .flatten()
            .map(|&e| ObjectId::edge(e))
    }

    /// True when `self` contains `other` as a prefix: every object of `other`
    /// exists here under the same id with identical labels, properties and
    /// endpoints.
    pub fn extends(&self, other: &PropertyGraph) -> bool {
        if other.vertices.len() > self.vertices.len() || other.edges.len() > self.edges.len() {
            return false;
        }
        let vertices_match = other
            .vertices
            .iter()
            .zip(&self.vertices)
            .all(|(a, b)| a.labels == b.labels && a.properties == b.properties);
        let edges_match = other.edges.iter().zip(&self.edges).all(|(a, b)| {
            a.src == b.src && a.dst == b.dst && a.labels == b.labels && a.properties == b.properties
        });
        vertices_match && edges_match
    }
}

fn check_values(properties: &Properties) -> Result<(), GraphError> {
    for value in properties.values() {
        if let Value::Real(r) = value {
            if !r.is_finite() {
                return Err(GraphError::NonFiniteReal(*r));
            }
        }
    }
    Ok(())
}

/// Builds a label set from string literals.
pub fn labels<I, S>(items: I) -> Labels
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    items.into_iter().map(Into::into).collect()
}

/// Builds a property map from `(key, value)` pairs.
pub fn props<I, K, V>(items: I) -> Properties
where
    I: IntoIterator<Item = (K, V)>,
    K: Into<String>,
    V: Into<Value>,
{
    items.into_iter().map(|(k, v)| (k.into(), v.into())).collect()
}
