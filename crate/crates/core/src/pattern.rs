//! Graph patterns and bindings.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::graph::{Labels, ObjectId, ObjectKind};

/// Label of a pattern element: either a concrete label or the wildcard `-`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Label {
    Wildcard,
    Named(String),
}

impl Label {
    pub fn named(s: impl Into<String>) -> Self {
        Label::Named(s.into())
    }

    /// Whether this pattern label accepts an object carrying `object_labels`.
    pub fn matches(&self, object_labels: &Labels) -> bool {
        match self {
            Label::Wildcard => true,
            Label::Named(l) => object_labels.contains(l),
        }
    }

    pub fn as_named(&self) -> Option<&str> {
        match self {
            Label::Named(l) => Some(l),
            Label::Wildcard => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Wildcard => f.write_str("-"),
            Label::Named(l) => f.write_str(l),
        }
    }
}

pub fn label_matches(pattern_label: &Label, object_labels: &Labels) -> bool {
    pattern_label.matches(object_labels)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternVertex {
    pub name: String,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternEdge {
    pub name: String,
    pub src: String,
    pub dst: String,
    pub label: Label,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("variable `{0}` is declared twice")]
    DuplicateVariable(String),
    #[error("edge `{edge}` refers to undeclared vertex variable `{vertex}`")]
    UnknownVertexVariable { edge: String, vertex: String },
}

/// A directed pattern whose vertices and edges are all named variables.
///
/// Declaration order is kept; it fixes the order in which ties are broken by
/// the matcher and the order variables are printed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphPattern {
    vertices: Vec<PatternVertex>,
    edges: Vec<PatternEdge>,
}

impl GraphPattern {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>, label: Label) -> Result<(), PatternError> {
        let name = name.into();
        if self.kind_of(&name).is_some() {
            return Err(PatternError::DuplicateVariable(name));
        }
        self.vertices.push(PatternVertex { name, label });
        Ok(())
    }

    pub fn add_edge(
        &mut self,
        name: impl Into<String>,
        src: impl Into<String>,
        dst: impl Into<String>,
        label: Label,
    ) -> Result<(), PatternError> {
        let (name, src, dst) = (name.into(), src.into(), dst.into());
        if self.kind_of(&name).is_some() {
            return Err(PatternError::DuplicateVariable(name));
        }
        for endpoint in [&src, &dst] {
            if self.vertex_index(endpoint).is_none() {
                return Err(PatternError::UnknownVertexVariable { edge: name, vertex: endpoint.clone() });
            }
        }
        self.edges.push(PatternEdge { name, src, dst, label });
        Ok(())
    }

    pub fn vertices(&self) -> &[PatternVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[PatternEdge] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    pub fn variable_count(&self) -> usize {
        self.vertices.len() + self.edges.len()
    }

    /// All variable names, vertices first, each group in declaration order.
    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.vertices
            .iter()
            .map(|v| v.name.as_str())
            .chain(self.edges.iter().map(|e| e.name.as_str()))
    }

    pub fn kind_of(&self, name: &str) -> Option<ObjectKind> {
        if self.vertex_index(name).is_some() {
            Some(ObjectKind::Vertex)
        } else if self.edge_index(name).is_some() {
            Some(ObjectKind::Edge)
        } else {
            None
        }
    }

    pub fn label_of(&self, name: &str) -> Option<&Label> {
        self.vertex_index(name)
            .map(|i| &self.vertices[i].label)
            .or_else(|| self.edge_index(name).map(|i| &self.edges[i].label))
    }

    pub(crate) fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub(crate) fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn edge(&self, name: &str) -> Option<&PatternEdge> {
        self.edge_index(name).map(|i| &self.edges[i])
    }
}

/// Assignment of pattern variables to graph objects.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binding(BTreeMap<String, ObjectId>);

impl Binding {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, var: &str) -> Option<ObjectId> {
        self.0.get(var).copied()
    }

    pub fn insert(&mut self, var: impl Into<String>, id: ObjectId) -> Option<ObjectId> {
        self.0.insert(var.into(), id)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, ObjectId)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn contains(&self, var: &str) -> bool {
        self.0.contains_key(var)
    }

    /// True if every variable of `seed` is assigned the same object here.
    pub fn extends(&self, seed: &Binding) -> bool {
        seed.iter().all(|(k, v)| self.get(k) == Some(v))
    }

    /// Restriction to the variables accepted by `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&str) -> bool) -> Binding {
        Binding(self.0.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), *v)).collect())
    }

    /// Union of two bindings; entries of `other` win on conflict.
    pub fn merged(&self, other: &Binding) -> Binding {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.insert(k, v);
        }
        out
    }
}

impl FromIterator<(String, ObjectId)> for Binding {
    fn from_iter<T: IntoIterator<Item = (String, ObjectId)>>(iter: T) -> Self {
        Binding(iter.into_iter().collect())
    }
}

impl<'a> FromIterator<(&'a str, ObjectId)> for Binding {
    fn from_iter<T: IntoIterator<Item = (&'a str, ObjectId)>>(iter: T) -> Self {
        Binding(iter.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}: {v}")?;
        }
        f.write_str("}")
    }
}
