//! JSON graph documents (`.graph.json`).
//!
//! ```json
//! { "vertices": [{"id": "p1", "labels": ["person"], "properties": {"name": "Ann"}}],
//!   "edges":    [{"id": "w1", "src": "p1", "dst": "c1", "labels": ["worksAt"], "properties": {}}] }
//! ```
//!
//! External ids are opaque strings, unique across vertices and edges. They are
//! kept in an [`IdMap`] next to the graph and used in every report.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, Labels, ObjectId, Properties, PropertyGraph, Value};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphFileError {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("edge `{edge}` refers to unknown vertex `{endpoint}`")]
    DanglingEdge { edge: String, endpoint: String },
    #[error("object id `{0}` is used more than once")]
    DuplicateId(String),
    #[error("object `{object}`, property `{key}`: {message}")]
    InvalidValue { object: String, key: String, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Bidirectional map between internal ids and external string ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdMap {
    names: HashMap<ObjectId, String>,
    ids: HashMap<String, ObjectId>,
    generated: usize,
}

impl IdMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, id: ObjectId, name: impl Into<String>) -> Result<(), GraphFileError> {
        let name = name.into();
        if self.ids.contains_key(&name) {
            return Err(GraphFileError::DuplicateId(name));
        }
        self.ids.insert(name.clone(), id);
        self.names.insert(id, name);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<ObjectId> {
        self.ids.get(name).copied()
    }

    /// External name of `id`. Objects created through the API without a name
    /// fall back to `#v<index>` / `#e<index>`.
    pub fn name(&self, id: ObjectId) -> Cow<'_, str> {
        match self.names.get(&id) {
            Some(n) => Cow::Borrowed(n),
            None => Cow::Owned(format!("#{id}")),
        }
    }

    /// Names generated objects `_gen_<n>` with a sequential counter, skipping
    /// names that are already taken. Objects that already have a name keep it.
    pub fn name_generated(&mut self, ids: &[ObjectId]) {
        for &id in ids {
            if self.names.contains_key(&id) {
                continue;
            }
            let name = loop {
                let candidate = format!("_gen_{}", self.generated);
                self.generated += 1;
                if !self.ids.contains_key(&candidate) {
                    break candidate;
                }
            };
            self.insert(id, name).expect("fresh name");
        }
    }
}

/// A parsed graph together with its external ids.
#[derive(Debug, Clone, Default)]
pub struct LoadedGraph {
    pub graph: PropertyGraph,
    pub ids: IdMap,
}

#[derive(Debug, Serialize, Deserialize)]
struct Document {
    #[serde(default)]
    vertices: Vec<VertexDoc>,
    #[serde(default)]
    edges: Vec<EdgeDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct VertexDoc {
    id: String,
    #[serde(default)]
    labels: Vec<String>,
    #[serde(default)]
    properties: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeDoc {
    id: String,
    src: String,
    dst: String,
    #[serde(default)]
    labels: Vec<String>,
    #[serde(default)]
    properties: BTreeMap<String, serde_json::Value>,
}

fn to_value(object: &str, key: &str, v: serde_json::Value) -> Result<Value, GraphFileError> {
    let invalid = |message: &str| GraphFileError::InvalidValue {
        object: object.to_string(),
        key: key.to_string(),
        message: message.to_string(),
    };
    match v {
        serde_json::Value::String(s) => Ok(Value::Text(s)),
        serde_json::Value::Bool(b) => Ok(Value::Boolean(b)),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Value::Integer(i))
            } else if n.is_u64() {
                Err(invalid("integer does not fit in 64-bit signed range"))
            } else {
                n.as_f64().map(Value::Real).ok_or_else(|| invalid("unrepresentable number"))
            }
        }
        serde_json::Value::Null => Err(invalid("null is not a property value; omit the key instead")),
        serde_json::Value::Array(_) | serde_json::Value::Object(_) => {
            Err(invalid("only strings, numbers and booleans are supported"))
        }
    }
}

pub(crate) fn to_json(v: &Value) -> serde_json::Value {
    match v {
        Value::Text(s) => serde_json::Value::String(s.clone()),
        Value::Integer(i) => serde_json::Value::from(*i),
        Value::Real(r) => serde_json::Number::from_f64(*r).map(serde_json::Value::Number).expect("reals are finite"),
        Value::Boolean(b) => serde_json::Value::Bool(*b),
    }
}

fn to_properties(object: &str, raw: BTreeMap<String, serde_json::Value>) -> Result<Properties, GraphFileError> {
    raw.into_iter().map(|(k, v)| Ok((k.clone(), to_value(object, &k, v)?))).collect()
}

pub fn parse_graph_file(text: &str) -> Result<LoadedGraph, GraphFileError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| GraphFileError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut graph = PropertyGraph::new();
    let mut ids = IdMap::new();
    for v in doc.vertices {
        if ids.get(&v.id).is_some() {
            return Err(GraphFileError::DuplicateId(v.id));
        }
        let properties = to_properties(&v.id, v.properties)?;
        let id = graph.add_vertex(v.labels.into_iter().collect(), properties)?;
        ids.insert(id, v.id)?;
    }
    for e in doc.edges {
        if ids.get(&e.id).is_some() {
            return Err(GraphFileError::DuplicateId(e.id));
        }
        let endpoint = |name: &str| match ids.get(name) {
            Some(id) if id.is_vertex() => Ok(id),
            _ => Err(GraphFileError::DanglingEdge { edge: e.id.clone(), endpoint: name.to_string() }),
        };
        let (src, dst) = (endpoint(&e.src)?, endpoint(&e.dst)?);
        let properties = to_properties(&e.id, e.properties)?;
        let labels: Labels = e.labels.into_iter().collect();
        let id = graph.add_edge(src, dst, labels, properties)?;
        ids.insert(id, e.id)?;
    }
    Ok(LoadedGraph { graph, ids })
}

fn json_properties(p: &Properties) -> BTreeMap<String, serde_json::Value> {
    p.iter().map(|(k, v)| (k.clone(), to_json(v))).collect()
}

/// Pretty JSON in id order; labels and property keys sorted. Deterministic.
pub fn serialize_graph(graph: &PropertyGraph, ids: &IdMap) -> String {
    let vertices = graph
        .vertex_ids()
        .map(|v| VertexDoc {
            id: ids.name(v).into_owned(),
            labels: graph.labels(v).expect("own id").iter().cloned().collect(),
            properties: json_properties(graph.properties(v).expect("own id")),
        })
        .collect();
    let edges = graph
        .edge_ids()
        .map(|e| {
            let (s, d) = graph.endpoints(e).expect("own id");
            EdgeDoc {
                id: ids.name(e).into_owned(),
                src: ids.name(s).into_owned(),
                dst: ids.name(d).into_owned(),
                labels: graph.labels(e).expect("own id").iter().cloned().collect(),
                properties: json_properties(graph.properties(e).expect("own id")),
            }
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&Document { vertices, edges }).expect("serializable");
    out.push('\n');
    out
}
