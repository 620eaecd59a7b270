//! Python bindings: graphs, rule sets, validation, repair and matching.
//!
//! Reports come back as the same dictionaries the `ggd` tool writes as JSON.

use ggd_core::graph::{Labels, Properties};
use ggd_core::report::{match_json, render, repair_report_json, validation_json};
use ggd_core::{
    find_matches, parse_ggd_file, parse_graph_file, print_ggds, repair_to_fixpoint, serialize_graph, validate_set_with,
    DistanceRegistry, Ggd, IdMap, ObjectId, PropertyGraph, ValidationOptions, Value,
};
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyFloat, PyInt, PyString};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, report: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (render(report),))
}

fn to_value(key: &str, obj: &Bound<'_, PyAny>) -> PyResult<Value> {
    if obj.is_instance_of::<PyBool>() {
        Ok(Value::Boolean(obj.extract()?))
    } else if obj.is_instance_of::<PyInt>() {
        Ok(Value::Integer(obj.extract()?))
    } else if obj.is_instance_of::<PyFloat>() {
        Value::real(obj.extract()?).map_err(value_error)
    } else if obj.is_instance_of::<PyString>() {
        Ok(Value::Text(obj.extract()?))
    } else {
        Err(PyValueError::new_err(format!("property `{key}`: expected str, int, float or bool")))
    }
}

fn from_value<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Text(s) => s.into_pyobject(py)?.into_any(),
        Value::Integer(i) => i.into_pyobject(py)?.into_any(),
        Value::Real(r) => r.into_pyobject(py)?.into_any(),
        Value::Boolean(b) => b.into_pyobject(py)?.to_owned().into_any(),
    })
}

fn to_properties(props: Option<&Bound<'_, PyDict>>) -> PyResult<Properties> {
    let mut out = Properties::new();
    if let Some(props) = props {
        for (k, v) in props.iter() {
            let key: String = k.extract()?;
            let value = to_value(&key, &v)?;
            out.insert(key, value);
        }
    }
    Ok(out)
}

/// A property graph whose objects are addressed by string ids.
#[pyclass(name = "Graph")]
#[derive(Default)]
struct PyGraph {
    graph: PropertyGraph,
    ids: IdMap,
}

impl PyGraph {
    fn lookup(&self, id: &str) -> PyResult<ObjectId> {
        self.ids.get(id).ok_or_else(|| PyKeyError::new_err(id.to_string()))
    }

    fn fresh(&self, id: &str) -> PyResult<()> {
        match self.ids.get(id) {
            Some(_) => Err(PyValueError::new_err(format!("duplicate id `{id}`"))),
            None => Ok(()),
        }
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new() -> Self {
        Self::default()
    }

    /// Parses the JSON graph format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let loaded = parse_graph_file(text).map_err(value_error)?;
        Ok(Self { graph: loaded.graph, ids: loaded.ids })
    }

    fn to_json(&self) -> String {
        serialize_graph(&self.graph, &self.ids)
    }

    #[pyo3(signature = (id, labels=Vec::new(), properties=None))]
    fn add_vertex(&mut self, id: &str, labels: Vec<String>, properties: Option<&Bound<'_, PyDict>>) -> PyResult<()> {
        self.fresh(id)?;
        let props = to_properties(properties)?;
        let v = self.graph.add_vertex(labels.into_iter().collect::<Labels>(), props).map_err(value_error)?;
        self.ids.insert(v, id).map_err(value_error)
    }

    #[pyo3(signature = (id, src, dst, labels=Vec::new(), properties=None))]
    fn add_edge(
        &mut self,
        id: &str,
        src: &str,
        dst: &str,
        labels: Vec<String>,
        properties: Option<&Bound<'_, PyDict>>,
    ) -> PyResult<()> {
        self.fresh(id)?;
        let (s, d) = (self.lookup(src)?, self.lookup(dst)?);
        let props = to_properties(properties)?;
        let e = self.graph.add_edge(s, d, labels.into_iter().collect::<Labels>(), props).map_err(value_error)?;
        self.ids.insert(e, id).map_err(value_error)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    fn labels(&self, id: &str) -> PyResult<Vec<String>> {
        let labels = self.graph.labels(self.lookup(id)?).map_err(value_error)?;
        Ok(labels.iter().cloned().collect())
    }

    /// `None` when the object has no such property.
    fn get_property<'py>(&self, py: Python<'py>, id: &str, key: &str) -> PyResult<Option<Bound<'py, PyAny>>> {
        match self.graph.get_property(self.lookup(id)?, key).map_err(value_error)? {
            Some(v) => Ok(Some(from_value(py, v)?)),
            None => Ok(None),
        }
    }

    fn properties<'py>(&self, py: Python<'py>, id: &str) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        for (k, v) in self.graph.properties(self.lookup(id)?).map_err(value_error)? {
            out.set_item(k, from_value(py, v)?)?;
        }
        Ok(out)
    }

    /// `(src, dst)` of an edge.
    fn endpoints(&self, id: &str) -> PyResult<(String, String)> {
        let (s, d) = self.graph.endpoints(self.lookup(id)?).map_err(value_error)?;
        Ok((self.ids.name(s).into_owned(), self.ids.name(d).into_owned()))
    }

    fn __len__(&self) -> usize {
        self.graph.len()
    }

    fn __repr__(&self) -> String {
        format!("Graph(vertices={}, edges={})", self.graph.vertex_count(), self.graph.edge_count())
    }
}

/// A parsed rule file.
#[pyclass(name = "RuleSet")]
struct PyRuleSet {
    rules: Vec<Ggd>,
}

#[pymethods]
impl PyRuleSet {
    /// Parses rule text; syntax errors raise `ValueError` with `line:col`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let rules = parse_ggd_file(text, &DistanceRegistry::new()).map_err(value_error)?;
        Ok(Self { rules })
    }

    fn names(&self) -> Vec<String> {
        self.rules.iter().map(|r| r.name().to_string()).collect()
    }

    fn __len__(&self) -> usize {
        self.rules.len()
    }

    fn __str__(&self) -> String {
        print_ggds(&self.rules)
    }
}

/// Validation report as a dict; `report["verdict"]` is `"valid"`,
/// `"violated"` or `"error"`.
#[pyfunction]
#[pyo3(signature = (graph, rules, parallelism=1))]
fn validate<'py>(py: Python<'py>, graph: &PyGraph, rules: &PyRuleSet, parallelism: usize) -> PyResult<Bound<'py, PyAny>> {
    let options = ValidationOptions { parallelism: parallelism.max(1) };
    let report = py.detach(|| validate_set_with(&graph.graph, &rules.rules, &DistanceRegistry::new(), options));
    json_to_py(py, &validation_json(&report, &graph.ids))
}

/// Repairs `graph` in place and returns the repair report.
#[pyfunction]
#[pyo3(signature = (graph, rules, max_rounds=10, parallelism=1))]
fn repair<'py>(
    py: Python<'py>,
    graph: &mut PyGraph,
    rules: &PyRuleSet,
    max_rounds: usize,
    parallelism: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let options = ValidationOptions { parallelism: parallelism.max(1) };
    let registry = DistanceRegistry::new();
    let outcome = repair_to_fixpoint(&mut graph.graph, &rules.rules, &registry, max_rounds, options).map_err(value_error)?;
    graph.ids.name_generated(&outcome.generated());
    let final_report = validate_set_with(&graph.graph, &rules.rules, &registry, options);
    json_to_py(py, &repair_report_json(&final_report, &outcome, &graph.graph, &graph.ids))
}

/// Matches of one side (`"source"` or `"target"`) of the named rule, as
/// `{var: object id}` dicts.
#[pyfunction]
#[pyo3(signature = (graph, rules, rule, side="source"))]
fn matches<'py>(py: Python<'py>, graph: &PyGraph, rules: &PyRuleSet, rule: &str, side: &str) -> PyResult<Bound<'py, PyAny>> {
    let ggd = rules.rules.iter().find(|r| r.name() == rule).ok_or_else(|| PyKeyError::new_err(rule.to_string()))?;
    let pattern = match side {
        "source" => ggd.source(),
        "target" => ggd.target(),
        other => return Err(PyValueError::new_err(format!("side must be `source` or `target`, not `{other}`"))),
    };
    let bindings: Vec<_> = find_matches(pattern, &graph.graph).collect();
    let report = match_json(rule, side, &bindings, &graph.ids);
    json_to_py(py, &report["bindings"])
}

#[pymodule]
fn ggd(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyRuleSet>()?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(repair, m)?)?;
    m.add_function(wrap_pyfunction!(matches, m)?)?;
    Ok(())
}
