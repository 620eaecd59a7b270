//! Graph generating dependencies (GGDs) over property graphs.
//!
//! A GGD `source, source_constraints -> target, target_constraints` demands
//! that every match of the source pattern satisfying the source constraints
//! extends to a match of the target pattern satisfying the target
//! constraints. This crate parses rule files, matches patterns
//! (homomorphically), validates graphs and repairs violations by adding
//! vertices and edges. The rule language is described in `docs/grammar.md`.
//!
//! ```
//! use ggd_core::{parse_ggd_file, validate_set, DistanceRegistry, PropertyGraph};
//! use ggd_core::graph::{labels, props};
//!
//! let registry = DistanceRegistry::new();
//! let rules = parse_ggd_file(
//!     "GGD named { SOURCE { (p:person) } => TARGET { } WHERE { levenshtein(p.name, \"\") > 0 } }",
//!     &registry,
//! ).unwrap();
//! let mut g = PropertyGraph::new();
//! g.add_vertex(labels(["person"]), props([("name", "Ann")])).unwrap();
//! assert!(validate_set(&g, &rules, &registry).holds());
//! ```

pub mod cli;
pub mod constraint;
pub mod distance;
pub mod dsl;
pub mod ggd;
pub mod graph;
pub mod graph_io;
pub mod matcher;
pub mod pattern;
pub mod repair;
pub mod report;
pub mod validation;

pub use constraint::{CompareOp, Constraint, PropertyRef};
pub use distance::{DistanceFn, DistanceRegistry};
pub use dsl::{parse_ggd_file, print_ggds, DslError};
pub use ggd::Ggd;
pub use graph::{ObjectId, ObjectKind, PropertyGraph, Value};
pub use graph_io::{parse_graph_file, serialize_graph, IdMap, LoadedGraph};
pub use matcher::{find_matches, find_matches_parallel, find_matches_seeded};
pub use pattern::{Binding, GraphPattern, Label};
pub use repair::{apply_plans, plan_repair, repair_to_fixpoint, RepairOutcome, RepairPlan};
pub use validation::{validate_ggd, validate_set, validate_set_with, ValidationOptions, ValidationReport, Verdict, Violation};
