mod common;

use common::*;
use ggd_core::distance::{levenshtein, DistanceRegistry};
use ggd_core::graph::{Value, ValueKind};
use ggd_core::{parse_ggd_file, parse_graph_file, print_ggds, serialize_graph, Ggd, IdMap};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn value() -> impl Strategy<Value = Value> {
    prop_oneof![
        ".{0,12}".prop_map(Value::Text),
        any::<i64>().prop_map(Value::Integer),
        (-1e12f64..1e12).prop_map(Value::Real),
        any::<bool>().prop_map(Value::Boolean),
    ]
}

proptest! {
    #[test]
    fn printed_rules_parse_back(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rs: Vec<Ggd> = (0..3).map(|i| random_ggd(&mut rng, &format!("rule_{i}"))).collect();
        let text = print_ggds(&rs);
        let back = parse_ggd_file(&text, &DistanceRegistry::new()).unwrap();
        prop_assert_eq!(back, rs);
    }

    #[test]
    fn serialized_graphs_parse_back(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 10, 20);
        let text = serialize_graph(&g, &IdMap::new());
        let loaded = parse_graph_file(&text).unwrap();
        prop_assert_eq!(&loaded.graph, &g);
        prop_assert_eq!(serialize_graph(&loaded.graph, &loaded.ids), text);
    }

    #[test]
    fn property_values_survive_serialization(v in value()) {
        let mut g = ggd_core::PropertyGraph::new();
        g.add_vertex(Default::default(), [("p".to_string(), v.clone())].into_iter().collect()).unwrap();
        let loaded = parse_graph_file(&serialize_graph(&g, &IdMap::new())).unwrap();
        prop_assert_eq!(loaded.graph.get_property(ggd_core::ObjectId::vertex(0), "p").unwrap(), Some(&v));
    }

    #[test]
    fn levenshtein_matches_reference(a in ".{0,16}", b in ".{0,16}") {
        prop_assert_eq!(levenshtein(&a, &b), oracle_levenshtein(&a, &b));
    }

    #[test]
    fn builtin_distances_are_zero_on_identical_values_and_symmetric(a in value(), b in value()) {
        let reg = DistanceRegistry::new();
        for name in ["levenshtein", "levenshtein_ci", "absdiff", "exact"] {
            let f = reg.get(name).unwrap();
            if f.applies_to(a.kind()) {
                prop_assert_eq!(f.eval(&a, &a).unwrap(), 0.0);
            }
            if let (Ok(x), Ok(y)) = (f.eval(&a, &b), f.eval(&b, &a)) {
                prop_assert_eq!(x, y);
                prop_assert!(x >= 0.0);
            }
        }
    }
}

#[test]
fn fixture_rules_round_trip() {
    for name in ["sigma1.ggd", "sigma2.ggd", "sigma3.ggd", "sigma4.ggd", "er.ggd", "grow.ggd"] {
        let reg = DistanceRegistry::new();
        let rs = parse_ggd_file(&read_fixture(name), &reg).unwrap();
        assert_eq!(parse_ggd_file(&print_ggds(&rs), &reg).unwrap(), rs, "{name}");
    }
}

#[test]
fn text_distances_reject_numbers() {
    let reg = DistanceRegistry::new();
    let f = reg.get("levenshtein").unwrap();
    assert!(!f.applies_to(ValueKind::Integer));
    assert!(f.eval(&Value::Integer(1), &Value::Integer(2)).is_err());
}

#[test]
fn grammar_doc_example_parses() {
    let doc = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/grammar.md")).unwrap();
    let block = doc.split("```text\n").nth(1).unwrap().split("```").next().unwrap();
    let rules = ggd_core::parse_ggd_file(block, &ggd_core::DistanceRegistry::new()).unwrap();
    assert_eq!(rules.len(), 1);
    assert_eq!(rules[0].name(), "same_person");
}
