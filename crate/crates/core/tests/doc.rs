mod common;

use std::collections::BTreeMap;

use ginzburg_modules::decomp::{decompose_with, verify_tree};
use ginzburg_modules::doc::{
    certificate_from_doc, certificate_to_doc, from_json, label_from_doc, label_to_doc, module_to_doc, parse_label,
    parse_module, parse_quiver, parse_stability, parse_tree, quiver_to_doc, stability_to_doc, to_json, tree_to_doc,
    ModuleDoc, MODULE_CONVENTION,
};
use ginzburg_modules::field::{FieldSpec, GaussianRational};
use ginzburg_modules::fixtures::{ex_a, ex_b, m_lambda_plus_z, m_r_lambda, nilpotent_loop, presentation, single_loop};
use ginzburg_modules::quiver::SupportLabel;
use ginzburg_modules::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;

#[test]
fn quiver_round_trip() {
    for q in [ex_a(Q), ex_b(FieldSpec::Prime(7)), single_loop(Q)] {
        let json = to_json(&quiver_to_doc(&q));
        let back = parse_quiver(&json).unwrap();
        assert_eq!(back, q);
        assert_eq!(to_json(&quiver_to_doc(&back)), json);
    }
}

#[test]
fn quiver_documents_are_validated() {
    let unknown = r#"{"n": 3, "field": {"kind": "Q"}, "vertices": [], "arrows": [], "extra": 1}"#;
    assert!(matches!(parse_quiver(unknown), Err(Error::Parse(_))));
    let dangling = r#"{"n": 3, "field": {"kind": "Q"}, "vertices": [{"id": "x", "local": "k"}],
        "arrows": [{"id": "a", "from": "x", "to": "w", "degree": 0, "sign": 1}]}"#;
    assert!(parse_quiver(dangling).is_err());
    assert!(parse_quiver("not json").is_err());
}

#[test]
fn module_round_trip_carries_the_convention() {
    let pres = presentation(&ex_a(Q));
    let m = m_r_lambda(&pres, 2, &Q.from_ratio(-1, 2).unwrap());
    let doc = module_to_doc(&m);
    assert_eq!(doc.convention, MODULE_CONVENTION);
    let json = to_json(&doc);
    assert!(json.contains("\"_convention\""));
    assert!(json.contains("\"-1/2\""));
    assert_eq!(parse_module(&pres, &json).unwrap(), m);

    // the convention key is informative only; a document without it parses
    let mut bare: serde_json::Value = serde_json::from_str(&json).unwrap();
    bare.as_object_mut().unwrap().remove("_convention");
    assert_eq!(parse_module(&pres, &bare.to_string()).unwrap(), m);
    let reparsed: ModuleDoc = from_json(&bare.to_string()).unwrap();
    assert_eq!(reparsed.convention, MODULE_CONVENTION);
}

#[test]
fn module_documents_are_validated() {
    let pres = presentation(&ex_a(Q));
    let wrong_shape = r#"{"spaces": {"x": {"0": 1}, "y": {"0": 1}},
        "maps": {"x_a": [{"source_degree": 0, "entries": [["1", "2"]]}]}}"#;
    assert!(parse_module(&pres, wrong_shape).is_err());
    let unknown_vertex = r#"{"spaces": {"w": {"0": 1}}, "maps": {}}"#;
    assert!(parse_module(&pres, unknown_vertex).is_err());
}

#[test]
fn stability_round_trip() {
    let charges: BTreeMap<String, GaussianRational> = [
        ("x".to_string(), GaussianRational::from_i64(-1, 1)),
        ("y".to_string(), GaussianRational::from_i64(0, 1)),
        ("z".to_string(), GaussianRational::from_i64(3, 2)),
    ]
    .into_iter()
    .collect();
    let json = to_json(&stability_to_doc(&charges));
    assert_eq!(parse_stability(&json).unwrap(), charges);
}

#[test]
fn label_syntax() {
    assert_eq!(parse_label("x@0").unwrap(), SupportLabel::vertex("x", 0));
    assert_eq!(parse_label("x@-2").unwrap(), SupportLabel::vertex("x", -2));
    assert_eq!(parse_label("a,b@0").unwrap(), SupportLabel::cycle(&["a", "b"], 0));
    assert_eq!(parse_label("{b, a}@1").unwrap(), SupportLabel::cycle(&["a", "b"], 1));
    assert!(matches!(parse_label("x"), Err(Error::InvalidLabel(_))));
    assert!(matches!(parse_label("x@one"), Err(Error::InvalidLabel(_))));
    for l in [SupportLabel::vertex("z", -1), SupportLabel::cycle(&["a", "b"], 0)] {
        assert_eq!(label_from_doc(&label_to_doc(&l)), l);
    }
}

#[test]
fn certificate_round_trip() {
    let pres = presentation(&ex_a(Q));
    let m = m_lambda_plus_z(&pres, &Q.from_i64(2));
    for label in [SupportLabel::vertex("x", 0), SupportLabel::cycle(&["a", "b"], 0)] {
        let cert = m.is_generator(&label).unwrap();
        let json = to_json(&certificate_to_doc(&cert));
        let back = certificate_from_doc(Q, &from_json(&json).unwrap()).unwrap();
        assert_eq!(back, cert);
    }
    let lp = presentation(&single_loop(Q));
    let cert = nilpotent_loop(&lp)
        .is_generator(&SupportLabel::cycle(&["e"], 0))
        .unwrap();
    assert!(!cert.passed());
    let json = to_json(&certificate_to_doc(&cert));
    assert_eq!(certificate_from_doc(Q, &from_json(&json).unwrap()).unwrap(), cert);
}

#[test]
fn tree_round_trip_on_examples() {
    let pres = presentation(&ex_a(Q));
    let m = m_r_lambda(&pres, 2, &Q.from_i64(3))
        .direct_sum(&m_lambda_plus_z(&pres, &Q.from_i64(5)))
        .unwrap();
    let tree = decompose_with(&m, 10_000, true).unwrap();
    let json = to_json(&tree_to_doc(&tree));
    let back = parse_tree(&pres, &json).unwrap();
    assert_eq!(back, tree);
    assert!(verify_tree(&m, &back).ok());
    assert_eq!(to_json(&tree_to_doc(&back)), json);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_modules_and_trees_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pres = presentation(&ex_a(FieldSpec::Prime(5)));
        let m = common::random_module(&mut rng, &pres, 2, 2, 0.3);
        let json = to_json(&module_to_doc(&m));
        prop_assert_eq!(parse_module(&pres, &json).unwrap(), m.clone());
        let tree = decompose_with(&m, 10_000, true).unwrap();
        let tj = to_json(&tree_to_doc(&tree));
        prop_assert_eq!(parse_tree(&pres, &tj).unwrap(), tree);
    }
}
