mod common;

use std::collections::BTreeMap;

use ginzburg_modules::decomp::{decompose, Node, NodeContent};
use ginzburg_modules::field::{arg_compare, ExactMatrix, FieldSpec, GaussianRational, Phase};
use ginzburg_modules::fixtures::{arrow, ex_a, m_lambda, m_lambda_plus_z, m_r_lambda, presentation, quiver, simple};
use ginzburg_modules::pmod::{hom0_space, ProperModule};
use ginzburg_modules::quiver::GradedQuiver;
use ginzburg_modules::stab::{
    class_map, enumerate_subspaces, hn_filtration, is_semistable_bruteforce, validate_stability, StabilityCondition,
};
use ginzburg_modules::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

const Q: FieldSpec = FieldSpec::Rationals;
const F2: FieldSpec = FieldSpec::Prime(2);
const F5: FieldSpec = FieldSpec::Prime(5);

fn z(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_i64(re, im)
}

fn sigma(q: &GradedQuiver, xy: GaussianRational, zz: GaussianRational) -> ginzburg_modules::Result<StabilityCondition> {
    validate_stability(q, &BTreeMap::from([("x".to_string(), xy), ("z".to_string(), zz)]))
}

fn standard(q: &GradedQuiver) -> StabilityCondition {
    sigma(q, z(-1, 1), z(0, 1)).unwrap()
}

#[test]
fn validation() {
    let q = ex_a(Q);
    assert!(sigma(&q, z(-1, 1), z(0, 1)).is_ok());
    match sigma(&q, z(0, 1), z(-1, 1)) {
        Err(Error::Monotonicity { lower, upper }) => assert_eq!((lower.as_str(), upper.as_str()), ("x", "z")),
        other => panic!("expected a monotonicity error, got {other:?}"),
    }
    assert!(sigma(&q, z(1, 0), z(0, 1)).is_err());
    assert!(sigma(&q, z(0, 1), z(1, 0)).is_err());
    assert!(sigma(&q, z(0, -1), z(0, -1)).is_err());
    // arg π is admissible
    assert!(sigma(&q, z(-1, 0), z(0, 1)).is_ok());
    // unknown or missing classes
    assert!(validate_stability(&q, &BTreeMap::from([("x".to_string(), z(0, 1))])).is_err());
    assert!(validate_stability(
        &q,
        &BTreeMap::from([
            ("x".to_string(), z(0, 1)),
            ("y".to_string(), z(0, 1)),
            ("z".to_string(), z(0, 1))
        ])
    )
    .is_err());
}

#[test]
fn class_maps() {
    let pres = presentation(&ex_a(Q));
    assert_eq!(class_map(&m_r_lambda(&pres, 2, &Q.from_i64(3))).unwrap(), [2, 2, 0]);
    assert_eq!(class_map(&ProperModule::zero(pres.clone())).unwrap(), [0, 0, 0]);
    let mx = simple(&pres, "x");
    assert_eq!(class_map(&mx.direct_sum(&mx).unwrap()).unwrap(), [2, 0, 0]);
    let err = class_map(&mx.shift(1)).unwrap_err();
    assert!(err.to_string().contains("heart requires degree-0"));
}

#[test]
fn central_charges_and_phases() {
    let pres = presentation(&ex_a(Q));
    let s = standard(pres.quiver());
    let ml = m_lambda(&pres, &Q.from_i64(2));
    let mz = simple(&pres, "z");
    assert_eq!(s.central_charge(&ml).unwrap(), z(-2, 2));
    assert_eq!(s.central_charge(&mz).unwrap(), z(0, 1));
    let sum = ml.direct_sum(&mz).unwrap();
    assert_eq!(
        s.central_charge(&sum).unwrap(),
        s.central_charge(&ml).unwrap().add(&s.central_charge(&mz).unwrap())
    );
    assert_eq!(s.phase(&mz).unwrap(), Phase::new(z(0, 1)).unwrap());
    assert!(s.phase(&simple(&pres, "x")).unwrap() > s.phase(&mz).unwrap());
    assert_eq!(s.phase(&ml.direct_sum(&ml).unwrap()).unwrap(), s.phase(&ml).unwrap());
    assert_eq!(s.phase(&ProperModule::zero(pres)).unwrap_err(), Error::ZeroCharge);
}

#[test]
fn hn_examples() {
    let pres = presentation(&ex_a(Q));
    let s = standard(pres.quiver());
    let m = m_lambda_plus_z(&pres, &Q.from_i64(3));
    let hn = hn_filtration(&s, &m).unwrap();
    assert_eq!(hn.factors.len(), 2);
    assert_eq!(hn.factors[0].classes, ["x"]);
    assert_eq!(hn.factors[0].phase, Phase::new(z(-1, 1)).unwrap());
    assert_eq!(hn.factors[1].classes, ["z"]);
    assert_eq!(hn.factors[1].phase, Phase::new(z(0, 1)).unwrap());
    assert_eq!(hn.filtration.last().unwrap(), &m);
    for (f, t) in hn.filtration.iter().zip(&hn.inclusions) {
        t.check(f, &m).unwrap();
    }

    let hn = hn_filtration(&s, &m_r_lambda(&pres, 2, &Q.from_i64(3))).unwrap();
    assert_eq!(hn.factors.len(), 1);
    assert!(hn_filtration(&s, &m.shift(1)).is_err());
}

#[test]
fn equal_phases_merge() {
    // two disconnected vertices with no arrows: incomparable classes
    let q = quiver(3, Q, &["u", "v"], vec![]);
    let s = validate_stability(
        &q,
        &BTreeMap::from([("u".to_string(), z(0, 1)), ("v".to_string(), z(0, 2))]),
    )
    .unwrap();
    let pres = presentation(&q);
    let m = simple(&pres, "u").direct_sum(&simple(&pres, "v")).unwrap();
    let hn = hn_filtration(&s, &m).unwrap();
    assert_eq!(hn.factors.len(), 1);
    assert_eq!(hn.factors[0].classes, ["u", "v"]);
}

#[test]
fn hn_orders_by_phase_not_class_order() {
    // u, v incomparable; v has the larger phase so its factor comes first
    let q = quiver(3, Q, &["u", "v"], vec![]);
    let s = validate_stability(
        &q,
        &BTreeMap::from([("u".to_string(), z(1, 1)), ("v".to_string(), z(-1, 1))]),
    )
    .unwrap();
    let pres = presentation(&q);
    let m = simple(&pres, "u").direct_sum(&simple(&pres, "v")).unwrap();
    let hn = hn_filtration(&s, &m).unwrap();
    let classes: Vec<&str> = hn.factors.iter().map(|f| f.classes[0].as_str()).collect();
    assert_eq!(classes, ["v", "u"]);
}

#[test]
fn subspace_enumeration_counts() {
    // Gaussian binomials: F_2^3 has 1 + 7 + 7 + 1 subspaces, F_3^2 has 1 + 4 + 1
    assert_eq!(enumerate_subspaces(F2, 3).unwrap().len(), 16);
    assert_eq!(enumerate_subspaces(FieldSpec::Prime(3), 2).unwrap().len(), 6);
    assert_eq!(enumerate_subspaces(F2, 0).unwrap().len(), 1);
    assert!(enumerate_subspaces(Q, 1).is_err());
}

#[test]
fn bruteforce_semistability_examples() {
    let pres = presentation(&ex_a(F2));
    let s = standard(pres.quiver());
    assert!(is_semistable_bruteforce(&s, &m_r_lambda(&pres, 2, &F2.one()), 4).unwrap());
    assert!(is_semistable_bruteforce(&s, &simple(&pres, "z"), 4).unwrap());
    assert!(!is_semistable_bruteforce(&s, &m_lambda_plus_z(&pres, &F2.one()), 4).unwrap());
    assert_eq!(
        is_semistable_bruteforce(&s, &m_r_lambda(&pres, 3, &F2.one()), 4).unwrap_err(),
        Error::BudgetExceeded(4)
    );
    let pq = presentation(&ex_a(Q));
    assert!(is_semistable_bruteforce(&standard(pq.quiver()), &simple(&pq, "x"), 4).is_err());
}

#[test]
fn bruteforce_detects_destabilizing_submodule_through_arrows() {
    // x̄_c maps M(z) into M(x), so the x-line is a submodule of phase 3π/4 inside a
    // module of charge −1+2i, whose phase is smaller.
    let pres = presentation(&ex_a(F2));
    let s = standard(pres.quiver());
    let m = ProperModule::from_ids(
        pres,
        &[("x", 0, 1), ("z", 0, 1)],
        vec![("x_c", 0, ExactMatrix::from_i64(F2, &[&[1]]))],
    )
    .unwrap();
    assert!(!is_semistable_bruteforce(&s, &m, 4).unwrap());
    let hn = hn_filtration(&s, &m).unwrap();
    assert_eq!(hn.factors.len(), 2);
    assert_eq!(hn.factors[0].classes, ["x"]);
}

/// Z(parent) equals the sum over children at every split of a degree-0 tree.
fn z_additive(s: &StabilityCondition, n: &Node) -> bool {
    match &n.content {
        NodeContent::Leaf { .. } => true,
        NodeContent::Split { sub, quotient, .. } => {
            let parent = s.central_charge(&n.module).unwrap();
            let sum = s
                .central_charge(&sub.module)
                .unwrap()
                .add(&s.central_charge(&quotient.module).unwrap());
            parent == sum && z_additive(s, sub) && z_additive(s, quotient)
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hn_factors_semistable_with_decreasing_phase(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pres = presentation(&ex_a(F2));
        let s = standard(pres.quiver());
        let m = common::random_heart_module(&mut rng, &pres, 2, 0.2);
        if m.is_zero() {
            return Ok(());
        }
        let hn = hn_filtration(&s, &m).unwrap();
        for w in hn.factors.windows(2) {
            prop_assert_eq!(arg_compare(&w[0].charge, &w[1].charge).unwrap(), Ordering::Greater);
        }
        for f in &hn.factors {
            if f.module.total_dim() <= 4 {
                prop_assert!(is_semistable_bruteforce(&s, &f.module, 4).unwrap());
            }
        }
        let total = hn.factors.iter().fold(GaussianRational::zero(), |acc, f| acc.add(&f.charge));
        prop_assert_eq!(total, s.central_charge(&m).unwrap());
        prop_assert!(z_additive(&s, &decompose(&m).unwrap().root));
    }

    #[test]
    fn hom_vanishing_for_decreasing_phase(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pres = presentation(&ex_a(F5));
        let s = standard(pres.quiver());
        let a = common::random_heart_module(&mut rng, &pres, 2, 0.2);
        let b = common::random_heart_module(&mut rng, &pres, 2, 0.2);
        if a.is_zero() || b.is_zero() {
            return Ok(());
        }
        for fa in hn_filtration(&s, &a).unwrap().factors {
            for fb in hn_filtration(&s, &b).unwrap().factors {
                if fa.phase > fb.phase {
                    prop_assert!(hom0_space(&fa.module, &fb.module).unwrap().is_empty());
                }
            }
        }
    }

    #[test]
    fn charge_depends_only_on_dimensions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pres = presentation(&ex_a(F5));
        let s = standard(pres.quiver());
        let m = common::random_heart_module(&mut rng, &pres, 3, 0.2);
        // the same spaces with every generator acting by zero
        let bare: Vec<(&str, i64, usize)> = ["x", "y", "z"]
            .iter()
            .enumerate()
            .map(|(v, id)| (*id, 0, m.dim(v, 0)))
            .filter(|t| t.2 > 0)
            .collect();
        let n = ProperModule::from_ids(pres.clone(), &bare, vec![]).unwrap();
        prop_assert_eq!(class_map(&m).unwrap(), class_map(&n).unwrap());
        prop_assert_eq!(s.central_charge(&m).unwrap(), s.central_charge(&n).unwrap());
    }
}

#[test]
fn loops_and_arrows_in_one_class_are_semistable() {
    let q = quiver(3, F2, &["v"], vec![arrow("e", "v", "v", 0)]);
    let s = validate_stability(&q, &BTreeMap::from([("v".to_string(), z(1, 1))])).unwrap();
    let pres = presentation(&q);
    let m = ProperModule::from_ids(
        pres,
        &[("v", 0, 2)],
        vec![("x_e", 0, ExactMatrix::from_i64(F2, &[&[0, 1], &[0, 0]]))],
    )
    .unwrap();
    assert!(is_semistable_bruteforce(&s, &m, 4).unwrap());
}
