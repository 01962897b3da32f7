mod common;

use ginzburg_modules::decomp::{
    class_tower, decompose, decompose_with, degree_tower, refine_single_cycle, verify_tree, NodeContent,
    RefinementOutcome, SplitKind,
};
use ginzburg_modules::field::{ExactMatrix, FieldSpec, Poly, Scalar};
use ginzburg_modules::fixtures::{
    a3, ex_a, ex_b, m_lambda, m_lambda_plus_z, m_r_lambda, nilpotent_loop, presentation, simple, single_loop,
};
use ginzburg_modules::pmod::{hom0_space, ModuleMap, ProperModule};
use ginzburg_modules::quiver::{Support, SupportLabel};
use ginzburg_modules::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;

fn q(v: i64) -> Scalar {
    Q.from_i64(v)
}

fn leaf_labels(t: &ginzburg_modules::decomp::DecompositionTree) -> Vec<String> {
    t.root
        .leaves()
        .iter()
        .map(|n| match &n.content {
            NodeContent::Leaf { certificate, .. } => certificate.label.to_string(),
            NodeContent::Split { .. } => unreachable!(),
        })
        .collect()
}

#[test]
fn degree_towers() {
    let pres = presentation(&ex_a(Q));
    let m = m_lambda(&pres, &q(3));
    let tower = degree_tower(&m).unwrap();
    assert_eq!(tower.len(), 1);
    assert_eq!(tower[0].1.factor, m);

    let two = ProperModule::from_ids(
        pres.clone(),
        &[("x", -1, 1), ("y", -1, 1), ("z", 0, 1)],
        vec![
            ("x_a", -1, ExactMatrix::from_i64(Q, &[&[2]])),
            ("x_b", -1, ExactMatrix::from_i64(Q, &[&[1]])),
        ],
    )
    .unwrap();
    let tower = degree_tower(&two).unwrap();
    let degs: Vec<i64> = tower.iter().map(|(s, _)| *s).collect();
    assert_eq!(degs, [-1, 0]);
    assert_eq!(tower[0].1.factor.total_dim(), 2);
    assert_eq!(tower[1].1.factor.total_dim(), 1);
    for (s, step) in &tower {
        assert_eq!(step.factor.concentrated_degree(), Some(*s));
        step.inclusion.check(&step.factor, &step.ambient).unwrap();
    }

    let shifted = degree_tower(&m.shift(3)).unwrap();
    assert_eq!(shifted.len(), 1);
    assert_eq!(shifted[0].0, -3);
    assert!(degree_tower(&ProperModule::zero(pres)).unwrap().is_empty());
}

#[test]
fn class_towers() {
    let pres = presentation(&ex_a(Q));
    let tower = class_tower(&m_lambda_plus_z(&pres, &q(3))).unwrap();
    let labels: Vec<&str> = tower.iter().map(|(l, _)| l.as_str()).collect();
    assert_eq!(labels, ["x", "z"]);
    assert_eq!(tower[0].1.factor, m_lambda(&pres, &q(3)));

    assert_eq!(class_tower(&m_r_lambda(&pres, 2, &q(3))).unwrap().len(), 1);

    let all = simple(&pres, "z")
        .direct_sum(&simple(&pres, "y"))
        .and_then(|m| m.direct_sum(&simple(&pres, "x")))
        .unwrap();
    let labels: Vec<String> = class_tower(&all).unwrap().into_iter().map(|(l, _)| l).collect();
    assert_eq!(labels, ["x", "y", "z"]);

    let two = m_lambda(&pres, &q(1))
        .direct_sum(&m_lambda(&pres, &q(1)).shift(1))
        .unwrap();
    assert!(class_tower(&two).is_err());
}

#[test]
fn class_tower_puts_sinks_first() {
    // p → q → r with nonzero maps: only r is a submodule on its own
    let pres = presentation(&a3(Q));
    let one = ExactMatrix::from_i64(Q, &[&[1]]);
    let m = ProperModule::from_ids(
        pres,
        &[("p", 0, 1), ("q", 0, 1), ("r", 0, 1)],
        vec![("x_a", 0, one.clone()), ("x_b", 0, one)],
    )
    .unwrap();
    let labels: Vec<String> = class_tower(&m).unwrap().into_iter().map(|(l, _)| l).collect();
    // x̄_e maps the target's space to the source's, so p is reached from q and q from r
    let first = &labels[0];
    let v = m.quiver().vertex_index(first).unwrap();
    assert!(m.family_is_closed(&m.vertex_family(&[v])));
    assert_eq!(labels.len(), 3);
}

#[test]
fn assigned_supports() {
    let pres = presentation(&ex_a(Q));
    assert_eq!(
        simple(&pres, "z").assigned_support().unwrap(),
        SupportLabel::vertex("z", 0)
    );
    assert_eq!(
        m_r_lambda(&pres, 2, &q(3)).assigned_support().unwrap(),
        SupportLabel::cycle(&["a", "b"], 0)
    );
    let pb = presentation(&ex_b(Q));
    let maps: Vec<(&str, i64, ExactMatrix)> = [("x_a", 2), ("x_b", 3), ("x_c", 5), ("x_d", 7)]
        .into_iter()
        .map(|(g, v)| (g, 0, ExactMatrix::from_i64(Q, &[&[v]])))
        .collect();
    let m = ProperModule::from_ids(pb, &[("u", 0, 1), ("w", 0, 1)], maps).unwrap();
    assert_eq!(
        m.assigned_support().unwrap(),
        SupportLabel::cycle(&["a", "b", "c", "d"], 0)
    );
    assert!(m.is_generator(&m.assigned_support().unwrap()).unwrap().passed());
}

#[test]
fn decompose_examples() {
    let pres = presentation(&ex_a(Q));
    let m = m_lambda(&pres, &q(2))
        .direct_sum(&m_lambda(&pres, &q(5)))
        .and_then(|s| s.direct_sum(&simple(&pres, "z")))
        .unwrap();
    let tree = decompose(&m).unwrap();
    assert!(tree.root.node_count() >= 3);
    let report = verify_tree(&m, &tree);
    assert!(report.ok(), "{:?}", report.failures);

    let lp = presentation(&single_loop(Q));
    let n = nilpotent_loop(&lp);
    let tree = decompose(&n).unwrap();
    assert_eq!(leaf_labels(&tree), ["(v, 0)", "(v, 0)"]);
    assert!(matches!(
        &tree.root.content,
        NodeContent::Split { kind: SplitKind::Arrow { arrow }, .. } if arrow == "e"
    ));
    for leaf in tree.root.leaves() {
        assert_eq!(leaf.module.total_dim(), 1);
        assert!(leaf.module.supp_arrows().is_empty());
    }
    assert!(verify_tree(&n, &tree).ok());

    let mx = simple(&pres, "x");
    let tree = decompose(&mx).unwrap();
    assert_eq!(tree.root.node_count(), 1);
    assert_eq!(leaf_labels(&tree), ["(x, 0)"]);
}

#[test]
fn decompose_rejects_zero_and_respects_budget() {
    let pres = presentation(&ex_a(Q));
    assert!(matches!(
        decompose(&ProperModule::zero(pres.clone())),
        Err(Error::Precondition(_))
    ));
    let m = m_lambda_plus_z(&pres, &q(2));
    assert_eq!(decompose_with(&m, 2, false).unwrap_err(), Error::BudgetExceeded(2));
    assert!(decompose_with(&m, 3, false).is_ok());
}

#[test]
fn decompose_is_deterministic() {
    let pres = presentation(&ex_a(FieldSpec::Prime(5)));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let m = common::random_module(&mut rng, &pres, 3, 3, 0.3);
        if m.is_zero() {
            continue;
        }
        let a = decompose_with(&m, 10_000, true).unwrap();
        let b = decompose_with(&m, 10_000, true).unwrap();
        assert_eq!(a, b);
        let da = ginzburg_modules::doc::to_json(&ginzburg_modules::doc::tree_to_doc(&a));
        let db = ginzburg_modules::doc::to_json(&ginzburg_modules::doc::tree_to_doc(&b));
        assert_eq!(da, db);
    }
}

fn refine_leaf(m: &ProperModule) -> ginzburg_modules::decomp::Refinement {
    let label = m.assigned_support().unwrap();
    let cert = m.is_generator(&label).unwrap();
    match refine_single_cycle(m, &cert).unwrap() {
        RefinementOutcome::Refined(r) => r,
        RefinementOutcome::Unrefined { reason } => panic!("unrefined: {reason}"),
    }
}

fn block_summary(r: &ginzburg_modules::decomp::Refinement) -> Vec<(Poly, usize)> {
    let mut v: Vec<(Poly, usize)> = r.blocks.iter().map(|b| (b.poly.clone(), b.multiplicity)).collect();
    v.sort_by_key(|(p, m)| (format!("{p:?}"), *m));
    v
}

#[test]
fn refinement_of_jordan_sum() {
    let pres = presentation(&ex_a(Q));
    let m = m_r_lambda(&pres, 2, &q(3)).direct_sum(&m_lambda(&pres, &q(7))).unwrap();
    let r = refine_leaf(&m);
    let mut expect = vec![(Poly::linear(&q(3)), 2), (Poly::linear(&q(7)), 1)];
    expect.sort_by_key(|(p, m)| (format!("{p:?}"), *m));
    assert_eq!(block_summary(&r), expect);
    assert_eq!(r.arrows, ["a", "b"]);
    assert_eq!(r.base, "x");
    assert!(r.iso.check(&r.sum, &m).is_ok() && r.iso.is_isomorphism(&r.sum, &m));
    for b in &r.blocks {
        // each block is isomorphic to the matching M_{r,λ}
        let lam = -b.poly.coeff(0);
        let target = m_r_lambda(&pres, b.rank, &lam);
        assert!(iso_exists(&b.module, &target));
    }

    let r = refine_leaf(&m_lambda(&pres, &q(4)));
    assert_eq!(block_summary(&r), vec![(Poly::linear(&q(4)), 1)]);
}

/// A generic combination of a hom basis is invertible when an isomorphism exists.
fn iso_exists(a: &ProperModule, b: &ProperModule) -> bool {
    let homs = hom0_space(a, b).unwrap();
    (1..=7).any(|k| {
        let mut acc = ModuleMap::zero(0);
        for (i, f) in homs.iter().enumerate() {
            let c = Q.from_i64((k as i64).pow(i as u32));
            for ((v, t), blk) in &f.blocks {
                let cur = acc.block(a, b, *v, *t);
                acc.blocks.insert((*v, *t), cur.add(&blk.scale(&c)));
            }
        }
        acc.is_isomorphism(a, b)
    })
}

#[test]
fn refinement_of_irreducible_quadratic_monodromy() {
    let pres = presentation(&ex_a(Q));
    // companion of t² + 1
    let c = ExactMatrix::from_i64(Q, &[&[0, -1], &[1, 0]]);
    let m = ProperModule::from_ids(
        pres,
        &[("x", 0, 2), ("y", 0, 2)],
        vec![("x_a", 0, c.clone()), ("x_b", 0, ExactMatrix::identity(Q, 2))],
    )
    .unwrap();
    let r = refine_leaf(&m);
    let minpoly = common::minimal_polynomial(&r.monodromy);
    assert_eq!(minpoly, Poly::from_i64(Q, &[1, 0, 1]));
    // no rational root: a root p/q of t²+1 would be ±1
    assert!([q(1), q(-1)].iter().all(|x| !minpoly.eval(x).is_zero()));
    assert_eq!(block_summary(&r), vec![(minpoly, 1)]);
    assert_eq!(r.blocks[0].rank, 2);
}

#[test]
fn refinement_reports_unrefined_supports() {
    let pres = presentation(&ex_a(Q));
    let mx = simple(&pres, "x");
    let cert = mx.is_generator(&SupportLabel::vertex("x", 0)).unwrap();
    assert!(matches!(
        refine_single_cycle(&mx, &cert).unwrap(),
        RefinementOutcome::Unrefined { .. }
    ));

    let pb = presentation(&ex_b(Q));
    let maps: Vec<(&str, i64, ExactMatrix)> = ["x_a", "x_b", "x_c", "x_d"]
        .into_iter()
        .map(|g| (g, 0, ExactMatrix::from_i64(Q, &[&[1]])))
        .collect();
    let m = ProperModule::from_ids(pb, &[("u", 0, 1), ("w", 0, 1)], maps).unwrap();
    let cert = m.is_generator(&m.assigned_support().unwrap()).unwrap();
    assert!(matches!(cert.label.support, Support::Cycle(_)));
    assert!(matches!(
        refine_single_cycle(&m, &cert).unwrap(),
        RefinementOutcome::Unrefined { .. }
    ));

    let failing = m_lambda_plus_z(&pres, &q(3));
    let cert = failing.is_generator(&SupportLabel::cycle(&["a", "b"], 0)).unwrap();
    assert!(refine_single_cycle(&failing, &cert).is_err());
}

#[test]
fn verify_tree_reports_corruption() {
    let pres = presentation(&ex_a(Q));
    let m = m_lambda_plus_z(&pres, &q(3));
    let tree = decompose(&m).unwrap();
    assert!(verify_tree(&m, &tree).ok());

    // replace a leaf module with a non-generator
    let mut bad = tree.clone();
    if let NodeContent::Split { sub, .. } = &mut bad.root.content {
        sub.module = m_lambda(&pres, &q(4));
    }
    let r = verify_tree(&m, &bad);
    assert!(!r.ok());

    // mismatched dimensions against a different root module
    let other = m_lambda(&pres, &q(3)).direct_sum(&m_lambda(&pres, &q(3))).unwrap();
    let r = verify_tree(&other, &tree);
    assert!(r.failures.iter().any(|f| f.contains("reassemble")));

    // a corrupted certificate
    let mut bad = tree;
    if let NodeContent::Split { quotient, .. } = &mut bad.root.content {
        if let NodeContent::Leaf { certificate, .. } = &mut quotient.content {
            certificate.label = SupportLabel::vertex("z", 1);
        }
    }
    assert!(!verify_tree(&m, &bad).ok());
}

#[test]
fn refinement_on_leaves_of_trees() {
    let pres = presentation(&ex_a(Q));
    let m = m_r_lambda(&pres, 2, &q(3)).direct_sum(&simple(&pres, "z")).unwrap();
    let tree = decompose_with(&m, 100, true).unwrap();
    let refined = tree
        .root
        .leaves()
        .iter()
        .filter(|l| {
            matches!(
                &l.content,
                NodeContent::Leaf {
                    refinement: Some(RefinementOutcome::Refined(_)),
                    ..
                }
            )
        })
        .count();
    assert_eq!(refined, 1);
    assert!(verify_tree(&m, &tree).ok());
}

/// Endomorphisms of `b` as combinations of the hom basis, all over a finite field.
fn has_nontrivial_idempotent(b: &ProperModule) -> bool {
    let field = b.field();
    let elems = field.elements().unwrap();
    let basis = hom0_space(b, b).unwrap();
    let total = elems.len().pow(basis.len() as u32);
    let id = ModuleMap::identity(b);
    for mut code in 0..total {
        let mut f = ModuleMap::zero(0);
        for g in &basis {
            let c = &elems[code % elems.len()];
            code /= elems.len();
            for ((v, t), blk) in &g.blocks {
                let cur = f.block(b, b, *v, *t);
                f.blocks.insert((*v, *t), cur.add(&blk.scale(c)));
            }
        }
        let ff = f.compose(&f, b, b, b);
        let same = b
            .dim_vector()
            .into_keys()
            .all(|(v, t)| ff.block(b, b, v, t) == f.block(b, b, v, t));
        let trivial = b.dim_vector().into_keys().all(|(v, t)| f.block(b, b, v, t).is_zero())
            || b.dim_vector()
                .into_keys()
                .all(|(v, t)| f.block(b, b, v, t) == id.block(b, b, v, t));
        if same && !trivial {
            return true;
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_trees_verify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for pres in [presentation(&ex_a(FieldSpec::Prime(5))), presentation(&single_loop(FieldSpec::Prime(5)))] {
            let m = common::random_module(&mut rng, &pres, 3, 3, 0.3);
            if m.is_zero() {
                continue;
            }
            let tree = decompose_with(&m, 10_000, true).unwrap();
            let report = verify_tree(&m, &tree);
            prop_assert!(report.ok(), "{:?}", report.failures);
            prop_assert!(tree.root.leaves().iter().all(|l| l.module.total_dim() > 0));
        }
    }

    #[test]
    fn canonical_blocks_are_indecomposable(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = FieldSpec::Prime(p);
        let pres = presentation(&ex_a(field));
        // an invertible random monodromy on a cycle-supported heart module
        let d = 1 + (seed % 2) as usize;
        let mut t = common::random_matrix(&mut rng, field, d, d);
        while t.inverse().is_none() {
            t = common::random_matrix(&mut rng, field, d, d);
        }
        let m = ProperModule::from_ids(
            pres,
            &[("x", 0, d), ("y", 0, d)],
            vec![("x_a", 0, t), ("x_b", 0, ExactMatrix::identity(field, d))],
        ).unwrap();
        let r = refine_leaf(&m);
        for b in &r.blocks {
            prop_assert!(b.module.total_dim() <= 4);
            prop_assert!(!has_nontrivial_idempotent(&b.module));
        }
    }
}
