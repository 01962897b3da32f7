use std::collections::BTreeMap;

use super::{DecompositionTree, Node, NodeContent, RefinementOutcome, SplitKind};
use crate::pmod::ProperModule;

/// Outcome of re-checking a tree; `failures` is empty iff every check passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn expect(&mut self, cond: bool, path: &str, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !cond {
            self.failures.push(format!("{path}: {}", what()));
        }
    }
}

/// Re-derives every claim in the tree from the modules it stores.
pub fn verify_tree(m: &ProperModule, tree: &DecompositionTree) -> VerifyReport {
    let mut r = VerifyReport::default();
    r.expect(tree.root.module == *m, "root", || {
        "root module differs from the input".into()
    });
    node(&tree.root, "root", &mut r);
    let mut total: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    for leaf in tree.root.leaves() {
        for (k, d) in leaf.module.dim_vector() {
            *total.entry(k).or_insert(0) += d;
        }
    }
    r.expect(total == m.dim_vector(), "root", || {
        "leaf dimensions do not reassemble the input".into()
    });
    r
}

fn node(n: &Node, path: &str, r: &mut VerifyReport) {
    let m = &n.module;
    let valid = m.check();
    r.expect(valid.is_ok(), path, || {
        format!("invalid module: {}", valid.clone().unwrap_err())
    });
    if valid.is_err() {
        return;
    }
    match &n.content {
        NodeContent::Split {
            kind,
            inclusion,
            sub,
            quotient,
        } => {
            let s = &sub.module;
            let ok_map = inclusion.check(s, m);
            r.expect(ok_map.is_ok(), path, || {
                format!("inclusion is not a module map: {}", ok_map.clone().unwrap_err())
            });
            if ok_map.is_ok() {
                r.expect(inclusion.is_injective(s, m), path, || {
                    "inclusion is not injective".into()
                });
                match m.quotient_by_submodule(s, inclusion) {
                    Ok(q) => r.expect(q == quotient.module, path, || {
                        "quotient child differs from the recomputed quotient".into()
                    }),
                    Err(e) => r.expect(false, path, || format!("quotient failed: {e}")),
                }
            }
            let mut keys: Vec<(usize, i64)> = m.dim_vector().into_keys().collect();
            keys.extend(s.dim_vector().into_keys());
            keys.extend(quotient.module.dim_vector().into_keys());
            r.expect(
                keys.iter()
                    .all(|&(v, t)| s.dim(v, t) + quotient.module.dim(v, t) == m.dim(v, t)),
                path,
                || "sub and quotient dimensions do not add up".into(),
            );
            match kind {
                SplitKind::Degree { s: deg } => {
                    r.expect(m.supp_degrees().first() == Some(deg), path, || {
                        format!("{deg} is not the least degree")
                    });
                    r.expect(s.supp_degrees() == [*deg], path, || {
                        "sub is not the degree slice".into()
                    });
                }
                SplitKind::Class { class } => {
                    let ok = m.module_classes().ok().and_then(|classes| {
                        let v = m.quiver().vertex_index(class).ok()?;
                        let c = classes.class_of(v);
                        Some(
                            s.support_vertices().iter().all(|&u| classes.class_of(u) == c)
                                && classes.classes()[c][0] == v,
                        )
                    });
                    r.expect(ok == Some(true), path, || {
                        format!("sub is not supported on class {class}")
                    });
                }
                SplitKind::Arrow { arrow } => {
                    let ok = m.quiver().arrow_index(arrow).ok().and_then(|e| {
                        let fails = !m.condition_d_holds(e).ok()?;
                        let (gen, _) = m.submodule_generated(e).ok()?;
                        Some(fails && gen == *s)
                    });
                    r.expect(ok == Some(true), path, || {
                        format!("sub is not generated by a failing arrow {arrow}")
                    });
                    r.expect(s.total_dim() < m.total_dim(), path, || {
                        "split does not decrease dimension".into()
                    });
                }
            }
            node(sub, &format!("{path}.sub"), r);
            node(quotient, &format!("{path}.quotient"), r);
        }
        NodeContent::Leaf {
            certificate,
            refinement,
        } => {
            match m.assigned_support() {
                Ok(label) => r.expect(label == certificate.label, path, || {
                    format!("recorded label {} but support is {label}", certificate.label)
                }),
                Err(e) => r.expect(false, path, || format!("no assigned support: {e}")),
            }
            match m.is_generator(&certificate.label) {
                Ok(fresh) => {
                    r.expect(fresh.passed(), path, || {
                        format!("leaf fails condition ({})", fresh.first_failure().unwrap_or('?'))
                    });
                    r.expect(fresh == *certificate, path, || {
                        "stored certificate differs from a fresh one".into()
                    });
                }
                Err(e) => r.expect(false, path, || format!("certificate failed: {e}")),
            }
            if let Some(RefinementOutcome::Refined(rf)) = refinement {
                let mut acc: Option<ProperModule> = None;
                for (i, b) in rf.blocks.iter().enumerate() {
                    r.expect(b.module.check().is_ok(), path, || format!("block {i} is invalid"));
                    acc = Some(match acc {
                        None => b.module.clone(),
                        Some(a) => a.direct_sum(&b.module).expect("same presentation"),
                    });
                }
                r.expect(acc.as_ref() == Some(&rf.sum), path, || {
                    "blocks do not sum to the recorded module".into()
                });
                let iso_ok = rf.iso.check(&rf.sum, m).is_ok() && rf.iso.is_isomorphism(&rf.sum, m);
                r.expect(iso_ok, path, || {
                    "recorded base change is not a module isomorphism".into()
                });
            }
        }
    }
}
