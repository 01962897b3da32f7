//! Text and JSON renderings of every subcommand's result.
//!
//! JSON objects use `serde_json`'s sorted maps, so key order is canonical and output is
//! byte-stable across runs.

use std::fmt::Write as _;

use ginzburg_modules::decomp::{DecompositionTree, Node, NodeContent, RefinementOutcome, SplitKind, VerifyReport};
use ginzburg_modules::doc;
use ginzburg_modules::ginzburg::GinzburgPresentation;
use ginzburg_modules::pmod::{GeneratorCertificate, ProperModule, Verdict, Witness};
use ginzburg_modules::quiver::{
    ClassPartition, CycClass, CycleTraversal, GradedQuiver, GroupOrder, JacobiReport, JacobiVerdict, Normalization,
    Support,
};
use ginzburg_modules::stab::HNReport;
use serde_json::{json, Value};

pub struct Report {
    pub text: String,
    pub json: Value,
}

pub fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("documents serialize")
}

pub fn validate(q: &GradedQuiver) -> Report {
    let groups: Vec<&str> = (0..q.num_vertices())
        .filter(|&v| q.group(v).is_some())
        .map(|v| q.vertex_id(v))
        .collect();
    let text =
        format!(
        "valid quiver: n = {}, field {}, {} vertices, {} arrows\ndegrees in window (2-n, 0]: {}\ngroup vertices: {}\n",
        q.n(),
        q.field(),
        q.num_vertices(),
        q.num_arrows(),
        q.in_window(),
        if groups.is_empty() { "none".to_string() } else { groups.join(", ") },
    );
    let json = json!({
        "valid": true,
        "n": q.n(),
        "field": q.field().to_string(),
        "vertices": q.num_vertices(),
        "arrows": q.num_arrows(),
        "in_window": q.in_window(),
        "group_vertices": groups,
    });
    Report { text, json }
}

pub fn normalize(n: &Normalization) -> Report {
    match n {
        Normalization::Infeasible => Report {
            text: "infeasible: no vertex shifts and reversals bring every degree into (2-n, 0]\n".into(),
            json: json!({ "feasible": false }),
        },
        Normalization::Feasible(g) => {
            let mut text = String::from("feasible\npotentials:");
            for (v, p) in &g.potentials {
                let _ = write!(text, " {v}={p}");
            }
            let reversed: Vec<&String> = g.reversed.iter().collect();
            let _ = writeln!(
                text,
                "\nreversed: {}",
                if reversed.is_empty() {
                    "none".to_string()
                } else {
                    g.reversed.iter().cloned().collect::<Vec<_>>().join(", ")
                }
            );
            for a in g.quiver.arrows() {
                let _ = writeln!(text, "  {}: {} -> {} degree {}", a.id, a.source, a.target, a.degree);
            }
            Report {
                text,
                json: json!({
                    "feasible": true,
                    "potentials": g.potentials,
                    "reversed": reversed,
                    "quiver": value(&doc::quiver_to_doc(&g.quiver)),
                }),
            }
        }
    }
}

pub fn cycles(cs: &[CycleTraversal]) -> Report {
    let mut text = format!("{} degree-0 cycles\n", cs.len());
    for c in cs {
        let _ = writeln!(text, "  {}", c.word());
    }
    let json = json!({
        "count": cs.len(),
        "cycles": cs.iter().map(|c| json!({
            "word": c.word(),
            "arrows": c.steps.iter().map(|(a, _)| a.clone()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    Report { text, json }
}

pub fn cyc(cs: &[CycClass]) -> Report {
    let names: Vec<String> = cs.iter().map(ToString::to_string).collect();
    Report {
        text: format!("{} cycle classes\n{}", cs.len(), lines(&names)),
        json: json!({ "count": cs.len(), "classes": names }),
    }
}

pub fn bset(b: &[Support]) -> Report {
    let names: Vec<String> = b.iter().map(ToString::to_string).collect();
    Report {
        text: format!("{} supports\n{}", b.len(), lines(&names)),
        json: json!({ "count": b.len(), "supports": names }),
    }
}

fn lines(items: &[String]) -> String {
    items.iter().map(|s| format!("  {s}\n")).collect()
}

pub fn classes(q: &GradedQuiver, p: &ClassPartition) -> Report {
    let ids = p.ids(q);
    let labels: Vec<String> = (0..p.len()).map(|i| p.label(q, i)).collect();
    let order: Vec<(String, String)> = p
        .order()
        .iter()
        .filter(|(i, j)| i != j)
        .map(|&(i, j)| (labels[i].clone(), labels[j].clone()))
        .collect();
    let mut text = format!("{} classes\n", p.len());
    for (l, members) in labels.iter().zip(&ids) {
        let _ = writeln!(text, "  {l}: {{{}}}", members.join(", "));
    }
    for (a, b) in &order {
        let _ = writeln!(text, "  {a} <= {b}");
    }
    Report {
        text,
        json: json!({
            "classes": labels.iter().zip(&ids).map(|(l, m)| json!({ "label": l, "vertices": m })).collect::<Vec<_>>(),
            "order": order.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        }),
    }
}

pub fn jacobi(r: &JacobiReport) -> Report {
    let verdict = match r.verdict {
        JacobiVerdict::Finite => "finite",
        JacobiVerdict::Infinite => "infinite",
        JacobiVerdict::Undetermined => "undetermined",
    };
    let order = |o: &GroupOrder| match o {
        GroupOrder::Finite(k) => json!(k),
        GroupOrder::Infinite => json!("infinite"),
        GroupOrder::Undetermined => json!("undetermined"),
    };
    let mut text = format!("Jacobi-{verdict}\n");
    if let Some(c) = &r.zero_cycle {
        let _ = writeln!(text, "degree-0 cycle: {}", c.word());
    }
    for (v, o) in &r.groups {
        let _ = writeln!(text, "group at {v}: order {}", order(o));
    }
    Report {
        text,
        json: json!({
            "verdict": verdict,
            "zero_cycle": r.zero_cycle.as_ref().map(CycleTraversal::word),
            "groups": r.groups.iter().map(|(v, o)| json!({ "vertex": v, "order": order(o) })).collect::<Vec<_>>(),
        }),
    }
}

pub fn algebra(pres: &GinzburgPresentation, maxlen: usize) -> Report {
    let q = pres.quiver();
    let gens: Vec<Value> = pres
        .generators()
        .into_iter()
        .map(|g| json!({ "id": g.id(q), "degree": g.degree(q) }))
        .collect();
    let dh: serde_json::Map<String, Value> = (0..q.num_vertices())
        .map(|v| (q.vertex_id(v).to_string(), json!(pres.dh(v).render(q))))
        .collect();
    let mut homs = Vec::new();
    let mut text = format!("mode {}, {} generators\n", pres.mode(), gens.len());
    for v in 0..q.num_vertices() {
        let _ = writeln!(text, "  d(h_{}) = {}", q.vertex_id(v), pres.dh(v).render(q));
    }
    let _ = writeln!(text, "truncated morphism complexes, length <= {maxlen}:");
    for v in 0..q.num_vertices() {
        for w in 0..q.num_vertices() {
            let h = pres.hom_complex_truncated(v, w, maxlen);
            let dims: serde_json::Map<String, Value> =
                h.dims().into_iter().map(|(d, n)| (d.to_string(), json!(n))).collect();
            let rendered: Vec<String> = h.dims().iter().map(|(d, n)| format!("{d}:{n}")).collect();
            let _ = writeln!(
                text,
                "  {} -> {}: {} ({} flagged)",
                q.vertex_id(v),
                q.vertex_id(w),
                rendered.join(" "),
                h.flagged.len()
            );
            homs.push(json!({
                "source": q.vertex_id(v),
                "target": q.vertex_id(w),
                "dims": dims,
                "flagged": h.flagged.iter().map(|p| p.render(q)).collect::<Vec<_>>(),
            }));
        }
    }
    let d2 = pres.d_square_check(maxlen);
    let _ = writeln!(
        text,
        "d^2 = 0: {} ({} paths checked)",
        if d2.ok { "ok" } else { "FAILED" },
        d2.paths_checked
    );
    for f in &d2.failures {
        let _ = writeln!(text, "  fails on {f}");
    }
    Report {
        text,
        json: json!({
            "mode": pres.mode().to_string(),
            "maxlen": maxlen,
            "generators": gens,
            "dh": dh,
            "hom_complexes": homs,
            "d_square": { "ok": d2.ok, "paths_checked": d2.paths_checked, "failures": d2.failures },
        }),
    }
}

fn dims_summary(m: &ProperModule) -> String {
    let q = m.quiver();
    let parts: Vec<String> = m
        .dim_vector()
        .iter()
        .filter(|(_, &d)| d > 0)
        .map(|((v, t), d)| format!("{}@{t}:{d}", q.vertex_id(*v)))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

pub fn check(m: &ProperModule) -> Report {
    let q = m.quiver();
    let arrows: Vec<&str> = m.supp_arrows().into_iter().map(|e| q.arrow_id(e)).collect();
    let text = format!(
        "valid module: total dimension {}\ndimensions: {}\ndegrees: {:?}\nacting arrows: {}\n",
        m.total_dim(),
        dims_summary(m),
        m.supp_degrees(),
        if arrows.is_empty() {
            "none".to_string()
        } else {
            arrows.join(", ")
        },
    );
    let dims: serde_json::Map<String, Value> = m
        .dim_vector()
        .iter()
        .filter(|(_, &d)| d > 0)
        .map(|((v, t), d)| (format!("{}@{t}", q.vertex_id(*v)), json!(d)))
        .collect();
    Report {
        text,
        json: json!({
            "valid": true,
            "total_dim": m.total_dim(),
            "dims": dims,
            "degrees": m.supp_degrees(),
            "arrows": arrows,
        }),
    }
}

fn verdict_text(name: &str, v: &Verdict) -> String {
    let witness = match &v.witness {
        Witness::None => String::new(),
        Witness::NotEvaluated => " (not evaluated)".into(),
        Witness::Vertex(x) => format!(" (vertex {x})"),
        Witness::Degrees(d) => format!(" (degrees {d:?})"),
        Witness::Arrow(a) => format!(" (arrow {a})"),
        Witness::Closures(cs) => {
            let parts: Vec<String> = cs
                .iter()
                .map(|c| {
                    format!(
                        "{} at {}: rank {} of {}",
                        c.arrow,
                        c.vertex,
                        c.basis.cols(),
                        c.space_dim
                    )
                })
                .collect();
            format!(" ({})", parts.join("; "))
        }
    };
    format!("  ({name}) {}{witness}\n", if v.holds { "holds" } else { "fails" })
}

fn certificate_text(c: &GeneratorCertificate) -> String {
    let mut text = format!(
        "label {}: {}\n",
        c.label,
        if c.passed() { "generator" } else { "not a generator" }
    );
    for (name, v) in [("a", &c.a), ("b", &c.b), ("c", &c.c), ("d", &c.d)] {
        text.push_str(&verdict_text(name, v));
    }
    text
}

pub fn certificate(c: &GeneratorCertificate) -> Report {
    Report {
        text: certificate_text(c),
        json: value(&doc::certificate_to_doc(c)),
    }
}

fn node_text(n: &Node, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let dims = dims_summary(&n.module);
    match &n.content {
        NodeContent::Split {
            kind, sub, quotient, ..
        } => {
            let what = match kind {
                SplitKind::Degree { s } => format!("degree split at {s}"),
                SplitKind::Class { class } => format!("class split at {class}"),
                SplitKind::Arrow { arrow } => format!("arrow split along {arrow}"),
            };
            let _ = writeln!(out, "{pad}{what} [{dims}]");
            node_text(sub, depth + 1, out);
            node_text(quotient, depth + 1, out);
        }
        NodeContent::Leaf {
            certificate,
            refinement,
        } => {
            let _ = writeln!(
                out,
                "{pad}leaf {} [{dims}] {}",
                certificate.label,
                if certificate.passed() { "ok" } else { "FAILED" }
            );
            match refinement {
                Some(RefinementOutcome::Refined(r)) => {
                    for b in &r.blocks {
                        let _ = writeln!(out, "{pad}  block ({}, {}) rank {}", b.poly, b.multiplicity, b.rank);
                    }
                }
                Some(RefinementOutcome::Unrefined { reason }) => {
                    let _ = writeln!(out, "{pad}  unrefined: {reason}");
                }
                None => {}
            }
        }
    }
}

pub fn tree(t: &DecompositionTree, check: &VerifyReport) -> Report {
    let mut text = String::new();
    node_text(&t.root, 0, &mut text);
    let _ = writeln!(
        text,
        "{} nodes, {} leaves; verification {} ({} checks)",
        t.root.node_count(),
        t.root.leaves().len(),
        if check.ok() { "ok" } else { "FAILED" },
        check.checks
    );
    for f in &check.failures {
        let _ = writeln!(text, "  {f}");
    }
    let mut json = value(&doc::tree_to_doc(t));
    json["verification"] = json!({ "ok": check.ok(), "checks": check.checks, "failures": check.failures });
    Report { text, json }
}

pub fn hn(r: &HNReport) -> Report {
    let mut text = format!("{} HN factors, decreasing phase\n", r.factors.len());
    let mut factors = Vec::new();
    for f in &r.factors {
        let phase = f.charge.approx_arg() / std::f64::consts::PI;
        let _ = writeln!(
            text,
            "  classes {{{}}}: Z = {}, phase ~ {phase:.6} [{}]",
            f.classes.join(", "),
            f.charge,
            dims_summary(&f.module)
        );
        factors.push(json!({
            "classes": f.classes,
            "charge": value(&f.charge.to_doc()),
            "phase": f.phase.to_string(),
            "phase_approx": phase,
            "module": value(&doc::module_to_doc(&f.module)),
        }));
    }
    let _ = writeln!(text, "note: {}", r.scope);
    Report {
        text,
        json: json!({ "factors": factors, "scope": r.scope }),
    }
}

pub fn refinement(r: &RefinementOutcome) -> Report {
    let (text, json) = match r {
        RefinementOutcome::Unrefined { reason } => (format!("unrefined: {reason}\n"), json!({ "unrefined": reason })),
        RefinementOutcome::Refined(rf) => {
            let q = rf.sum.quiver();
            let mut text = format!("cycle {} based at {}\n", rf.arrows.join(" "), rf.base);
            for b in &rf.blocks {
                let _ = writeln!(text, "  block ({}, {}) rank {}", b.poly, b.multiplicity, b.rank);
            }
            (text, value(&doc::refinement_to_doc(q, r)))
        }
    };
    Report { text, json }
}
