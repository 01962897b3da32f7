//! JSON documents for quivers, modules, stability data, certificates and trees.
//!
//! Scalars are strings (`"3"`, `"-2/5"`, `"4 mod 7"`), degrees are integers, graded
//! spaces are degree-string → dimension maps and matrices are row-major nested arrays.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::decomp::{CanonicalBlock, DecompositionTree, Node, NodeContent, Refinement, RefinementOutcome, SplitKind};
use crate::error::{Error, Result};
use crate::field::{ExactMatrix, FieldSpec, GaussianDoc, GaussianRational, Poly};
use crate::ginzburg::{Gen, GinzburgPresentation};
use crate::pmod::{
    ArrowClosure, GeneratorCertificate, ModuleMap, ProperModule, Spaces, Verdict, Witness, CLOSURE_INTERPRETATION,
};
use crate::quiver::{Arrow, CycClass, GradedQuiver, GroupPresentation, LocalData, Support, SupportLabel, Vertex};

/// States the direction convention inside every module document.
pub const MODULE_CONVENTION: &str =
    "for an arrow e: s -> t, the x_e block maps M(L_t) -> M(L_s) and the y_e block maps M(L_s) -> M(L_t); a block maps the source_degree piece to the (source_degree + |g|) piece";

pub type Entries = Vec<Vec<String>>;

fn module_convention() -> String {
    MODULE_CONVENTION.into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldDoc {
    Q,
    Fp { p: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub generators: Vec<String>,
    pub relations: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LocalDoc {
    Named(String),
    Group(GroupDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: String,
    pub local: LocalDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub id: String,
    pub from: String,
    pub to: String,
    pub degree: i64,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub n: i64,
    pub field: FieldDoc,
    pub vertices: Vec<VertexDoc>,
    pub arrows: Vec<ArrowDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDoc {
    pub source_degree: i64,
    pub entries: Entries,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDoc {
    #[serde(rename = "_convention", default = "module_convention", skip_deserializing)]
    pub convention: String,
    pub spaces: BTreeMap<String, BTreeMap<String, usize>>,
    pub maps: BTreeMap<String, Vec<BlockDoc>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StabilityDoc {
    pub charges: BTreeMap<String, GaussianDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapBlockDoc {
    pub vertex: String,
    pub degree: i64,
    pub entries: Entries,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub degree: i64,
    pub blocks: Vec<MapBlockDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportDoc {
    Vertex(String),
    Cycle(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelDoc {
    pub support: SupportDoc,
    pub shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureDoc {
    pub arrow: String,
    pub vertex: String,
    pub space_dim: usize,
    pub basis: Entries,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessDoc {
    None,
    NotEvaluated,
    Vertex(String),
    Degrees(Vec<i64>),
    Arrow(String),
    Closures(Vec<ClosureDoc>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub holds: bool,
    pub witness: WitnessDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub label: LabelDoc,
    pub a: VerdictDoc,
    pub b: VerdictDoc,
    pub c: VerdictDoc,
    pub d: VerdictDoc,
    pub passed: bool,
    pub interpretation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename = "block")]
pub struct BlockNodeDoc {
    pub cycle: Vec<String>,
    pub base: String,
    pub poly: String,
    /// Coefficients from the constant term up.
    pub coefficients: Vec<String>,
    pub multiplicity: usize,
    pub rank: usize,
    pub module: ModuleDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RefinementDoc {
    Refined {
        arrows: Vec<String>,
        base: String,
        monodromy: Entries,
        blocks: Vec<BlockNodeDoc>,
        sum: ModuleDoc,
        iso: MapDoc,
    },
    Unrefined {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum NodeDoc {
    Degree {
        s: i64,
        module: ModuleDoc,
        inclusion: MapDoc,
        sub: Box<NodeDoc>,
        quotient: Box<NodeDoc>,
    },
    Class {
        class: String,
        module: ModuleDoc,
        inclusion: MapDoc,
        sub: Box<NodeDoc>,
        quotient: Box<NodeDoc>,
    },
    Split {
        arrow: String,
        module: ModuleDoc,
        inclusion: MapDoc,
        sub: Box<NodeDoc>,
        quotient: Box<NodeDoc>,
    },
    Leaf {
        module: ModuleDoc,
        certificate: CertificateDoc,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        refinement: Option<RefinementDoc>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDoc {
    pub root: NodeDoc,
}

// ---------------------------------------------------------------------------
// quivers

pub fn quiver_to_doc(q: &GradedQuiver) -> QuiverDoc {
    QuiverDoc {
        n: q.n(),
        field: match q.field() {
            FieldSpec::Rationals => FieldDoc::Q,
            FieldSpec::Prime(p) => FieldDoc::Fp { p: p as u64 },
        },
        vertices: q
            .vertices()
            .iter()
            .map(|v| VertexDoc {
                id: v.id.clone(),
                local: match &v.local {
                    LocalData::Sphere => LocalDoc::Named("sphere".into()),
                    LocalData::Group(g) => LocalDoc::Group(GroupDoc {
                        generators: g.generators.clone(),
                        relations: g.relations.clone(),
                    }),
                },
            })
            .collect(),
        arrows: q
            .arrows()
            .iter()
            .map(|a| ArrowDoc {
                id: a.id.clone(),
                from: a.source.clone(),
                to: a.target.clone(),
                degree: a.degree,
                sign: a.sign,
            })
            .collect(),
    }
}

pub fn quiver_from_doc(doc: &QuiverDoc) -> Result<GradedQuiver> {
    let field = match doc.field {
        FieldDoc::Q => FieldSpec::Rationals,
        FieldDoc::Fp { p } => FieldSpec::prime(p)?,
    };
    let vertices = doc
        .vertices
        .iter()
        .map(|v| {
            let local = match &v.local {
                LocalDoc::Named(s) if s == "sphere" => LocalData::Sphere,
                LocalDoc::Named(s) => {
                    return Err(Error::Parse(format!("unknown local data {s:?} at vertex {:?}", v.id)))
                }
                LocalDoc::Group(g) => LocalData::Group(GroupPresentation {
                    generators: g.generators.clone(),
                    relations: g.relations.clone(),
                }),
            };
            Ok(Vertex {
                id: v.id.clone(),
                local,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let arrows = doc
        .arrows
        .iter()
        .map(|a| Arrow {
            id: a.id.clone(),
            source: a.from.clone(),
            target: a.to.clone(),
            degree: a.degree,
            sign: a.sign,
        })
        .collect();
    GradedQuiver::new(doc.n, field, vertices, arrows)
}

pub fn parse_quiver(json: &str) -> Result<GradedQuiver> {
    let doc: QuiverDoc = from_json(json)?;
    quiver_from_doc(&doc)
}

// ---------------------------------------------------------------------------
// matrices

pub fn matrix_to_entries(m: &ExactMatrix) -> Entries {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

pub fn entries_to_matrix(field: FieldSpec, rows: usize, cols: usize, e: &Entries) -> Result<ExactMatrix> {
    let parsed = e
        .iter()
        .map(|r| r.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_rows_shaped(field, rows, cols, parsed)
}

/// A square matrix of unknown size.
fn entries_to_square(field: FieldSpec, e: &Entries) -> Result<ExactMatrix> {
    entries_to_matrix(field, e.len(), e.len(), e)
}

// ---------------------------------------------------------------------------
// modules

pub fn module_to_doc(m: &ProperModule) -> ModuleDoc {
    let q = m.quiver();
    let mut spaces = BTreeMap::new();
    for (v, sp) in m.spaces().iter().enumerate() {
        if !sp.is_empty() {
            spaces.insert(
                q.vertex_id(v).to_string(),
                sp.iter().map(|(t, d)| (t.to_string(), *d)).collect(),
            );
        }
    }
    let mut maps: BTreeMap<String, Vec<BlockDoc>> = BTreeMap::new();
    for (&(g, t), b) in m.blocks() {
        if matches!(g, Gen::G { inverse: true, .. }) {
            continue;
        }
        maps.entry(g.id(q)).or_default().push(BlockDoc {
            source_degree: t,
            entries: matrix_to_entries(b),
        });
    }
    ModuleDoc {
        convention: MODULE_CONVENTION.into(),
        spaces,
        maps,
    }
}

pub fn module_from_doc(pres: &Arc<GinzburgPresentation>, doc: &ModuleDoc) -> Result<ProperModule> {
    let q = pres.quiver();
    let field = q.field();
    let mut spaces: Spaces = vec![BTreeMap::new(); q.num_vertices()];
    for (v, sp) in &doc.spaces {
        let vi = q.vertex_index(v)?;
        for (t, d) in sp {
            let t: i64 = t
                .parse()
                .map_err(|_| Error::Parse(format!("degree key {t:?} at vertex {v:?} is not an integer")))?;
            spaces[vi].insert(t, *d);
        }
    }
    let dim = |v: usize, t: i64| spaces[v].get(&t).copied().unwrap_or(0);
    let mut maps = BTreeMap::new();
    for (gid, blocks) in &doc.maps {
        let g = Gen::parse(q, gid)?;
        let (a, b) = g.ends(q);
        for blk in blocks {
            let t = blk.source_degree;
            let (rows, cols) = (dim(a, t + g.degree(q)), dim(b, t));
            let m = entries_to_matrix(field, rows, cols, &blk.entries)
                .map_err(|_| Error::Shape(format!("block of {gid} at source degree {t} must be {rows}x{cols}")))?;
            if maps.insert((g, t), m).is_some() {
                return Err(Error::InvalidModule(format!("duplicate block for {gid} at degree {t}")));
            }
        }
    }
    ProperModule::new(pres.clone(), spaces, maps)
}

pub fn parse_module(pres: &Arc<GinzburgPresentation>, json: &str) -> Result<ProperModule> {
    let doc: ModuleDoc = from_json(json)?;
    module_from_doc(pres, &doc)
}

pub fn map_to_doc(q: &GradedQuiver, t: &ModuleMap) -> MapDoc {
    MapDoc {
        degree: t.degree,
        blocks: t
            .blocks
            .iter()
            .map(|(&(v, d), b)| MapBlockDoc {
                vertex: q.vertex_id(v).to_string(),
                degree: d,
                entries: matrix_to_entries(b),
            })
            .collect(),
    }
}

pub fn map_from_doc(source: &ProperModule, target: &ProperModule, doc: &MapDoc) -> Result<ModuleMap> {
    let q = source.quiver();
    let mut blocks = BTreeMap::new();
    for b in &doc.blocks {
        let v = q.vertex_index(&b.vertex)?;
        let m = entries_to_matrix(
            source.field(),
            target.dim(v, b.degree + doc.degree),
            source.dim(v, b.degree),
            &b.entries,
        )?;
        blocks.insert((v, b.degree), m);
    }
    Ok(ModuleMap {
        degree: doc.degree,
        blocks,
    })
}

// ---------------------------------------------------------------------------
// stability

pub fn parse_stability(json: &str) -> Result<BTreeMap<String, GaussianRational>> {
    let doc: StabilityDoc = from_json(json)?;
    doc.charges
        .iter()
        .map(|(k, z)| Ok((k.clone(), GaussianRational::from_doc(z)?)))
        .collect()
}

pub fn stability_to_doc(charges: &BTreeMap<String, GaussianRational>) -> StabilityDoc {
    StabilityDoc {
        charges: charges.iter().map(|(k, z)| (k.clone(), z.to_doc())).collect(),
    }
}

// ---------------------------------------------------------------------------
// certificates

pub fn label_to_doc(l: &SupportLabel) -> LabelDoc {
    LabelDoc {
        support: match &l.support {
            Support::Vertex(v) => SupportDoc::Vertex(v.clone()),
            Support::Cycle(c) => SupportDoc::Cycle(c.arrows.iter().cloned().collect()),
        },
        shift: l.shift,
    }
}

pub fn label_from_doc(d: &LabelDoc) -> SupportLabel {
    match &d.support {
        SupportDoc::Vertex(v) => SupportLabel::vertex(v, d.shift),
        SupportDoc::Cycle(a) => SupportLabel::cycle(a, d.shift),
    }
}

/// Parses `x@0` or `a,b@0` (vertex or arrow set, then the degree).
pub fn parse_label(s: &str) -> Result<SupportLabel> {
    let (sup, shift) = s
        .rsplit_once('@')
        .ok_or_else(|| Error::InvalidLabel(format!("{s:?}: expected <vertex>@<degree> or <arrow,...>@<degree>")))?;
    let shift: i64 = shift
        .parse()
        .map_err(|_| Error::InvalidLabel(format!("{s:?}: degree is not an integer")))?;
    if let Some(arrows) = sup.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        let ids: Vec<&str> = arrows.split(',').map(str::trim).collect();
        return Ok(SupportLabel::cycle(&ids, shift));
    }
    if sup.contains(',') {
        let ids: Vec<&str> = sup.split(',').map(str::trim).collect();
        return Ok(SupportLabel::cycle(&ids, shift));
    }
    Ok(SupportLabel::vertex(sup.trim(), shift))
}

fn verdict_to_doc(v: &Verdict) -> VerdictDoc {
    VerdictDoc {
        holds: v.holds,
        witness: match &v.witness {
            Witness::None => WitnessDoc::None,
            Witness::NotEvaluated => WitnessDoc::NotEvaluated,
            Witness::Vertex(x) => WitnessDoc::Vertex(x.clone()),
            Witness::Degrees(d) => WitnessDoc::Degrees(d.clone()),
            Witness::Arrow(a) => WitnessDoc::Arrow(a.clone()),
            Witness::Closures(cs) => WitnessDoc::Closures(
                cs.iter()
                    .map(|c| ClosureDoc {
                        arrow: c.arrow.clone(),
                        vertex: c.vertex.clone(),
                        space_dim: c.space_dim,
                        basis: matrix_to_entries(&c.basis),
                    })
                    .collect(),
            ),
        },
    }
}

fn verdict_from_doc(field: FieldSpec, d: &VerdictDoc) -> Result<Verdict> {
    let witness = match &d.witness {
        WitnessDoc::None => Witness::None,
        WitnessDoc::NotEvaluated => Witness::NotEvaluated,
        WitnessDoc::Vertex(x) => Witness::Vertex(x.clone()),
        WitnessDoc::Degrees(x) => Witness::Degrees(x.clone()),
        WitnessDoc::Arrow(x) => Witness::Arrow(x.clone()),
        WitnessDoc::Closures(cs) => Witness::Closures(
            cs.iter()
                .map(|c| {
                    let cols = c.basis.first().map_or(0, Vec::len);
                    Ok(ArrowClosure {
                        arrow: c.arrow.clone(),
                        vertex: c.vertex.clone(),
                        space_dim: c.space_dim,
                        basis: entries_to_matrix(field, c.space_dim, cols, &c.basis)?,
                    })
                })
                .collect::<Result<_>>()?,
        ),
    };
    Ok(Verdict {
        holds: d.holds,
        witness,
    })
}

pub fn certificate_to_doc(c: &GeneratorCertificate) -> CertificateDoc {
    CertificateDoc {
        label: label_to_doc(&c.label),
        a: verdict_to_doc(&c.a),
        b: verdict_to_doc(&c.b),
        c: verdict_to_doc(&c.c),
        d: verdict_to_doc(&c.d),
        passed: c.passed(),
        interpretation: c.interpretation.to_string(),
    }
}

pub fn certificate_from_doc(field: FieldSpec, d: &CertificateDoc) -> Result<GeneratorCertificate> {
    if d.interpretation != CLOSURE_INTERPRETATION {
        return Err(Error::Parse("unrecognized certificate interpretation".into()));
    }
    let cert = GeneratorCertificate {
        label: label_from_doc(&d.label),
        a: verdict_from_doc(field, &d.a)?,
        b: verdict_from_doc(field, &d.b)?,
        c: verdict_from_doc(field, &d.c)?,
        d: verdict_from_doc(field, &d.d)?,
        interpretation: CLOSURE_INTERPRETATION,
    };
    if cert.passed() != d.passed {
        return Err(Error::Parse("certificate verdict disagrees with its conditions".into()));
    }
    Ok(cert)
}

// ---------------------------------------------------------------------------
// trees

fn poly_to_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

pub fn tree_to_doc(t: &DecompositionTree) -> TreeDoc {
    TreeDoc {
        root: node_to_doc(&t.root),
    }
}

fn node_to_doc(n: &Node) -> NodeDoc {
    let q = n.module.quiver();
    let module = module_to_doc(&n.module);
    match &n.content {
        NodeContent::Split {
            kind,
            inclusion,
            sub,
            quotient,
        } => {
            let inclusion = map_to_doc(q, inclusion);
            let sub = Box::new(node_to_doc(sub));
            let quotient = Box::new(node_to_doc(quotient));
            match kind {
                SplitKind::Degree { s } => NodeDoc::Degree {
                    s: *s,
                    module,
                    inclusion,
                    sub,
                    quotient,
                },
                SplitKind::Class { class } => NodeDoc::Class {
                    class: class.clone(),
                    module,
                    inclusion,
                    sub,
                    quotient,
                },
                SplitKind::Arrow { arrow } => NodeDoc::Split {
                    arrow: arrow.clone(),
                    module,
                    inclusion,
                    sub,
                    quotient,
                },
            }
        }
        NodeContent::Leaf {
            certificate,
            refinement,
        } => NodeDoc::Leaf {
            module,
            certificate: certificate_to_doc(certificate),
            refinement: refinement.as_ref().map(|r| refinement_to_doc(q, r)),
        },
    }
}

pub fn refinement_to_doc(q: &GradedQuiver, r: &RefinementOutcome) -> RefinementDoc {
    match r {
        RefinementOutcome::Unrefined { reason } => RefinementDoc::Unrefined { reason: reason.clone() },
        RefinementOutcome::Refined(rf) => RefinementDoc::Refined {
            arrows: rf.arrows.clone(),
            base: rf.base.clone(),
            monodromy: matrix_to_entries(&rf.monodromy),
            blocks: rf
                .blocks
                .iter()
                .map(|b| BlockNodeDoc {
                    cycle: b.cycle.arrows.iter().cloned().collect(),
                    base: b.base.clone(),
                    poly: b.poly.to_string(),
                    coefficients: poly_to_strings(&b.poly),
                    multiplicity: b.multiplicity,
                    rank: b.rank,
                    module: module_to_doc(&b.module),
                })
                .collect(),
            sum: module_to_doc(&rf.sum),
            iso: map_to_doc(q, &rf.iso),
        },
    }
}

pub fn tree_from_doc(pres: &Arc<GinzburgPresentation>, doc: &TreeDoc) -> Result<DecompositionTree> {
    Ok(DecompositionTree {
        root: node_from_doc(pres, &doc.root)?,
    })
}

fn node_from_doc(pres: &Arc<GinzburgPresentation>, d: &NodeDoc) -> Result<Node> {
    let field = pres.field();
    let split =
        |kind: SplitKind, module: &ModuleDoc, inclusion: &MapDoc, sub: &NodeDoc, quotient: &NodeDoc| -> Result<Node> {
            let module = module_from_doc(pres, module)?;
            let sub = node_from_doc(pres, sub)?;
            let quotient = node_from_doc(pres, quotient)?;
            let inclusion = map_from_doc(&sub.module, &module, inclusion)?;
            Ok(Node {
                module,
                content: NodeContent::Split {
                    kind,
                    inclusion,
                    sub: Box::new(sub),
                    quotient: Box::new(quotient),
                },
            })
        };
    match d {
        NodeDoc::Degree {
            s,
            module,
            inclusion,
            sub,
            quotient,
        } => split(SplitKind::Degree { s: *s }, module, inclusion, sub, quotient),
        NodeDoc::Class {
            class,
            module,
            inclusion,
            sub,
            quotient,
        } => split(
            SplitKind::Class { class: class.clone() },
            module,
            inclusion,
            sub,
            quotient,
        ),
        NodeDoc::Split {
            arrow,
            module,
            inclusion,
            sub,
            quotient,
        } => split(
            SplitKind::Arrow { arrow: arrow.clone() },
            module,
            inclusion,
            sub,
            quotient,
        ),
        NodeDoc::Leaf {
            module,
            certificate,
            refinement,
        } => {
            let module = module_from_doc(pres, module)?;
            let certificate = certificate_from_doc(field, certificate)?;
            let refinement = match refinement {
                None => None,
                Some(RefinementDoc::Unrefined { reason }) => {
                    Some(RefinementOutcome::Unrefined { reason: reason.clone() })
                }
                Some(RefinementDoc::Refined {
                    arrows,
                    base,
                    monodromy,
                    blocks,
                    sum,
                    iso,
                }) => {
                    let sum = module_from_doc(pres, sum)?;
                    let iso = map_from_doc(&sum, &module, iso)?;
                    let blocks = blocks
                        .iter()
                        .map(|b| {
                            let coeffs = b
                                .coefficients
                                .iter()
                                .map(|c| field.parse(c))
                                .collect::<Result<Vec<_>>>()?;
                            Ok(CanonicalBlock {
                                cycle: CycClass::new(&b.cycle),
                                base: b.base.clone(),
                                poly: Poly::new(field, coeffs),
                                multiplicity: b.multiplicity,
                                rank: b.rank,
                                module: module_from_doc(pres, &b.module)?,
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Some(RefinementOutcome::Refined(Refinement {
                        arrows: arrows.clone(),
                        base: base.clone(),
                        monodromy: entries_to_square(field, monodromy)?,
                        blocks,
                        sum,
                        iso,
                    }))
                }
            };
            Ok(Node {
                module,
                content: NodeContent::Leaf {
                    certificate,
                    refinement,
                },
            })
        }
    }
}

pub fn parse_tree(pres: &Arc<GinzburgPresentation>, json: &str) -> Result<DecompositionTree> {
    let doc: TreeDoc = from_json(json)?;
    tree_from_doc(pres, &doc)
}

// ---------------------------------------------------------------------------

pub fn from_json<T: for<'de> Deserialize<'de>>(json: &str) -> Result<T> {
    serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
}

/// Pretty JSON with struct fields in declaration order and maps sorted by key.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}
