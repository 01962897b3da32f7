//! Decomposition of a module into generator pieces: degree towers, class towers and
//! subquotient splits along arrows whose orbit condition fails, with optional
//! canonical-form refinement of leaves supported on one simple cycle.

mod refine;
mod verify;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::pmod::{GeneratorCertificate, ModuleMap, ProperModule, Witness};

pub use refine::{refine_single_cycle, simple_cycle_order, CanonicalBlock, Refinement, RefinementOutcome};
pub use verify::{verify_tree, VerifyReport};

/// Default cap on the number of tree nodes.
pub const DEFAULT_NODE_BUDGET: usize = 10_000;

/// Why an internal node splits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitKind {
    /// The sub is the slice at the least supported degree `s`.
    Degree { s: i64 },
    /// The sub is the part on a minimal module class, named by its least vertex id.
    Class { class: String },
    /// The sub is generated by the image of the arrow's `x̄`-matrix.
    Arrow { arrow: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeContent {
    Split {
        kind: SplitKind,
        /// Inclusion of `sub`'s module into this node's module.
        inclusion: ModuleMap,
        sub: Box<Node>,
        quotient: Box<Node>,
    },
    Leaf {
        certificate: GeneratorCertificate,
        refinement: Option<RefinementOutcome>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub module: ProperModule,
    pub content: NodeContent,
}

impl Node {
    pub fn leaves(&self) -> Vec<&Node> {
        match &self.content {
            NodeContent::Leaf { .. } => vec![self],
            NodeContent::Split { sub, quotient, .. } => {
                let mut v = sub.leaves();
                v.extend(quotient.leaves());
                v
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match &self.content {
            NodeContent::Leaf { .. } => 1,
            NodeContent::Split { sub, quotient, .. } => 1 + sub.node_count() + quotient.node_count(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTree {
    pub root: Node,
}

/// A factor of a tower: the sub split off at this step, with its inclusion into the
/// module remaining before the step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerStep {
    pub factor: ProperModule,
    pub ambient: ProperModule,
    pub inclusion: ModuleMap,
}

/// Splits off the least-degree slice repeatedly: factors are concentrated in strictly
/// increasing degrees.
pub fn degree_tower(m: &ProperModule) -> Result<Vec<(i64, TowerStep)>> {
    let mut out = Vec::new();
    let mut rest = m.clone();
    while let Some(&s) = rest.supp_degrees().first() {
        let (factor, inclusion) = rest.degree_slice_inclusion(s)?;
        let next = rest.quotient_by_submodule(&factor, &inclusion)?;
        out.push((
            s,
            TowerStep {
                factor,
                ambient: rest,
                inclusion,
            },
        ));
        rest = next;
    }
    Ok(out)
}

/// The supported module class that comes first in the module order (least vertex id
/// among minimal classes), as its vertex list.
fn minimal_supported_class(m: &ProperModule) -> Result<Option<Vec<usize>>> {
    let classes = m.module_classes()?;
    let supported: BTreeSet<usize> = m.support_vertices().into_iter().map(|v| classes.class_of(v)).collect();
    let subset: Vec<usize> = supported.into_iter().collect();
    Ok(classes
        .linear_extension_of(&subset)
        .first()
        .map(|&c| classes.classes()[c].clone()))
}

/// Splits a single-degree module into class-supported factors, minimal classes first.
pub fn class_tower(m: &ProperModule) -> Result<Vec<(String, TowerStep)>> {
    m.require_concentrated()?;
    let mut out = Vec::new();
    let mut rest = m.clone();
    while let Some(class) = minimal_supported_class(&rest)? {
        let fam = rest.vertex_family(&class);
        let (factor, inclusion) = rest.submodule_on(&fam);
        let next = rest.quotient_by_family(&fam);
        let label = rest.quiver().vertex_id(class[0]).to_string();
        out.push((
            label,
            TowerStep {
                factor,
                ambient: rest,
                inclusion,
            },
        ));
        rest = next;
    }
    Ok(out)
}

/// Decomposes with the default node budget and no refinement.
pub fn decompose(m: &ProperModule) -> Result<DecompositionTree> {
    decompose_with(m, DEFAULT_NODE_BUDGET, false)
}

/// Decomposes `m`: degree slices first, then minimal module classes, then splits along
/// the least arrow whose orbit condition fails. Every leaf carries a passing certificate.
pub fn decompose_with(m: &ProperModule, budget: usize, refine: bool) -> Result<DecompositionTree> {
    m.quiver().require_window()?;
    if m.is_zero() {
        return Err(Error::Precondition("cannot decompose the zero module".into()));
    }
    let mut count = 0;
    let root = build(m.clone(), budget, refine, &mut count)?;
    Ok(DecompositionTree { root })
}

fn split(
    m: ProperModule,
    kind: SplitKind,
    sub: ProperModule,
    inclusion: ModuleMap,
    quotient: ProperModule,
    budget: usize,
    refine: bool,
    count: &mut usize,
) -> Result<Node> {
    let sub = build(sub, budget, refine, count)?;
    let quotient = build(quotient, budget, refine, count)?;
    Ok(Node {
        module: m,
        content: NodeContent::Split {
            kind,
            inclusion,
            sub: Box::new(sub),
            quotient: Box::new(quotient),
        },
    })
}

fn build(m: ProperModule, budget: usize, refine: bool, count: &mut usize) -> Result<Node> {
    *count += 1;
    if *count > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    let degs = m.supp_degrees();
    if degs.len() > 1 {
        let s = degs[0];
        let (sub, inclusion) = m.degree_slice_inclusion(s)?;
        let quotient = m.quotient_by_submodule(&sub, &inclusion)?;
        return split(
            m,
            SplitKind::Degree { s },
            sub,
            inclusion,
            quotient,
            budget,
            refine,
            count,
        );
    }
    let classes = m.module_classes()?;
    let support = m.support_vertices();
    let connected = support
        .iter()
        .all(|&v| classes.class_of(v) == classes.class_of(support[0]));
    if !connected {
        let class = minimal_supported_class(&m)?.expect("nonzero module has a supported class");
        let fam = m.vertex_family(&class);
        let (sub, inclusion) = m.submodule_on(&fam);
        let quotient = m.quotient_by_family(&fam);
        let label = m.quiver().vertex_id(class[0]).to_string();
        return split(
            m,
            SplitKind::Class { class: label },
            sub,
            inclusion,
            quotient,
            budget,
            refine,
            count,
        );
    }
    let label = m.assigned_support()?;
    let certificate = m.is_generator(&label)?;
    if certificate.passed() {
        let refinement = if refine {
            Some(refine_single_cycle(&m, &certificate)?)
        } else {
            None
        };
        return Ok(Node {
            module: m,
            content: NodeContent::Leaf {
                certificate,
                refinement,
            },
        });
    }
    match (&certificate.first_failure(), &certificate.d.witness) {
        (Some('d'), Witness::Arrow(a)) => {
            let e = m.quiver().arrow_index(a)?;
            let (sub, inclusion) = m.submodule_generated(e)?;
            let quotient = m.quotient_by_submodule(&sub, &inclusion)?;
            let arrow = a.clone();
            split(
                m,
                SplitKind::Arrow { arrow },
                sub,
                inclusion,
                quotient,
                budget,
                refine,
                count,
            )
        }
        _ => Err(Error::Precondition(format!(
            "class-connected piece fails a support condition for {}",
            certificate.label
        ))),
    }
}
