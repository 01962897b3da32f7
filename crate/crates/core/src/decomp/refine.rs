use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::field::{canonical_form, ExactMatrix, Poly};
use crate::ginzburg::Gen;
use crate::pmod::{GeneratorCertificate, ModuleMap, ProperModule};
use crate::quiver::{CycClass, GradedQuiver, Support};

/// One canonical-form block of a leaf supported on a simple cycle: every cycle vertex
/// carries `k^rank`, the arrow leaving the base vertex acts by the companion matrix of
/// `poly^multiplicity` and the other cycle arrows by the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalBlock {
    pub cycle: CycClass,
    pub base: String,
    pub poly: Poly,
    pub multiplicity: usize,
    pub rank: usize,
    pub module: ProperModule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    /// Cycle arrows in traversal order from the base vertex.
    pub arrows: Vec<String>,
    pub base: String,
    /// `M(x̄_{e_1}) ⋯ M(x̄_{e_k})` on the base vertex space.
    pub monodromy: ExactMatrix,
    pub blocks: Vec<CanonicalBlock>,
    /// The direct sum of the block modules, in order.
    pub sum: ProperModule,
    /// An isomorphism from `sum` onto the leaf.
    pub iso: ModuleMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefinementOutcome {
    Refined(Refinement),
    Unrefined { reason: String },
}

/// Arrows of a single simple directed cycle, in traversal order from its least vertex;
/// `None` when the arrow set is not one simple cycle.
pub fn simple_cycle_order(q: &GradedQuiver, arrows: &BTreeSet<usize>) -> Option<Vec<usize>> {
    let verts = q.arrow_vertices(arrows);
    if verts.len() != arrows.len() {
        return None;
    }
    let mut out_of: BTreeMap<usize, usize> = BTreeMap::new();
    for &e in arrows {
        let (s, _) = q.ends(e);
        if out_of.insert(s, e).is_some() {
            return None;
        }
    }
    let base = *verts.iter().next()?;
    let mut order = Vec::new();
    let mut v = base;
    loop {
        let e = *out_of.get(&v)?;
        order.push(e);
        v = q.ends(e).1;
        if v == base {
            break;
        }
        if order.len() > arrows.len() {
            return None;
        }
    }
    (order.len() == arrows.len()).then_some(order)
}

/// Splits a passing leaf on one simple cycle into canonical-form blocks of its monodromy.
pub fn refine_single_cycle(leaf: &ProperModule, cert: &GeneratorCertificate) -> Result<RefinementOutcome> {
    let unrefined = |reason: &str| Ok(RefinementOutcome::Unrefined { reason: reason.into() });
    if !cert.passed() {
        return Err(Error::Precondition("refinement needs a passing certificate".into()));
    }
    let Support::Cycle(class) = &cert.label.support else {
        return unrefined("vertex support");
    };
    let q = leaf.quiver();
    let arrows: BTreeSet<usize> = class.arrows.iter().map(|a| q.arrow_index(a)).collect::<Result<_>>()?;
    let Some(order) = simple_cycle_order(q, &arrows) else {
        return unrefined("support is not a single simple cycle");
    };
    if q.arrow_vertices(&arrows).iter().any(|&v| q.group(v).is_some()) {
        return unrefined("cycle passes through a group vertex");
    }
    let s = cert.label.shift;
    let field = leaf.field();
    let base = q.ends(order[0]).0;
    let mut monodromy = ExactMatrix::identity(field, leaf.dim(base, s));
    for &e in &order {
        monodromy = monodromy.mul(&leaf.block(Gen::X(e), s));
    }
    if monodromy.inverse().is_none() {
        return Err(Error::Precondition(
            "monodromy of a passing single-cycle leaf must be invertible".into(),
        ));
    }
    let cf = canonical_form(&monodromy);
    let mut blocks = Vec::new();
    for b in &cf.blocks {
        let module = cycle_module(leaf, &order, s, &b.companion)?;
        blocks.push(CanonicalBlock {
            cycle: class.clone(),
            base: q.vertex_id(base).to_string(),
            poly: b.poly.clone(),
            multiplicity: b.multiplicity,
            rank: b.companion.rows(),
            module,
        });
    }
    let sum = cycle_module(leaf, &order, s, &cf.block_diagonal())?;
    // Φ_{v_0} = P and Φ_{v_{j−1}} = M(x̄_{e_j}) Φ_{v_j} for j = k, …, 2.
    let mut iso = BTreeMap::new();
    let mut phi = cf.change_of_basis.clone();
    iso.insert((base, s), phi.clone());
    for &e in order.iter().skip(1).rev() {
        phi = leaf.block(Gen::X(e), s).mul(&phi);
        iso.insert((q.ends(e).0, s), phi.clone());
    }
    Ok(RefinementOutcome::Refined(Refinement {
        arrows: order.iter().map(|&e| q.arrow_id(e).to_string()).collect(),
        base: q.vertex_id(base).to_string(),
        monodromy,
        blocks,
        sum,
        iso: ModuleMap { degree: 0, blocks: iso },
    }))
}

/// `k^r` at every cycle vertex in degree `s`; the first arrow acts by `first`, the rest by 1.
fn cycle_module(leaf: &ProperModule, order: &[usize], s: i64, first: &ExactMatrix) -> Result<ProperModule> {
    let q = leaf.quiver();
    let field = leaf.field();
    let r = first.rows();
    let mut spaces = vec![BTreeMap::new(); q.num_vertices()];
    let mut maps = BTreeMap::new();
    for (j, &e) in order.iter().enumerate() {
        spaces[q.ends(e).0].insert(s, r);
        let m = if j == 0 {
            first.clone()
        } else {
            ExactMatrix::identity(field, r)
        };
        maps.insert((Gen::X(e), s), m);
    }
    ProperModule::new(leaf.presentation().clone(), spaces, maps)
}
