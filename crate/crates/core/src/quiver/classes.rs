use std::collections::BTreeSet;

use super::group::{group_order, DEFAULT_COSET_CAP};
use super::{CycleTraversal, GradedQuiver};
use crate::error::Result;

/// A partition of vertex indices into classes with a partial order on classes.
///
/// Classes are listed by least member; `leq(i, j)` is the order `class i ⪯ class j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    order: BTreeSet<(usize, usize)>,
}

/// Builds classes and order from a reflexive, transitive relation: `v` and `w` share a
/// class iff each relates to the other, and `class(v) ⪯ class(w)` iff `rel[v][w]`.
pub fn partition_from_reach(rel: &[Vec<bool>]) -> ClassPartition {
    let nv = rel.len();
    let mut class_of = vec![usize::MAX; nv];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..nv {
        if class_of[v] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (v..nv).filter(|&w| rel[v][w] && rel[w][v]).collect();
        for &w in &members {
            class_of[w] = classes.len();
        }
        classes.push(members);
    }
    let mut order = BTreeSet::new();
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            if rel[ci[0]][cj[0]] {
                order.insert((i, j));
            }
        }
    }
    ClassPartition {
        classes,
        class_of,
        order,
    }
}

impl ClassPartition {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order.contains(&(i, j))
    }

    pub fn order(&self) -> &BTreeSet<(usize, usize)> {
        &self.order
    }

    /// Class indices in a linear extension of ⪯, minimal classes first,
    /// ties broken by least member.
    pub fn linear_extension(&self) -> Vec<usize> {
        self.linear_extension_of(&(0..self.len()).collect::<Vec<_>>())
    }

    /// The same order restricted to a subset of classes.
    pub fn linear_extension_of(&self, subset: &[usize]) -> Vec<usize> {
        let mut remaining: Vec<usize> = subset.to_vec();
        remaining.sort_unstable();
        let mut out = Vec::new();
        while !remaining.is_empty() {
            let pos = remaining
                .iter()
                .position(|&c| !remaining.iter().any(|&d| d != c && self.leq(d, c)))
                .expect("a finite partial order has a minimal element");
            out.push(remaining.remove(pos));
        }
        out
    }

    /// Class member lists translated to vertex identifiers.
    pub fn ids(&self, q: &GradedQuiver) -> Vec<Vec<String>> {
        self.classes
            .iter()
            .map(|c| c.iter().map(|&v| q.vertex_id(v).to_string()).collect())
            .collect()
    }

    /// The identifier of a class: its least vertex id.
    pub fn label(&self, q: &GradedQuiver, i: usize) -> String {
        q.vertex_id(self.classes[i][0]).to_string()
    }
}

/// Order of a vertex group as found by coset enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(usize),
    /// A presentation with generators and no relators presents a free group.
    Infinite,
    /// Enumeration did not close within the coset cap.
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiVerdict {
    Finite,
    Infinite,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub zero_cycle: Option<CycleTraversal>,
    pub groups: Vec<(String, GroupOrder)>,
    pub verdict: JacobiVerdict,
}

impl GradedQuiver {
    /// Classes are strongly connected components of the degree-0 sub-quiver;
    /// `class(v) ⪯ class(w)` whenever a degree-0 path runs from `v` to `w`.
    pub fn vertex_classes(&self) -> Result<ClassPartition> {
        self.require_window()?;
        Ok(partition_from_reach(&self.zero_reachability()))
    }

    /// True iff the degree-0 sub-quiver has a directed cycle (loops included).
    pub fn has_zero_cycle(&self) -> Result<bool> {
        self.require_window()?;
        let reach = self.zero_reachability();
        Ok(self.zero_arrows().into_iter().any(|e| {
            let (s, t) = self.ends(e);
            reach[t][s]
        }))
    }
}

/// Degree-0 finiteness: no degree-0 cycle and every vertex group finite.
pub fn jacobi(q: &GradedQuiver) -> Result<JacobiReport> {
    q.require_window()?;
    let zero_cycle = if q.has_zero_cycle()? {
        q.zero_cycles()?.into_iter().next()
    } else {
        None
    };
    let mut groups = Vec::new();
    for (v, vert) in q.vertices().iter().enumerate() {
        if let Some(g) = q.group(v) {
            let order = if !g.generators.is_empty() && g.relations.is_empty() {
                GroupOrder::Infinite
            } else {
                match group_order(g, DEFAULT_COSET_CAP) {
                    Some(k) => GroupOrder::Finite(k),
                    None => GroupOrder::Undetermined,
                }
            };
            groups.push((vert.id.clone(), order));
        }
    }
    let verdict = if zero_cycle.is_some() || groups.iter().any(|(_, o)| *o == GroupOrder::Infinite) {
        JacobiVerdict::Infinite
    } else if groups.iter().any(|(_, o)| *o == GroupOrder::Undetermined) {
        JacobiVerdict::Undetermined
    } else {
        JacobiVerdict::Finite
    };
    Ok(JacobiReport {
        zero_cycle,
        groups,
        verdict,
    })
}
