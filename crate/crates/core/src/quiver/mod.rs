//! Graded plumbing quivers and their degree-zero combinatorics.

mod classes;
mod cycles;
mod group;
mod transform;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::field::FieldSpec;

pub use classes::{jacobi, partition_from_reach, ClassPartition, GroupOrder, JacobiReport, JacobiVerdict};
pub use cycles::{CycClass, CycleTraversal, Direction, Support, SupportLabel};
pub use group::{group_order, DEFAULT_COSET_CAP};
pub use transform::{Normalization, NormalizedGrading};

/// Default cap on the number of classes produced by [`GradedQuiver::cyc_classes`].
pub const DEFAULT_CYC_BUDGET: usize = 100_000;

/// Local data at a vertex: a sphere, or a finitely presented group acting in degree 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalData {
    Sphere,
    Group(GroupPresentation),
}

/// Generators and relator words. A letter is a generator name or `name^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relations: Vec<Vec<String>>,
}

impl GroupPresentation {
    /// Resolves a letter to `(generator index, inverted)`.
    pub fn letter(&self, s: &str) -> Option<(usize, bool)> {
        let (name, inv) = match s.strip_suffix("^-1") {
            Some(base) => (base, true),
            None => (s, false),
        };
        self.generators.iter().position(|g| g == name).map(|i| (i, inv))
    }

    pub fn relators(&self) -> Vec<Vec<(usize, bool)>> {
        self.relations
            .iter()
            .map(|w| w.iter().map(|l| self.letter(l).expect("validated letter")).collect())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub local: LocalData,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: String,
    pub target: String,
    pub degree: i64,
    pub sign: i8,
}

/// A validated graded quiver. Vertices and arrows are kept sorted by identifier,
/// so index order is identifier order everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQuiver {
    n: i64,
    field: FieldSpec,
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
    vindex: BTreeMap<String, usize>,
    aindex: BTreeMap<String, usize>,
    ends: Vec<(usize, usize)>,
}

impl GradedQuiver {
    pub fn new(n: i64, field: FieldSpec, mut vertices: Vec<Vertex>, mut arrows: Vec<Arrow>) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidQuiver(format!("n = {n}, but n >= 3 is required")));
        }
        if let FieldSpec::Prime(p) = field {
            FieldSpec::prime(p as u64)?;
        }
        vertices.sort_by(|a, b| a.id.cmp(&b.id));
        arrows.sort_by(|a, b| a.id.cmp(&b.id));
        let mut vindex = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.id.is_empty() || v.id.contains(':') {
                return Err(Error::InvalidQuiver(format!("bad vertex id {:?}", v.id)));
            }
            if vindex.insert(v.id.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex id {:?}", v.id)));
            }
            if let LocalData::Group(g) = &v.local {
                let mut seen = BTreeSet::new();
                for name in &g.generators {
                    if name.is_empty() || name.contains('^') || !seen.insert(name) {
                        return Err(Error::InvalidQuiver(format!(
                            "bad or duplicate group generator {name:?} at vertex {:?}",
                            v.id
                        )));
                    }
                }
                for word in &g.relations {
                    for letter in word {
                        if g.letter(letter).is_none() {
                            return Err(Error::InvalidQuiver(format!(
                                "relation letter {letter:?} at vertex {:?} is not a declared generator",
                                v.id
                            )));
                        }
                    }
                }
            }
        }
        let mut aindex = BTreeMap::new();
        let mut ends = Vec::with_capacity(arrows.len());
        for (i, a) in arrows.iter().enumerate() {
            if a.id.is_empty() {
                return Err(Error::InvalidQuiver("empty arrow id".into()));
            }
            if aindex.insert(a.id.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow id {:?}", a.id)));
            }
            if a.sign != 1 && a.sign != -1 {
                return Err(Error::InvalidQuiver(format!("arrow {:?} has sign {}", a.id, a.sign)));
            }
            let s = *vindex
                .get(&a.source)
                .ok_or_else(|| Error::UnknownVertex(a.source.clone()))?;
            let t = *vindex
                .get(&a.target)
                .ok_or_else(|| Error::UnknownVertex(a.target.clone()))?;
            ends.push((s, t));
        }
        Ok(GradedQuiver {
            n,
            field,
            vertices,
            arrows,
            vindex,
            aindex,
            ends,
        })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vindex
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize> {
        self.aindex
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn arrow_id(&self, e: usize) -> &str {
        &self.arrows[e].id
    }

    /// `(source, target)` vertex indices of an arrow.
    pub fn ends(&self, e: usize) -> (usize, usize) {
        self.ends[e]
    }

    pub fn degree(&self, e: usize) -> i64 {
        self.arrows[e].degree
    }

    pub fn sign(&self, e: usize) -> i8 {
        self.arrows[e].sign
    }

    /// `|y_e| = 2 − n − d_e`.
    pub fn dual_degree(&self, e: usize) -> i64 {
        2 - self.n - self.arrows[e].degree
    }

    pub fn group(&self, v: usize) -> Option<&GroupPresentation> {
        match &self.vertices[v].local {
            LocalData::Group(g) => Some(g),
            LocalData::Sphere => None,
        }
    }

    pub fn has_group_vertices(&self) -> bool {
        self.vertices.iter().any(|v| matches!(v.local, LocalData::Group(_)))
    }

    /// True when every arrow degree lies in `(2 − n, 0]`.
    pub fn in_window(&self) -> bool {
        self.arrows.iter().all(|a| a.degree <= 0 && a.degree > 2 - self.n)
    }

    /// Errors with the first arrow whose degree lies outside `(2 − n, 0]`.
    pub fn require_window(&self) -> Result<()> {
        match self.arrows.iter().find(|a| a.degree > 0 || a.degree <= 2 - self.n) {
            None => Ok(()),
            Some(a) => Err(Error::GradingOutsideWindow {
                arrow: a.id.clone(),
                degree: a.degree,
                lo: 2 - self.n,
            }),
        }
    }

    /// Indices of degree-0 arrows.
    pub fn zero_arrows(&self) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&e| self.arrows[e].degree == 0).collect()
    }

    /// Degree-0 reachability: `reach[v][w]` iff a directed degree-0 path runs from `v` to `w`.
    pub fn zero_reachability(&self) -> Vec<Vec<bool>> {
        let nv = self.vertices.len();
        let mut adj = vec![Vec::new(); nv];
        for e in self.zero_arrows() {
            let (s, t) = self.ends[e];
            adj[s].push(t);
        }
        (0..nv)
            .map(|v| {
                let mut seen = vec![false; nv];
                seen[v] = true;
                let mut stack = vec![v];
                while let Some(u) = stack.pop() {
                    for &w in &adj[u] {
                        if !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
                seen
            })
            .collect()
    }
}
