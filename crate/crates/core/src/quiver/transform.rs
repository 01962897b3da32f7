use std::collections::{BTreeMap, BTreeSet};

use super::GradedQuiver;
use crate::error::Result;

/// Vertex potentials and reversals bringing every arrow degree into `(2 − n, 0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedGrading {
    /// `p_v`, applied as `shift_vertex(v, p_v)`.
    pub potentials: BTreeMap<String, i64>,
    /// Arrows that land on `2 − n` after shifting and are then reversed.
    pub reversed: BTreeSet<String>,
    pub quiver: GradedQuiver,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalization {
    Feasible(NormalizedGrading),
    Infeasible,
}

impl Normalization {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Normalization::Feasible(_))
    }
}

impl GradedQuiver {
    /// Adds `k` to arrows leaving `v` and subtracts `k` from arrows entering `v`.
    pub fn shift_vertex(&self, v: &str, k: i64) -> Result<GradedQuiver> {
        self.vertex_index(v)?;
        let mut arrows = self.arrows.clone();
        for a in &mut arrows {
            if a.source == v {
                a.degree += k;
            }
            if a.target == v {
                a.degree -= k;
            }
        }
        GradedQuiver::new(self.n, self.field, self.vertices.clone(), arrows)
    }

    /// Swaps the ends of `e`; the degree becomes `2 − n − d_e`, the sign flips iff `n` is odd.
    pub fn reverse_arrow(&self, e: &str) -> Result<GradedQuiver> {
        let i = self.arrow_index(e)?;
        let mut arrows = self.arrows.clone();
        let a = &mut arrows[i];
        std::mem::swap(&mut a.source, &mut a.target);
        a.degree = 2 - self.n - a.degree;
        if self.n % 2 != 0 {
            a.sign = -a.sign;
        }
        GradedQuiver::new(self.n, self.field, self.vertices.clone(), arrows)
    }

    /// Decides whether vertex shifts and reversals can place every degree in `(2 − n, 0]`.
    ///
    /// The constraints `2 − n ≤ d_e + p_s − p_t ≤ 0` form a difference system solved by
    /// Bellman–Ford from a virtual source; arrows landing on `2 − n` are reversed to `0`.
    pub fn normalize_grading(&self) -> Result<Normalization> {
        let nv = self.num_vertices();
        // Edge (u, w, c) encodes p_w ≤ p_u + c.
        let mut edges: Vec<(usize, usize, i64)> = Vec::new();
        for e in 0..self.num_arrows() {
            let (s, t) = self.ends(e);
            let d = self.degree(e);
            edges.push((t, s, -d));
            edges.push((s, t, d + self.n - 2));
        }
        let mut dist = vec![0i64; nv];
        for _ in 0..nv {
            let mut changed = false;
            for &(u, w, c) in &edges {
                if dist[u] + c < dist[w] {
                    dist[w] = dist[u] + c;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if edges.iter().any(|&(u, w, c)| dist[u] + c < dist[w]) {
            return Ok(Normalization::Infeasible);
        }
        let mut q = self.clone();
        let mut potentials = BTreeMap::new();
        for (v, &p) in dist.iter().enumerate() {
            potentials.insert(self.vertex_id(v).to_string(), p);
            if p != 0 {
                q = q.shift_vertex(self.vertex_id(v), p)?;
            }
        }
        let mut reversed = BTreeSet::new();
        for a in self.arrows() {
            let e = q.arrow_index(&a.id)?;
            if q.degree(e) == 2 - self.n {
                reversed.insert(a.id.clone());
            }
        }
        for a in &reversed {
            q = q.reverse_arrow(a)?;
        }
        debug_assert!(q.in_window());
        Ok(Normalization::Feasible(NormalizedGrading {
            potentials,
            reversed,
            quiver: q,
        }))
    }
}
