use std::collections::BTreeMap;

use super::{ModuleMap, ProperModule};
use crate::error::{Error, Result};
use crate::field::{ExactMatrix, Subspace};
use crate::ginzburg::Gen;

/// A subspace of every nonzero piece, keyed by (vertex, degree). Missing pieces are zero.
pub type Family = BTreeMap<(usize, i64), Subspace>;

impl ProperModule {
    /// True iff every generator maps the family into itself.
    pub fn family_is_closed(&self, fam: &Family) -> bool {
        let q = self.quiver();
        self.blocks().iter().all(|(&(g, t), block)| {
            let (a, b) = g.ends(q);
            let Some(src) = fam.get(&(b, t)) else { return true };
            let img = src.image_under(block);
            match fam.get(&(a, t + g.degree(q))) {
                Some(dst) => dst.contains(&img),
                None => img.is_zero(),
            }
        })
    }

    /// The submodule on a closed family, in the family's canonical bases, and its inclusion.
    pub fn submodule_on(&self, fam: &Family) -> (ProperModule, ModuleMap) {
        debug_assert!(self.family_is_closed(fam));
        let q = self.quiver();
        let bases: BTreeMap<(usize, i64), ExactMatrix> = fam
            .iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|(&k, s)| (k, s.basis()))
            .collect();
        let mut spaces = vec![BTreeMap::new(); q.num_vertices()];
        for (&(v, t), b) in &bases {
            spaces[v].insert(t, b.cols());
        }
        let mut maps = BTreeMap::new();
        for (&(g, t), block) in self.blocks() {
            let (a, b) = g.ends(q);
            let (Some(src), Some(dst)) = (bases.get(&(b, t)), bases.get(&(a, t + g.degree(q)))) else {
                continue;
            };
            let coords = dst
                .solve(&block.mul(src))
                .expect("closed family: image lies in the target subspace");
            maps.insert((g, t), coords);
        }
        let sub = ProperModule::from_parts(self.presentation().clone(), spaces, maps);
        let incl = ModuleMap {
            degree: 0,
            blocks: bases,
        };
        (sub, incl)
    }

    /// `M / W` for a closed family `W`, in the canonical complement bases.
    pub fn quotient_by_family(&self, fam: &Family) -> ProperModule {
        debug_assert!(self.family_is_closed(fam));
        let q = self.quiver();
        let field = self.field();
        let sub_of = |v: usize, t: i64| {
            fam.get(&(v, t))
                .cloned()
                .unwrap_or_else(|| Subspace::zero(field, self.dim(v, t)))
        };
        let mut spaces = vec![BTreeMap::new(); q.num_vertices()];
        for ((v, t), _) in self.dim_vector() {
            let w = sub_of(v, t);
            spaces[v].insert(t, w.ambient() - w.dim());
        }
        let mut maps = BTreeMap::new();
        for (&(g, t), block) in self.blocks() {
            let (a, b) = g.ends(q);
            let src = sub_of(b, t);
            let dst = sub_of(a, t + g.degree(q));
            let comp = src.complement_indices();
            let cols: Vec<Vec<_>> = comp
                .iter()
                .map(|&c| dst.quotient_coordinates(&block.column(c)))
                .collect();
            let rows = dst.ambient() - dst.dim();
            maps.insert((g, t), ExactMatrix::from_columns(field, rows, &cols));
        }
        ProperModule::from_parts(self.presentation().clone(), spaces, maps)
    }

    /// The image family of an injective module map into `self`.
    pub fn image_family(&self, source: &ProperModule, t_map: &ModuleMap) -> Result<Family> {
        if t_map.degree != 0 {
            return Err(Error::Precondition("submodule inclusions have degree 0".into()));
        }
        t_map.check(source, self)?;
        if !t_map.is_injective(source, self) {
            return Err(Error::Precondition("map is not injective".into()));
        }
        Ok(source
            .dim_vector()
            .into_keys()
            .map(|(v, t)| ((v, t), Subspace::span(&t_map.block(source, self, v, t))))
            .collect())
    }

    /// `M / T(S)` for an injective module map `T: S → M`.
    pub fn quotient_by_submodule(&self, source: &ProperModule, t_map: &ModuleMap) -> Result<ProperModule> {
        let fam = self.image_family(source, t_map)?;
        Ok(self.quotient_by_family(&fam))
    }

    /// The degree-`s` slice `M_s` (all pieces of degree `s`) and its inclusion.
    ///
    /// For gradings in the window every generator has degree at most 0, so the slice at
    /// the least supported degree is a submodule.
    pub fn degree_slice_inclusion(&self, s: i64) -> Result<(ProperModule, ModuleMap)> {
        let field = self.field();
        let fam: Family = self
            .dim_vector()
            .into_iter()
            .filter(|&((_, t), _)| t == s)
            .map(|(k, d)| (k, Subspace::full(field, d)))
            .collect();
        if !self.family_is_closed(&fam) {
            return Err(Error::Precondition(format!("degree slice {s} is not a submodule")));
        }
        Ok(self.submodule_on(&fam))
    }

    /// Full spaces at the given vertices (every degree); a closed family iff the vertex set
    /// is closed under the nonzero generator actions.
    pub fn vertex_family(&self, vertices: &[usize]) -> Family {
        let field = self.field();
        self.dim_vector()
            .into_iter()
            .filter(|((v, _), _)| vertices.contains(v))
            .map(|(k, d)| (k, Subspace::full(field, d)))
            .collect()
    }

    /// `M[k]`: the degree-`t` piece of the result is the degree-`t + k` piece of `M`.
    /// Blocks of a generator `g` pick up the sign `(−1)^{k|g|}`.
    pub fn shift(&self, k: i64) -> ProperModule {
        let q = self.quiver();
        let field = self.field();
        let spaces = self
            .spaces()
            .iter()
            .map(|m| m.iter().map(|(&t, &d)| (t - k, d)).collect())
            .collect();
        let maps = self
            .blocks()
            .iter()
            .map(|(&(g, t), b)| {
                let sign = field.from_i64(crate::ginzburg::sign_pow(k * g.degree(q)));
                ((g, t - k), b.scale(&sign))
            })
            .collect();
        ProperModule::from_parts(self.presentation().clone(), spaces, maps)
    }

    /// `M ⊕ N`, with the basis of `M` first in every piece.
    pub fn direct_sum(&self, other: &ProperModule) -> Result<ProperModule> {
        self.same_presentation(other)?;
        let field = self.field();
        let spaces = self
            .spaces()
            .iter()
            .zip(other.spaces())
            .map(|(a, b)| {
                let mut m = a.clone();
                for (&t, &d) in b {
                    *m.entry(t).or_insert(0) += d;
                }
                m
            })
            .collect();
        let mut keys: Vec<(Gen, i64)> = self.blocks().keys().chain(other.blocks().keys()).copied().collect();
        keys.sort();
        keys.dedup();
        let maps = keys
            .into_iter()
            .map(|(g, t)| {
                let b = ExactMatrix::block_diag(field, &[&self.block(g, t), &other.block(g, t)]);
                ((g, t), b)
            })
            .collect();
        Ok(ProperModule::from_parts(self.presentation().clone(), spaces, maps))
    }
}
