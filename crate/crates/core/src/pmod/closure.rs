use super::construct::Family;
use super::{ModuleMap, ProperModule};
use crate::error::{Error, Result};
use crate::field::{ExactMatrix, Subspace};
use crate::ginzburg::Gen;
use crate::quiver::{partition_from_reach, ClassPartition};

impl ProperModule {
    /// The least family of subspaces of a single-degree module containing the span of
    /// `s` at `v` and closed under every degree-0 generator matrix.
    pub fn reachability_closure(&self, v: usize, s: &ExactMatrix) -> Result<Family> {
        let Some(deg) = self.require_concentrated()? else {
            return Ok(Family::new());
        };
        if s.rows() != self.dim(v, deg) {
            return Err(Error::Shape(format!(
                "seed has {} rows, space at {:?} has dimension {}",
                s.rows(),
                self.quiver().vertex_id(v),
                self.dim(v, deg)
            )));
        }
        let field = self.field();
        let mut fam: Vec<Subspace> = (0..self.quiver().num_vertices())
            .map(|u| Subspace::zero(field, self.dim(u, deg)))
            .collect();
        fam[v] = Subspace::span(s);
        let gens: Vec<(Gen, usize, usize, ExactMatrix)> = self
            .degree_zero_generators()
            .into_iter()
            .filter_map(|g| {
                let b = self.blocks().get(&(g, deg))?;
                let (to, from) = g.ends(self.quiver());
                Some((g, from, to, b.clone()))
            })
            .collect();
        let mut changed = true;
        while changed {
            changed = false;
            for (_, from, to, block) in &gens {
                if fam[*from].is_zero() {
                    continue;
                }
                let img = fam[*from].image_under(block);
                if !fam[*to].contains(&img) {
                    fam[*to] = fam[*to].sum(&img);
                    changed = true;
                }
            }
        }
        Ok(fam
            .into_iter()
            .enumerate()
            .filter(|(_, w)| w.ambient() > 0)
            .map(|(u, w)| ((u, deg), w))
            .collect())
    }

    /// `u` reaches `u′` when the closure of the full space at `u` is nonzero at `u′`.
    pub fn module_reach(&self) -> Result<Vec<Vec<bool>>> {
        let nv = self.quiver().num_vertices();
        let deg = self.require_concentrated()?;
        let mut reach = vec![vec![false; nv]; nv];
        for (u, row) in reach.iter_mut().enumerate() {
            row[u] = true;
            let Some(deg) = deg else { continue };
            let d = self.dim(u, deg);
            if d == 0 {
                continue;
            }
            let fam = self.reachability_closure(u, &ExactMatrix::identity(self.field(), d))?;
            for ((w, _), sub) in fam {
                if !sub.is_zero() {
                    row[w] = true;
                }
            }
        }
        // condensation: take the transitive closure
        for k in 0..nv {
            for i in 0..nv {
                if reach[i][k] {
                    for j in 0..nv {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        Ok(reach)
    }

    /// Classes of mutual module reachability. A class is below every class that reaches
    /// it, so parts on down-sets are submodules and minimal classes come first.
    pub fn module_classes(&self) -> Result<ClassPartition> {
        let reach = self.module_reach()?;
        let nv = reach.len();
        let rel: Vec<Vec<bool>> = (0..nv).map(|i| (0..nv).map(|j| reach[j][i]).collect()).collect();
        Ok(partition_from_reach(&rel))
    }

    fn require_arrow_support(&self, e: usize) -> Result<(i64, ExactMatrix)> {
        let q = self.quiver();
        let deg = self
            .require_concentrated()?
            .ok_or_else(|| Error::Precondition("zero module has no supported arrows".into()))?;
        let x = self.block(Gen::X(e), deg);
        if x.is_zero() {
            return Err(Error::Precondition(format!("arrow {:?} acts by zero", q.arrow_id(e))));
        }
        Ok((deg, x))
    }

    /// The closure of `Im M(x̄_e)` from the source of `e`.
    pub fn arrow_closure(&self, e: usize) -> Result<Family> {
        let (_, x) = self.require_arrow_support(e)?;
        let (s, _) = self.quiver().ends(e);
        self.reachability_closure(s, &x.column_space())
    }

    /// Whether the closure of `Im M(x̄_e)` fills the space at the source of `e`.
    pub fn condition_d_holds(&self, e: usize) -> Result<bool> {
        let (deg, _) = self.require_arrow_support(e)?;
        let (s, _) = self.quiver().ends(e);
        let fam = self.arrow_closure(e)?;
        Ok(fam.get(&(s, deg)).is_some_and(Subspace::is_full))
    }

    /// `M_e`: the submodule generated by `Im M(x̄_e)` under degree-0 generators.
    pub fn submodule_generated(&self, e: usize) -> Result<(ProperModule, ModuleMap)> {
        let fam = self.arrow_closure(e)?;
        Ok(self.submodule_on(&fam))
    }
}

/// Degree-0 morphisms are products of degree-0 generators, so `Σ_{f̄ ∈ hom⁰} M(f̄)(S)`
/// is the least generator-closed family containing `S`.
pub const CLOSURE_INTERPRETATION: &str =
    "hom^0 sums are evaluated as least subspace families closed under degree-0 generator matrices";
