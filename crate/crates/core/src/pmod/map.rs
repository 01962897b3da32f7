use std::collections::BTreeMap;

use super::ProperModule;
use crate::error::{Error, Result};
use crate::field::ExactMatrix;
use crate::ginzburg::sign_pow;

/// A graded map of modules. The block at `(v, t)` runs from the source's degree-`t` piece
/// at `v` to the target's degree-`t + degree` piece; missing blocks are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub degree: i64,
    pub blocks: BTreeMap<(usize, i64), ExactMatrix>,
}

impl ModuleMap {
    pub fn zero(degree: i64) -> Self {
        ModuleMap {
            degree,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(m: &ProperModule) -> Self {
        let mut blocks = BTreeMap::new();
        for (v, sp) in m.spaces().iter().enumerate() {
            for (&t, &d) in sp {
                blocks.insert((v, t), ExactMatrix::identity(m.field(), d));
            }
        }
        ModuleMap { degree: 0, blocks }
    }

    /// The block at `(v, t)`, shaped by the given source and target.
    pub fn block(&self, source: &ProperModule, target: &ProperModule, v: usize, t: i64) -> ExactMatrix {
        self.blocks
            .get(&(v, t))
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zeros(source.field(), target.dim(v, t + self.degree), source.dim(v, t)))
    }

    /// Checks block shapes and graded commutation `T ∘ M(ḡ) = (−1)^{k|g|} N(ḡ) ∘ T`.
    pub fn check(&self, source: &ProperModule, target: &ProperModule) -> Result<()> {
        source.same_presentation(target)?;
        let q = source.quiver();
        for (&(v, t), b) in &self.blocks {
            let shape = (target.dim(v, t + self.degree), source.dim(v, t));
            if (b.rows(), b.cols()) != shape {
                return Err(Error::Shape(format!(
                    "map block at ({}, {t}) is {}x{}, expected {}x{}",
                    q.vertex_id(v),
                    b.rows(),
                    b.cols(),
                    shape.0,
                    shape.1
                )));
            }
        }
        let field = source.field();
        for g in source.presentation().generators() {
            let (a, b) = g.ends(q);
            let dg = g.degree(q);
            let sign = field.from_i64(sign_pow(self.degree * dg));
            for &t in source.spaces()[b].keys() {
                let lhs = self.block(source, target, a, t + dg).mul(&source.block(g, t));
                let rhs = target
                    .block(g, t + self.degree)
                    .mul(&self.block(source, target, b, t))
                    .scale(&sign);
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "map does not commute with {} at degree {t}",
                        g.id(q)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(
        &self,
        other: &ModuleMap,
        source: &ProperModule,
        mid: &ProperModule,
        target: &ProperModule,
    ) -> ModuleMap {
        let mut blocks = BTreeMap::new();
        for (v, sp) in source.spaces().iter().enumerate() {
            for &t in sp.keys() {
                let b = self
                    .block(mid, target, v, t + other.degree)
                    .mul(&other.block(source, mid, v, t));
                if !b.is_zero() {
                    blocks.insert((v, t), b);
                }
            }
        }
        ModuleMap {
            degree: self.degree + other.degree,
            blocks,
        }
    }

    /// True iff every block has full column rank.
    pub fn is_injective(&self, source: &ProperModule, target: &ProperModule) -> bool {
        source.dim_vector().into_keys().all(|(v, t)| {
            let b = self.block(source, target, v, t);
            b.rank() == b.cols()
        })
    }

    /// True iff every block is square and invertible.
    pub fn is_isomorphism(&self, source: &ProperModule, target: &ProperModule) -> bool {
        self.degree == 0
            && source.dim_vector() == target.dim_vector()
            && source
                .dim_vector()
                .into_keys()
                .all(|(v, t)| self.block(source, target, v, t).inverse().is_some())
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(ExactMatrix::is_zero)
    }
}

/// A basis of the degree-0 module maps `M → N` commuting strictly with every generator.
pub fn hom0_space(m: &ProperModule, n: &ProperModule) -> Result<Vec<ModuleMap>> {
    m.same_presentation(n)?;
    let q = m.quiver();
    let field = m.field();
    // Unknown blocks: one per (vertex, degree) where both pieces are nonzero.
    let mut offsets = BTreeMap::new();
    let mut nvars = 0;
    for ((v, t), dm) in m.dim_vector() {
        let dn = n.dim(v, t);
        if dn > 0 {
            offsets.insert((v, t), (nvars, dn, dm));
            nvars += dn * dm;
        }
    }
    if nvars == 0 {
        return Ok(vec![]);
    }
    let mut rows: Vec<Vec<crate::field::Scalar>> = Vec::new();
    for g in m.presentation().generators() {
        let (a, b) = g.ends(q);
        let dg = g.degree(q);
        // N(ḡ) T_b − T_a M(ḡ) = 0 on the degree-t piece at b.
        let tset: Vec<i64> = m.spaces()[b]
            .keys()
            .chain(n.spaces()[b].keys())
            .copied()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        for t in tset {
            let mg = m.block(g, t);
            let ng = n.block(g, t);
            let out_rows = n.dim(a, t + dg);
            let in_cols = m.dim(b, t);
            for i in 0..out_rows {
                for j in 0..in_cols {
                    let mut row = vec![field.zero(); nvars];
                    if let Some(&(off, _, dm_b)) = offsets.get(&(b, t)) {
                        // (N(ḡ) T_b)[i][j] = Σ_k N[i][k] T_b[k][j]
                        for k in 0..ng.cols() {
                            let c = ng.get(i, k);
                            if !c.is_zero() {
                                row[off + k * dm_b + j] = &row[off + k * dm_b + j] + c;
                            }
                        }
                    }
                    if let Some(&(off, _, dm_a)) = offsets.get(&(a, t + dg)) {
                        // (T_a M(ḡ))[i][j] = Σ_k T_a[i][k] M[k][j]
                        for k in 0..mg.rows() {
                            let c = mg.get(k, j);
                            if !c.is_zero() {
                                row[off + i * dm_a + k] = &row[off + i * dm_a + k] - c;
                            }
                        }
                    }
                    if row.iter().any(|c| !c.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        ExactMatrix::identity(field, nvars)
    } else {
        ExactMatrix::from_rows(field, rows)?.kernel()
    };
    let mut out = Vec::with_capacity(kernel.cols());
    for c in 0..kernel.cols() {
        let col = kernel.column(c);
        let mut blocks = BTreeMap::new();
        for (&(v, t), &(off, dn, dm)) in &offsets {
            let mut b = ExactMatrix::zeros(field, dn, dm);
            for i in 0..dn {
                for j in 0..dm {
                    b.set(i, j, col[off + i * dm + j].clone());
                }
            }
            if !b.is_zero() {
                blocks.insert((v, t), b);
            }
        }
        out.push(ModuleMap { degree: 0, blocks });
    }
    Ok(out)
}
