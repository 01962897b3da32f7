use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{ExactMatrix, FieldSpec};
use crate::ginzburg::{Gen, GinzburgPresentation, Path, PathExpr};
use crate::quiver::GradedQuiver;

/// Per-vertex graded dimensions: `spaces[v][t] = dim M(L_v)^t`, zero entries omitted.
pub type Spaces = Vec<BTreeMap<i64, usize>>;

/// A finite-dimensional module: graded spaces at each vertex and one matrix block per
/// generator and source degree. The block of `g` at degree `t` maps the degree-`t` piece
/// at the step's end vertex to the degree-`t + |g|` piece at its start vertex, so for an
/// arrow `e: s → t` the matrix of `x̄_e` runs `M(L_t) → M(L_s)` and that of `ȳ_e` runs
/// `M(L_s) → M(L_t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperModule {
    pres: Arc<GinzburgPresentation>,
    spaces: Spaces,
    /// Nonzero blocks only, keyed by (generator, source degree). Inverse group letters included.
    maps: BTreeMap<(Gen, i64), ExactMatrix>,
}

impl ProperModule {
    /// Validates shapes, group invertibility and the relations, filling in inverse
    /// group-letter blocks.
    pub fn new(
        pres: Arc<GinzburgPresentation>,
        spaces: Spaces,
        maps: BTreeMap<(Gen, i64), ExactMatrix>,
    ) -> Result<Self> {
        let q = pres.quiver().clone();
        if spaces.len() != q.num_vertices() {
            return Err(Error::InvalidModule(format!(
                "{} vertex spaces for {} vertices",
                spaces.len(),
                q.num_vertices()
            )));
        }
        let spaces: Spaces = spaces
            .into_iter()
            .map(|m| m.into_iter().filter(|&(_, d)| d > 0).collect())
            .collect();
        let mut m = ProperModule {
            pres,
            spaces,
            maps: BTreeMap::new(),
        };
        let mut inverse_given = BTreeMap::new();
        for ((g, t), block) in maps {
            if block.field() != q.field() {
                return Err(Error::FieldMismatch(format!(
                    "block of {} over {}, module over {}",
                    g.id(&q),
                    block.field(),
                    q.field()
                )));
            }
            let (rows, cols) = m.block_shape(g, t);
            if (block.rows(), block.cols()) != (rows, cols) {
                return Err(Error::Shape(format!(
                    "block of {} at source degree {t} is {}x{}, expected {rows}x{cols}",
                    g.id(&q),
                    block.rows(),
                    block.cols()
                )));
            }
            if let Gen::G { inverse: true, .. } = g {
                inverse_given.insert((g, t), block);
                continue;
            }
            if !block.is_zero() {
                m.maps.insert((g, t), block);
            }
        }
        for v in 0..q.num_vertices() {
            let Some(group) = q.group(v) else { continue };
            for gen in 0..group.generators.len() {
                let g = Gen::G {
                    vertex: v,
                    gen,
                    inverse: false,
                };
                let gi = Gen::G {
                    vertex: v,
                    gen,
                    inverse: true,
                };
                for (&t, &d) in &m.spaces[v] {
                    let block = m.block(g, t);
                    let inv = block.inverse().ok_or_else(|| Error::NonInvertibleGenerator(g.id(&q)))?;
                    if let Some(given) = inverse_given.get(&(gi, t)) {
                        if *given != inv {
                            return Err(Error::InvalidModule(format!(
                                "block of {} is not the inverse of {}",
                                gi.id(&q),
                                g.id(&q)
                            )));
                        }
                    }
                    debug_assert_eq!(inv.rows(), d);
                    m.maps.insert((gi, t), inv);
                }
            }
        }
        m.check_relations()?;
        Ok(m)
    }

    /// [`ProperModule::new`] with vertices and generators named by identifier:
    /// spaces as `(vertex, degree, dim)` and blocks as `(generator, source degree, matrix)`.
    pub fn from_ids(
        pres: Arc<GinzburgPresentation>,
        spaces: &[(&str, i64, usize)],
        maps: Vec<(&str, i64, ExactMatrix)>,
    ) -> Result<Self> {
        let q = pres.quiver();
        let mut sp: Spaces = vec![BTreeMap::new(); q.num_vertices()];
        for &(v, t, d) in spaces {
            *sp[q.vertex_index(v)?].entry(t).or_insert(0) += d;
        }
        let mut blocks = BTreeMap::new();
        for (g, t, m) in maps {
            let g = Gen::parse(q, g)?;
            if blocks.insert((g, t), m).is_some() {
                return Err(Error::InvalidModule(format!(
                    "duplicate block for {} at degree {t}",
                    g.id(q)
                )));
            }
        }
        ProperModule::new(pres, sp, blocks)
    }

    /// Assembles a module without validation; callers guarantee the invariants.
    pub(crate) fn from_parts(
        pres: Arc<GinzburgPresentation>,
        spaces: Spaces,
        maps: BTreeMap<(Gen, i64), ExactMatrix>,
    ) -> Self {
        let spaces = spaces
            .into_iter()
            .map(|m| m.into_iter().filter(|&(_, d)| d > 0).collect())
            .collect();
        let maps = maps.into_iter().filter(|(_, b)| !b.is_zero()).collect();
        ProperModule { pres, spaces, maps }
    }

    pub fn zero(pres: Arc<GinzburgPresentation>) -> Self {
        let nv = pres.quiver().num_vertices();
        ProperModule {
            pres,
            spaces: vec![BTreeMap::new(); nv],
            maps: BTreeMap::new(),
        }
    }

    /// Re-runs every invariant check on an existing value.
    pub fn check(&self) -> Result<()> {
        let q = self.quiver();
        for (&(g, t), block) in &self.maps {
            if block.field() != q.field() || (block.rows(), block.cols()) != self.block_shape(g, t) {
                return Err(Error::Shape(format!("block of {} at degree {t}", g.id(q))));
            }
        }
        for v in 0..q.num_vertices() {
            let Some(group) = q.group(v) else { continue };
            for gen in 0..group.generators.len() {
                let g = Gen::G {
                    vertex: v,
                    gen,
                    inverse: false,
                };
                let gi = Gen::G {
                    vertex: v,
                    gen,
                    inverse: true,
                };
                for &t in self.spaces[v].keys() {
                    if !self.block(g, t).mul(&self.block(gi, t)).is_identity() {
                        return Err(Error::NonInvertibleGenerator(g.id(q)));
                    }
                }
            }
        }
        self.check_relations()
    }

    fn check_relations(&self) -> Result<()> {
        let q = self.quiver();
        for v in 0..q.num_vertices() {
            for &t in self.spaces[v].keys() {
                let r = self.eval_expr(self.pres.dh(v), t);
                if !r.is_zero() {
                    return Err(Error::RelationFailure {
                        relation: format!("d(h_{})", q.vertex_id(v)),
                        vertex: q.vertex_id(v).to_string(),
                        degree: t,
                        residual: r.to_string(),
                    });
                }
            }
            let Some(group) = q.group(v) else { continue };
            for (k, word) in group.relators().iter().enumerate() {
                if word.is_empty() {
                    continue;
                }
                let letters: Vec<Gen> = word
                    .iter()
                    .map(|&(gen, inverse)| Gen::G {
                        vertex: v,
                        gen,
                        inverse,
                    })
                    .collect();
                let path = Path::from_letters(q, letters)?;
                for (&t, &d) in &self.spaces[v] {
                    let r = self.eval_path(&path, t);
                    if !r.is_identity() {
                        let residual = r.sub(&ExactMatrix::identity(q.field(), d));
                        return Err(Error::RelationFailure {
                            relation: format!("group relation {k} at {}", q.vertex_id(v)),
                            vertex: q.vertex_id(v).to_string(),
                            degree: t,
                            residual: residual.to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn presentation(&self) -> &Arc<GinzburgPresentation> {
        &self.pres
    }

    pub fn quiver(&self) -> &GradedQuiver {
        self.pres.quiver()
    }

    pub fn field(&self) -> FieldSpec {
        self.pres.field()
    }

    pub fn spaces(&self) -> &Spaces {
        &self.spaces
    }

    pub fn dim(&self, v: usize, t: i64) -> usize {
        self.spaces[v].get(&t).copied().unwrap_or(0)
    }

    pub fn vertex_dim(&self, v: usize) -> usize {
        self.spaces[v].values().sum()
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().flat_map(|m| m.values()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Nonzero blocks, keyed by (generator, source degree).
    pub fn blocks(&self) -> &BTreeMap<(Gen, i64), ExactMatrix> {
        &self.maps
    }

    /// `(rows, cols)` of the block of `g` at source degree `t`.
    pub fn block_shape(&self, g: Gen, t: i64) -> (usize, usize) {
        let q = self.quiver();
        let (a, b) = g.ends(q);
        (self.dim(a, t + g.degree(q)), self.dim(b, t))
    }

    /// The block of `g` at source degree `t` (zero when absent).
    pub fn block(&self, g: Gen, t: i64) -> ExactMatrix {
        self.maps.get(&(g, t)).cloned().unwrap_or_else(|| {
            let (r, c) = self.block_shape(g, t);
            ExactMatrix::zeros(self.field(), r, c)
        })
    }

    /// Sorted degrees where some vertex space is nonzero.
    pub fn supp_degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self.spaces.iter().flat_map(|m| m.keys().copied()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// The single supported degree, if the module is nonzero and concentrated.
    pub fn concentrated_degree(&self) -> Option<i64> {
        match self.supp_degrees().as_slice() {
            [s] => Some(*s),
            _ => None,
        }
    }

    pub(crate) fn require_concentrated(&self) -> Result<Option<i64>> {
        match self.supp_degrees().as_slice() {
            [] => Ok(None),
            [s] => Ok(Some(*s)),
            ds => Err(Error::Precondition(format!(
                "module must be concentrated in one degree, found degrees {ds:?}"
            ))),
        }
    }

    /// Vertices with a nonzero space.
    pub fn support_vertices(&self) -> Vec<usize> {
        (0..self.spaces.len()).filter(|&v| !self.spaces[v].is_empty()).collect()
    }

    /// `E(M)`: arrows whose `x̄`-matrix is nonzero in some degree.
    pub fn supp_arrows(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .maps
            .keys()
            .filter_map(|(g, _)| match g {
                Gen::X(e) => Some(*e),
                _ => None,
            })
            .collect();
        out.dedup();
        out
    }

    /// `M(p̄)` from the degree-`t` piece at `p.tgt`: the letters act last-traversed last,
    /// with the Koszul sign `(−1)^{Σ_{i<j} |g_i||g_j|}`.
    pub fn eval_path(&self, p: &Path, t: i64) -> ExactMatrix {
        let q = self.quiver();
        let field = self.field();
        if p.letters.is_empty() {
            return ExactMatrix::identity(field, self.dim(p.src, t));
        }
        let mut acc = ExactMatrix::identity(field, self.dim(p.tgt, t));
        let mut deg = t;
        for g in &p.letters {
            let b = self.block(*g, deg);
            acc = b.mul(&acc);
            deg += g.degree(q);
        }
        let degs: Vec<i64> = p.letters.iter().map(|g| g.degree(q)).collect();
        let mut exponent = 0;
        let mut suffix = 0;
        for d in degs.iter().rev() {
            exponent += d * suffix;
            suffix += d;
        }
        if exponent.rem_euclid(2) == 1 {
            acc = acc.scale(&field.from_i64(-1));
        }
        acc
    }

    /// `M(x)` from degree `t` at the common target of a homogeneous expression.
    pub fn eval_expr(&self, x: &PathExpr, t: i64) -> ExactMatrix {
        let mut acc: Option<ExactMatrix> = None;
        for (p, c) in x.terms() {
            let m = self.eval_path(p, t).scale(c);
            acc = Some(match acc {
                None => m,
                Some(a) => a.add(&m),
            });
        }
        acc.unwrap_or_else(|| ExactMatrix::zeros(self.field(), 0, 0))
    }

    /// Generators acting in degree 0 (degree-0 arrows and group letters).
    pub fn degree_zero_generators(&self) -> Vec<Gen> {
        let q = self.quiver();
        self.pres
            .generators()
            .into_iter()
            .filter(|g| !g.is_h() && g.degree(q) == 0)
            .collect()
    }

    pub(crate) fn same_presentation(&self, other: &ProperModule) -> Result<()> {
        if Arc::ptr_eq(&self.pres, &other.pres) || self.pres == other.pres {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    /// Per-vertex, per-degree dimension table.
    pub fn dim_vector(&self) -> BTreeMap<(usize, i64), usize> {
        let mut out = BTreeMap::new();
        for (v, m) in self.spaces.iter().enumerate() {
            for (&t, &d) in m {
                out.insert((v, t), d);
            }
        }
        out
    }
}
