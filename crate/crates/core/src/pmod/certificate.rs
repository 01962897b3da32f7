use std::collections::BTreeSet;

use super::closure::CLOSURE_INTERPRETATION;
use super::ProperModule;
use crate::error::{Error, Result};
use crate::field::ExactMatrix;
use crate::quiver::{Support, SupportLabel};

/// Evidence attached to one condition verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    None,
    /// A vertex outside the support with a nonzero space.
    Vertex(String),
    /// The supported degrees, when not exactly `{s}`.
    Degrees(Vec<i64>),
    /// An arrow outside the support acting nonzero, or a support arrow whose closure is short.
    Arrow(String),
    /// Per support arrow, the closure of its image at the arrow's source.
    Closures(Vec<ArrowClosure>),
    /// Condition (d) needs (b) to hold first.
    NotEvaluated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowClosure {
    pub arrow: String,
    pub vertex: String,
    pub space_dim: usize,
    /// Columns span the closure at `vertex`.
    pub basis: ExactMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Witness,
}

impl Verdict {
    fn pass(witness: Witness) -> Self {
        Verdict { holds: true, witness }
    }

    fn fail(witness: Witness) -> Self {
        Verdict { holds: false, witness }
    }
}

/// The four generator conditions for a label `(C, s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCertificate {
    pub label: SupportLabel,
    /// `M(L_v) = 0` off the vertices of `C`.
    pub a: Verdict,
    /// `M` nonzero and concentrated in degree `s`.
    pub b: Verdict,
    /// `M(x̄_e) = 0` off the arrows of `C`.
    pub c: Verdict,
    /// The closure of `Im M(x̄_e)` fills `M(L_w)` at the source `w` of every arrow of `C`.
    pub d: Verdict,
    pub interpretation: &'static str,
}

impl GeneratorCertificate {
    pub fn passed(&self) -> bool {
        self.a.holds && self.b.holds && self.c.holds && self.d.holds
    }

    /// The first failing condition, as `'a'..='d'`.
    pub fn first_failure(&self) -> Option<char> {
        [('a', &self.a), ('b', &self.b), ('c', &self.c), ('d', &self.d)]
            .into_iter()
            .find(|(_, v)| !v.holds)
            .map(|(c, _)| c)
    }
}

impl ProperModule {
    /// Vertex and arrow index sets of a label, validating it against the quiver.
    pub(crate) fn label_sets(&self, label: &SupportLabel) -> Result<(BTreeSet<usize>, BTreeSet<usize>)> {
        let q = self.quiver();
        match &label.support {
            Support::Vertex(v) => {
                let v = q
                    .vertex_index(v)
                    .map_err(|_| Error::InvalidLabel(format!("unknown vertex {v:?}")))?;
                Ok(([v].into(), BTreeSet::new()))
            }
            Support::Cycle(c) => {
                let mut arrows = BTreeSet::new();
                for a in &c.arrows {
                    let e = q
                        .arrow_index(a)
                        .map_err(|_| Error::InvalidLabel(format!("unknown arrow {a:?}")))?;
                    arrows.insert(e);
                }
                if !q.is_cyc_support_idx(&arrows) {
                    return Err(Error::InvalidLabel(format!("{c} is not a cycle class")));
                }
                Ok((q.arrow_vertices(&arrows), arrows))
            }
        }
    }

    /// Tests membership in the generator set of `(C, s)`.
    pub fn is_generator(&self, label: &SupportLabel) -> Result<GeneratorCertificate> {
        let q = self.quiver();
        let (verts, arrows) = self.label_sets(label)?;

        let a = match self.support_vertices().into_iter().find(|v| !verts.contains(v)) {
            Some(v) => Verdict::fail(Witness::Vertex(q.vertex_id(v).to_string())),
            None => Verdict::pass(Witness::None),
        };

        let degs = self.supp_degrees();
        let b = if degs == [label.shift] {
            Verdict::pass(Witness::None)
        } else {
            Verdict::fail(Witness::Degrees(degs))
        };

        let c = match self.supp_arrows().into_iter().find(|e| !arrows.contains(e)) {
            Some(e) => Verdict::fail(Witness::Arrow(q.arrow_id(e).to_string())),
            None => Verdict::pass(Witness::None),
        };

        let d = if !b.holds {
            Verdict::fail(Witness::NotEvaluated)
        } else {
            self.condition_d_verdict(&arrows, label.shift)?
        };

        Ok(GeneratorCertificate {
            label: label.clone(),
            a,
            b,
            c,
            d,
            interpretation: CLOSURE_INTERPRETATION,
        })
    }

    fn condition_d_verdict(&self, arrows: &BTreeSet<usize>, s: i64) -> Result<Verdict> {
        let q = self.quiver();
        let field = self.field();
        let mut closures = Vec::new();
        for &e in arrows {
            let (w, _) = q.ends(e);
            let x = self.block(crate::ginzburg::Gen::X(e), s);
            let space_dim = self.dim(w, s);
            let basis = if x.is_zero() {
                ExactMatrix::zeros(field, space_dim, 0)
            } else {
                let fam = self.reachability_closure(w, &x.column_space())?;
                fam.get(&(w, s))
                    .map(|sub| sub.basis())
                    .unwrap_or_else(|| ExactMatrix::zeros(field, space_dim, 0))
            };
            if basis.cols() < space_dim {
                return Ok(Verdict::fail(Witness::Arrow(q.arrow_id(e).to_string())));
            }
            closures.push(ArrowClosure {
                arrow: q.arrow_id(e).to_string(),
                vertex: q.vertex_id(w).to_string(),
                space_dim,
                basis,
            });
        }
        Ok(Verdict::pass(Witness::Closures(closures)))
    }

    /// The label `(C_M, s)` of a class-connected single-degree module: the vertex when
    /// no arrow acts, else the cycle class with arrow set `E(M)`.
    pub fn assigned_support(&self) -> Result<SupportLabel> {
        let q = self.quiver();
        let s = self
            .require_concentrated()?
            .ok_or_else(|| Error::Precondition("zero module has no support".into()))?;
        let classes = self.module_classes()?;
        let supported = self.support_vertices();
        let first = classes.class_of(supported[0]);
        if supported.iter().any(|&v| classes.class_of(v) != first) {
            return Err(Error::Precondition(
                "module support spans several module classes".into(),
            ));
        }
        let em: BTreeSet<usize> = self.supp_arrows().into_iter().collect();
        if em.is_empty() {
            if supported.len() != 1 {
                return Err(Error::Precondition(
                    "arrow-free module supported on several vertices".into(),
                ));
            }
            return Ok(SupportLabel::vertex(q.vertex_id(supported[0]), s));
        }
        if !q.is_cyc_support_idx(&em) {
            return Err(Error::Precondition("supported arrows do not form a cycle class".into()));
        }
        let ids: Vec<&str> = em.iter().map(|&e| q.arrow_id(e)).collect();
        Ok(SupportLabel::cycle(&ids, s))
    }
}
