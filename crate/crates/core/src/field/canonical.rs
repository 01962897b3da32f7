use super::matrix::{ExactMatrix, Subspace};
use super::poly::{charpoly, factor, poly_key_cmp, Poly};

/// One primary block of the rational canonical form: the companion matrix of `poly^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantBlock {
    pub poly: Poly,
    pub multiplicity: usize,
    pub companion: ExactMatrix,
}

/// Primary rational canonical form with an explicit similarity.
///
/// `change_of_basis⁻¹ · T · change_of_basis` is the block diagonal of the companions,
/// in the order of `blocks`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub blocks: Vec<InvariantBlock>,
    pub change_of_basis: ExactMatrix,
}

impl CanonicalForm {
    pub fn block_diagonal(&self) -> ExactMatrix {
        let field = self.change_of_basis.field();
        let parts: Vec<&ExactMatrix> = self.blocks.iter().map(|b| &b.companion).collect();
        ExactMatrix::block_diag(field, &parts)
    }
}

/// Companion matrix of a monic polynomial: ones on the subdiagonal, `−c_i` in the last column.
pub fn companion(p: &Poly) -> ExactMatrix {
    let field = p.field();
    let d = p.deg();
    let mut c = ExactMatrix::zeros(field, d, d);
    for i in 0..d {
        if i + 1 < d {
            c.set(i + 1, i, field.one());
        }
        c.set(i, d - 1, -p.coeff(i));
    }
    c
}

/// Primary blocks `(p, m, C(p^m))` of a square matrix, sorted by
/// (degree of `p`, coefficients of `p` from the constant term, `m`).
pub fn invariant_factor_blocks(t: &ExactMatrix) -> Vec<InvariantBlock> {
    canonical_form(t).blocks
}

pub fn canonical_form(t: &ExactMatrix) -> CanonicalForm {
    assert!(t.is_square(), "canonical form of a non-square matrix");
    let field = t.field();
    let n = t.rows();
    let mut chains: Vec<(Poly, usize, Vec<Vec<crate::field::Scalar>>)> = Vec::new();
    if n > 0 {
        for (p, e) in factor(&charpoly(t)) {
            let d = p.deg();
            let np = p.eval_matrix(t);
            // kernels[j] = ker p(T)^j, j = 0..=e
            let mut kernels = vec![Subspace::zero(field, n)];
            let mut power = ExactMatrix::identity(field, n);
            for _ in 0..e {
                power = power.mul(&np);
                kernels.push(Subspace::span(&power.kernel()));
            }
            let top = (1..=e)
                .rev()
                .find(|&j| kernels[j].dim() > kernels[j - 1].dim())
                .unwrap_or(0);
            let mut picked: Vec<(usize, Vec<crate::field::Scalar>)> = Vec::new();
            for j in (1..=top).rev() {
                let mut u = kernels[j - 1].clone();
                if j < top {
                    u = u.sum(&kernels[j + 1].image_under(&np));
                }
                // Generators chosen at higher levels already contribute through N·K_{j+1}.
                let basis = kernels[j].basis();
                for c in 0..basis.cols() {
                    let v = basis.column(c);
                    if u.contains_vector(&v) {
                        continue;
                    }
                    let mut orbit = vec![v.clone()];
                    for _ in 1..d {
                        let next = t.mul_vec(orbit.last().unwrap());
                        orbit.push(next);
                    }
                    let span = Subspace::span(&ExactMatrix::from_columns(field, n, &orbit));
                    u = u.sum(&span);
                    picked.push((j, v));
                }
            }
            for (j, g) in picked {
                let mut cols = vec![g];
                for _ in 1..d * j {
                    let next = t.mul_vec(cols.last().unwrap());
                    cols.push(next);
                }
                chains.push((p.clone(), j, cols));
            }
        }
    }
    chains.sort_by(|a, b| poly_key_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
    let mut all_cols = Vec::new();
    let mut blocks = Vec::new();
    for (p, m, cols) in chains {
        let pm = p.pow(m);
        blocks.push(InvariantBlock {
            companion: companion(&pm),
            poly: p,
            multiplicity: m,
        });
        all_cols.extend(cols);
    }
    CanonicalForm {
        blocks,
        change_of_basis: ExactMatrix::from_columns(field, n, &all_cols),
    }
}
