use std::fmt;

use super::scalar::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// A dense row-major matrix over a [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows, rejecting ragged input and foreign scalars.
    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Shape(format!(
                    "ragged row of length {} (expected {c})",
                    row.len()
                )));
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch(format!("entry {s} is not in {field}")));
                }
                data.push(s);
            }
        }
        Ok(ExactMatrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Builds a `rows x cols` matrix; an empty row list with `cols > 0` is allowed.
    pub fn from_rows_shaped(field: FieldSpec, rows: usize, cols: usize, entries: Vec<Vec<Scalar>>) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape(format!(
                "expected a {rows}x{cols} block, got {} rows",
                entries.len()
            )));
        }
        let mut m = Self::from_rows(field, entries)?;
        m.rows = rows;
        m.cols = cols;
        Ok(m)
    }

    /// Integer literal convenience constructor.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged literal");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(*v));
            }
        }
        m
    }

    pub fn from_columns(field: FieldSpec, rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, s) in col.iter().enumerate() {
                m.set(i, j, s.clone());
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Matrix product; panics on incompatible shapes or fields.
    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.field, rhs.field, "matrix fields differ");
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        ExactMatrix { data, ..self.clone() }
    }

    pub fn sub(&self, rhs: &ExactMatrix) -> ExactMatrix {
        self.add(&rhs.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> ExactMatrix {
        let data = self.data.iter().map(|a| a * c).collect();
        ExactMatrix { data, ..self.clone() }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn hstack(field: FieldSpec, rows: usize, parts: &[&ExactMatrix]) -> ExactMatrix {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..p.cols {
                    out.set(i, off + j, p.get(i, j).clone());
                }
            }
            off += p.cols;
        }
        out
    }

    pub fn block_diag(field: FieldSpec, parts: &[&ExactMatrix]) -> ExactMatrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            for i in 0..p.rows {
                for j in 0..p.cols {
                    out.set(r0 + i, c0 + j, p.get(i, j).clone());
                }
            }
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> ExactMatrix {
        let mut out = Self::zeros(self.field, self.rows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> ExactMatrix {
        let mut out = Self::zeros(self.field, rows.len(), self.cols);
        for (ii, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ii, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> ExactMatrix {
        assert!(self.is_square());
        let mut acc = Self::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Reduced row echelon form; the pivot in each column is the first nonzero entry.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space, one column per free variable (RREF order).
    pub fn kernel(&self) -> ExactMatrix {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, self.field.one());
            for (r, &p) in pivots.iter().enumerate() {
                out.set(p, k, -matrix.get(r, f));
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::hstack(self.field, n, &[self, &Self::identity(self.field, n)]);
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(matrix.select_columns(&cols))
    }

    /// Solves `self * X = rhs`, returning one solution when the system is consistent.
    pub fn solve(&self, rhs: &ExactMatrix) -> Option<ExactMatrix> {
        assert_eq!(self.rows, rhs.rows);
        let aug = Self::hstack(self.field, self.rows, &[self, rhs]);
        let Rref { matrix, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.field, self.cols, rhs.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, matrix.get(r, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Canonical basis (as columns) of the column space.
    pub fn column_space(&self) -> ExactMatrix {
        let Rref { matrix, pivots } = self.transpose().rref();
        let rows: Vec<usize> = (0..pivots.len()).collect();
        matrix.select_rows(&rows).transpose()
    }

    /// Determinant by elimination.
    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().unwrap();
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Basis columns for the sum of the column spaces of `mats`, all of which
/// must have `ambient` rows. The basis is RREF-canonical.
pub fn image_sum_basis(field: FieldSpec, ambient: usize, mats: &[ExactMatrix]) -> Result<ExactMatrix> {
    for m in mats {
        if m.field() != field {
            return Err(Error::FieldMismatch(format!("{} matrix in a {field} sum", m.field())));
        }
        if m.rows() != ambient {
            return Err(Error::Shape(format!(
                "matrix with {} rows in an ambient space of dimension {ambient}",
                m.rows()
            )));
        }
    }
    let refs: Vec<&ExactMatrix> = mats.iter().collect();
    Ok(ExactMatrix::hstack(field, ambient, &refs).column_space())
}

/// A subspace of `field^ambient`, stored as the nonzero rows of an RREF matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    rows: ExactMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: ExactMatrix::zeros(field, 0, ambient),
            pivots: vec![],
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: ExactMatrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// The span of the columns of `m`.
    pub fn span(m: &ExactMatrix) -> Self {
        let Rref { matrix, pivots } = m.transpose().rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        Subspace {
            field: m.field(),
            ambient: m.rows(),
            rows: matrix.select_rows(&keep),
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis(&self) -> ExactMatrix {
        self.rows.transpose()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let b = ExactMatrix::hstack(self.field, self.ambient, &[&self.basis(), &other.basis()]);
        Subspace::span(&b)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// The image of this subspace under `m` (an `r x ambient` matrix).
    pub fn image_under(&self, m: &ExactMatrix) -> Subspace {
        Subspace::span(&m.mul(&self.basis()))
    }

    /// Subtracts the pivot components of `v`, leaving a representative that
    /// vanishes on every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = out[p].clone();
            if c.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = &*o - &(&c * self.rows.get(r, j));
            }
        }
        out
    }

    /// Indices of the standard basis vectors spanning the canonical complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Coordinates of `v + self` in the quotient basis given by the canonical complement.
    pub fn quotient_coordinates(&self, v: &[Scalar]) -> Vec<Scalar> {
        let red = self.reduce(v);
        self.complement_indices().into_iter().map(|c| red[c].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn rref_examples() {
        let a = ExactMatrix::from_i64(Q, &[&[1, 2], &[2, 4]]);
        let r = a.rref();
        assert_eq!(r.matrix, ExactMatrix::from_i64(Q, &[&[1, 2], &[0, 0]]));
        assert_eq!(r.pivots, vec![0]);

        let i3 = ExactMatrix::identity(Q, 3);
        let r = i3.rref();
        assert_eq!(r.matrix, i3);
        assert_eq!(r.pivots, vec![0, 1, 2]);

        let f5 = FieldSpec::Prime(5);
        let n = ExactMatrix::from_i64(f5, &[&[0, 1], &[0, 0]]);
        let r = n.rref();
        assert_eq!(r.matrix, n);
        assert_eq!(r.pivots, vec![1]);
    }

    #[test]
    fn mixed_fields_rejected() {
        let rows = vec![vec![Q.one(), FieldSpec::Prime(5).one()]];
        assert!(matches!(ExactMatrix::from_rows(Q, rows), Err(Error::FieldMismatch(_))));
        let a = ExactMatrix::identity(Q, 2);
        let b = ExactMatrix::identity(FieldSpec::Prime(3), 2);
        assert!(image_sum_basis(Q, 2, &[a, b]).is_err());
    }

    #[test]
    fn image_sum_examples() {
        let e1 = ExactMatrix::from_i64(Q, &[&[1], &[0]]);
        let e2 = ExactMatrix::from_i64(Q, &[&[0], &[1]]);
        assert_eq!(image_sum_basis(Q, 2, &[e1, e2]).unwrap().cols(), 2);
        let u = ExactMatrix::from_i64(Q, &[&[1], &[1]]);
        let v = ExactMatrix::from_i64(Q, &[&[2], &[2]]);
        let b = image_sum_basis(Q, 2, &[u, v]).unwrap();
        assert_eq!(b, ExactMatrix::from_i64(Q, &[&[1], &[1]]));
        let empty = image_sum_basis(Q, 3, &[]).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (3, 0));
        assert!(image_sum_basis(Q, 3, &[ExactMatrix::identity(Q, 2)]).is_err());
    }

    #[test]
    fn kernel_inverse_solve() {
        let a = ExactMatrix::from_i64(Q, &[&[1, 2, 3], &[2, 4, 6]]);
        let k = a.kernel();
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
        let b = ExactMatrix::from_i64(Q, &[&[2, 1], &[1, 1]]);
        let inv = b.inverse().unwrap();
        assert!(b.mul(&inv).is_identity());
        assert!(ExactMatrix::from_i64(Q, &[&[1, 2], &[2, 4]]).inverse().is_none());
        let rhs = ExactMatrix::from_i64(Q, &[&[3], &[2]]);
        let x = b.solve(&rhs).unwrap();
        assert_eq!(b.mul(&x), rhs);
        assert_eq!(b.determinant(), Q.from_i64(1));
    }

    #[test]
    fn subspace_quotient_coordinates() {
        let s = Subspace::span(&ExactMatrix::from_i64(Q, &[&[1], &[1], &[0]]));
        assert_eq!(s.complement_indices(), vec![1, 2]);
        let v = vec![Q.from_i64(2), Q.from_i64(5), Q.from_i64(7)];
        assert_eq!(s.quotient_coordinates(&v), vec![Q.from_i64(3), Q.from_i64(7)]);
        assert!(s.contains_vector(&[Q.from_i64(3), Q.from_i64(3), Q.zero()]));
    }
}
