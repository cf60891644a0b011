//! Dense exact matrices and canonical subspaces of F^n.
//!
//! A [`Subspace`] always stores its basis in reduced row echelon form with
//! zero rows removed. RREF is unique, so two subspaces are equal exactly when
//! their stored bases are equal, and the derived `Ord` gives the canonical
//! order used for every deterministic choice downstream (dimension first,
//! then the basis entries read row by row).

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::arith::{Field, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from row vectors; `cols` fixes the width when `rows`
    /// is empty.
    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            check_vector(field, cols, r)?;
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            check_vector(field, rows, c)?;
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { data, ..*self }
    }

    /// `M · v` for a column vector `v`.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix");
        (0..self.rows)
            .map(|r| dot(self.row(r), v, self.field))
            .collect()
    }

    /// Reduced row echelon form together with its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.row_vectors();
        let pivots = rref_in_place(&mut rows, self.cols);
        let m = Matrix::from_rows(self.field, self.cols, &rows).expect("same shape");
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vectors();
        rref_in_place(&mut rows, self.cols).len()
    }

    /// `{x : M x = 0}` as a subspace of F^cols.
    pub fn kernel(&self) -> Subspace {
        let mut rows = self.row_vectors();
        let pivots = rref_in_place(&mut rows, self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut x = vec![self.field.zero(); self.cols];
                x[f] = self.field.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = -&rows[r][f];
                }
                x
            })
            .collect::<Vec<_>>();
        Subspace::span(self.field, self.cols, &basis).expect("well-formed kernel")
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self).expect("square");
        }
        acc
    }

    /// Stacks matrices vertically; all must have `cols` columns.
    pub fn vstack(field: Field, cols: usize, parts: &[Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }
}

fn check_vector(field: Field, len: usize, v: &[Scalar]) -> Result<()> {
    if v.len() != len {
        return Err(Error::DimensionMismatch {
            expected: len,
            found: v.len(),
        });
    }
    if let Some(bad) = v.iter().find(|s| s.field() != field) {
        return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
    }
    Ok(())
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar], field: Field) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

pub(crate) fn axpy(y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = &*yi + &(a * xi);
        }
    }
}

/// Gauss–Jordan elimination; drops zero rows and returns pivot columns.
fn rref_in_place(rows: &mut Vec<Vec<Scalar>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -&row[c];
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A subspace of F^n held in canonical RREF form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

/// Canonical basis of the span of `vectors` inside F^n.
pub fn canonical_basis(vectors: &[Vec<Scalar>], ambient_dim: usize, field: Field) -> Result<Subspace> {
    Subspace::span(field, ambient_dim, vectors)
}

/// Sum and intersection of two subspaces of the same ambient space.
pub fn span_sum_intersect(u: &Subspace, v: &Subspace) -> Result<(Subspace, Subspace)> {
    u.check_same_ambient(v)?;
    // Zassenhaus: row reduce [u|u ; v|0].
    let n = u.ambient;
    let field = u.field();
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(u.dim() + v.dim());
    for r in u.rows() {
        let mut x = r.to_vec();
        x.extend_from_slice(r);
        rows.push(x);
    }
    for r in v.rows() {
        let mut x = r.to_vec();
        x.extend(std::iter::repeat(field.zero()).take(n));
        rows.push(x);
    }
    let pivots = rref_in_place(&mut rows, 2 * n);
    let mut sum = Vec::new();
    let mut inter = Vec::new();
    for (row, &p) in rows.iter().zip(&pivots) {
        if p < n {
            sum.push(row[..n].to_vec());
        } else {
            inter.push(row[n..].to_vec());
        }
    }
    Ok((
        Subspace::span(field, n, &sum)?,
        Subspace::span(field, n, &inter)?,
    ))
}

impl Subspace {
    pub fn span(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Subspace> {
        for v in vectors {
            check_vector(field, ambient, v)?;
        }
        let mut rows = vectors.to_vec();
        let pivots = rref_in_place(&mut rows, ambient);
        Ok(Subspace {
            ambient,
            basis: Matrix::from_rows(field, ambient, &rows)?,
            pivots,
        })
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> + '_ {
        (0..self.dim()).map(move |r| self.basis.row(r))
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    /// Non-pivot columns: the standard vectors spanning the canonical
    /// complement.
    pub fn complement_columns(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| self.pivots.binary_search(c).is_err())
            .collect()
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(
                self.field().to_string(),
                other.field().to_string(),
            ));
        }
        Ok(())
    }

    /// `v` minus its component along the pivot rows; zero iff `v` lies in
    /// the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if !out[p].is_zero() {
                let f = -&out[p];
                axpy(&mut out, &f, self.basis.row(r));
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.dim() <= self.dim() && other.rows().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.row_vectors();
        rows.extend(other.row_vectors());
        Subspace::span(self.field(), self.ambient, &rows).expect("same ambient")
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.contains_subspace(other) {
            return other.clone();
        }
        if other.contains_subspace(self) {
            return self.clone();
        }
        span_sum_intersect(self, other).expect("same ambient").1
    }

    /// Coordinates of `v + W` in the canonical complement spanned by the
    /// non-pivot standard vectors.
    pub fn coords_mod(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        check_vector(self.field(), self.ambient, v)?;
        let r = self.reduce(v);
        Ok(self.complement_columns().into_iter().map(|c| r[c].clone()).collect())
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coords_in(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Image under the linear map `x ↦ M x`.
    pub fn image(&self, m: &Matrix) -> Subspace {
        let rows: Vec<Vec<Scalar>> = self.rows().map(|r| m.apply(r)).collect();
        Subspace::span(self.field(), m.rows(), &rows).expect("matching shape")
    }

    /// Entries of the canonical basis, row by row.
    pub fn entries(&self) -> impl Iterator<Item = &Scalar> + '_ {
        self.rows().flatten()
    }

    /// Human-readable form such as `span(e0 + e1, x)`.
    pub fn render(&self, labels: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.rows().map(|r| render_vector(r, labels)).collect();
        format!("span({})", parts.join(", "))
    }
}

/// Renders `Σ c_i b_i` using basis labels, e.g. `2*x + y`.
pub fn render_vector(v: &[Scalar], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, label) in v.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        if c.is_one() {
            out.push_str(label);
        } else {
            let _ = write!(out, "{c}*{label}");
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then(self.dim().cmp(&other.dim()))
            .then_with(|| self.entries().cmp(other.entries()))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
