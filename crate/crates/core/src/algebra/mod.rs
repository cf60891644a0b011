//! Lie algebras given by structure constants, and every construction that
//! only needs linear algebra: series, centralizers, closures, quotients,
//! semidirect products, `exp(ad x)` and Fitting decompositions.

mod automorphism;
mod construct;
mod induced;
mod nilradical;
mod series;

pub use automorphism::{exp_ad, fitting_decomposition, is_automorphism};
pub use construct::{
    derivation_algebra, direct_sum, extend_by_derivation, minimal_polynomial, semidirect_type1,
};
pub use induced::{InducedAlgebra, InducedMode};
pub use nilradical::nilradical_char0;
pub use series::{SeriesChain, SeriesKind, StructureFlags};

use crate::arith::{Field, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{axpy, Matrix, Subspace};

/// A finite-dimensional Lie algebra over `field` with basis `b_0..b_{n-1}`.
///
/// Only the brackets `[b_i, b_j]` with `i < j` are stored; the rest follow
/// from antisymmetry. Construction checks the Jacobi identity on every basis
/// triple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieAlgebra {
    field: Field,
    labels: Vec<String>,
    table: Vec<Vec<Scalar>>,
}

/// One `[left, right] = Σ c·label` line of input, keyed by labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketAssignment {
    pub left: String,
    pub right: String,
    pub terms: Vec<(Scalar, String)>,
}

impl BracketAssignment {
    pub fn new(left: &str, right: &str, terms: Vec<(Scalar, String)>) -> Self {
        BracketAssignment {
            left: left.to_string(),
            right: right.to_string(),
            terms,
        }
    }
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("b{i}")).collect()
}

/// Label-keyed constructor: resolves labels, completes by antisymmetry and
/// checks Jacobi.
pub fn validate_algebra(
    field: Field,
    labels: Vec<String>,
    assignments: &[BracketAssignment],
) -> Result<LieAlgebra> {
    let index = |name: &str| {
        labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    };
    let n = labels.len();
    let mut indexed = Vec::with_capacity(assignments.len());
    for a in assignments {
        let (i, j) = (index(&a.left)?, index(&a.right)?);
        let mut v = vec![field.zero(); n];
        for (c, name) in &a.terms {
            if c.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), c.field().to_string()));
            }
            let k = index(name)?;
            v[k] = &v[k] + c;
        }
        indexed.push((i, j, v));
    }
    LieAlgebra::new(field, labels, &indexed)
}

impl LieAlgebra {
    /// Index-keyed constructor. Each unordered pair may be assigned at most
    /// once, in either orientation; self-brackets must be zero.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        brackets: &[(usize, usize, Vec<Scalar>)],
    ) -> Result<LieAlgebra> {
        let n = labels.len();
        for (k, l) in labels.iter().enumerate() {
            if !is_identifier(l) {
                return Err(Error::BadParameters(format!("invalid basis label {l:?}")));
            }
            if labels[..k].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut table = vec![vec![field.zero(); n]; n * n.saturating_sub(1) / 2];
        let mut seen = vec![false; table.len()];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: i.max(j) + 1,
                });
            }
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            if i == j {
                if v.iter().any(|c| !c.is_zero()) {
                    return Err(Error::SelfBracketNonzero(labels[i].clone()));
                }
                continue;
            }
            let (lo, hi, sign) = if i < j { (i, j, false) } else { (j, i, true) };
            let idx = pair_index(n, lo, hi);
            if seen[idx] {
                return Err(Error::DuplicateBracket(labels[i].clone(), labels[j].clone()));
            }
            seen[idx] = true;
            table[idx] = if sign {
                v.iter().map(|c| -c).collect()
            } else {
                v.clone()
            };
        }
        let l = LieAlgebra {
            field,
            labels,
            table,
        };
        l.check_jacobi()?;
        Ok(l)
    }

    pub fn abelian(field: Field, n: usize) -> LieAlgebra {
        LieAlgebra {
            field,
            labels: default_labels(n),
            table: vec![vec![field.zero(); n]; n * n.saturating_sub(1) / 2],
        }
    }

    /// Renames the basis; labels must be distinct identifiers.
    pub fn with_labels(&self, labels: Vec<String>) -> Result<LieAlgebra> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: labels.len(),
            });
        }
        let brackets = self.nonzero_brackets();
        LieAlgebra::new(self.field, labels, &brackets)
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (bi, bj, bk) = (self.unit(i), self.unit(j), self.unit(k));
                    let mut s = self.bracket(&self.basis_bracket(i, j), &bk);
                    let t = self.bracket(&self.basis_bracket(j, k), &bi);
                    let u = self.bracket(&self.basis_bracket(k, i), &bj);
                    for (a, (b, c)) in s.iter_mut().zip(t.iter().zip(&u)) {
                        *a = &(&*a + b) + c;
                    }
                    if s.iter().any(|c| !c.is_zero()) {
                        return Err(Error::JacobiViolation(
                            self.labels[i].clone(),
                            self.labels[j].clone(),
                            self.labels[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    /// `[b_i, b_j]` for any `i, j`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Scalar> {
        use std::cmp::Ordering::*;
        let n = self.dim();
        match i.cmp(&j) {
            Equal => self.zero_vector(),
            Less => self.table[pair_index(n, i, j)].clone(),
            Greater => self.table[pair_index(n, j, i)].iter().map(|c| -c).collect(),
        }
    }

    /// `c[i][j][k]`, the coefficient of `b_k` in `[b_i, b_j]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.basis_bracket(i, j)[k].clone()
    }

    /// Nonzero `[b_i, b_j]` with `i < j`, in lexicographic order.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vec<Scalar>)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = &self.table[pair_index(n, i, j)];
                if v.iter().any(|c| !c.is_zero()) {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = self.zero_vector();
        for i in 0..n {
            for j in i + 1..n {
                let c = &(&u[i] * &v[j]) - &(&u[j] * &v[i]);
                if !c.is_zero() {
                    axpy(&mut out, &c, &self.table[pair_index(n, i, j)]);
                }
            }
        }
        out
    }

    /// Matrix of `ad x` acting on column vectors: column `j` is `[x, b_j]`.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|j| self.bracket(x, &self.unit(j))).collect();
        Matrix::from_columns(self.field, self.dim(), &cols).expect("square")
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.field, self.dim())
    }

    pub fn zero(&self) -> Subspace {
        Subspace::zero(self.field, self.dim())
    }

    pub fn span(&self, vectors: &[Vec<Scalar>]) -> Result<Subspace> {
        Subspace::span(self.field, self.dim(), vectors)
    }

    /// Span of the given basis labels.
    pub fn span_labels(&self, names: &[&str]) -> Result<Subspace> {
        let mut rows = Vec::new();
        for name in names {
            let i = self.label_index(name)?;
            rows.push(self.unit(i));
        }
        self.span(&rows)
    }

    pub fn label_index(&self, name: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub(crate) fn check_subspace(&self, s: &Subspace) -> Result<()> {
        if s.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: s.ambient_dim(),
            });
        }
        if s.field() != self.field {
            return Err(Error::FieldMismatch(self.field.to_string(), s.field().to_string()));
        }
        Ok(())
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let rows = s.row_vectors();
        for a in 0..rows.len() {
            for b in a + 1..rows.len() {
                if !s.contains(&self.bracket(&rows[a], &rows[b])) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        (0..self.dim()).all(|i| {
            let bi = self.unit(i);
            s.rows().all(|r| s.contains(&self.bracket(&bi, r)))
        })
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    //! Small algebras shared by unit tests across modules.
    use super::*;

    pub fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    pub fn vector(f: Field, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    pub fn build(f: Field, labels: &[&str], brackets: &[(&str, &str, &[(i64, &str)])]) -> LieAlgebra {
        let assignments: Vec<BracketAssignment> = brackets
            .iter()
            .map(|(l, r, terms)| {
                BracketAssignment::new(
                    l,
                    r,
                    terms.iter().map(|(c, n)| (f.from_i64(*c), n.to_string())).collect(),
                )
            })
            .collect();
        validate_algebra(f, labels.iter().map(|s| s.to_string()).collect(), &assignments).unwrap()
    }

    /// The complemented example with p = 2: basis e0, e1, x, y.
    pub fn ecomp2() -> LieAlgebra {
        build(
            gf(2),
            &["e0", "e1", "x", "y"],
            &[
                ("e0", "x", &[(1, "e1")]),
                ("e1", "x", &[(1, "e0")]),
                ("e1", "y", &[(1, "e1")]),
                ("x", "y", &[(1, "x")]),
            ],
        )
    }

    pub fn r2(f: Field) -> LieAlgebra {
        build(f, &["x", "y"], &[("x", "y", &[(1, "x")])])
    }

    pub fn h3(f: Field) -> LieAlgebra {
        build(f, &["x", "y", "z"], &[("x", "y", &[(1, "z")])])
    }

    pub fn a3(f: Field) -> LieAlgebra {
        build(
            f,
            &["x", "y", "b"],
            &[("x", "b", &[(1, "x")]), ("y", "b", &[(1, "y"), (-1, "x")])],
        )
    }
}
