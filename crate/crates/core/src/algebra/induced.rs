use super::LieAlgebra;
use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InducedMode {
    Subalgebra,
    Quotient,
}

/// A subalgebra `S` or quotient `L/I` realised as a Lie algebra in its own
/// right, together with the maps back and forth.
///
/// Matrices act on column vectors. For a subalgebra, `embed` is `n×k` and
/// sends coordinates along the canonical basis of `S` into `L`; `project`
/// (`k×n`) reads off those coordinates and is only meaningful on `S`. For a
/// quotient, `project` is the canonical map `L → L/I` and `embed` lifts along
/// the non-pivot standard complement of `I`.
#[derive(Clone, Debug)]
pub struct InducedAlgebra {
    pub mode: InducedMode,
    pub carrier: Subspace,
    pub algebra: LieAlgebra,
    pub embed: Matrix,
    pub project: Matrix,
}

impl LieAlgebra {
    pub fn induced_algebra(&self, s: &Subspace, mode: InducedMode) -> Result<InducedAlgebra> {
        self.check_subspace(s)?;
        match mode {
            InducedMode::Subalgebra => self.induced_subalgebra(s),
            InducedMode::Quotient => self.induced_quotient(s),
        }
    }

    /// Shorthand for the quotient `L/I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<InducedAlgebra> {
        self.induced_algebra(ideal, InducedMode::Quotient)
    }

    pub fn subalgebra(&self, s: &Subspace) -> Result<InducedAlgebra> {
        self.induced_algebra(s, InducedMode::Subalgebra)
    }

    fn induced_subalgebra(&self, s: &Subspace) -> Result<InducedAlgebra> {
        if !self.is_subalgebra(s) {
            return Err(Error::NotASubalgebra);
        }
        let f = self.field();
        let rows = s.row_vectors();
        let k = rows.len();
        let mut labels: Vec<String> = rows
            .iter()
            .enumerate()
            .map(|(a, r)| {
                let nonzero: Vec<usize> = (0..r.len()).filter(|&c| !r[c].is_zero()).collect();
                match nonzero.as_slice() {
                    [c] if r[*c].is_one() => self.labels()[*c].clone(),
                    _ => format!("u{}", a + 1),
                }
            })
            .collect();
        dedupe_labels(&mut labels);
        let mut brackets = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                let w = self.bracket(&rows[a], &rows[b]);
                let c = s.coords_in(&w).ok_or(Error::NotASubalgebra)?;
                brackets.push((a, b, c));
            }
        }
        let algebra = LieAlgebra::new(f, labels, &brackets)?;
        let embed = s.basis().transpose();
        let project_cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| {
                // coordinate j of a vector of S is read off at the pivots
                let mut col = vec![f.zero(); k];
                if let Some(a) = s.pivots().iter().position(|&p| p == j) {
                    col[a] = f.one();
                }
                col
            })
            .collect();
        let project = Matrix::from_columns(f, k, &project_cols)?;
        Ok(InducedAlgebra {
            mode: InducedMode::Subalgebra,
            carrier: s.clone(),
            algebra,
            embed,
            project,
        })
    }

    fn induced_quotient(&self, ideal: &Subspace) -> Result<InducedAlgebra> {
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let f = self.field();
        let cols = ideal.complement_columns();
        let k = cols.len();
        let labels: Vec<String> = cols.iter().map(|&c| self.labels()[c].clone()).collect();
        let mut brackets = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                let w = self.basis_bracket(cols[a], cols[b]);
                brackets.push((a, b, ideal.coords_mod(&w)?));
            }
        }
        let algebra = LieAlgebra::new(f, labels, &brackets)?;
        let project_cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| ideal.coords_mod(&self.unit(j)))
            .collect::<Result<_>>()?;
        let project = Matrix::from_columns(f, k, &project_cols)?;
        let embed_cols: Vec<Vec<Scalar>> = cols.iter().map(|&c| self.unit(c)).collect();
        let embed = Matrix::from_columns(f, self.dim(), &embed_cols)?;
        Ok(InducedAlgebra {
            mode: InducedMode::Quotient,
            carrier: ideal.clone(),
            algebra,
            embed,
            project,
        })
    }
}

fn dedupe_labels(labels: &mut [String]) {
    for a in 0..labels.len() {
        while labels[..a].contains(&labels[a]) {
            labels[a].push('_');
        }
    }
}

impl InducedAlgebra {
    pub fn project_vector(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.project.apply(v)
    }

    pub fn lift_vector(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.embed.apply(v)
    }

    /// Image in the induced algebra. In subalgebra mode `s` must lie in the
    /// carrier.
    pub fn project_subspace(&self, s: &Subspace) -> Subspace {
        let rows: Vec<Vec<Scalar>> = s.rows().map(|r| self.project_vector(r)).collect();
        self.algebra.span(&rows).expect("projected rows have the right length")
    }

    /// Subspace of the parent corresponding to `t`: the full preimage for a
    /// quotient, the image for a subalgebra.
    pub fn pull_back(&self, t: &Subspace) -> Subspace {
        let rows: Vec<Vec<Scalar>> = t.rows().map(|r| self.lift_vector(r)).collect();
        let n = self.embed.rows();
        let image = Subspace::span(self.algebra.field(), n, &rows).expect("lifted rows have the right length");
        match self.mode {
            InducedMode::Quotient => image.sum(&self.carrier),
            InducedMode::Subalgebra => image,
        }
    }

    /// Checks that the maps are compatible with the brackets on basis pairs.
    pub fn is_consistent(&self, parent: &LieAlgebra) -> bool {
        match self.mode {
            InducedMode::Quotient => (0..parent.dim()).all(|i| {
                (i + 1..parent.dim()).all(|j| {
                    let lhs = self.project_vector(&parent.basis_bracket(i, j));
                    let rhs = self.algebra.bracket(
                        &self.project_vector(&parent.unit(i)),
                        &self.project_vector(&parent.unit(j)),
                    );
                    lhs == rhs
                })
            }),
            InducedMode::Subalgebra => {
                let k = self.algebra.dim();
                (0..k).all(|a| {
                    (a + 1..k).all(|b| {
                        let lhs = self.lift_vector(&self.algebra.basis_bracket(a, b));
                        let rhs = parent.bracket(
                            &self.lift_vector(&self.algebra.unit(a)),
                            &self.lift_vector(&self.algebra.unit(b)),
                        );
                        lhs == rhs
                    })
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::arith::Field;

    #[test]
    fn quotient_of_ecomp2_by_a() {
        let l = ecomp2();
        let a = l.span_labels(&["e0", "e1"]).unwrap();
        let q = l.quotient(&a).unwrap();
        assert_eq!(q.algebra.labels(), &["x", "y"]);
        // L/A ≅ r2 with [x, y] = x
        assert_eq!(q.algebra.basis_bracket(0, 1), vector(l.field(), &[1, 0]));
        assert!(q.is_consistent(&l));
        assert_eq!(q.pull_back(&q.algebra.zero()), a);
        assert_eq!(q.pull_back(&q.algebra.full()), l.full());
    }

    #[test]
    fn quotient_requires_ideal() {
        let l = r2(gf(3));
        let y = l.span_labels(&["y"]).unwrap();
        assert!(matches!(l.quotient(&y), Err(Error::NotAnIdeal)));
    }

    #[test]
    fn subalgebra_labels_and_maps() {
        let l = a3(Field::rationals());
        let f = l.field();
        let s = l.span(&[vector(f, &[1, 1, 0]), vector(f, &[0, 0, 1])]).unwrap();
        // [x+y, b] = x + y - x = y, not in s
        assert!(matches!(l.subalgebra(&s), Err(Error::NotASubalgebra)));

        let s = l.span_labels(&["x", "b"]).unwrap();
        let sub = l.subalgebra(&s).unwrap();
        assert_eq!(sub.algebra.labels(), &["x", "b"]);
        assert!(sub.is_consistent(&l));
        assert_eq!(sub.pull_back(&sub.algebra.full()), s);

        let t = l.span(&[vector(f, &[1, 1, 0])]).unwrap();
        let sub = l.subalgebra(&t).unwrap();
        assert_eq!(sub.algebra.labels(), &["u1"]);
        assert_eq!(sub.project_vector(&vector(f, &[2, 2, 0])), vector(f, &[2]));
    }

    #[test]
    fn project_and_pull_back_round_trip() {
        let l = ecomp2();
        let sq = l.square();
        let q = l.quotient(&l.span_labels(&["e0", "e1"]).unwrap()).unwrap();
        let img = q.project_subspace(&sq);
        assert_eq!(img.dim(), 1);
        assert_eq!(q.pull_back(&img), sq);
    }
}
