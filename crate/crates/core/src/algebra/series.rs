use serde::Serialize;

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    Derived,
    LowerCentral,
    NilpotentSeries,
}

/// A monotone chain of subspaces, ending at its stable term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesChain {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
}

impl SeriesChain {
    pub fn last(&self) -> &Subspace {
        self.terms.last().expect("a series has at least one term")
    }

    /// For descending chains: does the chain reach zero?
    pub fn reaches_zero(&self) -> bool {
        self.last().is_zero()
    }

    /// Number of nonzero terms of a descending chain that reaches zero; this
    /// is the derived length for the derived series.
    pub fn length(&self) -> Option<usize> {
        self.reaches_zero()
            .then(|| self.terms.iter().filter(|t| !t.is_zero()).count())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StructureFlags {
    pub solvable: bool,
    pub nilpotent: bool,
    pub abelian: bool,
    pub completely_solvable: bool,
    pub derived_length: Option<usize>,
}

impl LieAlgebra {
    /// `[U, V]`: the span of brackets of basis vectors.
    pub fn bracket_span(&self, u: &Subspace, v: &Subspace) -> Result<Subspace> {
        self.check_subspace(u)?;
        self.check_subspace(v)?;
        let mut rows = Vec::with_capacity(u.dim() * v.dim());
        for a in u.rows() {
            for b in v.rows() {
                let w = self.bracket(a, b);
                if w.iter().any(|c| !c.is_zero()) {
                    rows.push(w);
                }
            }
        }
        self.span(&rows)
    }

    fn descend(&self, start: Subspace, step: impl Fn(&Subspace) -> Subspace) -> Vec<Subspace> {
        let mut terms = vec![start];
        loop {
            let next = step(terms.last().unwrap());
            if &next == terms.last().unwrap() {
                return terms;
            }
            terms.push(next);
        }
    }

    /// Derived series of the subalgebra `s`: `s, [s,s], ...` until stable.
    pub fn derived_series_of(&self, s: &Subspace) -> Vec<Subspace> {
        self.descend(s.clone(), |t| self.bracket_span(t, t).expect("same ambient"))
    }

    /// Lower central series of the subalgebra `s`.
    pub fn lower_central_series_of(&self, s: &Subspace) -> Vec<Subspace> {
        self.descend(s.clone(), |t| self.bracket_span(t, s).expect("same ambient"))
    }

    pub fn derived_series(&self) -> SeriesChain {
        SeriesChain {
            kind: SeriesKind::Derived,
            terms: self.derived_series_of(&self.full()),
        }
    }

    pub fn lower_central_series(&self) -> SeriesChain {
        SeriesChain {
            kind: SeriesKind::LowerCentral,
            terms: self.lower_central_series_of(&self.full()),
        }
    }

    /// `L^∞`, the stable term of the lower central series.
    pub fn nilpotent_residual(&self) -> Subspace {
        self.lower_central_series().last().clone()
    }

    pub fn derived_length(&self) -> Option<usize> {
        self.derived_series().length()
    }

    /// `L^2 = [L, L]`.
    pub fn square(&self) -> Subspace {
        let l = self.full();
        self.bracket_span(&l, &l).expect("same ambient")
    }

    /// Whether the subalgebra `s`, viewed as an algebra, is nilpotent.
    pub fn is_nilpotent_subalgebra(&self, s: &Subspace) -> bool {
        self.lower_central_series_of(s).last().expect("nonempty").is_zero()
    }

    pub fn is_abelian_subspace(&self, s: &Subspace) -> bool {
        let rows = s.row_vectors();
        (0..rows.len()).all(|a| {
            (a + 1..rows.len()).all(|b| self.bracket(&rows[a], &rows[b]).iter().all(|c| c.is_zero()))
        })
    }

    /// Whether `s / base` is nilpotent, for a subalgebra `s` with ideal `base`.
    pub fn is_nilpotent_modulo(&self, s: &Subspace, base: &Subspace) -> bool {
        let mut t = s.clone();
        loop {
            let next = self.bracket_span(&t, s).expect("same ambient").sum(base);
            if &next == base || base.contains_subspace(&next) {
                return true;
            }
            if next == t {
                return false;
            }
            t = next;
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().reaches_zero()
    }

    pub fn require_solvable(&self) -> Result<()> {
        if self.is_solvable() {
            Ok(())
        } else {
            Err(Error::NonSolvable)
        }
    }

    pub fn structure_flags(&self) -> StructureFlags {
        let derived = self.derived_series();
        let nilpotent = self.lower_central_series().reaches_zero();
        let solvable = derived.reaches_zero();
        let square = self.square();
        StructureFlags {
            solvable,
            nilpotent,
            abelian: square.is_zero(),
            completely_solvable: solvable && self.is_nilpotent_subalgebra(&square),
            derived_length: derived.length(),
        }
    }

    pub fn is_completely_solvable(&self) -> bool {
        self.structure_flags().completely_solvable
    }

    /// `{x : [x, s] = 0 for all s ∈ S}`.
    pub fn centralizer(&self, s: &Subspace) -> Result<Subspace> {
        self.check_subspace(s)?;
        let n = self.dim();
        // [x, s] = -ad(s) x, so stack the ad(s) for basis vectors s.
        let parts: Vec<Matrix> = s.rows().map(|r| self.ad(r)).collect();
        Ok(Matrix::vstack(self.field(), n, &parts).kernel())
    }

    /// `{x : [x, S] ⊆ S}`; requires `S` to be a subalgebra.
    pub fn normalizer(&self, s: &Subspace) -> Result<Subspace> {
        self.check_subspace(s)?;
        if !self.is_subalgebra(s) {
            return Err(Error::NotASubalgebra);
        }
        let n = self.dim();
        // Projection onto the canonical complement of S, as a matrix.
        let proj_cols: Vec<_> = (0..n)
            .map(|j| s.coords_mod(&self.unit(j)).expect("right length"))
            .collect();
        let proj = Matrix::from_columns(self.field(), n - s.dim(), &proj_cols)?;
        let parts: Vec<Matrix> = s
            .rows()
            .map(|r| proj.mul(&self.ad(r)).expect("shapes agree"))
            .collect();
        Ok(Matrix::vstack(self.field(), n, &parts).kernel())
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&self.full()).expect("same ambient")
    }

    /// Smallest ideal containing `s`.
    pub fn ideal_closure(&self, s: &Subspace) -> Result<Subspace> {
        self.check_subspace(s)?;
        let l = self.full();
        let mut t = s.clone();
        loop {
            let next = t.sum(&self.bracket_span(&l, &t)?);
            if next == t {
                return Ok(t);
            }
            t = next;
        }
    }

    /// Smallest subalgebra containing `s`.
    pub fn subalgebra_closure(&self, s: &Subspace) -> Result<Subspace> {
        self.check_subspace(s)?;
        let mut t = s.clone();
        loop {
            let next = t.sum(&self.bracket_span(&t, &t)?);
            if next == t {
                return Ok(t);
            }
            t = next;
        }
    }
}
