use super::LieAlgebra;
use crate::arith::{FieldKind, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

fn flatten(m: &Matrix) -> Vec<Scalar> {
    (0..m.rows()).flat_map(|r| m.row(r).to_vec()).collect()
}

fn unflatten(v: &[Scalar], n: usize, field: crate::arith::Field) -> Matrix {
    let rows: Vec<Vec<Scalar>> = v.chunks(n).map(|c| c.to_vec()).collect();
    Matrix::from_rows(field, n, &rows).expect("n×n")
}

fn trace(m: &Matrix) -> Scalar {
    (0..m.rows()).fold(m.field().zero(), |acc, i| &acc + m.get(i, i))
}

/// Nilradical of a solvable algebra over the rationals.
///
/// Computes `{x : tr(ad x · a) = 0 for every a in the associative algebra
/// generated by ad L}`; in characteristic zero this is the set of `x` with
/// `ad x` in the radical of that algebra, i.e. the nilradical of a solvable
/// `L`. The answer is re-verified (an ideal, nilpotent, containing the
/// center) before it is returned.
pub fn nilradical_char0(l: &LieAlgebra) -> Result<Subspace> {
    if l.field().kind() != FieldKind::Rationals {
        return Err(Error::Unsupported(
            "the trace route needs characteristic zero; use lattice enumeration".into(),
        ));
    }
    l.require_solvable()?;
    let f = l.field();
    let n = l.dim();
    let ads: Vec<Matrix> = (0..n).map(|i| l.ad(&l.unit(i))).collect();

    let mut assoc = Subspace::span(f, n * n, &[flatten(&Matrix::identity(f, n))])?;
    loop {
        let mut rows = assoc.row_vectors();
        for b in assoc.rows() {
            let bm = unflatten(b, n, f);
            for a in &ads {
                rows.push(flatten(&bm.mul(a)?));
            }
        }
        let next = Subspace::span(f, n * n, &rows)?;
        if next == assoc {
            break;
        }
        assoc = next;
    }

    let conditions: Vec<Vec<Scalar>> = assoc
        .rows()
        .map(|b| {
            let bm = unflatten(b, n, f);
            ads.iter().map(|a| trace(&a.mul(&bm).expect("square"))).collect()
        })
        .collect();
    let radical = Matrix::from_rows(f, n, &conditions)?.kernel();

    if !l.is_ideal(&radical)
        || !l.is_nilpotent_subalgebra(&radical)
        || !radical.contains_subspace(&l.center())
    {
        return Err(Error::Unsupported(
            "trace criterion did not produce a nilpotent ideal".into(),
        ));
    }
    Ok(radical)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::arith::Field;

    #[test]
    fn char0_examples() {
        let q = Field::rationals();
        let h = h3(q);
        assert_eq!(nilradical_char0(&h).unwrap(), h.full());
        let r = r2(q);
        assert_eq!(nilradical_char0(&r).unwrap(), r.span_labels(&["x"]).unwrap());
        let a = a3(q);
        assert_eq!(nilradical_char0(&a).unwrap(), a.span_labels(&["x", "y"]).unwrap());
    }

    #[test]
    fn refuses_prime_fields() {
        assert!(matches!(nilradical_char0(&r2(gf(3))), Err(Error::Unsupported(_))));
    }

    #[test]
    fn refuses_non_solvable() {
        let q = Field::rationals();
        let sl2 = build(
            q,
            &["e", "f", "h"],
            &[("e", "f", &[(1, "h")]), ("h", "e", &[(2, "e")]), ("h", "f", &[(-2, "f")])],
        );
        assert_eq!(nilradical_char0(&sl2), Err(Error::NonSolvable));
    }
}
