use super::LieAlgebra;
use crate::arith::{FieldKind, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

/// Whether `m` preserves brackets on all basis pairs and is invertible.
pub fn is_automorphism(l: &LieAlgebra, m: &Matrix) -> bool {
    let n = l.dim();
    if m.rows() != n || m.cols() != n || m.rank() != n {
        return false;
    }
    let images: Vec<Vec<Scalar>> = (0..n).map(|j| m.column(j)).collect();
    (0..n).all(|i| {
        (i + 1..n).all(|j| m.apply(&l.basis_bracket(i, j)) == l.bracket(&images[i], &images[j]))
    })
}

/// `exp(ad x) = Σ (ad x)^k / k!` for nilpotent `ad x`.
///
/// In characteristic `p` the series needs `(ad x)^p = 0`; the result is
/// checked to be an automorphism and rejected otherwise.
pub fn exp_ad(l: &LieAlgebra, x: &[Scalar]) -> Result<Matrix> {
    let n = l.dim();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let f = l.field();
    let ad = l.ad(x);
    if !ad.pow(n as u32).is_zero() {
        return Err(Error::NotNilpotent);
    }
    let top = match f.kind() {
        FieldKind::Prime(p) => {
            if (p as usize) <= n && !ad.pow(p).is_zero() {
                return Err(Error::CharacteristicObstruction(p));
            }
            (p as usize - 1).min(n)
        }
        FieldKind::Rationals => n,
    };
    let mut sum = Matrix::identity(f, n);
    let mut term = Matrix::identity(f, n);
    for k in 1..=top {
        let inv_k = f.from_i64(k as i64).inv()?;
        term = term.mul(&ad)?.scale(&inv_k);
        if term.is_zero() {
            break;
        }
        sum = sum.add(&term)?;
    }
    if !is_automorphism(l, &sum) {
        return Err(Error::CharacteristicObstruction(f.characteristic()));
    }
    Ok(sum)
}

/// Fitting decomposition of `target` relative to `ad E`: the stable kernel
/// `L0` (vectors killed by long enough products of `ad e`) and the stable
/// image `L1`. Fails unless `target = L0 ∔ L1`.
pub fn fitting_decomposition(
    l: &LieAlgebra,
    target: &Subspace,
    e: &Subspace,
) -> Result<(Subspace, Subspace)> {
    l.check_subspace(target)?;
    l.check_subspace(e)?;
    if !l.is_subalgebra(e) {
        return Err(Error::NotASubalgebra);
    }
    if !target.contains_subspace(&l.bracket_span(e, target)?) {
        return Err(Error::NotInvariant);
    }
    let f = l.field();
    let n = l.dim();
    let tb = target.row_vectors();
    let ads: Vec<Matrix> = e.rows().map(|r| l.ad(r)).collect();

    // K_{j+1} = {v ∈ target : ad e (v) ∈ K_j for every basis e}
    let mut kernel = l.zero();
    loop {
        let mut blocks = Vec::new();
        for ad in &ads {
            let cols: Vec<Vec<Scalar>> = tb
                .iter()
                .map(|v| kernel.coords_mod(&ad.apply(v)))
                .collect::<Result<_>>()?;
            blocks.push(Matrix::from_columns(f, n - kernel.dim(), &cols)?);
        }
        let coeffs = Matrix::vstack(f, tb.len(), &blocks).kernel();
        let rows: Vec<Vec<Scalar>> = coeffs
            .rows()
            .map(|c| {
                let mut v = l.zero_vector();
                for (ci, bi) in c.iter().zip(&tb) {
                    crate::linalg::axpy(&mut v, ci, bi);
                }
                v
            })
            .collect();
        let next = l.span(&rows)?;
        if next == kernel {
            break;
        }
        kernel = next;
    }

    // I_{j+1} = Σ_e ad e (I_j)
    let mut image = target.clone();
    loop {
        let rows: Vec<Vec<Scalar>> = ads
            .iter()
            .flat_map(|ad| image.rows().map(|v| ad.apply(v)).collect::<Vec<_>>())
            .collect();
        let next = l.span(&rows)?;
        if next == image {
            break;
        }
        image = next;
    }

    if !kernel.intersection(&image).is_zero() || kernel.dim() + image.dim() != target.dim() {
        return Err(Error::DecompositionFailure);
    }
    Ok((kernel, image))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::arith::Field;

    #[test]
    fn exp_of_zero_is_identity() {
        let l = ecomp2();
        assert_eq!(exp_ad(&l, &l.zero_vector()).unwrap(), Matrix::identity(l.field(), 4));
    }

    #[test]
    fn exp_ad_on_h3() {
        for f in [gf(3), Field::rationals()] {
            let l = h3(f);
            let m = exp_ad(&l, &l.unit(0)).unwrap();
            assert_eq!(m.apply(&l.unit(1)), vector(f, &[0, 1, 1]));
            assert_eq!(m.apply(&l.unit(0)), l.unit(0));
            assert_eq!(m.apply(&l.unit(2)), l.unit(2));
        }
    }

    #[test]
    fn exp_ad_on_ecomp2() {
        let l = ecomp2();
        let f = l.field();
        let m = exp_ad(&l, &l.unit(0)).unwrap();
        assert_eq!(m.apply(&l.unit(2)), vector(f, &[0, 1, 1, 0]));
        for i in [0, 1, 3] {
            assert_eq!(m.apply(&l.unit(i)), l.unit(i));
        }
    }

    #[test]
    fn exp_ad_errors() {
        let l = r2(gf(3));
        assert_eq!(exp_ad(&l, &l.unit(1)), Err(Error::NotNilpotent));
        // ad x swaps e0 and e1
        let e = ecomp2();
        assert_eq!(exp_ad(&e, &e.unit(2)), Err(Error::NotNilpotent));
        // a filiform algebra in characteristic 2
        let f = gf(2);
        let fil = build(
            f,
            &["a", "b", "c", "d"],
            &[("a", "b", &[(1, "c")]), ("a", "c", &[(1, "d")])],
        );
        // ad a: b -> c -> d, (ad a)^2 b = d != 0
        assert_eq!(exp_ad(&fil, &fil.unit(0)), Err(Error::CharacteristicObstruction(2)));
    }

    #[test]
    fn fitting_examples() {
        let f = gf(3);
        let h = h3(f);
        let x = h.span_labels(&["x"]).unwrap();
        assert_eq!(fitting_decomposition(&h, &h.full(), &x).unwrap(), (h.full(), h.zero()));

        let r = r2(f);
        let y = r.span_labels(&["y"]).unwrap();
        let (l0, l1) = fitting_decomposition(&r, &r.full(), &y).unwrap();
        assert_eq!(l0, y);
        assert_eq!(l1, r.span_labels(&["x"]).unwrap());

        let e = ecomp2();
        let t = e.span_labels(&["e0", "e1", "x"]).unwrap();
        let xs = e.span_labels(&["x"]).unwrap();
        let (l0, l1) = fitting_decomposition(&e, &t, &xs).unwrap();
        assert!(l1.contains_subspace(&e.span_labels(&["e0", "e1"]).unwrap()));
        assert_eq!(l0, xs);
    }

    #[test]
    fn fitting_errors() {
        let r = r2(gf(3));
        let y = r.span_labels(&["y"]).unwrap();
        let x = r.span_labels(&["x"]).unwrap();
        assert_eq!(fitting_decomposition(&r, &y, &x), Err(Error::NotInvariant));
    }
}
