use super::LieAlgebra;
use crate::arith::{Field, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

/// `L1 ⊕ L2` with blockwise brackets. Labels are kept when they do not clash,
/// otherwise suffixed with `_1` and `_2`.
pub fn direct_sum(l1: &LieAlgebra, l2: &LieAlgebra) -> Result<LieAlgebra> {
    if l1.field() != l2.field() {
        return Err(Error::FieldMismatch(l1.field().to_string(), l2.field().to_string()));
    }
    let (n1, n2) = (l1.dim(), l2.dim());
    let clash = l1.labels().iter().any(|l| l2.labels().contains(l));
    let labels: Vec<String> = if clash {
        l1.labels()
            .iter()
            .map(|l| format!("{l}_1"))
            .chain(l2.labels().iter().map(|l| format!("{l}_2")))
            .collect()
    } else {
        l1.labels().iter().chain(l2.labels()).cloned().collect()
    };
    let f = l1.field();
    let mut brackets = Vec::new();
    for (i, j, v) in l1.nonzero_brackets() {
        let mut w = v;
        w.resize(n1 + n2, f.zero());
        brackets.push((i, j, w));
    }
    for (i, j, v) in l2.nonzero_brackets() {
        let mut w = vec![f.zero(); n1];
        w.extend(v);
        brackets.push((n1 + i, n1 + j, w));
    }
    LieAlgebra::new(f, labels, &brackets)
}

/// Semidirect product of an abelian `A = F^a_dim` (basis `a1..`) with the
/// abelian algebra spanned by commuting semisimple matrices `t1..`, where
/// `[a, t_j] = M_j a`.
pub fn semidirect_type1(field: Field, a_dim: usize, acting: &[Matrix]) -> Result<LieAlgebra> {
    for m in acting {
        if m.rows() != a_dim || m.cols() != a_dim {
            return Err(Error::DimensionMismatch {
                expected: a_dim,
                found: m.rows().max(m.cols()),
            });
        }
        if m.field() != field {
            return Err(Error::FieldMismatch(field.to_string(), m.field().to_string()));
        }
    }
    for (i, m) in acting.iter().enumerate() {
        for m2 in &acting[i + 1..] {
            if m.mul(m2)? != m2.mul(m)? {
                return Err(Error::NonCommutingAction);
            }
        }
    }
    for (i, m) in acting.iter().enumerate() {
        let p = minimal_polynomial(m);
        if poly_degree(&poly_gcd(&p, &poly_derivative(&p))) > 0 {
            return Err(Error::NonSemisimpleAction(i));
        }
    }
    let n = a_dim + acting.len();
    let labels: Vec<String> = (1..=a_dim)
        .map(|i| format!("a{i}"))
        .chain((1..=acting.len()).map(|j| format!("t{j}")))
        .collect();
    let mut brackets = Vec::new();
    for (j, m) in acting.iter().enumerate() {
        for i in 0..a_dim {
            let mut v = m.column(i);
            v.resize(n, field.zero());
            brackets.push((i, a_dim + j, v));
        }
    }
    LieAlgebra::new(field, labels, &brackets)
}

/// Basis of the derivation algebra `Der(L)` as matrices acting on columns.
pub fn derivation_algebra(l: &LieAlgebra) -> Vec<Matrix> {
    let n = l.dim();
    let f = l.field();
    let var = |r: usize, c: usize| r * n + c;
    // D[b_i, b_j] - [D b_i, b_j] - [b_i, D b_j] = 0, coefficient of b_k
    let mut rows = Vec::new();
    let consts: Vec<Vec<Vec<Scalar>>> = (0..n)
        .map(|i| (0..n).map(|j| l.basis_bracket(i, j)).collect())
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let mut row = vec![f.zero(); n * n];
                for m in 0..n {
                    let c = &consts[i][j][m];
                    if !c.is_zero() {
                        row[var(k, m)] = &row[var(k, m)] + c;
                    }
                }
                for r in 0..n {
                    let c = &consts[r][j][k];
                    if !c.is_zero() {
                        row[var(r, i)] = &row[var(r, i)] - c;
                    }
                    let c = &consts[i][r][k];
                    if !c.is_zero() {
                        row[var(r, j)] = &row[var(r, j)] - c;
                    }
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = Matrix::from_rows(f, n * n, &rows).expect("rows have n^2 entries");
    system
        .kernel()
        .rows()
        .map(|v| Matrix::from_rows(f, n, &v.chunks(n).map(|c| c.to_vec()).collect::<Vec<_>>()).expect("n×n"))
        .collect()
}

/// `L ⋊ F t` with `[t, b_i] = D b_i`. Fails with a Jacobi violation when `D`
/// is not a derivation.
pub fn extend_by_derivation(l: &LieAlgebra, d: &Matrix, label: &str) -> Result<LieAlgebra> {
    let n = l.dim();
    if d.rows() != n || d.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: d.rows().max(d.cols()),
        });
    }
    let f = l.field();
    let mut labels = l.labels().to_vec();
    labels.push(label.to_string());
    let mut brackets: Vec<(usize, usize, Vec<Scalar>)> = l
        .nonzero_brackets()
        .into_iter()
        .map(|(i, j, mut v)| {
            v.push(f.zero());
            (i, j, v)
        })
        .collect();
    for i in 0..n {
        let mut v: Vec<Scalar> = d.column(i).iter().map(|c| -c).collect();
        v.push(f.zero());
        brackets.push((i, n, v));
    }
    LieAlgebra::new(f, labels, &brackets)
}

/// Monic minimal polynomial of a square matrix, coefficients from degree 0 up.
pub fn minimal_polynomial(m: &Matrix) -> Vec<Scalar> {
    let f = m.field();
    let n = m.rows();
    let flat = |a: &Matrix| -> Vec<Scalar> { (0..n).flat_map(|r| a.row(r).to_vec()).collect() };
    let mut powers = vec![flat(&Matrix::identity(f, n))];
    let mut current = Matrix::identity(f, n);
    loop {
        current = current.mul(m).expect("square");
        let v = flat(&current);
        let span = Subspace::span(f, n * n, &powers).expect("same length");
        if span.contains(&v) {
            // solve Σ c_k M^k = M^d via the kernel of [M^0 .. M^d]
            powers.push(v);
            let system = Matrix::from_columns(f, n * n, &powers).expect("columns of length n^2");
            let kernel = system.kernel();
            let relation = kernel.row_vectors().pop().expect("a dependency exists");
            let lead = relation.last().expect("nonempty").clone();
            let inv = lead.inv().expect("dependency involves the top power");
            return relation.iter().map(|c| c * &inv).collect();
        }
        powers.push(v);
    }
}

fn poly_trim(p: &mut Vec<Scalar>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree, with the zero polynomial given degree 0.
fn poly_degree(p: &[Scalar]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn poly_derivative(p: &[Scalar]) -> Vec<Scalar> {
    if p.len() <= 1 {
        return vec![p.first().map(|c| c.field().zero()).expect("nonempty")];
    }
    let f = p[0].field();
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| &f.from_i64(k as i64) * c)
        .collect()
}

fn poly_rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = poly_degree(b);
    let lead = b[db].inv().expect("nonzero divisor");
    while r.iter().any(|c| !c.is_zero()) && poly_degree(&r) >= db {
        let dr = poly_degree(&r);
        let q = &r[dr] * &lead;
        for k in 0..=db {
            r[dr - db + k] = &r[dr - db + k] - &(&q * &b[k]);
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    poly_trim(&mut a);
    poly_trim(&mut b);
    while b.iter().any(|c| !c.is_zero()) {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}
