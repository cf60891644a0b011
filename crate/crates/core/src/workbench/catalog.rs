//! Named algebras and the seeded random generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{derivation_algebra, extend_by_derivation, semidirect_type1, LieAlgebra};
use crate::arith::{parse_scalar, Field, FieldKind, Scalar};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub struct CatalogEntry {
    pub name: &'static str,
    /// Parameter names with their defaults.
    pub params: &'static [(&'static str, &'static str)],
    pub description: &'static str,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "ecomp",
        params: &[("p", "2")],
        description: "complemented algebra on e0..e(p-1), x, y over GF(p) with [e_i,x]=e_(i+1 mod p), [e_i,y]=i e_i, [x,y]=x",
    },
    CatalogEntry {
        name: "ecomp-derived",
        params: &[("p", "2")],
        description: "the ideal L^2 = span(e_i, x) of ecomp(p) as an algebra; not complemented",
    },
    CatalogEntry {
        name: "a3",
        params: &[("field", "gf2")],
        description: "x, y, b with [x,b]=x, [y,b]=y-x; an A-algebra that is not complemented",
    },
    CatalogEntry {
        name: "abelian",
        params: &[("n", "3"), ("field", "gf2")],
        description: "abelian algebra on b1..bn",
    },
    CatalogEntry {
        name: "heisenberg",
        params: &[("field", "gf2")],
        description: "x, y, z with [x,y]=z",
    },
    CatalogEntry {
        name: "heisenberg-module",
        params: &[],
        description: "heisenberg a, b, c over GF(2) acting on V = span(v1, v2) by a: v2->v1, b: v1->v2, c = identity; four prefrattini subalgebras",
    },
    CatalogEntry {
        name: "r2",
        params: &[("field", "gf2")],
        description: "two-dimensional non-abelian algebra, [x,y]=x",
    },
    CatalogEntry {
        name: "typeI",
        params: &[("p", "3"), ("weights", "1,2;0,1")],
        description: "A x| T with T acting diagonally on A = span(a1..); weights lists one row per t_j, entries separated by ',' and rows by ';'",
    },
    CatalogEntry {
        name: "triangular",
        params: &[("n", "2"), ("p", "2")],
        description: "upper triangular n x n matrices over GF(p), basis E<i><j> for i <= j",
    },
    CatalogEntry {
        name: "random_solvable",
        params: &[("seed", "0"), ("dim", "4"), ("p", "2")],
        description: "abelian start extended by random derivations up to the given dimension",
    },
];

pub fn find_entry(name: &str) -> Result<&'static CatalogEntry> {
    CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCatalogName(name.to_string()))
}

/// Splits `K=V`.
pub fn parse_param(kv: &str) -> Result<(String, String)> {
    match kv.split_once('=') {
        Some((k, v)) if !k.is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(Error::BadParameters(format!("expected K=V, found {kv:?}"))),
    }
}

struct Params<'a> {
    entry: &'a CatalogEntry,
    given: &'a [(String, String)],
}

impl Params<'_> {
    fn raw(&self, key: &str) -> &str {
        self.given
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .or_else(|| self.entry.params.iter().find(|(k, _)| *k == key).map(|(_, v)| *v))
            .expect("declared parameter")
    }

    fn uint(&self, key: &str) -> Result<u64> {
        let v = self.raw(key);
        v.parse()
            .map_err(|_| Error::BadParameters(format!("{key}={v:?} is not a non-negative integer")))
    }

    fn prime(&self, key: &str) -> Result<Field> {
        Field::prime(self.uint(key)?).map_err(|e| Error::BadParameters(e.to_string()))
    }

    fn field(&self, key: &str) -> Result<Field> {
        let v = self.raw(key);
        if v == "rat" {
            return Ok(Field::rationals());
        }
        let p = v
            .strip_prefix("gf")
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| Error::BadParameters(format!("{key}={v:?}: expected gf<p> or rat")))?;
        Field::prime(p).map_err(|e| Error::BadParameters(e.to_string()))
    }
}

fn table(f: Field, labels: &[&str], brackets: &[(&str, &str, &[(i64, &str)])]) -> Result<LieAlgebra> {
    let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    let idx = |s: &str| labels.iter().position(|l| l == s).expect("known label");
    let rows: Vec<(usize, usize, Vec<Scalar>)> = brackets
        .iter()
        .map(|(a, b, terms)| {
            let mut v = vec![f.zero(); labels.len()];
            for (c, name) in terms.iter() {
                v[idx(name)] = &v[idx(name)] + &f.from_i64(*c);
            }
            (idx(a), idx(b), v)
        })
        .collect();
    LieAlgebra::new(f, labels, &rows)
}

pub fn ecomp(f: Field) -> Result<LieAlgebra> {
    let FieldKind::Prime(p) = f.kind() else {
        return Err(Error::BadParameters("ecomp needs a prime field".into()));
    };
    let p = p as usize;
    let mut labels: Vec<String> = (0..p).map(|i| format!("e{i}")).collect();
    labels.extend(["x".to_string(), "y".to_string()]);
    let (x, y) = (p, p + 1);
    let unit = |k: usize, c: i64| {
        let mut v = vec![f.zero(); p + 2];
        v[k] = f.from_i64(c);
        v
    };
    let mut rows = Vec::new();
    for i in 0..p {
        rows.push((i, x, unit((i + 1) % p, 1)));
        if i % p != 0 {
            rows.push((i, y, unit(i, i as i64)));
        }
    }
    rows.push((x, y, unit(x, 1)));
    LieAlgebra::new(f, labels, &rows)
}

pub fn a3(f: Field) -> Result<LieAlgebra> {
    table(f, &["x", "y", "b"], &[("x", "b", &[(1, "x")]), ("y", "b", &[(1, "y"), (-1, "x")])])
}

pub fn heisenberg(f: Field) -> Result<LieAlgebra> {
    table(f, &["x", "y", "z"], &[("x", "y", &[(1, "z")])])
}

/// The only entry without a field parameter: `c` acts as `[a, b] = 1` on
/// the natural module only when `-1 = 1`.
pub fn heisenberg_module() -> Result<LieAlgebra> {
    table(
        Field::prime(2)?,
        &["a", "b", "c", "v1", "v2"],
        &[
            ("a", "b", &[(1, "c")]),
            ("a", "v2", &[(1, "v1")]),
            ("b", "v1", &[(1, "v2")]),
            ("c", "v1", &[(1, "v1")]),
            ("c", "v2", &[(1, "v2")]),
        ],
    )
}

pub fn r2(f: Field) -> Result<LieAlgebra> {
    table(f, &["x", "y"], &[("x", "y", &[(1, "x")])])
}

/// `weights` is one row per acting element: `"1,2;0,1"`.
pub fn type_one(f: Field, weights: &str) -> Result<LieAlgebra> {
    let rows: Vec<Vec<Scalar>> = weights
        .split(';')
        .map(|row| row.split(',').map(|w| parse_scalar(w.trim(), f)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()
        .map_err(|e| Error::BadParameters(format!("weights {weights:?}: {e}")))?;
    let a_dim = rows[0].len();
    if rows.iter().any(|r| r.len() != a_dim) {
        return Err(Error::BadParameters(format!("weights {weights:?}: rows differ in length")));
    }
    let acting: Vec<Matrix> = rows
        .iter()
        .map(|r| {
            let mut m = Matrix::zeros(f, a_dim, a_dim);
            for (i, w) in r.iter().enumerate() {
                m.set(i, i, w.clone());
            }
            m
        })
        .collect();
    semidirect_type1(f, a_dim, &acting)
}

/// Upper triangular `n × n` matrices.
pub fn triangular(n: usize, f: Field) -> Result<LieAlgebra> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let labels: Vec<String> = pairs.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
    let pos = |i: usize, j: usize| pairs.iter().position(|&q| q == (i, j)).expect("upper entry");
    let d = pairs.len();
    let mut rows = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            let ((i, j), (k, l)) = (pairs[a], pairs[b]);
            // [E_ij, E_kl] = δ_jk E_il - δ_li E_kj
            let mut v = vec![f.zero(); d];
            if j == k {
                v[pos(i, l)] = &v[pos(i, l)] + &f.one();
            }
            if l == i {
                v[pos(k, j)] = &v[pos(k, j)] - &f.one();
            }
            if v.iter().any(|c| !c.is_zero()) {
                rows.push((a, b, v));
            }
        }
    }
    LieAlgebra::new(f, labels, &rows)
}

/// Abelian start of random dimension, then one derivation extension per
/// remaining dimension, each derivation a random combination of a basis of
/// `Der(L)`.
pub fn random_solvable(seed: u64, dim: usize, f: Field) -> Result<LieAlgebra> {
    const RETRIES: usize = 8;
    if dim == 0 {
        return Ok(LieAlgebra::abelian(f, 0));
    }
    let scalars = f
        .elements()
        .ok_or_else(|| Error::BadParameters("random_solvable needs a prime field".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = rng.gen_range(1..=dim.saturating_sub(1).max(1));
    let mut l = LieAlgebra::abelian(f, start);
    while l.dim() < dim {
        let basis = derivation_algebra(&l);
        let n = l.dim();
        let mut d = Matrix::zeros(f, n, n);
        for _ in 0..RETRIES {
            d = Matrix::zeros(f, n, n);
            for m in &basis {
                let c = &scalars[rng.gen_range(0..scalars.len())];
                d = d.add(&m.scale(c))?;
            }
            if !d.is_zero() {
                break;
            }
        }
        l = extend_by_derivation(&l, &d, &format!("b{}", n + 1))?;
    }
    if !l.is_solvable() {
        return Err(Error::TheoremViolation("derivation extension produced a non-solvable algebra".into()));
    }
    Ok(l)
}

/// Builds a catalog algebra; `params` override the entry's defaults.
pub fn catalog(name: &str, params: &[(String, String)]) -> Result<LieAlgebra> {
    let entry = find_entry(name)?;
    for (k, _) in params {
        if !entry.params.iter().any(|(d, _)| d == k) {
            return Err(Error::BadParameters(format!("{name} has no parameter {k:?}")));
        }
    }
    let p = Params { entry, given: params };
    match name {
        "ecomp" => ecomp(p.prime("p")?),
        "ecomp-derived" => {
            let l = ecomp(p.prime("p")?)?;
            Ok(l.subalgebra(&l.square())?.algebra)
        }
        "a3" => a3(p.field("field")?),
        "abelian" => Ok(LieAlgebra::abelian(p.field("field")?, p.uint("n")? as usize)),
        "heisenberg" => heisenberg(p.field("field")?),
        "heisenberg-module" => heisenberg_module(),
        "r2" => r2(p.field("field")?),
        "typeI" => type_one(p.prime("p")?, p.raw("weights")),
        "triangular" => triangular(p.uint("n")? as usize, p.prime("p")?),
        "random_solvable" => random_solvable(p.uint("seed")?, p.uint("dim")? as usize, p.prime("p")?),
        _ => unreachable!("entry found above"),
    }
}

fn kv(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

/// The finite-field catalog instances used as a fixed test corpus, with a
/// display name each.
pub fn finite_field_instances() -> Vec<(String, LieAlgebra)> {
    let specs: &[(&str, &[(&str, &str)])] = &[
        ("ecomp", &[("p", "2")]),
        ("ecomp", &[("p", "3")]),
        ("ecomp-derived", &[("p", "2")]),
        ("ecomp-derived", &[("p", "3")]),
        ("a3", &[("field", "gf2")]),
        ("a3", &[("field", "gf3")]),
        ("abelian", &[("field", "gf2")]),
        ("abelian", &[("field", "gf3")]),
        ("heisenberg", &[("field", "gf2")]),
        ("heisenberg", &[("field", "gf3")]),
        ("heisenberg-module", &[]),
        ("r2", &[("field", "gf2")]),
        ("r2", &[("field", "gf3")]),
        ("typeI", &[]),
        ("typeI", &[("p", "2"), ("weights", "1,0;0,1")]),
        ("triangular", &[("p", "2")]),
        ("triangular", &[("p", "3")]),
        ("triangular", &[("n", "3"), ("p", "2")]),
    ];
    specs
        .iter()
        .map(|(name, params)| {
            let label = std::iter::once(name.to_string())
                .chain(params.iter().map(|(k, v)| format!("{k}={v}")))
                .collect::<Vec<_>>()
                .join(" ");
            (label, catalog(name, &kv(params)).expect("catalog instance builds"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures;

    #[test]
    fn ecomp2_matches_fixture() {
        assert_eq!(catalog("ecomp", &[]).unwrap(), fixtures::ecomp2());
    }

    #[test]
    fn ecomp_dimension_and_brackets() {
        let l = catalog("ecomp", &kv(&[("p", "3")])).unwrap();
        assert_eq!(l.dim(), 5);
        let f = l.field();
        // [e2, y] = 2 e2, [e2, x] = e0
        assert_eq!(l.basis_bracket(2, 4), fixtures::vector(f, &[0, 0, 2, 0, 0]));
        assert_eq!(l.basis_bracket(2, 3), fixtures::vector(f, &[1, 0, 0, 0, 0]));
        assert!(catalog("ecomp", &kv(&[("p", "4")])).is_err());
    }

    #[test]
    fn a3_over_gf3() {
        let l = catalog("a3", &kv(&[("field", "gf3")])).unwrap();
        assert_eq!(l, fixtures::a3(fixtures::gf(3)));
        // [y, b] = y + 2x
        assert_eq!(l.basis_bracket(1, 2), fixtures::vector(l.field(), &[2, 1, 0]));
    }

    #[test]
    fn abelian_is_zero() {
        let l = catalog("abelian", &kv(&[("n", "3")])).unwrap();
        assert!(l.nonzero_brackets().is_empty());
        assert_eq!(l.dim(), 3);
    }

    #[test]
    fn type_one_and_triangular() {
        let t = catalog("typeI", &[]).unwrap();
        assert_eq!(t.labels(), ["a1", "a2", "t1", "t2"]);
        let tri = catalog("triangular", &kv(&[("n", "3")])).unwrap();
        assert_eq!(tri.dim(), 6);
        assert!(tri.is_solvable());
        assert!(catalog("typeI", &kv(&[("weights", "1,2;0")])).is_err());
    }

    #[test]
    fn bad_names_and_params() {
        assert!(matches!(catalog("nope", &[]), Err(Error::UnknownCatalogName(_))));
        assert!(matches!(catalog("r2", &kv(&[("q", "1")])), Err(Error::BadParameters(_))));
        assert!(matches!(catalog("r2", &kv(&[("field", "gf4")])), Err(Error::BadParameters(_))));
        assert!(parse_param("p3").is_err());
        assert_eq!(parse_param("p=3").unwrap(), ("p".into(), "3".into()));
    }

    #[test]
    fn random_is_reproducible_and_solvable() {
        let f = fixtures::gf(3);
        for seed in 0..20 {
            let a = random_solvable(seed, 4, f).unwrap();
            assert_eq!(a, random_solvable(seed, 4, f).unwrap());
            assert_eq!(a.dim(), 4);
            assert!(a.is_solvable());
        }
        let distinct: std::collections::HashSet<_> = (0..20).map(|s| random_solvable(s, 4, f).unwrap()).collect();
        assert!(distinct.len() > 10);
    }

    #[test]
    fn instances_build() {
        let all = finite_field_instances();
        assert!(all.iter().all(|(_, l)| l.field().is_finite()));
    }
}
