//! The `.lie` structure-constant format.
//!
//! ```text
//! # comment
//! field gf 2          # or: field rat
//! dim 3
//! basis x y z         # optional, default b1 … bn
//! bracket x y = z     # unlisted brackets are zero
//! bracket x z = 2*x + y
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::algebra::{validate_algebra, BracketAssignment, LieAlgebra};
use crate::arith::{parse_scalar, Field, FieldKind, Scalar};
use crate::error::{Error, Result};

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

struct BracketLine {
    line: usize,
    assignment: BracketAssignment,
}

fn parse_term(tok: &str, field: Field, line: usize) -> Result<(Scalar, String)> {
    let (coeff, name) = match tok.split_once('*') {
        Some((c, n)) => (parse_scalar(c, field).map_err(|e| e.at_line(line))?, n),
        None => (field.one(), tok),
    };
    if !crate::algebra::is_identifier(name) {
        return Err(parse_err(line, format!("expected a basis name, found {name:?}")));
    }
    Ok((coeff, name.to_string()))
}

fn parse_bracket(toks: &[&str], field: Field, line: usize) -> Result<BracketAssignment> {
    // bracket u v = t { + t }
    if toks.len() < 5 || toks[3] != "=" {
        return Err(parse_err(line, "expected `bracket <u> <v> = <term> { + <term> }`"));
    }
    let rhs = &toks[4..];
    let mut terms = Vec::new();
    for (k, tok) in rhs.iter().enumerate() {
        if k % 2 == 1 {
            if *tok != "+" {
                return Err(parse_err(line, format!("expected `+`, found {tok:?}")));
            }
        } else {
            terms.push(parse_term(tok, field, line)?);
        }
    }
    if rhs.len() % 2 == 0 {
        return Err(parse_err(line, "dangling `+`"));
    }
    Ok(BracketAssignment::new(toks[1], toks[2], terms))
}

pub fn parse_lie_file(text: &str) -> Result<LieAlgebra> {
    let mut field: Option<Field> = None;
    let mut dim: Option<(usize, usize)> = None;
    let mut basis: Option<Vec<String>> = None;
    let mut brackets: Vec<BracketLine> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        let Some(&head) = toks.first() else { continue };
        match head {
            "field" => {
                if field.is_some() {
                    return Err(parse_err(line, "repeated `field` line"));
                }
                field = Some(match toks[1..] {
                    ["rat"] => Field::rationals(),
                    ["gf", p] => {
                        let p: u64 = p.parse().map_err(|_| parse_err(line, format!("bad prime {p:?}")))?;
                        Field::prime(p).map_err(|e| e.at_line(line))?
                    }
                    _ => return Err(parse_err(line, "expected `field gf <p>` or `field rat`")),
                });
            }
            "dim" => {
                if dim.is_some() {
                    return Err(parse_err(line, "repeated `dim` line"));
                }
                let n = match toks[1..] {
                    [n] => n.parse().map_err(|_| parse_err(line, format!("bad dimension {n:?}")))?,
                    _ => return Err(parse_err(line, "expected `dim <n>`")),
                };
                dim = Some((n, line));
            }
            "basis" => {
                if basis.is_some() {
                    return Err(parse_err(line, "repeated `basis` line"));
                }
                if dim.is_none() {
                    return Err(parse_err(line, "`basis` before `dim`"));
                }
                basis = Some(toks[1..].iter().map(|s| s.to_string()).collect());
                let names = basis.as_ref().unwrap();
                if names.len() != dim.unwrap().0 {
                    return Err(parse_err(
                        line,
                        format!("{} basis names for dimension {}", names.len(), dim.unwrap().0),
                    ));
                }
                let mut seen = HashSet::new();
                for name in names {
                    if !crate::algebra::is_identifier(name) {
                        return Err(parse_err(line, format!("invalid basis name {name:?}")));
                    }
                    if !seen.insert(name) {
                        return Err(Error::DuplicateLabel(name.clone()).at_line(line));
                    }
                }
            }
            "bracket" => {
                let f = field.ok_or_else(|| parse_err(line, "`bracket` before `field`"))?;
                if dim.is_none() {
                    return Err(parse_err(line, "`bracket` before `dim`"));
                }
                brackets.push(BracketLine {
                    line,
                    assignment: parse_bracket(&toks, f, line)?,
                });
            }
            other => return Err(parse_err(line, format!("unknown directive {other:?}"))),
        }
    }
    let field = field.ok_or_else(|| parse_err(0, "missing `field` line"))?;
    let (n, dim_line) = dim.ok_or_else(|| parse_err(0, "missing `dim` line"))?;
    let labels = basis.unwrap_or_else(|| crate::algebra::default_labels(n));

    let mut seen = HashSet::new();
    for b in &brackets {
        let a = &b.assignment;
        for name in [&a.left, &a.right].into_iter().chain(a.terms.iter().map(|(_, n)| n)) {
            if !labels.contains(name) {
                return Err(Error::UnknownLabel(name.clone()).at_line(b.line));
            }
        }
        if a.left == a.right {
            if a.terms.iter().any(|(c, _)| !c.is_zero()) {
                return Err(Error::SelfBracketNonzero(a.left.clone()).at_line(b.line));
            }
            continue;
        }
        let key = if a.left < a.right {
            (a.left.clone(), a.right.clone())
        } else {
            (a.right.clone(), a.left.clone())
        };
        if !seen.insert(key) {
            return Err(Error::DuplicateBracket(a.left.clone(), a.right.clone()).at_line(b.line));
        }
    }
    let assignments: Vec<BracketAssignment> = brackets.iter().map(|b| b.assignment.clone()).collect();
    validate_algebra(field, labels, &assignments).map_err(|e| {
        let line = match &e {
            // the last bracket line inside the offending triple
            Error::JacobiViolation(a, b, c) => brackets
                .iter()
                .rev()
                .find(|bl| {
                    let names = [a, b, c];
                    names.contains(&&bl.assignment.left) && names.contains(&&bl.assignment.right)
                })
                .map_or(dim_line, |bl| bl.line),
            _ => dim_line,
        };
        e.at_line(line)
    })
}

/// Canonical text: header lines, then one line per nonzero bracket
/// `[b_i, b_j]`, `i < j`, in index order.
pub fn serialize_lie(l: &LieAlgebra) -> String {
    let mut out = String::new();
    match l.field().kind() {
        FieldKind::Prime(p) => writeln!(out, "field gf {p}"),
        FieldKind::Rationals => writeln!(out, "field rat"),
    }
    .unwrap();
    writeln!(out, "dim {}", l.dim()).unwrap();
    if l.dim() > 0 {
        writeln!(out, "basis {}", l.labels().join(" ")).unwrap();
    }
    for (i, j, v) in l.nonzero_brackets() {
        let terms: Vec<String> = v
            .iter()
            .zip(l.labels())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, name)| if c.is_one() { name.clone() } else { format!("{c}*{name}") })
            .collect();
        writeln!(out, "bracket {} {} = {}", l.labels()[i], l.labels()[j], terms.join(" + ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;

    const ECOMP2: &str = "field gf 2\ndim 4\nbasis e0 e1 x y\nbracket e0 x = e1\nbracket e1 x = e0\nbracket e1 y = e1\nbracket x y = x\n";

    #[test]
    fn ecomp2_round_trip() {
        let l = parse_lie_file(ECOMP2).unwrap();
        assert_eq!(l, ecomp2());
        assert_eq!(serialize_lie(&l), ECOMP2);
    }

    #[test]
    fn comments_defaults_and_coefficients() {
        let text = "# a3 over the rationals\nfield rat\ndim 3  # three\nbracket b1 b3 = b1\nbracket b2 b3 = b2 + -1*b1\n";
        let l = parse_lie_file(text).unwrap();
        assert_eq!(l.labels(), ["b1", "b2", "b3"]);
        let canonical = serialize_lie(&l);
        assert_eq!(
            canonical,
            "field rat\ndim 3\nbasis b1 b2 b3\nbracket b1 b3 = b1\nbracket b2 b3 = -1*b1 + b2\n"
        );
        assert_eq!(parse_lie_file(&canonical).unwrap(), l);
        let half = parse_lie_file("field rat\ndim 2\nbracket b1 b2 = 1/2*b1\n").unwrap();
        assert!(serialize_lie(&half).contains("1/2*b1"));
    }

    #[test]
    fn structural_errors_carry_lines() {
        let self_bracket = "field gf 2\ndim 2\nbasis x y\nbracket x x = y\n";
        assert_eq!(
            parse_lie_file(self_bracket).unwrap_err(),
            Error::SelfBracketNonzero("x".into()).at_line(4)
        );
        let dup = "field gf 3\ndim 2\nbasis x y\nbracket x y = x\nbracket y x = x\n";
        assert_eq!(
            parse_lie_file(dup).unwrap_err(),
            Error::DuplicateBracket("y".into(), "x".into()).at_line(5)
        );
        let unknown = "field gf 2\ndim 2\nbracket b1 q = b1\n";
        assert_eq!(parse_lie_file(unknown).unwrap_err(), Error::UnknownLabel("q".into()).at_line(3));
        let jacobi = "field rat\ndim 3\nbasis x y z\nbracket x y = z\nbracket x z = x\n";
        assert!(matches!(
            parse_lie_file(jacobi).unwrap_err(),
            Error::AtLine { line: 5, source } if matches!(*source, Error::JacobiViolation(..))
        ));
    }

    #[test]
    fn syntax_errors() {
        for (text, line) in [
            ("field gf 4\ndim 1\n", 1),
            ("field gf 2\ndim two\n", 2),
            ("field gf 2\ndim 2\nbracket b1 b2 b1\n", 3),
            ("field gf 2\ndim 2\nbracket b1 b2 = b1 +\n", 3),
            ("field gf 2\ndim 2\nbracket b1 b2 = 1/2*b1\n", 3),
            ("field gf 2\ndim 2\nbasis x\n", 3),
            ("field gf 2\nfrobnicate\n", 2),
        ] {
            let e = parse_lie_file(text).unwrap_err();
            let got = match e {
                Error::Parse { line, .. } | Error::AtLine { line, .. } => line,
                other => panic!("{other:?}"),
            };
            assert_eq!(got, line, "{text:?}");
        }
        assert!(matches!(parse_lie_file("dim 2\n"), Err(Error::Parse { line: 0, .. })));
    }

    #[test]
    fn zero_dimensional() {
        let l = parse_lie_file("field gf 3\ndim 0\n").unwrap();
        assert_eq!(l.dim(), 0);
        assert_eq!(serialize_lie(&l), "field gf 3\ndim 0\n");
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]
        #[test]
        fn random_algebras_round_trip(seed in 0u64..10_000, dim in 2usize..6, odd in proptest::bool::ANY) {
            let f = Field::prime(if odd { 3 } else { 2 }).unwrap();
            let l = crate::workbench::catalog::random_solvable(seed, dim, f).unwrap();
            let text = serialize_lie(&l);
            let back = parse_lie_file(&text).unwrap();
            proptest::prop_assert_eq!(&back, &l);
            proptest::prop_assert_eq!(serialize_lie(&back), text);
        }
    }
}
