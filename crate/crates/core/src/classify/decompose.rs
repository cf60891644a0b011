//! The abelian decomposition `L = A_n ∔ … ∔ A_0` of a complemented algebra
//! and the structure checks that hang off it.

use serde_json::json;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::lattice::{nilradical_id, EnumerationBudget, Lattice, NodeId};
use crate::linalg::Subspace;
use crate::report::{subspace_json, subspaces_json, Status, TheoremRecord};

use super::{complemented_in, lattice_for, monolith_in, Route, Verdict};

/// Outcome of the three-part corollary checks on a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionChecks {
    /// Every `A_i` is an abelian subalgebra.
    pub abelian: bool,
    /// `L = A_n ∔ … ∔ A_0`.
    pub direct: bool,
    /// `L^{(i)} = A_n ∔ … ∔ A_i` for every `i`.
    pub partial_sums: bool,
    /// Indexed by `i = 0..=n`: an ideal `S` with `L^{(i+1)} ⊆ S ⊆ L^{(i)}`
    /// having no ideal complement there, if any. Only `i ≥ 1` counts.
    pub irreducible: Vec<Option<Subspace>>,
}

impl DecompositionChecks {
    pub fn passed(&self) -> bool {
        self.abelian && self.direct && self.partial_sums && self.irreducible.iter().skip(1).all(Option::is_none)
    }
}

#[derive(Clone, Debug)]
pub struct ComplementedDecomposition {
    /// `parts[i] = A_i`, `i = 0..=n`.
    pub parts: Vec<Subspace>,
    /// `complements[i - 1] = B_i` for `i = 1..=n`, with `B_i` a complement
    /// of `A_i` in `B_{i+1}` (`B_{n+1} = L`).
    pub complements: Vec<Subspace>,
    /// `derived[i] = L^{(i)}`, `i = 0..=n+1`.
    pub derived: Vec<Subspace>,
    pub checks: DecompositionChecks,
}

impl ComplementedDecomposition {
    pub fn n(&self) -> usize {
        self.parts.len() - 1
    }
}

#[derive(Clone, Debug)]
pub enum DecompositionOutcome {
    Decomposed(ComplementedDecomposition),
    NotComplemented(Verdict),
}

fn id(lat: &Lattice, s: &Subspace) -> NodeId {
    lat.id_of(s).expect("derived terms of subalgebras are subalgebras")
}

/// Derived series of `L` down to zero, as lattice nodes.
fn derived_ids(lat: &Lattice) -> Vec<NodeId> {
    let l = lat.algebra();
    let mut out: Vec<NodeId> = l.derived_series_of(&l.full()).iter().map(|s| id(lat, s)).collect();
    if *out.last().unwrap() != lat.zero_id() {
        out.push(lat.zero_id());
    }
    out
}

/// Builds `A_n, B_n, …, A_0` by repeated complement search; `Err(i)` names
/// the stage `i` at which `A_i` has no complement in `B_{i+1}`.
fn recipe(lat: &Lattice) -> std::result::Result<(Vec<NodeId>, Vec<NodeId>), usize> {
    let l = lat.algebra();
    let derived = derived_ids(lat);
    let zero = lat.zero_id();
    // derived = [L, L^(1), …, L^(n), 0]
    let n = derived.len().saturating_sub(2);
    if lat.dim(lat.full_id()) == 0 {
        return Ok((vec![zero], Vec::new()));
    }
    let mut parts = vec![zero; n + 1];
    let mut complements = vec![zero; n];
    parts[n] = derived[n];
    let mut top = lat.full_id();
    for i in (1..=n).rev() {
        if i < n {
            let terms = l.derived_series_of(&lat.space(top));
            parts[i] = id(lat, &terms[i]);
        }
        let b = lat.complement(top, parts[i], zero).ok_or(i)?;
        complements[i - 1] = b;
        top = b;
    }
    if n > 0 {
        parts[0] = top;
    }
    Ok((parts, complements))
}

fn corollary_checks(lat: &Lattice, parts: &[NodeId], derived: &[NodeId]) -> DecompositionChecks {
    let n = parts.len() - 1;
    let abelian = parts.iter().all(|&a| lat.is_abelian(a));
    let spaces: Vec<Subspace> = parts.iter().map(|&a| lat.space(a)).collect();
    let mut partial_sums = true;
    let mut direct = true;
    let mut acc = Subspace::zero(lat.algebra().field(), lat.algebra().dim());
    let mut dims = 0;
    for i in (0..=n).rev() {
        acc = acc.sum(&spaces[i]);
        dims += spaces[i].dim();
        if acc.dim() != dims {
            direct = false;
        }
        if acc != lat.space(derived[i]) {
            partial_sums = false;
        }
    }
    direct &= acc.is_full();
    let irreducible = (0..=n)
        .map(|i| {
            let (hi, lo) = (derived[i], derived[i + 1]);
            let ideals: Vec<NodeId> = lat.between(lo, hi).filter(|&s| lat.is_ideal(s)).collect();
            ideals
                .iter()
                .copied()
                .find(|&s| {
                    !ideals
                        .iter()
                        .any(|&t| lat.meet(s, t) == lo && lat.join_dim(s, t) == lat.dim(hi))
                })
                .map(|s| lat.space(s))
        })
        .collect();
    DecompositionChecks {
        abelian,
        direct,
        partial_sums,
        irreducible,
    }
}

fn assemble(lat: &Lattice, parts: Vec<NodeId>, complements: Vec<NodeId>) -> ComplementedDecomposition {
    let derived = derived_ids(lat);
    let n = parts.len() - 1;
    let derived = &derived[..(n + 2).min(derived.len())];
    let mut derived = derived.to_vec();
    while derived.len() < n + 2 {
        derived.push(lat.zero_id());
    }
    let checks = corollary_checks(lat, &parts, &derived);
    ComplementedDecomposition {
        parts: parts.iter().map(|&a| lat.space(a)).collect(),
        complements: complements.iter().map(|&b| lat.space(b)).collect(),
        derived: derived.iter().map(|&d| lat.space(d)).collect(),
        checks,
    }
}

/// The decomposition of a complemented `L`; a non-complemented `L` yields
/// the default route's verdict instead.
pub fn complemented_decomposition_in(lat: &Lattice) -> Result<DecompositionOutcome> {
    let verdict = complemented_in(lat, Route::SplitsOverIdeals)?;
    if !verdict.complemented {
        return Ok(DecompositionOutcome::NotComplemented(verdict));
    }
    let (parts, complements) = recipe(lat).map_err(|i| {
        Error::TheoremViolation(format!(
            "complemented algebra: A_{i} has no complementing subalgebra"
        ))
    })?;
    Ok(DecompositionOutcome::Decomposed(assemble(lat, parts, complements)))
}

pub fn complemented_decomposition(l: &LieAlgebra, budget: &EnumerationBudget) -> Result<DecompositionOutcome> {
    let lat = lattice_for(l, budget)?;
    complemented_decomposition_in(&lat)
}

/// Runs the construction on an algebra that is not complemented: `Ok(d)` if
/// every step went through (whatever the checks say), `Err(i)` with the
/// stage that had no complement otherwise.
pub(crate) fn attempt_decomposition(lat: &Lattice) -> std::result::Result<ComplementedDecomposition, usize> {
    let (parts, complements) = recipe(lat)?;
    Ok(assemble(lat, parts, complements))
}

fn node(lat: &Lattice, s: &Subspace) -> NodeId {
    lat.id_of(s).expect("subalgebra of L")
}

/// Records for the ideal, nilradical, center, minimal-ideal, ideal-splitting
/// and monolithic statements on a decomposition of a complemented `L`.
pub fn decomposition_theorems_check(lat: &Lattice, d: &ComplementedDecomposition) -> Result<Vec<TheoremRecord>> {
    let l = lat.algebra();
    let n = d.n();
    let parts: Vec<NodeId> = d.parts.iter().map(|a| node(lat, a)).collect();
    let split_dim = |k: NodeId| -> usize { parts.iter().map(|&a| lat.dim(lat.meet(k, a))).sum() };
    let mut out = Vec::new();

    let ideals = lat.ideals();
    let bad = ideals.iter().copied().find(|&k| split_dim(k) != lat.dim(k));
    out.push(TheoremRecord::check(
        "decomposition.ideals",
        bad.is_none(),
        json!({
            "ideals_checked": ideals.len(),
            "counterexample": bad.map(|k| json!({
                "ideal": subspace_json(&lat.space(k)),
                "intersections": subspaces_json(&parts.iter().map(|&a| lat.space(lat.meet(k, a))).collect::<Vec<_>>()),
            })),
        }),
    ));

    let nil = nilradical_id(lat)?;
    let nil_ok = lat.contains(nil, parts[n]) && split_dim(nil) == lat.dim(nil);
    let nil_parts: Vec<Subspace> = parts.iter().map(|&a| lat.space(lat.meet(nil, a))).collect();
    out.push(TheoremRecord::check(
        "decomposition.nilradical",
        nil_ok,
        json!({"nilradical": subspace_json(&lat.space(nil)), "parts": subspaces_json(&nil_parts)}),
    ));

    let mut center_bad = None;
    for i in 0..=n {
        let di = &d.derived[i];
        let z = l.centralizer(di)?.intersection(di);
        if z != nil_parts[i] {
            center_bad = Some(json!({"i": i, "center": subspace_json(&z), "nil_part": subspace_json(&nil_parts[i])}));
            break;
        }
    }
    out.push(TheoremRecord::check(
        "decomposition.center",
        center_bad.is_none(),
        json!({"counterexample": center_bad}),
    ));

    let minimal = lat.minimal_ideals_between(lat.full_id(), lat.zero_id());
    let stray = minimal
        .iter()
        .copied()
        .find(|&m| !nil_parts.iter().any(|np| np.contains_subspace(&lat.space(m))));
    out.push(TheoremRecord::check(
        "decomposition.minimal_ideals",
        stray.is_none(),
        json!({
            "minimal_ideals": subspaces_json(&minimal.iter().map(|&m| lat.space(m)).collect::<Vec<_>>()),
            "counterexample": stray.map(|m| subspace_json(&lat.space(m))),
        }),
    ));

    let (b, c) = if n == 0 {
        (lat.full_id(), lat.zero_id())
    } else {
        (parts[n], node(lat, &d.complements[n - 1]))
    };
    let bad = ideals
        .iter()
        .copied()
        .find(|&k| lat.dim(lat.meet(b, k)) + lat.dim(lat.meet(c, k)) != lat.dim(k));
    out.push(TheoremRecord::check(
        "decomposition.ideal_splitting",
        bad.is_none(),
        json!({
            "b": subspace_json(&lat.space(b)),
            "c": subspace_json(&lat.space(c)),
            "counterexample": bad.map(|k| subspace_json(&lat.space(k))),
        }),
    ));

    out.push(match monolith_in(lat) {
        None => TheoremRecord::new("decomposition.monolithic", Status::Skipped, json!({"reason": "not monolithic"})),
        Some(w) => {
            let ws = lat.space(w);
            let cw = l.centralizer(&ws)?;
            let lw = l.bracket_span(&l.full(), &ws)?;
            let z = l.center();
            let chain = [
                ("nilradical", lat.space(nil)),
                ("a_n", d.parts[n].clone()),
                ("derived_n", d.derived[n].clone()),
                ("centralizer", cw),
                ("bracket", lw),
            ];
            let failed: Vec<&str> = chain
                .iter()
                .filter(|(_, s)| *s != ws)
                .map(|(name, _)| *name)
                .chain((!z.is_zero()).then_some("center"))
                .collect();
            TheoremRecord::check(
                "decomposition.monolithic",
                failed.is_empty(),
                json!({
                    "monolith": subspace_json(&ws),
                    "center": subspace_json(&z),
                    "mismatches": failed,
                }),
            )
        }
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;
    use crate::lattice::tests::lattice;

    fn decomposed(l: &LieAlgebra) -> (Lattice, ComplementedDecomposition) {
        let lat = lattice(l);
        match complemented_decomposition_in(&lat).unwrap() {
            DecompositionOutcome::Decomposed(d) => (lat, d),
            DecompositionOutcome::NotComplemented(v) => panic!("not complemented: {v:?}"),
        }
    }

    #[test]
    fn ecomp2_parts() {
        let e = ecomp2();
        let (lat, d) = decomposed(&e);
        assert_eq!(d.n(), 2);
        assert_eq!(d.parts[2], e.span_labels(&["e0", "e1"]).unwrap());
        assert_eq!(d.parts[1], e.span_labels(&["x"]).unwrap());
        assert_eq!(d.parts[0], e.span_labels(&["y"]).unwrap());
        assert!(d.checks.passed(), "{:?}", d.checks);
        assert_eq!(d.checks.irreducible[0], None);
        for r in decomposition_theorems_check(&lat, &d).unwrap() {
            assert_eq!(r.status, Status::Pass, "{r:?}");
        }
    }

    #[test]
    fn ecomp2_ideal_intersections() {
        let e = ecomp2();
        let (_, d) = decomposed(&e);
        let k = e.span_labels(&["e0", "e1", "x"]).unwrap();
        let dims: Vec<usize> = d.parts.iter().rev().map(|a| a.intersection(&k).dim()).collect();
        assert_eq!(dims, vec![2, 1, 0]);
    }

    #[test]
    fn abelian_single_part() {
        let ab = LieAlgebra::abelian(gf(2), 2);
        let (lat, d) = decomposed(&ab);
        assert_eq!(d.parts, vec![ab.full()]);
        assert!(d.checks.passed());
        let records = decomposition_theorems_check(&lat, &d).unwrap();
        assert!(records.iter().all(|r| r.status != Status::Fail), "{records:?}");
    }

    #[test]
    fn one_dimensional_algebra_breaks_the_monolithic_chain() {
        // the monolith of a 1-dim algebra is central, so Z(L) = 0 and
        // [L, W] = W both fail
        let one = LieAlgebra::abelian(gf(2), 1);
        let (lat, d) = decomposed(&one);
        let r = decomposition_theorems_check(&lat, &d).unwrap();
        let mono = r.iter().find(|r| r.id == "decomposition.monolithic").unwrap();
        assert_eq!(mono.status, Status::Fail);
        assert_eq!(mono.witness["mismatches"], json!(["bracket", "center"]));
    }

    #[test]
    fn h3_is_refused() {
        let lat = lattice(&h3(gf(2)));
        match complemented_decomposition_in(&lat).unwrap() {
            DecompositionOutcome::NotComplemented(v) => assert!(v.witness.is_some()),
            DecompositionOutcome::Decomposed(_) => panic!("h3 is not complemented"),
        }
    }
}
