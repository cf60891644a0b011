//! Frattini subalgebras, chief series, prefrattini subalgebras and the
//! residuals built from them.
//!
//! Most functions come in two forms: a convenience wrapper taking the algebra
//! and a budget, and an `*_in` form working on a prebuilt [`Lattice`] over a
//! base ideal `base`, which stands for the quotient `L/base` (every subspace
//! involved contains `base`).

use serde::Serialize;

use crate::algebra::{nilradical_char0, LieAlgebra, SeriesChain, SeriesKind};
use crate::error::{Error, Result};
use crate::lattice::{EnumerationBudget, Lattice, NodeId};
use crate::linalg::Subspace;

/// Cap on the number of tuples in the product of the candidate sets.
pub const MAX_PRODUCT: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorClass {
    Frattini,
    Complemented,
}

/// An ascending chain of ideals `base = A_0 ⊂ … ⊂ A_n = L` with minimal
/// factors, each classified.
///
/// Factor `i` (1-based) is `A_i/A_{i-1}`; per-factor vectors are indexed by
/// `i - 1`.
#[derive(Clone, Debug)]
pub struct ChiefSeries {
    pub terms: Vec<NodeId>,
    pub classes: Vec<FactorClass>,
    /// For complemented factors, a maximal `M ⊇ A_{i-1}` with
    /// `A_i + M = L` and `A_i ∩ M = A_{i-1}`.
    pub witnesses: Vec<Option<NodeId>>,
    /// Factors that are not Frattini (1-based).
    pub index_set: Vec<usize>,
    /// For each `i` in the index set: the maximal `M ⊇ A_{i-1}` missing `A_i`.
    pub candidates: Vec<Vec<NodeId>>,
}

impl ChiefSeries {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn spaces(&self, lat: &Lattice) -> Vec<Subspace> {
        self.terms.iter().map(|&t| lat.space(t)).collect()
    }

    pub fn factor_dims(&self, lat: &Lattice) -> Vec<usize> {
        self.terms.windows(2).map(|w| lat.dim(w[1]) - lat.dim(w[0])).collect()
    }

    /// `Σ_{i ∉ I} dim(A_i/A_{i-1})`.
    pub fn frattini_dimension(&self, lat: &Lattice) -> usize {
        self.factor_dims(lat)
            .iter()
            .zip(&self.classes)
            .filter(|(_, c)| **c == FactorClass::Frattini)
            .map(|(d, _)| d)
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverAvoid {
    Covers,
    Avoids,
    /// Only possible for a trivial factor.
    Both,
    Neither,
}

/// For each factor of `terms`: whether `b` covers (`b + A_i = b + A_{i-1}`)
/// or avoids (`b ∩ A_i = b ∩ A_{i-1}`) it.
pub fn cover_avoid_profile(b: &Subspace, terms: &[Subspace]) -> Vec<CoverAvoid> {
    terms
        .windows(2)
        .map(|w| {
            let covers = b.sum(&w[1]) == b.sum(&w[0]);
            let avoids = b.intersection(&w[1]) == b.intersection(&w[0]);
            match (covers, avoids) {
                (true, true) => CoverAvoid::Both,
                (true, false) => CoverAvoid::Covers,
                (false, true) => CoverAvoid::Avoids,
                (false, false) => CoverAvoid::Neither,
            }
        })
        .collect()
}

fn lattice_for(l: &LieAlgebra, budget: &EnumerationBudget) -> Result<Lattice> {
    if !l.field().is_finite() {
        return Err(Error::InfiniteFieldEnumeration);
    }
    l.require_solvable()?;
    Lattice::new(l, budget)
}

/// `φ(L/base)`, pulled back.
pub fn frattini_in(lat: &Lattice, base: NodeId) -> NodeId {
    lat.frattini_between(lat.full_id(), base)
}

pub fn frattini_subalgebra(l: &LieAlgebra, budget: &EnumerationBudget) -> Result<Subspace> {
    let lat = lattice_for(l, budget)?;
    let phi = frattini_in(&lat, lat.zero_id());
    if !lat.is_ideal(phi) {
        return Err(Error::TheoremViolation(
            "Frattini subalgebra of a solvable algebra is not an ideal".into(),
        ));
    }
    Ok(lat.space(phi))
}

fn classify_factor(lat: &Lattice, lower: NodeId, upper: NodeId) -> Result<(FactorClass, Option<NodeId>, Vec<NodeId>)> {
    let full = lat.full_id();
    let candidates: Vec<NodeId> = lat
        .maximal_between(full, lower)
        .into_iter()
        .filter(|&m| !lat.contains(m, upper))
        .collect();
    let witness = candidates
        .iter()
        .copied()
        .find(|&m| lat.join_dim(upper, m) == lat.dim(full) && lat.meet(upper, m) == lower);
    let frattini = lat.contains(lat.frattini_between(full, lower), upper);
    match (witness, frattini) {
        (Some(m), false) => Ok((FactorClass::Complemented, Some(m), candidates)),
        (None, true) => Ok((FactorClass::Frattini, None, candidates)),
        _ => Err(Error::TheoremViolation(format!(
            "chief factor {} / {} is {} Frattini and complemented",
            lat.space(upper).render(lat.algebra().labels()),
            lat.space(lower).render(lat.algebra().labels()),
            if frattini { "both" } else { "neither" }
        ))),
    }
}

fn build_series(lat: &Lattice, terms: Vec<NodeId>) -> Result<ChiefSeries> {
    let mut classes = Vec::new();
    let mut witnesses = Vec::new();
    let mut index_set = Vec::new();
    let mut candidates = Vec::new();
    for (i, w) in terms.windows(2).enumerate() {
        let (class, witness, cands) = classify_factor(lat, w[0], w[1])?;
        if class == FactorClass::Complemented {
            index_set.push(i + 1);
            candidates.push(cands);
        }
        classes.push(class);
        witnesses.push(witness);
    }
    Ok(ChiefSeries {
        terms,
        classes,
        witnesses,
        index_set,
        candidates,
    })
}

/// Canonical chief series of `L/base`: each step adds the minimal ideal that
/// comes first in canonical order (compared as subspaces of `L`).
pub fn chief_series_in(lat: &Lattice, base: NodeId) -> Result<ChiefSeries> {
    let full = lat.full_id();
    let mut terms = vec![base];
    while *terms.last().unwrap() != full {
        let cur = *terms.last().unwrap();
        let next = *lat
            .minimal_ideals_between(full, cur)
            .iter()
            .min()
            .expect("a proper ideal lies under a minimal one");
        terms.push(next);
    }
    build_series(lat, terms)
}

/// Up to `limit` distinct chief series of `L/base`, in depth-first order of
/// minimal-ideal choices; the canonical series comes first.
pub fn all_chief_series_in(lat: &Lattice, base: NodeId, limit: usize) -> Result<Vec<ChiefSeries>> {
    let full = lat.full_id();
    let mut out = Vec::new();
    let mut stack = vec![vec![base]];
    while let Some(terms) = stack.pop() {
        if out.len() >= limit {
            break;
        }
        let cur = *terms.last().unwrap();
        if cur == full {
            out.push(build_series(lat, terms)?);
            continue;
        }
        let mut mins = lat.minimal_ideals_between(full, cur);
        mins.sort_unstable();
        for &m in mins.iter().rev() {
            let mut t = terms.clone();
            t.push(m);
            stack.push(t);
        }
    }
    Ok(out)
}

pub fn chief_series(l: &LieAlgebra, budget: &EnumerationBudget) -> Result<(Lattice, ChiefSeries)> {
    let lat = lattice_for(l, budget)?;
    let series = chief_series_in(&lat, lat.zero_id())?;
    Ok((lat, series))
}

/// The prefrattini subalgebras built from one chief series: all intersections
/// `∩_{i∈I} M_i` with `M_i` in the candidate sets, deduplicated and sorted.
/// An empty index set yields `{L}`.
pub fn prefrattini_from(lat: &Lattice, series: &ChiefSeries) -> Result<Vec<NodeId>> {
    let product = series
        .candidates
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.len()))
        .unwrap_or(usize::MAX);
    if product > MAX_PRODUCT {
        return Err(Error::BudgetExceeded(format!(
            "{product} candidate tuples exceed the limit {MAX_PRODUCT}"
        )));
    }
    let mut members = Vec::new();
    let mut partial = vec![(lat.full_id(), 0usize)];
    while let Some((acc, depth)) = partial.pop() {
        if depth == series.candidates.len() {
            members.push(acc);
            continue;
        }
        for &m in &series.candidates[depth] {
            partial.push((lat.meet(acc, m), depth + 1));
        }
    }
    members.sort_unstable();
    members.dedup();
    Ok(members)
}

pub fn prefrattini_in(lat: &Lattice, base: NodeId) -> Result<(ChiefSeries, Vec<NodeId>)> {
    let series = chief_series_in(lat, base)?;
    let members = prefrattini_from(lat, &series)?;
    Ok((series, members))
}

pub fn prefrattini_subalgebras(l: &LieAlgebra, budget: &EnumerationBudget) -> Result<Vec<Subspace>> {
    let lat = lattice_for(l, budget)?;
    let (_, members) = prefrattini_in(&lat, lat.zero_id())?;
    Ok(members.iter().map(|&m| lat.space(m)).collect())
}

/// Ideals `B ⊇ base` with `L/B` complemented (split over all its ideals).
pub fn complemented_quotients_in(lat: &Lattice, base: NodeId) -> Vec<NodeId> {
    lat.ideals_between(lat.full_id(), base)
        .into_iter()
        .filter(|&b| lat.non_split_ideal(b).is_none())
        .collect()
}

/// `π(L/base)`, computed as the intersection of ideals with complemented
/// quotient and cross-checked against the sum of ideal closures of the
/// prefrattini subalgebras.
pub fn prefrattini_residual_in(lat: &Lattice, base: NodeId) -> Result<NodeId> {
    let full = lat.full_id();
    let by_quotients = lat.meet_all(complemented_quotients_in(lat, base), full);
    let (_, members) = prefrattini_in(lat, base)?;
    let l = lat.algebra();
    let mut closure = lat.space(base);
    for m in members {
        closure = closure.sum(&l.ideal_closure(&lat.space(m))?);
    }
    if lat.space(by_quotients) != closure {
        return Err(Error::TheoremViolation(format!(
            "prefrattini residual {} differs from the ideal closure {} of the prefrattini subalgebras",
            lat.space(by_quotients).render(l.labels()),
            closure.render(l.labels())
        )));
    }
    Ok(by_quotients)
}

pub fn prefrattini_residual(l: &LieAlgebra, budget: &EnumerationBudget) -> Result<Subspace> {
    let lat = lattice_for(l, budget)?;
    Ok(lat.space(prefrattini_residual_in(&lat, lat.zero_id())?))
}

/// Ideals `B ⊇ base` with `L/B` elementary.
pub fn elementary_quotients_in(lat: &Lattice, base: NodeId) -> Vec<NodeId> {
    let full = lat.full_id();
    lat.ideals_between(full, base)
        .into_iter()
        .filter(|&b| lat.is_elementary_quotient(b))
        .collect()
}

/// `E(L/base)`: intersection of the ideals with elementary quotient, checked
/// to have an elementary quotient itself.
pub fn elementary_residual_in(lat: &Lattice, base: NodeId) -> Result<NodeId> {
    let full = lat.full_id();
    let e = lat.meet_all(elementary_quotients_in(lat, base), full);
    if !lat.is_elementary_quotient(e) {
        return Err(Error::TheoremViolation(format!(
            "quotient by the elementary residual {} is not elementary",
            lat.space(e).render(lat.algebra().labels())
        )));
    }
    Ok(e)
}

pub fn elementary_residual(l: &LieAlgebra, budget: &EnumerationBudget) -> Result<Subspace> {
    let lat = lattice_for(l, budget)?;
    Ok(lat.space(elementary_residual_in(&lat, lat.zero_id())?))
}

/// Preimage of the nilradical of `L/base`.
pub fn nilradical_in(lat: &Lattice, base: NodeId) -> Result<NodeId> {
    let l = lat.algebra();
    let b = lat.space(base);
    let nilpotent: Vec<NodeId> = lat
        .ideals_between(lat.full_id(), base)
        .into_iter()
        .filter(|&s| l.is_nilpotent_modulo(&lat.space(s), &b))
        .collect();
    let top = *nilpotent.iter().max_by_key(|&&s| lat.dim(s)).expect("base qualifies");
    if let Some(&bad) = nilpotent.iter().find(|&&s| !lat.contains(top, s)) {
        return Err(Error::TheoremViolation(format!(
            "nilpotent ideal {} is not inside {}",
            lat.space(bad).render(l.labels()),
            lat.space(top).render(l.labels())
        )));
    }
    Ok(top)
}

/// `N_0 = base`, `N_{i+1}` = preimage of the nilradical of `L/N_i`, up to `L`.
pub fn nilpotent_series_in(lat: &Lattice, base: NodeId) -> Result<Vec<NodeId>> {
    let mut terms = vec![base];
    while *terms.last().unwrap() != lat.full_id() {
        let next = nilradical_in(lat, *terms.last().unwrap())?;
        if next == *terms.last().unwrap() {
            return Err(Error::NonSolvable);
        }
        terms.push(next);
    }
    Ok(terms)
}

/// Nilpotent series of `L`; over the rationals each nilradical comes from
/// the trace criterion on the successive quotients.
pub fn nilpotent_series(l: &LieAlgebra, budget: &EnumerationBudget) -> Result<SeriesChain> {
    l.require_solvable()?;
    let terms = if l.field().is_finite() {
        let lat = Lattice::new(l, budget)?;
        nilpotent_series_in(&lat, lat.zero_id())?
            .into_iter()
            .map(|t| lat.space(t))
            .collect()
    } else {
        let mut terms = vec![l.zero()];
        while !terms.last().unwrap().is_full() {
            let q = l.quotient(terms.last().unwrap())?;
            let nil = nilradical_char0(&q.algebra)?;
            terms.push(q.pull_back(&nil));
        }
        terms
    };
    Ok(SeriesChain {
        kind: SeriesKind::NilpotentSeries,
        terms,
    })
}

/// Cartan subalgebras of `top/base`: subalgebras `C` with `base ⊆ C ⊆ top`,
/// `C/base` nilpotent and equal to its normalizer in `top/base`.
pub fn cartan_between(lat: &Lattice, top: NodeId, base: NodeId) -> Vec<NodeId> {
    let l = lat.algebra();
    let (t, b) = (lat.space(top), lat.space(base));
    lat.between(base, top)
        .filter(|&c| {
            let cs = lat.space(c);
            l.is_nilpotent_modulo(&cs, &b)
                && l.normalizer(&cs).expect("a subalgebra").intersection(&t) == cs
        })
        .collect()
}

pub fn cartan_subalgebras(l: &LieAlgebra, budget: &EnumerationBudget) -> Result<Vec<Subspace>> {
    if !l.field().is_finite() {
        return Err(Error::InfiniteFieldEnumeration);
    }
    let lat = Lattice::new(l, budget)?;
    Ok(cartan_between(&lat, lat.full_id(), lat.zero_id())
        .into_iter()
        .map(|c| lat.space(c))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;

    fn budget() -> EnumerationBudget {
        EnumerationBudget::default()
    }

    fn b2() -> LieAlgebra {
        let e = ecomp2();
        e.subalgebra(&e.square()).unwrap().algebra
    }

    fn lat(l: &LieAlgebra) -> Lattice {
        Lattice::new(l, &budget()).unwrap()
    }

    #[test]
    fn frattini_of_the_derived_ideal_for_p3() {
        // ad x permutes e0, e1, e2 cyclically; (P - 1)^3 = 0 in characteristic 3,
        // so the maximal subalgebras avoiding span(e_i) are (P - 1)A + F(x + a)
        // and φ is the coordinate-sum-zero plane, not the line of e0 + e1 + e2.
        let l = crate::workbench::catalog::ecomp(gf(3)).unwrap();
        let b = l.subalgebra(&l.square()).unwrap().algebra;
        let f = b.field();
        let phi = frattini_subalgebra(&b, &budget()).unwrap();
        assert_eq!(phi, b.span(&[vector(f, &[1, 2, 0, 0]), vector(f, &[0, 1, 2, 0])]).unwrap());
        assert!(phi.contains(&vector(f, &[1, 1, 1, 0])));
        assert_eq!(prefrattini_subalgebras(&b, &budget()).unwrap(), vec![phi.clone()]);
        assert_eq!(prefrattini_residual(&b, &budget()).unwrap(), phi);
    }

    #[test]
    fn frattini_examples() {
        for p in [2, 3] {
            let a = a3(gf(p));
            assert_eq!(frattini_subalgebra(&a, &budget()).unwrap(), a.span_labels(&["x"]).unwrap());
        }
        let b = b2();
        let f = b.field();
        assert_eq!(
            frattini_subalgebra(&b, &budget()).unwrap(),
            b.span(&[vector(f, &[1, 1, 0])]).unwrap()
        );
        assert!(frattini_subalgebra(&ecomp2(), &budget()).unwrap().is_zero());
        let h = h3(gf(3));
        assert_eq!(frattini_subalgebra(&h, &budget()).unwrap(), h.span_labels(&["z"]).unwrap());
    }

    #[test]
    fn chief_series_examples() {
        let r = r2(gf(2));
        let (lat, s) = chief_series(&r, &budget()).unwrap();
        assert_eq!(s.spaces(&lat), vec![r.zero(), r.span_labels(&["x"]).unwrap(), r.full()]);
        assert_eq!(s.classes, vec![FactorClass::Complemented; 2]);
        assert_eq!(lat.space(s.witnesses[0].unwrap()), r.span_labels(&["y"]).unwrap());
        assert_eq!(lat.space(s.witnesses[1].unwrap()), r.span_labels(&["x"]).unwrap());

        let e = ecomp2();
        let (lat, s) = chief_series(&e, &budget()).unwrap();
        assert_eq!(
            s.spaces(&lat),
            vec![
                e.zero(),
                e.span_labels(&["e0", "e1"]).unwrap(),
                e.span_labels(&["e0", "e1", "x"]).unwrap(),
                e.full()
            ]
        );
        assert_eq!(s.factor_dims(&lat), vec![2, 1, 1]);
        assert_eq!(s.classes, vec![FactorClass::Complemented; 3]);

        let h = h3(gf(3));
        let (lat, s) = chief_series(&h, &budget()).unwrap();
        assert_eq!(lat.space(s.terms[1]), h.span_labels(&["z"]).unwrap());
        assert_eq!(lat.dim(s.terms[2]), 2);
        assert_eq!(
            s.classes,
            vec![FactorClass::Frattini, FactorClass::Complemented, FactorClass::Complemented]
        );
        assert_eq!(s.index_set, vec![2, 3]);
    }

    #[test]
    fn prefrattini_examples() {
        let e = ecomp2();
        assert_eq!(prefrattini_subalgebras(&e, &budget()).unwrap(), vec![e.zero()]);
        let h = h3(gf(3));
        assert_eq!(prefrattini_subalgebras(&h, &budget()).unwrap(), vec![h.span_labels(&["z"]).unwrap()]);
        let b = b2();
        let phi = frattini_subalgebra(&b, &budget()).unwrap();
        assert_eq!(prefrattini_subalgebras(&b, &budget()).unwrap(), vec![phi]);
    }

    #[test]
    fn cover_avoid_examples() {
        let h = h3(gf(3));
        let (lat, s) = chief_series(&h, &budget()).unwrap();
        let terms = s.spaces(&lat);
        assert!(cover_avoid_profile(&h.full(), &terms).iter().all(|c| *c == CoverAvoid::Covers));
        assert!(cover_avoid_profile(&h.zero(), &terms).iter().all(|c| *c == CoverAvoid::Avoids));
        let z = h.span_labels(&["z"]).unwrap();
        assert_eq!(
            cover_avoid_profile(&z, &terms),
            vec![CoverAvoid::Covers, CoverAvoid::Avoids, CoverAvoid::Avoids]
        );
    }

    #[test]
    fn residual_examples() {
        let e = ecomp2();
        assert!(prefrattini_residual(&e, &budget()).unwrap().is_zero());
        let b = b2();
        let f = b.field();
        let line = b.span(&[vector(f, &[1, 1, 0])]).unwrap();
        assert_eq!(prefrattini_residual(&b, &budget()).unwrap(), line);
        assert_eq!(elementary_residual(&b, &budget()).unwrap(), line);
        let h = h3(gf(2));
        assert_eq!(prefrattini_residual(&h, &budget()).unwrap(), h.span_labels(&["z"]).unwrap());
        let ab = LieAlgebra::abelian(gf(3), 3);
        assert!(elementary_residual(&ab, &budget()).unwrap().is_zero());
        let a = a3(gf(3));
        assert_eq!(elementary_residual(&a, &budget()).unwrap(), a.span_labels(&["x"]).unwrap());
    }

    #[test]
    fn nilpotent_series_examples() {
        let h = h3(gf(3));
        assert_eq!(nilpotent_series(&h, &budget()).unwrap().terms, vec![h.zero(), h.full()]);
        for f in [gf(2), crate::arith::Field::rationals()] {
            let r = r2(f);
            assert_eq!(
                nilpotent_series(&r, &budget()).unwrap().terms,
                vec![r.zero(), r.span_labels(&["x"]).unwrap(), r.full()]
            );
        }
        let e = ecomp2();
        assert_eq!(
            nilpotent_series(&e, &budget()).unwrap().terms,
            vec![
                e.zero(),
                e.span_labels(&["e0", "e1"]).unwrap(),
                e.span_labels(&["e0", "e1", "x"]).unwrap(),
                e.full()
            ]
        );
    }

    #[test]
    fn cartan_examples() {
        let ab = LieAlgebra::abelian(gf(2), 2);
        assert_eq!(cartan_subalgebras(&ab, &budget()).unwrap(), vec![ab.full()]);
        let r = r2(gf(2));
        let f = r.field();
        let mut expect = vec![r.span_labels(&["y"]).unwrap(), r.span(&[vector(f, &[1, 1])]).unwrap()];
        expect.sort();
        assert_eq!(cartan_subalgebras(&r, &budget()).unwrap(), expect);
        let h = h3(gf(3));
        assert_eq!(cartan_subalgebras(&h, &budget()).unwrap(), vec![h.full()]);
    }

    #[test]
    fn quotient_sections_agree_with_induced_quotients() {
        let e = ecomp2();
        let lat = lat(&e);
        let a = lat.id_of(&e.span_labels(&["e0", "e1"]).unwrap()).unwrap();
        // L/A ≅ r2: its Frattini subalgebra is trivial, so φ(L/A) pulls back to A
        assert_eq!(frattini_in(&lat, a), a);
        let q = e.quotient(&lat.space(a)).unwrap();
        let ql = Lattice::new(&q.algebra, &budget()).unwrap();
        let (_, pq) = prefrattini_in(&ql, ql.zero_id()).unwrap();
        let (_, pl) = prefrattini_in(&lat, a).unwrap();
        let pulled: Vec<Subspace> = pq.iter().map(|&m| q.pull_back(&ql.space(m))).collect();
        let direct: Vec<Subspace> = pl.iter().map(|&m| lat.space(m)).collect();
        assert_eq!(pulled, direct);
    }

    #[test]
    fn enumerate_all_series_of_abelian_plane() {
        let ab = LieAlgebra::abelian(gf(2), 2);
        let lat = lat(&ab);
        let all = all_chief_series_in(&lat, lat.zero_id(), 10).unwrap();
        // one series per line
        assert_eq!(all.len(), 3);
        assert_eq!(all[0].terms, chief_series_in(&lat, lat.zero_id()).unwrap().terms);
        assert_eq!(all_chief_series_in(&lat, lat.zero_id(), 2).unwrap().len(), 2);
    }
}
