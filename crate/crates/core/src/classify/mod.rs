//! Complementedness and related predicates, the abelian decomposition of
//! complemented algebras, and the theorem-verification engine.

mod decompose;
mod verify;

pub use decompose::{
    complemented_decomposition, complemented_decomposition_in, decomposition_theorems_check,
    ComplementedDecomposition, DecompositionChecks, DecompositionOutcome,
};
pub use verify::{verify_theorems, VerifyOptions, THEOREM_IDS};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::frattini::{frattini_in, prefrattini_in};
use crate::lattice::{EnumerationBudget, Lattice, NodeId};
use crate::linalg::Subspace;

/// Ways of deciding whether an algebra is complemented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// `L/0` splits over every ideal.
    SplitsOverIdeals,
    /// Every prefrattini subalgebra is zero.
    Prefrattini,
    /// Every quotient has trivial Frattini subalgebra.
    PhiFreeHereditary,
    /// Every subalgebra has a complement in the subalgebra lattice.
    Definitional,
}

impl Route {
    pub const ALL: [Route; 4] = [
        Route::SplitsOverIdeals,
        Route::Prefrattini,
        Route::PhiFreeHereditary,
        Route::Definitional,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Route::SplitsOverIdeals => "splits_over_ideals",
            Route::Prefrattini => "prefrattini",
            Route::PhiFreeHereditary => "phi_free_hereditary",
            Route::Definitional => "definitional",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Route> {
        let key = s.replace('-', "_");
        Route::ALL
            .into_iter()
            .find(|r| r.name() == key)
            .ok_or_else(|| Error::BadParameters(format!("unknown route {s:?}")))
    }
}

/// A route's answer, with a witness when the answer is negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub route: Route,
    pub complemented: bool,
    pub witness: Option<Subspace>,
    pub detail: String,
}

fn lattice_for(l: &LieAlgebra, budget: &EnumerationBudget) -> Result<Lattice> {
    if !l.field().is_finite() {
        return Err(Error::InfiniteFieldEnumeration);
    }
    l.require_solvable()?;
    Lattice::new(l, budget)
}

pub fn complemented_in(lat: &Lattice, route: Route) -> Result<Verdict> {
    let labels = lat.algebra().labels();
    let zero = lat.zero_id();
    let found: Option<(NodeId, String)> = match route {
        Route::SplitsOverIdeals => lat
            .non_split_ideal(zero)
            .map(|b| (b, "ideal without a complementing subalgebra".to_string())),
        Route::Prefrattini => {
            let (_, members) = prefrattini_in(lat, zero)?;
            members
                .into_iter()
                .find(|&m| m != zero)
                .map(|m| (m, "nonzero prefrattini subalgebra".to_string()))
        }
        Route::PhiFreeHereditary => lat.ideals().into_iter().find_map(|b| {
            let phi = frattini_in(lat, b);
            (phi != b).then(|| {
                (
                    phi,
                    format!(
                        "Frattini subalgebra of the quotient by {} (pulled back)",
                        lat.space(b).render(labels)
                    ),
                )
            })
        }),
        Route::Definitional => crate::lattice::interval_witness(lat)
            .map(|s| (s, "subalgebra without a complement".to_string())),
    };
    Ok(match found {
        Some((id, detail)) => Verdict {
            route,
            complemented: false,
            witness: Some(lat.space(id)),
            detail,
        },
        None => Verdict {
            route,
            complemented: true,
            witness: None,
            detail: String::new(),
        },
    })
}

pub fn is_complemented(l: &LieAlgebra, budget: &EnumerationBudget, route: Route) -> Result<Verdict> {
    let lat = lattice_for(l, budget)?;
    complemented_in(&lat, route)
}

/// Whether every subalgebra has trivial Frattini subalgebra.
pub fn is_elementary(l: &LieAlgebra, budget: &EnumerationBudget) -> Result<bool> {
    if !l.field().is_finite() {
        return Err(Error::InfiniteFieldEnumeration);
    }
    let lat = Lattice::new(l, budget)?;
    Ok(lat.is_elementary_quotient(lat.zero_id()))
}

/// First nilpotent subalgebra that is not abelian, if any.
pub fn a_algebra_witness_in(lat: &Lattice) -> Option<NodeId> {
    lat.ids().find(|&s| !lat.is_abelian(s) && lat.is_nilpotent(s))
}

/// Whether every nilpotent subalgebra is abelian.
pub fn is_a_algebra(l: &LieAlgebra, budget: &EnumerationBudget) -> Result<bool> {
    if !l.field().is_finite() {
        return Err(Error::InfiniteFieldEnumeration);
    }
    let lat = Lattice::new(l, budget)?;
    Ok(a_algebra_witness_in(&lat).is_none())
}

/// The unique minimal ideal, when there is exactly one.
pub fn monolith_in(lat: &Lattice) -> Option<NodeId> {
    match lat.minimal_ideals_between(lat.full_id(), lat.zero_id()).as_slice() {
        [w] => Some(*w),
        _ => None,
    }
}

pub fn is_monolithic(l: &LieAlgebra, budget: &EnumerationBudget) -> Result<Option<Subspace>> {
    let lat = lattice_for(l, budget)?;
    Ok(monolith_in(&lat).map(|w| lat.space(w)))
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

    #[test]
    fn route_names_round_trip() {
        for r in Route::ALL {
            assert_eq!(r.name().parse::<Route>().unwrap(), r);
        }
        assert_eq!("phi-free-hereditary".parse::<Route>().unwrap(), Route::PhiFreeHereditary);
        assert!("other".parse::<Route>().is_err());
    }

    #[test]
    fn ecomp2_is_complemented_on_every_route() {
        let e = ecomp2();
        for r in Route::ALL {
            let v = is_complemented(&e, &budget(), r).unwrap();
            assert!(v.complemented, "{r}");
            assert_eq!(v.witness, None);
        }
    }

    #[test]
    fn b2_is_not_complemented_and_witnesses_name_phi() {
        let b = b2();
        let f = b.field();
        let phi = b.span(&[vector(f, &[1, 1, 0])]).unwrap();
        for r in Route::ALL {
            let v = is_complemented(&b, &budget(), r).unwrap();
            assert!(!v.complemented, "{r}");
        }
        for r in [Route::SplitsOverIdeals, Route::Prefrattini, Route::PhiFreeHereditary] {
            assert_eq!(is_complemented(&b, &budget(), r).unwrap().witness, Some(phi.clone()));
        }
    }

    #[test]
    fn complemented_is_not_hereditary() {
        // ecomp(2) is complemented while its ideal L^2 is not
        let e = ecomp2();
        assert!(is_complemented(&e, &budget(), Route::SplitsOverIdeals).unwrap().complemented);
        let sub = e.subalgebra(&e.square()).unwrap();
        assert!(e.is_ideal(&sub.carrier));
        assert!(!is_complemented(&sub.algebra, &budget(), Route::SplitsOverIdeals).unwrap().complemented);
    }

    #[test]
    fn abelian_is_complemented() {
        let ab = LieAlgebra::abelian(gf(3), 3);
        for r in Route::ALL {
            assert!(is_complemented(&ab, &budget(), r).unwrap().complemented);
        }
    }

    #[test]
    fn a3_predicates() {
        for p in [2, 3] {
            let a = a3(gf(p));
            assert!(is_a_algebra(&a, &budget()).unwrap());
            assert!(!is_elementary(&a, &budget()).unwrap());
            assert!(!is_complemented(&a, &budget(), Route::SplitsOverIdeals).unwrap().complemented);
        }
        assert!(!is_a_algebra(&h3(gf(2)), &budget()).unwrap());
    }

    #[test]
    fn monolithic_examples() {
        let e = ecomp2();
        assert_eq!(is_monolithic(&e, &budget()).unwrap(), Some(e.span_labels(&["e0", "e1"]).unwrap()));
        assert_eq!(is_monolithic(&LieAlgebra::abelian(gf(2), 2), &budget()).unwrap(), None);
        let one = LieAlgebra::abelian(gf(2), 1);
        assert_eq!(is_monolithic(&one, &budget()).unwrap(), Some(one.full()));
        assert_eq!(is_monolithic(&LieAlgebra::abelian(gf(2), 0), &budget()).unwrap(), None);
    }
}
