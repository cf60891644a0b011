//! Brute-force enumeration of subalgebras over small prime fields.
//!
//! A [`Lattice`] holds every subalgebra of an algebra, sorted in canonical
//! order, with an element bitset per node so that containment, intersection
//! and lookup are word operations. Everything structural (maximal
//! subalgebras, minimal ideals, complements, Frattini subalgebras of
//! quotients) is answered from it by exhaustive search.

mod ops;
mod small;

pub use ops::{
    abelian_socle, enumerate_subalgebras, enumerate_subspaces, find_complement_subalgebra,
    is_interval_complemented, maximal_subalgebras, minimal_ideals, nilradical,
};
pub(crate) use ops::{interval_witness, nilradical_id};
pub use small::subspace_count;

use std::cell::OnceCell;
use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::LieAlgebra;
use crate::arith::{Field, FieldKind};
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use small::{SmallField, V, MAX_N};

/// Limits on brute-force enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationBudget {
    pub max_field_size: u64,
    pub max_dim: usize,
    /// Upper bound on the number of subspaces of the ambient space.
    pub max_count: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_field_size: 3,
            max_dim: 6,
            max_count: 10_000_000,
        }
    }
}

/// Bitset words allowed across all nodes of one lattice.
const MAX_WORDS: u128 = 1 << 26;

impl EnumerationBudget {
    pub fn with_max_count(max_count: u64) -> Self {
        EnumerationBudget {
            max_count,
            ..Default::default()
        }
    }

    /// A budget large enough for the given ambient space, subject to the
    /// fixed memory guard.
    pub fn unlimited() -> Self {
        EnumerationBudget {
            max_field_size: 255,
            max_dim: MAX_N,
            max_count: u64::MAX,
        }
    }

    /// Checks that `GF(p)^n` may be enumerated; returns `p`.
    pub fn check(&self, field: Field, n: usize) -> Result<u32> {
        let p = match field.kind() {
            FieldKind::Rationals => return Err(Error::InfiniteFieldEnumeration),
            FieldKind::Prime(p) => p,
        };
        if p as u64 > self.max_field_size || p > 255 {
            return Err(Error::BudgetExceeded(format!(
                "field size {p} exceeds the limit {}",
                self.max_field_size.min(255)
            )));
        }
        if n > self.max_dim || n > MAX_N {
            return Err(Error::BudgetExceeded(format!(
                "dimension {n} exceeds the limit {}",
                self.max_dim.min(MAX_N)
            )));
        }
        let count = subspace_count(p as u64, n);
        if count > self.max_count as u128 {
            return Err(Error::BudgetExceeded(format!(
                "GF({p})^{n} has {count} subspaces, limit {}",
                self.max_count
            )));
        }
        let words = (p as u128).pow(n as u32).div_ceil(64);
        if count.saturating_mul(words) > MAX_WORDS {
            return Err(Error::BudgetExceeded(format!(
                "GF({p})^{n} is too large to hold in memory"
            )));
        }
        Ok(p)
    }
}

/// Index of a subalgebra inside a [`Lattice`]; smaller ids come first in
/// canonical order.
pub type NodeId = usize;

struct Node {
    rows: Vec<V>,
    bits: Vec<u64>,
    ideal: bool,
}

pub struct Lattice {
    algebra: LieAlgebra,
    sf: SmallField,
    table: Vec<Vec<V>>,
    nodes: Vec<Node>,
    lookup: HashMap<Vec<u64>, NodeId>,
    by_dim: Vec<std::ops::Range<NodeId>>,
    maximal: Vec<OnceCell<Vec<NodeId>>>,
    non_split: Vec<OnceCell<Option<NodeId>>>,
    elementary: Vec<OnceCell<bool>>,
}

impl Lattice {
    pub fn new(algebra: &LieAlgebra, budget: &EnumerationBudget) -> Result<Lattice> {
        let n = algebra.dim();
        let p = budget.check(algebra.field(), n)?;
        let sf = SmallField::new(p, n);
        let table: Vec<Vec<V>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| sf.from_scalars(&algebra.basis_bracket(i, j)))
                    .collect()
            })
            .collect();
        let mut lattice = Lattice {
            algebra: algebra.clone(),
            sf,
            table,
            nodes: Vec::new(),
            lookup: HashMap::new(),
            by_dim: Vec::new(),
            maximal: Vec::new(),
            non_split: Vec::new(),
            elementary: Vec::new(),
        };
        for k in 0..=n {
            let start = lattice.nodes.len();
            let mut found: Vec<(Vec<V>, Vec<usize>)> = Vec::new();
            let sf = lattice.sf.clone();
            sf.rref_matrices(k, |rows| {
                let pivots = sf.pivots_of(rows);
                if lattice.closed(rows, &pivots) {
                    found.push((rows.to_vec(), pivots));
                }
            });
            found.sort_by(|a, b| {
                a.0.iter()
                    .map(|r| &r[..n])
                    .cmp(b.0.iter().map(|r| &r[..n]))
            });
            for (rows, pivots) in found {
                let bits = lattice.sf.element_bits(&rows);
                let ideal = lattice.ideal_rows(&rows, &pivots);
                lattice.lookup.insert(bits.clone(), lattice.nodes.len());
                lattice.nodes.push(Node { rows, bits, ideal });
            }
            lattice.by_dim.push(start..lattice.nodes.len());
        }
        let count = lattice.nodes.len();
        lattice.maximal = (0..count).map(|_| OnceCell::new()).collect();
        lattice.non_split = (0..count).map(|_| OnceCell::new()).collect();
        lattice.elementary = (0..count).map(|_| OnceCell::new()).collect();
        Ok(lattice)
    }

    fn bracket(&self, u: &V, v: &V) -> V {
        let n = self.sf.n;
        let p = self.sf.p;
        let mut out = self.sf.zero();
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            for j in 0..n {
                if v[j] == 0 || i == j {
                    continue;
                }
                let c = (u[i] as u32 * v[j] as u32 % p) as u8;
                self.sf.add_scaled(&mut out, c, &self.table[i][j]);
            }
        }
        out
    }

    fn closed(&self, rows: &[V], pivots: &[usize]) -> bool {
        for a in 0..rows.len() {
            for b in a + 1..rows.len() {
                let mut w = self.bracket(&rows[a], &rows[b]);
                self.sf.reduce(rows, pivots, &mut w);
                if !self.sf.is_zero(&w) {
                    return false;
                }
            }
        }
        true
    }

    fn ideal_rows(&self, rows: &[V], pivots: &[usize]) -> bool {
        (0..self.sf.n).all(|i| {
            rows.iter().all(|r| {
                let mut w = self.bracket(&self.sf.unit(i), r);
                self.sf.reduce(rows, pivots, &mut w);
                self.sf.is_zero(&w)
            })
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn ids(&self) -> std::ops::Range<NodeId> {
        0..self.nodes.len()
    }

    pub fn zero_id(&self) -> NodeId {
        0
    }

    pub fn full_id(&self) -> NodeId {
        self.nodes.len() - 1
    }

    pub fn dim(&self, id: NodeId) -> usize {
        self.nodes[id].rows.len()
    }

    pub fn is_ideal(&self, id: NodeId) -> bool {
        self.nodes[id].ideal
    }

    pub fn ideals(&self) -> Vec<NodeId> {
        self.ids().filter(|&i| self.nodes[i].ideal).collect()
    }

    pub fn space(&self, id: NodeId) -> Subspace {
        self.sf.to_subspace(self.algebra.field(), &self.nodes[id].rows)
    }

    pub fn id_of(&self, s: &Subspace) -> Option<NodeId> {
        if s.ambient_dim() != self.sf.n || s.field() != self.algebra.field() {
            return None;
        }
        let rows: Vec<V> = s.rows().map(|r| self.sf.from_scalars(r)).collect();
        self.lookup.get(&self.sf.element_bits(&rows)).copied()
    }

    /// Like [`Lattice::id_of`] but errors when `s` is not a subalgebra.
    pub fn require_id(&self, s: &Subspace) -> Result<NodeId> {
        self.algebra.check_subspace(s)?;
        self.id_of(s).ok_or(Error::NotASubalgebra)
    }

    /// `a ⊇ b`.
    pub fn contains(&self, a: NodeId, b: NodeId) -> bool {
        let (x, y) = (&self.nodes[a].bits, &self.nodes[b].bits);
        x.iter().zip(y).all(|(x, y)| y & !x == 0)
    }

    pub fn contains_vector(&self, a: NodeId, v: &[crate::arith::Scalar]) -> bool {
        self.sf.has_bit(&self.nodes[a].bits, &self.sf.from_scalars(v))
    }

    pub fn meet(&self, a: NodeId, b: NodeId) -> NodeId {
        let bits: Vec<u64> = self.nodes[a]
            .bits
            .iter()
            .zip(&self.nodes[b].bits)
            .map(|(x, y)| x & y)
            .collect();
        self.lookup[&bits]
    }

    pub fn meet_all(&self, ids: impl IntoIterator<Item = NodeId>, top: NodeId) -> NodeId {
        let mut bits = self.nodes[top].bits.clone();
        for id in ids {
            for (b, x) in bits.iter_mut().zip(&self.nodes[id].bits) {
                *b &= x;
            }
        }
        self.lookup[&bits]
    }

    /// `a ∩ b = 0`.
    pub fn meet_is_zero(&self, a: NodeId, b: NodeId) -> bool {
        let (x, y) = (&self.nodes[a].bits, &self.nodes[b].bits);
        x[0] & y[0] == 1 && x[1..].iter().zip(&y[1..]).all(|(x, y)| x & y == 0)
    }

    /// The node equal to `a + b`, when that sum is a subalgebra.
    pub fn join(&self, a: NodeId, b: NodeId) -> Option<NodeId> {
        let mut rows = self.nodes[a].rows.clone();
        rows.extend_from_slice(&self.nodes[b].rows);
        let (rows, _) = self.sf.rref(&rows);
        self.lookup.get(&self.sf.element_bits(&rows)).copied()
    }

    /// Dimension of `a + b` as a subspace.
    pub fn join_dim(&self, a: NodeId, b: NodeId) -> usize {
        self.dim(a) + self.dim(b) - self.dim(self.meet(a, b))
    }

    /// `[t, s] ⊆ s`.
    pub fn is_ideal_in(&self, s: NodeId, t: NodeId) -> bool {
        if t == self.full_id() {
            return self.nodes[s].ideal;
        }
        let node = &self.nodes[s];
        self.nodes[t].rows.iter().all(|x| {
            node.rows
                .iter()
                .all(|r| self.sf.has_bit(&node.bits, &self.bracket(x, r)))
        })
    }

    /// Nodes `s` with `lo ⊆ s ⊆ hi`, in canonical order.
    pub fn between(&self, lo: NodeId, hi: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        let range = self.by_dim[self.dim(lo)].start..self.by_dim[self.dim(hi)].end;
        range.filter(move |&s| self.contains(hi, s) && self.contains(s, lo))
    }

    /// Maximal subalgebras of the subalgebra `s`.
    pub fn maximal_of(&self, s: NodeId) -> &[NodeId] {
        self.maximal[s].get_or_init(|| {
            let d = self.dim(s);
            let mut found: Vec<NodeId> = Vec::new();
            for k in (0..d).rev() {
                for m in self.by_dim[k].clone() {
                    if self.contains(s, m) && !found.iter().any(|&f| self.contains(f, m)) {
                        found.push(m);
                    }
                }
            }
            found.sort_unstable();
            found
        })
    }

    /// Maximal elements of `[base, top)`: maximal subalgebras of `top`
    /// containing `base`.
    pub fn maximal_between(&self, top: NodeId, base: NodeId) -> Vec<NodeId> {
        self.maximal_of(top)
            .iter()
            .copied()
            .filter(|&m| self.contains(m, base))
            .collect()
    }

    /// Frattini subalgebra of `top/base`, pulled back: the intersection of
    /// the maximal subalgebras of `top` that contain `base`.
    pub fn frattini_between(&self, top: NodeId, base: NodeId) -> NodeId {
        self.meet_all(self.maximal_between(top, base), top)
    }

    /// Minimal ideals of `top/base`, pulled back; `base` must be an ideal of
    /// `top`.
    pub fn minimal_ideals_between(&self, top: NodeId, base: NodeId) -> Vec<NodeId> {
        let mut found: Vec<NodeId> = Vec::new();
        for s in self.between(base, top) {
            if s == base || !self.is_ideal_in(s, top) {
                continue;
            }
            if !found.iter().any(|&f| self.contains(s, f)) {
                found.push(s);
            }
        }
        found
    }

    /// Ideals of `top` containing `base`.
    pub fn ideals_between(&self, top: NodeId, base: NodeId) -> Vec<NodeId> {
        self.between(base, top)
            .filter(|&s| self.is_ideal_in(s, top))
            .collect()
    }

    /// First subalgebra `t` (canonical order) with `anchor ⊆ t ⊆ top`,
    /// `t ∩ b = anchor` and `t + b = top`.
    pub fn complement(&self, top: NodeId, b: NodeId, anchor: NodeId) -> Option<NodeId> {
        let d = self.dim(top) + self.dim(anchor) - self.dim(b);
        self.by_dim[d]
            .clone()
            .find(|&t| self.contains(top, t) && self.contains(t, anchor) && self.meet(t, b) == anchor)
    }

    /// Whether every subalgebra of `top/base` has trivial Frattini
    /// subalgebra.
    pub fn is_elementary_between(&self, top: NodeId, base: NodeId) -> bool {
        self.between(base, top)
            .all(|s| self.frattini_between(s, base) == base)
    }

    /// First ideal `B ⊇ base` of `L` over which `L/base` does not split
    /// (no subalgebra `T ⊇ base` with `T ∩ B = base`, `T + B = L`); `None`
    /// when `L/base` splits over all its ideals. `base` must be an ideal.
    pub fn non_split_ideal(&self, base: NodeId) -> Option<NodeId> {
        *self.non_split[base].get_or_init(|| {
            let full = self.full_id();
            self.ideals_between(full, base)
                .into_iter()
                .find(|&b| self.complement(full, b, base).is_none())
        })
    }

    /// Whether `L/base` is elementary; `base` must be an ideal.
    pub fn is_elementary_quotient(&self, base: NodeId) -> bool {
        *self.elementary[base].get_or_init(|| self.is_elementary_between(self.full_id(), base))
    }

    /// Whether `s` is nilpotent as an algebra.
    pub fn is_nilpotent(&self, s: NodeId) -> bool {
        self.algebra.is_nilpotent_subalgebra(&self.space(s))
    }

    pub fn is_abelian(&self, s: NodeId) -> bool {
        let rows = &self.nodes[s].rows;
        (0..rows.len()).all(|a| (a + 1..rows.len()).all(|b| self.sf.is_zero(&self.bracket(&rows[a], &rows[b]))))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::fixtures::*;

    pub fn lattice(l: &LieAlgebra) -> Lattice {
        Lattice::new(l, &EnumerationBudget::unlimited()).unwrap()
    }

    #[test]
    fn abelian_gf2_plane() {
        let l = LieAlgebra::abelian(gf(2), 2);
        let lat = lattice(&l);
        assert_eq!(lat.len(), 5);
        assert_eq!(lat.ideals().len(), 5);
        assert_eq!(lat.maximal_of(lat.full_id()).len(), 3);
    }

    #[test]
    fn nodes_are_in_canonical_order() {
        let lat = lattice(&ecomp2());
        let spaces: Vec<Subspace> = lat.ids().map(|i| lat.space(i)).collect();
        let mut sorted = spaces.clone();
        sorted.sort();
        assert_eq!(spaces, sorted);
        for (i, s) in spaces.iter().enumerate() {
            assert_eq!(lat.id_of(s), Some(i));
            assert!(lat.algebra().is_subalgebra(s));
            assert_eq!(lat.is_ideal(i), lat.algebra().is_ideal(s));
        }
    }

    #[test]
    fn meet_and_join_match_linear_algebra() {
        let l = a3(gf(3));
        let lat = lattice(&l);
        for a in lat.ids() {
            for b in lat.ids() {
                let (sa, sb) = (lat.space(a), lat.space(b));
                assert_eq!(lat.space(lat.meet(a, b)), sa.intersection(&sb));
                let sum = sa.sum(&sb);
                assert_eq!(lat.join(a, b).map(|j| lat.space(j)), l.is_subalgebra(&sum).then_some(sum.clone()));
                assert_eq!(lat.join_dim(a, b), sum.dim());
                assert_eq!(lat.contains(a, b), sa.contains_subspace(&sb));
            }
        }
    }

    #[test]
    fn budget_refusals() {
        let q = crate::arith::Field::rationals();
        let b = EnumerationBudget::default();
        assert_eq!(b.check(q, 2), Err(Error::InfiniteFieldEnumeration));
        assert!(matches!(b.check(gf(5), 2), Err(Error::BudgetExceeded(_))));
        assert!(matches!(b.check(gf(2), 7), Err(Error::BudgetExceeded(_))));
        let tight = EnumerationBudget::with_max_count(15);
        assert!(matches!(tight.check(gf(2), 3), Err(Error::BudgetExceeded(_))));
        assert_eq!(EnumerationBudget::with_max_count(16).check(gf(2), 3), Ok(2));
    }
}
