//! Packed vectors over a small prime field, used for brute-force enumeration.

use crate::arith::{Field, Scalar};
use crate::linalg::Subspace;

pub(crate) const MAX_N: usize = 16;
pub(crate) type V = [u8; MAX_N];

#[derive(Clone, Debug)]
pub(crate) struct SmallField {
    pub p: u32,
    pub n: usize,
    inv: Vec<u8>,
    pow: Vec<usize>,
}

impl SmallField {
    pub fn new(p: u32, n: usize) -> SmallField {
        assert!(p < 256 && n <= MAX_N);
        let mut inv = vec![0u8; p as usize];
        for a in 1..p {
            for b in 1..p {
                if a * b % p == 1 {
                    inv[a as usize] = b as u8;
                }
            }
        }
        let mut pow = Vec::with_capacity(n);
        let mut acc = 1usize;
        for _ in 0..n {
            pow.push(acc);
            acc *= p as usize;
        }
        SmallField { p, n, inv, pow }
    }

    /// Number of vectors, `p^n`.
    pub fn size(&self) -> usize {
        (self.p as usize).pow(self.n as u32)
    }

    pub fn zero(&self) -> V {
        [0; MAX_N]
    }

    pub fn unit(&self, i: usize) -> V {
        let mut v = [0; MAX_N];
        v[i] = 1;
        v
    }

    pub fn is_zero(&self, v: &V) -> bool {
        v[..self.n].iter().all(|&x| x == 0)
    }

    pub fn add_scaled(&self, v: &mut V, c: u8, w: &V) {
        if c == 0 {
            return;
        }
        let p = self.p;
        for k in 0..self.n {
            v[k] = ((v[k] as u32 + c as u32 * w[k] as u32) % p) as u8;
        }
    }

    pub fn encode(&self, v: &V) -> usize {
        (0..self.n).map(|k| v[k] as usize * self.pow[k]).sum()
    }

    /// Reduces `v` against RREF rows (pivot entries equal to 1).
    pub fn reduce(&self, rows: &[V], pivots: &[usize], v: &mut V) {
        for (r, &c) in rows.iter().zip(pivots) {
            let x = v[c];
            if x != 0 {
                self.add_scaled(v, (self.p - x as u32) as u8, r);
            }
        }
    }

    /// Reduced row echelon form of the span of `vectors`.
    pub fn rref(&self, vectors: &[V]) -> (Vec<V>, Vec<usize>) {
        let mut rows: Vec<V> = vectors.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.n {
            let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
                continue;
            };
            rows.swap(r, k);
            let inv = self.inv[rows[r][c] as usize];
            for x in rows[r][..self.n].iter_mut() {
                *x = (*x as u32 * inv as u32 % self.p) as u8;
            }
            let pivot_row = rows[r];
            for (k, row) in rows.iter_mut().enumerate() {
                if k != r && row[c] != 0 {
                    let x = row[c];
                    self.add_scaled(row, (self.p - x as u32) as u8, &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        (rows, pivots)
    }

    pub fn pivots_of(&self, rows: &[V]) -> Vec<usize> {
        rows.iter()
            .map(|r| (0..self.n).find(|&c| r[c] != 0).expect("nonzero row"))
            .collect()
    }

    /// Bitset (indexed by `encode`) of every vector in the span of `rows`.
    pub fn element_bits(&self, rows: &[V]) -> Vec<u64> {
        let mut bits = vec![0u64; self.size().div_ceil(64)];
        let mut elems = vec![self.zero()];
        for r in rows {
            let base = elems.len();
            for c in 1..self.p as u8 {
                for e in 0..base {
                    let mut v = elems[e];
                    self.add_scaled(&mut v, c, r);
                    elems.push(v);
                }
            }
        }
        for e in &elems {
            let code = self.encode(e);
            bits[code / 64] |= 1 << (code % 64);
        }
        bits
    }

    pub fn has_bit(&self, bits: &[u64], v: &V) -> bool {
        let code = self.encode(v);
        bits[code / 64] >> (code % 64) & 1 == 1
    }

    pub fn from_scalars(&self, v: &[Scalar]) -> V {
        let mut out = self.zero();
        for (k, x) in v.iter().enumerate() {
            out[k] = x.residue().expect("prime field scalar") as u8;
        }
        out
    }

    pub fn to_scalars(&self, field: Field, v: &V) -> Vec<Scalar> {
        v[..self.n].iter().map(|&x| field.residue(x as u32)).collect()
    }

    pub fn to_subspace(&self, field: Field, rows: &[V]) -> Subspace {
        let vs: Vec<Vec<Scalar>> = rows.iter().map(|r| self.to_scalars(field, r)).collect();
        Subspace::span(field, self.n, &vs).expect("rows have ambient length")
    }

    /// Every RREF matrix of the given rank, each as its list of rows.
    pub fn rref_matrices(&self, k: usize, mut visit: impl FnMut(&[V])) {
        let n = self.n;
        let mut pivots: Vec<usize> = (0..k).collect();
        loop {
            // free positions: (row, col) with col > pivot[row], col not a pivot
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| {
                    let piv = &pivots;
                    (piv[r] + 1..n).filter(move |c| !piv.contains(c)).map(move |c| (r, c))
                })
                .collect();
            let mut rows = vec![self.zero(); k];
            for (r, &c) in pivots.iter().enumerate() {
                rows[r][c] = 1;
            }
            let mut counter = vec![0u8; free.len()];
            loop {
                for (&(r, c), &x) in free.iter().zip(&counter) {
                    rows[r][c] = x;
                }
                visit(&rows);
                let mut pos = 0;
                while pos < counter.len() {
                    counter[pos] += 1;
                    if (counter[pos] as u32) < self.p {
                        break;
                    }
                    counter[pos] = 0;
                    pos += 1;
                }
                if pos == counter.len() {
                    break;
                }
            }
            // next k-subset of 0..n in lexicographic order
            let mut i = k;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                if pivots[i] < n - k + i {
                    pivots[i] += 1;
                    for j in i + 1..k {
                        pivots[j] = pivots[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

/// Total number of subspaces of `GF(p)^n`, saturating.
pub fn subspace_count(p: u64, n: usize) -> u128 {
    // Gaussian binomials via the recurrence [n,k] = [n-1,k-1] + p^k [n-1,k]
    let p = p as u128;
    let mut row = vec![1u128];
    for m in 1..=n {
        let mut next = vec![1u128; m + 1];
        for k in 1..m {
            let pk = p.saturating_pow(k as u32);
            next[k] = row[k - 1].saturating_add(pk.saturating_mul(row[k]));
        }
        row = next;
    }
    row.iter().fold(0u128, |a, &b| a.saturating_add(b))
}
