//! Exact elimination over GF(3) for sparse row systems keyed by arbitrary
//! totally ordered column keys.
//!
//! Pivoting always takes the smallest column key carrying a nonzero entry,
//! so the echelon form (and therefore every reported pivot set) depends only
//! on the input rows and their order, never on scheduling. Callers that need
//! the *largest* key to lead (leading monomials of relation spans) wrap their
//! keys in [`std::cmp::Reverse`].

use std::collections::{BTreeMap, BTreeSet};

use crate::gf3::Gf3;

/// Key universes at or below this size are eliminated with packed dense rows.
pub const DENSE_COLUMN_LIMIT: usize = 4096;

/// A row with no stored zeros, iterated in key order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseRow<K> {
    entries: Vec<(K, Gf3)>,
}

impl<K> Default for SparseRow<K> {
    fn default() -> Self {
        SparseRow { entries: Vec::new() }
    }
}

impl<K: Ord> SparseRow<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a row from unsorted entries, summing repeated keys.
    pub fn from_entries<I: IntoIterator<Item = (K, Gf3)>>(entries: I) -> Self {
        let mut entries: Vec<(K, Gf3)> = entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(K, Gf3)> = Vec::with_capacity(entries.len());
        for (k, c) in entries {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => *lc += c,
                _ => out.push((k, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparseRow { entries: out }
    }

    /// Wraps entries that are already strictly increasing and nonzero.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(K, Gf3)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, c)| !c.is_zero()));
        SparseRow { entries }
    }

    pub fn unit(key: K) -> Self {
        SparseRow { entries: vec![(key, Gf3::ONE)] }
    }

    pub fn entries(&self) -> &[(K, Gf3)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(K, Gf3)> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &K) -> Gf3 {
        match self.entries.binary_search_by(|(k, _)| k.cmp(key)) {
            Ok(i) => self.entries[i].1,
            Err(_) => Gf3::ZERO,
        }
    }

    /// Entry with the smallest key.
    pub fn leading(&self) -> Option<&(K, Gf3)> {
        self.entries.first()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.entries.iter().map(|(k, _)| k)
    }
}

impl<K: Ord + Clone> SparseRow<K> {
    pub fn scaled(&self, c: Gf3) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        SparseRow { entries: self.entries.iter().map(|(k, v)| (k.clone(), *v * c)).collect() }
    }

    /// `self + c * other`, by a single merge pass.
    pub fn add_scaled(&self, c: Gf3, other: &Self) -> Self {
        if c.is_zero() || other.is_empty() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0.clone(), b[j].1 * c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = a[i].1 + b[j].1 * c;
                    if !v.is_zero() {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(k, v)| (k.clone(), *v * c)));
        SparseRow { entries: out }
    }
}

/// Outcome of [`rank_and_kernel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankResult<K> {
    pub rank: usize,
    /// Reduced row-echelon basis of the left kernel; one coefficient per input row.
    pub kernel_basis: Vec<Vec<Gf3>>,
    /// Leading keys of the echelon form, ascending.
    pub pivot_keys: Vec<K>,
}

/// Incremental echelon form used where only the rank and pivots matter.
#[derive(Clone, Debug)]
pub struct Echelon<K> {
    pivots: BTreeMap<K, SparseRow<K>>,
}

impl<K> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { pivots: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Pivot (leading) keys in ascending order.
    pub fn pivot_keys(&self) -> impl Iterator<Item = &K> {
        self.pivots.keys()
    }

    pub fn is_pivot(&self, key: &K) -> bool {
        self.pivots.contains_key(key)
    }

    /// Reduces `row` until its leading key is not a pivot.
    pub fn reduce(&self, mut row: SparseRow<K>) -> SparseRow<K> {
        while let Some((lead, c)) = row.leading() {
            match self.pivots.get(lead) {
                Some(p) => row = row.add_scaled(-*c, p),
                None => break,
            }
        }
        row
    }

    /// Adds a row; returns `true` when it raised the rank.
    pub fn insert(&mut self, row: SparseRow<K>) -> bool {
        let row = self.reduce(row);
        match row.leading() {
            None => false,
            Some((lead, c)) => {
                let lead = lead.clone();
                let inv = c.inverse().expect("leading entries are nonzero");
                self.pivots.insert(lead, row.scaled(inv));
                true
            }
        }
    }

    pub fn merge(&mut self, other: Echelon<K>) {
        for (_, row) in other.pivots {
            self.insert(row);
        }
    }

    /// Fully reduced basis rows in ascending pivot order.
    pub fn into_reduced_rows(self) -> Vec<SparseRow<K>> {
        let keys: BTreeSet<K> = self.pivots.keys().cloned().collect();
        let mut done: BTreeMap<K, SparseRow<K>> = BTreeMap::new();
        for (lead, mut row) in self.pivots.into_iter().rev() {
            loop {
                let hit = row.entries().iter().skip(1).find(|(k, _)| keys.contains(k)).cloned();
                match hit {
                    Some((k, c)) => {
                        let p = &done[&k];
                        row = row.add_scaled(-c, p);
                    }
                    None => break,
                }
            }
            done.insert(lead, row);
        }
        done.into_values().collect()
    }
}

/// Rank, left kernel and pivot keys of a row system.
///
/// Rows are processed in input order; row-operation multipliers are carried
/// alongside each row so that every kernel vector is read off directly when
/// its row reduces to zero.
pub fn rank_and_kernel<K: Ord + Clone>(rows: &[SparseRow<K>]) -> RankResult<K> {
    let universe: BTreeSet<&K> = rows.iter().flat_map(|r| r.keys()).collect();
    let (pivot_keys, kernel) = if universe.len() <= DENSE_COLUMN_LIMIT {
        let columns: Vec<K> = universe.into_iter().cloned().collect();
        eliminate_dense(rows, &columns)
    } else {
        eliminate_sparse(rows)
    };
    let mut basis = Echelon::new();
    for v in kernel {
        basis.insert(v);
    }
    let kernel_basis = basis
        .into_reduced_rows()
        .into_iter()
        .map(|v| {
            let mut dense = vec![Gf3::ZERO; rows.len()];
            for (i, c) in v.entries() {
                dense[*i] = *c;
            }
            dense
        })
        .collect();
    RankResult { rank: pivot_keys.len(), kernel_basis, pivot_keys }
}

type Multipliers = SparseRow<usize>;

fn eliminate_sparse<K: Ord + Clone>(rows: &[SparseRow<K>]) -> (Vec<K>, Vec<Multipliers>) {
    let mut pivots: BTreeMap<K, (SparseRow<K>, Multipliers)> = BTreeMap::new();
    let mut kernel = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut row = row.clone();
        let mut mult = Multipliers::unit(i);
        while let Some((lead, c)) = row.leading() {
            let Some((prow, pmult)) = pivots.get(lead) else { break };
            let f = -(*c * prow.get(lead).inverse().unwrap());
            row = row.add_scaled(f, prow);
            mult = mult.add_scaled(f, pmult);
        }
        match row.leading() {
            None => kernel.push(mult),
            Some((lead, _)) => {
                let lead = lead.clone();
                pivots.insert(lead, (row, mult));
            }
        }
    }
    (pivots.into_keys().collect(), kernel)
}

/// GF(3) row packed as two bit planes: `plus` marks entries equal to 1,
/// `minus` marks entries equal to 2.
#[derive(Clone, Debug)]
struct PackedRow {
    plus: Vec<u64>,
    minus: Vec<u64>,
}

impl PackedRow {
    fn zero(words: usize) -> Self {
        PackedRow { plus: vec![0; words], minus: vec![0; words] }
    }

    fn set(&mut self, col: usize, c: Gf3) {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        self.plus[w] &= !b;
        self.minus[w] &= !b;
        match c.value() {
            1 => self.plus[w] |= b,
            2 => self.minus[w] |= b,
            _ => {}
        }
    }

    fn get(&self, col: usize) -> Gf3 {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        if self.plus[w] & b != 0 {
            Gf3::ONE
        } else if self.minus[w] & b != 0 {
            Gf3::TWO
        } else {
            Gf3::ZERO
        }
    }

    fn leading(&self) -> Option<usize> {
        self.plus
            .iter()
            .zip(&self.minus)
            .enumerate()
            .find(|(_, (p, m))| (*p | *m) != 0)
            .map(|(w, (p, m))| w * 64 + (p | m).trailing_zeros() as usize)
    }

    /// `self += c * other`.
    fn add_scaled(&mut self, c: Gf3, other: &PackedRow) {
        let swap = match c.value() {
            0 => return,
            1 => false,
            _ => true,
        };
        for w in 0..self.plus.len() {
            let (bp, bm) = if swap { (other.minus[w], other.plus[w]) } else { (other.plus[w], other.minus[w]) };
            let (ap, am) = (self.plus[w], self.minus[w]);
            let a0 = !(ap | am);
            let b0 = !(bp | bm);
            self.plus[w] = (ap & b0) | (a0 & bp) | (am & bm);
            self.minus[w] = (am & b0) | (a0 & bm) | (ap & bp);
        }
    }
}

fn eliminate_dense<K: Ord + Clone>(rows: &[SparseRow<K>], columns: &[K]) -> (Vec<K>, Vec<Multipliers>) {
    let words = columns.len().div_ceil(64).max(1);
    let mut pivots: Vec<Option<(PackedRow, Multipliers)>> = vec![None; columns.len()];
    let mut kernel = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut packed = PackedRow::zero(words);
        for (k, c) in row.entries() {
            let col = columns.binary_search(k).expect("key belongs to the universe");
            packed.set(col, *c);
        }
        let mut mult = Multipliers::unit(i);
        let lead = loop {
            let Some(col) = packed.leading() else { break None };
            let Some((prow, pmult)) = &pivots[col] else { break Some(col) };
            let f = -(packed.get(col) * prow.get(col).inverse().unwrap());
            packed.add_scaled(f, prow);
            mult = mult.add_scaled(f, pmult);
        };
        match lead {
            None => kernel.push(mult),
            Some(col) => pivots[col] = Some((packed, mult)),
        }
    }
    let pivot_keys =
        pivots.iter().enumerate().filter(|(_, p)| p.is_some()).map(|(c, _)| columns[c].clone()).collect();
    (pivot_keys, kernel)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(entries: &[(u32, u8)]) -> SparseRow<u32> {
        SparseRow::from_entries(entries.iter().map(|&(k, c)| (k, Gf3::new(c as i64))))
    }

    #[test]
    fn unit_rows_are_independent() {
        let r = rank_and_kernel(&[row(&[(0, 1)]), row(&[(1, 1)])]);
        assert_eq!(r.rank, 2);
        assert!(r.kernel_basis.is_empty());
        assert_eq!(r.pivot_keys, vec![0, 1]);
    }

    #[test]
    fn proportional_rows() {
        let r0 = row(&[(3, 1), (7, 2), (9, 1)]);
        let r = rank_and_kernel(&[r0.clone(), r0.scaled(Gf3::TWO)]);
        assert_eq!(r.rank, 1);
        assert_eq!(r.kernel_basis, vec![vec![Gf3::ONE, Gf3::ONE]]);
    }

    #[test]
    fn empty_input() {
        let r = rank_and_kernel::<u32>(&[]);
        assert_eq!(r.rank, 0);
        assert!(r.kernel_basis.is_empty());
        let r = rank_and_kernel(&[SparseRow::<u32>::new()]);
        assert_eq!(r.rank, 0);
        assert_eq!(r.kernel_basis, vec![vec![Gf3::ONE]]);
    }

    #[test]
    fn from_entries_combines_duplicates() {
        let r = row(&[(2, 1), (1, 1), (2, 2), (5, 4)]);
        assert_eq!(r.entries(), &[(1, Gf3::ONE), (5, Gf3::ONE)]);
    }

    #[test]
    fn packed_add_matches_field() {
        let vals = [Gf3::ZERO, Gf3::ONE, Gf3::TWO];
        for a in vals {
            for b in vals {
                for c in vals {
                    let mut x = PackedRow::zero(1);
                    let mut y = PackedRow::zero(1);
                    x.set(5, a);
                    y.set(5, b);
                    x.add_scaled(c, &y);
                    assert_eq!(x.get(5), a + c * b);
                }
            }
        }
    }

    #[test]
    fn dense_and_sparse_paths_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let rows: Vec<SparseRow<u32>> = (0..rng.gen_range(1..12))
                .map(|_| {
                    SparseRow::from_entries(
                        (0..rng.gen_range(0..6)).map(|_| (rng.gen_range(0..9), Gf3::new(rng.gen_range(0..3)))),
                    )
                })
                .collect();
            let universe: Vec<u32> =
                rows.iter().flat_map(|r| r.keys().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
            let (pd, kd) = eliminate_dense(&rows, &universe);
            let (ps, ks) = eliminate_sparse(&rows);
            assert_eq!(pd, ps);
            assert_eq!(kd, ks);
        }
    }

    #[test]
    fn reduced_rows_have_isolated_pivots() {
        let mut e = Echelon::new();
        e.insert(row(&[(0, 1), (1, 1), (2, 1)]));
        e.insert(row(&[(1, 1), (2, 2)]));
        e.insert(row(&[(2, 1), (3, 1)]));
        let rows = e.into_reduced_rows();
        let leads: Vec<u32> = rows.iter().map(|r| r.leading().unwrap().0).collect();
        for r in &rows {
            for l in &leads {
                if r.leading().unwrap().0 != *l {
                    assert!(r.get(l).is_zero());
                }
            }
        }
    }
}
