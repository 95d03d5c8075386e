//! Exact sparse linear algebra over the rationals.
//!
//! Systems are split into independent column blocks (columns that never share
//! a row) before elimination. Each block is reduced with fraction-free integer
//! row operations, dividing out the row content after every step so entries
//! stay small.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Sparse vector indexed by column.
pub type SparseVec = BTreeMap<usize, Rational>;

/// Accumulates rows keyed by an arbitrary hashable label, column by column.
#[derive(Debug)]
pub struct SystemBuilder<K: Hash + Eq> {
    ncols: usize,
    row_ids: HashMap<K, usize>,
    rows: Vec<SparseVec>,
}

impl<K: Hash + Eq> Default for SystemBuilder<K> {
    fn default() -> Self {
        SystemBuilder {
            ncols: 0,
            row_ids: HashMap::new(),
            rows: Vec::new(),
        }
    }
}

impl<K: Hash + Eq> SystemBuilder<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a column given its image as (row label, value) pairs. Returns
    /// the column index.
    pub fn push_column(&mut self, image: impl IntoIterator<Item = (K, Rational)>) -> usize {
        let col = self.ncols;
        self.ncols += 1;
        for (k, v) in image {
            if v.is_zero() {
                continue;
            }
            let next = self.rows.len();
            let id = *self.row_ids.entry(k).or_insert(next);
            if id == next {
                self.rows.push(SparseVec::new());
            }
            let e = self.rows[id].entry(col).or_insert_with(Rational::zero);
            *e += v;
        }
        col
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn nullspace(&self) -> Vec<SparseVec> {
        nullspace(self.ncols, &self.rows)
    }

    pub fn rank(&self) -> usize {
        rank(self.ncols, &self.rows)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Groups columns into connected blocks; returns (columns, rows) per block,
/// ordered by smallest column.
fn blocks(ncols: usize, rows: &[SparseVec]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut uf = UnionFind::new(ncols);
    for row in rows {
        let mut it = row.keys();
        if let Some(&first) = it.next() {
            for &c in it {
                uf.union(first, c);
            }
        }
    }
    let mut by_root: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for c in 0..ncols {
        let r = uf.find(c);
        by_root.entry(r).or_default().0.push(c);
    }
    for (i, row) in rows.iter().enumerate() {
        if let Some(&first) = row.keys().next() {
            let r = uf.find(first);
            by_root.get_mut(&r).unwrap().1.push(i);
        }
    }
    by_root.into_values().collect()
}

type IntRow = Vec<(usize, BigInt)>;

fn to_int_row(row: &SparseVec, local: &HashMap<usize, usize>) -> IntRow {
    let lcm = row
        .values()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut out: IntRow = row
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (local[c], (v.numer() * &lcm) / v.denom()))
        .collect();
    out.sort_by_key(|(c, _)| *c);
    normalize(&mut out);
    out
}

/// Divides by the content and makes the leading entry positive.
fn normalize(row: &mut IntRow) {
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// `a*x - b*y` for sparse rows with a common leading column.
fn combine(x: &IntRow, a: &BigInt, y: &IntRow, b: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form keyed by leading column.
fn echelon(rows: impl Iterator<Item = IntRow>) -> BTreeMap<usize, IntRow> {
    let mut pivots: BTreeMap<usize, IntRow> = BTreeMap::new();
    for mut row in rows {
        while let Some(&(lead, _)) = row.first() {
            match pivots.get(&lead) {
                None => break,
                Some(p) => {
                    let g = row[0].1.gcd(&p[0].1);
                    let a = &p[0].1 / &g;
                    let b = &row[0].1 / &g;
                    row = combine(&row, &a, p, &b);
                    normalize(&mut row);
                }
            }
        }
        if let Some(&(lead, _)) = row.first() {
            pivots.insert(lead, row);
        }
    }
    pivots
}

/// Basis of `{v : rows . v = 0}` in reduced form: each vector has a single
/// free column set to 1 and pivot columns solved for.
pub fn nullspace(ncols: usize, rows: &[SparseVec]) -> Vec<SparseVec> {
    let mut basis = Vec::new();
    for (cols, row_ids) in blocks(ncols, rows) {
        let local: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let pivots = echelon(row_ids.iter().map(|r| to_int_row(&rows[*r], &local)));
        // Back-substitute to reduced echelon form over the rationals.
        let mut reduced: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
        for (&lead, row) in pivots.iter().rev() {
            let scale = Rational::from_integer(row[0].1.clone());
            let mut r: BTreeMap<usize, Rational> = row
                .iter()
                .skip(1)
                .map(|(c, v)| (*c, Rational::from_integer(v.clone()) / &scale))
                .collect();
            let later: Vec<usize> = r.keys().copied().filter(|c| reduced.contains_key(c)).collect();
            for c in later {
                let f = r.remove(&c).unwrap();
                for (k, v) in &reduced[&c] {
                    let e = r.entry(*k).or_insert_with(Rational::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        r.remove(k);
                    }
                }
            }
            reduced.insert(lead, r);
        }
        for free in 0..cols.len() {
            if reduced.contains_key(&free) {
                continue;
            }
            let mut v = SparseVec::new();
            v.insert(cols[free], Rational::one());
            for (&lead, r) in &reduced {
                if let Some(x) = r.get(&free) {
                    v.insert(cols[lead], -x);
                }
            }
            basis.push(v);
        }
    }
    basis.sort_by_key(|v| *v.iter().find(|(_, x)| x.is_one()).map(|(c, _)| c).unwrap_or(&0));
    basis
}

pub fn rank(ncols: usize, rows: &[SparseVec]) -> usize {
    blocks(ncols, rows)
        .into_iter()
        .map(|(cols, row_ids)| {
            let local: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
            echelon(row_ids.iter().map(|r| to_int_row(&rows[*r], &local))).len()
        })
        .sum()
}

/// Rank of a family of sparse vectors.
pub fn rank_of_vectors(vectors: &[SparseVec]) -> usize {
    let ncols = vectors
        .iter()
        .filter_map(|v| v.keys().next_back())
        .max()
        .map_or(0, |m| m + 1);
    rank(ncols, vectors)
}

/// Solves `sum_j x_j a_j = b` for the columns `a_j`, returning one solution
/// (free variables set to zero) or `None` if inconsistent.
pub fn solve_columns(columns: &[SparseVec], b: &SparseVec) -> Option<Vec<Rational>> {
    // Augment: unknown k = columns.len() carries -b; look for a null vector with x_k = 1.
    let k = columns.len();
    let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (r, v) in col {
            rows.entry(*r).or_default().insert(j, v.clone());
        }
    }
    for (r, v) in b {
        rows.entry(*r).or_default().insert(k, -v);
    }
    let rows: Vec<SparseVec> = rows.into_values().collect();
    let null = nullspace(k + 1, &rows);
    let v = null.iter().find(|v| v.get(&k).is_some_and(|x| x.is_one()))?;
    Some((0..k).map(|j| v.get(&j).cloned().unwrap_or_else(Rational::zero)).collect())
}

/// Exact inverse of a dense square matrix, `None` if singular.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn row(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|(c, v)| (*c, int(*v))).collect()
    }

    fn apply(rows: &[SparseVec], v: &SparseVec) -> Vec<Rational> {
        rows.iter()
            .map(|r| r.iter().map(|(c, x)| x * v.get(c).cloned().unwrap_or_else(Rational::zero)).sum())
            .collect()
    }

    #[test]
    fn nullspace_of_small_system() {
        // x0 + x1 + x2 = 0, x1 - x2 = 0, x3 unconstrained, x4 = 0
        let rows = vec![row(&[(0, 1), (1, 1), (2, 1)]), row(&[(1, 1), (2, -1)]), row(&[(4, 3)])];
        let ns = nullspace(5, &rows);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(apply(&rows, v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(rank(5, &rows), 3);
    }

    #[test]
    fn basis_is_reduced_with_unit_free_entry() {
        let rows = vec![row(&[(0, 2), (1, 4), (2, 6)])];
        let ns = nullspace(3, &rows);
        assert_eq!(ns.len(), 2);
        assert_eq!(ns[0][&1], int(1));
        assert_eq!(ns[0][&0], int(-2));
        assert_eq!(ns[1][&2], int(1));
        assert_eq!(ns[1][&0], int(-3));
    }

    #[test]
    fn solve_and_invert() {
        let cols = vec![row(&[(0, 1), (1, 1)]), row(&[(0, 1), (1, -1)])];
        let b = row(&[(0, 3), (1, 1)]);
        assert_eq!(solve_columns(&cols, &b).unwrap(), vec![int(2), int(1)]);
        let bad = row(&[(2, 1)]);
        assert!(solve_columns(&cols, &bad).is_none());

        let m = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![int(1), int(-1)], vec![int(-1), int(2)]]);
        assert!(invert(&[vec![int(1), int(2)], vec![int(2), int(4)]]).is_none());
        assert_eq!(invert(&[vec![rat(1, 2)]]).unwrap(), vec![vec![int(2)]]);
    }

    #[test]
    fn builder_merges_rows_by_label() {
        let mut b: SystemBuilder<&str> = SystemBuilder::new();
        b.push_column([("a", int(1)), ("b", int(1))]);
        b.push_column([("a", int(-1)), ("b", int(-1))]);
        b.push_column([("c", int(5))]);
        assert_eq!(b.nrows(), 3);
        assert_eq!(b.rank(), 2);
        assert_eq!(b.nullspace().len(), 1);
    }

    proptest::proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec((0usize..6, 0usize..8, -3i64..4), 0..30)) {
            let mut rows: Vec<SparseVec> = vec![SparseVec::new(); 6];
            for (r, c, v) in entries {
                if v != 0 {
                    rows[r].insert(c, int(v));
                }
            }
            let ns = nullspace(8, &rows);
            proptest::prop_assert_eq!(ns.len() + rank(8, &rows), 8);
            for v in &ns {
                proptest::prop_assert!(apply(&rows, v).iter().all(|x| x.is_zero()));
            }
            proptest::prop_assert_eq!(rank_of_vectors(&ns), ns.len());
        }
    }
}
