//! Sparse exact row echelon forms over a [`Field`].
//!
//! Columns are plain indices; callers choose the order by how they number
//! them. A row's pivot is its smallest column index.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{Field, Rational};

/// Sparse vector with strictly increasing column indices and no zeros.
pub type SparseRow<F> = Vec<(usize, F)>;

/// `a - k * b`
pub fn sub_scaled<F: Field>(a: &[(usize, F)], k: &F, b: &[(usize, F)]) -> SparseRow<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -b[j].1.mul_ref(k)));
            j += 1;
        } else {
            let v = a[i].1.sub_mul(k, &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_row<F: Field>(r: &mut SparseRow<F>, k: &F) {
    for (_, v) in r.iter_mut() {
        *v = v.mul_ref(k);
    }
}

/// Rows in echelon form: distinct pivots, each pivot entry equal to one.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    rows: Vec<SparseRow<F>>,
    by_pivot: HashMap<usize, usize>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Self { rows: Vec::new(), by_pivot: HashMap::new() }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow<F>] {
        &self.rows
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseRow<F>> {
        self.by_pivot.get(&col).map(|&i| &self.rows[i])
    }

    /// Eliminates pivot columns from the front of `row` until its leading
    /// column is not a pivot.
    pub fn reduce_leading(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        while let Some((c, v)) = row.first() {
            match self.by_pivot.get(c) {
                Some(&i) => {
                    let k = v.clone();
                    row = sub_scaled(&row, &k, &self.rows[i]);
                }
                None => break,
            }
        }
        row
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce_full(&self, row: SparseRow<F>) -> SparseRow<F> {
        let mut row = row;
        let mut pos = 0;
        while pos < row.len() {
            let c = row[pos].0;
            if let Some(&i) = self.by_pivot.get(&c) {
                let k = row[pos].1.clone();
                row = sub_scaled(&row, &k, &self.rows[i]);
                // entries before pos are untouched: pivot rows start at c
            } else {
                pos += 1;
            }
        }
        row
    }

    /// Adds a row; returns its index if it was independent.
    pub fn insert(&mut self, row: SparseRow<F>) -> Option<usize> {
        let mut row = self.reduce_leading(row);
        let (c, lead) = row.first()?.clone();
        if !lead.is_one() {
            let inv = lead.inv();
            scale_row(&mut row, &inv);
        }
        self.rows.push(row);
        self.by_pivot.insert(c, self.rows.len() - 1);
        Some(self.rows.len() - 1)
    }

    pub fn contains(&self, row: SparseRow<F>) -> bool {
        self.reduce_full(row).is_empty()
    }

    /// Reduced row echelon form of the whole system.
    pub fn into_reduced(mut self) -> Vec<SparseRow<F>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i][0].0));
        let mut done: Echelon<F> = Echelon::new();
        for i in order {
            let row = std::mem::take(&mut self.rows[i]);
            let r = done.reduce_full_except_lead(row);
            let c = r[0].0;
            done.rows.push(r);
            done.by_pivot.insert(c, done.rows.len() - 1);
        }
        done.rows
    }

    fn reduce_full_except_lead(&self, row: SparseRow<F>) -> SparseRow<F> {
        let mut row = row;
        let mut pos = 1;
        while pos < row.len() {
            let c = row[pos].0;
            if let Some(&i) = self.by_pivot.get(&c) {
                let k = row[pos].1.clone();
                row = sub_scaled(&row, &k, &self.rows[i]);
            } else {
                pos += 1;
            }
        }
        row
    }
}

/// Rank of a dense matrix.
pub fn dense_rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        let sparse: SparseRow<F> = r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect();
        e.insert(sparse);
    }
    e.rank()
}

/// Sparse integer vector, kept primitive with a positive leading entry.
pub type IntRow = Vec<(usize, BigInt)>;

/// Clears denominators and makes the row primitive.
pub fn integer_row(row: &SparseRow<Rational>) -> IntRow {
    let l = row.iter().fold(BigInt::one(), |l, (_, v)| l.lcm(v.denom()));
    let mut r: IntRow = row.iter().map(|(c, v)| (*c, v.numer() * (&l / v.denom()))).collect();
    make_primitive(&mut r);
    r
}

fn make_primitive(r: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in r.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if r.first().is_some_and(|(_, v)| v.is_negative()) {
        g = -g;
    }
    if !g.is_one() && !g.is_zero() {
        for (_, v) in r.iter_mut() {
            *v /= &g;
        }
    }
}

/// `a r - b p` for the multipliers that cancel column `c` of `r`, where
/// `p` is a pivot row starting at `c`.
fn cancel(r: &IntRow, p: &IntRow, rc: &BigInt) -> IntRow {
    let pc = &p[0].1;
    let g = pc.gcd(rc);
    let (a, b) = (pc / &g, rc / &g);
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        if j == p.len() || (i < r.len() && r[i].0 < p[j].0) {
            out.push((r[i].0, &r[i].1 * &a));
            i += 1;
        } else if i == r.len() || p[j].0 < r[i].0 {
            out.push((p[j].0, -(&p[j].1 * &b)));
            j += 1;
        } else {
            let v = &r[i].1 * &a - &p[j].1 * &b;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(&mut out);
    out
}

/// Fraction-free echelon form over the integers: the same row spaces over
/// `Q` as [`Echelon`], without per-entry rational normalization.
#[derive(Clone, Debug, Default)]
pub struct IntEchelon {
    rows: Vec<IntRow>,
    by_pivot: HashMap<usize, usize>,
}

impl IntEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut row: IntRow, full: bool) -> IntRow {
        let mut pos = 0;
        while pos < row.len() {
            match self.by_pivot.get(&row[pos].0) {
                Some(&i) => {
                    let rc = row[pos].1.clone();
                    row = cancel(&row, &self.rows[i], &rc);
                }
                None if full => pos += 1,
                None => break,
            }
        }
        row
    }

    pub fn insert(&mut self, row: IntRow) -> Option<usize> {
        let row = self.reduce(row, false);
        let c = row.first()?.0;
        self.rows.push(row);
        self.by_pivot.insert(c, self.rows.len() - 1);
        Some(self.rows.len() - 1)
    }

    pub fn contains(&self, row: IntRow) -> bool {
        self.reduce(row, true).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rational};

    fn row(v: &[i64]) -> SparseRow<Rational> {
        v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, rat(x))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(row(&[1, 2, 3])).is_some());
        assert!(e.insert(row(&[2, 4, 6])).is_none());
        assert!(e.insert(row(&[0, 1, 1])).is_some());
        assert!(e.contains(row(&[1, 3, 4])));
        assert!(!e.contains(row(&[0, 0, 1])));
    }

    #[test]
    fn reduced_form_is_unique() {
        let mut e = Echelon::new();
        e.insert(row(&[1, 2, 3, 0]));
        e.insert(row(&[1, 3, 4, 1]));
        let mut red = e.into_reduced();
        red.sort_by_key(|r| r[0].0);
        assert_eq!(red, vec![row(&[1, 0, 1, -2]), row(&[0, 1, 1, 1])]);
    }

    #[test]
    fn dense_rank_counts() {
        let m = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)], vec![rat(0), rat(0)]];
        assert_eq!(dense_rank(&m), 1);
    }

    proptest::proptest! {
        #[test]
        fn integer_echelon_matches(rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 0..7),
                                   target in proptest::collection::vec(-3i64..=3, 5)) {
            let mut e = Echelon::new();
            let mut z = IntEchelon::new();
            for r in &rows {
                let scaled: SparseRow<Rational> = row(r).into_iter().map(|(c, v)| (c, v / rat(2))).collect();
                e.insert(scaled.clone());
                z.insert(integer_row(&scaled));
            }
            proptest::prop_assert_eq!(e.rank(), z.rank());
            proptest::prop_assert_eq!(e.contains(row(&target)), z.contains(integer_row(&row(&target))));
        }
    }
}
