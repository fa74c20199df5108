//! Integer lattices: Hermite and Smith normal forms, kernels, saturation,
//! intersections and solving linear systems over the integers.
//!
//! Matrices are row-major `Vec<Vec<i64>>`. All intermediate arithmetic is
//! done in `BigInt`, so only the canonical outputs have to fit in `i64`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type IntMatrix = Vec<Vec<i64>>;
type BMat = Vec<Vec<BigInt>>;

fn to_big(m: &[Vec<i64>]) -> BMat {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn to_small(m: &BMat) -> IntMatrix {
    m.iter().map(|r| r.iter().map(big_to_i64).collect()).collect()
}

fn big_to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("lattice entry exceeds i64")
}

fn identity(n: usize) -> BMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn ncols(m: &[Vec<i64>], fallback: usize) -> usize {
    m.first().map_or(fallback, |r| r.len())
}

/// `row[dst] += k * row[src]`
fn row_axpy(m: &mut BMat, dst: usize, src: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    let s = m[src].clone();
    for (a, b) in m[dst].iter_mut().zip(s.iter()) {
        *a += k * b;
    }
}

fn col_axpy(m: &mut BMat, dst: usize, src: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let v = k * &row[src];
        row[dst] += v;
    }
}

fn swap_cols(m: &mut BMat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn negate_row(m: &mut BMat, i: usize) {
    for x in m[i].iter_mut() {
        *x = -&*x;
    }
}

fn bhnf(mut m: BMat, n: usize) -> BMat {
    let rows = m.len();
    let mut pr = 0;
    for c in 0..n {
        if pr == rows {
            break;
        }
        loop {
            // row with the smallest nonzero entry in column c, at or below pr
            let best = (pr..rows)
                .filter(|&r| !m[r][c].is_zero())
                .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()));
            let Some(best) = best else { break };
            m.swap(pr, best);
            let mut done = true;
            for r in pr + 1..rows {
                if !m[r][c].is_zero() {
                    let q = m[r][c].div_floor(&m[pr][c]);
                    row_axpy(&mut m, r, pr, &-q);
                    if !m[r][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[pr][c].is_zero() {
            continue;
        }
        if m[pr][c].is_negative() {
            negate_row(&mut m, pr);
        }
        for r in 0..pr {
            let q = m[r][c].div_floor(&m[pr][c]);
            row_axpy(&mut m, r, pr, &-q);
        }
        pr += 1;
    }
    m.truncate(pr);
    m
}

/// Row-style Hermite normal form of the row span, zero rows dropped.
///
/// Pivots are positive and entries above each pivot lie in `[0, pivot)`,
/// which makes the result unique for a given lattice.
pub fn hnf(m: &[Vec<i64>], n: usize) -> IntMatrix {
    to_small(&bhnf(to_big(m), n))
}

/// Smith normal form `U * M * V = D` with `d_1 | d_2 | ...`, all positive.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

pub fn smith(m: &[Vec<i64>], n: usize) -> Smith {
    smith_big(to_big(m), n)
}

fn smith_big(mut a: BMat, n: usize) -> Smith {
    let r = a.len();
    let mut u = identity(r);
    let mut v = identity(n);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < r.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..n {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        u.swap(t, bi);
        swap_cols(&mut a, t, bj);
        swap_cols(&mut v, t, bj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_axpy(&mut a, i, t, &-&q);
                    row_axpy(&mut u, i, t, &-&q);
                    if !a[i][t].is_zero() {
                        clean = false;
                        a.swap(t, i);
                        u.swap(t, i);
                    }
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_axpy(&mut a, j, t, &-&q);
                    col_axpy(&mut v, j, t, &-&q);
                    if !a[t][j].is_zero() {
                        clean = false;
                        swap_cols(&mut a, t, j);
                        swap_cols(&mut v, t, j);
                    }
                }
            }
            if !clean {
                continue;
            }
            // divisibility: the pivot must divide the whole remaining block
            let bad = (t + 1..r).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    row_axpy(&mut a, t, i, &BigInt::one());
                    row_axpy(&mut u, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    Smith { diag, u, v }
}

/// A basis of `{x in Z^n : M x = 0}` in Hermite normal form.
pub fn kernel(m: &[Vec<i64>], n: usize) -> IntMatrix {
    let s = smith(m, n);
    let cols: BMat = (s.rank()..n).map(|j| s.v.iter().map(|row| row[j].clone()).collect()).collect();
    to_small(&bhnf(cols, n))
}

/// A basis of `{y in Z^r : y M = 0}`.
pub fn left_kernel(m: &[Vec<i64>]) -> IntMatrix {
    kernel(&transpose(m), m.len())
}

pub fn transpose(m: &[Vec<i64>]) -> IntMatrix {
    let n = ncols(m, 0);
    (0..n).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

/// Rank over the rationals.
pub fn rank(m: &[Vec<i64>]) -> usize {
    hnf(m, ncols(m, 0)).len()
}

/// Determinant of a square integer matrix (fraction-free elimination).
pub fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = to_big(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// One integer solution of `A x = b`, or `None` if there is none.
pub fn solve(a: &[Vec<i64>], b: &[i64], n: usize) -> Option<Vec<i64>> {
    solve_big(a, &b.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>(), n)
        .map(|x| x.iter().map(big_to_i64).collect())
}

fn solve_big(a: &[Vec<i64>], b: &[BigInt], n: usize) -> Option<Vec<BigInt>> {
    let s = smith(a, n);
    let c: Vec<BigInt> = s
        .u
        .iter()
        .map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum())
        .collect();
    let mut y = vec![BigInt::zero(); n];
    for (i, ci) in c.iter().enumerate() {
        if i < s.rank() {
            let (q, r) = ci.div_rem(&s.diag[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(
        s.v.iter()
            .map(|row| row.iter().zip(&y).map(|(p, q)| p * q).sum())
            .collect(),
    )
}

/// One integer solution of a mixed system: `A x = b` exactly, and
/// `C x = d (mod m)` for the congruence rows. Slack columns absorb the
/// multiples of `m`.
pub fn solve_mixed(
    a: &[Vec<i64>],
    b: &[i64],
    c: &[Vec<i64>],
    d: &[i64],
    m: i64,
    n: usize,
) -> Option<Vec<i64>> {
    if c.is_empty() || m == 0 {
        let rows: IntMatrix = a.iter().chain(c.iter()).cloned().collect();
        let rhs: Vec<i64> = b.iter().chain(d.iter()).copied().collect();
        return solve(&rows, &rhs, n);
    }
    let k = c.len();
    let mut rows = IntMatrix::new();
    for r in a {
        let mut row = r.clone();
        row.extend(std::iter::repeat(0).take(k));
        rows.push(row);
    }
    for (i, r) in c.iter().enumerate() {
        let mut row = r.clone();
        row.extend((0..k).map(|j| if i == j { m } else { 0 }));
        rows.push(row);
    }
    let rhs: Vec<i64> = b.iter().chain(d.iter()).copied().collect();
    solve(&rows, &rhs, n + k).map(|mut x| {
        x.truncate(n);
        x
    })
}

/// A subgroup of `Z^n`, stored by its Hermite normal form basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Sublattice {
    ambient: usize,
    basis: IntMatrix,
}

impl Sublattice {
    /// The lattice spanned by `rows` (which may be dependent).
    pub fn new(ambient: usize, rows: &[Vec<i64>]) -> Self {
        for r in rows {
            assert_eq!(r.len(), ambient, "generator length");
        }
        Self { ambient, basis: hnf(rows, ambient) }
    }

    pub fn zero(n: usize) -> Self {
        Self { ambient: n, basis: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Self::coordinate(n, &(0..n).collect::<Vec<_>>())
    }

    /// The span of the listed unit vectors.
    pub fn coordinate(n: usize, idx: &[usize]) -> Self {
        let rows: IntMatrix = idx
            .iter()
            .map(|&i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::new(n, &rows)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        hnf(&rows, self.ambient) == self.basis
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// `{x : x . v = 0 for every v in the lattice}`.
    pub fn orthogonal(&self) -> Sublattice {
        Sublattice { ambient: self.ambient, basis: kernel(&self.basis, self.ambient) }
    }

    /// The isolator `{x : k x in L for some k != 0}`.
    pub fn saturation(&self) -> Sublattice {
        self.orthogonal().orthogonal()
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation() == *self
    }

    pub fn join(&self, other: &Sublattice) -> Sublattice {
        let rows: IntMatrix = self.basis.iter().chain(other.basis.iter()).cloned().collect();
        Sublattice::new(self.ambient, &rows)
    }

    pub fn intersect(&self, other: &Sublattice) -> Sublattice {
        let (r1, r2) = (self.rank(), other.rank());
        if r1 == 0 || r2 == 0 {
            return Sublattice::zero(self.ambient);
        }
        // rows (y, z) with y B = z C
        let mut stacked = self.basis.clone();
        stacked.extend(other.basis.iter().map(|r| r.iter().map(|x| -x).collect()));
        let k = left_kernel(&stacked);
        let rows: IntMatrix = k
            .iter()
            .map(|yz| {
                (0..self.ambient)
                    .map(|j| (0..r1).map(|i| yz[i] * self.basis[i][j]).sum())
                    .collect()
            })
            .collect();
        Sublattice::new(self.ambient, &rows)
    }

    /// `[Z^n : L]` when the rank is full.
    pub fn index(&self) -> Option<BigInt> {
        (self.rank() == self.ambient).then(|| self.basis.iter().enumerate().map(|(i, r)| BigInt::from(r[i])).product())
    }

    /// The image of the lattice under `x -> x T`.
    pub fn transform(&self, t: &[Vec<i64>]) -> Sublattice {
        let n = ncols(t, self.ambient);
        let rows: IntMatrix = self
            .basis
            .iter()
            .map(|r| (0..n).map(|j| r.iter().zip(t).map(|(a, row)| a * row[j]).sum()).collect())
            .collect();
        Sublattice::new(n, &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> IntMatrix {
        let n = ncols(b, 0);
        a.iter()
            .map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect())
            .collect()
    }

    #[test]
    fn hnf_is_reduced() {
        let h = hnf(&[vec![2, 4], vec![3, 5]], 2);
        assert_eq!(h, vec![vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn saturation_of_2_4() {
        let l = Sublattice::new(2, &[vec![2, 4]]);
        assert_eq!(l.saturation(), Sublattice::new(2, &[vec![1, 2]]));
        assert_eq!(l.orthogonal().basis(), &vec![vec![2, -1]]);
    }

    #[test]
    fn intersection_of_coordinate_like_lattices() {
        let a = Sublattice::new(2, &[vec![2, 0], vec![0, 1]]);
        let b = Sublattice::new(2, &[vec![3, 0], vec![0, 2]]);
        assert_eq!(a.intersect(&b), Sublattice::new(2, &[vec![6, 0], vec![0, 2]]));
    }

    #[test]
    fn mixed_system_uses_congruences() {
        // 2x = 1 has no integer solution, but 2x = 1 (mod 3) does.
        assert!(solve(&[vec![2]], &[1], 1).is_none());
        let x = solve_mixed(&[], &[], &[vec![2]], &[1], 3, 1).unwrap();
        assert_eq!((2 * x[0] - 1).rem_euclid(3), 0);
    }

    #[test]
    fn det_matches_cofactor() {
        let m = vec![vec![0, 1, 1, 0], vec![-1, 0, 0, 0], vec![-1, 0, 0, 1], vec![0, 0, -1, 0]];
        assert_eq!(det(&m), BigInt::from(1));
        assert_eq!(det(&[vec![2, 3], vec![4, 5]]), BigInt::from(-2));
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..4, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-6i64..=6, c), r)
        })
    }

    proptest! {
        #[test]
        fn smith_transforms_are_consistent(m in small_matrix()) {
            let n = m[0].len();
            let s = smith(&m, n);
            let u = to_small(&s.u);
            let v = to_small(&s.v);
            let d = matmul(&matmul(&u, &m), &v);
            for (i, row) in d.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    let want = if i == j && i < s.rank() { big_to_i64(&s.diag[i]) } else { 0 };
                    prop_assert_eq!(x, want);
                }
            }
            for w in s.diag.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            prop_assert_eq!(det(&u).abs(), BigInt::one());
            prop_assert_eq!(det(&v).abs(), BigInt::one());
        }

        #[test]
        fn kernel_vectors_vanish(m in small_matrix()) {
            let n = m[0].len();
            let k = kernel(&m, n);
            prop_assert_eq!(k.len() + rank(&m), n);
            for v in &k {
                for r in &m {
                    prop_assert_eq!(r.iter().zip(v).map(|(a, b)| a * b).sum::<i64>(), 0);
                }
            }
        }

        #[test]
        fn hnf_is_canonical(m in small_matrix(), shuffle in prop::collection::vec(-3i64..=3, 9)) {
            let n = m[0].len();
            let mut other = m.clone();
            // add integer combinations of rows; the lattice is unchanged
            for (i, k) in shuffle.iter().enumerate() {
                let (a, b) = (i % other.len(), (i / 3) % other.len());
                if a != b {
                    let src = other[b].clone();
                    for (x, y) in other[a].iter_mut().zip(&src) {
                        *x += k * y;
                    }
                }
            }
            prop_assert_eq!(hnf(&m, n), hnf(&other, n));
        }
    }
}
