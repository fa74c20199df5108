//! The commutator pairing of a quantum torus and the structure it determines.
//!
//! `pairing[i][j]` is the exponent vector of `q_ij` in `u_i u_j = q_ij u_j u_i`,
//! taken in the group `Z^d + Z/m`. The pairing `lambda(a, b)` is the exponent of
//! the group commutator of the monomials `u^a` and `u^b`.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{self, IntMatrix, Sublattice};

/// The exponent group `Z^d + Z/m` (`m = 0` means no torsion part).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ScalarGroup {
    pub free_rank: usize,
    pub torsion: u32,
}

impl ScalarGroup {
    pub fn new(free_rank: usize, torsion: u32) -> Result<Self> {
        if torsion == 1 {
            return Err(Error::UnsupportedScalarGroup("torsion modulus 1; use 0".into()));
        }
        Ok(Self { free_rank, torsion })
    }

    /// The group `Z` generated by a single `q`.
    pub fn cyclic() -> Self {
        Self { free_rank: 1, torsion: 0 }
    }

    pub fn zero(&self) -> ScalarValue {
        ScalarValue { free: vec![0; self.free_rank], torsion: 0 }
    }

    pub fn value(&self, free: Vec<i64>, torsion: i64) -> Result<ScalarValue> {
        if free.len() != self.free_rank {
            return Err(Error::DimensionMismatch { expected: self.free_rank, got: free.len() });
        }
        Ok(ScalarValue { free, torsion: self.reduce(torsion) })
    }

    fn reduce(&self, t: i64) -> i64 {
        if self.torsion == 0 {
            0
        } else {
            t.rem_euclid(i64::from(self.torsion))
        }
    }

    pub fn add(&self, a: &ScalarValue, b: &ScalarValue) -> ScalarValue {
        ScalarValue {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: self.reduce(a.torsion + b.torsion),
        }
    }

    pub fn scale(&self, a: &ScalarValue, k: i64) -> ScalarValue {
        ScalarValue {
            free: a.free.iter().map(|x| x * k).collect(),
            torsion: self.reduce(a.torsion * k),
        }
    }

    pub fn neg(&self, a: &ScalarValue) -> ScalarValue {
        self.scale(a, -1)
    }
}

/// An element of `Z^d + Z/m`; `torsion` is in `[0, m)` and is `0` when `m = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ScalarValue {
    pub free: Vec<i64>,
    pub torsion: i64,
}

impl ScalarValue {
    pub fn is_zero(&self) -> bool {
        self.torsion == 0 && self.free.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for ScalarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.free.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")?;
        if self.torsion != 0 {
            write!(f, "+{}t", self.torsion)?;
        }
        Ok(())
    }
}

/// Rank `n` plus an alternating `n x n` matrix of scalar exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Presentation {
    rank: usize,
    group: ScalarGroup,
    pairing: Vec<Vec<ScalarValue>>,
}

impl Presentation {
    pub fn new(group: ScalarGroup, pairing: Vec<Vec<ScalarValue>>) -> Result<Self> {
        let n = pairing.len();
        for (i, row) in pairing.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            for (j, v) in row.iter().enumerate() {
                if v.free.len() != group.free_rank {
                    return Err(Error::DimensionMismatch { expected: group.free_rank, got: v.free.len() });
                }
                if group.torsion == 0 && v.torsion != 0
                    || group.torsion > 0 && !(0..i64::from(group.torsion)).contains(&v.torsion)
                {
                    return Err(Error::InvalidPresentation(format!("torsion entry ({},{}) out of range", i + 1, j + 1)));
                }
                if *v != group.neg(&pairing[j][i]) {
                    return Err(Error::InvalidPresentation(format!(
                        "pairing is not alternating at ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self { rank: n, group, pairing })
    }

    /// Scalar group `Z` with `pairing[i][j] = m[i][j]`.
    pub fn integer(m: &[Vec<i64>]) -> Result<Self> {
        let g = ScalarGroup::cyclic();
        let p = m
            .iter()
            .map(|r| r.iter().map(|&x| ScalarValue { free: vec![x], torsion: 0 }).collect())
            .collect();
        Self::new(g, p)
    }

    /// Builds a presentation from upper-triangular entries `(i, j, value)`,
    /// zero-based with `i < j`.
    pub fn from_upper(n: usize, group: ScalarGroup, entries: &[(usize, usize, ScalarValue)]) -> Result<Self> {
        let mut p = vec![vec![group.zero(); n]; n];
        for (i, j, v) in entries {
            if *i >= n || *j >= n || i == j {
                return Err(Error::InvalidPresentation(format!("bad index pair ({},{})", i + 1, j + 1)));
            }
            let v = group.value(v.free.clone(), v.torsion)?;
            p[*j][*i] = group.neg(&v);
            p[*i][*j] = v;
        }
        Self::new(group, p)
    }

    /// The commutative presentation.
    pub fn trivial(n: usize, group: ScalarGroup) -> Self {
        Self { rank: n, group, pairing: vec![vec![group.zero(); n]; n] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn group(&self) -> ScalarGroup {
        self.group
    }

    pub fn entry(&self, i: usize, j: usize) -> &ScalarValue {
        &self.pairing[i][j]
    }

    pub fn pairing(&self) -> &[Vec<ScalarValue>] {
        &self.pairing
    }

    /// The integer matrix of the `k`-th free coordinate.
    pub fn free_matrix(&self, k: usize) -> IntMatrix {
        self.pairing.iter().map(|r| r.iter().map(|v| v.free[k]).collect()).collect()
    }

    pub fn torsion_matrix(&self) -> IntMatrix {
        self.pairing.iter().map(|r| r.iter().map(|v| v.torsion).collect()).collect()
    }

    fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: v.len() });
        }
        Ok(())
    }

    /// `lambda(a, b) = sum a_i b_j pairing[i][j]`.
    pub fn eval(&self, a: &[i64], b: &[i64]) -> Result<ScalarValue> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.eval_unchecked(a, b))
    }

    pub(crate) fn eval_unchecked(&self, a: &[i64], b: &[i64]) -> ScalarValue {
        let d = self.group.free_rank;
        let mut free = vec![0i64; d];
        let mut tors = 0i64;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let v = &self.pairing[i][j];
                let k = ai * bj;
                for (f, x) in free.iter_mut().zip(&v.free) {
                    *f += k * x;
                }
                tors += k * v.torsion;
                if self.group.torsion > 0 {
                    tors = tors.rem_euclid(i64::from(self.group.torsion));
                }
            }
        }
        ScalarValue { free, torsion: self.group.reduce(tors) }
    }

    /// `{a : lambda(a, b) = 0 for all b}`, the exponents of central monomials.
    pub fn radical(&self) -> Sublattice {
        let n = self.rank;
        let m = i64::from(self.group.torsion);
        // Columns are conditions on a; congruences get one slack unknown each.
        let mut cols: IntMatrix = Vec::new();
        for k in 0..self.group.free_rank {
            let fm = self.free_matrix(k);
            for j in 0..n {
                cols.push((0..n).map(|i| fm[i][j]).collect());
            }
        }
        let tm = self.torsion_matrix();
        let cong: IntMatrix = if m > 0 {
            (0..n).map(|j| (0..n).map(|i| tm[i][j]).collect()).collect()
        } else {
            Vec::new()
        };
        let k = cong.len();
        let mut rows: IntMatrix = cols.iter().map(|c| {
            let mut r = c.clone();
            r.extend(std::iter::repeat(0).take(k));
            r
        }).collect();
        for (idx, c) in cong.iter().enumerate() {
            let mut r = c.clone();
            r.extend((0..k).map(|j| if j == idx { m } else { 0 }));
            rows.push(r);
        }
        if rows.is_empty() {
            return Sublattice::full(n);
        }
        let ker = lattice::kernel(&rows, n + k);
        let proj: IntMatrix = ker.iter().map(|v| v[..n].to_vec()).collect();
        Sublattice::new(n, &proj)
    }

    /// True iff the center is exactly the field.
    pub fn is_simple(&self) -> bool {
        self.radical().is_trivial()
    }

    /// The subgroup of `Z^d + Z/m` generated by all `q_ij`, as a lattice in
    /// `Z^(d+1)` (last coordinate the torsion part, with `m e_(d+1)` added).
    pub fn derived_unit_subgroup(&self) -> ScalarSubgroup {
        let d = self.group.free_rank;
        let m = i64::from(self.group.torsion);
        let width = d + usize::from(m > 0);
        let mut gens = IntMatrix::new();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                let v = &self.pairing[i][j];
                let mut r = v.free.clone();
                if m > 0 {
                    r.push(v.torsion);
                }
                gens.push(r);
            }
        }
        if m > 0 {
            let mut r = vec![0; width];
            r[d] = m;
            gens.push(r);
        }
        ScalarSubgroup { group: self.group, lattice: Sublattice::new(width, &gens) }
    }

    pub fn is_isotropic(&self, b: &Sublattice) -> bool {
        let basis = b.basis();
        basis.iter().enumerate().all(|(i, x)| basis[i + 1..].iter().all(|y| self.eval_unchecked(x, y).is_zero()))
    }

    /// Searches for an isotropic sublattice of the given rank whose basis
    /// entries lie in `[-bound, bound]`. `None` is not a proof of absence.
    pub fn isotropic_search(&self, target_rank: usize, bound: i64) -> Option<Sublattice> {
        let n = self.rank;
        if target_rank == 0 || target_rank > n {
            return None;
        }
        let cands = primitive_vectors(n, bound);
        let mut chosen: Vec<usize> = Vec::new();
        self.iso_dfs(&cands, 0, target_rank, &mut chosen)
            .map(|idx| Sublattice::new(n, &idx.iter().map(|&i| cands[i].clone()).collect::<Vec<_>>()))
    }

    fn iso_dfs(&self, cands: &[Vec<i64>], start: usize, target: usize, chosen: &mut Vec<usize>) -> Option<Vec<usize>> {
        if chosen.len() == target {
            return Some(chosen.clone());
        }
        for i in start..cands.len() {
            let v = &cands[i];
            if chosen.iter().any(|&c| !self.eval_unchecked(&cands[c], v).is_zero()) {
                continue;
            }
            let mut rows: IntMatrix = chosen.iter().map(|&c| cands[c].clone()).collect();
            rows.push(v.clone());
            if lattice::rank(&rows) < rows.len() {
                continue;
            }
            chosen.push(i);
            if let Some(r) = self.iso_dfs(cands, i + 1, target, chosen) {
                return Some(r);
            }
            chosen.pop();
        }
        None
    }

    /// Direct sum: block-diagonal pairing.
    pub fn tensor(&self, other: &Presentation) -> Result<Presentation> {
        if self.group != other.group {
            return Err(Error::IncompatibleScalarGroups);
        }
        let n = self.rank + other.rank;
        let mut p = vec![vec![self.group.zero(); n]; n];
        for i in 0..self.rank {
            for j in 0..self.rank {
                p[i][j] = self.pairing[i][j].clone();
            }
        }
        for i in 0..other.rank {
            for j in 0..other.rank {
                p[self.rank + i][self.rank + j] = other.pairing[i][j].clone();
            }
        }
        Ok(Presentation { rank: n, group: self.group, pairing: p })
    }

    /// Restriction of the pairing to the coordinates `idx`.
    pub fn restrict(&self, idx: &[usize]) -> Presentation {
        let pairing = idx.iter().map(|&i| idx.iter().map(|&j| self.pairing[i][j].clone()).collect()).collect();
        Presentation { rank: idx.len(), group: self.group, pairing }
    }
}

/// A subgroup of the scalar group, see [`Presentation::derived_unit_subgroup`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarSubgroup {
    pub group: ScalarGroup,
    pub lattice: Sublattice,
}

impl ScalarSubgroup {
    pub fn is_trivial(&self) -> bool {
        let d = self.group.free_rank;
        self.lattice.basis().iter().all(|r| r[..d].iter().all(|&x| x == 0))
            && (self.group.torsion == 0 || self.lattice.basis().iter().all(|r| r[d] % i64::from(self.group.torsion) == 0))
    }

    /// Invariant factors of the free part, e.g. `[1, 3]` for `Z + 3Z`.
    pub fn free_invariants(&self) -> Vec<i64> {
        let d = self.group.free_rank;
        let rows: IntMatrix = self.lattice.basis().iter().map(|r| r[..d].to_vec()).collect();
        lattice::smith(&rows, d).diag.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }
}

impl fmt::Display for ScalarSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let rows: Vec<String> = self
            .lattice
            .basis()
            .iter()
            .map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

/// Primitive vectors in `[-b, b]^n` with positive first nonzero entry,
/// shortest first; coordinate vectors come first in index order.
pub fn primitive_vectors(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let side = (2 * b + 1) as usize;
    let total = side.checked_pow(n as u32).expect("search box too large");
    for code in 0..total {
        let mut c = code;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let d = (c % side) as i64 - b;
                c /= side;
                d
            })
            .collect();
        let Some(first) = v.iter().find(|&&x| x != 0) else { continue };
        if *first < 0 {
            continue;
        }
        let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
        if g != 1 {
            continue;
        }
        out.push(v);
    }
    out.sort_by(|a, b| {
        let na: i64 = a.iter().map(|x| x.abs()).sum();
        let nb: i64 = b.iter().map(|x| x.abs()).sum();
        na.cmp(&nb).then_with(|| b.cmp(a))
    });
    out
}

/// Result of [`commuting_monomials`]: `mu[k] + s * ext[k]` pairwise commute.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommutingMonomials {
    pub s: i64,
    pub mu: Vec<Vec<i64>>,
    /// Coefficients of each `mu[k]` in the generators of `C` that were used.
    pub coords: Vec<Vec<i64>>,
}

/// Finds the least `s <= s_max` and `mu_k` in `C` making the exponents
/// `mu_k + s e_k` pairwise commute. `C` must be isotropic.
pub fn commuting_monomials(
    p: &Presentation,
    c: &Sublattice,
    ext: &[Vec<i64>],
    s_max: i64,
) -> Result<Option<CommutingMonomials>> {
    commuting_with_generators(p, c.basis(), ext, s_max)
}

pub(crate) fn commuting_with_generators(
    p: &Presentation,
    cgen: &[Vec<i64>],
    ext: &[Vec<i64>],
    s_max: i64,
) -> Result<Option<CommutingMonomials>> {
    let n = p.rank();
    for v in cgen.iter().chain(ext) {
        p.check_len(v)?;
    }
    if !p.is_isotropic(&Sublattice::new(n, cgen)) {
        return Err(Error::NotIsotropic);
    }
    let mut all: IntMatrix = cgen.to_vec();
    all.extend(ext.iter().cloned());
    if lattice::rank(&all) != all.len() {
        return Err(Error::Precondition("C generators and extension are dependent".into()));
    }
    for s in 1..=s_max {
        if let Some(sol) = solve_commuting(p, cgen, ext, s) {
            return Ok(Some(sol));
        }
    }
    Ok(None)
}

/// Solves the linear system for a fixed `s` and verifies the result.
pub(crate) fn solve_commuting(p: &Presentation, cgen: &[Vec<i64>], ext: &[Vec<i64>], s: i64) -> Option<CommutingMonomials> {
    let r = cgen.len();
    let k = ext.len();
    let g = p.group();
    let m = i64::from(g.torsion);
    let unknowns = r * k;
    let lam: Vec<Vec<ScalarValue>> = cgen.iter().map(|ci| ext.iter().map(|e| p.eval_unchecked(ci, e)).collect()).collect();
    let (mut a, mut b, mut cc, mut dd) = (IntMatrix::new(), Vec::new(), IntMatrix::new(), Vec::new());
    for kk in 0..k {
        for ll in kk + 1..k {
            let ee = p.eval_unchecked(&ext[kk], &ext[ll]);
            // lambda(c_k, e_l) - lambda(c_l, e_k) = -s lambda(e_k, e_l)
            for f in 0..g.free_rank {
                let mut row = vec![0; unknowns];
                for i in 0..r {
                    row[kk * r + i] += lam[i][ll].free[f];
                    row[ll * r + i] -= lam[i][kk].free[f];
                }
                a.push(row);
                b.push(-s * ee.free[f]);
            }
            if m > 0 {
                let mut row = vec![0; unknowns];
                for i in 0..r {
                    row[kk * r + i] += s * lam[i][ll].torsion;
                    row[ll * r + i] -= s * lam[i][kk].torsion;
                }
                cc.push(row);
                dd.push((-s * s * ee.torsion).rem_euclid(m));
            }
        }
    }
    let y = if unknowns == 0 {
        let ok = b.iter().all(|&x| x == 0) && dd.iter().all(|&x| x == 0);
        if !ok {
            return None;
        }
        Vec::new()
    } else {
        lattice::solve_mixed(&a, &b, &cc, &dd, m, unknowns)?
    };
    let n = p.rank();
    let coords: Vec<Vec<i64>> = (0..k).map(|kk| y[kk * r..(kk + 1) * r].to_vec()).collect();
    let mu: Vec<Vec<i64>> = coords
        .iter()
        .map(|co| (0..n).map(|j| co.iter().zip(cgen).map(|(c, g)| c * g[j]).sum()).collect())
        .collect();
    let moved: Vec<Vec<i64>> = mu.iter().zip(ext).map(|(m, e)| m.iter().zip(e).map(|(x, y)| x + s * y).collect()).collect();
    for i in 0..k {
        for j in i + 1..k {
            if !p.eval_unchecked(&moved[i], &moved[j]).is_zero() {
                return None;
            }
        }
    }
    Some(CommutingMonomials { s, mu, coords })
}

/// Four subgroups in the configuration used for the rank-2 splitting.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FourSubgroups {
    pub b1: Sublattice,
    pub b2: Sublattice,
    pub b3: Sublattice,
    pub b4: Sublattice,
}

fn commute(p: &Presentation, x: &Sublattice, y: &Sublattice) -> bool {
    x.basis().iter().all(|a| y.basis().iter().all(|b| p.eval_unchecked(a, b).is_zero()))
}

/// Checks the pairing, intersection and rank conditions of the witness.
pub fn four_subgroup_validate(p: &Presentation, w: &FourSubgroups) -> Result<bool> {
    let n = p.rank();
    if n % 2 == 1 {
        return Err(Error::OddRank(n));
    }
    let m = n / 2;
    let bs = [&w.b1, &w.b2, &w.b3, &w.b4];
    if bs.iter().any(|b| b.ambient() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: bs.iter().map(|b| b.ambient()).find(|&a| a != n).unwrap() });
    }
    if bs.iter().any(|b| b.is_trivial() || !p.is_isotropic(b)) {
        return Ok(false);
    }
    let pairs_ok = commute(p, &w.b1, &w.b2) && commute(p, &w.b2, &w.b3) && commute(p, &w.b3, &w.b4);
    let meets_ok = w.b1.intersect(&w.b2).is_trivial()
        && w.b3.intersect(&w.b4).is_trivial()
        && w.b1.join(&w.b2).intersect(&w.b3.join(&w.b4)).is_trivial();
    let ranks_ok = w.b1.rank() + w.b2.rank() == m && w.b2.rank() + w.b3.rank() == m && w.b3.rank() + w.b4.rank() == m;
    Ok(pairs_ok && meets_ok && ranks_ok)
}

/// New bases `B1'` (from `B1`) and `B4'` (from `B4`) after the change of
/// variables `w' = nu + s w`, `u' = mu + s u`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitStep {
    pub s: i64,
    pub b1_prime: Vec<Vec<i64>>,
    pub b4_prime: Vec<Vec<i64>>,
}

pub fn theorem_b_step(p: &Presentation, w: &FourSubgroups, s_max: i64) -> Result<Option<SplitStep>> {
    if !four_subgroup_validate(p, w)? {
        return Err(Error::InvalidWitness("four-subgroup conditions fail".into()));
    }
    let n = p.rank();
    let b = w.b1.join(&w.b2).join(&w.b3).join(&w.b4);
    if b.rank() != n {
        return Err(Error::InvalidWitness("B1 B2 B3 B4 does not have finite index".into()));
    }
    let r2 = w.b2.rank();
    let cgen: IntMatrix = w.b2.basis().iter().chain(w.b3.basis()).cloned().collect();
    let ext: IntMatrix = w.b4.basis().iter().chain(w.b1.basis()).cloned().collect();
    let Some(sol) = commuting_with_generators(p, &cgen, &ext, s_max)? else {
        return Ok(None);
    };
    let s = sol.s;
    let part = |co: &[i64], range: std::ops::Range<usize>| -> Vec<i64> {
        (0..n).map(|j| range.clone().map(|i| co[i] * cgen[i][j]).sum()).collect()
    };
    let k4 = w.b4.rank();
    let mut b4_prime = Vec::new();
    let mut b1_prime = Vec::new();
    for (idx, (co, e)) in sol.coords.iter().zip(&ext).enumerate() {
        if idx < k4 {
            let nu = part(co, r2..cgen.len());
            b4_prime.push(nu.iter().zip(e).map(|(x, y)| x + s * y).collect());
        } else {
            let mu = part(co, 0..r2);
            b1_prime.push(mu.iter().zip(e).map(|(x, y)| x + s * y).collect());
        }
    }
    let left = Sublattice::new(n, &b1_prime.iter().chain(w.b3.basis()).cloned().collect::<Vec<_>>());
    let right = Sublattice::new(n, &b4_prime.iter().chain(w.b2.basis()).cloned().collect::<Vec<_>>());
    if !commute(p, &left, &right) {
        return Ok(None);
    }
    Ok(Some(SplitStep { s, b1_prime, b4_prime }))
}

/// One rank-2 block `<v, w>` with `lambda(v, w) = divisor > 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Block {
    pub v: Vec<i64>,
    pub w: Vec<i64>,
    pub divisor: i64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockDecomposition {
    /// The finite-index sublattice spanned by all block vectors.
    pub lattice: Sublattice,
    pub blocks: Vec<Block>,
}

/// Symplectic normal form of a nondegenerate alternating integer pairing:
/// a basis `v_1, w_1, ..., v_m, w_m` with `lambda(v_i, w_i) = d_i`,
/// `d_1 | d_2 | ...`, and all other pairings zero.
pub fn alternating_block_decomposition(p: &Presentation) -> Result<BlockDecomposition> {
    let g = p.group();
    if g.free_rank != 1 || g.torsion != 0 {
        return Err(Error::UnsupportedScalarGroup(format!("need Z, got d={} m={}", g.free_rank, g.torsion)));
    }
    let n = p.rank();
    if n % 2 == 1 {
        return Err(Error::OddRank(n));
    }
    if !p.is_simple() {
        return Err(Error::NontrivialRadical);
    }
    let mut basis: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let m0: Vec<Vec<i128>> = p.free_matrix(0).iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let form = |x: &[i128], y: &[i128]| -> i128 {
        let mut acc = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                acc += x[i] * y[j] * m0[i][j];
            }
        }
        acc
    };
    let axpy = |dst: &mut Vec<i128>, src: &[i128], k: i128| {
        for (a, b) in dst.iter_mut().zip(src) {
            *a += k * b;
        }
    };
    let mut blocks = Vec::new();
    let mut t = 0;
    while t < n {
        'restart: loop {
            // smallest nonzero pairing among the remaining vectors
            let mut best: Option<(usize, usize, i128)> = None;
            for i in t..n {
                for j in t..n {
                    let v = form(&basis[i], &basis[j]);
                    if v > 0 && best.map_or(true, |b| v < b.2) {
                        best = Some((i, j, v));
                    }
                }
            }
            let (i, j, _) = best.expect("nondegenerate form");
            basis.swap(t, i);
            let j = if j == t { i } else { j };
            basis.swap(t + 1, j);
            let d = form(&basis[t], &basis[t + 1]);
            for l in t + 2..n {
                let a = form(&basis[t], &basis[l]);
                let b = form(&basis[t + 1], &basis[l]);
                let (e, f) = (basis[t].clone(), basis[t + 1].clone());
                // x' = x - (a/d) f + (b/d) e kills both pairings when exact
                axpy(&mut basis[l], &f, -a.div_euclid(d));
                axpy(&mut basis[l], &e, b.div_euclid(d));
                if a.rem_euclid(d) != 0 || b.rem_euclid(d) != 0 {
                    continue 'restart;
                }
            }
            // divisibility of the remaining block
            for l in t + 2..n {
                for k in t + 2..n {
                    if form(&basis[l], &basis[k]) % d != 0 {
                        let src = basis[l].clone();
                        axpy(&mut basis[t], &src, 1);
                        continue 'restart;
                    }
                }
            }
            blocks.push(Block {
                v: basis[t].iter().map(|&x| x as i64).collect(),
                w: basis[t + 1].iter().map(|&x| x as i64).collect(),
                divisor: d as i64,
            });
            break;
        }
        t += 2;
    }
    let rows: IntMatrix = blocks.iter().flat_map(|b| [b.v.clone(), b.w.clone()]).collect();
    let out = BlockDecomposition { lattice: Sublattice::new(n, &rows), blocks };
    verify_blocks(p, &out)?;
    Ok(out)
}

fn verify_blocks(p: &Presentation, d: &BlockDecomposition) -> Result<()> {
    let vecs: Vec<&Vec<i64>> = d.blocks.iter().flat_map(|b| [&b.v, &b.w]).collect();
    for (a, x) in vecs.iter().enumerate() {
        for (b, y) in vecs.iter().enumerate() {
            let want = if a / 2 == b / 2 && a != b {
                let dv = d.blocks[a / 2].divisor;
                if a < b { dv } else { -dv }
            } else {
                0
            };
            if p.eval_unchecked(x, y).free[0] != want {
                return Err(Error::Precondition("block decomposition failed verification".into()));
            }
        }
    }
    Ok(())
}

/// A rational subspace of `Q^n`, stored by a canonical integer basis
/// (Hermite normal form of its saturated integer points).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: IntMatrix,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<i64>]) -> Self {
        Self { ambient, basis: Sublattice::new(ambient, vectors).saturation().basis().clone() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        lattice::rank(&rows) == self.basis.len()
    }
}

/// `ann(B) = {phi : phi(B) = 0}`.
pub fn ann_subgroup(b: &Sublattice) -> Subspace {
    Subspace { ambient: b.ambient(), basis: b.orthogonal().basis().clone() }
}

/// `ann(V) = {b : V(b) = 0}`, always saturated.
pub fn ann_subspace(v: &Subspace) -> Sublattice {
    Sublattice::new(v.ambient, &v.basis).orthogonal()
}
