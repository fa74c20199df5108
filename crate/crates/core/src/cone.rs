//! Rational polyhedral cones and fans.
//!
//! A cone is kept in both descriptions: generators (primitive rays plus a
//! lineality basis) and halfspaces (`a . x >= 0`) plus equations
//! (`a . x = 0`). Conversions use the double description method, which is
//! fine at the small dimensions used here.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{clear_denominators, parse_rational, Rational};
use crate::lattice::{self, IntMatrix};

type BVec = Vec<BigInt>;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(v: BVec) -> BVec {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g == BigInt::from(1) {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

fn big(v: &[i64]) -> BVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn small(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("cone coordinate exceeds i64")).collect()
}

/// `p * x - q * y`
fn combine(p: &BigInt, x: &[BigInt], q: &BigInt, y: &[BigInt]) -> BVec {
    primitive(x.iter().zip(y).map(|(a, b)| p * a - q * b).collect())
}

/// Generators of `{x : a . x >= 0 for a in ineqs, e . x = 0 for e in eqs}`.
fn double_description(n: usize, ineqs: &[BVec], eqs: &[BVec]) -> (Vec<BVec>, Vec<BVec>) {
    let mut lin: Vec<BVec> = (0..n).map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect()).collect();
    let mut rays: Vec<BVec> = Vec::new();
    let mut processed: Vec<BVec> = Vec::new();
    let constraints: Vec<(BVec, bool)> =
        eqs.iter().map(|e| (e.clone(), true)).chain(ineqs.iter().map(|a| (a.clone(), false))).collect();
    for (a, is_eq) in constraints {
        if a.iter().all(|x| x.is_zero()) {
            continue;
        }
        if let Some(pi) = lin.iter().position(|l| !dot(&a, l).is_zero()) {
            let mut p = lin.swap_remove(pi);
            let mut ap = dot(&a, &p);
            if ap.is_negative() {
                p = p.into_iter().map(|x| -x).collect();
                ap = -ap;
            }
            for l in lin.iter_mut() {
                let al = dot(&a, l);
                if !al.is_zero() {
                    *l = combine(&ap, l, &al, &p);
                }
            }
            for r in rays.iter_mut() {
                let ar = dot(&a, r);
                if !ar.is_zero() {
                    *r = combine(&ap, r, &ar, &p);
                }
            }
            if !is_eq {
                rays.push(primitive(p));
            }
            processed.push(a.clone());
            if is_eq {
                processed.push(a.iter().map(|x| -x).collect());
            }
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(&a, r)).collect();
        let zero_sets: Vec<Vec<usize>> = rays
            .iter()
            .map(|r| (0..processed.len()).filter(|&k| dot(&processed[k], r).is_zero()).collect())
            .collect();
        let mut next: Vec<BVec> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if vals[i].is_zero() || (!is_eq && vals[i].is_positive()) {
                next.push(r.clone());
            }
        }
        for i in 0..rays.len() {
            if !vals[i].is_positive() {
                continue;
            }
            for j in 0..rays.len() {
                if !vals[j].is_negative() {
                    continue;
                }
                let common: Vec<usize> = zero_sets[i].iter().filter(|k| zero_sets[j].contains(k)).copied().collect();
                let adjacent = (0..rays.len())
                    .filter(|&k| k != i && k != j)
                    .all(|k| !common.iter().all(|c| zero_sets[k].contains(c)));
                if adjacent {
                    // vals[i] > 0 > vals[j]
                    next.push(combine(&vals[i], &rays[j], &vals[j], &rays[i]));
                }
            }
        }
        rays = next;
        processed.push(a.clone());
        if is_eq {
            processed.push(a.iter().map(|x| -x).collect());
        }
    }
    rays.sort();
    rays.dedup();
    (rays, lin)
}

/// The primitive integer vector on the ray of the component of `r`
/// orthogonal to the span of `basis`.
fn project_out(r: &[BigInt], basis: &[BVec]) -> BVec {
    if basis.is_empty() {
        return primitive(r.to_vec());
    }
    let k = basis.len();
    let q = |x: BigInt| Rational::from_integer(x);
    // Gram system G c = B r
    let mut aug: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            let mut row: Vec<Rational> = (0..k).map(|j| q(dot(&basis[i], &basis[j]))).collect();
            row.push(q(dot(&basis[i], r)));
            row
        })
        .collect();
    for col in 0..k {
        let p = (col..k).find(|&i| !aug[i][col].is_zero()).expect("independent basis");
        aug.swap(col, p);
        let inv = aug[col][col].recip();
        for x in aug[col].iter_mut() {
            *x *= &inv;
        }
        for i in 0..k {
            if i != col && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                let src = aug[col].clone();
                for (a, b) in aug[i].iter_mut().zip(&src) {
                    *a -= &f * b;
                }
            }
        }
    }
    let out: Vec<Rational> = (0..r.len())
        .map(|j| q(r[j].clone()) - (0..k).map(|i| &aug[i][k] * q(basis[i][j].clone())).sum::<Rational>())
        .collect();
    primitive(clear_denominators(&out))
}

/// A closed rational polyhedral cone in `Q^n`.
#[derive(Clone, Debug)]
pub struct Cone {
    ambient: usize,
    rays: Vec<BVec>,
    lineality: Vec<BVec>,
    ineqs: Vec<BVec>,
    eqs: Vec<BVec>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.contains_cone(other) && other.contains_cone(self)
    }
}

impl Eq for Cone {}

impl Cone {
    /// The cone `{x : a . x >= 0, e . x = 0}`.
    pub fn from_constraints(n: usize, ineqs: &[Vec<i64>], eqs: &[Vec<i64>]) -> Self {
        let ineqs: Vec<BVec> = ineqs.iter().map(|v| big(v)).collect();
        let eqs: Vec<BVec> = eqs.iter().map(|v| big(v)).collect();
        let (rays, lin) = double_description(n, &ineqs, &eqs);
        Self::normalized(n, rays, lin)
    }

    /// The cone generated by `rays` plus the linear span of `lineality`.
    pub fn from_generators(n: usize, rays: &[Vec<i64>], lineality: &[Vec<i64>]) -> Self {
        Self::from_big_generators(n, rays.iter().map(|v| big(v)).collect(), lineality.iter().map(|v| big(v)).collect())
    }

    fn from_big_generators(n: usize, rays: Vec<BVec>, lineality: Vec<BVec>) -> Self {
        // the dual cone {y : y . r >= 0, y . l = 0} has the halfspaces as generators
        let (dual_rays, dual_lin) = double_description(n, &rays, &lineality);
        let (r, l) = double_description(n, &dual_rays, &dual_lin);
        let mut c = Self::normalized(n, r, l);
        c.ineqs = dual_rays;
        c.eqs = dual_lin;
        c
    }

    fn normalized(n: usize, rays: Vec<BVec>, lin: Vec<BVec>) -> Self {
        let lin_small: IntMatrix = lin.iter().map(|v| small(v)).collect();
        let lin_basis: Vec<BVec> = lattice::hnf(&lin_small, n).iter().map(|v| primitive(big(v))).collect();
        let mut rays: Vec<BVec> = rays
            .into_iter()
            .map(|r| project_out(&r, &lin_basis))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        rays.sort();
        rays.dedup();
        let (ineqs, eqs) = double_description(n, &rays, &lin_basis);
        Self { ambient: n, rays, lineality: lin_basis, ineqs, eqs }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_generators(n, &[], &[])
    }

    pub fn full(n: usize) -> Self {
        let id: IntMatrix = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        Self::from_generators(n, &[], &id)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rays(&self) -> Vec<Vec<i64>> {
        self.rays.iter().map(|v| small(v)).collect()
    }

    pub fn lineality(&self) -> Vec<Vec<i64>> {
        self.lineality.iter().map(|v| small(v)).collect()
    }

    pub fn inequalities(&self) -> Vec<Vec<i64>> {
        self.ineqs.iter().map(|v| small(v)).collect()
    }

    pub fn equations(&self) -> Vec<Vec<i64>> {
        self.eqs.iter().map(|v| small(v)).collect()
    }

    /// Generators as a list of vectors whose nonnegative span is the cone.
    pub fn generators(&self) -> Vec<Vec<i64>> {
        let mut g = self.rays();
        for l in &self.lineality {
            g.push(small(l));
            g.push(small(l).iter().map(|x| -x).collect());
        }
        g
    }

    pub fn dim(&self) -> usize {
        let mut rows: IntMatrix = self.rays();
        rows.extend(self.lineality());
        lattice::rank(&rows)
    }

    /// Linear span as an integer basis in Hermite normal form.
    pub fn span(&self) -> IntMatrix {
        let mut rows: IntMatrix = self.rays();
        rows.extend(self.lineality());
        lattice::hnf(&rows, self.ambient)
    }

    fn contains_big(&self, x: &[BigInt]) -> bool {
        self.eqs.iter().all(|e| dot(e, x).is_zero()) && self.ineqs.iter().all(|a| !dot(a, x).is_negative())
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.contains_big(&big(x))
    }

    pub fn contains_rational(&self, x: &[Rational]) -> bool {
        self.contains_big(&clear_denominators(x))
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains_big(r))
            && other.lineality.iter().all(|l| self.contains_big(l) && self.contains_big(&l.iter().map(|x| -x).collect::<Vec<_>>()))
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        let ineqs: Vec<BVec> = self.ineqs.iter().chain(&other.ineqs).cloned().collect();
        let eqs: Vec<BVec> = self.eqs.iter().chain(&other.eqs).cloned().collect();
        let (r, l) = double_description(self.ambient, &ineqs, &eqs);
        Cone::normalized(self.ambient, r, l)
    }

    /// `C1 x C2` inside `Q^(n1 + n2)`.
    pub fn product(&self, other: &Cone) -> Cone {
        let n = self.ambient + other.ambient;
        let pad = |v: &BVec, off: usize| -> BVec {
            let mut out = vec![BigInt::zero(); n];
            for (i, x) in v.iter().enumerate() {
                out[off + i] = x.clone();
            }
            out
        };
        let rays: Vec<BVec> = self.rays.iter().map(|r| pad(r, 0)).chain(other.rays.iter().map(|r| pad(r, self.ambient))).collect();
        let lin: Vec<BVec> =
            self.lineality.iter().map(|r| pad(r, 0)).chain(other.lineality.iter().map(|r| pad(r, self.ambient))).collect();
        Cone::from_big_generators(n, rays, lin)
    }

    /// A point in the relative interior: the sum of the rays.
    pub fn interior_point(&self) -> Vec<i64> {
        let mut p = vec![BigInt::zero(); self.ambient];
        for r in &self.rays {
            for (a, b) in p.iter_mut().zip(r) {
                *a += b;
            }
        }
        small(&primitive(p))
    }

    /// `gens=[(a1,...,an);...]`
    pub fn to_text(&self) -> String {
        let gens: Vec<String> = self
            .generators()
            .iter()
            .map(|g| format!("({})", g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        format!("gens=[{}]", gens.join(";"))
    }

    pub fn parse(n: usize, s: &str) -> Result<Cone> {
        let body = s
            .trim()
            .strip_prefix("gens=[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::parse(0, format!("expected gens=[...] in `{s}`")))?;
        let mut rays = Vec::new();
        for part in body.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let inner = part
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::parse(0, format!("bad generator `{part}`")))?;
            let coords: Vec<Rational> = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner.split(',').map(parse_rational).collect::<std::result::Result<_, _>>().map_err(|e| Error::parse(0, e))?
            };
            if coords.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: coords.len() });
            }
            rays.push(clear_denominators(&coords));
        }
        Ok(Cone::from_big_generators(n, rays, Vec::new()))
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A finite union of cones, none contained in another.
#[derive(Clone, Debug)]
pub struct Fan {
    ambient: usize,
    cones: Vec<Cone>,
}

impl PartialEq for Fan {
    /// Same set of maximal cones.
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.cones.len() == other.cones.len()
            && self.cones.iter().all(|c| other.cones.contains(c))
    }
}

impl Fan {
    pub fn new(ambient: usize, cones: Vec<Cone>) -> Self {
        let mut kept: Vec<Cone> = Vec::new();
        let mut sorted = cones;
        // larger cones first, so containment only has to look backwards
        sorted.sort_by_key(|c| std::cmp::Reverse(c.dim()));
        for c in sorted {
            if !kept.iter().any(|k| k.contains_cone(&c)) {
                kept.push(c);
            }
        }
        kept.sort_by(|a, b| a.generators().cmp(&b.generators()));
        Self { ambient, cones: kept }
    }

    pub fn empty(ambient: usize) -> Self {
        Self { ambient, cones: Vec::new() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.cones.iter().any(|c| c.contains(x))
    }

    pub fn contains_rational(&self, x: &[Rational]) -> bool {
        self.cones.iter().any(|c| c.contains_rational(x))
    }

    /// Largest cone dimension; `None` for the empty fan.
    pub fn dimension(&self) -> Option<usize> {
        self.cones.iter().map(Cone::dim).max()
    }

    pub fn union(&self, other: &Fan) -> Fan {
        Fan::new(self.ambient, self.cones.iter().chain(&other.cones).cloned().collect())
    }

    /// Pairwise intersections.
    pub fn intersect(&self, other: &Fan) -> Fan {
        let mut out = Vec::new();
        for a in &self.cones {
            for b in &other.cones {
                out.push(a.intersect(b));
            }
        }
        Fan::new(self.ambient, out)
    }

    /// Pairwise products in `Q^(n1+n2)`.
    pub fn product(&self, other: &Fan) -> Fan {
        let mut out = Vec::new();
        for a in &self.cones {
            for b in &other.cones {
                out.push(a.product(b));
            }
        }
        Fan::new(self.ambient + other.ambient, out)
    }

    /// One `cone: gens=[...]` line per cone.
    pub fn to_text(&self) -> String {
        self.cones.iter().map(|c| format!("cone: {}\n", c.to_text())).collect()
    }

    pub fn parse(n: usize, s: &str) -> Result<Fan> {
        let mut cones = Vec::new();
        for (i, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let body = line.strip_prefix("cone:").ok_or_else(|| Error::parse(i + 1, "expected `cone:`"))?;
            cones.push(Cone::parse(n, body).map_err(|e| Error::parse(i + 1, e.to_string()))?);
        }
        Ok(Fan::new(n, cones))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn orthant_round_trip() {
        let c = Cone::from_constraints(2, &[vec![1, 0], vec![0, 1]], &[]);
        assert_eq!(c.rays(), vec![vec![0, 1], vec![1, 0]]);
        assert!(c.lineality().is_empty());
        assert_eq!(c.dim(), 2);
        let d = Cone::from_generators(2, &[vec![1, 0], vec![0, 1]], &[]);
        assert_eq!(c, d);
    }

    #[test]
    fn halfplane_has_lineality() {
        let c = Cone::from_constraints(2, &[vec![0, 1]], &[]);
        assert_eq!(c.lineality(), vec![vec![1, 0]]);
        assert_eq!(c.rays(), vec![vec![0, 1]]);
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&[-5, 0]));
        assert!(!c.contains(&[0, -1]));
    }

    #[test]
    fn line_from_equation() {
        let c = Cone::from_constraints(2, &[], &[vec![1, -1]]);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&[3, 3]) && c.contains(&[-2, -2]));
        assert_eq!(c.to_text(), "gens=[(1,1);(-1,-1)]");
    }

    #[test]
    fn zero_and_full() {
        assert_eq!(Cone::zero(3).dim(), 0);
        assert_eq!(Cone::zero(3).to_text(), "gens=[]");
        assert_eq!(Cone::full(3).dim(), 3);
        assert!(Cone::full(2).contains_cone(&Cone::zero(2)));
    }

    #[test]
    fn intersections_and_products() {
        let a = Cone::from_generators(2, &[vec![1, 0], vec![1, 1]], &[]);
        let b = Cone::from_generators(2, &[vec![1, 1], vec![0, 1]], &[]);
        assert_eq!(a.intersect(&b), Cone::from_generators(2, &[vec![1, 1]], &[]));
        let line = Cone::from_generators(2, &[], &[vec![1, 1]]);
        let p = line.product(&Cone::zero(1));
        assert_eq!(p.dim(), 1);
        assert!(p.contains(&[2, 2, 0]) && !p.contains(&[2, 2, 1]));
    }

    #[test]
    fn fan_reduction_and_text() {
        let r = Cone::from_generators(2, &[vec![1, 0]], &[]);
        let q = Cone::from_generators(2, &[vec![1, 0], vec![0, 1]], &[]);
        let f = Fan::new(2, vec![r, q.clone(), Cone::zero(2)]);
        assert_eq!(f.cones().len(), 1);
        assert_eq!(f.cones()[0], q);
        let text = f.to_text();
        assert_eq!(Fan::parse(2, &text).unwrap(), f);
        assert_eq!(Fan::empty(2).dimension(), None);
    }

    #[test]
    fn pointed_3d_cone_facets() {
        // cone over a square
        let c = Cone::from_generators(3, &[vec![1, 1, 1], vec![-1, 1, 1], vec![1, -1, 1], vec![-1, -1, 1]], &[]);
        assert_eq!(c.inequalities().len(), 4);
        assert_eq!(c.rays().len(), 4);
        assert!(c.contains(&[0, 0, 1]));
        assert!(!c.contains(&[2, 0, 1]));
    }

    proptest! {
        #[test]
        fn generators_and_constraints_agree(
            gens in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..5),
            probes in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 20),
        ) {
            let c = Cone::from_generators(3, &gens, &[]);
            for g in &gens {
                prop_assert!(c.contains(g));
            }
            let h = Cone::from_constraints(3, &c.inequalities(), &c.equations());
            prop_assert_eq!(&c, &h);
            // a probe is in the cone iff it is a nonnegative combination: test
            // via the rays returned by the constraint side
            for p in &probes {
                prop_assert_eq!(c.contains(p), h.contains(p));
            }
            prop_assert_eq!(c.dim(), lattice::rank(&gens));
        }

        #[test]
        fn scaling_stays_inside(gens in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..4), k in 0i64..5) {
            let c = Cone::from_generators(3, &gens, &[]);
            let p = c.interior_point();
            prop_assert!(c.contains(&p.iter().map(|x| x * k).collect::<Vec<_>>()));
        }
    }
}
