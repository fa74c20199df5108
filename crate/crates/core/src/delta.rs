//! The invariant `Delta(M)` as a rational polyhedral fan.
//!
//! For a principal module `F*A / alpha F*A` the computation is exact. Every
//! element of the ideal is `alpha delta`, initial forms multiply, and a
//! product is a monomial only if both factors are. So a character `phi` is
//! excluded exactly when `phi` attains its minimum over `supp(alpha)` at a
//! single point, and `Delta` is the tropical fan of the support.
//!
//! Relations that split along commuting blocks of coordinates reduce to the
//! principal case through the product formula. Anything else gets the outer
//! bound `Trop(alpha_1) cap ... cap Trop(alpha_r)` and an empty inner bound.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::cone::{Cone, Fan};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::field::{clear_denominators, Field, Rational};
use crate::lattice::{IntMatrix, Sublattice};
use crate::linalg::Echelon;
use crate::module::{gk_dimension, ideal_slice, level, torsion_witness, Columns, CyclicModule, SearchBounds};
use crate::pairing::{ann_subspace, primitive_vectors, Subspace};

/// Certified bounds `inner <= Delta <= outer`.
#[derive(Clone, PartialEq, Debug)]
pub struct DeltaApprox {
    pub inner: Fan,
    pub outer: Fan,
    pub exact: bool,
    /// The module is zero; the fans are then `{0}`.
    pub zero_module: bool,
}

impl DeltaApprox {
    pub fn exact(f: Fan) -> Self {
        Self { inner: f.clone(), outer: f, exact: true, zero_module: false }
    }

    fn zero(n: usize) -> Self {
        let z = Fan::new(n, vec![Cone::zero(n)]);
        Self { inner: z.clone(), outer: z, exact: true, zero_module: true }
    }

    pub fn ambient(&self) -> usize {
        self.outer.ambient()
    }
}

/// The cones `{phi : phi(b - a) = 0, phi(x - a) >= 0 for x in S}` over all
/// pairs `a != b` of `S`. A single point gives `{0}`.
pub fn tropical_fan(n: usize, support: &[Vec<i64>]) -> Fan {
    let pts: Vec<&Vec<i64>> = support.iter().collect::<BTreeSet<_>>().into_iter().collect();
    if pts.len() < 2 {
        return Fan::new(n, vec![Cone::zero(n)]);
    }
    let diff = |x: &[i64], a: &[i64]| -> Vec<i64> { x.iter().zip(a).map(|(p, q)| p - q).collect() };
    let mut cones = Vec::new();
    for (i, a) in pts.iter().enumerate() {
        let ineqs: IntMatrix = pts.iter().filter(|x| *x != a).map(|x| diff(x, a)).collect();
        for b in &pts[i + 1..] {
            cones.push(Cone::from_constraints(n, &ineqs, &[diff(b, a)]));
        }
    }
    Fan::new(n, cones)
}

/// `Delta` of `F*A / alpha F*A`.
pub fn delta_principal<F: Field>(m: &CyclicModule<F>) -> Result<DeltaApprox> {
    let [alpha] = m.relations() else {
        return Err(Error::Precondition("delta_principal needs exactly one relation".into()));
    };
    let n = m.rank();
    if alpha.num_terms() == 1 {
        return Ok(DeltaApprox::zero(n));
    }
    Ok(DeltaApprox::exact(tropical_fan(n, &alpha.support())))
}

/// Coordinate blocks on which the relations split: each block is closed
/// under the pairing and carries at most one relation.
#[derive(Clone, Debug)]
pub struct BlockSplit<F: Field> {
    pub blocks: Vec<(Vec<usize>, Option<Element<F>>)>,
}

/// Splits relations into commuting coordinate blocks, if possible.
pub fn block_split<F: Field>(m: &CyclicModule<F>) -> Option<BlockSplit<F>> {
    let n = m.rank();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let union = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            p[ra] = rb;
        }
    };
    let pres = m.algebra().presentation();
    for i in 0..n {
        for j in i + 1..n {
            if !pres.entry(i, j).is_zero() {
                union(&mut parent, i, j);
            }
        }
    }
    // coordinates along which a relation's support varies
    let mut varying = Vec::new();
    for r in m.relations() {
        let sup = r.support();
        let coords: Vec<usize> = (0..n).filter(|&k| sup.iter().any(|e| e[k] != sup[0][k])).collect();
        for w in coords.windows(2) {
            union(&mut parent, w[0], w[1]);
        }
        varying.push(coords);
    }
    let mut roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect::<BTreeSet<_>>().into_iter().collect();
    roots.sort();
    let mut blocks: Vec<(Vec<usize>, Option<Element<F>>)> =
        roots.iter().map(|&r| ((0..n).filter(|&i| find(&mut parent, i) == r).collect(), None)).collect();
    for (r, coords) in m.relations().iter().zip(&varying) {
        if coords.is_empty() {
            // a monomial relation: handled by the zero-module test
            return None;
        }
        let root = find(&mut parent, coords[0]);
        let k = roots.iter().position(|&x| x == root).unwrap();
        if blocks[k].1.is_some() {
            return None;
        }
        let first = r.support()[0].iter().map(|x| -x).collect::<Vec<_>>();
        blocks[k].1 = Some(r.mul_monomial_right(&first));
    }
    Some(BlockSplit { blocks })
}

/// `Delta` of a cyclic module: exact when principal or block-split,
/// otherwise the outer bound from the tropical fans of the relations.
pub fn delta_cyclic<F: Field>(m: &CyclicModule<F>) -> DeltaApprox {
    let n = m.rank();
    if m.relations().is_empty() {
        return DeltaApprox::exact(Fan::new(n, vec![Cone::full(n)]));
    }
    if m.relations().iter().any(|r| r.num_terms() == 1) {
        return DeltaApprox::zero(n);
    }
    if m.is_principal() {
        return delta_principal(m).expect("one relation");
    }
    if let Some(split) = block_split(m) {
        let parts: Vec<Fan> = split
            .blocks
            .iter()
            .map(|(coords, rel)| {
                let k = coords.len();
                let f = match rel {
                    None => Fan::new(k, vec![Cone::full(k)]),
                    Some(a) => {
                        let sup: Vec<Vec<i64>> = a.support().iter().map(|e| coords.iter().map(|&c| e[c]).collect()).collect();
                        tropical_fan(k, &sup)
                    }
                };
                embed_fan(&f, coords, n)
            })
            .collect();
        let prod = parts.into_iter().reduce(|a, b| minkowski(&a, &b)).unwrap();
        return DeltaApprox::exact(prod);
    }
    let outer = m
        .relations()
        .iter()
        .map(|r| tropical_fan(n, &r.support()))
        .reduce(|a, b| a.intersect(&b))
        .unwrap();
    DeltaApprox { inner: Fan::empty(n), outer, exact: false, zero_module: false }
}

/// Places a fan on `Q^k` onto the given coordinates of `Q^n`.
fn embed_fan(f: &Fan, coords: &[usize], n: usize) -> Fan {
    let lift = |v: &Vec<i64>| {
        let mut w = vec![0i64; n];
        for (x, &c) in v.iter().zip(coords) {
            w[c] = *x;
        }
        w
    };
    let cones = f
        .cones()
        .iter()
        .map(|c| {
            let rays: IntMatrix = c.rays().iter().map(lift).collect();
            let lin: IntMatrix = c.lineality().iter().map(lift).collect();
            Cone::from_generators(n, &rays, &lin)
        })
        .collect();
    Fan::new(n, cones)
}

/// Pairwise Minkowski sums; the product fan for complementary coordinates.
fn minkowski(a: &Fan, b: &Fan) -> Fan {
    let n = a.ambient();
    let mut cones = Vec::new();
    for c in a.cones() {
        for d in b.cones() {
            let mut rays = c.rays();
            rays.extend(d.rays());
            let mut lin = c.lineality();
            lin.extend(d.lineality());
            cones.push(Cone::from_generators(n, &rays, &lin));
        }
    }
    Fan::new(n, cones)
}

/// Searches the ideal for an element whose support has a unique
/// `phi`-minimum, certifying `phi` is not in `Delta`. Boxes of side
/// `0..=degree_bound` are tried in turn.
pub fn exclude_certificate<F: Field>(m: &CyclicModule<F>, phi: &[Rational], degree_bound: usize) -> Option<Element<F>> {
    if m.relations().is_empty() || phi.len() != m.rank() {
        return None;
    }
    let phi_z = clear_denominators(phi);
    if let Some(a) = m.relations().iter().find(|a| unique_minimum(a, &phi_z)) {
        return Some(a.clone());
    }
    (1..=degree_bound).find_map(|d| exclude_at(m, &phi_z, d))
}

fn unique_minimum<F: Field>(a: &Element<F>, phi: &[BigInt]) -> bool {
    let mut levels: Vec<BigInt> = a.terms().keys().map(|e| level(phi, e)).collect();
    levels.sort();
    levels.len() == 1 || levels[0] != levels[1]
}

/// Orders columns by `phi`-level. After echelon reduction, the rows whose
/// pivots share a level are fully reduced against each other; a row that is
/// then a single column at its pivot level has a unique `phi`-minimum.
fn exclude_at<F: Field>(m: &CyclicModule<F>, phi: &[BigInt], d: usize) -> Option<Element<F>> {
    let rows = ideal_slice(m, d);
    let cols = Columns::by_key(&rows, |e| level(phi, e));
    let lv: Vec<BigInt> = cols.monomials.iter().map(|e| level(phi, e)).collect();
    let mut ech = Echelon::new();
    for r in &rows {
        ech.insert(cols.row(r));
    }
    let mut by_level: std::collections::BTreeMap<&BigInt, Echelon<F>> = std::collections::BTreeMap::new();
    for r in ech.rows() {
        by_level.entry(&lv[r[0].0]).or_default().insert(r.clone());
    }
    for (l, group) in by_level {
        for r in group.into_reduced() {
            if r.iter().filter(|(c, _)| lv[*c] == *l).count() == 1 {
                return Some(cols.element(m.algebra(), &r));
            }
        }
    }
    None
}

/// Checks a claimed exclusion witness: unique `phi`-minimum and membership
/// in the ideal slice of the given side.
pub fn verify_exclusion<F: Field>(m: &CyclicModule<F>, phi: &[Rational], witness: &Element<F>, degree_bound: usize) -> bool {
    !witness.is_zero()
        && unique_minimum(witness, &clear_denominators(phi))
        && crate::module::in_ideal_slice(m, witness, degree_bound)
}

/// Product formula for tensor products of modules.
pub fn delta_tensor(d1: &DeltaApprox, d2: &DeltaApprox) -> DeltaApprox {
    let zero_module = d1.zero_module || d2.zero_module;
    let exact = d1.exact && d2.exact;
    if zero_module && exact {
        return DeltaApprox::zero(d1.ambient() + d2.ambient());
    }
    DeltaApprox { inner: d1.inner.product(&d2.inner), outer: d1.outer.product(&d2.outer), exact, zero_module }
}

/// Largest cone dimension; `None` for the empty fan.
pub fn fan_dimension(f: &Fan) -> Option<usize> {
    f.dimension()
}

/// Spans of the top-dimensional cones and their annihilator subgroups.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CarrierData {
    pub spaces: Vec<Subspace>,
    pub subgroups: Vec<Sublattice>,
}

impl fmt::Display for CarrierData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, c) in self.spaces.iter().zip(&self.subgroups) {
            writeln!(f, "space {:?} subgroup {:?}", v.basis(), c.basis())?;
        }
        Ok(())
    }
}

pub fn carrier_spaces(f: &Fan, m: usize) -> Result<CarrierData> {
    let dim = fan_dimension(f);
    if dim != Some(m) {
        return Err(Error::Precondition(format!("fan dimension is {dim:?}, not {m}")));
    }
    let n = f.ambient();
    let spaces: BTreeSet<IntMatrix> = f.cones().iter().filter(|c| c.dim() == m).map(|c| c.span()).collect();
    let spaces: Vec<Subspace> = spaces.into_iter().map(|b| Subspace::span(n, &b)).collect();
    let subgroups = spaces.iter().map(ann_subspace).collect();
    Ok(CarrierData { spaces, subgroups })
}

/// Outcome of the strongly holonomic probe.
#[derive(Clone, Debug)]
pub enum HolonomicVerdict<F: Field> {
    CertifiedFailure(HolonomicFailure<F>),
    ConsistentUpToBounds,
}

#[derive(Clone, Debug)]
pub enum HolonomicFailure<F: Field> {
    /// Exact GK dimension differs from half the rank.
    Dimension { gk: usize, half_rank: usize },
    /// A torsion witness over an isotropic sublattice.
    Torsion { sublattice: Sublattice, witness: Element<F> },
}

impl<F: Field> HolonomicVerdict<F> {
    pub fn is_failure(&self) -> bool {
        matches!(self, HolonomicVerdict::CertifiedFailure(_))
    }
}

/// Looks for a reason `M` is not strongly holonomic: an exact GK dimension
/// other than `n/2`, or torsion over an isotropic sublattice (all rank one
/// sublattices with entries bounded by `bounds.coeff`, plus one maximal
/// isotropic sublattice from the bounded search).
pub fn strongly_holonomic_check<F: Field>(m: &CyclicModule<F>, bounds: SearchBounds) -> Result<HolonomicVerdict<F>> {
    let p = m.algebra().presentation();
    let n = m.rank();
    if !p.is_simple() {
        return Err(Error::CenterNotTrivial);
    }
    if n % 2 == 1 {
        return Err(Error::OddRank(n));
    }
    let g = gk_dimension(m, bounds);
    if let Some(v) = g.value() {
        if v != n / 2 {
            return Ok(HolonomicVerdict::CertifiedFailure(HolonomicFailure::Dimension { gk: v, half_rank: n / 2 }));
        }
    } else if g.upper < n / 2 || g.lower > n / 2 {
        let gk = if g.upper < n / 2 { g.upper } else { g.lower };
        return Ok(HolonomicVerdict::CertifiedFailure(HolonomicFailure::Dimension { gk, half_rank: n / 2 }));
    }
    let mut candidates: Vec<Sublattice> = Vec::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        candidates.push(Sublattice::new(n, &[e]));
    }
    for v in primitive_vectors(n, bounds.coeff.max(1)) {
        // one of each +-v pair
        if v.iter().find(|x| **x != 0).is_some_and(|x| *x > 0) {
            candidates.push(Sublattice::new(n, &[v]));
        }
    }
    if let Some(b) = p.isotropic_search(n / 2, bounds.coeff.max(1)) {
        candidates.push(b);
    }
    let mut seen = BTreeSet::new();
    for b in candidates {
        if !seen.insert(b.basis().clone()) {
            continue;
        }
        if let Some(w) = torsion_witness(m, &b, bounds.degree) {
            return Ok(HolonomicVerdict::CertifiedFailure(HolonomicFailure::Torsion { sublattice: b, witness: w }));
        }
    }
    Ok(HolonomicVerdict::ConsistentUpToBounds)
}

/// Deterministic sample of primitive integer directions in `[-b, b]^n`.
pub fn sample_directions(n: usize, b: i64) -> Vec<Vec<i64>> {
    primitive_vectors(n, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Algebra;
    use crate::field::rat;
    use crate::pairing::Presentation;
    use std::sync::Arc;
    use proptest::prelude::*;

    fn alg(n: usize) -> Arc<Algebra<Rational>> {
        let mut m = vec![vec![0i64; n]; n];
        if n >= 2 {
            m[0][1] = -1;
            m[1][0] = 1;
        }
        Arc::new(Algebra::with_primes(Presentation::integer(&m).unwrap(), &[2]).unwrap())
    }

    fn principal(n: usize, s: &str) -> CyclicModule<Rational> {
        let a = alg(n);
        CyclicModule::principal(Element::parse(&a, s).unwrap()).unwrap()
    }

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    /// Brute force: `phi` is in the tropical fan iff the minimum over the
    /// support is attained twice.
    fn oracle(support: &[Vec<i64>], phi: &[i64]) -> bool {
        let support: BTreeSet<&Vec<i64>> = support.iter().collect();
        let mut l: Vec<i64> = support.iter().map(|e| e.iter().zip(phi).map(|(a, b)| a * b).sum()).collect();
        l.sort();
        l.len() >= 2 && l[0] == l[1] || phi.iter().all(|x| *x == 0)
    }

    #[test]
    fn line_and_tropical_line() {
        let d = delta_principal(&principal(2, "u1 + u2")).unwrap();
        assert!(d.exact);
        assert_eq!(d.outer.cones().len(), 1);
        assert!(d.outer.contains(&[3, 3]) && d.outer.contains(&[-1, -1]) && !d.outer.contains(&[1, 2]));
        assert_eq!(fan_dimension(&d.outer), Some(1));

        let d = delta_principal(&principal(2, "1 + u1 + u2")).unwrap();
        assert_eq!(d.outer.cones().len(), 3);
        for (p, inside) in [([0, 1], true), ([1, 0], true), ([-1, -1], true), ([1, 1], false), ([0, -1], false)] {
            assert_eq!(d.outer.contains(&p), inside, "{p:?}");
        }
        assert_eq!(fan_dimension(&d.outer), Some(1));
    }

    #[test]
    fn monomial_gives_zero_module() {
        let d = delta_principal(&principal(2, "3*u1^2")).unwrap();
        assert!(d.zero_module);
        assert_eq!(fan_dimension(&d.outer), Some(0));
    }

    #[test]
    fn certificates() {
        let m = principal(2, "u1 + u2");
        let w = exclude_certificate(&m, &q(&[1, 2]), 4).unwrap();
        assert_eq!(w, m.relations()[0]);
        assert!(exclude_certificate(&m, &q(&[1, 1]), 4).is_none());
        assert!(exclude_certificate(&CyclicModule::free(&alg(2)), &q(&[1, 0]), 4).is_none());
        assert!(verify_exclusion(&m, &q(&[1, 2]), &w, 0));
    }

    #[test]
    fn certificates_for_two_relations() {
        // u1 - 1 and u2 - 1 commute-free generate something with Delta = {0}
        let a = alg(2);
        let m = CyclicModule::new(&a, vec![Element::parse(&a, "u1 - 1").unwrap(), Element::parse(&a, "u2 - 1").unwrap()]).unwrap();
        let d = delta_cyclic(&m);
        assert!(!d.exact);
        assert_eq!(fan_dimension(&d.outer), Some(0));
        for phi in [[1, 0], [0, 1], [1, 1], [-1, 2]] {
            let w = exclude_certificate(&m, &q(&phi), 2).unwrap();
            assert!(verify_exclusion(&m, &q(&phi), &w, 2));
        }
    }

    #[test]
    fn agrees_with_search_in_plane() {
        for s in ["u1 + u2", "1 + u1 + u2", "1 + u1^2 + u2 + u1*u2", "u1^-1 + u2 + 2*u1*u2^-1"] {
            let m = principal(2, s);
            let d = delta_principal(&m).unwrap();
            for phi in sample_directions(2, 3) {
                let inside = d.outer.contains(&phi);
                let w = exclude_certificate(&m, &q(&phi), 2);
                assert_eq!(inside, w.is_none(), "{s} at {phi:?}");
                assert_eq!(inside, oracle(&m.relations()[0].support(), &phi));
            }
        }
    }

    #[test]
    fn tensor_examples() {
        let line = delta_principal(&principal(2, "u1 + u2")).unwrap();
        let point = DeltaApprox::exact(Fan::new(1, vec![Cone::zero(1)]));
        let t = delta_tensor(&line, &point);
        assert!(t.outer.contains(&[2, 2, 0]) && !t.outer.contains(&[2, 2, 1]));
        let full = |k| DeltaApprox::exact(Fan::new(k, vec![Cone::full(k)]));
        assert_eq!(fan_dimension(&delta_tensor(&full(2), &full(1)).outer), Some(3));
        let trop = delta_principal(&principal(2, "1 + u1 + u2")).unwrap();
        let t = delta_tensor(&trop, &trop);
        assert_eq!(t.outer.cones().len(), 9);
        assert_eq!(fan_dimension(&t.outer), Some(2));
    }

    #[test]
    fn block_split_matches_tensor() {
        let a = alg(4);
        let m = CyclicModule::new(
            &a,
            vec![Element::parse(&a, "1 + u1 + u2").unwrap(), Element::parse(&a, "u3^2 + u3^3 + u3^2*u4").unwrap()],
        )
        .unwrap();
        let d = delta_cyclic(&m);
        assert!(d.exact);
        let trop = delta_principal(&principal(2, "1 + u1 + u2")).unwrap();
        let t = delta_tensor(&trop, &DeltaApprox::exact(tropical_fan(2, &[vec![0, 0], vec![1, 0], vec![0, 1]])));
        for phi in sample_directions(4, 1) {
            assert_eq!(d.outer.contains(&phi), t.outer.contains(&phi), "{phi:?}");
        }
    }

    #[test]
    fn carrier_examples() {
        let trop = delta_principal(&principal(2, "1 + u1 + u2")).unwrap();
        let c = carrier_spaces(&trop.outer, 1).unwrap();
        let spaces: BTreeSet<IntMatrix> = c.spaces.iter().map(|s| s.basis().clone()).collect();
        assert_eq!(spaces, [vec![vec![0, 1]], vec![vec![1, 0]], vec![vec![1, 1]]].into_iter().collect());
        let groups: BTreeSet<IntMatrix> = c.subgroups.iter().map(|s| s.basis().clone()).collect();
        assert_eq!(groups, [vec![vec![1, 0]], vec![vec![0, 1]], vec![vec![1, -1]]].into_iter().collect());
        let line = delta_principal(&principal(2, "u1 + u2")).unwrap();
        let c = carrier_spaces(&line.outer, 1).unwrap();
        assert_eq!(c.subgroups.len(), 1);
        assert_eq!(c.subgroups[0].basis(), &vec![vec![1, -1]]);
        let full = Fan::new(2, vec![Cone::full(2)]);
        assert_eq!(carrier_spaces(&full, 2).unwrap().spaces.len(), 1);
        assert!(carrier_spaces(&full, 1).is_err());
    }

    #[test]
    fn holonomic_examples() {
        let b = SearchBounds { degree: 3, coeff: 1 };
        let v = strongly_holonomic_check(&principal(2, "u1 + u2 - 1"), b).unwrap();
        assert!(!v.is_failure());
        let v = strongly_holonomic_check(&principal(2, "u1 - 1"), b).unwrap();
        assert!(matches!(v, HolonomicVerdict::CertifiedFailure(HolonomicFailure::Torsion { .. })));
        let a = alg(2);
        let zero = CyclicModule::new(&a, vec![Element::parse(&a, "u1 - 1").unwrap(), Element::parse(&a, "u1 - 2").unwrap()]).unwrap();
        let v = strongly_holonomic_check(&zero, b).unwrap();
        assert!(matches!(v, HolonomicVerdict::CertifiedFailure(HolonomicFailure::Dimension { gk: 0, .. })));
        assert!(matches!(strongly_holonomic_check(&principal(3, "u1 - 1"), b), Err(Error::CenterNotTrivial)));
    }

    fn support_strategy(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-2i64..=2, n), 2..=5)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn fan_matches_oracle(sup in support_strategy(3), phi in prop::collection::vec(-3i64..=3, 3)) {
            let f = tropical_fan(3, &sup);
            let distinct: BTreeSet<_> = sup.iter().collect();
            prop_assume!(distinct.len() >= 2);
            prop_assert_eq!(f.contains(&phi), oracle(&sup, &phi));
        }

        #[test]
        fn shift_invariant(sup in support_strategy(2), shift in prop::collection::vec(-3i64..=3, 2)) {
            let shifted: Vec<Vec<i64>> = sup.iter().map(|e| e.iter().zip(&shift).map(|(a, b)| a + b).collect()).collect();
            prop_assert_eq!(tropical_fan(2, &sup), tropical_fan(2, &shifted));
        }

        #[test]
        fn scaling_closed(sup in support_strategy(3), phi in prop::collection::vec(-3i64..=3, 3), t in 1i64..5) {
            let f = tropical_fan(3, &sup);
            let scaled: Vec<i64> = phi.iter().map(|x| x * t).collect();
            prop_assert_eq!(f.contains(&phi), f.contains(&scaled));
            prop_assert!(f.contains(&[0, 0, 0]));
        }
    }
}
