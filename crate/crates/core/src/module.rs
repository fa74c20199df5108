//! Module presentations over a quantum torus, bounded certificate searches
//! and GK dimension brackets.
//!
//! A cyclic module is `F*A / J` with `J = sum alpha_i F*A` a right ideal. All
//! searches look at the finite-dimensional slice of `J` spanned by
//! `alpha_i u^m` with `m` in a centered box, so "none found" only ever means
//! "none found at this bound".

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cone::Fan;
use crate::delta::{self, DeltaApprox};
use crate::element::{Algebra, Element};
use crate::error::{Error, Result};
use crate::field::{clear_denominators, Field, Rational};
use crate::lattice::Sublattice;
use crate::linalg::{Echelon, SparseRow};

/// `F*A / (alpha_1, ..., alpha_r)` as a right module.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CyclicModule<F: Field> {
    alg: Arc<Algebra<F>>,
    relations: Vec<Element<F>>,
}

impl<F: Field> CyclicModule<F> {
    pub fn new(alg: &Arc<Algebra<F>>, relations: Vec<Element<F>>) -> Result<Self> {
        for r in &relations {
            if r.is_zero() {
                return Err(Error::ZeroInput);
            }
            if r.algebra() != alg {
                return Err(Error::AlgebraMismatch);
            }
        }
        Ok(Self { alg: alg.clone(), relations })
    }

    pub fn free(alg: &Arc<Algebra<F>>) -> Self {
        Self { alg: alg.clone(), relations: Vec::new() }
    }

    pub fn principal(alpha: Element<F>) -> Result<Self> {
        let alg = alpha.algebra().clone();
        Self::new(&alg, vec![alpha])
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.alg
    }

    pub fn relations(&self) -> &[Element<F>] {
        &self.relations
    }

    pub fn rank(&self) -> usize {
        self.alg.rank()
    }

    pub fn is_principal(&self) -> bool {
        self.relations.len() == 1
    }

    /// Relations multiplied on the right by `u^m` (same module up to
    /// isomorphism of the ideal).
    pub fn shifted(&self, m: &[i64]) -> Self {
        Self { alg: self.alg.clone(), relations: self.relations.iter().map(|r| r.mul_monomial_right(m)).collect() }
    }
}

/// Exponents with entries in `[-floor(d/2), d - floor(d/2)]`, so side `d + 1`
/// points per axis and nested in `d`.
pub fn centered_box(n: usize, d: usize) -> Vec<Vec<i64>> {
    let lo = -((d / 2) as i64);
    let side = d + 1;
    let total = side.checked_pow(n as u32).expect("box too large");
    (0..total)
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let v = lo + (c % side) as i64;
                    c /= side;
                    v
                })
                .collect()
        })
        .collect()
}

/// The spanning set `alpha_i u^m`, `m` in the box of side `d`.
pub(crate) fn ideal_slice<F: Field>(m: &CyclicModule<F>, d: usize) -> Vec<Element<F>> {
    let shifts = centered_box(m.rank(), d);
    let mut out = Vec::with_capacity(shifts.len() * m.relations.len());
    for a in &m.relations {
        for s in &shifts {
            out.push(a.mul_monomial_right(s));
        }
    }
    out
}

/// Column numbering of monomials by a caller-supplied sort key.
pub(crate) struct Columns {
    pub monomials: Vec<Vec<i64>>,
    index: BTreeMap<Vec<i64>, usize>,
}

impl Columns {
    pub fn by_key<F: Field, K: Ord>(elems: &[Element<F>], key: impl Fn(&Vec<i64>) -> K) -> Self {
        let set: BTreeSet<&Vec<i64>> = elems.iter().flat_map(|e| e.terms().keys()).collect();
        let mut monomials: Vec<Vec<i64>> = set.into_iter().cloned().collect();
        monomials.sort_by_cached_key(|m| (key(m), m.clone()));
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Self { monomials, index }
    }

    pub fn row<F: Field>(&self, e: &Element<F>) -> SparseRow<F> {
        let mut r: SparseRow<F> = e.terms().iter().map(|(m, c)| (self.index[m], c.clone())).collect();
        r.sort_by_key(|x| x.0);
        r
    }

    pub fn element<F: Field>(&self, alg: &Arc<Algebra<F>>, r: &SparseRow<F>) -> Element<F> {
        Element::from_terms(alg, r.iter().map(|(c, v)| (self.monomials[*c].clone(), v.clone())))
    }
}

pub(crate) fn level(phi: &[BigInt], m: &[i64]) -> BigInt {
    phi.iter().zip(m).map(|(p, &x)| p * BigInt::from(x)).sum()
}

/// A nonzero element of `J` supported in `B`, found by searching boxes of
/// side `0..=degree_bound`. A witness shows the generator is `F*B`-torsion.
pub fn torsion_witness<F: Field>(m: &CyclicModule<F>, b: &Sublattice, degree_bound: usize) -> Option<Element<F>> {
    if m.relations.is_empty() {
        return None;
    }
    (0..=degree_bound).find_map(|d| torsion_witness_at(m, b, d))
}

fn torsion_witness_at<F: Field>(m: &CyclicModule<F>, b: &Sublattice, d: usize) -> Option<Element<F>> {
    let rows = ideal_slice(m, d);
    let cols = Columns::by_key(&rows, |e| b.contains(e));
    let inside: Vec<bool> = cols.monomials.iter().map(|e| b.contains(e)).collect();
    let mut ech = Echelon::new();
    for r in &rows {
        if let Some(i) = ech.insert(cols.row(r)) {
            let row = &ech.rows()[i];
            if inside[row[0].0] {
                return Some(cols.element(&m.alg, row));
            }
        }
    }
    None
}

/// Whether `beta` lies in the slice of `J` at box side `d`.
pub fn in_ideal_slice<F: Field>(m: &CyclicModule<F>, beta: &Element<F>, d: usize) -> bool {
    if beta.is_zero() {
        return true;
    }
    let mut rows = ideal_slice(m, d);
    let n_rel = rows.len();
    rows.push(beta.clone());
    let cols = Columns::by_key(&rows, |_| ());
    let mut ech = Echelon::new();
    for r in &rows[..n_rel] {
        ech.insert(cols.row(r));
    }
    ech.contains(cols.row(beta))
}

/// Whether some monomial (hence everything) lies in the slice of `J`.
pub fn contains_monomial<F: Field>(m: &CyclicModule<F>, d: usize) -> Option<Element<F>> {
    if m.relations.is_empty() {
        return None;
    }
    if let Some(a) = m.relations.iter().find(|a| a.num_terms() == 1) {
        return Some(a.clone());
    }
    let rows = ideal_slice(m, d);
    let cols = Columns::by_key(&rows, |_| ());
    let mut ech = Echelon::new();
    for r in &rows {
        ech.insert(cols.row(r));
    }
    ech.into_reduced().into_iter().find(|r| r.len() == 1).map(|r| cols.element(&m.alg, &r))
}

/// How a GK value was obtained.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GkRoute {
    Free,
    Zero,
    Principal,
    /// Relations split along commuting coordinate blocks; product of fans.
    Tensor,
    /// Block-diagonal finitely generated module; union of fans.
    DirectSum,
    /// Outer fan bound above, torsion search evidence below.
    Bracket,
}

impl fmt::Display for GkRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GkRoute::Free => "free",
            GkRoute::Zero => "zero-module",
            GkRoute::Principal => "principal-delta",
            GkRoute::Tensor => "tensor-delta",
            GkRoute::DirectSum => "direct-sum-delta",
            GkRoute::Bracket => "bracket",
        };
        f.write_str(s)
    }
}

/// Certified interval for the GK dimension.
#[derive(Clone, Debug)]
pub struct GkResult<F: Field> {
    pub lower: usize,
    pub upper: usize,
    /// Set only for the structural routes, where the value is proved.
    pub exact: bool,
    pub route: GkRoute,
    /// Sublattice of rank `lower` over which no torsion witness was found.
    pub lower_evidence: Option<Sublattice>,
    /// Witnesses found at each rank above `lower`, one per tested sublattice.
    pub torsion_witnesses: Vec<(Sublattice, Element<F>)>,
    /// Fan whose dimension bounds the GK dimension above.
    pub upper_fan: Option<Fan>,
    /// Monomial found in the ideal when the module is zero.
    pub zero_witness: Option<Element<F>>,
}

impl<F: Field> GkResult<F> {
    fn exact(v: usize, route: GkRoute) -> Self {
        Self {
            lower: v,
            upper: v,
            exact: true,
            route,
            lower_evidence: None,
            torsion_witnesses: Vec::new(),
            upper_fan: None,
            zero_witness: None,
        }
    }

    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.lower)
    }
}

/// Bounds for the bounded searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchBounds {
    /// Box side for cofactor supports.
    pub degree: usize,
    /// Entry bound for sublattice and isotropic searches.
    pub coeff: i64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self { degree: 2, coeff: 1 }
    }
}

/// GK dimension of a cyclic module.
pub fn gk_dimension<F: Field>(m: &CyclicModule<F>, bounds: SearchBounds) -> GkResult<F> {
    let n = m.rank();
    if m.relations.is_empty() {
        return GkResult::exact(n, GkRoute::Free);
    }
    if let Some(w) = contains_monomial(m, bounds.degree) {
        let mut r = GkResult::exact(0, GkRoute::Zero);
        r.zero_witness = Some(w);
        return r;
    }
    let d = delta::delta_cyclic(m);
    if d.exact {
        let dim = d.outer.dimension().unwrap_or(0);
        let route = if m.is_principal() { GkRoute::Principal } else { GkRoute::Tensor };
        let mut r = GkResult::exact(dim, route);
        r.upper_fan = Some(d.outer);
        return r;
    }
    bracket(m, &d, bounds)
}

fn bracket<F: Field>(m: &CyclicModule<F>, d: &DeltaApprox, bounds: SearchBounds) -> GkResult<F> {
    let n = m.rank();
    let upper = d.outer.dimension().unwrap_or(0);
    let mut witnesses = Vec::new();
    let mut lower = 0;
    let mut evidence = Some(Sublattice::zero(n));
    for r in (1..=upper).rev() {
        let mut free_over = None;
        for b in test_sublattices(n, r) {
            match torsion_witness(m, &b, bounds.degree) {
                Some(w) => witnesses.push((b, w)),
                None => {
                    free_over = Some(b);
                    break;
                }
            }
        }
        if let Some(b) = free_over {
            lower = r;
            evidence = Some(b);
            break;
        }
    }
    GkResult {
        lower,
        upper,
        exact: false,
        route: GkRoute::Bracket,
        lower_evidence: evidence,
        torsion_witnesses: witnesses,
        upper_fan: Some(d.outer.clone()),
        zero_witness: None,
    }
}

/// Coordinate sublattices of rank `r` and their images under elementary
/// unimodular matrices `I + k E_ij` with `k` in `{-2, -1, 1, 2}`.
pub fn test_sublattices(n: usize, r: usize) -> Vec<Sublattice> {
    let mut out: Vec<Sublattice> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push = |l: Sublattice, out: &mut Vec<Sublattice>| {
        if seen.insert(l.basis().clone()) {
            out.push(l);
        }
    };
    let subsets = k_subsets(n, r);
    for s in &subsets {
        push(Sublattice::coordinate(n, s), &mut out);
    }
    for s in &subsets {
        let base = Sublattice::coordinate(n, s);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for k in [-2i64, -1, 1, 2] {
                    let mut t: Vec<Vec<i64>> = (0..n).map(|a| (0..n).map(|b| i64::from(a == b)).collect()).collect();
                    t[i][j] = k;
                    push(base.transform(&t), &mut out);
                }
            }
        }
    }
    out
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// A finitely generated module `F*A^g / (rows)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FgModule<F: Field> {
    alg: Arc<Algebra<F>>,
    generators: usize,
    rows: Vec<Vec<Element<F>>>,
}

impl<F: Field> FgModule<F> {
    pub fn new(alg: &Arc<Algebra<F>>, generators: usize, rows: Vec<Vec<Element<F>>>) -> Result<Self> {
        for r in &rows {
            if r.len() != generators {
                return Err(Error::DimensionMismatch { expected: generators, got: r.len() });
            }
            if r.iter().all(Element::is_zero) {
                return Err(Error::ZeroInput);
            }
        }
        Ok(Self { alg: alg.clone(), generators, rows })
    }

    pub fn from_cyclic(m: &CyclicModule<F>) -> Self {
        Self { alg: m.alg.clone(), generators: 1, rows: m.relations.iter().map(|r| vec![r.clone()]).collect() }
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &FgModule<F>) -> Result<Self> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch);
        }
        let g = self.generators + other.generators;
        let zero = Element::zero(&self.alg);
        let mut rows = Vec::new();
        for r in &self.rows {
            let mut row = r.clone();
            row.resize(g, zero.clone());
            rows.push(row);
        }
        for r in &other.rows {
            let mut row = vec![zero.clone(); self.generators];
            row.extend(r.iter().cloned());
            rows.push(row);
        }
        Ok(Self { alg: self.alg.clone(), generators: g, rows })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn rows(&self) -> &[Vec<Element<F>>] {
        &self.rows
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.alg
    }

    /// Cyclic summands when every relation involves a single generator.
    pub fn cyclic_summands(&self) -> Option<Vec<CyclicModule<F>>> {
        let mut per: Vec<Vec<Element<F>>> = vec![Vec::new(); self.generators];
        for r in &self.rows {
            let nz: Vec<usize> = (0..self.generators).filter(|&i| !r[i].is_zero()).collect();
            if nz.len() != 1 {
                return None;
            }
            per[nz[0]].push(r[nz[0]].clone());
        }
        Some(per.into_iter().map(|rels| CyclicModule { alg: self.alg.clone(), relations: rels }).collect())
    }
}

/// GK dimension of a finitely generated module. Direct sums of cyclic
/// modules use `gk(M1 + M2) = max`; other shapes get the trivial bracket.
pub fn gk_dimension_fg<F: Field>(m: &FgModule<F>, bounds: SearchBounds) -> GkResult<F> {
    let n = m.alg.rank();
    let Some(parts) = m.cyclic_summands() else {
        return GkResult {
            lower: 0,
            upper: n,
            exact: false,
            route: GkRoute::Bracket,
            lower_evidence: None,
            torsion_witnesses: Vec::new(),
            upper_fan: None,
            zero_witness: None,
        };
    };
    if parts.is_empty() {
        return GkResult::exact(0, GkRoute::Zero);
    }
    let results: Vec<GkResult<F>> = parts.iter().map(|p| gk_dimension(p, bounds)).collect();
    let lower = results.iter().map(|r| r.lower).max().unwrap();
    let upper = results.iter().map(|r| r.upper).max().unwrap();
    let exact = results.iter().all(|r| r.exact);
    let all_zero = results.iter().all(|r| r.route == GkRoute::Zero);
    let fan = results.iter().filter_map(|r| r.upper_fan.clone()).reduce(|a, b| a.union(&b));
    GkResult {
        lower,
        upper,
        exact,
        route: if all_zero { GkRoute::Zero } else if exact { GkRoute::DirectSum } else { GkRoute::Bracket },
        lower_evidence: None,
        torsion_witnesses: Vec::new(),
        upper_fan: fan,
        zero_witness: None,
    }
}

/// Checks `gk(M1 + M2) = max(gk(M1), gk(M2))` on the direct sum.
pub fn dim_exactness_check<F: Field>(m1: &CyclicModule<F>, m2: &CyclicModule<F>, bounds: SearchBounds) -> Result<bool> {
    let g1 = gk_dimension(m1, bounds);
    let g2 = gk_dimension(m2, bounds);
    let (Some(a), Some(b)) = (g1.value(), g2.value()) else {
        return Err(Error::NonExact);
    };
    let sum = FgModule::from_cyclic(m1).direct_sum(&FgModule::from_cyclic(m2))?;
    let g = gk_dimension_fg(&sum, bounds);
    Ok(g.value() == Some(a.max(b)))
}

/// `M1 (x) M2` over the tensor product algebra, as a cyclic module.
pub fn tensor_module<F: Field>(m1: &CyclicModule<F>, m2: &CyclicModule<F>) -> Result<CyclicModule<F>> {
    let alg = Arc::new(m1.alg.tensor(&m2.alg)?);
    let n1 = m1.rank();
    let mut rels: Vec<Element<F>> = m1.relations.iter().map(|r| r.embed(&alg, 0)).collect();
    rels.extend(m2.relations.iter().map(|r| r.embed(&alg, n1)));
    CyclicModule::new(&alg, rels)
}

/// Window test for a nontrivial `phi`-filtration
/// `L_mu = span{ e_i u^m : w_i + phi(m) >= mu }` of an f.g. module.
///
/// Conditions (C1)-(C3) are checked on the window directly. Properness is
/// probed by asking whether `L_0` plus the relations inside the window is
/// still a proper subspace. `true` is evidence, not proof.
pub fn filtration_verify<F: Field>(m: &FgModule<F>, phi: &[Rational], weights: &[Rational], window: i64) -> Result<bool> {
    let n = m.alg.rank();
    if phi.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: phi.len() });
    }
    if weights.len() != m.generators {
        return Err(Error::DimensionMismatch { expected: m.generators, got: weights.len() });
    }
    if window < 0 {
        return Err(Error::EmptyWindow);
    }
    if phi.iter().all(num_traits::Zero::is_zero) {
        return Ok(true);
    }
    let side = (2 * window) as usize;
    let pts: Vec<Vec<i64>> = centered_box(n, side);
    let inside = |e: &[i64]| e.iter().all(|x| x.abs() <= window);
    let g = m.generators;
    // column (generator, exponent)
    let mut index: BTreeMap<(usize, Vec<i64>), usize> = BTreeMap::new();
    for i in 0..g {
        for p in &pts {
            let k = index.len();
            index.insert((i, p.clone()), k);
        }
    }
    // one common positive scale makes every level an integer
    let all: Vec<Rational> = phi.iter().chain(weights).cloned().collect();
    let ints = clear_denominators(&all);
    let (phi_z, w_z) = ints.split_at(n);
    let lvl = |i: usize, e: &[i64]| -> BigInt { &w_z[i] + level(phi_z, e) };
    // relation rows restricted to the window
    let mut rel_rows: Vec<SparseRow<F>> = Vec::new();
    for row in &m.rows {
        for s in &pts {
            let mut acc: BTreeMap<usize, F> = BTreeMap::new();
            let mut ok = true;
            for (i, x) in row.iter().enumerate() {
                for (e, c) in x.mul_monomial_right(s).terms() {
                    if !inside(e) {
                        ok = false;
                        break;
                    }
                    let col = index[&(i, e.clone())];
                    let v = acc.remove(&col).map_or_else(|| c.clone(), |old| old + c.clone());
                    if !v.is_zero() {
                        acc.insert(col, v);
                    }
                }
                if !ok {
                    break;
                }
            }
            if ok && !acc.is_empty() {
                rel_rows.push(acc.into_iter().collect());
            }
        }
    }
    let total = index.len();
    // (C1): L_mu shrinks as mu grows, by construction of the spanning sets
    let levels: BTreeSet<BigInt> = index.keys().map(|(i, e)| lvl(*i, e)).collect();
    let members = |mu: &BigInt| -> BTreeSet<usize> {
        index.iter().filter(|((i, e), _)| lvl(*i, e) >= *mu).map(|(_, &c)| c).collect()
    };
    let lv: Vec<&BigInt> = levels.iter().collect();
    for w in lv.windows(2) {
        if !members(w[1]).is_subset(&members(w[0])) {
            return Ok(false);
        }
    }
    // (C2): the lowest level is everything
    if members(lv[0]).len() != total {
        return Ok(false);
    }
    // (C3): shifting by a generator moves levels by phi(e_k), inside the window
    for k in 0..n {
        let mut unit = vec![0i64; n];
        unit[k] = 1;
        for ((i, e), _) in index.iter() {
            let moved: Vec<i64> = e.iter().zip(&unit).map(|(a, b)| a + b).collect();
            if inside(&moved) {
                if lvl(*i, &moved) - lvl(*i, e) != phi_z[k] {
                    return Ok(false);
                }
            }
        }
    }
    // (C4): L_0 + relations is proper
    let zero = BigInt::zero();
    let mut ech: Echelon<F> = Echelon::new();
    for r in rel_rows {
        ech.insert(r);
    }
    for c in members(&zero) {
        ech.insert(vec![(c, F::one())]);
    }
    Ok(ech.rank() < total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::pairing::Presentation;

    fn alg() -> Arc<Algebra<Rational>> {
        let p = Presentation::integer(&[vec![0, -1], vec![1, 0]]).unwrap();
        Arc::new(Algebra::with_primes(p, &[2]).unwrap())
    }

    fn el(a: &Arc<Algebra<Rational>>, s: &str) -> Element<Rational> {
        Element::parse(a, s).unwrap()
    }

    #[test]
    fn box_semantics() {
        assert_eq!(centered_box(1, 0), vec![vec![0]]);
        assert_eq!(centered_box(1, 1), vec![vec![0], vec![1]]);
        assert_eq!(centered_box(1, 4), vec![vec![-2], vec![-1], vec![0], vec![1], vec![2]]);
        assert_eq!(centered_box(2, 2).len(), 9);
    }

    #[test]
    fn torsion_examples() {
        let a = alg();
        let m = CyclicModule::principal(el(&a, "u1 - 1")).unwrap();
        let w = torsion_witness(&m, &Sublattice::coordinate(2, &[0]), 2).unwrap();
        assert_eq!(w.support(), vec![vec![0, 0], vec![1, 0]]);
        assert!(in_ideal_slice(&m, &w, 2));
        assert!(torsion_witness(&CyclicModule::free(&a), &Sublattice::coordinate(2, &[0]), 3).is_none());
        let line = CyclicModule::principal(el(&a, "1 + u1 + u2")).unwrap();
        assert!(torsion_witness(&line, &Sublattice::coordinate(2, &[0]), 3).is_none());
    }

    #[test]
    fn gk_examples() {
        let p3 = Presentation::from_upper(
            3,
            crate::pairing::ScalarGroup::cyclic(),
            &[(0, 1, crate::pairing::ScalarValue { free: vec![1], torsion: 0 })],
        )
        .unwrap();
        let a3 = Arc::new(Algebra::with_primes(p3, &[2]).unwrap());
        let g = gk_dimension(&CyclicModule::free(&a3), SearchBounds::default());
        assert_eq!((g.value(), g.route), (Some(3), GkRoute::Free));

        let c1 = Arc::new(Algebra::with_primes(Presentation::trivial(1, crate::pairing::ScalarGroup::cyclic()), &[2]).unwrap());
        let g = gk_dimension(&CyclicModule::principal(Element::parse(&c1, "u1 - 1").unwrap()).unwrap(), SearchBounds::default());
        assert_eq!(g.value(), Some(0));

        let a = alg();
        let g = gk_dimension(&CyclicModule::principal(el(&a, "1 + u1 + u2")).unwrap(), SearchBounds::default());
        assert_eq!((g.value(), g.route), (Some(1), GkRoute::Principal));

        let g = gk_dimension(&CyclicModule::principal(el(&a, "3*u1*u2^-1")).unwrap(), SearchBounds::default());
        assert_eq!((g.value(), g.route), (Some(0), GkRoute::Zero));
    }

    #[test]
    fn zero_module_from_two_relations() {
        // u1 - 1 and u1 - 2 together contain the unit 1
        let a = alg();
        let m = CyclicModule::new(&a, vec![el(&a, "u1 - 1"), el(&a, "u1 - 2")]).unwrap();
        let g = gk_dimension(&m, SearchBounds::default());
        assert_eq!((g.value(), g.route), (Some(0), GkRoute::Zero));
    }

    #[test]
    fn bracket_for_entangled_relations() {
        let a = alg();
        let m = CyclicModule::new(&a, vec![el(&a, "1 + u1 + u2"), el(&a, "1 + 2*u1 + 3*u2")]).unwrap();
        let g = gk_dimension(&m, SearchBounds { degree: 0, coeff: 1 });
        assert!(!g.exact);
        assert!(g.lower <= g.upper && g.upper <= 1);
    }

    #[test]
    fn direct_sums() {
        let a = alg();
        let m1 = CyclicModule::principal(el(&a, "u1 + u2")).unwrap();
        let m2 = CyclicModule::principal(el(&a, "1 + u1 + u2")).unwrap();
        assert!(dim_exactness_check(&m1, &m2, SearchBounds::default()).unwrap());
        let zero = CyclicModule::principal(el(&a, "u1")).unwrap();
        assert!(dim_exactness_check(&m1, &zero, SearchBounds::default()).unwrap());

        let c1 = Arc::new(Algebra::with_primes(Presentation::trivial(1, crate::pairing::ScalarGroup::cyclic()), &[2]).unwrap());
        let free = CyclicModule::free(&c1);
        let fin = CyclicModule::principal(Element::parse(&c1, "u1 - 1").unwrap()).unwrap();
        assert!(dim_exactness_check(&free, &fin, SearchBounds::default()).unwrap());
        let sum = FgModule::from_cyclic(&free).direct_sum(&FgModule::from_cyclic(&fin)).unwrap();
        assert_eq!(gk_dimension_fg(&sum, SearchBounds::default()).value(), Some(1));
    }

    #[test]
    fn tensor_of_modules() {
        let a = alg();
        let m1 = CyclicModule::principal(el(&a, "1 + u1 + u2")).unwrap();
        let t = tensor_module(&m1, &m1).unwrap();
        assert_eq!(t.rank(), 4);
        assert_eq!(t.relations().len(), 2);
        assert_eq!(t.relations()[1].to_text(), "1 + u4 + u3");
        let g = gk_dimension(&t, SearchBounds::default());
        assert_eq!((g.value(), g.route), (Some(2), GkRoute::Tensor));
        let free = CyclicModule::free(&a);
        let t = tensor_module(&m1, &free).unwrap();
        assert_eq!(t.relations().len(), 1);
        assert_eq!(gk_dimension(&t, SearchBounds::default()).value(), Some(3));
    }

    #[test]
    fn shift_invariance() {
        let a = alg();
        let m = CyclicModule::principal(el(&a, "1 + u1 + u2")).unwrap();
        let s = m.shifted(&[2, -1]);
        assert_eq!(gk_dimension(&s, SearchBounds::default()).value(), Some(1));
        assert!(torsion_witness(&s, &Sublattice::coordinate(2, &[0]), 2).is_none());
    }

    #[test]
    fn filtration_examples() {
        let a = alg();
        let free = FgModule::new(&a, 1, vec![]).unwrap();
        assert!(filtration_verify(&free, &[rat(1), rat(2)], &[rat(0)], 2).unwrap());
        let m = FgModule::from_cyclic(&CyclicModule::principal(el(&a, "u1 - 1")).unwrap());
        assert!(!filtration_verify(&m, &[rat(1), rat(0)], &[rat(0)], 2).unwrap());
        assert!(filtration_verify(&m, &[rat(0), rat(0)], &[rat(0)], 2).unwrap());
        assert!(filtration_verify(&m, &[rat(0), rat(1)], &[rat(0)], 2).unwrap());
        assert!(matches!(filtration_verify(&m, &[rat(1), rat(0)], &[rat(0)], -1), Err(Error::EmptyWindow)));
    }
}
