//! Skew Laurent polynomials `D[u, u^-1; sigma]` with `u c = sigma(c) u` and
//! `sigma(x_i) = lambda_i x_i`, division, gcds, and the companion-matrix
//! module of a polynomial with unit extreme coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::{Algebra, Element};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::lattice::Sublattice;
use crate::laurent::LaurentPoly;
use crate::linalg::{integer_row, IntEchelon, SparseRow};
use crate::module::{centered_box, CyclicModule};
use crate::pairing::{Presentation, ScalarGroup, ScalarValue};
use crate::ratfunc::RatFunc;

/// Coefficient domains for skew polynomials.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_in(nvars: usize) -> Self;
    fn one_in(nvars: usize) -> Self;
    fn is_nil(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    /// `sigma^k`.
    fn sigma(&self, lambda: &[Rational], k: i64) -> Self;
    /// Inverse in the coefficient ring, if it exists.
    fn inverse(&self) -> Option<Self>;
    fn parse_in(nvars: usize, s: &str) -> Result<Self>;
}

impl Coeff for LaurentPoly {
    fn zero_in(nvars: usize) -> Self {
        LaurentPoly::zero(nvars)
    }
    fn one_in(nvars: usize) -> Self {
        LaurentPoly::one(nvars)
    }
    fn is_nil(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn sigma(&self, lambda: &[Rational], k: i64) -> Self {
        LaurentPoly::sigma(self, lambda, k)
    }
    fn inverse(&self) -> Option<Self> {
        self.unit_inverse()
    }
    fn parse_in(nvars: usize, s: &str) -> Result<Self> {
        LaurentPoly::parse(nvars, s)
    }
}

impl Coeff for RatFunc {
    fn zero_in(_: usize) -> Self {
        <RatFunc as Field>::zero()
    }
    fn one_in(_: usize) -> Self {
        <RatFunc as Field>::one()
    }
    fn is_nil(&self) -> bool {
        Field::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn minus(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn times(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn sigma(&self, lambda: &[Rational], k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        let s: Vec<Rational> = lambda.iter().map(|l| Field::pow(l, k)).collect();
        self.scale_vars(&s)
    }
    fn inverse(&self) -> Option<Self> {
        (!Field::is_zero(self)).then(|| self.inv())
    }
    fn parse_in(_: usize, s: &str) -> Result<Self> {
        <RatFunc as Field>::parse(s).map_err(|e| Error::parse(0, e))
    }
}

/// `sum_i c_i u^i` over a coefficient domain in `nvars` variables.
#[derive(Clone, PartialEq)]
pub struct SkewPoly<C: Coeff> {
    nvars: usize,
    lambda: Vec<Rational>,
    coeffs: BTreeMap<i64, C>,
}

impl<C: Coeff> SkewPoly<C> {
    pub fn zero(lambda: &[Rational]) -> Self {
        assert!(lambda.iter().all(|l| !l.is_zero()), "sigma must be invertible");
        Self { nvars: lambda.len(), lambda: lambda.to_vec(), coeffs: BTreeMap::new() }
    }

    pub fn one(lambda: &[Rational]) -> Self {
        Self::term(lambda, C::one_in(lambda.len()), 0)
    }

    /// `c u^i`.
    pub fn term(lambda: &[Rational], c: C, i: i64) -> Self {
        let mut p = Self::zero(lambda);
        if !c.is_nil() {
            p.coeffs.insert(i, c);
        }
        p
    }

    /// `u^i`.
    pub fn u_pow(lambda: &[Rational], i: i64) -> Self {
        Self::term(lambda, C::one_in(lambda.len()), i)
    }

    pub fn from_coeffs(lambda: &[Rational], coeffs: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero(lambda);
        for (i, c) in coeffs {
            p.add_term(i, c);
        }
        p
    }

    fn add_term(&mut self, i: i64, c: C) {
        if c.is_nil() {
            return;
        }
        let v = match self.coeffs.remove(&i) {
            Some(old) => old.plus(&c),
            None => c,
        };
        if !v.is_nil() {
            self.coeffs.insert(i, v);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, C> {
        &self.coeffs
    }

    pub fn coeff(&self, i: i64) -> C {
        self.coeffs.get(&i).cloned().unwrap_or_else(|| C::zero_in(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn high(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `high - low`, the degree after moving the lowest index to 0.
    pub fn degree(&self) -> Option<i64> {
        Some(self.high()? - self.low()?)
    }

    pub fn lead(&self) -> Option<&C> {
        self.coeffs.values().next_back()
    }

    pub fn trail(&self) -> Option<&C> {
        self.coeffs.values().next()
    }

    fn same_ring(&self, o: &Self) -> Result<()> {
        if self.lambda != o.lambda {
            return Err(Error::AutomorphismMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.same_ring(o)?;
        let mut r = self.clone();
        for (i, c) in &o.coeffs {
            r.add_term(*i, c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        let z = C::zero_in(self.nvars);
        Self { nvars: self.nvars, lambda: self.lambda.clone(), coeffs: self.coeffs.iter().map(|(i, c)| (*i, z.minus(c))).collect() }
    }

    /// `(a u^i)(b u^j) = a sigma^i(b) u^(i+j)`.
    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.same_ring(o)?;
        let mut r = Self::zero(&self.lambda);
        for (i, a) in &self.coeffs {
            for (j, b) in &o.coeffs {
                r.add_term(i + j, a.times(&b.sigma(&self.lambda, *i)));
            }
        }
        Ok(r)
    }

    /// `u^k f`.
    pub fn shift_left(&self, k: i64) -> Self {
        Self {
            nvars: self.nvars,
            lambda: self.lambda.clone(),
            coeffs: self.coeffs.iter().map(|(i, c)| (i + k, c.sigma(&self.lambda, k))).collect(),
        }
    }

    /// `f u^k`.
    pub fn shift_right(&self, k: i64) -> Self {
        Self { nvars: self.nvars, lambda: self.lambda.clone(), coeffs: self.coeffs.iter().map(|(i, c)| (i + k, c.clone())).collect() }
    }

    /// `c f`.
    pub fn scale_left(&self, c: &C) -> Self {
        Self::from_coeffs(&self.lambda, self.coeffs.iter().map(|(i, a)| (*i, c.times(a))))
    }

    /// `f c`.
    pub fn scale_right(&self, c: &C) -> Self {
        Self::from_coeffs(&self.lambda, self.coeffs.iter().map(|(i, a)| (*i, a.times(&c.sigma(&self.lambda, *i)))))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> SkewPoly<D> {
        SkewPoly::from_coeffs(&self.lambda, self.coeffs.iter().map(|(i, c)| (*i, f(c))))
    }

    /// Parses sums of products of coefficients and powers of `u`, e.g.
    /// `u^2 + (1 + x)*u - x^3`. Factors multiply left to right in the skew
    /// ring, so `x*u` and `u*x` differ.
    pub fn parse(lambda: &[Rational], s: &str) -> Result<Self> {
        let mut acc = Self::zero(lambda);
        for (neg, term) in split_top(s, &['+', '-'])? {
            let mut prod = Self::one(lambda);
            for f in split_top(&term, &['*'])?.into_iter().map(|(_, f)| f) {
                let f = f.trim();
                let factor = match parse_u_power(f) {
                    Some(k) => Self::u_pow(lambda, k?),
                    None => Self::term(lambda, C::parse_in(lambda.len(), f)?, 0),
                };
                prod = prod.try_mul(&factor)?;
            }
            acc = if neg { acc.try_sub(&prod)? } else { acc.try_add(&prod)? };
        }
        Ok(acc)
    }
}

/// `u`, `u^k` or `u^(k)`; `None` when the factor is not a power of `u`.
fn parse_u_power(f: &str) -> Option<Result<i64>> {
    let rest = f.strip_prefix('u')?;
    let rest = rest.trim();
    if rest.is_empty() {
        return Some(Ok(1));
    }
    let e = rest.strip_prefix('^')?.trim();
    let e = e.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(e).trim();
    Some(e.parse::<i64>().map_err(|_| Error::parse(0, format!("bad exponent in `{f}`"))))
}

/// Splits at top-level separators, ignoring signs in exponents. For `+`/`-`
/// the flag records a leading minus.
fn split_top(s: &str, seps: &[char]) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(Error::parse(0, format!("unbalanced `)` in `{s}`")));
        }
        let after_caret = prev == Some('^');
        if depth == 0 && seps.contains(&ch) && !after_caret {
            if !cur.trim().is_empty() {
                out.push((neg, std::mem::take(&mut cur)));
            } else if ch == '*' {
                return Err(Error::parse(0, format!("empty factor in `{s}`")));
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    if depth != 0 {
        return Err(Error::parse(0, format!("unbalanced `(` in `{s}`")));
    }
    if cur.trim().is_empty() {
        if out.is_empty() && seps.contains(&'+') {
            return Err(Error::parse(0, "empty expression"));
        }
        if !out.is_empty() {
            return Err(Error::parse(0, format!("dangling operator in `{s}`")));
        }
    } else {
        out.push((neg, cur));
    }
    Ok(out)
}

impl<C: Coeff> fmt::Display for SkewPoly<C> {
    /// Descending powers of `u`, coefficients on the left.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (i, c)) in self.coeffs.iter().rev().enumerate() {
            let mut cs = c.to_string();
            let simple = !cs.contains(' ') && !cs.contains('/');
            let negative = simple && cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let u = match i {
                0 => String::new(),
                1 => "u".into(),
                _ => format!("u^{i}"),
            };
            match (u.is_empty(), cs.as_str()) {
                (true, _) if simple => f.write_str(&cs)?,
                (true, _) => write!(f, "({cs})")?,
                (false, "1") => f.write_str(&u)?,
                (false, _) if simple => write!(f, "{cs}*{u}")?,
                (false, _) => write!(f, "({cs})*{u}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for SkewPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly({self})")
    }
}

pub type SkewLaurent = SkewPoly<LaurentPoly>;
pub type SkewRational = SkewPoly<RatFunc>;

pub fn skew_multiply<C: Coeff>(f: &SkewPoly<C>, g: &SkewPoly<C>) -> Result<SkewPoly<C>> {
    f.try_mul(g)
}

/// Both extreme coefficients are units.
pub fn unit_poly_check(gamma: &SkewLaurent) -> Result<bool> {
    if gamma.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(gamma.lead().unwrap().is_unit() && gamma.trail().unwrap().is_unit())
}

/// `f = q g + r` with `r` spanning fewer than `degree(g)` consecutive powers
/// of `u`. Only the leading coefficient of `g` is inverted.
pub fn right_divide<C: Coeff>(f: &SkewPoly<C>, g: &SkewPoly<C>) -> Result<(SkewPoly<C>, SkewPoly<C>)> {
    f.same_ring(g)?;
    let (Some(lg), Some(hg)) = (g.low(), g.high()) else {
        return Err(Error::ZeroInput);
    };
    let top = g.lead().unwrap();
    let shift = f.low().map_or(0, |lf| (lg - lf).max(0));
    let mut r = f.shift_left(shift);
    let mut q = SkewPoly::zero(&f.lambda);
    while let Some(hr) = r.high() {
        if hr < hg {
            break;
        }
        let e = hr - hg;
        let inv = top.sigma(&f.lambda, e).inverse().ok_or(Error::NonUnitLeadingCoefficient)?;
        let c = r.lead().unwrap().times(&inv);
        let step = SkewPoly::term(&f.lambda, c, e);
        r = r.try_sub(&step.try_mul(g)?)?;
        q = q.try_add(&step)?;
    }
    Ok((q.shift_left(-shift), r.shift_left(-shift)))
}

/// `f = g q + r`, the mirror image of [`right_divide`].
pub fn left_divide<C: Coeff>(f: &SkewPoly<C>, g: &SkewPoly<C>) -> Result<(SkewPoly<C>, SkewPoly<C>)> {
    f.same_ring(g)?;
    let (Some(lg), Some(hg)) = (g.low(), g.high()) else {
        return Err(Error::ZeroInput);
    };
    let top_inv = g.lead().unwrap().inverse().ok_or(Error::NonUnitLeadingCoefficient)?;
    let shift = f.low().map_or(0, |lf| (lg - lf).max(0));
    let mut r = f.shift_right(shift);
    let mut q = SkewPoly::zero(&f.lambda);
    while let Some(hr) = r.high() {
        if hr < hg {
            break;
        }
        let e = hr - hg;
        let c = top_inv.times(r.lead().unwrap()).sigma(&f.lambda, -hg);
        let step = SkewPoly::term(&f.lambda, c, e);
        r = r.try_sub(&g.try_mul(&step)?)?;
        q = q.try_add(&step)?;
    }
    Ok((q.shift_right(-shift), r.shift_right(-shift)))
}

/// A gcd with cofactors.
#[derive(Clone, Debug)]
pub struct Bezout<C: Coeff> {
    pub gcd: SkewPoly<C>,
    pub s: SkewPoly<C>,
    pub t: SkewPoly<C>,
}

/// Greatest common right divisor: `R f + R g = R d`, with `s f + t g = d`.
/// `d` is normalized to lowest power 0 and leading coefficient 1.
pub fn skew_right_gcd_ext(f: &SkewRational, g: &SkewRational) -> Result<Bezout<RatFunc>> {
    f.same_ring(g)?;
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let l = f.lambda.clone();
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (SkewPoly::one(&l), SkewPoly::zero(&l));
    let (mut t0, mut t1) = (SkewPoly::zero(&l), SkewPoly::one(&l));
    while !r1.is_zero() {
        let (q, r) = right_divide(&r0, &r1)?;
        let s = s0.try_sub(&q.try_mul(&s1)?)?;
        let t = t0.try_sub(&q.try_mul(&t1)?)?;
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    // left unit w = c u^-low making d monic with lowest power 0
    let low = r0.low().unwrap();
    let shifted = r0.shift_left(-low);
    let c = shifted.lead().unwrap().inverse().unwrap();
    let w = SkewPoly::term(&l, c, -low);
    Ok(Bezout { gcd: w.try_mul(&r0)?, s: w.try_mul(&s0)?, t: w.try_mul(&t0)? })
}

pub fn skew_right_gcd(f: &SkewRational, g: &SkewRational) -> Result<SkewRational> {
    Ok(skew_right_gcd_ext(f, g)?.gcd)
}

/// Greatest common left divisor: `f R + g R = d R`, with `f s + g t = d`.
pub fn skew_left_gcd_ext(f: &SkewRational, g: &SkewRational) -> Result<Bezout<RatFunc>> {
    f.same_ring(g)?;
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let l = f.lambda.clone();
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (SkewPoly::one(&l), SkewPoly::zero(&l));
    let (mut t0, mut t1) = (SkewPoly::zero(&l), SkewPoly::one(&l));
    while !r1.is_zero() {
        let (q, r) = left_divide(&r0, &r1)?;
        let s = s0.try_sub(&s1.try_mul(&q)?)?;
        let t = t0.try_sub(&t1.try_mul(&q)?)?;
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    // right unit w = u^-low c with (lead u^top) sigma^top(c) = 1
    let low = r0.low().unwrap();
    let top = r0.high().unwrap() - low;
    let c = r0.lead().unwrap().inverse().unwrap().sigma(&l, -top);
    let w = SkewPoly::u_pow(&l, -low).try_mul(&SkewPoly::term(&l, c, 0))?;
    Ok(Bezout { gcd: r0.try_mul(&w)?, s: s0.try_mul(&w)?, t: t0.try_mul(&w)? })
}

pub fn skew_left_gcd(f: &SkewRational, g: &SkewRational) -> Result<SkewRational> {
    Ok(skew_left_gcd_ext(f, g)?.gcd)
}

/// Searches right factors `u - k x^a` with `k` from `scalars` and `a` in
/// `[-exp_bound, exp_bound]^t`; `None` is inconclusive.
pub fn degree_one_right_factor(r: &SkewLaurent, exp_bound: i64, scalars: &[Rational]) -> Result<Option<SkewLaurent>> {
    let Some(low) = r.low() else {
        return Err(Error::ZeroInput);
    };
    let r = r.shift_left(-low);
    if r.degree().unwrap() < 2 {
        return Err(Error::Precondition("degree_one_right_factor needs degree at least 2".into()));
    }
    let t = r.nvars;
    let side = (2 * exp_bound + 1) as usize;
    let count = side.pow(t as u32);
    for code in 0..count {
        let mut c = code;
        let a: Vec<i64> = (0..t)
            .map(|_| {
                let v = (c % side) as i64 - exp_bound;
                c /= side;
                v
            })
            .collect();
        for k in scalars {
            if k.is_zero() {
                continue;
            }
            let g = SkewPoly::from_coeffs(&r.lambda, [(1, LaurentPoly::one(t)), (0, LaurentPoly::monomial(a.clone(), -k))]);
            if right_divide(&r, &g)?.1.is_zero() {
                return Ok(Some(g));
            }
        }
    }
    Ok(None)
}

/// `sigma` of the skew ring attached to `F*A` with `B` the first `n - 1`
/// coordinates and `u = u_n`: `u_n x_i u_n^-1 = q_(n,i) x_i`.
pub fn skew_ring_scalars(alg: &Algebra<Rational>) -> Result<Vec<Rational>> {
    let n = alg.rank();
    if n < 2 {
        return Err(Error::Precondition("rank must be at least 2".into()));
    }
    let p = alg.presentation();
    Ok((0..n - 1).map(|i| alg.scalar(p.entry(n - 1, i))).collect())
}

/// `sum beta_i u^i` as an element of `F*A`; `x^a u^i` is the normal-ordered
/// monomial `u^(a, i)` because `B` comes first.
pub fn to_element(alg: &Arc<Algebra<Rational>>, gamma: &SkewLaurent) -> Result<Element<Rational>> {
    if gamma.nvars + 1 != alg.rank() {
        return Err(Error::DimensionMismatch { expected: alg.rank() - 1, got: gamma.nvars });
    }
    let terms = gamma.coeffs.iter().flat_map(|(i, c)| {
        c.terms().iter().map(move |(a, v)| {
            let mut e = a.clone();
            e.push(*i);
            (e, v.clone())
        })
    });
    Ok(Element::from_terms(alg, terms))
}

pub type LaurentMatrix = Vec<Vec<LaurentPoly>>;

fn mat_mul(a: &LaurentMatrix, b: &LaurentMatrix, t: usize) -> LaurentMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).fold(LaurentPoly::zero(t), |acc, k| acc.add(&a[i][k].mul(&b[k][j])))).collect())
        .collect()
}

fn mat_vec(a: &LaurentMatrix, v: &[LaurentPoly], t: usize) -> Vec<LaurentPoly> {
    a.iter().map(|row| row.iter().zip(v).fold(LaurentPoly::zero(t), |acc, (x, y)| acc.add(&x.mul(y)))).collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(a: &LaurentMatrix, t: usize) -> LaurentPoly {
    let n = a.len();
    match n {
        0 => LaurentPoly::one(t),
        1 => a[0][0].clone(),
        _ => {
            let mut acc = LaurentPoly::zero(t);
            for j in 0..n {
                if a[0][j].is_zero() {
                    continue;
                }
                let minor: LaurentMatrix = a[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
                let term = a[0][j].mul(&determinant(&minor, t));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// `M = F*A / gamma F*A` as a free `F*B`-module on `e_j = e u^j`,
/// `0 <= j < k`. Coordinates are column vectors `c`, meaning `sum e_j c_j`.
#[derive(Clone, Debug)]
pub struct CompanionModule {
    nvars: usize,
    lambda: Vec<Rational>,
    gamma: SkewLaurent,
    b: Vec<LaurentPoly>,
    u: LaurentMatrix,
    u_inv: Option<LaurentMatrix>,
}

impl CompanionModule {
    /// Builds the action matrices without checking the unit conditions on
    /// the trailing coefficient; `u_inv` is absent when it is not a unit.
    /// The leading coefficient must be a unit.
    pub fn from_gamma(gamma: &SkewLaurent) -> Result<Self> {
        let low = gamma.low().ok_or(Error::ZeroInput)?;
        let gamma = gamma.shift_left(-low);
        let k = gamma.high().unwrap() as usize;
        if k == 0 {
            return Err(Error::Precondition("gamma is a unit; the module is zero".into()));
        }
        let t = gamma.nvars;
        let l = gamma.lambda.clone();
        // e u^i c = e_i sigma^-i(c) for i < k, so e gamma = sum e_i b_i
        let b: Vec<LaurentPoly> = (0..=k).map(|i| gamma.coeff(i as i64).sigma(&l, -(i as i64))).collect();
        let bk_inv = b[k].unit_inverse().ok_or(Error::NonUnitLeadingCoefficient)?;
        let mut u = vec![vec![LaurentPoly::zero(t); k]; k];
        for j in 0..k - 1 {
            u[j + 1][j] = LaurentPoly::one(t);
        }
        for i in 0..k {
            u[i][k - 1] = b[i].mul(&bk_inv).neg();
        }
        let u_inv = b[0].unit_inverse().map(|b0_inv| {
            let mut v = vec![vec![LaurentPoly::zero(t); k]; k];
            for j in 0..k - 1 {
                v[j][j + 1] = LaurentPoly::one(t);
            }
            for i in 1..=k {
                v[i - 1][0] = b[i].mul(&b0_inv).neg();
            }
            v
        });
        Ok(Self { nvars: t, lambda: l, gamma, b, u, u_inv })
    }

    pub fn rank(&self) -> usize {
        self.u.len()
    }

    pub fn gamma(&self) -> &SkewLaurent {
        &self.gamma
    }

    pub fn u_matrix(&self) -> &LaurentMatrix {
        &self.u
    }

    pub fn u_inv_matrix(&self) -> Option<&LaurentMatrix> {
        self.u_inv.as_ref()
    }

    pub fn twisted_coefficients(&self) -> &[LaurentPoly] {
        &self.b
    }

    pub fn basis_vector(&self, j: usize) -> Vec<LaurentPoly> {
        (0..self.rank()).map(|i| if i == j { LaurentPoly::one(self.nvars) } else { LaurentPoly::zero(self.nvars) }).collect()
    }

    fn sigma_vec(&self, c: &[LaurentPoly], k: i64) -> Vec<LaurentPoly> {
        c.iter().map(|x| x.sigma(&self.lambda, k)).collect()
    }

    /// `(sum e_j c_j) u`.
    pub fn act_u(&self, c: &[LaurentPoly]) -> Vec<LaurentPoly> {
        mat_vec(&self.u, &self.sigma_vec(c, -1), self.nvars)
    }

    /// `(sum e_j c_j) u^-1`.
    pub fn act_u_inv(&self, c: &[LaurentPoly]) -> Option<Vec<LaurentPoly>> {
        let v = self.u_inv.as_ref()?;
        Some(self.sigma_vec(&mat_vec(v, c, self.nvars), 1))
    }

    /// `(sum e_j c_j) d` for `d` in `F*B`.
    pub fn act_b(&self, c: &[LaurentPoly], d: &LaurentPoly) -> Vec<LaurentPoly> {
        c.iter().map(|x| x.mul(d)).collect()
    }

    pub fn act_u_pow(&self, c: &[LaurentPoly], j: i64) -> Option<Vec<LaurentPoly>> {
        let mut v = c.to_vec();
        for _ in 0..j.unsigned_abs() {
            v = if j > 0 { self.act_u(&v) } else { self.act_u_inv(&v)? };
        }
        Some(v)
    }

    pub fn determinant(&self) -> LaurentPoly {
        determinant(&self.u, self.nvars)
    }

    /// `U U^-1 = I`.
    pub fn check_inverse(&self) -> bool {
        let Some(v) = &self.u_inv else { return false };
        let p = mat_mul(&self.u, v, self.nvars);
        let q = mat_mul(v, &self.u, self.nvars);
        let id = |m: &LaurentMatrix| m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }));
        id(&p) && id(&q)
    }

    /// `e_0 u^j = e_j` for every basis vector.
    pub fn check_cyclic(&self) -> bool {
        let mut v = self.basis_vector(0);
        for j in 0..self.rank() {
            if v != self.basis_vector(j) {
                return false;
            }
            v = self.act_u(&v);
        }
        true
    }

    /// `e_0 gamma = 0`.
    pub fn check_annihilation(&self) -> bool {
        let t = self.nvars;
        let mut acc = vec![LaurentPoly::zero(t); self.rank()];
        for (i, beta) in self.gamma.coeffs() {
            let v = self.act_b(&self.basis_vector(0), beta);
            let v = self.act_u_pow(&v, *i).expect("gamma is shifted to nonnegative powers");
            acc = acc.iter().zip(&v).map(|(a, b)| a.add(b)).collect();
        }
        acc.iter().all(LaurentPoly::is_zero)
    }

    /// `F*A / gamma F*A` as a cyclic module over the ambient algebra.
    pub fn as_cyclic(&self, alg: &Arc<Algebra<Rational>>) -> Result<CyclicModule<Rational>> {
        CyclicModule::principal(to_element(alg, &self.gamma)?)
    }

    /// `rank k`, then the rows of `U` and `U^-1`.
    pub fn dump(&self) -> String {
        let mat = |m: &LaurentMatrix| {
            let rows: Vec<String> = m.iter().map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))).collect();
            format!("[{}]", rows.join(", "))
        };
        let mut s = format!("rank {}\ngamma = {}\nU = {}\n", self.rank(), self.gamma, mat(&self.u));
        match &self.u_inv {
            Some(v) => s.push_str(&format!("U_inv = {}\n", mat(v))),
            None => s.push_str("U_inv = none\n"),
        }
        s.push_str(&format!("det = {}\n", self.determinant()));
        s
    }
}

/// Checks the hypotheses and builds the module.
pub fn construct_simple_module(alg: &Arc<Algebra<Rational>>, gamma: &SkewLaurent) -> Result<CompanionModule> {
    let n = alg.rank();
    let p = alg.presentation();
    if !p.is_simple() {
        return Err(Error::CenterNotTrivial);
    }
    if !p.is_isotropic(&Sublattice::coordinate(n, &(0..n - 1).collect::<Vec<_>>())) {
        return Err(Error::NotIsotropic);
    }
    if gamma.nvars + 1 != n {
        return Err(Error::DimensionMismatch { expected: n - 1, got: gamma.nvars });
    }
    if skew_ring_scalars(alg)? != gamma.lambda {
        return Err(Error::AutomorphismMismatch);
    }
    if !unit_poly_check(gamma)? {
        return Err(Error::NonUnitExtremes);
    }
    let m = CompanionModule::from_gamma(gamma)?;
    if !(m.check_inverse() && m.determinant().is_unit() && m.check_cyclic() && m.check_annihilation()) {
        return Err(Error::Precondition("companion module failed its construction checks".into()));
    }
    Ok(m)
}

/// Free with invertible `u` action: a torsion-free certificate.
pub fn torsion_free_check(m: &CompanionModule) -> bool {
    m.check_inverse() && m.determinant().is_unit()
}

/// Per-sample outcome of [`simplicity_probe`].
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub results: Vec<(LaurentPoly, bool)>,
    /// `gamma` has a [`newton_certificate`], so the module is simple.
    pub certified_simple: bool,
}

impl ProbeReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.1)
    }
}

/// For each `beta`, whether `e_0` lies in the span of `(e_0 beta) u^j x^a`
/// with every exponent of absolute value at most `degree_bound`. A pass
/// shows `F*A = beta F*A + J`. Without `U^-1` only `j >= 0` is used.
pub fn simplicity_probe(m: &CompanionModule, betas: &[LaurentPoly], degree_bound: usize) -> ProbeReport {
    let results = betas
        .iter()
        .map(|beta| {
            let pass = !beta.is_zero() && probe_one(m, beta, degree_bound as i64);
            (beta.clone(), pass)
        })
        .collect();
    ProbeReport { results, certified_simple: newton_certificate(&m.gamma, 2).is_some() }
}

/// Inserts the window shell by shell (by the largest absolute exponent) and
/// stops at the first shell whose span reaches `e_0`; the windows are
/// nested, so this agrees with checking the full window.
fn probe_one(m: &CompanionModule, beta: &LaurentPoly, bound: i64) -> bool {
    let t = m.nvars;
    let start = m.act_b(&m.basis_vector(0), beta);
    let mut index: BTreeMap<(usize, Vec<i64>), usize> = BTreeMap::new();
    let mut col = |key: (usize, Vec<i64>)| {
        let k = index.len();
        *index.entry(key).or_insert(k)
    };
    let target = col((0, vec![0; t]));
    let mut ech = IntEchelon::new();
    let shifts = centered_box(t, 2 * bound as usize);
    let norm = |a: &[i64]| a.iter().map(|x| x.abs()).max().unwrap_or(0);
    let mut powers: BTreeMap<i64, Vec<LaurentPoly>> = BTreeMap::new();
    for shell in 0..=bound {
        let lo = if m.u_inv.is_some() { -shell } else { 0 };
        for j in [lo, shell] {
            if powers.contains_key(&j) {
                continue;
            }
            let Some(v) = m.act_u_pow(&start, j) else { continue };
            powers.insert(j, v);
        }
        for (&j, v) in &powers {
            for a in &shifts {
                if j.abs().max(norm(a)) != shell {
                    continue;
                }
                let w = m.act_b(v, &LaurentPoly::monomial(a.clone(), Rational::one()));
                let mut row: SparseRow<Rational> = Vec::new();
                for (i, x) in w.iter().enumerate() {
                    for (e, c) in x.terms() {
                        row.push((col((i, e.clone())), c.clone()));
                    }
                }
                row.sort_by_key(|x| x.0);
                ech.insert(integer_row(&row));
            }
        }
        if ech.contains(vec![(target, BigInt::from(1))]) {
            return true;
        }
    }
    false
}

/// Irreducibility certificate for `gamma` over the Ore localization: a
/// weight `phi` such that the Newton polygon of `gamma` under the monomial
/// valuation `v_phi` is one segment with no interior lattice points.
/// `sigma` preserves `v_phi`, so polygons of products are Minkowski sums
/// and any factorization has a monomial, hence unit, factor. Degree one
/// needs no weight and returns the zero vector.
pub fn newton_certificate(gamma: &SkewLaurent, weight_bound: i64) -> Option<Vec<i64>> {
    let (lo, hi) = (gamma.low()?, gamma.high()?);
    let t = gamma.nvars;
    if hi - lo == 1 {
        return Some(vec![0; t]);
    }
    if hi == lo {
        return None;
    }
    let side = (2 * weight_bound + 1) as usize;
    (0..side.pow(t as u32)).find_map(|mut code| {
        let phi: Vec<i64> = (0..t)
            .map(|_| {
                let v = (code % side) as i64 - weight_bound;
                code /= side;
                v
            })
            .collect();
        single_segment(gamma, &phi).then_some(phi)
    })
}

fn valuation(c: &LaurentPoly, phi: &[i64]) -> i64 {
    c.terms().keys().map(|e| e.iter().zip(phi).map(|(a, b)| a * b).sum()).min().expect("nonzero coefficient")
}

fn single_segment(gamma: &SkewLaurent, phi: &[i64]) -> bool {
    let pts: Vec<(i64, i64)> = gamma.coeffs.iter().map(|(&i, c)| (i, valuation(c, phi))).collect();
    let ((x0, y0), (x1, y1)) = (pts[0], pts[pts.len() - 1]);
    let (dx, dy) = (x1 - x0, y1 - y0);
    if num_integer::gcd(dx, dy) != 1 {
        return false;
    }
    // strictly above the segment: (y - y0) dx > dy (x - x0)
    pts[1..pts.len() - 1].iter().all(|&(x, y)| (y - y0) * dx > dy * (x - x0))
}

/// A generated instance: the algebra and `gamma`.
#[derive(Clone, Debug)]
pub struct GeneratedExample {
    pub algebra: Arc<Algebra<Rational>>,
    pub gamma: SkewLaurent,
}

/// Rank `t + 1` algebra with `u x_i u^-1 = p_i x_i` and
/// `gamma = u^k + f_1 u^(k-1) + ... + f_(k-1) u - x_1 ... x_t` with
/// pseudorandom `f_i`, redrawn from the seeded stream until `gamma` has a
/// [`newton_certificate`], so the instance meets the irreducibility
/// hypothesis.
pub fn example_generator(t: usize, primes: &[u64], k: usize, seed: u64) -> Result<GeneratedExample> {
    if t == 0 || k == 0 {
        return Err(Error::Precondition("t and k must be positive".into()));
    }
    if primes.len() != t {
        return Err(Error::DimensionMismatch { expected: t, got: primes.len() });
    }
    let n = t + 1;
    let group = ScalarGroup::new(t, 0)?;
    let entries: Vec<(usize, usize, ScalarValue)> = (0..t)
        .map(|i| {
            let mut free = vec![0; t];
            free[i] = -1;
            (i, t, ScalarValue { free, torsion: 0 })
        })
        .collect();
    let p = Presentation::from_upper(n, group, &entries)?;
    let alg = Arc::new(Algebra::with_primes(p, primes)?);
    let lambda = skew_ring_scalars(&alg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATOR_ATTEMPTS {
        let mut coeffs = vec![(k as i64, LaurentPoly::one(t))];
        for i in 1..k {
            let nterms = rng.gen_range(0..=2);
            let f = LaurentPoly::from_terms(
                t,
                (0..nterms).map(|_| ((0..t).map(|_| rng.gen_range(-1..=1)).collect(), Rational::from_integer(rng.gen_range(-3..=3).into()))),
            );
            coeffs.push(((k - i) as i64, f));
        }
        coeffs.push((0, LaurentPoly::monomial(vec![1; t], -Rational::one())));
        let gamma = SkewPoly::from_coeffs(&lambda, coeffs);
        if newton_certificate(&gamma, 2).is_some() {
            return Ok(GeneratedExample { algebra: alg, gamma });
        }
    }
    Err(Error::Precondition("no certified irreducible gamma within the attempt budget".into()))
}

const GENERATOR_ATTEMPTS: usize = 10_000;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, ratio};
    use crate::module::{gk_dimension, SearchBounds};
    use proptest::prelude::*;

    fn l2() -> Vec<Rational> {
        vec![rat(2)]
    }

    fn sp(s: &str) -> SkewLaurent {
        SkewPoly::parse(&l2(), s).unwrap()
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(skew_multiply(&sp("u"), &sp("x")).unwrap(), sp("2*x*u"));
        assert_eq!(sp("u*x"), sp("2*x*u"));
        let f = sp("u^2 + (1 + x)*u - x^3");
        assert_eq!(skew_multiply(&f, &sp("1")).unwrap(), f);
        assert_eq!(skew_multiply(&sp("u - x"), &sp("u + x")).unwrap(), sp("u^2 + x*u - x^2"));
    }

    #[test]
    fn display_round_trip() {
        let f = sp("u^2 + (1 + x)*u - x^3 + x^-1*u^-1");
        assert_eq!(f.to_string(), "u^2 + (x1 + 1)*u - x1^3 + x1^-1*u^-1");
        assert_eq!(sp(&f.to_string()), f);
    }

    #[test]
    fn unit_condition() {
        assert!(unit_poly_check(&sp("u - x")).unwrap());
        assert!(!unit_poly_check(&sp("u - (x + 1)")).unwrap());
        assert!(unit_poly_check(&sp("u^3")).unwrap());
        assert!(unit_poly_check(&SkewPoly::zero(&l2())).is_err());
    }

    #[test]
    fn division_examples() {
        let (q, r) = right_divide(&sp("u^2"), &sp("u - x")).unwrap();
        assert_eq!((q, r), (sp("u + 2*x"), sp("2*x^2")));
        let g = sp("u - x");
        assert_eq!(right_divide(&g, &g).unwrap(), (sp("1"), sp("0")));
        let (q, r) = right_divide(&sp("x"), &sp("u^2 - x")).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, sp("x"));
        assert_eq!(right_divide(&g, &sp("u - (x + 1)")).unwrap().1, sp("1"));
        assert!(matches!(right_divide(&g, &sp("(x + 1)*u")), Err(Error::NonUnitLeadingCoefficient)));
    }

    #[test]
    fn negative_powers_divide() {
        let f = sp("x*u^-3 + u");
        let g = sp("u^2 - x*u + 3");
        let (q, r) = right_divide(&f, &g).unwrap();
        assert_eq!(q.try_mul(&g).unwrap().try_add(&r).unwrap(), f);
        assert!(r.degree().unwrap_or(0) < 2);
        let (q, r) = left_divide(&f, &g).unwrap();
        assert_eq!(g.try_mul(&q).unwrap().try_add(&r).unwrap(), f);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    fn rat_ring(s: &str) -> SkewRational {
        SkewPoly::parse(&l2(), s).unwrap()
    }

    #[test]
    fn gcd_examples() {
        let f = rat_ring("x*u - 3");
        assert_eq!(skew_right_gcd(&f, &SkewPoly::zero(&l2())).unwrap(), rat_ring("u - 3/x"));
        let g = rat_ring("u - x");
        assert_eq!(skew_right_gcd(&g, &g).unwrap(), g);
        assert_eq!(skew_left_gcd(&g, &g).unwrap(), g);
        // planted common left factor
        let h = rat_ring("u + 1");
        let k = rat_ring("u - x^2");
        let a = g.try_mul(&h).unwrap();
        let b = g.try_mul(&k).unwrap();
        assert_eq!(skew_left_gcd(&a, &b).unwrap(), g);
        // planted common right factor
        let a = h.try_mul(&g).unwrap();
        let b = k.try_mul(&g).unwrap();
        let e = skew_right_gcd_ext(&a, &b).unwrap();
        assert_eq!(e.gcd, g);
        assert_eq!(e.s.try_mul(&a).unwrap().try_add(&e.t.try_mul(&b).unwrap()).unwrap(), g);
        let e = skew_right_gcd_ext(&h, &k).unwrap();
        assert_eq!(e.gcd, SkewPoly::one(&l2()));
        assert!(skew_right_gcd(&SkewPoly::zero(&l2()), &SkewPoly::zero(&l2())).is_err());
    }

    #[test]
    fn left_gcd_cofactors() {
        let g = rat_ring("u^2 - x*u + 1/x");
        let a = g.try_mul(&rat_ring("x*u + 2")).unwrap();
        let b = g.try_mul(&rat_ring("u^-1 - x")).unwrap();
        let e = skew_left_gcd_ext(&a, &b).unwrap();
        assert_eq!(a.try_mul(&e.s).unwrap().try_add(&b.try_mul(&e.t).unwrap()).unwrap(), e.gcd);
        assert!(left_divide(&g, &e.gcd).unwrap().1.is_zero());
        assert!(left_divide(&e.gcd, &g).unwrap().1.is_zero());
    }

    #[test]
    fn factor_search() {
        let r = sp("u - 2*x").try_mul(&sp("u - x")).unwrap();
        let scalars: Vec<Rational> = (-3..=3).map(rat).collect();
        let g = degree_one_right_factor(&r, 2, &scalars).unwrap().unwrap();
        assert!(right_divide(&r, &g).unwrap().1.is_zero());
        assert_eq!(degree_one_right_factor(&sp("u^2 - x"), 2, &[rat(1), rat(-1)]).unwrap(), None);
        assert!(degree_one_right_factor(&sp("u - x"), 2, &scalars).is_err());
    }

    fn q_alg() -> Arc<Algebra<Rational>> {
        example_generator(1, &[2], 1, 0).unwrap().algebra
    }

    #[test]
    fn rank_one_module() {
        let alg = q_alg();
        let m = construct_simple_module(&alg, &sp("u - x")).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.u_matrix()[0][0], LaurentPoly::var(1, 0));
        assert!(torsion_free_check(&m));
        let g = gk_dimension(&m.as_cyclic(&alg).unwrap(), SearchBounds::default());
        assert_eq!(g.value(), Some(1));
        let r = simplicity_probe(&m, &[LaurentPoly::parse(1, "x - 1").unwrap(), LaurentPoly::parse(1, "3*x^2").unwrap()], 4);
        assert!(r.all_pass() && r.certified_simple);
        assert!(matches!(construct_simple_module(&alg, &sp("u - (x + 1)")), Err(Error::NonUnitExtremes)));
    }

    #[test]
    fn rank_two_module() {
        let alg = q_alg();
        let gamma = sp("u^2 + (1 + x)*u + x^3");
        let m = construct_simple_module(&alg, &gamma).unwrap();
        assert_eq!(m.rank(), 2);
        assert!(m.determinant().is_unit());
        assert!(torsion_free_check(&m));
        let r = simplicity_probe(&m, &[LaurentPoly::parse(1, "x + 1").unwrap(), LaurentPoly::parse(1, "x^2 - 3").unwrap()], 4);
        assert!(r.all_pass() && r.certified_simple);
    }

    #[test]
    fn newton_certificates() {
        assert_eq!(newton_certificate(&sp("u - x"), 2), Some(vec![0]));
        assert!(newton_certificate(&sp("u^2 - x"), 2).is_some());
        assert_eq!(newton_certificate(&sp("u^2 + (1 + x)*u + x^3"), 2), Some(vec![-1]));
        assert!(newton_certificate(&sp("u^3 + x*u - x"), 2).is_some());
        // (u - x)(u + x): the middle point sits on the segment
        let f = skew_multiply(&sp("u - x"), &sp("u + x")).unwrap();
        assert_eq!(newton_certificate(&f, 3), None);
        assert_eq!(newton_certificate(&sp("u^2 - 1"), 3), None);
    }

    #[test]
    fn reducible_gamma_fails_probe() {
        // u^2 - 1 = (u - 1)(u + 1): unit betas still pass, but nothing
        // certifies simplicity
        let m = CompanionModule::from_gamma(&sp("u^2 - 1")).unwrap();
        let r = simplicity_probe(&m, &[LaurentPoly::parse(1, "3").unwrap()], 3);
        assert!(r.all_pass() && !r.certified_simple);
    }

    #[test]
    fn non_unit_fixture_fails() {
        let m = CompanionModule::from_gamma(&sp("u - (x + 1)")).unwrap();
        assert!(!torsion_free_check(&m));
        let r = simplicity_probe(&m, &[LaurentPoly::parse(1, "x + 1").unwrap()], 4);
        assert!(!r.all_pass());
    }

    #[test]
    fn hypotheses_enforced() {
        let alg = q_alg();
        let wrong = SkewPoly::parse(&[rat(3)], "u - x").unwrap();
        assert!(matches!(construct_simple_module(&alg, &wrong), Err(Error::AutomorphismMismatch)));
        let commutative = Arc::new(Algebra::with_primes(Presentation::trivial(2, ScalarGroup::cyclic()), &[2]).unwrap());
        assert!(matches!(construct_simple_module(&commutative, &SkewPoly::parse(&[rat(1)], "u - x").unwrap()), Err(Error::CenterNotTrivial)));
    }

    #[test]
    fn generator_shapes() {
        let e = example_generator(1, &[2], 1, 7).unwrap();
        assert_eq!(e.gamma, sp("u - x"));
        let e = example_generator(2, &[2, 3], 2, 7).unwrap();
        assert_eq!(e.algebra.rank(), 3);
        assert!(e.algebra.presentation().is_simple());
        let m = construct_simple_module(&e.algebra, &e.gamma).unwrap();
        assert_eq!(m.rank(), 2);
        assert!(example_generator(0, &[], 1, 0).is_err());
        assert!(example_generator(2, &[2, 2], 1, 0).is_err());
    }

    fn skew_strategy() -> impl Strategy<Value = SkewLaurent> {
        let coeff = prop::collection::vec((-2i64..=2, -3i64..=3), 0..3)
            .prop_map(|ts| LaurentPoly::from_terms(1, ts.into_iter().map(|(e, c)| (vec![e], rat(c)))));
        prop::collection::vec((-2i64..=2, coeff), 0..4).prop_map(|cs| SkewPoly::from_coeffs(&[ratio(2, 1)], cs))
    }

    fn monic_strategy() -> impl Strategy<Value = SkewLaurent> {
        (skew_strategy(), 1i64..=3, prop::collection::vec(-2i64..=2, 1), -3i64..=3).prop_map(|(f, d, e, c)| {
            // unit leading coefficient above everything in f
            let top = f.high().unwrap_or(0) + d;
            let c = if c == 0 { 1 } else { c };
            f.try_add(&SkewPoly::term(&[rat(2)], LaurentPoly::monomial(e, rat(c)), top)).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn right_division_identity(f in skew_strategy(), g in monic_strategy()) {
            let (q, r) = right_divide(&f, &g).unwrap();
            prop_assert_eq!(q.try_mul(&g).unwrap().try_add(&r).unwrap(), f);
            prop_assert!(r.degree().unwrap_or(-1) < g.degree().unwrap());
        }

        #[test]
        fn left_division_identity(f in skew_strategy(), g in monic_strategy()) {
            let (q, r) = left_divide(&f, &g).unwrap();
            prop_assert_eq!(g.try_mul(&q).unwrap().try_add(&r).unwrap(), f);
            prop_assert!(r.degree().unwrap_or(-1) < g.degree().unwrap());
        }

        #[test]
        fn associative(a in skew_strategy(), b in skew_strategy(), c in skew_strategy()) {
            prop_assert_eq!(a.try_mul(&b).unwrap().try_mul(&c).unwrap(), a.try_mul(&b.try_mul(&c).unwrap()).unwrap());
        }
    }
}
