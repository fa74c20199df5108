//! Multivariate polynomials over the rationals with a recursive GCD.
//!
//! Exponent vectors are stored with trailing zeros trimmed, so the number of
//! variables of a polynomial is implicit and polynomials in different numbers
//! of variables combine freely.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::field::Rational;

type Exp = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Exp, Rational>,
}

fn trim(mut e: Exp) -> Exp {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn deg(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// Graded lexicographic comparison, padded with zeros.
pub(crate) fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    deg(a).cmp(&deg(b)).then_with(|| {
        let n = a.len().max(b.len());
        for i in 0..n {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            match x.cmp(&y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

fn add_exp(a: &[u32], b: &[u32]) -> Exp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
            .collect(),
    )
}

fn sub_exp(a: &[u32], b: &[u32]) -> Option<Exp> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        if x < y {
            return None;
        }
        out.push(x - y);
    }
    Some(trim(out))
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The variable with 0-based index `i`.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(e: Vec<u32>, c: Rational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(trim(e), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Vec::new()).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Number of variables actually occurring.
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn leading(&self) -> Option<(&Exp, &Rational)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, e: Exp, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(add_exp(e1, e2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_monomial(&self, e: &[u32], c: &Rational) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            out.add_term(add_exp(e1, e), c1 * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes `x_i -> s_i * x_i`.
    pub fn scale_vars(&self, scales: &[Rational]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut f = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let s = scales.get(i).cloned().unwrap_or_else(Rational::one);
                    f *= num_traits::pow(s, k as usize);
                }
            }
            out.add_term(e.clone(), f);
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (ld, lc) = d.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some((lr, cr)) = r.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let e = sub_exp(&lr, &ld)?;
            let c = &cr / &lc;
            q.add_term(e.clone(), c.clone());
            r = r.sub(&d.mul_monomial(&e, &c));
        }
        Some(q)
    }

    /// Scales so the leading coefficient (grlex) is one.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff();
        self.scale(&lc.recip())
    }

    /// Splits into coefficients of powers of the variable with 0-based
    /// index `v`; the coefficients do not involve variables `>= v`.
    fn to_univariate(&self, v: usize) -> Vec<MPoly> {
        let mut out: Vec<MPoly> = Vec::new();
        for (e, c) in &self.terms {
            let k = e.get(v).copied().unwrap_or(0) as usize;
            if out.len() <= k {
                out.resize(k + 1, MPoly::zero());
            }
            let rest: Exp = trim(e.iter().take(v).copied().collect());
            out[k].add_term(rest, c.clone());
        }
        out
    }

    fn from_univariate(coeffs: &[MPoly], v: usize) -> Self {
        let mut out = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e2 = e.clone();
                e2.resize(v + 1, 0);
                e2[v] = k as u32;
                out.add_term(trim(e2), x.clone());
            }
        }
        out
    }

    /// Greatest common divisor, normalized monic (zero only if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let nv = self.nvars().max(other.nvars());
        if nv == 0 {
            return Self::one();
        }
        if let Some(g) = monomial_gcd(self, other) {
            return g;
        }
        if certainly_coprime(self, other, nv) {
            return Self::one();
        }
        gcd_rec(self, other, nv - 1).monic()
    }
}

/// When one side is a single term, the gcd is the monomial of the
/// componentwise minimal exponents.
fn monomial_gcd(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    let (mono, other) = if a.terms.len() == 1 {
        (a, b)
    } else if b.terms.len() == 1 {
        (b, a)
    } else {
        return None;
    };
    let mut e = mono.terms.keys().next().unwrap().clone();
    for k in other.terms.keys() {
        for (i, x) in e.iter_mut().enumerate() {
            *x = (*x).min(k.get(i).copied().unwrap_or(0));
        }
    }
    let mut g = MPoly::zero();
    g.add_term(trim(e), Rational::one());
    Some(g)
}

/// Dense coefficients in variable `v` after substituting `vals[i]` for
/// every other variable `i`.
fn specialize(p: &MPoly, v: usize, vals: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    for (e, c) in &p.terms {
        let k = e.get(v).copied().unwrap_or(0) as usize;
        if out.len() <= k {
            out.resize(k + 1, Rational::zero());
        }
        let mut x = c.clone();
        for (i, &d) in e.iter().enumerate() {
            if i != v && d > 0 {
                x *= num_traits::pow(vals[i].clone(), d as usize);
            }
        }
        out[k] += x;
    }
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn degree_in(p: &MPoly, v: usize) -> usize {
    p.terms.keys().map(|e| e.get(v).copied().unwrap_or(0) as usize).max().unwrap_or(0)
}

/// Degree of the gcd of two dense univariate polynomials over `Q`.
fn univariate_gcd_degree(mut a: Vec<Rational>, mut b: Vec<Rational>) -> usize {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let lb = b.last().unwrap().recip();
        while a.len() >= b.len() {
            let f = a.last().unwrap() * &lb;
            let shift = a.len() - b.len();
            for (i, x) in b.iter().enumerate() {
                a[i + shift] -= &f * x;
            }
            a.pop();
            while a.last().is_some_and(Zero::is_zero) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Sound coprimality test. If the gcd `G` involved variable `v`, then for
/// any substitution of the other variables preserving the `v`-degree of
/// `a`, the specialized gcd would have positive degree, since `lc_v(G)`
/// divides `lc_v(a)`. `false` means undecided.
fn certainly_coprime(a: &MPoly, b: &MPoly, nv: usize) -> bool {
    const POINTS: [i64; 4] = [3, -5, 7, 11];
    (0..nv).all(|v| {
        let (da, db) = (degree_in(a, v), degree_in(b, v));
        if da == 0 || db == 0 {
            return true;
        }
        POINTS.iter().enumerate().any(|(k, _)| {
            let vals: Vec<Rational> = (0..nv).map(|i| Rational::from_integer(POINTS[(i + k) % POINTS.len()].into())).collect();
            let sa = specialize(a, v, &vals);
            sa.len() == da + 1 && univariate_gcd_degree(sa, specialize(b, v, &vals)) == 0
        })
    })
}

fn trim_uni(p: &mut Vec<MPoly>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn content(p: &[MPoly], v: usize) -> MPoly {
    let mut g = MPoly::zero();
    for c in p {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c.monic() } else { gcd_rec(&g, c, v.saturating_sub(1)).monic() };
        if g.is_constant() {
            return MPoly::one();
        }
    }
    if g.is_zero() {
        MPoly::one()
    } else {
        g
    }
}

fn primitive(p: &[MPoly], v: usize) -> (MPoly, Vec<MPoly>) {
    let c = if v == 0 {
        MPoly::one()
    } else {
        content(p, v)
    };
    let mut pp: Vec<MPoly> = p
        .iter()
        .map(|x| x.div_exact(&c).expect("content divides coefficients"))
        .collect();
    // a unit leading coefficient keeps rational scalars from growing
    if let Some(top) = pp.iter().rev().find(|x| !x.is_zero()) {
        let s = top.leading_coeff().recip();
        if !s.is_one() {
            pp = pp.iter().map(|x| x.scale(&s)).collect();
        }
    }
    (c, pp)
}

/// Lazy pseudo-remainder of univariate polynomials with polynomial coefficients.
fn prem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<MPoly> = a.to_vec();
    trim_uni(&mut r);
    while !r.is_empty() && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<MPoly> = r.iter().map(|c| c.mul(lb)).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&bc.mul(&lr));
        }
        trim_uni(&mut next);
        r = next;
    }
    r
}

/// GCD of polynomials in variables `0..=v` (up to a constant factor).
fn gcd_rec(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    if ua.len() == 1 && ub.len() == 1 {
        // neither involves variable v
        return if v == 0 { MPoly::one() } else { gcd_rec(a, b, v - 1) };
    }
    let (ca, mut pa) = primitive(&ua, v);
    let (cb, mut pb) = primitive(&ub, v);
    let c = if v == 0 { MPoly::one() } else { gcd_rec(&ca, &cb, v - 1) };
    if pa.len() < pb.len() {
        std::mem::swap(&mut pa, &mut pb);
    }
    while pb.len() > 1 {
        let r = prem(&pa, &pb);
        pa = pb;
        if r.is_empty() {
            pb = Vec::new();
            break;
        }
        pb = primitive(&r, v).1;
    }
    let g = if pb.len() == 1 && !pb[0].is_zero() {
        // constant (in v) remainder: primitive parts are coprime
        vec![MPoly::one()]
    } else {
        primitive(&pa, v).1
    };
    MPoly::from_univariate(&g, v).mul(&c)
}

impl MPoly {
    /// Renders with variables named `{prefix}1`, `{prefix}2`, ...
    pub fn display_with(&self, prefix: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut ts: Vec<(&Exp, &Rational)> = self.terms.iter().collect();
        ts.sort_by(|a, b| grlex(b.0, a.0));
        let mut s = String::new();
        for (i, (e, c)) in ts.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = monomial_string(e, prefix);
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}*{mono}"));
            }
        }
        s
    }
}

pub(crate) fn monomial_string(e: &[u32], prefix: &str) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("{prefix}{}", i + 1)
            } else {
                format!("{prefix}{}^{k}", i + 1)
            }
        })
        .collect();
    parts.join("*")
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn x(i: usize) -> MPoly {
        MPoly::var(i)
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let f = x(0).add(&x(1)).add(&MPoly::one()); // t1 + t2 + 1
        let g = x(0).mul(&x(1)).sub(&MPoly::constant(rat(3)));
        let h = x(0).sub(&x(1).pow(2));
        let a = f.mul(&g);
        let b = f.mul(&h);
        assert_eq!(a.gcd(&b), f.monic());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = x(0).pow(2).add(&MPoly::one());
        let b = x(0).mul(&x(1)).sub(&MPoly::one());
        assert!(a.gcd(&b).is_one());
    }

    #[test]
    fn gcd_with_content_in_lower_variables() {
        // (t1 - 1) * (t2 + t1) and (t1 - 1) * t2
        let c = x(0).sub(&MPoly::one());
        let a = c.mul(&x(1).add(&x(0)));
        let b = c.mul(&x(1));
        assert_eq!(a.gcd(&b), c);
    }

    #[test]
    fn exact_division() {
        let a = x(0).add(&x(1));
        let b = x(0).sub(&x(1));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(x(0).div_exact(&x(1)).is_none());
    }

    #[test]
    fn display_is_grlex_descending() {
        let p = x(0).pow(2).sub(&x(1).scale(&rat(3))).add(&MPoly::constant(rat(1)));
        assert_eq!(p.to_string(), "t1^2 - 3*t2 + 1");
    }
}
