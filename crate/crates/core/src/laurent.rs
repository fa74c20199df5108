//! Commutative Laurent polynomials `Q[x1^+-1, ..., xt^+-1]`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::Rational;
use crate::mpoly::MPoly;
use crate::ratfunc::RatFunc;

/// Finite map from exponent vectors to nonzero rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(e: Vec<i64>, c: Rational) -> Self {
        let nvars = e.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { nvars, terms }
    }

    /// The variable `x_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<i64>, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<i64>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&vec![0; self.nvars]).is_some_and(One::is_one)
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Rational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `(c, e)` when the polynomial is `c x^e`.
    pub fn as_monomial(&self) -> Option<(Rational, Vec<i64>)> {
        match self.terms.iter().next() {
            Some((e, c)) if self.terms.len() == 1 => Some((c.clone(), e.clone())),
            _ => None,
        }
    }

    /// Units are exactly the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn unit_inverse(&self) -> Option<Self> {
        let (c, e) = self.as_monomial()?;
        Some(Self::monomial(e.iter().map(|x| -x).collect(), c.recip()))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term(a.iter().zip(b).map(|(p, q)| p + q).collect(), x * y);
            }
        }
        r
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, e: &[i64]) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, c)| (a.iter().zip(e).map(|(p, q)| p + q).collect(), c.clone())).collect(),
        }
    }

    /// `x_i -> lambda_i^k x_i`.
    pub fn sigma(&self, lambda: &[Rational], k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for (l, &x) in lambda.iter().zip(e) {
                    v *= pow(l, k * x);
                }
                (e.clone(), v)
            })
            .collect();
        Self { nvars: self.nvars, terms }
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        self.terms
            .iter()
            .map(|(e, c)| RatFunc::laurent_monomial(e, c.clone()))
            .fold(RatFunc::from_poly(MPoly::zero()), |a, b| a + b)
    }

    /// Succeeds when the denominator is a monomial.
    pub fn from_ratfunc(nvars: usize, f: &RatFunc) -> Option<Self> {
        let mut dt = f.denominator().terms();
        let (de, dc) = dt.next()?;
        if dt.next().is_some() || de.len() > nvars {
            return None;
        }
        let mut out = Self::zero(nvars);
        for (e, c) in f.numerator().terms() {
            if e.len() > nvars {
                return None;
            }
            let ex: Vec<i64> =
                (0..nvars).map(|i| i64::from(e.get(i).copied().unwrap_or(0)) - i64::from(de.get(i).copied().unwrap_or(0))).collect();
            out.add_term(ex, c / dc);
        }
        Some(out)
    }

    /// Parses `x1`, `x2`, ... (bare `x` is `x1`) with `+ - * / ^`; the
    /// result must be a Laurent polynomial.
    pub fn parse(nvars: usize, s: &str) -> Result<Self> {
        let f = <RatFunc as crate::field::Field>::parse(s).map_err(|e| Error::parse(0, e))?;
        Self::from_ratfunc(nvars, &f)
            .ok_or_else(|| Error::parse(0, format!("`{s}` is not a Laurent polynomial in {nvars} variables")))
    }
}

fn pow(l: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(l.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

fn mono_text(e: &[i64]) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for LaurentPoly {
    /// Terms by descending total degree, then descending lex.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut ts: Vec<(&Vec<i64>, &Rational)> = self.terms.iter().collect();
        ts.sort_by(|a, b| (b.0.iter().sum::<i64>(), b.0).cmp(&(a.0.iter().sum::<i64>(), a.0)));
        for (i, (e, c)) in ts.into_iter().enumerate() {
            let a = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let m = mono_text(e);
            if m.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&m)?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn parse_and_print() {
        let p = LaurentPoly::parse(2, "x1^-1 + 3*x2 - x").unwrap();
        assert_eq!(p.to_string(), "-x1 + 3*x2 + x1^-1");
        assert_eq!(LaurentPoly::parse(2, &p.to_string()).unwrap(), p);
        assert!(LaurentPoly::parse(1, "1/(x + 1)").is_err());
        assert!(LaurentPoly::parse(1, "x2").is_err());
        assert_eq!(LaurentPoly::parse(1, "(x^2 - 1)/(x - 1)").unwrap(), LaurentPoly::parse(1, "x + 1").unwrap());
    }

    #[test]
    fn units() {
        let m = LaurentPoly::parse(2, "-2*x1^3*x2^-1").unwrap();
        assert!(m.is_unit());
        assert!(m.mul(&m.unit_inverse().unwrap()).is_one());
        assert!(!LaurentPoly::parse(1, "x + 1").unwrap().is_unit());
        assert!(!LaurentPoly::zero(1).is_unit());
    }

    #[test]
    fn sigma_scales() {
        let p = LaurentPoly::parse(2, "x1 + x2^-1").unwrap();
        let l = [rat(2), rat(3)];
        assert_eq!(p.sigma(&l, 1), LaurentPoly::parse(2, "2*x1 + x2^-1/3").unwrap());
        assert_eq!(p.sigma(&l, -2), LaurentPoly::parse(2, "x1/4 + 9*x2^-1").unwrap());
        assert_eq!(p.sigma(&[ratio(1, 2), rat(1)], 0), p);
    }

    fn poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((prop::collection::vec(-2i64..=2, 2), -3i64..=3), 0..4)
            .prop_map(|ts| LaurentPoly::from_terms(2, ts.into_iter().map(|(e, c)| (e, rat(c)))))
    }

    proptest! {
        #[test]
        fn sigma_is_ring_map(a in poly(), b in poly(), k in -2i64..=2) {
            let l = [rat(2), ratio(-1, 3)];
            prop_assert_eq!(a.mul(&b).sigma(&l, k), a.sigma(&l, k).mul(&b.sigma(&l, k)));
            prop_assert_eq!(a.sigma(&l, k).sigma(&l, -k), a.clone());
        }

        #[test]
        fn ratfunc_round_trip(a in poly()) {
            prop_assert_eq!(LaurentPoly::from_ratfunc(2, &a.to_ratfunc()), Some(a));
        }
    }
}
