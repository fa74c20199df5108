//! The rational function field Q(t1, ..., td) as reduced fractions.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};


use crate::field::{parse_rational, Field, Rational};
use crate::mpoly::MPoly;

/// A reduced fraction `num / den` with `den` monic under graded-lex order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self { num, den: MPoly::one() };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = d.leading_coeff();
        if !Field::is_one(&lc) {
            let s = lc.recip();
            n = n.scale(&s);
            d = d.scale(&s);
        }
        Self { num: n, den: d }
    }

    /// `num / den` for a pair already known to be coprime.
    fn coprime(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self { num, den: MPoly::one() };
        }
        let lc = den.leading_coeff();
        if Field::is_one(&lc) {
            return Self { num, den };
        }
        let s = lc.recip();
        Self { num: num.scale(&s), den: den.scale(&s) }
    }

    pub fn from_poly(p: MPoly) -> Self {
        Self { num: p, den: MPoly::one() }
    }

    /// The variable `t_{i+1}`.
    pub fn var(i: usize) -> Self {
        Self::from_poly(MPoly::var(i))
    }

    /// The Laurent monomial `prod t_i^{e_i}`.
    pub fn laurent_monomial(e: &[i64], c: Rational) -> Self {
        let pos: Vec<u32> = e.iter().map(|&k| k.max(0) as u32).collect();
        let neg: Vec<u32> = e.iter().map(|&k| (-k).max(0) as u32).collect();
        Self::new(MPoly::monomial(pos, c), MPoly::monomial(neg, <Rational as Field>::one()))
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    /// Substitutes `t_i -> s_i * t_i`.
    pub fn scale_vars(&self, scales: &[Rational]) -> Self {
        Self::new(self.num.scale_vars(scales), self.den.scale_vars(scales))
    }

    pub fn display_with(&self, prefix: &str) -> String {
        if self.den.is_one() {
            self.num.display_with(prefix)
        } else {
            format!("({})/({})", self.num.display_with(prefix), self.den.display_with(prefix))
        }
    }
}

impl Add for RatFunc {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den);
        }
        // with g = gcd(d1, d2), only factors of g can cancel
        let g = self.den.gcd(&o.den);
        if g.is_one() {
            return Self::coprime(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den));
        }
        let (c1, c2) = (self.den.div_exact(&g).unwrap(), o.den.div_exact(&g).unwrap());
        let t = self.num.mul(&c2).add(&o.num.mul(&c1));
        let den = self.den.mul(&c2);
        let h = t.gcd(&g);
        if h.is_one() {
            Self::coprime(t, den)
        } else {
            Self::coprime(t.div_exact(&h).unwrap(), den.div_exact(&h).unwrap())
        }
    }
}

impl Sub for RatFunc {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for RatFunc {
    type Output = Self;
    fn neg(self) -> Self {
        Self { num: self.num.neg(), den: self.den }
    }
}

impl Mul for RatFunc {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        // cross-cancel: both inputs are reduced
        let (g1, g2) = (self.num.gcd(&o.den), o.num.gcd(&self.den));
        let cut = |p: &MPoly, g: &MPoly| if g.is_one() { p.clone() } else { p.div_exact(g).unwrap() };
        Self::coprime(cut(&self.num, &g1).mul(&cut(&o.num, &g2)), cut(&self.den, &g2).mul(&cut(&o.den, &g1)))
    }
}

impl Div for RatFunc {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(!o.num.is_zero(), "division by zero");
        self * o.inv()
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        Self::from_poly(MPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(MPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn from_rational(q: &Rational) -> Self {
        Self::from_poly(MPoly::constant(q.clone()))
    }
    fn inv(&self) -> Self {
        assert!(!self.num.is_zero(), "inverse of zero");
        Self::coprime(self.den.clone(), self.num.clone())
    }
    fn is_rational_literal(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }
    fn parse(s: &str) -> Result<Self, String> {
        let mut p = ExprParser { src: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(format!("trailing input in `{s}`"));
        }
        Ok(v)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// Recursive-descent parser for `+ - * / ^`, parentheses, rationals and
/// variables `t<k>` or `x<k>`.
struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc, String> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, String> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    if d.is_zero() {
                        return Err("division by zero".into());
                    }
                    acc = acc / d;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatFunc, String> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            if e < 0 && base.is_zero() {
                return Err("negative power of zero".into());
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, String> {
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let v = s.parse::<i64>().map_err(|_| format!("bad exponent `{s}`"))?;
        if paren {
            if self.peek() != Some(b')') {
                return Err("expected `)`".into());
            }
            self.pos += 1;
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<RatFunc, String> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err("expected `)`".into());
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(RatFunc::from_rational(&parse_rational(s)?))
            }
            Some(b't') | Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                // a bare `x` is the first variable
                let k: usize = if s.is_empty() { 1 } else { s.parse().map_err(|_| "variable index expected".to_string())? };
                if k == 0 {
                    return Err("variables are numbered from 1".into());
                }
                Ok(RatFunc::var(k - 1))
            }
            other => Err(format!("unexpected {:?}", other.map(|c| c as char))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn p(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    #[test]
    fn reduces_fractions() {
        let a = p("(t1^2 - 1)/(t1 - 1)");
        assert_eq!(a, p("t1 + 1"));
        assert_eq!(a.to_string(), "t1 + 1");
    }

    #[test]
    fn denominator_is_monic() {
        let a = p("1/(2*t1 + 4)");
        assert_eq!(a.denominator().leading_coeff(), rat(1));
        assert_eq!(a.to_string(), "(1/2)/(t1 + 2)");
    }

    #[test]
    fn field_axioms_on_samples() {
        let a = p("(t1 + t2)/(t1*t2 - 1)");
        let b = p("t2^2/(t1 + 1)");
        let c = p("3/2*t1 - t2");
        assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        assert!((a.clone() * a.inv()).is_one());
        assert_eq!((a.clone() - a).to_string(), "0");
    }

    #[test]
    fn display_round_trips() {
        for s in ["(t1 - 1)/(t2)", "-3/7", "t1^2*t2 - 1", "(2*t1)/(t1^2 + t2 + 1)"] {
            let v = p(s);
            assert_eq!(p(&v.to_string()), v);
        }
    }

    #[test]
    fn laurent_monomials_and_scaling() {
        let m = RatFunc::laurent_monomial(&[1, -2], rat(3));
        assert_eq!(m, p("3*t1/t2^2"));
        let s = m.scale_vars(&[rat(2), rat(3)]);
        assert_eq!(s, p("3*2*t1/(9*t2^2)"));
    }
}
