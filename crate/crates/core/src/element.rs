//! Elements of a quantum torus in normal form.
//!
//! A monomial `u^m` means `u_1^m_1 ... u_n^m_n`, and
//! `u^m u^m' = prod_{j>i} q_ji^(m_j m'_i) u^(m+m')`. Associativity of this
//! rule is what [`cocycle_check`] tests.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::pairing::{Presentation, ScalarValue};
use crate::ratfunc::RatFunc;

/// A presentation together with concrete images of the scalar generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Algebra<F: Field> {
    presentation: Presentation,
    images: Vec<F>,
    labels: Vec<String>,
}

impl<F: Field> Algebra<F> {
    /// Checks `images` against the scalar group. Torsion must be absent or
    /// `m = 2`, realised by the sign `-1`.
    pub fn with_images(presentation: Presentation, images: Vec<F>, labels: Vec<String>) -> Result<Self> {
        let g = presentation.group();
        if images.len() != g.free_rank {
            return Err(Error::InvalidEmbedding(format!("{} images for {} generators", images.len(), g.free_rank)));
        }
        if g.torsion != 0 && g.torsion != 2 {
            return Err(Error::UnsupportedScalarGroup(format!(
                "torsion modulus {} has no image in the coefficient field",
                g.torsion
            )));
        }
        if images.iter().any(|x| x.is_zero()) {
            return Err(Error::InvalidEmbedding("zero image".into()));
        }
        Ok(Self { presentation, images, labels })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn rank(&self) -> usize {
        self.presentation.rank()
    }

    pub fn images(&self) -> &[F] {
        &self.images
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The field element with exponent vector `v`.
    pub fn scalar(&self, v: &ScalarValue) -> F {
        let mut acc = F::one();
        for (img, &e) in self.images.iter().zip(&v.free) {
            if e != 0 {
                acc = acc.mul_ref(&img.pow(e));
            }
        }
        if v.torsion % 2 == 1 {
            acc = -acc;
        }
        acc
    }

    /// Exponent of the twist `u^a u^b = tau(a, b) u^(a+b)`.
    pub fn twist_exponent(&self, a: &[i64], b: &[i64]) -> ScalarValue {
        let g = self.presentation.group();
        let n = self.rank();
        let mut free = vec![0i64; g.free_rank];
        let mut tors = 0i64;
        for j in 0..n {
            if a[j] == 0 {
                continue;
            }
            for i in 0..j {
                if b[i] == 0 {
                    continue;
                }
                let k = a[j] * b[i];
                let v = self.presentation.entry(j, i);
                for (f, x) in free.iter_mut().zip(&v.free) {
                    *f += k * x;
                }
                tors += k * v.torsion;
            }
        }
        let tors = if g.torsion > 0 { tors.rem_euclid(i64::from(g.torsion)) } else { 0 };
        ScalarValue { free, torsion: tors }
    }

    pub fn twist(&self, a: &[i64], b: &[i64]) -> F {
        self.scalar(&self.twist_exponent(a, b))
    }

    /// `[u^a, u^b]` as a field element.
    pub fn monomial_commutator(&self, a: &[i64], b: &[i64]) -> Result<F> {
        Ok(self.scalar(&self.presentation.eval(a, b)?))
    }

    /// Twisted group algebra of the direct sum; both factors need the same
    /// scalar images.
    pub fn tensor(&self, other: &Algebra<F>) -> Result<Algebra<F>> {
        if self.images != other.images {
            return Err(Error::IncompatibleScalarGroups);
        }
        Ok(Algebra {
            presentation: self.presentation.tensor(&other.presentation)?,
            images: self.images.clone(),
            labels: self.labels.clone(),
        })
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl Algebra<Rational> {
    /// Free scalar generators sent to distinct primes.
    pub fn with_primes(presentation: Presentation, primes: &[u64]) -> Result<Self> {
        let mut seen = primes.to_vec();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != primes.len() {
            return Err(Error::InvalidEmbedding("repeated prime".into()));
        }
        if let Some(p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::InvalidEmbedding(format!("{p} is not prime")));
        }
        let images = primes.iter().map(|&p| Rational::from_integer(BigInt::from(p))).collect();
        let labels = primes.iter().map(|p| p.to_string()).collect();
        Self::with_images(presentation, images, labels)
    }
}

impl Algebra<RatFunc> {
    /// Free scalar generators sent to the variables `t1, ..., td`.
    pub fn with_variables(presentation: Presentation) -> Result<Self> {
        let d = presentation.group().free_rank;
        let images = (0..d).map(RatFunc::var).collect();
        let labels = (1..=d).map(|i| format!("t{i}")).collect();
        Self::with_images(presentation, images, labels)
    }
}

/// A finite sum of normal-form monomials with nonzero coefficients.
#[derive(Clone)]
pub struct Element<F: Field> {
    alg: Arc<Algebra<F>>,
    terms: BTreeMap<Vec<i64>, F>,
}

impl<F: Field> PartialEq for Element<F> {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Element<F> {}

fn same_algebra<F: Field>(a: &Arc<Algebra<F>>, b: &Arc<Algebra<F>>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<F: Field> Element<F> {
    pub fn zero(alg: &Arc<Algebra<F>>) -> Self {
        Self { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &Arc<Algebra<F>>) -> Self {
        Self::monomial(alg, vec![0; alg.rank()], F::one())
    }

    pub fn monomial(alg: &Arc<Algebra<F>>, m: Vec<i64>, c: F) -> Self {
        assert_eq!(m.len(), alg.rank(), "exponent length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { alg: alg.clone(), terms }
    }

    /// The generator `u_{i+1}`.
    pub fn generator(alg: &Arc<Algebra<F>>, i: usize) -> Self {
        let mut m = vec![0; alg.rank()];
        m[i] = 1;
        Self::monomial(alg, m, F::one())
    }

    pub fn from_terms(alg: &Arc<Algebra<F>>, terms: impl IntoIterator<Item = (Vec<i64>, F)>) -> Self {
        let mut out = Self::zero(alg);
        for (m, c) in terms {
            assert_eq!(m.len(), alg.rank(), "exponent length");
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Vec<i64>, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, F> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &[i64]) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_algebra(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(&self.alg);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let m: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                let c = x.mul_ref(y).mul_ref(&self.alg.twist(a, b));
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.alg);
        }
        Self { alg: self.alg.clone(), terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul_ref(c))).collect() }
    }

    /// `self * u^m`.
    pub fn mul_monomial_right(&self, m: &[i64]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(a, x)| (a.iter().zip(m).map(|(p, q)| p + q).collect(), x.mul_ref(&self.alg.twist(a, m))))
            .collect();
        Self { alg: self.alg.clone(), terms }
    }

    /// `u^m * self`.
    pub fn mul_monomial_left(&self, m: &[i64]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(a, x)| (m.iter().zip(a).map(|(p, q)| p + q).collect(), x.mul_ref(&self.alg.twist(m, a))))
            .collect();
        Self { alg: self.alg.clone(), terms }
    }

    /// `(c, m)` when the element is `c u^m`, the only units.
    pub fn as_unit(&self) -> Option<(F, Vec<i64>)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), m.clone()))
        } else {
            None
        }
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (c, m) = self.as_unit()?;
        Some(monomial_inverse(&self.alg, &m).scale(&c.inv()))
    }

    /// The terms minimizing `phi` over the support.
    pub fn initial_form(&self, phi: &[Rational]) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        if phi.len() != self.alg.rank() {
            return Err(Error::DimensionMismatch { expected: self.alg.rank(), got: phi.len() });
        }
        let level = |m: &Vec<i64>| -> Rational { m.iter().zip(phi).map(|(&a, p)| p * Rational::from_integer(a.into())).sum() };
        let min = self.terms.keys().map(level).min().unwrap();
        let terms = self.terms.iter().filter(|(m, _)| level(m) == min).map(|(m, c)| (m.clone(), c.clone())).collect();
        Ok(Self { alg: self.alg.clone(), terms })
    }

    /// Re-homes the element into `alg`, placing coordinates at `offset`.
    pub fn embed(&self, alg: &Arc<Algebra<F>>, offset: usize) -> Self {
        let n = alg.rank();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; n];
                e[offset..offset + m.len()].copy_from_slice(m);
                (e, c.clone())
            })
            .collect();
        Self { alg: alg.clone(), terms }
    }

    /// Canonical text: terms in lexicographic exponent order.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono = monomial_text(m);
            let (neg, body) = coefficient_text(c, mono.is_empty());
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (body.is_empty(), mono.is_empty()) {
                (true, _) => out.push_str(&mono),
                (false, true) => out.push_str(&body),
                (false, false) => {
                    out.push_str(&body);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }

    /// Parses the canonical grammar. Products of `u` factors are evaluated in
    /// the algebra from left to right, so `u2*u1` is a twisted monomial.
    pub fn parse(alg: &Arc<Algebra<F>>, s: &str) -> Result<Self> {
        parse_element(alg, s).map_err(|e| Error::parse(0, format!("{e} in `{s}`")))
    }
}

fn monomial_text(m: &[i64]) -> String {
    m.iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| if e == 1 { format!("u{}", i + 1) } else { format!("u{}^{}", i + 1, e) })
        .collect::<Vec<_>>()
        .join("*")
}

/// Sign and body; the body is empty for a bare unit coefficient on a
/// non-constant monomial.
fn coefficient_text<F: Field>(c: &F, constant: bool) -> (bool, String) {
    if c.is_rational_literal() {
        let s = c.to_string();
        let (neg, abs) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        };
        if abs == "1" && !constant {
            return (neg, String::new());
        }
        return (neg, abs);
    }
    let neg_c = -c.clone();
    // prefer the rendering without a leading minus
    let s = c.to_string();
    if s.starts_with('-') && !neg_c.to_string().starts_with('-') {
        return (true, paren(&neg_c.to_string()));
    }
    (false, paren(&s))
}

fn paren(s: &str) -> String {
    if s.contains(' ') || s.contains('/') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

fn parse_element<F: Field>(alg: &Arc<Algebra<F>>, s: &str) -> std::result::Result<Element<F>, String> {
    let b = s.as_bytes();
    let mut pos = 0;
    let skip = |pos: &mut usize| {
        while *pos < b.len() && b[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let mut total = Element::zero(alg);
    let mut first = true;
    loop {
        skip(&mut pos);
        if pos >= b.len() {
            if first {
                return Err("empty element".into());
            }
            break;
        }
        let mut sign = false;
        if b[pos] == b'+' || b[pos] == b'-' {
            sign = b[pos] == b'-';
            pos += 1;
        } else if !first {
            return Err(format!("expected `+` or `-` at byte {pos}"));
        }
        first = false;
        let mut coeff = F::one();
        let mut mono = Element::one(alg);
        loop {
            skip(&mut pos);
            if pos >= b.len() {
                return Err("missing factor".into());
            }
            match b[pos] {
                b'(' => {
                    let start = pos + 1;
                    let mut depth = 0;
                    while pos < b.len() {
                        match b[pos] {
                            b'(' => depth += 1,
                            b')' => {
                                depth -= 1;
                                if depth == 0 {
                                    break;
                                }
                            }
                            _ => {}
                        }
                        pos += 1;
                    }
                    if pos >= b.len() {
                        return Err("unbalanced parenthesis".into());
                    }
                    let c = F::parse(&s[start..pos])?;
                    coeff = coeff.mul_ref(&c);
                    pos += 1;
                }
                c if c.is_ascii_digit() => {
                    let start = pos;
                    while pos < b.len() && (b[pos].is_ascii_digit() || b[pos] == b'/') {
                        pos += 1;
                    }
                    coeff = coeff.mul_ref(&F::parse(&s[start..pos])?);
                }
                b'u' => {
                    pos += 1;
                    let start = pos;
                    while pos < b.len() && b[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let i: usize = s[start..pos].parse().map_err(|_| "generator index expected".to_string())?;
                    if i == 0 || i > alg.rank() {
                        return Err(format!("generator u{i} out of range"));
                    }
                    let mut e = 1i64;
                    skip(&mut pos);
                    if pos < b.len() && b[pos] == b'^' {
                        pos += 1;
                        skip(&mut pos);
                        let paren = pos < b.len() && b[pos] == b'(';
                        if paren {
                            pos += 1;
                        }
                        let start = pos;
                        if pos < b.len() && b[pos] == b'-' {
                            pos += 1;
                        }
                        while pos < b.len() && b[pos].is_ascii_digit() {
                            pos += 1;
                        }
                        e = s[start..pos].parse().map_err(|_| "bad exponent".to_string())?;
                        if paren {
                            if pos >= b.len() || b[pos] != b')' {
                                return Err("expected `)`".into());
                            }
                            pos += 1;
                        }
                    }
                    let mut m = vec![0; alg.rank()];
                    m[i - 1] = e;
                    mono = mono.mul_monomial_right(&m);
                }
                c if c.is_ascii_alphabetic() => {
                    let start = pos;
                    pos += 1;
                    while pos < b.len() && b[pos].is_ascii_alphanumeric() {
                        pos += 1;
                    }
                    if pos < b.len() && b[pos] == b'^' {
                        pos += 1;
                        if pos < b.len() && b[pos] == b'-' {
                            pos += 1;
                        }
                        while pos < b.len() && b[pos].is_ascii_digit() {
                            pos += 1;
                        }
                    }
                    coeff = coeff.mul_ref(&F::parse(&s[start..pos])?);
                }
                other => return Err(format!("unexpected `{}`", other as char)),
            }
            skip(&mut pos);
            if pos < b.len() && b[pos] == b'*' {
                pos += 1;
                continue;
            }
            break;
        }
        if sign {
            coeff = -coeff;
        }
        total = total.try_add(&mono.scale(&coeff)).map_err(|e| e.to_string())?;
    }
    Ok(total)
}

impl<F: Field> fmt::Display for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<F: Field> fmt::Debug for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({})", self.to_text())
    }
}

impl<F: Field> Add for &Element<F> {
    type Output = Element<F>;
    fn add(self, o: &Element<F>) -> Element<F> {
        self.try_add(o).expect("algebra mismatch")
    }
}

impl<F: Field> Neg for &Element<F> {
    type Output = Element<F>;
    fn neg(self) -> Element<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> Sub for &Element<F> {
    type Output = Element<F>;
    fn sub(self, o: &Element<F>) -> Element<F> {
        self + &(-o)
    }
}

impl<F: Field> Mul for &Element<F> {
    type Output = Element<F>;
    fn mul(self, o: &Element<F>) -> Element<F> {
        self.try_mul(o).expect("algebra mismatch")
    }
}

/// `(u^m)^(-1) = mu(m) u^(-m)` with `mu(m) = prod_{j>i} q_ji^(m_j m_i)`.
pub fn monomial_inverse<F: Field>(alg: &Arc<Algebra<F>>, m: &[i64]) -> Element<F> {
    let neg: Vec<i64> = m.iter().map(|x| -x).collect();
    Element::monomial(alg, neg, alg.twist(m, m))
}

/// Checks the 2-cocycle identity of `tau` on random triples with entries in
/// `[-4, 4]`; `None` means all passed, otherwise the first failing triple.
pub fn cocycle_failure<F: Field>(
    alg: &Arc<Algebra<F>>,
    trials: usize,
    seed: u64,
    tau: impl Fn(&[i64], &[i64]) -> F,
) -> Option<[Vec<i64>; 3]> {
    let n = alg.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let add = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    for _ in 0..trials {
        let t: [Vec<i64>; 3] = std::array::from_fn(|_| (0..n).map(|_| rng.gen_range(-4..=4)).collect());
        let lhs = tau(&t[0], &t[1]).mul_ref(&tau(&add(&t[0], &t[1]), &t[2]));
        let rhs = tau(&t[1], &t[2]).mul_ref(&tau(&t[0], &add(&t[1], &t[2])));
        if lhs != rhs {
            return Some(t);
        }
    }
    None
}

/// The cocycle identity for the twist read off from actual multiplication.
pub fn cocycle_check<F: Field>(alg: &Arc<Algebra<F>>, trials: usize, seed: u64) -> bool {
    let tau = |a: &[i64], b: &[i64]| {
        let x = Element::monomial(alg, a.to_vec(), F::one());
        let y = Element::monomial(alg, b.to_vec(), F::one());
        let sum: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
        (&x * &y).coeff(&sum)
    };
    cocycle_failure(alg, trials, seed, tau).is_none()
}
