//! Line-oriented text formats for algebras and cyclic modules.
//!
//! Algebra files:
//!
//! ```text
//! # comments run to end of line
//! rank 2
//! scalars 1 0          # free rank d, torsion modulus m (0 = none)
//! q 1 2 = 1            # exponent of q_12: d integers, then `; t` for torsion
//! embed primes 2       # or `embed variables`
//! ```
//!
//! Unlisted pairs are zero and `q j i` is implied by `q i j`. Module files
//! hold either the algebra lines inline or `algebra <path>`, then one
//! `relation <element>` per line and optionally `weights <w1> ...`.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use crate::element::{Algebra, Element};
use crate::error::{Error, Result};
use crate::field::{parse_rational, Field, Rational};
use crate::module::CyclicModule;
use crate::pairing::{Presentation, ScalarGroup};
use crate::ratfunc::RatFunc;

/// Where the free scalar generators go.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Embedding {
    Primes(Vec<u64>),
    Variables,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraSpec {
    pub presentation: Presentation,
    pub embedding: Embedding,
}

/// An algebra over `Q` or `Q(t)`, whichever the file asks for.
#[derive(Clone, Debug)]
pub enum AnyAlgebra {
    Rational(Arc<Algebra<Rational>>),
    Function(Arc<Algebra<RatFunc>>),
}

const SMALL_PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn int(tok: &str, line: usize) -> Result<i64> {
    tok.parse().map_err(|_| Error::parse(line, format!("expected an integer, got `{tok}`")))
}

impl AlgebraSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut b = AlgebraBuilder::default();
        for (k, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if !line.is_empty() && !b.line(line, k + 1)? {
                return Err(Error::parse(k + 1, format!("unknown directive `{line}`")));
            }
        }
        b.finish()
    }

    pub fn from_algebra<F: Field>(alg: &Algebra<F>) -> Self {
        let primes: Option<Vec<u64>> = alg.labels().iter().map(|l| l.parse().ok()).collect();
        let embedding = match primes {
            Some(p) => Embedding::Primes(p),
            None => Embedding::Variables,
        };
        Self { presentation: alg.presentation().clone(), embedding }
    }

    pub fn build(&self) -> Result<AnyAlgebra> {
        Ok(match &self.embedding {
            Embedding::Primes(p) => AnyAlgebra::Rational(Arc::new(Algebra::with_primes(self.presentation.clone(), p)?)),
            Embedding::Variables => AnyAlgebra::Function(Arc::new(Algebra::with_variables(self.presentation.clone())?)),
        })
    }

    /// Canonical text; parses back to an equal value.
    pub fn to_text(&self) -> String {
        let p = &self.presentation;
        let g = p.group();
        let mut s = format!("rank {}\nscalars {} {}\n", p.rank(), g.free_rank, g.torsion);
        for i in 0..p.rank() {
            for j in i + 1..p.rank() {
                let v = p.entry(i, j);
                if !v.is_zero() {
                    let free: Vec<String> = v.free.iter().map(|x| x.to_string()).collect();
                    let _ = write!(s, "q {} {} = {}", i + 1, j + 1, free.join(" "));
                    if v.torsion != 0 {
                        let _ = write!(s, " ; {}", v.torsion);
                    }
                    s.push('\n');
                }
            }
        }
        match &self.embedding {
            Embedding::Primes(ps) => {
                let ps: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                let _ = writeln!(s, "embed primes {}", ps.join(" "));
            }
            Embedding::Variables => s.push_str("embed variables\n"),
        }
        s
    }
}

#[derive(Default)]
struct AlgebraBuilder {
    rank: Option<usize>,
    group: Option<(usize, u32)>,
    entries: Vec<(usize, usize, Vec<i64>, i64, usize)>,
    embedding: Option<Embedding>,
}

impl AlgebraBuilder {
    /// Consumes an algebra directive; `false` if the line is not one.
    fn line(&mut self, line: &str, k: usize) -> Result<bool> {
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("rank") => {
                let n = int(toks.next().ok_or_else(|| Error::parse(k, "rank needs a value"))?, k)?;
                if n < 0 {
                    return Err(Error::parse(k, "negative rank"));
                }
                self.rank = Some(n as usize);
            }
            Some("scalars") => {
                let d = int(toks.next().ok_or_else(|| Error::parse(k, "scalars needs d"))?, k)?;
                let m = toks.next().map_or(Ok(0), |t| int(t, k))?;
                if d < 0 || m < 0 {
                    return Err(Error::parse(k, "negative scalar group data"));
                }
                self.group = Some((d as usize, m as u32));
            }
            Some("q") => {
                let rest: Vec<&str> = toks.collect();
                let eq = rest.iter().position(|t| *t == "=").ok_or_else(|| Error::parse(k, "expected `q i j = ...`"))?;
                if eq != 2 {
                    return Err(Error::parse(k, "expected `q i j = ...`"));
                }
                let i = int(rest[0], k)?;
                let j = int(rest[1], k)?;
                if i < 1 || j < 1 {
                    return Err(Error::parse(k, "generators are numbered from 1"));
                }
                let vals = &rest[eq + 1..];
                let (free, tors) = match vals.iter().position(|t| *t == ";") {
                    Some(p) => (&vals[..p], vals.get(p + 1).map_or(Ok(0), |t| int(t, k))?),
                    None => (vals, 0),
                };
                let free: Vec<i64> = free.iter().flat_map(|t| t.split(',')).filter(|t| !t.is_empty()).map(|t| int(t, k)).collect::<Result<_>>()?;
                self.entries.push((i as usize - 1, j as usize - 1, free, tors, k));
            }
            Some("embed") => match toks.next() {
                Some("primes") => {
                    let ps = toks
                        .map(|t| t.parse::<u64>().map_err(|_| Error::parse(k, format!("bad prime `{t}`"))))
                        .collect::<Result<Vec<_>>>()?;
                    self.embedding = Some(Embedding::Primes(ps));
                }
                Some("variables") => self.embedding = Some(Embedding::Variables),
                _ => return Err(Error::parse(k, "expected `embed primes ...` or `embed variables`")),
            },
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn finish(self) -> Result<AlgebraSpec> {
        let n = self.rank.ok_or_else(|| Error::parse(0, "missing `rank`"))?;
        let (d, m) = self.group.unwrap_or((1, 0));
        let group = ScalarGroup::new(d, m)?;
        let mut pairing = vec![vec![group.zero(); n]; n];
        let mut set = vec![vec![false; n]; n];
        for (i, j, free, t, k) in self.entries {
            if i >= n || j >= n {
                return Err(Error::parse(k, format!("generator index out of range 1..{n}")));
            }
            let v = group.value(free, t).map_err(|e| Error::parse(k, e.to_string()))?;
            if i == j {
                if !v.is_zero() {
                    return Err(Error::parse(k, "pairing must vanish on the diagonal"));
                }
                continue;
            }
            let neg = group.neg(&v);
            if (set[i][j] && pairing[i][j] != v) || (set[j][i] && pairing[j][i] != neg) {
                return Err(Error::parse(k, format!("pairing is not alternating at ({}, {})", i + 1, j + 1)));
            }
            pairing[i][j] = v;
            pairing[j][i] = neg;
            set[i][j] = true;
            set[j][i] = true;
        }
        let presentation = Presentation::new(group, pairing)?;
        let embedding = self.embedding.unwrap_or_else(|| Embedding::Primes(SMALL_PRIMES.iter().take(d).copied().collect()));
        Ok(AlgebraSpec { presentation, embedding })
    }
}

/// A cyclic module file, relations kept as text until the algebra is built.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleSpec {
    pub algebra: AlgebraSpec,
    pub relations: Vec<String>,
    pub weights: Option<Vec<Rational>>,
}

impl ModuleSpec {
    /// `base` resolves `algebra <path>` lines.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Self> {
        let mut b = AlgebraBuilder::default();
        let mut external: Option<AlgebraSpec> = None;
        let mut relations = Vec::new();
        let mut weights = None;
        for (k, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            if let Some(r) = line.strip_prefix("relation") {
                let r = r.trim();
                if r.is_empty() {
                    return Err(Error::parse(k + 1, "empty relation"));
                }
                relations.push(r.to_string());
            } else if let Some(w) = line.strip_prefix("weights") {
                let ws = w.split_whitespace().map(|t| parse_rational(t).map_err(|e| Error::parse(k + 1, e))).collect::<Result<Vec<_>>>()?;
                weights = Some(ws);
            } else if let Some(p) = line.strip_prefix("algebra") {
                let p = p.trim();
                let path = base.map_or_else(|| Path::new(p).to_path_buf(), |b| b.join(p));
                let text = std::fs::read_to_string(&path).map_err(|e| Error::parse(k + 1, format!("{}: {e}", path.display())))?;
                external = Some(AlgebraSpec::parse(&text)?);
            } else if !b.line(line, k + 1)? {
                return Err(Error::parse(k + 1, format!("unknown directive `{line}`")));
            }
        }
        let algebra = match external {
            Some(a) => a,
            None => b.finish()?,
        };
        Ok(Self { algebra, relations, weights })
    }

    /// Canonical text with the algebra inline.
    pub fn to_text(&self) -> String {
        let mut s = self.algebra.to_text();
        for r in &self.relations {
            let _ = writeln!(s, "relation {r}");
        }
        if let Some(w) = &self.weights {
            let ws: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "weights {}", ws.join(" "));
        }
        s
    }

    pub fn from_module<F: Field>(m: &CyclicModule<F>) -> Self {
        Self {
            algebra: AlgebraSpec::from_algebra(m.algebra()),
            relations: m.relations().iter().map(Element::to_text).collect(),
            weights: None,
        }
    }

    /// Relations parsed over an already built algebra; zero relations are
    /// rejected.
    pub fn module<F: Field>(&self, alg: &Arc<Algebra<F>>) -> Result<CyclicModule<F>> {
        let rels = self.relations.iter().map(|r| Element::parse(alg, r)).collect::<Result<Vec<_>>>()?;
        CyclicModule::new(alg, rels)
    }
}

/// Parses `a,b,c` (rationals) into a character.
pub fn parse_character(s: &str) -> Result<Vec<Rational>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    s.split(',').map(|t| parse_rational(t.trim()).map_err(|e| Error::parse(0, e))).collect()
}

/// Parses `1,0;0,1` into integer rows.
pub fn parse_int_rows(s: &str) -> Result<Vec<Vec<i64>>> {
    s.split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| r.trim().trim_start_matches('(').trim_end_matches(')').split(',').map(|t| int(t.trim(), 0)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q_PLANE: &str = "# u2 u1 = 2 u1 u2\nrank 2\nscalars 1 0\nq 1 2 = -1\nembed primes 2\n";

    #[test]
    fn algebra_round_trip() {
        let a = AlgebraSpec::parse(Q_PLANE).unwrap();
        assert_eq!(a.presentation.entry(1, 0).free, vec![1]);
        assert_eq!(AlgebraSpec::parse(&a.to_text()).unwrap(), a);
        let t = "rank 3\nscalars 2 2\nq 1 2 = 1 0 ; 1\nq 2 3 = 0,1\nembed variables\n";
        let a = AlgebraSpec::parse(t).unwrap();
        assert_eq!(a.to_text(), "rank 3\nscalars 2 2\nq 1 2 = 1 0 ; 1\nq 2 3 = 0 1\nembed variables\n");
        assert!(matches!(a.build().unwrap(), AnyAlgebra::Function(_)));
    }

    #[test]
    fn algebra_errors_carry_lines() {
        let bad = "rank 2\nq 1 2 = 1\nq 2 1 = 1\n";
        assert!(matches!(AlgebraSpec::parse(bad), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(AlgebraSpec::parse("rank 2\nq 1 1 = 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(AlgebraSpec::parse("rank 2\nfoo\n"), Err(Error::Parse { line: 2, .. })));
        assert!(AlgebraSpec::parse("scalars 1 0\n").is_err());
        assert!(matches!(AlgebraSpec::parse("rank 2\nq 1 3 = 1\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn module_round_trip() {
        let text = format!("{Q_PLANE}relation 1 + u1 + u2\nweights 0\n");
        let m = ModuleSpec::parse(&text, None).unwrap();
        assert_eq!(m.relations, vec!["1 + u1 + u2".to_string()]);
        assert_eq!(ModuleSpec::parse(&m.to_text(), None).unwrap(), m);
        let AnyAlgebra::Rational(alg) = m.algebra.build().unwrap() else { panic!() };
        let cm = m.module(&alg).unwrap();
        assert_eq!(ModuleSpec::from_module(&cm).relations, vec!["1 + u2 + u1".to_string()]);
        let zero = ModuleSpec::parse(&format!("{Q_PLANE}relation 0\n"), None).unwrap();
        assert!(zero.module(&alg).is_err());
    }

    #[test]
    fn characters_and_rows() {
        assert_eq!(parse_character("(1, 2/3)").unwrap(), vec![Rational::from_integer(1.into()), Rational::new(2.into(), 3.into())]);
        assert_eq!(parse_int_rows("1,0;0,-1").unwrap(), vec![vec![1, 0], vec![0, -1]]);
    }
}
