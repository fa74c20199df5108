//! Command bodies. Each returns the full report text and an exit code, so
//! output is produced in one piece and is byte-identical across runs.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qtorus::delta::{
    delta_cyclic, delta_principal, exclude_certificate, fan_dimension, strongly_holonomic_check, verify_exclusion,
    DeltaApprox, HolonomicFailure, HolonomicVerdict,
};
use qtorus::element::Algebra;
use qtorus::format::{parse_character, parse_int_rows, AlgebraSpec, AnyAlgebra, ModuleSpec};
use qtorus::laurent::LaurentPoly;
use qtorus::lattice::Sublattice;
use qtorus::module::{gk_dimension, tensor_module, CyclicModule, SearchBounds};
use qtorus::pairing::{alternating_block_decomposition, commuting_monomials};
use qtorus::skew::{
    construct_simple_module, example_generator, newton_certificate, simplicity_probe, skew_ring_scalars,
    torsion_free_check, SkewLaurent,
};
use qtorus::{Field, Rational};

pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }

    fn inconclusive(text: String) -> Self {
        Self { text, code: 1 }
    }
}

#[derive(Clone, Copy)]
pub struct Searches {
    pub degree: usize,
    pub coeff: i64,
}

impl From<Searches> for SearchBounds {
    fn from(s: Searches) -> Self {
        SearchBounds { degree: s.degree, coeff: s.coeff }
    }
}

#[derive(Clone, Copy)]
pub enum AlgebraQuery {
    Check,
    Center,
    Simple,
    DerivedUnits,
}

type Res<T> = std::result::Result<T, String>;

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn err(path: &Path) -> impl Fn(qtorus::Error) -> String + '_ {
    move |e| format!("{}: {e}", path.display())
}

fn load_algebra(path: &Path) -> Res<AlgebraSpec> {
    AlgebraSpec::parse(&read(path)?).map_err(err(path))
}

fn load_module(path: &Path) -> Res<ModuleSpec> {
    ModuleSpec::parse(&read(path)?, path.parent()).map_err(err(path))
}

fn vec_text(v: &[i64]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn rows_text(rows: &[Vec<i64>]) -> String {
    format!("[{}]", rows.iter().map(|r| vec_text(r)).collect::<Vec<_>>().join(";"))
}

fn lattice_text(l: &Sublattice) -> String {
    rows_text(l.basis())
}

fn rat_text(v: &[Rational]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// Runs `body` over whichever coefficient field the module's algebra uses.
macro_rules! with_module {
    ($spec:expr, $path:expr, |$m:ident| $body:expr) => {
        match $spec.algebra.build().map_err(err($path))? {
            AnyAlgebra::Rational(alg) => {
                let $m = $spec.module(&alg).map_err(err($path))?;
                $body
            }
            AnyAlgebra::Function(alg) => {
                let $m = $spec.module(&alg).map_err(err($path))?;
                $body
            }
        }
    };
}

pub fn algebra(path: &Path, q: AlgebraQuery) -> Res<Outcome> {
    let spec = load_algebra(path)?;
    // Building checks the embedding as well as the pairing.
    spec.build().map_err(err(path))?;
    let p = &spec.presentation;
    let g = p.group();
    let mut s = String::new();
    match q {
        AlgebraQuery::Check => {
            let _ = writeln!(s, "valid: rank {} scalars {} {}", p.rank(), g.free_rank, g.torsion);
            s.push_str(&spec.to_text());
        }
        AlgebraQuery::Center => {
            let r = p.radical();
            let _ = writeln!(s, "center rank: {}", r.rank());
            let _ = writeln!(s, "radical basis: {}", lattice_text(&r));
        }
        AlgebraQuery::Simple => {
            let r = p.radical();
            let _ = writeln!(s, "simple: {}", r.is_trivial());
            let _ = writeln!(s, "radical basis: {}", lattice_text(&r));
        }
        AlgebraQuery::DerivedUnits => {
            let h = p.derived_unit_subgroup();
            let _ = writeln!(s, "derived units: {h}");
            let inv: Vec<String> = h.free_invariants().iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "free invariants: [{}]", inv.join(","));
        }
    }
    Ok(Outcome::ok(s))
}

fn fan_report(s: &mut String, d: &DeltaApprox) {
    let dim = |f| fan_dimension(f).map_or("empty".to_string(), |x| x.to_string());
    let _ = writeln!(s, "exact: {}", d.exact);
    if d.zero_module {
        s.push_str("zero module\n");
    }
    if d.exact {
        let _ = writeln!(s, "dimension: {}", dim(&d.outer));
        s.push_str(&d.outer.to_text());
    } else {
        let _ = writeln!(s, "inner dimension: {}", dim(&d.inner));
        s.push_str("inner:\n");
        s.push_str(&d.inner.to_text());
        let _ = writeln!(s, "outer dimension: {}", dim(&d.outer));
        s.push_str("outer:\n");
        s.push_str(&d.outer.to_text());
    }
}

fn delta_for<F: Field>(m: &CyclicModule<F>, principal: bool, certify: Option<&[Rational]>, bound: usize) -> Res<Outcome> {
    let mut s = String::new();
    if let Some(phi) = certify {
        if phi.len() != m.rank() {
            return Err(format!("character has {} entries, algebra rank is {}", phi.len(), m.rank()));
        }
        let _ = writeln!(s, "phi: {}", rat_text(phi));
        let _ = writeln!(s, "bound: {bound}");
        return Ok(match exclude_certificate(m, phi, bound) {
            Some(w) => {
                let _ = writeln!(s, "excluded, witness={}", w.to_text());
                let _ = writeln!(s, "initial form: {}", w.initial_form(phi).map_err(|e| e.to_string())?.to_text());
                let _ = writeln!(s, "verified: {}", verify_exclusion(m, phi, &w, bound));
                Outcome::ok(s)
            }
            None => {
                s.push_str("none found\n");
                Outcome::inconclusive(s)
            }
        });
    }
    let d = if principal { delta_principal(m).map_err(|e| e.to_string())? } else { delta_cyclic(m) };
    fan_report(&mut s, &d);
    Ok(if d.exact { Outcome::ok(s) } else { Outcome::inconclusive(s) })
}

pub fn delta(path: &Path, principal: bool, certify: Option<&str>, bound: usize) -> Res<Outcome> {
    let spec = load_module(path)?;
    let phi = certify.map(parse_character).transpose().map_err(|e| format!("--certify: {e}"))?;
    with_module!(spec, path, |m| delta_for(&m, principal, phi.as_deref(), bound))
}

fn gk_for<F: Field>(m: &CyclicModule<F>, b: Searches) -> Res<Outcome> {
    let r = gk_dimension(m, b.into());
    let mut s = String::new();
    let _ = writeln!(s, "route: {}", r.route);
    if let Some(v) = r.value() {
        let _ = writeln!(s, "gk: exact {v}");
    } else {
        let _ = writeln!(s, "gk: bracket [{}, {}]", r.lower, r.upper);
        let _ = writeln!(s, "search bounds: degree {} coeff {}", b.degree, b.coeff);
    }
    if let Some(w) = &r.zero_witness {
        let _ = writeln!(s, "monomial in ideal: {}", w.to_text());
    }
    if let Some(l) = &r.lower_evidence {
        let _ = writeln!(s, "no torsion found over: {}", lattice_text(l));
    }
    for (l, w) in &r.torsion_witnesses {
        let _ = writeln!(s, "torsion over {}: {}", lattice_text(l), w.to_text());
    }
    if let Some(f) = &r.upper_fan {
        s.push_str("fan:\n");
        s.push_str(&f.to_text());
    }
    Ok(if r.exact { Outcome::ok(s) } else { Outcome::inconclusive(s) })
}

pub fn gk(path: &Path, b: Searches) -> Res<Outcome> {
    let spec = load_module(path)?;
    with_module!(spec, path, |m| gk_for(&m, b))
}

fn tensor_for<F: Field>(a: &Arc<Algebra<F>>, b: &Arc<Algebra<F>>, s1: &ModuleSpec, s2: &ModuleSpec) -> Res<Outcome> {
    let m1 = s1.module(a).map_err(|e| e.to_string())?;
    let m2 = s2.module(b).map_err(|e| e.to_string())?;
    let t = tensor_module(&m1, &m2).map_err(|e| e.to_string())?;
    Ok(Outcome::ok(ModuleSpec::from_module(&t).to_text()))
}

pub fn tensor(first: &Path, second: &Path) -> Res<Outcome> {
    let s1 = load_module(first)?;
    let s2 = load_module(second)?;
    match (s1.algebra.build().map_err(err(first))?, s2.algebra.build().map_err(err(second))?) {
        (AnyAlgebra::Rational(a), AnyAlgebra::Rational(b)) => tensor_for(&a, &b, &s1, &s2),
        (AnyAlgebra::Function(a), AnyAlgebra::Function(b)) => tensor_for(&a, &b, &s1, &s2),
        _ => Err("modules are over different scalar fields".into()),
    }
}

pub fn decompose(path: &Path) -> Res<Outcome> {
    let spec = load_algebra(path)?;
    let d = alternating_block_decomposition(&spec.presentation).map_err(err(path))?;
    let mut s = String::new();
    let _ = writeln!(s, "blocks: {}", d.blocks.len());
    for (i, b) in d.blocks.iter().enumerate() {
        let _ = writeln!(s, "block {}: v={} w={} divisor={}", i + 1, vec_text(&b.v), vec_text(&b.w), b.divisor);
    }
    let index = d.lattice.index().map_or("infinite".to_string(), |x| x.to_string());
    let _ = writeln!(s, "index: {index}");
    Ok(Outcome::ok(s))
}

pub fn commuting(path: &Path, c: &str, ext: &str, s_max: i64) -> Res<Outcome> {
    let spec = load_algebra(path)?;
    let p = &spec.presentation;
    let c_rows = parse_int_rows(c).map_err(|e| format!("--C: {e}"))?;
    let ext_rows = parse_int_rows(ext).map_err(|e| format!("--ext: {e}"))?;
    if let Some(r) = c_rows.iter().chain(&ext_rows).find(|r| r.len() != p.rank()) {
        return Err(format!("vector {} has length {}, algebra rank is {}", vec_text(r), r.len(), p.rank()));
    }
    let c_lat = Sublattice::new(p.rank(), &c_rows);
    let mut s = String::new();
    let _ = writeln!(s, "C: {}", lattice_text(&c_lat));
    let _ = writeln!(s, "ext: {}", rows_text(&ext_rows));
    Ok(match commuting_monomials(p, &c_lat, &ext_rows, s_max).map_err(err(path))? {
        Some(r) => {
            let _ = writeln!(s, "s: {}", r.s);
            for (k, (mu, co)) in r.mu.iter().zip(&r.coords).enumerate() {
                let moved: Vec<i64> = mu.iter().zip(&ext_rows[k]).map(|(a, e)| a + r.s * e).collect();
                let _ = writeln!(s, "mu {}: {} coords {} monomial {}", k + 1, vec_text(mu), vec_text(co), vec_text(&moved));
            }
            Outcome::ok(s)
        }
        None => {
            let _ = writeln!(s, "none found for s <= {s_max}");
            Outcome::inconclusive(s)
        }
    })
}

/// `terms` monomials with exponents in `[-1, 1]` and coefficients in
/// `[-3, 3] \ {0}`.
fn random_beta(rng: &mut ChaCha8Rng, t: usize) -> LaurentPoly {
    loop {
        let terms = rng.gen_range(1..=3);
        let p = LaurentPoly::from_terms(
            t,
            (0..terms).map(|_| {
                let e: Vec<i64> = (0..t).map(|_| rng.gen_range(-1..=1)).collect();
                let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
                (e, Rational::from_integer(c.into()))
            }),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn simple_module(path: &Path, gamma: &str, betas: &[String], samples: usize, bound: usize, seed: u64) -> Res<Outcome> {
    let spec = load_algebra(path)?;
    let alg = match spec.build().map_err(err(path))? {
        AnyAlgebra::Rational(a) => a,
        AnyAlgebra::Function(_) => return Err("the companion construction needs an algebra over Q (embed primes)".into()),
    };
    let lambda = skew_ring_scalars(&alg).map_err(err(path))?;
    let t = lambda.len();
    let g = SkewLaurent::parse(&lambda, gamma).map_err(|e| format!("--gamma: {e}"))?;
    let m = construct_simple_module(&alg, &g).map_err(|e| e.to_string())?;
    let probes: Vec<LaurentPoly> = if betas.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).map(|_| random_beta(&mut rng, t)).collect()
    } else {
        betas.iter().map(|b| LaurentPoly::parse(t, b).map_err(|e| format!("--beta: {e}"))).collect::<Res<_>>()?
    };
    let report = simplicity_probe(&m, &probes, bound);
    let mut s = m.dump();
    let _ = writeln!(s, "torsion free: {}", torsion_free_check(&m));
    let _ = writeln!(s, "annihilated by gamma: {}", m.check_annihilation());
    let _ = writeln!(s, "cyclic: {}", m.check_cyclic());
    match newton_certificate(&g, 2) {
        Some(phi) => {
            let _ = writeln!(s, "irreducible: newton polygon at weight {}", vec_text(&phi));
        }
        None => s.push_str("irreducible: no certificate\n"),
    }
    if betas.is_empty() {
        let _ = writeln!(s, "probe seed: {seed}");
    }
    let _ = writeln!(s, "probe bound: {bound}");
    for (b, pass) in &report.results {
        let _ = writeln!(s, "probe {b}: {}", if *pass { "pass" } else { "fail" });
    }
    let passed = report.results.iter().filter(|r| r.1).count();
    let _ = writeln!(s, "probes passed: {passed}/{}", report.results.len());
    Ok(if report.all_pass() { Outcome::ok(s) } else { Outcome::inconclusive(s) })
}

fn holonomy_for<F: Field>(m: &CyclicModule<F>, b: Searches) -> Res<Outcome> {
    let v = strongly_holonomic_check(m, b.into()).map_err(|e| e.to_string())?;
    let mut s = String::new();
    Ok(match v {
        HolonomicVerdict::CertifiedFailure(HolonomicFailure::Dimension { gk, half_rank }) => {
            let _ = writeln!(s, "not strongly holonomic: gk {gk} != {half_rank}");
            Outcome::ok(s)
        }
        HolonomicVerdict::CertifiedFailure(HolonomicFailure::Torsion { sublattice, witness }) => {
            let _ = writeln!(s, "not strongly holonomic: torsion over isotropic {}", lattice_text(&sublattice));
            let _ = writeln!(s, "witness: {}", witness.to_text());
            Outcome::ok(s)
        }
        HolonomicVerdict::ConsistentUpToBounds => {
            let _ = writeln!(s, "consistent up to bounds: degree {} coeff {}", b.degree, b.coeff);
            Outcome::inconclusive(s)
        }
    })
}

pub fn holonomy(path: &Path, b: Searches) -> Res<Outcome> {
    let spec = load_module(path)?;
    with_module!(spec, path, |m| holonomy_for(&m, b))
}

pub fn example(t: usize, primes: &str, k: usize, seed: u64) -> Res<Outcome> {
    let ps: Vec<u64> = primes
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| format!("--primes: `{p}` is not a positive integer")))
        .collect::<Res<_>>()?;
    let ex = example_generator(t, &ps, k, seed).map_err(|e| e.to_string())?;
    let mut s = format!("# example t={t} primes={primes} k={k} seed={seed}\n# gamma = {}\n", ex.gamma);
    s.push_str(&AlgebraSpec::from_algebra(&ex.algebra).to_text());
    Ok(Outcome::ok(s))
}
