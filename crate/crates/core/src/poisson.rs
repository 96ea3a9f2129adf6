//! Quadratic Poisson brackets induced by a tensor `r`, and a small exact
//! polynomial engine for checking the Jacobi identity.
//!
//! The scalar bracket on generators `x_0, …, x_{N−1}` is
//! `{x_α, x_β} = Σ r^{γε}_{αβ} x_γ x_ε`. The matrix version uses `N·m²`
//! generators `x^j_{i,α}` (the `(i, j)` entry of the `α`-th `m × m` matrix):
//!
//! ```text
//! {x^{j₁}_{i₁,α}, x^{j₂}_{i₂,β}} = Σ r^{γε}_{αβ} x^{j₂}_{i₁,γ} x^{j₁}_{i₂,ε}
//! ```
//!
//! Generators commute, so both live in an ordinary polynomial ring.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{format_rational, Rational};
use crate::frobenius::LambdaSpec;
use crate::tensor::{check_skew, Tensor4};

/// Exponent vector, one slot per generator.
pub type Exponents = Vec<u32>;

/// Sparse polynomial with rational coefficients in a fixed number of
/// commuting variables. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

fn graded_lex(a: &Exponents, b: &Exponents) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The generator `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable {i} out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    /// `c · Π x_i^{e_i}`.
    pub fn monomial(exps: Exponents, c: Rational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c · x^exps` in place.
    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    /// Terms in graded-lexicographic order (highest degree first, then
    /// descending exponent vectors).
    pub fn terms(&self) -> Vec<(&Exponents, &Rational)> {
        let mut out: Vec<_> = self.terms.iter().collect();
        out.sort_by(|a, b| graded_lex(a.0, b.0));
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// `∂/∂x_k`.
    pub fn derivative(&self, k: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[k] -= 1;
            out.add_term(e2, c * Rational::from_integer(e[k].into()));
        }
        out
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "polynomials over different rings");
    }

    /// Human-readable form using `names` for the variables.
    pub fn display(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms().into_iter().enumerate() {
            let neg = *c < Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { names[i].clone() } else { format!("{}^{p}", names[i]) })
                .collect();
            if mono.is_empty() || !mag.is_one() {
                s.push_str(&format_rational(&mag));
                if !mono.is_empty() {
                    s.push('*');
                }
            }
            s.push_str(&mono.join("*"));
        }
        s
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms()
            .into_iter()
            .map(|(e, c)| TermJson {
                exps: e.clone(),
                coeff: format_rational(c),
            })
            .collect()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    #[allow(clippy::suspicious_arithmetic_impl)] // exponents add
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_vars(rhs);
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub exps: Exponents,
    pub coeff: String,
}

/// Brackets of all ordered generator pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticBracket {
    generators: usize,
    names: Vec<String>,
    table: Vec<Polynomial>,
}

impl QuadraticBracket {
    /// Builds a bracket from an explicit table of `{x_u, x_v}` for `u < v`;
    /// the rest is filled in by antisymmetry.
    pub fn from_upper(names: Vec<String>, upper: impl IntoIterator<Item = (usize, usize, Polynomial)>) -> Self {
        let g = names.len();
        let mut table = vec![Polynomial::zero(g); g * g];
        for (u, v, p) in upper {
            assert!(u < v && v < g, "upper-triangular pair expected, got ({u}, {v})");
            table[v * g + u] = -&p;
            table[u * g + v] = p;
        }
        QuadraticBracket {
            generators: g,
            names,
            table,
        }
    }

    fn zero(names: Vec<String>) -> Self {
        let g = names.len();
        QuadraticBracket {
            generators: g,
            names,
            table: vec![Polynomial::zero(g); g * g],
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `{x_u, x_v}`.
    pub fn get(&self, u: usize, v: usize) -> &Polynomial {
        &self.table[u * self.generators + v]
    }

    fn get_mut(&mut self, u: usize, v: usize) -> &mut Polynomial {
        &mut self.table[u * self.generators + v]
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(Polynomial::is_zero)
    }

    /// `{x_u, x_v} = −{x_v, x_u}` for every pair.
    pub fn is_antisymmetric(&self) -> bool {
        let g = self.generators;
        (0..g).all(|u| (u..g).all(|v| *self.get(u, v) == -self.get(v, u)))
    }

    /// `{x_u, p} = Σ_k {x_u, x_k} ∂p/∂x_k`.
    pub fn bracket_generator(&self, u: usize, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.generators);
        for k in 0..self.generators {
            let bk = self.get(u, k);
            if bk.is_zero() {
                continue;
            }
            let dp = p.derivative(k);
            if !dp.is_zero() {
                out = &out + &(bk * &dp);
            }
        }
        out
    }

    /// `{p, q} = Σ_{i,j} ∂p/∂x_i ∂q/∂x_j {x_i, x_j}`.
    pub fn bracket(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.generators);
        for i in 0..self.generators {
            let dp = p.derivative(i);
            if dp.is_zero() {
                continue;
            }
            out = &out + &(&dp * &self.bracket_generator(i, q));
        }
        out
    }

    pub fn to_json(&self) -> BracketFile {
        let g = self.generators;
        BracketFile {
            generators: g,
            names: self.names.clone(),
            table: (0..g)
                .flat_map(|u| (u + 1..g).map(move |v| (u, v)))
                .map(|(u, v)| BracketEntry {
                    u,
                    v,
                    poly: self.get(u, v).to_json(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketFile {
    pub generators: usize,
    pub names: Vec<String>,
    pub table: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketEntry {
    pub u: usize,
    pub v: usize,
    pub poly: Vec<TermJson>,
}

fn require_skew(r: &Tensor4) -> Result<()> {
    let v = check_skew(r);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::NotSkew { violations: v.len() })
    }
}

pub fn scalar_names(n: usize) -> Vec<String> {
    (0..n).map(|a| format!("x_{a}")).collect()
}

/// `{x_α, x_β} = Σ r^{γε}_{αβ} x_γ x_ε`.
pub fn scalar_bracket_from_r(r: &Tensor4) -> Result<QuadraticBracket> {
    require_skew(r)?;
    let n = r.n();
    let mut b = QuadraticBracket::zero(scalar_names(n));
    for (&[g, e, al, be], v) in r.iter() {
        let mut exps = vec![0; n];
        exps[g] += 1;
        exps[e] += 1;
        b.get_mut(al, be).add_term(exps, v.clone());
    }
    Ok(b)
}

/// Generator position of `x^j_{i,α}` for `m × m` matrices.
pub fn matrix_generator(alpha: usize, i: usize, j: usize, m: usize) -> usize {
    (alpha * m + i) * m + j
}

/// Bracket on the entries of `N` matrices of size `m × m`, with the
/// linear (`a`) part absent.
pub fn matrix_bracket_from_r(r: &Tensor4, m: usize) -> Result<QuadraticBracket> {
    if m == 0 {
        return Err(Error::InvalidBlockSize("matrix size must be at least 1".into()));
    }
    require_skew(r)?;
    let n = r.n();
    let g = n * m * m;
    let mut names = Vec::with_capacity(g);
    for a in 0..n {
        for i in 0..m {
            for j in 0..m {
                names.push(format!("x^{{{j}}}_{{{i},{a}}}"));
            }
        }
    }
    let mut b = QuadraticBracket::zero(names);
    for (&[ga, ep, al, be], v) in r.iter() {
        for i1 in 0..m {
            for j1 in 0..m {
                for i2 in 0..m {
                    for j2 in 0..m {
                        let mut exps = vec![0; g];
                        exps[matrix_generator(ga, i1, j2, m)] += 1;
                        exps[matrix_generator(ep, i2, j1, m)] += 1;
                        b.get_mut(matrix_generator(al, i1, j1, m), matrix_generator(be, i2, j2, m))
                            .add_term(exps, v.clone());
                    }
                }
            }
        }
    }
    Ok(b)
}

/// A generator triple whose Jacobi sum is a nonzero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: [usize; 3],
    pub residual: Polynomial,
}

/// `{x_u,{x_v,x_w}} + {x_v,{x_w,x_u}} + {x_w,{x_u,x_v}}` for all
/// `u ≤ v ≤ w`; returns the triples where it does not vanish.
pub fn jacobi_residual(b: &QuadraticBracket) -> Vec<JacobiViolation> {
    let g = b.generators();
    let mut out = Vec::new();
    for u in 0..g {
        for v in u..g {
            for w in v..g {
                let s = &(&b.bracket_generator(u, b.get(v, w)) + &b.bracket_generator(v, b.get(w, u)))
                    + &b.bracket_generator(w, b.get(u, v));
                if !s.is_zero() {
                    out.push(JacobiViolation {
                        triple: [u, v, w],
                        residual: s,
                    });
                }
            }
        }
    }
    out
}

/// One pair of the printed `N = 2M` bracket; `None` where its denominator
/// vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiteralEntry {
    pub u: usize,
    pub v: usize,
    pub poly: Option<Polynomial>,
}

/// The `N = 2M` scalar bracket evaluated term by term as printed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiteralBracket {
    pub generators: usize,
    pub entries: Vec<LiteralEntry>,
}

/// `{x_α, x_β} = (x_α − x_{α′})(x_β − x_{β′})(λ_{α′} − λ_{β′}) /
/// ((λ_α − λ_{β′})(λ_β − λ_{β′}))` with `|γ′ − γ| = M`, for `u < v`.
///
/// The first denominator factor vanishes when `β = α′`; those pairs come
/// back as `None` rather than failing the whole table.
pub fn scalar_bracket_closed_2m(lam: &LambdaSpec) -> Result<LiteralBracket> {
    let (n, m) = (lam.n(), lam.m());
    if n != 2 * m {
        return Err(Error::InvalidBlockSize(format!("needs N = 2M, got N = {n}, M = {m}")));
    }
    if !lam.is_distinct() {
        return Err(Error::InvalidLambda("parameters must be pairwise distinct".into()));
    }
    let prime = |g: usize| if g < m { g + m } else { g - m };
    let l = |i: usize| lam.value(i);
    let mut entries = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let (ap, bp) = (prime(a), prime(b));
            let den = (l(a) - l(bp)) * (l(b) - l(bp));
            let poly = (!den.is_zero()).then(|| {
                let xa = &Polynomial::var(n, a) - &Polynomial::var(n, ap);
                let xb = &Polynomial::var(n, b) - &Polynomial::var(n, bp);
                (&xa * &xb).scale(&((l(ap) - l(bp)) / den))
            });
            entries.push(LiteralEntry { u: a, v: b, poly });
        }
    }
    Ok(LiteralBracket { generators: n, entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairDiff {
    pub u: usize,
    pub v: usize,
    /// `None` when the printed formula is undefined at this pair.
    pub literal: Option<String>,
    pub derived: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketComparison {
    /// `"match"` iff every pair is defined and equal.
    pub verdict: &'static str,
    pub matching: Vec<[usize; 2]>,
    pub mismatching: Vec<PairDiff>,
    pub undefined: Vec<PairDiff>,
}

/// Compares the printed bracket against one derived from a tensor.
pub fn compare_brackets(literal: &LiteralBracket, derived: &QuadraticBracket) -> Result<BracketComparison> {
    if literal.generators != derived.generators() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {} generators",
            literal.generators,
            derived.generators()
        )));
    }
    let names = derived.names();
    let mut matching = Vec::new();
    let mut mismatching = Vec::new();
    let mut undefined = Vec::new();
    for e in &literal.entries {
        let d = derived.get(e.u, e.v);
        let diff = |lit: Option<&Polynomial>| PairDiff {
            u: e.u,
            v: e.v,
            literal: lit.map(|p| p.display(names)),
            derived: d.display(names),
        };
        match &e.poly {
            None => undefined.push(diff(None)),
            Some(p) if p == d => matching.push([e.u, e.v]),
            Some(p) => mismatching.push(diff(Some(p))),
        }
    }
    let verdict = if mismatching.is_empty() && undefined.is_empty() {
        "match"
    } else {
        "mismatch"
    };
    Ok(BracketComparison {
        verdict,
        matching,
        mismatching,
        undefined,
    })
}
