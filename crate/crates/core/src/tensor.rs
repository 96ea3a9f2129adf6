//! Four-index coefficient tensors `r^{ab}_{cd}` and the checks one runs on
//! a candidate solution: skew-symmetry, the component Yang-Baxter residual,
//! change of basis, and the transpose dual.
//!
//! Indices are 0-based. An entry key `[a, b, c, d]` holds `r^{ab}_{cd}`: the
//! first two positions are the upper (output) indices, the last two the
//! lower (input) indices.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{format_rational, mat_inverse, parse_rational, RatMatrix, Rational};

/// Index quadruple `[a, b, c, d]` for `r^{ab}_{cd}`.
pub type Quad = [usize; 4];

/// Index sextuple `[λ, μ, ν, α, β, τ]` of a residual component.
pub type Sext = [usize; 6];

/// Sparse tensor on an `n`-dimensional space. Absent keys are exact zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor4 {
    n: usize,
    entries: BTreeMap<Quad, Rational>,
}

impl Tensor4 {
    pub fn zero(n: usize) -> Self {
        Tensor4 {
            n,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a tensor from `(key, value)` pairs. Zero values are dropped;
    /// repeated keys are rejected.
    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = (Quad, Rational)>) -> Result<Self> {
        let mut t = Tensor4::zero(n);
        for (k, v) in entries {
            t.check_bounds(k)?;
            if t.entries.contains_key(&k) {
                return Err(Error::Parse(format!("duplicate entry {k:?}")));
            }
            if !v.is_zero() {
                t.entries.insert(k, v);
            }
        }
        Ok(t)
    }

    fn check_bounds(&self, k: Quad) -> Result<()> {
        if k.iter().any(|&i| i >= self.n) {
            Err(Error::IndexOutOfRange(format!("{k:?} with n = {}", self.n)))
        } else {
            Ok(())
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `r^{ab}_{cd}`; zero when absent.
    pub fn get(&self, k: Quad) -> Rational {
        self.entries.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Overwrites an entry. Setting zero removes it.
    ///
    /// # Panics
    ///
    /// Panics on an out-of-range index.
    pub fn set(&mut self, k: Quad, v: Rational) {
        self.check_bounds(k).expect("tensor index in range");
        if v.is_zero() {
            self.entries.remove(&k);
        } else {
            self.entries.insert(k, v);
        }
    }

    /// Adds `v` to an entry, removing it if the sum cancels.
    pub fn add_to(&mut self, k: Quad, v: &Rational) {
        if v.is_zero() {
            return;
        }
        self.check_bounds(k).expect("tensor index in range");
        let slot = self.entries.entry(k).or_insert_with(Rational::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&k);
        }
    }

    /// Nonzero entries in lexicographic key order.
    pub fn iter(&self) -> impl Iterator<Item = (&Quad, &Rational)> {
        self.entries.iter()
    }

    pub fn neg(&self) -> Self {
        Tensor4 {
            n: self.n,
            entries: self.entries.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }

    pub fn to_json(&self) -> TensorFile {
        TensorFile {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|(k, v)| TensorEntry {
                    upper: [k[0], k[1]],
                    lower: [k[2], k[3]],
                    value: format_rational(v),
                })
                .collect(),
        }
    }

    pub fn from_json(file: &TensorFile) -> Result<Self> {
        let entries = file
            .entries
            .iter()
            .map(|e| {
                parse_rational(&e.value).map(|v| ([e.upper[0], e.upper[1], e.lower[0], e.lower[1]], v))
            })
            .collect::<Result<Vec<_>>>()?;
        Tensor4::from_entries(file.n, entries)
    }

    /// Canonical file text: one entry per line, sorted, newline-terminated.
    pub fn to_json_string(&self) -> String {
        let mut s = format!("{{\n  \"n\": {},\n  \"entries\": [", self.n);
        for (k, (&[a, b, c, d], v)) in self.entries.iter().enumerate() {
            s.push_str(if k == 0 { "\n" } else { ",\n" });
            s.push_str(&format!(
                "    {{ \"upper\": [{a}, {b}], \"lower\": [{c}, {d}], \"value\": \"{}\" }}",
                format_rational(v)
            ));
        }
        if !self.entries.is_empty() {
            s.push_str("\n  ");
        }
        s.push_str("]\n}\n");
        s
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: TensorFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Tensor4::from_json(&file)
    }
}

/// On-disk tensor layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub n: usize,
    pub entries: Vec<TensorEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorEntry {
    pub upper: [usize; 2],
    pub lower: [usize; 2],
    pub value: String,
}

/// Where `r^{γε}_{αβ} + r^{εγ}_{βα}` fails to vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewViolation {
    pub index: Quad,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
}

/// A nonzero component of the Yang-Baxter residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualViolation {
    /// `[λ, μ, ν, α, β, τ]`
    pub index: Sext,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
}

pub(crate) fn ser_rational<S: serde::Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(v))
}

/// Combined verdict of [`check_skew`] and [`aybe_residual`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AybeReport {
    pub skew_violations: Vec<SkewViolation>,
    pub residual_violations: Vec<ResidualViolation>,
    pub passed: bool,
}

impl AybeReport {
    pub fn new(skew_violations: Vec<SkewViolation>, residual_violations: Vec<ResidualViolation>) -> Self {
        let passed = skew_violations.is_empty() && residual_violations.is_empty();
        AybeReport {
            skew_violations,
            residual_violations,
            passed,
        }
    }
}

/// Runs both checks.
pub fn verify(r: &Tensor4) -> AybeReport {
    AybeReport::new(check_skew(r), aybe_residual(r))
}

/// Every quadruple where `r^{γε}_{αβ} + r^{εγ}_{βα} ≠ 0`, sorted.
///
/// Both members of a violating pair are reported.
pub fn check_skew(r: &Tensor4) -> Vec<SkewViolation> {
    let mut out = BTreeMap::new();
    for (&[a, b, c, d], v) in r.iter() {
        let partner = [b, a, d, c];
        let sum = v + r.get(partner);
        if !sum.is_zero() {
            out.insert([a, b, c, d], sum.clone());
            out.insert(partner, sum);
        }
    }
    out.into_iter()
        .map(|(index, value)| SkewViolation { index, value })
        .collect()
}

/// Nonzero components of
///
/// ```text
/// Σ_σ r^{λσ}_{αβ} r^{μν}_{στ} + r^{μσ}_{βτ} r^{νλ}_{σα} + r^{νσ}_{τα} r^{λμ}_{σβ}
/// ```
///
/// over all `(λ, μ, ν, α, β, τ)`, sorted lexicographically.
///
/// Each term is a product of two entries sharing `σ` as the second upper
/// index of the first factor and the first lower index of the second, so
/// only stored pairs can contribute.
pub fn aybe_residual(r: &Tensor4) -> Vec<ResidualViolation> {
    let n = r.n();
    let mut by_first_lower: Vec<Vec<(Quad, &Rational)>> = vec![Vec::new(); n];
    for (k, v) in r.iter() {
        by_first_lower[k[2]].push((*k, v));
    }

    let mut acc: BTreeMap<Sext, Rational> = BTreeMap::new();
    let mut add = |key: Sext, v: Rational| {
        let slot = acc.entry(key).or_insert_with(Rational::zero);
        *slot += v;
    };
    for (&[a, s, c, d], v1) in r.iter() {
        for &([p, q, _, t], v2) in &by_first_lower[s] {
            let prod = v1 * v2;
            // r^{λσ}_{αβ} r^{μν}_{στ}: λ=a α=c β=d, μ=p ν=q τ=t
            add([a, p, q, c, d, t], prod.clone());
            // r^{μσ}_{βτ} r^{νλ}_{σα}: μ=a β=c τ=d, ν=p λ=q α=t
            add([q, a, p, t, c, d], prod.clone());
            // r^{νσ}_{τα} r^{λμ}_{σβ}: ν=a τ=c α=d, λ=p μ=q β=t
            add([p, q, a, d, t, c], prod);
        }
    }
    acc.into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(index, value)| ResidualViolation { index, value })
        .collect()
}

/// Change of basis `r′^{ab}_{cd} = g^a_p g^b_q r^{pq}_{rs} (g⁻¹)^r_c (g⁻¹)^s_d`.
pub fn gl_transform(r: &Tensor4, g: &RatMatrix) -> Result<Tensor4> {
    let n = r.n();
    if g.rows() != n || g.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "change of basis is {}x{}, tensor has n = {n}",
            g.rows(),
            g.cols()
        )));
    }
    let ginv = mat_inverse(g)?;

    // Contract one slot at a time on a dense n^4 grid.
    let idx = |k: Quad| ((k[0] * n + k[1]) * n + k[2]) * n + k[3];
    let mut cur = vec![Rational::zero(); n.pow(4)];
    for (k, v) in r.iter() {
        cur[idx(*k)] = v.clone();
    }
    for slot in 0..4 {
        let mut next = vec![Rational::zero(); n.pow(4)];
        for (flat, v) in cur.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let key = [flat / (n * n * n), flat / (n * n) % n, flat / n % n, flat % n];
            for x in 0..n {
                // upper slots take g[x][old], lower slots take ginv[old][x]
                let coeff = if slot < 2 {
                    &g[(x, key[slot])]
                } else {
                    &ginv[(key[slot], x)]
                };
                if coeff.is_zero() {
                    continue;
                }
                let mut out = key;
                out[slot] = x;
                next[idx(out)] += v * coeff;
            }
        }
        cur = next;
    }

    let mut out = Tensor4::zero(n);
    for (flat, v) in cur.into_iter().enumerate() {
        if !v.is_zero() {
            out.entries
                .insert([flat / (n * n * n), flat / (n * n) % n, flat / n % n, flat % n], v);
        }
    }
    Ok(out)
}

/// `r̂^{ab}_{cd} = r^{cd}_{ab}`.
pub fn transpose_dual(r: &Tensor4) -> Tensor4 {
    Tensor4 {
        n: r.n,
        entries: r
            .entries
            .iter()
            .map(|(&[a, b, c, d], v)| ([c, d, a, b], v.clone()))
            .collect(),
    }
}
