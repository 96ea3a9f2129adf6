//! Explicit formulas for the tensors built by [`crate::frobenius`], and a
//! comparator to check the two routes against each other.
//!
//! Three families are covered:
//!
//! * [`r_closed_m1`]: `M = 1`, pairwise-distinct `λ`.
//! * [`r_closed_block`]: `λ` constant on blocks and distinct across them.
//! * [`r_closed_distinct`]: pairwise-distinct `λ`, any proper divisor `M`.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::Rational;
use crate::frobenius::{bar_index, LambdaSpec};
use crate::tensor::{ser_rational, Quad, Tensor4};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedFormVariant {
    M1,
    Block,
    Distinct,
}

impl fmt::Display for ClosedFormVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosedFormVariant::M1 => "m1",
            ClosedFormVariant::Block => "block",
            ClosedFormVariant::Distinct => "distinct",
        })
    }
}

impl FromStr for ClosedFormVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m1" => Ok(ClosedFormVariant::M1),
            "block" => Ok(ClosedFormVariant::Block),
            "distinct" => Ok(ClosedFormVariant::Distinct),
            other => Err(Error::Parse(format!("unknown variant {other:?}"))),
        }
    }
}

/// Dispatches to the formula for `variant`.
pub fn r_closed(variant: ClosedFormVariant, lam: &LambdaSpec) -> Result<Tensor4> {
    match variant {
        ClosedFormVariant::M1 => r_closed_m1(lam),
        ClosedFormVariant::Block => r_closed_block(lam),
        ClosedFormVariant::Distinct => r_closed_distinct(lam),
    }
}

fn require_distinct(lam: &LambdaSpec) -> Result<()> {
    if lam.is_distinct() {
        Ok(())
    } else {
        Err(Error::InvalidLambda(
            "parameters must be pairwise distinct".into(),
        ))
    }
}

/// For `α ≠ β`, with `v = 1/(λ_α − λ_β)`:
/// `r^{αβ}_{αβ} = r^{βα}_{αβ} = r^{αα}_{βα} = −r^{αα}_{αβ} = v`.
pub fn r_closed_m1(lam: &LambdaSpec) -> Result<Tensor4> {
    if lam.m() != 1 {
        return Err(Error::InvalidBlockSize(format!(
            "this family needs M = 1, got M = {}",
            lam.m()
        )));
    }
    require_distinct(lam)?;
    let n = lam.n();
    let mut r = Tensor4::zero(n);
    for al in 0..n {
        for be in 0..n {
            if al == be {
                continue;
            }
            let v = (lam.value(al) - lam.value(be)).recip();
            r.add_to([al, be, al, be], &v);
            r.add_to([be, al, al, be], &v);
            r.add_to([al, al, be, al], &v);
            r.add_to([al, al, al, be], &-v);
        }
    }
    Ok(r)
}

fn delta(x: usize, y: usize) -> i64 {
    i64::from(x == y)
}

/// `r^{ab}_{cd} = (δ^a_d − δ^a_{d̄_c})(δ^b_c − δ^b_{c̄_d}) / (λ_c − λ_d)` for
/// `c`, `d` in different blocks, zero otherwise. Here `d̄_c` has `d`'s
/// residue and `c`'s block.
pub fn r_closed_block(lam: &LambdaSpec) -> Result<Tensor4> {
    if !lam.satisfies_block_pattern() {
        return Err(Error::InvalidLambda(format!(
            "parameters must be equal exactly within blocks of size {}",
            lam.m()
        )));
    }
    let (n, m) = (lam.n(), lam.m());
    let mut r = Tensor4::zero(n);
    for c in 0..n {
        for d in 0..n {
            // Same block: both δ factors vanish, and λ_c = λ_d.
            if c / m == d / m {
                continue;
            }
            let inv = (lam.value(c) - lam.value(d)).recip();
            let (dc, cd) = (bar_index(d, c, m), bar_index(c, d, m));
            for a in 0..n {
                let fa = delta(a, d) - delta(a, dc);
                if fa == 0 {
                    continue;
                }
                for b in 0..n {
                    let fb = delta(b, c) - delta(b, cd);
                    if fb != 0 {
                        r.set([a, b, c, d], &inv * Rational::from_integer((fa * fb).into()));
                    }
                }
            }
        }
    }
    Ok(r)
}

/// `Π_{x' ≡ x (mod M), x' ≠ x} (λ_at − λ_{x'})`; empty product is 1.
fn class_product(lam: &LambdaSpec, at: usize, x: usize) -> Rational {
    let m = lam.m();
    (x % m..lam.n())
        .step_by(m)
        .filter(|&y| y != x)
        .map(|y| lam.value(at) - lam.value(y))
        .fold(Rational::one(), |acc, f| acc * f)
}

/// Product formula for pairwise-distinct `λ`. Cases are tried in order:
///
/// 1. zero unless `a ≡ d` and `b ≡ c` (mod M);
/// 2. `r^{aa}_{ea} = −r^{aa}_{ae} = 1/(λ_a − λ_e)` for `e ≠ a`, other
///    `r^{aa}_{cd}` zero;
/// 3. `r^{ab}_{ba} = (P − 1)/(λ_a − λ_b)` for `a ≠ b`;
/// 4. `r^{ab}_{cd} = Q/(λ_a − λ_b)` otherwise,
///
/// where, writing `π_x(t)` for `Π_{x' ≡ x, x' ≠ x} (λ_t − λ_{x'})`,
/// `P = π_b(a) π_a(b) / (π_a(a) π_b(b))` and
/// `Q = π_c(a) π_d(b) / (π_a(a) π_b(b))`.
pub fn r_closed_distinct(lam: &LambdaSpec) -> Result<Tensor4> {
    require_distinct(lam)?;
    let (n, m) = (lam.n(), lam.m());
    let self_class: Vec<Rational> = (0..n).map(|x| class_product(lam, x, x)).collect();

    let mut r = Tensor4::zero(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if a % m != d % m || b % m != c % m {
                        continue;
                    }
                    let v = if a == b {
                        if d == a && c != a {
                            (lam.value(a) - lam.value(c)).recip()
                        } else if c == a && d != a {
                            -(lam.value(a) - lam.value(d)).recip()
                        } else {
                            continue;
                        }
                    } else {
                        let inv = (lam.value(a) - lam.value(b)).recip();
                        let den = &self_class[a] * &self_class[b];
                        if c == b && d == a {
                            let p = class_product(lam, a, b) * class_product(lam, b, a) / den;
                            inv * (p - Rational::one())
                        } else {
                            inv * class_product(lam, a, c) * class_product(lam, b, d) / den
                        }
                    };
                    r.set([a, b, c, d], v);
                }
            }
        }
    }
    Ok(r)
}

/// An index where two tensors disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorDiff {
    pub index: Quad,
    #[serde(serialize_with = "ser_rational")]
    pub left: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub right: Rational,
}

/// Every index where `r1` and `r2` differ, in lexicographic order.
pub fn compare_tensors(r1: &Tensor4, r2: &Tensor4) -> Result<Vec<TensorDiff>> {
    if r1.n() != r2.n() {
        return Err(Error::DimensionMismatch(format!(
            "comparing n = {} with n = {}",
            r1.n(),
            r2.n()
        )));
    }
    let mut keys: Vec<Quad> = r1.iter().chain(r2.iter()).map(|(k, _)| *k).collect();
    keys.sort_unstable();
    keys.dedup();
    Ok(keys
        .into_iter()
        .filter_map(|k| {
            let (left, right) = (r1.get(k), r2.get(k));
            (left != right).then_some(TensorDiff { index: k, left, right })
        })
        .collect())
}
