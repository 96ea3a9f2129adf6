//! The matrix algebras `A_{N,M}` and the tensor they induce.
//!
//! `A_{N,M}` is the set of `N × N` matrices whose entries, in every column,
//! sum to zero over each residue class of row indices mod `M`. It carries
//! the skew form `(x, y) = tr([x, y] · diag(λ))`, which satisfies the cyclic
//! identity `(x, yz) + (y, zx) + (z, xy) = 0` for every `λ`. When the form
//! is non-degenerate, inverting its Gram matrix in a basis `{e_α}` gives the
//! tensor
//!
//! ```text
//! r^{ab}_{cd} = Σ_{α,β} g^{αβ} (e_α)^a_c (e_β)^b_d,   (g^{αβ}) = G⁻¹.
//! ```
//!
//! Indices are 0-based: index `i` has residue `i % M` and block `i / M`, so
//! the blocks are runs of `M` consecutive indices.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{format_rational, mat_inverse, mat_mul, RatMatrix, Rational};
use crate::tensor::{ser_rational, Tensor4};

/// How the parameter vector relates to the block structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LambdaMode {
    /// `λ_i = λ_j` exactly when `i / M == j / M`, with `M > 1`.
    Block,
    /// All values pairwise distinct. For `M = 1` this is also the block
    /// pattern.
    Distinct,
    Other,
}

impl fmt::Display for LambdaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LambdaMode::Block => "block",
            LambdaMode::Distinct => "distinct",
            LambdaMode::Other => "other",
        })
    }
}

/// Validated `(N, M, λ)`. The mode is always derived from the values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSpec {
    n: usize,
    m: usize,
    values: Vec<Rational>,
    mode: LambdaMode,
}

/// Checks that `m` is a proper divisor of `n`.
pub fn check_block_size(n: usize, m: usize) -> Result<()> {
    if m == 0 || m >= n || !n.is_multiple_of(m) {
        return Err(Error::InvalidBlockSize(format!(
            "M = {m} must be a proper divisor of N = {n}"
        )));
    }
    Ok(())
}

impl LambdaSpec {
    pub fn new(n: usize, m: usize, values: Vec<Rational>) -> Result<Self> {
        check_block_size(n, m)?;
        if values.len() != n {
            return Err(Error::InvalidLambda(format!(
                "expected {n} values, got {}",
                values.len()
            )));
        }
        let mode = classify(m, &values);
        Ok(LambdaSpec { n, m, values, mode })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &Rational {
        &self.values[i]
    }

    pub fn mode(&self) -> LambdaMode {
        self.mode
    }

    pub fn is_distinct(&self) -> bool {
        self.mode == LambdaMode::Distinct
    }

    /// True when `λ_i = λ_j ⇔ i / M == j / M`. Holds for distinct values
    /// when `M = 1`.
    pub fn satisfies_block_pattern(&self) -> bool {
        is_block_pattern(self.m, &self.values)
    }
}

fn is_block_pattern(m: usize, values: &[Rational]) -> bool {
    let n = values.len();
    (0..n).all(|i| (0..n).all(|j| (values[i] == values[j]) == (i / m == j / m)))
}

fn classify(m: usize, values: &[Rational]) -> LambdaMode {
    let n = values.len();
    let distinct = (0..n).all(|i| (i + 1..n).all(|j| values[i] != values[j]));
    if distinct {
        LambdaMode::Distinct
    } else if is_block_pattern(m, values) {
        LambdaMode::Block
    } else {
        LambdaMode::Other
    }
}

/// The index with `i`'s residue and `j`'s block: `(j / m) * m + i % m`.
pub fn bar_index(i: usize, j: usize, m: usize) -> usize {
    (j / m) * m + i % m
}

/// One basis element `e_{i,j} = E_{i,j} − E_{ī_j, j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub i: usize,
    pub j: usize,
    pub matrix: RatMatrix,
}

/// The basis `{e_{i,j} : i / M ≠ j / M}` of `A_{N,M}`, ordered by `(j, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraBasis {
    n: usize,
    m: usize,
    elements: Vec<BasisElement>,
    index_of: Vec<Option<usize>>,
}

impl AlgebraBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    /// Position of `e_{i,j}`, if it is a basis element.
    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        if i >= self.n || j >= self.n {
            return None;
        }
        self.index_of[i * self.n + j]
    }

    /// Same labels, every matrix transposed: a basis of `A^T_{N,M}`.
    pub fn transposed(&self) -> AlgebraBasis {
        AlgebraBasis {
            n: self.n,
            m: self.m,
            elements: self
                .elements
                .iter()
                .map(|e| BasisElement {
                    i: e.i,
                    j: e.j,
                    matrix: e.matrix.transpose(),
                })
                .collect(),
            index_of: self.index_of.clone(),
        }
    }

    /// JSON list of `{ "i", "j", "matrix" }` with rational strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.elements
                .iter()
                .map(|e| {
                    let rows: Vec<Vec<String>> = e
                        .matrix
                        .to_rows()
                        .iter()
                        .map(|r| r.iter().map(format_rational).collect())
                        .collect();
                    serde_json::json!({ "i": e.i, "j": e.j, "matrix": rows })
                })
                .collect(),
        )
    }
}

pub fn build_basis(n: usize, m: usize) -> Result<AlgebraBasis> {
    check_block_size(n, m)?;
    let mut elements = Vec::with_capacity(n * (n - m));
    let mut index_of = vec![None; n * n];
    for j in 0..n {
        for i in 0..n {
            let ib = bar_index(i, j, m);
            if ib == i {
                continue;
            }
            let mut matrix = RatMatrix::zeros(n, n);
            matrix[(i, j)] = Rational::from_integer(1.into());
            matrix[(ib, j)] = Rational::from_integer((-1).into());
            index_of[i * n + j] = Some(elements.len());
            elements.push(BasisElement { i, j, matrix });
        }
    }
    Ok(AlgebraBasis {
        n,
        m,
        elements,
        index_of,
    })
}

/// Whether every column sums to zero over each residue class mod `m`.
pub fn membership_check(a: &RatMatrix, n: usize, m: usize) -> Result<bool> {
    if a.rows() != n || a.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "expected {n}x{n}, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if m == 0 {
        return Err(Error::InvalidBlockSize("M = 0".into()));
    }
    for j in 0..n {
        for residue in 0..m {
            let s: Rational = (residue..n).step_by(m).map(|i| a[(i, j)].clone()).sum();
            if !s.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `(x, y) = tr([x, y] · diag(λ))`.
pub fn form_eval(x: &RatMatrix, y: &RatMatrix, lam: &LambdaSpec) -> Result<Rational> {
    let n = lam.n();
    for a in [x, y] {
        if a.rows() != n || a.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "form on {n}x{n} matrices, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
    }
    Ok(pairing(x, y, lam.values()))
}

// tr([x,y] D) = Σ_{i,k} x_ik y_ki (λ_i − λ_k)
fn pairing(x: &RatMatrix, y: &RatMatrix, lam: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (i, k, xik) in x.nonzeros() {
        if i == k {
            continue;
        }
        let yki = &y[(k, i)];
        if !yki.is_zero() {
            acc += xik * yki * (&lam[i] - &lam[k]);
        }
    }
    acc
}

/// A basis triple where the cyclic sum is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleViolation {
    /// Basis positions `(x, y, z)`.
    pub triple: [usize; 3],
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
}

/// Evaluates `(x, yz) + (y, zx) + (z, xy)` on every ordered basis triple.
pub fn cocycle_residual(basis: &AlgebraBasis, lam: &LambdaSpec) -> Result<Vec<CocycleViolation>> {
    if basis.n() != lam.n() {
        return Err(Error::DimensionMismatch(format!(
            "basis for N = {}, parameters for N = {}",
            basis.n(),
            lam.n()
        )));
    }
    let mats: Vec<&RatMatrix> = basis.elements().iter().map(|e| &e.matrix).collect();
    let lv = lam.values();
    cyclic_violations(&mats, |x, y| pairing(x, y, lv))
}

fn cyclic_violations(
    mats: &[&RatMatrix],
    form: impl Fn(&RatMatrix, &RatMatrix) -> Rational,
) -> Result<Vec<CocycleViolation>> {
    let d = mats.len();
    let mut products = Vec::with_capacity(d * d);
    for a in mats {
        for b in mats {
            products.push(mat_mul(a, b)?);
        }
    }
    let prod = |a: usize, b: usize| &products[a * d + b];

    let mut out = Vec::new();
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let s = form(mats[x], prod(y, z)) + form(mats[y], prod(z, x)) + form(mats[z], prod(x, y));
                if !s.is_zero() {
                    out.push(CocycleViolation {
                        triple: [x, y, z],
                        value: s,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Matrix of the form in a basis, rows and columns in basis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub n: usize,
    pub m: usize,
    pub matrix: RatMatrix,
}

pub fn gram_matrix(basis: &AlgebraBasis, lam: &LambdaSpec) -> Result<GramMatrix> {
    if basis.n() != lam.n() {
        return Err(Error::DimensionMismatch(format!(
            "basis for N = {}, parameters for N = {}",
            basis.n(),
            lam.n()
        )));
    }
    let d = basis.len();
    let mut g = RatMatrix::zeros(d, d);
    for (a, ea) in basis.elements().iter().enumerate() {
        for (b, eb) in basis.elements().iter().enumerate().skip(a + 1) {
            let v = pairing(&ea.matrix, &eb.matrix, lam.values());
            g[(b, a)] = -v.clone();
            g[(a, b)] = v;
        }
    }
    Ok(GramMatrix {
        n: basis.n(),
        m: basis.m(),
        matrix: g,
    })
}

fn r_from_gram(basis: &AlgebraBasis, gram: &RatMatrix) -> Result<Tensor4> {
    let d = basis.len();
    let inv = mat_inverse(gram).map_err(|e| match e {
        Error::SingularMatrix { rank } => Error::DegenerateForm { rank, dim: d },
        other => other,
    })?;
    let sparse: Vec<Vec<(usize, usize, Rational)>> = basis
        .elements()
        .iter()
        .map(|e| e.matrix.nonzeros().map(|(a, c, v)| (a, c, v.clone())).collect())
        .collect();

    let mut r = Tensor4::zero(basis.n());
    for (al, ea) in sparse.iter().enumerate() {
        for (be, eb) in sparse.iter().enumerate() {
            let g = &inv[(al, be)];
            if g.is_zero() {
                continue;
            }
            for (a, c, va) in ea {
                for (b, d, vb) in eb {
                    r.add_to([*a, *b, *c, *d], &(g * va * vb));
                }
            }
        }
    }
    Ok(r)
}

/// Tensor of the algebra spanned by `basis` under the form with parameters
/// `lam`, using the identity embedding as the representation.
///
/// Fails with [`Error::DegenerateForm`] when the Gram matrix is singular.
pub fn r_from_algebra(basis: &AlgebraBasis, lam: &LambdaSpec) -> Result<Tensor4> {
    let gram = gram_matrix(basis, lam)?;
    r_from_gram(basis, &gram.matrix)
}

/// Tensor of `A^T_{N,M}` with the form carried over by transposition,
/// `(xᵀ, yᵀ) := (x, y)`.
///
/// Evaluating `tr([xᵀ, yᵀ] · diag(λ))` directly instead gives `−(x, y)` and
/// hence the negated tensor, which is also a solution.
pub fn r_from_transposed_algebra(basis: &AlgebraBasis, lam: &LambdaSpec) -> Result<Tensor4> {
    let gram = gram_matrix(basis, lam)?;
    r_from_gram(&basis.transposed(), &gram.matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{commutator, determinant, int};
    use crate::sample;
    use crate::tensor::{transpose_dual, verify};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lam(n: usize, m: usize, v: &[i64]) -> LambdaSpec {
        LambdaSpec::new(n, m, v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    fn proper_divisors(n: usize) -> impl Iterator<Item = usize> {
        (1..n).filter(move |&m| n.is_multiple_of(m))
    }

    /// `tr([x, y] · diag(λ))` computed with full matrix products.
    fn literal_form(x: &RatMatrix, y: &RatMatrix, l: &LambdaSpec) -> Rational {
        mat_mul(&commutator(x, y).unwrap(), &RatMatrix::diagonal(l.values()))
            .unwrap()
            .trace()
            .unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(lam(4, 2, &[1, 1, 0, 0]).mode(), LambdaMode::Block);
        assert_eq!(lam(4, 2, &[0, 1, 2, 3]).mode(), LambdaMode::Distinct);
        assert_eq!(lam(4, 2, &[1, 0, 1, 0]).mode(), LambdaMode::Other);
        assert_eq!(lam(4, 2, &[1, 1, 1, 1]).mode(), LambdaMode::Other);
        // M = 1: the block pattern is distinctness
        let l = lam(3, 1, &[0, 1, 2]);
        assert_eq!(l.mode(), LambdaMode::Distinct);
        assert!(l.satisfies_block_pattern());
        assert!(LambdaSpec::new(4, 4, vec![int(0); 4]).is_err());
        assert!(LambdaSpec::new(4, 3, vec![int(0); 4]).is_err());
        assert!(LambdaSpec::new(4, 0, vec![int(0); 4]).is_err());
        assert!(LambdaSpec::new(4, 2, vec![int(0); 3]).is_err());
    }

    #[test]
    fn bar_index_examples() {
        for m in 1..4 {
            for i in 0..8 {
                assert_eq!(bar_index(i, i, m), i);
            }
        }
        assert_eq!(bar_index(0, 2, 2), 2);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(bar_index(i, j, 1), j);
                for m in 1..4 {
                    assert_eq!(bar_index(i, j, m) == i, i / m == j / m);
                }
            }
        }
    }

    #[test]
    fn basis_examples() {
        let b = build_basis(2, 1).unwrap();
        assert_eq!(b.len(), 2);
        let e01 = &b.elements()[b.index_of(0, 1).unwrap()].matrix;
        let e10 = &b.elements()[b.index_of(1, 0).unwrap()].matrix;
        assert_eq!(*e01, RatMatrix::from_i64(&[&[0, 1], &[0, -1]]));
        assert_eq!(*e10, RatMatrix::from_i64(&[&[-1, 0], &[1, 0]]));
        assert_eq!(build_basis(4, 2).unwrap().len(), 8);
        let b63 = build_basis(6, 3).unwrap();
        assert_eq!(b63.len(), 18);
        for e in b63.elements() {
            assert!(membership_check(&e.matrix, 6, 3).unwrap());
        }
        assert!(build_basis(4, 4).is_err());
        assert!(build_basis(4, 3).is_err());
        assert!(build_basis(4, 0).is_err());
    }

    #[test]
    fn basis_counts_and_membership_up_to_eight() {
        for n in 2..=8 {
            for m in proper_divisors(n) {
                let b = build_basis(n, m).unwrap();
                assert_eq!(b.len(), n * (n - m));
                let mut prev = None;
                for e in b.elements() {
                    assert!(membership_check(&e.matrix, n, m).unwrap());
                    assert_ne!(e.i / m, e.j / m);
                    assert!(b.index_of(e.j, e.i).is_some());
                    assert!(prev < Some((e.j, e.i)));
                    prev = Some((e.j, e.i));
                }
                for i in 0..n {
                    for j in 0..n {
                        assert_eq!(b.index_of(i, j).is_some(), i / m != j / m);
                    }
                }
            }
        }
    }

    #[test]
    fn membership_examples() {
        assert!(membership_check(&RatMatrix::zeros(3, 3), 3, 1).unwrap());
        let x = RatMatrix::from_i64(&[&[0, 1], &[0, -1]]);
        assert!(membership_check(&x, 2, 1).unwrap());
        for (n, m) in [(2, 1), (4, 2), (6, 3)] {
            assert!(!membership_check(&RatMatrix::unit(n, 0, 0), n, m).unwrap());
        }
        assert!(membership_check(&RatMatrix::zeros(2, 2), 3, 1).is_err());
    }

    #[test]
    fn form_examples() {
        let b = build_basis(2, 1).unwrap();
        let l = lam(2, 1, &[2, 1]);
        let e = |i, j| &b.elements()[b.index_of(i, j).unwrap()].matrix;
        assert_eq!(form_eval(e(0, 1), e(0, 1), &l).unwrap(), int(0));
        assert_eq!(form_eval(e(0, 1), e(1, 0), &l).unwrap(), int(1));

        let b4 = build_basis(4, 2).unwrap();
        let l4 = lam(4, 2, &[1, 1, 0, 0]);
        let e4 = |i, j| &b4.elements()[b4.index_of(i, j).unwrap()].matrix;
        assert_eq!(form_eval(e4(0, 2), e4(2, 0), &l4).unwrap(), int(1));
        assert!(form_eval(&RatMatrix::zeros(3, 3), e4(0, 2), &l4).is_err());
    }

    #[test]
    fn form_matches_literal_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let l = LambdaSpec::new(4, 2, sample::random_repeating(&mut rng, 4, 3, 6)).unwrap();
            let rnd = |rng: &mut ChaCha8Rng| {
                RatMatrix::from_rows(
                    (0..4)
                        .map(|_| (0..4).map(|_| sample::random_rational(rng, 5)).collect())
                        .collect(),
                )
                .unwrap()
            };
            let x = rnd(&mut rng);
            let y = rnd(&mut rng);
            let v = form_eval(&x, &y, &l).unwrap();
            assert_eq!(v, literal_form(&x, &y, &l));
            assert_eq!(form_eval(&y, &x, &l).unwrap(), -v);
        }
    }

    #[test]
    fn cocycle_examples() {
        let b = build_basis(2, 1).unwrap();
        let l = lam(2, 1, &[2, 1]);
        let e01 = &b.elements()[b.index_of(0, 1).unwrap()].matrix;
        let e10 = &b.elements()[b.index_of(1, 0).unwrap()].matrix;
        let cyc = |x: &RatMatrix, y: &RatMatrix, z: &RatMatrix| {
            literal_form(x, &mat_mul(y, z).unwrap(), &l)
                + literal_form(y, &mat_mul(z, x).unwrap(), &l)
                + literal_form(z, &mat_mul(x, y).unwrap(), &l)
        };
        assert_eq!(cyc(e01, e01, e01), int(0));
        assert_eq!(cyc(e01, e10, e01), int(0));
        assert!(cocycle_residual(&b, &l).unwrap().is_empty());

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b4 = build_basis(4, 2).unwrap();
        for _ in 0..3 {
            let l4 = LambdaSpec::new(4, 2, sample::random_repeating(&mut rng, 4, 4, 9)).unwrap();
            assert!(cocycle_residual(&b4, &l4).unwrap().is_empty());
        }
    }

    #[test]
    fn cyclic_sum_flags_a_non_cocycle() {
        // tr(xy · diag(λ)) is not a cyclic cocycle; the same triple loop must
        // notice.
        let b = build_basis(3, 1).unwrap();
        let l = lam(3, 1, &[0, 1, 5]);
        let mats: Vec<&RatMatrix> = b.elements().iter().map(|e| &e.matrix).collect();
        let d = RatMatrix::diagonal(l.values());
        let bad = cyclic_violations(&mats, |x, y| {
            mat_mul(&mat_mul(x, y).unwrap(), &d).unwrap().trace().unwrap()
        })
        .unwrap();
        assert!(!bad.is_empty());
    }

    #[test]
    fn gram_examples() {
        let b = build_basis(2, 1).unwrap();
        let g = gram_matrix(&b, &lam(2, 1, &[2, 1])).unwrap().matrix;
        let (p01, p10) = (b.index_of(0, 1).unwrap(), b.index_of(1, 0).unwrap());
        assert_eq!(g[(p01, p10)], int(1));
        assert_eq!(g[(p10, p01)], int(-1));
        assert_eq!(g[(p01, p01)], int(0));
        assert_eq!(g[(p10, p10)], int(0));
        assert!(gram_matrix(&b, &lam(2, 1, &[1, 1])).unwrap().matrix.is_zero());
    }

    #[test]
    fn gram_is_antisymmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (n, m) in [(3, 1), (4, 2), (6, 3)] {
            let l = LambdaSpec::new(n, m, sample::random_repeating(&mut rng, n, 3, 8)).unwrap();
            let g = gram_matrix(&build_basis(n, m).unwrap(), &l).unwrap().matrix;
            assert_eq!(g.transpose(), g.scale(&int(-1)));
        }
    }

    #[test]
    fn block_gram_is_paired_and_nondegenerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for (n, m) in [(4, 2), (6, 2), (6, 3), (8, 4), (4, 1)] {
            let l = LambdaSpec::new(n, m, sample::random_block_lambda(&mut rng, n, m, 9)).unwrap();
            assert!(l.satisfies_block_pattern());
            let b = build_basis(n, m).unwrap();
            let g = gram_matrix(&b, &l).unwrap().matrix;
            let mut expected_det = Rational::from_integer(1.into());
            for (row, e) in b.elements().iter().enumerate() {
                let partner = b.index_of(e.j, e.i).unwrap();
                let nonzero: Vec<_> = (0..b.len()).filter(|&c| !g[(row, c)].is_zero()).collect();
                assert_eq!(nonzero, vec![partner]);
                let diff = l.value(e.i) - l.value(e.j);
                assert_eq!(g[(row, partner)], diff);
                if e.i < e.j {
                    expected_det *= &diff * &diff;
                }
            }
            let det = determinant(&g).unwrap();
            assert!(!det.is_zero());
            // each 2x2 block [[0, d], [-d, 0]] contributes d²
            assert_eq!(det, expected_det);
        }
    }

    #[test]
    fn distinct_gram_is_nondegenerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for k in 0..20 {
            let (n, m) = [(4, 2), (6, 2), (6, 3), (3, 1)][k % 4];
            let l = LambdaSpec::new(n, m, sample::random_distinct(&mut rng, n, 12)).unwrap();
            let g = gram_matrix(&build_basis(n, m).unwrap(), &l).unwrap().matrix;
            assert!(!determinant(&g).unwrap().is_zero());
        }
    }

    #[test]
    fn r_from_algebra_n2() {
        let r = r_from_algebra(&build_basis(2, 1).unwrap(), &lam(2, 1, &[2, 1])).unwrap();
        assert_eq!(r.get([0, 1, 0, 1]), int(1));
        assert_eq!(r.get([1, 0, 0, 1]), int(1));
        assert_eq!(r.get([0, 0, 1, 0]), int(1));
        assert_eq!(r.get([0, 0, 0, 1]), int(-1));
        assert_eq!(r.get([1, 1, 0, 1]), int(-1));
        assert_eq!(r.get([1, 1, 1, 0]), int(1));
        assert_eq!(r.nnz(), 8);
        assert!(verify(&r).passed);
    }

    #[test]
    fn degenerate_form_is_reported() {
        let err = r_from_algebra(&build_basis(2, 1).unwrap(), &lam(2, 1, &[1, 1])).unwrap_err();
        assert_eq!(err, Error::DegenerateForm { rank: 0, dim: 2 });
        let err = r_from_algebra(&build_basis(4, 2).unwrap(), &lam(4, 2, &[1, 1, 1, 1])).unwrap_err();
        assert!(matches!(err, Error::DegenerateForm { .. }));
    }

    #[test]
    fn other_mode_can_still_be_nondegenerate() {
        // Repeats that break the block pattern are not rejected up front.
        let l = LambdaSpec::new(4, 2, vec![int(0), int(1), int(0), int(2)]).unwrap();
        assert_eq!(l.mode(), LambdaMode::Other);
        match r_from_algebra(&build_basis(4, 2).unwrap(), &l) {
            Ok(r) => assert!(verify(&r).passed),
            Err(e) => assert!(matches!(e, Error::DegenerateForm { .. })),
        }
    }

    #[test]
    fn constructed_solutions_pass_up_to_six() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for n in 2..=6 {
            for m in proper_divisors(n) {
                let b = build_basis(n, m).unwrap();
                let mut draws = vec![sample::random_distinct(&mut rng, n, 9)];
                if m > 1 {
                    draws.push(sample::random_block_lambda(&mut rng, n, m, 9));
                }
                for values in draws {
                    let l = LambdaSpec::new(n, m, values).unwrap();
                    let r = r_from_algebra(&b, &l).unwrap();
                    let report = verify(&r);
                    assert!(report.passed, "n={n} m={m} mode={}", l.mode());
                }
            }
        }
    }

    #[test]
    fn transposed_algebra_gives_transpose_dual() {
        let b = build_basis(4, 2).unwrap();
        for values in [vec![1, 1, 0, 0], vec![0, 1, 2, 3], vec![5, -2, 7, 1]] {
            let l = lam(4, 2, &values);
            let r = r_from_algebra(&b, &l).unwrap();
            let dual = r_from_transposed_algebra(&b, &l).unwrap();
            assert_eq!(dual, transpose_dual(&r));
            assert!(verify(&dual).passed);

            // literal form on the transposed matrices flips the sign
            let literal = r_from_algebra(&b.transposed(), &l).unwrap();
            assert_eq!(literal, transpose_dual(&r).neg());
        }
    }

    #[test]
    fn basis_json_shape() {
        let j = build_basis(2, 1).unwrap().to_json();
        assert_eq!(
            j.to_string(),
            r#"[{"i":1,"j":0,"matrix":[["-1","0"],["1","0"]]},{"i":0,"j":1,"matrix":[["0","1"],["0","-1"]]}]"#
        );
    }
}
