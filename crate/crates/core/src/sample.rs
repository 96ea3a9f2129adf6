//! Seeded random inputs: rationals, parameter vectors, invertible matrices
//! and tensors. Used by the property tests and by `aybe transform --random-g`.

use num_traits::Zero;
use rand::Rng;

use crate::exactlin::{determinant, rat, RatMatrix, Rational};
use crate::tensor::Tensor4;

/// `p/q` with `|p| ≤ bound` and `1 ≤ q ≤ bound`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

pub fn random_nonzero_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let v = random_rational(rng, bound);
        if !v.is_zero() {
            return v;
        }
    }
}

/// `n` pairwise-distinct rationals.
pub fn random_distinct<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(n);
    while out.len() < n {
        let v = random_rational(rng, bound);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Values constant on each block of `m` consecutive indices and distinct
/// across blocks.
pub fn random_block_lambda<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, bound: i64) -> Vec<Rational> {
    let per_block = random_distinct(rng, n / m, bound);
    (0..n).map(|i| per_block[i / m].clone()).collect()
}

/// Values drawn from a pool of `pool` rationals, so repeats are likely.
pub fn random_repeating<R: Rng + ?Sized>(rng: &mut R, n: usize, pool: usize, bound: i64) -> Vec<Rational> {
    let pool = random_distinct(rng, pool.max(1), bound);
    (0..n).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect()
}

/// An `n × n` matrix with bounded random rational entries, redrawn until
/// its determinant is nonzero.
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> RatMatrix {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| random_rational(rng, bound)).collect())
            .collect();
        let g = RatMatrix::from_rows(rows).expect("square");
        if !determinant(&g).expect("square").is_zero() {
            return g;
        }
    }
}

/// Tensor whose entries are independently nonzero with probability
/// `density`.
pub fn random_tensor<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64, density: f64) -> Tensor4 {
    let mut t = Tensor4::zero(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if rng.gen_bool(density) {
                        t.set([a, b, c, d], random_nonzero_rational(rng, bound));
                    }
                }
            }
        }
    }
    t
}

/// Dense skew-symmetric tensor: one free nonzero value per orbit of
/// `[a, b, c, d] ↦ [b, a, d, c]`, and zero on the fixed points.
pub fn random_skew_tensor<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Tensor4 {
    let mut t = Tensor4::zero(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let partner = [b, a, d, c];
                    if partner <= [a, b, c, d] {
                        continue;
                    }
                    let v = random_nonzero_rational(rng, bound);
                    t.set(partner, -v.clone());
                    t.set([a, b, c, d], v);
                }
            }
        }
    }
    t
}
