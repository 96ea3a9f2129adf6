//! Exact construction and verification of skew-symmetric constant solutions
//! of the associative Yang-Baxter equation.
//!
//! The pipeline: pick `N`, a proper divisor `M` of `N` and parameters `λ`;
//! build the basis of the matrix algebra `A_{N,M}` ([`frobenius`]); evaluate
//! the trace form and invert its Gram matrix to get a tensor `r^{ab}_{cd}`;
//! check it ([`tensor`]); compare against explicit formulas ([`closedform`]);
//! and derive the quadratic Poisson bracket it induces ([`poisson`]).
//!
//! All arithmetic is exact over the rationals.
//!
//! ```
//! use aybe_core::{build_basis, int, r_from_algebra, r_closed_m1, verify, LambdaSpec};
//!
//! let lam = LambdaSpec::new(3, 1, vec![int(0), int(1), int(2)]).unwrap();
//! let r = r_from_algebra(&build_basis(3, 1).unwrap(), &lam).unwrap();
//! assert!(verify(&r).passed);
//! assert_eq!(r, r_closed_m1(&lam).unwrap());
//! ```

pub mod closedform;
mod error;
pub mod exactlin;
pub mod frobenius;
pub mod poisson;
pub mod sample;
pub mod tensor;

pub use closedform::{
    compare_tensors, r_closed, r_closed_block, r_closed_distinct, r_closed_m1, ClosedFormVariant, TensorDiff,
};
pub use error::{Error, Result};
pub use exactlin::{
    commutator, determinant, format_rational, int, mat_inverse, mat_mul, parse_rational, parse_rational_list, rat,
    RatMatrix, Rational,
};
pub use frobenius::{
    bar_index, build_basis, cocycle_residual, form_eval, gram_matrix, membership_check, r_from_algebra,
    r_from_transposed_algebra, AlgebraBasis, GramMatrix, LambdaMode, LambdaSpec,
};
pub use poisson::{
    compare_brackets, jacobi_residual, matrix_bracket_from_r, scalar_bracket_closed_2m, scalar_bracket_from_r,
    LiteralBracket, Polynomial, QuadraticBracket,
};
pub use tensor::{aybe_residual, check_skew, gl_transform, transpose_dual, verify, AybeReport, Tensor4};

// The guide's code listings compile and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/tensors.md")]
    mod tensors {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/closed-forms.md")]
    mod closed_forms {}
    #[doc = include_str!("../../../book/src/brackets.md")]
    mod brackets {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
