//! Principal specialisations of Schur functions and the rectangle hook
//! identity relating them to hook products.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::Result;
use crate::partition::{content, multiset_union, Partition};

fn hook_content_product(shape: &Partition, shift: i64) -> BigRational {
    let numer = shape
        .cells()
        .fold(BigInt::one(), |acc, u| acc * (shift + content(u)));
    BigRational::new(numer, shape.hook_product())
}

/// `s_λ(1^p) = ∏_{u∈λ} (p + c(u)) / h(u)`, valid for any integer `p`.
pub fn schur_principal(shape: &Partition, p: i64) -> BigRational {
    hook_content_product(shape, p)
}

/// `s_λ(1^{-q}) = ∏_{u∈λ} (-q + c(u)) / h(u)`.
pub fn schur_negative(shape: &Partition, q: i64) -> BigRational {
    hook_content_product(shape, -q)
}

/// Checks `H_{p×q} = (-1)^{|λ|} H_λ H_{λ̃} s_λ(1^p) s_λ(1^{-q})` exactly.
pub fn lemma_check(shape: &Partition, rows: usize, cols: usize) -> Result<bool> {
    let complement = shape.complement(rows, cols)?;
    let mut rhs = schur_principal(shape, rows as i64)
        * schur_negative(shape, cols as i64)
        * BigRational::from_integer(shape.hook_product() * complement.hook_product());
    if shape.size() % 2 == 1 {
        rhs = -rhs;
    }
    Ok(rhs == BigRational::from_integer(Partition::rectangle(rows, cols).hook_product()))
}

/// Runs [`lemma_check`] over every `λ ⊆ p×q`; returns the number verified or
/// the first failing shape.
pub fn lemma_sweep(rows: usize, cols: usize) -> std::result::Result<usize, Partition> {
    let mut count = 0;
    for shape in Partition::all_in_box(rows, cols) {
        if !lemma_check(&shape, rows, cols).unwrap_or(false) {
            return Err(shape);
        }
        count += 1;
    }
    Ok(count)
}

/// The two hook identities for the shape `SQ(λ)` built from `λ ⊆ p×q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SqHookCheck {
    /// Hooks of `SQ(λ)` are those of `p×q` and of `λ` together.
    pub multiset: bool,
    /// `∏ hooks(SQ(λ)) = H_{λ̃} ∏_{u∈λ} (p + c(u)) ∏_{v∈λ'} (q + c(v))`.
    pub product: bool,
}

pub fn sq_hook_check(shape: &Partition, rows: usize, cols: usize) -> Result<SqHookCheck> {
    let sq = shape.sq_shape(rows, cols)?;
    let expected = multiset_union(&Partition::rectangle(rows, cols).hook_lengths(), &shape.hook_lengths());
    let contents = |lam: &Partition, shift: usize| {
        lam.cells().fold(BigInt::one(), |acc, u| acc * (shift as i64 + content(u)))
    };
    let rhs = shape.complement(rows, cols)?.hook_product()
        * contents(shape, rows)
        * contents(&shape.conjugate(), cols);
    Ok(SqHookCheck { multiset: sq.hooks() == expected, product: sq.hook_product() == rhs })
}
