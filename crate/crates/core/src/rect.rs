//! Rectangular shapes: the factorization sum over `uv = w_μ` and its
//! agreement with the normalized character of `p×q`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::sign;
use crate::character::{mn_character, normalized_character};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::permutation::{cycle_count_of, for_each_with_first, Permutation};
use crate::schur::{schur_negative, schur_principal};
use crate::series::IntPoly;

/// Polynomial in `p` (variable 0) and `q` (variable 1).
pub type BivariatePoly = IntPoly;

/// Number of pairs `(u, v)` with `uv = w`, keyed by `(κ(u), κ(v))`.
///
/// Iterates `u` over `S_k` and sets `v = u⁻¹w`. The enumeration is sharded
/// on `u(1)` across the rayon pool; the merge is a sum of counts, so the
/// result does not depend on the number of workers.
pub fn factorization_counts(w: &Permutation, cap: usize) -> Result<BTreeMap<(usize, usize), u64>> {
    let k = w.degree();
    if k > cap {
        return Err(Error::CapExceeded { k, cap });
    }
    if k == 0 {
        return Ok(BTreeMap::from([((0, 0), 1)]));
    }
    let target = w.zero_based();
    let shards: Vec<Vec<u64>> = (0..k)
        .into_par_iter()
        .map(|first| {
            let mut table = vec![0u64; (k + 1) * (k + 1)];
            let mut inv = vec![0usize; k];
            let mut v = vec![0usize; k];
            for_each_with_first(k, first, |u| {
                for (i, &x) in u.iter().enumerate() {
                    inv[x] = i;
                }
                for (vi, &t) in v.iter_mut().zip(target) {
                    *vi = inv[t];
                }
                table[cycle_count_of(u) * (k + 1) + cycle_count_of(&v)] += 1;
            });
            table
        })
        .collect();
    let mut out = BTreeMap::new();
    for a in 0..=k {
        for b in 0..=k {
            let total: u64 = shards.iter().map(|t| t[a * (k + 1) + b]).sum();
            if total > 0 {
                out.insert((a, b), total);
            }
        }
    }
    Ok(out)
}

/// `(-1)^k Σ_{uv=w} p^{κ(u)} (-q)^{κ(v)}` for an arbitrary representative `w`.
pub fn factorization_poly_of(w: &Permutation, cap: usize) -> Result<BivariatePoly> {
    let k = w.degree();
    let counts = factorization_counts(w, cap)?;
    Ok(IntPoly::from_terms(
        counts
            .into_iter()
            .map(|((a, b), n)| (vec![a as u32, b as u32], BigInt::from(n) * sign(k + b))),
    ))
}

/// The factorization polynomial of cycle type `μ`, using `w_μ`.
pub fn factorization_poly(mu: &Partition, cap: usize) -> Result<BivariatePoly> {
    factorization_poly_of(&Permutation::canonical(mu), cap)
}

pub fn eval_bivariate(poly: &BivariatePoly, p: i64, q: i64) -> BigInt {
    poly.eval(&[BigInt::from(p), BigInt::from(q)])
}

/// `χ̂^{p×q}(μ, 1^{pq-k})` equals the factorization polynomial at `(p, q)`.
pub fn theorem1_check(rows: usize, cols: usize, mu: &Partition, cap: usize) -> Result<bool> {
    let k = mu.size();
    if k > rows * cols {
        return Err(Error::SizeMismatch(format!("|μ| = {k} exceeds {rows}x{cols}")));
    }
    let lhs = normalized_character(&Partition::rectangle(rows, cols), mu)?;
    let rhs = eval_bivariate(&factorization_poly(mu, cap)?, rows as i64, cols as i64);
    Ok(lhs == BigRational::from_integer(rhs))
}

/// `(-1)^k Σ_{λ⊢k} H_λ s_λ(1^p) s_λ(1^{-q}) χ^λ(μ)`.
pub fn schur_side(p: i64, q: i64, mu: &Partition) -> Result<BigRational> {
    let k = mu.size();
    let mut total = BigRational::zero();
    for lambda in Partition::all(k) {
        let chi = mn_character(&lambda, mu)?;
        total += schur_principal(&lambda, p)
            * schur_negative(&lambda, q)
            * BigRational::from_integer(lambda.hook_product() * chi);
    }
    Ok(total * BigRational::from_integer(BigInt::from(sign(k))))
}

/// The Schur-function side against the factorization side at `(p, q)`.
pub fn sss_identity_check(p: i64, q: i64, mu: &Partition, cap: usize) -> Result<bool> {
    let rhs = eval_bivariate(&factorization_poly(mu, cap)?, p, q);
    Ok(schur_side(p, q, mu)? == BigRational::from_integer(rhs))
}

/// Pairs with `uv = (1 2 ... k)` and `κ(u) + κ(v) = k + 1`.
pub fn catalan_pair_count(k: usize, cap: usize) -> Result<BigInt> {
    let counts = factorization_counts(&Permutation::long_cycle(k), cap)?;
    Ok(counts.iter().filter(|((a, b), _)| a + b == k + 1).map(|(_, &n)| BigInt::from(n)).sum())
}

/// For each `i`, the number of pairs with `uv = (1 2 ... k)`, `κ(u) = i`
/// and `κ(v) = k + 1 - i`.
pub fn narayana_refinement(k: usize, cap: usize) -> Result<BTreeMap<usize, u64>> {
    let counts = factorization_counts(&Permutation::long_cycle(k), cap)?;
    Ok(counts.into_iter().filter(|((a, b), _)| a + b == k + 1).map(|((a, _), n)| (a, n)).collect())
}
