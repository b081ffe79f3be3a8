//! Irreducible characters `χ^λ(ν)` by the Murnaghan–Nakayama rule.
//!
//! Border strips are removed on the beta-set (first column hook lengths) of
//! the shape: removing an `r`-strip moves one bead from position `b` to a
//! free position `b - r`, and the strip's height is the number of beads
//! strictly between the two positions.
//!
//! Once only 1-cycles remain, the recursion stops and returns `f^μ` for the
//! remaining straight shape `μ` (hook length formula).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::falling_factorial;
use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderStripRemoval {
    pub source: Partition,
    pub length: usize,
    pub result: Partition,
    /// Rows spanned minus one.
    pub height: usize,
}

fn beta_set(shape: &Partition) -> Vec<usize> {
    let len = shape.len();
    shape.parts().iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect()
}

fn from_beta_set(mut beta: Vec<usize>) -> Partition {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let len = beta.len();
    let parts = beta.iter().enumerate().map(|(i, &b)| b + i + 1 - len).collect();
    Partition::new(parts).expect("beta set yields a partition")
}

/// Every way to remove a border strip of `length` cells from `shape`.
pub fn border_strip_removals(shape: &Partition, length: usize) -> Vec<BorderStripRemoval> {
    if length == 0 {
        return Vec::new();
    }
    let beta = beta_set(shape);
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        let Some(target) = b.checked_sub(length) else { continue };
        if beta.contains(&target) {
            continue;
        }
        let height = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut moved = beta.clone();
        moved[idx] = target;
        out.push(BorderStripRemoval {
            source: shape.clone(),
            length,
            result: from_beta_set(moved),
            height,
        });
    }
    out
}

/// Murnaghan–Nakayama evaluator over one cycle type, memoised on
/// `(remaining shape, index of next cycle)`.
struct MnEvaluator<'a> {
    cycles: &'a [usize],
    ones_from: usize,
    memo: HashMap<(Partition, usize), BigInt>,
}

impl<'a> MnEvaluator<'a> {
    fn new(cycles: &'a [usize]) -> Self {
        let ones_from = cycles.iter().rposition(|&c| c != 1).map_or(0, |i| i + 1);
        MnEvaluator { cycles, ones_from, memo: HashMap::new() }
    }

    fn eval(&mut self, shape: &Partition, idx: usize) -> BigInt {
        if idx >= self.ones_from {
            return shape.syt_count();
        }
        let key = (shape.clone(), idx);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for removal in border_strip_removals(shape, self.cycles[idx]) {
            let value = self.eval(&removal.result, idx + 1);
            if removal.height % 2 == 0 {
                total += value;
            } else {
                total -= value;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// `χ^λ(ν)` with the cycles of `ν` processed in the given order.
pub fn mn_character_ordered(shape: &Partition, cycles: &[usize]) -> Result<BigInt> {
    let total: usize = cycles.iter().sum();
    if total != shape.size() {
        return Err(Error::SizeMismatch(format!(
            "shape {shape} has size {} but cycle type sums to {total}",
            shape.size()
        )));
    }
    if cycles.contains(&0) {
        return Err(Error::InvalidPartition("cycle of length 0".into()));
    }
    Ok(MnEvaluator::new(cycles).eval(shape, 0))
}

/// `χ^λ(ν)`, cycles taken largest first.
pub fn mn_character(shape: &Partition, cycle_type: &Partition) -> Result<BigInt> {
    mn_character_ordered(shape, cycle_type.parts())
}

/// `χ̂^λ(μ, 1^{n-k}) = (n)_k χ^λ(μ, 1^{n-k}) / f^λ` for `μ ⊢ k ≤ n = |λ|`.
pub fn normalized_character(shape: &Partition, mu: &Partition) -> Result<BigRational> {
    let n = shape.size();
    let k = mu.size();
    if k > n {
        return Err(Error::SizeMismatch(format!("|μ| = {k} exceeds |λ| = {n}")));
    }
    let chi = mn_character(shape, &mu.with_ones(n - k))?;
    let scaled = falling_factorial(n as i64, k) * chi;
    Ok(BigRational::new(scaled, shape.syt_count()))
}

/// `χ^{p×q}(μ, 1^{pq-k})` as `Σ_{λ ⊆ p×q, λ ⊢ k} χ^λ(μ) f^{λ̃}`.
pub fn rect_character_sum(rows: usize, cols: usize, mu: &Partition) -> Result<BigInt> {
    let k = mu.size();
    if k > rows * cols {
        return Err(Error::SizeMismatch(format!("|μ| = {k} exceeds {rows}x{cols}")));
    }
    let mut total = BigInt::zero();
    for lambda in Partition::in_box(k, rows, cols) {
        let chi = mn_character(&lambda, mu)?;
        total += chi * lambda.complement(rows, cols)?.syt_count();
    }
    Ok(total)
}

/// `H_{p×q} · Σ_{λ ⊆ p×q, λ ⊢ k} χ^λ(μ) / H_{λ̃}`, the hook-product form of
/// the normalized rectangular character.
pub fn rect_normalized_via_hooks(rows: usize, cols: usize, mu: &Partition) -> Result<BigRational> {
    let k = mu.size();
    if k > rows * cols {
        return Err(Error::SizeMismatch(format!("|μ| = {k} exceeds {rows}x{cols}")));
    }
    let mut sum = BigRational::zero();
    for lambda in Partition::in_box(k, rows, cols) {
        let chi = mn_character(&lambda, mu)?;
        sum += BigRational::new(chi, lambda.complement(rows, cols)?.hook_product());
    }
    Ok(sum * BigRational::from_integer(Partition::rectangle(rows, cols).hook_product()))
}
