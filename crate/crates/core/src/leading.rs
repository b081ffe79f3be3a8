//! Leading terms `G_k` of `F_k` (total degree `k + 1`), their generating
//! function, and the Catalan, Narayana and Schröder specializations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, falling_factorial, factorial};
use crate::error::{Error, Result};
use crate::frobenius::{f_k_polynomial, flip, lower_offset, upper_offset};
use crate::series::{IntPoly, PowerSeries};

/// Largest `k` accepted by the series routes.
pub const LEADING_CAP: usize = 12;

fn check_cap(k: usize) -> Result<()> {
    if k > LEADING_CAP {
        return Err(Error::CapExceeded { k, cap: LEADING_CAP });
    }
    Ok(())
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidShape("need at least one rectangle".into()));
    }
    Ok(())
}

/// The homogeneous part of `F_k` of total degree `k + 1`.
pub fn g_k_leading(m: usize, k: usize) -> Result<IntPoly> {
    Ok(f_k_polynomial(m, k)?.homogeneous_part(k as u32 + 1))
}

/// `M(x) = ∏ (1 - A_i x) / (1 - B_i x)` through `x^order`, where `A_i`
/// and `B_i` are the upper and lower offsets of rectangle `i`.
fn kernel(m: usize, order: usize) -> Result<PowerSeries<IntPoly>> {
    let mut acc = PowerSeries::constant(IntPoly::one(), order);
    for i in 0..m {
        let num = linear(&upper_offset(m, i), order);
        let den = linear(&lower_offset(m, i), order);
        acc = acc.mul(&num.div(&den)?);
    }
    Ok(acc)
}

/// `1 - a x`.
fn linear(a: &IntPoly, order: usize) -> PowerSeries<IntPoly> {
    let mut coeffs = vec![IntPoly::zero(); order + 1];
    coeffs[0] = IntPoly::one();
    if order >= 1 {
        coeffs[1] = -a;
    }
    PowerSeries::new(coeffs)
}

/// `-(1/k) [x^{k+1}] M(x)^k`.
pub fn g_k_via_lagrange(m: usize, k: usize) -> Result<IntPoly> {
    check_m(m)?;
    check_cap(k)?;
    if k == 0 {
        return Err(Error::SeriesPrecondition("k must be positive".into()));
    }
    let top = kernel(m, k + 1)?.pow(k).coeff(k + 1);
    top.exact_div(&BigInt::from(-(k as i64)))
        .ok_or_else(|| Error::NonIntegral(format!("[x^{}] M^{k} not divisible by {k}", k + 1)))
}

/// `G_0, ..., G_kmax` from `1/x + Σ G_k x^k = 1 / (x/M(x))^{⟨-1⟩}`.
pub fn gk_generating_series(m: usize, kmax: usize) -> Result<Vec<IntPoly>> {
    check_m(m)?;
    check_cap(kmax)?;
    let order = kmax + 2;
    let h = PowerSeries::x(order).div(&kernel(m, order)?)?;
    let g = h.compositional_inverse()?;
    // g = x (1 + ...), so 1/g = (1/x) / (g/x)
    let shifted = PowerSeries::new(g.coeffs()[1..].to_vec());
    let inv = shifted.recip()?;
    Ok((0..=kmax).map(|k| inv.coeff(k + 1)).collect())
}

/// The generating-function route reproduces `G_1..G_kmax`.
pub fn gk_generating_check(m: usize, kmax: usize) -> Result<bool> {
    let series = gk_generating_series(m, kmax)?;
    for (k, g) in series.iter().enumerate().skip(1) {
        if *g != g_k_leading(m, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `S_k = (-1)^k G_k(1..1; -1..-1)` as the coefficient sum of the flipped
/// leading part, for `k = 1..=kmax`.
pub fn s_k_from_coefficient_sums(m: usize, kmax: usize) -> Result<Vec<BigInt>> {
    (1..=kmax).map(|k| Ok(flip(&g_k_leading(m, k)?, m, k).coefficient_sum())).collect()
}

/// `S_1..S_kmax` from `-1/x + Σ S_k x^k = -1 / (x(1-x)/(1+(m-1)x))^{⟨-1⟩}`.
pub fn s_k_from_series(m: usize, kmax: usize) -> Result<Vec<BigInt>> {
    check_m(m)?;
    check_cap(kmax)?;
    let order = kmax + 2;
    let mut num = vec![BigInt::zero(); order + 1];
    num[1] = BigInt::one();
    num[2] = -BigInt::one();
    let mut den = vec![BigInt::zero(); order + 1];
    den[0] = BigInt::one();
    den[1] = BigInt::from(m as i64 - 1);
    let h = PowerSeries::new(num).div(&PowerSeries::new(den))?;
    let g = h.compositional_inverse()?;
    let inv = PowerSeries::new(g.coeffs()[1..].to_vec()).recip()?;
    Ok((1..=kmax).map(|k| -inv.coeff(k + 1)).collect())
}

/// `S_1..S_kmax`; the coefficient-sum route.
pub fn s_k_sequence(m: usize, kmax: usize) -> Result<Vec<BigInt>> {
    check_m(m)?;
    check_cap(kmax)?;
    s_k_from_coefficient_sums(m, kmax)
}

/// `N(k, i) = (1/k) C(k, i) C(k, i-1)`.
pub fn narayana(k: usize, i: usize) -> BigInt {
    if k == 0 || i == 0 || i > k {
        return BigInt::zero();
    }
    let (k, i) = (k as i64, i as i64);
    binomial(k, i) * binomial(k, i - 1) / BigInt::from(k)
}

pub fn catalan(k: usize) -> BigInt {
    factorial(2 * k) / (factorial(k) * factorial(k + 1))
}

/// For `m = 1`, the flipped `G_k` is `Σ N(k, i) p^{k+1-i} q^i`, for all
/// `k ≤ kmax`.
pub fn narayana_check(kmax: usize) -> Result<bool> {
    check_cap(kmax)?;
    for k in 1..=kmax {
        let g = flip(&g_k_leading(1, k)?, 1, k);
        let expected = IntPoly::from_terms((1..=k).map(|i| (vec![(k + 1 - i) as u32, i as u32], narayana(k, i))));
        if g != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// How `C(n, r)` is read when `n < 0` in the closed formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BinomialConvention {
    /// `C(n, r) = (n)_r / r!` for every integer `n`.
    Extended,
    /// `C(n, r) = 0` whenever `n < 0`.
    Truncated,
}

fn choose(n: i64, r: i64, conv: BinomialConvention) -> BigInt {
    match conv {
        BinomialConvention::Truncated if n < 0 => BigInt::zero(),
        _ => binomial(n, r),
    }
}

/// Multiset coefficient `((a, b)) = C(a + b - 1, b)`.
fn multichoose(a: i64, b: i64, conv: BinomialConvention) -> BigInt {
    choose(a + b - 1, b, conv)
}

/// Weak compositions of `total` into `parts` nonnegative integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The closed formula for the flipped `G_k`, reading the inner summation
/// index as the subtracted term of the last binomial.
pub fn elizalde_formula_with(m: usize, k: usize, conv: BinomialConvention) -> Result<IntPoly> {
    check_m(m)?;
    check_cap(k)?;
    if k == 0 {
        return Err(Error::SeriesPrecondition("k must be positive".into()));
    }
    let kk = k as i64;
    let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    for exps in compositions(k + 1, 2 * m) {
        let (is, js) = exps.split_at(m);
        let (i1, j1) = (is[0] as i64, js[0] as i64);
        let mut coef = choose(kk, i1, conv) * multichoose(i1, j1, conv);
        let mut used = i1 + j1;
        for s in 1..m {
            if coef.is_zero() {
                break;
            }
            let (i, j) = (is[s] as i64, js[s] as i64);
            let inner: BigInt = (0..=i.min(j))
                .map(|r| {
                    choose(kk, r, conv) * multichoose(r, j - r, conv) * choose(kk - r - used, i - r, conv)
                })
                .sum();
            coef *= inner;
            used += i + j;
        }
        if !coef.is_zero() {
            terms.insert(exps.iter().map(|&e| e as u32).collect(), coef);
        }
    }
    let sum = IntPoly::from_terms(terms);
    sum.exact_div(&BigInt::from(kk))
        .ok_or_else(|| Error::NonIntegral(format!("closed formula sum for m={m}, k={k} not divisible by {k}")))
}

/// The closed formula under the convention that matches the leading terms.
pub fn elizalde_formula(m: usize, k: usize) -> Result<IntPoly> {
    elizalde_formula_with(m, k, BinomialConvention::Extended)
}

/// Result of comparing the closed formula with the flipped leading terms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElizaldeComparison {
    pub m: usize,
    pub k: usize,
    pub matches: bool,
    /// Monomials whose coefficients differ: `(exponents, formula, leading)`.
    pub mismatches: Vec<(Vec<u32>, String, String)>,
}

pub fn elizalde_compare(m: usize, k: usize, conv: BinomialConvention) -> Result<ElizaldeComparison> {
    let formula = elizalde_formula_with(m, k, conv)?;
    let oracle = flip(&g_k_leading(m, k)?, m, k);
    let diff = &formula - &oracle;
    let mismatches: Vec<_> = diff
        .terms()
        .map(|(mono, _)| {
            let e = mono.exps().to_vec();
            let f = formula.coeff(&e).to_string();
            let o = oracle.coeff(&e).to_string();
            (e, f, o)
        })
        .collect();
    Ok(ElizaldeComparison { m, k, matches: mismatches.is_empty(), mismatches })
}

/// `(k + m - 1)_k`, the full coefficient sum of the flipped `F_k`.
pub fn full_sum(m: usize, k: usize) -> BigInt {
    falling_factorial((k + m - 1) as i64, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rect::narayana_refinement;

    fn m2(s: &str) -> IntPoly {
        IntPoly::parse(s, &['a', 'p', 'b', 'q']).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// `C_{n+1} = Σ C_i C_{n-i}`.
    fn catalan_by_recurrence(n: usize) -> Vec<BigInt> {
        let mut c = vec![BigInt::one()];
        for j in 1..=n {
            let next = (0..j).map(|i| &c[i] * &c[j - 1 - i]).sum();
            c.push(next);
        }
        c
    }

    /// Big Schröder numbers: `(n+1) r_{n+1} = 3(2n+1) r_n - (n-1) r_{n-1}`.
    fn schroeder(n: usize) -> Vec<BigInt> {
        let mut r = ints(&[1, 2]);
        for j in 1..n {
            let jj = j as i64;
            let next = (BigInt::from(3 * (2 * jj + 1)) * &r[j] - BigInt::from(jj - 1) * &r[j - 1]) / (jj + 2);
            r.push(next);
        }
        r.truncate(n + 1);
        r
    }

    #[test]
    fn leading_examples() {
        assert_eq!(flip(&g_k_leading(2, 1).unwrap(), 2, 1), m2("ab+pq"));
        let f3 = flip(&f_k_polynomial(2, 3).unwrap(), 2, 3);
        assert_eq!(flip(&g_k_leading(2, 3).unwrap(), 2, 3), &f3 - &m2("ab+pq"));
        let pq = |s: &str| IntPoly::parse(s, &['p', 'q']).unwrap();
        assert_eq!(flip(&g_k_leading(1, 2).unwrap(), 1, 2), pq("p^2q+pq^2"));
    }

    #[test]
    fn lagrange_route_agrees() {
        assert_eq!(g_k_via_lagrange(1, 1).unwrap(), IntPoly::parse("pq", &['p', 'q']).unwrap());
        for m in 1..=3 {
            for k in 1..=4 {
                assert_eq!(g_k_via_lagrange(m, k).unwrap(), g_k_leading(m, k).unwrap(), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn generating_function() {
        for m in 1..=3 {
            assert!(gk_generating_check(m, 4).unwrap(), "m={m}");
        }
        let g = gk_generating_series(2, 1).unwrap();
        assert_eq!(g[0], m2("a+p"));
    }

    #[test]
    fn degenerate_kernel() {
        // all p_i = q_i = 0: M = 1, the inverse is x and G_k vanishes
        let zero = vec![IntPoly::zero(); 4];
        for g in gk_generating_series(2, 4).unwrap().iter().skip(1) {
            assert!(g.substitute(&zero).is_zero());
        }
    }

    #[test]
    fn catalan_specialization() {
        let s = s_k_sequence(1, 10).unwrap();
        assert_eq!(s, catalan_by_recurrence(10)[1..].to_vec());
        assert_eq!(s_k_from_series(1, 10).unwrap(), s);
        assert_eq!(&s[..5], &ints(&[1, 2, 5, 14, 42])[..]);
    }

    #[test]
    fn schroeder_specialization() {
        let s = s_k_sequence(2, 8).unwrap();
        assert_eq!(&s[..3], &ints(&[2, 6, 22])[..]);
        assert_eq!(s_k_from_series(2, 8).unwrap(), s);
        assert_eq!(s, schroeder(8)[1..].to_vec());
        for m in 3..=4 {
            assert_eq!(s_k_from_series(m, 5).unwrap(), s_k_sequence(m, 5).unwrap());
        }
    }

    #[test]
    fn narayana_numbers() {
        assert_eq!(narayana(1, 1), BigInt::one());
        assert_eq!((1..=3).map(|i| narayana(3, i)).collect::<Vec<_>>(), ints(&[1, 3, 1]));
        let row: BigInt = (1..=10).map(|i| narayana(10, i)).sum();
        assert_eq!(row, BigInt::from(16796));
        assert_eq!(catalan(10), BigInt::from(16796));
        assert!(narayana_check(10).unwrap());
    }

    #[test]
    fn narayana_bridge_to_pair_counts() {
        for k in 1..=7 {
            let g = flip(&g_k_leading(1, k).unwrap(), 1, k);
            for (i, n) in narayana_refinement(k, 10).unwrap() {
                assert_eq!(g.coeff(&[i as u32, (k + 1 - i) as u32]), BigInt::from(n));
            }
        }
    }

    #[test]
    fn closed_formula() {
        let pq = |s: &str| IntPoly::parse(s, &['p', 'q']).unwrap();
        assert_eq!(elizalde_formula(1, 2).unwrap(), pq("p^2q+pq^2"));
        assert_eq!(elizalde_formula(2, 2).unwrap(), m2("a^2b+ab^2+2apq+p^2q+pq^2"));
        assert_eq!(elizalde_formula(2, 4).unwrap().coeff(&[1, 2, 0, 2]), BigInt::from(14));
        for m in 1..=3 {
            for k in 1..=4 {
                let cmp = elizalde_compare(m, k, BinomialConvention::Extended).unwrap();
                assert!(cmp.matches, "{cmp:?}");
            }
        }
        // dropping C(-1, 0) = 1 loses the terms with i_1 = j_1 = 0
        let cmp = elizalde_compare(2, 1, BinomialConvention::Truncated).unwrap();
        assert!(!cmp.matches);
        assert!(cmp.mismatches.iter().any(|(e, f, o)| e == &vec![0, 1, 0, 1] && f == "0" && o == "1"));
    }

    #[test]
    fn coefficient_sums_below_full_sum() {
        for m in 1..=3 {
            for (k, s) in s_k_sequence(m, 4).unwrap().into_iter().enumerate() {
                assert!(s <= full_sum(m, k + 1));
            }
        }
    }

    #[test]
    fn caps() {
        assert!(matches!(g_k_via_lagrange(1, 13), Err(Error::CapExceeded { .. })));
        assert!(g_k_via_lagrange(0, 1).is_err());
    }
}
