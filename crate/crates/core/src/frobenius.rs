//! Single-cycle characters of unions of rectangles.
//!
//! For a shape `λ` with `r` rows, set `μ_i = λ_i + r - i` and
//! `φ(x) = ∏ (x - μ_i)`. Then
//!
//! ```text
//! χ̂^λ(k, 1^{n-k}) = -(1/k) [x^{-1}] (x)_k φ(x-k) / φ(x)
//! ```
//!
//! with the coefficient taken in the expansion at infinity. For a union of
//! `m` rectangles the common factors cancel, leaving a quotient of falling
//! factorials whose residue is a polynomial `F_k` in the rectangle sizes.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{falling_factorial, sign};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::series::{residue_at_infinity, IntPoly, LaurentSeriesAtInfinity};

/// `σ` made of `p_i` rows of length `q_i`, with `q_1 > q_2 > ... > q_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiRectShape {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MultiRectShape {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.is_empty() || rows.len() != cols.len() {
            return Err(Error::InvalidShape(format!("need m ≥ 1 row counts and column lengths, got {rows:?} / {cols:?}")));
        }
        if rows.iter().chain(&cols).any(|&x| x == 0) {
            return Err(Error::InvalidShape("rectangle sizes must be positive".into()));
        }
        if cols.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidShape(format!("column lengths {cols:?} are not strictly decreasing")));
        }
        Ok(MultiRectShape { rows, cols })
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn size(&self) -> usize {
        self.rows.iter().zip(&self.cols).map(|(p, q)| p * q).sum()
    }

    pub fn to_partition(&self) -> Partition {
        let parts = self
            .rows
            .iter()
            .zip(&self.cols)
            .flat_map(|(&p, &q)| std::iter::repeat_n(q, p))
            .collect();
        Partition::new(parts).expect("strictly decreasing column lengths")
    }

    /// `(p_1, ..., p_m, q_1, ..., q_m)` as a polynomial evaluation point.
    pub fn point(&self) -> Vec<BigInt> {
        self.rows.iter().chain(&self.cols).map(|&x| BigInt::from(x)).collect()
    }
}

/// Ascending coefficients of `(x - c)_k = ∏_{j<k} (x - c - j)`.
fn falling_factorial_poly(c: i64, k: usize) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::one()];
    for j in 0..k as i64 {
        coeffs = mul_linear(&coeffs, &BigInt::from(-(c + j)));
    }
    coeffs
}

/// Multiplies ascending coefficients by `(x + a)`.
fn mul_linear(coeffs: &[BigInt], a: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); coeffs.len() + 1];
    for (i, c) in coeffs.iter().enumerate() {
        out[i + 1] += c;
        out[i] += c * a;
    }
    out
}

/// `χ̂^λ(k, 1^{n-k})` through the residue formula.
pub fn frobenius_normalized(shape: &Partition, k: usize) -> Result<BigRational> {
    let n = shape.size();
    if k == 0 || k > n {
        return Err(Error::SizeMismatch(format!("cycle length {k} must lie in 1..={n}")));
    }
    let r = shape.len();
    let shifted: Vec<i64> = shape.parts().iter().enumerate().map(|(i, &l)| (l + r - 1 - i) as i64).collect();
    let mut numerator = falling_factorial_poly(0, k);
    for &s in &shifted {
        numerator = mul_linear(&numerator, &BigInt::from(-(s + k as i64)));
    }
    let roots: Vec<BigInt> = shifted.iter().map(|&s| BigInt::from(s)).collect();
    let residue = residue_at_infinity(&numerator, &roots);
    Ok(BigRational::new(-residue, BigInt::from(k)))
}

fn p_var(i: usize) -> IntPoly {
    IntPoly::var(i)
}

fn q_var(m: usize, i: usize) -> IntPoly {
    IntPoly::var(m + i)
}

/// `q_i + p_{i+1} + ... + p_m` (0-based `i`).
pub fn lower_offset(m: usize, i: usize) -> IntPoly {
    (i + 1..m).fold(q_var(m, i), |acc, j| &acc + &p_var(j))
}

/// `q_i + p_i + ... + p_m` (0-based `i`).
pub fn upper_offset(m: usize, i: usize) -> IntPoly {
    &lower_offset(m, i) + &p_var(i)
}

/// `[x^{-1}] (x)_k ∏ (x - A_i)_k / (x - B_i)_k`, which is `-k F_k`.
///
/// Pairing numerator and denominator factors gives
/// `(x - A_i - j)/(x - B_i - j) = 1 - p_i/(x - B_i - j)`. The product is
/// first formed with `B_i` as a stand-in variable (stored in the slot of
/// `q_i`), so the `m` blocks involve disjoint variables, and `B_i` is
/// substituted at the end.
fn residue_poly(m: usize, k: usize) -> IntPoly {
    // (x)_k has top degree k; its x^{-1} coefficient needs the factor
    // product through x^{-(k+1)}.
    let depth = k + 2;
    let mut product = LaurentSeriesAtInfinity::<IntPoly>::one();
    for i in 0..m {
        let p = p_var(i);
        let b = q_var(m, i);
        let mut block = LaurentSeriesAtInfinity::<IntPoly>::one();
        for j in 0..k {
            let root = &b + &IntPoly::constant(BigInt::from(j));
            let factor = LaurentSeriesAtInfinity::one()
                .add(&LaurentSeriesAtInfinity::reciprocal_linear(&root, depth).scale(&-&p));
            block = block.mul(&factor);
        }
        product = product.mul(&block);
    }
    let ff: Vec<IntPoly> = falling_factorial_poly(0, k).into_iter().map(IntPoly::constant).collect();
    let residue = LaurentSeriesAtInfinity::polynomial(ff)
        .mul(&product)
        .coefficient(-1)
        .expect("expansion depth covers x^{-1}");
    let images: Vec<IntPoly> = (0..m).map(p_var).chain((0..m).map(|i| lower_offset(m, i))).collect();
    residue.substitute(&images)
}

fn cache() -> &'static Mutex<HashMap<(usize, usize), IntPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached_residue(m: usize, k: usize) -> IntPoly {
    if let Some(p) = cache().lock().expect("cache lock").get(&(m, k)) {
        return p.clone();
    }
    let poly = residue_poly(m, k);
    cache().lock().expect("cache lock").insert((m, k), poly.clone());
    poly
}

/// `F_k(p_1..p_m; q_1..q_m)` over variables `p_1..p_m, q_1..q_m`.
pub fn f_k_polynomial(m: usize, k: usize) -> Result<IntPoly> {
    if m == 0 || k == 0 {
        return Err(Error::InvalidShape(format!("need m ≥ 1 and k ≥ 1, got m={m}, k={k}")));
    }
    cached_residue(m, k)
        .exact_div(&BigInt::from(-(k as i64)))
        .ok_or_else(|| Error::NonIntegral(format!("[x^-1] H_k for m={m}, k={k} is not divisible by {k}")))
}

/// Every coefficient of `[x^{-1}] H_k` is divisible by `k`.
pub fn integrality_witness(m: usize, k: usize) -> bool {
    m > 0 && k > 0 && cached_residue(m, k).exact_div(&BigInt::from(k)).is_some()
}

/// `(-1)^k F(p_1..p_m; -q_1..-q_m)` for a polynomial over `p`'s then `q`'s.
pub fn flip(poly: &IntPoly, m: usize, k: usize) -> IntPoly {
    poly.map_terms(|mono, c| {
        let q_degree: u32 = (m..2 * m).map(|i| mono.exp(i)).sum();
        c * sign(k + q_degree as usize)
    })
}

/// `(-1)^k F_k(1, ..., 1; -1, ..., -1)`.
pub fn f_k_special_value(m: usize, k: usize) -> Result<BigInt> {
    Ok(flip(&f_k_polynomial(m, k)?, m, k).coefficient_sum())
}

/// `(k + m - 1)_k`.
pub fn expected_special_value(m: usize, k: usize) -> BigInt {
    falling_factorial((k + m - 1) as i64, k)
}

/// Evaluates a polynomial over `p`'s and `q`'s at a shape.
pub fn eval_at_shape(poly: &IntPoly, shape: &MultiRectShape) -> BigInt {
    let mut point = shape.point();
    point.resize(point.len().max(poly.width()), BigInt::zero());
    poly.eval(&point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::normalized_character;
    use crate::rect::factorization_poly;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn rat(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    /// Paper letters for m = 2: a = p1, p = p2, b = q1, q = q2.
    fn m2(s: &str) -> IntPoly {
        IntPoly::parse(s, &['a', 'p', 'b', 'q']).unwrap()
    }

    #[test]
    fn shapes() {
        let s = MultiRectShape::new(vec![2], vec![3]).unwrap();
        assert_eq!(s.to_partition(), p("3,3"));
        let s = MultiRectShape::new(vec![1, 1], vec![2, 1]).unwrap();
        assert_eq!(s.to_partition(), p("2,1"));
        let s = MultiRectShape::new(vec![2, 1], vec![3, 1]).unwrap();
        assert_eq!((s.to_partition(), s.size()), (p("3,3,1"), 7));
        assert!(MultiRectShape::new(vec![1, 1], vec![2, 2]).is_err());
        assert!(MultiRectShape::new(vec![1], vec![0]).is_err());
        assert!(MultiRectShape::new(vec![1, 2], vec![3]).is_err());
    }

    #[test]
    fn frobenius_examples() {
        for n in 1..=6 {
            assert_eq!(frobenius_normalized(&Partition::rectangle(1, n), 1).unwrap(), rat(n as i64));
        }
        assert_eq!(frobenius_normalized(&p("2,2"), 2).unwrap(), rat(0));
        assert_eq!(
            frobenius_normalized(&p("3,3"), 3).unwrap(),
            normalized_character(&p("3,3"), &p("3")).unwrap()
        );
        assert!(frobenius_normalized(&p("2"), 3).is_err());
        assert!(frobenius_normalized(&p("2"), 0).is_err());
    }

    #[test]
    fn frobenius_matches_mn_small() {
        for n in 1..=9 {
            for shape in Partition::all(n) {
                for k in 1..=n {
                    let mu = Partition::new(vec![k]).unwrap();
                    assert_eq!(
                        frobenius_normalized(&shape, k).unwrap(),
                        normalized_character(&shape, &mu).unwrap(),
                        "{shape}, k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn two_rectangle_data() {
        assert_eq!(f_k_polynomial(2, 1).unwrap(), m2("ab+pq"));
        assert_eq!(flip(&f_k_polynomial(2, 1).unwrap(), 2, 1), m2("ab+pq"));
        assert_eq!(flip(&f_k_polynomial(2, 2).unwrap(), 2, 2), m2("a^2b+ab^2+2apq+p^2q+pq^2"));
        let f4 = flip(&f_k_polynomial(2, 4).unwrap(), 2, 4);
        assert_eq!(f4.coeff(&[1, 2, 0, 2]), BigInt::from(14));
    }

    #[test]
    fn special_values() {
        assert_eq!(f_k_special_value(1, 1).unwrap(), BigInt::from(1));
        assert_eq!(f_k_special_value(1, 3).unwrap(), BigInt::from(6));
        assert_eq!(f_k_special_value(3, 2).unwrap(), BigInt::from(12));
        assert_eq!(expected_special_value(3, 2), BigInt::from(12));
    }

    #[test]
    fn integrality() {
        for k in 1..=4 {
            assert!(integrality_witness(2, k));
        }
        for k in 1..=8 {
            assert!(integrality_witness(1, k));
        }
        for k in 1..=5 {
            assert!(integrality_witness(3, k));
        }
        assert!(f_k_polynomial(0, 1).is_err());
    }

    #[test]
    fn specializes_to_frobenius() {
        for (rows, cols) in [(vec![2, 3], vec![4, 1]), (vec![1, 1, 2], vec![4, 2, 1]), (vec![3], vec![2])] {
            let shape = MultiRectShape::new(rows, cols).unwrap();
            let m = shape.m();
            for k in 1..=shape.size().min(5) {
                let f = f_k_polynomial(m, k).unwrap();
                let direct = frobenius_normalized(&shape.to_partition(), k).unwrap();
                assert_eq!(BigRational::from_integer(eval_at_shape(&f, &shape)), direct, "{shape:?} k={k}");
            }
        }
    }

    #[test]
    fn one_rectangle_meets_factorization_sum() {
        for k in 1..=6 {
            let f = f_k_polynomial(1, k).unwrap();
            let g = factorization_poly(&Partition::new(vec![k]).unwrap(), 10).unwrap();
            assert_eq!(f, g, "k={k}");
        }
    }
}
