//! `F_μ(p_1..p_m; q_1..q_m)`, the normalized character of a union of
//! rectangles at a fixed cycle type, rebuilt from its values by tensor
//! Newton interpolation, and the nonnegativity check on its coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::character::normalized_character;
use crate::error::{Error, Result};
use crate::frobenius::{eval_at_shape, expected_special_value, MultiRectShape};
use crate::partition::Partition;
use crate::series::{rectangle_var_names, IntPoly, JsonTerm, RatPoly};

/// Size limits for interpolation; the grid has `(k+2)^{2m}` nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpCaps {
    pub max_m: usize,
    pub max_k: usize,
}

impl Default for InterpCaps {
    fn default() -> Self {
        InterpCaps { max_m: 2, max_k: 4 }
    }
}

/// Seed for the off-grid shapes used by the fidelity check.
pub const FIDELITY_SEED: u64 = 0x5eed_f00d;
pub const FIDELITY_SAMPLES: usize = 20;

/// Interpolation nodes for each of the `2m` variables.
///
/// Every `p_i` takes `1..=k+2`. The `q_i` take disjoint bands of `k+2`
/// consecutive values, higher bands for smaller `i`, so every node has
/// `q_1 > ... > q_m`. The lowest band starts at `k`, which keeps `n ≥ k`.
pub fn grid_nodes(m: usize, k: usize) -> Vec<Vec<i64>> {
    let width = k as i64 + 2;
    let mut axes: Vec<Vec<i64>> = (0..m).map(|_| (1..=width).collect()).collect();
    for i in 0..m {
        let start = (m - 1 - i) as i64 * width + k.max(1) as i64;
        axes.push((start..start + width).collect());
    }
    axes
}

fn shape_at(coords: &[i64], m: usize) -> Result<MultiRectShape> {
    let rows = coords[..m].iter().map(|&x| x as usize).collect();
    let cols = coords[m..].iter().map(|&x| x as usize).collect();
    MultiRectShape::new(rows, cols)
}

fn check_caps(m: usize, mu: &Partition, caps: &InterpCaps) -> Result<()> {
    if m == 0 || mu.is_empty() {
        return Err(Error::InvalidShape("need m ≥ 1 and a nonempty μ".into()));
    }
    if m > caps.max_m {
        return Err(Error::CapExceeded { k: m, cap: caps.max_m });
    }
    if mu.size() > caps.max_k {
        return Err(Error::CapExceeded { k: mu.size(), cap: caps.max_k });
    }
    Ok(())
}

/// Ascending monomial coefficients of the interpolant through `(x_j, y_j)`.
fn newton_line(xs: &[i64], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut c = ys.to_vec();
    for level in 1..n {
        for j in (level..n).rev() {
            let dx = BigInt::from(xs[j] - xs[j - level]);
            c[j] = (&c[j] - &c[j - 1]) / BigRational::from_integer(dx);
        }
    }
    // Horner on the Newton form
    let mut poly = vec![c[n - 1].clone()];
    for j in (0..n - 1).rev() {
        let shift = BigRational::from_integer(BigInt::from(xs[j]));
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (e, a) in poly.iter().enumerate() {
            next[e + 1] += a;
            next[e] -= a * &shift;
        }
        next[0] += &c[j];
        poly = next;
    }
    poly.truncate(n);
    poly
}

/// Rational interpolant of `χ̂^σ(μ, 1^{n-k})` over the tensor grid.
pub fn interpolate_rational(m: usize, mu: &Partition, caps: &InterpCaps) -> Result<RatPoly> {
    check_caps(m, mu, caps)?;
    let k = mu.size();
    let axes = grid_nodes(m, k);
    let dims = axes.len();
    let width = k + 2;
    let total = width.pow(dims as u32);
    let coords_of = |mut flat: usize| -> Vec<i64> {
        (0..dims)
            .map(|d| {
                let x = axes[d][flat % width];
                flat /= width;
                x
            })
            .collect()
    };

    let mut values: Vec<BigRational> = (0..total)
        .into_par_iter()
        .map(|flat| normalized_character(&shape_at(&coords_of(flat), m)?.to_partition(), mu))
        .collect::<Result<_>>()?;

    for (d, nodes) in axes.iter().enumerate() {
        let stride = width.pow(d as u32);
        for base in (0..total).filter(|b| (b / stride).is_multiple_of(width)) {
            let line: Vec<BigRational> = (0..width).map(|j| values[base + j * stride].clone()).collect();
            for (j, a) in newton_line(nodes, &line).into_iter().enumerate() {
                values[base + j * stride] = a;
            }
        }
    }

    let terms = values.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(mut flat, c)| {
        let exps = (0..dims)
            .map(|_| {
                let e = (flat % width) as u32;
                flat /= width;
                e
            })
            .collect();
        (exps, c)
    });
    let poly = RatPoly::from_terms(terms);
    let bound = (k + mu.len()) as u32;
    if poly.total_degree().is_some_and(|d| d > bound) {
        return Err(Error::Interpolation(format!(
            "interpolant for m={m}, μ={mu} has total degree {:?} above {bound}",
            poly.total_degree()
        )));
    }
    Ok(poly)
}

/// `F_μ` with integer coefficients; a fractional coefficient is an error.
pub fn f_mu_interpolate_with(m: usize, mu: &Partition, caps: &InterpCaps) -> Result<IntPoly> {
    interpolate_rational(m, mu, caps)?
        .to_integer()
        .ok_or_else(|| Error::NonIntegral(format!("F_μ for m={m}, μ={mu}")))
}

pub fn f_mu_interpolate(m: usize, mu: &Partition) -> Result<IntPoly> {
    f_mu_interpolate_with(m, mu, &InterpCaps::default())
}

/// `(-1)^k F(p; -q)` over the rationals.
fn flip_rational(poly: &RatPoly, m: usize, k: usize) -> RatPoly {
    poly.map_terms(|mono, c| {
        let q_degree: u32 = (m..2 * m).map(|i| mono.exp(i)).sum();
        if (k + q_degree as usize).is_multiple_of(2) {
            c.clone()
        } else {
            -c.clone()
        }
    })
}

/// Admissible shapes off the interpolation grid, drawn from a seeded RNG.
pub fn off_grid_shapes(m: usize, k: usize, count: usize, seed: u64) -> Vec<MultiRectShape> {
    let axes = grid_nodes(m, k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q_max = (m * (k + 2) + k + 6) as i64;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let ps: Vec<i64> = (0..m).map(|_| rng.gen_range(1..=k as i64 + 5)).collect();
        let mut qs: Vec<i64> = Vec::with_capacity(m);
        while qs.len() < m {
            let q = rng.gen_range(1..=q_max);
            if !qs.contains(&q) {
                qs.push(q);
            }
        }
        qs.sort_unstable_by(|a, b| b.cmp(a));
        let coords: Vec<i64> = ps.into_iter().chain(qs).collect();
        let on_grid = coords.iter().zip(&axes).all(|(x, nodes)| nodes.contains(x));
        let Ok(shape) = shape_at(&coords, m) else { continue };
        if !on_grid && shape.size() >= k {
            out.push(shape);
        }
    }
    out
}

/// One fidelity probe: the polynomial against the character at a shape.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FidelityFailure {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub polynomial_value: String,
    pub character_value: String,
}

/// Outcome of checking the nonnegativity conjecture for one `(m, μ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub m: usize,
    pub mu: Partition,
    pub k: usize,
    pub variables: Vec<String>,
    /// `F_μ` itself.
    pub polynomial: Vec<JsonTerm>,
    /// `(-1)^k F_μ(p; -q)`.
    pub flipped: Vec<JsonTerm>,
    pub flipped_text: String,
    pub integer_coefficients: bool,
    pub nonnegative: bool,
    pub coefficient_sum: String,
    pub expected_sum: String,
    pub sum_matches: bool,
    pub fidelity_samples: usize,
    pub fidelity_failures: Vec<FidelityFailure>,
}

impl ConjectureReport {
    pub fn passed(&self) -> bool {
        self.integer_coefficients && self.nonnegative && self.sum_matches && self.fidelity_failures.is_empty()
    }
}

pub fn conjecture1_check_with(m: usize, mu: &Partition, caps: &InterpCaps, samples: usize) -> Result<ConjectureReport> {
    let k = mu.size();
    let rational = interpolate_rational(m, mu, caps)?;
    let flipped = flip_rational(&rational, m, k);
    let names = rectangle_var_names(m);
    let integer = rational.to_integer();
    let sum = flipped.coefficient_sum();
    let expected = BigRational::from_integer(expected_special_value(m, k));

    let fidelity_failures = off_grid_shapes(m, k, samples, FIDELITY_SEED)
        .into_par_iter()
        .map(|shape| -> Result<Option<FidelityFailure>> {
            let direct = normalized_character(&shape.to_partition(), mu)?;
            let value = match &integer {
                Some(p) => BigRational::from_integer(eval_at_shape(p, &shape)),
                None => {
                    let mut point: Vec<BigRational> =
                        shape.point().into_iter().map(BigRational::from_integer).collect();
                    point.resize(point.len().max(rational.width()), BigRational::zero());
                    rational.eval(&point)
                }
            };
            Ok((value != direct).then(|| FidelityFailure {
                rows: shape.rows().to_vec(),
                cols: shape.cols().to_vec(),
                polynomial_value: value.to_string(),
                character_value: direct.to_string(),
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let nonnegative = flipped.terms().all(|(_, c)| !c.is_negative());
    let flipped_text = match flipped.to_integer() {
        Some(p) => p.render(&names),
        None => format!("{flipped:?}"),
    };
    Ok(ConjectureReport {
        m,
        mu: mu.clone(),
        k,
        variables: names,
        polynomial: rational.to_json_terms(2 * m),
        flipped: flipped.to_json_terms(2 * m),
        flipped_text,
        integer_coefficients: integer.is_some(),
        nonnegative,
        coefficient_sum: sum.to_string(),
        expected_sum: expected.to_string(),
        sum_matches: sum == expected,
        fidelity_samples: samples,
        fidelity_failures,
    })
}

pub fn conjecture1_check(m: usize, mu: &Partition) -> Result<ConjectureReport> {
    conjecture1_check_with(m, mu, &InterpCaps::default(), FIDELITY_SAMPLES)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::{f_k_polynomial, flip};
    use crate::rect::factorization_poly;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn m2(s: &str) -> IntPoly {
        IntPoly::parse(s, &['a', 'p', 'b', 'q']).unwrap()
    }

    #[test]
    fn newton_line_recovers_cubic() {
        let f = |x: i64| 2 * x * x * x - x + 7;
        let xs = [3, 4, 5, 6];
        let ys: Vec<BigRational> = xs.iter().map(|&x| BigRational::from_integer(BigInt::from(f(x)))).collect();
        let coeffs = newton_line(&xs, &ys);
        let expect: Vec<BigRational> = [7, -1, 0, 2].iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        assert_eq!(coeffs, expect);
    }

    #[test]
    fn grid_is_admissible() {
        for m in 1..=3 {
            for k in 1..=4 {
                let axes = grid_nodes(m, k);
                assert_eq!(axes.len(), 2 * m);
                for i in 1..m {
                    assert!(axes[m + i - 1][0] > *axes[m + i].last().unwrap());
                }
                assert!(axes[2 * m - 1][0] >= k as i64);
            }
        }
    }

    #[test]
    fn single_rectangle_matches_pair_sum() {
        for k in 1..=4 {
            for mu in Partition::all(k) {
                assert_eq!(f_mu_interpolate(1, &mu).unwrap(), factorization_poly(&mu, 10).unwrap(), "μ={mu}");
            }
        }
    }

    #[test]
    fn two_rectangles_single_cycle() {
        let f2 = flip(&m2("a^2b+ab^2+2apq+p^2q+pq^2"), 2, 2);
        assert_eq!(f_mu_interpolate(2, &p("2")).unwrap(), f2);
        for k in 1..=3 {
            let mu = Partition::new(vec![k]).unwrap();
            assert_eq!(f_mu_interpolate(2, &mu).unwrap(), f_k_polynomial(2, k).unwrap());
        }
    }

    #[test]
    fn report_examples() {
        let r = conjecture1_check_with(2, &p("1"), &InterpCaps::default(), 5).unwrap();
        assert!(r.passed());
        assert_eq!(r.flipped_text, "p1*q1 + p2*q2");
        assert_eq!(r.coefficient_sum, "2");

        let r = conjecture1_check_with(2, &p("1,1"), &InterpCaps::default(), 5).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.coefficient_sum, "6");

        let r = conjecture1_check_with(1, &p("2,1"), &InterpCaps::default(), 5).unwrap();
        assert!(r.passed());
        assert_eq!(r.expected_sum, "6");
    }

    #[test]
    fn three_cycle_report_matches_display() {
        let r = conjecture1_check_with(2, &p("3"), &InterpCaps::default(), 5).unwrap();
        assert!(r.passed());
        assert_eq!(r.coefficient_sum, "24");
        let f3 = f_mu_interpolate(2, &p("3")).unwrap();
        assert_eq!(
            flip(&f3, 2, 3),
            m2("a^3b+3a^2b^2+3a^2pq+ab^3+3abpq+3ap^2q+3apq^2+p^3q+3p^2q^2+pq^3+ab+pq")
        );
    }

    #[test]
    fn off_grid_shapes_are_fresh() {
        let shapes = off_grid_shapes(2, 3, 20, FIDELITY_SEED);
        assert_eq!(shapes.len(), 20);
        assert_eq!(shapes, off_grid_shapes(2, 3, 20, FIDELITY_SEED));
        let axes = grid_nodes(2, 3);
        for s in &shapes {
            let coords: Vec<i64> = s.point().iter().map(|x| x.try_into().unwrap()).collect();
            assert!(!coords.iter().zip(&axes).all(|(x, nodes)| nodes.contains(x)));
        }
    }

    #[test]
    fn caps_enforced() {
        assert!(matches!(f_mu_interpolate(3, &p("1")), Err(Error::CapExceeded { .. })));
        assert!(matches!(f_mu_interpolate(1, &p("5")), Err(Error::CapExceeded { .. })));
        let wide = InterpCaps { max_m: 3, max_k: 2 };
        assert_eq!(f_mu_interpolate_with(3, &p("1"), &wide).unwrap(), f_k_polynomial(3, 1).unwrap());
    }
}
